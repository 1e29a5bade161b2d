//! Cyclotomic polynomials and power-reduction tables, built once per conductor.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

#[derive(Debug)]
pub(crate) struct CycloTable {
    pub phi: usize,
    /// Coefficients of the n-th cyclotomic polynomial, constant term first.
    pub poly: Vec<i64>,
    /// `powers[k]` is `x^k mod poly` for `0 <= k < n`, each of length `phi`.
    pub powers: Vec<Vec<i64>>,
}

static TABLES: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();

pub(crate) fn table(n: u32) -> Arc<CycloTable> {
    assert!(n >= 1, "conductor must be positive");
    let lock = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = lock.read().unwrap().get(&n) {
        return t.clone();
    }
    let poly = cyclotomic_poly(n);
    let built = Arc::new(build(n, poly));
    lock.write().unwrap().entry(n).or_insert(built).clone()
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let t = table(d);
            let div: Vec<i128> = t.poly.iter().map(|&c| c as i128).collect();
            num = exact_div_monic(&num, &div);
        }
    }
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn build(n: u32, poly: Vec<i64>) -> CycloTable {
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x, then eliminate the x^phi term with the monic relation
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for i in 0..phi {
                next[i] = next[i]
                    .checked_sub(top.checked_mul(poly[i]).expect("reduction overflow"))
                    .expect("reduction overflow");
            }
        }
        cur = next;
    }
    CycloTable { phi, poly, powers }
}
