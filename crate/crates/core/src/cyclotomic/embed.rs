//! Certified numeric embedding `zeta_n -> exp(2 pi i / n)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{table, CycNum};
use crate::interval::{ComplexInterval, Interval};

/// Lowest precision accepted for embeddings.
pub const MIN_EMBED_BITS: u32 = 53;

/// Embeds cyclotomic numbers at a fixed precision, caching root tables per conductor.
#[derive(Debug, Clone)]
pub struct Embedder {
    prec: u32,
    roots: HashMap<u32, Vec<ComplexInterval>>,
}

impl Embedder {
    pub fn new(precision_bits: u32) -> Self {
        Embedder { prec: precision_bits.max(MIN_EMBED_BITS), roots: HashMap::new() }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn roots(&mut self, n: u32) -> &[ComplexInterval] {
        let prec = self.prec;
        self.roots.entry(n).or_insert_with(|| {
            let phi = table(n).phi;
            (0..phi)
                .map(|k| {
                    let (c, s) = Interval::cos_sin_turn(k as i64, n as u64, prec);
                    ComplexInterval::new(c, s)
                })
                .collect()
        })
    }

    pub fn embed(&mut self, a: &CycNum) -> ComplexInterval {
        let prec = self.prec;
        let den = a.denominator().clone();
        let nums: Vec<BigInt> = a.numerators().to_vec();
        let roots = self.roots(a.conductor());
        let mut re = Interval::zero(prec);
        let mut im = Interval::zero(prec);
        for (c, r) in nums.iter().zip(roots) {
            if c.is_zero() {
                continue;
            }
            re = re.add(&r.re.mul_int(c));
            im = im.add(&r.im.mul_int(c));
        }
        ComplexInterval::new(re.div_int(&den), im.div_int(&den))
    }

    /// Embedding of a value known to be real.
    pub fn embed_real(&mut self, a: &CycNum) -> Interval {
        self.embed(a).re
    }
}

/// Certified enclosure of the principal complex embedding of `a`.
pub fn cyc_embed(a: &CycNum, precision_bits: u32) -> ComplexInterval {
    Embedder::new(precision_bits).embed(a)
}
