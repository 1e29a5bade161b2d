use std::io::Write;

use crinv_core::fpq::{coefficient_list, fpq_compute, golden_ratio_scalar, limit_gaps, prime_test_poly};
use crinv_core::interval::rational_to_decimal;
use crinv_core::quadmap::{build_gp, verify_quadmap};
use crinv_core::signature::{signature_ratio, RatioRow};
use crinv_core::Interval;

use crate::args::SweepCmd;
use crate::output::CliError;

pub fn run<W: Write>(kind: SweepCmd, prec: u32, out: &mut W) -> Result<(), CliError> {
    match kind {
        SweepCmd::Fpq { p, q } => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["p", "q", "coeffs", "S_p", "S_p_root", "verdict"]).map_err(CliError::io)?;
            for p in p {
                let q = q.at(p);
                if q == 0 || q >= p {
                    continue;
                }
                let f = fpq_compute(p, q)?;
                let s = f.coefficient_sum().to_integer();
                let root = Interval::from_int(&s, prec)
                    .nth_root(p)
                    .map(|r| r.to_decimal(12))
                    .unwrap_or_else(|| "undefined".into());
                let coeffs = serde_json::to_string(&coefficient_list(&f)).map_err(CliError::io)?;
                let verdict = if prime_test_poly(&f, p, q).congruent { "prime" } else { "composite" };
                w.write_record([p.to_string(), q.to_string(), coeffs, s.to_string(), root, verdict.into()])
                    .map_err(CliError::io)?;
            }
            w.flush().map_err(CliError::io)
        }
        SweepCmd::Golden { p } => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["p", "S_p", "S_p_root", "gap"]).map_err(CliError::io)?;
            for p in p {
                let r = golden_ratio_scalar(p, prec)?;
                w.write_record([p.to_string(), r.s_p.0.to_string(), r.root, r.gap]).map_err(CliError::io)?;
            }
            w.flush().map_err(CliError::io)
        }
        SweepCmd::Limit { p, points } => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["p", "x", "y", "value", "target", "gap", "h_p"]).map_err(CliError::io)?;
            for p in p {
                for g in limit_gaps(p, &points, prec)? {
                    w.write_record([p.to_string(), g.x, g.y, g.value, g.target, g.gap, g.h_p])
                        .map_err(CliError::io)?;
                }
            }
            w.flush().map_err(CliError::io)
        }
        SweepCmd::Ratio { family, p } => {
            let rows = signature_ratio(family, p, prec)?;
            write_ratio_csv(out, &rows)
        }
        SweepCmd::Quadmap { p } => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["p", "n_plus", "n_minus", "degree", "verified"]).map_err(CliError::io)?;
            for p in p {
                let g = build_gp(p)?;
                let rep = verify_quadmap(&g, (2, 2 * p as usize + 1))?;
                w.write_record([
                    p.to_string(),
                    rep.target.0.to_string(),
                    rep.target.1.to_string(),
                    rep.degree.to_string(),
                    rep.verified.to_string(),
                ])
                .map_err(CliError::io)?;
            }
            w.flush().map_err(CliError::io)
        }
    }
}

pub fn write_ratio_csv<W: Write>(out: &mut W, rows: &[RatioRow]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "order", "n_plus", "n_minus", "n_zero", "ratio", "ratio_num", "ratio_den"])
        .map_err(CliError::io)?;
    for row in rows {
        let (dec, num, den) = match row.ratio_value() {
            Some(r) => (rational_to_decimal(&r, 6), r.numer().to_string(), r.denom().to_string()),
            None => ("undefined".into(), String::new(), String::new()),
        };
        let i = row.inertia;
        w.write_record([
            row.p.to_string(),
            row.order.to_string(),
            i.n_plus.to_string(),
            i.n_minus.to_string(),
            i.n_zero.to_string(),
            dec,
            num,
            den,
        ])
        .map_err(CliError::io)?;
    }
    w.flush().map_err(CliError::io)
}
