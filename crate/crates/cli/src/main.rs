//! `crinv`: compute invariant polynomials, signatures, the `f_{p,q}` family and
//! quadric maps from the command line.

mod args;
mod output;
mod sweep;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use crinv_core::fpq::{fpq_compute, line_remainder, prime_test};
use crinv_core::invariant::{check_properties, noether_basis, phi_gamma};
use crinv_core::quadmap::{build_gp, verify_quadmap};
use crinv_core::signature::{decompose, inertia, signature_ratio, CoeffMatrix};
use crinv_core::Error;
use serde_json::json;

use args::{Cli, Cmd};
use output::{fail, print_json, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => output::EXIT_BAD_PARAMETERS,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let prec = cli.precision_bits;
    let mut out = std::io::stdout().lock();
    match cli.cmd {
        Cmd::Invariant { group, output, noether } => {
            let (label, g) = group.build()?.ok_or_else(|| CliError::usage("a group is required"))?;
            let phi = phi_gamma(&g)?;
            let props = check_properties(&g, &phi)?;
            let mut doc = json!({
                "group": { "spec": label, "dim": g.dim(), "order": g.order() },
                "polarized": phi,
                "diagonal": phi.diagonal(),
                "diagonal_text": phi.diagonal().to_string(),
                "properties": {
                    "constant_term_zero": props.constant_term_zero,
                    "degree_z": props.degree_z,
                    "degree_matches_order": props.degree_matches_order,
                    "sphere_remainder_zero": props.sphere_remainder_zero,
                    "invariant": props.invariant,
                    "hermitian": props.hermitian,
                    "all_pass": props.all_pass(),
                },
            });
            if let Some(deg) = noether {
                doc["noether"] = serde_json::to_value(noether_basis(&g, Some(deg))?).map_err(CliError::io)?;
            }
            match output {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&doc).map_err(CliError::io)? + "\n";
                    std::fs::write(&path, text).map_err(CliError::io)?;
                }
                None => print_json(&mut out, &doc)?,
            }
            if !props.all_pass() {
                return Err(Error::VerificationFailed(format!("invariant properties failed for {label}")).into());
            }
        }
        Cmd::Signature { group, family, sweep, json, no_map } => {
            if let Some(range) = sweep {
                let family = family.ok_or_else(|| CliError::usage("--sweep needs --family"))?;
                let rows = signature_ratio(family, range, prec)?;
                sweep::write_ratio_csv(&mut out, &rows)?;
                return Ok(());
            }
            if family.is_some() {
                return Err(CliError::usage("--family needs --sweep"));
            }
            let (label, g) = group.build()?.ok_or_else(|| CliError::usage("a group or --family/--sweep is required"))?;
            let phi = phi_gamma(&g)?.diagonal();
            let m = CoeffMatrix::from_poly(&phi)?;
            let i = inertia(&m, prec)?;
            let map = if no_map { None } else { Some(decompose(&phi, prec)?) };
            if json {
                let mut doc = json!({
                    "group": { "spec": label, "dim": g.dim(), "order": g.order() },
                    "basis_size": m.size(),
                    "inertia": i,
                    "target": [i.n_plus, i.n_minus],
                });
                if let Some(map) = &map {
                    doc["map"] = serde_json::to_value(map).map_err(CliError::io)?;
                }
                print_json(&mut out, &doc)?;
            } else {
                let w = &mut out;
                writeln!(w, "group: {label}, order {}", g.order()).map_err(CliError::io)?;
                writeln!(w, "inertia: N+ = {}, N- = {}, N0 = {} (basis of {} monomials)", i.n_plus, i.n_minus, i.n_zero, m.size())
                    .map_err(CliError::io)?;
                writeln!(w, "target: Q({},{})", i.n_plus, i.n_minus).map_err(CliError::io)?;
                if let Some(map) = &map {
                    writeln!(w, "{}", map.render()).map_err(CliError::io)?;
                }
            }
        }
        Cmd::Fpq { p, q, json } => {
            let f = fpq_compute(p, q)?;
            let on_line = line_remainder(&f)?.is_zero();
            if json {
                print_json(&mut out, &json!({ "p": p, "q": q, "poly": f, "one_on_line": on_line }))?;
            } else {
                writeln!(out, "{f}").map_err(CliError::io)?;
            }
            if !on_line {
                return Err(Error::VerificationFailed(format!("f_{{{p},{q}}} is not 1 on x + y = 1")).into());
            }
        }
        Cmd::Primetest { p, q, json } => {
            let v = prime_test(p, q)?;
            if json {
                print_json(&mut out, &v)?;
            } else {
                writeln!(out, "{}", output::verdict_line(&v)).map_err(CliError::io)?;
            }
        }
        Cmd::Quadmap { p, json, summary } => {
            let g = build_gp(p)?;
            let k = 2 * p as usize + 1;
            let rep = verify_quadmap(&g, (2, k))?;
            if json {
                let mut doc = json!({
                    "p": p,
                    "source": [2, k],
                    "target": [rep.target.0, rep.target.1],
                    "degree": rep.degree,
                    "verified": rep.verified,
                    "remainder": rep.remainder.to_string(),
                    "convention": "source variables z1..z(2p+1) on the negative side",
                });
                if !summary {
                    doc["plus"] = serde_json::to_value(&g.plus).map_err(CliError::io)?;
                    doc["minus"] = serde_json::to_value(&g.minus).map_err(CliError::io)?;
                }
                print_json(&mut out, &doc)?;
            } else {
                let verdict = if rep.verified { "verified".to_string() } else { format!("NOT verified, remainder {}", rep.remainder) };
                writeln!(
                    out,
                    "Q(2,{k}) -> Q({},{}), degree {}, {verdict}",
                    rep.target.0, rep.target.1, rep.degree
                )
                .map_err(CliError::io)?;
                writeln!(out, "source convention: z1..z{k} negative, z{}..z{} positive", k + 1, k + 2).map_err(CliError::io)?;
                if !summary {
                    writeln!(out, "{}", g.render()).map_err(CliError::io)?;
                }
            }
            if !rep.verified {
                return Err(Error::VerificationFailed(format!("g_{p} does not map the source into the target")).into());
            }
        }
        Cmd::Sweep { kind } => sweep::run(kind, prec, &mut out)?,
    }
    out.flush().map_err(CliError::io)?;
    Ok(())
}
