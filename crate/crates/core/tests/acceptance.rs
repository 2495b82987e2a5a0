//! Acceptance suite: every check is exact. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};

use cherednik_core::cherednik::AlgebraContext;
use cherednik_core::coinv::{flag_major_genfun, Coinvariants};
use cherednik_core::exactfield::ParameterSet;
use cherednik_core::exec::Execution;
use cherednik_core::jack::JackEngine;
use cherednik_core::reflgroup::{length_generating_function, maj_generating_function};
use cherednik_core::verify::{self, SuiteReport};

const MODE: Execution = Execution::Parallel;

const RELATION_GROUPS: [(u32, u32, usize); 5] = [(1, 1, 3), (2, 1, 2), (3, 1, 2), (2, 2, 2), (4, 2, 2)];
const DECOMPOSITION_GROUPS: [(u32, u32, usize); 6] = [(2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 3, 2), (2, 1, 3), (3, 3, 3)];
const CHAIN_GROUPS: [(u32, u32, usize); 4] = [(2, 1, 3), (3, 1, 3), (2, 1, 4), (3, 3, 3)];

type Outcome = Result<usize, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn kappas() -> [BigRational; 2] {
    [BigRational::zero(), BigRational::one()]
}

fn context(r: u32, p: u32, n: usize, kappa: &BigRational) -> AlgebraContext {
    AlgebraContext::generic(r, p, n, kappa.clone()).expect("valid group")
}

/// Small groups: r ≤ 3, p | r, n ≤ 3.
fn small_groups() -> Vec<(u32, u32, usize)> {
    let mut out = Vec::new();
    for r in 1..=3u32 {
        for p in (1..=r).filter(|p| r % p == 0) {
            for n in 1..=3 {
                out.push((r, p, n));
            }
        }
    }
    out
}

fn absorb(total: &mut usize, report: cherednik_core::Result<SuiteReport>) -> Result<(), String> {
    let report = report.map_err(|e| e.to_string())?;
    if !report.passed {
        return Err(format!(
            "{} on G{:?} kappa={}: {}",
            report.name,
            report.group,
            report.kappa,
            report.counterexample.unwrap_or_default()
        ));
    }
    *total += report.checked;
    Ok(())
}

fn c1_commutativity() -> Outcome {
    let mut total = 0;
    for (r, p, n) in RELATION_GROUPS {
        for kappa in kappas() {
            let ctx = context(r, p, n, &kappa);
            absorb(&mut total, verify::dunkl_commutativity(&ctx, 5, MODE))?;
        }
    }
    Ok(total)
}

fn c2_relations() -> Outcome {
    let mut total = 0;
    for (r, p, n) in RELATION_GROUPS {
        for kappa in kappas() {
            let ctx = context(r, p, n, &kappa);
            absorb(&mut total, verify::relation_yx_distinct(&ctx, 4, MODE))?;
            absorb(&mut total, verify::relation_yx_same(&ctx, 4, MODE))?;
        }
    }
    Ok(total)
}

fn c3_casimir() -> Outcome {
    let mut total = 0;
    for (r, p, n) in RELATION_GROUPS {
        let ctx = context(r, p, n, &BigRational::zero());
        absorb(&mut total, verify::casimir_annihilates(&ctx, 5, MODE))?;
        let ctx = context(r, p, n, &BigRational::one());
        absorb(&mut total, verify::casimir_commutator(&ctx, 3, MODE))?;
    }
    Ok(total)
}

fn engines() -> Vec<JackEngine> {
    let mut out = Vec::new();
    for (r, p, n) in small_groups() {
        for kappa in kappas() {
            out.push(JackEngine::new(Arc::new(context(r, p, n, &kappa))));
        }
    }
    out
}

fn c4_weights() -> Outcome {
    let mut total = 0;
    for engine in engines() {
        absorb(&mut total, verify::weight_conformance(&engine, 4, MODE))?;
    }
    Ok(total)
}

fn c5_action_lemma() -> Outcome {
    let mut total = 0;
    let mut cases = [0usize; 5];
    for engine in engines() {
        let reports = verify::action_lemma(&engine, 4, MODE).map_err(|e| e.to_string())?;
        for (slot, report) in cases.iter_mut().zip(reports) {
            *slot += report.checked;
            absorb(&mut total, Ok(report))?;
        }
    }
    if let Some(pos) = cases.iter().position(|&c| c == 0) {
        return Err(format!("action lemma case {pos} was never exercised"));
    }
    Ok(total)
}

fn c6_triangularity() -> Outcome {
    let mut total = 0;
    for engine in engines() {
        absorb(&mut total, verify::triangularity(&engine, 5, MODE))?;
    }
    Ok(total)
}

/// Coefficients of `Π_i (1 - t^{d_i}) / (1 - t)`, expanded naively.
fn product_of_q_integers(degrees: &[usize]) -> Vec<u64> {
    let mut acc = vec![1u64];
    for &d in degrees {
        let mut next = vec![0u64; acc.len() + d - 1];
        for (a, &c) in acc.iter().enumerate() {
            for slot in next.iter_mut().skip(a).take(d) {
                *slot += c;
            }
        }
        acc = next;
    }
    acc
}

fn group_degrees(r: u32, p: u32, n: usize) -> Vec<usize> {
    let mut degrees: Vec<usize> = (1..n).map(|i| i * r as usize).collect();
    degrees.push(n * r as usize / p as usize);
    degrees
}

fn group_order(r: u32, p: u32, n: usize) -> usize {
    (1..=n).product::<usize>() * (r as usize).pow(n as u32) / p as usize
}

fn c7_decomposition() -> Outcome {
    let mut total = 0;
    for (r, p, n) in DECOMPOSITION_GROUPS {
        let params = ParameterSet::generic(r, p).map_err(|e| e.to_string())?;
        let coinv = Coinvariants::new(params, n, MODE).map_err(|e| e.to_string())?;
        let report = coinv.verify_decomposition().map_err(|e| e.to_string())?;
        let label = format!("G({r},{p},{n})");
        if report.cardinality != group_order(r, p, n) {
            return Err(format!("{label}: {} basis elements, expected {}", report.cardinality, group_order(r, p, n)));
        }
        let expected_hilbert = product_of_q_integers(&group_degrees(r, p, n));
        if report.steinberg_degree_counts != expected_hilbert {
            return Err(format!("{label}: degree counts {:?}, expected {expected_hilbert:?}", report.steinberg_degree_counts));
        }
        if report.quotient_dims != expected_hilbert {
            return Err(format!("{label}: quotient dimensions {:?}, expected {expected_hilbert:?}", report.quotient_dims));
        }
        for clause in &report.clauses {
            if !clause.passed {
                return Err(format!("{label}: {} failed: {}", clause.name, clause.counterexample.clone().unwrap_or_default()));
            }
            total += clause.checked;
        }
        for name in [
            "independence",
            "i_sigma_within_class",
            "ii_sigma_square",
            "iii_connected",
            "iv_hecke_stable",
            "v_spectra_distinct",
            "psi_phi_scalar",
        ] {
            match report.clause(name) {
                Some(c) if c.checked > 0 => {}
                _ => return Err(format!("{label}: clause {name} was not exercised")),
            }
        }
        if !report.passed {
            return Err(format!("{label}: report not marked passed"));
        }
    }
    Ok(total)
}

fn c8_chains() -> Outcome {
    let mut total = 0;
    for (r, p, n) in CHAIN_GROUPS {
        let ctx = context(r, p, n, &BigRational::zero());
        absorb(&mut total, verify::chains(&ctx))?;
    }
    Ok(total)
}

fn c9_mahonian() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        let expected = product_of_q_integers(&(1..=n).collect::<Vec<_>>());
        if length_generating_function(n) != expected {
            return Err(format!("length generating function differs at n={n}"));
        }
        if maj_generating_function(n) != expected {
            return Err(format!("maj generating function differs at n={n}"));
        }
        checked += 2;
    }
    for (r, p, n) in DECOMPOSITION_GROUPS {
        let flag = flag_major_genfun(r, p, n).map_err(|e| e.to_string())?;
        let expected = product_of_q_integers(&group_degrees(r, p, n));
        if flag != expected {
            return Err(format!("G({r},{p},{n}): flag-major {flag:?}, expected {expected:?}"));
        }
        checked += 1;
    }
    Ok(checked)
}

fn c10_ideal_stability() -> Outcome {
    let mut total = 0;
    for (r, p, n) in DECOMPOSITION_GROUPS {
        let params = ParameterSet::generic(r, p).map_err(|e| e.to_string())?;
        let coinv = Coinvariants::new(params, n, MODE).map_err(|e| e.to_string())?;
        for d in 0..=coinv.top_degree() {
            let report = coinv.ideal_stability_check(d).map_err(|e| e.to_string())?;
            if !report.passed {
                return Err(format!("G({r},{p},{n}) degree {d}: {}", report.counterexample.unwrap_or_default()));
            }
            total += report.rows_checked;
        }
        if total == 0 {
            return Err(format!("G({r},{p},{n}): no ideal rows checked"));
        }
    }
    Ok(total)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 dunkl operators commute", c1_commutativity),
        ("2 commutation relations with x", c2_relations),
        ("3 casimir element", c3_casimir),
        ("4 jack weights", c4_weights),
        ("5 intertwiner action", c5_action_lemma),
        ("6 triangularity", c6_triangularity),
        ("7 descent basis decomposition", c7_decomposition),
        ("8 descent class chains", c8_chains),
        ("9 mahonian and flag-major", c9_mahonian),
        ("10 ideal stability", c10_ideal_stability),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(checked) => println!("PASS  criterion {name}  ({checked} checks, {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}  ({secs:.2}s): {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
