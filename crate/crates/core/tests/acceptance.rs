//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use ontolabel::exchange::{
    antisymmetric_span_dimension, basis_kets, numbered_modes, symmetric_span_dimension,
};
use ontolabel::{
    antisymmetrize, apply_transposition, check_axiom, count_closed_form, enumerate_microstates,
    enumerate_systems, mean_occupation, parse_spec, render_spec, symmetrize,
    theorem_macro_distinct, validate, AxiomId, ModeSpec, OntoSystem, Scale, StateVector,
    StatisticsRule, Transposition,
};

use common::{binomial, normalize, oracle_axiom, oracle_two_by_two};

const STREAM_PARTICLES: usize = 4;
const STREAM_STATES: usize = 3;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const SPAN_BUDGET: Duration = Duration::from_secs(10);
const SUM_TOL: f64 = 1e-9;
const FD_TOL: f64 = 1e-12;
const UNIFORM_TOL: f64 = 1e-12;
const BRUTE_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn validated_stream() -> Vec<OntoSystem> {
    enumerate_systems(STREAM_PARTICLES, STREAM_STATES)
        .unwrap()
        .filter_map(|c| validate(&c).ok())
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut candidates = 0usize;
    for c in enumerate_systems(STREAM_PARTICLES, STREAM_STATES).map_err(|e| e.to_string())? {
        candidates += 1;
        for a in AxiomId::ALL {
            let r = check_axiom(&c, a);
            let got: std::collections::BTreeSet<_> = r.witnesses.iter().map(normalize).collect();
            let expected = oracle_axiom(&c, a);
            ensure(r.holds == expected.is_empty() && got == expected, || {
                format!("{a} disagrees on {c:?}: checker {got:?}, oracle {expected:?}")
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ORACLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{candidates} candidates x 7 axioms agree in {elapsed:.2?}"
    ))
}

fn macro_distinct(systems: &[OntoSystem]) -> Outcome {
    let mut macro_pairs = 0usize;
    for s in systems {
        let outcome = theorem_macro_distinct(s);
        ensure(outcome.holds && outcome.witnesses.is_empty(), || {
            format!("witnesses {:?}", outcome.witnesses)
        })?;
        let ps = s.particles();
        for (i, p) in ps.iter().enumerate() {
            for q in &ps[i + 1..] {
                if p.scale() == Scale::Macro && q.scale() == Scale::Macro {
                    macro_pairs += 1;
                    ensure(!s.phys_identical(p, q).unwrap(), || {
                        format!("{} and {} are physically identical", p.name(), q.name())
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{} validated systems, {macro_pairs} macro pairs, none physically identical",
        systems.len()
    ))
}

fn unitary_micro(systems: &[OntoSystem]) -> Outcome {
    let mut hits = 0usize;
    for s in systems
        .iter()
        .filter(|s| s.states().len() == 1 && s.n() >= 2)
    {
        hits += 1;
        ensure(
            s.particles().iter().all(|p| p.scale() == Scale::Micro),
            || format!("non-micro particle in {s:?}"),
        )?;
    }
    ensure(hits > 0, || "no system met the hypothesis".into())?;
    Ok(format!(
        "{hits} single-state systems with n >= 2, all particles micro"
    ))
}

fn exchange_exactness() -> Outcome {
    let mut kets = 0usize;
    for g in 1..=4 {
        let modes = numbered_modes(g);
        for n in 1..=4 {
            for ket in basis_kets(n, &modes) {
                kets += 1;
                let repeated = {
                    let mut m = ket.slots().to_vec();
                    m.sort();
                    m.dedup();
                    m.len() < n
                };
                let v = StateVector::basis(ket.clone());
                for t in Transposition::all(n) {
                    let once = apply_transposition(t, &v).unwrap();
                    ensure(apply_transposition(t, &once).unwrap() == v, || {
                        format!("{t} squared is not identity on {ket}")
                    })?;
                    let flipped = Transposition::new(t.j(), t.i()).unwrap();
                    ensure(apply_transposition(flipped, &v).unwrap() == once, || {
                        format!("{t} differs from its reverse on {ket}")
                    })?;
                }
                let s = symmetrize(&v);
                let a = antisymmetrize(&v);
                ensure(symmetrize(&s) == s, || format!("S not idempotent on {ket}"))?;
                ensure(antisymmetrize(&a) == a, || {
                    format!("A not idempotent on {ket}")
                })?;
                if n >= 2 {
                    ensure(
                        symmetrize(&a).is_zero() && antisymmetrize(&s).is_zero(),
                        || format!("S and A do not annihilate on {ket}"),
                    )?;
                }
                ensure(a.is_zero() == repeated, || {
                    format!("A on {ket} gave {a}, repeated mode = {repeated}")
                })?;
            }
        }
    }
    Ok(format!("{kets} basis kets, exact equality"))
}

fn span_dimensions() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=4 {
        for g in 1..=5 {
            let modes = numbered_modes(g);
            let anti = antisymmetric_span_dimension(n, &modes) as u64;
            let sym = symmetric_span_dimension(n, &modes) as u64;
            let (ea, es) = (
                binomial(g as u64, n as u64),
                binomial((g + n - 1) as u64, n as u64),
            );
            ensure(anti == ea && sym == es, || {
                format!("n={n} g={g}: antisymmetric {anti} vs {ea}, symmetric {sym} vs {es}")
            })?;
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SPAN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{cases} (n, g) cases by exact rank in {elapsed:.2?}"
    ))
}

fn counting() -> Outcome {
    let mut cases = 0;
    for n in 0..=5 {
        for g in 1..=6 {
            let spec = ModeSpec::uniform(g).unwrap();
            let gb = BigUint::from(g);
            for rule in StatisticsRule::ALL {
                let enumerated = enumerate_microstates(n, &spec, rule).unwrap().states.len();
                let closed = count_closed_form(n, g, rule);
                let independent = match rule {
                    StatisticsRule::MaxwellBoltzmann => gb.pow(n as u32),
                    StatisticsRule::BoseEinstein => binomial((n + g - 1) as u64, n as u64).into(),
                    StatisticsRule::FermiDirac => binomial(g as u64, n as u64).into(),
                };
                ensure(
                    BigUint::from(enumerated) == closed && closed == independent,
                    || format!("{rule} n={n} g={g}: enumerated {enumerated}, closed form {closed}"),
                )?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (rule, n, g) cases"))
}

fn occupations() -> Outcome {
    let spectra: [&[f64]; 4] = [
        &[0.0, 1.0],
        &[0.0, 0.3, 1.1],
        &[2.0, -1.0, 0.5, 0.0],
        &[0.0; 5],
    ];
    let mut checked = 0;
    for energies in spectra {
        let spec = ModeSpec::from_energies(energies).unwrap();
        for n in 0..=4 {
            for beta in [0.0, 0.5, 1.0, 3.0, 40.0] {
                for rule in StatisticsRule::ALL {
                    let Ok(occ) = mean_occupation(n, &spec, rule, beta) else {
                        ensure(rule == StatisticsRule::FermiDirac && n > spec.len(), || {
                            format!("{rule} n={n} beta={beta} failed")
                        })?;
                        continue;
                    };
                    let total: f64 = occ.iter().sum();
                    ensure((total - n as f64).abs() <= SUM_TOL, || {
                        format!("{rule} n={n} beta={beta}: sum {total}")
                    })?;
                    if rule == StatisticsRule::FermiDirac {
                        ensure(occ.iter().all(|&x| x <= 1.0 + FD_TOL), || {
                            format!("FD n={n} beta={beta}: {occ:?}")
                        })?;
                    }
                    checked += 1;
                }
            }
        }
    }
    for g in 1..=5 {
        let spec = ModeSpec::uniform(g).unwrap();
        for n in 0..=4 {
            let occ = mean_occupation(n, &spec, StatisticsRule::MaxwellBoltzmann, 0.0).unwrap();
            let expect = n as f64 / g as f64;
            ensure(
                occ.iter().all(|x| (x - expect).abs() <= UNIFORM_TOL),
                || format!("uniform MB n={n} g={g}: {occ:?}"),
            )?;
        }
    }
    let spec = ModeSpec::from_energies(&[0.0, 1.0]).unwrap();
    let brute = oracle_two_by_two(1.0);
    for (k, rule) in StatisticsRule::ALL.into_iter().enumerate() {
        let occ = mean_occupation(2, &spec, rule, 1.0).unwrap();
        ensure(
            occ.iter()
                .zip(&brute[k])
                .all(|(a, b)| (a - b).abs() <= BRUTE_TOL),
            || format!("{rule} 2x2: {occ:?} vs {:?}", brute[k]),
        )?;
    }
    Ok(format!(
        "{checked} sum/FD checks (tol {SUM_TOL:e}, {FD_TOL:e}), uniform n/g (tol {UNIFORM_TOL:e}), 2x2 brute force (tol {BRUTE_TOL:e})"
    ))
}

fn cli_contract() -> Outcome {
    let failures: Vec<String> = common::cli::SCENARIOS
        .iter()
        .filter_map(|s| common::cli::check_scenario(s).err())
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let mut round_trips = 0;
    for path in common::cli::corpus() {
        let src = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let Ok(c) = parse_spec(&src) else { continue };
        let back = parse_spec(&render_spec(&c)).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(back == c, || {
            format!("{} does not round-trip", path.display())
        })?;
        round_trips += 1;
    }
    Ok(format!(
        "{} golden scenarios, {round_trips} corpus files round-trip",
        common::cli::SCENARIOS.len()
    ))
}

fn main() {
    let systems = validated_stream();
    let criteria: Vec<Criterion> = vec![
        (
            "axiom checker matches quantifier oracle",
            Box::new(oracle_equivalence),
        ),
        (
            "macro particles are never physically identical",
            Box::new(|| macro_distinct(&systems)),
        ),
        (
            "single-state systems are all micro",
            Box::new(|| unitary_micro(&systems)),
        ),
        ("exchange algebra is exact", Box::new(exchange_exactness)),
        ("span dimensions are binomial", Box::new(span_dimensions)),
        ("microstate counts match closed forms", Box::new(counting)),
        ("mean occupations are sane", Box::new(occupations)),
        ("command-line contract holds", Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
