//! Acceptance suite: nine criteria, one PASS/FAIL line each, wall-clock
//! budgets enforced. Runs under `cargo test`; exits non-zero on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use desirability::sampling::{random_interval, random_measure, random_relation, random_upper_matrix, sample_within};
use desirability::{
    eval_formula, transitive_envelope, verify_profile, ConormFamily, DesirabilityMeasure, GeneratingFamily,
    GeneratorSearch, Grid, NegationFamily, NormProfile, PairMatrix, PreferenceRelation, Proposition,
    SimilarityRelation, TNormFamily, Universe,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn connective_algebra() -> Outcome {
    let grid = Grid::new(16).unwrap();
    let pts = grid.points();
    let mut triples = 0usize;
    for profile in NormProfile::matched() {
        let report = verify_profile(&profile, grid);
        ensure!(report.passes("residuation_adjunction"), "{report}");
        ensure!(report.passes("pseudoinverse_adjunction"), "{report}");
        ensure!(report.all_pass(), "{report}");
        for &a in &pts {
            for &b in &pts {
                let r = profile.residuum(a, b).unwrap();
                let d = profile.conorm_pseudoinverse(a, b).unwrap();
                for &c in &pts {
                    let t = profile.tnorm(a, c).unwrap();
                    ensure!(
                        (t <= b + TOL) == (c <= r + TOL),
                        "residuation fails at {a} {b} {c} under {profile}"
                    );
                    let s = profile.conorm(b, c).unwrap();
                    ensure!(
                        (d <= c + TOL) == (a <= s + TOL),
                        "pseudoinverse fails at {a} {b} {c} under {profile}"
                    );
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} grid triples, 3 profiles"))
}

fn preference_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..1000 {
        let u = Universe::of_size(rng.gen_range(2..=6));
        let d = random_measure(&mut rng, &u);
        for conorm in ConormFamily::ALL {
            let report = PreferenceRelation::from_desirability(&d, conorm).verify_axioms();
            ensure!(report.all_pass(), "trial {trial}, {conorm}: {report}");
        }
    }
    Ok("1000 measures x 3 conorms".into())
}

fn valverde_representation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for trial in 0..500 {
        let u = Universe::of_size(rng.gen_range(1..=5));
        let conorm = ConormFamily::ALL[trial % 3];
        let rho = if trial % 2 == 0 {
            random_relation(&mut rng, &u, conorm)
        } else {
            PreferenceRelation::from_desirability(&random_measure(&mut rng, &u), conorm)
        };
        let back = rho
            .valverde_family()
            .map_err(|e| e.to_string())?
            .regenerate(conorm)
            .map_err(|e| e.to_string())?;
        let diff = back.matrix().max_abs_diff(rho.matrix());
        worst = worst.max(diff);
        ensure!(diff <= TOL, "trial {trial}: regenerated relation differs by {diff}");
        let n = u.len();
        for w in 0..n {
            for v in 0..n {
                let sup = (0..n)
                    .map(|mid| conorm.pseudoinverse(rho.preference(w, mid), rho.preference(v, mid)))
                    .fold(0.0, f64::max);
                ensure!(
                    (sup - rho.preference(w, v)).abs() <= TOL,
                    "sup identity fails at trial {trial} ({w}, {v})"
                );
            }
        }
    }
    Ok(format!("500 relations, max deviation {worst:.1e}"))
}

fn single_generator_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..200 {
        let u = Universe::of_size(rng.gen_range(1..=6));
        let rho = PreferenceRelation::from_desirability(&random_measure(&mut rng, &u), ConormFamily::BoundedSum);
        let found = rho.single_generator();
        let measure = found.measure().ok_or_else(|| format!("trial {trial}: no generator"))?;
        let again = PreferenceRelation::from_desirability(measure, ConormFamily::BoundedSum);
        ensure!(
            again.matrix().approx_eq(rho.matrix()),
            "trial {trial}: induced relation differs"
        );
    }
    let u = Universe::of_size(3);
    let rising = DesirabilityMeasure::new(&u, vec![0.1, 0.5, 0.9]).unwrap();
    let falling = DesirabilityMeasure::new(&u, vec![0.9, 0.5, 0.1]).unwrap();
    let crossed = GeneratingFamily::new(&u, vec![rising, falling])
        .and_then(|f| f.regenerate(ConormFamily::BoundedSum))
        .map_err(|e| e.to_string())?;
    let outcome = crossed.single_generator();
    ensure!(
        outcome == GeneratorSearch::NotRepresentable,
        "crossing generators gave {outcome:?}"
    );
    Ok("200 measures recovered; crossing pair rejected".into())
}

fn inside(m: &DesirabilityMeasure, lower: &DesirabilityMeasure, upper: &DesirabilityMeasure) -> bool {
    (0..m.len()).all(|w| lower.value(w) <= m.value(w) + TOL && m.value(w) <= upper.value(w) + TOL)
}

fn enclosure_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..1000 {
        let u = Universe::of_size(rng.gen_range(1..=6));
        let (i1, i2) = (random_interval(&mut rng, &u), random_interval(&mut rng, &u));
        let (d1, d2) = (sample_within(&mut rng, &i1), sample_within(&mut rng, &i2));
        for p in NormProfile::matched() {
            let err = |e: desirability::Error| e.to_string();
            let cases = [
                ("not", d1.not(&p), i1.not(&p)),
                ("and", d1.and(&p, &d2).map_err(err)?, i1.and(&p, &i2).map_err(err)?),
                ("or", d1.or(&p, &d2).map_err(err)?, i1.or(&p, &i2).map_err(err)?),
                (
                    "implies",
                    d1.implies(&p, &d2).map_err(err)?,
                    i1.implies(&p, &i2).map_err(err)?,
                ),
            ];
            for (name, exact, bounds) in cases {
                ensure!(
                    inside(&exact, bounds.lower(), bounds.upper()),
                    "{name} escapes under {p}, trial {trial}"
                );
            }
        }
    }
    Ok("1000 trials x 4 connectives x 3 profiles".into())
}

fn chains(m: &PairMatrix, conorm: ConormFamily) -> PairMatrix {
    let n = m.size();
    let mut rows = vec![vec![0.0; n]; n];
    for (s, row) in rows.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            if s == t {
                continue;
            }
            let mut best = m.get(s, t);
            for a in 0..n {
                let sa = m.get(s, a);
                best = best.min(conorm.apply(sa, m.get(a, t)));
                for b in 0..n {
                    let sab = conorm.apply(sa, m.get(a, b));
                    best = best.min(conorm.apply(sab, m.get(b, t)));
                    for c in 0..n {
                        best = best.min(conorm.apply(conorm.apply(sab, m.get(b, c)), m.get(c, t)));
                    }
                }
            }
            *cell = best;
        }
    }
    PairMatrix::from_rows(&rows).unwrap()
}

fn transitive_envelope_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..200 {
        let upper = random_upper_matrix(&mut rng, 5);
        for conorm in ConormFamily::ALL {
            let env = transitive_envelope(&upper, conorm).map_err(|e| e.to_string())?;
            for a in 0..5 {
                for b in 0..5 {
                    for c in 0..5 {
                        ensure!(
                            env.get(a, c) <= conorm.apply(env.get(a, b), env.get(b, c)) + TOL,
                            "transitivity fails at trial {trial} ({a}, {b}, {c}) for {conorm}"
                        );
                    }
                }
            }
            let oracle = chains(&upper, conorm);
            ensure!(
                env.max_abs_diff(&oracle) <= TOL,
                "trial {trial}: differs from chain minimum for {conorm}"
            );
            let again = transitive_envelope(&env, conorm).map_err(|e| e.to_string())?;
            ensure!(
                again.max_abs_diff(&env) <= TOL,
                "trial {trial}: not idempotent for {conorm}"
            );
        }
    }
    Ok("200 inputs x 3 conorms".into())
}

fn similarity_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..500 {
        let u = Universe::of_size(rng.gen_range(1..=6));
        let rho = random_relation(&mut rng, &u, ConormFamily::BoundedSum);
        let s = SimilarityRelation::from_preference(&rho, NegationFamily::Standard).map_err(|e| e.to_string())?;
        ensure!(
            s.tnorm() == TNormFamily::BoundedDifference,
            "dual t-norm is {}",
            s.tnorm()
        );
        let report = s.verify();
        ensure!(report.all_pass(), "trial {trial}: {report}");
    }
    for trial in 0..100 {
        let n = rng.gen_range(1..=6);
        let u = Universe::of_size(n);
        let p = Proposition::from_mask(&u, (0..n).map(|_| rng.gen()).collect()).unwrap();
        let rho = PreferenceRelation::from_desirability(&DesirabilityMeasure::crisp(&p), ConormFamily::BoundedSum);
        let s = SimilarityRelation::from_preference(&rho, NegationFamily::Standard).map_err(|e| e.to_string())?;
        let mut classes = s
            .equivalence_classes()
            .ok_or_else(|| format!("trial {trial}: not a block matrix"))?;
        classes.sort();
        let mut expected: Vec<Vec<usize>> = [p.ids().collect(), p.complement().ids().collect::<Vec<_>>()]
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        expected.sort();
        ensure!(
            classes == expected,
            "trial {trial}: classes {classes:?}, expected {expected:?}"
        );
    }
    Ok("500 relations; 100 crisp partitions".into())
}

fn boolean_degeneration() -> Outcome {
    let u = Universe::enumerate(&["a", "b"]).unwrap();
    let connectives = [
        ("c0 & c1", "a & b"),
        ("c0 | c1", "a | b"),
        ("!c0", "!a"),
        ("c0 -> c1", "a -> b"),
    ];
    let mut runs = 0;
    for profile in NormProfile::NAMES {
        for (aggregate, over_atoms) in connectives {
            let doc = serde_json::json!({
                "atoms": ["a", "b"], "profile": profile,
                "constraints": [{"kind": "crisp", "formula": "a"}, {"kind": "crisp", "formula": "b"}],
                "aggregate": aggregate,
            });
            let path = scratch_file("crisp", &doc.to_string());
            let ranking: Value = serde_json::from_str(&stdout(&["rank", path.to_str().unwrap()])).unwrap();
            let models = eval_formula(&u, &desirability_cli::formula::parse_formula(over_atoms).unwrap()).unwrap();
            let entries = ranking.as_array().unwrap();
            let mut seen_non_model = false;
            for e in entries {
                let w = e["world"].as_u64().unwrap() as usize;
                let value = e["value"].as_f64().unwrap();
                let truth = if models.contains(w) { 1.0 } else { 0.0 };
                ensure!(value == truth, "{aggregate} under {profile}: world {w} has {value}");
                ensure!(
                    !(truth == 1.0 && seen_non_model),
                    "{aggregate} under {profile}: model ranked below a non-model"
                );
                seen_non_model |= truth == 0.0;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} CLI runs"))
}

fn cli_determinism() -> Outcome {
    let files = corpus();
    ensure!(!files.is_empty(), "empty corpus");
    let mut commands = 0;
    for file in &files {
        let f = file.to_str().unwrap();
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
        let atom = doc["atoms"][0].as_str().unwrap().to_string();
        let negated = format!("!{atom}");
        let invocations: Vec<Vec<&str>> = vec![
            vec!["rank", f],
            vec!["matrix", f, "--kind", "preference"],
            vec!["matrix", f, "--kind", "similarity"],
            vec!["bounds", f, "--of", &atom],
            vec!["bounds", f, "--of", &atom, "--given", &negated],
        ];
        for args in &invocations {
            let json = stdout(args);
            ensure!(json == stdout(args), "{args:?} is not deterministic");
            let mut table_args = args.clone();
            table_args.extend(["--format", "table"]);
            let table = stdout(&table_args);
            ensure!(table == stdout(&table_args), "{table_args:?} is not deterministic");
            let (from_json, from_table) = match args[0] {
                "rank" => (rank_numbers(&json), rank_table_numbers(&table)),
                "matrix" => (matrix_numbers(&json), matrix_table_numbers(&table)),
                _ => (bounds_numbers(&json), bounds_table_numbers(&table)),
            };
            ensure!(from_json == from_table, "{args:?}: table and JSON disagree");
            commands += 1;
        }
        let check = run(&["check", f]);
        ensure!(
            check.status.code() == Some(0),
            "check on {f} exited {:?}",
            check.status.code()
        );
    }
    Ok(format!(
        "{} files, {commands} commands x 2 formats x 2 runs",
        files.len()
    ))
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            number: 1,
            name: "connective algebra adjunctions",
            budget: Duration::from_secs(5),
            run: connective_algebra,
        },
        Criterion {
            number: 2,
            name: "preference axioms of induced relations",
            budget: Duration::from_secs(10),
            run: preference_axioms,
        },
        Criterion {
            number: 3,
            name: "canonical family regenerates relations",
            budget: Duration::from_secs(30),
            run: valverde_representation,
        },
        Criterion {
            number: 4,
            name: "single-generator round trip",
            budget: Duration::from_secs(5),
            run: single_generator_round_trip,
        },
        Criterion {
            number: 5,
            name: "interval enclosure soundness",
            budget: Duration::from_secs(10),
            run: enclosure_soundness,
        },
        Criterion {
            number: 6,
            name: "transitive envelope",
            budget: Duration::from_secs(10),
            run: transitive_envelope_criterion,
        },
        Criterion {
            number: 7,
            name: "similarity axioms and crisp blocks",
            budget: Duration::from_secs(10),
            run: similarity_criterion,
        },
        Criterion {
            number: 8,
            name: "Boolean degeneration through the CLI",
            budget: Duration::from_secs(1),
            run: boolean_degeneration,
        },
        Criterion {
            number: 9,
            name: "CLI determinism and format agreement",
            budget: Duration::MAX,
            run: cli_determinism,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}, but took {elapsed:.2?} (limit {:?})", c.budget)),
            other => other,
        };
        let budget = if c.budget == Duration::MAX {
            String::new()
        } else {
            format!(", limit {:?}", c.budget)
        };
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {}: {} ({detail}; {elapsed:.2?}{budget})",
                c.number, c.name
            ),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {} ({why}; {elapsed:.2?}{budget})", c.number, c.name);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
