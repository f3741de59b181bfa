//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use swlab_core::verify::{
    check_d0, check_dimensions, check_filtration, check_graded_multiplicity, check_hypercube_size,
    check_injectivity, check_label_injectivity, check_submodule_lattice, check_symmetry,
    generic_params, CheckOutcome, Fault,
};
use swlab_core::{
    all_presentations_one_deep, d0_block, d0_full, factor_dims, presentations, w_question,
    D0Report, Params, SerreWeightClass, TameParam, Weight, WeylElement,
};

const SEED: u64 = 20_240_601;
const SAMPLES: usize = 10_000;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn grid(ps: &[i64], fs: &[usize]) -> Vec<Params> {
    ps.iter()
        .flat_map(|&p| fs.iter().map(move |&f| Params::new(p, f).unwrap()))
        .collect()
}

/// Passes when every outcome passes and the sweep was not empty.
fn combine(outcomes: Vec<CheckOutcome>) -> Verdict {
    let cases: usize = outcomes.iter().map(|o| o.cases).sum();
    match outcomes.iter().find(|o| !o.passed) {
        None if cases > 0 => Verdict {
            passed: true,
            detail: format!("{cases} cases"),
        },
        None => Verdict {
            passed: false,
            detail: "empty sweep".into(),
        },
        Some(o) => {
            let failing = outcomes.iter().filter(|o| !o.passed).count();
            let mut detail = format!(
                "{failing} of {} configurations fail; first at p={} f={}: {}",
                outcomes.len(),
                o.p.map_or_else(|| "-".into(), |p| p.to_string()),
                o.f,
                o.counterexample.as_deref().unwrap_or("?")
            );
            for o in outcomes.iter().filter(|o| !o.passed) {
                if let Some(note) = &o.note {
                    detail.push_str(&format!("\n      p={} f={}: {note}", o.p.unwrap_or(0), o.f));
                }
            }
            Verdict {
                passed: false,
                detail,
            }
        }
    }
}

fn injectivity(fault: Option<Fault>) -> Vec<CheckOutcome> {
    grid(&[5, 7], &[1, 2, 3])
        .iter()
        .map(|ps| check_injectivity(ps, 1, 2, fault, SAMPLES, SEED))
        .collect()
}

fn graph_injectivity() -> Verdict {
    combine(injectivity(None))
}

fn hypercube_size() -> Verdict {
    combine(
        grid(&[5, 7, 11], &[1, 2, 3])
            .iter()
            .map(|ps| check_hypercube_size(ps, 1, SAMPLES, SEED))
            .collect(),
    )
}

fn dimension_identity() -> Verdict {
    combine(
        grid(&[5, 7, 11], &[1, 2, 3])
            .iter()
            .map(|ps| check_dimensions(ps, 1, SAMPLES, SEED))
            .collect(),
    )
}

fn graded_multiplicity_free() -> Verdict {
    combine(
        grid(&[5, 7], &[1, 2, 3])
            .iter()
            .flat_map(|ps| {
                [
                    check_graded_multiplicity(ps, 1, SAMPLES, SEED),
                    check_label_injectivity(ps, 1, SAMPLES, SEED),
                ]
            })
            .collect(),
    )
}

fn submodule_lattice() -> Verdict {
    combine(
        grid(&[7], &[1, 2, 3])
            .iter()
            .map(|ps| check_submodule_lattice(ps, 1))
            .collect(),
    )
}

fn filtration_lemmas() -> Verdict {
    combine(
        (1..=3)
            .map(|f| check_filtration(f, SAMPLES, SEED))
            .collect(),
    )
}

fn d0_multiplicity_one() -> Verdict {
    let configs = grid(&[5, 7, 11], &[1, 2, 3]);
    let mut v = combine(
        configs
            .iter()
            .map(|ps| check_d0(ps, 1, SAMPLES, SEED))
            .collect(),
    );
    if !v.passed {
        v.detail.push_str(&d0_diagnostics(&configs));
    }
    v
}

/// Splits the sweep by whether every presentation is 1-deep, and checks
/// the blocks that can be built when some are not.
fn d0_diagnostics(configs: &[Params]) -> String {
    let (mut deep, mut deep_ok, mut shallow, mut partial_free) = (0, 0, 0, 0);
    for ps in configs {
        for t in generic_params(ps, 1, SAMPLES, SEED) {
            if all_presentations_one_deep(&t).unwrap() {
                deep += 1;
                deep_ok += usize::from(d0_full(&t).is_ok_and(|r| r.multiplicity_free));
                continue;
            }
            shallow += 1;
            let blocks = presentations(&t)
                .unwrap()
                .iter()
                .filter_map(|pr| d0_block(ps, pr).ok())
                .collect();
            partial_free += usize::from(D0Report::assemble(t, blocks).multiplicity_free);
        }
    }
    format!(
        "\n      all presentations 1-deep: {deep_ok} of {deep} parameters multiplicity free\
         \n      some presentation shallow: {shallow} parameters, buildable blocks multiplicity free in {partial_free}"
    )
}

fn cls(r: i64, d: i64) -> SerreWeightClass {
    SerreWeightClass { r: vec![r], d }
}

fn classical_f1() -> Verdict {
    let ps = Params::new(7, 1).unwrap();
    let mu = Weight::new(vec![(4, 0)]);
    let expected = [
        (WeylElement::identity(1), [cls(3, 0), cls(1, 4)]),
        (WeylElement::longest(1), [cls(3, 0), cls(3, 3)]),
    ];
    for (w, want) in expected {
        let t = TameParam::new(ps, w.clone(), mu.clone()).unwrap();
        let got = w_question(&t).unwrap();
        if got != want.iter().cloned().collect::<BTreeSet<_>>() {
            return Verdict {
                passed: false,
                detail: format!("w={w}: W? = {got:?}"),
            };
        }
        let rep = d0_full(&t).unwrap();
        let lengths: Vec<usize> = rep.blocks.iter().map(|b| b.constituents.len()).collect();
        if lengths != [2, 2] || rep.all_constituents().len() != 4 {
            return Verdict {
                passed: false,
                detail: format!("w={w}: block lengths {lengths:?}"),
            };
        }
    }
    let dims = factor_dims(&ps, &mu).unwrap();
    Verdict {
        passed: dims[0].fil1 == 10,
        detail: "both weight sets, block lengths 2 + 2".into(),
    }
}

fn recentering_symmetry() -> Verdict {
    combine(
        grid(&[7], &[1, 2])
            .iter()
            .map(|ps| check_symmetry(ps, 1, SAMPLES, SEED))
            .collect(),
    )
}

fn fault_sensitivity() -> Verdict {
    let outcomes = injectivity(Some(Fault::FlippedDotSign));
    match outcomes
        .iter()
        .find(|o| !o.passed && o.counterexample.is_some())
    {
        Some(o) => Verdict {
            passed: true,
            detail: format!(
                "broken action caught at p={} f={}: {}",
                o.p.unwrap_or(0),
                o.f,
                o.counterexample.as_deref().unwrap_or("")
            ),
        },
        None => Verdict {
            passed: false,
            detail: "broken action went unnoticed".into(),
        },
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("graph injectivity", graph_injectivity),
        ("hypercube size", hypercube_size),
        ("dimension identity", dimension_identity),
        ("graded multiplicity freeness", graded_multiplicity_free),
        ("submodule lattice", submodule_lattice),
        ("filtration intersections", filtration_lemmas),
        ("D0 multiplicity one", d0_multiplicity_one),
        ("classical f=1 fixture", classical_f1),
        ("recentering symmetry", recentering_symmetry),
        ("fault sensitivity", fault_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let secs = start.elapsed().as_secs_f64();
        let mark = if v.passed { "PASS" } else { "FAIL" };
        println!("[{:>2}] {mark} {name} ({secs:.1}s): {}", i + 1, v.detail);
        failed += usize::from(!v.passed);
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
