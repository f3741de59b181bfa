//! Brute-force verification harness: exhaustive sweeps over small
//! configurations, seeded sampling where a sweep would be too large.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::d0::{d0_full, radical_disjointness_check, upperbound_consistency, D0Report};
use crate::envelope::{
    factor_dims, fil_index_intersect, graded_pieces, hom_dim, minimal_elements, sigma_label,
    submodule_leq, upward_closure, v_submodule, vbar_layers, JSet, MultiIndex,
};
use crate::error::Error;
use crate::graph::{coefficient_box, in_base_alcove, in_graph, recenter_check, t_mu_raw_with};
use crate::lattice::{
    dim_serre, is_regular, lattice_class, p_dot, LambdaWElement, LatticeClass, Params, Weight,
    WeylElement,
};
use crate::weights::{
    is_one_generic, jh_dl_reduction, presentations, reflect_all, w_question, TameParam,
};

/// Sweeps larger than this are sampled instead of enumerated.
pub const EXHAUSTIVE_LIMIT: usize = 1_000_000;

/// A deliberately broken ingredient, for checking that the suite notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Fault {
    /// The p-dot action translates by `-p lambda` instead of `p lambda`.
    FlippedDotSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub p_list: Vec<i64>,
    pub f_list: Vec<usize>,
    /// `mu - eta` is required to be this deep in the base alcove.
    pub depth: i64,
    pub radius: i64,
    pub cases: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            p_list: vec![5, 7],
            f_list: vec![1, 2],
            depth: 1,
            radius: 2,
            cases: 10_000,
            seed: 0,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub p: Option<i64>,
    pub f: usize,
    pub passed: bool,
    pub cases: usize,
    /// The first failing case in sweep order.
    pub counterexample: Option<String>,
    pub note: Option<String>,
}

impl CheckOutcome {
    fn new(
        name: &'static str,
        p: Option<i64>,
        f: usize,
        cases: usize,
        first: Option<String>,
    ) -> Self {
        CheckOutcome {
            name,
            p,
            f,
            passed: first.is_none(),
            cases,
            counterexample: first,
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub config: SuiteConfig,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_table(&self) -> String {
        let mut out = format!(
            "{:<28} {:>3} {:>2} {:>8}  result\n",
            "check", "p", "f", "cases"
        );
        for c in &self.checks {
            let p = c.p.map_or_else(|| "-".to_string(), |p| p.to_string());
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:<28} {:>3} {:>2} {:>8}  {verdict}",
                c.name, p, c.f, c.cases
            );
            if let Some(ce) = &c.counterexample {
                let _ = writeln!(out, "    counterexample: {ce}");
            }
            if let Some(note) = &c.note {
                let _ = writeln!(out, "    note: {note}");
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "{} checks, {failed} failed", self.checks.len());
        out
    }
}

/// Runs `check` over `cases` in parallel and returns the first failure in
/// input order.
fn first_failure<T, F>(cases: &[T], check: F) -> Option<String>
where
    T: Sync,
    F: Fn(&T) -> Result<(), String> + Sync,
{
    cases.par_iter().find_map_first(|c| check(c).err())
}

fn rng_for(seed: u64, p: i64, f: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 16) ^ f as u64)
}

/// Pairing vectors with `mu - eta` `depth`-deep, lexicographically; sampled
/// (then sorted) when there are more than [`EXHAUSTIVE_LIMIT`].
pub fn deep_pairings(params: &Params, depth: i64, cases: usize, seed: u64) -> Vec<Vec<i64>> {
    let (lo, hi) = (depth + 1, params.p() - depth - 1);
    if lo > hi {
        return Vec::new();
    }
    let f = params.f();
    let side = (hi - lo + 1) as usize;
    let total = side.checked_pow(f as u32).unwrap_or(usize::MAX);
    let decode = |mut code: usize| {
        let mut m = vec![0; f];
        for slot in m.iter_mut().rev() {
            *slot = lo + (code % side) as i64;
            code /= side;
        }
        m
    };
    if total <= EXHAUSTIVE_LIMIT {
        return (0..total).map(decode).collect();
    }
    let mut rng = rng_for(seed, params.p(), f);
    let sampled: BTreeSet<Vec<i64>> = (0..cases)
        .map(|_| (0..f).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    sampled.into_iter().collect()
}

/// Every 1-generic `(w, mu)` among the deep pairing vectors.
pub fn generic_params(params: &Params, depth: i64, cases: usize, seed: u64) -> Vec<TameParam> {
    deep_pairings(params, depth.max(1), cases, seed)
        .into_iter()
        .map(|m| Weight::from_pairings(&m))
        .filter(|mu| is_one_generic(params, mu))
        .flat_map(|mu| {
            WeylElement::all(params.f())
                .filter_map(|w| TameParam::new(*params, w, mu.clone()).ok())
                .collect::<Vec<_>>()
        })
        .collect()
}

fn describe(t: &TameParam) -> String {
    format!("w={} mu={}", t.w(), t.mu())
}

/// The raw graph map, optionally with the faulty dot action.
fn raw_image(
    params: &Params,
    mu: &Weight,
    w: &LambdaWElement,
    fault: Option<Fault>,
) -> crate::Result<Weight> {
    match fault {
        None => t_mu_raw_with(params, mu, w, |g, x| p_dot(params, g, x)),
        Some(Fault::FlippedDotSign) => t_mu_raw_with(params, mu, w, |g, x| {
            let eta = Weight::eta(x.rank());
            &g.act_scaled(-params.p(), &(x + &eta)) - &eta
        }),
    }
}

/// Distinct classes for all graph points in the coefficient box, and the
/// unit hypercube `{-1,0,1}^f` lies in the graph.
pub fn check_injectivity(
    params: &Params,
    depth: i64,
    radius: i64,
    fault: Option<Fault>,
    cases: usize,
    seed: u64,
) -> CheckOutcome {
    let sweep = deep_pairings(params, depth, cases, seed);
    let f = params.f();
    let first = first_failure(&sweep, |m| {
        let mu = Weight::from_pairings(m);
        let mut seen: BTreeMap<LatticeClass, LambdaWElement> = BTreeMap::new();
        for pt in coefficient_box(f, radius.max(1)) {
            let raw = raw_image(params, &mu, &pt, fault).map_err(|e| e.to_string())?;
            let inside = in_base_alcove(params, &raw);
            let unit = pt.coeffs().iter().all(|c| c.abs() <= 1);
            if unit && !inside {
                return Err(format!("mu={mu}: unit point {pt} falls outside the graph"));
            }
            let within = pt.coeffs().iter().all(|c| c.abs() <= radius);
            if !inside || !within {
                continue;
            }
            let class = lattice_class(params, &raw);
            if let Some(prev) = seen.insert(class.clone(), pt.clone()) {
                return Err(format!(
                    "mu={mu}: {prev} and {pt} both map to pairings {:?}, d={}",
                    class.pairings, class.d
                ));
            }
        }
        Ok(())
    });
    CheckOutcome::new("graph_injectivity", Some(params.p()), f, sweep.len(), first)
}

/// `sigma_J = sigma_J'` exactly when `omega_J = omega_J'`.
pub fn check_label_injectivity(
    params: &Params,
    depth: i64,
    cases: usize,
    seed: u64,
) -> CheckOutcome {
    let sweep = deep_pairings(params, depth, cases, seed);
    let f = params.f();
    let first = first_failure(&sweep, |m| {
        let mu = Weight::from_pairings(m);
        let labels: Vec<(JSet, LambdaWElement, _)> = JSet::all(f)
            .map(|j| Ok((j, j.omega(f), sigma_label(params, &mu, &j)?)))
            .collect::<crate::Result<_>>()
            .map_err(|e| format!("mu={mu}: {e}"))?;
        for (j, om, c) in &labels {
            for (j2, om2, c2) in &labels {
                if (c == c2) != (om == om2) {
                    return Err(format!("mu={mu}: labels {j} and {j2}"));
                }
            }
        }
        Ok(())
    });
    CheckOutcome::new("label_injectivity", Some(params.p()), f, sweep.len(), first)
}

pub fn check_hypercube_size(params: &Params, depth: i64, cases: usize, seed: u64) -> CheckOutcome {
    let sweep = generic_params(params, depth, cases, seed);
    let expected = 1usize << params.f();
    let first = first_failure(&sweep, |t| match w_question(t) {
        Ok(set) if set.len() == expected => Ok(()),
        Ok(set) => Err(format!("{}: |W?| = {}", describe(t), set.len())),
        Err(e) => Err(format!("{}: {e}", describe(t))),
    });
    CheckOutcome::new(
        "hypercube_size",
        Some(params.p()),
        params.f(),
        sweep.len(),
        first,
    )
}

/// Every predicted weight has a unique presentation, and the Herzig
/// reflection carries the Deligne-Lusztig constituents onto `W?`.
pub fn check_presentations(params: &Params, depth: i64, cases: usize, seed: u64) -> CheckOutcome {
    let sweep = generic_params(params, depth, cases, seed);
    let first = first_failure(&sweep, |t| {
        let err = |e: Error| format!("{}: {e}", describe(t));
        presentations(t).map_err(err)?;
        let jh = jh_dl_reduction(t).map_err(err)?;
        if jh.iter().any(|c| !is_regular(params, &c.representative())) {
            return Err(format!("{}: irregular constituent", describe(t)));
        }
        if reflect_all(params, &jh).map_err(err)? != w_question(t).map_err(err)? {
            return Err(format!("{}: reflection does not recover W?", describe(t)));
        }
        Ok(())
    });
    CheckOutcome::new(
        "presentations_and_reflection",
        Some(params.p()),
        params.f(),
        sweep.len(),
        first,
    )
}

/// Total dimension `(2p)^f` and the per-factor identities.
pub fn check_dimensions(params: &Params, depth: i64, cases: usize, seed: u64) -> CheckOutcome {
    let sweep = deep_pairings(params, depth, cases, seed);
    let p = params.p();
    let expected = (2 * p as u64).pow(params.f() as u32);
    let first = first_failure(&sweep, |m| {
        let mu = Weight::from_pairings(m);
        let err = |e: Error| format!("mu={mu}: {e}");
        let direct: u64 = JSet::all(params.f())
            .map(|j| sigma_label(params, &mu, &j).map(|c| dim_serre(&c)))
            .sum::<crate::Result<u64>>()
            .map_err(err)?;
        let graded = graded_pieces(params, &mu).map_err(err)?.total_dim();
        if direct != expected || graded != expected {
            return Err(format!(
                "mu={mu}: total {direct} (graded {graded}) != {expected}"
            ));
        }
        for (i, (d, &mi)) in factor_dims(params, &mu)
            .map_err(err)?
            .iter()
            .zip(m)
            .enumerate()
        {
            let fil1 = (2 * p - mi) as u64;
            if d.cosocle + d.middle + d.socle != 2 * p as u64
                || d.fil1 != fil1
                || d.weyl_fil1 != fil1
            {
                return Err(format!("mu={mu}: factor {i} dims {d:?}"));
            }
        }
        Ok(())
    });
    CheckOutcome::new(
        "dimension_identity",
        Some(p),
        params.f(),
        sweep.len(),
        first,
    )
}

/// No repeated class inside any `W_k`, nor among the covers of any label.
pub fn check_graded_multiplicity(
    params: &Params,
    depth: i64,
    cases: usize,
    seed: u64,
) -> CheckOutcome {
    let sweep = deep_pairings(params, depth, cases, seed);
    let first = first_failure(&sweep, |m| {
        let mu = Weight::from_pairings(m);
        let err = |e: Error| format!("mu={mu}: {e}");
        graded_pieces(params, &mu).map_err(err)?;
        for j in JSet::all(params.f()) {
            vbar_layers(params, &mu, &j).map_err(|e| format!("mu={mu}, J={j}: {e}"))?;
        }
        Ok(())
    });
    CheckOutcome::new(
        "graded_multiplicity_free",
        Some(params.p()),
        params.f(),
        sweep.len(),
        first,
    )
}

/// `J subseteq J'` implies `jh(V_J') subseteq jh(V_J)`, the order agrees,
/// and `Vbar_J` sees exactly the next layer of `V_J`.
pub fn check_submodule_lattice(params: &Params, depth: i64) -> CheckOutcome {
    let f = params.f();
    let Some(m) = deep_pairings(params, depth, 1, 0).into_iter().next() else {
        return CheckOutcome::new("submodule_lattice", Some(params.p()), f, 0, None);
    };
    let mu = Weight::from_pairings(&m);
    let labels: Vec<JSet> = JSet::all(f).collect();
    let subs: Vec<_> = labels
        .iter()
        .map(|j| v_submodule(params, &mu, j).expect("mu is deep"))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|a| (0..labels.len()).map(move |b| (a, b)))
        .collect();
    let mut first = first_failure(&pairs, |&(a, b)| {
        let (j, jp) = (&labels[a], &labels[b]);
        if submodule_leq(jp, j) != j.is_subset(jp) {
            return Err(format!("order disagrees on {j}, {jp}"));
        }
        if j.is_subset(jp) && !subs[b].jh.is_subset(&subs[a].jh) {
            return Err(format!("jh(V_{jp}) not inside jh(V_{j})"));
        }
        Ok(())
    });
    if first.is_none() {
        first = labels.iter().zip(&subs).find_map(|(j, sub)| {
            let vb = vbar_layers(params, &mu, j).ok()?;
            let next: BTreeSet<JSet> = sub
                .jh
                .iter()
                .filter(|x| x.len() == j.len() + 1)
                .copied()
                .collect();
            let got: BTreeSet<JSet> = vb.layer1.iter().map(|(x, _)| *x).collect();
            (next != got).then(|| format!("Vbar layer of {j} disagrees with V_{j}"))
        });
    }
    CheckOutcome::new("submodule_lattice", Some(params.p()), f, pairs.len(), first)
}

/// Hom dimensions partition the labels, and `F(mu - eta)` has `2^f` of them.
pub fn check_hom_partition(params: &Params, depth: i64, cases: usize, seed: u64) -> CheckOutcome {
    let sweep = deep_pairings(params, depth, cases, seed);
    let f = params.f();
    let first = first_failure(&sweep, |m| {
        let mu = Weight::from_pairings(m);
        let err = |e: Error| format!("mu={mu}: {e}");
        let classes: BTreeSet<_> = JSet::all(f)
            .map(|j| sigma_label(params, &mu, &j))
            .collect::<crate::Result<_>>()
            .map_err(err)?;
        let mut total = 0;
        for c in &classes {
            total += hom_dim(params, &mu, c).map_err(err)?.0;
        }
        let base = sigma_label(params, &mu, &JSet::empty()).map_err(err)?;
        let at_base = hom_dim(params, &mu, &base).map_err(err)?.0;
        if total != 1 << (2 * f) || at_base != 1 << f {
            return Err(format!("mu={mu}: total {total}, base {at_base}"));
        }
        Ok(())
    });
    CheckOutcome::new("hom_partition", Some(params.p()), f, sweep.len(), first)
}

fn antichains(f: usize) -> Vec<BTreeSet<MultiIndex>> {
    let all: Vec<MultiIndex> = MultiIndex::all(f).collect();
    (0u64..1 << all.len())
        .map(|bits| {
            all.iter()
                .enumerate()
                .filter(|(i, _)| (bits >> i) & 1 == 1)
                .map(|(_, k)| k.clone())
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| minimal_elements(s) == *s)
        .collect()
}

fn random_antichain(f: usize, rng: &mut ChaCha8Rng) -> BTreeSet<MultiIndex> {
    let mut all: Vec<MultiIndex> = MultiIndex::all(f).collect();
    all.shuffle(rng);
    let take = rng.gen_range(0..=f + 2);
    minimal_elements(&all.into_iter().take(take).collect())
}

/// `closure(Fil^I cap Fil^I') = closure(I) cap closure(I')`, exhaustive over
/// pairs of antichains for `f <= 2`, sampled beyond.
pub fn check_filtration(f: usize, cases: usize, seed: u64) -> CheckOutcome {
    let pairs: Vec<(BTreeSet<MultiIndex>, BTreeSet<MultiIndex>)> = if f <= 2 {
        let chains = antichains(f);
        chains
            .iter()
            .flat_map(|a| chains.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    } else {
        let mut rng = rng_for(seed, 0, f);
        (0..cases)
            .map(|_| (random_antichain(f, &mut rng), random_antichain(f, &mut rng)))
            .collect()
    };
    let fmt_set = |s: &BTreeSet<MultiIndex>| {
        s.iter()
            .map(MultiIndex::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let first = first_failure(&pairs, |(a, b)| {
        let meet = fil_index_intersect(a, b);
        let lhs = upward_closure(f, &meet);
        let rhs: BTreeSet<_> = upward_closure(f, a)
            .intersection(&upward_closure(f, b))
            .cloned()
            .collect();
        if lhs != rhs || minimal_elements(&meet) != meet {
            return Err(format!("I = [{}], I' = [{}]", fmt_set(a), fmt_set(b)));
        }
        Ok(())
    });
    CheckOutcome::new("filtration_intersection", None, f, pairs.len(), first)
}

fn judge_d0(t: &TameParam, rep: &D0Report) -> Result<(), String> {
    let f = t.params().f();
    let w = w_question(t).map_err(|e| e.to_string())?;
    let cosocles: BTreeSet<_> = rep.blocks.iter().map(|b| b.cosocle.clone()).collect();
    if !rep.multiplicity_free || rep.all_constituents().len() != 1 << (2 * f) {
        return Err("constituents are not 4^f distinct classes".into());
    }
    if cosocles != w {
        return Err("block cosocles differ from W?".into());
    }
    if !radical_disjointness_check(rep) || !upperbound_consistency(rep) {
        return Err("Hom-level checks fail".into());
    }
    Ok(())
}

/// `D_0` is multiplicity free with `4^f` constituents for every 1-generic
/// parameter.
pub fn check_d0(params: &Params, depth: i64, cases: usize, seed: u64) -> CheckOutcome {
    let sweep = generic_params(params, depth, cases, seed);
    let verdicts: Vec<Result<(), (String, bool)>> = sweep
        .par_iter()
        .map(|t| match d0_full(t) {
            Ok(rep) => judge_d0(t, &rep).map_err(|e| (format!("{}: {e}", describe(t)), false)),
            Err(e) => Err((
                format!("{}: {e}", describe(t)),
                matches!(e, Error::PresentationNotDeep { .. }),
            )),
        })
        .collect();
    let failures: Vec<&(String, bool)> = verdicts.iter().filter_map(|v| v.as_ref().err()).collect();
    let first = failures.first().map(|(msg, _)| msg.clone());
    let mut out = CheckOutcome::new(
        "d0_multiplicity_one",
        Some(params.p()),
        params.f(),
        sweep.len(),
        first,
    );
    if !failures.is_empty() {
        let shallow = failures.iter().filter(|(_, s)| *s).count();
        out = out.with_note(format!(
            "{} of {} parameters fail; {} of the failures have a presentation that is not 1-deep",
            failures.len(),
            sweep.len(),
            shallow
        ));
    }
    out
}

/// Recomputing `D_0` from any equivalent presentation gives the same blocks.
pub fn check_d0_presentation_independence(
    params: &Params,
    depth: i64,
    cases: usize,
    seed: u64,
) -> CheckOutcome {
    let sweep = generic_params(params, depth, cases, seed);
    let blocks_of = |rep: &D0Report| -> BTreeMap<_, _> {
        rep.blocks
            .iter()
            .map(|b| (b.cosocle.clone(), b.classes()))
            .collect()
    };
    let mut compared = 0usize;
    let results: Vec<(usize, Option<String>)> = sweep
        .par_iter()
        .map(|t| {
            let Ok(rep) = d0_full(t) else {
                return (0, None);
            };
            let reference = blocks_of(&rep);
            let mut n = 0;
            for pr in presentations(t).unwrap_or_default() {
                let Ok(t2) = TameParam::new(*params, pr.w_sigma.clone(), pr.lambda.clone()) else {
                    continue;
                };
                let Ok(rep2) = d0_full(&t2) else { continue };
                n += 1;
                if blocks_of(&rep2) != reference {
                    return (
                        n,
                        Some(format!("{} vs w={} mu={}", describe(t), t2.w(), t2.mu())),
                    );
                }
            }
            (n, None)
        })
        .collect();
    let mut first = None;
    for (n, fail) in results {
        compared += n;
        if first.is_none() {
            first = fail;
        }
    }
    CheckOutcome::new(
        "d0_presentation_independence",
        Some(params.p()),
        params.f(),
        compared,
        first,
    )
}

/// `mu -> mu + (1,1)^(0)` keeps every `r` and shifts every `d` by one.
pub fn check_twist(params: &Params, depth: i64, cases: usize, seed: u64) -> CheckOutcome {
    let sweep = generic_params(params, depth, cases, seed);
    let f = params.f();
    let modulus = params.central_modulus();
    let shift = Weight::central(f, 0, 1);
    let first = first_failure(&sweep, |t| {
        let t2 =
            TameParam::new(*params, t.w().clone(), t.mu() + &shift).map_err(|e| e.to_string())?;
        let (a, b) = match (d0_full(t), d0_full(&t2)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(_), Err(_)) => return Ok(()),
            _ => {
                return Err(format!(
                    "{}: twist changes whether D_0 is defined",
                    describe(t)
                ))
            }
        };
        if a.multiplicity_free != b.multiplicity_free {
            return Err(format!(
                "{}: twist changes multiplicity freeness",
                describe(t)
            ));
        }
        for (x, y) in a.blocks.iter().zip(&b.blocks) {
            for (c, c2) in x.constituents.iter().zip(&y.constituents) {
                if c.class.r != c2.class.r || (c.class.d + 1).rem_euclid(modulus) != c2.class.d {
                    return Err(format!(
                        "{}: {} twists to {}",
                        describe(t),
                        c.class,
                        c2.class
                    ));
                }
            }
        }
        Ok(())
    });
    CheckOutcome::new("central_twist", Some(params.p()), f, sweep.len(), first)
}

/// The recentering symmetry on every pair of unit-hypercube points.
pub fn check_symmetry(params: &Params, depth: i64, cases: usize, seed: u64) -> CheckOutcome {
    let sweep = deep_pairings(params, depth, cases, seed);
    let unit: Vec<LambdaWElement> = coefficient_box(params.f(), 1).collect();
    let counted: Vec<(usize, Option<String>)> = sweep
        .par_iter()
        .map(|m| {
            let mu = Weight::from_pairings(m);
            let mut n = 0;
            for w0 in &unit {
                let Ok(raw) = raw_image(params, &mu, w0, None) else {
                    continue;
                };
                let lambda = &raw + &Weight::eta(params.f());
                for wp in &unit {
                    if !in_graph(params, &lambda, wp).unwrap_or(false) {
                        continue;
                    }
                    n += 1;
                    match recenter_check(params, &mu, w0, wp) {
                        Ok(true) => {}
                        Ok(false) => return (n, Some(format!("mu={mu}: w0={w0}, w'={wp}"))),
                        Err(e) => return (n, Some(format!("mu={mu}: w0={w0}, w'={wp}: {e}"))),
                    }
                }
            }
            (n, None)
        })
        .collect();
    let cases = counted.iter().map(|(n, _)| n).sum();
    let first = counted.into_iter().find_map(|(_, fail)| fail);
    CheckOutcome::new(
        "recentering_symmetry",
        Some(params.p()),
        params.f(),
        cases,
        first,
    )
}

fn run_config(cfg: &SuiteConfig, params: &Params) -> Vec<CheckOutcome> {
    let (d, n, s) = (cfg.depth, cfg.cases, cfg.seed);
    let mut out = vec![check_injectivity(params, d, cfg.radius, cfg.fault, n, s)];
    if cfg.fault.is_some() {
        return out;
    }
    out.extend([
        check_label_injectivity(params, d, n, s),
        check_hypercube_size(params, d, n, s),
        check_presentations(params, d, n, s),
        check_dimensions(params, d, n, s),
        check_graded_multiplicity(params, d, n, s),
        check_submodule_lattice(params, d),
        check_hom_partition(params, d, n, s),
        check_symmetry(params, d, n, s),
        check_d0(params, d, n, s),
        check_twist(params, d, n, s),
    ]);
    if params.f() <= 2 {
        out.push(check_d0_presentation_independence(params, d, n, s));
    }
    out
}

/// Runs every check on every `(p, f)` of the configuration. Invalid
/// `(p, f)` pairs are reported as failures rather than skipped.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteOutcome {
    let mut grid: Vec<(i64, usize)> = cfg
        .p_list
        .iter()
        .flat_map(|&p| cfg.f_list.iter().map(move |&f| (p, f)))
        .collect();
    grid.sort_unstable();
    grid.dedup();
    let mut checks: Vec<CheckOutcome> = grid
        .par_iter()
        .flat_map_iter(|&(p, f)| match Params::new(p, f) {
            Ok(params) => run_config(cfg, &params),
            Err(e) => vec![CheckOutcome::new(
                "parameters",
                Some(p),
                f,
                0,
                Some(e.to_string()),
            )],
        })
        .collect();
    if cfg.fault.is_none() {
        let mut fs = cfg.f_list.clone();
        fs.sort_unstable();
        fs.dedup();
        checks.extend(fs.iter().map(|&f| check_filtration(f, cfg.cases, cfg.seed)));
    }
    checks.sort_by(|a, b| (a.name, a.p, a.f).cmp(&(b.name, b.p, b.f)));
    SuiteOutcome {
        config: cfg.clone(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64, f: usize) -> Params {
        Params::new(p, f).unwrap()
    }

    #[test]
    fn sweeps_are_sorted_and_complete() {
        let sweep = deep_pairings(&params(7, 2), 1, 0, 0);
        assert_eq!(sweep.len(), 16);
        assert_eq!(sweep.first().unwrap(), &vec![2, 2]);
        assert_eq!(sweep.last().unwrap(), &vec![5, 5]);
        assert!(deep_pairings(&params(5, 1), 2, 0, 0).is_empty());
        // p = 5, f = 1: both deep pairings are excluded by the genericity rule
        assert!(generic_params(&params(5, 1), 1, 0, 0).is_empty());
        assert_eq!(generic_params(&params(7, 1), 1, 0, 0).len(), 4);
    }

    #[test]
    fn antichain_counts() {
        // antichains of a chain of length 3, and of the 3 x 3 grid
        assert_eq!(antichains(1).len(), 4);
        assert_eq!(antichains(2).len(), 20);
    }

    #[test]
    fn sampling_is_seeded() {
        let mut a = rng_for(5, 7, 3);
        let mut b = rng_for(5, 7, 3);
        assert_eq!(random_antichain(3, &mut a), random_antichain(3, &mut b));
        assert_eq!(check_filtration(3, 50, 9), check_filtration(3, 50, 9));
    }

    #[test]
    fn small_checks_pass() {
        let ps = params(7, 2);
        for out in [
            check_injectivity(&ps, 1, 2, None, 0, 0),
            check_label_injectivity(&ps, 1, 0, 0),
            check_hypercube_size(&ps, 1, 0, 0),
            check_dimensions(&ps, 1, 0, 0),
            check_submodule_lattice(&ps, 1),
            check_symmetry(&ps, 1, 0, 0),
            check_filtration(2, 0, 0),
        ] {
            assert!(out.passed, "{out:?}");
            assert!(out.cases > 0, "{out:?}");
        }
    }

    #[test]
    fn fault_is_detected() {
        let out = check_injectivity(&params(7, 1), 1, 2, Some(Fault::FlippedDotSign), 0, 0);
        assert!(!out.passed);
        assert!(out.counterexample.unwrap().starts_with("mu=2,0"));
    }

    #[test]
    fn suite_table() {
        let cfg = SuiteConfig {
            p_list: vec![7],
            f_list: vec![1],
            ..SuiteConfig::default()
        };
        let out = run_suite(&cfg);
        let table = out.render_table();
        assert!(table.starts_with("check"));
        assert!(table.contains("graph_injectivity"));
        assert!(out.all_passed(), "{table}");
    }
}
