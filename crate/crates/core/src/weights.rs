//! Tame inertial parameters `(w, mu)`, the predicted weight set as a
//! hypercube in the extension graph, and recentered presentations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{t_mu, t_mu_raw};
use crate::lattice::{
    herzig_reflect, herzig_reflect_inv, LambdaWElement, Params, SerreWeightClass, Weight,
    WeylElement,
};

/// Requires `mu - eta` to be 1-deep in the base alcove, i.e.
/// `2 <= <mu, alpha_i> <= p - 2` for all `i`.
pub fn require_one_deep(params: &Params, mu: &Weight) -> Result<()> {
    params.check_rank(mu.rank())?;
    let p = params.p();
    if mu.pairings().iter().all(|m| (2..=p - 2).contains(m)) {
        Ok(())
    } else {
        Err(Error::NotDeep {
            mu: mu.to_string(),
            depth: 1,
        })
    }
}

/// The pairing criterion for 1-genericity: all pairings in `[2, p - 2]`,
/// and the pairing vector is neither constant 2 nor constant `p - 2`.
pub fn is_one_generic(params: &Params, mu: &Weight) -> bool {
    let p = params.p();
    let m = mu.pairings();
    m.iter().all(|x| (2..=p - 2).contains(x))
        && !m.iter().all(|&x| x == 2)
        && !m.iter().all(|&x| x == p - 2)
}

/// The Deligne-Lusztig parameter pair `(w, mu)`, with `mu - eta` 1-deep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameParam {
    params: Params,
    w: WeylElement,
    mu: Weight,
}

impl TameParam {
    pub fn new(params: Params, w: WeylElement, mu: Weight) -> Result<Self> {
        params.check_rank(w.rank())?;
        require_one_deep(&params, &mu)?;
        Ok(TameParam { params, w, mu })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn w(&self) -> &WeylElement {
        &self.w
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    pub fn is_one_generic(&self) -> bool {
        is_one_generic(&self.params, &self.mu)
    }

    fn require_one_generic(&self) -> Result<()> {
        if self.is_one_generic() {
            Ok(())
        } else {
            Err(Error::NotOneGeneric {
                mu: self.mu.to_string(),
            })
        }
    }
}

/// `S_w = w(S_e) = { sign_i omega^(i) }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSet {
    signs: Vec<i64>,
}

impl SignedSet {
    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    /// The complementary set `S_{w_0 w}`.
    pub fn negated(&self) -> SignedSet {
        SignedSet {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// `omega_J = sum_{i in J} sign_i omega^(i)` for the subset `J` given as a mask.
    pub fn point(&self, mask: u32) -> LambdaWElement {
        LambdaWElement::new(
            self.signs
                .iter()
                .enumerate()
                .map(|(i, &s)| if (mask >> i) & 1 == 1 { s } else { 0 })
                .collect(),
        )
    }
}

pub fn s_w(w: &WeylElement) -> SignedSet {
    SignedSet {
        signs: w.flags().iter().map(|&s| if s { -1 } else { 1 }).collect(),
    }
}

/// `t_mu` over the hypercube `{ omega_J : J subset S_w }`, in label order.
///
/// No depth requirement on `mu` beyond what `t_mu` itself needs.
pub fn hypercube(
    params: &Params,
    w: &WeylElement,
    mu: &Weight,
) -> Result<Vec<(u32, SerreWeightClass)>> {
    let signs = s_w(w);
    (0..1u32 << params.f())
        .map(|mask| Ok((mask, t_mu(params, mu, &signs.point(mask))?)))
        .collect()
}

/// The predicted weight set `W?`, of size `2^f`.
pub fn w_question(t: &TameParam) -> Result<BTreeSet<SerreWeightClass>> {
    let cube = hypercube(&t.params, &t.w, &t.mu)?;
    let set: BTreeSet<_> = cube.into_iter().map(|(_, c)| c).collect();
    let expected = 1usize << t.params.f();
    if set.len() != expected {
        return Err(Error::Cardinality {
            expected,
            found: set.len(),
        });
    }
    Ok(set)
}

/// Jordan-Holder constituents of the Deligne-Lusztig reduction, recovered
/// from `W?` through the inverse Herzig reflection.
pub fn jh_dl_reduction(t: &TameParam) -> Result<BTreeSet<SerreWeightClass>> {
    w_question(t)?
        .iter()
        .map(|c| herzig_reflect_inv(&t.params, c))
        .collect()
}

/// Applies the Herzig reflection elementwise.
pub fn reflect_all(
    params: &Params,
    set: &BTreeSet<SerreWeightClass>,
) -> Result<BTreeSet<SerreWeightClass>> {
    set.iter().map(|c| herzig_reflect(params, c)).collect()
}

/// A weight of `W?` written as `F(lambda - eta)` together with the Weyl
/// element that reproduces `W?` from `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub label: u32,
    pub sigma: SerreWeightClass,
    pub lambda: Weight,
    pub w_sigma: WeylElement,
}

impl Presentation {
    pub fn is_one_deep(&self, params: &Params) -> bool {
        require_one_deep(params, &self.lambda).is_ok()
    }
}

/// Whether the hypercube of `(w, mu)` is exactly `target`, stopping at the
/// first point outside it.
fn hypercube_matches(
    params: &Params,
    w: &WeylElement,
    mu: &Weight,
    target: &BTreeSet<SerreWeightClass>,
) -> bool {
    let signs = s_w(w);
    let mut seen = BTreeSet::new();
    for mask in 0..1u32 << params.f() {
        match t_mu(params, mu, &signs.point(mask)) {
            Ok(c) if target.contains(&c) => {
                seen.insert(c);
            }
            _ => return false,
        }
    }
    seen.len() == target.len()
}

/// One presentation per hypercube label; `w_sigma` is found by searching `W`.
pub fn presentations(t: &TameParam) -> Result<Vec<Presentation>> {
    t.require_one_generic()?;
    let params = &t.params;
    let target = w_question(t)?;
    let signs = s_w(&t.w);
    let eta = Weight::eta(params.f());
    (0..1u32 << params.f())
        .map(|label| {
            let point = signs.point(label);
            let sigma = t_mu(params, &t.mu, &point)?;
            let lambda = &t_mu_raw(params, &t.mu, &point)? + &eta;
            let mut hits = WeylElement::all(params.f())
                .filter(|cand| hypercube_matches(params, cand, &lambda, &target));
            let w_sigma = match (hits.next(), hits.next()) {
                (Some(w), None) => w,
                (None, _) => {
                    return Err(Error::Presentation {
                        label,
                        reason: "no Weyl element reproduces W?".into(),
                    })
                }
                (Some(_), Some(_)) => {
                    return Err(Error::Presentation {
                        label,
                        reason: "several Weyl elements reproduce W?".into(),
                    })
                }
            };
            Ok(Presentation {
                label,
                sigma,
                lambda,
                w_sigma,
            })
        })
        .collect()
}

/// Whether every presentation has `lambda - eta` 1-deep. Stronger than the
/// pairing criterion of [`is_one_generic`].
pub fn all_presentations_one_deep(t: &TameParam) -> Result<bool> {
    Ok(presentations(t)?.iter().all(|pr| pr.is_one_deep(&t.params)))
}

#[derive(Serialize)]
struct ParamJson<'a> {
    w: &'a WeylElement,
    mu: &'a Weight,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    label: Vec<usize>,
    lambda: &'a Weight,
    w_sigma: &'a WeylElement,
}

#[derive(Serialize)]
struct WeightReportJson<'a> {
    param: ParamJson<'a>,
    one_generic: bool,
    w_question: &'a BTreeSet<SerreWeightClass>,
    jh_dl: &'a BTreeSet<SerreWeightClass>,
    presentations: Vec<PresentationJson<'a>>,
}

pub(crate) fn mask_indices(f: usize, mask: u32) -> Vec<usize> {
    (0..f).filter(|i| (mask >> i) & 1 == 1).collect()
}

/// Everything the `weights` report prints for one parameter.
#[derive(Clone, Debug)]
pub struct WeightReport {
    pub param: TameParam,
    pub w_question: BTreeSet<SerreWeightClass>,
    pub jh_dl: BTreeSet<SerreWeightClass>,
    pub presentations: Vec<Presentation>,
}

impl WeightReport {
    pub fn compute(t: &TameParam) -> Result<Self> {
        Ok(WeightReport {
            param: t.clone(),
            w_question: w_question(t)?,
            jh_dl: jh_dl_reduction(t)?,
            presentations: presentations(t)?,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = self.param.params.f();
        let doc = WeightReportJson {
            param: ParamJson {
                w: &self.param.w,
                mu: &self.param.mu,
            },
            one_generic: self.param.is_one_generic(),
            w_question: &self.w_question,
            jh_dl: &self.jh_dl,
            presentations: self
                .presentations
                .iter()
                .map(|pr| PresentationJson {
                    label: mask_indices(f, pr.label),
                    lambda: &pr.lambda,
                    w_sigma: &pr.w_sigma,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("weight report serializes")
    }
}
