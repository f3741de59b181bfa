//! The Breuil-Paskunas object at label level: `D_0^v(sigma)` as the quotient
//! of `R_mu` by the `V_J` with `J subset S_w`, `#J = 1`, and the direct sum
//! over the predicted weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::envelope::{sigma_label, JSet};
use crate::error::{Error, Result};
use crate::lattice::{Params, SerreWeightClass, Weight, WeylElement};
use crate::weights::{mask_indices, presentations, Presentation, TameParam};

pub const D0_ASSUMPTIONS: [&str; 1] = ["V_J_exact"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D0Constituent {
    pub j: JSet,
    pub class: SerreWeightClass,
    pub layer: usize,
}

/// One block `D_0^v(sigma)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D0SigmaReport {
    pub label: u32,
    pub sigma: SerreWeightClass,
    pub lambda: Weight,
    pub w_sigma: WeylElement,
    pub constituents: Vec<D0Constituent>,
    pub cosocle: SerreWeightClass,
}

impl D0SigmaReport {
    pub fn classes(&self) -> BTreeSet<SerreWeightClass> {
        self.constituents.iter().map(|c| c.class.clone()).collect()
    }
}

/// Builds a block from a presentation `sigma = F(lambda - eta)`.
///
/// Surviving labels are the `J` disjoint from `S_{w_sigma}`, i.e. the
/// subsets of `S_{w_0 w_sigma}`.
pub fn d0_block(params: &Params, pres: &Presentation) -> Result<D0SigmaReport> {
    if !pres.is_one_deep(params) {
        return Err(Error::PresentationNotDeep {
            sigma: pres.sigma.to_string(),
            lambda: pres.lambda.to_string(),
        });
    }
    let flags = pres.w_sigma.mask();
    let mut constituents = (0..1u32 << params.f())
        .map(|k| {
            let j = JSet::new(k & flags, k & !flags);
            Ok(D0Constituent {
                class: sigma_label(params, &pres.lambda, &j)?,
                layer: j.len(),
                j,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    constituents.sort_by_key(|c| (c.layer, c.j));
    let cosocle = constituents[0].class.clone();
    if cosocle != pres.sigma {
        return Err(Error::Internal(format!(
            "block cosocle {cosocle} differs from {}",
            pres.sigma
        )));
    }
    Ok(D0SigmaReport {
        label: pres.label,
        sigma: pres.sigma.clone(),
        lambda: pres.lambda.clone(),
        w_sigma: pres.w_sigma.clone(),
        constituents,
        cosocle,
    })
}

pub fn d0_sigma(t: &TameParam, label: u32) -> Result<D0SigmaReport> {
    let f = t.params().f();
    if label >> f != 0 {
        return Err(Error::PreconditionViolation(format!(
            "hypercube label {label:#b} exceeds f = {f}"
        )));
    }
    let pres = presentations(t)?;
    d0_block(t.params(), &pres[label as usize])
}

/// `D_0^v(rho) = sum over sigma in W? of D_0^v(sigma)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D0Report {
    pub param: TameParam,
    pub blocks: Vec<D0SigmaReport>,
    pub multiplicity_free: bool,
}

impl D0Report {
    /// Assembles blocks without judging them; `multiplicity_free` records
    /// whether any class repeats.
    pub fn assemble(param: TameParam, mut blocks: Vec<D0SigmaReport>) -> Self {
        blocks.sort_by_key(|b| b.label);
        let multiplicity_free = Self::counts(&blocks).values().all(|&n| n == 1);
        D0Report {
            param,
            blocks,
            multiplicity_free,
        }
    }

    fn counts(blocks: &[D0SigmaReport]) -> BTreeMap<&SerreWeightClass, usize> {
        let mut counts = BTreeMap::new();
        for c in blocks.iter().flat_map(|b| &b.constituents) {
            *counts.entry(&c.class).or_insert(0) += 1;
        }
        counts
    }

    /// The multiset of all constituent classes.
    pub fn all_constituents(&self) -> BTreeMap<&SerreWeightClass, usize> {
        Self::counts(&self.blocks)
    }

    pub fn total_constituents(&self) -> usize {
        self.blocks.iter().map(|b| b.constituents.len()).sum()
    }

    pub fn cosocles(&self) -> BTreeSet<&SerreWeightClass> {
        self.blocks.iter().map(|b| &b.cosocle).collect()
    }
}

pub fn d0_full(t: &TameParam) -> Result<D0Report> {
    let pres = presentations(t)?;
    let blocks = pres
        .par_iter()
        .map(|pr| d0_block(t.params(), pr))
        .collect::<Result<Vec<_>>>()?;
    let rep = D0Report::assemble(t.clone(), blocks);
    if let Some((class, &count)) = rep.all_constituents().iter().find(|(_, &n)| n > 1) {
        return Err(Error::Multiplicity {
            class: class.to_string(),
            count,
        });
    }
    Ok(rep)
}

/// No constituent of positive layer is one of the cosocles.
pub fn radical_disjointness_check(rep: &D0Report) -> bool {
    let cosocles = rep.cosocles();
    rep.blocks
        .iter()
        .flat_map(|b| &b.constituents)
        .filter(|c| c.layer > 0)
        .all(|c| !cosocles.contains(&c.class))
}

/// Each block has its own cosocle exactly once and no other predicted weight.
pub fn upperbound_consistency(rep: &D0Report) -> bool {
    let cosocles = rep.cosocles();
    rep.blocks.iter().all(|b| {
        cosocles.iter().all(|&w| {
            let n = b.constituents.iter().filter(|c| c.class == *w).count();
            n == usize::from(*w == b.cosocle)
        })
    })
}

#[derive(Serialize)]
struct ConstituentJson<'a> {
    plus: Vec<usize>,
    minus: Vec<usize>,
    r: &'a [i64],
    d: i64,
    layer: usize,
    dual_layer: usize,
}

#[derive(Serialize)]
struct BlockJson<'a> {
    label: Vec<usize>,
    sigma: &'a SerreWeightClass,
    lambda: &'a Weight,
    w_sigma: &'a WeylElement,
    constituents: Vec<ConstituentJson<'a>>,
}

#[derive(Serialize)]
struct ChecksJson {
    radical_disjoint: bool,
    upperbound_consistent: bool,
}

#[derive(Serialize)]
struct ParamJson<'a> {
    w: &'a WeylElement,
    mu: &'a Weight,
}

#[derive(Serialize)]
struct D0Json<'a> {
    param: ParamJson<'a>,
    assumptions: [&'static str; 1],
    blocks: Vec<BlockJson<'a>>,
    total_constituents: usize,
    multiplicity_free: bool,
    checks: ChecksJson,
}

impl D0Report {
    pub fn to_json(&self) -> serde_json::Value {
        let f = self.param.params().f();
        let doc = D0Json {
            param: ParamJson {
                w: self.param.w(),
                mu: self.param.mu(),
            },
            assumptions: D0_ASSUMPTIONS,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson {
                    label: mask_indices(f, b.label),
                    sigma: &b.sigma,
                    lambda: &b.lambda,
                    w_sigma: &b.w_sigma,
                    constituents: b
                        .constituents
                        .iter()
                        .map(|c| ConstituentJson {
                            plus: mask_indices(f, c.j.plus),
                            minus: mask_indices(f, c.j.minus),
                            r: &c.class.r,
                            d: c.class.d,
                            layer: c.layer,
                            dual_layer: f - c.layer,
                        })
                        .collect(),
                })
                .collect(),
            total_constituents: self.total_constituents(),
            multiplicity_free: self.multiplicity_free,
            checks: ChecksJson {
                radical_disjoint: radical_disjointness_check(self),
                upperbound_consistent: upperbound_consistency(self),
            },
        };
        serde_json::to_value(doc).expect("d0 report serializes")
    }

    /// One cluster per block, edges along one-element covers.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph d0 {\n  rankdir=TB;\n");
        for (bi, b) in self.blocks.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{bi} {{");
            let _ = writeln!(out, "    label=\"sigma = {}\";", b.sigma);
            for (ci, c) in b.constituents.iter().enumerate() {
                let _ = writeln!(out, "    b{bi}_{ci} [label=\"{} {}\"];", c.j, c.class);
            }
            for (ci, c) in b.constituents.iter().enumerate() {
                for (cj, d) in b.constituents.iter().enumerate() {
                    if c.j.is_subset(&d.j) && d.layer == c.layer + 1 {
                        let _ = writeln!(out, "    b{bi}_{ci} -> b{bi}_{cj};");
                    }
                }
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}
