//! Label-level model of the projective envelope `R_mu` of `F(mu - eta)`:
//! the multifiltration indexed by `{0,1,2}^f`, its graded pieces, the
//! submodules `V_J` and Hom dimensions.
//!
//! Modules are never built. Everything is a statement about labels
//! `J subset S = {+-omega^(i)}`, the layer `k(J)` and the class `sigma_J`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{adjacent, ext1_dim, t_mu};
use crate::lattice::{
    dim_serre, p_dot, serre_class, ExtAffineElement, LambdaWElement, Params, SerreWeightClass,
    Weight, WeylElement,
};
use crate::weights::require_one_deep;

/// Assumption tags attached to every envelope report.
pub const ENVELOPE_ASSUMPTIONS: [&str; 2] = ["mu_minus_eta_1_deep", "V_J_exact"];

/// A subset of `S`: bit `i` of `plus` is `+omega^(i)`, bit `i` of `minus`
/// is `-omega^(i)`. Both bits may be set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JSet {
    pub plus: u32,
    pub minus: u32,
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| (mask >> i) & 1 == 1).collect()
}

impl JSet {
    pub fn new(plus: u32, minus: u32) -> Self {
        JSet { plus, minus }
    }

    pub fn empty() -> Self {
        JSet::default()
    }

    /// All `4^f` subsets of `S`, ordered by `(plus, minus)`.
    pub fn all(f: usize) -> impl Iterator<Item = JSet> {
        let side = 1u32 << f;
        (0..side).flat_map(move |plus| (0..side).map(move |minus| JSet { plus, minus }))
    }

    pub fn len(&self) -> usize {
        (self.plus.count_ones() + self.minus.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.plus == 0 && self.minus == 0
    }

    pub fn is_subset(&self, other: &JSet) -> bool {
        self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    pub fn union(&self, other: &JSet) -> JSet {
        JSet::new(self.plus | other.plus, self.minus | other.minus)
    }

    pub fn difference(&self, other: &JSet) -> JSet {
        JSet::new(self.plus & !other.plus, self.minus & !other.minus)
    }

    pub fn is_disjoint(&self, other: &JSet) -> bool {
        self.plus & other.plus == 0 && self.minus & other.minus == 0
    }

    /// `omega_J`, the sum of the members of `J`.
    pub fn omega(&self, f: usize) -> LambdaWElement {
        LambdaWElement::new(
            (0..f)
                .map(|i| ((self.plus >> i) & 1) as i64 - ((self.minus >> i) & 1) as i64)
                .collect(),
        )
    }

    /// Labels `J' supset J` with one more element.
    pub fn covers(&self, f: usize) -> Vec<JSet> {
        let mut out = Vec::new();
        for i in 0..f {
            let bit = 1u32 << i;
            if self.plus & bit == 0 {
                out.push(JSet::new(self.plus | bit, self.minus));
            }
            if self.minus & bit == 0 {
                out.push(JSet::new(self.plus, self.minus | bit));
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for JSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in bits(self.plus | self.minus) {
            if (self.plus >> i) & 1 == 1 {
                parts.push(format!("+{i}"));
            }
            if (self.minus >> i) & 1 == 1 {
                parts.push(format!("-{i}"));
            }
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for JSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("JSet", 2)?;
        s.serialize_field("plus", &bits(self.plus))?;
        s.serialize_field("minus", &bits(self.minus))?;
        s.end()
    }
}

/// An index `k in {0,1,2}^f` of the tensor multifiltration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(k: Vec<u8>) -> Result<Self> {
        if let Some(bad) = k.iter().find(|&&x| x > 2) {
            return Err(Error::PreconditionViolation(format!(
                "multi-index entries lie in {{0,1,2}}, got {bad}"
            )));
        }
        Ok(MultiIndex(k))
    }

    pub fn zero(f: usize) -> Self {
        MultiIndex(vec![0; f])
    }

    /// Every index in `{0,1,2}^f`, lexicographically.
    pub fn all(f: usize) -> impl Iterator<Item = MultiIndex> {
        (0..3u32.pow(f as u32)).map(move |mut code| {
            let mut k = vec![0u8; f];
            for slot in k.iter_mut().rev() {
                *slot = (code % 3) as u8;
                code /= 3;
            }
            MultiIndex(k)
        })
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    /// Componentwise order.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// `k_{i+1}(J) = #({+-omega^(i)} cap J)`.
pub fn k_of(f: usize, j: &JSet) -> MultiIndex {
    let mut k = vec![0u8; f];
    for i in 0..f {
        k[(i + 1) % f] = (((j.plus >> i) & 1) + ((j.minus >> i) & 1)) as u8;
    }
    MultiIndex(k)
}

/// `Fil^k cap Fil^k' = Fil^k''` with `k'' = max(k, k')`.
pub fn fil_meet(k1: &MultiIndex, k2: &MultiIndex) -> MultiIndex {
    MultiIndex(k1.0.iter().zip(&k2.0).map(|(a, b)| *a.max(b)).collect())
}

/// The minimal elements of a set of indices.
pub fn minimal_elements(set: &BTreeSet<MultiIndex>) -> BTreeSet<MultiIndex> {
    set.iter()
        .filter(|k| !set.iter().any(|other| other != *k && other.leq(k)))
        .cloned()
        .collect()
}

/// Every index lying above some generator.
pub fn upward_closure(f: usize, generators: &BTreeSet<MultiIndex>) -> BTreeSet<MultiIndex> {
    MultiIndex::all(f)
        .filter(|k| generators.iter().any(|g| g.leq(k)))
        .collect()
}

/// `Fil^I cap Fil^I' = sum of Fil^{max(k, k')}`, returned as the antichain
/// of minimal generators.
pub fn fil_index_intersect(
    i1: &BTreeSet<MultiIndex>,
    i2: &BTreeSet<MultiIndex>,
) -> BTreeSet<MultiIndex> {
    let meets: BTreeSet<MultiIndex> = i1
        .iter()
        .flat_map(|a| i2.iter().map(move |b| fil_meet(a, b)))
        .collect();
    minimal_elements(&meets)
}

/// `sigma_J = F(t_mu(omega_J))`.
pub fn sigma_label(params: &Params, mu: &Weight, j: &JSet) -> Result<SerreWeightClass> {
    t_mu(params, mu, &j.omega(params.f()))
}

/// Per-coordinate dimensions of the tensor factor `R_{mu_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDims {
    pub cosocle: u64,
    pub middle: u64,
    pub socle: u64,
    pub fil1: u64,
    /// `dim V(t_{(p,-p)} w_0 . (mu_i - omega_0))` computed from the dot action.
    pub weyl_fil1: u64,
}

fn weyl_module_dim(w: &Weight) -> Result<u64> {
    let m = w.pairing(0)?;
    u64::try_from(m + 1).map_err(|_| Error::Internal(format!("{w} is not dominant")))
}

pub fn factor_dims(params: &Params, mu: &Weight) -> Result<Vec<FactorDims>> {
    require_one_deep(params, mu)?;
    let p = params.p();
    let rank_one = Params::new(p, 1)?;
    let g = ExtAffineElement::new(Weight::new(vec![(1, -1)]), WeylElement::longest(1));
    mu.coords()
        .iter()
        .map(|&(a, b)| {
            let m = a - b;
            let shifted = p_dot(&rank_one, &g, &Weight::new(vec![(a - 1, b)]));
            Ok(FactorDims {
                cosocle: m as u64,
                middle: 2 * (p - m) as u64,
                socle: m as u64,
                fil1: (2 * p - m) as u64,
                weyl_fil1: weyl_module_dim(&shifted)?,
            })
        })
        .collect()
}

/// The graded pieces `W_k = gr^k R_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    pub mu: Weight,
    pub by_index: BTreeMap<MultiIndex, Vec<(JSet, SerreWeightClass)>>,
    pub dims: BTreeMap<MultiIndex, u64>,
}

impl GradedReport {
    pub fn total_dim(&self) -> u64 {
        self.dims.values().sum()
    }
}

fn check_distinct<'a>(classes: impl IntoIterator<Item = &'a SerreWeightClass>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for c in classes {
        if !seen.insert(c) {
            return Err(Error::Multiplicity {
                class: c.to_string(),
                count: 2,
            });
        }
    }
    Ok(())
}

pub fn graded_pieces(params: &Params, mu: &Weight) -> Result<GradedReport> {
    require_one_deep(params, mu)?;
    let f = params.f();
    let mut by_index: BTreeMap<MultiIndex, Vec<(JSet, SerreWeightClass)>> = BTreeMap::new();
    for j in JSet::all(f) {
        by_index
            .entry(k_of(f, &j))
            .or_default()
            .push((j, sigma_label(params, mu, &j)?));
    }
    let mut dims = BTreeMap::new();
    for (k, labels) in &by_index {
        check_distinct(labels.iter().map(|(_, c)| c))?;
        dims.insert(k.clone(), labels.iter().map(|(_, c)| dim_serre(c)).sum());
    }
    Ok(GradedReport {
        mu: mu.clone(),
        by_index,
        dims,
    })
}

/// `F(lambda - eta) (x) F(omega_i)`: the classes of `lambda - eta + (1,0)^(i)`
/// and `lambda - eta + (0,1)^(i)`.
pub fn tensor_translate(
    params: &Params,
    c: &SerreWeightClass,
    i: usize,
) -> Result<(SerreWeightClass, SerreWeightClass)> {
    params.check_rank(c.rank())?;
    if i >= params.f() {
        return Err(Error::IndexOutOfRange {
            index: i,
            f: params.f(),
        });
    }
    let rep = c.representative();
    let f = params.f();
    let up = &rep
        + &Weight::new(
            (0..f)
                .map(|c| if c == i { (1, 0) } else { (0, 0) })
                .collect(),
        );
    let down = &rep
        + &Weight::new(
            (0..f)
                .map(|c| if c == i { (0, 1) } else { (0, 0) })
                .collect(),
        );
    Ok((serre_class(params, &up)?, serre_class(params, &down)?))
}

/// Descriptor of the two-layer piece `W_{k,k'}` carrying the nontrivial
/// extension of `sigma_J` by `sigma_J'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionWitness {
    pub lower: MultiIndex,
    pub upper: MultiIndex,
    pub j: JSet,
    pub jp: JSet,
    pub sigma_j: SerreWeightClass,
    pub sigma_jp: SerreWeightClass,
    pub predictor: u8,
    /// False when an image is too close to a wall for `ext1_dim` to apply
    /// and adjacency alone was used.
    pub certified: bool,
}

pub fn extension_witness(
    params: &Params,
    mu: &Weight,
    j: &JSet,
    jp: &JSet,
) -> Result<ExtensionWitness> {
    require_one_deep(params, mu)?;
    let f = params.f();
    if !j.is_subset(jp) || jp.len() != j.len() + 1 {
        return Err(Error::PreconditionViolation(format!(
            "{jp} must extend {j} by exactly one element"
        )));
    }
    let (wj, wjp) = (j.omega(f), jp.omega(f));
    let (predictor, certified) = match ext1_dim(params, mu, &wj, &wjp) {
        Ok(d) => (d, true),
        Err(Error::PreconditionViolation(_)) => (u8::from(adjacent(&wj, &wjp)), false),
        Err(e) => return Err(e),
    };
    if predictor != 1 {
        return Err(Error::Internal(format!(
            "no extension predicted between {j} and {jp}"
        )));
    }
    Ok(ExtensionWitness {
        lower: k_of(f, j),
        upper: k_of(f, jp),
        j: *j,
        jp: *jp,
        sigma_j: sigma_label(params, mu, j)?,
        sigma_jp: sigma_label(params, mu, jp)?,
        predictor,
        certified,
    })
}

/// The two layers of `Vbar_J`: `sigma_J` on top, its one-step covers below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VbarLayers {
    pub top: (JSet, SerreWeightClass),
    pub layer1: Vec<(JSet, SerreWeightClass)>,
}

pub fn vbar_layers(params: &Params, mu: &Weight, j: &JSet) -> Result<VbarLayers> {
    require_one_deep(params, mu)?;
    let layer1 = j
        .covers(params.f())
        .into_iter()
        .map(|jp| Ok((jp, sigma_label(params, mu, &jp)?)))
        .collect::<Result<Vec<_>>>()?;
    check_distinct(layer1.iter().map(|(_, c)| c))?;
    Ok(VbarLayers {
        top: (*j, sigma_label(params, mu, j)?),
        layer1,
    })
}

/// Labels of the Jordan-Holder factors of `V_J`, modeled as all `J' supseteq J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleLabel {
    pub j: JSet,
    pub jh: BTreeSet<JSet>,
    pub layer_of: BTreeMap<JSet, MultiIndex>,
}

pub fn v_submodule(params: &Params, mu: &Weight, j: &JSet) -> Result<SubmoduleLabel> {
    require_one_deep(params, mu)?;
    let f = params.f();
    let jh: BTreeSet<JSet> = JSet::all(f).filter(|jp| j.is_subset(jp)).collect();
    let layer_of = jh.iter().map(|jp| (*jp, k_of(f, jp))).collect();
    Ok(SubmoduleLabel {
        j: *j,
        jh,
        layer_of,
    })
}

/// `V_J1 subseteq V_J2`, i.e. `J2 subseteq J1`.
pub fn submodule_leq(j1: &JSet, j2: &JSet) -> bool {
    j2.is_subset(j1)
}

/// `dim Hom(R_mu, sigma)` and the labels spanning it.
pub fn hom_dim(
    params: &Params,
    mu: &Weight,
    sigma: &SerreWeightClass,
) -> Result<(usize, Vec<JSet>)> {
    require_one_deep(params, mu)?;
    let mut labels = Vec::new();
    for j in JSet::all(params.f()) {
        if sigma_label(params, mu, &j)? == *sigma {
            labels.push(j);
        }
    }
    Ok((labels.len(), labels))
}

/// Everything the `envelope` command prints.
#[derive(Clone, Debug)]
pub struct EnvelopeReport {
    pub graded: GradedReport,
    pub factors: Vec<FactorDims>,
    pub cosocle: SerreWeightClass,
    pub lattice_edges: Vec<(JSet, JSet)>,
}

#[derive(Serialize)]
struct LabelJson<'a> {
    plus: Vec<usize>,
    minus: Vec<usize>,
    r: &'a [i64],
    d: i64,
    dim: u64,
}

#[derive(Serialize)]
struct PieceJson<'a> {
    k: &'a MultiIndex,
    labels: Vec<LabelJson<'a>>,
}

#[derive(Serialize)]
struct EnvelopeJson<'a> {
    mu: &'a Weight,
    assumptions: [&'static str; 2],
    cosocle: &'a SerreWeightClass,
    socle: &'a SerreWeightClass,
    factors: &'a [FactorDims],
    graded: Vec<PieceJson<'a>>,
    total_dim: u64,
    lattice_edges: &'a [(JSet, JSet)],
}

impl EnvelopeReport {
    pub fn compute(params: &Params, mu: &Weight) -> Result<Self> {
        let graded = graded_pieces(params, mu)?;
        let factors = factor_dims(params, mu)?;
        let cosocle = sigma_label(params, mu, &JSet::empty())?;
        let f = params.f();
        let lattice_edges = JSet::all(f)
            .flat_map(|j| j.covers(f).into_iter().map(move |jp| (j, jp)))
            .collect();
        Ok(EnvelopeReport {
            graded,
            factors,
            cosocle,
            lattice_edges,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = EnvelopeJson {
            mu: &self.graded.mu,
            assumptions: ENVELOPE_ASSUMPTIONS,
            cosocle: &self.cosocle,
            socle: &self.cosocle,
            factors: &self.factors,
            graded: self
                .graded
                .by_index
                .iter()
                .map(|(k, labels)| PieceJson {
                    k,
                    labels: labels
                        .iter()
                        .map(|(j, c)| LabelJson {
                            plus: bits(j.plus),
                            minus: bits(j.minus),
                            r: &c.r,
                            d: c.d,
                            dim: dim_serre(c),
                        })
                        .collect(),
                })
                .collect(),
            total_dim: self.graded.total_dim(),
            lattice_edges: &self.lattice_edges,
        };
        serde_json::to_value(doc).expect("envelope report serializes")
    }
}
