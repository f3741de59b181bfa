//! The extension graph: the map `t_mu` from `Lambda_W` to Serre weights,
//! graph membership, adjacency and the recentering symmetry.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    alcove_condition, is_generic_char, lattice_class, p_dot, serre_class, stabilizes_base_alcove,
    ExtAffineElement, LambdaWElement, LatticeClass, Params, SerreWeightClass, Weight, WeylElement,
    MAX_F,
};

/// `w = omega_J + nu` with `J` the parity support and `nu` in the root lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EDecomposition {
    pub mask: u32,
    pub nu: LambdaWElement,
}

pub fn decompose(w: &LambdaWElement) -> EDecomposition {
    let mask = w
        .coeffs()
        .iter()
        .enumerate()
        .fold(0u32, |m, (i, c)| m | (u32::from(c.rem_euclid(2) == 1) << i));
    let nu = w - &LambdaWElement::from_mask(w.rank(), mask);
    EDecomposition { mask, nu }
}

/// The section `omega^(i) -> (1, 0)^(i)` from `Lambda_W` into `X*(T)`.
pub fn weight_section(w: &LambdaWElement) -> Weight {
    Weight::new(w.coeffs().iter().map(|&c| (c, 0)).collect())
}

/// The root lattice embedded with trivial central character:
/// `alpha^(i) = 2 omega^(i) -> (1, -1)^(i)`.
pub fn root_embedding(nu: &LambdaWElement) -> Result<Weight> {
    if !nu.is_root() {
        return Err(Error::PreconditionViolation(format!(
            "{nu} is not in the root lattice"
        )));
    }
    Ok(Weight::new(
        nu.coeffs().iter().map(|&c| (c / 2, -c / 2)).collect(),
    ))
}

/// `w_J t_{-pi^{-1} omega_J}`, the element of `Omega` attached to `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub mask: u32,
    pub element: ExtAffineElement,
}

// The action and the alcove condition both split over embeddings, so the
// search over W runs one coordinate at a time.
fn search_omega(f: usize, mask: u32) -> Result<OmegaElement> {
    let shift = -&weight_section(&LambdaWElement::from_mask(f, mask)).frobenius_inv();
    let candidates = [false, true].map(|flip| {
        ExtAffineElement::from_right_translation(WeylElement::new(vec![flip; f]), &shift)
    });
    let mut flags = Vec::with_capacity(f);
    for i in 0..f {
        let mut ok = Vec::new();
        for g in &candidates {
            if alcove_condition(g.translation().pairing(i)?, g.weyl().flag(i)) {
                ok.push(g.weyl().flag(i));
            }
        }
        match ok[..] {
            [flip] => flags.push(flip),
            [] => {
                return Err(Error::Internal(format!(
                    "no Weyl element puts mask {mask:#b} in the alcove stabilizer"
                )))
            }
            _ => {
                return Err(Error::Internal(format!(
                    "several Weyl elements put mask {mask:#b} in the alcove stabilizer"
                )))
            }
        }
    }
    let element = ExtAffineElement::from_right_translation(WeylElement::new(flags), &shift);
    if !stabilizes_base_alcove(&element) {
        return Err(Error::Internal(format!("mask {mask:#b} leaves the alcove")));
    }
    Ok(OmegaElement { mask, element })
}

fn omega_table(f: usize) -> Result<&'static [OmegaElement]> {
    static TABLES: [OnceLock<std::result::Result<Vec<OmegaElement>, Error>>; MAX_F + 1] =
        [const { OnceLock::new() }; MAX_F + 1];
    if f == 0 || f > MAX_F {
        return Err(Error::InvalidParams(format!("f = {f} out of range")));
    }
    TABLES[f]
        .get_or_init(|| (0..1u32 << f).map(|m| search_omega(f, m)).collect())
        .as_deref()
        .map_err(Clone::clone)
}

fn omega_ref(f: usize, mask: u32) -> Result<&'static OmegaElement> {
    omega_table(f)?
        .get(mask as usize)
        .ok_or_else(|| Error::PreconditionViolation(format!("mask {mask:#b} exceeds f = {f}")))
}

/// The unique `w_J` with `w_J t_{-pi^{-1} omega_J}` stabilizing the base
/// alcove, found by search over `W`.
pub fn omega_element(f: usize, mask: u32) -> Result<OmegaElement> {
    omega_ref(f, mask).cloned()
}

/// `t'_mu` with an arbitrary dot action plugged in.
///
/// Exposed so that verification can run the same pipeline against a
/// deliberately broken action.
pub fn t_mu_raw_with<D>(params: &Params, mu: &Weight, w: &LambdaWElement, dot: D) -> Result<Weight>
where
    D: Fn(&ExtAffineElement, &Weight) -> Weight,
{
    params.check_rank(mu.rank())?;
    params.check_rank(w.rank())?;
    let EDecomposition { mask, nu } = decompose(w);
    let omega = omega_ref(params.f(), mask)?;
    let omega_j = weight_section(&LambdaWElement::from_mask(params.f(), mask));
    let x = &(&(mu + &root_embedding(&nu)?) + &omega_j) - &Weight::eta(params.f());
    Ok(dot(&omega.element, &x))
}

/// `t'_mu(omega_J + nu) = w~_J . (mu + nu + omega_J - eta)`.
pub fn t_mu_raw(params: &Params, mu: &Weight, w: &LambdaWElement) -> Result<Weight> {
    t_mu_raw_with(params, mu, w, |g, x| p_dot(params, g, x))
}

pub(crate) fn in_base_alcove(params: &Params, x: &Weight) -> bool {
    let p = params.p();
    x.pairings().into_iter().all(|m| (0..p).contains(&(m + 1)))
}

/// `omega` lies in `Lambda_W^mu` iff `t'_mu(omega) + eta` is p-restricted.
pub fn in_graph(params: &Params, mu: &Weight, w: &LambdaWElement) -> Result<bool> {
    Ok(in_base_alcove(params, &t_mu_raw(params, mu, w)?))
}

/// The class of `t'_mu(w)` modulo `(p - pi) X^0(T)`, without any membership
/// or restrictedness requirement.
pub fn t_mu_class(params: &Params, mu: &Weight, w: &LambdaWElement) -> Result<LatticeClass> {
    Ok(lattice_class(params, &t_mu_raw(params, mu, w)?))
}

/// `t_mu(w)` as a Serre weight.
pub fn t_mu(params: &Params, mu: &Weight, w: &LambdaWElement) -> Result<SerreWeightClass> {
    let raw = t_mu_raw(params, mu, w)?;
    if !in_base_alcove(params, &raw) {
        return Err(Error::NotInGraph {
            mu: mu.to_string(),
            point: w.to_string(),
        });
    }
    serre_class(params, &raw)
}

/// `w1 - w2 = +-omega^(j)` for some `j`.
pub fn adjacent(w1: &LambdaWElement, w2: &LambdaWElement) -> bool {
    let diff = w1 - w2;
    let nonzero: Vec<i64> = diff.coeffs().iter().copied().filter(|&c| c != 0).collect();
    nonzero.len() == 1 && nonzero[0].abs() == 1
}

/// Predicted `dim Ext^1` between the Serre weights at two graph points with
/// generic images.
pub fn ext1_dim(
    params: &Params,
    mu: &Weight,
    w1: &LambdaWElement,
    w2: &LambdaWElement,
) -> Result<u8> {
    for w in [w1, w2] {
        let raw = t_mu_raw(params, mu, w)?;
        if !in_base_alcove(params, &raw) {
            return Err(Error::PreconditionViolation(format!(
                "{w} is not in the extension graph of {mu}"
            )));
        }
        let lambda = &raw + &Weight::eta(params.f());
        if !is_generic_char(params, &lambda) {
            return Err(Error::PreconditionViolation(format!(
                "image of {w} is not generic"
            )));
        }
    }
    Ok(u8::from(adjacent(w1, w2)))
}

/// Checks `t_lambda(w') = t_mu(w_J^{-1}(w') + w0)` where
/// `lambda - eta = t'_mu(w0)` and `J` is the parity support of `w0`.
///
/// Both sides are compared as classes modulo `(p - pi) X^0(T)`.
pub fn recenter_check(
    params: &Params,
    mu: &Weight,
    w0pt: &LambdaWElement,
    wprime: &LambdaWElement,
) -> Result<bool> {
    let raw = t_mu_raw(params, mu, w0pt)?;
    if !in_base_alcove(params, &raw) {
        return Err(Error::NotInGraph {
            mu: mu.to_string(),
            point: w0pt.to_string(),
        });
    }
    let lambda = &raw + &Weight::eta(params.f());
    if !in_graph(params, &lambda, wprime)? {
        return Err(Error::NotInGraph {
            mu: lambda.to_string(),
            point: wprime.to_string(),
        });
    }
    let wj = omega_ref(params.f(), decompose(w0pt).mask)?;
    let moved = &wj.element.weyl().act_lambda(wprime) + w0pt;
    Ok(t_mu_class(params, &lambda, wprime)? == t_mu_class(params, mu, &moved)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphVertex {
    pub coeffs: LambdaWElement,
    pub class: LatticeClass,
}

impl GraphVertex {
    /// False for boundary points whose image has a pairing of `-1`.
    pub fn is_restricted(&self) -> bool {
        self.class.pairings.iter().all(|&m| m >= 0)
    }
}

/// Vertices of `Lambda_W^mu` inside a coefficient box, with adjacency edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub mu: Weight,
    pub radius: i64,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<(usize, usize)>,
}

/// All coefficient vectors in `[-radius, radius]^f`, lexicographically.
pub fn coefficient_box(f: usize, radius: i64) -> impl Iterator<Item = LambdaWElement> {
    let side = (2 * radius + 1) as u64;
    (0..side.pow(f as u32)).map(move |mut code| {
        let mut c = vec![0; f];
        for slot in c.iter_mut().rev() {
            *slot = (code % side) as i64 - radius;
            code /= side;
        }
        LambdaWElement::new(c)
    })
}

pub fn enumerate_graph(params: &Params, mu: &Weight, radius: i64) -> Result<GraphReport> {
    params.check_rank(mu.rank())?;
    if radius < 0 {
        return Err(Error::PreconditionViolation("radius must be >= 0".into()));
    }
    if mu.pairings().iter().any(|&m| m < 1) {
        return Err(Error::PreconditionViolation(format!(
            "mu - eta is not dominant (mu = {mu})"
        )));
    }
    let mut vertices = Vec::new();
    for coeffs in coefficient_box(params.f(), radius) {
        let raw = t_mu_raw(params, mu, &coeffs)?;
        if in_base_alcove(params, &raw) {
            vertices.push(GraphVertex {
                class: lattice_class(params, &raw),
                coeffs,
            });
        }
    }
    let index: BTreeMap<&LambdaWElement, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (&v.coeffs, i))
        .collect();
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for j in 0..params.f() {
            let up = &v.coeffs + &LambdaWElement::fundamental(params.f(), j);
            if let Some(&k) = index.get(&up) {
                edges.push((i, k));
            }
        }
    }
    edges.sort_unstable();
    Ok(GraphReport {
        mu: mu.clone(),
        radius,
        vertices,
        edges,
    })
}

#[derive(Serialize)]
struct VertexJson<'a> {
    coeffs: &'a LambdaWElement,
    r: &'a [i64],
    d: i64,
    restricted: bool,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    mu: &'a Weight,
    radius: i64,
    vertices: Vec<VertexJson<'a>>,
    edges: Vec<[usize; 2]>,
}

impl GraphReport {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = GraphJson {
            mu: &self.mu,
            radius: self.radius,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    coeffs: &v.coeffs,
                    r: &v.class.pairings,
                    d: v.class.d,
                    restricted: v.is_restricted(),
                })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_value(doc).expect("graph report serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph extension_graph {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let r: Vec<String> = v.class.pairings.iter().map(i64::to_string).collect();
            let _ = writeln!(
                out,
                "  v{i} [label=\"{} | r={}, d={}\"];",
                v.coeffs,
                r.join(","),
                v.class.d
            );
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64, f: usize) -> Params {
        Params::new(p, f).unwrap()
    }

    fn lw(c: &[i64]) -> LambdaWElement {
        LambdaWElement::new(c.to_vec())
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            decompose(&lw(&[0, 0])),
            EDecomposition {
                mask: 0,
                nu: lw(&[0, 0])
            }
        );
        assert_eq!(
            decompose(&lw(&[-1])),
            EDecomposition {
                mask: 1,
                nu: lw(&[-2])
            }
        );
        assert_eq!(
            decompose(&lw(&[3, -2])),
            EDecomposition {
                mask: 1,
                nu: lw(&[2, -2])
            }
        );
    }

    #[test]
    fn omega_search_matches_brute_force() {
        for f in 1..=4 {
            for mask in 0..1u32 << f {
                let shift = -&weight_section(&LambdaWElement::from_mask(f, mask)).frobenius_inv();
                let hits: Vec<_> = WeylElement::all(f)
                    .map(|w| ExtAffineElement::from_right_translation(w, &shift))
                    .filter(stabilizes_base_alcove)
                    .collect();
                assert_eq!(hits, vec![omega_element(f, mask).unwrap().element]);
            }
        }
    }

    #[test]
    fn omega_elements() {
        assert_eq!(
            omega_element(3, 0).unwrap().element,
            ExtAffineElement::identity(3)
        );
        let one = omega_element(1, 1).unwrap().element;
        assert_eq!(
            one,
            ExtAffineElement::new(Weight::new(vec![(0, -1)]), WeylElement::longest(1))
        );
        assert_eq!(
            omega_element(2, 0b01).unwrap().element.weyl().flags(),
            &[false, true]
        );
        for f in 1..=5 {
            for mask in 0..1u32 << f {
                let g = omega_element(f, mask).unwrap().element;
                assert!(stabilizes_base_alcove(&g));
                for i in 0..f {
                    let bit = (mask >> ((i + 1) % f)) & 1 == 1;
                    assert_eq!(g.weyl().flag(i), bit, "f={f} mask={mask:#b} i={i}");
                }
            }
        }
    }

    #[test]
    fn t_mu_raw_examples() {
        let p7 = params(7, 1);
        let mu = Weight::new(vec![(4, 0)]);
        assert_eq!(
            t_mu_raw(&p7, &mu, &lw(&[0])).unwrap(),
            Weight::new(vec![(3, 0)])
        );
        assert_eq!(
            t_mu_raw(&p7, &mu, &lw(&[1])).unwrap(),
            Weight::new(vec![(-1, -2)])
        );
        assert_eq!(
            t_mu_raw(&p7, &mu, &lw(&[-1])).unwrap(),
            Weight::new(vec![(0, -3)])
        );
        assert_eq!(
            t_mu(&p7, &mu, &lw(&[-1])).unwrap(),
            SerreWeightClass { r: vec![3], d: 3 }
        );
        assert_eq!(
            t_mu(&p7, &mu, &lw(&[1])).unwrap(),
            SerreWeightClass { r: vec![1], d: 4 }
        );
        let p5 = params(5, 2);
        let mu2 = Weight::new(vec![(3, 1), (5, 2)]);
        assert_eq!(
            t_mu_raw(&p5, &mu2, &lw(&[0, 0])).unwrap(),
            &mu2 - &Weight::eta(2)
        );
    }

    #[test]
    fn membership_examples() {
        let p7 = params(7, 1);
        let mu = Weight::new(vec![(4, 0)]);
        assert!(in_graph(&p7, &mu, &lw(&[0])).unwrap());
        assert!(in_graph(&p7, &mu, &lw(&[1])).unwrap());
        let p5 = params(5, 1);
        assert!(!in_graph(&p5, &Weight::new(vec![(3, 0)]), &lw(&[3])).unwrap());
        assert!(matches!(
            t_mu(&p5, &Weight::new(vec![(3, 0)]), &lw(&[3])),
            Err(Error::NotInGraph { .. })
        ));
    }

    #[test]
    fn boundary_points_have_no_serre_weight() {
        // pairing 2 with coefficient -2 lands on the lower wall
        let p7 = params(7, 1);
        let mu = Weight::new(vec![(2, 0)]);
        let w = lw(&[-2]);
        assert!(in_graph(&p7, &mu, &w).unwrap());
        assert!(matches!(
            t_mu(&p7, &mu, &w),
            Err(Error::NotRestricted { .. })
        ));
    }

    #[test]
    fn adjacency_examples() {
        assert!(adjacent(&lw(&[0, 0]), &lw(&[1, 0])));
        assert!(!adjacent(&lw(&[0, 0]), &lw(&[1, 1])));
        assert!(!adjacent(&lw(&[1, 0]), &lw(&[1, 0])));
        assert!(!adjacent(&lw(&[0]), &lw(&[2])));
    }

    #[test]
    fn ext1_examples() {
        let p7 = params(7, 2);
        let mu = Weight::from_pairings(&[4, 3]);
        assert_eq!(ext1_dim(&p7, &mu, &lw(&[0, 0]), &lw(&[0, 0])).unwrap(), 0);
        assert_eq!(ext1_dim(&p7, &mu, &lw(&[0, 0]), &lw(&[0, 1])).unwrap(), 1);
        assert_eq!(ext1_dim(&p7, &mu, &lw(&[0, 1]), &lw(&[0, 0])).unwrap(), 1);
        let p7_1 = params(7, 1);
        let mu1 = Weight::new(vec![(4, 0)]);
        assert_eq!(ext1_dim(&p7_1, &mu1, &lw(&[0]), &lw(&[-2])).unwrap(), 0);
        // image of -1 under mu = (2,0) has pairing p - 1: not generic
        let low = Weight::from_pairings(&[2]);
        assert!(matches!(
            ext1_dim(&p7_1, &low, &lw(&[0]), &lw(&[-1])),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn recenter_examples() {
        let p7 = params(7, 1);
        let mu = Weight::new(vec![(4, 0)]);
        assert!(recenter_check(&p7, &mu, &lw(&[0]), &lw(&[1])).unwrap());
        assert!(recenter_check(&p7, &mu, &lw(&[1]), &lw(&[1])).unwrap());
        let p7_2 = params(7, 2);
        let mu2 = Weight::from_pairings(&[3, 4]);
        for w0 in coefficient_box(2, 1) {
            for wp in coefficient_box(2, 1) {
                if let Ok(ok) = recenter_check(&p7_2, &mu2, &w0, &wp) {
                    assert!(ok, "w0={w0} w'={wp}");
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let p7 = params(7, 1);
        let mu = Weight::new(vec![(4, 0)]);
        let g0 = enumerate_graph(&p7, &mu, 0).unwrap();
        assert_eq!(g0.vertices.len(), 1);
        assert!(g0.edges.is_empty());
        let g1 = enumerate_graph(&p7, &mu, 1).unwrap();
        let coeffs: Vec<_> = g1.vertices.iter().map(|v| v.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![lw(&[-1]), lw(&[0]), lw(&[1])]);
        assert_eq!(g1.edges, vec![(0, 1), (1, 2)]);
        let json = g1.to_json();
        assert_eq!(json["vertices"][2]["r"], serde_json::json!([1]));
        assert_eq!(json["vertices"][2]["d"], 4);
        assert!(g1.to_dot().contains("v0 -- v1;"));
        assert!(enumerate_graph(&p7, &Weight::new(vec![(0, 0)]), 1).is_err());
    }

    #[test]
    fn box_enumeration_order() {
        let b: Vec<_> = coefficient_box(2, 1).collect();
        assert_eq!(b.len(), 9);
        assert_eq!(b[0], lw(&[-1, -1]));
        assert_eq!(b[1], lw(&[-1, 0]));
        assert_eq!(b[8], lw(&[1, 1]));
    }
}
