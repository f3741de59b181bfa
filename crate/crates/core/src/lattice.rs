//! Characters of the torus of `Res GL2`, Weyl and extended affine Weyl
//! elements, the p-dot action, and canonical forms of Serre weights.
//!
//! A character is stored as `f` integer pairs `(a_i, b_i)`; the coroot
//! pairing at `i` is `a_i - b_i`. No normalization is ever applied to a
//! [`Weight`]: quotient structure lives in [`SerreWeightClass`] and
//! [`LatticeClass`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported degree. Label sets have `4^f` elements.
pub const MAX_F: usize = 16;

/// The pair `(p, f)`; `q = p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    p: i64,
    f: usize,
    #[serde(skip)]
    modulus: i64,
}

impl Params {
    pub fn new(p: i64, f: usize) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidParams(format!(
                "p = {p} must be a prime >= 5"
            )));
        }
        if f == 0 || f > MAX_F {
            return Err(Error::InvalidParams(format!(
                "f = {f} must lie in 1..={MAX_F}"
            )));
        }
        let q = p
            .checked_pow(f as u32)
            .ok_or_else(|| Error::InvalidParams(format!("p^f overflows for p = {p}, f = {f}")))?;
        Ok(Params {
            p,
            f,
            modulus: q - 1,
        })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn q(&self) -> i64 {
        self.modulus + 1
    }

    /// `p^f - 1`, the index of `(p - pi) X^0(T)` in `X^0(T)`.
    pub fn central_modulus(&self) -> i64 {
        self.modulus
    }

    pub(crate) fn check_rank(&self, found: usize) -> Result<()> {
        if found == self.f {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.f,
                found,
            })
        }
    }
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `X*(T) = (Z^2)^f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<(i64, i64)>);

impl Weight {
    pub fn new(coords: Vec<(i64, i64)>) -> Self {
        Weight(coords)
    }

    pub fn zero(f: usize) -> Self {
        Weight(vec![(0, 0); f])
    }

    /// `eta = (1, 0)` in every coordinate.
    pub fn eta(f: usize) -> Self {
        Weight(vec![(1, 0); f])
    }

    /// `(d, d)` in coordinate `i`, zero elsewhere: `det^d` twisted by `i`.
    pub fn central(f: usize, i: usize, d: i64) -> Self {
        let mut w = Weight::zero(f);
        w.0[i] = (d, d);
        w
    }

    /// The weight with the given coroot pairings and zero second entries.
    pub fn from_pairings(pairings: &[i64]) -> Self {
        Weight(pairings.iter().map(|&m| (m, 0)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[(i64, i64)] {
        &self.0
    }

    /// `<w, alpha_i^vee> = a_i - b_i`.
    pub fn pairing(&self, i: usize) -> Result<i64> {
        self.0
            .get(i)
            .map(|&(a, b)| a - b)
            .ok_or(Error::IndexOutOfRange {
                index: i,
                f: self.rank(),
            })
    }

    pub fn pairings(&self) -> Vec<i64> {
        self.0.iter().map(|&(a, b)| a - b).collect()
    }

    /// Frobenius `pi`: coordinate `i` of the output is coordinate `i - 1`
    /// of the input.
    pub fn frobenius(&self) -> Weight {
        let f = self.rank();
        Weight((0..f).map(|i| self.0[(i + f - 1) % f]).collect())
    }

    /// Inverse Frobenius.
    pub fn frobenius_inv(&self) -> Weight {
        let f = self.rank();
        Weight((0..f).map(|i| self.0[(i + 1) % f]).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&(a, b)| (k * a, k * b)).collect())
    }

    /// Parses `"a,b;c,d"` and checks the coordinate count.
    pub fn parse(input: &str, f: usize) -> Result<Weight> {
        let err = |reason: String| Error::Parse {
            what: "weight",
            input: input.to_string(),
            reason,
        };
        let mut coords = Vec::new();
        for part in input.split(';') {
            let entries: Vec<&str> = part.split(',').map(str::trim).collect();
            if entries.len() != 2 {
                return Err(err(format!("coordinate {part:?} is not a pair")));
            }
            let a = entries[0].parse::<i64>().map_err(|e| err(e.to_string()))?;
            let b = entries[1].parse::<i64>().map_err(|e| err(e.to_string()))?;
            coords.push((a, b));
        }
        if coords.len() != f {
            return Err(err(format!(
                "expected {f} coordinates, found {}",
                coords.len()
            )));
        }
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{a},{b}")?;
        }
        Ok(())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&(a, b), &(c, d))| (a + c, b + d))
                .collect(),
        )
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&(a, b), &(c, d))| (a - c, b - d))
                .collect(),
        )
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

/// An element `sum c_i omega^(i)` of the weight lattice `Lambda_W` of the
/// derived group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LambdaWElement(Vec<i64>);

impl LambdaWElement {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LambdaWElement(coeffs)
    }

    pub fn zero(f: usize) -> Self {
        LambdaWElement(vec![0; f])
    }

    /// `omega^(i)`.
    pub fn fundamental(f: usize, i: usize) -> Self {
        let mut c = vec![0; f];
        c[i] = 1;
        LambdaWElement(c)
    }

    /// `omega_J = sum_{i in J} omega^(i)` for a bit mask `J`.
    pub fn from_mask(f: usize, mask: u32) -> Self {
        LambdaWElement((0..f).map(|i| i64::from((mask >> i) & 1)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// In the root lattice iff every coefficient is even.
    pub fn is_root(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }
}

impl fmt::Display for LambdaWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Add for &LambdaWElement {
    type Output = LambdaWElement;
    fn add(self, rhs: &LambdaWElement) -> LambdaWElement {
        LambdaWElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LambdaWElement {
    type Output = LambdaWElement;
    fn sub(self, rhs: &LambdaWElement) -> LambdaWElement {
        LambdaWElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LambdaWElement {
    type Output = LambdaWElement;
    fn neg(self) -> LambdaWElement {
        LambdaWElement(self.0.iter().map(|a| -a).collect())
    }
}

/// An element of `W = S_2^f`; flag `i` set means `w_0` in coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement(Vec<bool>);

impl WeylElement {
    pub fn new(flags: Vec<bool>) -> Self {
        WeylElement(flags)
    }

    pub fn identity(f: usize) -> Self {
        WeylElement(vec![false; f])
    }

    /// The longest element `w_0` in every coordinate.
    pub fn longest(f: usize) -> Self {
        WeylElement(vec![true; f])
    }

    pub fn from_mask(f: usize, mask: u32) -> Self {
        WeylElement((0..f).map(|i| (mask >> i) & 1 == 1).collect())
    }

    /// All `2^f` elements, ordered by mask.
    pub fn all(f: usize) -> impl Iterator<Item = WeylElement> {
        (0..1u32 << f).map(move |m| WeylElement::from_mask(f, m))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn flags(&self) -> &[bool] {
        &self.0
    }

    pub fn flag(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |m, (i, &b)| m | (u32::from(b) << i))
    }

    /// Componentwise product; every element is an involution.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// Swaps `(a_i, b_i)` in flagged coordinates.
    pub fn act(&self, w: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(w.coords())
                .map(|(&s, &(a, b))| if s { (b, a) } else { (a, b) })
                .collect(),
        )
    }

    /// The untwisted action on `Lambda_W`: sign flip in flagged coordinates.
    pub fn act_lambda(&self, w: &LambdaWElement) -> LambdaWElement {
        LambdaWElement(
            self.0
                .iter()
                .zip(w.coeffs())
                .map(|(&s, &c)| if s { -c } else { c })
                .collect(),
        )
    }

    /// Parses a string over `{e, s}` of length `f`.
    pub fn parse(input: &str, f: usize) -> Result<WeylElement> {
        let err = |reason: String| Error::Parse {
            what: "Weyl element",
            input: input.to_string(),
            reason,
        };
        let flags = input
            .chars()
            .map(|c| match c {
                'e' => Ok(false),
                's' => Ok(true),
                other => Err(err(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        if flags.len() != f {
            return Err(err(format!("expected length {f}, found {}", flags.len())));
        }
        Ok(WeylElement(flags))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s { "s" } else { "e" })?;
        }
        Ok(())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `t_lambda * w` in the extended affine Weyl group `X*(T) x| W`, with the
/// translation written on the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtAffineElement {
    translation: Weight,
    weyl: WeylElement,
}

impl ExtAffineElement {
    pub fn new(translation: Weight, weyl: WeylElement) -> Self {
        debug_assert_eq!(translation.rank(), weyl.rank());
        ExtAffineElement { translation, weyl }
    }

    pub fn identity(f: usize) -> Self {
        ExtAffineElement::new(Weight::zero(f), WeylElement::identity(f))
    }

    pub fn translation_by(lambda: Weight) -> Self {
        let f = lambda.rank();
        ExtAffineElement::new(lambda, WeylElement::identity(f))
    }

    /// `w * t_nu`, rewritten as `t_{w(nu)} * w`.
    pub fn from_right_translation(weyl: WeylElement, nu: &Weight) -> Self {
        ExtAffineElement::new(weyl.act(nu), weyl)
    }

    pub fn translation(&self) -> &Weight {
        &self.translation
    }

    pub fn weyl(&self) -> &WeylElement {
        &self.weyl
    }

    /// `(t_l v)(t_m w) = t_{l + v(m)} vw`.
    pub fn compose(&self, other: &ExtAffineElement) -> ExtAffineElement {
        ExtAffineElement::new(
            &self.translation + &self.weyl.act(&other.translation),
            self.weyl.compose(&other.weyl),
        )
    }

    pub fn inverse(&self) -> ExtAffineElement {
        ExtAffineElement::new(-&self.weyl.act(&self.translation), self.weyl.clone())
    }

    /// The ordinary (non-dot) action with translation scaled by `scale`.
    pub fn act_scaled(&self, scale: i64, x: &Weight) -> Weight {
        &self.translation.scale(scale) + &self.weyl.act(x)
    }
}

impl fmt::Display for ExtAffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{}]*{}", self.translation, self.weyl)
    }
}

/// The p-dot action `g . w = g_p(w + eta) - eta`.
pub fn p_dot(params: &Params, g: &ExtAffineElement, w: &Weight) -> Weight {
    let eta = Weight::eta(w.rank());
    &g.act_scaled(params.p(), &(w + &eta)) - &eta
}

/// Whether `w` lies `n`-deep in its alcove.
pub fn is_deep(params: &Params, w: &Weight, n: i64) -> bool {
    let p = params.p();
    w.pairings().into_iter().all(|m| {
        let y = m + 1;
        let k = y.div_euclid(p);
        p * k + n < y && y < p * (k + 1) - n
    })
}

/// `2 <= a_i - b_i <= p - 2` for all `i`.
pub fn is_generic_char(params: &Params, w: &Weight) -> bool {
    let p = params.p();
    w.pairings().into_iter().all(|m| (2..=p - 2).contains(&m))
}

/// `0 <= a_i - b_i < p - 1` for all `i`.
pub fn is_regular(params: &Params, w: &Weight) -> bool {
    let p = params.p();
    w.pairings().into_iter().all(|m| (0..p - 1).contains(&m))
}

/// `0 <= a_i - b_i <= p - 1` for all `i`.
pub fn is_restricted(params: &Params, w: &Weight) -> bool {
    let p = params.p();
    w.pairings().into_iter().all(|m| (0..p).contains(&m))
}

/// `sum_i b_i p^i mod (p^f - 1)`.
///
/// This linear form kills exactly `(p - pi) X^0(T)` on `X^0(T)`, so together
/// with the pairings it is a complete invariant of `X*(T) / (p - pi) X^0(T)`.
pub fn central_residue(params: &Params, w: &Weight) -> i64 {
    let m = i128::from(params.central_modulus());
    let p = i128::from(params.p());
    let mut acc: i128 = 0;
    let mut pow: i128 = 1 % m;
    for &(_, b) in w.coords() {
        acc = (acc + i128::from(b).rem_euclid(m) * pow) % m;
        pow = pow * p % m;
    }
    acc as i64
}

/// The canonical form of `F(lambda)` for a p-restricted `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SerreWeightClass {
    pub r: Vec<i64>,
    pub d: i64,
}

impl SerreWeightClass {
    /// A p-restricted representative: `b = (d, 0, ..., 0)`, `a_i = b_i + r_i`.
    pub fn representative(&self) -> Weight {
        Weight(
            self.r
                .iter()
                .enumerate()
                .map(|(i, &r)| {
                    let b = if i == 0 { self.d } else { 0 };
                    (b + r, b)
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.r.len()
    }
}

impl fmt::Display for SerreWeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.r.iter().map(i64::to_string).collect();
        write!(f, "(r=[{}], d={})", r.join(","), self.d)
    }
}

/// The class of an arbitrary weight modulo `(p - pi) X^0(T)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeClass {
    pub pairings: Vec<i64>,
    pub d: i64,
}

impl LatticeClass {
    pub fn to_serre(&self, params: &Params) -> Option<SerreWeightClass> {
        let p = params.p();
        self.pairings
            .iter()
            .all(|m| (0..p).contains(m))
            .then(|| SerreWeightClass {
                r: self.pairings.clone(),
                d: self.d,
            })
    }
}

pub fn lattice_class(params: &Params, w: &Weight) -> LatticeClass {
    LatticeClass {
        pairings: w.pairings(),
        d: central_residue(params, w),
    }
}

pub fn serre_class(params: &Params, w: &Weight) -> Result<SerreWeightClass> {
    params.check_rank(w.rank())?;
    if !is_restricted(params, w) {
        return Err(Error::NotRestricted {
            weight: w.to_string(),
        });
    }
    Ok(SerreWeightClass {
        r: w.pairings(),
        d: central_residue(params, w),
    })
}

/// `prod_i (r_i + 1)`.
pub fn dim_serre(c: &SerreWeightClass) -> u64 {
    c.r.iter().map(|&r| (r + 1) as u64).product()
}

/// `w_0 t_{-eta}`.
pub fn herzig_element(f: usize) -> ExtAffineElement {
    ExtAffineElement::from_right_translation(WeylElement::longest(f), &-&Weight::eta(f))
}

fn check_regular(params: &Params, c: &SerreWeightClass) -> Result<()> {
    params.check_rank(c.rank())?;
    let p = params.p();
    if c.r.iter().all(|r| (0..p - 1).contains(r)) {
        Ok(())
    } else {
        Err(Error::NotRegular {
            class: c.to_string(),
        })
    }
}

/// The Herzig reflection `lambda -> w_0 t_{-eta} . lambda` on regular classes.
pub fn herzig_reflect(params: &Params, c: &SerreWeightClass) -> Result<SerreWeightClass> {
    check_regular(params, c)?;
    let g = herzig_element(params.f());
    serre_class(params, &p_dot(params, &g, &c.representative()))
}

/// Inverse of [`herzig_reflect`], through the group inverse `t_eta w_0`.
pub fn herzig_reflect_inv(params: &Params, c: &SerreWeightClass) -> Result<SerreWeightClass> {
    check_regular(params, c)?;
    let g = herzig_element(params.f()).inverse();
    serre_class(params, &p_dot(params, &g, &c.representative()))
}

/// Whether `g` maps the base alcove to itself under the p-dot action.
///
/// Coordinatewise, `y -> p <t, alpha_i> + sign_i y` must preserve `(0, p)`,
/// which forces `(<t, alpha_i>, sign_i)` to be `(0, +1)` or `(1, -1)`.
pub fn stabilizes_base_alcove(g: &ExtAffineElement) -> bool {
    g.translation()
        .pairings()
        .into_iter()
        .zip(g.weyl().flags())
        .all(|(t, &flip)| alcove_condition(t, flip))
}

pub(crate) fn alcove_condition(t: i64, flip: bool) -> bool {
    matches!((t, flip), (0, false) | (1, true))
}
