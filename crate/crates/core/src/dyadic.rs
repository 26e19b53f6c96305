//! Exact dyadic geometry.
//!
//! Every coordinate in the crate is a [`DyadicRational`], `mantissa · 2^exponent`
//! with an unbounded mantissa and a machine-word exponent. Dyadic intervals
//! `[s·2^t, (s+1)·2^t)` are half-open, so two of them are either disjoint or
//! nested; membership reduces to a single floor division by a power of two.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// An exact number `mantissa · 2^exponent`.
///
/// Canonical form: the mantissa is odd, or the value is zero and stored as
/// `0 · 2^0`. Derived equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    mantissa: BigInt,
    exponent: i64,
}

/// `floor(value / 2^shift)` for an integer value.
fn floor_shift(value: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return value.clone();
    }
    if shift > value.bits() + 1 {
        return if value.is_negative() { -BigInt::one() } else { BigInt::zero() };
    }
    value.div_floor(&(BigInt::one() << shift as usize))
}

fn shl(value: &BigInt, shift: u64) -> BigInt {
    let shift = usize::try_from(shift).expect("dyadic shift exceeds address space");
    value << shift
}

impl DyadicRational {
    /// Builds `mantissa · 2^exponent` and canonicalizes it.
    ///
    /// Panics if canonicalization pushes the exponent past `i64::MAX`.
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Self {
        let mantissa = mantissa.into();
        let Some(tz) = mantissa.trailing_zeros() else {
            return Self::zero();
        };
        let exponent = i64::try_from(tz)
            .ok()
            .and_then(|tz| exponent.checked_add(tz))
            .expect("dyadic exponent overflow");
        Self { mantissa: mantissa >> tz as usize, exponent }
    }

    pub fn zero() -> Self {
        Self { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self::new(value, 0)
    }

    /// `2^exponent`.
    pub fn pow2(exponent: i64) -> Self {
        Self { mantissa: BigInt::one(), exponent }
    }

    /// Converts a fraction whose reduced denominator is a power of two.
    pub fn from_fraction(numerator: &BigInt, denominator: &BigInt) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        let g = numerator.gcd(denominator);
        let (mut num, mut den) = (numerator / &g, denominator / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let k = den.trailing_zeros()?;
        if den.bits() != k + 1 {
            return None;
        }
        Some(Self::new(num, -i64::try_from(k).ok()?))
    }

    /// The reduced fraction `(numerator, denominator)` with a positive
    /// denominator.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        if self.exponent >= 0 {
            (shl(&self.mantissa, self.exponent as u64), BigInt::one())
        } else {
            (self.mantissa.clone(), shl(&BigInt::one(), self.exponent.unsigned_abs()))
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `self · 2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let exponent = self.exponent.checked_add(k).expect("dyadic exponent overflow");
        Self { mantissa: self.mantissa.clone(), exponent }
    }

    /// `floor(self / 2^t)`.
    pub fn floor_div_pow2(&self, t: i64) -> BigInt {
        let shift = i128::from(self.exponent) - i128::from(t);
        if shift >= 0 {
            shl(&self.mantissa, shift as u64)
        } else {
            floor_shift(&self.mantissa, shift.unsigned_abs().min(u64::MAX as u128) as u64)
        }
    }

    /// Whether `self` is an integer multiple of `2^t`.
    pub fn is_multiple_of_pow2(&self, t: i64) -> bool {
        self.is_zero() || self.exponent >= t
    }

    /// Nearest-ish `f64`, for reporting only.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mantissa.bits();
        let drop = bits.saturating_sub(60);
        let top = floor_shift(&self.mantissa, drop).to_f64().unwrap_or(0.0);
        let e = i128::from(self.exponent) + i128::from(drop);
        libm::ldexp(top, e.clamp(-100_000, 100_000) as i32)
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        let top_a = i128::from(self.mantissa.bits() as i64) + i128::from(self.exponent);
        let top_b = i128::from(other.mantissa.bits() as i64) + i128::from(other.exponent);
        if top_a != top_b {
            return top_a.cmp(&top_b);
        }
        let e = self.exponent.min(other.exponent);
        let a = shl(&BigInt::from(self.mantissa.magnitude().clone()), (self.exponent - e) as u64);
        let b = shl(&BigInt::from(other.mantissa.magnitude().clone()), (other.exponent - e) as u64);
        a.cmp(&b)
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        match sa {
            0 => Ordering::Equal,
            1 => self.cmp_magnitude(other),
            _ => self.cmp_magnitude(other).reverse(),
        }
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: &'a DyadicRational) -> DyadicRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let a = shl(&self.mantissa, (self.exponent - e) as u64);
        let b = shl(&rhs.mantissa, (rhs.exponent - e) as u64);
        DyadicRational::new(a + b, e)
    }
}

impl<'a> Sub<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;

    fn sub(self, rhs: &'a DyadicRational) -> DyadicRational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;

    fn mul(self, rhs: &'a DyadicRational) -> DyadicRational {
        if self.is_zero() || rhs.is_zero() {
            return DyadicRational::zero();
        }
        let exponent = self.exponent.checked_add(rhs.exponent).expect("dyadic exponent overflow");
        // odd · odd is odd, so the product is already canonical
        DyadicRational { mantissa: &self.mantissa * &rhs.mantissa, exponent }
    }
}

impl Neg for &DyadicRational {
    type Output = DyadicRational;

    fn neg(self) -> DyadicRational {
        DyadicRational { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for DyadicRational {
            type Output = DyadicRational;
            fn $m(self, rhs: DyadicRational) -> DyadicRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for DyadicRational {
    type Output = DyadicRational;

    fn neg(self) -> DyadicRational {
        -&self
    }
}

impl From<i64> for DyadicRational {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.to_fraction();
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    /// Accepts `"n"` or `"n/d"` with `d` a power of two after reduction.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |detail: &str| Error::InvalidParameter {
            name: "dyadic",
            detail: alloc::format!("{s:?}: {detail}"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
        Self::from_fraction(&num, &den).ok_or_else(|| bad("denominator is not a power of two"))
    }
}

/// How two dyadic intervals sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalRelation {
    Disjoint,
    Equal,
    FirstInsideSecond,
    SecondInsideFirst,
}

/// The half-open interval `[s·2^t, (s+1)·2^t)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyadicInterval {
    s: BigInt,
    t: i64,
}

impl DyadicInterval {
    pub fn new(s: impl Into<BigInt>, t: i64) -> Self {
        Self { s: s.into(), t }
    }

    /// The unique level-`t` dyadic interval containing `x`.
    pub fn containing(x: &DyadicRational, t: i64) -> Self {
        Self { s: x.floor_div_pow2(t), t }
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn lower(&self) -> DyadicRational {
        DyadicRational::new(self.s.clone(), self.t)
    }

    pub fn upper(&self) -> DyadicRational {
        DyadicRational::new(&self.s + 1, self.t)
    }

    pub fn contains(&self, x: &DyadicRational) -> bool {
        x.floor_div_pow2(self.t) == self.s
    }

    pub fn relation(&self, other: &Self) -> IntervalRelation {
        match self.t.cmp(&other.t) {
            Ordering::Equal if self.s == other.s => IntervalRelation::Equal,
            Ordering::Equal => IntervalRelation::Disjoint,
            Ordering::Less => {
                if floor_shift(&self.s, other.t.abs_diff(self.t)) == other.s {
                    IntervalRelation::FirstInsideSecond
                } else {
                    IntervalRelation::Disjoint
                }
            }
            Ordering::Greater => {
                if floor_shift(&other.s, self.t.abs_diff(other.t)) == self.s {
                    IntervalRelation::SecondInsideFirst
                } else {
                    IntervalRelation::Disjoint
                }
            }
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        matches!(
            self.relation(other),
            IntervalRelation::Equal | IntervalRelation::FirstInsideSecond
        )
    }

    /// Image under `x ↦ x·2^scale_pow + shift`, if it is again dyadic.
    pub fn scale_translate(&self, shift: &DyadicRational, scale_pow: i64) -> Option<Self> {
        let t = self.t.checked_add(scale_pow)?;
        let lower = &self.lower().mul_pow2(scale_pow) + shift;
        lower.is_multiple_of_pow2(t).then(|| Self { s: lower.floor_div_pow2(t), t })
    }
}

/// A product of dyadic intervals; membership is half-open on every axis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyadicBox {
    intervals: Vec<DyadicInterval>,
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl DyadicBox {
    pub fn new(intervals: Vec<DyadicInterval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { intervals })
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[DyadicInterval] {
        &self.intervals
    }

    pub fn contains(&self, point: &[DyadicRational]) -> Result<bool> {
        check_dim(self.dim(), point.len())?;
        Ok(self.contains_unchecked(point))
    }

    pub(crate) fn contains_unchecked(&self, point: &[DyadicRational]) -> bool {
        self.intervals.iter().zip(point).all(|(i, x)| i.contains(x))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self.intervals.iter().zip(&other.intervals).all(|(a, b)| a.is_subset_of(b))
    }

    /// Image under the per-axis map `x_j ↦ x_j·2^{scale_pow_j} + shift_j`.
    ///
    /// Fails with [`Error::NotAligned`] when the shift is not a multiple of the
    /// image's side length on some axis.
    pub fn scale_translate(&self, shift: &[DyadicRational], scale_pow: &[i64]) -> Result<Self> {
        check_dim(self.dim(), shift.len())?;
        check_dim(self.dim(), scale_pow.len())?;
        let intervals = self
            .intervals
            .iter()
            .zip(shift.iter().zip(scale_pow))
            .enumerate()
            .map(|(axis, (i, (c, &p)))| i.scale_translate(c, p).ok_or(Error::NotAligned { axis }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { intervals })
    }
}

/// Applies `x_j ↦ x_j·2^{scale_pow_j} + shift_j` to a point.
pub fn scale_translate_point(
    point: &[DyadicRational],
    shift: &[DyadicRational],
    scale_pow: &[i64],
) -> Result<Vec<DyadicRational>> {
    check_dim(point.len(), shift.len())?;
    check_dim(point.len(), scale_pow.len())?;
    Ok(point
        .iter()
        .zip(shift.iter().zip(scale_pow))
        .map(|(x, (c, &p))| &x.mul_pow2(p) + c)
        .collect())
}

/// One axis of a [`GeneralBox`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoxAxis {
    pub lower: DyadicRational,
    pub upper: DyadicRational,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl BoxAxis {
    pub fn contains(&self, x: &DyadicRational) -> bool {
        let above = match x.cmp(&self.lower) {
            Ordering::Greater => true,
            Ordering::Equal => self.lower_closed,
            Ordering::Less => false,
        };
        above
            && match x.cmp(&self.upper) {
                Ordering::Less => true,
                Ordering::Equal => self.upper_closed,
                Ordering::Greater => false,
            }
    }
}

/// An axis-parallel box with per-side open/closed flags.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneralBox {
    axes: Vec<BoxAxis>,
}

impl GeneralBox {
    pub fn new(axes: Vec<BoxAxis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(axis) = axes.iter().position(|a| a.lower >= a.upper) {
            return Err(Error::DegenerateBox { axis });
        }
        Ok(Self { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[BoxAxis] {
        &self.axes
    }

    pub fn contains(&self, point: &[DyadicRational]) -> Result<bool> {
        check_dim(self.dim(), point.len())?;
        Ok(self.axes.iter().zip(point).all(|(a, x)| a.contains(x)))
    }
}

impl From<&DyadicBox> for GeneralBox {
    fn from(b: &DyadicBox) -> Self {
        let axes = b
            .intervals
            .iter()
            .map(|i| BoxAxis {
                lower: i.lower(),
                upper: i.upper(),
                lower_closed: true,
                upper_closed: false,
            })
            .collect();
        Self { axes }
    }
}

/// A half-space `Σ_j a_j x_j □ b` with `□` either `>` (strict) or `≥`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Halfspace {
    pub normal: Vec<DyadicRational>,
    pub offset: DyadicRational,
    pub strict: bool,
}

/// Intersection of translates `ȳ_i + H_i` of a fixed half-space family.
///
/// A point `x̄` is inside iff for every `i`
/// `Σ_j a_{i,j} x_j + Σ_j (−a_{i,j}) y_{i,j} □_i b_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TranslatePolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    translations: Vec<Vec<DyadicRational>>,
}

impl TranslatePolytope {
    pub fn new(
        dim: usize,
        halfspaces: Vec<Halfspace>,
        translations: Vec<Vec<DyadicRational>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        check_dim(halfspaces.len(), translations.len())?;
        for (h, y) in halfspaces.iter().zip(&translations) {
            check_dim(dim, h.normal.len())?;
            check_dim(dim, y.len())?;
        }
        Ok(Self { dim, halfspaces, translations })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn translations(&self) -> &[Vec<DyadicRational>] {
        &self.translations
    }

    pub fn contains(&self, point: &[DyadicRational]) -> Result<bool> {
        check_dim(self.dim, point.len())?;
        Ok(self.halfspaces.iter().zip(&self.translations).all(|(h, y)| {
            let lhs = h
                .normal
                .iter()
                .zip(point.iter().zip(y))
                .fold(DyadicRational::zero(), |acc, (a, (x, yj))| {
                    &acc + &(&(a * x) - &(a * yj))
                });
            match lhs.cmp(&h.offset) {
                Ordering::Greater => true,
                Ordering::Equal => !h.strict,
                Ordering::Less => false,
            }
        }))
    }
}

/// Any region the incidence engine can test points against.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Region {
    Dyadic(DyadicBox),
    General(GeneralBox),
    Polytope(TranslatePolytope),
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Dyadic(b) => b.dim(),
            Region::General(b) => b.dim(),
            Region::Polytope(p) => p.dim(),
        }
    }

    pub fn contains(&self, point: &[DyadicRational]) -> Result<bool> {
        match self {
            Region::Dyadic(b) => b.contains(point),
            Region::General(b) => b.contains(point),
            Region::Polytope(p) => p.contains(point),
        }
    }

    pub fn as_dyadic(&self) -> Option<&DyadicBox> {
        match self {
            Region::Dyadic(b) => Some(b),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Region::Dyadic(_) => "dyadic",
            Region::General(_) => "box",
            Region::Polytope(_) => "polytope",
        }
    }
}

impl From<DyadicBox> for Region {
    fn from(b: DyadicBox) -> Self {
        Region::Dyadic(b)
    }
}

impl From<GeneralBox> for Region {
    fn from(b: GeneralBox) -> Self {
        Region::General(b)
    }
}

impl From<TranslatePolytope> for Region {
    fn from(p: TranslatePolytope) -> Self {
        Region::Polytope(p)
    }
}

/// Parses a fraction literal; test and example convenience.
pub fn dy(s: &str) -> DyadicRational {
    s.parse().unwrap_or_else(|e: Error| panic!("{}", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pt(xs: &[&str]) -> Vec<DyadicRational> {
        xs.iter().map(|s| dy(s)).collect()
    }

    fn square(s: i64, t: i64) -> DyadicBox {
        DyadicBox::new(vec![DyadicInterval::new(s, t), DyadicInterval::new(s, t)]).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = DyadicRational::new(12, -4);
        assert_eq!(a.mantissa(), &BigInt::from(3));
        assert_eq!(a.exponent(), -2);
        assert_eq!(DyadicRational::new(0, 17), DyadicRational::zero());
        assert_eq!(DyadicRational::zero().exponent(), 0);
        assert_eq!(dy("6/8"), dy("3/4"));
        assert_eq!(dy("-3/4").to_string(), "-3/4");
        assert!(DyadicRational::from_fraction(&BigInt::from(1), &BigInt::from(3)).is_none());
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(&dy("1/4") + &dy("3/8"), dy("5/8"));
        assert_eq!(&dy("1/4") - &dy("3/8"), dy("-1/8"));
        assert_eq!(&dy("3/4") * &dy("-5/2"), dy("-15/8"));
        let tiny = DyadicRational::pow2(-200);
        assert!(&DyadicRational::from_integer(1) + &tiny > DyadicRational::from_integer(1));
    }

    #[test]
    fn ordering_across_signs_and_scales() {
        let mut xs = pt(&["-3", "-1/2", "0", "1/1024", "1/2", "3/4", "1", "5"]);
        let sorted = xs.clone();
        xs.reverse();
        xs.sort();
        assert_eq!(xs, sorted);
        assert!(dy("-1/4") > dy("-1/2"));
    }

    #[test]
    fn interval_relation_examples() {
        use IntervalRelation::*;
        let i = |s, t| DyadicInterval::new(s, t);
        assert_eq!(i(0, 0).relation(&i(1, 0)), Disjoint);
        assert_eq!(i(1, 0).relation(&i(0, 1)), FirstInsideSecond);
        assert_eq!(i(0, 1).relation(&i(1, 0)), SecondInsideFirst);
        assert_eq!(i(3, -1).relation(&i(3, -1)), Equal);
        assert_eq!(i(-1, 0).relation(&i(-1, 3)), FirstInsideSecond);
        assert_eq!(i(-1, 0).relation(&i(0, 3)), Disjoint);
        assert_eq!(i(3, -1).lower(), dy("3/2"));
        assert_eq!(i(3, -1).upper(), dy("2"));
    }

    #[test]
    fn box_contains_examples() {
        let b = square(0, 0);
        assert!(b.contains(&pt(&["1/2", "1/2"])).unwrap());
        assert!(!b.contains(&pt(&["1", "0"])).unwrap());
        assert!(b.contains(&pt(&["0", "0"])).unwrap());
        assert_eq!(
            b.contains(&pt(&["0"])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn general_box_flags() {
        let axis = |lc, uc| BoxAxis {
            lower: dy("0"),
            upper: dy("1"),
            lower_closed: lc,
            upper_closed: uc,
        };
        let closed = GeneralBox::new(vec![axis(true, true)]).unwrap();
        let open = GeneralBox::new(vec![axis(false, false)]).unwrap();
        for x in ["0", "1"] {
            assert!(closed.contains(&pt(&[x])).unwrap());
            assert!(!open.contains(&pt(&[x])).unwrap());
        }
        assert!(open.contains(&pt(&["1/2"])).unwrap());
        let degenerate = BoxAxis { lower: dy("1"), upper: dy("1"), lower_closed: true, upper_closed: true };
        assert_eq!(GeneralBox::new(vec![degenerate]), Err(Error::DegenerateBox { axis: 0 }));
    }

    #[test]
    fn triangle_polytope() {
        // x ≥ 0, y ≥ 0, −x − y ≥ −1, all translated by the zero vector
        let h = |a: &str, b: &str, off: &str| Halfspace {
            normal: pt(&[a, b]),
            offset: dy(off),
            strict: false,
        };
        let tri = TranslatePolytope::new(
            2,
            vec![h("1", "0", "0"), h("0", "1", "0"), h("-1", "-1", "-1")],
            vec![pt(&["0", "0"]); 3],
        )
        .unwrap();
        assert!(tri.contains(&pt(&["1/4", "1/4"])).unwrap());
        assert!(tri.contains(&pt(&["1/2", "1/2"])).unwrap());
        assert!(!tri.contains(&pt(&["3/4", "1/2"])).unwrap());
        // translating every half-space by (1, 1) moves the triangle
        let moved = TranslatePolytope::new(
            2,
            tri.halfspaces().to_vec(),
            vec![pt(&["1", "1"]); 3],
        )
        .unwrap();
        assert!(!moved.contains(&pt(&["1/4", "1/4"])).unwrap());
        assert!(moved.contains(&pt(&["5/4", "5/4"])).unwrap());
    }

    #[test]
    fn strict_halfspace_excludes_boundary() {
        let h = Halfspace { normal: pt(&["1"]), offset: dy("0"), strict: true };
        let p = TranslatePolytope::new(1, vec![h], vec![pt(&["0"])]).unwrap();
        assert!(!p.contains(&pt(&["0"])).unwrap());
        assert!(p.contains(&pt(&["1/8"])).unwrap());
    }

    #[test]
    fn scale_translate_examples() {
        let one = |s, t| DyadicBox::new(vec![DyadicInterval::new(s, t)]).unwrap();
        assert_eq!(one(0, 0).scale_translate(&pt(&["2"]), &[0]).unwrap(), one(2, 0));
        assert_eq!(one(0, 1).scale_translate(&pt(&["0"]), &[-1]).unwrap(), one(0, 0));
        let b = DyadicBox::new(vec![DyadicInterval::new(1, 0), DyadicInterval::new(0, 2)]).unwrap();
        let image = b.scale_translate(&pt(&["1/2", "3"]), &[-1, -2]).unwrap();
        assert_eq!(image.intervals()[0].lower(), dy("1"));
        assert_eq!(image.intervals()[0].upper(), dy("3/2"));
        assert_eq!(image.intervals()[1].lower(), dy("3"));
        assert_eq!(image.intervals()[1].upper(), dy("4"));
        assert_eq!(
            one(0, 0).scale_translate(&pt(&["1/2"]), &[0]),
            Err(Error::NotAligned { axis: 0 })
        );
    }
}
