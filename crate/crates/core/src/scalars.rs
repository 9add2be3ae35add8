//! Exact scalars: the roots of unity `μ_r` as exponents, and integer
//! combinations of them (cyclotomic integers).
//!
//! The primitive root is fixed as `ζ_r = exp(2πi/r)`. A [`CycInt`] stores
//! `r` integer coefficients against `1, ζ, …, ζ^{r-1}`; equality is decided
//! by reducing modulo the cyclotomic polynomial `Φ_r`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("incompatible scalar domains: mu_{0} vs mu_{1}")]
    Mismatch(u32, u32),
    #[error("root-of-unity order must be positive")]
    ZeroOrder,
}

/// `ζ_r^e`, stored as the residue `e mod r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootExponent {
    r: u32,
    e: u32,
}

impl RootExponent {
    pub fn new(r: u32, e: i64) -> Result<Self, ScalarError> {
        if r == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        Ok(Self { r, e: e.rem_euclid(r as i64) as u32 })
    }

    pub fn one(r: u32) -> Self {
        assert!(r > 0, "root-of-unity order must be positive");
        Self { r, e: 0 }
    }

    pub fn order(self) -> u32 {
        self.r
    }

    pub fn exponent(self) -> u32 {
        self.e
    }

    pub fn is_one(self) -> bool {
        self.e == 0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Result<Self, ScalarError> {
        if self.r != other.r {
            return Err(ScalarError::Mismatch(self.r, other.r));
        }
        Ok(Self { r: self.r, e: (self.e + other.e) % self.r })
    }

    pub fn inv(self) -> Self {
        Self { r: self.r, e: (self.r - self.e) % self.r }
    }

    /// Multiplicative order of this root, a divisor of `r`.
    pub fn multiplicative_order(self) -> u32 {
        self.r / num_integer::gcd(self.r, self.e)
    }
}

impl fmt::Display for RootExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}^{}", self.r, self.e)
    }
}

/// Integer polynomial, coefficients from degree 0 upwards.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn divisors(r: u32) -> Vec<u32> {
    (1..=r).filter(|d| r.is_multiple_of(*d)).collect()
}

/// Exact division of `num` by a monic `den`. Returns `(quotient, remainder)`.
fn div_rem_monic(num: &IntPoly, den: &IntPoly) -> (IntPoly, IntPoly) {
    let mut rem = num.clone();
    trim(&mut rem);
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let lead = rem[k + dd].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= &lead * dc;
        }
        quot[k] = lead;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// The `r`-th cyclotomic polynomial, by dividing `x^r - 1` by `Φ_d` for
/// every proper divisor `d` of `r`.
pub fn cyclotomic_poly(r: u32) -> IntPoly {
    assert!(r >= 1, "cyclotomic_poly requires r >= 1");
    let mut p: IntPoly = vec![BigInt::zero(); r as usize + 1];
    p[0] = -BigInt::one();
    p[r as usize] = BigInt::one();
    for d in divisors(r).into_iter().filter(|&d| d < r) {
        let (q, rem) = div_rem_monic(&p, &cyclotomic_poly(d));
        debug_assert!(rem.is_empty(), "x^r - 1 not divisible by Phi_{d}");
        p = q;
    }
    p
}

fn cached_cyclotomic(r: u32) -> Arc<IntPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(r).or_insert_with(|| Arc::new(cyclotomic_poly(r))).clone()
}

/// `Σ coeffs[k]·ζ_r^k` with arbitrary-width integer coefficients.
#[derive(Debug, Clone)]
pub struct CycInt {
    r: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(r: u32) -> Self {
        assert!(r > 0, "root-of-unity order must be positive");
        Self { r, coeffs: vec![BigInt::zero(); r as usize] }
    }

    pub fn one(r: u32) -> Self {
        Self::from_root(RootExponent::one(r))
    }

    pub fn from_root(root: RootExponent) -> Self {
        let mut c = Self::zero(root.r);
        c.coeffs[root.e as usize] = BigInt::one();
        c
    }

    /// Coefficients are taken cyclically: index `k` is read mod `r`.
    pub fn from_coeffs<I: Into<BigInt>>(r: u32, coeffs: impl IntoIterator<Item = I>) -> Self {
        let mut c = Self::zero(r);
        for (k, v) in coeffs.into_iter().enumerate() {
            c.coeffs[k % r as usize] += v.into();
        }
        c
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(ScalarError::Mismatch(self.r, other.r))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { r: self.r, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { r: self.r, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let r = self.r as usize;
        let mut out = Self::zero(self.r);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.coeffs[(i + j) % r] += a * b;
            }
        }
        Ok(out)
    }

    /// Multiply by `ζ^e`: a cyclic shift of the coefficients.
    pub fn mul_root(&self, root: RootExponent) -> Result<Self, ScalarError> {
        if root.r != self.r {
            return Err(ScalarError::Mismatch(self.r, root.r));
        }
        let r = self.r as usize;
        let mut coeffs = vec![BigInt::zero(); r];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(k + root.e as usize) % r] = c.clone();
        }
        Ok(Self { r: self.r, coeffs })
    }

    /// Canonical remainder modulo `Φ_r`, of degree below `φ(r)`.
    pub fn reduced(&self) -> IntPoly {
        let (_, rem) = div_rem_monic(&self.coeffs, &cached_cyclotomic(self.r));
        rem
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        self.reduced().is_empty()
    }

    pub fn eval_float(&self) -> (f64, f64) {
        let step = std::f64::consts::TAU / self.r as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = bigint_to_f64(c);
            let t = step * k as f64;
            (re + c * t.cos(), im + c * t.sin())
        })
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub fn cyc_is_zero(c: &CycInt) -> bool {
    c.is_zero()
}

pub fn cyc_add(a: &CycInt, b: &CycInt) -> Result<CycInt, ScalarError> {
    a.try_add(b)
}

pub fn cyc_mul(a: &CycInt, b: &CycInt) -> Result<CycInt, ScalarError> {
    a.try_mul(b)
}

pub fn cyc_from_root(e: RootExponent) -> CycInt {
    CycInt::from_root(e)
}

pub fn cyc_eval_float(c: &CycInt) -> (f64, f64) {
    c.eval_float()
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl Eq for CycInt {}

// Operator forms panic on mismatched domains; use the `try_*` methods when
// the orders are not known to agree.
impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("CycInt add")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("CycInt sub")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("CycInt mul")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { r: self.r, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*z{}^{k}", self.r)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(cs: &[i64]) -> IntPoly {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn totient(r: u32) -> usize {
        (1..=r).filter(|k| num_integer::gcd(*k, r) == 1).count()
    }

    // Oracle: multiply Φ_d over all divisors d and compare with x^r - 1.
    fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), poly(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), poly(&[1, -1, 1]));
    }

    #[test]
    fn product_of_cyclotomics_is_x_r_minus_one() {
        for r in 1..=24u32 {
            let prod = divisors(r)
                .into_iter()
                .fold(poly(&[1]), |acc, d| poly_mul(&acc, &cyclotomic_poly(d)));
            let mut expect = vec![BigInt::zero(); r as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[r as usize] = BigInt::one();
            assert_eq!(prod, expect, "r = {r}");
            assert_eq!(cyclotomic_poly(r).len() - 1, totient(r), "deg Phi_{r}");
        }
    }

    #[test]
    fn zero_tests() {
        assert!(CycInt::zero(5).is_zero());
        assert!(CycInt::from_coeffs(3, [1, 1, 1]).is_zero());
        // 1 + ζ₄² = 1 + (-1) = 0
        assert!(CycInt::from_coeffs(4, [1, 0, 1, 0]).is_zero());
        assert!(!CycInt::from_coeffs(4, [1, 1, 0, 0]).is_zero());
        assert!(!CycInt::one(1).is_zero());
    }

    #[test]
    fn ring_ops() {
        let r = 2;
        let one_plus = CycInt::from_coeffs(r, [1, 1]);
        let one_minus = CycInt::from_coeffs(r, [1, -1]);
        assert!((&one_plus * &one_minus).is_zero());

        let a = RootExponent::new(7, 3).unwrap();
        let b = RootExponent::new(7, 6).unwrap();
        let prod = &CycInt::from_root(a) * &CycInt::from_root(b);
        assert_eq!(prod, CycInt::from_root(RootExponent::new(7, 2).unwrap()));

        let c = CycInt::from_coeffs(6, [3, -2, 0, 5]);
        assert_eq!(&c + &CycInt::zero(6), c);
    }

    #[test]
    fn mismatched_domains() {
        assert_eq!(
            CycInt::one(3).try_add(&CycInt::one(4)).unwrap_err(),
            ScalarError::Mismatch(3, 4)
        );
        assert!(RootExponent::one(2).mul(RootExponent::one(3)).is_err());
        assert_eq!(RootExponent::new(0, 1).unwrap_err(), ScalarError::ZeroOrder);
    }

    #[test]
    fn float_eval() {
        let (re, im) = CycInt::from_root(RootExponent::new(4, 1).unwrap()).eval_float();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
        let (re, im) = CycInt::zero(9).eval_float();
        assert!(re.hypot(im) < 1e-12);
    }

    #[test]
    fn root_exponent_laws() {
        for r in 1..=24u32 {
            for e in 0..r {
                let z = RootExponent::new(r, e as i64).unwrap();
                assert!(z.mul(RootExponent::new(r, (r - e) as i64).unwrap()).unwrap().is_one());
                assert!(z.mul(z.inv()).unwrap().is_one());
            }
        }
        assert_eq!(RootExponent::new(4, -1).unwrap().exponent(), 3);
        assert_eq!(RootExponent::new(12, 8).unwrap().multiplicative_order(), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn exact_zero_test_agrees_with_float(
            r in 1u32..=24,
            raw in prop::collection::vec(-10i64..=10, 24),
            make_zero in any::<bool>(),
        ) {
            let mut c = CycInt::from_coeffs(r, raw.iter().take(r as usize).copied());
            if make_zero {
                // subtract the reduction so the result is exactly zero in Z[ζ]
                let rem = c.reduced();
                c = c.try_sub(&CycInt::from_coeffs(r, rem)).unwrap();
            }
            let (re, im) = c.eval_float();
            prop_assert_eq!(c.is_zero(), re.hypot(im) < 1e-9);
        }

        #[test]
        fn congruence_is_symmetric(r in 1u32..=12, a in prop::collection::vec(-5i64..=5, 12), b in prop::collection::vec(-5i64..=5, 12)) {
            let x = CycInt::from_coeffs(r, a.iter().take(r as usize).copied());
            let y = CycInt::from_coeffs(r, b.iter().take(r as usize).copied());
            prop_assert_eq!(x == y, (&x - &y).is_zero());
            prop_assert_eq!(x == y, y == x);
            prop_assert!((&(&x * &y) - &(&y * &x)).is_zero());
        }
    }
}
