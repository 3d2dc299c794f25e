//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_r]`.
//!
//! A value is stored by its integer coordinates in the basis
//! `1, x, …, x^(φ(r)-1)` of `Z[x] / Φ_r(x)`. Reduction modulo the monic
//! polynomial `Φ_r` is unique, so equality is a plain vector comparison.
//! All coefficient arithmetic is checked 64-bit.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(r: u32) -> usize {
    let mut n = r as u64;
    let mut result = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub(crate) fn divisors(r: u32) -> Vec<u32> {
    (1..=r).filter(|d| r % d == 0).collect()
}

/// Exact quotient of `num` by the monic polynomial `den` (constant term first).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_polynomial(r: u32) -> Arc<Vec<i64>> {
    if let Some(p) = phi_cache().lock().expect("poisoned").get(&r) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; r as usize + 1];
    num[0] = -1;
    num[r as usize] = 1;
    for d in divisors(r) {
        if d < r {
            num = poly_div_exact(&num, &cached_polynomial(d));
        }
    }
    let poly = Arc::new(num);
    phi_cache()
        .lock()
        .expect("poisoned")
        .insert(r, Arc::clone(&poly));
    poly
}

/// The `r`-th cyclotomic polynomial, constant coefficient first.
///
/// Computed as `(x^r - 1) / Π_{d | r, d < r} Φ_d`.
pub fn cyclotomic_polynomial(r: u32) -> Vec<i64> {
    assert!(r >= 1, "cyclotomic polynomial needs r >= 1");
    cached_polynomial(r).as_ref().clone()
}

fn checked(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow)
}

/// Reduces an arbitrary polynomial in `x` to canonical coordinates modulo `Φ_r`.
fn reduce(order: u32, poly: &[i64]) -> Result<Vec<i64>> {
    let r = order as usize;
    // x^r = 1 in the quotient ring.
    let mut folded = vec![0i64; r];
    for (k, &c) in poly.iter().enumerate() {
        folded[k % r] = checked(folded[k % r].checked_add(c))?;
    }
    let phi = cached_polynomial(order);
    let deg = phi.len() - 1;
    for k in (deg..r).rev() {
        let c = folded[k];
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate() {
            let idx = k - deg + j;
            folded[idx] = checked(folded[idx].checked_sub(checked(c.checked_mul(pj))?))?;
        }
    }
    folded.truncate(deg);
    Ok(folded)
}

/// An element of `Z[ζ_r]` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        Cyclotomic {
            order,
            coeffs: vec![0; euler_phi(order)],
        }
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    /// `ζ_r^k`.
    pub fn zeta_power(order: u32, k: i64) -> Self {
        let mut raw = vec![0i64; order as usize];
        raw[k.rem_euclid(order as i64) as usize] = 1;
        Self::from_exponent_vector(order, &raw).expect("unit has tiny coefficients")
    }

    /// Canonical reduction of `Σ raw[k] ζ_r^k`; `raw` is indexed by exponent.
    pub fn from_exponent_vector(order: u32, raw: &[i64]) -> Result<Self> {
        if order == 0 {
            return Err(Error::Mismatch("cyclotomic order must be positive".into()));
        }
        if raw.len() != order as usize {
            return Err(Error::Mismatch(format!(
                "exponent vector of length {} for order {}",
                raw.len(),
                order
            )));
        }
        Ok(Cyclotomic {
            order,
            coeffs: reduce(order, raw)?,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the value is the rational integer `c`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::IncompatibleOrders {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| checked(a.checked_add(*b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| checked(c.checked_neg()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut prod = vec![0i64; self.coeffs.len() + other.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = checked(prod[i + j].checked_add(checked(a.checked_mul(b))?))?;
            }
        }
        Ok(Cyclotomic {
            order: self.order,
            coeffs: reduce(self.order, &prod)?,
        })
    }

    pub fn checked_scale(&self, m: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| checked(c.checked_mul(m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    /// Complex conjugation, `ζ^k ↦ ζ^(-k)`.
    pub fn conj(&self) -> Self {
        let r = self.order as usize;
        let mut raw = vec![0i64; r];
        for (k, &c) in self.coeffs.iter().enumerate() {
            raw[(r - k) % r] = c;
        }
        Self::from_exponent_vector(self.order, &raw)
            .expect("conjugation preserves coefficient magnitudes up to reduction")
    }

    /// `self / m`, failing unless every coefficient is divisible by `m`.
    pub fn exact_div_int(&self, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::Mismatch(format!("divisor {m} must be positive")));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                if c % m == 0 {
                    Ok(c / m)
                } else {
                    Err(Error::NotDivisible {
                        coefficient: c,
                        divisor: m,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "z")?,
                (1, m) => write!(f, "{m}z")?,
                (k, 1) => write!(f, "z^{k}")?,
                (k, m) => write!(f, "{m}z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator forms panic on ring mismatch or overflow; the `checked_*`
// methods are the fallible API.
impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Cyclotomic {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Cyclotomic {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Cyclotomic {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.checked_neg().unwrap_or_else(|e| panic!("{e}"))
    }
}

/// `sign · ζ_r^exponent`.
///
/// For even `r` the sign is folded into the exponent (`-1 = ζ_r^(r/2)`), so
/// the representation is unique for every order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitScalar {
    order: u32,
    negative: bool,
    exponent: u32,
}

impl UnitScalar {
    pub fn new(order: u32, negative: bool, exponent: i64) -> Self {
        assert!(order >= 1);
        let mut e = exponent.rem_euclid(order as i64) as u32;
        let mut neg = negative;
        if neg && order % 2 == 0 {
            e = (e + order / 2) % order;
            neg = false;
        }
        UnitScalar {
            order,
            negative: neg,
            exponent: e,
        }
    }

    pub fn one(order: u32) -> Self {
        Self::new(order, false, 0)
    }

    pub fn zeta(order: u32, exponent: i64) -> Self {
        Self::new(order, false, exponent)
    }

    /// `(-1)^k`.
    pub fn sign(order: u32, k: usize) -> Self {
        Self::new(order, k % 2 == 1, 0)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exponent == 0
    }

    pub fn conj(&self) -> Self {
        Self::new(self.order, self.negative, -(self.exponent as i64))
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let z = Cyclotomic::zeta_power(self.order, self.exponent as i64);
        if self.negative {
            -&z
        } else {
            z
        }
    }

    /// Adds this unit into an exponent histogram of length `order`.
    pub fn accumulate(&self, hist: &mut [i64]) {
        let slot = &mut hist[self.exponent as usize];
        if self.negative {
            *slot -= 1;
        } else {
            *slot += 1;
        }
    }
}

impl Mul for UnitScalar {
    type Output = UnitScalar;
    fn mul(self, rhs: Self) -> UnitScalar {
        assert_eq!(self.order, rhs.order, "unit scalars of different orders");
        UnitScalar::new(
            self.order,
            self.negative ^ rhs.negative,
            self.exponent as i64 + rhs.exponent as i64,
        )
    }
}

/// Sums units by histogram and reduces once.
pub fn sum_units<'a, I>(order: u32, units: I) -> Cyclotomic
where
    I: IntoIterator<Item = &'a UnitScalar>,
{
    let mut hist = vec![0i64; order as usize];
    for u in units {
        u.accumulate(&mut hist);
    }
    Cyclotomic::from_exponent_vector(order, &hist).expect("histogram counts fit in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn textbook_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn product_over_divisors_is_x_r_minus_one() {
        for r in 1..=30u32 {
            let mut prod = vec![1i64];
            for d in divisors(r) {
                prod = poly_mul(&prod, &cyclotomic_polynomial(d));
            }
            let mut expected = vec![0i64; r as usize + 1];
            expected[0] = -1;
            expected[r as usize] = 1;
            assert_eq!(prod, expected, "r = {r}");
            assert_eq!(cyclotomic_polynomial(r).len() - 1, euler_phi(r));
        }
    }

    #[test]
    fn exponent_vector_reduction() {
        let z = Cyclotomic::from_exponent_vector(3, &[1, 1, 1]).unwrap();
        assert!(z.is_zero());
        let z = Cyclotomic::from_exponent_vector(4, &[0, 0, 1, 0]).unwrap();
        assert_eq!(z, Cyclotomic::from_int(4, -1));
        let z = Cyclotomic::from_exponent_vector(2, &[2, 3]).unwrap();
        assert_eq!(z, Cyclotomic::from_int(2, -1));
        assert!(Cyclotomic::from_exponent_vector(4, &[1, 2]).is_err());
    }

    #[test]
    fn ring_operations() {
        let z5 = Cyclotomic::zeta_power(5, 1);
        assert_eq!(z5.conj(), Cyclotomic::zeta_power(5, 4));
        let m1 = Cyclotomic::zeta_power(2, 1);
        assert_eq!(&m1 * &m1, Cyclotomic::one(2));
        let s = Cyclotomic::from_exponent_vector(3, &[1, 1, 0]).unwrap();
        let s = &s + &Cyclotomic::zeta_power(3, 2);
        assert!((&s * &Cyclotomic::zeta_power(3, 1)).is_zero());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = Cyclotomic::one(3);
        let b = Cyclotomic::one(4);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::IncompatibleOrders { left: 3, right: 4 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            Cyclotomic::from_int(7, 6).exact_div_int(3).unwrap(),
            Cyclotomic::from_int(7, 2)
        );
        let a = Cyclotomic::zeta_power(4, 1).checked_scale(8).unwrap();
        assert_eq!(
            a.exact_div_int(4).unwrap(),
            Cyclotomic::zeta_power(4, 1).checked_scale(2).unwrap()
        );
        assert!(matches!(
            Cyclotomic::zeta_power(3, 1).exact_div_int(2),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn overflow_is_detected() {
        let big = Cyclotomic::from_int(1, i64::MAX);
        assert_eq!(big.checked_add(&Cyclotomic::one(1)), Err(Error::Overflow));
        assert_eq!(big.checked_mul(&Cyclotomic::from_int(1, 2)), Err(Error::Overflow));
    }

    #[test]
    fn unit_scalar_normalization() {
        assert_eq!(UnitScalar::new(4, true, 1), UnitScalar::zeta(4, 3));
        assert!(UnitScalar::new(3, true, 1).is_negative());
        assert_eq!(
            UnitScalar::new(3, true, 1).to_cyclotomic(),
            -&Cyclotomic::zeta_power(3, 1)
        );
        assert_eq!(
            UnitScalar::sign(6, 1) * UnitScalar::sign(6, 1),
            UnitScalar::one(6)
        );
    }

    fn arb_cyclotomic(order: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-20i64..20, order as usize)
            .prop_map(move |raw| Cyclotomic::from_exponent_vector(order, &raw).unwrap())
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involutive_homomorphism(
            (a, b) in (1u32..=12).prop_flat_map(|r| (arb_cyclotomic(r), arb_cyclotomic(r)))
        ) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn unit_histogram_matches_embedded_sum(
            order in 1u32..=12,
            units in proptest::collection::vec((any::<bool>(), 0i64..24), 0..40)
        ) {
            let units: Vec<UnitScalar> = units
                .into_iter()
                .map(|(neg, e)| UnitScalar::new(order, neg, e))
                .collect();
            let mut embedded = Cyclotomic::zero(order);
            for u in &units {
                embedded = &embedded + &u.to_cyclotomic();
            }
            prop_assert_eq!(sum_units(order, &units), embedded);
        }

        #[test]
        fn multiplication_is_commutative_and_distributive(
            (a, b, c) in (1u32..=10).prop_flat_map(|r| (arb_cyclotomic(r), arb_cyclotomic(r), arb_cyclotomic(r)))
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
