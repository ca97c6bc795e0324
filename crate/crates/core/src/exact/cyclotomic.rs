//! Elements of cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored as its coordinates in the power basis
//! `1, ζ, ..., ζ^(φ(N)-1)` after reduction modulo the `N`-th cyclotomic
//! polynomial. Since that basis is linearly independent over `Q`, equality of
//! two elements of the same order is coefficient-wise. Elements of different
//! orders are compared (and combined) in the field of the least common
//! multiple order.

use std::collections::HashMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Per-order reduction data, shared by every element of that order.
#[derive(Debug)]
struct FieldData {
    degree: usize,
    /// `powers[k]` holds `ζ^k` reduced to the power basis.
    powers: Vec<Vec<i64>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field(order: u32) -> Arc<FieldData> {
    if let Some(data) = field_cache()
        .read()
        .expect("field cache poisoned")
        .get(&order)
    {
        return Arc::clone(data);
    }
    let data = Arc::new(build_field(order));
    field_cache()
        .write()
        .expect("field cache poisoned")
        .entry(order)
        .or_insert(data)
        .clone()
}

/// Integer coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn build_field(order: u32) -> FieldData {
    let phi = cyclotomic_polynomial(order);
    let degree = phi.len() - 1;
    let count = (order as usize + 1).max(2 * degree);
    let mut powers = Vec::with_capacity(count);
    let mut current = vec![0i64; degree];
    current[0] = 1;
    for _ in 0..count {
        powers.push(current.clone());
        // multiply by x and fold x^degree = -(phi_0 + ... + phi_{d-1} x^{d-1})
        let top = current[degree - 1];
        for j in (1..degree).rev() {
            current[j] = current[j - 1];
        }
        current[0] = 0;
        if top != 0 {
            for j in 0..degree {
                current[j] -= top * phi[j];
            }
        }
    }
    FieldData { degree, powers }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// `ζ_order^k` in canonical form.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let data = field(order);
        let exp = k.rem_euclid(order as i64) as usize;
        let coeffs = data.powers[exp]
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn from_rational(value: BigRational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![value],
        }
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds an element from power-basis coordinates of the given order.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let degree = field(order).degree;
        if coeffs.len() != degree {
            return Err(Error::Dimension(format!(
                "order {order} needs {degree} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn promote(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::Dimension(format!(
                "cannot embed order {} into order {target}",
                self.order
            )));
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let data = field(target);
        let step = (target / self.order) as usize;
        let mut coeffs = vec![BigRational::zero(); data.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate(&mut coeffs, c, &data.powers[j * step]);
        }
        Ok(Cyclotomic {
            order: target,
            coeffs,
        })
    }

    /// Complex conjugation `ζ ↦ ζ^(N-1)`.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let data = field(self.order);
        let n = self.order as usize;
        let mut coeffs = vec![BigRational::zero(); data.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate(&mut coeffs, c, &data.powers[(n - j) % n]);
        }
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Self::from_rational(r.recip()).promote(self.order).ok();
        }
        // Solve (multiplication-by-self) · x = 1 over Q.
        let data = field(self.order);
        let d = data.degree;
        let columns: Vec<Vec<BigRational>> = (0..d)
            .map(|j| {
                let basis =
                    Cyclotomic::root_of_unity(self.order, j as i64).expect("positive order");
                (self * &basis).coeffs
            })
            .collect();
        let mut aug: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = columns.iter().map(|col| col[i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let p = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v = &*v * &p;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=d {
                        let delta = &f * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs = aug
            .into_iter()
            .map(|mut row| row.pop().expect("augmented column"))
            .collect();
        Some(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    /// Floating-point value `(re, im)` for display. Uses only basic IEEE
    /// operations so the digits are identical across platforms.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let (cos, sin) = unit_circle(k as u64, self.order as u64);
            re += v * cos;
            im += v * sin;
        }
        (re, im)
    }

    /// Decimal rendering with twelve fractional digits, e.g. `-0.5+0.866025403784i`.
    pub fn to_decimal_string(&self) -> String {
        let (re, im) = self.to_complex();
        let fmt_part = |x: f64| {
            let s = format!("{x:.12}");
            if s.trim_start_matches('-')
                .chars()
                .all(|c| c == '0' || c == '.')
            {
                "0.000000000000".to_string()
            } else {
                s
            }
        };
        let re_s = fmt_part(re);
        let im_s = fmt_part(im);
        if im_s == "0.000000000000" {
            re_s
        } else if im_s.starts_with('-') {
            format!("{re_s}{im_s}i")
        } else {
            format!("{re_s}+{im_s}i")
        }
    }

    fn aligned<'a>(
        &'a self,
        other: &'a Self,
    ) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if self.order == other.order {
            (Cow::Borrowed(self), Cow::Borrowed(other))
        } else {
            let n = lcm_u32(self.order, other.order);
            (
                Cow::Owned(self.promote(n).expect("lcm is a multiple")),
                Cow::Owned(other.promote(n).expect("lcm is a multiple")),
            )
        }
    }
}

fn accumulate(target: &mut [BigRational], c: &BigRational, basis: &[i64]) {
    for (t, &b) in target.iter_mut().zip(basis) {
        if b != 0 {
            *t += c * BigRational::from_integer(BigInt::from(b));
        }
    }
}

/// `(cos 2πk/n, sin 2πk/n)` from a fixed Taylor expansion.
fn unit_circle(k: u64, n: u64) -> (f64, f64) {
    let k = k % n;
    // exact quarter turns first
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
    }
    let mut x = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
    if x > std::f64::consts::PI {
        x -= 2.0 * std::f64::consts::PI;
    }
    let mut cos = 0.0;
    let mut sin = 0.0;
    let mut term = 1.0;
    for i in 0..40u32 {
        if i % 2 == 0 {
            cos += if (i / 2) % 2 == 0 { term } else { -term };
        } else {
            sin += if (i / 2) % 2 == 0 { term } else { -term };
        }
        term *= x / f64::from(i + 1);
    }
    (cos, sin)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}", self.order)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(value: BigRational) -> Self {
        Self::from_rational(value)
    }
}

impl From<i64> for Cyclotomic {
    fn from(value: i64) -> Self {
        Self::from_int(value)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if rhs.order == 1 {
            let mut out = self.clone();
            out.coeffs[0] += &rhs.coeffs[0];
            return out;
        }
        if self.order == 1 {
            let mut out = rhs.clone();
            out.coeffs[0] += &self.coeffs[0];
            return out;
        }
        let (a, b) = self.aligned(rhs);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if rhs.order == 1 {
            let mut out = self.clone();
            out.coeffs[0] -= &rhs.coeffs[0];
            return out;
        }
        let (a, b) = self.aligned(rhs);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if rhs.order == 1 {
            let s = &rhs.coeffs[0];
            return Cyclotomic {
                order: self.order,
                coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            };
        }
        if self.order == 1 {
            let s = &self.coeffs[0];
            return Cyclotomic {
                order: rhs.order,
                coeffs: rhs.coeffs.iter().map(|c| c * s).collect(),
            };
        }
        let (a, b) = self.aligned(rhs);
        let data = field(a.order);
        let d = data.degree;
        let mut product = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    product[i + j] += x * y;
                }
            }
        }
        let mut coeffs = vec![BigRational::zero(); d];
        for (k, c) in product.iter().enumerate() {
            if !c.is_zero() {
                accumulate(&mut coeffs, c, &data.powers[k]);
            }
        }
        Cyclotomic {
            order: a.order,
            coeffs,
        }
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let inv = rhs.inv().expect("division by zero cyclotomic");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$method(&rhs) }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic { (&self).$method(rhs) }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic { self.$method(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if rhs.order == 1 || rhs.order == self.order {
            if rhs.order == 1 {
                self.coeffs[0] += &rhs.coeffs[0];
            } else {
                for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *x += y;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if rhs.order == 1 {
            self.coeffs[0] -= &rhs.coeffs[0];
        } else if rhs.order == self.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Cyclotomic {
    fn product<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::one(), |acc, x| &acc * &x)
    }
}

/// `ζ_n^k`; panics on `n = 0`.
pub fn zeta(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k).expect("cyclotomic order must be positive")
}

/// Shorthand for the rational `num/den`.
pub fn q(num: i64, den: i64) -> Cyclotomic {
    Cyclotomic::from_frac(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_of_unity_basics() {
        assert!(zeta(6, 0).is_one());
        assert_eq!(zeta(6, 3), Cyclotomic::from_int(-1));
        assert_eq!(zeta(6, 6), Cyclotomic::one());
        assert_eq!(zeta(6, -1), zeta(6, 5));
        assert!(matches!(
            Cyclotomic::root_of_unity(0, 1),
            Err(Error::ZeroOrder)
        ));
    }

    #[test]
    fn odd_powers_of_omega_cancel() {
        let sum = &(&zeta(6, 1) + &zeta(6, 3)) + &zeta(6, 5);
        let (re, im) = sum.to_complex();
        assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
        assert!(sum.is_zero());
    }

    #[test]
    fn mixed_orders_promote_to_lcm() {
        // ζ_3 = ζ_6^2 and ζ_2 = -1
        assert_eq!(zeta(3, 1), zeta(6, 2));
        assert_eq!(zeta(2, 1), Cyclotomic::from_int(-1));
        let s = &zeta(4, 1) + &zeta(6, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(&s - &zeta(12, 2), zeta(12, 3));
    }

    #[test]
    fn conjugation_is_inverse_on_roots() {
        for k in 0..12 {
            let z = zeta(12, k);
            assert!((&z * &z.conj()).is_one());
            assert_eq!(z.conj().conj(), z);
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(
            zeta(6, 1).to_decimal_string(),
            "0.500000000000+0.866025403784i"
        );
        assert_eq!(q(-1, 3).to_decimal_string(), "-0.333333333333");
        assert_eq!(zeta(6, 3).to_decimal_string(), "-1.000000000000");
        assert_eq!(Cyclotomic::zero().to_decimal_string(), "0.000000000000");
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(format!("{}", &q(1, 2) - &zeta(6, 1)), "1/2 - z6");
        assert_eq!(format!("{}", Cyclotomic::zero()), "0");
    }

    fn element() -> impl Strategy<Value = Cyclotomic> {
        (
            prop::collection::vec((-6i64..6, 1i64..4), 4),
            prop::sample::select(vec![1u32, 3, 4, 6, 12]),
        )
            .prop_map(|(parts, n)| {
                parts
                    .into_iter()
                    .enumerate()
                    .map(|(k, (a, b))| &q(a, b) * &zeta(n, k as i64))
                    .sum()
            })
    }

    proptest! {
        #[test]
        fn field_axioms(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn conjugation_is_field_automorphism(a in element(), b in element()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            prop_assert_eq!(a.conj().conj(), a);
        }
    }
}
