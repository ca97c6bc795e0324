//! Univariate polynomials with cyclotomic coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cyclotomic, ExactMatrix};
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Cyclotomic>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_rationals(coeffs: &[(i64, i64)]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&(n, d)| Cyclotomic::from_frac(n, d))
                .collect(),
        )
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots(roots: &[Cyclotomic]) -> Self {
        roots
            .iter()
            .fold(Polynomial::new(vec![Cyclotomic::one()]), |acc, r| {
                acc.mul(&Polynomial::new(vec![-r, Cyclotomic::one()]))
            })
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::new(Vec::new());
        }
        let mut out = vec![Cyclotomic::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        self.coeffs
            .iter()
            .rev()
            .fold(Cyclotomic::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        self.coeffs
            .iter()
            .rev()
            .fold(ExactMatrix::zeros(n, n), |acc, c| {
                &(&acc * m) + &ExactMatrix::scalar(n, c)
            })
    }

    /// Least monic polynomial annihilating `m`, found by exact Krylov elimination
    /// on the powers `I, m, m², ...`.
    pub fn minimal_of(m: &ExactMatrix) -> Result<Polynomial> {
        if !m.is_square() {
            return Err(Error::Dimension(
                "minimal polynomial of a non-square matrix".into(),
            ));
        }
        let n = m.rows();
        let mut powers: Vec<Vec<Cyclotomic>> = vec![ExactMatrix::identity(n).entries().to_vec()];
        let mut current = ExactMatrix::identity(n);
        for _ in 0..n {
            current = &current * m;
            let target = current.entries().to_vec();
            let basis = ExactMatrix::from_columns(n * n, &powers)?;
            match basis.solve_affine(&target) {
                Ok(sol) => {
                    // m^k = Σ c_i m^i, so x^k - Σ c_i x^i annihilates
                    let mut coeffs: Vec<Cyclotomic> = sol.particular.iter().map(|c| -c).collect();
                    coeffs.push(Cyclotomic::one());
                    return Ok(Polynomial::new(coeffs));
                }
                Err(Error::Infeasible) => powers.push(target),
                Err(e) => return Err(e),
            }
        }
        Err(Error::Internal("Cayley-Hamilton bound exceeded".into()))
    }

    /// Divides by `x - root`, returning the quotient when the remainder vanishes.
    pub fn deflate(&self, root: &Cyclotomic) -> Option<Polynomial> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let mut quotient = vec![Cyclotomic::zero(); d];
        let mut carry = Cyclotomic::zero();
        for k in (0..=d).rev() {
            let value = &self.coeffs[k] + &(&carry * root);
            if k == 0 {
                return value.is_zero().then(|| Polynomial::new(quotient));
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Distinct rational roots with multiplicities, plus the cofactor with no
    /// rational roots left. Requires rational coefficients.
    pub fn rational_roots(&self) -> Result<(Vec<(BigRational, usize)>, Polynomial)> {
        let rational: Option<Vec<BigRational>> =
            self.coeffs.iter().map(Cyclotomic::to_rational).collect();
        let Some(rational) = rational else {
            return Err(Error::Unsupported(
                "rational root search needs rational coefficients".into(),
            ));
        };
        if rational.is_empty() {
            return Err(Error::Precondition("zero polynomial has every root".into()));
        }
        let lcm = rational
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rational
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();

        let mut roots = Vec::new();
        let mut rest = self.clone();
        let mut zero_mult = 0;
        while rest.coeffs.first().is_some_and(Cyclotomic::is_zero) {
            rest = rest.deflate(&Cyclotomic::zero()).expect("zero is a root");
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        let first_nonzero = ints
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero polynomial")
            .clone();
        let leading = ints.last().expect("nonzero polynomial").clone();
        let numerators = small_divisors(&first_nonzero)?;
        let denominators = small_divisors(&leading)?;
        let mut candidates: Vec<BigRational> = Vec::new();
        for p in &numerators {
            for q in &denominators {
                for sign in [1, -1] {
                    let c = BigRational::new(BigInt::from(sign) * p, q.clone());
                    if !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
        }
        candidates.sort();
        for c in candidates {
            let root = Cyclotomic::from_rational(c.clone());
            let mut mult = 0;
            while let Some(q) = rest.deflate(&root) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((roots, rest))
    }
}

fn small_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let Some(value) = n.to_u64().filter(|&v| v <= 1_000_000_000_000) else {
        return Err(Error::Unsupported(format!(
            "coefficient {n} too large for divisor enumeration"
        )));
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= value {
        if value % d == 0 {
            out.push(BigInt::from(d));
            if d * d != value {
                out.push(BigInt::from(value / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
