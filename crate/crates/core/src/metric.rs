//! Ad-invariant bilinear forms `η^{ab} = δ_{ab} + μ` on the class.

use num_rational::BigRational;
use num_traits::One;

use crate::calculus::{Calculus, OneForm, Tensor2, TwoForm};
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, ExactMatrix};
use crate::group::ConjClass;

#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    mu: BigRational,
    eta: ExactMatrix,
    eta_inv: ExactMatrix,
}

impl Metric {
    /// Fails when `1 + nμ = 0`, where the form degenerates.
    pub fn new(class_size: usize, mu: BigRational) -> Result<Self> {
        let n = class_size;
        let m = Cyclotomic::from_rational(mu.clone());
        let eta = ExactMatrix::from_fn(n, n, |i, j| {
            if i == j {
                &m + &Cyclotomic::one()
            } else {
                m.clone()
            }
        });
        let eta_inv = eta
            .inverse()
            .ok_or_else(|| Error::SingularMetric(mu.clone()))?;
        Ok(Metric { mu, eta, eta_inv })
    }

    pub fn for_class(class: &ConjClass, mu: BigRational) -> Result<Self> {
        Self::new(class.len(), mu)
    }

    pub fn mu(&self) -> &BigRational {
        &self.mu
    }

    pub fn eta(&self) -> &ExactMatrix {
        &self.eta
    }

    pub fn eta_inv(&self) -> &ExactMatrix {
        &self.eta_inv
    }

    /// `η^{g⁻¹ag, b} = η^{a, gbg⁻¹}` for every group element `g`.
    pub fn is_ad_invariant(&self, class: &ConjClass) -> bool {
        let group = class.group();
        let pos = |x: usize| {
            class
                .position(x)
                .expect("class is closed under conjugation")
        };
        let n = class.len();
        (0..group.order()).all(|g| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let a = class.members()[i];
                    let b = class.members()[j];
                    let left = pos(group.conjugate(group.inv(g), a));
                    let right = pos(group.conjugate(g, b));
                    self.eta.get(left, j) == self.eta.get(i, right)
                })
            })
        })
    }

    /// `g = Σ η^{ab} e_a⊗e_b`.
    pub fn tensor(&self, calculus: &Calculus) -> Tensor2 {
        let n = calculus.class_size();
        let values: Vec<Cyclotomic> = (0..n * n)
            .map(|m| self.eta.get(m / n, m % n).clone())
            .collect();
        Tensor2::from_constants(&values, calculus.group_order())
    }

    /// `∧g`, which vanishes for a quantum-symmetric metric.
    pub fn wedge(&self, calculus: &Calculus) -> TwoForm {
        calculus.project(&self.tensor(calculus))
    }

    /// Coframing `e^{*a} = Σ_b e_b η^{ba}`.
    pub fn coframing(&self, calculus: &Calculus, a: usize) -> OneForm {
        let n = calculus.class_size();
        let values: Vec<Cyclotomic> = (0..n).map(|b| self.eta.get(b, a).clone()).collect();
        OneForm::from_constants(&values, calculus.group_order())
    }
}

/// Convenience for `p/q` literals.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
