use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::exact::Cyclotomic;

/// A function on the group, stored by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFunction {
    values: Vec<Cyclotomic>,
}

impl GroupFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        GroupFunction { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self::constant(n, Cyclotomic::zero())
    }

    pub fn constant(n: usize, value: Cyclotomic) -> Self {
        GroupFunction {
            values: vec![value; n],
        }
    }

    pub fn delta(n: usize, g: usize) -> Self {
        let mut f = Self::zeros(n);
        f.values[g] = Cyclotomic::from_int(1);
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, g: usize) -> &Cyclotomic {
        &self.values[g]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Cyclotomic> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// The common value if the function is constant.
    pub fn as_constant(&self) -> Option<&Cyclotomic> {
        let first = self.values.first()?;
        self.values.iter().all(|v| v == first).then_some(first)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        GroupFunction {
            values: self
                .values
                .iter()
                .map(|v| if v.is_zero() { v.clone() } else { v * c })
                .collect(),
        }
    }

    /// `g ↦ f(perm[g])`; with `perm[g] = g·a` this is the right translation `R_a f`.
    pub fn pull_back(&self, perm: &[usize]) -> Self {
        GroupFunction {
            values: perm.iter().map(|&h| self.values[h].clone()).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        GroupFunction {
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }
}

impl<'a> Add<&'a GroupFunction> for &'a GroupFunction {
    type Output = GroupFunction;
    fn add(self, rhs: &GroupFunction) -> GroupFunction {
        GroupFunction {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a GroupFunction> for &'a GroupFunction {
    type Output = GroupFunction;
    fn sub(self, rhs: &GroupFunction) -> GroupFunction {
        GroupFunction {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a GroupFunction> for &'a GroupFunction {
    type Output = GroupFunction;
    fn mul(self, rhs: &GroupFunction) -> GroupFunction {
        GroupFunction {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| {
                    if a.is_zero() || b.is_zero() {
                        Cyclotomic::zero()
                    } else {
                        a * b
                    }
                })
                .collect(),
        }
    }
}

impl Neg for &GroupFunction {
    type Output = GroupFunction;
    fn neg(self) -> GroupFunction {
        GroupFunction {
            values: self.values.iter().map(|a| -a).collect(),
        }
    }
}

impl AddAssign<&GroupFunction> for GroupFunction {
    fn add_assign(&mut self, rhs: &GroupFunction) {
        for (a, b) in self.values.iter_mut().zip(&rhs.values) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&GroupFunction> for GroupFunction {
    fn sub_assign(&mut self, rhs: &GroupFunction) {
        for (a, b) in self.values.iter_mut().zip(&rhs.values) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}
