use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::GroupFunction;
use crate::exact::Cyclotomic;

macro_rules! form_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name {
            coeffs: Vec<GroupFunction>,
        }

        impl $name {
            pub fn new(coeffs: Vec<GroupFunction>) -> Self {
                $name { coeffs }
            }

            pub fn zero(components: usize, group_order: usize) -> Self {
                $name { coeffs: vec![GroupFunction::zeros(group_order); components] }
            }

            /// Constant coefficients.
            pub fn from_constants(values: &[Cyclotomic], group_order: usize) -> Self {
                $name { coeffs: values.iter().map(|v| GroupFunction::constant(group_order, v.clone())).collect() }
            }

            pub fn coeff(&self, i: usize) -> &GroupFunction {
                &self.coeffs[i]
            }

            pub fn coeffs(&self) -> &[GroupFunction] {
                &self.coeffs
            }

            pub fn coeff_mut(&mut self, i: usize) -> &mut GroupFunction {
                &mut self.coeffs[i]
            }

            pub fn components(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(GroupFunction::is_zero)
            }

            /// Left multiplication `f·ω`.
            pub fn left_mul(&self, f: &GroupFunction) -> Self {
                $name { coeffs: self.coeffs.iter().map(|c| f * c).collect() }
            }

            pub fn scale(&self, c: &Cyclotomic) -> Self {
                $name { coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect() }
            }

            /// The constant coefficient vector, if every coefficient is constant.
            pub fn as_constants(&self) -> Option<Vec<Cyclotomic>> {
                self.coeffs.iter().map(|f| f.as_constant().cloned()).collect()
            }

            /// All coefficient values, component major.
            pub fn flatten(&self) -> Vec<Cyclotomic> {
                self.coeffs.iter().flat_map(|f| f.values().iter().cloned()).collect()
            }
        }

        impl<'a> Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
            }
        }

        impl<'a> Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name { coeffs: self.coeffs.iter().map(|a| -a).collect() }
            }
        }

        impl AddAssign<&$name> for $name {
            fn add_assign(&mut self, rhs: &$name) {
                for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *a += b;
                }
            }
        }

        impl SubAssign<&$name> for $name {
            fn sub_assign(&mut self, rhs: &$name) {
                for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *a -= b;
                }
            }
        }
    };
}

form_type!(
    /// `α = Σ_a α^a e_a`, coefficients indexed by class position.
    OneForm
);

form_type!(
    /// Coordinates in the chosen quotient basis of Ω².
    TwoForm
);

form_type!(
    /// Element of Ω¹⊗Ω¹ with left coefficients, indexed by `i·n + j` for `e_i⊗e_j`.
    Tensor2
);

form_type!(
    /// Element of Ω²⊗Ω¹ with left coefficients, indexed by `k·n + c` for
    /// (quotient basis monomial `k`)⊗`e_c`.
    Tensor21
);
