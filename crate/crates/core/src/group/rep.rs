use std::sync::Arc;

use num_traits::{One, Zero};

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::exact::{zeta, Cyclotomic, ExactMatrix, Vector};

/// A unitary matrix representation, one matrix per group element.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    name: String,
    dim: usize,
    matrices: Vec<ExactMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinRep {
    /// `ρ(r) = diag(ζ_n, ζ_n⁻¹)`, `ρ(s) = antidiag(1, 1)`.
    Spinor,
    /// `ρ̃(r) = id`, `ρ̃(s) = diag(−1, 1)`.
    Sign2,
}

impl Representation {
    /// Checks `ρ(e) = id`, `ρ(g)ρ(h) = ρ(gh)` and `ρ(g)* = ρ(g⁻¹)`.
    pub fn new(
        group: Arc<FiniteGroup>,
        name: impl Into<String>,
        matrices: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let name = name.into();
        if matrices.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{name}: {} matrices for {} elements",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!(
                "{name}: matrices are not all {dim}x{dim}"
            )));
        }
        if matrices[group.identity()] != ExactMatrix::identity(dim) {
            return Err(Error::Precondition(format!(
                "{name}: identity not sent to the identity matrix"
            )));
        }
        for g in 0..group.order() {
            if matrices[g].conj_transpose() != matrices[group.inv(g)] {
                return Err(Error::Precondition(format!(
                    "{name}: not unitary at {}",
                    group.name(g)
                )));
            }
            for h in 0..group.order() {
                if &matrices[g] * &matrices[h] != matrices[group.mul(g, h)] {
                    return Err(Error::Precondition(format!(
                        "{name}: not a homomorphism at ({}, {})",
                        group.name(g),
                        group.name(h)
                    )));
                }
            }
        }
        Ok(Representation {
            group,
            name,
            dim,
            matrices,
        })
    }

    /// Extends generator images over a dihedral presentation.
    pub fn from_dihedral_generators(
        group: &Arc<FiniteGroup>,
        name: impl Into<String>,
        rho_r: ExactMatrix,
        rho_s: ExactMatrix,
    ) -> Result<Self> {
        let p = group
            .dihedral_presentation()
            .ok_or_else(|| Error::Unsupported("group has no dihedral presentation".into()))?;
        let matrices = p
            .words
            .iter()
            .map(|&(reflect, k)| {
                let rot = rho_r.pow(k as u32);
                if reflect {
                    &rho_s * &rot
                } else {
                    rot
                }
            })
            .collect();
        Self::new(Arc::clone(group), name, matrices)
    }

    /// One-dimensional representation from a character with values in roots of unity.
    pub fn from_character(
        group: &Arc<FiniteGroup>,
        name: impl Into<String>,
        values: Vec<Cyclotomic>,
    ) -> Result<Self> {
        let matrices = values
            .into_iter()
            .map(|v| ExactMatrix::diagonal(&[v]))
            .collect();
        Self::new(Arc::clone(group), name, matrices)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &ExactMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    /// `ρ(g) − id`, the image of `g − e` in the group algebra.
    pub fn shifted(&self, g: usize) -> ExactMatrix {
        &self.matrices[g] - &ExactMatrix::identity(self.dim)
    }

    /// The function `g ↦ ρ(g)_{ij}`.
    pub fn matrix_element(&self, i: usize, j: usize) -> Vector {
        self.matrices.iter().map(|m| m.get(i, j).clone()).collect()
    }

    pub fn character(&self) -> Vector {
        self.matrices.iter().map(ExactMatrix::trace).collect()
    }
}

/// `⟨χ, ψ⟩ = |G|⁻¹ Σ_g χ(g) conj(ψ(g))`.
pub fn character_inner(chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
    let sum: Cyclotomic = chi.iter().zip(psi).map(|(a, b)| a * &b.conj()).sum();
    &sum / &Cyclotomic::from_int(chi.len() as i64)
}

/// Named representations of dihedral groups of order at least 6.
pub fn builtin_rep(group: &Arc<FiniteGroup>, which: BuiltinRep) -> Result<Representation> {
    let p = group.dihedral_presentation().ok_or_else(|| {
        Error::Unsupported(
            "built-in representations are registered for dihedral groups only".into(),
        )
    })?;
    let zero = Cyclotomic::zero;
    let one = Cyclotomic::one;
    match which {
        BuiltinRep::Spinor => {
            let n = p.n as u32;
            let rho_r = ExactMatrix::diagonal(&[zeta(n, 1), zeta(n, -1)]);
            let rho_s = ExactMatrix::from_rows(vec![vec![zero(), one()], vec![one(), zero()]])?;
            Representation::from_dihedral_generators(group, "spinor", rho_r, rho_s)
        }
        BuiltinRep::Sign2 => {
            let rho_s = ExactMatrix::diagonal(&[Cyclotomic::from_int(-1), one()]);
            Representation::from_dihedral_generators(
                group,
                "sign2",
                ExactMatrix::identity(2),
                rho_s,
            )
        }
    }
}

/// Catalog of irreducibles for dihedral groups: the one-dimensional
/// characters followed by `ρ_k(r) = diag(ζ^k, ζ^{-k})`, `ρ_k(s) = antidiag(1, 1)`
/// for `1 ≤ k < n/2`.
pub fn irreducibles(group: &Arc<FiniteGroup>) -> Result<Vec<Representation>> {
    let p = group.dihedral_presentation().ok_or_else(|| {
        Error::Unsupported("no irreducible catalog registered for this group".into())
    })?;
    let n = p.n;
    let mut signs: Vec<(&str, i64, i64)> = vec![("trivial", 1, 1), ("det", 1, -1)];
    if n % 2 == 0 {
        signs.push(("alt", -1, 1));
        signs.push(("alt_det", -1, -1));
    }
    let mut out = Vec::new();
    for (name, on_r, on_s) in signs {
        let values = p
            .words
            .iter()
            .map(|&(reflect, k)| {
                let r_part = if k % 2 == 1 { on_r } else { 1 };
                let s_part = if reflect { on_s } else { 1 };
                Cyclotomic::from_int(r_part * s_part)
            })
            .collect();
        out.push(Representation::from_character(group, name, values)?);
    }
    for k in 1..n.div_ceil(2) {
        let rho_r = ExactMatrix::diagonal(&[zeta(n as u32, k as i64), zeta(n as u32, -(k as i64))]);
        let rho_s = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::zero(), Cyclotomic::one()],
            vec![Cyclotomic::one(), Cyclotomic::zero()],
        ])?;
        out.push(Representation::from_dihedral_generators(
            group,
            format!("rho{k}"),
            rho_r,
            rho_s,
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_class, dihedral};

    #[test]
    fn spinor_reflection_images() {
        let g = dihedral(6).unwrap();
        let rho = builtin_rep(&g, BuiltinRep::Spinor).unwrap();
        let t = g.index_of("sr").unwrap();
        let expected = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::zero(), zeta(6, -1)],
            vec![zeta(6, 1), Cyclotomic::zero()],
        ])
        .unwrap();
        assert_eq!(rho.matrix(t), &expected);
        let c = conjugacy_class(&g, t);
        let sum = c
            .members()
            .iter()
            .fold(ExactMatrix::zeros(2, 2), |acc, &a| &acc + rho.matrix(a));
        assert!(sum.is_zero());
    }

    #[test]
    fn sign2_is_constant_on_reflections() {
        let g = dihedral(6).unwrap();
        let rho = builtin_rep(&g, BuiltinRep::Sign2).unwrap();
        let s = rho.matrix(g.index_of("s").unwrap());
        for name in ["sr", "sr3", "sr5"] {
            assert_eq!(rho.matrix(g.index_of(name).unwrap()), s);
        }
        assert!(rho.matrix_element(0, 1).iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn non_dihedral_groups_are_rejected() {
        let g = dihedral(2).unwrap();
        assert!(matches!(
            builtin_rep(&g, BuiltinRep::Spinor),
            Err(Error::Unsupported(_))
        ));
        assert!(irreducibles(&g).is_err());
    }

    #[test]
    fn d6_irreducible_catalog() {
        let g = dihedral(6).unwrap();
        let irreps = irreducibles(&g).unwrap();
        let dims: Vec<usize> = irreps.iter().map(Representation::dim).collect();
        assert_eq!(dims, [1, 1, 1, 1, 2, 2]);
        assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 12);
        assert!(irreps[0]
            .matrices()
            .iter()
            .all(|m| m == &ExactMatrix::identity(1)));
        for (i, a) in irreps.iter().enumerate() {
            for (j, b) in irreps.iter().enumerate() {
                let expected = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                assert_eq!(
                    character_inner(&a.character(), &b.character()),
                    expected,
                    "({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn odd_dihedral_catalog_is_complete() {
        let g = dihedral(5).unwrap();
        let dims: Vec<usize> = irreducibles(&g)
            .unwrap()
            .iter()
            .map(Representation::dim)
            .collect();
        assert_eq!(dims.iter().map(|d| d * d).sum::<usize>(), 10);
    }

    #[test]
    fn broken_homomorphism_is_rejected() {
        let g = dihedral(3).unwrap();
        let mut matrices = vec![ExactMatrix::identity(1); 6];
        matrices[1] = ExactMatrix::diagonal(&[Cyclotomic::from_int(-1)]);
        assert!(Representation::new(g, "bad", matrices).is_err());
    }
}
