//! Spinor fields, gamma matrices and the Dirac and wave operators.
//!
//! Spinor fields `ψ: G → W` are flattened spinor-component major: coordinate
//! `w·|G| + g` holds `ψ_w(g)`.

mod modes;
mod spectrum;

pub use modes::{
    chirality, d_blocks, eigenmode_catalog, peter_weyl_rank, sign_multiplication, DBlocks,
    EigenmodeCandidate, EigenmodeCatalog, KernelInvolution, ModeSpan, ModeStatus,
};
pub use spectrum::{
    minimal_polynomial, minimal_polynomial_check, rational_spectrum, spectral_action, spectrum,
    Spectrum,
};

use crate::calculus::{Calculus, GroupFunction};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, ExactMatrix, Vector};
use crate::group::{right_translation, Representation};
use crate::metric::Metric;

/// A linear operator on spinor fields with values in a `spinor_dim`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorOperator {
    matrix: ExactMatrix,
    spinor_dim: usize,
    group_order: usize,
}

impl SpinorOperator {
    pub fn new(matrix: ExactMatrix, spinor_dim: usize, group_order: usize) -> Result<Self> {
        let n = spinor_dim * group_order;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "operator is {}x{}, expected {n}x{n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(SpinorOperator {
            matrix,
            spinor_dim,
            group_order,
        })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn spinor_dim(&self) -> usize {
        self.spinor_dim
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// The `|G|×|G|` block acting from spinor component `j` to component `i`.
    pub fn block(&self, i: usize, j: usize) -> ExactMatrix {
        self.matrix.block(i, j, self.group_order)
    }

    pub fn is_hermitian(&self) -> bool {
        self.matrix.is_hermitian()
    }

    pub fn apply(&self, field: &[GroupFunction]) -> Result<Vec<GroupFunction>> {
        if field.len() != self.spinor_dim || field.iter().any(|f| f.len() != self.group_order) {
            return Err(Error::Dimension(
                "spinor field shape does not match the operator".into(),
            ));
        }
        let image = self.matrix.mul_vec(&flatten(field));
        Ok(image
            .chunks(self.group_order)
            .map(|c| GroupFunction::new(c.to_vec()))
            .collect())
    }
}

/// Concatenates spinor components into one coordinate vector.
pub fn flatten(field: &[GroupFunction]) -> Vector {
    field
        .iter()
        .flat_map(|f| f.values().iter().cloned())
        .collect()
}

fn check_setup(calculus: &Calculus, rep: &Representation, metric: &Metric) -> Result<()> {
    if **rep.group() != *calculus.group() {
        return Err(Error::Precondition(format!(
            "representation {} belongs to a different group",
            rep.name()
        )));
    }
    if metric.eta().rows() != calculus.class_size() {
        return Err(Error::Dimension(format!(
            "metric has size {}, class has {} members",
            metric.eta().rows(),
            calculus.class_size()
        )));
    }
    Ok(())
}

/// `ρ(C) = Σ_{a,b} η⁻¹_{ab} ρ(a−e) ρ(b−e)`.
pub fn casimir(calculus: &Calculus, rep: &Representation, metric: &Metric) -> Result<ExactMatrix> {
    check_setup(calculus, rep, metric)?;
    let members = calculus.class().members();
    let shifted: Vec<ExactMatrix> = members.iter().map(|&a| rep.shifted(a)).collect();
    let mut total = ExactMatrix::zeros(rep.dim(), rep.dim());
    for (i, fa) in shifted.iter().enumerate() {
        for (j, fb) in shifted.iter().enumerate() {
            let w = metric.eta_inv().get(i, j);
            if !w.is_zero() {
                total = &total + &(fa * fb).scale(w);
            }
        }
    }
    Ok(total)
}

/// `γ_a = Σ_b η⁻¹_{ab} ρ(b−e)`, one per class member in class order.
pub fn gamma_matrices(
    calculus: &Calculus,
    rep: &Representation,
    metric: &Metric,
) -> Result<Vec<ExactMatrix>> {
    check_setup(calculus, rep, metric)?;
    let members = calculus.class().members();
    let n = members.len();
    Ok((0..n)
        .map(|i| {
            members
                .iter()
                .enumerate()
                .fold(ExactMatrix::zeros(rep.dim(), rep.dim()), |acc, (j, &b)| {
                    &acc + &rep.shifted(b).scale(metric.eta_inv().get(i, j))
                })
        })
        .collect())
}

/// Right translations `R_a` for the class members, in class order.
pub fn translation_matrices(calculus: &Calculus) -> Vec<ExactMatrix> {
    calculus
        .class()
        .members()
        .iter()
        .map(|&a| right_translation(calculus.group(), a))
        .collect()
}

/// `∂^a γ_a = Σ_a γ_a ⊗ (R_a − id)`.
pub fn kinetic_term(calculus: &Calculus, gammas: &[ExactMatrix]) -> ExactMatrix {
    let id = ExactMatrix::identity(calculus.group_order());
    let dim = gammas.first().map_or(0, ExactMatrix::rows);
    translation_matrices(calculus).iter().zip(gammas).fold(
        ExactMatrix::zeros(dim * id.rows(), dim * id.rows()),
        |acc, (r, g)| &acc + &g.kron(&(r - &id)),
    )
}

/// `Σ_{a,b} A_a^b γ_b τ^a` with `τ^a = ρ(a⁻¹ − e)` and `A_a^b` the coefficient of
/// `e_b` in `A_a`, acting by pointwise multiplication.
pub fn connection_term(
    calculus: &Calculus,
    rep: &Representation,
    conn: &Connection,
    gammas: &[ExactMatrix],
) -> Result<ExactMatrix> {
    let n = calculus.class_size();
    if conn.components().len() != n {
        return Err(Error::Dimension(
            "connection does not match the calculus".into(),
        ));
    }
    let group = calculus.group();
    let size = rep.dim() * calculus.group_order();
    let mut total = ExactMatrix::zeros(size, size);
    for (a, &member) in calculus.class().members().iter().enumerate() {
        let tau = rep.shifted(group.inv(member));
        for (b, gamma) in gammas.iter().enumerate() {
            let coeff = conn.component(a).coeff(b);
            if coeff.is_zero() {
                continue;
            }
            total = &total + &(gamma * &tau).kron(&ExactMatrix::diagonal(coeff.values()));
        }
    }
    Ok(total)
}

/// The Dirac operator `D̸ = ∂^a γ_a − A_a^b γ_b τ^a` on spinor fields.
pub fn dirac_operator(
    calculus: &Calculus,
    rep: &Representation,
    conn: &Connection,
    metric: &Metric,
) -> Result<SpinorOperator> {
    let gammas = gamma_matrices(calculus, rep, metric)?;
    let kinetic = kinetic_term(calculus, &gammas);
    let correction = connection_term(calculus, rep, conn, &gammas)?;
    SpinorOperator::new(&kinetic - &correction, rep.dim(), calculus.group_order())
}

/// Scalar wave operator `□ = −Σ η⁻¹_{ab} ∂^a ∂^b`.
pub fn wave_operator(calculus: &Calculus, metric: &Metric) -> Result<SpinorOperator> {
    if metric.eta().rows() != calculus.class_size() {
        return Err(Error::Dimension("metric does not match the class".into()));
    }
    let id = ExactMatrix::identity(calculus.group_order());
    let partials: Vec<ExactMatrix> = translation_matrices(calculus)
        .iter()
        .map(|r| r - &id)
        .collect();
    let mut total = ExactMatrix::zeros(id.rows(), id.rows());
    for (i, pa) in partials.iter().enumerate() {
        for (j, pb) in partials.iter().enumerate() {
            let w = metric.eta_inv().get(i, j);
            if !w.is_zero() {
                total = &total - &(pa * pb).scale(w);
            }
        }
    }
    SpinorOperator::new(total, 1, calculus.group_order())
}

/// `Σ_a R_a` over the class.
pub fn translation_sum(calculus: &Calculus) -> ExactMatrix {
    let n = calculus.group_order();
    translation_matrices(calculus)
        .iter()
        .fold(ExactMatrix::zeros(n, n), |acc, r| &acc + r)
}

/// Scalar multiple of the identity, if `m` is one.
pub fn as_scalar(m: &ExactMatrix) -> Option<Cyclotomic> {
    let c = m.get(0, 0).clone();
    (*m == ExactMatrix::scalar(m.rows(), &c)).then_some(c)
}
