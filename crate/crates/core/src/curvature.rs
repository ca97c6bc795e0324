//! Covariant derivative, curvature forms, Riemann and Ricci tensors.

use num_traits::{One, Zero};

use crate::calculus::{Calculus, GroupFunction, OneForm, Tensor2, Tensor21, TwoForm};
use crate::connection::{ChartParams, Connection};
use crate::error::{Error, Result};
use crate::exact::{linearize, q, Cyclotomic, ExactMatrix, Vector};

/// Right inverses (or near inverses) of `∧ : Ω¹⊗Ω¹ → Ω²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lift {
    /// `i(e_a∧e_b) = e_a⊗e_b − ½ Σ_{cd=ab, c≠d} e_c⊗e_d`, `i(e_a∧e_a) = 0`.
    Canonical,
    /// `i′(e_a∧e_b) = e_a⊗e_b − e_{aba⁻¹}⊗e_a`.
    Braided,
}

impl Lift {
    pub const ALL: [Lift; 2] = [Lift::Canonical, Lift::Braided];

    pub fn name(self) -> &'static str {
        match self {
            Lift::Canonical => "canonical",
            Lift::Braided => "braided",
        }
    }
}

/// `∇α = dα^a⊗e_a − α^a Σ_b A_b⊗(e_{b⁻¹ab} − e_a)`.
pub fn covariant_derivative(calculus: &Calculus, conn: &Connection, alpha: &OneForm) -> Tensor2 {
    let n = calculus.class_size();
    let mut out = calculus.zero_tensor();
    for a in 0..n {
        let f = alpha.coeff(a);
        if f.is_zero() {
            continue;
        }
        out += &calculus.tensor(&calculus.d_function(f), &calculus.e(a));
        for b in 0..n {
            let target = calculus.conj_inv(b, a);
            if target == a {
                continue;
            }
            let diff = &calculus.e(target) - &calculus.e(a);
            out -= &calculus.tensor(conn.component(b), &diff).left_mul(f);
        }
    }
    out
}

/// `F_a = dA_a + Σ_{cd=a} A_c∧A_d − Σ_c (A_c∧A_a + A_a∧A_c)`, with the
/// quadratic part kept separately.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureForms {
    pub forms: Vec<TwoForm>,
    pub quadratic: Vec<TwoForm>,
}

impl CurvatureForms {
    pub fn quadratic_vanishes(&self) -> bool {
        self.quadratic.iter().all(TwoForm::is_zero)
    }
}

pub fn curvature_forms(calculus: &Calculus, conn: &Connection) -> CurvatureForms {
    let n = calculus.class_size();
    let class = calculus.class();
    let mut forms = Vec::with_capacity(n);
    let mut quadratic = Vec::with_capacity(n);
    for a in 0..n {
        let mut quad = calculus.zero_two_form();
        for (c, d) in class.pairs_with_product(class.members()[a]) {
            quad += &calculus.wedge(conn.component(c), conn.component(d));
        }
        for c in 0..n {
            quad -= &calculus.wedge(conn.component(c), conn.component(a));
            quad -= &calculus.wedge(conn.component(a), conn.component(c));
        }
        forms.push(&calculus.d_one_form(conn.component(a)) + &quad);
        quadratic.push(quad);
    }
    CurvatureForms { forms, quadratic }
}

/// `ℛα = α^a Σ_b F_b⊗(e_{b⁻¹ab} − e_a)`.
pub fn riemann(calculus: &Calculus, curvature: &CurvatureForms, alpha: &OneForm) -> Tensor21 {
    let n = calculus.class_size();
    let dim = calculus.space().dimension();
    let mut out = Tensor21::zero(dim * n, calculus.group_order());
    for a in 0..n {
        let f = alpha.coeff(a);
        if f.is_zero() {
            continue;
        }
        for b in 0..n {
            let target = calculus.conj_inv(b, a);
            if target == a {
                continue;
            }
            for k in 0..dim {
                let coeff = f * curvature.forms[b].coeff(k);
                *out.coeff_mut(k * n + target) += &coeff;
                *out.coeff_mut(k * n + a) -= &coeff;
            }
        }
    }
    out
}

/// Lift of each quotient basis monomial as a constant tensor.
pub fn lift_basis(calculus: &Calculus, variant: Lift) -> Vec<Vector> {
    let n = calculus.class_size();
    let class = calculus.class();
    let group = class.group();
    calculus
        .space()
        .quotient_basis()
        .iter()
        .map(|&(a, b)| {
            let mut t = vec![Cyclotomic::zero(); n * n];
            match variant {
                Lift::Canonical => {
                    if a != b {
                        t[a * n + b] += &Cyclotomic::one();
                        let product = group.mul(class.members()[a], class.members()[b]);
                        for (c, d) in class.pairs_with_product(product) {
                            if c != d {
                                t[c * n + d] -= &q(1, 2);
                            }
                        }
                    }
                }
                Lift::Braided => {
                    t[a * n + b] += &Cyclotomic::one();
                    t[calculus.conj(a, b) * n + a] -= &Cyclotomic::one();
                }
            }
            t
        })
        .collect()
}

/// `i(ω)` for a 2-form in quotient coordinates.
pub fn lift(calculus: &Calculus, variant: Lift, omega: &TwoForm) -> Tensor2 {
    lift_with(calculus, &lift_basis(calculus, variant), omega)
}

fn lift_with(calculus: &Calculus, basis: &[Vector], omega: &TwoForm) -> Tensor2 {
    let mut out = calculus.zero_tensor();
    for (k, lifted) in basis.iter().enumerate() {
        let f = omega.coeff(k);
        if f.is_zero() {
            continue;
        }
        for (m, c) in lifted.iter().enumerate() {
            if !c.is_zero() {
                *out.coeff_mut(m) += &f.scale(c);
            }
        }
    }
    out
}

/// `Ricci = Σ_{a,b,c} i(F_c)^{ab} e_b⊗(e_{c⁻¹ac} − e_a)`.
pub fn ricci_from_forms(calculus: &Calculus, variant: Lift, forms: &[TwoForm]) -> Tensor2 {
    let n = calculus.class_size();
    let basis = lift_basis(calculus, variant);
    let mut out = calculus.zero_tensor();
    for (c, form) in forms.iter().enumerate() {
        let lifted = lift_with(calculus, &basis, form);
        for a in 0..n {
            let target = calculus.conj_inv(c, a);
            if target == a {
                continue;
            }
            for b in 0..n {
                let coeff = lifted.coeff(a * n + b);
                if coeff.is_zero() {
                    continue;
                }
                *out.coeff_mut(b * n + target) += coeff;
                *out.coeff_mut(b * n + a) -= coeff;
            }
        }
    }
    out
}

pub fn ricci(calculus: &Calculus, conn: &Connection, variant: Lift) -> Tensor2 {
    ricci_from_forms(calculus, variant, &curvature_forms(calculus, conn).forms)
}

/// Outcome of imposing `Ricci = 0` on the chart `(α, β, γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciFlatReport {
    pub lift: Lift,
    pub unknowns: usize,
    /// Rank of the Ricci equations together with `α + β + γ = −1`.
    pub rank: usize,
    pub augmented_rank: usize,
    /// Rank of the `e_a⊗e_a` coefficient equations together with the constraint.
    pub diagonal_rank: usize,
    /// Nullity of the homogeneous Ricci equations without the constraint.
    pub unconstrained_nullity: usize,
    pub unconstrained_feasible: bool,
    /// Particular solution and the dimension of the solution family.
    pub solution: Option<(ChartParams, usize)>,
}

impl RicciFlatReport {
    pub fn is_feasible(&self) -> bool {
        self.solution.is_some()
    }

    pub fn unique_solution(&self) -> Option<&ChartParams> {
        match &self.solution {
            Some((p, 0)) => Some(p),
            _ => None,
        }
    }
}

/// Chart connection without the `α + β + γ = −1` check, for building linear systems.
fn chart_components(calculus: &Calculus, v: &[Cyclotomic]) -> Connection {
    let order = calculus.group_order();
    let f = |k: usize| GroupFunction::new(v[k * order..(k + 1) * order].to_vec());
    let (alpha, beta, gamma) = (f(0), f(1), f(2));
    let one = calculus.constant(Cyclotomic::one());
    let rows = [
        [&one + &alpha, gamma.clone(), beta.clone()],
        [gamma.clone(), &one + &beta, alpha.clone()],
        [beta, alpha, &one + &gamma],
    ];
    Connection::new(rows.into_iter().map(|r| OneForm::new(r.to_vec())).collect())
}

/// Sample chart points with nonconstant coefficients, used to confirm that the
/// quadratic curvature terms vanish before they are dropped.
fn chart_samples(calculus: &Calculus) -> Vec<Connection> {
    let order = calculus.group_order();
    (0..3)
        .map(|k| {
            let alpha =
                GroupFunction::delta(order, k % order).scale(&Cyclotomic::from_int(k as i64 + 1));
            let beta = GroupFunction::delta(order, (k + order / 2) % order).scale(&q(-1, 2));
            let gamma = &(&calculus.constant(Cyclotomic::from_int(-1)) - &alpha) - &beta;
            Connection::from_chart(calculus, ChartParams { alpha, beta, gamma })
                .expect("constraint holds")
        })
        .collect()
}

/// Solves `Ricci = 0` over the chart. The quadratic curvature terms are checked
/// to vanish on the chart, so the system is linear in `(α, β, γ)`.
pub fn ricci_flat_solve(calculus: &Calculus, variant: Lift) -> Result<RicciFlatReport> {
    if !calculus.class().is_table2_type() {
        return Err(Error::Precondition(
            "the Ricci-flat solve works over the three-member chart".into(),
        ));
    }
    for sample in chart_samples(calculus) {
        if !curvature_forms(calculus, &sample).quadratic_vanishes() {
            return Err(Error::Internal(
                "quadratic curvature terms survive on the chart".into(),
            ));
        }
    }
    let order = calculus.group_order();
    let n = calculus.class_size();
    let unknowns = 3 * order;
    let (ricci_matrix, ricci_rhs) = linearize(unknowns, |v| {
        let conn = chart_components(calculus, v);
        let linear: Vec<TwoForm> = (0..n)
            .map(|a| calculus.d_one_form(conn.component(a)))
            .collect();
        Ok(ricci_from_forms(calculus, variant, &linear).flatten())
    })?;

    // α(g) + β(g) + γ(g) = −1
    let constraint = ExactMatrix::from_fn(order, unknowns, |g, j| {
        if j % order == g {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let constraint_rhs = vec![Cyclotomic::from_int(-1); order];
    let system = ricci_matrix.vstack(&constraint)?;
    let mut rhs = ricci_rhs.clone();
    rhs.extend(constraint_rhs.iter().cloned());

    // rows of the Ricci system are ordered (b·n + d)·|G| + g
    let diagonal_rows: Vec<usize> = (0..n)
        .flat_map(|b| (0..order).map(move |g| (b * n + b) * order + g))
        .collect();
    let diagonal = ExactMatrix::from_fn(diagonal_rows.len(), unknowns, |i, j| {
        ricci_matrix.get(diagonal_rows[i], j).clone()
    })
    .vstack(&constraint)?;

    let augmented = system.hstack(&ExactMatrix::from_columns(rhs.len(), &[rhs.clone()])?)?;
    let solution = match system.solve_affine(&rhs) {
        Ok(sol) => {
            let f =
                |k: usize| GroupFunction::new(sol.particular[k * order..(k + 1) * order].to_vec());
            Some((
                ChartParams {
                    alpha: f(0),
                    beta: f(1),
                    gamma: f(2),
                },
                sol.kernel.len(),
            ))
        }
        Err(Error::Infeasible) => None,
        Err(e) => return Err(e),
    };
    Ok(RicciFlatReport {
        lift: variant,
        unknowns,
        rank: system.rank(),
        augmented_rank: augmented.rank(),
        diagonal_rank: diagonal.rank(),
        unconstrained_nullity: ricci_matrix.nullity(),
        unconstrained_feasible: ricci_matrix.solve_affine(&ricci_rhs).is_ok(),
        solution,
    })
}
