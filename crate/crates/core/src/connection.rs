//! Spin connections `{A_a}` in the Maurer-Cartan frame: torsion, cotorsion,
//! regularity, and the torsion-free family.

use num_traits::{One, Zero};

use crate::calculus::{Calculus, GroupFunction, OneForm, TwoForm};
use crate::error::{Error, Result};
use crate::exact::{linearize, q, Cyclotomic, ExactMatrix, Polynomial, Vector};
use crate::metric::Metric;

/// Functions `(α, β, γ)` of the three-member chart
///
/// ```text
/// A_t = (1+α) e_t + γ e_x + β e_y
/// A_x = γ e_t + (1+β) e_x + α e_y
/// A_y = β e_t + α e_x + (1+γ) e_y
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartParams {
    pub alpha: GroupFunction,
    pub beta: GroupFunction,
    pub gamma: GroupFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    components: Vec<OneForm>,
    parameters: Option<ChartParams>,
}

/// Chart coefficient matrix: entry `[a][c]` is the coefficient of `e_c` in `A_a`.
fn chart_matrix(
    alpha: &GroupFunction,
    beta: &GroupFunction,
    gamma: &GroupFunction,
) -> [[GroupFunction; 3]; 3] {
    let one = GroupFunction::constant(alpha.len(), Cyclotomic::one());
    [
        [&one + alpha, gamma.clone(), beta.clone()],
        [gamma.clone(), &one + beta, alpha.clone()],
        [beta.clone(), alpha.clone(), &one + gamma],
    ]
}

fn require_chart(calculus: &Calculus, p: &ChartParams) -> Result<()> {
    if !calculus.class().is_table2_type() {
        return Err(Error::Precondition(
            "the (α, β, γ) chart needs a three-member class of product type t², xt, yt".into(),
        ));
    }
    let sum = &(&p.alpha + &p.beta) + &p.gamma;
    if sum != calculus.constant(Cyclotomic::from_int(-1)) {
        return Err(Error::Precondition(
            "chart parameters must satisfy α + β + γ = −1".into(),
        ));
    }
    Ok(())
}

impl Connection {
    pub fn new(components: Vec<OneForm>) -> Self {
        Connection {
            components,
            parameters: None,
        }
    }

    pub fn zero(calculus: &Calculus) -> Self {
        Self::new(vec![calculus.zero_one_form(); calculus.class_size()])
    }

    /// Left-module chart `A_a = Σ_c A_a^c e_c`.
    pub fn from_chart(calculus: &Calculus, params: ChartParams) -> Result<Self> {
        require_chart(calculus, &params)?;
        let m = chart_matrix(&params.alpha, &params.beta, &params.gamma);
        let components = m
            .into_iter()
            .map(|row| OneForm::new(row.to_vec()))
            .collect();
        Ok(Connection {
            components,
            parameters: Some(params),
        })
    }

    /// Constant chart point.
    pub fn from_constants(
        calculus: &Calculus,
        alpha: Cyclotomic,
        beta: Cyclotomic,
        gamma: Cyclotomic,
    ) -> Result<Self> {
        Self::from_chart(
            calculus,
            ChartParams {
                alpha: calculus.constant(alpha),
                beta: calculus.constant(beta),
                gamma: calculus.constant(gamma),
            },
        )
    }

    /// Right-module chart `A_a = Σ_b e_b A′^b_a`, the coefficients sitting to the
    /// right of the frame and moved left with `e_b f = R_b(f) e_b`.
    pub fn from_right_chart(calculus: &Calculus, params: ChartParams) -> Result<Self> {
        require_chart(calculus, &params)?;
        let m = chart_matrix(&params.alpha, &params.beta, &params.gamma);
        let components = (0..3)
            .map(|a| OneForm::new((0..3).map(|b| calculus.translate(&m[a][b], b)).collect()))
            .collect();
        Ok(Connection {
            components,
            parameters: None,
        })
    }

    /// Unknown vector laid out as `(a·n + c)·|G| + g` for `A_a^c(g)`.
    pub fn from_unknowns(calculus: &Calculus, values: &[Cyclotomic]) -> Result<Self> {
        let n = calculus.class_size();
        let order = calculus.group_order();
        if values.len() != n * n * order {
            return Err(Error::Dimension(format!(
                "expected {} connection unknowns, got {}",
                n * n * order,
                values.len()
            )));
        }
        let components = (0..n)
            .map(|a| {
                OneForm::new(
                    (0..n)
                        .map(|c| {
                            let start = (a * n + c) * order;
                            GroupFunction::new(values[start..start + order].to_vec())
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(Connection::new(components))
    }

    pub fn unknowns(&self) -> Vector {
        self.components.iter().flat_map(OneForm::flatten).collect()
    }

    pub fn components(&self) -> &[OneForm] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &OneForm {
        &self.components[a]
    }

    pub fn parameters(&self) -> Option<&ChartParams> {
        self.parameters.as_ref()
    }

    /// `Σ_a A_a`.
    pub fn sum(&self) -> OneForm {
        let mut iter = self.components.iter();
        let first = iter.next().cloned().expect("nonempty class");
        iter.fold(first, |mut acc, a| {
            acc += a;
            acc
        })
    }
}

/// `A_a = e_a − θ/|C|`.
pub fn levi_civita_form(calculus: &Calculus) -> Connection {
    let n = calculus.class_size();
    let shift = calculus.theta().scale(&q(-1, n as i64));
    Connection::new((0..n).map(|a| &calculus.e(a) + &shift).collect())
}

/// `de_a + Σ_b A_b ∧ (e_{b⁻¹ab} − e_a)` for each class position `a`.
pub fn torsion_residual(calculus: &Calculus, conn: &Connection) -> Vec<TwoForm> {
    let n = calculus.class_size();
    (0..n)
        .map(|a| {
            let mut out = calculus.d_e(a).clone();
            for b in 0..n {
                let target = calculus.conj_inv(b, a);
                if target == a {
                    continue;
                }
                let diff = &calculus.e(target) - &calculus.e(a);
                out += &calculus.wedge(conn.component(b), &diff);
            }
            out
        })
        .collect()
}

/// `de_a + Σ_b e_{bab⁻¹} ∧ A_b`; defined for connections with `Σ_a A_a = 0`.
pub fn cotorsion_residual(calculus: &Calculus, conn: &Connection) -> Result<Vec<TwoForm>> {
    if !conn.sum().is_zero() {
        return Err(Error::Precondition(
            "cotorsion form needs Σ_a A_a = 0".into(),
        ));
    }
    Ok(cotorsion_unchecked(calculus, conn))
}

fn cotorsion_unchecked(calculus: &Calculus, conn: &Connection) -> Vec<TwoForm> {
    let n = calculus.class_size();
    (0..n)
        .map(|a| {
            let mut out = calculus.d_e(a).clone();
            for b in 0..n {
                out += &calculus.wedge(&calculus.e(calculus.conj(b, a)), conn.component(b));
            }
            out
        })
        .collect()
}

/// `Σ_{ab=g} A_a∧A_b` per product `g`; the identity component is kept apart.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityResidual {
    pub targets: Vec<(usize, TwoForm)>,
    pub identity: Option<TwoForm>,
}

impl RegularityResidual {
    pub fn is_regular(&self) -> bool {
        self.targets.iter().all(|(_, f)| f.is_zero())
    }
}

pub fn regularity_residual(calculus: &Calculus, conn: &Connection) -> RegularityResidual {
    let class = calculus.class();
    let identity = class.group().identity();
    let mut targets = Vec::new();
    let mut at_identity = None;
    for g in class.product_targets() {
        if class.contains(g) {
            continue;
        }
        let mut sum = calculus.zero_two_form();
        for (i, j) in class.pairs_with_product(g) {
            sum += &calculus.wedge(conn.component(i), conn.component(j));
        }
        if g == identity {
            at_identity = Some(sum);
        } else {
            targets.push((g, sum));
        }
    }
    RegularityResidual {
        targets,
        identity: at_identity,
    }
}

fn flatten_forms(forms: &[TwoForm]) -> Vector {
    forms.iter().flat_map(TwoForm::flatten).collect()
}

/// The torsion-free connections as an affine space over pointwise coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionFreeFamily {
    pub particular: Connection,
    pub kernel: Vec<Vector>,
    pub unknowns: usize,
    pub rank: usize,
    /// Rank with the last class member's equation dropped.
    pub rank_without_last: usize,
}

impl TorsionFreeFamily {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// `particular + Σ c_k kernel_k`.
    pub fn member(&self, calculus: &Calculus, coeffs: &[Cyclotomic]) -> Result<Connection> {
        let mut v = self.particular.unknowns();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(k) {
                if !y.is_zero() {
                    *x += &(c * y);
                }
            }
        }
        Connection::from_unknowns(calculus, &v)
    }
}

/// Exact linear system of the torsion equations.
pub fn torsion_system(calculus: &Calculus) -> Result<(ExactMatrix, Vector)> {
    let n = calculus.class_size();
    linearize(n * n * calculus.group_order(), |v| {
        let conn = Connection::from_unknowns(calculus, v)?;
        Ok(flatten_forms(&torsion_residual(calculus, &conn)))
    })
}

pub fn torsion_free_family(calculus: &Calculus) -> Result<TorsionFreeFamily> {
    let (matrix, rhs) = torsion_system(calculus)?;
    let solution = matrix.solve_affine(&rhs).map_err(|e| match e {
        Error::Infeasible => Error::Internal("torsion equations have no solution".into()),
        other => other,
    })?;
    let per_member = matrix.rows() / calculus.class_size();
    let kept = matrix.rows() - per_member;
    let truncated = ExactMatrix::from_fn(kept, matrix.cols(), |i, j| matrix.get(i, j).clone());
    Ok(TorsionFreeFamily {
        particular: Connection::from_unknowns(calculus, &solution.particular)?,
        unknowns: matrix.cols(),
        rank: matrix.rank(),
        rank_without_last: truncated.rank(),
        kernel: solution.kernel,
    })
}

/// `A_a = e_a − θ/3`, after checking that it is torsion free, cotorsion free
/// and regular and that the metric is nondegenerate. The connection does not
/// depend on `μ`.
pub fn levi_civita(calculus: &Calculus, metric: &Metric) -> Result<Connection> {
    if metric.eta().rows() != calculus.class_size() {
        return Err(Error::Dimension(
            "metric size differs from class size".into(),
        ));
    }
    let n = calculus.class_size();
    let third = q(-1, n as i64);
    let conn = if calculus.class().is_table2_type() {
        Connection::from_constants(calculus, third.clone(), third.clone(), third)?
    } else {
        levi_civita_form(calculus)
    };
    if torsion_residual(calculus, &conn)
        .iter()
        .any(|f| !f.is_zero())
    {
        return Err(Error::Internal("e_a − θ/n has torsion".into()));
    }
    if cotorsion_residual(calculus, &conn)?
        .iter()
        .any(|f| !f.is_zero())
    {
        return Err(Error::Internal("e_a − θ/n has cotorsion".into()));
    }
    if !regularity_residual(calculus, &conn).is_regular() {
        return Err(Error::Internal("e_a − θ/n is not regular".into()));
    }
    Ok(conn)
}

/// A constant chart point `(α, β, γ)`.
pub type ChartPoint = [Cyclotomic; 3];

/// Every residual component on the constant chart slice, as a function of `(α, β)`
/// with `γ = −1 − α − β`.
fn constant_slice_residual(
    calculus: &Calculus,
    alpha: &Cyclotomic,
    beta: &Cyclotomic,
) -> Result<Vector> {
    let gamma = &(&Cyclotomic::from_int(-1) - alpha) - beta;
    let conn = Connection::from_constants(calculus, alpha.clone(), beta.clone(), gamma)?;
    let mut out = flatten_forms(&torsion_residual(calculus, &conn));
    out.extend(flatten_forms(&cotorsion_residual(calculus, &conn)?));
    for (_, form) in regularity_residual(calculus, &conn).targets {
        out.extend(form.flatten());
    }
    Ok(out)
}

/// Solves torsion, cotorsion and regularity on constant `(α, β, γ)` with
/// `α + β + γ = −1`. Each residual component is at most quadratic in `(α, β)`
/// and is recovered by interpolation, then the linear equations are solved
/// first and the quadratic ones on what remains.
pub fn constant_regular_scan(calculus: &Calculus) -> Result<Vec<ChartPoint>> {
    let c = |n: i64| Cyclotomic::from_int(n);
    let eval = |a: i64, b: i64| constant_slice_residual(calculus, &c(a), &c(b));
    let (p00, p10, p01, p20, p02, p11) = (
        eval(0, 0)?,
        eval(1, 0)?,
        eval(0, 1)?,
        eval(2, 0)?,
        eval(0, 2)?,
        eval(1, 1)?,
    );
    let half = q(1, 2);
    // p = c0 + c1 α + c2 β + c3 α² + c4 β² + c5 αβ
    let quadratics: Vec<[Cyclotomic; 6]> = (0..p00.len())
        .map(|k| {
            let c0 = p00[k].clone();
            let c3 = &(&(&p20[k] - &(&p10[k] * &c(2))) + &c0) * &half;
            let c4 = &(&(&p02[k] - &(&p01[k] * &c(2))) + &c0) * &half;
            let c1 = &(&p10[k] - &c0) - &c3;
            let c2 = &(&p01[k] - &c0) - &c4;
            let c5 = &(&(&(&(&p11[k] - &c0) - &c1) - &c2) - &c3) - &c4;
            [c0, c1, c2, c3, c4, c5]
        })
        .collect();
    let eval_quadratic = |p: &[Cyclotomic; 6], a: &Cyclotomic, b: &Cyclotomic| -> Cyclotomic {
        let terms = [Cyclotomic::one(), a.clone(), b.clone(), a * a, b * b, a * b];
        p.iter().zip(&terms).map(|(x, y)| x * y).sum()
    };
    for (a, b) in [(3, -1), (-2, 5), (2, 3)] {
        let direct = eval(a, b)?;
        if quadratics
            .iter()
            .zip(&direct)
            .any(|(p, d)| &eval_quadratic(p, &c(a), &c(b)) != d)
        {
            return Err(Error::Internal(
                "constant-slice residual is not quadratic".into(),
            ));
        }
    }

    let (linear, nonlinear): (Vec<_>, Vec<_>) = quadratics
        .into_iter()
        .partition(|p| p[3].is_zero() && p[4].is_zero() && p[5].is_zero());
    let linear: Vec<_> = linear
        .into_iter()
        .filter(|p| !(p[1].is_zero() && p[2].is_zero() && p[0].is_zero()))
        .collect();
    let nonlinear: Vec<_> = nonlinear.into_iter().collect();

    let point = |a: Cyclotomic, b: Cyclotomic| -> ChartPoint {
        let g = &(&c(-1) - &a) - &b;
        [a, b, g]
    };
    let satisfies_all = |a: &Cyclotomic, b: &Cyclotomic, eqs: &[[Cyclotomic; 6]]| {
        eqs.iter().all(|p| eval_quadratic(p, a, b).is_zero())
    };

    let (origin, directions) = if linear.is_empty() {
        (vec![c(0), c(0)], vec![vec![c(1), c(0)], vec![c(0), c(1)]])
    } else {
        let m = ExactMatrix::from_rows(
            linear
                .iter()
                .map(|p| vec![p[1].clone(), p[2].clone()])
                .collect(),
        )?;
        let rhs: Vector = linear.iter().map(|p| -&p[0]).collect();
        match m.solve_affine(&rhs) {
            Ok(sol) => (sol.particular, sol.kernel),
            Err(Error::Infeasible) => return Ok(Vec::new()),
            Err(e) => return Err(e),
        }
    };

    match directions.len() {
        0 => {
            let (a, b) = (origin[0].clone(), origin[1].clone());
            Ok(if satisfies_all(&a, &b, &nonlinear) {
                vec![point(a, b)]
            } else {
                Vec::new()
            })
        }
        1 => {
            // (α, β) = origin + s·direction; each equation becomes a polynomial in s
            let d = &directions[0];
            let polys: Vec<Polynomial> = nonlinear
                .iter()
                .map(|p| {
                    let a = Polynomial::new(vec![origin[0].clone(), d[0].clone()]);
                    let b = Polynomial::new(vec![origin[1].clone(), d[1].clone()]);
                    let terms = [
                        Polynomial::new(vec![Cyclotomic::one()]),
                        a.clone(),
                        b.clone(),
                        a.mul(&a),
                        b.mul(&b),
                        a.mul(&b),
                    ];
                    let mut coeffs = vec![Cyclotomic::zero(); 3];
                    for (x, t) in p.iter().zip(&terms) {
                        for (k, y) in t.coeffs().iter().enumerate() {
                            coeffs[k] += &(x * y);
                        }
                    }
                    Polynomial::new(coeffs)
                })
                .filter(|p| !p.is_zero())
                .collect();
            let Some(first) = polys.first() else {
                return Err(Error::Unsupported(
                    "constant-slice solutions form a line".into(),
                ));
            };
            if first.degree() == Some(0) {
                return Ok(Vec::new());
            }
            let (roots, rest) = first.rational_roots()?;
            let mut out = Vec::new();
            for (s, _) in roots {
                let s = Cyclotomic::from_rational(s);
                let a = &origin[0] + &(&d[0] * &s);
                let b = &origin[1] + &(&d[1] * &s);
                if satisfies_all(&a, &b, &nonlinear) {
                    out.push(point(a, b));
                }
            }
            if rest.degree().unwrap_or(0) > 0 {
                return Err(Error::Unsupported(
                    "constant-slice equations have irrational roots".into(),
                ));
            }
            Ok(out)
        }
        _ => {
            if nonlinear.is_empty() {
                Err(Error::Unsupported(
                    "constant-slice solutions form a plane".into(),
                ))
            } else {
                Err(Error::Unsupported(
                    "constant slice needs a two-variable nonlinear solve".into(),
                ))
            }
        }
    }
}
