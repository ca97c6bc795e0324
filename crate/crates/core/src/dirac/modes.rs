use std::sync::Arc;

use num_traits::Zero;

use super::{flatten, translation_matrices, translation_sum, Spectrum, SpinorOperator};
use crate::calculus::{Calculus, GroupFunction};
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, ExactMatrix, Vector};
use crate::group::{irreducibles, FiniteGroup, Representation};

/// `D₀ = Σ R_a`, `D₁ = Σ ρ(a)₂₁ R_a`, `D₂ = Σ ρ(a)₁₂ R_a` for a 2-dimensional
/// representation. These are the blocks of `∂^a γ_a` at `μ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DBlocks {
    pub d0: ExactMatrix,
    pub d1: ExactMatrix,
    pub d2: ExactMatrix,
}

pub fn d_blocks(calculus: &Calculus, rep: &Representation) -> Result<DBlocks> {
    if rep.dim() != 2 {
        return Err(Error::Precondition(format!(
            "{} is not 2-dimensional",
            rep.name()
        )));
    }
    let rs = translation_matrices(calculus);
    let n = calculus.group_order();
    let weighted = |i: usize, j: usize| {
        calculus
            .class()
            .members()
            .iter()
            .zip(&rs)
            .fold(ExactMatrix::zeros(n, n), |acc, (&a, r)| {
                &acc + &r.scale(rep.matrix(a).get(i, j))
            })
    };
    Ok(DBlocks {
        d0: translation_sum(calculus),
        d1: weighted(1, 0),
        d2: weighted(0, 1),
    })
}

/// Multiplication of every spinor component by the function `ρ̃₁₁`.
pub fn sign_multiplication(sign: &Representation, spinor_dim: usize) -> ExactMatrix {
    ExactMatrix::identity(spinor_dim).kron(&ExactMatrix::diagonal(&sign.matrix_element(0, 0)))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModeStatus {
    /// The construction produced the zero vector.
    Zero,
    Eigenvector(Cyclotomic),
    NotEigenvector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenmodeCandidate {
    pub label: String,
    pub vector: Vector,
    pub claimed: Cyclotomic,
    pub status: ModeStatus,
}

impl EigenmodeCandidate {
    /// Nonzero eigenvector with the claimed eigenvalue.
    pub fn confirmed(&self) -> bool {
        self.status == ModeStatus::Eigenvector(self.claimed.clone())
    }
}

/// Span of the verified candidates inside one eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpan {
    pub eigenvalue: Cyclotomic,
    pub span: usize,
    pub multiplicity: usize,
}

impl ModeSpan {
    pub fn gap(&self) -> usize {
        self.multiplicity - self.span
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenmodeCatalog {
    pub candidates: Vec<EigenmodeCandidate>,
    pub spans: Vec<ModeSpan>,
}

impl EigenmodeCatalog {
    /// Every nonzero candidate is an eigenvector with its claimed eigenvalue.
    pub fn nonzero_candidates_confirmed(&self) -> bool {
        self.candidates
            .iter()
            .all(|c| c.status == ModeStatus::Zero || c.confirmed())
    }

    pub fn zero_candidates(&self) -> usize {
        self.candidates
            .iter()
            .filter(|c| c.status == ModeStatus::Zero)
            .count()
    }
}

fn classify(op: &ExactMatrix, v: &[Cyclotomic]) -> ModeStatus {
    let Some(i) = v.iter().position(|x| !x.is_zero()) else {
        return ModeStatus::Zero;
    };
    let w = op.mul_vec(v);
    let lambda = &w[i] / &v[i];
    if w.iter().zip(v).all(|(a, b)| *a == &lambda * b) {
        ModeStatus::Eigenvector(lambda)
    } else {
        ModeStatus::NotEigenvector
    }
}

/// Builds the explicit spinor modes for a 2-component Dirac operator from the
/// matrix elements of `spinor` (the gamma representation) and `sign` (whose
/// `(1,1)` element is the sign function), and checks each one.
///
/// Candidates are verified rather than trusted; the spans are compared with
/// the certified multiplicities so that any shortfall is visible.
pub fn eigenmode_catalog(
    calculus: &Calculus,
    dirac: &SpinorOperator,
    spinor: &Representation,
    sign: &Representation,
    spec: &Spectrum,
) -> Result<EigenmodeCatalog> {
    if dirac.spinor_dim() != 2 || sign.dim() != 2 {
        return Err(Error::Precondition(
            "eigenmode catalog needs 2-component spinors".into(),
        ));
    }
    let n = calculus.group_order();
    let blocks = d_blocks(calculus, spinor)?;
    let zero = GroupFunction::zeros(n);
    let rho = |k: usize, l: usize| GroupFunction::new(spinor.matrix_element(k, l));
    let tilde = |k: usize, l: usize| GroupFunction::new(sign.matrix_element(k, l));
    let apply = |m: &ExactMatrix, f: &GroupFunction| GroupFunction::new(m.mul_vec(f.values()));
    let flip = sign_multiplication(sign, 2);
    let three = Cyclotomic::from_int(3);

    let mut raw: Vec<(String, Vector, Cyclotomic)> = Vec::new();
    let entry = |label: String, field: [GroupFunction; 2], claimed: &Cyclotomic| {
        (label, flatten(&field), claimed.clone())
    };
    for k in 0..2 {
        for l in 0..2 {
            let (k1, l1) = (k + 1, l + 1);
            raw.push(entry(
                format!("(D1 rho{k1}{l1}, 0)"),
                [apply(&blocks.d1, &rho(k, l)), zero.clone()],
                &Cyclotomic::zero(),
            ));
            raw.push(entry(
                format!("(0, D2 rho{k1}{l1})"),
                [zero.clone(), apply(&blocks.d2, &rho(k, l))],
                &Cyclotomic::zero(),
            ));
        }
    }
    for (l, claimed) in [(0, three.clone()), (1, -&three)] {
        for k in 0..2 {
            let (k1, l1) = (k + 1, l + 1);
            raw.push(entry(
                format!("(sign{k1}{l1}, 0)"),
                [tilde(k, l), zero.clone()],
                &claimed,
            ));
            raw.push(entry(
                format!("(0, sign{k1}{l1})"),
                [zero.clone(), tilde(k, l)],
                &claimed,
            ));
        }
    }
    for k in 0..2 {
        let k1 = k + 1;
        for (sign_label, s, claimed) in [
            ("", Cyclotomic::from_int(1), three.clone()),
            ("-", Cyclotomic::from_int(-1), -&three),
        ] {
            let field = [rho(k, 1), rho(k, 0).scale(&s)];
            let label = format!("(rho{k1}2, {sign_label}rho{k1}1)");
            let flipped = flip.mul_vec(&flatten(&field));
            raw.push(entry(label.clone(), field, &claimed));
            raw.push((format!("sign11 * {label}"), flipped, -&claimed));
        }
    }

    let candidates: Vec<EigenmodeCandidate> = raw
        .into_iter()
        .map(|(label, vector, claimed)| {
            let status = classify(dirac.matrix(), &vector);
            EigenmodeCandidate {
                label,
                vector,
                claimed,
                status,
            }
        })
        .collect();

    let spans = spec
        .sorted()
        .into_iter()
        .map(|(eigenvalue, multiplicity)| {
            let members: Vec<Vector> = candidates
                .iter()
                .filter(|c| c.status == ModeStatus::Eigenvector(eigenvalue.clone()))
                .map(|c| c.vector.clone())
                .collect();
            let span = if members.is_empty() {
                0
            } else {
                ExactMatrix::from_columns(dirac.dim(), &members)
                    .map(|m| m.rank())
                    .unwrap_or(0)
            };
            ModeSpan {
                eigenvalue,
                span,
                multiplicity,
            }
        })
        .collect();
    Ok(EigenmodeCatalog { candidates, spans })
}

/// Rank of the span of all matrix-element functions of the irreducibles.
pub fn peter_weyl_rank(group: &Arc<FiniteGroup>) -> Result<usize> {
    let mut functions: Vec<Vector> = Vec::new();
    for rep in irreducibles(group)? {
        for i in 0..rep.dim() {
            for j in 0..rep.dim() {
                functions.push(rep.matrix_element(i, j));
            }
        }
    }
    Ok(ExactMatrix::from_columns(group.order(), &functions)?.rank())
}

/// How a chirality operator acts on the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelInvolution {
    #[default]
    Identity,
    Negation,
}

/// A grading `γ` with `γ² = id` and `γD̸ + D̸γ = 0`.
///
/// Eigenbases for `λ` and `−λ` are swapped pairwise and the kernel is fixed or
/// negated. Needs a complete spectrum that is symmetric about zero.
pub fn chirality(
    op: &ExactMatrix,
    spec: &Spectrum,
    kernel: KernelInvolution,
) -> Result<ExactMatrix> {
    let n = op.rows();
    if spec.dimension() != n {
        return Err(Error::Dimension(
            "spectrum belongs to a different operator".into(),
        ));
    }
    let found: usize = spec.pairs().iter().map(|(_, m)| m).sum();
    if found != n {
        return Err(Error::IncompleteSpectrum {
            found,
            dimension: n,
        });
    }
    if let Some((v, m)) = spec
        .pairs()
        .iter()
        .find(|(v, m)| spec.multiplicity(&-v) != *m)
    {
        return Err(Error::AsymmetricSpectrum(format!(
            "{} has multiplicity {m} but its negative has {}",
            v,
            spec.multiplicity(&-v)
        )));
    }
    let eigenbasis = |lambda: &Cyclotomic| (op - &ExactMatrix::scalar(n, lambda)).kernel();

    let mut columns: Vec<Vector> = Vec::with_capacity(n);
    // image of each column under the grading, as an index into `columns` and a sign
    let mut partner: Vec<(usize, bool)> = Vec::with_capacity(n);
    let mut done: Vec<Cyclotomic> = Vec::new();
    for (lambda, _) in spec.pairs() {
        if done.contains(lambda) {
            continue;
        }
        if lambda.is_zero() {
            for v in eigenbasis(lambda) {
                partner.push((columns.len(), kernel == KernelInvolution::Negation));
                columns.push(v);
            }
        } else {
            let plus = eigenbasis(lambda);
            let minus = eigenbasis(&-lambda);
            let start = columns.len();
            let k = plus.len();
            for i in 0..k {
                partner.push((start + k + i, false));
            }
            for i in 0..k {
                partner.push((start + i, false));
            }
            columns.extend(plus);
            columns.extend(minus);
            done.push(-lambda);
        }
        done.push(lambda.clone());
    }
    let p = ExactMatrix::from_columns(n, &columns)?;
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::Internal("eigenbasis is not a basis".into()))?;
    let mut g = ExactMatrix::zeros(n, n);
    for (col, &(row, negate)) in partner.iter().enumerate() {
        g.set(row, col, Cyclotomic::from_int(if negate { -1 } else { 1 }));
    }
    let gamma = &(&p * &g) * &p_inv;
    let anti = &(&gamma * op) + &(op * &gamma);
    if &gamma * &gamma != ExactMatrix::identity(n) || !anti.is_zero() {
        return Err(Error::Internal(
            "constructed grading fails its defining identities".into(),
        ));
    }
    Ok(gamma)
}
