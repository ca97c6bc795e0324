//! Bicovariant calculus of a conjugacy class and its degree-2 exterior algebra.

mod forms;
mod function;

pub use forms::{OneForm, Tensor2, Tensor21, TwoForm};
pub use function::GroupFunction;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, ExactMatrix, Vector};
use crate::group::{ConjClass, FiniteGroup};

/// `Ψ(e_a⊗e_b) = e_{aba⁻¹}⊗e_a` on group elements.
pub fn braiding(group: &FiniteGroup, a: usize, b: usize) -> (usize, usize) {
    (group.conjugate(a, b), a)
}

/// Ω² as the quotient of Ω¹⊗Ω¹ by `ker(id − Ψ)`, with monomials `e_i⊗e_j`
/// indexed by `i·n + j` over class positions.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormSpace {
    n: usize,
    psi: Vec<usize>,
    relation_basis: Vec<Vector>,
    quotient_basis: Vec<(usize, usize)>,
    reduction: Vec<Vec<Cyclotomic>>,
}

/// Quotient basis used for three-member classes with the
/// `t², yt, xt` product pattern: `x∧t, y∧x, y∧t, x∧y`.
const TABLE2_BASIS: [(usize, usize); 4] = [(1, 0), (2, 1), (2, 0), (1, 2)];

pub fn two_form_space(class: &ConjClass) -> Result<TwoFormSpace> {
    class.require_cyclic()?;
    let n = class.len();
    let group = class.group();
    let psi: Vec<usize> = (0..n * n)
        .map(|m| {
            let (i, j) = (m / n, m % n);
            let (a, b) = braiding(group, class.members()[i], class.members()[j]);
            let pa = class
                .position(a)
                .expect("class is closed under conjugation");
            let pb = class.position(b).expect("member");
            pa * n + pb
        })
        .collect();
    let id_minus_psi = ExactMatrix::from_fn(n * n, n * n, |r, c| {
        let mut v = if r == c {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        };
        if psi[c] == r {
            v -= &Cyclotomic::one();
        }
        v
    });
    let relation_basis = id_minus_psi.kernel();

    let complement_rank = |basis: &[(usize, usize)]| {
        let mut cols = relation_basis.clone();
        cols.extend(basis.iter().map(|&(i, j)| unit(n * n, i * n + j)));
        ExactMatrix::from_columns(n * n, &cols).map(|m| m.rank())
    };
    let quotient_basis = if class.is_table2_type() && complement_rank(&TABLE2_BASIS)? == n * n {
        TABLE2_BASIS.to_vec()
    } else {
        let mut chosen = Vec::new();
        let mut rank = complement_rank(&chosen)?;
        for m in 0..n * n {
            chosen.push((m / n, m % n));
            let r = complement_rank(&chosen)?;
            if r > rank {
                rank = r;
            } else {
                chosen.pop();
            }
        }
        chosen
    };

    let mut cols = relation_basis.clone();
    cols.extend(quotient_basis.iter().map(|&(i, j)| unit(n * n, i * n + j)));
    let change = ExactMatrix::from_columns(n * n, &cols)?
        .inverse()
        .ok_or_else(|| {
            Error::Internal("relations and quotient basis do not span the tensor square".into())
        })?;
    let rel = relation_basis.len();
    let reduction = (0..n * n)
        .map(|m| {
            (0..quotient_basis.len())
                .map(|k| change.get(rel + k, m).clone())
                .collect()
        })
        .collect();
    Ok(TwoFormSpace {
        n,
        psi,
        relation_basis,
        quotient_basis,
        reduction,
    })
}

fn unit(len: usize, k: usize) -> Vector {
    let mut v = vec![Cyclotomic::zero(); len];
    v[k] = Cyclotomic::one();
    v
}

impl TwoFormSpace {
    pub fn class_size(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn relation_dimension(&self) -> usize {
        self.relation_basis.len()
    }

    pub fn relation_basis(&self) -> &[Vector] {
        &self.relation_basis
    }

    pub fn quotient_basis(&self) -> &[(usize, usize)] {
        &self.quotient_basis
    }

    /// Ψ as a permutation of monomial indices.
    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    /// Cycle decomposition of Ψ, each cycle starting at its smallest monomial.
    pub fn psi_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.psi.len()];
        let mut cycles = Vec::new();
        for start in 0..self.psi.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut m = self.psi[start];
            while m != start {
                seen[m] = true;
                cycle.push(m);
                m = self.psi[m];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Quotient coordinates of `e_i∧e_j`.
    pub fn reduce_monomial(&self, i: usize, j: usize) -> &[Cyclotomic] {
        &self.reduction[i * self.n + j]
    }

    /// Quotient coordinates of a constant tensor.
    pub fn reduce(&self, tensor: &[Cyclotomic]) -> Vector {
        let mut out = vec![Cyclotomic::zero(); self.dimension()];
        for (m, c) in tensor.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, r) in self.reduction[m].iter().enumerate() {
                if !r.is_zero() {
                    out[k] += &(c * r);
                }
            }
        }
        out
    }

    /// True when the constant tensor lies in the relation span.
    pub fn is_relation(&self, tensor: &[Cyclotomic]) -> bool {
        let cols = self.relation_basis.clone();
        if cols.is_empty() {
            return tensor.iter().all(Cyclotomic::is_zero);
        }
        ExactMatrix::from_columns(self.n * self.n, &cols)
            .and_then(|m| m.solve_affine(tensor))
            .is_ok()
    }
}

/// The calculus generated by a cyclic conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct Calculus {
    class: ConjClass,
    space: TwoFormSpace,
    translations: Vec<Vec<usize>>,
    maurer_cartan: Vec<TwoForm>,
}

impl Calculus {
    pub fn new(class: ConjClass) -> Result<Self> {
        let space = two_form_space(&class)?;
        let group = class.group();
        let translations = class
            .members()
            .iter()
            .map(|&a| (0..group.order()).map(|g| group.mul(g, a)).collect())
            .collect();
        let mut calculus = Calculus {
            class,
            space,
            translations,
            maurer_cartan: Vec::new(),
        };
        let theta = calculus.theta();
        calculus.maurer_cartan = (0..calculus.class_size())
            .map(|i| {
                let e = calculus.e(i);
                &calculus.wedge(&theta, &e) + &calculus.wedge(&e, &theta)
            })
            .collect();
        Ok(calculus)
    }

    pub fn class(&self) -> &ConjClass {
        &self.class
    }

    pub fn group(&self) -> &FiniteGroup {
        self.class.group()
    }

    pub fn space(&self) -> &TwoFormSpace {
        &self.space
    }

    pub fn class_size(&self) -> usize {
        self.class.len()
    }

    pub fn group_order(&self) -> usize {
        self.class.group().order()
    }

    /// Class position of the element `c_i⁻¹ c_j c_i`.
    pub fn conj_inv(&self, i: usize, j: usize) -> usize {
        let g = self.group();
        let a = self.class.members()[i];
        self.class
            .position(g.conjugate(g.inv(a), self.class.members()[j]))
            .expect("closed")
    }

    /// Class position of `c_i c_j c_i⁻¹`.
    pub fn conj(&self, i: usize, j: usize) -> usize {
        let g = self.group();
        self.class
            .position(g.conjugate(self.class.members()[i], self.class.members()[j]))
            .expect("closed")
    }

    /// `Ψ` on class positions.
    pub fn braid(&self, i: usize, j: usize) -> (usize, usize) {
        (self.conj(i, j), i)
    }

    /// `R_{c_i} f`.
    pub fn translate(&self, f: &GroupFunction, i: usize) -> GroupFunction {
        f.pull_back(&self.translations[i])
    }

    /// `∂^i f = R_{c_i} f − f`.
    pub fn partial(&self, f: &GroupFunction, i: usize) -> GroupFunction {
        &self.translate(f, i) - f
    }

    pub fn constant(&self, c: Cyclotomic) -> GroupFunction {
        GroupFunction::constant(self.group_order(), c)
    }

    pub fn zero_one_form(&self) -> OneForm {
        OneForm::zero(self.class_size(), self.group_order())
    }

    pub fn zero_two_form(&self) -> TwoForm {
        TwoForm::zero(self.space.dimension(), self.group_order())
    }

    pub fn zero_tensor(&self) -> Tensor2 {
        Tensor2::zero(self.class_size() * self.class_size(), self.group_order())
    }

    /// Maurer-Cartan form `e_i`.
    pub fn e(&self, i: usize) -> OneForm {
        let mut out = self.zero_one_form();
        *out.coeff_mut(i) = self.constant(Cyclotomic::one());
        out
    }

    /// `θ = Σ_a e_a`.
    pub fn theta(&self) -> OneForm {
        OneForm::from_constants(
            &vec![Cyclotomic::one(); self.class_size()],
            self.group_order(),
        )
    }

    /// `e_i⊗e_j` with unit coefficient.
    pub fn monomial_tensor(&self, i: usize, j: usize) -> Tensor2 {
        let mut out = self.zero_tensor();
        *out.coeff_mut(i * self.class_size() + j) = self.constant(Cyclotomic::one());
        out
    }

    /// `e_i∧e_j` in quotient coordinates.
    pub fn monomial(&self, i: usize, j: usize) -> TwoForm {
        TwoForm::from_constants(self.space.reduce_monomial(i, j), self.group_order())
    }

    /// `α·f = Σ α^a R_a(f) e_a`.
    pub fn right_mul(&self, alpha: &OneForm, f: &GroupFunction) -> OneForm {
        OneForm::new(
            (0..self.class_size())
                .map(|i| alpha.coeff(i) * &self.translate(f, i))
                .collect(),
        )
    }

    /// `α⊗β = Σ α^a R_a(β^b) e_a⊗e_b`.
    pub fn tensor(&self, alpha: &OneForm, beta: &OneForm) -> Tensor2 {
        let n = self.class_size();
        let mut coeffs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                coeffs.push(alpha.coeff(i) * &self.translate(beta.coeff(j), i));
            }
        }
        Tensor2::new(coeffs)
    }

    /// Image of a tensor under `∧`.
    pub fn project(&self, t: &Tensor2) -> TwoForm {
        let mut out = self.zero_two_form();
        for (m, f) in t.coeffs().iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (k, r) in self.space.reduction[m].iter().enumerate() {
                if !r.is_zero() {
                    *out.coeff_mut(k) += &f.scale(r);
                }
            }
        }
        out
    }

    pub fn wedge(&self, alpha: &OneForm, beta: &OneForm) -> TwoForm {
        self.project(&self.tensor(alpha, beta))
    }

    /// `df = Σ_a (R_a f − f) e_a`.
    pub fn d_function(&self, f: &GroupFunction) -> OneForm {
        OneForm::new((0..self.class_size()).map(|i| self.partial(f, i)).collect())
    }

    /// `de_i = θ∧e_i + e_i∧θ`.
    pub fn d_e(&self, i: usize) -> &TwoForm {
        &self.maurer_cartan[i]
    }

    /// `d(Σ f_a e_a) = Σ df_a∧e_a + f_a de_a`.
    pub fn d_one_form(&self, alpha: &OneForm) -> TwoForm {
        let mut out = self.zero_two_form();
        for i in 0..self.class_size() {
            let f = alpha.coeff(i);
            if f.is_zero() {
                continue;
            }
            out += &self.wedge(&self.d_function(f), &self.e(i));
            out += &self.maurer_cartan[i].left_mul(f);
        }
        out
    }

    /// `θf − fθ`.
    pub fn theta_commutator(&self, f: &GroupFunction) -> OneForm {
        let theta = self.theta();
        &self.right_mul(&theta, f) - &theta.left_mul(f)
    }
}
