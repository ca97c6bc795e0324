//! Finite groups given by Cayley tables.

mod class;
mod rep;

pub use class::{conjugacy_class, ConjClass};
pub use rep::{builtin_rep, character_inner, irreducibles, BuiltinRep, Representation};

use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, GroupAxiomError, Result};
use crate::exact::{Cyclotomic, ExactMatrix};

/// Groups up to this order have associativity checked on construction.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 128;

/// Dihedral structure `⟨r, s | r^n = s^2 = e, s r s = r^{-1}⟩`; `words[g] = (a, i)`
/// means `g = s^a r^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralPresentation {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub words: Vec<(bool, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    dihedral: Option<DihedralPresentation>,
}

impl FiniteGroup {
    /// Validates a Cayley table: identity, Latin square, associativity.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(GroupAxiomError::Empty.into());
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(GroupAxiomError::DuplicateName(name.clone()).into());
            }
        }
        if table.len() != n {
            return Err(GroupAxiomError::RowCount {
                rows: table.len(),
                names: n,
            }
            .into());
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupAxiomError::RowLength {
                    row,
                    len: entries.len(),
                    expected: n,
                }
                .into());
            }
            if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupAxiomError::EntryOutOfRange { row, col, value }.into());
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(GroupAxiomError::NoIdentity)?;
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                seen_row[at(a, b)] = true;
                seen_col[at(b, a)] = true;
            }
            if seen_row.contains(&false) {
                return Err(GroupAxiomError::RowNotPermutation(names[a].clone()).into());
            }
            if seen_col.contains(&false) {
                return Err(GroupAxiomError::ColumnNotPermutation(names[a].clone()).into());
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let left = at(at(a, b), c);
                        let right = at(a, at(b, c));
                        if left != right {
                            return Err(GroupAxiomError::NotAssociative {
                                a: names[a].clone(),
                                b: names[b].clone(),
                                c: names[c].clone(),
                                left: names[left].clone(),
                                right: names[right].clone(),
                            }
                            .into());
                        }
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at(a, b) == identity)
                    .expect("Latin square has inverses")
            })
            .collect();
        let mut group = FiniteGroup {
            names,
            table: flat,
            identity,
            inverses,
            dihedral: None,
        };
        group.dihedral = group.find_dihedral_presentation();
        Ok(group)
    }

    /// The dihedral group of order `2n` with elements ordered
    /// `e, r, ..., r^(n-1), s, sr, ..., sr^(n-1)`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("dihedral group needs n >= 1".into()));
        }
        let power = |prefix: &str, i: usize| match (prefix, i) {
            ("", 0) => "e".to_string(),
            ("", 1) => "r".to_string(),
            ("", _) => format!("r{i}"),
            (p, 0) => p.to_string(),
            (p, 1) => format!("{p}r"),
            (p, _) => format!("{p}r{i}"),
        };
        let names: Vec<String> = (0..n)
            .map(|i| power("", i))
            .chain((0..n).map(|i| power("s", i)))
            .collect();
        // s^a r^i · s^b r^j = s^(a+b) r^((-1)^b i + j)
        let index = |a: usize, i: usize| a * n + i;
        let table = (0..2 * n)
            .map(|x| {
                let (a, i) = (x / n, x % n);
                (0..2 * n)
                    .map(|y| {
                        let (b, j) = (y / n, y % n);
                        let rot = if b == 1 { (n - i) % n } else { i };
                        index((a + b) % 2, (rot + j) % n)
                    })
                    .collect()
            })
            .collect();
        let mut group = Self::from_table(names, table)?;
        if n >= 3 {
            group.dihedral = Some(DihedralPresentation {
                n,
                r: 1,
                s: n,
                words: (0..2 * n).map(|x| (x >= n, x % n)).collect(),
            });
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `Ad_a(b) = a b a⁻¹`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Cayley table as rows of element indices.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order())
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Dihedral presentation, when the group is dihedral of order at least 6.
    pub fn dihedral_presentation(&self) -> Option<&DihedralPresentation> {
        self.dihedral.as_ref()
    }

    /// Searches for `r` of order `|G|/2` and an involution `s ∉ ⟨r⟩` with
    /// `s r s = r⁻¹`, taking the lowest indices.
    fn find_dihedral_presentation(&self) -> Option<DihedralPresentation> {
        let order = self.order();
        if order < 6 || !order.is_multiple_of(2) {
            return None;
        }
        let n = order / 2;
        let r = (0..order).find(|&g| self.element_order(g) == n)?;
        let mut rotations = vec![self.identity];
        for _ in 1..n {
            rotations.push(self.mul(*rotations.last().expect("nonempty"), r));
        }
        let s = (0..order).find(|&g| {
            !rotations.contains(&g)
                && self.mul(g, g) == self.identity
                && self.mul(self.mul(g, r), g) == self.inv(r)
        })?;
        let mut words = vec![(false, 0); order];
        for (i, &rot) in rotations.iter().enumerate() {
            words[rot] = (false, i);
            words[self.mul(s, rot)] = (true, i);
        }
        Some(DihedralPresentation { n, r, s, words })
    }
}

/// Matrix of `R_a f(g) = f(g a)` in the delta-function basis.
pub fn right_translation(group: &FiniteGroup, a: usize) -> ExactMatrix {
    let n = group.order();
    let mut m = ExactMatrix::zeros(n, n);
    for g in 0..n {
        m.set(g, group.mul(g, a), Cyclotomic::one());
    }
    m
}

/// Convenience constructor for shared groups.
pub fn dihedral(n: usize) -> Result<Arc<FiniteGroup>> {
    FiniteGroup::dihedral(n).map(Arc::new)
}
