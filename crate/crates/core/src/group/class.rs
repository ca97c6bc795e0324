use std::sync::Arc;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A conjugacy class with a fixed member order.
///
/// Cyclic classes are ordered witness first, then the smallest remaining
/// member `x`, then `Ad_t(x)`, `Ad_t²(x)`, ... For dihedral groups this gives
/// `(sr, sr³, sr⁵)`. Other classes keep element-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    group: Arc<FiniteGroup>,
    members: Vec<usize>,
    cyclic_witness: Option<usize>,
}

/// Orbit of `g` under conjugation.
pub fn conjugacy_class(group: &Arc<FiniteGroup>, g: usize) -> ConjClass {
    let mut members: Vec<usize> = (0..group.order()).map(|h| group.conjugate(h, g)).collect();
    members.sort_unstable();
    members.dedup();
    let witness = find_witness(group, &members);
    if let Some(t) = witness {
        members = cyclic_order(group, &members, t);
    }
    ConjClass {
        group: Arc::clone(group),
        members,
        cyclic_witness: witness,
    }
}

fn find_witness(group: &FiniteGroup, members: &[usize]) -> Option<usize> {
    if members.len() < 2 {
        return None;
    }
    members.iter().copied().find(|&t| {
        let others: Vec<usize> = members.iter().copied().filter(|&m| m != t).collect();
        // Ad_t must be a single cycle on C − {t}
        let mut x = others[0];
        let mut steps = 0;
        loop {
            x = group.conjugate(t, x);
            steps += 1;
            if x == others[0] || !others.contains(&x) || steps > others.len() {
                break;
            }
        }
        let single_cycle = x == others[0] && steps == others.len();
        let mut images: Vec<usize> = members.iter().map(|&a| group.conjugate(a, t)).collect();
        images.sort_unstable();
        images.dedup();
        single_cycle && images.len() == members.len()
    })
}

fn cyclic_order(group: &FiniteGroup, members: &[usize], t: usize) -> Vec<usize> {
    let mut order = vec![t];
    if let Some(&x) = members.iter().find(|&&m| m != t) {
        let mut current = x;
        while !order.contains(&current) {
            order.push(current);
            current = group.conjugate(t, current);
        }
    }
    order
}

impl ConjClass {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(&g)
    }

    /// Position of `g` in the member order.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == g)
    }

    pub fn member_names(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&m| self.group.name(m).to_string())
            .collect()
    }

    pub fn label(&self) -> String {
        format!("{{{}}}", self.member_names().join(", "))
    }

    pub fn cyclic_witness(&self) -> Option<usize> {
        self.cyclic_witness
    }

    /// Cyclicity test; classes with fewer than two members are rejected.
    pub fn is_cyclic(&self) -> Result<bool> {
        if self.len() < 2 {
            return Err(Error::Precondition(format!(
                "cyclicity needs at least two class members, {} has {}",
                self.label(),
                self.len()
            )));
        }
        Ok(self.cyclic_witness.is_some())
    }

    /// Errors unless the class is cyclic and avoids the identity.
    pub fn require_cyclic(&self) -> Result<()> {
        if self.contains(self.group.identity()) {
            return Err(Error::Precondition("class contains the identity".into()));
        }
        if self.is_cyclic()? {
            Ok(())
        } else {
            Err(Error::NonCyclicClass(self.label()))
        }
    }

    /// `(i, j) ↦` position of `Ad_{c_i}(c_j)`.
    pub fn ad_table(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|&a| {
                self.members
                    .iter()
                    .map(|&b| {
                        self.position(self.group.conjugate(a, b))
                            .expect("class is closed under conjugation")
                    })
                    .collect()
            })
            .collect()
    }

    /// `(i, j) ↦ c_i c_j` as group elements.
    pub fn product_table(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|&a| self.members.iter().map(|&b| self.group.mul(a, b)).collect())
            .collect()
    }

    /// Distinct products `c_i c_j`, sorted by element index.
    pub fn product_targets(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.product_table().into_iter().flatten().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True for a three-member class whose products follow the pattern
    ///
    /// ```text
    ///      t    x    y
    /// t   t²   yt   xt
    /// x   xt   t²   yt
    /// y   yt   xt   t²
    /// ```
    ///
    /// with `t², xt, yt` distinct and outside the class.
    pub fn is_table2_type(&self) -> bool {
        if self.len() != 3 {
            return false;
        }
        let p = self.product_table();
        let (sq, xt, yt) = (p[0][0], p[1][0], p[2][0]);
        let expected = [[sq, yt, xt], [xt, sq, yt], [yt, xt, sq]];
        let distinct = sq != xt && xt != yt && sq != yt;
        distinct
            && [sq, xt, yt].iter().all(|&g| !self.contains(g))
            && (0..3).all(|i| (0..3).all(|j| p[i][j] == expected[i][j]))
    }

    /// Every ordered pair `(i, j)` of member positions with `c_i c_j = g`.
    pub fn pairs_with_product(&self, g: usize) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.group.mul(self.members[i], self.members[j]) == g)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dihedral;

    #[test]
    fn reflection_class_of_d6() {
        let g = dihedral(6).unwrap();
        let c = conjugacy_class(&g, g.index_of("sr").unwrap());
        assert_eq!(c.member_names(), ["sr", "sr3", "sr5"]);
        assert!(c.is_cyclic().unwrap());
        assert_eq!(c.cyclic_witness(), Some(g.index_of("sr").unwrap()));
        assert!(c.is_table2_type());
    }

    #[test]
    fn rotation_class_is_not_cyclic() {
        let g = dihedral(6).unwrap();
        let c = conjugacy_class(&g, 1);
        assert_eq!(c.member_names(), ["r", "r5"]);
        // brute force: both candidate witnesses send every a to Ad_a(r) = r or r5 non-bijectively
        for &t in c.members() {
            let images: Vec<usize> = c.members().iter().map(|&a| g.conjugate(a, t)).collect();
            assert_eq!(images[0], images[1]);
        }
        assert!(!c.is_cyclic().unwrap());
        assert!(matches!(c.require_cyclic(), Err(Error::NonCyclicClass(_))));
    }

    #[test]
    fn identity_class_is_singleton() {
        let g = dihedral(6).unwrap();
        let c = conjugacy_class(&g, 0);
        assert_eq!(c.members(), [0]);
        assert!(matches!(c.is_cyclic(), Err(Error::Precondition(_))));
    }

    #[test]
    fn class_of_r_by_brute_force() {
        let g = dihedral(6).unwrap();
        let mut orbit: Vec<usize> = (0..12).map(|h| g.mul(g.mul(h, 1), g.inv(h))).collect();
        orbit.sort_unstable();
        orbit.dedup();
        assert_eq!(orbit, conjugacy_class(&g, 1).members());
    }

    #[test]
    fn ad_table_matches_expected_pattern() {
        let g = dihedral(6).unwrap();
        let c = conjugacy_class(&g, 7);
        assert_eq!(
            c.ad_table(),
            vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]
        );
        for row in c.ad_table() {
            let mut sorted = row.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, [0, 1, 2]);
        }
    }

    #[test]
    fn product_table_of_reflections() {
        let g = dihedral(6).unwrap();
        let c = conjugacy_class(&g, 7);
        let p = c.product_table();
        let name = |i: usize, j: usize| g.name(p[i][j]).to_string();
        assert_eq!(name(0, 0), "e");
        assert_eq!(name(1, 0), "r4");
        assert_eq!(name(2, 0), "r2");
        let targets: Vec<&str> = c.product_targets().iter().map(|&x| g.name(x)).collect();
        assert_eq!(targets, ["e", "r2", "r4"]);
        for &a in c.members() {
            assert_eq!(g.mul(a, a), g.identity());
        }
    }
}
