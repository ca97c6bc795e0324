use rand::Rng;

use crate::calculus::{Calculus, GroupFunction};
use crate::exact::{q, zeta, Cyclotomic};
use crate::group::{conjugacy_class, dihedral};

pub fn d6_calculus() -> Calculus {
    let g = dihedral(6).unwrap();
    let sr = g.index_of("sr").unwrap();
    Calculus::new(conjugacy_class(&g, sr)).unwrap()
}

pub fn random_scalar(rng: &mut impl Rng) -> Cyclotomic {
    let a = q(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    if rng.gen_bool(0.3) {
        &a + &(&zeta(6, 1) * &q(rng.gen_range(-3..=3), 1))
    } else {
        a
    }
}

pub fn random_function(rng: &mut impl Rng, n: usize) -> GroupFunction {
    GroupFunction::new((0..n).map(|_| random_scalar(rng)).collect())
}
