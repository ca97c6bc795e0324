//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use fingeom::connection::levi_civita;
use fingeom::dirac::{dirac_operator, SpinorOperator};
use fingeom::group::{builtin_rep, dihedral, BuiltinRep, Representation};
use fingeom::metric::{rational, Metric};
use fingeom::{conjugacy_class, Calculus};

/// The 3-element reflection class calculus on D6.
pub fn d6_calculus() -> Calculus {
    let g = dihedral(6).expect("D6 builds");
    Calculus::new(conjugacy_class(&g, g.index_of("sr").expect("sr exists"))).expect("cyclic class")
}

pub fn metric(mu_num: i64, mu_den: i64) -> Metric {
    Metric::new(3, rational(mu_num, mu_den)).expect("non-degenerate metric")
}

pub fn spinor(calc: &Calculus) -> Representation {
    builtin_rep(&Arc::new(calc.group().clone()), BuiltinRep::Spinor).expect("spinor rep on D6")
}

/// The 24×24 Dirac operator of the Levi-Civita connection.
pub fn d6_dirac(mu_num: i64, mu_den: i64) -> SpinorOperator {
    let calc = d6_calculus();
    let metric = metric(mu_num, mu_den);
    let conn = levi_civita(&calc, &metric).expect("Levi-Civita exists");
    dirac_operator(&calc, &spinor(&calc), &conn, &metric).expect("Dirac operator builds")
}
