use std::thread;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, ExactMatrix, Polynomial};

/// Eigenvalues with multiplicities certified by exact nullity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pairs: Vec<(Cyclotomic, usize)>,
    dimension: usize,
}

impl Spectrum {
    pub fn pairs(&self) -> &[(Cyclotomic, usize)] {
        &self.pairs
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn multiplicity(&self, value: &Cyclotomic) -> usize {
        self.pairs
            .iter()
            .find(|(v, _)| v == value)
            .map_or(0, |(_, m)| *m)
    }

    pub fn eigenvalues(&self) -> Vec<Cyclotomic> {
        self.pairs.iter().map(|(v, _)| v.clone()).collect()
    }

    /// Every eigenvalue `λ` has `−λ` with the same multiplicity.
    pub fn is_symmetric(&self) -> bool {
        self.pairs.iter().all(|(v, m)| self.multiplicity(&-v) == *m)
    }

    /// Pairs sorted by real part, for display.
    pub fn sorted(&self) -> Vec<(Cyclotomic, usize)> {
        let mut out = self.pairs.clone();
        out.sort_by(|a, b| a.0.to_complex().0.total_cmp(&b.0.to_complex().0));
        out
    }
}

/// Multiplicities of the candidate eigenvalues via `nullity(op − λ)`.
///
/// Candidates with zero multiplicity are dropped. Fails with
/// [`Error::IncompleteSpectrum`] when the multiplicities do not fill the space.
pub fn spectrum(op: &ExactMatrix, candidates: &[Cyclotomic]) -> Result<Spectrum> {
    if !op.is_square() {
        return Err(Error::Dimension("spectrum of a non-square matrix".into()));
    }
    let mut distinct: Vec<Cyclotomic> = Vec::new();
    for c in candidates {
        if !distinct.contains(c) {
            distinct.push(c.clone());
        }
    }
    let n = op.rows();
    let nullities: Vec<usize> = thread::scope(|s| {
        let handles: Vec<_> = distinct
            .iter()
            .map(|lambda| s.spawn(move || (op - &ExactMatrix::scalar(n, lambda)).nullity()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("nullity worker panicked"))
            .collect()
    });
    let pairs: Vec<(Cyclotomic, usize)> = distinct
        .into_iter()
        .zip(nullities)
        .filter(|(_, m)| *m > 0)
        .collect();
    let found = pairs.iter().map(|(_, m)| m).sum();
    if found != n {
        return Err(Error::IncompleteSpectrum {
            found,
            dimension: n,
        });
    }
    Ok(Spectrum {
        pairs,
        dimension: n,
    })
}

pub fn minimal_polynomial(op: &ExactMatrix) -> Result<Polynomial> {
    Polynomial::minimal_of(op)
}

/// Spectrum from the rational roots of the minimal polynomial, with no
/// candidates needed. Irrational eigenvalues surface as an incomplete spectrum.
pub fn rational_spectrum(op: &ExactMatrix) -> Result<Spectrum> {
    let (roots, _) = minimal_polynomial(op)?.rational_roots()?;
    let candidates: Vec<Cyclotomic> = roots
        .into_iter()
        .map(|(r, _)| Cyclotomic::from_rational(r))
        .collect();
    spectrum(op, &candidates)
}

/// `∏_λ (op − λ) = 0` over the distinct eigenvalues, which certifies that
/// `op` is diagonalizable with no eigenvalues outside the spectrum.
pub fn minimal_polynomial_check(op: &ExactMatrix, spec: &Spectrum) -> bool {
    Polynomial::from_roots(&spec.eigenvalues())
        .eval_matrix(op)
        .is_zero()
}

/// `Tr f(D̸²/Λ²) = Σ mult·f(λ²/Λ²)`.
pub fn spectral_action(
    spec: &Spectrum,
    f: &Polynomial,
    cutoff: &BigRational,
) -> Result<Cyclotomic> {
    if !cutoff.is_positive() {
        return Err(Error::Precondition("cutoff must be positive".into()));
    }
    let found: usize = spec.pairs.iter().map(|(_, m)| m).sum();
    if found != spec.dimension {
        return Err(Error::IncompleteSpectrum {
            found,
            dimension: spec.dimension,
        });
    }
    let scale = Cyclotomic::from_rational(BigRational::one() / (cutoff * cutoff));
    Ok(spec
        .pairs
        .iter()
        .fold(Cyclotomic::zero(), |acc, (lambda, m)| {
            let u = &(lambda * lambda) * &scale;
            &acc + &(&f.eval(&u) * &Cyclotomic::from_int(*m as i64))
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::metric::rational;

    fn diag(values: &[i64]) -> ExactMatrix {
        ExactMatrix::diagonal(&values.iter().map(|&v| q(v, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_spectrum() {
        let s = spectrum(&ExactMatrix::identity(5), &[q(1, 1)]).unwrap();
        assert_eq!(s.pairs(), &[(q(1, 1), 5)]);
        assert_eq!(
            minimal_polynomial(&ExactMatrix::identity(5)).unwrap(),
            Polynomial::from_rationals(&[(-1, 1), (1, 1)])
        );
    }

    #[test]
    fn missing_candidate_is_reported() {
        let m = diag(&[1, 2, 2, 3]);
        assert_eq!(
            spectrum(&m, &[q(1, 1), q(2, 1)]),
            Err(Error::IncompleteSpectrum {
                found: 3,
                dimension: 4
            })
        );
        let s = spectrum(&m, &[q(2, 1), q(3, 1), q(1, 1), q(2, 1), q(7, 1)]).unwrap();
        assert_eq!(s.multiplicity(&q(2, 1)), 2);
        assert_eq!(s.multiplicity(&q(7, 1)), 0);
        assert_eq!(s.eigenvalues().len(), 3);
    }

    #[test]
    fn defective_matrix_is_incomplete() {
        // a Jordan block has one eigenvector for a double eigenvalue
        let m =
            ExactMatrix::from_rows(vec![vec![q(2, 1), q(1, 1)], vec![q(0, 1), q(2, 1)]]).unwrap();
        assert!(matches!(
            spectrum(&m, &[q(2, 1)]),
            Err(Error::IncompleteSpectrum { found: 1, .. })
        ));
        assert!(matches!(
            rational_spectrum(&m),
            Err(Error::IncompleteSpectrum { .. })
        ));
    }

    #[test]
    fn rational_spectrum_finds_eigenvalues() {
        let p = ExactMatrix::from_rows(vec![
            vec![q(1, 1), q(2, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(1, 1)],
            vec![q(1, 1), q(0, 1), q(1, 1)],
        ])
        .unwrap();
        let m = &(&p * &diag(&[-1, 4, 4])) * &p.inverse().unwrap();
        let s = rational_spectrum(&m).unwrap();
        assert_eq!(s.multiplicity(&q(4, 1)), 2);
        assert_eq!(s.multiplicity(&q(-1, 1)), 1);
        assert!(minimal_polynomial_check(&m, &s));
        assert!(!s.is_symmetric());
    }

    #[test]
    fn symmetric_spectrum() {
        let s = spectrum(&diag(&[3, -3, 0, 3, -3]), &[q(0, 1), q(3, 1), q(-3, 1)]).unwrap();
        assert!(s.is_symmetric());
        let sorted: Vec<i64> = s
            .sorted()
            .iter()
            .map(|(v, _)| v.to_complex().0 as i64)
            .collect();
        assert_eq!(sorted, vec![-3, 0, 3]);
    }

    #[test]
    fn spectral_action_sum() {
        let s = spectrum(&diag(&[0, 3, -3, 3]), &[q(0, 1), q(3, 1), q(-3, 1)]).unwrap();
        let f = Polynomial::from_rationals(&[(1, 1), (2, 1)]);
        // 1·f(0) + 3·f(9/Λ²) at Λ = 3: 1 + 3·3
        assert_eq!(spectral_action(&s, &f, &rational(3, 1)).unwrap(), q(10, 1));
        assert!(spectral_action(&s, &f, &rational(0, 1)).is_err());
    }
}
