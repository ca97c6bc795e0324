//! Exact arithmetic: cyclotomic numbers, dense matrices and polynomials.

mod cyclotomic;
mod matrix;
mod poly;

pub use cyclotomic::{cyclotomic_polynomial, q, zeta, Cyclotomic};
pub use matrix::{AffineSolution, Echelon, ExactMatrix, Vector};
pub use poly::Polynomial;

use crate::error::Result;

/// Returns `ζ_n^k`.
pub fn cyclo(n: u32, k: i64) -> Result<Cyclotomic> {
    Cyclotomic::root_of_unity(n, k)
}

/// Linear system of an affine map `x ↦ M·x + c`, recovered by evaluating it at
/// zero and at each unit vector. Returns `(M, -c)` so that the zero set is
/// `M·x = -c`.
pub fn linearize<F>(unknowns: usize, map: F) -> Result<(ExactMatrix, Vector)>
where
    F: Fn(&[Cyclotomic]) -> Result<Vector>,
{
    use num_traits::{One, Zero};
    let origin = vec![Cyclotomic::zero(); unknowns];
    let offset = map(&origin)?;
    let mut columns = Vec::with_capacity(unknowns);
    let mut point = origin;
    for j in 0..unknowns {
        point[j] = Cyclotomic::one();
        let image = map(&point)?;
        columns.push(
            image
                .iter()
                .zip(&offset)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        point[j] = Cyclotomic::zero();
    }
    let matrix = ExactMatrix::from_columns(offset.len(), &columns)?;
    Ok((matrix, offset.iter().map(|c| -c).collect()))
}
