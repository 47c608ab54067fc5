use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Exact Pfaffian by congruence elimination to 2x2 blocks.
pub fn pfaffian(matrix: &[Vec<Rational>]) -> Result<Rational> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NotAntisymmetric);
    }
    for i in 0..n {
        for j in 0..=i {
            if matrix[i][j] != -matrix[j][i].clone() {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut pf = Rational::one();
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else { return Ok(Rational::zero()) };
        if p != k + 1 {
            a.swap(p, k + 1);
            for row in a.iter_mut() {
                row.swap(p, k + 1);
            }
            pf = -pf;
        }
        pf *= &a[k][k + 1];
        for i in k + 2..n {
            for pivot in [k + 1, k] {
                let other = if pivot == k + 1 { k } else { k + 1 };
                if a[other][i].is_zero() {
                    continue;
                }
                let f = &a[other][i] / &a[other][pivot];
                for r in 0..n {
                    let t = &f * &a[r][pivot];
                    a[r][i] -= t;
                }
                for c in 0..n {
                    let t = &f * &a[pivot][c];
                    a[i][c] -= t;
                }
            }
        }
    }
    Ok(pf)
}
