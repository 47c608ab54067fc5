use num_traits::{One, Zero};

use symvol_core::algebra::Rational;

/// Residue at 0 of `zeta^(-2d-3) / (z1^2 - zeta^2) * (zj^2 + zeta^2) / (zj^2 - zeta^2)^2`,
/// which is `-d/dzj [zj / (zj^2 - zeta^2)]` against the kernel, by truncated power series in `zeta`.
pub fn laurent_j_term(d: u32, z1: &Rational, zj: &Rational) -> Rational {
    let order = 2 * d as usize + 3;
    let series = |c: &[Rational]| {
        let mut s = vec![Rational::zero(); order];
        for (i, x) in c.iter().enumerate().take(order) {
            s[i] = x.clone();
        }
        s
    };
    let mul = |a: &[Rational], b: &[Rational]| {
        let mut out = vec![Rational::zero(); order];
        for i in 0..order {
            for j in 0..order - i {
                out[i + j] += &a[i] * &b[j];
            }
        }
        out
    };
    let inverse = |a: &[Rational]| {
        let mut out = vec![Rational::zero(); order];
        out[0] = a[0].recip();
        for k in 1..order {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &a[i] * &out[k - i];
            }
            out[k] = -acc * &out[0];
        }
        out
    };
    let z1sq = z1 * z1;
    let zjsq = zj * zj;
    let kernel = inverse(&series(&[z1sq, Rational::zero(), -Rational::one()]));
    let denom = series(&[zjsq.clone(), Rational::zero(), -Rational::one()]);
    let pole = mul(&series(&[zjsq, Rational::zero(), Rational::one()]), &inverse(&mul(&denom, &denom)));
    mul(&kernel, &pole)[order - 1].clone()
}
