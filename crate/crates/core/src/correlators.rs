//! Correlators `W_{g,n}` of the Airy curve `x = z^2/2, y = z`, computed two
//! ways: as Laplace transforms of volumes, and by the Eynard-Orantin residue
//! recursion at the branch point `z = 0`.
//!
//! Differentials are dropped: a [`Correlator`] holds the coefficient of
//! `dz_1 ⊗ ... ⊗ dz_n`. `W_{0,2}` is never stored; it enters only through
//! [`j_term_operator`] (the kernel paired with `W_{g,n-1}`) and through the
//! diagonal value `W_{0,2}(ζ, -ζ) = 1/(4ζ^2)` that seeds `W_{1,1}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use crate::algebra::{laplace, rat, Correlator, Rational};
use crate::error::{Error, Result};
use crate::volumes::{VolumeKey, VolumeTable};

/// The Airy spectral curve. Everything about it is fixed: `x(z) = z^2/2`,
/// `y(z) = z`, one branch point at 0, involution `z -> -z`, and Eynard kernel
/// `E(z_1, z_2) = 1/(z_1^2 - z_2^2) dz_2/(2 z_1 dz_1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AirySpectralData;

impl AirySpectralData {
    pub fn x(&self, z: &Rational) -> Rational {
        z * z / rat(2, 1)
    }

    pub fn y(&self, z: &Rational) -> Rational {
        z.clone()
    }

    pub fn conjugate(&self, z: &Rational) -> Rational {
        -z.clone()
    }

    /// Scalar part of `E(z_1, z_2)`: `1 / (2 z_1 (z_1^2 - z_2^2))`.
    pub fn kernel(&self, z1: &Rational, z2: &Rational) -> Rational {
        (rat(2, 1) * z1 * (z1 * z1 - z2 * z2)).recip()
    }
}

/// `W_{g,n} = laplace(Vol_{g,n})`.
pub fn correlator_laplace_in(volumes: &VolumeTable, g: u32, n: usize) -> Result<Correlator> {
    if !VolumeKey::new(g, n).is_stable() {
        return Err(Error::Unstable { g, n });
    }
    Ok(laplace(&volumes.volume(g, n)))
}

pub fn correlator_laplace(g: u32, n: usize) -> Result<Correlator> {
    static TABLE: OnceLock<VolumeTable> = OnceLock::new();
    correlator_laplace_in(TABLE.get_or_init(VolumeTable::new), g, n)
}

/// Image of `ζ^(-2d-2)` under the unstable residue term, as a correlator in
/// `(z_1, z_j)`: `sum_{r+s=d+1} (2s+1) z_1^(-2r-2) z_j^(-2s-2)`.
pub fn j_term_operator(d: u32) -> Correlator {
    let mut w = Correlator::zero(2);
    for s in 0..=d + 1 {
        let r = d + 1 - s;
        w.add_term(vec![r, s], Rational::from_integer((2 * s + 1).into()));
    }
    w
}

/// Residue against the Eynard kernel of `W(ζ, -ζ, z_2, ...)`: merges slots 1
/// and 2 onto `z_1` and multiplies by `1/(2 z_1^2)`, so that `(p, q, rest)`
/// becomes `1/2 * (p + q + 2, rest)`.
pub fn diagonal_stable_term(w: &Correlator) -> Result<Correlator> {
    if w.arity() < 2 {
        return Err(Error::Invalid(format!("diagonal term needs at least 2 slots, got {}", w.arity())));
    }
    let half = rat(1, 2);
    let mut out = Correlator::zero(w.arity() - 1);
    for (e, c) in w.terms() {
        let mut m = Vec::with_capacity(e.len() - 1);
        m.push(e[0] + e[1] + 2);
        m.extend_from_slice(&e[2..]);
        out.add_term(m, c * &half);
    }
    Ok(out)
}

/// Memoized Eynard-Orantin correlators.
#[derive(Debug)]
pub struct ResidueTable {
    w03: Correlator,
    w11: Correlator,
    values: RwLock<HashMap<VolumeKey, Arc<Correlator>>>,
}

impl Default for ResidueTable {
    fn default() -> Self {
        // W_{0,3} is taken from the Laplace side; W_{1,1} comes from 1/(2 z^2) * W_{0,2}(z, -z) = 1/(2z^2) * 1/(4z^2)
        let w03 = laplace(&VolumeTable::new().volume(0, 3));
        let w11 = Correlator::monomial(vec![1], rat(1, 2) * rat(1, 4));
        Self { w03, w11, values: RwLock::default() }
    }
}

impl ResidueTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn correlator(&self, g: u32, n: usize) -> Result<Arc<Correlator>> {
        let key = VolumeKey::new(g, n);
        if !key.is_stable() {
            return Err(Error::Unstable { g, n });
        }
        if let Some(w) = self.values.read().unwrap().get(&key) {
            return Ok(w.clone());
        }
        let w = Arc::new(self.compute(key)?);
        Ok(self.values.write().unwrap().entry(key).or_insert(w).clone())
    }

    fn compute(&self, key: VolumeKey) -> Result<Correlator> {
        let (g, n) = (key.g, key.n);
        match (g, n) {
            (0, 3) => return Ok(self.w03.clone()),
            (1, 1) => return Ok(self.w11.clone()),
            _ => {}
        }
        let mut out = Correlator::zero(n);

        // W_{0,2}(ζ, z_j) W_{g,n-1}(-ζ, z_rest) + (ζ <-> -ζ), for j = 2..n
        if n >= 2 && VolumeKey::new(g, n - 1).is_stable() {
            let sub = self.correlator(g, n - 1)?;
            for j in 1..n {
                let rest: Vec<usize> = (1..n).filter(|&i| i != j).collect();
                for (e, c) in sub.terms() {
                    for (te, tc) in j_term_operator(e[0]).terms() {
                        let mut m = vec![0u32; n];
                        m[0] = te[0];
                        m[j] = te[1];
                        for (slot, &label) in rest.iter().enumerate() {
                            m[label] = e[slot + 1];
                        }
                        out.add_term(m, c * tc);
                    }
                }
            }
        }

        // W_{g-1,n+1}(ζ, -ζ, z_2, ..., z_n)
        if g >= 1 {
            let sub = self.correlator(g - 1, n + 1)?;
            out = out.try_add(&diagonal_stable_term(&sub)?)?;
        }

        // W_{g1}(ζ, z_I) W_{g2}(-ζ, z_J), both factors stable
        let half = rat(1, 2);
        let others = n - 1;
        for mask in 0u32..(1 << others) {
            let left: Vec<usize> = (0..others).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect();
            let right: Vec<usize> = (0..others).filter(|k| mask & (1 << k) == 0).map(|k| k + 1).collect();
            for g1 in 0..=g {
                let g2 = g - g1;
                if !VolumeKey::new(g1, left.len() + 1).is_stable() || !VolumeKey::new(g2, right.len() + 1).is_stable() {
                    continue;
                }
                let w1 = self.correlator(g1, left.len() + 1)?;
                let w2 = self.correlator(g2, right.len() + 1)?;
                for (e1, c1) in w1.terms() {
                    for (e2, c2) in w2.terms() {
                        let mut m = vec![0u32; n];
                        m[0] = e1[0] + e2[0] + 2;
                        for (slot, &label) in left.iter().enumerate() {
                            m[label] = e1[slot + 1];
                        }
                        for (slot, &label) in right.iter().enumerate() {
                            m[label] = e2[slot + 1];
                        }
                        out.add_term(m, c1 * c2 * &half);
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn correlator_eo(g: u32, n: usize) -> Result<Correlator> {
    static TABLE: OnceLock<ResidueTable> = OnceLock::new();
    Ok((*TABLE.get_or_init(ResidueTable::new).correlator(g, n)?).clone())
}

/// Total exponent weight `sum (2 d_i + 2)` shared by all monomials of `W_{g,n}`.
pub fn correlator_weight(g: u32, n: usize) -> i64 {
    6 * g as i64 - 6 + 4 * n as i64
}

/// True when every monomial of `w` has z-degree `-correlator_weight(g, n)`.
pub fn has_correlator_weight(w: &Correlator, g: u32, n: usize) -> bool {
    let target = correlator_weight(g, n);
    w.terms().all(|(e, _)| e.iter().map(|&d| 2 * d as i64 + 2).sum::<i64>() == target)
        && !w.terms().any(|(_, c)| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w04() -> Correlator {
        let mut w = Correlator::zero(4);
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            w.add_term(e, rat(3, 1));
        }
        w
    }

    #[test]
    fn j_term_small_cases() {
        assert_eq!(
            j_term_operator(0),
            Correlator::from_terms(2, [(vec![1, 0], rat(1, 1)), (vec![0, 1], rat(3, 1))]).unwrap()
        );
        assert_eq!(
            j_term_operator(1),
            Correlator::from_terms(2, [(vec![2, 0], rat(1, 1)), (vec![1, 1], rat(3, 1)), (vec![0, 2], rat(5, 1))])
                .unwrap()
        );
        for d in 0..10u32 {
            let sum: Rational = j_term_operator(d).terms().map(|(_, c)| c.clone()).sum();
            assert_eq!(sum, rat(((d + 2) * (d + 2)) as i64, 1));
        }
    }

    #[test]
    fn diagonal_term() {
        let w = Correlator::constant(3, rat(1, 1));
        assert_eq!(diagonal_stable_term(&w).unwrap(), Correlator::monomial(vec![2, 0], rat(1, 2)));
        let a = Correlator::monomial(vec![1, 0, 2], rat(2, 3));
        let b = Correlator::monomial(vec![0, 4, 1], rat(-5, 1));
        assert_eq!(
            diagonal_stable_term(&(&a + &b)).unwrap(),
            &diagonal_stable_term(&a).unwrap() + &diagonal_stable_term(&b).unwrap()
        );
        assert!(diagonal_stable_term(&Correlator::monomial(vec![1], rat(1, 1))).is_err());
    }

    #[test]
    fn fixtures_both_paths() {
        let t = ResidueTable::new();
        let w03 = Correlator::constant(3, rat(1, 1));
        let w11 = Correlator::monomial(vec![1], rat(1, 8));
        assert_eq!(*t.correlator(0, 3).unwrap(), w03);
        assert_eq!(*t.correlator(1, 1).unwrap(), w11);
        assert_eq!(*t.correlator(0, 4).unwrap(), w04());
        assert_eq!(correlator_laplace(0, 3).unwrap(), w03);
        assert_eq!(correlator_laplace(1, 1).unwrap(), w11);
        assert_eq!(correlator_laplace(0, 4).unwrap(), w04());
    }

    #[test]
    fn genus_one_two_points_agree() {
        assert_eq!(correlator_eo(1, 2).unwrap(), correlator_laplace(1, 2).unwrap());
    }

    #[test]
    fn unstable_requests_fail() {
        assert_eq!(correlator_eo(0, 1), Err(Error::Unstable { g: 0, n: 1 }));
        assert_eq!(correlator_laplace(0, 2), Err(Error::Unstable { g: 0, n: 2 }));
    }

    #[test]
    fn weights() {
        assert!(has_correlator_weight(&w04(), 0, 4));
        assert!(has_correlator_weight(&Correlator::monomial(vec![1], rat(1, 8)), 1, 1));
        assert!(!has_correlator_weight(&Correlator::monomial(vec![2], rat(1, 8)), 1, 1));
    }

    #[test]
    fn airy_data() {
        let c = AirySpectralData;
        let z = rat(3, 1);
        assert_eq!(c.x(&z), rat(9, 2));
        assert_eq!(c.x(&c.conjugate(&z)), c.x(&z));
        assert_eq!(c.y(&c.conjugate(&z)), rat(-3, 1));
        assert_eq!(c.kernel(&rat(2, 1), &rat(1, 1)), rat(1, 12));
    }
}
