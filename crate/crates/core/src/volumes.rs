//! Volumes `Vol_{g,n}(L_1, ..., L_n)` from the differentiated topological
//! recursion, and the dictionary between volume coefficients and ψ-class
//! intersection numbers.
//!
//! The recursion computes `R = d/dL_1 (L_1 Vol_{g,n})` from smaller volumes.
//! Each integral in the right side is evaluated in closed form by
//! [`unstable_transfer`] or [`stable_transfer`], so every intermediate value
//! is an [`EvenPolynomial`]. The volume is recovered by dividing the
//! coefficient of each monomial by `2 d_1 + 1`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factorial, rat, EvenPolynomial, Rational};
use crate::error::{Error, Result};
use crate::intersections::{compositions, IntersectionTable};

/// `(g, n)`. Keys with `2g - 2 + n <= 0` correspond to the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VolumeKey {
    pub g: u32,
    pub n: usize,
}

impl VolumeKey {
    pub fn new(g: u32, n: usize) -> Self {
        Self { g, n }
    }

    pub fn complexity(&self) -> i64 {
        2 * self.g as i64 - 2 + self.n as i64
    }

    pub fn is_stable(&self) -> bool {
        self.n >= 1 && self.complexity() > 0
    }

    /// `3g - 3 + n`, the weight of every exponent vector.
    pub fn degree(&self) -> i64 {
        3 * self.g as i64 - 3 + self.n as i64
    }
}

/// All stable `(g, n)` with `n >= 1` and `2g - 2 + n <= max_complexity`,
/// ordered by complexity, then genus.
pub fn stable_keys(max_complexity: u32) -> Vec<VolumeKey> {
    let mut keys = Vec::new();
    for c in 1..=max_complexity as i64 {
        for g in 0..=(c + 1) / 2 {
            let n = c + 2 - 2 * g;
            if n >= 1 {
                keys.push(VolumeKey::new(g as u32, n as usize));
            }
        }
    }
    keys
}

/// Closed form of `int_0^{L_1+L_j} x/2 x^{2k} dx + int_0^{|L_1-L_j|} x/2 x^{2k} dx`
/// in variables `(L_1, L_j)`:
/// `sum_{s=0}^{k+1} (2k+1)! / ((2s)! (2k+2-2s)!) L_1^{2s} L_j^{2(k+1-s)}`.
pub fn unstable_transfer(k: u32) -> EvenPolynomial {
    let num = factorial(2 * k + 1);
    let mut p = EvenPolynomial::zero(2);
    for s in 0..=k + 1 {
        let den = factorial(2 * s) * factorial(2 * k + 2 - 2 * s);
        p.add_term(vec![s, k + 1 - s], Rational::new(num.clone(), den));
    }
    p
}

/// Closed form of `iint_{x+y <= L_1} xy/2 x^{2a} y^{2b}`:
/// `1/2 (2a+1)! (2b+1)! / (2(a+b+2))! L_1^{2(a+b+2)}`.
pub fn stable_transfer(a: u32, b: u32) -> EvenPolynomial {
    EvenPolynomial::monomial(vec![a + b + 2], stable_coefficient(a, b))
}

fn stable_coefficient(a: u32, b: u32) -> Rational {
    Rational::new(factorial(2 * a + 1) * factorial(2 * b + 1), factorial(2 * (a + b + 2)) * 2)
}

/// The two seeds of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseVolumes {
    pub vol_0_3: Rational,
    pub vol_1_1: Rational,
}

impl Default for BaseVolumes {
    fn default() -> Self {
        Self { vol_0_3: Rational::one(), vol_1_1: rat(1, 48) }
    }
}

/// Memoized volumes from the differentiated recursion.
///
/// Concurrent readers are fine; inserts happen under the write lock and keep
/// whichever value landed first (they are all equal).
#[derive(Debug, Default)]
pub struct VolumeTable {
    base: BaseVolumes,
    values: RwLock<HashMap<VolumeKey, Arc<EvenPolynomial>>>,
}

impl VolumeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_base(base: BaseVolumes) -> Self {
        Self { base, values: RwLock::default() }
    }

    pub fn base(&self) -> &BaseVolumes {
        &self.base
    }

    pub fn volume(&self, g: u32, n: usize) -> Arc<EvenPolynomial> {
        let key = VolumeKey::new(g, n);
        if !key.is_stable() {
            return Arc::new(EvenPolynomial::zero(n));
        }
        if let Some(v) = self.values.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.compute(key));
        self.values.write().unwrap().entry(key).or_insert(v).clone()
    }

    fn compute(&self, key: VolumeKey) -> EvenPolynomial {
        match (key.g, key.n) {
            (0, 3) => EvenPolynomial::constant(3, self.base.vol_0_3.clone()),
            (1, 1) => EvenPolynomial::monomial(vec![1], self.base.vol_1_1.clone()),
            _ => {
                let rhs = self.recursion_rhs(key.g, key.n);
                let mut vol = EvenPolynomial::zero(key.n);
                for (e, c) in rhs.terms() {
                    let f = Rational::from_integer(BigInt::from(2 * e[0] + 1));
                    vol.add_term(e.clone(), c / f);
                }
                vol
            }
        }
    }

    /// `d/dL_1 (L_1 Vol_{g,n})` assembled from smaller volumes: the `j` terms,
    /// the genus-lowering term and the splitting terms.
    pub fn recursion_rhs(&self, g: u32, n: usize) -> EvenPolynomial {
        let mut rhs = EvenPolynomial::zero(n);
        if n == 0 {
            return rhs;
        }

        // j terms: Vol_{g,n-1}(x, L_rest), rest = labels other than 1 and j.
        if n >= 2 {
            let sub = self.volume(g, n - 1);
            for j in 1..n {
                let rest: Vec<usize> = (1..n).filter(|&i| i != j).collect();
                for (e, c) in sub.terms() {
                    let mut base = vec![0u32; n];
                    for (slot, &label) in rest.iter().enumerate() {
                        base[label] = e[slot + 1];
                    }
                    for (te, tc) in unstable_transfer(e[0]).terms() {
                        let mut m = base.clone();
                        m[0] += te[0];
                        m[j] += te[1];
                        rhs.add_term(m, c * tc);
                    }
                }
            }
        }

        // genus-lowering term: Vol_{g-1,n+1}(x, y, L_2, ..., L_n).
        if g >= 1 {
            let sub = self.volume(g - 1, n + 1);
            for (e, c) in sub.terms() {
                let mut m = vec![0u32; n];
                m[0] = e[0] + e[1] + 2;
                m[1..].copy_from_slice(&e[2..]);
                rhs.add_term(m, c * stable_coefficient(e[0], e[1]));
            }
        }

        // splitting terms over ordered (g1, I), (g2, J).
        let others = n - 1;
        for mask in 0u32..(1 << others) {
            let left: Vec<usize> = (0..others).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect();
            let right: Vec<usize> = (0..others).filter(|k| mask & (1 << k) == 0).map(|k| k + 1).collect();
            for g1 in 0..=g {
                let g2 = g - g1;
                // unstable factors vanish; checking first also keeps (g, n) out of its own right side
                if !VolumeKey::new(g1, left.len() + 1).is_stable() || !VolumeKey::new(g2, right.len() + 1).is_stable() {
                    continue;
                }
                let v1 = self.volume(g1, left.len() + 1);
                let v2 = self.volume(g2, right.len() + 1);
                for (e1, c1) in v1.terms() {
                    for (e2, c2) in v2.terms() {
                        let mut m = vec![0u32; n];
                        m[0] = e1[0] + e2[0] + 2;
                        for (slot, &label) in left.iter().enumerate() {
                            m[label] = e1[slot + 1];
                        }
                        for (slot, &label) in right.iter().enumerate() {
                            m[label] = e2[slot + 1];
                        }
                        rhs.add_term(m, c1 * c2 * stable_coefficient(e1[0], e2[0]));
                    }
                }
            }
        }
        rhs
    }
}

fn global() -> &'static VolumeTable {
    static TABLE: OnceLock<VolumeTable> = OnceLock::new();
    TABLE.get_or_init(VolumeTable::new)
}

/// `Vol_{g,n}` through the process-wide table.
pub fn volume(g: u32, n: usize) -> EvenPolynomial {
    (*global().volume(g, n)).clone()
}

/// `sum_{k} prod L_j^{2k_j} / (2^{k_j} k_j!) <tau_{k_1} ... tau_{k_n}>_g`.
pub fn volume_from_intersections_in(table: &IntersectionTable, g: u32, n: usize) -> Result<EvenPolynomial> {
    let key = VolumeKey::new(g, n);
    if !key.is_stable() {
        return Err(Error::Unstable { g, n });
    }
    let mut p = EvenPolynomial::zero(n);
    for k in compositions(key.degree() as u32, n) {
        let value = table.get(g, &k);
        if value.is_zero() {
            continue;
        }
        p.add_term(k.clone(), value / psi_weight(&k));
    }
    Ok(p)
}

pub fn volume_from_intersections(g: u32, n: usize) -> Result<EvenPolynomial> {
    static TABLE: OnceLock<IntersectionTable> = OnceLock::new();
    volume_from_intersections_in(TABLE.get_or_init(IntersectionTable::new), g, n)
}

/// Inverse dictionary: each coefficient `c` of `prod L_i^{2 d_i}` becomes
/// `<tau_{d_1} ... tau_{d_n}>_g = c * prod 2^{d_i} d_i!`.
pub fn intersections_from_volume(p: &EvenPolynomial, g: u32, n: usize) -> Result<Vec<(Vec<u32>, Rational)>> {
    if p.arity() != n {
        return Err(Error::ArityMismatch { left: p.arity(), right: n });
    }
    let expected = VolumeKey::new(g, n).degree();
    if p.terms().any(|(e, _)| e.iter().map(|&d| d as i64).sum::<i64>() != expected) {
        return Err(Error::NotHomogeneous { expected });
    }
    Ok(p.terms().map(|(e, c)| (e.clone(), c * psi_weight(e))).collect())
}

fn psi_weight(k: &[u32]) -> Rational {
    let mut w = BigInt::one();
    for &d in k {
        w *= BigInt::from(2).pow(d) * factorial(d);
    }
    Rational::from_integer(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    /// Antiderivative oracle: the two integrals of x/2 * x^{2k} are
    /// ((L1+Lj)^{2k+2} + (L1-Lj)^{2k+2}) / (2(2k+2)), evaluated at a point.
    fn unstable_oracle(k: u32, l1: &Rational, lj: &Rational) -> Rational {
        let e = (2 * k + 2) as usize;
        let s = num_traits::pow(l1 + lj, e);
        let d = num_traits::pow(l1 - lj, e);
        (s + d) / rat(2 * (2 * k as i64 + 2), 1)
    }

    #[test]
    fn unstable_transfer_values() {
        assert_eq!(
            unstable_transfer(0),
            EvenPolynomial::from_terms(2, [(vec![1, 0], rat(1, 2)), (vec![0, 1], rat(1, 2))]).unwrap()
        );
        assert_eq!(
            unstable_transfer(1),
            EvenPolynomial::from_terms(
                2,
                [(vec![0, 2], rat(1, 4)), (vec![1, 1], rat(3, 2)), (vec![2, 0], rat(1, 4))]
            )
            .unwrap()
        );
        for k in 0..6 {
            for (a, b) in [(rat(3, 1), rat(1, 1)), (rat(1, 2), rat(7, 3)), (rat(2, 1), rat(2, 1))] {
                let p = unstable_transfer(k);
                assert_eq!(p.eval(&[a.clone(), b.clone()]).unwrap(), unstable_oracle(k, &a, &b), "k = {k}");
            }
            let one = p_at_ones(&unstable_transfer(k));
            let expect = Rational::new(factorial(2 * k + 1) * BigInt::from(2).pow(2 * k + 1), factorial(2 * k + 2));
            assert_eq!(one, expect);
        }
    }

    fn p_at_ones(p: &EvenPolynomial) -> Rational {
        p.eval(&vec![Rational::one(); p.arity()]).unwrap()
    }

    #[test]
    fn stable_transfer_values() {
        assert_eq!(stable_transfer(0, 0), EvenPolynomial::monomial(vec![2], rat(1, 48)));
        assert_eq!(stable_transfer(1, 0), EvenPolynomial::monomial(vec![3], rat(1, 240)));
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(stable_transfer(a, b), stable_transfer(b, a));
            }
        }
    }

    /// Iterated integration oracle on the triangle: int_0^L dx x^{2a+1}/2 int_0^{L-x} y^{2b+1} dy
    /// expanded with the binomial theorem.
    #[test]
    fn stable_transfer_matches_iterated_integral() {
        for a in 0..4u32 {
            for b in 0..4u32 {
                // inner integral: (L-x)^{2b+2}/(2b+2); expand and integrate x^{2a+1} (L-x)^{2b+2} / 2
                let m = 2 * b + 2;
                let mut coeff = Rational::zero();
                for r in 0..=m {
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let binom = Rational::from_integer(crate::algebra::binomial(m, r) * sign);
                    // x^{2a+1+r} integrates to L^{2a+2+r}/(2a+2+r), times L^{m-r}
                    coeff += binom / rat((2 * a + 2 + r) as i64, 1);
                }
                coeff = coeff / rat(m as i64, 1) / rat(2, 1);
                assert_eq!(stable_transfer(a, b).coefficient(&[a + b + 2]), coeff, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn base_and_small_volumes() {
        let t = VolumeTable::new();
        assert_eq!(*t.volume(0, 3), EvenPolynomial::constant(3, rat(1, 1)));
        assert_eq!(*t.volume(1, 1), EvenPolynomial::monomial(vec![1], rat(1, 48)));
        let v04 = t.volume(0, 4);
        assert_eq!(v04.len(), 4);
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            assert_eq!(v04.coefficient(&e), rat(1, 2));
        }
        assert_eq!(v04.eval(&rats(&[3, 4, 5, 6])).unwrap(), rat(43, 1));
        // (L1^2 + L2^2)^2 / 192
        let v12 = t.volume(1, 2);
        let expected = EvenPolynomial::from_terms(
            2,
            [(vec![2, 0], rat(1, 192)), (vec![1, 1], rat(2, 192)), (vec![0, 2], rat(1, 192))],
        )
        .unwrap();
        assert_eq!(*v12, expected);
    }

    #[test]
    fn vol04_rhs_by_hand() {
        // d/dL1 (L1 Vol_{0,4}) = (3 L1^2 + L2^2 + L3^2 + L4^2) / 2
        let t = VolumeTable::new();
        let rhs = t.recursion_rhs(0, 4);
        let expected = EvenPolynomial::from_terms(
            4,
            [
                (vec![1, 0, 0, 0], rat(3, 2)),
                (vec![0, 1, 0, 0], rat(1, 2)),
                (vec![0, 0, 1, 0], rat(1, 2)),
                (vec![0, 0, 0, 1], rat(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(rhs, expected);
    }

    #[test]
    fn unstable_keys_are_zero() {
        let t = VolumeTable::new();
        assert!(t.volume(0, 2).is_zero());
        assert_eq!(t.volume(0, 2).arity(), 2);
        assert!(t.volume(0, 1).is_zero());
        assert!(t.volume(1, 0).is_zero());
    }

    #[test]
    fn intersection_dictionary() {
        let v11 = EvenPolynomial::monomial(vec![1], rat(1, 48));
        assert_eq!(intersections_from_volume(&v11, 1, 1).unwrap(), vec![(vec![1], rat(1, 24))]);
        let v04 = volume(0, 4);
        for (_, v) in intersections_from_volume(&v04, 0, 4).unwrap() {
            assert_eq!(v, rat(1, 1));
        }
        let one = EvenPolynomial::constant(3, rat(1, 1));
        assert_eq!(intersections_from_volume(&one, 0, 3).unwrap(), vec![(vec![0, 0, 0], rat(1, 1))]);
        let bad = &v04 + &EvenPolynomial::constant(4, rat(1, 1));
        assert_eq!(intersections_from_volume(&bad, 0, 4), Err(Error::NotHomogeneous { expected: 1 }));
    }

    #[test]
    fn dvv_assembly_base_cases() {
        assert_eq!(volume_from_intersections(1, 1).unwrap(), EvenPolynomial::monomial(vec![1], rat(1, 48)));
        assert_eq!(volume_from_intersections(0, 3).unwrap(), EvenPolynomial::constant(3, rat(1, 1)));
        assert_eq!(volume_from_intersections(0, 5).unwrap(), volume(0, 5));
        assert_eq!(volume_from_intersections(0, 2), Err(Error::Unstable { g: 0, n: 2 }));
    }

    #[test]
    fn stable_key_listing() {
        let keys: Vec<(u32, usize)> = stable_keys(2).iter().map(|k| (k.g, k.n)).collect();
        assert_eq!(keys, vec![(0, 3), (1, 1), (0, 4), (1, 2)]);
        assert_eq!(stable_keys(5).len(), 2 + 2 + 3 + 3 + 4);
    }

    #[test]
    fn corrupted_base_propagates() {
        let t = VolumeTable::with_base(BaseVolumes { vol_0_3: rat(1, 1), vol_1_1: rat(1, 24) });
        assert_ne!(*t.volume(1, 2), volume(1, 2));
        assert_eq!(*t.volume(0, 5), volume(0, 5));
    }
}
