//! ψ-class intersection numbers `<tau_{d_1} ... tau_{d_n}>_g` from the
//! DVV (Virasoro) recursion.
//!
//! The recursion is applied to the largest degree. Brackets containing a
//! negative index, unstable brackets and brackets whose degrees do not add up
//! to `3g - 3 + n` are zero. `<tau_0^3>_0 = 1` and `<tau_1>_1 = 1/24` are the
//! seeds.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::algebra::{double_factorial_odd, rat, Rational};

/// Genus plus degrees sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionKey {
    pub genus: u32,
    pub degrees: Vec<u32>,
}

impl IntersectionKey {
    pub fn new(genus: u32, degrees: &[u32]) -> Self {
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self { genus, degrees }
    }

    pub fn is_stable(&self) -> bool {
        2 * self.genus as i64 - 2 + self.degrees.len() as i64 > 0
    }

    pub fn dimension_matches(&self) -> bool {
        let d: i64 = self.degrees.iter().map(|&d| d as i64).sum();
        d == 3 * self.genus as i64 - 3 + self.degrees.len() as i64
    }
}

/// Memo table for intersection numbers.
///
/// Many readers may query concurrently; inserts take the write lock and never
/// overwrite a value that is already present. Only keys that are stable and
/// dimension-matching are stored.
#[derive(Debug)]
pub struct IntersectionTable {
    values: RwLock<HashMap<IntersectionKey, Rational>>,
    genus_one_seed: Rational,
}

impl Default for IntersectionTable {
    fn default() -> Self {
        Self::with_genus_one_seed(rat(1, 24))
    }
}

impl IntersectionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table whose `<tau_1>_1` differs from 1/24. Only useful for negative controls.
    pub fn with_genus_one_seed(seed: Rational) -> Self {
        Self { values: RwLock::new(HashMap::new()), genus_one_seed: seed }
    }

    pub fn len(&self) -> usize {
        self.values.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `<tau_{d_1} ... tau_{d_n}>_g`. Out-of-range requests return 0.
    pub fn get(&self, genus: u32, degrees: &[u32]) -> Rational {
        if degrees.is_empty() {
            return Rational::zero();
        }
        let key = IntersectionKey::new(genus, degrees);
        if !key.is_stable() || !key.dimension_matches() {
            return Rational::zero();
        }
        if let Some(v) = self.values.read().unwrap().get(&key) {
            return v.clone();
        }
        let value = self.compute(&key);
        self.values.write().unwrap().entry(key).or_insert(value).clone()
    }

    /// Signed-degree entry point; any negative degree gives 0.
    fn get_signed(&self, genus: i64, degrees: &[i64]) -> Rational {
        if genus < 0 || degrees.iter().any(|&d| d < 0) {
            return Rational::zero();
        }
        let d: Vec<u32> = degrees.iter().map(|&d| d as u32).collect();
        self.get(genus as u32, &d)
    }

    fn compute(&self, key: &IntersectionKey) -> Rational {
        match (key.genus, key.degrees.as_slice()) {
            (0, [0, 0, 0]) => return Rational::one(),
            (1, [1]) => return self.genus_one_seed.clone(),
            _ => {}
        }
        self.dvv_at(key.genus, &key.degrees, 0)
    }

    /// Right side of the DVV relation with `degrees[index]` playing the role of `d_1`.
    /// Sub-brackets are read through the table.
    pub fn dvv_at(&self, genus: u32, degrees: &[u32], index: usize) -> Rational {
        let g = genus as i64;
        let d1 = degrees[index] as i64;
        let rest: Vec<i64> = degrees
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .map(|(_, &d)| d as i64)
            .collect();
        let dfact = |m: i64| Rational::from_integer(double_factorial_odd(m).expect("odd index"));
        let mut total = Rational::zero();

        for (j, &dj) in rest.iter().enumerate() {
            let coeff = dfact(2 * d1 + 2 * dj - 1) / (dfact(2 * d1 + 1) * dfact(2 * dj - 1));
            let mut sub = Vec::with_capacity(rest.len());
            sub.push(d1 + dj - 1);
            sub.extend(rest.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &d)| d));
            let v = self.get_signed(g, &sub);
            if !v.is_zero() {
                total += coeff * v;
            }
        }

        if d1 >= 2 {
            let half = rat(1, 2);
            let denom = dfact(2 * d1 + 1);
            let m = rest.len();
            for a in 0..=d1 - 2 {
                let b = d1 - 2 - a;
                let coeff = &half * dfact(2 * a + 1) * dfact(2 * b + 1) / &denom;
                let mut bracket = Rational::zero();

                let mut lowered = vec![a, b];
                lowered.extend_from_slice(&rest);
                bracket += self.get_signed(g - 1, &lowered);

                for mask in 0u32..(1 << m) {
                    let mut left = vec![a];
                    let mut right = vec![b];
                    for (k, &d) in rest.iter().enumerate() {
                        if mask & (1 << k) != 0 {
                            left.push(d);
                        } else {
                            right.push(d);
                        }
                    }
                    for g1 in 0..=g {
                        let g2 = g - g1;
                        if 2 * g1 - 2 + left.len() as i64 <= 0 || 2 * g2 - 2 + right.len() as i64 <= 0 {
                            continue;
                        }
                        let x = self.get_signed(g1, &left);
                        if x.is_zero() {
                            continue;
                        }
                        bracket += x * self.get_signed(g2, &right);
                    }
                }
                if !bracket.is_zero() {
                    total += coeff * bracket;
                }
            }
        }
        total
    }
}

fn global() -> &'static IntersectionTable {
    static TABLE: OnceLock<IntersectionTable> = OnceLock::new();
    TABLE.get_or_init(IntersectionTable::new)
}

/// `<tau_{d_1} ... tau_{d_n}>_g` through the process-wide table.
pub fn intersection(genus: u32, degrees: &[u32]) -> Rational {
    global().get(genus, degrees)
}

/// All degree vectors of length `n` with entries summing to `total`, in
/// lexicographic order.
pub fn compositions(total: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for d in 0..=left {
            cur.push(d);
            rec(left - d, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, n, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // Hand evaluations of the DVV right side, written out term by term.
    #[test]
    fn hand_derived_values() {
        let t = IntersectionTable::new();
        assert_eq!(t.get(0, &[0, 0, 0]), rat(1, 1));
        assert_eq!(t.get(1, &[1]), rat(1, 24));
        // <tau_1 tau_0^3>_0: three j-terms, each 1!!/(3!! (-1)!!) <tau_0^3>_0 = 1/3.
        assert_eq!(t.get(0, &[1, 0, 0, 0]), rat(3, 1) * rat(1, 3));
        // <tau_2 tau_0>_1: j-term 3!!/(5!! (-1)!!) <tau_1>_1 = 1/120,
        // genus term 1/2 * 1/15 * <tau_0^3>_0 = 1/30.
        assert_eq!(t.get(1, &[2, 0]), rat(1, 120) + rat(1, 30));
        // <tau_1 tau_1>_1: single j-term 3!!/(3!! 1!!) <tau_1>_1.
        assert_eq!(t.get(1, &[1, 1]), rat(1, 24));
    }

    #[test]
    fn known_genus_zero_and_two_values() {
        let t = IntersectionTable::new();
        // string equation: <tau_0^2 tau_{n-3}...> multinomials in genus 0
        assert_eq!(t.get(0, &[2, 0, 0, 0, 0]), rat(1, 1));
        assert_eq!(t.get(0, &[1, 1, 0, 0, 0]), rat(2, 1));
        assert_eq!(t.get(2, &[4]), rat(1, 1152));
        assert_eq!(t.get(3, &[7]), rat(1, 82944));
    }

    #[test]
    fn out_of_range_is_zero() {
        let t = IntersectionTable::new();
        assert!(t.get(1, &[2]).is_zero());
        assert!(t.get(0, &[0, 0]).is_zero());
        assert!(t.get(0, &[]).is_zero());
        assert!(t.get(0, &[1, 1, 1]).is_zero());
        assert!(t.get_signed(0, &[-1, 0, 0, 0]).is_zero());
        assert!(t.is_empty());
    }

    #[test]
    fn symmetric_in_degrees() {
        let t = IntersectionTable::new();
        assert_eq!(t.get(1, &[0, 2]), t.get(1, &[2, 0]));
        assert_eq!(t.get(0, &[0, 1, 0, 1, 0]), t.get(0, &[1, 1, 0, 0, 0]));
    }

    #[test]
    fn perturbed_seed_changes_genus_one() {
        let t = IntersectionTable::with_genus_one_seed(rat(1, 12));
        assert_eq!(t.get(1, &[1, 1]), rat(1, 12));
        assert_eq!(t.get(0, &[1, 0, 0, 0]), rat(1, 1));
    }

    #[test]
    fn composition_listing() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(3, 4).len(), 20);
    }
}
