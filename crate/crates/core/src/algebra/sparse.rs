use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

/// How an exponent index `d` at slot `i` is read and printed.
pub trait Variables: Clone + fmt::Debug + Default + PartialEq + Eq {
    fn write_factor(f: &mut fmt::Formatter<'_>, slot: usize, d: u32, first: bool) -> fmt::Result;
    /// Whether a slot with `d = 0` still carries a visible factor.
    fn zero_is_visible() -> bool;
}

/// `d` stands for `L_i^(2d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LengthSquares;

/// `d` stands for `z_i^-(2d+2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InverseSquares;

impl Variables for LengthSquares {
    fn write_factor(f: &mut fmt::Formatter<'_>, slot: usize, d: u32, first: bool) -> fmt::Result {
        if !first {
            f.write_str(" * ")?;
        }
        write!(f, "L{}^{}", slot + 1, 2 * d)
    }

    fn zero_is_visible() -> bool {
        false
    }
}

impl Variables for InverseSquares {
    fn write_factor(f: &mut fmt::Formatter<'_>, slot: usize, d: u32, first: bool) -> fmt::Result {
        if !first {
            f.write_str(" * ")?;
        }
        write!(f, "z{}^-{}", slot + 1, 2 * d + 2)
    }

    fn zero_is_visible() -> bool {
        true
    }
}

/// Sparse map from exponent vectors to nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Sparse<V: Variables> {
    arity: usize,
    terms: BTreeMap<Exponents, Rational>,
    _vars: PhantomData<V>,
}

/// Polynomial in `L_1^2, ..., L_n^2`.
pub type EvenPolynomial = Sparse<LengthSquares>;

/// Laurent polynomial `sum c * prod z_i^-(2 d_i + 2)`.
pub type Correlator = Sparse<InverseSquares>;

impl<V: Variables> Sparse<V> {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new(), _vars: PhantomData }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Result<Self> {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch { left: arity, right: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c` to the coefficient of `exps`, dropping the entry if it cancels.
    ///
    /// Panics if `exps.len()` differs from the arity.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        assert_eq!(exps.len(), self.arity, "exponent vector length must equal arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.arity);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// The common value of `sum d_i` over all terms, if there is one.
    /// The zero container reports `None`.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Relabels slot `i` to `slot_map[i]` in a container of `new_arity` slots.
    /// Slots not hit by the map carry exponent 0. Slot indices are 0-based.
    pub fn embed_variables(&self, slot_map: &[usize], new_arity: usize) -> Result<Self> {
        if slot_map.len() != self.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: slot_map.len() });
        }
        let mut seen = vec![false; new_arity];
        for &s in slot_map {
            if s >= new_arity || seen[s] {
                return Err(Error::NonInjectiveSlotMap { map: slot_map.to_vec(), arity: new_arity });
            }
            seen[s] = true;
        }
        let mut out = Self::zero(new_arity);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_arity];
            for (i, &s) in slot_map.iter().enumerate() {
                ne[s] = e[i];
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Applies a permutation of the slots: slot `i` moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        self.embed_variables(perm, self.arity)
    }

    /// True if every transposition of adjacent slots fixes the container.
    pub fn is_symmetric(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.arity).collect();
            perm.swap(i, i + 1);
            self.permute(&perm).map(|p| &p == self).unwrap_or(false)
        })
    }

    /// Terms in print order: larger total weight first, then lexicographically larger.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let wa: u32 = a.iter().sum();
            let wb: u32 = b.iter().sum();
            wb.cmp(&wa).then_with(|| b.cmp(a))
        });
        v
    }
}

impl<V: Variables> fmt::Display for Sparse<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c < &Rational::zero();
            match (k, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let mag = if negative { -c.clone() } else { c.clone() };
            write!(f, "{mag}")?;
            for (slot, &d) in e.iter().enumerate() {
                if d > 0 || V::zero_is_visible() {
                    V::write_factor(f, slot, d, false)?;
                }
            }
        }
        Ok(())
    }
}

impl EvenPolynomial {
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { left: self.arity, right: other.arity });
        }
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Exact value at `point`, one coordinate per slot.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::PointLength { got: point.len(), expected: self.arity });
        }
        if point.iter().any(|x| x < &Rational::zero()) {
            return Err(Error::Invalid("boundary lengths must be nonnegative".into()));
        }
        let squares: Vec<Rational> = point.iter().map(|x| x * x).collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (sq, &d) in squares.iter().zip(e) {
                m *= num_traits::pow(sq.clone(), d as usize);
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Coefficients of `d/dL_1 (L_1 * p)`: each term picks up `2 d_1 + 1`.
    pub fn euler_first_slot(&self) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let f = Rational::from_integer((2 * e[0] + 1).into());
            out.terms.insert(e.clone(), c * f);
        }
        out
    }
}

impl Correlator {
    /// Value at a point with all `z_i` nonzero.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::PointLength { got: point.len(), expected: self.arity });
        }
        if point.iter().any(Zero::is_zero) {
            return Err(Error::Invalid("correlators are singular at z = 0".into()));
        }
        let inv_sq: Vec<Rational> = point.iter().map(|z| (z * z).recip()).collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (q, &d) in inv_sq.iter().zip(e) {
                m *= num_traits::pow(q.clone(), d as usize + 1);
            }
            acc += m;
        }
        Ok(acc)
    }
}

impl<V: Variables> Add for &Sparse<V> {
    type Output = Sparse<V>;

    /// Panics on arity mismatch; use [`Sparse::try_add`] to get an error instead.
    fn add(self, rhs: Self) -> Sparse<V> {
        self.try_add(rhs).expect("arity mismatch in addition")
    }
}

impl<V: Variables> Sub for &Sparse<V> {
    type Output = Sparse<V>;

    fn sub(self, rhs: Self) -> Sparse<V> {
        self.try_add(&-rhs).expect("arity mismatch in subtraction")
    }
}

impl<V: Variables> Neg for &Sparse<V> {
    type Output = Sparse<V>;

    fn neg(self) -> Sparse<V> {
        self.scale(&-Rational::one())
    }
}

impl Mul for &EvenPolynomial {
    type Output = EvenPolynomial;

    fn mul(self, rhs: Self) -> EvenPolynomial {
        self.try_mul(rhs).expect("arity mismatch in multiplication")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn l(exps: &[u32], c: Rational) -> EvenPolynomial {
        EvenPolynomial::monomial(exps.to_vec(), c)
    }

    fn vol04() -> EvenPolynomial {
        let mut p = EvenPolynomial::zero(4);
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            p.add_term(e, rat(1, 2));
        }
        p
    }

    #[test]
    fn cancellation_is_pruned() {
        let a = &l(&[1], rat(1, 1)) + &EvenPolynomial::constant(1, rat(1, 1));
        let s = &a + &l(&[1], rat(-1, 1));
        assert_eq!(s, EvenPolynomial::constant(1, rat(1, 1)));
        assert_eq!(s.len(), 1);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn products() {
        let p = &l(&[1, 0], rat(1, 2)) * &l(&[0, 1], rat(1, 2));
        assert_eq!(p, l(&[1, 1], rat(1, 4)));
        let q = &vol04() * &EvenPolynomial::constant(4, rat(1, 1));
        assert_eq!(q, vol04());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = EvenPolynomial::zero(2);
        let b = EvenPolynomial::zero(3);
        assert_eq!(a.try_add(&b), Err(Error::ArityMismatch { left: 2, right: 3 }));
        assert_eq!(a.try_mul(&b), Err(Error::ArityMismatch { left: 2, right: 3 }));
        assert!(EvenPolynomial::from_terms(2, [(vec![1], rat(1, 1))]).is_err());
    }

    #[test]
    fn evaluation() {
        let v11 = l(&[1], rat(1, 48));
        assert_eq!(v11.eval(&[rat(2, 1)]).unwrap(), rat(1, 12));
        let pt: Vec<_> = [3, 4, 5, 6].iter().map(|&x| rat(x, 1)).collect();
        assert_eq!(vol04().eval(&pt).unwrap(), rat(43, 1));
        let p = &vol04() + &EvenPolynomial::constant(4, rat(5, 7));
        assert_eq!(p.eval(&vec![rat(0, 1); 4]).unwrap(), rat(5, 7));
        assert_eq!(vol04().eval(&pt[..3]), Err(Error::PointLength { got: 3, expected: 4 }));
        assert!(v11.eval(&[rat(-1, 1)]).is_err());
    }

    #[test]
    fn embedding() {
        let x4 = l(&[2], rat(1, 1));
        assert_eq!(x4.embed_variables(&[2], 4).unwrap(), l(&[0, 0, 2, 0], rat(1, 1)));
        let one = EvenPolynomial::constant(3, rat(1, 1));
        assert_eq!(
            one.embed_variables(&[4, 0, 2], 5).unwrap(),
            EvenPolynomial::constant(5, rat(1, 1))
        );
        let v11 = l(&[1], rat(1, 48));
        assert_eq!(v11.embed_variables(&[0], 2).unwrap(), l(&[1, 0], rat(1, 48)));
        assert!(matches!(
            one.embed_variables(&[1, 1, 2], 3),
            Err(Error::NonInjectiveSlotMap { .. })
        ));
        assert!(one.embed_variables(&[0, 1, 3], 3).is_err());
    }

    #[test]
    fn rendering_order_and_format() {
        assert_eq!(l(&[1], rat(1, 48)).to_string(), "1/48 * L1^2");
        assert_eq!(
            vol04().to_string(),
            "1/2 * L1^2 + 1/2 * L2^2 + 1/2 * L3^2 + 1/2 * L4^2"
        );
        let p = &l(&[0, 1], rat(-1, 1)) + &l(&[2, 0], rat(3, 1));
        assert_eq!(p.to_string(), "3 * L1^4 - 1 * L2^2");
        assert_eq!(EvenPolynomial::constant(3, rat(1, 1)).to_string(), "1");
        let w = Correlator::monomial(vec![1], rat(1, 8));
        assert_eq!(w.to_string(), "1/8 * z1^-4");
        let w03 = Correlator::constant(3, rat(1, 1));
        assert_eq!(w03.to_string(), "1 * z1^-2 * z2^-2 * z3^-2");
    }

    #[test]
    fn symmetry_and_weight() {
        assert!(vol04().is_symmetric());
        assert_eq!(vol04().homogeneous_weight(), Some(1));
        let p = &vol04() + &l(&[1, 1, 0, 0], rat(1, 1));
        assert!(!p.is_symmetric());
        assert_eq!(p.homogeneous_weight(), None);
        assert_eq!(EvenPolynomial::zero(2).homogeneous_weight(), None);
    }

    #[test]
    fn correlator_evaluation() {
        let w = Correlator::monomial(vec![1, 0], rat(3, 1));
        // 3 * z1^-4 * z2^-2 at (1/2, 2)
        assert_eq!(w.eval(&[rat(1, 2), rat(2, 1)]).unwrap(), rat(12, 1));
        assert!(w.eval(&[rat(0, 1), rat(1, 1)]).is_err());
    }

    #[test]
    fn euler_operator() {
        let p = l(&[2, 1], rat(1, 5));
        assert_eq!(p.euler_first_slot(), l(&[2, 1], rat(1, 1)));
    }
}
