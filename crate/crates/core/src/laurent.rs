//! Sparse multivariate Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Exponent = Vec<i32>;

/// A Laurent polynomial over named indeterminates.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so equality,
/// ordering and hashing are canonical. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponent, BigInt>,
}

/// Shared variable list; cheap to clone into every polynomial.
pub fn variables<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

impl LaurentPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let e = vec![0; vars.len()];
        Self::monomial(vars, e, c)
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        Self::constant(vars, 1)
    }

    /// The indeterminate with index `i`.
    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    pub fn monomial(vars: Arc<[String]>, exponent: Exponent, c: impl Into<BigInt>) -> Self {
        assert_eq!(exponent.len(), vars.len(), "exponent length must match variable count");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { vars, terms }
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent length must match variable count");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
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

    pub fn coefficient(&self, e: &[i32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.nvars()])
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    ///
    /// Uses lexicographic leading terms. Any exact quotient has its exponents in
    /// the box spanned by the componentwise extremes of the operands, which
    /// bounds the loop.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.vars, divisor.vars, "division across different variable lists");
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.nvars();
        let (lo_a, hi_a) = exponent_box(self);
        let (lo_b, hi_b) = exponent_box(divisor);
        let lo: Vec<i32> = (0..n).map(|k| lo_a[k] - lo_b[k]).collect();
        let hi: Vec<i32> = (0..n).map(|k| hi_a[k] - hi_b[k]).collect();
        let (lead_e, lead_c) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.vars.clone());
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let qe: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if (0..n).any(|k| qe[k] < lo[k] || qe[k] > hi[k]) {
                return None;
            }
            if !(c % lead_c).is_zero() {
                return None;
            }
            let qc = c / lead_c;
            for (de, dc) in &divisor.terms {
                let te: Exponent = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(dc * &qc));
            }
            quotient.add_term(qe, qc);
        }
        Some(quotient)
    }

    /// Sets the listed variables to 1 and removes them from the variable list.
    pub fn specialize_to_one(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !drop.contains(i)).collect();
        let vars: Arc<[String]> = keep.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>().into();
        Self::from_terms(
            vars,
            self.terms.iter().map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone())),
        )
    }

    /// Degree of `self` for the grading that gives variable `k` degree
    /// `grading[k]`; `None` unless every term has the same degree.
    pub fn homogeneous_degree(&self, grading: &[Vec<i64>]) -> Option<Vec<i64>> {
        assert_eq!(grading.len(), self.nvars());
        let dim = grading.first().map_or(0, Vec::len);
        let mut common: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            let mut d = vec![0i64; dim];
            for (k, &ek) in e.iter().enumerate() {
                for (dj, gj) in d.iter_mut().zip(&grading[k]) {
                    *dj += ek as i64 * gj;
                }
            }
            match &common {
                None => common = Some(d),
                Some(c) if *c != d => return None,
                _ => {}
            }
        }
        common
    }

    /// Exponent vectors of the support, in canonical order.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Lowest exponent of each variable over the support (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        exponent_box(self).0
    }
}

fn exponent_box(p: &LaurentPoly) -> (Vec<i32>, Vec<i32>) {
    let n = p.nvars();
    let mut lo = vec![i32::MAX; n];
    let mut hi = vec![i32::MIN; n];
    for e in p.terms.keys() {
        for k in 0..n {
            lo[k] = lo[k].min(e[k]);
            hi[k] = hi[k].max(e[k]);
        }
    }
    if p.is_zero() {
        return (vec![0; n], vec![0; n]);
    }
    (lo, hi)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = LaurentPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending lexicographic order, e.g. `x1^-1*x2 + x1^-1*y1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<[String]> {
        variables(&["x", "y"])
    }

    fn p(terms: &[(i64, [i32; 2])]) -> LaurentPoly {
        LaurentPoly::from_terms(xy(), terms.iter().map(|(c, e)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = p(&[(1, [1, 0]), (1, [0, 1])]);
        let b = p(&[(1, [-1, 2]), (-3, [0, 0]), (2, [2, -1])]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn inexact_division_is_rejected() {
        let a = p(&[(1, [1, 0]), (1, [0, 1])]);
        let b = p(&[(1, [1, 0]), (-1, [0, 1])]);
        assert!(a.div_exact(&b).is_none());
        assert!(p(&[(1, [0, 0])]).div_exact(&p(&[(2, [0, 0])])).is_none());
    }

    #[test]
    fn division_by_monomial() {
        let a = p(&[(1, [0, 1]), (1, [0, 0])]);
        let x = p(&[(1, [1, 0])]);
        assert_eq!(a.div_exact(&x).unwrap(), p(&[(1, [-1, 1]), (1, [-1, 0])]));
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = p(&[(2, [1, 1])]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).len(), 0);
    }

    #[test]
    fn display_format() {
        let a = p(&[(1, [-1, 1]), (-2, [0, 0]), (3, [2, 0])]);
        assert_eq!(a.to_string(), "3*x^2 - 2 + x^-1*y");
        assert_eq!(LaurentPoly::zero(xy()).to_string(), "0");
    }

    #[test]
    fn specialization_and_degree() {
        let a = p(&[(1, [-1, 1]), (1, [-1, 0])]);
        let f = a.specialize_to_one(&[0]);
        assert_eq!(f.nvars(), 1);
        assert_eq!(f.to_string(), "y + 1");
        assert_eq!(a.homogeneous_degree(&[vec![1, 0], vec![0, 0]]), Some(vec![-1, 0]));
        assert_eq!(a.homogeneous_degree(&[vec![1], vec![1]]), None);
    }
}
