//! Sparse multivariate polynomials over the rationals with weighted grading.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// An ordered universe of named variables, each carrying a positive weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Arc<Self> {
        let (names, weights): (Vec<String>, Vec<u32>) =
            vars.into_iter().map(|(n, w)| (n.into(), w)).unzip();
        assert!(weights.iter().all(|&w| w > 0), "variable weights must be positive");
        Arc::new(VarSet { names, weights })
    }

    /// Variables of weight one.
    pub fn unweighted<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weighted degree of an exponent vector.
    pub fn degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }
}

/// Exponent vector, one entry per variable of the owning [`VarSet`].
pub type Exponents = Vec<u32>;

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Exponents, Rational>,
}

impl GradedPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        GradedPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials live over different variable sets"
        );
    }

    /// Largest weighted degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.vars.degree(e)).max()
    }

    /// Smallest weighted degree of a term, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.vars.degree(e)).min()
    }

    /// `Some(d)` when every term has weighted degree `d`; zero counts as homogeneous of any degree.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| self.vars.degree(e) == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let vars = &self.vars;
        GradedPoly {
            vars: vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of weighted degree above `max`.
    pub fn truncate(&self, max: u32) -> Self {
        let vars = &self.vars;
        GradedPoly {
            vars: vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.degree(e) <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        GradedPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Product keeping only terms of weighted degree at most `max`.
    pub fn mul_truncated(&self, other: &Self, max: u32) -> Self {
        self.check_vars(other);
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            let da = self.vars.degree(ea);
            if da > max {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + self.vars.degree(eb) > max {
                    continue;
                }
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given as one rational per variable.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Replaces variable `i` by `images[i]`; all images share one target variable set.
    pub fn substitute(&self, target: &Arc<VarSet>, images: &[GradedPoly]) -> Self {
        assert_eq!(images.len(), self.vars.len());
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Rational::from_integer(e[i].into()));
        }
        out
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VarSet, e: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(vars.name(i))?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Terms print from highest to lowest weighted degree, ties broken by exponent order.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.vars.degree(b).cmp(&self.vars.degree(a)).then_with(|| b.cmp(a))
        });
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let constant = e.iter().all(|&k| k == 0);
            if constant {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.vars, e)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.check_vars(rhs);
        let mut out = GradedPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: GradedPoly) -> GradedPoly {
        &self + &rhs
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: GradedPoly) -> GradedPoly {
        &self - &rhs
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn binomial_square() {
        let v = VarSet::unweighted(["h"]);
        let p = &GradedPoly::one(&v) + &GradedPoly::var(&v, 0);
        let sq = &p * &p;
        assert_eq!(sq.coeff(&[0]), q(1));
        assert_eq!(sq.coeff(&[1]), q(2));
        assert_eq!(sq.coeff(&[2]), q(1));
        assert_eq!(sq.len(), 3);
    }

    #[test]
    fn zero_annihilates() {
        let v = VarSet::unweighted(["h", "k"]);
        let p = &GradedPoly::var(&v, 0) + &GradedPoly::constant(&v, q(7));
        assert!((&GradedPoly::zero(&v) * &p).is_zero());
    }

    #[test]
    fn cube_expansion() {
        let v = VarSet::unweighted(["h"]);
        let p = (&GradedPoly::one(&v) + &GradedPoly::var(&v, 0)).pow(3);
        let coeffs: Vec<_> = (0..4).map(|k| p.coeff(&[k])).collect();
        assert_eq!(coeffs, [q(1), q(3), q(3), q(1)]);
    }

    #[test]
    fn weighted_degree_and_homogeneity() {
        let v = VarSet::new([("c1", 1), ("c2", 2)]);
        let c1 = GradedPoly::var(&v, 0);
        let c2 = GradedPoly::var(&v, 1);
        let p = &(&c1 * &c1) + &c2;
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous_of(2));
        assert!(!(&p + &c1).is_homogeneous_of(2));
        assert_eq!(format!("{p}"), "c1^2 + c2");
    }

    #[test]
    fn display_signs_and_fractions() {
        let v = VarSet::unweighted(["d"]);
        let d = GradedPoly::var(&v, 0);
        let p = &(&d * &d).scale(&Rational::new(9.into(), 2.into())) - &d.scale(&q(6));
        let p = &p + &GradedPoly::constant(&v, q(-3));
        assert_eq!(format!("{p}"), "9/2*d^2 - 6*d - 3");
    }

    #[test]
    fn derivative_and_substitution() {
        let v = VarSet::unweighted(["x", "y"]);
        let x = GradedPoly::var(&v, 0);
        let y = GradedPoly::var(&v, 1);
        let f = &x.pow(3) + &(&x * &y);
        assert_eq!(f.derivative(0), &x.pow(2).scale(&q(3)) + &y);
        let g = f.substitute(&v, &[y.clone(), x.clone()]);
        assert_eq!(g, &y.pow(3) + &(&x * &y));
    }
}
