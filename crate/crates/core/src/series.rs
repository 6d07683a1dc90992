//! Truncated multiplicative generating series `T = exp(Σ a_{β,δ} y_β z_δ / #Aut)`.
//!
//! Series are indexed by [`TypeMultiset`]s and truncated at a total number of
//! points `|β| + |δ|`. Coefficients are either rationals (a fixed geometry) or
//! polynomials in Chern-number variables (universal polynomials).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{parse_with, GradedPoly, Rational, VarSet};
use crate::chern::ChernVector;
use crate::cobordism::ordered_monomials;
use crate::error::{Error, Result};
use crate::partitions::{chern_symbols, ChernMonomial, Partition, Signature};

/// A pair of label multisets: `beta` on the divisor, `delta` in the interior.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeMultiset {
    pub beta: BTreeMap<String, u32>,
    pub delta: BTreeMap<String, u32>,
}

fn merge(a: &BTreeMap<String, u32>, b: &BTreeMap<String, u32>) -> BTreeMap<String, u32> {
    let mut out = a.clone();
    for (l, m) in b {
        *out.entry(l.clone()).or_insert(0) += m;
    }
    out
}

fn side_fmt(f: &mut fmt::Formatter<'_>, side: &BTreeMap<String, u32>) -> fmt::Result {
    for (i, (l, m)) in side.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        if *m == 1 {
            write!(f, "{l}")?;
        } else {
            write!(f, "{l}:{m}")?;
        }
    }
    Ok(())
}

fn parse_side(src: &str, out: &mut BTreeMap<String, u32>) -> Result<()> {
    let src = src.trim();
    if src.is_empty() || src == "∅" {
        return Ok(());
    }
    for item in src.split(',') {
        let (label, mult) = match item.split_once(':') {
            Some((l, m)) => {
                let m: u32 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse { pos: 0, msg: format!("bad multiplicity in `{item}`") })?;
                (l.trim(), m)
            }
            None => (item.trim(), 1),
        };
        if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Parse { pos: 0, msg: format!("bad label `{label}`") });
        }
        if mult > 0 {
            *out.entry(label.to_string()).or_insert(0) += mult;
        }
    }
    Ok(())
}

impl TypeMultiset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton_beta(label: &str) -> Self {
        let mut m = Self::empty();
        m.beta.insert(label.to_string(), 1);
        m
    }

    pub fn singleton_delta(label: &str) -> Self {
        let mut m = Self::empty();
        m.delta.insert(label.to_string(), 1);
        m
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty() && self.delta.is_empty()
    }

    /// `|β| + |δ|`.
    pub fn size(&self) -> u32 {
        self.beta.values().chain(self.delta.values()).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        TypeMultiset { beta: merge(&self.beta, &other.beta), delta: merge(&self.delta, &other.delta) }
    }

    pub fn is_submultiset_of(&self, other: &Self) -> bool {
        let sub = |a: &BTreeMap<String, u32>, b: &BTreeMap<String, u32>| {
            a.iter().all(|(l, m)| b.get(l).is_some_and(|n| n >= m))
        };
        sub(&self.beta, &other.beta) && sub(&self.delta, &other.delta)
    }

    /// `#Aut(β)·#Aut(δ) = ∏ mult!`.
    pub fn aut_factor(&self) -> u64 {
        self.beta.values().chain(self.delta.values()).map(|&m| (1..=m as u64).product::<u64>()).product()
    }

    /// Parses `(beta | delta)`, each side a comma list of `label[:mult]`.
    pub fn parse_key(src: &str) -> Result<Self> {
        let inner = src
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected `(beta | delta)`, got `{src}`") })?;
        let (b, d) = inner
            .split_once('|')
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("missing `|` in `{src}`") })?;
        let mut m = Self::empty();
        parse_side(b, &mut m.beta)?;
        parse_side(d, &mut m.delta)?;
        Ok(m)
    }

    /// Parses a flat list such as `A1:2,tan2`; labels starting with `tan` go to β.
    pub fn parse_types(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('(') {
            return Self::parse_key(src);
        }
        let mut all = BTreeMap::new();
        parse_side(src, &mut all)?;
        let mut m = Self::empty();
        for (l, k) in all {
            if l.starts_with("tan") {
                m.beta.insert(l, k);
            } else {
                m.delta.insert(l, k);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for TypeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        side_fmt(f, &self.beta)?;
        f.write_str(" | ")?;
        side_fmt(f, &self.delta)?;
        f.write_str(")")
    }
}

/// Coefficient ring of a series.
pub trait Coeff: Clone + PartialEq + fmt::Display {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coeff for GradedPoly {
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        GradedPoly::scale(self, c)
    }
}

/// A series truncated at `bound` total points. `unit` is the coefficient one.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSeries<C> {
    bound: u32,
    unit: C,
    terms: BTreeMap<TypeMultiset, C>,
}

impl<C: Coeff> GenSeries<C> {
    pub fn zero(bound: u32, unit: C) -> Self {
        GenSeries { bound, unit, terms: BTreeMap::new() }
    }

    pub fn one(bound: u32, unit: C) -> Self {
        let mut s = Self::zero(bound, unit.clone());
        s.terms.insert(TypeMultiset::empty(), unit);
        s
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn unit(&self) -> &C {
        &self.unit
    }

    pub fn zero_coeff(&self) -> C {
        self.unit.scale(&Rational::zero())
    }

    /// Adds `c` to the coefficient of `key`, ignoring keys beyond the bound.
    pub fn add_term(&mut self, key: TypeMultiset, c: C) {
        if key.size() > self.bound || c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn coeff(&self, key: &TypeMultiset) -> C {
        self.terms.get(key).cloned().unwrap_or_else(|| self.zero_coeff())
    }

    pub fn constant(&self) -> C {
        self.coeff(&TypeMultiset::empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TypeMultiset, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.bound = self.bound.min(other.bound);
        out.terms.retain(|k, _| k.size() <= out.bound);
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.bound, self.unit.clone());
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.scale(c));
        }
        out
    }

    /// Product truncated at the smaller bound; `z_a · z_b = z_{a ∪ b}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.bound.min(other.bound), self.unit.clone());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if ka.size() + kb.size() <= out.bound {
                    out.add_term(ka.union(kb), ca.mul(cb));
                }
            }
        }
        out
    }

    fn without_constant(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&TypeMultiset::empty());
        s
    }

    /// `exp(S)` for `S` without constant term; `S^k = 0` past the bound.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant().is_zero() {
            return Err(Error::InvalidState("exp needs a series without constant term".into()));
        }
        let mut out = Self::one(self.bound, self.unit.clone());
        let mut power = out.clone();
        for k in 1..=self.bound {
            power = power.mul(self).scale(&Rational::new(1.into(), k.into()));
            out = out.add(&power);
        }
        Ok(out)
    }

    /// `log(S)` for `S` with constant term one.
    pub fn log(&self) -> Result<Self> {
        if self.constant() != self.unit {
            return Err(Error::InvalidState("log needs constant term 1".into()));
        }
        let x = self.without_constant();
        let mut out = Self::zero(self.bound, self.unit.clone());
        let mut power = Self::one(self.bound, self.unit.clone());
        for k in 1..=self.bound {
            power = power.mul(&x);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rational::new(sign.into(), k.into())));
        }
        Ok(out)
    }

    /// `S^c = exp(c·log S)` for `S` with constant term one.
    pub fn pow(&self, c: &Rational) -> Result<Self> {
        self.log()?.scale(c).exp()
    }
}

impl GenSeries<GradedPoly> {
    /// Evaluates every coefficient at a point of the coefficient variables.
    pub fn eval(&self, point: &[Rational]) -> GenSeries<Rational> {
        let mut out = GenSeries::zero(self.bound, Rational::one());
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.eval(point));
        }
        out
    }
}

impl<C: Coeff> fmt::Display for GenSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.terms {
            writeln!(f, "{k}\t{c}")?;
        }
        Ok(())
    }
}

/// Chern monomial for an exponent vector over [`chern_symbols`].
pub fn monomial_from_exponents(exps: &[u32], sig: &Signature) -> ChernMonomial {
    let mut it = exps.iter().copied();
    let mut rep = |i: u32, parts: &mut Vec<u32>| {
        let e = it.next().expect("exponent per symbol");
        parts.extend(core::iter::repeat_n(i, e as usize));
    };
    let mut tangent = Vec::new();
    for i in 1..=sig.n {
        rep(i, &mut tangent);
    }
    let divisors = (0..sig.s)
        .map(|_| {
            let mut p = Vec::new();
            rep(1, &mut p);
            p.len() as u32
        })
        .collect();
    let bundles = sig
        .ranks
        .iter()
        .map(|&r| {
            let mut p = Vec::new();
            for i in 1..=r {
                rep(i, &mut p);
            }
            Partition::from_parts(p)
        })
        .collect();
    ChernMonomial { tangent: Partition::from_parts(tangent), divisors, bundles }
}

/// One weight-1 variable `[name]` per Chern monomial, in pairing-matrix order.
pub fn chern_number_vars(sig: &Signature) -> Arc<VarSet> {
    VarSet::new(ordered_monomials(sig).into_iter().map(|m| (format!("[{}]", m.name()), 1)))
}

/// Linear data `a_{β,δ}`: polynomials in Chern classes, homogeneous of weight n.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    signature: Signature,
    symbols: Arc<VarSet>,
    entries: BTreeMap<TypeMultiset, GradedPoly>,
}

impl CoeffTable {
    pub fn new(signature: Signature) -> Self {
        let symbols = VarSet::new(chern_symbols(&signature));
        CoeffTable { signature, symbols, entries: BTreeMap::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Variables `c1T, …, c1D1, …, c1E1, …` of the entries.
    pub fn symbols(&self) -> &Arc<VarSet> {
        &self.symbols
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TypeMultiset, &GradedPoly)> {
        self.entries.iter()
    }

    pub fn get(&self, key: &TypeMultiset) -> Option<&GradedPoly> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, key: TypeMultiset, entry: GradedPoly) -> Result<()> {
        if entry.vars() != &self.symbols {
            return Err(Error::SignatureMismatch(format!("table entry `{entry}` is not over the symbols of {}", self.signature)));
        }
        if key.is_empty() {
            return if entry.is_zero() { Ok(()) } else { Err(Error::NonzeroEmptyEntry) };
        }
        if !entry.is_homogeneous_of(self.signature.n) {
            return Err(Error::NotHomogeneous { key: key.to_string(), weight: self.signature.n });
        }
        if entry.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, entry);
        }
        Ok(())
    }

    /// Parses an entry; besides the Chern symbols it accepts `L = c1E1`,
    /// `K = -c1T`, `D = c1D1`, `c1 = c1T` and `c2 = c2T`.
    pub fn parse_entry(&self, src: &str) -> Result<GradedPoly> {
        let vars = &self.symbols;
        let sym = |name: &str| vars.index_of(name).map(|i| GradedPoly::var(vars, i));
        parse_with(src, vars, |name| {
            sym(name).or_else(|| match name {
                "L" => sym("c1E1"),
                "K" => sym("c1T").map(|p| -p),
                "D" => sym("c1D1"),
                "c1" => sym("c1T"),
                "c2" => sym("c2T"),
                _ => None,
            })
        })
    }

    pub fn insert_str(&mut self, key: TypeMultiset, src: &str) -> Result<()> {
        let p = self.parse_entry(src)?;
        self.insert(key, p)
    }

    /// `entry` as `Σ coeff · Θ` over Chern monomials.
    pub fn linear_form(&self, entry: &GradedPoly) -> Vec<(ChernMonomial, Rational)> {
        entry.terms().map(|(e, c)| (monomial_from_exponents(e, &self.signature), c.clone())).collect()
    }

    /// Entry evaluated on a Chern vector.
    pub fn evaluate(&self, key: &TypeMultiset, v: &ChernVector) -> Result<Rational> {
        self.check(v)?;
        let Some(entry) = self.entries.get(key) else { return Ok(Rational::zero()) };
        Ok(self
            .linear_form(entry)
            .iter()
            .map(|(m, c)| c * v.get(m).expect("monomial of the signature"))
            .sum())
    }

    /// Entry as a linear polynomial in Chern-number variables.
    pub fn symbolic_entry(&self, key: &TypeMultiset, numbers: &Arc<VarSet>) -> GradedPoly {
        let mut out = GradedPoly::zero(numbers);
        if let Some(entry) = self.entries.get(key) {
            for (m, c) in self.linear_form(entry) {
                let i = numbers.index_of(&format!("[{}]", m.name())).expect("chern number variable");
                out = &out + &GradedPoly::var(numbers, i).scale(&c);
            }
        }
        out
    }

    fn check(&self, v: &ChernVector) -> Result<()> {
        if v.signature() != &self.signature {
            return Err(Error::SignatureMismatch(format!("table {} vs vector {}", self.signature, v.signature())));
        }
        Ok(())
    }

    /// Singleton data for surfaces with one divisor and one line bundle:
    /// `A1`, `D4` and the tangency `tan2` in the form `2·L·D + D² + D·K`.
    pub fn surface_default() -> Self {
        let mut t = CoeffTable::new(Signature::new(2, 1, alloc::vec![1]));
        for (key, src) in SURFACE_DEFAULT_ENTRIES {
            t.insert_str(TypeMultiset::parse_key(key).expect("valid key"), src).expect("valid entry");
        }
        t
    }
}

pub const SURFACE_DEFAULT_ENTRIES: [(&str, &str); 3] = [
    ("( | A1)", "3*L^2 + 2*L*K + c2"),
    ("( | D4)", "15*L^2 + 20*L*K + 5*c1^2 + 5*c2"),
    ("(tan2 | )", "2*L*D + D^2 + D*K"),
];

fn rational_one() -> Rational {
    Rational::one()
}

/// `exp(Σ a_{β,δ}(v) y_β z_δ / #Aut)` truncated at `bound`.
pub fn exp_series(table: &CoeffTable, v: &ChernVector, bound: u32) -> Result<GenSeries<Rational>> {
    table.check(v)?;
    let mut s = GenSeries::zero(bound, rational_one());
    for key in table.entries.keys() {
        let a = table.evaluate(key, v)?;
        s.add_term(key.clone(), a / Rational::from_integer(key.aut_factor().into()));
    }
    s.exp()
}

/// The series with Chern numbers left symbolic.
pub fn symbolic_series(table: &CoeffTable, bound: u32) -> Result<GenSeries<GradedPoly>> {
    symbolic_series_within(table, bound, |_| true)
}

fn symbolic_series_within(
    table: &CoeffTable,
    bound: u32,
    keep: impl Fn(&TypeMultiset) -> bool,
) -> Result<GenSeries<GradedPoly>> {
    let numbers = chern_number_vars(&table.signature);
    let mut s = GenSeries::zero(bound, GradedPoly::one(&numbers));
    for key in table.entries.keys().filter(|k| keep(k)) {
        let a = table.symbolic_entry(key, &numbers);
        s.add_term(key.clone(), a.scale(&Rational::new(1.into(), key.aut_factor().into())));
    }
    s.exp()
}

/// Coefficient of `y_β z_δ` in the symbolic series: a polynomial of degree
/// at most `|β| + |δ|` in the Chern-number variables.
pub fn universal_polynomial(table: &CoeffTable, target: &TypeMultiset) -> Result<GradedPoly> {
    let s = symbolic_series_within(table, target.size(), |k| k.is_submultiset_of(target))?;
    Ok(s.coeff(target))
}

/// `∏ a_label^mult / #Aut` from singleton entries only.
pub fn leading_term(table: &CoeffTable, m: &TypeMultiset) -> Result<GradedPoly> {
    let numbers = chern_number_vars(&table.signature);
    let mut out = GradedPoly::one(&numbers);
    let sides = [(&m.beta, true), (&m.delta, false)];
    for (side, is_beta) in sides {
        for (label, &mult) in side {
            let key = if is_beta { TypeMultiset::singleton_beta(label) } else { TypeMultiset::singleton_delta(label) };
            if !table.entries.contains_key(&key) {
                return Err(Error::MissingSingleton(label.clone()));
            }
            out = &out * &table.symbolic_entry(&key, &numbers).pow(mult);
        }
    }
    Ok(out.scale(&Rational::new(1.into(), m.aut_factor().into())))
}

/// `T(n0)·T(n3) == T(n1)·T(n2)` to the bound.
pub fn degeneration_identity_check(
    table: &CoeffTable,
    n: [&ChernVector; 4],
    bound: u32,
) -> Result<bool> {
    let t: Vec<GenSeries<Rational>> = n.iter().map(|v| exp_series(table, v, bound)).collect::<Result<_>>()?;
    Ok(t[0].mul(&t[3]) == t[1].mul(&t[2]))
}

/// `A_Θ = exp(Σ [Θ] a_{β,δ} y_β z_δ / #Aut)` for every Chern monomial Θ, so that
/// `T(v) = ∏ A_Θ^{Θ(v)}`.
pub fn multiplicativity_factorization(
    table: &CoeffTable,
    bound: u32,
) -> Result<Vec<(ChernMonomial, GenSeries<Rational>)>> {
    let mut per: BTreeMap<ChernMonomial, GenSeries<Rational>> = ordered_monomials(&table.signature)
        .into_iter()
        .map(|m| (m, GenSeries::zero(bound, rational_one())))
        .collect();
    for (key, entry) in &table.entries {
        let aut = Rational::from_integer(key.aut_factor().into());
        for (m, c) in table.linear_form(entry) {
            per.get_mut(&m).expect("monomial of the signature").add_term(key.clone(), c / &aut);
        }
    }
    ordered_monomials(&table.signature)
        .into_iter()
        .map(|m| {
            let s = per[&m].exp()?;
            Ok((m, s))
        })
        .collect()
}

/// `∏ A_Θ^{Θ(v)}`.
pub fn reconstruct(factors: &[(ChernMonomial, GenSeries<Rational>)], v: &ChernVector, bound: u32) -> Result<GenSeries<Rational>> {
    let mut out = GenSeries::one(bound, rational_one());
    for (m, a) in factors {
        let e = v
            .get(m)
            .ok_or_else(|| Error::SignatureMismatch(format!("`{m}` is not a monomial of {}", v.signature())))?;
        out = out.mul(&a.pow(e)?);
    }
    Ok(out)
}

/// Names of the seven surface numbers as variables.
pub const SURFACE_VARIABLES: [&str; 7] = ["[L^2]", "[LK]", "[c1^2]", "[c2]", "[D^2]", "[DL]", "[DK]"];

/// Rewrites a polynomial in Chern-number variables of signature `(2, 1, [1])` in
/// terms of `L², LK, c1², c2, D², D·L, D·K`.
pub fn to_surface_names(p: &GradedPoly) -> Result<GradedPoly> {
    let sig = Signature::new(2, 1, alloc::vec![1]);
    let numbers = chern_number_vars(&sig);
    if p.vars() != &numbers {
        return Err(Error::SignatureMismatch("surface names need signature n=2 s=1 ranks=[1]".into()));
    }
    let target = VarSet::new(SURFACE_VARIABLES.iter().map(|s| (*s, 1)));
    let v = |i: usize, sign: i64| GradedPoly::var(&target, i).scale(&Rational::from_integer(sign.into()));
    let images: Vec<GradedPoly> = numbers
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "[c1E1^2]" => v(0, 1),
            "[c1T*c1E1]" => v(1, -1),
            "[c1T^2]" => v(2, 1),
            "[c2T]" => v(3, 1),
            "[c1D1^2]" => v(4, 1),
            "[c1D1*c1E1]" => v(5, 1),
            "[c1T*c1D1]" => v(6, -1),
            other => unreachable!("unexpected surface monomial {other}"),
        })
        .collect();
    Ok(p.substitute(&target, &images))
}
