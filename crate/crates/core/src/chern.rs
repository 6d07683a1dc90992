//! Chow rings of towers of split projective bundles and exact Chern numbers.
//!
//! A tower is built stage by stage. A projective stage `P^m` adds a generator
//! `h` with `h^{m+1} = 0`; a bundle stage `P(L_1 ⊕ … ⊕ L_r)` over the tower so
//! far adds `ξ = c_1(O(1))` (projectivization of lines) with
//! `Σ_i c_i(E) ξ^{r-i} = 0`. Relations are triangular in stage order, so the
//! normal form of a class has every generator exponent below its stage's bound
//! and the only normal monomial of top degree is the product of the stage-wise
//! top powers `h^m`, `ξ^{r-1}`, whose integral is one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Sub};

use num_traits::Zero;

use crate::algebra::{int, Exponents, GradedPoly, Rational, VarSet};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_chern_monomials, ChernMonomial, Partition, Signature};

/// A line bundle given by integer coefficients of its first Chern class over the
/// tower generators; missing trailing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineBundleExpr(pub Vec<i64>);

impl LineBundleExpr {
    pub fn trivial() -> Self {
        LineBundleExpr(Vec::new())
    }

    /// `O(coeff · g_index)`.
    pub fn generator(index: usize, coeff: i64) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = coeff;
        LineBundleExpr(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Index of the last generator with a nonzero coefficient.
    fn support_end(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1)
    }

    pub fn c1(&self, vars: &Arc<VarSet>) -> GradedPoly {
        let mut p = GradedPoly::zero(vars);
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                p = &p + &GradedPoly::var(vars, i).scale(&int(c));
            }
        }
        p
    }
}

impl Add for &LineBundleExpr {
    type Output = LineBundleExpr;
    fn add(self, rhs: &LineBundleExpr) -> LineBundleExpr {
        let n = self.0.len().max(rhs.0.len());
        LineBundleExpr((0..n).map(|i| self.0.get(i).unwrap_or(&0) + rhs.0.get(i).unwrap_or(&0)).collect())
    }
}

impl Sub for &LineBundleExpr {
    type Output = LineBundleExpr;
    fn sub(self, rhs: &LineBundleExpr) -> LineBundleExpr {
        let n = self.0.len().max(rhs.0.len());
        LineBundleExpr((0..n).map(|i| self.0.get(i).unwrap_or(&0) - rhs.0.get(i).unwrap_or(&0)).collect())
    }
}

/// A split bundle `L_1 ⊕ … ⊕ L_r`; rank zero is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BundleSpec {
    pub summands: Vec<LineBundleExpr>,
}

impl BundleSpec {
    pub fn new(summands: Vec<LineBundleExpr>) -> Self {
        BundleSpec { summands }
    }

    /// `O^r`.
    pub fn trivial(rank: usize) -> Self {
        BundleSpec { summands: vec![LineBundleExpr::trivial(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Direct sum.
    pub fn concat(&self, other: &BundleSpec) -> BundleSpec {
        BundleSpec { summands: self.summands.iter().chain(&other.summands).cloned().collect() }
    }

    /// Total Chern class `∏ (1 + c_1(L_i))`, unreduced.
    pub fn total_chern(&self, vars: &Arc<VarSet>) -> GradedPoly {
        self.summands
            .iter()
            .fold(GradedPoly::one(vars), |acc, l| &acc * &(&GradedPoly::one(vars) + &l.c1(vars)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// A factor `P^dim` pulled back from a point.
    Projective { dim: u32 },
    /// Projectivization (of lines) of a split bundle on the tower built so far.
    Bundle { spec: BundleSpec },
}

impl Stage {
    fn fiber_dim(&self) -> u32 {
        match self {
            Stage::Projective { dim } => *dim,
            Stage::Bundle { spec } => spec.rank() as u32 - 1,
        }
    }
}

/// Chow ring presentation of a tower of split projective bundles.
#[derive(Clone)]
pub struct TowerVariety {
    stages: Vec<Stage>,
    vars: Arc<VarSet>,
    /// `g_j^{bound_j}` is rewritten by `rewrite_j`.
    bounds: Vec<u32>,
    rewrites: Vec<GradedPoly>,
    dimension: u32,
}

impl TowerVariety {
    pub fn point() -> Self {
        Self::from_stages(Vec::new()).expect("empty tower is valid")
    }

    /// Builds the tower stage by stage, validating that every bundle stage only
    /// refers to generators of earlier stages.
    pub fn from_stages(stages: Vec<Stage>) -> Result<Self> {
        let names: Vec<String> = stages
            .iter()
            .enumerate()
            .map(|(j, s)| match s {
                Stage::Projective { .. } => format!("h{}", j + 1),
                Stage::Bundle { .. } => format!("z{}", j + 1),
            })
            .collect();
        let vars = VarSet::unweighted(names);
        let mut bounds = Vec::with_capacity(stages.len());
        let mut rewrites = Vec::with_capacity(stages.len());
        for (j, stage) in stages.iter().enumerate() {
            match stage {
                Stage::Projective { dim } => {
                    bounds.push(dim + 1);
                    rewrites.push(GradedPoly::zero(&vars));
                }
                Stage::Bundle { spec } => {
                    if spec.rank() == 0 {
                        return Err(Error::EmptySpec);
                    }
                    if let Some(l) = spec.summands.iter().find(|l| l.support_end() > j) {
                        return Err(Error::InvalidIndex(format!(
                            "summand {l:?} of stage {} refers to a later generator",
                            j + 1
                        )));
                    }
                    let r = spec.rank() as u32;
                    let total = spec.total_chern(&vars);
                    let xi = GradedPoly::var(&vars, j);
                    // ξ^r = -Σ_{i≥1} c_i ξ^{r-i}
                    let mut rhs = GradedPoly::zero(&vars);
                    for i in 1..=r {
                        let ci = total.homogeneous_part(i);
                        rhs = &rhs - &(&ci * &xi.pow(r - i));
                    }
                    bounds.push(r);
                    rewrites.push(rhs);
                }
            }
        }
        let dimension = stages.iter().map(Stage::fiber_dim).sum();
        Ok(TowerVariety { stages, vars, bounds, rewrites, dimension })
    }

    /// `P^{λ_1} × … × P^{λ_l}`.
    pub fn projective_product(lambda: &Partition) -> Self {
        Self::from_stages(lambda.parts().iter().map(|&m| Stage::Projective { dim: m }).collect())
            .expect("products of projective spaces are valid towers")
    }

    /// `P(spec)` over `self`.
    pub fn projective_bundle(&self, spec: BundleSpec) -> Result<Self> {
        let mut stages = self.stages.clone();
        stages.push(Stage::Bundle { spec });
        Self::from_stages(stages)
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn num_generators(&self) -> usize {
        self.stages.len()
    }

    /// Generator of stage `j` (zero based) as a class.
    pub fn generator(&self, j: usize) -> GradedPoly {
        GradedPoly::var(&self.vars, j)
    }

    /// Exponents of the point class monomial.
    pub fn point_monomial(&self) -> Exponents {
        self.bounds.iter().map(|b| b - 1).collect()
    }

    /// Reduces a class to normal form; terms above the dimension are dropped.
    pub fn reduce(&self, p: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.vars);
        let mut work: Vec<(Exponents, Rational)> =
            p.truncate(self.dimension).terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        while let Some((e, c)) = work.pop() {
            let Some(j) = (0..e.len()).rev().find(|&j| e[j] >= self.bounds[j]) else {
                out.add_term(e, c);
                continue;
            };
            let mut rest = e;
            rest[j] -= self.bounds[j];
            let scaled = self.rewrites[j].scale(&c);
            for (f, d) in scaled.terms() {
                let g: Exponents = rest.iter().zip(f).map(|(a, b)| a + b).collect();
                work.push((g, d.clone()));
            }
        }
        out
    }

    /// Product in the Chow ring.
    pub fn mul(&self, a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
        self.reduce(&a.mul_truncated(b, self.dimension))
    }

    pub fn pow(&self, a: &GradedPoly, k: u32) -> GradedPoly {
        let mut acc = GradedPoly::one(&self.vars);
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Degree of the top-dimensional part of `p`.
    pub fn integrate(&self, p: &GradedPoly) -> Rational {
        self.reduce(&p.homogeneous_part(self.dimension)).coeff(&self.point_monomial())
    }

    /// Total Chern class of the tangent bundle, in normal form.
    ///
    /// Uses the Euler sequences: `(1+h)^{m+1}` for a `P^m` factor and
    /// `∏_i (1 + ξ + c_1(L_i))` for a bundle stage.
    pub fn total_chern_tangent(&self) -> GradedPoly {
        let one = GradedPoly::one(&self.vars);
        let mut total = one.clone();
        for (j, stage) in self.stages.iter().enumerate() {
            let g = self.generator(j);
            match stage {
                Stage::Projective { dim } => {
                    let f = &one + &g;
                    for _ in 0..=*dim {
                        total = self.mul(&total, &f);
                    }
                }
                Stage::Bundle { spec } => {
                    for l in &spec.summands {
                        let f = &(&one + &g) + &l.c1(&self.vars);
                        total = self.mul(&total, &f);
                    }
                }
            }
        }
        total
    }

    /// Canonical class `-c_1(T)`.
    pub fn canonical_class(&self) -> GradedPoly {
        -&self.total_chern_tangent().homogeneous_part(1)
    }

    /// Topological Euler number `∫ c_top(T)`.
    pub fn euler_number(&self) -> Rational {
        self.integrate(&self.total_chern_tangent())
    }
}

impl fmt::Debug for TowerVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Human-readable description such as `P^1 x P^1` or `P^1 > P(O + O(-h1))`.
impl fmt::Display for TowerVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stages.is_empty() {
            return f.write_str("pt");
        }
        for (j, stage) in self.stages.iter().enumerate() {
            match stage {
                Stage::Projective { dim } => {
                    if j > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "P^{dim}")?;
                }
                Stage::Bundle { spec } => {
                    f.write_str(if j > 0 { " > P(" } else { "P(" })?;
                    for (i, l) in spec.summands.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" + ")?;
                        }
                        if l.is_trivial() {
                            f.write_str("O")?;
                        } else {
                            write!(f, "O({})", l.c1(&self.vars))?;
                        }
                    }
                    f.write_str(")")?;
                }
            }
        }
        Ok(())
    }
}

/// Chern numbers of a triple (variety, divisors, bundles), one per monomial of
/// the signature.
#[derive(Clone, PartialEq, Eq)]
pub struct ChernVector {
    signature: Signature,
    values: BTreeMap<ChernMonomial, Rational>,
}

impl ChernVector {
    /// Requires a value for every monomial of `signature` and nothing else.
    pub fn new(signature: Signature, values: BTreeMap<ChernMonomial, Rational>) -> Result<Self> {
        let monomials = enumerate_chern_monomials(&signature);
        if values.len() != monomials.len() || !monomials.iter().all(|m| values.contains_key(m)) {
            let missing: Vec<String> =
                monomials.iter().filter(|m| !values.contains_key(m)).map(ChernMonomial::name).collect();
            return Err(Error::SignatureMismatch(format!(
                "Chern vector for {signature} needs {} values; missing [{}]",
                monomials.len(),
                missing.join(", ")
            )));
        }
        Ok(ChernVector { signature, values })
    }

    /// Values listed in the order of [`enumerate_chern_monomials`].
    pub fn from_values(signature: Signature, values: Vec<Rational>) -> Result<Self> {
        let monomials = enumerate_chern_monomials(&signature);
        if monomials.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: monomials.len(), found: values.len() });
        }
        Ok(ChernVector { signature, values: monomials.into_iter().zip(values).collect() })
    }

    pub fn zero(signature: Signature) -> Self {
        let values = enumerate_chern_monomials(&signature).into_iter().map(|m| (m, Rational::zero())).collect();
        ChernVector { signature, values }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn get(&self, m: &ChernMonomial) -> Option<&Rational> {
        self.values.get(m)
    }

    /// Value by canonical monomial name.
    pub fn get_named(&self, name: &str) -> Result<Rational> {
        let m = ChernMonomial::parse(name, &self.signature)?;
        self.values.get(&m).cloned().ok_or_else(|| Error::SignatureMismatch(format!("no monomial `{name}`")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ChernMonomial, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in the order of [`enumerate_chern_monomials`].
    pub fn to_values(&self) -> Vec<Rational> {
        enumerate_chern_monomials(&self.signature).iter().map(|m| self.values[m].clone()).collect()
    }

    pub fn check_same_signature(&self, other: &ChernVector) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(format!("{} vs {}", self.signature, other.signature)));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> ChernVector {
        ChernVector {
            signature: self.signature.clone(),
            values: self.values.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn zip_with(&self, other: &ChernVector, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<ChernVector> {
        self.check_same_signature(other)?;
        Ok(ChernVector {
            signature: self.signature.clone(),
            values: self.values.iter().map(|(m, v)| (m.clone(), f(v, &other.values[m]))).collect(),
        })
    }

    pub fn try_add(&self, other: &ChernVector) -> Result<ChernVector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ChernVector) -> Result<ChernVector> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Mutable access used by tests and perturbation checks.
    pub fn set(&mut self, m: &ChernMonomial, v: Rational) -> Result<()> {
        match self.values.get_mut(m) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(Error::SignatureMismatch(format!("no monomial `{m}` in {}", self.signature))),
        }
    }
}

impl fmt::Debug for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChernVector[{}]{{", self.signature)?;
        for (i, (m, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}: {v}")?;
        }
        f.write_str("}")
    }
}

/// A variety with divisor classes and split bundles: the input of [`chern_vector`].
#[derive(Clone, Debug)]
pub struct Geometry {
    pub tower: TowerVariety,
    pub divisors: Vec<LineBundleExpr>,
    pub bundles: Vec<BundleSpec>,
}

impl Geometry {
    pub fn new(tower: TowerVariety, divisors: Vec<LineBundleExpr>, bundles: Vec<BundleSpec>) -> Self {
        Geometry { tower, divisors, bundles }
    }

    pub fn signature(&self) -> Signature {
        Signature::new(
            self.tower.dimension(),
            self.divisors.len() as u32,
            self.bundles.iter().map(|b| b.rank() as u32).collect(),
        )
    }

    pub fn chern_vector(&self) -> Result<ChernVector> {
        let vars = self.tower.vars();
        for l in self.divisors.iter().chain(self.bundles.iter().flat_map(|b| &b.summands)) {
            if l.support_end() > self.tower.num_generators() {
                return Err(Error::SignatureMismatch(format!(
                    "{l:?} refers to generators beyond the {} of the tower",
                    self.tower.num_generators()
                )));
            }
        }
        let divisors: Vec<GradedPoly> = self.divisors.iter().map(|d| d.c1(vars)).collect();
        chern_vector(&self.tower, &divisors, &self.bundles)
    }

    /// Chern vector, insisting on an expected signature.
    pub fn chern_vector_for(&self, sig: &Signature) -> Result<ChernVector> {
        if &self.signature() != sig {
            return Err(Error::SignatureMismatch(format!("geometry has {} but {sig} was requested", self.signature())));
        }
        self.chern_vector()
    }
}

/// All Chern numbers of `(v, divisors, bundles)` for the signature
/// `(dim v, #divisors, ranks)`, computed by the splitting principle.
pub fn chern_vector(v: &TowerVariety, divisors: &[GradedPoly], bundles: &[BundleSpec]) -> Result<ChernVector> {
    let vars = v.vars();
    for d in divisors {
        if d.vars() != vars && **d.vars() != **vars {
            return Err(Error::SignatureMismatch("divisor class lives outside the tower".into()));
        }
        if !d.is_homogeneous_of(1) {
            return Err(Error::SignatureMismatch(format!("divisor class {d} is not of degree 1")));
        }
    }
    let sig = Signature::new(v.dimension(), divisors.len() as u32, bundles.iter().map(|b| b.rank() as u32).collect());
    let n = sig.n;
    let tangent = v.total_chern_tangent();
    let tangent_classes: Vec<GradedPoly> = (0..=n).map(|i| tangent.homogeneous_part(i)).collect();
    let bundle_classes: Vec<Vec<GradedPoly>> = bundles
        .iter()
        .map(|b| {
            let total = v.reduce(&b.total_chern(vars));
            (0..=b.rank() as u32).map(|i| total.homogeneous_part(i)).collect()
        })
        .collect();
    let mut values = BTreeMap::new();
    for m in enumerate_chern_monomials(&sig) {
        let mut prod = GradedPoly::one(vars);
        for &i in m.tangent.parts() {
            prod = v.mul(&prod, &tangent_classes[i as usize]);
        }
        for (d, &a) in divisors.iter().zip(&m.divisors) {
            for _ in 0..a {
                prod = v.mul(&prod, d);
            }
        }
        for (classes, b) in bundle_classes.iter().zip(&m.bundles) {
            for &i in b.parts() {
                prod = v.mul(&prod, &classes[i as usize]);
            }
        }
        let value = v.integrate(&prod);
        values.insert(m, value);
    }
    ChernVector::new(sig, values)
}

/// For the surface signature `(2, 1, [1])`: the numbers
/// `(L², LK, c₁², c₂, D², deg L|_D, DK)` with `L = E_1` and `K = -c_1(T)`.
pub fn surface_numbers(v: &ChernVector) -> Result<[Rational; 7]> {
    if v.signature() != &Signature::new(2, 1, vec![1]) {
        return Err(Error::SignatureMismatch(format!("surface numbers need n=2 s=1 ranks=[1], got {}", v.signature())));
    }
    let g = |name: &str| v.get_named(name);
    Ok([
        g("c1E1^2")?,
        -g("c1T*c1E1")?,
        g("c1T^2")?,
        g("c2T")?,
        g("c1D1^2")?,
        g("c1D1*c1E1")?,
        -g("c1T*c1D1")?,
    ])
}

/// Conventional names of [`surface_numbers`].
pub const SURFACE_NUMBER_NAMES: [&str; 7] = ["L^2", "LK", "c1^2", "c2", "D^2", "deg(L|D)", "DK"];


#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;

    fn p2() -> TowerVariety {
        TowerVariety::projective_product(&Partition::from_parts([2]))
    }

    fn p1() -> TowerVariety {
        TowerVariety::projective_product(&Partition::from_parts([1]))
    }

    fn hirzebruch_one() -> TowerVariety {
        p1().projective_bundle(BundleSpec::new(vec![LineBundleExpr::trivial(), LineBundleExpr::generator(0, -1)]))
            .unwrap()
    }

    #[test]
    fn towers_shapes() {
        let t = p2();
        assert_eq!(t.dimension(), 2);
        assert_eq!(t.num_generators(), 1);
        let h = t.generator(0);
        assert!(t.reduce(&h.pow(3)).is_zero());
        assert_eq!(TowerVariety::projective_product(&Partition::from_parts([1, 1])).num_generators(), 2);
        assert_eq!(TowerVariety::point().dimension(), 0);
    }

    #[test]
    fn p2_tangent() {
        let t = p2();
        let c = t.total_chern_tangent();
        assert_eq!(c.coeff(&[0]), int(1));
        assert_eq!(c.coeff(&[1]), int(3));
        assert_eq!(c.coeff(&[2]), int(3));
        assert_eq!(c.len(), 3);
        assert_eq!(TowerVariety::point().total_chern_tangent(), GradedPoly::one(TowerVariety::point().vars()));
    }

    #[test]
    fn p1xp1_tangent_is_product() {
        let t = TowerVariety::projective_product(&Partition::from_parts([1, 1]));
        let one = GradedPoly::one(t.vars());
        let a = &one + &t.generator(0);
        let b = &one + &t.generator(1);
        let expected = t.reduce(&(&a.pow(2) * &b.pow(2)));
        assert_eq!(t.total_chern_tangent(), expected);
    }

    #[test]
    fn hirzebruch_relation() {
        let f1 = hirzebruch_one();
        let (f, xi) = (f1.generator(0), f1.generator(1));
        // ξ² = f ξ and f² = 0
        assert_eq!(f1.reduce(&xi.pow(2)), &f * &xi);
        assert!(f1.reduce(&f.pow(2)).is_zero());
        assert_eq!(f1.integrate(&xi.pow(2)), int(1));
        let e = &xi - &f;
        assert_eq!(f1.integrate(&e.pow(2)), int(-1));
    }

    #[test]
    fn trivial_bundle_over_point_is_p1() {
        let t = TowerVariety::point().projective_bundle(BundleSpec::trivial(2)).unwrap();
        assert_eq!(t.dimension(), 1);
        assert_eq!(t.euler_number(), int(2));
    }

    #[test]
    fn empty_spec_rejected() {
        assert!(matches!(p1().projective_bundle(BundleSpec::trivial(0)), Err(Error::EmptySpec)));
        let bad = BundleSpec::new(vec![LineBundleExpr::generator(3, 1)]);
        assert!(p1().projective_bundle(bad).is_err());
    }

    #[test]
    fn integrals() {
        let t = p2();
        let c = t.total_chern_tangent();
        let c1 = c.homogeneous_part(1);
        assert_eq!(t.integrate(&c.homogeneous_part(2)), int(3));
        assert_eq!(t.integrate(&t.mul(&c1, &c1)), int(9));
        let q = TowerVariety::projective_product(&Partition::from_parts([1, 1]));
        let c1 = q.total_chern_tangent().homogeneous_part(1);
        assert_eq!(q.integrate(&q.mul(&c1, &c1)), int(8));
        let f1 = hirzebruch_one();
        let c1 = f1.total_chern_tangent().homogeneous_part(1);
        assert_eq!(f1.integrate(&f1.mul(&c1, &c1)), int(8));
        // lower-degree parts integrate to zero
        assert_eq!(t.integrate(&t.generator(0)), int(0));
    }

    #[test]
    fn euler_numbers() {
        for m in 1..=5u32 {
            let t = TowerVariety::projective_product(&Partition::from_parts([m]));
            assert_eq!(t.euler_number(), int(m as i64 + 1));
        }
        assert_eq!(TowerVariety::projective_product(&Partition::from_parts([1, 1])).euler_number(), int(4));
        assert_eq!(hirzebruch_one().euler_number(), int(4));
        assert_eq!(TowerVariety::point().euler_number(), int(1));
    }

    #[test]
    fn plane_with_line_and_degree_d_bundle() {
        for d in [-2i64, 0, 1, 3, 7] {
            let g = Geometry::new(
                p2(),
                vec![LineBundleExpr::generator(0, 1)],
                vec![BundleSpec::new(vec![LineBundleExpr::generator(0, d)])],
            );
            let v = g.chern_vector().unwrap();
            let nums = surface_numbers(&v).unwrap();
            assert_eq!(nums, [int(d * d), int(-3 * d), int(9), int(3), int(1), int(d), int(-3)]);
        }
    }

    #[test]
    fn p1_with_o1() {
        let g = Geometry::new(p1(), vec![], vec![BundleSpec::new(vec![LineBundleExpr::generator(0, 1)])]);
        let v = g.chern_vector().unwrap();
        assert_eq!(v.get_named("c1T").unwrap(), int(2));
        assert_eq!(v.get_named("c1E1").unwrap(), int(1));
    }

    #[test]
    fn point_has_single_empty_monomial() {
        let v = Geometry::new(TowerVariety::point(), vec![], vec![]).chern_vector().unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.get_named("1").unwrap(), int(1));
    }

    #[test]
    fn whitney_sum() {
        let t = TowerVariety::projective_product(&Partition::from_parts([2, 1]));
        let a = BundleSpec::new(vec![LineBundleExpr(vec![1, -2]), LineBundleExpr(vec![0, 3])]);
        let b = BundleSpec::new(vec![LineBundleExpr(vec![2, 1])]);
        let lhs = t.reduce(&a.concat(&b).total_chern(t.vars()));
        let rhs = t.mul(&a.total_chern(t.vars()), &b.total_chern(t.vars()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn f0_product_and_tower_agree() {
        let product = TowerVariety::projective_product(&Partition::from_parts([1, 1]));
        let tower = p1().projective_bundle(BundleSpec::trivial(2)).unwrap();
        // matching classes: fibre class h1 ↔ f, ruling class h2 ↔ ξ
        let bundle = |a: i64, b: i64| BundleSpec::new(vec![LineBundleExpr(vec![a, b]), LineBundleExpr(vec![b, 0])]);
        let g1 = Geometry::new(product, vec![LineBundleExpr(vec![1, 1])], vec![bundle(2, -1)]);
        let g2 = Geometry::new(tower, vec![LineBundleExpr(vec![1, 1])], vec![bundle(2, -1)]);
        assert_eq!(g1.chern_vector().unwrap(), g2.chern_vector().unwrap());
    }

    #[test]
    fn signature_guards() {
        let g = Geometry::new(p1(), vec![LineBundleExpr::generator(2, 1)], vec![]);
        assert!(matches!(g.chern_vector(), Err(Error::SignatureMismatch(_))));
        let g = Geometry::new(p1(), vec![], vec![]);
        assert!(g.chern_vector_for(&Signature::new(1, 1, vec![])).is_err());
        assert!(surface_numbers(&g.chern_vector().unwrap()).is_err());
    }
}
