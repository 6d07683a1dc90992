//! Invariants of isolated complete intersection singularities by linear algebra
//! in truncated local rings `O/m^{k+1}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{identifiers, parse_poly, Exponents, GradedPoly, RatMatrix, Rational, VarSet};
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION_CAP: u32 = 16;

/// A map germ `f = (f_1..f_q) : (C^N, 0) -> (C^q, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermMap {
    vars: Arc<VarSet>,
    components: Vec<GradedPoly>,
}

impl GermMap {
    pub fn new(components: Vec<GradedPoly>) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptySpec)?;
        let vars = first.vars().clone();
        for c in &components {
            if c.vars() != &vars {
                return Err(Error::InvalidState("germ components use different variables".into()));
            }
            if !c.constant_term().is_zero() {
                return Err(Error::InvalidState(format!("component `{c}` does not vanish at 0")));
            }
        }
        Ok(GermMap { vars, components })
    }

    /// Parses comma-separated components; variables are the identifiers sorted by name.
    pub fn parse(src: &str) -> Result<Self> {
        let mut names = identifiers(src);
        names.sort();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::parse_in(src, &names)
    }

    /// Parses comma-separated components over the given variables.
    pub fn parse_in(src: &str, names: &[&str]) -> Result<Self> {
        let vars = VarSet::unweighted(names.iter().copied());
        let mut comps = Vec::new();
        let mut offset = 0;
        for part in src.split(',') {
            let p = parse_poly(part, &vars).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
                other => other,
            })?;
            comps.push(p);
            offset += part.len() + 1;
        }
        Self::new(comps)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn components(&self) -> &[GradedPoly] {
        &self.components
    }

    pub fn is_hypersurface(&self) -> bool {
        self.components.len() == 1
    }

    /// Dimension `p = N - q` of the germ.
    pub fn dim_p(&self) -> i64 {
        self.num_vars() as i64 - self.components.len() as i64
    }

    /// Applies `x_i -> images[i]`.
    pub fn substitute(&self, images: &[GradedPoly]) -> Result<Self> {
        Self::new(self.components.iter().map(|c| c.substitute(&self.vars, images)).collect())
    }
}

impl core::fmt::Display for GermMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ICISInvariants {
    pub tau: u32,
    pub determinacy_bound: u32,
    pub length_n: u32,
    pub dim_p: i64,
}

/// All exponent vectors in `n` variables of total degree at most `k`.
pub fn monomials_up_to(n: usize, k: u32) -> Vec<Exponents> {
    fn rec(n: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `dim O^q / (M + m^{k+1} O^q)` where `M` is generated by the given vectors.
fn module_quotient_dim(gens: &[Vec<GradedPoly>], q: usize, n: usize, k: u32) -> u32 {
    let monos = monomials_up_to(n, k);
    let index: BTreeMap<&Exponents, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let width = q * monos.len();
    let vars = VarSet::unweighted((0..n).map(|i| format!("x{i}")));
    let mut rows = Vec::new();
    for g in gens {
        assert_eq!(g.len(), q);
        let Some(ord) = g.iter().filter_map(GradedPoly::order).min() else { continue };
        if ord > k {
            continue;
        }
        for m in monos.iter().filter(|m| m.iter().sum::<u32>() + ord <= k) {
            let mono = GradedPoly::monomial(&vars, m.clone(), Rational::from_integer(1.into()));
            let mut row = vec![Rational::zero(); width];
            for (l, comp) in g.iter().enumerate() {
                for (e, c) in comp.mul_truncated(&mono, k).terms() {
                    row[l * monos.len() + index[e]] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return width as u32;
    }
    let rank = RatMatrix::from_rows(rows).expect("rows share width").rank();
    (width - rank) as u32
}

fn rebase(p: &GradedPoly, n: usize) -> GradedPoly {
    let vars = VarSet::unweighted((0..n).map(|i| format!("x{i}")));
    GradedPoly::from_terms(&vars, p.terms().map(|(e, c)| (e.clone(), c.clone())))
}

/// `dim O/(<gens> + m^{k+1})` in `num_vars` variables.
pub fn truncated_quotient_dim(gens: &[GradedPoly], num_vars: usize, k: u32) -> u32 {
    let gens: Vec<Vec<GradedPoly>> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.vars().len(), num_vars, "generator variable count");
            vec![rebase(g, num_vars)]
        })
        .collect();
    module_quotient_dim(&gens, 1, num_vars, k)
}

/// Raises `k` until `dim(k) == dim(k-1)`; then `m^k` lies in the submodule.
fn stabilize(max: u32, mut dim: impl FnMut(u32) -> u32) -> Result<u32> {
    let mut prev = dim(1);
    for k in 2..=max.max(2) {
        let d = dim(k);
        if d == prev {
            return Ok(d);
        }
        prev = d;
    }
    Err(Error::NoStabilization(max))
}

/// `τ(f) = dim O^q / (Df·O^N + <f_1..f_q> O^q)`.
pub fn tjurina(f: &GermMap, max_truncation: u32) -> Result<u32> {
    let n = f.num_vars();
    let q = f.components.len();
    let comps: Vec<GradedPoly> = f.components.iter().map(|c| rebase(c, n)).collect();
    let mut gens: Vec<Vec<GradedPoly>> =
        (0..n).map(|i| comps.iter().map(|c| c.derivative(i)).collect()).collect();
    let zero = GradedPoly::zero(comps[0].vars());
    for c in &comps {
        for l in 0..q {
            let mut v = vec![zero.clone(); q];
            v[l] = c.clone();
            gens.push(v);
        }
    }
    stabilize(max_truncation, |k| module_quotient_dim(&gens, q, n, k))
}

/// Milnor number `dim O/J(f)` of a hypersurface germ.
pub fn milnor(f: &GermMap, max_truncation: u32) -> Result<u32> {
    if !f.is_hypersurface() {
        return Err(Error::Unsupported("Milnor number of a non-hypersurface germ".into()));
    }
    let n = f.num_vars();
    let c = rebase(&f.components[0], n);
    let gens: Vec<Vec<GradedPoly>> = (0..n).map(|i| vec![c.derivative(i)]).collect();
    stabilize(max_truncation, |k| module_quotient_dim(&gens, 1, n, k))
}

/// Smallest `k` with `m^{k+1} ⊆ m^2 J(f) + m <f>`; an upper bound for the
/// degree of determinacy of a hypersurface germ.
pub fn determinacy_bound(f: &GermMap) -> Result<u32> {
    determinacy_bound_capped(f, DEFAULT_TRUNCATION_CAP)
}

pub fn determinacy_bound_capped(f: &GermMap, cap: u32) -> Result<u32> {
    if !f.is_hypersurface() {
        return Err(Error::Unsupported("determinacy bound for a germ with several components".into()));
    }
    let n = f.num_vars();
    let c = rebase(&f.components[0], n);
    let vars = c.vars().clone();
    let x = |i: usize| GradedPoly::var(&vars, i);
    let mut gens = Vec::new();
    for i in 0..n {
        let d = c.derivative(i);
        for a in 0..n {
            for b in a..n {
                gens.push(vec![&(&x(a) * &x(b)) * &d]);
            }
        }
        gens.push(vec![&x(i) * &c]);
    }
    let mut dims: BTreeMap<u32, u32> = BTreeMap::new();
    let mut dim = |k: u32| *dims.entry(k).or_insert_with(|| module_quotient_dim(&gens, 1, n, k));
    for k in 1..=cap {
        if dim(k + 1) == dim(k) {
            return Ok(k);
        }
    }
    Err(Error::NoBound(cap))
}

/// Length of `O/(<f> + m^{k+1})`.
pub fn length_n(f: &GermMap, k: u32) -> u32 {
    truncated_quotient_dim(&f.components, f.num_vars(), k)
}

/// τ, the determinacy bound (or `k_override`) and `N` at that bound.
pub fn invariants(f: &GermMap, k_override: Option<u32>) -> Result<ICISInvariants> {
    let tau = tjurina(f, DEFAULT_TRUNCATION_CAP)?;
    let k = match k_override {
        Some(k) => k,
        None => determinacy_bound(f)?,
    };
    Ok(ICISInvariants { tau, determinacy_bound: k, length_n: length_n(f, k), dim_p: f.dim_p() })
}

/// Parsed singularity label: `A<n>`, `D<n>`, `E6|E7|E8` or `tan<k>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    A(u32),
    D(u32),
    E(u32),
    Tan(u32),
}

impl Label {
    pub fn parse(s: &str) -> Result<Label> {
        let unknown = || Error::UnknownLabel(s.to_string());
        let (kind, num) = if let Some(rest) = s.strip_prefix("tan") {
            ("tan", rest)
        } else if let Some(i) = s.find(|c: char| c.is_ascii_digit()) {
            (&s[..i], &s[i..])
        } else {
            return Err(unknown());
        };
        let k: u32 = num.trim_start_matches('_').parse().map_err(|_| unknown())?;
        match kind {
            "A" if k >= 1 => Ok(Label::A(k)),
            "D" if k >= 4 => Ok(Label::D(k)),
            "E" if (6..=8).contains(&k) => Ok(Label::E(k)),
            "tan" if k >= 1 => Ok(Label::Tan(k)),
            _ => Err(unknown()),
        }
    }

    /// Tangency labels live on the divisor; the rest are interior singularities.
    pub fn is_tangency(&self) -> bool {
        matches!(self, Label::Tan(_))
    }

    /// Known Tjurina number.
    pub fn tau(&self) -> u32 {
        match *self {
            Label::A(n) | Label::D(n) | Label::E(n) => n,
            Label::Tan(k) => k - 1,
        }
    }

    /// Normal form: plane curve germs for ADE, `t^k` for tangency of order k.
    pub fn germ(&self) -> GermMap {
        let src = match *self {
            Label::A(n) => format!("x^{} + y^2", n + 1),
            Label::D(n) => format!("x^2*y + y^{}", n - 1),
            Label::E(6) => "x^3 + y^4".to_string(),
            Label::E(7) => "x^3 + x*y^3".to_string(),
            Label::E(_) => "x^3 + y^5".to_string(),
            Label::Tan(k) => format!("t^{k}"),
        };
        GermMap::parse(&src).expect("normal forms parse")
    }
}

impl core::fmt::Display for Label {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Label::A(n) => write!(f, "A{n}"),
            Label::D(n) => write!(f, "D{n}"),
            Label::E(n) => write!(f, "E{n}"),
            Label::Tan(k) => write!(f, "tan{k}"),
        }
    }
}

/// `τ` of a label string.
pub fn label_tau(label: &str) -> Result<u32> {
    Label::parse(label).map(|l| l.tau())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyProblem {
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub n: u32,
}

/// `codim(α, β) = (n-1)|α| + τ(α) + τ(β)`.
pub fn codim_tangency(p: &TangencyProblem) -> Result<u32> {
    let tau_sum = |ls: &[String]| ls.iter().map(|l| label_tau(l)).sum::<Result<u32>>();
    Ok((p.n.saturating_sub(1)) * p.alpha.len() as u32 + tau_sum(&p.alpha)? + tau_sum(&p.beta)?)
}

/// Total Tjurina number of a collection of singularities.
pub fn total_tau(labels: &[String]) -> Result<u32> {
    labels.iter().map(|l| label_tau(l)).sum()
}

/// Labels of the shipped singularity table.
pub const STANDARD_LABELS: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6", "E7", "E8", "tan2", "tan3", "tan4", "tan5",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityRow {
    pub label: String,
    pub germ: String,
    pub tau: u32,
    pub k: u32,
    pub length_n: u32,
}

/// Recomputes `(germ, τ, k, N)` for every label.
pub fn singularity_table(labels: &[&str]) -> Result<Vec<SingularityRow>> {
    labels
        .iter()
        .map(|s| {
            let l = Label::parse(s)?;
            let g = l.germ();
            let inv = invariants(&g, None)?;
            Ok(SingularityRow {
                label: l.to_string(),
                germ: g.to_string(),
                tau: inv.tau,
                k: inv.determinacy_bound,
                length_n: inv.length_n,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GermMap {
        GermMap::parse(s).unwrap()
    }

    #[test]
    fn quotient_dims() {
        let x = GermMap::parse("x").unwrap();
        assert_eq!(truncated_quotient_dim(x.components(), 1, 3), 1);
        assert_eq!(truncated_quotient_dim(g("x^2+y^2").components(), 2, 2), 5);
        assert_eq!(truncated_quotient_dim(&[], 2, 1), 3);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }

    #[test]
    fn tjurina_examples() {
        assert_eq!(tjurina(&g("x^2+y^2"), 10).unwrap(), 1);
        for k in 2..7 {
            assert_eq!(tjurina(&g(&format!("t^{k}")), 12).unwrap(), k - 1);
        }
        assert_eq!(tjurina(&g("x^3+y^3"), 10).unwrap(), 4);
    }

    #[test]
    fn tau_differs_from_mu_off_quasi_homogeneous() {
        let f = g("x^5 + y^5 + x^3*y^3");
        assert_eq!(milnor(&f, 16).unwrap(), 16);
        assert_eq!(tjurina(&f, 16).unwrap(), 15);
    }

    #[test]
    fn complete_intersection_tau() {
        let f = g("x^2 + y^2 + z^2, y");
        assert_eq!(f.dim_p(), 1);
        assert_eq!(tjurina(&f, 10).unwrap(), 1);
    }

    #[test]
    fn non_isolated_reports() {
        assert_eq!(tjurina(&g("x^2"), 6).unwrap(), 1);
        let f = GermMap::parse_in("x^2", &["x", "y"]).unwrap();
        assert_eq!(tjurina(&f, 6), Err(Error::NoStabilization(6)));
    }

    #[test]
    fn determinacy_examples() {
        assert_eq!(determinacy_bound(&g("x^2+y^2")).unwrap(), 2);
        for k in 2..7 {
            assert_eq!(determinacy_bound(&g(&format!("t^{k}"))).unwrap(), k);
        }
        assert_eq!(determinacy_bound(&g("x^3+y^3")).unwrap(), 3);
        assert!(matches!(determinacy_bound(&g("x^2, y")), Err(Error::Unsupported(_))));
        let f = GermMap::parse_in("x^2", &["x", "y"]).unwrap();
        assert_eq!(determinacy_bound_capped(&f, 5), Err(Error::NoBound(5)));
    }

    #[test]
    fn lengths() {
        assert_eq!(length_n(&g("x^2+y^2"), 2), 5);
        assert_eq!(length_n(&g("t^2"), 2), 2);
        assert_eq!(length_n(&GermMap::parse_in("x", &["x", "y"]).unwrap(), 1), 2);
    }

    #[test]
    fn labels_and_codim() {
        assert_eq!(label_tau("A3").unwrap(), 3);
        assert_eq!(label_tau("D4").unwrap(), 4);
        assert_eq!(label_tau("tan2").unwrap(), 1);
        assert!(matches!(label_tau("Q9"), Err(Error::UnknownLabel(_))));
        assert!(matches!(label_tau("D3"), Err(Error::UnknownLabel(_))));
        let p = |a: &[&str], b: &[&str], n| TangencyProblem {
            alpha: a.iter().map(|s| s.to_string()).collect(),
            beta: b.iter().map(|s| s.to_string()).collect(),
            n,
        };
        assert_eq!(codim_tangency(&p(&[], &["tan2"], 5)).unwrap(), 1);
        for n in 2..6 {
            for k in 2..6 {
                assert_eq!(codim_tangency(&p(&[&format!("tan{k}")], &[], n)).unwrap(), n + k - 2);
            }
        }
        assert_eq!(codim_tangency(&p(&[], &[], 3)).unwrap(), 0);
    }

    #[test]
    fn label_tau_matches_germ() {
        for s in STANDARD_LABELS {
            let l = Label::parse(s).unwrap();
            assert_eq!(tjurina(&l.germ(), 16).unwrap(), l.tau(), "{s}");
        }
    }

    #[test]
    fn rejects_bad_germs() {
        assert!(matches!(GermMap::parse("x + 1"), Err(Error::InvalidState(_))));
        assert!(matches!(GermMap::parse("x +* y"), Err(Error::Parse { .. })));
        assert!(matches!(GermMap::parse("x, y +"), Err(Error::Parse { pos: 6, .. })));
    }
}
