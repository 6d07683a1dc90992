//! Partitions, partition lists and Chern monomials.
//!
//! A *signature* `(n, s, r_1..r_k)` fixes the dimension `n`, the number of
//! divisors `s` and the ranks of the bundles. Divisors behave as rank-one
//! bundles placed before the `E_j` in every list, so most routines work on the
//! combined list ranks `[1; s] ++ ranks`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Default bound on `n` for enumeration front ends.
pub const DEFAULT_MAX_N: u32 = 12;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts already in weakly decreasing order.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndex(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of parts equal to `v`.
    pub fn multiplicity(&self, v: u32) -> u32 {
        self.0.iter().filter(|&&p| p == v).count() as u32
    }

    /// Young-diagram transpose.
    pub fn transpose(&self) -> Self {
        let rows = self.largest();
        Partition((1..=rows).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Self {
        Partition::from_parts(self.0.iter().chain(&other.0).copied())
    }

    /// True when `sub` is obtained from `self` by deleting parts.
    pub fn contains_subpartition(&self, sub: &Partition) -> bool {
        let mut rest = self.0.clone();
        for p in &sub.0 {
            match rest.iter().position(|q| q == p) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        true
    }

    /// Distinct parts with multiplicities, largest first.
    pub fn value_counts(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `∅` for the empty partition, concatenated digits when every part is a single
/// digit (`21`, `111`), otherwise a bracketed list.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("∅")
        } else if self.0.iter().all(|&p| p < 10) {
            self.0.iter().try_for_each(|p| write!(f, "{p}"))
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

/// All partitions of `n` with parts at most `max_part`, in reverse lexicographic order.
pub fn partitions_bounded(n: u32, max_part: u32) -> Vec<Partition> {
    fn rec(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, largest first part first: `3 → [3, 21, 111]`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    partitions_bounded(n, n)
}

/// The data `(n, s, r_1..r_k)` fixing a cobordism group and its Chern monomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub n: u32,
    pub s: u32,
    pub ranks: Vec<u32>,
}

impl Signature {
    pub fn new(n: u32, s: u32, ranks: Vec<u32>) -> Self {
        Signature { n, s, ranks }
    }

    /// Like [`Signature::new`] but refuses `n` above `cap`.
    pub fn capped(n: u32, s: u32, ranks: Vec<u32>, cap: u32) -> Result<Self> {
        if n > cap {
            return Err(Error::CapExceeded { size: n, cap });
        }
        Ok(Self::new(n, s, ranks))
    }

    /// Ranks of the combined list: `s` ones for the divisors, then the bundles.
    pub fn list_ranks(&self) -> Vec<u32> {
        let mut r = vec![1; self.s as usize];
        r.extend_from_slice(&self.ranks);
        r
    }

    pub fn num_lists(&self) -> usize {
        self.s as usize + self.ranks.len()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} s={} ranks=[", self.n, self.s)?;
        for (i, r) in self.ranks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

/// An element `(λ; π_1..π_s; μ_1..μ_k)` of the index set of the cobordism basis.
///
/// Parts are stored as sorted multisets, so two lists differing by a permutation
/// of equal parts of `λ` compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionList {
    lambda: Partition,
    pis: Vec<Partition>,
    mus: Vec<Partition>,
}

impl PartitionList {
    /// Validates the list against the ranks `ranks` of the bundles.
    pub fn new(lambda: Partition, pis: Vec<Partition>, mus: Vec<Partition>, ranks: &[u32]) -> Result<Self> {
        if mus.len() != ranks.len() {
            return Err(Error::InvalidIndex(format!(
                "{} bundle partitions for {} ranks",
                mus.len(),
                ranks.len()
            )));
        }
        if let Some(p) = pis.iter().find(|p| p.len() > 1) {
            return Err(Error::InvalidIndex(format!("divisor partition {p} has more than one part")));
        }
        for (i, (m, &r)) in mus.iter().zip(ranks).enumerate() {
            if m.len() > r as usize {
                return Err(Error::InvalidIndex(format!("μ_{} = {m} is longer than rank {r}", i + 1)));
            }
        }
        let union = pis.iter().chain(&mus).fold(Partition::empty(), |acc, p| acc.union(p));
        if !lambda.contains_subpartition(&union) {
            return Err(Error::InvalidIndex(format!("{union} is not a subpartition of {lambda}")));
        }
        Ok(PartitionList { lambda, pis, mus })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn pis(&self) -> &[Partition] {
        &self.pis
    }

    pub fn mus(&self) -> &[Partition] {
        &self.mus
    }

    /// Divisor partitions followed by bundle partitions.
    pub fn lists(&self) -> impl Iterator<Item = &Partition> {
        self.pis.iter().chain(&self.mus)
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.lambda.size(), self.pis.len() as u32, self.mus.iter().map(|m| m.len() as u32).collect())
    }

    /// Checks that the list belongs to `sig`.
    pub fn check_signature(&self, sig: &Signature) -> Result<()> {
        if self.lambda.size() != sig.n || self.pis.len() != sig.s as usize || self.mus.len() != sig.ranks.len() {
            return Err(Error::InvalidIndex(format!("{self} does not belong to signature {sig}")));
        }
        for (m, &r) in self.mus.iter().zip(&sig.ranks) {
            if m.len() > r as usize {
                return Err(Error::InvalidIndex(format!("{m} is longer than rank {r}")));
            }
        }
        Ok(())
    }
}

/// Compact rendering `(21; 1; 2)`; the divisor block is omitted when `s = 0`.
impl fmt::Display for PartitionList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.lambda)?;
        if !self.pis.is_empty() {
            f.write_str(";")?;
            for (i, p) in self.pis.iter().enumerate() {
                write!(f, "{}{p}", if i == 0 { " " } else { ", " })?;
            }
        }
        if !self.mus.is_empty() {
            f.write_str(";")?;
            for (i, p) in self.mus.iter().enumerate() {
                write!(f, "{}{p}", if i == 0 { " " } else { ", " })?;
            }
        }
        f.write_str(")")
    }
}

/// Enumerates `P'_{n,s,ranks}`: one representative per equivalence class.
///
/// For every partition `λ` and every distinct part value, the copies of that
/// value are distributed among the `s + k` lists (at most the multiplicity in
/// total), subject to each list's length bound.
pub fn enumerate_partition_lists(sig: &Signature) -> Vec<PartitionList> {
    let caps = sig.list_ranks();
    let mut out = Vec::new();
    for lambda in enumerate_partitions(sig.n) {
        let values = lambda.value_counts();
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); caps.len()];
        distribute(&values, 0, &caps, &mut lists, &mut |lists| {
            let parts: Vec<Partition> = lists.iter().map(|l| Partition(l.clone())).collect();
            let (pis, mus) = parts.split_at(sig.s as usize);
            out.push(PartitionList { lambda: lambda.clone(), pis: pis.to_vec(), mus: mus.to_vec() });
        });
    }
    out
}

fn distribute(
    values: &[(u32, u32)],
    idx: usize,
    caps: &[u32],
    lists: &mut Vec<Vec<u32>>,
    emit: &mut dyn FnMut(&[Vec<u32>]),
) {
    let Some(&(value, mult)) = values.get(idx) else {
        emit(lists);
        return;
    };
    // every way of handing out at most `mult` copies of `value`, list by list
    fn assign(
        value: u32,
        left: u32,
        list: usize,
        caps: &[u32],
        lists: &mut Vec<Vec<u32>>,
        next: &mut dyn FnMut(&mut Vec<Vec<u32>>),
    ) {
        if list == caps.len() {
            next(lists);
            return;
        }
        let room = caps[list] - lists[list].len() as u32;
        for c in 0..=left.min(room) {
            for _ in 0..c {
                lists[list].push(value);
            }
            assign(value, left - c, list + 1, caps, lists, next);
            for _ in 0..c {
                lists[list].pop();
            }
        }
    }
    assign(value, mult, 0, caps, lists, &mut |lists| distribute(values, idx + 1, caps, lists, emit));
}

/// A monomial in `c_i(T)`, `c_1(O(D_j))` and `c_i(E_j)` of total weight `n`.
///
/// `tangent` lists the indices `i` of the `c_i(T)` factors, `divisors[j]` is the
/// exponent of `c_1(O(D_{j+1}))`, and `bundles[j]` lists the indices of the
/// `c_i(E_{j+1})` factors. This is exactly an element `(ν, μ_1..μ_k)` of the
/// set indexing the monomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernMonomial {
    pub tangent: Partition,
    pub divisors: Vec<u32>,
    pub bundles: Vec<Partition>,
}

impl ChernMonomial {
    pub fn weight(&self) -> u32 {
        self.tangent.size() + self.divisors.iter().sum::<u32>() + self.bundles.iter().map(Partition::size).sum::<u32>()
    }

    /// The per-list partitions with divisors first: a divisor exponent `a` becomes `1^a`.
    pub fn list_partitions(&self) -> Vec<Partition> {
        self.divisors
            .iter()
            .map(|&a| Partition(vec![1; a as usize]))
            .chain(self.bundles.iter().cloned())
            .collect()
    }

    pub fn from_list_partitions(tangent: Partition, lists: &[Partition], s: usize) -> Self {
        let divisors = lists[..s].iter().map(|p| p.len() as u32).collect();
        ChernMonomial { tangent, divisors, bundles: lists[s..].to_vec() }
    }

    /// Exponent vector `(a_1..a_r)` of the classes `c_i` of list `j` (divisors first).
    pub fn list_exponents(&self, j: usize, rank: u32) -> Vec<u32> {
        let p = &self.list_partitions()[j];
        (1..=rank).map(|i| p.multiplicity(i)).collect()
    }

    pub fn signature_matches(&self, sig: &Signature) -> bool {
        self.weight() == sig.n
            && self.divisors.len() == sig.s as usize
            && self.bundles.len() == sig.ranks.len()
            && self.tangent.largest() <= sig.n
            && self.bundles.iter().zip(&sig.ranks).all(|(b, &r)| b.largest() <= r)
    }

    /// Canonical name such as `c1T^2`, `c1D1*c1E1` or `1` for the empty monomial.
    pub fn name(&self) -> String {
        let mut factors: Vec<String> = Vec::new();
        let mut push = |sym: String, e: u32| {
            if e == 1 {
                factors.push(sym);
            } else if e > 1 {
                factors.push(format!("{sym}^{e}"));
            }
        };
        for (v, c) in self.tangent.value_counts().into_iter().rev() {
            push(format!("c{v}T"), c);
        }
        for (j, &a) in self.divisors.iter().enumerate() {
            push(format!("c1D{}", j + 1), a);
        }
        for (j, b) in self.bundles.iter().enumerate() {
            for (v, c) in b.value_counts().into_iter().rev() {
                push(format!("c{v}E{}", j + 1), c);
            }
        }
        if factors.is_empty() {
            String::from("1")
        } else {
            factors.join("*")
        }
    }

    /// Parses a canonical name (factor order is free; `c1D` abbreviates `c1D1`).
    pub fn parse(name: &str, sig: &Signature) -> Result<Self> {
        let mut tangent = Vec::new();
        let mut divisors = vec![0u32; sig.s as usize];
        let mut bundles: Vec<Vec<u32>> = vec![Vec::new(); sig.ranks.len()];
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let trimmed = name.trim();
        if trimmed != "1" {
            for factor in trimmed.split('*') {
                let factor = factor.trim();
                let (sym, exp) = match factor.split_once('^') {
                    Some((s, e)) => (s, e.trim().parse::<u32>().map_err(|_| bad(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                let sym = sym.trim();
                let rest = sym.strip_prefix('c').ok_or_else(|| bad(format!("unknown symbol `{sym}`")))?;
                let split = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                let (idx, kind) = rest.split_at(split);
                let idx: u32 = idx.parse().map_err(|_| bad(format!("unknown symbol `{sym}`")))?;
                if idx == 0 {
                    return Err(bad(format!("unknown symbol `{sym}`")));
                }
                let list_index = |k: &str, count: usize| -> Result<usize> {
                    let j: usize = if k.is_empty() && count == 1 {
                        1
                    } else {
                        k.parse().map_err(|_| bad(format!("unknown symbol `{sym}`")))?
                    };
                    if j == 0 || j > count {
                        return Err(bad(format!("symbol `{sym}` out of range for {sig}")));
                    }
                    Ok(j - 1)
                };
                if kind == "T" {
                    if idx > sig.n {
                        return Err(bad(format!("`{sym}` exceeds dimension {}", sig.n)));
                    }
                    tangent.extend(core::iter::repeat_n(idx, exp as usize));
                } else if let Some(k) = kind.strip_prefix('D') {
                    if idx != 1 {
                        return Err(bad(format!("divisor class `{sym}` must be c1")));
                    }
                    divisors[list_index(k, sig.s as usize)?] += exp;
                } else if let Some(k) = kind.strip_prefix('E') {
                    let j = list_index(k, sig.ranks.len())?;
                    if idx > sig.ranks[j] {
                        return Err(bad(format!("`{sym}` exceeds rank {}", sig.ranks[j])));
                    }
                    bundles[j].extend(core::iter::repeat_n(idx, exp as usize));
                } else {
                    return Err(bad(format!("unknown symbol `{sym}`")));
                }
            }
        }
        let m = ChernMonomial {
            tangent: Partition::from_parts(tangent),
            divisors,
            bundles: bundles.into_iter().map(Partition::from_parts).collect(),
        };
        if m.weight() != sig.n {
            return Err(bad(format!("`{name}` has weight {} but n = {}", m.weight(), sig.n)));
        }
        Ok(m)
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Symbols of the Chern-class ring of a signature with their weights:
/// `c1T..cnT`, `c1D1..c1Ds`, then `c1E1..c{r1}E1`, ...
pub fn chern_symbols(sig: &Signature) -> Vec<(String, u32)> {
    let mut out: Vec<(String, u32)> = (1..=sig.n).map(|i| (format!("c{i}T"), i)).collect();
    out.extend((1..=sig.s).map(|j| (format!("c1D{j}"), 1)));
    for (j, &r) in sig.ranks.iter().enumerate() {
        out.extend((1..=r).map(|i| (format!("c{i}E{}", j + 1), i)));
    }
    out
}

/// All weight-`n` Chern monomials of the signature.
pub fn enumerate_chern_monomials(sig: &Signature) -> Vec<ChernMonomial> {
    let caps = sig.list_ranks();
    let mut out = Vec::new();
    let mut chosen: Vec<Partition> = Vec::new();
    fn rec(sig: &Signature, caps: &[u32], used: u32, chosen: &mut Vec<Partition>, out: &mut Vec<ChernMonomial>) {
        if chosen.len() == caps.len() {
            for nu in enumerate_partitions(sig.n - used) {
                out.push(ChernMonomial::from_list_partitions(nu, chosen, sig.s as usize));
            }
            return;
        }
        let cap = caps[chosen.len()];
        for size in 0..=sig.n - used {
            for mu in partitions_bounded(size, cap) {
                chosen.push(mu);
                rec(sig, caps, used + size, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(sig, &caps, 0, &mut chosen, &mut out);
    out
}

/// `ε(ν, μ_1..μ_m) = (ν ∪ ⋃ μ_iᵗ; μ_1ᵗ..μ_mᵗ)`, with `mus` covering the combined
/// list (divisors first) and `ranks` the combined list ranks.
pub fn epsilon(nu: &Partition, mus: &[Partition], ranks: &[u32], s: usize) -> Result<PartitionList> {
    if mus.len() != ranks.len() || s > mus.len() {
        return Err(Error::DimensionMismatch { expected: ranks.len(), found: mus.len() });
    }
    for (j, (m, &r)) in mus.iter().zip(ranks).enumerate() {
        if m.largest() > r {
            return Err(Error::RankViolation { bundle: j, part: m.largest(), rank: r });
        }
    }
    let transposed: Vec<Partition> = mus.iter().map(Partition::transpose).collect();
    let lambda = transposed.iter().fold(nu.clone(), |acc, t| acc.union(t));
    let (pis, rest) = transposed.split_at(s);
    Ok(PartitionList { lambda, pis: pis.to_vec(), mus: rest.to_vec() })
}

/// `ε` applied to the index of a Chern monomial.
pub fn epsilon_of(m: &ChernMonomial, sig: &Signature) -> Result<PartitionList> {
    epsilon(&m.tangent, &m.list_partitions(), &sig.list_ranks(), sig.s as usize)
}

/// Inverse of [`epsilon_of`]: transposes each list back and removes it from `λ`.
pub fn epsilon_inverse(p: &PartitionList) -> ChernMonomial {
    let lists: Vec<Partition> = p.lists().map(Partition::transpose).collect();
    let mut rest = p.lambda.0.clone();
    for part in p.lists().flat_map(|l| l.0.iter()) {
        if let Some(i) = rest.iter().position(|q| q == part) {
            rest.remove(i);
        }
    }
    ChernMonomial::from_list_partitions(Partition(rest), &lists, p.pis.len())
}

/// True when `ε` maps the monomials of `sig` bijectively onto `P'_sig`.
pub fn epsilon_is_bijective(sig: &Signature) -> bool {
    let targets: BTreeSet<PartitionList> = enumerate_partition_lists(sig).into_iter().collect();
    let monomials = enumerate_chern_monomials(sig);
    let mut image = BTreeSet::new();
    for m in &monomials {
        match epsilon_of(m, sig) {
            Ok(p) => {
                if !image.insert(p) {
                    return false;
                }
            }
            Err(_) => return false,
        }
    }
    image == targets && monomials.len() == targets.len()
}
