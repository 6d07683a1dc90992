//! Caporaso–Harris recursion for Severi degrees of plane curves with
//! tangency conditions to a fixed line, and exact polynomial fitting in `d`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::algebra::{GradedPoly, RatMatrix, Rational, VarSet};
use crate::error::{Error, Result};

/// `(d, δ, α, β)`; `α[k-1]`, `β[k-1]` count tangencies of order `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CHState {
    pub d: u32,
    pub delta: u32,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `Σ k·a_k`.
fn weighted(v: &[u32]) -> u32 {
    v.iter().enumerate().map(|(i, &a)| (i as u32 + 1) * a).sum()
}

fn total(v: &[u32]) -> u32 {
    v.iter().sum()
}

fn binom(n: u32, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

impl CHState {
    pub fn new(d: u32, delta: u32, alpha: Vec<u32>, beta: Vec<u32>) -> Self {
        CHState { d, delta, alpha: trim(alpha), beta: trim(beta) }
    }

    /// `N^{d,δ}`: all `d` intersections with the line are free and transverse.
    pub fn severi(d: u32, delta: u32) -> Self {
        Self::new(d, delta, vec![], vec![d])
    }

    pub fn check(&self) -> Result<()> {
        let i = weighted(&self.alpha) + weighted(&self.beta);
        if i != self.d {
            return Err(Error::InvalidState(format!("Σk(α_k+β_k) = {i} but d = {}", self.d)));
        }
        Ok(())
    }

    /// Number of point conditions `2d + g - 1 + |β|`, `g = (d-1)(d-2)/2 - δ`.
    pub fn point_conditions(&self) -> i64 {
        let d = self.d as i64;
        let g = (d - 1) * (d - 2) / 2 - self.delta as i64;
        2 * d + g - 1 + total(&self.beta) as i64
    }
}

/// Memoizing evaluator of the recursion.
#[derive(Default)]
pub struct SeveriOracle {
    memo: BTreeMap<CHState, BigUint>,
}

impl SeveriOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn severi(&mut self, state: &CHState) -> Result<BigUint> {
        let state = CHState::new(state.d, state.delta, state.alpha.clone(), state.beta.clone());
        state.check()?;
        Ok(self.eval(state))
    }

    pub fn severi_degree(&mut self, d: u32, delta: u32) -> BigUint {
        self.eval(CHState::severi(d, delta))
    }

    fn eval(&mut self, s: CHState) -> BigUint {
        if let Some(v) = self.memo.get(&s) {
            return v.clone();
        }
        let v = self.compute(&s);
        self.memo.insert(s, v.clone());
        v
    }

    fn compute(&mut self, s: &CHState) -> BigUint {
        if s.d == 0 {
            return if s.delta == 0 { BigUint::one() } else { BigUint::zero() };
        }
        if s.point_conditions() < 0 {
            return BigUint::zero();
        }
        let mut acc = BigUint::zero();
        // Specialize a point to the line: a free tangency of order k becomes assigned.
        for k in 1..=s.beta.len() {
            if s.beta[k - 1] > 0 {
                let mut alpha = s.alpha.clone();
                alpha.resize(alpha.len().max(k), 0);
                alpha[k - 1] += 1;
                let mut beta = s.beta.clone();
                beta[k - 1] -= 1;
                acc += BigUint::from(k as u32) * self.eval(CHState::new(s.d, s.delta, alpha, beta));
            }
        }
        // The curve breaks off the line.
        let len = (s.d - 1) as usize;
        let mut terms = Vec::new();
        enumerate_splits(s, len, &mut vec![0; len], &mut vec![0; len], 0, 0, &mut terms);
        for (alpha2, beta2) in terms {
            let gained: u32 = (0..len).map(|i| beta2[i] - s.beta.get(i).copied().unwrap_or(0)).sum();
            let delta2 = s.delta as i64 - (s.d as i64 - 1) + gained as i64;
            if delta2 < 0 {
                continue;
            }
            let mut coeff = BigUint::one();
            for i in 0..len {
                let k = i as u32 + 1;
                let b = s.beta.get(i).copied().unwrap_or(0);
                let a = s.alpha.get(i).copied().unwrap_or(0);
                coeff *= BigUint::from(k).pow(beta2[i] - b);
                coeff *= binom(a, alpha2[i]);
                coeff *= binom(beta2[i], b);
            }
            acc += coeff * self.eval(CHState::new(s.d - 1, delta2 as u32, alpha2, beta2));
        }
        acc
    }
}

/// All `(α', β')` with `α' ≤ α`, `β' ≥ β` and `I(α') + I(β') = d - 1`.
fn enumerate_splits(
    s: &CHState,
    len: usize,
    alpha2: &mut Vec<u32>,
    beta2: &mut Vec<u32>,
    i: usize,
    used: u32,
    out: &mut Vec<(Vec<u32>, Vec<u32>)>,
) {
    let target = s.d - 1;
    // β' ≥ β is impossible when β has an entry past `len`.
    if s.beta.len() > len {
        return;
    }
    if i == len {
        if used == target {
            out.push((alpha2.clone(), beta2.clone()));
        }
        return;
    }
    let k = i as u32 + 1;
    let a_max = s.alpha.get(i).copied().unwrap_or(0);
    let b_min = s.beta.get(i).copied().unwrap_or(0);
    let rest_min: u32 = (i + 1..len).map(|j| (j as u32 + 1) * s.beta.get(j).copied().unwrap_or(0)).sum();
    for a in 0..=a_max {
        for b in b_min.. {
            let u = used + k * (a + b);
            if u + rest_min > target {
                break;
            }
            alpha2[i] = a;
            beta2[i] = b;
            enumerate_splits(s, len, alpha2, beta2, i + 1, u, out);
        }
    }
    alpha2[i] = 0;
    beta2[i] = 0;
}

/// `N^{d,δ}(α, β)` with a fresh memo.
pub fn severi(state: &CHState) -> Result<BigUint> {
    SeveriOracle::new().severi(state)
}

/// Exact interpolation of `samples` by a polynomial of the given degree in `d`;
/// extra samples must lie on it.
pub fn fit_polynomial(samples: &[(i64, Rational)], degree: u32) -> Result<GradedPoly> {
    let n = degree as usize + 1;
    if samples.len() < n {
        return Err(Error::InvalidState(format!("{} samples for degree {degree}", samples.len())));
    }
    let rows: Vec<Vec<Rational>> = samples[..n]
        .iter()
        .map(|(d, _)| {
            let x = Rational::from_integer(BigInt::from(*d));
            let mut p = Rational::one();
            (0..n)
                .map(|_| {
                    let cur = p.clone();
                    p *= &x;
                    cur
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = samples[..n].iter().map(|(_, v)| v.clone()).collect();
    let coeffs = RatMatrix::from_rows(rows)?.solve(&rhs)?;
    let vars = VarSet::unweighted(["d"]);
    let poly = GradedPoly::from_terms(&vars, coeffs.into_iter().enumerate().map(|(i, c)| (vec![i as u32], c)));
    for (d, v) in &samples[n..] {
        if &poly.eval(&[Rational::from_integer(BigInt::from(*d))]) != v {
            return Err(Error::InconsistentSamples(*d));
        }
    }
    Ok(poly)
}

/// `(d, N^{d,δ})` for `d` in the range, as fitting samples.
pub fn severi_samples(oracle: &mut SeveriOracle, delta: u32, ds: core::ops::RangeInclusive<u32>) -> Vec<(i64, Rational)> {
    ds.map(|d| (d as i64, Rational::from_integer(BigInt::from(oracle.severi_degree(d, delta)))))
        .collect()
}
