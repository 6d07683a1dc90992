//! The `ψ(λ; π; μ)` basis, its Chern pairing matrix and decomposition of
//! Chern vectors into basis coordinates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::algebra::{RatMatrix, Rational};
use crate::chern::{BundleSpec, ChernVector, Geometry, LineBundleExpr, TowerVariety};
use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_chern_monomials, epsilon_inverse, epsilon_of, ChernMonomial, PartitionList, Signature,
};

/// A basis element together with a geometry realizing it.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub index: PartitionList,
    pub geometry: Geometry,
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.geometry.tower.vars();
        write!(f, "[{}", self.geometry.tower)?;
        for (i, d) in self.geometry.divisors.iter().enumerate() {
            write!(f, "; H{}={}", i + 1, d.c1(vars))?;
        }
        for (j, b) in self.geometry.bundles.iter().enumerate() {
            write!(f, "; E{}=", j + 1)?;
            let trivial = b.summands.iter().filter(|l| l.is_trivial()).count();
            let mut first = true;
            if trivial > 0 || b.rank() == 0 {
                write!(f, "O^{trivial}")?;
                first = false;
            }
            for l in b.summands.iter().filter(|l| !l.is_trivial()) {
                if !first {
                    f.write_str("+")?;
                }
                first = false;
                write!(f, "L({})", l.c1(vars))?;
            }
        }
        f.write_str("]")
    }
}

/// `ψ(λ; π; μ) = [P^λ, H_1..H_s, O^{r_j - l(μ_j)} ⊕ ⊕_{m∈μ_j} L_m]`.
///
/// Every part of every `π_i`, `μ_j` is matched with its own factor `P^m` of
/// `P^λ`; `H_i` is that factor's hyperplane class (zero for `π_i = ∅`) and `L_m`
/// its `O(1)`.
pub fn basis_element(idx: &PartitionList, sig: &Signature) -> Result<BasisElement> {
    idx.check_signature(sig)?;
    let tower = TowerVariety::projective_product(idx.lambda());
    let lambda = idx.lambda().parts();
    let mut used = vec![false; lambda.len()];
    let mut take = |m: u32| -> Result<usize> {
        let i = (0..lambda.len())
            .find(|&i| !used[i] && lambda[i] == m)
            .ok_or_else(|| Error::InvalidIndex(format!("no free factor P^{m} in {idx}")))?;
        used[i] = true;
        Ok(i)
    };
    let mut divisors = Vec::with_capacity(idx.pis().len());
    for pi in idx.pis() {
        divisors.push(match pi.parts().first() {
            Some(&m) => LineBundleExpr::generator(take(m)?, 1),
            None => LineBundleExpr::trivial(),
        });
    }
    let mut bundles = Vec::with_capacity(idx.mus().len());
    for (mu, &r) in idx.mus().iter().zip(&sig.ranks) {
        let mut summands = vec![LineBundleExpr::trivial(); r as usize - mu.len()];
        for &m in mu.parts() {
            summands.push(LineBundleExpr::generator(take(m)?, 1));
        }
        bundles.push(BundleSpec::new(summands));
    }
    Ok(BasisElement { index: idx.clone(), geometry: Geometry::new(tower, divisors, bundles) })
}

/// Exponents `(a_r, …, a_1)` of the classes of list `j`, highest index first.
fn reversed_exponents(m: &ChernMonomial, j: usize, rank: u32) -> Vec<u32> {
    let mut e = m.list_exponents(j, rank);
    e.reverse();
    e
}

/// Comparison in the partial order on monomials: only the factor in the classes
/// of the last list (the last bundle, or the last divisor when there are no
/// bundles) matters, compared from the top Chern class down.
pub fn partial_order_cmp(a: &ChernMonomial, b: &ChernMonomial, sig: &Signature) -> Ordering {
    let ranks = sig.list_ranks();
    match ranks.len() {
        0 => Ordering::Equal,
        k => {
            let r = ranks[k - 1];
            reversed_exponents(a, k - 1, r).cmp(&reversed_exponents(b, k - 1, r))
        }
    }
}

/// Total order refining [`partial_order_cmp`]: lists compared from last to first,
/// each from its top Chern class down, then the tangent classes the same way.
pub fn total_order_key(m: &ChernMonomial, sig: &Signature) -> Vec<u32> {
    let ranks = sig.list_ranks();
    let mut key = Vec::new();
    for j in (0..ranks.len()).rev() {
        key.extend(reversed_exponents(m, j, ranks[j]));
    }
    key.extend((1..=sig.n).rev().map(|i| m.tangent.multiplicity(i)));
    key
}

/// The Chern pairing between basis elements (rows) and monomials (columns).
///
/// Row `i` is the basis element `ε(C_i)` where `C_i` is column `i`'s monomial, so
/// both sides follow the same total order.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub signature: Signature,
    pub rows: Vec<PartitionList>,
    pub cols: Vec<ChernMonomial>,
    pub matrix: RatMatrix,
}

impl PairingMatrix {
    pub fn size(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len() && self.matrix.is_square()
    }

    pub fn determinant(&self) -> Result<Rational> {
        self.matrix.determinant()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.determinant().is_ok_and(|d| d != Rational::from_integer(0.into()))
    }
}

/// Monomials of `sig` sorted by [`total_order_key`].
pub fn ordered_monomials(sig: &Signature) -> Vec<ChernMonomial> {
    let mut cols = enumerate_chern_monomials(sig);
    cols.sort_by_cached_key(|m| total_order_key(m, sig));
    cols
}

/// Assembles `M[row, col] = ∫_{ψ(row)} col`.
pub fn pairing_matrix(sig: &Signature) -> Result<PairingMatrix> {
    let cols = ordered_monomials(sig);
    let rows: Vec<PartitionList> = cols.iter().map(|m| epsilon_of(m, sig)).collect::<Result<_>>()?;
    let mut data = Vec::with_capacity(rows.len());
    for row in &rows {
        let v = basis_element(row, sig)?.geometry.chern_vector_for(sig)?;
        data.push(cols.iter().map(|m| v.get(m).cloned().expect("complete chern vector")).collect());
    }
    let matrix = RatMatrix::from_rows(data)?;
    Ok(PairingMatrix { signature: sig.clone(), rows, cols, matrix })
}

/// True iff `M[row, col] = 0` whenever the row's monomial is strictly below the
/// column's in the partial order.
pub fn check_triangular(m: &PairingMatrix) -> bool {
    let row_monomials: Vec<ChernMonomial> = m.rows.iter().map(epsilon_inverse).collect();
    for (i, rm) in row_monomials.iter().enumerate() {
        for (j, cm) in m.cols.iter().enumerate() {
            if partial_order_cmp(rm, cm, &m.signature) == Ordering::Less
                && m.matrix[(i, j)] != Rational::from_integer(0.into())
            {
                return false;
            }
        }
    }
    true
}

/// The nested form of the triangularity: inside a block of equal last-list
/// factors the block is again triangular for the previous list, and so on.
/// Equivalent to comparing the bundle part of [`total_order_key`].
pub fn check_nested_triangular(m: &PairingMatrix) -> bool {
    let sig = &m.signature;
    let bundle_len: usize = sig.list_ranks().iter().map(|&r| r as usize).sum();
    let key = |x: &ChernMonomial| {
        let mut k = total_order_key(x, sig);
        k.truncate(bundle_len);
        k
    };
    let row_keys: Vec<Vec<u32>> = m.rows.iter().map(|r| key(&epsilon_inverse(r))).collect();
    let col_keys: Vec<Vec<u32>> = m.cols.iter().map(key).collect();
    for (i, rk) in row_keys.iter().enumerate() {
        for (j, ck) in col_keys.iter().enumerate() {
            if rk < ck && m.matrix[(i, j)] != Rational::from_integer(0.into()) {
                return false;
            }
        }
    }
    true
}

/// Coordinates `x` with `Σ x_i · chern_vector(ψ_i) = v`.
pub fn decompose(v: &ChernVector) -> Result<Vec<(PartitionList, Rational)>> {
    let pm = pairing_matrix(v.signature())?;
    decompose_with(&pm, v)
}

/// [`decompose`] against a precomputed pairing matrix.
pub fn decompose_with(pm: &PairingMatrix, v: &ChernVector) -> Result<Vec<(PartitionList, Rational)>> {
    if &pm.signature != v.signature() {
        return Err(Error::SignatureMismatch(format!("{} vs {}", pm.signature, v.signature())));
    }
    let rhs: Vec<Rational> = pm.cols.iter().map(|m| v.get(m).cloned().expect("complete chern vector")).collect();
    let x = pm.matrix.transpose().solve(&rhs)?;
    Ok(pm.rows.iter().cloned().zip(x).collect())
}

/// `Σ x_i · chern_vector(ψ_i)`.
pub fn recombine(sig: &Signature, coords: &[(PartitionList, Rational)]) -> Result<ChernVector> {
    let mut acc = ChernVector::zero(sig.clone());
    for (idx, x) in coords {
        let v = basis_element(idx, sig)?.geometry.chern_vector_for(sig)?;
        acc = acc.try_add(&v.scale(x))?;
    }
    Ok(acc)
}

/// The double point relation on Chern numbers: `n0 = n1 + n2 - n3`.
pub fn dpr_check(n0: &ChernVector, n1: &ChernVector, n2: &ChernVector, n3: &ChernVector) -> Result<bool> {
    n0.check_same_signature(n1)?;
    n0.check_same_signature(n2)?;
    n0.check_same_signature(n3)?;
    Ok(n1.try_add(n2)?.try_sub(n3)? == *n0)
}

/// Short listing row used by front ends: `(21; 2, 1)  [P^2 x P^1; ...]`.
pub fn describe(e: &BasisElement) -> String {
    format!("{}  {}", e.index, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::partitions::{enumerate_partition_lists, Partition};
    use alloc::string::ToString;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.iter().copied())
    }

    #[test]
    fn basis_p1_with_o1() {
        let sig = Signature::new(1, 0, vec![1]);
        let idx = PartitionList::new(p(&[1]), vec![], vec![p(&[1])], &[1]).unwrap();
        let e = basis_element(&idx, &sig).unwrap();
        assert_eq!(e.geometry.tower.dimension(), 1);
        assert_eq!(e.geometry.bundles[0], BundleSpec::new(vec![LineBundleExpr::generator(0, 1)]));
    }

    #[test]
    fn basis_distinct_factors() {
        let sig = Signature::new(2, 1, vec![1]);
        let idx = PartitionList::new(p(&[1, 1]), vec![p(&[1])], vec![p(&[1])], &[1]).unwrap();
        let e = basis_element(&idx, &sig).unwrap();
        assert_eq!(e.geometry.divisors, [LineBundleExpr::generator(0, 1)]);
        assert_eq!(e.geometry.bundles[0].summands, [LineBundleExpr::generator(1, 1)]);
    }

    #[test]
    fn basis_trivial_bundle() {
        let sig = Signature::new(2, 0, vec![1]);
        let idx = PartitionList::new(p(&[2]), vec![], vec![Partition::empty()], &[1]).unwrap();
        let e = basis_element(&idx, &sig).unwrap();
        assert_eq!(e.to_string(), "[P^2; E1=O^1]");
    }

    #[test]
    fn basis_rejects_foreign_index() {
        let idx = PartitionList::new(p(&[2]), vec![], vec![Partition::empty()], &[1]).unwrap();
        assert!(matches!(basis_element(&idx, &Signature::new(2, 1, vec![1])), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn pairing_n1_r1() {
        let pm = pairing_matrix(&Signature::new(1, 0, vec![1])).unwrap();
        assert_eq!(pm.rows[0].to_string(), "(1; ∅)");
        assert_eq!(pm.rows[1].to_string(), "(1; 1)");
        assert_eq!(pm.cols[0].name(), "c1T");
        assert_eq!(pm.cols[1].name(), "c1E1");
        assert_eq!(pm.matrix, RatMatrix::from_integers(&[&[2, 0], &[2, 1]]).unwrap());
        assert_eq!(pm.determinant().unwrap(), int(2));
        assert!(check_triangular(&pm));
    }

    #[test]
    fn pairing_surface_signature() {
        let pm = pairing_matrix(&Signature::new(2, 1, vec![1])).unwrap();
        assert_eq!(pm.size(), 7);
        assert!(pm.is_nonsingular());
        assert!(check_triangular(&pm));
    }

    #[test]
    fn pairing_point() {
        let pm = pairing_matrix(&Signature::new(0, 0, vec![])).unwrap();
        assert_eq!(pm.matrix, RatMatrix::from_integers(&[&[1]]).unwrap());
    }

    #[test]
    fn triangular_examples() {
        for sig in [Signature::new(2, 0, vec![1]), Signature::new(3, 0, vec![2, 1])] {
            let pm = pairing_matrix(&sig).unwrap();
            assert!(check_triangular(&pm), "{sig}");
            assert!(check_nested_triangular(&pm), "{sig}");
        }
        assert_eq!(pairing_matrix(&Signature::new(3, 0, vec![2, 1])).unwrap().size(), 17);
    }

    #[test]
    fn triangularity_detects_corruption() {
        let mut pm = pairing_matrix(&Signature::new(1, 0, vec![1])).unwrap();
        pm.matrix[(0, 1)] = int(5);
        assert!(!check_triangular(&pm));
    }

    #[test]
    fn decompose_p1_o2() {
        let g = Geometry::new(
            TowerVariety::projective_product(&p(&[1])),
            vec![],
            vec![BundleSpec::new(vec![LineBundleExpr::generator(0, 2)])],
        );
        let coords = decompose(&g.chern_vector().unwrap()).unwrap();
        let xs: Vec<Rational> = coords.iter().map(|(_, x)| x.clone()).collect();
        assert_eq!(xs, [int(-1), int(2)]);
    }

    #[test]
    fn decompose_basis_gives_unit_vectors() {
        let sig = Signature::new(2, 1, vec![1]);
        for idx in enumerate_partition_lists(&sig) {
            let v = basis_element(&idx, &sig).unwrap().geometry.chern_vector().unwrap();
            for (j, x) in decompose(&v).unwrap() {
                assert_eq!(x, if j == idx { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn decompose_plane_round_trip() {
        let g = Geometry::new(
            TowerVariety::projective_product(&p(&[2])),
            vec![LineBundleExpr::generator(0, 1)],
            vec![BundleSpec::new(vec![LineBundleExpr::generator(0, 3)])],
        );
        let v = g.chern_vector().unwrap();
        let coords = decompose(&v).unwrap();
        assert_eq!(coords.len(), 7);
        assert_eq!(recombine(v.signature(), &coords).unwrap(), v);
    }

    #[test]
    fn dpr_trivial_and_perturbed() {
        let sig = Signature::new(1, 0, vec![1]);
        let a = ChernVector::from_values(sig.clone(), vec![int(2), int(5)]).unwrap();
        let b = ChernVector::from_values(sig.clone(), vec![int(-1), int(3)]).unwrap();
        assert!(dpr_check(&a, &a, &b, &b).unwrap());
        let mut c = b.clone();
        let m = enumerate_chern_monomials(&sig)[0].clone();
        c.set(&m, c.get(&m).unwrap() + int(1)).unwrap();
        assert!(!dpr_check(&a, &a, &b, &c).unwrap());
        let other = ChernVector::zero(Signature::new(1, 0, vec![]));
        assert!(matches!(dpr_check(&a, &a, &b, &other), Err(Error::SignatureMismatch(_))));
    }
}
