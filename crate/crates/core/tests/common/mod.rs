#![allow(dead_code)]

use chernkit_core::algebra::{GradedPoly, Rational};
use chernkit_core::series::{chern_number_vars, CoeffTable, TypeMultiset};
use rand::Rng;

/// Coefficient of `z_target` in `exp(Σ_K a_K z_K / #Aut(K))` by summing over
/// all ways to write `target` as a multiset union of table keys.
pub fn brute_force_coefficient(table: &CoeffTable, target: &TypeMultiset) -> GradedPoly {
    let numbers = chern_number_vars(table.signature());
    let keys: Vec<(TypeMultiset, GradedPoly)> = table
        .entries()
        .filter(|(k, _)| k.is_submultiset_of(target))
        .map(|(k, _)| {
            let b = table.symbolic_entry(k, &numbers);
            (k.clone(), b.scale(&Rational::new(1.into(), k.aut_factor().into())))
        })
        .collect();
    fn rec(keys: &[(TypeMultiset, GradedPoly)], i: usize, acc: &TypeMultiset, target: &TypeMultiset, term: GradedPoly, out: &mut GradedPoly) {
        if acc == target {
            *out = &*out + &term;
            return;
        }
        if i == keys.len() {
            return;
        }
        let (k, b) = &keys[i];
        let mut cur = acc.clone();
        let mut t = term;
        let mut e: i64 = 0;
        loop {
            rec(keys, i + 1, &cur, target, t.clone(), out);
            cur = cur.union(k);
            if !cur.is_submultiset_of(target) {
                break;
            }
            e += 1;
            t = (&t * b).scale(&Rational::new(1.into(), e.into()));
        }
    }
    let mut out = GradedPoly::zero(&numbers);
    rec(&keys, 0, &TypeMultiset::empty(), target, GradedPoly::one(&numbers), &mut out);
    out
}

/// All multisets over `beta_labels`/`delta_labels` with `1 ≤ size ≤ bound`.
pub fn multisets(beta_labels: &[&str], delta_labels: &[&str], bound: u32) -> Vec<TypeMultiset> {
    let labels: Vec<(bool, &str)> =
        beta_labels.iter().map(|l| (true, *l)).chain(delta_labels.iter().map(|l| (false, *l))).collect();
    let mut out = Vec::new();
    fn rec(labels: &[(bool, &str)], i: usize, left: u32, cur: TypeMultiset, out: &mut Vec<TypeMultiset>) {
        if i == labels.len() {
            if !cur.is_empty() {
                out.push(cur);
            }
            return;
        }
        for m in 0..=left {
            let mut next = cur.clone();
            if m > 0 {
                let side = if labels[i].0 { &mut next.beta } else { &mut next.delta };
                side.insert(labels[i].1.to_string(), m);
            }
            rec(labels, i + 1, left - m, next, out);
        }
    }
    rec(&labels, 0, bound, TypeMultiset::empty(), &mut out);
    out
}

pub const SURFACE_MONOMIALS: [&str; 7] = ["c1E1^2", "c1T*c1E1", "c1T^2", "c2T", "c1D1^2", "c1D1*c1E1", "c1T*c1D1"];

/// Random integer linear forms on the given keys, over the surface signature.
pub fn random_table(rng: &mut impl Rng, keys: &[TypeMultiset]) -> CoeffTable {
    let mut t = CoeffTable::new(chernkit_core::partitions::Signature::new(2, 1, vec![1]));
    for k in keys {
        let src: Vec<String> =
            SURFACE_MONOMIALS.iter().map(|m| format!("({})*{m}", rng.gen_range(-5i64..=5))).collect();
        t.insert_str(k.clone(), &src.join(" + ")).unwrap();
    }
    t
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=7).into())
}
