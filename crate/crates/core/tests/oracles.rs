//! Independent recomputations of values the library derives.

use std::collections::BTreeSet;

use chernkit_core::algebra::{frac, int, GradedPoly, Rational, VarSet};
use chernkit_core::ch_oracle::SeveriOracle;
use chernkit_core::chern::{BundleSpec, Geometry, LineBundleExpr, TowerVariety};
use chernkit_core::icis::{milnor, tjurina, truncated_quotient_dim, GermMap, Label};
use chernkit_core::partitions::{
    enumerate_chern_monomials, enumerate_partition_lists, enumerate_partitions, Partition, Signature,
};
use num_bigint::BigInt;

fn all_partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}

/// Partition lists by filtering every tuple of partitions.
fn brute_force_lists(sig: &Signature) -> usize {
    let caps = sig.list_ranks();
    let pool = all_partitions_up_to(sig.n);
    let mut seen = BTreeSet::new();
    for lambda in enumerate_partitions(sig.n) {
        let mut tuples: Vec<Vec<Partition>> = vec![vec![]];
        for &cap in &caps {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    pool.iter().filter(|p| p.len() as u32 <= cap).map(move |p| {
                        let mut t = t.clone();
                        t.push(p.clone());
                        t
                    })
                })
                .collect();
        }
        for t in tuples {
            let union = t.iter().fold(Partition::empty(), |acc, p| acc.union(p));
            if lambda.contains_subpartition(&union) {
                seen.insert((lambda.clone(), t));
            }
        }
    }
    seen.len()
}

/// Coefficient of `t^n` in `∏ 1/(1 - t^w)` over the Chern symbols.
fn monomial_count(sig: &Signature) -> usize {
    let mut weights: Vec<u32> = (1..=sig.n).collect();
    weights.extend(std::iter::repeat_n(1, sig.s as usize));
    for &r in &sig.ranks {
        weights.extend(1..=r);
    }
    let mut ways = vec![0usize; sig.n as usize + 1];
    ways[0] = 1;
    for w in weights {
        for i in w as usize..ways.len() {
            ways[i] += ways[i - w as usize];
        }
    }
    ways[sig.n as usize]
}

#[test]
fn partition_lists_match_brute_force() {
    for sig in [
        Signature::new(3, 0, vec![2, 1]),
        Signature::new(2, 1, vec![1]),
        Signature::new(4, 1, vec![2]),
        Signature::new(4, 0, vec![1, 1, 1]),
        Signature::new(3, 2, vec![1]),
    ] {
        let n = enumerate_partition_lists(&sig).len();
        assert_eq!(n, brute_force_lists(&sig), "{sig}");
        assert_eq!(n, monomial_count(&sig), "{sig}");
        assert_eq!(enumerate_chern_monomials(&sig).len(), n, "{sig}");
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn projective_space_numbers() {
    for n in 1..=5u32 {
        let p = TowerVariety::projective_product(&Partition::from_parts([n]));
        let c = p.total_chern_tangent();
        let c1 = c.homogeneous_part(1);
        assert_eq!(p.integrate(&p.pow(&c1, n)), int((n as i64 + 1).pow(n)));
        assert_eq!(p.euler_number(), int(n as i64 + 1));
        for i in 0..=n {
            let ci = c.homogeneous_part(i);
            let h = GradedPoly::var(p.vars(), 0);
            let paired = p.integrate(&p.mul(&ci, &p.pow(&h, n - i)));
            assert_eq!(paired, int(binom(n as i64 + 1, i as i64)));
        }
    }
}

#[test]
fn hirzebruch_numbers_independent_of_twist() {
    for e in -3..=3 {
        let t = chernkit_core::fixtures::hirzebruch(e);
        let c = t.total_chern_tangent();
        assert_eq!(t.integrate(&t.pow(&c.homogeneous_part(1), 2)), int(8), "e = {e}");
        assert_eq!(t.euler_number(), int(4));
    }
}

#[test]
fn line_bundle_self_intersections_on_products() {
    // ∫_{P^a × P^b} (x h1 + y h2)^{a+b} = C(a+b, a) x^a y^b, factors ordered a ≥ b
    for (a, b) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
        let t = TowerVariety::projective_product(&Partition::from_parts([a, b]));
        for (x, y) in [(1, 2), (3, -1), (2, 5)] {
            let l = LineBundleExpr(vec![x, y]);
            let g = Geometry::new(t.clone(), vec![], vec![BundleSpec::new(vec![l])]);
            let v = g.chern_vector().unwrap();
            let want = binom((a + b) as i64, a as i64) * x.pow(a) * y.pow(b);
            assert_eq!(v.get_named(&format!("c1E1^{}", a + b)).unwrap(), int(want));
        }
    }
}

/// Standard monomials of degree ≤ k outside a monomial ideal.
fn standard_monomials(gens: &[Vec<u32>], n: usize, k: u32) -> u32 {
    chernkit_core::icis::monomials_up_to(n, k)
        .into_iter()
        .filter(|m| !gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b)))
        .count() as u32
}

#[test]
fn monomial_ideal_quotients() {
    let vars = VarSet::unweighted(["x", "y", "z"]);
    let cases: [&[[u32; 3]]; 4] = [
        &[[2, 0, 0], [0, 3, 0], [0, 0, 1]],
        &[[1, 1, 0], [0, 2, 1]],
        &[[3, 0, 0], [1, 1, 1], [0, 0, 2], [0, 4, 0]],
        &[],
    ];
    for gens in cases {
        let polys: Vec<GradedPoly> =
            gens.iter().map(|e| GradedPoly::monomial(&vars, e.to_vec(), int(1))).collect();
        let exps: Vec<Vec<u32>> = gens.iter().map(|e| e.to_vec()).collect();
        for k in 0..6 {
            assert_eq!(truncated_quotient_dim(&polys, 3, k), standard_monomials(&exps, 3, k), "{gens:?}, k = {k}");
        }
    }
}

#[test]
fn quasi_homogeneous_milnor_formula() {
    // μ = ∏ (1/w_i - 1) for weights w_i with f of weighted degree 1.
    let cases: Vec<(String, Rational, Rational)> = (1..=8)
        .map(|n| (Label::A(n).germ().to_string(), frac(1, n as i64 + 1), frac(1, 2)))
        .chain((4..=7).map(|n| {
            let n = n as i64;
            (Label::D(n as u32).germ().to_string(), frac(n - 2, 2 * (n - 1)), frac(1, n - 1))
        }))
        .chain([
            ("x^3 + y^4".to_string(), frac(1, 3), frac(1, 4)),
            ("x^3 + x*y^3".to_string(), frac(1, 3), frac(2, 9)),
            ("x^3 + y^5".to_string(), frac(1, 3), frac(1, 5)),
        ])
        .collect();
    for (src, wx, wy) in cases {
        let f = GermMap::parse(&src).unwrap();
        let one = int(1);
        let mu = (&one / &wx - &one) * (&one / &wy - &one);
        assert_eq!(Rational::from_integer(milnor(&f, 20).unwrap().into()), mu, "{src}");
        assert_eq!(tjurina(&f, 20).unwrap(), milnor(&f, 20).unwrap(), "{src}");
    }
}

#[test]
fn severi_closed_forms() {
    let mut o = SeveriOracle::new();
    let big = |v: num_bigint::BigUint| Rational::from_integer(BigInt::from(v));
    for d in 3..=9i64 {
        let n2 = frac(3 * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11), 2);
        assert_eq!(big(o.severi_degree(d as u32, 2)), n2, "d = {d}");
        let dq = int(d);
        let p = |c: Rational, k: i32| c * num_traits::pow(dq.clone(), k as usize);
        let n3 = p(frac(9, 2), 6) - p(int(27), 5) + p(frac(9, 2), 4) + p(frac(423, 2), 3) - p(int(229), 2)
            - p(frac(829, 2), 1)
            + int(525);
        assert_eq!(big(o.severi_degree(d as u32, 3)), n3, "d = {d}");
    }
}
