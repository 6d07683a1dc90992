//! Small named geometries used by examples, tests and the shipped data files.

use alloc::vec;

use crate::chern::{BundleSpec, Geometry, LineBundleExpr, Stage, TowerVariety};
use crate::partitions::Partition;

fn line(idx: usize, c: i64) -> LineBundleExpr {
    LineBundleExpr::generator(idx, c)
}

/// `P(O ⊕ O(e))` over `P^1`.
pub fn hirzebruch(e: i64) -> TowerVariety {
    TowerVariety::from_stages(vec![
        Stage::Projective { dim: 1 },
        Stage::Bundle { spec: BundleSpec::new(vec![LineBundleExpr::trivial(), line(0, e)]) },
    ])
    .expect("valid tower")
}

/// `(P^2, line, O(d))`.
pub fn plane_line(d: i64) -> Geometry {
    Geometry::new(
        TowerVariety::projective_product(&Partition::from_parts([2])),
        vec![line(0, 1)],
        vec![BundleSpec::new(vec![line(0, d)])],
    )
}

/// `(P^1, O(d))`.
pub fn projective_line(d: i64) -> Geometry {
    Geometry::new(TowerVariety::projective_product(&Partition::from_parts([1])), vec![], vec![BundleSpec::new(vec![line(0, d)])])
}

/// Deformation of `P^2` to the normal cone of a line, with a transverse line
/// `D` and `O(d)`: `Y_0 = Y_1 = P^2`, `Y_2 = P(O ⊕ O(-1))`, `Y_3 = P(O ⊕ O(1))`
/// over the line, where `D` and `E` restrict to a fiber and `d` fibers.
pub fn line_normal_cone(d: i64) -> [Geometry; 4] {
    let ruled = |e| Geometry::new(hirzebruch(e), vec![line(0, 1)], vec![BundleSpec::new(vec![line(0, d)])]);
    [plane_line(d), plane_line(d), ruled(-1), ruled(1)]
}

/// Deformation of `P^2` to the normal cone of a point off `D`:
/// `Y_1 = Bl_p P^2`, `Y_2 = P^2`, `Y_3 = P(O ⊕ O(-1))` over the exceptional curve.
pub fn blowup_point(d: i64) -> [Geometry; 4] {
    let trivial = |t: TowerVariety| Geometry::new(t, vec![LineBundleExpr::trivial()], vec![BundleSpec::trivial(1)]);
    let blowup = Geometry::new(hirzebruch(-1), vec![line(1, 1)], vec![BundleSpec::new(vec![line(1, d)])]);
    [
        plane_line(d),
        blowup,
        trivial(TowerVariety::projective_product(&Partition::from_parts([2]))),
        trivial(hirzebruch(-1)),
    ]
}
