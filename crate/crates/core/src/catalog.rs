//! Small hand-built instances and constructors for actions on diagonal
//! algebras.

use crate::algebra::Algebra;
use crate::groupoid::{identity_name, Groupoid, MorphismId};
use crate::linalg::{Field, Matrix};
use crate::paction::{glue_components, PartialAction};

fn s(x: &str) -> String {
    x.to_string()
}

/// Builds `P(objects) × G` for a finite group `G` with elements `0..order`
/// (0 the identity), given by its multiplication and inversion.
/// `name(t, s, k)` names the arrow from object `s` to object `t` labelled
/// `k`; arrows with `s == t` and `k == 0` are the identities.
pub fn pair_times_group(
    objects: &[String],
    order: usize,
    mul: impl Fn(usize, usize) -> usize,
    inv: impl Fn(usize) -> usize,
    name: impl Fn(usize, usize, usize) -> String,
) -> Groupoid {
    let r = objects.len();
    let label = |t: usize, s: usize, k: usize| {
        if t == s && k == 0 {
            identity_name(&objects[t])
        } else {
            name(t, s, k)
        }
    };
    let mut morphisms = Vec::new();
    for t in 0..r {
        for s in 0..r {
            for k in 0..order {
                if !(t == s && k == 0) {
                    morphisms.push((label(t, s, k), objects[s].clone(), objects[t].clone()));
                }
            }
        }
    }
    let mut compositions = Vec::new();
    let mut inverses = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..order {
                inverses.push((label(i, j, k), label(j, i, inv(k))));
                for l in 0..r {
                    for m in 0..order {
                        compositions.push((label(i, j, k), label(j, l, m), label(i, l, mul(k, m))));
                    }
                }
            }
        }
    }
    Groupoid::from_tables(objects, &morphisms, &compositions, &inverses).expect("well-formed product tables")
}

/// Action on the diagonal algebra `𝕂^n` where each morphism carries a
/// partial bijection of basis indices, `(from, to)` meaning `α_g(v_from) =
/// v_to`. The domain idempotent `1_g` is the sum of the targets.
pub fn diagonal_action(field: Field, groupoid: Groupoid, n: usize, moves: &[Vec<(usize, usize)>]) -> PartialAction {
    let algebra = Algebra::diagonal(field, n);
    diagonal_action_on(algebra, groupoid, moves)
}

pub fn diagonal_action_on(algebra: Algebra, groupoid: Groupoid, moves: &[Vec<(usize, usize)>]) -> PartialAction {
    let field = algebra.field();
    let n = algebra.dim();
    let mut dom = Vec::new();
    let mut maps = Vec::new();
    for pairs in moves {
        let mut d = vec![field.zero(); n];
        let mut m = Matrix::zeros(field, n, n);
        for &(from, to) in pairs {
            d[to] = field.one();
            m.set(to, from, field.one());
        }
        dom.push(d);
        maps.push(m);
    }
    PartialAction::new(groupoid, algebra, dom, maps).expect("one move list per morphism")
}

/// Two objects joined by a single arrow `g: e1 → e2`.
pub fn edge_groupoid() -> Groupoid {
    Groupoid::from_tables(
        &[s("e1"), s("e2")],
        &[(s("g"), s("e1"), s("e2")), (s("g^-1"), s("e2"), s("e1"))],
        &[(s("g"), s("g^-1"), s("id:e2")), (s("g^-1"), s("g"), s("id:e1"))],
        &[(s("g"), s("g^-1")), (s("g^-1"), s("g"))],
    )
    .unwrap()
}

/// `𝕂v1 ⊕ … ⊕ 𝕂v4` with `A_{e1} = 𝕂v1 ⊕ 𝕂v2`, `A_{e2} = 𝕂v3 ⊕ 𝕂v4` and
/// `α_g(v2) = v3`.
pub fn edge_action(field: Field) -> PartialAction {
    // morphism order: id:e1, id:e2, g, g^-1
    diagonal_action(field, edge_groupoid(), 4, &[vec![(0, 0), (1, 1)], vec![(2, 2), (3, 3)], vec![(1, 2)], vec![(2, 1)]])
}

/// Pair groupoid on `{e1, e2}` times `ℤ/2`, with arrows named
/// `g, h, x, y, x^-1, y^-1` where `g² = e1`, `h² = e2`, `xg = y = hx`.
pub fn zero_cross_groupoid() -> Groupoid {
    let names = |t: usize, s: usize, k: usize| -> String {
        match (t, s, k) {
            (0, 0, 1) => "g",
            (1, 1, 1) => "h",
            (1, 0, 0) => "x",
            (1, 0, 1) => "y",
            (0, 1, 0) => "x^-1",
            (0, 1, 1) => "y^-1",
            _ => unreachable!(),
        }
        .to_string()
    };
    let g = pair_times_group(&[s("e1"), s("e2")], 2, |a, b| (a + b) % 2, |a| a, names);
    let order = ["id:e1", "id:e2", "g", "h", "x", "y", "x^-1", "y^-1"];
    reorder(&g, &order)
}

/// Rebuilds `g` with its morphisms listed in the given name order.
fn reorder(g: &Groupoid, order: &[&str]) -> Groupoid {
    let ids: Vec<MorphismId> = order.iter().map(|n| g.find_morphism(n).unwrap()).collect();
    let idx = |m: MorphismId| ids.iter().position(|&x| x == m).unwrap();
    let morphisms = ids.iter().map(|&m| g.morphism(m).clone()).collect();
    let identity = g.objects().map(|e| MorphismId(idx(g.identity(e)))).collect();
    let compose = ids
        .iter()
        .map(|&a| ids.iter().map(|&b| g.compose(a, b).map(|c| MorphismId(idx(c)))).collect())
        .collect();
    let inverse = ids.iter().map(|&a| g.try_inverse(a).map(|c| MorphismId(idx(c)))).collect();
    Groupoid::from_parts(g.object_names().to_vec(), morphisms, identity, compose, inverse)
}

/// `𝕂v1 ⊕ 𝕂v2` with `A_{e1} = A_g = 𝕂v1`, `A_{e2} = A_h = 𝕂v2` and zero
/// ideals on the four cross arrows.
pub fn zero_cross_action(field: Field) -> PartialAction {
    let none = Vec::new();
    diagonal_action(
        field,
        zero_cross_groupoid(),
        2,
        &[vec![(0, 0)], vec![(1, 1)], vec![(0, 0)], vec![(1, 1)], none.clone(), none.clone(), none.clone(), none],
    )
}

/// Pair groupoid on `{e1, e2}` swapping the coordinates of `𝕂v1 ⊕ 𝕂v2`.
pub fn swap_global_action(field: Field) -> PartialAction {
    let g = Groupoid::from_tables(
        &[s("e1"), s("e2")],
        &[(s("s"), s("e1"), s("e2")), (s("s^-1"), s("e2"), s("e1"))],
        &[(s("s"), s("s^-1"), s("id:e2")), (s("s^-1"), s("s"), s("id:e1"))],
        &[(s("s"), s("s^-1")), (s("s^-1"), s("s"))],
    )
    .unwrap();
    diagonal_action(field, g, 2, &[vec![(0, 0)], vec![(1, 1)], vec![(0, 1)], vec![(1, 0)]])
}

/// The trivial group acting on the ground field.
pub fn trivial_action(field: Field) -> PartialAction {
    let g = Groupoid::from_tables(&[s("e")], &[], &[], &[]).unwrap();
    diagonal_action(field, g, 1, &[vec![(0, 0)]])
}

/// Two disjoint copies of [`edge_action`], prefixed `L` and `R`.
pub fn glued_edge_pair(field: Field) -> PartialAction {
    let pa = edge_action(field);
    glue_components(&[pa.with_prefix("L"), pa.with_prefix("R")]).unwrap()
}
