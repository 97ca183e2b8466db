use pquiver::rootsys::{build_root_system, RootSystem};
use pquiver::weight::{rat_frac, Weight};
use proptest::prelude::*;

fn rs(g: &str) -> RootSystem {
    build_root_system(g.parse().unwrap()).unwrap()
}

#[test]
fn root_counts() {
    for (g, n) in [("A1", 2), ("A3", 12), ("B2", 8), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240), ("A1xA2", 8)] {
        let r = rs(g);
        assert_eq!(r.num_roots(), n, "{g}");
        assert_eq!(r.num_positive() * 2, n, "{g}");
    }
}

#[test]
fn simple_reflections_permute_roots() {
    for g in ["A3", "B3", "C3", "D4", "G2", "F4"] {
        let r = rs(g);
        for root in r.roots() {
            for i in 0..r.rank() {
                let img = r.reflect_int(i, &root.fw_coords);
                let wt = r.to_simple_root_coords(&Weight::from_ints(&img)).unwrap();
                let simple: Vec<i64> = wt.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect();
                assert!(r.root_index(&simple).is_some(), "{g}: s_{i} maps {root} outside the roots");
            }
        }
    }
}

/// The bracket on the basis `h_1..h_r, e_α` determined by the Chevalley table.
fn bracket(r: &RootSystem, x: usize, y: usize) -> Vec<i64> {
    let rank = r.rank();
    let mut out = vec![0; rank + r.num_roots()];
    match (x < rank, y < rank) {
        (true, true) => {}
        (true, false) => out[y] = r.root(y - rank).fw_coords[x],
        (false, true) => out[x] = -r.root(x - rank).fw_coords[y],
        (false, false) => {
            let (a, b) = (x - rank, y - rank);
            if b == r.negate_index(a) {
                for (i, c) in r.coroot_coords(r.root(a)).into_iter().enumerate() {
                    out[i] = c;
                }
            } else if let Some(s) = r.sum_index(a, b) {
                out[rank + s] = r.chevalley(a, b);
            }
        }
    }
    out
}

fn bracket_vec(r: &RootSystem, v: &[i64], z: usize) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (k, &c) in v.iter().enumerate().filter(|(_, c)| **c != 0) {
        for (o, b) in out.iter_mut().zip(bracket(r, k, z)) {
            *o += c * b;
        }
    }
    out
}

#[test]
fn chevalley_table_defines_a_lie_algebra() {
    for g in ["A2", "B2", "G2", "A3", "C3", "D4", "A1xB2"] {
        let r = rs(g);
        let dim = r.rank() + r.num_roots();
        for x in 0..dim {
            for y in 0..dim {
                let xy = bracket(&r, x, y);
                let yx = bracket(&r, y, x);
                assert!(xy.iter().zip(&yx).all(|(a, b)| a == &-b), "{g}: bracket not antisymmetric");
                for z in 0..dim {
                    let mut sum = bracket_vec(&r, &xy, z);
                    for (s, t) in sum.iter_mut().zip(bracket_vec(&r, &bracket(&r, y, z), x)) {
                        *s += t;
                    }
                    for (s, t) in sum.iter_mut().zip(bracket_vec(&r, &bracket(&r, z, x), y)) {
                        *s += t;
                    }
                    assert!(sum.iter().all(|&s| s == 0), "{g}: Jacobi fails on basis ({x}, {y}, {z})");
                }
            }
        }
    }
}

#[test]
fn chevalley_magnitudes_follow_root_strings() {
    for g in ["B3", "C3", "G2", "F4", "D4"] {
        let r = rs(g);
        for a in 0..r.num_roots() {
            for b in 0..r.num_roots() {
                let n = r.chevalley(a, b);
                match r.sum_index(a, b) {
                    Some(_) => assert_eq!(n.abs(), r.string_down(a, b) + 1, "{g}"),
                    None => assert_eq!(n, 0, "{g}"),
                }
            }
        }
    }
}

fn weight_strategy(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec((-40i64..40, 1i64..9), rank).prop_map(|v| Weight::new(v.into_iter().map(|(n, d)| rat_frac(n, d)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn simple_root_coordinates_roundtrip(w in weight_strategy(4), g in prop::sample::select(vec!["A4", "B4", "C4", "D4", "F4", "A2xB2"])) {
        let r = rs(g);
        let n = r.to_simple_root_coords(&w).unwrap();
        prop_assert_eq!(r.from_simple_root_coords(&n), w.clone());
        for i in 0..r.rank() {
            prop_assert_eq!(r.pairing(&w, r.simple_root(i)).unwrap(), w.coords[i].clone());
        }
    }
}
