//! Library verdicts and sizes against direct enumeration.

use std::collections::BTreeSet;

use segal_abacus::decalage::{dec, sd, Side};
use segal_abacus::fibration::{is_2segal, is_segal, tot};
use segal_abacus::fixtures::{
    boolean_lattice, chain_nerve, corpus, non_2segal, posets_up_to_iso, skeleton_of_simplex,
    FiniteCategory,
};
use segal_abacus::index::{BiSimplex, IndexCategory};
use segal_abacus::presheaf::SSet;
use segal_abacus::simplex::{enumerate_monotone, MonotoneMap};

fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |code| (0..len).map(|k| code / n.pow(k as u32) % n).collect())
}

/// Chains `x_0 <= … <= x_n` in a poset given by its order matrix.
fn chains(le: &[Vec<bool>], n: usize) -> usize {
    tuples(le.len(), n + 1)
        .filter(|c| c.windows(2).all(|w| le[w[0]][w[1]]))
        .count()
}

fn order(n: usize, x: &SSet) -> Vec<Vec<bool>> {
    let edges: BTreeSet<(usize, usize)> = (0..x.size(&1))
        .map(|e| (x.face(1, 1, e), x.face(1, 0, e)))
        .collect();
    (0..n)
        .map(|a| (0..n).map(|b| edges.contains(&(a, b))).collect())
        .collect()
}

/// The spine map `X_n -> X_1 ×_{X_0} … ×_{X_0} X_1` is a bijection.
fn spine_bijective(x: &SSet) -> bool {
    (2..=x.shape.trunc).all(|n| {
        let edges: Vec<Vec<usize>> = (0..n)
            .map(|i| x.monotone_table(&MonotoneMap::new(vec![i, i + 1], n + 1).unwrap()))
            .collect();
        let image: BTreeSet<Vec<usize>> = (0..x.size(&n))
            .map(|s| edges.iter().map(|t| t[s]).collect())
            .collect();
        let composable = tuples(x.size(&1), n)
            .filter(|es| {
                es.windows(2)
                    .all(|w| x.face(1, 0, w[0]) == x.face(1, 1, w[1]))
            })
            .count();
        image.len() == x.size(&n) && image.len() == composable
    })
}

#[test]
fn poset_nerves_count_chains() {
    for size in 1..=4 {
        for p in posets_up_to_iso(size) {
            let x = p.nerve(4);
            let le = order(size, &x);
            for n in 0..=4 {
                assert_eq!(x.size(&n), chains(&le, n), "poset on {size}, level {n}");
            }
        }
    }
}

#[test]
fn posets_up_to_iso_are_distinct_and_complete() {
    let counts: Vec<usize> = (1..=4).map(|n| posets_up_to_iso(n).len()).collect();
    let mut brute = Vec::new();
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        let perms: Vec<Vec<usize>> = tuples(n, n)
            .filter(|p| p.iter().collect::<BTreeSet<_>>().len() == n)
            .collect();
        let mut classes: BTreeSet<Vec<Vec<bool>>> = BTreeSet::new();
        for mask in 0..1u32 << pairs.len() {
            let mut le = vec![vec![false; n]; n];
            for (a, row) in le.iter_mut().enumerate() {
                row[a] = true;
            }
            for (k, &(a, b)) in pairs.iter().enumerate() {
                le[a][b] = mask >> k & 1 == 1;
            }
            let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(le[a][b] && le[b][a])));
            let transitive =
                (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
            if antisymmetric && transitive {
                let canon = perms
                    .iter()
                    .map(|p| {
                        (0..n)
                            .map(|a| (0..n).map(|b| le[p[a]][p[b]]).collect())
                            .collect()
                    })
                    .min()
                    .unwrap();
                classes.insert(canon);
            }
        }
        brute.push(classes.len());
    }
    assert_eq!(counts, brute);
    assert_eq!(counts, vec![1, 2, 5, 16]);
}

#[test]
fn simplex_levels_count_monotone_maps() {
    for m in 0..=3 {
        let x = chain_nerve(m, 4);
        for n in 0..=4 {
            let brute = tuples(m + 1, n + 1)
                .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
                .count();
            assert_eq!(x.size(&n), brute);
            assert_eq!(enumerate_monotone(n as i64, m as i64).len(), brute);
        }
    }
}

#[test]
fn skeleta_keep_small_images() {
    let x = skeleton_of_simplex(3, 1, 3);
    for n in 0..=3 {
        let brute = tuples(4, n + 1)
            .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
            .filter(|v| v.iter().collect::<BTreeSet<_>>().len() <= 2)
            .count();
        assert_eq!(x.size(&n), brute);
    }
}

#[test]
fn segal_matches_the_spine_oracle() {
    for (name, x) in corpus(4).into_iter().chain(non_2segal(4)) {
        assert_eq!(is_segal(&x).passed(), spine_bijective(&x), "{name}");
    }
}

#[test]
fn two_segal_matches_segal_decalages() {
    for (name, x) in corpus(4).into_iter().chain(non_2segal(4)) {
        let upper = spine_bijective(&dec(&x, Side::Upper));
        let lower = spine_bijective(&dec(&x, Side::Lower));
        assert_eq!(is_2segal(&x, Side::Upper).passed(), upper, "{name}");
        assert_eq!(is_2segal(&x, Side::Lower).passed(), lower, "{name}");
    }
}

#[test]
fn edgewise_subdivision_detects_2segal() {
    for (name, x) in corpus(5).into_iter().chain(non_2segal(5)) {
        assert_eq!(
            spine_bijective(&sd(&x)),
            is_2segal(&x, Side::Both).passed(),
            "{name}"
        );
    }
}

#[test]
fn decalage_shifts_levels() {
    let x = FiniteCategory::partial_monoid().nerve(5);
    for side in [Side::Upper, Side::Lower] {
        let d = dec(&x, side);
        assert_eq!(d.shape.trunc, 4);
        for n in 0..=4 {
            assert_eq!(d.size(&n), x.size(&(n + 1)));
        }
    }
    let s = sd(&x);
    assert_eq!(s.shape.trunc, 2);
    for n in 0..=2 {
        assert_eq!(s.size(&n), x.size(&(2 * n + 1)));
    }
}

#[test]
fn total_decalage_levels() {
    let x = boolean_lattice(2).nerve(5);
    let b = tot(&x);
    assert_eq!(b.shape, BiSimplex { trunc: 4 });
    for (i, j) in b.shape.objects() {
        assert_eq!(b.size(&(i, j)), x.size(&(i + j + 1)), "({i},{j})");
    }
}

#[test]
fn partial_monoid_is_the_standard_counterexample() {
    let x = FiniteCategory::partial_monoid().nerve(5);
    assert!(!spine_bijective(&x));
    assert!(spine_bijective(&dec(&x, Side::Upper)));
    assert!(spine_bijective(&dec(&x, Side::Lower)));
}
