//! Levels of `q_*(F)` against pairs `(x, y)` with `F(x)` the front face of `y`.

use segal_abacus::config::{q_lower_star, q_upper_star};
use segal_abacus::fixtures::map_corpus;
use segal_abacus::index::IndexCategory;
use segal_abacus::presheaf::SMap;
use segal_abacus::simplex::MonotoneMap;

fn pairs(f: &SMap, i: i64, j: i64) -> usize {
    let n = (i + 1 + j) as usize;
    if i < 0 {
        return f.target.size(&n);
    }
    let i = i as usize;
    let front = f
        .target
        .monotone_table(&MonotoneMap::new((0..=i).collect(), n + 1).unwrap());
    let fx = &f.components[&i];
    (0..f.source.size(&i))
        .map(|x| {
            (0..f.target.size(&n))
                .filter(|&y| front[y] == fx[x])
                .count()
        })
        .sum()
}

#[test]
fn levels_are_fiber_products() {
    for (name, f) in map_corpus(4) {
        let b = q_lower_star(&f).unwrap();
        assert!(b.validate().passed(), "{name}");
        for o in b.shape.objects() {
            assert_eq!(b.size(&o), pairs(&f, o.i, o.j), "{name} at {o}");
        }
    }
}

#[test]
fn augmentations_recover_the_map() {
    for (name, f) in map_corpus(4) {
        let back = q_upper_star(&q_lower_star(&f).unwrap()).unwrap();
        for n in f.source.shape.objects() {
            assert_eq!(back.source.level(&n), f.source.level(&n), "{name}");
            assert_eq!(back.target.level(&n), f.target.level(&n), "{name}");
            assert_eq!(back.components[&n], f.components[&n], "{name}");
        }
    }
}
