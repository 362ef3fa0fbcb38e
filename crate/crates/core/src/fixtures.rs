//! Generators for the example corpus: nerves of finite (partial) categories,
//! posets, monoids, skeleta of simplices and functor nerves.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::index::Simplex;
use crate::presheaf::{NatMap, SMap, SSet};
use crate::simplex::{enumerate_sizes, MonotoneMap};
use crate::Error;

/// A finite category, or a partial one when some composites of composable
/// arrows are missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub ids: Vec<usize>,
    /// `comp[g][f] = g ∘ f` whenever defined.
    pub comp: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        ids: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, Error> {
        let (names, (src, tgt)): (Vec<String>, (Vec<usize>, Vec<usize>)) =
            arrows.into_iter().map(|(n, s, t)| (n, (s, t))).unzip();
        let c = FiniteCategory {
            objects,
            arrows: names,
            src,
            tgt,
            ids,
            comp,
        };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<(), Error> {
        let n = self.arrows.len();
        let unique: BTreeSet<&String> = self.arrows.iter().chain(&self.objects).collect();
        if unique.len() != n + self.objects.len() {
            return Err(Error::Malformed("names must be distinct".into()));
        }
        if self.ids.len() != self.objects.len()
            || self.comp.len() != n
            || self.comp.iter().any(|r| r.len() != n)
        {
            return Err(Error::Malformed("table sizes".into()));
        }
        for (o, &i) in self.ids.iter().enumerate() {
            if self.src[i] != o || self.tgt[i] != o {
                return Err(Error::Malformed(format!("identity of {}", self.objects[o])));
            }
        }
        for g in 0..n {
            for f in 0..n {
                match self.comp[g][f] {
                    Some(h)
                        if self.src[g] != self.tgt[f]
                            || self.src[h] != self.src[f]
                            || self.tgt[h] != self.tgt[g] =>
                    {
                        return Err(Error::Malformed(format!(
                            "{} after {}",
                            self.arrows[g], self.arrows[f]
                        )));
                    }
                    None if self.src[g] == self.tgt[f] && (self.is_id(g) || self.is_id(f)) => {
                        return Err(Error::Malformed("identities must compose".into()));
                    }
                    _ => {}
                }
            }
        }
        for &i in &self.ids {
            for f in 0..n {
                if self.tgt[f] == self.src[i] && self.comp[i][f] != Some(f) {
                    return Err(Error::Malformed("left unit".into()));
                }
                if self.src[f] == self.tgt[i] && self.comp[f][i] != Some(f) {
                    return Err(Error::Malformed("right unit".into()));
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                for f in 0..n {
                    if self.tgt[f] != self.src[g] || self.tgt[g] != self.src[h] {
                        continue;
                    }
                    let left = self.comp[g][f].and_then(|gf| self.comp[h][gf]);
                    let right = self.comp[h][g].and_then(|hg| self.comp[hg][f]);
                    if left.is_some() && right.is_some() && left != right {
                        return Err(Error::Malformed("composition is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every composable pair has a composite.
    pub fn is_total(&self) -> bool {
        (0..self.arrows.len()).all(|g| {
            (0..self.arrows.len()).all(|f| self.src[g] != self.tgt[f] || self.comp[g][f].is_some())
        })
    }

    fn is_id(&self, f: usize) -> bool {
        self.ids.contains(&f)
    }

    /// Composite of a chain `f1, …, fn` (applied in that order).
    pub fn chain_composite(&self, chain: &[usize]) -> Option<usize> {
        let mut acc = *chain.first()?;
        for &g in &chain[1..] {
            acc = self.comp[g][acc]?;
        }
        Some(acc)
    }

    /// The poset on `0..n` generated by `relations` (pairs `a <= b`).
    pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<Self, Error> {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            le[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if le[a][k] && le[k][b] {
                        le[a][b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le[a][b] && le[b][a] {
                    return Err(Error::Malformed("relations are not antisymmetric".into()));
                }
            }
        }
        Ok(Self::from_order(&le))
    }

    pub fn from_order(le: &[Vec<bool>]) -> Self {
        let n = le.len();
        let objects: Vec<String> = (0..n).map(|a| format!("{a}")).collect();
        let mut arrows = Vec::new();
        let mut index = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if le[a][b] {
                    index.insert((a, b), arrows.len());
                    arrows.push((format!("{a}<{b}"), a, b));
                }
            }
        }
        let ids = (0..n).map(|a| index[&(a, a)]).collect();
        let m = arrows.len();
        let mut comp = vec![vec![None; m]; m];
        for (g, &(_, b, c)) in arrows.iter().enumerate() {
            for (f, &(_, a, b2)) in arrows.iter().enumerate() {
                if b == b2 {
                    comp[g][f] = Some(index[&(a, c)]);
                }
            }
        }
        let (names, (src, tgt)) = arrows.into_iter().map(|(s, a, b)| (s, (a, b))).unzip();
        FiniteCategory {
            objects,
            arrows: names,
            src,
            tgt,
            ids,
            comp,
        }
    }

    /// A one-object category from a multiplication table, `mul[a][b] = a·b`
    /// meaning `a ∘ b`. `None` entries make it a partial monoid.
    pub fn monoid(names: &[&str], unit: usize, mul: &[Vec<Option<usize>>]) -> Result<Self, Error> {
        let arrows = names.iter().map(|s| (s.to_string(), 0, 0)).collect();
        Self::new(vec!["*".into()], arrows, vec![unit], mul.to_vec())
    }

    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|k| format!("g{k}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| Some((a + b) % n)).collect())
            .collect::<Vec<_>>();
        Self::monoid(&refs, 0, &mul).expect("groups are monoids")
    }

    /// The partial monoid `{e, a}` with `a·a` undefined.
    pub fn partial_monoid() -> Self {
        Self::monoid(
            &["e", "a"],
            0,
            &[vec![Some(0), Some(1)], vec![Some(1), None]],
        )
        .expect("well formed")
    }

    /// Two objects and a pair of inverse isomorphisms.
    pub fn walking_iso() -> Self {
        let arrows = vec![
            ("1x".into(), 0, 0),
            ("1y".into(), 1, 1),
            ("u".into(), 0, 1),
            ("v".into(), 1, 0),
        ];
        let mut comp = vec![vec![None; 4]; 4];
        let table = [
            (0, 0, 0),
            (1, 1, 1),
            (2, 0, 2),
            (1, 2, 2),
            (3, 1, 3),
            (0, 3, 3),
            (3, 2, 0),
            (2, 3, 1),
        ];
        for (g, f, h) in table {
            comp[g][f] = Some(h);
        }
        Self::new(vec!["x".into(), "y".into()], arrows, vec![0, 1], comp).expect("well formed")
    }

    /// The nerve, truncated at `trunc`: `n`-simplices are chains of `n`
    /// composable arrows whose composite is defined.
    pub fn nerve(&self, trunc: usize) -> SSet {
        SSet::from_monotone(
            trunc,
            |n| self.chains(n),
            |phi, s| self.act(phi, s),
            |s| self.show(s),
        )
        .expect("nerves are closed under the simplicial operators")
    }

    fn chains(&self, n: usize) -> Vec<Chain> {
        if n == 0 {
            return (0..self.objects.len())
                .map(|o| Chain {
                    start: o,
                    arrows: Vec::new(),
                })
                .collect();
        }
        let mut out: Vec<Vec<usize>> = (0..self.arrows.len()).map(|f| vec![f]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for c in &out {
                let last = *c.last().unwrap();
                for g in 0..self.arrows.len() {
                    if self.src[g] == self.tgt[last] {
                        let mut d = c.clone();
                        d.push(g);
                        if self.chain_composite(&d).is_some() {
                            next.push(d);
                        }
                    }
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|arrows| Chain {
                start: self.src[arrows[0]],
                arrows,
            })
            .collect()
    }

    fn vertex(&self, s: &Chain, k: usize) -> usize {
        if k == 0 {
            s.start
        } else {
            self.tgt[s.arrows[k - 1]]
        }
    }

    fn act(&self, phi: &MonotoneMap, s: &Chain) -> Chain {
        let v = phi.values();
        if v.len() == 1 {
            return Chain {
                start: self.vertex(s, v[0]),
                arrows: Vec::new(),
            };
        }
        let arrows = v
            .windows(2)
            .map(|w| {
                if w[0] == w[1] {
                    self.ids[self.vertex(s, w[0])]
                } else {
                    self.chain_composite(&s.arrows[w[0]..w[1]])
                        .expect("sub-composites of defined composites")
                }
            })
            .collect();
        Chain {
            start: self.vertex(s, v[0]),
            arrows,
        }
    }

    fn show(&self, s: &Chain) -> String {
        if s.arrows.is_empty() {
            self.objects[s.start].clone()
        } else {
            let names: Vec<&str> = s.arrows.iter().map(|&f| self.arrows[f].as_str()).collect();
            names.join("|")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Chain {
    start: usize,
    arrows: Vec<usize>,
}

/// A functor between finite categories, by its action on arrows.
pub fn functor_nerve(
    c: &FiniteCategory,
    d: &FiniteCategory,
    on_objects: &[usize],
    on_arrows: &[usize],
    trunc: usize,
) -> Result<SMap, Error> {
    for f in 0..c.arrows.len() {
        let g = on_arrows[f];
        if d.src[g] != on_objects[c.src[f]] || d.tgt[g] != on_objects[c.tgt[f]] {
            return Err(Error::Malformed(format!(
                "{} is not sent to a compatible arrow",
                c.arrows[f]
            )));
        }
    }
    for (o, &i) in c.ids.iter().enumerate() {
        if on_arrows[i] != d.ids[on_objects[o]] {
            return Err(Error::Malformed("identities are not preserved".into()));
        }
    }
    for g in 0..c.arrows.len() {
        for f in 0..c.arrows.len() {
            if let Some(h) = c.comp[g][f] {
                if d.comp[on_arrows[g]][on_arrows[f]] != Some(on_arrows[h]) {
                    return Err(Error::Malformed("composition is not preserved".into()));
                }
            }
        }
    }
    let x = c.nerve(trunc);
    let y = d.nerve(trunc);
    let image = |n: &usize, id: &str| -> String {
        if *n == 0 {
            let o = c.objects.iter().position(|s| s == id).expect("object");
            d.objects[on_objects[o]].clone()
        } else {
            let parts: Vec<&str> = id
                .split('|')
                .map(|a| {
                    d.arrows[on_arrows[c.arrows.iter().position(|s| s == a).expect("arrow")]]
                        .as_str()
                })
                .collect();
            parts.join("|")
        }
    };
    map_by_ids(x, y, image)
}

/// A natural map determined by the ids of the images.
pub fn map_by_ids(
    source: SSet,
    target: SSet,
    image: impl Fn(&usize, &str) -> String,
) -> Result<SMap, Error> {
    let index: BTreeMap<usize, BTreeMap<String, usize>> = target
        .levels
        .iter()
        .map(|(n, l)| {
            (
                *n,
                l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect(),
            )
        })
        .collect();
    let mut components = BTreeMap::new();
    for (n, l) in &source.levels {
        let mut comp = Vec::new();
        for id in l {
            let y = image(n, id);
            comp.push(
                *index[n]
                    .get(&y)
                    .ok_or_else(|| Error::Malformed(format!("{y} is not a simplex")))?,
            );
        }
        components.insert(*n, comp);
    }
    NatMap::new(source, target, components)
}

/// Nerve of the chain `0 < 1 < … < m`, i.e. the simplex Δ^m.
pub fn chain_nerve(m: usize, trunc: usize) -> SSet {
    skeleton_of_simplex(m, m, trunc)
}

/// Simplices of Δ^m spanning at most `k+1` vertices; ids list the vertices.
pub fn skeleton_of_simplex(m: usize, k: usize, trunc: usize) -> SSet {
    SSet::from_monotone(
        trunc,
        |n| {
            enumerate_sizes(n + 1, m + 1)
                .into_iter()
                .filter(|f| image_size(f) <= k + 1)
                .collect()
        },
        |phi, s| crate::simplex::compose_monotone(s, phi).expect("composable"),
        |s| {
            s.values()
                .iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
                .join("")
        },
    )
    .expect("skeleta are simplicial")
}

fn image_size(f: &MonotoneMap) -> usize {
    let mut v = f.values().to_vec();
    v.dedup();
    v.len()
}

pub fn nerve_of_poset(n: usize, relations: &[(usize, usize)], trunc: usize) -> SSet {
    FiniteCategory::poset(n, relations)
        .expect("a poset")
        .nerve(trunc)
}

/// The poset of subsets of a `k`-element set.
pub fn boolean_lattice(k: usize) -> FiniteCategory {
    let n = 1usize << k;
    let le: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a & b == a).collect())
        .collect();
    FiniteCategory::from_order(&le)
}

/// One representative of every partial order on `n` elements up to isomorphism.
pub fn posets_up_to_iso(n: usize) -> Vec<FiniteCategory> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let perms = permutations(n);
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                le[a][b] = true;
            }
        }
        if !is_partial_order(&le) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut flat = vec![false; n * n];
                for a in 0..n {
                    for b in 0..n {
                        flat[p[a] * n + p[b]] = le[a][b];
                    }
                }
                flat
            })
            .max()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(FiniteCategory::from_order(&le));
        }
    }
    out
}

fn is_partial_order(le: &[Vec<bool>]) -> bool {
    let n = le.len();
    for a in 0..n {
        for b in 0..n {
            if a != b && le[a][b] && le[b][a] {
                return false;
            }
            for c in 0..n {
                if le[a][b] && le[b][c] && !le[a][c] {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The terminal simplicial set.
pub fn point(trunc: usize) -> SSet {
    SSet::constant(trunc, &["*".to_string()])
}

/// The unique map to the terminal simplicial set.
pub fn to_point(x: &SSet) -> SMap {
    let pt = point(x.shape.trunc);
    NatMap::from_fn(x.clone(), pt, |_, _| 0).expect("constant map")
}

pub fn identity_map(x: &SSet) -> SMap {
    NatMap::identity(x)
}

/// The named corpus of simplicial sets used by the suites.
pub fn corpus(trunc: usize) -> Vec<(String, SSet)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for (k, p) in posets_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("poset{n}.{k}"), p.nerve(trunc)));
        }
    }
    out.push((
        "walking-iso".into(),
        FiniteCategory::walking_iso().nerve(trunc),
    ));
    out.push(("z2".into(), FiniteCategory::cyclic_group(2).nerve(trunc)));
    out.push((
        "partial-monoid".into(),
        FiniteCategory::partial_monoid().nerve(trunc),
    ));
    out
}

/// Simplicial sets that are not 2-Segal.
pub fn non_2segal(trunc: usize) -> Vec<(String, SSet)> {
    vec![
        ("sk2-simplex3".into(), skeleton_of_simplex(3, 2, trunc)),
        ("sk1-simplex2".into(), skeleton_of_simplex(2, 1, trunc)),
    ]
}

/// The map `Δ^m → Δ^k` induced by a monotone map on vertices, also into
/// skeleta of `Δ^k` when the images of simplices stay small enough.
pub fn vertex_map(values: &[usize], target: SSet) -> Result<SMap, Error> {
    let m = values.len() - 1;
    let source = chain_nerve(m, target.shape.trunc);
    MonotoneMap::new(values.to_vec(), values.iter().max().map_or(1, |v| v + 1))?;
    map_by_ids(source, target, |_, id| {
        id.chars()
            .map(|c| {
                format!(
                    "{}",
                    values[c.to_digit(10).expect("a vertex digit") as usize]
                )
            })
            .collect()
    })
}

/// The named corpus of simplicial maps used by the suites: identities, maps to
/// a point, maps between simplices, decalage counits, a group automorphism,
/// and maps into simplicial sets that are not 2-Segal.
pub fn map_corpus(trunc: usize) -> Vec<(String, SMap)> {
    let d = |m| chain_nerve(m, trunc);
    let pm = FiniteCategory::partial_monoid().nerve(trunc);
    let z2 = FiniteCategory::cyclic_group(2);
    let vee = nerve_of_poset(3, &[(0, 1), (0, 2)], trunc);
    let sk = skeleton_of_simplex(3, 2, trunc);
    let sk1 = skeleton_of_simplex(2, 1, trunc);
    let mut out: Vec<(String, SMap)> = vec![
        ("id simplex1".into(), identity_map(&d(1))),
        ("id simplex2".into(), identity_map(&d(2))),
        ("id vee".into(), identity_map(&vee)),
        (
            "id walking-iso".into(),
            identity_map(&FiniteCategory::walking_iso().nerve(trunc)),
        ),
        ("id z2".into(), identity_map(&z2.nerve(trunc))),
        ("id partial-monoid".into(), identity_map(&pm)),
        ("simplex2 to point".into(), to_point(&d(2))),
        ("vee to point".into(), to_point(&vee)),
        ("partial-monoid to point".into(), to_point(&pm)),
        (
            "z2 flip".into(),
            functor_nerve(&z2, &z2, &[0], &[0, 1], trunc).expect("an automorphism"),
        ),
        (
            "collapse 001".into(),
            vertex_map(&[0, 0, 1], d(1)).expect("monotone"),
        ),
        (
            "edge 02".into(),
            vertex_map(&[0, 2], d(2)).expect("monotone"),
        ),
        (
            "collapse 0111".into(),
            vertex_map(&[0, 1, 1, 1], d(1)).expect("monotone"),
        ),
        ("sk2-simplex3 to point".into(), to_point(&sk)),
        ("sk1-simplex2 to point".into(), to_point(&sk1)),
        ("id sk2-simplex3".into(), identity_map(&sk)),
        (
            "face 013 of sk2-simplex3".into(),
            vertex_map(&[0, 1, 3], sk.clone()).expect("monotone"),
        ),
        (
            "vertex of sk2-simplex3".into(),
            vertex_map(&[2], sk).expect("monotone"),
        ),
        (
            "edge 02 of sk1-simplex2".into(),
            vertex_map(&[0, 2], sk1.clone()).expect("monotone"),
        ),
        ("id sk1-simplex2".into(), identity_map(&sk1)),
    ];
    if trunc >= 2 {
        use crate::decalage::{counit, Side};
        out.push(("top counit simplex2".into(), counit(&d(2), Side::Upper)));
        out.push((
            "bottom counit partial-monoid".into(),
            counit(&pm, Side::Lower),
        ));
        out.push(("top counit partial-monoid".into(), counit(&pm, Side::Upper)));
    }
    out
}

/// The Simplex shape of a given truncation, for callers that only have a number.
pub fn simplex_shape(trunc: usize) -> Simplex {
    Simplex { trunc }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn nerves_validate() {
        for (name, x) in corpus(3) {
            assert!(x.validate().passed(), "{name}");
        }
        for (name, x) in non_2segal(3) {
            assert!(x.validate().passed(), "{name}");
        }
    }

    #[test]
    fn chain_sizes() {
        let x = chain_nerve(2, 5);
        assert_eq!(x.size(&1), 6);
        assert_eq!(chain_nerve(1, 3).size(&2), 4);
    }

    #[test]
    fn partial_monoid_levels() {
        let x = FiniteCategory::partial_monoid().nerve(3);
        assert_eq!(x.size(&1), 2);
        assert_eq!(x.size(&2), 3);
        assert_eq!(x.size(&3), 4);
    }

    #[test]
    fn bad_tables_are_rejected() {
        let r = FiniteCategory::monoid(
            &["e", "a"],
            0,
            &[vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
        );
        assert!(r.is_ok());
        let bad = FiniteCategory::monoid(
            &["e", "a"],
            0,
            &[vec![Some(1), Some(1)], vec![Some(1), None]],
        );
        assert!(bad.is_err());
        assert!(FiniteCategory::poset(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn functor_nerves_are_natural() {
        let c = FiniteCategory::poset(2, &[(0, 1)]).unwrap();
        let d = FiniteCategory::poset(1, &[]).unwrap();
        let f = functor_nerve(&c, &d, &[0, 0], &[0, 0, 0], 3).unwrap();
        assert!(f.validate().passed());
        let z2 = FiniteCategory::cyclic_group(2);
        let flip = functor_nerve(&z2, &z2, &[0], &[0, 1], 3).unwrap();
        assert!(flip.is_levelwise_bijective());
    }
}
