//! Truncated finite presheaves, natural maps, restriction along index
//! functors, and the finite-set pullbacks and colimits used by every checker.
//!
//! A presheaf stores each level as a list of element ids and each generator
//! `g : a -> b` as a table `P(b) -> P(a)` of indices.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abacus::Abacus;
use crate::index::{
    generators_by_target, Arrow, ArrowGen, BiGen, BiSimplex, Cocone, IndexCategory, IndexFunctor,
    Simplex, SimplexGen, Split,
};
use crate::report::{CheckReport, Witness};
use crate::simplex::{MonotoneMap, Op};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf<C: IndexCategory> {
    pub shape: C,
    pub levels: BTreeMap<C::Obj, Vec<String>>,
    pub actions: BTreeMap<C::Gen, Vec<usize>>,
}

pub type SSet = Presheaf<Simplex>;
pub type BiSSet = Presheaf<BiSimplex>;
/// Presheaf on 𝒟, on Δ_{/[1]}, or on 𝒟 without its augmentation row,
/// depending on the shape.
pub type DSet = Presheaf<Abacus>;
pub type SigmaSet = Presheaf<Cocone<BiSimplex>>;
pub type PointedSSet = Presheaf<Cocone<Simplex>>;
/// Δ_⊥- or Δ^⊥-presheaf depending on `Split::augmented`.
pub type SplitSSet = Presheaf<Split>;
pub type ArrowSet = Presheaf<Arrow>;

impl<C: IndexCategory> Presheaf<C> {
    pub fn new(
        shape: C,
        levels: BTreeMap<C::Obj, Vec<String>>,
        actions: BTreeMap<C::Gen, Vec<usize>>,
    ) -> Result<Self, Error> {
        let p = Presheaf {
            shape,
            levels,
            actions,
        };
        p.check_tables()?;
        Ok(p)
    }

    /// All levels empty.
    pub fn empty(shape: C) -> Self {
        let levels = shape
            .objects()
            .into_iter()
            .map(|o| (o, Vec::new()))
            .collect();
        let actions = shape
            .generators()
            .into_iter()
            .map(|g| (g, Vec::new()))
            .collect();
        Presheaf {
            shape,
            levels,
            actions,
        }
    }

    /// Builds a presheaf from typed elements: `elems(o)` lists level `o` and
    /// `act(g, x)` is the action of `g` on `x` in the level of its target.
    pub fn build<E: Ord + Clone>(
        shape: C,
        elems: impl Fn(&C::Obj) -> Vec<E>,
        act: impl Fn(&C::Gen, &E) -> E,
        show: impl Fn(&E) -> String,
    ) -> Result<Self, Error> {
        let mut typed: BTreeMap<C::Obj, (Vec<E>, BTreeMap<E, usize>)> = BTreeMap::new();
        for o in shape.objects() {
            let list = elems(&o);
            let index = list
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i))
                .collect::<BTreeMap<_, _>>();
            if index.len() != list.len() {
                return Err(Error::Malformed(format!(
                    "repeated element at {}",
                    shape.obj_key(&o)
                )));
            }
            typed.insert(o, (list, index));
        }
        let mut actions = BTreeMap::new();
        for g in shape.generators() {
            let (src_list, _) = &typed[&shape.target(&g)];
            let (_, dst_index) = &typed[&shape.source(&g)];
            let mut table = Vec::with_capacity(src_list.len());
            for x in src_list {
                let y = act(&g, x);
                let pos = dst_index.get(&y).ok_or_else(|| {
                    Error::Malformed(format!(
                        "{} sends {} outside its level",
                        shape.gen_key(&g),
                        show(x)
                    ))
                })?;
                table.push(*pos);
            }
            actions.insert(g, table);
        }
        let levels = typed
            .into_iter()
            .map(|(o, (list, _))| (o, list.iter().map(&show).collect()))
            .collect();
        Presheaf::new(shape, levels, actions)
    }

    /// Every object has a level, every generator a table of the right length
    /// landing in range, and ids are unique per level.
    pub fn check_tables(&self) -> Result<(), Error> {
        for o in self.shape.objects() {
            let level = self.levels.get(&o).ok_or_else(|| {
                Error::Malformed(format!("missing level {}", self.shape.obj_key(&o)))
            })?;
            let mut ids: Vec<&String> = level.iter().collect();
            ids.sort();
            ids.dedup();
            if ids.len() != level.len() {
                return Err(Error::Malformed(format!(
                    "repeated id at {}",
                    self.shape.obj_key(&o)
                )));
            }
        }
        if self.levels.len() != self.shape.objects().len() {
            return Err(Error::Malformed("levels outside the truncation".into()));
        }
        let gens = self.shape.generators();
        if self.actions.len() != gens.len() {
            return Err(Error::Malformed(
                "action tables do not match the generators".into(),
            ));
        }
        for g in gens {
            let key = self.shape.gen_key(&g);
            let table = self
                .actions
                .get(&g)
                .ok_or_else(|| Error::Malformed(format!("missing action {key}")))?;
            let from = self.size(&self.shape.target(&g));
            let to = self.size(&self.shape.source(&g));
            if table.len() != from || table.iter().any(|&y| y >= to) {
                return Err(Error::Malformed(format!(
                    "action {key} has the wrong shape"
                )));
            }
        }
        Ok(())
    }

    pub fn size(&self, o: &C::Obj) -> usize {
        self.levels.get(o).map_or(0, Vec::len)
    }

    pub fn level(&self, o: &C::Obj) -> &[String] {
        self.levels.get(o).map_or(&[], Vec::as_slice)
    }

    pub fn id(&self, o: &C::Obj, x: usize) -> &str {
        &self.levels[o][x]
    }

    pub fn find(&self, o: &C::Obj, id: &str) -> Option<usize> {
        self.levels.get(o)?.iter().position(|x| x == id)
    }

    pub fn total_size(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn act(&self, g: &C::Gen, x: usize) -> usize {
        self.actions[g][x]
    }

    /// Action of the composite `w[0] ∘ w[1] ∘ …`; `w[0]` acts first.
    pub fn act_word(&self, word: &[C::Gen], x: usize) -> usize {
        word.iter().fold(x, |y, g| self.act(g, y))
    }

    /// The table of the action of a word, on all of the level it starts from.
    pub fn word_table(&self, start: &C::Obj, word: &[C::Gen]) -> Vec<usize> {
        (0..self.size(start))
            .map(|x| self.act_word(word, x))
            .collect()
    }

    /// Every composite of generators acts the same way as every other word
    /// naming the same morphism.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new(format!("validate {}", self.shape.name()));
        if let Err(e) = self.check_tables() {
            report.fail("tables", Witness::new(e.to_string(), Vec::new()));
            return report;
        }
        let by_target = generators_by_target(&self.shape);
        for c in self.shape.objects() {
            let family = format!("relations into {}", self.shape.obj_key(&c));
            report.family(&family);
            if self.size(&c) == 0 {
                continue;
            }
            let mut seen: BTreeMap<C::Mor, (Vec<usize>, Vec<C::Gen>)> = BTreeMap::new();
            let mut queue = VecDeque::new();
            let id = self.shape.identity(&c);
            seen.insert(id.clone(), ((0..self.size(&c)).collect(), Vec::new()));
            queue.push_back(id);
            while let Some(m) = queue.pop_front() {
                let (table, word) = seen[&m].clone();
                let d = self.shape.dom(&m);
                for g in by_target.get(&d).map(Vec::as_slice).unwrap_or(&[]) {
                    let next = self.shape.compose(&m, &self.shape.morphism(g));
                    let action = &self.actions[g];
                    let next_table: Vec<usize> = table.iter().map(|&x| action[x]).collect();
                    match seen.get(&next) {
                        Some((stored, other)) => {
                            let bad = stored.iter().zip(&next_table).position(|(a, b)| a != b);
                            report.record(&family, bad.is_none(), || {
                                let x = bad.unwrap_or(0);
                                let src = self.shape.dom(&next);
                                let keys = |w: &[C::Gen]| {
                                    let ks: Vec<String> =
                                        w.iter().map(|h| self.shape.gen_key(h)).collect();
                                    if ks.is_empty() {
                                        "id".into()
                                    } else {
                                        ks.join(".")
                                    }
                                };
                                let mut longer = word.clone();
                                longer.push(g.clone());
                                Witness::new(
                                    format!("{} = {}", keys(other), keys(&longer)),
                                    vec![
                                        self.id(&c, x).to_string(),
                                        self.id(&src, stored[x]).to_string(),
                                        self.id(&src, next_table[x]).to_string(),
                                    ],
                                )
                            });
                        }
                        None => {
                            let mut w = word.clone();
                            w.push(g.clone());
                            seen.insert(next.clone(), (next_table, w));
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// Restriction to a lower truncation.
    pub fn truncate(&self, trunc: usize) -> Result<Self, Error> {
        if trunc > self.shape.trunc() {
            return Err(Error::Truncation(format!(
                "cannot raise truncation {} to {trunc}",
                self.shape.trunc()
            )));
        }
        let shape = self.shape.with_trunc(trunc);
        let levels = shape
            .objects()
            .into_iter()
            .map(|o| (o.clone(), self.levels[&o].clone()))
            .collect();
        let actions = shape
            .generators()
            .into_iter()
            .map(|g| (g.clone(), self.actions[&g].clone()))
            .collect();
        Presheaf::new(shape, levels, actions)
    }

    /// Ids `0:x` and `1:y`.
    pub fn coproduct(&self, other: &Self) -> Result<Self, Error> {
        if self.shape.trunc() != other.shape.trunc() {
            return Err(Error::Truncation(
                "coproduct of different truncations".into(),
            ));
        }
        let mut levels = BTreeMap::new();
        for o in self.shape.objects() {
            let mut l: Vec<String> = self.level(&o).iter().map(|x| format!("0:{x}")).collect();
            l.extend(other.level(&o).iter().map(|y| format!("1:{y}")));
            levels.insert(o, l);
        }
        let mut actions = BTreeMap::new();
        for g in self.shape.generators() {
            let shift = self.size(&self.shape.source(&g));
            let mut t = self.actions[&g].clone();
            t.extend(other.actions[&g].iter().map(|&y| y + shift));
            actions.insert(g, t);
        }
        Presheaf::new(self.shape.clone(), levels, actions)
    }

    /// Ids `(x,y)`.
    pub fn product(&self, other: &Self) -> Result<Self, Error> {
        if self.shape.trunc() != other.shape.trunc() {
            return Err(Error::Truncation("product of different truncations".into()));
        }
        let mut levels = BTreeMap::new();
        for o in self.shape.objects() {
            let mut l = Vec::new();
            for x in self.level(&o) {
                for y in other.level(&o) {
                    l.push(format!("({x},{y})"));
                }
            }
            levels.insert(o, l);
        }
        let mut actions = BTreeMap::new();
        for g in self.shape.generators() {
            let m = other.size(&self.shape.target(&g));
            let m2 = other.size(&self.shape.source(&g));
            let mut t = Vec::new();
            for x in 0..self.size(&self.shape.target(&g)) {
                for y in 0..m {
                    t.push(self.actions[&g][x] * m2 + other.actions[&g][y]);
                }
            }
            actions.insert(g, t);
        }
        Presheaf::new(self.shape.clone(), levels, actions)
    }

    /// Levels and tables keyed by the file-format keys.
    pub fn to_keyed(&self) -> Keyed {
        let levels = self
            .levels
            .iter()
            .map(|(o, l)| (self.shape.obj_key(o), l.clone()))
            .collect();
        let mut actions = BTreeMap::new();
        for (g, t) in &self.actions {
            let from = self.level(&self.shape.target(g));
            let to = self.level(&self.shape.source(g));
            let map = t
                .iter()
                .enumerate()
                .map(|(x, &y)| (from[x].clone(), to[y].clone()))
                .collect();
            actions.insert(self.shape.gen_key(g), map);
        }
        Keyed { levels, actions }
    }

    pub fn from_keyed(shape: C, keyed: &Keyed) -> Result<Self, Error> {
        let mut levels = BTreeMap::new();
        for (k, l) in &keyed.levels {
            let o = shape
                .parse_obj(k)
                .ok_or_else(|| Error::Malformed(format!("unknown level {k}")))?;
            levels.insert(o, l.clone());
        }
        for o in shape.objects() {
            levels.entry(o).or_insert_with(Vec::new);
        }
        let mut actions = BTreeMap::new();
        for (k, map) in &keyed.actions {
            let g = shape
                .parse_gen(k)
                .ok_or_else(|| Error::Malformed(format!("unknown generator {k}")))?;
            let from = &levels[&shape.target(&g)];
            let to = &levels[&shape.source(&g)];
            let mut t = Vec::with_capacity(from.len());
            for x in from {
                let y = map
                    .get(x)
                    .ok_or_else(|| Error::Malformed(format!("{k} undefined on {x}")))?;
                let pos = to
                    .iter()
                    .position(|z| z == y)
                    .ok_or_else(|| Error::Malformed(format!("{k}: {y} unknown")))?;
                t.push(pos);
            }
            actions.insert(g, t);
        }
        Presheaf::new(shape, levels, actions)
    }
}

/// File-format view of a presheaf: levels and action maps by key and id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Keyed {
    pub levels: BTreeMap<String, Vec<String>>,
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

/// Precomposition with an index functor.
pub fn restrict<F: IndexFunctor>(
    functor: &F,
    p: &Presheaf<F::Cod>,
) -> Result<Presheaf<F::Dom>, Error> {
    let dom = functor.domain().clone();
    let cod = &p.shape;
    let mut levels = BTreeMap::new();
    for o in dom.objects() {
        let image = functor.map_obj(&o);
        if !cod.contains(&image) {
            return Err(Error::Truncation(format!(
                "{} needs level {} of the input",
                dom.obj_key(&o),
                cod.obj_key(&image)
            )));
        }
        levels.insert(o, p.level(&image).to_vec());
    }
    let mut actions = BTreeMap::new();
    for g in dom.generators() {
        let word = functor.map_gen(&g);
        for h in &word {
            if !cod.contains(&cod.source(h)) || !cod.contains(&cod.target(h)) {
                return Err(Error::Truncation(format!(
                    "{} needs {}",
                    dom.gen_key(&g),
                    cod.gen_key(h)
                )));
            }
        }
        let start = functor.map_obj(&dom.target(&g));
        actions.insert(g, p.word_table(&start, &word));
    }
    Presheaf::new(dom, levels, actions)
}

/// A natural transformation given by one function per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatMap<C: IndexCategory> {
    pub source: Presheaf<C>,
    pub target: Presheaf<C>,
    pub components: BTreeMap<C::Obj, Vec<usize>>,
}

pub type SMap = NatMap<Simplex>;

impl<C: IndexCategory> NatMap<C> {
    pub fn new(
        source: Presheaf<C>,
        target: Presheaf<C>,
        components: BTreeMap<C::Obj, Vec<usize>>,
    ) -> Result<Self, Error> {
        let m = NatMap {
            source,
            target,
            components,
        };
        m.check_tables()?;
        Ok(m)
    }

    pub fn check_tables(&self) -> Result<(), Error> {
        if self.source.shape.trunc() != self.target.shape.trunc() {
            return Err(Error::Malformed(
                "source and target truncations differ".into(),
            ));
        }
        for o in self.source.shape.objects() {
            let c = self.components.get(&o).ok_or_else(|| {
                Error::Malformed(format!(
                    "missing component {}",
                    self.source.shape.obj_key(&o)
                ))
            })?;
            if c.len() != self.source.size(&o) || c.iter().any(|&y| y >= self.target.size(&o)) {
                return Err(Error::Malformed(format!(
                    "component {} has the wrong shape",
                    self.source.shape.obj_key(&o)
                )));
            }
        }
        Ok(())
    }

    /// Builds components from element ids.
    pub fn from_fn(
        source: Presheaf<C>,
        target: Presheaf<C>,
        f: impl Fn(&C::Obj, usize) -> usize,
    ) -> Result<Self, Error> {
        let components = source
            .shape
            .objects()
            .into_iter()
            .map(|o| {
                let c = (0..source.size(&o)).map(|x| f(&o, x)).collect();
                (o, c)
            })
            .collect();
        NatMap::new(source, target, components)
    }

    pub fn identity(p: &Presheaf<C>) -> Self {
        let components = p
            .levels
            .iter()
            .map(|(o, l)| (o.clone(), (0..l.len()).collect()))
            .collect();
        NatMap {
            source: p.clone(),
            target: p.clone(),
            components,
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &NatMap<C>) -> Result<Self, Error> {
        if first.target != self.source {
            return Err(Error::NotComposable("natural maps".into()));
        }
        let components = first
            .components
            .iter()
            .map(|(o, c)| {
                (
                    o.clone(),
                    c.iter().map(|&x| self.components[o][x]).collect(),
                )
            })
            .collect();
        NatMap::new(first.source.clone(), self.target.clone(), components)
    }

    pub fn apply(&self, o: &C::Obj, x: usize) -> usize {
        self.components[o][x]
    }

    /// Naturality against every generator.
    pub fn validate(&self) -> CheckReport {
        let shape = &self.source.shape;
        let mut report = CheckReport::new("natural map");
        if let Err(e) = self.check_tables() {
            report.fail("tables", Witness::new(e.to_string(), Vec::new()));
            return report;
        }
        for g in shape.generators() {
            let (a, b) = (shape.source(&g), shape.target(&g));
            for x in 0..self.source.size(&b) {
                let lhs = self.apply(&a, self.source.act(&g, x));
                let rhs = self.target.act(&g, self.apply(&b, x));
                report.record("naturality", lhs == rhs, || {
                    Witness::new(
                        shape.gen_key(&g),
                        vec![
                            self.source.id(&b, x).to_string(),
                            self.target.id(&a, lhs).to_string(),
                            self.target.id(&a, rhs).to_string(),
                        ],
                    )
                });
            }
        }
        report
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        self.source
            .shape
            .objects()
            .iter()
            .all(|o| is_bijection(&self.components[o], self.target.size(o)))
    }

    /// Bijective and natural, with witnesses otherwise.
    pub fn iso_report(&self, name: &str) -> CheckReport {
        let mut report = self.validate();
        report.name = name.into();
        for o in self.source.shape.objects() {
            let ok = is_bijection(&self.components[&o], self.target.size(&o));
            report.record("bijective", ok, || {
                Witness::new(
                    self.source.shape.obj_key(&o),
                    vec![format!(
                        "{} -> {}",
                        self.source.size(&o),
                        self.target.size(&o)
                    )],
                )
            });
        }
        report
    }

    /// The restriction of the map along an index functor.
    pub fn restrict<F: IndexFunctor<Cod = C>>(&self, functor: &F) -> Result<NatMap<F::Dom>, Error> {
        let source = restrict(functor, &self.source)?;
        let target = restrict(functor, &self.target)?;
        let components = source
            .shape
            .objects()
            .into_iter()
            .map(|o| (o.clone(), self.components[&functor.map_obj(&o)].clone()))
            .collect();
        NatMap::new(source, target, components)
    }
}

pub fn is_bijection(f: &[usize], cod: usize) -> bool {
    if f.len() != cod {
        return false;
    }
    let mut hit = vec![false; cod];
    for &y in f {
        if y >= cod || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    true
}

/// The strict pullback of `f : A -> C` and `g : B -> C` as the list of pairs.
pub fn pullback_sets(f: &[usize], g: &[usize]) -> Vec<(usize, usize)> {
    let mut by_value: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (b, &c) in g.iter().enumerate() {
        by_value.entry(c).or_default().push(b);
    }
    let mut out = Vec::new();
    for (a, c) in f.iter().enumerate() {
        if let Some(bs) = by_value.get(c) {
            out.extend(bs.iter().map(|&b| (a, b)));
        }
    }
    out
}

/// A commutative square of finite sets
///
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C -bottom-> D
/// ```
#[derive(Clone, Copy, Debug)]
pub struct Square<'a> {
    pub top: &'a [usize],
    pub left: &'a [usize],
    pub right: &'a [usize],
    pub bottom: &'a [usize],
}

/// Why a square is not a pullback, in terms of element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareFailure {
    /// `a` with `right(top a) != bottom(left a)`.
    NotCommuting { a: usize },
    /// Two elements of `A` with the same image in `B ×_D C`.
    NotInjective { a1: usize, a2: usize },
    /// An element `(b, c)` of `B ×_D C` missed by `A`.
    NotSurjective { b: usize, c: usize },
}

impl Square<'_> {
    pub fn failure(&self) -> Option<SquareFailure> {
        let n = self.top.len();
        for a in 0..n {
            if self.right[self.top[a]] != self.bottom[self.left[a]] {
                return Some(SquareFailure::NotCommuting { a });
            }
        }
        let mut hit: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for a in 0..n {
            if let Some(&a1) = hit.get(&(self.top[a], self.left[a])) {
                return Some(SquareFailure::NotInjective { a1, a2: a });
            }
            hit.insert((self.top[a], self.left[a]), a);
        }
        let pairs = pullback_sets(self.right, self.bottom);
        if pairs.len() != n {
            let (b, c) = *pairs
                .iter()
                .find(|p| !hit.contains_key(p))
                .expect("a pair is missed");
            return Some(SquareFailure::NotSurjective { b, c });
        }
        None
    }

    pub fn is_pullback(&self) -> bool {
        self.failure().is_none()
    }
}

/// Named element lookups for witnesses of a square.
pub struct SquareNames<'a> {
    pub a: &'a [String],
    pub b: &'a [String],
    pub c: &'a [String],
}

impl SquareFailure {
    pub fn describe(&self, names: &SquareNames<'_>) -> Vec<String> {
        match *self {
            SquareFailure::NotCommuting { a } => vec![format!("not commuting at {}", names.a[a])],
            SquareFailure::NotInjective { a1, a2 } => {
                vec![format!(
                    "not injective: {} and {}",
                    names.a[a1], names.a[a2]
                )]
            }
            SquareFailure::NotSurjective { b, c } => {
                vec![format!(
                    "not surjective: ({}, {}) has no preimage",
                    names.b[b], names.c[c]
                )]
            }
        }
    }
}

/// Records one square in a report under `family`.
pub fn record_square(
    report: &mut CheckReport,
    family: &str,
    instance: impl FnOnce() -> String,
    sq: Square<'_>,
    names: SquareNames<'_>,
) {
    match sq.failure() {
        None => report.pass(family),
        Some(f) => report.fail(family, Witness::new(instance(), f.describe(&names))),
    }
}

/// The comparison map of a square into the pullback is a bijection.
pub fn is_pullback(sq: Square<'_>, names: SquareNames<'_>) -> CheckReport {
    let mut report = CheckReport::new("pullback");
    record_square(&mut report, "square", || "square".into(), sq, names);
    report
}

/// Coequalizer of `d_0, d_1 : X_1 ⇉ X_0`: class ids (the id of the least
/// representative) and the quotient map.
pub fn colimit0(x: &SSet) -> Result<(Vec<String>, Vec<usize>), Error> {
    if x.shape.trunc < 1 {
        return Err(Error::Truncation("colimit needs level 1".into()));
    }
    let d0 = &x.actions[&SimplexGen::face(1, 0)];
    let d1 = &x.actions[&SimplexGen::face(1, 1)];
    let (classes, map) = coequalize(x.size(&0), d0, d1);
    Ok((
        classes
            .into_iter()
            .map(|r| x.id(&0, r).to_string())
            .collect(),
        map,
    ))
}

/// Coequalizer of two functions into a set of size `n`: class representatives
/// (least members, in increasing order) and the quotient map.
pub fn coequalize(n: usize, f: &[usize], g: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&a, &b) in f.iter().zip(g) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let reps: Vec<usize> = (0..n).filter(|&x| roots[x] == x).collect();
    let map = roots
        .iter()
        .map(|r| reps.binary_search(r).expect("root is a representative"))
        .collect();
    (reps, map)
}

/// Helpers specific to simplicial sets.
impl SSet {
    /// `d_k : X_n -> X_{n-1}`.
    pub fn face(&self, n: usize, k: usize, x: usize) -> usize {
        self.act(&SimplexGen::face(n, k), x)
    }

    /// `s_k : X_n -> X_{n+1}`.
    pub fn degen(&self, n: usize, k: usize, x: usize) -> usize {
        self.act(&SimplexGen::degen(n, k), x)
    }

    pub fn face_table(&self, n: usize, k: usize) -> &[usize] {
        &self.actions[&SimplexGen::face(n, k)]
    }

    pub fn degen_table(&self, n: usize, k: usize) -> &[usize] {
        &self.actions[&SimplexGen::degen(n, k)]
    }

    /// Action of an arbitrary monotone map `[m] -> [n]` as `X_n -> X_m`.
    pub fn act_monotone(&self, phi: &MonotoneMap, x: usize) -> usize {
        self.act_word(&monotone_word(phi), x)
    }

    pub fn monotone_table(&self, phi: &MonotoneMap) -> Vec<usize> {
        self.word_table(&(phi.cod() - 1), &monotone_word(phi))
    }

    /// The constant simplicial set on a set.
    pub fn constant(trunc: usize, ids: &[String]) -> Self {
        let shape = Simplex { trunc };
        let levels = shape
            .objects()
            .into_iter()
            .map(|o| (o, ids.to_vec()))
            .collect();
        let actions = shape
            .generators()
            .into_iter()
            .map(|g| (g, (0..ids.len()).collect()))
            .collect();
        Presheaf {
            shape,
            levels,
            actions,
        }
    }

    /// Builds a simplicial set whose `n`-simplices are `elems(n)`, acted on by
    /// monotone maps.
    pub fn from_monotone<E: Ord + Clone>(
        trunc: usize,
        elems: impl Fn(usize) -> Vec<E>,
        act: impl Fn(&MonotoneMap, &E) -> E,
        show: impl Fn(&E) -> String,
    ) -> Result<Self, Error> {
        let shape = Simplex { trunc };
        Presheaf::build(
            shape,
            |n| elems(*n),
            |g, e| act(&shape.morphism(g), e),
            show,
        )
    }
}

/// The generator word of a monotone map in the presheaf convention.
pub fn monotone_word(phi: &MonotoneMap) -> Vec<SimplexGen> {
    let mut size = phi.dom();
    let mut covariant = Vec::new();
    for op in crate::simplex::factor_word(phi) {
        size = match op {
            Op::Face(_) => size + 1,
            Op::Degen(_) => size - 1,
        };
        covariant.push(SimplexGen { op, at: size - 1 });
    }
    covariant.reverse();
    covariant
}

impl BiSSet {
    /// Vertical face `e_k : B_{i,j} -> B_{i-1,j}`.
    pub fn e(&self, i: usize, j: usize, k: usize, x: usize) -> usize {
        self.act(&BiGen::e(i, j, k), x)
    }
    pub fn t(&self, i: usize, j: usize, k: usize, x: usize) -> usize {
        self.act(&BiGen::t(i, j, k), x)
    }
    /// Horizontal face `d_k : B_{i,j} -> B_{i,j-1}`.
    pub fn d(&self, i: usize, j: usize, k: usize, x: usize) -> usize {
        self.act(&BiGen::d(i, j, k), x)
    }
    pub fn s(&self, i: usize, j: usize, k: usize, x: usize) -> usize {
        self.act(&BiGen::s(i, j, k), x)
    }
}

/// Presheaves on Δ×[1] are simplicial maps from the `b = 1` copy to the
/// `b = 0` copy.
pub fn arrow_to_smap(p: &ArrowSet) -> Result<SMap, Error> {
    let trunc = p.shape.trunc;
    let side = |b: u8| -> Result<SSet, Error> {
        let shape = Simplex { trunc };
        let levels = shape
            .objects()
            .into_iter()
            .map(|n| (n, p.levels[&(n, b)].clone()))
            .collect();
        let actions = shape
            .generators()
            .into_iter()
            .map(|gen| (gen, p.actions[&ArrowGen::Simp { gen, b }].clone()))
            .collect();
        Presheaf::new(shape, levels, actions)
    };
    let (x, y) = (side(1)?, side(0)?);
    let components = (0..=trunc)
        .map(|n| (n, p.actions[&ArrowGen::Arrow { at: n }].clone()))
        .collect();
    NatMap::new(x, y, components)
}

pub fn smap_to_arrow(f: &SMap) -> Result<ArrowSet, Error> {
    let shape = Arrow {
        trunc: f.source.shape.trunc,
    };
    let mut levels = BTreeMap::new();
    for n in 0..=shape.trunc {
        levels.insert((n, 1), f.source.levels[&n].clone());
        levels.insert((n, 0), f.target.levels[&n].clone());
    }
    let mut actions = BTreeMap::new();
    for g in shape.generators() {
        let t = match g {
            ArrowGen::Simp { gen, b: 1 } => f.source.actions[&gen].clone(),
            ArrowGen::Simp { gen, .. } => f.target.actions[&gen].clone(),
            ArrowGen::Arrow { at } => f.components[&at].clone(),
        };
        actions.insert(g, t);
    }
    Presheaf::new(shape, levels, actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain_nerve, nerve_of_poset};

    #[test]
    fn chain_nerve_validates() {
        let x = chain_nerve(2, 4);
        assert!(x.validate().passed());
        assert_eq!(x.size(&1), 6);
    }

    #[test]
    fn corrupted_face_is_detected() {
        let mut x = chain_nerve(2, 3);
        let g = SimplexGen::face(1, 0);
        let t = x.actions.get_mut(&g).unwrap();
        t[0] = (t[0] + 1) % 3;
        let r = x.validate();
        assert!(r.failed());
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn empty_presheaf_validates() {
        assert!(SSet::empty(Simplex { trunc: 3 }).validate().passed());
        assert!(DSet::empty(Abacus::full(3)).validate().passed());
    }

    #[test]
    fn pullbacks_of_sets() {
        let id = [0, 1, 2];
        assert_eq!(pullback_sets(&id, &id), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(pullback_sets(&[0, 0, 0], &[0, 0]).len(), 6);
        let f = [0, 1, 1];
        let g = [1, 0];
        let brute = (0..3)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .filter(|&(a, b)| f[a] == g[b])
            .count();
        assert_eq!(pullback_sets(&f, &g).len(), brute);
    }

    #[test]
    fn squares() {
        let id = [0, 1];
        assert!(Square {
            top: &id,
            left: &id,
            right: &id,
            bottom: &id
        }
        .is_pullback());
        let sq = Square {
            top: &[0, 0],
            left: &[0, 0],
            right: &[0],
            bottom: &[0],
        };
        assert_eq!(
            sq.failure(),
            Some(SquareFailure::NotInjective { a1: 0, a2: 1 })
        );
        let sq = Square {
            top: &[],
            left: &[],
            right: &[0],
            bottom: &[0],
        };
        assert_eq!(
            sq.failure(),
            Some(SquareFailure::NotSurjective { b: 0, c: 0 })
        );
    }

    #[test]
    fn colimits() {
        let chain = chain_nerve(2, 2);
        assert_eq!(colimit0(&chain).unwrap().0.len(), 1);
        let ids: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(colimit0(&SSet::constant(2, &ids)).unwrap().0.len(), 3);
        let two = chain.coproduct(&nerve_of_poset(2, &[(0, 1)], 2)).unwrap();
        assert_eq!(colimit0(&two).unwrap().0.len(), 2);
    }

    #[test]
    fn monotone_actions_agree_with_words() {
        let x = chain_nerve(2, 3);
        for phi in crate::simplex::enumerate_sizes(2, 3) {
            let t = x.monotone_table(&phi);
            assert_eq!(t.len(), x.size(&2));
        }
        let d1d0 = MonotoneMap::new(vec![2], 3).unwrap();
        // the vertex 2 of each 2-simplex
        let t = x.monotone_table(&d1d0);
        let top: Vec<usize> = (0..x.size(&2))
            .map(|s| x.face(1, 0, x.face(2, 0, s)))
            .collect();
        assert_eq!(t, top);
    }

    #[test]
    fn keyed_round_trip() {
        let x = chain_nerve(1, 3);
        let back = SSet::from_keyed(x.shape, &x.to_keyed()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn product_and_coproduct_validate() {
        let x = chain_nerve(1, 3);
        assert!(x.product(&x).unwrap().validate().passed());
        assert!(x.coproduct(&x).unwrap().validate().passed());
    }
}
