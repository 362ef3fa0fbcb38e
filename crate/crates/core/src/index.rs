//! Finite presentations of the index categories and functors between them.
//!
//! An [`IndexCategory`] is a truncated category given by objects, generating
//! morphisms and a semantic composition law. Presheaves store one action per
//! generator; words of generators are read as composites `g1 ∘ g2 ∘ … ∘ gk`,
//! so on a presheaf the action of `g1` is applied first.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::report::{CheckReport, Witness};
use crate::simplex::{compose_unchecked, MonotoneMap, Op};

pub trait IndexCategory: Clone + PartialEq + fmt::Debug {
    type Obj: Clone + Ord + fmt::Debug;
    type Gen: Clone + Ord + fmt::Debug;
    type Mor: Clone + Ord + fmt::Debug;

    /// Shape tag used in the file format.
    fn name(&self) -> &'static str;
    fn trunc(&self) -> usize;
    fn with_trunc(&self, trunc: usize) -> Self;
    fn objects(&self) -> Vec<Self::Obj>;
    fn contains(&self, o: &Self::Obj) -> bool;
    /// Generators whose source and target both lie within the truncation.
    fn generators(&self) -> Vec<Self::Gen>;
    fn source(&self, g: &Self::Gen) -> Self::Obj;
    fn target(&self, g: &Self::Gen) -> Self::Obj;
    fn morphism(&self, g: &Self::Gen) -> Self::Mor;
    fn identity(&self, o: &Self::Obj) -> Self::Mor;
    fn dom(&self, m: &Self::Mor) -> Self::Obj;
    fn cod(&self, m: &Self::Mor) -> Self::Obj;
    fn compose(&self, second: &Self::Mor, first: &Self::Mor) -> Self::Mor;
    fn obj_key(&self, o: &Self::Obj) -> String;
    fn gen_key(&self, g: &Self::Gen) -> String;

    fn parse_obj(&self, s: &str) -> Option<Self::Obj> {
        let s = s.trim();
        self.objects().into_iter().find(|o| self.obj_key(o) == s)
    }

    fn parse_gen(&self, s: &str) -> Option<Self::Gen> {
        let s = s.trim();
        self.generators().into_iter().find(|g| self.gen_key(g) == s)
    }
}

/// Composite `w[0] ∘ w[1] ∘ …` ending at `cod`.
pub fn eval_word<C: IndexCategory>(cat: &C, cod: &C::Obj, word: &[C::Gen]) -> C::Mor {
    let mut acc = cat.identity(cod);
    for g in word {
        acc = cat.compose(&acc, &cat.morphism(g));
    }
    acc
}

/// Generators grouped by target object.
pub fn generators_by_target<C: IndexCategory>(cat: &C) -> BTreeMap<C::Obj, Vec<C::Gen>> {
    let mut out: BTreeMap<C::Obj, Vec<C::Gen>> = BTreeMap::new();
    for o in cat.objects() {
        out.entry(o).or_default();
    }
    for g in cat.generators() {
        out.entry(cat.target(&g)).or_default().push(g);
    }
    out
}

/// Every morphism into `c` reachable by generator words, with a shortest word.
pub fn closure<C: IndexCategory>(cat: &C, c: &C::Obj) -> BTreeMap<C::Mor, Vec<C::Gen>> {
    closure_with(cat, &generators_by_target(cat), c)
}

pub(crate) fn closure_with<C: IndexCategory>(
    cat: &C,
    by_target: &BTreeMap<C::Obj, Vec<C::Gen>>,
    c: &C::Obj,
) -> BTreeMap<C::Mor, Vec<C::Gen>> {
    let mut seen: BTreeMap<C::Mor, Vec<C::Gen>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let id = cat.identity(c);
    seen.insert(id.clone(), Vec::new());
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        let word = seen[&m].clone();
        let d = cat.dom(&m);
        for g in by_target.get(&d).map(Vec::as_slice).unwrap_or(&[]) {
            let next = cat.compose(&m, &cat.morphism(g));
            if !seen.contains_key(&next) {
                let mut w = word.clone();
                w.push(g.clone());
                seen.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    seen
}

/// A functor given on generators by words in the codomain's generators.
pub trait IndexFunctor {
    type Dom: IndexCategory;
    type Cod: IndexCategory;

    fn name(&self) -> &'static str;
    fn domain(&self) -> &Self::Dom;
    fn codomain(&self) -> &Self::Cod;
    fn map_obj(&self, o: &<Self::Dom as IndexCategory>::Obj) -> <Self::Cod as IndexCategory>::Obj;
    fn map_gen(
        &self,
        g: &<Self::Dom as IndexCategory>::Gen,
    ) -> Vec<<Self::Cod as IndexCategory>::Gen>;
    fn map_mor(&self, m: &<Self::Dom as IndexCategory>::Mor) -> <Self::Cod as IndexCategory>::Mor;
}

/// Exhaustive functoriality check over every morphism of the truncated domain.
pub fn check_functor<F: IndexFunctor>(functor: &F) -> CheckReport {
    let dom = functor.domain();
    let cod = functor.codomain();
    let mut report = CheckReport::new(format!("functor {}", functor.name()));
    for o in dom.objects() {
        let image = functor.map_obj(&o);
        report.record("objects in range", cod.contains(&image), || {
            Witness::new(format!("{o:?} ↦ {image:?}"), Vec::new())
        });
        let id_image = functor.map_mor(&dom.identity(&o));
        report.record("identities", id_image == cod.identity(&image), || {
            Witness::new(format!("id at {o:?}"), Vec::new())
        });
    }
    for g in dom.generators() {
        let word = functor.map_gen(&g);
        let t = functor.map_obj(&dom.target(&g));
        let s = functor.map_obj(&dom.source(&g));
        let semantic = functor.map_mor(&dom.morphism(&g));
        let ok = word
            .iter()
            .all(|h| cod.contains(&cod.source(h)) && cod.contains(&cod.target(h)))
            && eval_word(cod, &t, &word) == semantic
            && cod.dom(&semantic) == s
            && cod.cod(&semantic) == t;
        report.record("generator images", ok, || {
            Witness::new(dom.gen_key(&g), Vec::new())
        });
    }
    let by_target = generators_by_target(dom);
    for c in dom.objects() {
        let fc = functor.map_obj(&c);
        for (m, word) in closure_with(dom, &by_target, &c) {
            let image: Vec<_> = word.iter().flat_map(|g| functor.map_gen(g)).collect();
            let ok = eval_word(cod, &fc, &image) == functor.map_mor(&m);
            report.record("composites", ok, || {
                let keys: Vec<String> = word.iter().map(|g| dom.gen_key(g)).collect();
                Witness::new(format!("word {}", keys.join(".")), Vec::new())
            });
        }
    }
    report
}

/// Truncated Δ: objects `[0]..[T]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub trunc: usize,
}

/// `op` is a coface or codegeneracy whose codomain is the object `[at]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexGen {
    pub op: Op,
    pub at: usize,
}

impl SimplexGen {
    pub fn face(at: usize, k: usize) -> Self {
        SimplexGen {
            op: Op::Face(k),
            at,
        }
    }
    pub fn degen(at: usize, k: usize) -> Self {
        SimplexGen {
            op: Op::Degen(k),
            at,
        }
    }
}

pub(crate) fn op_key(op: Op, face: &str, degen: &str) -> String {
    match op {
        Op::Face(k) => format!("{face}{k}"),
        Op::Degen(k) => format!("{degen}{k}"),
    }
}

/// Carrier of a coface/codegeneracy landing in the ordinal of size `cod`.
pub(crate) fn op_map(op: Op, cod: usize) -> MonotoneMap {
    match op {
        Op::Face(k) => MonotoneMap::coface(cod - 1, k),
        Op::Degen(k) => MonotoneMap::codegeneracy(cod - 1, k),
    }
}

impl IndexCategory for Simplex {
    type Obj = usize;
    type Gen = SimplexGen;
    type Mor = MonotoneMap;

    fn name(&self) -> &'static str {
        "sset"
    }
    fn trunc(&self) -> usize {
        self.trunc
    }
    fn with_trunc(&self, trunc: usize) -> Self {
        Simplex { trunc }
    }
    fn objects(&self) -> Vec<usize> {
        (0..=self.trunc).collect()
    }
    fn contains(&self, o: &usize) -> bool {
        *o <= self.trunc
    }
    fn generators(&self) -> Vec<SimplexGen> {
        let mut out = Vec::new();
        for n in 0..=self.trunc {
            if n >= 1 {
                out.extend((0..=n).map(|k| SimplexGen::face(n, k)));
            }
            if n < self.trunc {
                out.extend((0..=n).map(|k| SimplexGen::degen(n, k)));
            }
        }
        out
    }
    fn source(&self, g: &SimplexGen) -> usize {
        match g.op {
            Op::Face(_) => g.at - 1,
            Op::Degen(_) => g.at + 1,
        }
    }
    fn target(&self, g: &SimplexGen) -> usize {
        g.at
    }
    fn morphism(&self, g: &SimplexGen) -> MonotoneMap {
        op_map(g.op, g.at + 1)
    }
    fn identity(&self, o: &usize) -> MonotoneMap {
        MonotoneMap::identity(o + 1)
    }
    fn dom(&self, m: &MonotoneMap) -> usize {
        m.dom() - 1
    }
    fn cod(&self, m: &MonotoneMap) -> usize {
        m.cod() - 1
    }
    fn compose(&self, second: &MonotoneMap, first: &MonotoneMap) -> MonotoneMap {
        compose_unchecked(second, first)
    }
    fn obj_key(&self, o: &usize) -> String {
        format!("{o}")
    }
    fn gen_key(&self, g: &SimplexGen) -> String {
        format!("{}@{}", op_key(g.op, "d", "s"), g.at)
    }
}

/// Truncated Δ×Δ: objects `(i,j)` with `i + j <= T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BiSimplex {
    pub trunc: usize,
}

/// Vertical operators are `e^k`/`t^k` (first index), horizontal ones `d^k`/`s^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiGen {
    pub vertical: bool,
    pub op: Op,
    pub at: (usize, usize),
}

impl BiGen {
    pub fn e(i: usize, j: usize, k: usize) -> Self {
        BiGen {
            vertical: true,
            op: Op::Face(k),
            at: (i, j),
        }
    }
    pub fn t(i: usize, j: usize, k: usize) -> Self {
        BiGen {
            vertical: true,
            op: Op::Degen(k),
            at: (i, j),
        }
    }
    pub fn d(i: usize, j: usize, k: usize) -> Self {
        BiGen {
            vertical: false,
            op: Op::Face(k),
            at: (i, j),
        }
    }
    pub fn s(i: usize, j: usize, k: usize) -> Self {
        BiGen {
            vertical: false,
            op: Op::Degen(k),
            at: (i, j),
        }
    }
}

fn shift(op: Op, n: usize) -> usize {
    match op {
        Op::Face(_) => n - 1,
        Op::Degen(_) => n + 1,
    }
}

impl IndexCategory for BiSimplex {
    type Obj = (usize, usize);
    type Gen = BiGen;
    type Mor = (MonotoneMap, MonotoneMap);

    fn name(&self) -> &'static str {
        "bisset"
    }
    fn trunc(&self) -> usize {
        self.trunc
    }
    fn with_trunc(&self, trunc: usize) -> Self {
        BiSimplex { trunc }
    }
    fn objects(&self) -> Vec<(usize, usize)> {
        let t = self.trunc;
        (0..=t)
            .flat_map(|i| (0..=t - i).map(move |j| (i, j)))
            .collect()
    }
    fn contains(&self, o: &(usize, usize)) -> bool {
        o.0 + o.1 <= self.trunc
    }
    fn generators(&self) -> Vec<BiGen> {
        let mut out = Vec::new();
        for (i, j) in self.objects() {
            let room = i + j < self.trunc;
            if i >= 1 {
                out.extend((0..=i).map(|k| BiGen::e(i, j, k)));
            }
            if room {
                out.extend((0..=i).map(|k| BiGen::t(i, j, k)));
            }
            if j >= 1 {
                out.extend((0..=j).map(|k| BiGen::d(i, j, k)));
            }
            if room {
                out.extend((0..=j).map(|k| BiGen::s(i, j, k)));
            }
        }
        out
    }
    fn source(&self, g: &BiGen) -> (usize, usize) {
        let (i, j) = g.at;
        if g.vertical {
            (shift(g.op, i), j)
        } else {
            (i, shift(g.op, j))
        }
    }
    fn target(&self, g: &BiGen) -> (usize, usize) {
        g.at
    }
    fn morphism(&self, g: &BiGen) -> Self::Mor {
        let (i, j) = g.at;
        if g.vertical {
            (op_map(g.op, i + 1), MonotoneMap::identity(j + 1))
        } else {
            (MonotoneMap::identity(i + 1), op_map(g.op, j + 1))
        }
    }
    fn identity(&self, o: &(usize, usize)) -> Self::Mor {
        (
            MonotoneMap::identity(o.0 + 1),
            MonotoneMap::identity(o.1 + 1),
        )
    }
    fn dom(&self, m: &Self::Mor) -> (usize, usize) {
        (m.0.dom() - 1, m.1.dom() - 1)
    }
    fn cod(&self, m: &Self::Mor) -> (usize, usize) {
        (m.0.cod() - 1, m.1.cod() - 1)
    }
    fn compose(&self, second: &Self::Mor, first: &Self::Mor) -> Self::Mor {
        (
            compose_unchecked(&second.0, &first.0),
            compose_unchecked(&second.1, &first.1),
        )
    }
    fn obj_key(&self, o: &(usize, usize)) -> String {
        format!("({},{})", o.0, o.1)
    }
    fn gen_key(&self, g: &BiGen) -> String {
        let name = if g.vertical {
            op_key(g.op, "e", "t")
        } else {
            op_key(g.op, "d", "s")
        };
        format!("{name}@({},{})", g.at.0, g.at.1)
    }
}

/// Bottom-preserving maps: objects `[n]` carry an extra bottom element, so the
/// total ordinal has `n + 2` elements. With `augmented`, `[-1]` (just the
/// bottom) is included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    pub trunc: usize,
    pub augmented: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplitOp {
    Face(usize),
    Degen(usize),
    /// The extra codegeneracy merging the bottom with the first element.
    Sub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitGen {
    pub op: SplitOp,
    pub at: i64,
}

impl Split {
    fn min(&self) -> i64 {
        if self.augmented {
            -1
        } else {
            0
        }
    }
}

impl IndexCategory for Split {
    type Obj = i64;
    type Gen = SplitGen;
    type Mor = MonotoneMap;

    fn name(&self) -> &'static str {
        if self.augmented {
            "augbsplit"
        } else {
            "bsplit"
        }
    }
    fn trunc(&self) -> usize {
        self.trunc
    }
    fn with_trunc(&self, trunc: usize) -> Self {
        Split { trunc, ..*self }
    }
    fn objects(&self) -> Vec<i64> {
        (self.min()..=self.trunc as i64).collect()
    }
    fn contains(&self, o: &i64) -> bool {
        *o >= self.min() && *o <= self.trunc as i64
    }
    fn generators(&self) -> Vec<SplitGen> {
        let mut out = Vec::new();
        for n in self.objects() {
            if n - 1 >= self.min() {
                out.extend((0..=n as usize).map(|k| SplitGen {
                    op: SplitOp::Face(k),
                    at: n,
                }));
            }
            if n < self.trunc as i64 {
                if n >= 0 {
                    out.extend((0..=n as usize).map(|k| SplitGen {
                        op: SplitOp::Degen(k),
                        at: n,
                    }));
                }
                out.push(SplitGen {
                    op: SplitOp::Sub,
                    at: n,
                });
            }
        }
        out
    }
    fn source(&self, g: &SplitGen) -> i64 {
        match g.op {
            SplitOp::Face(_) => g.at - 1,
            _ => g.at + 1,
        }
    }
    fn target(&self, g: &SplitGen) -> i64 {
        g.at
    }
    fn morphism(&self, g: &SplitGen) -> MonotoneMap {
        let total = (g.at + 1) as usize;
        match g.op {
            SplitOp::Face(k) => MonotoneMap::coface(total, k + 1),
            SplitOp::Degen(k) => MonotoneMap::codegeneracy(total, k + 1),
            SplitOp::Sub => MonotoneMap::codegeneracy(total, 0),
        }
    }
    fn identity(&self, o: &i64) -> MonotoneMap {
        MonotoneMap::identity((o + 2) as usize)
    }
    fn dom(&self, m: &MonotoneMap) -> i64 {
        m.dom() as i64 - 2
    }
    fn cod(&self, m: &MonotoneMap) -> i64 {
        m.cod() as i64 - 2
    }
    fn compose(&self, second: &MonotoneMap, first: &MonotoneMap) -> MonotoneMap {
        compose_unchecked(second, first)
    }
    fn obj_key(&self, o: &i64) -> String {
        format!("{o}")
    }
    fn gen_key(&self, g: &SplitGen) -> String {
        let name = match g.op {
            SplitOp::Face(k) => format!("d{k}"),
            SplitOp::Degen(k) => format!("s{k}"),
            SplitOp::Sub => "ssub".into(),
        };
        format!("{name}@{}", g.at)
    }
}

/// The cocone on an index category: one extra object `[-1]` receiving a single
/// generator from `leg` and a unique map from every object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocone<C: IndexCategory> {
    pub inner: C,
    pub leg: C::Obj,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoconeObj<O> {
    Apex,
    Inner(O),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoconeGen<G> {
    /// The pointing `leg -> [-1]`.
    Pt,
    Inner(G),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoconeMor<M, O> {
    Inner(M),
    ToApex(O),
    IdApex,
}

impl Cocone<Simplex> {
    /// Δ with a pointing `[0] -> [-1]`.
    pub fn pointed(trunc: usize) -> Self {
        Cocone {
            inner: Simplex { trunc },
            leg: 0,
        }
    }
}

impl Cocone<BiSimplex> {
    /// Σ: Δ×Δ with a pointing `[0,0] -> [-1]`.
    pub fn sigma(trunc: usize) -> Self {
        Cocone {
            inner: BiSimplex { trunc },
            leg: (0, 0),
        }
    }
}

impl<C: IndexCategory> IndexCategory for Cocone<C> {
    type Obj = CoconeObj<C::Obj>;
    type Gen = CoconeGen<C::Gen>;
    type Mor = CoconeMor<C::Mor, C::Obj>;

    fn name(&self) -> &'static str {
        match self.inner.name() {
            "bisset" => "sigmaset",
            _ => "pointed",
        }
    }
    fn trunc(&self) -> usize {
        self.inner.trunc()
    }
    fn with_trunc(&self, trunc: usize) -> Self {
        Cocone {
            inner: self.inner.with_trunc(trunc),
            leg: self.leg.clone(),
        }
    }
    fn objects(&self) -> Vec<Self::Obj> {
        let mut out = Vec::from([CoconeObj::Apex]);
        out.extend(self.inner.objects().into_iter().map(CoconeObj::Inner));
        out
    }
    fn contains(&self, o: &Self::Obj) -> bool {
        match o {
            CoconeObj::Apex => true,
            CoconeObj::Inner(x) => self.inner.contains(x),
        }
    }
    fn generators(&self) -> Vec<Self::Gen> {
        let mut out = Vec::from([CoconeGen::Pt]);
        out.extend(self.inner.generators().into_iter().map(CoconeGen::Inner));
        out
    }
    fn source(&self, g: &Self::Gen) -> Self::Obj {
        match g {
            CoconeGen::Pt => CoconeObj::Inner(self.leg.clone()),
            CoconeGen::Inner(h) => CoconeObj::Inner(self.inner.source(h)),
        }
    }
    fn target(&self, g: &Self::Gen) -> Self::Obj {
        match g {
            CoconeGen::Pt => CoconeObj::Apex,
            CoconeGen::Inner(h) => CoconeObj::Inner(self.inner.target(h)),
        }
    }
    fn morphism(&self, g: &Self::Gen) -> Self::Mor {
        match g {
            CoconeGen::Pt => CoconeMor::ToApex(self.leg.clone()),
            CoconeGen::Inner(h) => CoconeMor::Inner(self.inner.morphism(h)),
        }
    }
    fn identity(&self, o: &Self::Obj) -> Self::Mor {
        match o {
            CoconeObj::Apex => CoconeMor::IdApex,
            CoconeObj::Inner(x) => CoconeMor::Inner(self.inner.identity(x)),
        }
    }
    fn dom(&self, m: &Self::Mor) -> Self::Obj {
        match m {
            CoconeMor::Inner(x) => CoconeObj::Inner(self.inner.dom(x)),
            CoconeMor::ToApex(o) => CoconeObj::Inner(o.clone()),
            CoconeMor::IdApex => CoconeObj::Apex,
        }
    }
    fn cod(&self, m: &Self::Mor) -> Self::Obj {
        match m {
            CoconeMor::Inner(x) => CoconeObj::Inner(self.inner.cod(x)),
            _ => CoconeObj::Apex,
        }
    }
    fn compose(&self, second: &Self::Mor, first: &Self::Mor) -> Self::Mor {
        match (second, first) {
            (CoconeMor::Inner(a), CoconeMor::Inner(b)) => {
                CoconeMor::Inner(self.inner.compose(a, b))
            }
            (CoconeMor::ToApex(_), CoconeMor::Inner(b)) => CoconeMor::ToApex(self.inner.dom(b)),
            (CoconeMor::IdApex, x) => x.clone(),
            (x, CoconeMor::IdApex) => x.clone(),
            _ => panic!("composite through the apex is not defined"),
        }
    }
    fn obj_key(&self, o: &Self::Obj) -> String {
        match o {
            CoconeObj::Apex => "-1".into(),
            CoconeObj::Inner(x) => self.inner.obj_key(x),
        }
    }
    fn gen_key(&self, g: &Self::Gen) -> String {
        match g {
            CoconeGen::Pt => "pt@-1".into(),
            CoconeGen::Inner(h) => self.inner.gen_key(h),
        }
    }
}

/// Δ×[1]: a presheaf is a simplicial map from the `b = 1` copy to the `b = 0` copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub trunc: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrowGen {
    Simp {
        gen: SimplexGen,
        b: u8,
    },
    /// `(n,0) -> (n,1)`; acts from the `b = 1` level to the `b = 0` level.
    Arrow {
        at: usize,
    },
}

impl IndexCategory for Arrow {
    type Obj = (usize, u8);
    type Gen = ArrowGen;
    type Mor = (MonotoneMap, u8, u8);

    fn name(&self) -> &'static str {
        "arrow"
    }
    fn trunc(&self) -> usize {
        self.trunc
    }
    fn with_trunc(&self, trunc: usize) -> Self {
        Arrow { trunc }
    }
    fn objects(&self) -> Vec<(usize, u8)> {
        (0..=self.trunc).flat_map(|n| [(n, 0), (n, 1)]).collect()
    }
    fn contains(&self, o: &(usize, u8)) -> bool {
        o.0 <= self.trunc && o.1 <= 1
    }
    fn generators(&self) -> Vec<ArrowGen> {
        let simp = Simplex { trunc: self.trunc }.generators();
        let mut out = Vec::new();
        for b in [0u8, 1] {
            out.extend(simp.iter().map(|&gen| ArrowGen::Simp { gen, b }));
        }
        out.extend((0..=self.trunc).map(|at| ArrowGen::Arrow { at }));
        out
    }
    fn source(&self, g: &ArrowGen) -> (usize, u8) {
        match *g {
            ArrowGen::Simp { gen, b } => (Simplex { trunc: self.trunc }.source(&gen), b),
            ArrowGen::Arrow { at } => (at, 0),
        }
    }
    fn target(&self, g: &ArrowGen) -> (usize, u8) {
        match *g {
            ArrowGen::Simp { gen, b } => (gen.at, b),
            ArrowGen::Arrow { at } => (at, 1),
        }
    }
    fn morphism(&self, g: &ArrowGen) -> Self::Mor {
        match *g {
            ArrowGen::Simp { gen, b } => (op_map(gen.op, gen.at + 1), b, b),
            ArrowGen::Arrow { at } => (MonotoneMap::identity(at + 1), 0, 1),
        }
    }
    fn identity(&self, o: &(usize, u8)) -> Self::Mor {
        (MonotoneMap::identity(o.0 + 1), o.1, o.1)
    }
    fn dom(&self, m: &Self::Mor) -> (usize, u8) {
        (m.0.dom() - 1, m.1)
    }
    fn cod(&self, m: &Self::Mor) -> (usize, u8) {
        (m.0.cod() - 1, m.2)
    }
    fn compose(&self, second: &Self::Mor, first: &Self::Mor) -> Self::Mor {
        (compose_unchecked(&second.0, &first.0), first.1, second.2)
    }
    fn obj_key(&self, o: &(usize, u8)) -> String {
        format!("({},{})", o.0, o.1)
    }
    fn gen_key(&self, g: &ArrowGen) -> String {
        match *g {
            ArrowGen::Simp { gen, b } => format!("{}@({},{b})", op_key(gen.op, "d", "s"), gen.at),
            ArrowGen::Arrow { at } => format!("F@{at}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::enumerate_sizes;

    #[test]
    fn simplex_generators_reach_every_map() {
        let cat = Simplex { trunc: 4 };
        for c in cat.objects() {
            let reached = closure(&cat, &c);
            let expected: usize = (0..=4).map(|d| enumerate_sizes(d + 1, c + 1).len()).sum();
            assert_eq!(reached.len(), expected);
            for (m, w) in &reached {
                assert_eq!(&eval_word(&cat, &c, w), m);
            }
        }
    }

    #[test]
    fn split_generators_reach_every_bottom_preserving_map() {
        for augmented in [false, true] {
            let cat = Split {
                trunc: 3,
                augmented,
            };
            for c in cat.objects() {
                let reached = closure(&cat, &c);
                let expected: usize = cat
                    .objects()
                    .iter()
                    .map(|&d| {
                        enumerate_sizes((d + 2) as usize, (c + 2) as usize)
                            .into_iter()
                            .filter(|m| m.apply(0) == 0)
                            .count()
                    })
                    .sum();
                assert_eq!(reached.len(), expected, "augmented={augmented} c={c}");
            }
        }
    }

    #[test]
    fn bisimplex_and_cocone_counts() {
        let sigma = Cocone::sigma(2);
        let reached = closure(&sigma, &CoconeObj::Apex);
        assert_eq!(reached.len(), 1 + sigma.inner.objects().len());
        let cat = BiSimplex { trunc: 3 };
        let r = closure(&cat, &(1, 1));
        let expected: usize = cat
            .objects()
            .iter()
            .map(|&(a, b)| enumerate_sizes(a + 1, 2).len() * enumerate_sizes(b + 1, 2).len())
            .sum();
        assert_eq!(r.len(), expected);
    }

    #[test]
    fn keys_round_trip() {
        let cat = Cocone::sigma(3);
        for g in cat.generators() {
            assert_eq!(cat.parse_gen(&cat.gen_key(&g)), Some(g));
        }
        let split = Split {
            trunc: 3,
            augmented: true,
        };
        for o in split.objects() {
            assert_eq!(split.parse_obj(&split.obj_key(&o)), Some(o));
        }
    }
}
