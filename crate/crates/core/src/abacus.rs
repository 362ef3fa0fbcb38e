//! The abacus category 𝒟 and the structural functors around it.
//!
//! An object `[i,j]` is a string of `i+1` black beads followed by `j+1` white
//! beads (`i, j >= -1`, not both `-1`). A morphism is a monotone map of the
//! underlying strings sending black beads to black beads; white beads may land
//! on black ones. Color-preserving maps form Δ_{/[1]}, and every morphism is a
//! string of abacus moves `f` (the first white bead turns black) followed by a
//! color-preserving map.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::index::{
    closure, eval_word, Arrow, ArrowGen, BiGen, BiSimplex, Cocone, CoconeGen, CoconeMor, CoconeObj,
    IndexCategory, IndexFunctor, Simplex, SimplexGen, Split, SplitGen, SplitOp,
};
use crate::report::{CheckReport, Witness};
use crate::simplex::{
    compose_unchecked, enumerate_sizes, epi_mono_factor, free_bottom, ordinal_sum, MonotoneMap, Op,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DObj {
    pub i: i64,
    pub j: i64,
}

impl DObj {
    pub fn new(i: i64, j: i64) -> Result<Self, Error> {
        let o = DObj { i, j };
        if o.is_valid() {
            Ok(o)
        } else {
            Err(Error::OutOfRange(format!("object {o}")))
        }
    }

    pub fn is_valid(&self) -> bool {
        self.i >= -1 && self.j >= -1 && !(self.i == -1 && self.j == -1)
    }

    /// Number of beads.
    pub fn size(&self) -> usize {
        (self.i + self.j + 2) as usize
    }

    /// Degree of the underlying ordinal, `i + 1 + j`.
    pub fn degree(&self) -> i64 {
        self.i + 1 + self.j
    }

    pub fn blacks(&self) -> usize {
        (self.i + 1) as usize
    }
}

impl fmt::Display for DObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

pub(crate) fn parse_pair(s: &str, open: char, close: char) -> Option<(i64, i64)> {
    let inner = s.trim().strip_prefix(open)?.strip_suffix(close)?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// A morphism of 𝒟.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeadMap {
    pub src: DObj,
    pub tgt: DObj,
    pub carrier: MonotoneMap,
}

impl BeadMap {
    pub fn new(src: DObj, tgt: DObj, carrier: MonotoneMap) -> Result<Self, Error> {
        if !src.is_valid() || !tgt.is_valid() {
            return Err(Error::OutOfRange(format!("{src} -> {tgt}")));
        }
        if carrier.dom() != src.size() || carrier.cod() != tgt.size() {
            return Err(Error::NotComposable(format!(
                "carrier {carrier} for {src} -> {tgt}"
            )));
        }
        let b = BeadMap { src, tgt, carrier };
        if !b.respects_colors() {
            return Err(Error::OutOfRange(format!(
                "{} sends a black bead to a white one",
                b.carrier
            )));
        }
        Ok(b)
    }

    pub fn identity(o: DObj) -> Self {
        BeadMap {
            src: o,
            tgt: o,
            carrier: MonotoneMap::identity(o.size()),
        }
    }

    fn respects_colors(&self) -> bool {
        (0..self.src.blacks()).all(|x| self.carrier.apply(x) < self.tgt.blacks())
    }

    /// Color preserving, i.e. in Δ_{/[1]}.
    pub fn preserves_colors(&self) -> bool {
        (self.src.blacks()..self.src.size()).all(|x| self.carrier.apply(x) >= self.tgt.blacks())
    }

    /// White beads of the source sent to black beads of the target.
    pub fn whites_to_black(&self) -> usize {
        (self.src.blacks()..self.src.size())
            .filter(|&x| self.carrier.apply(x) < self.tgt.blacks())
            .count()
    }

    /// The restriction `[i] -> [i']` to black beads.
    pub fn black_part(&self) -> MonotoneMap {
        MonotoneMap::from_parts(
            self.carrier.restrict_prefix(self.src.blacks()),
            self.tgt.blacks(),
        )
    }

    /// Colors as a string such as `BBWW` for source and target.
    pub fn colors(&self) -> (String, String) {
        let paint = |o: DObj| {
            (0..o.size())
                .map(|x| if x < o.blacks() { 'B' } else { 'W' })
                .collect()
        };
        (paint(self.src), paint(self.tgt))
    }
}

impl fmt::Display for BeadMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} via {:?}",
            self.src,
            self.tgt,
            self.carrier.values()
        )
    }
}

/// `g2 ∘ g1`.
pub fn bead_compose(g2: &BeadMap, g1: &BeadMap) -> Result<BeadMap, Error> {
    if g1.tgt != g2.src {
        return Err(Error::NotComposable(format!("{g2} after {g1}")));
    }
    let b = BeadMap {
        src: g1.src,
        tgt: g2.tgt,
        carrier: compose_unchecked(&g2.carrier, &g1.carrier),
    };
    debug_assert!(b.respects_colors());
    Ok(b)
}

/// Generator names of 𝒟.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AbacusOp {
    /// Vertical coface `e^k : [i-1,j] -> [i,j]`.
    E(usize),
    /// Vertical codegeneracy `t^k : [i+1,j] -> [i,j]`.
    T(usize),
    /// Horizontal coface `d^k : [i,j-1] -> [i,j]`.
    D(usize),
    /// Horizontal codegeneracy `s^k : [i,j+1] -> [i,j]`.
    S(usize),
    /// Abacus map `f : [i-1,j+1] -> [i,j]`.
    F,
    /// Extra bottom codegeneracy `ssub : [i,j+1] -> [i,j]`, joining the last
    /// black bead and the first white bead.
    Sub,
}

/// A generator, named by its operator and its codomain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbacusGen {
    pub op: AbacusOp,
    pub at: DObj,
}

impl AbacusGen {
    pub fn source(&self) -> DObj {
        let DObj { i, j } = self.at;
        match self.op {
            AbacusOp::E(_) => DObj { i: i - 1, j },
            AbacusOp::T(_) => DObj { i: i + 1, j },
            AbacusOp::D(_) => DObj { i, j: j - 1 },
            AbacusOp::S(_) | AbacusOp::Sub => DObj { i, j: j + 1 },
            AbacusOp::F => DObj { i: i - 1, j: j + 1 },
        }
    }

    /// Whether the indices are legal and both endpoints are objects of 𝒟.
    pub fn is_legal(&self) -> bool {
        let DObj { i, j } = self.at;
        let index_ok = match self.op {
            AbacusOp::E(k) | AbacusOp::T(k) => i >= 0 && (k as i64) <= i,
            AbacusOp::D(k) | AbacusOp::S(k) => j >= 0 && (k as i64) <= j,
            AbacusOp::F | AbacusOp::Sub => i >= 0,
        };
        index_ok && self.at.is_valid() && self.source().is_valid()
    }

    pub fn bead(&self) -> BeadMap {
        let DObj { i, j } = self.at;
        let n = (i + 1 + j) as usize;
        let carrier = match self.op {
            AbacusOp::E(k) => MonotoneMap::coface(n, k),
            AbacusOp::T(k) => MonotoneMap::codegeneracy(n, k),
            AbacusOp::D(k) => MonotoneMap::coface(n, k + (i + 1) as usize),
            AbacusOp::S(k) => MonotoneMap::codegeneracy(n, k + (i + 1) as usize),
            AbacusOp::F => MonotoneMap::identity(n + 1),
            AbacusOp::Sub => MonotoneMap::codegeneracy(n, i as usize),
        };
        BeadMap {
            src: self.source(),
            tgt: self.at,
            carrier,
        }
    }

    /// The generator with operator `op` whose source is `src`.
    pub fn from_source(op: AbacusOp, src: DObj) -> Result<Self, Error> {
        let DObj { i, j } = src;
        let at = match op {
            AbacusOp::E(_) => DObj { i: i + 1, j },
            AbacusOp::T(_) => DObj { i: i - 1, j },
            AbacusOp::D(_) => DObj { i, j: j + 1 },
            AbacusOp::S(_) | AbacusOp::Sub => DObj { i, j: j - 1 },
            AbacusOp::F => DObj { i: i + 1, j: j - 1 },
        };
        let g = AbacusGen { op, at };
        if g.is_legal() {
            Ok(g)
        } else {
            Err(Error::OutOfRange(format!("{} out of {src}", op_token(op))))
        }
    }
}

fn op_token(op: AbacusOp) -> String {
    match op {
        AbacusOp::E(k) => format!("e{k}"),
        AbacusOp::T(k) => format!("t{k}"),
        AbacusOp::D(k) => format!("d{k}"),
        AbacusOp::S(k) => format!("s{k}"),
        AbacusOp::F => "f".into(),
        AbacusOp::Sub => "ssub".into(),
    }
}

fn parse_token(token: &str) -> Option<AbacusOp> {
    match token {
        "f" => return Some(AbacusOp::F),
        "ssub" => return Some(AbacusOp::Sub),
        _ => {}
    }
    let mut chars = token.chars();
    let head = chars.next()?;
    let k: usize = chars.as_str().parse().ok()?;
    match head {
        'e' => Some(AbacusOp::E(k)),
        't' => Some(AbacusOp::T(k)),
        'd' => Some(AbacusOp::D(k)),
        's' => Some(AbacusOp::S(k)),
        _ => None,
    }
}

/// The bead map of a generator given by its operator and source object.
pub fn bead_of_generator(op: AbacusOp, src: DObj) -> Result<BeadMap, Error> {
    Ok(AbacusGen::from_source(op, src)?.bead())
}

/// Applies operators in order starting at `src`; `None` if a step is illegal
/// or leaves the objects allowed by `fits`.
pub fn eval_ops_from(src: DObj, ops: &[AbacusOp], fits: &dyn Fn(DObj) -> bool) -> Option<BeadMap> {
    if !src.is_valid() || !fits(src) {
        return None;
    }
    let mut acc = BeadMap::identity(src);
    for &op in ops {
        let g = AbacusGen::from_source(op, acc.tgt).ok()?;
        if !fits(g.at) {
            return None;
        }
        acc = bead_compose(&g.bead(), &acc).ok()?;
    }
    Some(acc)
}

/// All morphisms `src -> tgt`.
pub fn hom_enumerate(src: DObj, tgt: DObj) -> Vec<BeadMap> {
    if !src.is_valid() || !tgt.is_valid() {
        return Vec::new();
    }
    enumerate_sizes(src.size(), tgt.size())
        .into_iter()
        .map(|carrier| BeadMap { src, tgt, carrier })
        .filter(BeadMap::respects_colors)
        .collect()
}

/// `g = simp ∘ ab` with `ab` a string of abacus moves and `simp` color
/// preserving. Both are returned as operators in application order.
pub fn factorize(g: &BeadMap) -> (Vec<AbacusOp>, Vec<AbacusOp>) {
    let w = g.whites_to_black();
    let ab = vec![AbacusOp::F; w];
    let mid = DObj {
        i: g.src.i + w as i64,
        j: g.src.j - w as i64,
    };
    let black = MonotoneMap::from_parts(g.carrier.restrict_prefix(mid.blacks()), g.tgt.blacks());
    let white_vals: Vec<usize> = g.carrier.values()[mid.blacks()..]
        .iter()
        .map(|&x| x - g.tgt.blacks())
        .collect();
    let white = MonotoneMap::from_parts(white_vals, (g.tgt.j + 1) as usize);
    let (bd, bf) = epi_mono_factor(&black);
    let (wd, wf) = epi_mono_factor(&white);
    let mut simp = Vec::new();
    simp.extend(bd.into_iter().map(AbacusOp::T));
    simp.extend(wd.into_iter().map(AbacusOp::S));
    simp.extend(bf.into_iter().map(AbacusOp::E));
    simp.extend(wf.into_iter().map(AbacusOp::D));
    (ab, simp)
}

/// Operators of the canonical word, in application order.
pub fn canonical_ops(g: &BeadMap) -> Vec<AbacusOp> {
    let (mut ab, simp) = factorize(g);
    ab.extend(simp);
    ab
}

/// The canonical word of a morphism as generators, in the presheaf
/// convention (first generator acts first).
pub fn generator_word(g: &BeadMap) -> Vec<AbacusGen> {
    let mut at = g.src;
    let mut word = Vec::new();
    for op in canonical_ops(g) {
        let gen = AbacusGen::from_source(op, at).expect("canonical words are legal");
        at = gen.at;
        word.push(gen);
    }
    word.reverse();
    word
}

/// Formats a morphism as a word such as `e1.f@[0,1]`.
pub fn format_bead_word(g: &BeadMap) -> String {
    let ops = canonical_ops(g);
    let tokens: Vec<String> = ops.iter().rev().map(|&op| op_token(op)).collect();
    format!("{}@{}", tokens.join("."), g.src)
}

/// Parses `tok.tok…@[i,j]`, the rightmost token being applied first.
pub fn parse_bead_word(text: &str) -> Result<BeadMap, Error> {
    let (word, obj) = text
        .trim()
        .split_once('@')
        .ok_or_else(|| Error::Parse(text.into()))?;
    let (i, j) = parse_pair(obj, '[', ']').ok_or_else(|| Error::Parse(obj.into()))?;
    let src = DObj::new(i, j)?;
    let mut ops = Vec::new();
    if !word.trim().is_empty() {
        for token in word.split('.').rev() {
            ops.push(
                parse_token(token.trim())
                    .ok_or_else(|| Error::Parse(format!("token {token:?}")))?,
            );
        }
    }
    let mut acc = BeadMap::identity(src);
    for op in ops {
        let g = AbacusGen::from_source(op, acc.tgt)?;
        acc = bead_compose(&g.bead(), &acc)?;
    }
    Ok(acc)
}

/// Truncated 𝒟 (`i+1+j <= T`). `abacus = false` drops `f` and `ssub`, leaving
/// Δ_{/[1]}; `min_i = 0` removes the augmentation row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Abacus {
    pub trunc: usize,
    pub abacus: bool,
    pub min_i: i64,
}

impl Abacus {
    pub fn full(trunc: usize) -> Self {
        Abacus {
            trunc,
            abacus: true,
            min_i: -1,
        }
    }
    /// Δ_{/[1]}: row-and-column augmented bisimplicial shape.
    pub fn slice(trunc: usize) -> Self {
        Abacus {
            trunc,
            abacus: false,
            min_i: -1,
        }
    }
    /// 𝒟 without its augmentation row.
    pub fn upper_rows(trunc: usize) -> Self {
        Abacus {
            trunc,
            abacus: true,
            min_i: 0,
        }
    }
}

impl IndexCategory for Abacus {
    type Obj = DObj;
    type Gen = AbacusGen;
    type Mor = BeadMap;

    fn name(&self) -> &'static str {
        match (self.abacus, self.min_i) {
            (true, -1) => "dset",
            (false, _) => "dslice",
            _ => "dset-half",
        }
    }
    fn trunc(&self) -> usize {
        self.trunc
    }
    fn with_trunc(&self, trunc: usize) -> Self {
        Abacus { trunc, ..*self }
    }
    fn objects(&self) -> Vec<DObj> {
        let t = self.trunc as i64;
        let mut out = Vec::new();
        for i in self.min_i..=t {
            for j in -1..=(t - 1 - i) {
                let o = DObj { i, j };
                if o.is_valid() {
                    out.push(o);
                }
            }
        }
        out
    }
    fn contains(&self, o: &DObj) -> bool {
        o.is_valid() && o.i >= self.min_i && o.degree() <= self.trunc as i64
    }
    fn generators(&self) -> Vec<AbacusGen> {
        let mut out = Vec::new();
        for at in self.objects() {
            let n = (at.i.max(at.j) + 2) as usize;
            let mut ops: Vec<AbacusOp> = Vec::new();
            for k in 0..n {
                ops.extend([
                    AbacusOp::E(k),
                    AbacusOp::T(k),
                    AbacusOp::D(k),
                    AbacusOp::S(k),
                ]);
            }
            if self.abacus {
                ops.extend([AbacusOp::F, AbacusOp::Sub]);
            }
            for op in ops {
                let g = AbacusGen { op, at };
                if g.is_legal() && self.contains(&g.source()) {
                    out.push(g);
                }
            }
        }
        out
    }
    fn source(&self, g: &AbacusGen) -> DObj {
        g.source()
    }
    fn target(&self, g: &AbacusGen) -> DObj {
        g.at
    }
    fn morphism(&self, g: &AbacusGen) -> BeadMap {
        g.bead()
    }
    fn identity(&self, o: &DObj) -> BeadMap {
        BeadMap::identity(*o)
    }
    fn dom(&self, m: &BeadMap) -> DObj {
        m.src
    }
    fn cod(&self, m: &BeadMap) -> DObj {
        m.tgt
    }
    fn compose(&self, second: &BeadMap, first: &BeadMap) -> BeadMap {
        BeadMap {
            src: first.src,
            tgt: second.tgt,
            carrier: compose_unchecked(&second.carrier, &first.carrier),
        }
    }
    fn obj_key(&self, o: &DObj) -> String {
        format!("({},{})", o.i, o.j)
    }
    fn gen_key(&self, g: &AbacusGen) -> String {
        format!("{}@({},{})", op_token(g.op), g.at.i, g.at.j)
    }
    fn parse_obj(&self, s: &str) -> Option<DObj> {
        let (i, j) = parse_pair(s, '(', ')')?;
        let o = DObj { i, j };
        self.contains(&o).then_some(o)
    }
    fn parse_gen(&self, s: &str) -> Option<AbacusGen> {
        let (tok, obj) = s.trim().split_once('@')?;
        let g = AbacusGen {
            op: parse_token(tok)?,
            at: self.parse_obj(obj)?,
        };
        (g.is_legal()
            && self.contains(&g.source())
            && (self.abacus || !matches!(g.op, AbacusOp::F | AbacusOp::Sub)))
        .then_some(g)
    }
}

struct Relation {
    family: &'static str,
    src: DObj,
    lhs: Vec<AbacusOp>,
    rhs: Vec<AbacusOp>,
}

fn simplicial_relations(n: i64) -> Vec<(Vec<Op>, Vec<Op>)> {
    // cosimplicial identities out of the ordinal [n], in application order
    let mut out = Vec::new();
    let n1 = (n + 1) as usize;
    for j in 0..=n1 + 1 {
        for i in 0..j {
            if j - 1 <= n1 {
                out.push((
                    vec![Op::Face(i), Op::Face(j)],
                    vec![Op::Face(j - 1), Op::Face(i)],
                ));
            }
        }
    }
    if n >= 2 {
        let m = (n - 2) as usize;
        for j in 0..=m {
            for i in 0..=j {
                out.push((
                    vec![Op::Degen(i), Op::Degen(j)],
                    vec![Op::Degen(j + 1), Op::Degen(i)],
                ));
            }
        }
    }
    if n >= 0 {
        let n0 = n as usize;
        for j in 0..=n0 {
            for i in 0..=n0 + 1 {
                let lhs = vec![Op::Face(i), Op::Degen(j)];
                let rhs = if i < j {
                    vec![Op::Degen(j - 1), Op::Face(i)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![Op::Degen(j), Op::Face(i - 1)]
                };
                out.push((lhs, rhs));
            }
        }
    }
    out
}

fn vertical(op: Op) -> AbacusOp {
    match op {
        Op::Face(k) => AbacusOp::E(k),
        Op::Degen(k) => AbacusOp::T(k),
    }
}

fn horizontal(op: Op) -> AbacusOp {
    match op {
        Op::Face(k) => AbacusOp::D(k),
        Op::Degen(k) => AbacusOp::S(k),
    }
}

fn relations_at(src: DObj) -> Vec<Relation> {
    use AbacusOp::*;
    let DObj { i, j } = src;
    let mut out = Vec::new();
    let mut push = |family, lhs: Vec<AbacusOp>, rhs: Vec<AbacusOp>| {
        out.push(Relation {
            family,
            src,
            lhs,
            rhs,
        })
    };
    for (l, r) in simplicial_relations(i) {
        push(
            "vertical cosimplicial",
            l.into_iter().map(vertical).collect(),
            r.into_iter().map(vertical).collect(),
        );
    }
    for (l, r) in simplicial_relations(j) {
        push(
            "horizontal cosimplicial",
            l.into_iter().map(horizontal).collect(),
            r.into_iter().map(horizontal).collect(),
        );
    }
    let span = (i.max(j) + 3) as usize;
    for a in 0..span {
        for b in 0..span {
            for (v, h) in [(E(a), D(b)), (E(a), S(b)), (T(a), D(b)), (T(a), S(b))] {
                push("interchange", vec![v, h], vec![h, v]);
            }
        }
    }
    let top = |x: i64| (x.max(0)) as usize;
    // abacus relations
    for k in 1..=top(j + 1) {
        push("f d^k = d^(k-1) f", vec![D(k), F], vec![F, D(k - 1)]);
    }
    if j >= 1 {
        for k in 1..=top(j - 1) {
            push("f s^k = s^(k-1) f", vec![S(k), F], vec![F, S(k - 1)]);
        }
    }
    for k in 0..=top(i + 1) {
        push("e^k f = f e^k", vec![F, E(k)], vec![E(k), F]);
    }
    push("e^top = f d^bot", vec![E(top(i + 1))], vec![D(0), F]);
    if i >= -1 {
        push(
            "f s^bot = t^top f f",
            vec![S(0), F],
            vec![F, F, T(top(i + 1))],
        );
    }
    if i >= 1 {
        for k in 0..=top(i - 1) {
            push("f t^k = t^k f", vec![T(k), F], vec![F, T(k)]);
        }
    }
    // split cosimplicial identities for ssub
    if j >= 0 {
        for k in 0..=top(j) {
            push(
                "ssub d^(k+1) = d^k ssub",
                vec![D(k + 1), Sub],
                vec![Sub, D(k)],
            );
        }
    }
    push("ssub d^0 = id", vec![D(0), Sub], vec![]);
    if j >= 1 {
        for k in 0..=top(j - 1) {
            push(
                "ssub s^(k+1) = s^k ssub",
                vec![S(k + 1), Sub],
                vec![Sub, S(k)],
            );
        }
    }
    push("ssub s^0 = ssub ssub", vec![S(0), Sub], vec![Sub, Sub]);
    for k in 0..=top(i) {
        push("e^k ssub = ssub e^k", vec![Sub, E(k)], vec![E(k), Sub]);
    }
    if i >= 1 {
        for k in 0..=top(i - 1) {
            push("ssub t^k = t^k ssub", vec![T(k), Sub], vec![Sub, T(k)]);
        }
    }
    // the two presentations
    push("f = ssub e^top", vec![F], vec![E(top(i + 1)), Sub]);
    push("ssub = t^top f", vec![Sub], vec![F, T(top(i))]);
    out
}

fn relation_suite_with(
    name: String,
    objects: Vec<DObj>,
    fits: &dyn Fn(DObj) -> bool,
) -> CheckReport {
    let mut report = CheckReport::new(name);
    for src in objects {
        for rel in relations_at(src) {
            let (Some(l), Some(r)) = (
                eval_ops_from(rel.src, &rel.lhs, fits),
                eval_ops_from(rel.src, &rel.rhs, fits),
            ) else {
                continue;
            };
            report.record(rel.family, l == r, || {
                let show = |ops: &[AbacusOp]| {
                    ops.iter()
                        .rev()
                        .map(|&o| op_token(o))
                        .collect::<Vec<_>>()
                        .join(".")
                };
                Witness::new(
                    format!(
                        "{} at {}: {} vs {}",
                        rel.family,
                        rel.src,
                        show(&rel.lhs),
                        show(&rel.rhs)
                    ),
                    vec![format!("{l}"), format!("{r}")],
                )
            });
        }
    }
    report
}

/// Every relation of both presentations at all objects `[i,j]` with
/// `i <= max_i`, `j <= max_j`, composites staying inside that box.
pub fn relation_suite(max_i: i64, max_j: i64) -> CheckReport {
    let fits = move |o: DObj| o.i <= max_i && o.j <= max_j;
    let objects = (-1..=max_i)
        .flat_map(|i| (-1..=max_j).map(move |j| DObj { i, j }))
        .filter(DObj::is_valid)
        .collect();
    relation_suite_with(format!("relations i<={max_i} j<={max_j}"), objects, &fits)
}

/// Every relation with all objects involved of degree at most `max_degree`.
pub fn relation_suite_degree(max_degree: usize) -> CheckReport {
    let shape = Abacus::full(max_degree);
    relation_suite_with(
        format!("relations degree<={max_degree}"),
        shape.objects(),
        &move |o| shape.contains(&o),
    )
}

/// `f^(m+n+1) ∘ d^m = e^(i+1) ∘ f^(m+n)` out of `[i-m, j+m]`.
pub fn trapezium_check(i: i64, j: i64, m: i64, n: i64) -> Result<CheckReport, Error> {
    let src = DObj { i: i - m, j: j + m };
    if !(DObj { i, j }).is_valid() || m < 0 || n < 0 || m > i + 1 || n > j + 1 || !src.is_valid() {
        return Err(Error::OutOfRange(format!("trapezium ({i},{j},{m},{n})")));
    }
    let mut lhs = vec![AbacusOp::D(m as usize)];
    lhs.extend(core::iter::repeat_n(AbacusOp::F, (m + n + 1) as usize));
    let mut rhs = vec![AbacusOp::F; (m + n) as usize];
    rhs.push(AbacusOp::E((i + 1) as usize));
    let any = |_: DObj| true;
    let mut report = CheckReport::new(format!("trapezium ({i},{j},{m},{n})"));
    match (
        eval_ops_from(src, &lhs, &any),
        eval_ops_from(src, &rhs, &any),
    ) {
        (Some(l), Some(r)) => report.record("trapezium", l == r, || {
            Witness::new(
                format!("out of {src}"),
                vec![format!("{l}"), format!("{r}")],
            )
        }),
        _ => {
            return Err(Error::OutOfRange(format!(
                "trapezium ({i},{j},{m},{n}) leaves 𝒟"
            )))
        }
    }
    Ok(report)
}

/// Hom-set sizes by enumeration against the morphisms reached by generator
/// words, for all objects of degree at most `max_degree`.
pub fn presentation_completeness(max_degree: usize) -> CheckReport {
    let shape = Abacus::full(max_degree);
    let mut report = CheckReport::new(format!("presentation degree<={max_degree}"));
    for tgt in shape.objects() {
        let reached = closure(&shape, &tgt);
        for src in shape.objects() {
            let by_words = reached.keys().filter(|m| m.src == src).count();
            let enumerated = hom_enumerate(src, tgt);
            let ok =
                by_words == enumerated.len() && enumerated.iter().all(|m| reached.contains_key(m));
            report.record("hom counts", ok, || {
                Witness::new(
                    format!("Hom({src},{tgt})"),
                    vec![format!("{by_words}"), format!("{}", enumerated.len())],
                )
            });
        }
        for (m, w) in &reached {
            report.record("words evaluate", &eval_word(&shape, &tgt, w) == m, || {
                Witness::new(format!("{m}"), Vec::new())
            });
        }
    }
    report
}

/// r : 𝒟 → Δ, `[i,j] ↦ [i+1+j]`, a bead map to its carrier.
#[derive(Clone, Copy, Debug)]
pub struct RFunctor {
    pub dom: Abacus,
    pub cod: Simplex,
}

impl RFunctor {
    pub fn new(dom: Abacus) -> Self {
        RFunctor {
            dom,
            cod: Simplex { trunc: dom.trunc },
        }
    }
}

impl IndexFunctor for RFunctor {
    type Dom = Abacus;
    type Cod = Simplex;
    fn name(&self) -> &'static str {
        "r"
    }
    fn domain(&self) -> &Abacus {
        &self.dom
    }
    fn codomain(&self) -> &Simplex {
        &self.cod
    }
    fn map_obj(&self, o: &DObj) -> usize {
        o.degree() as usize
    }
    fn map_gen(&self, g: &AbacusGen) -> Vec<SimplexGen> {
        let at = g.at.degree() as usize;
        let b = g.at.blacks();
        match g.op {
            AbacusOp::E(k) => vec![SimplexGen::face(at, k)],
            AbacusOp::T(k) => vec![SimplexGen::degen(at, k)],
            AbacusOp::D(k) => vec![SimplexGen::face(at, k + b)],
            AbacusOp::S(k) => vec![SimplexGen::degen(at, k + b)],
            AbacusOp::F => vec![],
            AbacusOp::Sub => vec![SimplexGen::degen(at, b - 1)],
        }
    }
    fn map_mor(&self, m: &BeadMap) -> MonotoneMap {
        m.carrier.clone()
    }
}

/// j : Σ → 𝒟, identity on the bisimplicial part, `[-1] ↦ [0,-1]`, pointing ↦ ssub.
#[derive(Clone, Debug)]
pub struct JFunctor {
    pub dom: Cocone<BiSimplex>,
    pub cod: Abacus,
}

impl JFunctor {
    pub fn new(sigma_trunc: usize) -> Self {
        JFunctor {
            dom: Cocone::sigma(sigma_trunc),
            cod: Abacus::full(sigma_trunc + 1),
        }
    }
}

fn bi_to_abacus(g: &BiGen) -> AbacusGen {
    let at = DObj {
        i: g.at.0 as i64,
        j: g.at.1 as i64,
    };
    let op = match (g.vertical, g.op) {
        (true, o) => vertical(o),
        (false, o) => horizontal(o),
    };
    AbacusGen { op, at }
}

impl IndexFunctor for JFunctor {
    type Dom = Cocone<BiSimplex>;
    type Cod = Abacus;
    fn name(&self) -> &'static str {
        "j"
    }
    fn domain(&self) -> &Cocone<BiSimplex> {
        &self.dom
    }
    fn codomain(&self) -> &Abacus {
        &self.cod
    }
    fn map_obj(&self, o: &CoconeObj<(usize, usize)>) -> DObj {
        match o {
            CoconeObj::Apex => DObj { i: 0, j: -1 },
            CoconeObj::Inner((i, j)) => DObj {
                i: *i as i64,
                j: *j as i64,
            },
        }
    }
    fn map_gen(&self, g: &CoconeGen<BiGen>) -> Vec<AbacusGen> {
        match g {
            CoconeGen::Pt => vec![AbacusGen {
                op: AbacusOp::Sub,
                at: DObj { i: 0, j: -1 },
            }],
            CoconeGen::Inner(h) => vec![bi_to_abacus(h)],
        }
    }
    fn map_mor(&self, m: &CoconeMor<(MonotoneMap, MonotoneMap), (usize, usize)>) -> BeadMap {
        let apex = DObj { i: 0, j: -1 };
        match m {
            CoconeMor::Inner((a, b)) => BeadMap {
                src: DObj {
                    i: a.dom() as i64 - 1,
                    j: b.dom() as i64 - 1,
                },
                tgt: DObj {
                    i: a.cod() as i64 - 1,
                    j: b.cod() as i64 - 1,
                },
                carrier: ordinal_sum(a, b),
            },
            CoconeMor::ToApex((i, j)) => {
                let src = DObj {
                    i: *i as i64,
                    j: *j as i64,
                };
                BeadMap {
                    src,
                    tgt: apex,
                    carrier: MonotoneMap::from_parts(vec![0; src.size()], 1),
                }
            }
            CoconeMor::IdApex => BeadMap::identity(apex),
        }
    }
}

/// p : Σ → Δ, `[i,j] ↦ [i+1+j]`, `[-1] ↦ [0]`, pointing ↦ `s^0 : [1] → [0]`.
#[derive(Clone, Debug)]
pub struct PFunctor {
    pub dom: Cocone<BiSimplex>,
    pub cod: Simplex,
}

impl PFunctor {
    pub fn new(sigma_trunc: usize) -> Self {
        PFunctor {
            dom: Cocone::sigma(sigma_trunc),
            cod: Simplex {
                trunc: sigma_trunc + 1,
            },
        }
    }
}

impl IndexFunctor for PFunctor {
    type Dom = Cocone<BiSimplex>;
    type Cod = Simplex;
    fn name(&self) -> &'static str {
        "p"
    }
    fn domain(&self) -> &Cocone<BiSimplex> {
        &self.dom
    }
    fn codomain(&self) -> &Simplex {
        &self.cod
    }
    fn map_obj(&self, o: &CoconeObj<(usize, usize)>) -> usize {
        match o {
            CoconeObj::Apex => 0,
            CoconeObj::Inner((i, j)) => i + 1 + j,
        }
    }
    fn map_gen(&self, g: &CoconeGen<BiGen>) -> Vec<SimplexGen> {
        match g {
            CoconeGen::Pt => vec![SimplexGen::degen(0, 0)],
            CoconeGen::Inner(h) => {
                let (i, j) = h.at;
                let at = i + 1 + j;
                let shift = if h.vertical { 0 } else { i + 1 };
                vec![SimplexGen {
                    op: shift_op(h.op, shift),
                    at,
                }]
            }
        }
    }
    fn map_mor(&self, m: &CoconeMor<(MonotoneMap, MonotoneMap), (usize, usize)>) -> MonotoneMap {
        match m {
            CoconeMor::Inner((a, b)) => ordinal_sum(a, b),
            CoconeMor::ToApex((i, j)) => MonotoneMap::from_parts(vec![0; i + j + 2], 1),
            CoconeMor::IdApex => MonotoneMap::identity(1),
        }
    }
}

fn shift_op(op: Op, by: usize) -> Op {
    match op {
        Op::Face(k) => Op::Face(k + by),
        Op::Degen(k) => Op::Degen(k + by),
    }
}

/// q : Δ×[1] → 𝒟, `([n],0) ↦ [-1,n]`, `([n],1) ↦ [n,-1]`, and the arrow at
/// `[n]` to the composite of `n+1` abacus maps.
#[derive(Clone, Copy, Debug)]
pub struct QFunctor {
    pub dom: Arrow,
    pub cod: Abacus,
}

impl QFunctor {
    pub fn new(trunc: usize) -> Self {
        QFunctor {
            dom: Arrow { trunc },
            cod: Abacus::full(trunc),
        }
    }
}

impl IndexFunctor for QFunctor {
    type Dom = Arrow;
    type Cod = Abacus;
    fn name(&self) -> &'static str {
        "q"
    }
    fn domain(&self) -> &Arrow {
        &self.dom
    }
    fn codomain(&self) -> &Abacus {
        &self.cod
    }
    fn map_obj(&self, o: &(usize, u8)) -> DObj {
        let n = o.0 as i64;
        if o.1 == 0 {
            DObj { i: -1, j: n }
        } else {
            DObj { i: n, j: -1 }
        }
    }
    fn map_gen(&self, g: &ArrowGen) -> Vec<AbacusGen> {
        match *g {
            ArrowGen::Simp { gen, b } => {
                let at = self.map_obj(&(gen.at, b));
                let op = if b == 0 {
                    horizontal(gen.op)
                } else {
                    vertical(gen.op)
                };
                vec![AbacusGen { op, at }]
            }
            ArrowGen::Arrow { at } => {
                let n = at as i64;
                (0..=n)
                    .rev()
                    .map(|i| AbacusGen {
                        op: AbacusOp::F,
                        at: DObj { i, j: n - 1 - i },
                    })
                    .collect()
            }
        }
    }
    fn map_mor(&self, m: &(MonotoneMap, u8, u8)) -> BeadMap {
        let src = self.map_obj(&(m.0.dom() - 1, m.1));
        let tgt = self.map_obj(&(m.0.cod() - 1, m.2));
        BeadMap {
            src,
            tgt,
            carrier: m.0.clone(),
        }
    }
}

/// h : Δ_⊲ → Δ^⊥, freely adding a bottom; the pointing goes to the
/// augmentation splitting `ssub : [0] → [-1]`.
#[derive(Clone, Debug)]
pub struct HFunctor {
    pub dom: Cocone<Simplex>,
    pub cod: Split,
}

impl HFunctor {
    pub fn new(trunc: usize) -> Self {
        HFunctor {
            dom: Cocone::pointed(trunc),
            cod: Split {
                trunc,
                augmented: true,
            },
        }
    }
}

impl IndexFunctor for HFunctor {
    type Dom = Cocone<Simplex>;
    type Cod = Split;
    fn name(&self) -> &'static str {
        "h"
    }
    fn domain(&self) -> &Cocone<Simplex> {
        &self.dom
    }
    fn codomain(&self) -> &Split {
        &self.cod
    }
    fn map_obj(&self, o: &CoconeObj<usize>) -> i64 {
        match o {
            CoconeObj::Apex => -1,
            CoconeObj::Inner(n) => *n as i64,
        }
    }
    fn map_gen(&self, g: &CoconeGen<SimplexGen>) -> Vec<SplitGen> {
        match g {
            CoconeGen::Pt => vec![SplitGen {
                op: SplitOp::Sub,
                at: -1,
            }],
            CoconeGen::Inner(h) => {
                let op = match h.op {
                    Op::Face(k) => SplitOp::Face(k),
                    Op::Degen(k) => SplitOp::Degen(k),
                };
                vec![SplitGen {
                    op,
                    at: h.at as i64,
                }]
            }
        }
    }
    fn map_mor(&self, m: &CoconeMor<MonotoneMap, usize>) -> MonotoneMap {
        match m {
            CoconeMor::Inner(f) => free_bottom(f),
            CoconeMor::ToApex(n) => MonotoneMap::from_parts(vec![0; n + 2], 1),
            CoconeMor::IdApex => MonotoneMap::identity(1),
        }
    }
}

/// The inclusion of a subshape of 𝒟 (Δ_{/[1]} or 𝒟 without augmentation row)
/// into a bigger one with the same truncation.
#[derive(Clone, Copy, Debug)]
pub struct Inclusion {
    pub dom: Abacus,
    pub cod: Abacus,
}

impl IndexFunctor for Inclusion {
    type Dom = Abacus;
    type Cod = Abacus;
    fn name(&self) -> &'static str {
        "inclusion"
    }
    fn domain(&self) -> &Abacus {
        &self.dom
    }
    fn codomain(&self) -> &Abacus {
        &self.cod
    }
    fn map_obj(&self, o: &DObj) -> DObj {
        *o
    }
    fn map_gen(&self, g: &AbacusGen) -> Vec<AbacusGen> {
        vec![*g]
    }
    fn map_mor(&self, m: &BeadMap) -> BeadMap {
        m.clone()
    }
}

/// Δ×Δ as the bulk of 𝒟: `(i,j) ↦ [i,j]`. The bisimplicial truncation
/// `i+j <= T` lands in degree `T+1`.
#[derive(Clone, Copy, Debug)]
pub struct BulkFunctor {
    pub dom: BiSimplex,
    pub cod: Abacus,
}

impl BulkFunctor {
    /// The bulk of a presheaf on `cod`.
    pub fn of(cod: Abacus) -> Self {
        BulkFunctor {
            dom: BiSimplex {
                trunc: cod.trunc.saturating_sub(1),
            },
            cod,
        }
    }
}

impl IndexFunctor for BulkFunctor {
    type Dom = BiSimplex;
    type Cod = Abacus;
    fn name(&self) -> &'static str {
        "bulk"
    }
    fn domain(&self) -> &BiSimplex {
        &self.dom
    }
    fn codomain(&self) -> &Abacus {
        &self.cod
    }
    fn map_obj(&self, o: &(usize, usize)) -> DObj {
        DObj {
            i: o.0 as i64,
            j: o.1 as i64,
        }
    }
    fn map_gen(&self, g: &BiGen) -> Vec<AbacusGen> {
        vec![bi_to_abacus(g)]
    }
    fn map_mor(&self, m: &(MonotoneMap, MonotoneMap)) -> BeadMap {
        BeadMap {
            src: DObj {
                i: m.0.dom() as i64 - 1,
                j: m.1.dom() as i64 - 1,
            },
            tgt: DObj {
                i: m.0.cod() as i64 - 1,
                j: m.1.cod() as i64 - 1,
            },
            carrier: ordinal_sum(&m.0, &m.1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::check_functor;

    fn obj(i: i64, j: i64) -> DObj {
        DObj::new(i, j).unwrap()
    }

    #[test]
    fn edf_example() {
        let d0 = bead_of_generator(AbacusOp::D(0), obj(0, 0)).unwrap();
        let f = bead_of_generator(AbacusOp::F, obj(0, 1)).unwrap();
        let e1 = bead_of_generator(AbacusOp::E(1), obj(0, 0)).unwrap();
        assert_eq!(bead_compose(&f, &d0).unwrap(), e1);
    }

    #[test]
    fn identity_is_neutral() {
        let o = obj(1, 1);
        let shape = Abacus::full(5);
        for g in shape.generators().into_iter().filter(|g| g.source() == o) {
            let b = g.bead();
            assert_eq!(bead_compose(&BeadMap::identity(b.tgt), &b).unwrap(), b);
            assert_eq!(bead_compose(&b, &BeadMap::identity(o)).unwrap(), b);
        }
    }

    #[test]
    fn generator_examples() {
        let f = bead_of_generator(AbacusOp::F, obj(1, 1)).unwrap();
        assert_eq!(f.tgt, obj(2, 0));
        assert!(f.carrier.is_identity() && f.carrier.dom() == 4);
        assert_eq!(f.colors(), ("BBWW".into(), "BBBW".into()));
        let e0 = bead_of_generator(AbacusOp::E(0), obj(0, 0)).unwrap();
        assert_eq!(e0.carrier, MonotoneMap::coface(2, 0));
        let sub = bead_of_generator(AbacusOp::Sub, obj(0, 0)).unwrap();
        let via = parse_bead_word("t0.f@[0,0]").unwrap();
        assert_eq!(sub, via);
        assert_eq!(sub.tgt, obj(0, -1));
    }

    #[test]
    fn ssub_is_undefined_on_the_augmentation_row() {
        assert!(bead_of_generator(AbacusOp::Sub, obj(-1, 2)).is_err());
        assert!(bead_of_generator(AbacusOp::E(2), obj(0, 0)).is_err());
        assert!(bead_of_generator(AbacusOp::F, obj(0, -1)).is_err());
    }

    #[test]
    fn hom_counts() {
        assert_eq!(hom_enumerate(obj(0, 0), obj(0, 0)).len(), 2);
        assert_eq!(hom_enumerate(obj(0, 0), obj(0, -1)).len(), 1);
        assert_eq!(hom_enumerate(obj(-1, 0), obj(0, -1)).len(), 1);
        assert!(hom_enumerate(obj(0, -1), obj(-1, 0)).is_empty());
    }

    #[test]
    fn factorize_examples() {
        let shape = Abacus::full(4);
        for tgt in shape.objects() {
            for src in shape.objects() {
                for g in hom_enumerate(src, tgt) {
                    let (ab, simp) = factorize(&g);
                    assert_eq!(ab.len(), g.whites_to_black());
                    let mid = eval_ops_from(src, &ab, &|_| true).unwrap();
                    let rest = eval_ops_from(mid.tgt, &simp, &|_| true).unwrap();
                    assert!(rest.preserves_colors());
                    assert_eq!(bead_compose(&rest, &mid).unwrap(), g);
                    let again = eval_ops_from(src, &canonical_ops(&g), &|_| true).unwrap();
                    assert_eq!(canonical_ops(&again), canonical_ops(&g));
                    assert_eq!(parse_bead_word(&format_bead_word(&g)).unwrap(), g);
                }
            }
        }
        let sub = bead_of_generator(AbacusOp::Sub, obj(0, 1)).unwrap();
        assert_eq!(factorize(&sub), (vec![AbacusOp::F], vec![AbacusOp::T(0)]));
        let collapse = BeadMap::new(
            obj(0, 0),
            obj(0, 0),
            MonotoneMap::new(vec![0, 0], 2).unwrap(),
        )
        .unwrap();
        let (ab, simp) = factorize(&collapse);
        assert_eq!(ab, vec![AbacusOp::F]);
        assert_eq!(simp, vec![AbacusOp::T(0), AbacusOp::D(0)]);
        let id = BeadMap::identity(obj(1, 1));
        assert_eq!(factorize(&id), (vec![], vec![]));
    }

    #[test]
    fn relations_hold() {
        let r = relation_suite(2, 2);
        assert!(r.passed(), "{:?}", r.witnesses);
        assert!(r.checked() > 100);
        let named = |fam: &str| {
            r.coverage
                .iter()
                .find(|c| c.family == fam)
                .map_or(0, |c| c.checked)
        };
        assert!(named("f s^k = s^(k-1) f") > 0);
        assert!(named("ssub d^0 = id") > 0);
        assert!(named("ssub s^0 = ssub ssub") > 0);
    }

    #[test]
    fn specific_relation_instances() {
        let any = |_: DObj| true;
        let lhs = eval_ops_from(obj(1, 3), &[AbacusOp::S(2), AbacusOp::F], &any).unwrap();
        let rhs = eval_ops_from(obj(1, 3), &[AbacusOp::F, AbacusOp::S(1)], &any).unwrap();
        assert_eq!(lhs, rhs);
        let split = eval_ops_from(obj(1, 0), &[AbacusOp::D(0), AbacusOp::Sub], &any).unwrap();
        assert_eq!(split, BeadMap::identity(obj(1, 0)));
    }

    #[test]
    fn top_coface_does_not_commute_with_ssub() {
        let any = |_: DObj| true;
        let src = obj(0, 1);
        let l = eval_ops_from(src, &[AbacusOp::Sub, AbacusOp::E(1)], &any).unwrap();
        let r = eval_ops_from(src, &[AbacusOp::E(1), AbacusOp::Sub], &any).unwrap();
        assert_ne!(l, r);
    }

    #[test]
    fn trapezium() {
        assert!(trapezium_check(0, 0, 0, 0).unwrap().passed());
        let mut count = 0;
        for i in -1..=4 {
            for j in -1..=4 {
                if i + j > 4 || !(DObj { i, j }).is_valid() {
                    continue;
                }
                for m in 0..=i + 1 {
                    for n in 0..=j + 1 {
                        if let Ok(r) = trapezium_check(i, j, m, n) {
                            assert!(r.passed(), "({i},{j},{m},{n})");
                            count += 1;
                        }
                    }
                }
            }
        }
        assert!(count > 50);
        assert!(trapezium_check(0, 0, 3, 0).is_err());
    }

    #[test]
    fn presentation_is_complete() {
        let r = presentation_completeness(3);
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn functors_are_functors() {
        assert!(check_functor(&RFunctor::new(Abacus::full(3))).passed());
        assert!(check_functor(&JFunctor::new(2)).passed());
        assert!(check_functor(&PFunctor::new(2)).passed());
        assert!(check_functor(&QFunctor::new(3)).passed());
        assert!(check_functor(&HFunctor::new(3)).passed());
        let inc = Inclusion {
            dom: Abacus::slice(3),
            cod: Abacus::full(3),
        };
        assert!(check_functor(&inc).passed());
        assert!(check_functor(&BulkFunctor::of(Abacus::full(4))).passed());
    }

    #[test]
    fn functor_examples() {
        let r = RFunctor::new(Abacus::full(5));
        assert_eq!(r.map_obj(&obj(1, 2)), 4);
        let j = JFunctor::new(3);
        assert_eq!(
            j.map_gen(&CoconeGen::Pt),
            vec![AbacusGen {
                op: AbacusOp::Sub,
                at: obj(0, -1)
            }]
        );
        assert_eq!(
            j.map_mor(&CoconeMor::ToApex((0, 0))),
            bead_of_generator(AbacusOp::Sub, obj(0, 0)).unwrap()
        );
        let q = QFunctor::new(3);
        assert_eq!(q.map_obj(&(2, 0)), obj(-1, 2));
    }

    #[test]
    fn p_is_r_after_j() {
        let j = JFunctor::new(2);
        let p = PFunctor::new(2);
        let r = RFunctor::new(j.cod);
        let sigma = Cocone::sigma(2);
        for o in sigma.objects() {
            assert_eq!(p.map_obj(&o), r.map_obj(&j.map_obj(&o)));
            for m in closure(&sigma, &o).keys() {
                assert_eq!(p.map_mor(m), r.map_mor(&j.map_mor(m)));
            }
        }
    }
}
