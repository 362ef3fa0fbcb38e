//! Cartesian-ness of simplicial maps, Segal and 2-Segal conditions, and the
//! stability and double Segal conditions on bisimplicial sets.
//!
//! Every condition is a family of squares required to be strict pullbacks.
//! Verdicts hold up to the truncation of the input.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decalage::{dec, Side};
use crate::index::{BiGen, BiSimplex, IndexCategory, IndexFunctor, Simplex, SimplexGen};
use crate::presheaf::{record_square, restrict, BiSSet, NatMap, SMap, SSet, Square, SquareNames};
use crate::report::CheckReport;
use crate::simplex::{MonotoneMap, Op};

/// Which generators of Δ a simplicial map is required to be cartesian on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceClass {
    All,
    /// `d_0`.
    Bottom,
    /// `d_n` on `X_n`.
    Top,
    Inner,
    Degeneracies,
    /// Inner faces and all degeneracies, which generate the active maps.
    Active,
}

impl FaceClass {
    pub fn contains(&self, g: &SimplexGen) -> bool {
        match (*self, g.op) {
            (FaceClass::All, _) => true,
            (FaceClass::Bottom, Op::Face(k)) => k == 0,
            (FaceClass::Top, Op::Face(k)) => k == g.at,
            (FaceClass::Inner, Op::Face(k)) | (FaceClass::Active, Op::Face(k)) => k > 0 && k < g.at,
            (FaceClass::Degeneracies, Op::Degen(_)) | (FaceClass::Active, Op::Degen(_)) => true,
            _ => false,
        }
    }
}

/// Naturality squares of `map` against the generators selected by `keep` are
/// pullbacks.
pub fn cartesian_on_gens<C: IndexCategory>(
    map: &NatMap<C>,
    keep: impl Fn(&C::Gen) -> bool,
    name: impl Into<String>,
) -> CheckReport {
    let mut report = CheckReport::new(name);
    let shape = &map.source.shape;
    for g in shape.generators().into_iter().filter(|g| keep(g)) {
        let (a, b) = (shape.source(&g), shape.target(&g));
        let family = shape.gen_key(&g);
        let sq = Square {
            top: &map.components[&b],
            left: &map.source.actions[&g],
            right: &map.target.actions[&g],
            bottom: &map.components[&a],
        };
        let names = SquareNames {
            a: map.source.level(&b),
            b: map.target.level(&b),
            c: map.source.level(&a),
        };
        record_square(
            &mut report,
            &family,
            || format!("naturality square of {family}"),
            sq,
            names,
        );
    }
    report
}

pub fn cartesian_on(map: &SMap, class: FaceClass) -> CheckReport {
    cartesian_on_gens(
        map,
        |g| class.contains(g),
        format!("cartesian on {class:?}"),
    )
}

/// Cartesian on top face maps.
pub fn is_left_fibration(map: &SMap) -> CheckReport {
    let mut r = cartesian_on(map, FaceClass::Top);
    r.name = "left fibration".into();
    r
}

/// Cartesian on bottom face maps.
pub fn is_right_fibration(map: &SMap) -> CheckReport {
    let mut r = cartesian_on(map, FaceClass::Bottom);
    r.name = "right fibration".into();
    r
}

/// Cartesian on active maps, checked on inner faces and degeneracies.
pub fn is_culf(map: &SMap) -> CheckReport {
    let mut r = cartesian_on(map, FaceClass::Active);
    r.name = "culf".into();
    r
}

/// For `2 <= n <= T` the square of `d_0` against `d_n` out of `X_n` is a
/// pullback.
pub fn is_segal(x: &SSet) -> CheckReport {
    let t = x.shape.trunc;
    if t < 2 {
        return CheckReport::precondition("segal", format!("truncation {t} has no Segal squares"));
    }
    let mut report = CheckReport::new("segal");
    for n in 2..=t {
        let family = format!("n={n}");
        let sq = Square {
            top: x.face_table(n, 0),
            left: x.face_table(n, n),
            right: x.face_table(n - 1, n - 1),
            bottom: x.face_table(n - 1, 0),
        };
        let names = SquareNames {
            a: x.level(&n),
            b: x.level(&(n - 1)),
            c: x.level(&(n - 1)),
        };
        record_square(
            &mut report,
            &family,
            || format!("d0 against d{n} out of X_{n}"),
            sq,
            names,
        );
    }
    report
}

/// Upper 2-Segal: the top decalage is Segal; lower: the bottom decalage is.
pub fn is_2segal(x: &SSet, side: Side) -> CheckReport {
    let t = x.shape.trunc;
    if t < 3 {
        return CheckReport::precondition(
            "2-segal",
            format!("truncation {t} has no 2-Segal squares"),
        );
    }
    let mut report = CheckReport::new(format!("2-segal {side:?}"));
    for s in side.parts() {
        let mut sub = is_segal(&dec(x, s));
        sub.name = format!("{s:?}");
        report.absorb(sub);
    }
    report
}

/// Row `i` of a bisimplicial set as a simplicial set of truncation `T - i`.
#[derive(Clone, Copy, Debug)]
pub struct Row {
    pub i: usize,
    pub dom: Simplex,
    pub cod: BiSimplex,
}

impl Row {
    pub fn new(cod: BiSimplex, i: usize) -> Self {
        Row {
            i,
            dom: Simplex {
                trunc: cod.trunc - i,
            },
            cod,
        }
    }
}

impl IndexFunctor for Row {
    type Dom = Simplex;
    type Cod = BiSimplex;
    fn name(&self) -> &'static str {
        "row"
    }
    fn domain(&self) -> &Simplex {
        &self.dom
    }
    fn codomain(&self) -> &BiSimplex {
        &self.cod
    }
    fn map_obj(&self, n: &usize) -> (usize, usize) {
        (self.i, *n)
    }
    fn map_gen(&self, g: &SimplexGen) -> Vec<BiGen> {
        vec![BiGen {
            vertical: false,
            op: g.op,
            at: (self.i, g.at),
        }]
    }
    fn map_mor(&self, m: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
        (MonotoneMap::identity(self.i + 1), m.clone())
    }
}

/// Column `j` of a bisimplicial set.
#[derive(Clone, Copy, Debug)]
pub struct Column {
    pub j: usize,
    pub dom: Simplex,
    pub cod: BiSimplex,
}

impl Column {
    pub fn new(cod: BiSimplex, j: usize) -> Self {
        Column {
            j,
            dom: Simplex {
                trunc: cod.trunc - j,
            },
            cod,
        }
    }
}

impl IndexFunctor for Column {
    type Dom = Simplex;
    type Cod = BiSimplex;
    fn name(&self) -> &'static str {
        "column"
    }
    fn domain(&self) -> &Simplex {
        &self.dom
    }
    fn codomain(&self) -> &BiSimplex {
        &self.cod
    }
    fn map_obj(&self, n: &usize) -> (usize, usize) {
        (*n, self.j)
    }
    fn map_gen(&self, g: &SimplexGen) -> Vec<BiGen> {
        vec![BiGen {
            vertical: true,
            op: g.op,
            at: (g.at, self.j),
        }]
    }
    fn map_mor(&self, m: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
        (m.clone(), MonotoneMap::identity(self.j + 1))
    }
}

pub fn row(b: &BiSSet, i: usize) -> SSet {
    restrict(&Row::new(b.shape, i), b).expect("rows lie inside the truncation")
}

pub fn column(b: &BiSSet, j: usize) -> SSet {
    restrict(&Column::new(b.shape, j), b).expect("columns lie inside the truncation")
}

/// The simplicial map between rows induced by a vertical generator whose
/// codomain row is `i`: `e^k` maps row `i` to row `i-1`, `t^k` maps row `i`
/// to row `i+1`. Both rows are cut to the common truncation.
pub fn vertical_row_map(b: &BiSSet, op: Op, i: usize) -> SMap {
    let other = match op {
        Op::Face(_) => i - 1,
        Op::Degen(_) => i + 1,
    };
    let trunc = b.shape.trunc - i.max(other);
    let source = row(b, i).truncate(trunc).expect("lower truncation");
    let target = row(b, other).truncate(trunc).expect("lower truncation");
    NatMap::from_fn(source, target, |n, x| {
        b.act(
            &BiGen {
                vertical: true,
                op,
                at: (i, *n),
            },
            x,
        )
    })
    .expect("generator tables have the right shape")
}

/// The simplicial map between columns induced by a horizontal generator whose
/// codomain column is `j`.
pub fn horizontal_column_map(b: &BiSSet, op: Op, j: usize) -> SMap {
    let other = match op {
        Op::Face(_) => j - 1,
        Op::Degen(_) => j + 1,
    };
    let trunc = b.shape.trunc - j.max(other);
    let source = column(b, j).truncate(trunc).expect("lower truncation");
    let target = column(b, other).truncate(trunc).expect("lower truncation");
    NatMap::from_fn(source, target, |n, x| {
        b.act(
            &BiGen {
                vertical: false,
                op,
                at: (*n, j),
            },
            x,
        )
    })
    .expect("generator tables have the right shape")
}

fn face_square(
    b: &BiSSet,
    i: usize,
    j: usize,
    ek: usize,
    dk: usize,
) -> (Square<'_>, SquareNames<'_>) {
    let sq = Square {
        top: &b.actions[&BiGen::e(i, j, ek)],
        left: &b.actions[&BiGen::d(i, j, dk)],
        right: &b.actions[&BiGen::d(i - 1, j, dk)],
        bottom: &b.actions[&BiGen::e(i, j - 1, ek)],
    };
    let names = SquareNames {
        a: b.level(&(i, j)),
        b: b.level(&(i - 1, j)),
        c: b.level(&(i, j - 1)),
    };
    (sq, names)
}

/// Upper: every `e_0` against `d_0` square is a pullback. Lower: every
/// `e_top` against `d_top` square.
pub fn stability(b: &BiSSet, side: Side) -> CheckReport {
    let mut report = CheckReport::new(format!("stability {side:?}"));
    for s in side.parts() {
        let family = format!("{s:?}");
        report.family(&family);
        for (i, j) in b.shape.objects() {
            if i == 0 || j == 0 {
                continue;
            }
            let (ek, dk) = match s {
                Side::Upper => (0, 0),
                _ => (i, j),
            };
            let (sq, names) = face_square(b, i, j, ek, dk);
            record_square(
                &mut report,
                &family,
                || format!("e{ek} against d{dk} out of ({i},{j})"),
                sq,
                names,
            );
        }
    }
    report
}

/// Stability checked on the two squares out of `(1,1)` only, valid for
/// double Segal inputs.
pub fn reduced_stability(b: &BiSSet, side: Side) -> CheckReport {
    let name = format!("reduced stability {side:?}");
    let ds = is_double_segal(b);
    if !ds.passed() {
        return CheckReport::precondition(name, "not double Segal");
    }
    if b.shape.trunc < 2 {
        return CheckReport::precondition(name, "truncation below 2");
    }
    let mut report = CheckReport::new(name);
    for s in side.parts() {
        let k = if s == Side::Upper { 0 } else { 1 };
        let (sq, names) = face_square(b, 1, 1, k, k);
        record_square(
            &mut report,
            &format!("{s:?}"),
            || format!("e{k} against d{k} out of (1,1)"),
            sq,
            names,
        );
    }
    report
}

/// Every row and every column with a Segal square is Segal.
pub fn is_double_segal(b: &BiSSet) -> CheckReport {
    rows_and_columns(b, "double segal", 2, is_segal)
}

/// Every row and every column with a 2-Segal square is 2-Segal.
pub fn is_double_2segal(b: &BiSSet) -> CheckReport {
    rows_and_columns(b, "double 2-segal", 3, |x| is_2segal(x, Side::Both))
}

fn rows_and_columns(
    b: &BiSSet,
    name: &str,
    min: usize,
    check: impl Fn(&SSet) -> CheckReport,
) -> CheckReport {
    let mut report = CheckReport::new(name);
    let t = b.shape.trunc;
    for k in 0..=t {
        if t - k < min {
            report.skip(&format!("row {k}"));
            report.skip(&format!("column {k}"));
            continue;
        }
        let mut r = check(&row(b, k));
        r.name = format!("row {k}");
        report.absorb(r);
        let mut c = check(&column(b, k));
        c.name = format!("column {k}");
        report.absorb(c);
    }
    report
}

/// Every vertical active generator is cartesian as a map of rows and every
/// horizontal one as a map of columns.
pub fn active_maps_cartesian(b: &BiSSet) -> CheckReport {
    let mut report = CheckReport::new("active maps cartesian");
    let t = b.shape.trunc;
    for i in 0..=t {
        let mut ops: Vec<Op> = (1..i).map(Op::Face).collect();
        if i < t {
            ops.extend((0..=i).map(Op::Degen));
        }
        for op in ops {
            let mut r = cartesian_on(&vertical_row_map(b, op, i), FaceClass::All);
            r.name = format!("row map {op:?} at {i}");
            report.absorb(r);
            let mut c = cartesian_on(&horizontal_column_map(b, op, i), FaceClass::All);
            c.name = format!("column map {op:?} at {i}");
            report.absorb(c);
        }
    }
    report
}

/// The ordinal sum functor `Δ×Δ → Δ`.
#[derive(Clone, Copy, Debug)]
pub struct OrdinalSum {
    pub dom: BiSimplex,
    pub cod: Simplex,
}

impl OrdinalSum {
    /// From a simplicial set of truncation `trunc`.
    pub fn new(trunc: usize) -> Self {
        OrdinalSum {
            dom: BiSimplex { trunc: trunc - 1 },
            cod: Simplex { trunc },
        }
    }
}

impl IndexFunctor for OrdinalSum {
    type Dom = BiSimplex;
    type Cod = Simplex;
    fn name(&self) -> &'static str {
        "ordinal sum"
    }
    fn domain(&self) -> &BiSimplex {
        &self.dom
    }
    fn codomain(&self) -> &Simplex {
        &self.cod
    }
    fn map_obj(&self, o: &(usize, usize)) -> usize {
        o.0 + 1 + o.1
    }
    fn map_gen(&self, g: &BiGen) -> Vec<SimplexGen> {
        let (i, j) = g.at;
        let shift = if g.vertical { 0 } else { i + 1 };
        let op = match g.op {
            Op::Face(k) => Op::Face(k + shift),
            Op::Degen(k) => Op::Degen(k + shift),
        };
        vec![SimplexGen { op, at: i + 1 + j }]
    }
    fn map_mor(&self, m: &(MonotoneMap, MonotoneMap)) -> MonotoneMap {
        crate::simplex::ordinal_sum(&m.0, &m.1)
    }
}

/// Total decalage: the bisimplicial set `(i,j) ↦ X_{i+1+j}`.
pub fn tot(x: &SSet) -> BiSSet {
    restrict(&OrdinalSum::new(x.shape.trunc), x).expect("ordinal sums stay inside the truncation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decalage::counit;
    use crate::fixtures::{chain_nerve, corpus, skeleton_of_simplex, FiniteCategory};
    use crate::index::check_functor;

    #[test]
    fn nerves_are_segal() {
        for (name, x) in corpus(4) {
            let r = is_segal(&x);
            if name == "partial-monoid" {
                assert!(r.failed());
                assert_eq!(
                    r.coverage.iter().find(|c| c.failed > 0).unwrap().family,
                    "n=2"
                );
            } else {
                assert!(r.passed(), "{name}");
            }
        }
    }

    #[test]
    fn partial_monoid_is_2segal() {
        let x = FiniteCategory::partial_monoid().nerve(5);
        assert!(is_2segal(&x, Side::Both).passed());
    }

    #[test]
    fn skeleta_are_not_segal() {
        let x = skeleton_of_simplex(2, 1, 4);
        assert!(is_segal(&x).failed());
        assert!(is_2segal(&skeleton_of_simplex(3, 2, 5), Side::Both).failed());
    }

    #[test]
    fn empty_is_segal() {
        assert!(is_segal(&SSet::empty(Simplex { trunc: 3 })).passed());
    }

    #[test]
    fn identity_is_every_kind_of_fibration() {
        let x = chain_nerve(2, 4);
        let id = NatMap::identity(&x);
        assert!(is_left_fibration(&id).passed());
        assert!(is_right_fibration(&id).passed());
        assert!(is_culf(&id).passed());
        assert!(cartesian_on(&id, FaceClass::All).passed());
    }

    #[test]
    fn top_counit_is_a_right_fibration() {
        let x = chain_nerve(2, 4);
        let eps = counit(&x, Side::Upper);
        assert!(is_right_fibration(&eps).passed());
    }

    #[test]
    fn tot_is_stable_and_double_segal() {
        let x = FiniteCategory::partial_monoid().nerve(5);
        let b = tot(&x);
        assert!(b.validate().passed());
        assert!(stability(&b, Side::Both).passed());
        assert!(is_double_segal(&b).passed());
        assert!(reduced_stability(&b, Side::Both).passed());
        assert!(active_maps_cartesian(&b).passed());
        assert_eq!(tot(&chain_nerve(2, 3)).size(&(0, 0)), 6);
    }

    #[test]
    fn reduced_stability_needs_double_segal() {
        let b = tot(&skeleton_of_simplex(3, 2, 5));
        let r = reduced_stability(&b, Side::Both);
        assert_eq!(r.verdict, crate::report::Verdict::Precondition);
    }

    #[test]
    fn ordinal_sum_is_a_functor() {
        assert!(check_functor(&OrdinalSum::new(4)).passed());
        assert!(check_functor(&Row::new(BiSimplex { trunc: 3 }, 1)).passed());
        assert!(check_functor(&Column::new(BiSimplex { trunc: 3 }, 2)).passed());
    }
}
