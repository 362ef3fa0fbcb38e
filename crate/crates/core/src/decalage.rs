//! Decalage, edgewise subdivision, bottom-split simplicial sets as
//! `Dec_⊥`-coalgebras, pointings and local initial objects.
//!
//! A bottom-split simplicial set is a presheaf on [`Split`]; its extra
//! degeneracies `s_⊐ : X_n -> X_{n+1}` assemble into the coalgebra structure
//! map `γ : X -> Dec_⊥ X`. A pointed simplicial set is a presheaf on
//! `Cocone<Simplex>` whose apex level is the set `C` of the pointing
//! `a : C -> X_0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abacus::HFunctor;
use crate::fibration::{cartesian_on, is_right_fibration, FaceClass};
use crate::index::{
    Cocone, CoconeGen, CoconeObj, IndexCategory, IndexFunctor, Simplex, SimplexGen, Split,
    SplitGen, SplitOp,
};
use crate::presheaf::{
    monotone_word, restrict, NatMap, PointedSSet, Presheaf, SMap, SSet, SplitSSet,
};
use crate::report::{CheckReport, Witness};
use crate::simplex::{free_bottom, opposite, ordinal_sum, MonotoneMap, Op};
use crate::Error;

/// Which end of the ordinals a construction acts on. `Upper` is the top
/// decalage `Dec_⊤`, `Lower` the bottom one `Dec_⊥`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Upper,
    Lower,
    Both,
}

impl Side {
    pub fn parts(self) -> Vec<Side> {
        match self {
            Side::Both => vec![Side::Upper, Side::Lower],
            s => vec![s],
        }
    }

    fn shift(self) -> usize {
        if self == Side::Both {
            2
        } else {
            1
        }
    }

    fn offset(self) -> usize {
        if self == Side::Upper {
            0
        } else {
            1
        }
    }
}

/// `Δ -> Δ` adding a bottom element (`Lower`), a top element (`Upper`) or
/// both. Restriction along it is the decalage.
#[derive(Clone, Copy, Debug)]
pub struct DecFunctor {
    pub side: Side,
    pub dom: Simplex,
    pub cod: Simplex,
}

impl DecFunctor {
    /// Decalage of a simplicial set of truncation `trunc`.
    ///
    /// # Panics
    /// If `trunc` is smaller than the number of added elements.
    pub fn new(side: Side, trunc: usize) -> Self {
        assert!(
            trunc >= side.shift(),
            "decalage needs truncation at least {}",
            side.shift()
        );
        DecFunctor {
            side,
            dom: Simplex {
                trunc: trunc - side.shift(),
            },
            cod: Simplex { trunc },
        }
    }
}

impl IndexFunctor for DecFunctor {
    type Dom = Simplex;
    type Cod = Simplex;
    fn name(&self) -> &'static str {
        "dec"
    }
    fn domain(&self) -> &Simplex {
        &self.dom
    }
    fn codomain(&self) -> &Simplex {
        &self.cod
    }
    fn map_obj(&self, n: &usize) -> usize {
        n + self.side.shift()
    }
    fn map_gen(&self, g: &SimplexGen) -> Vec<SimplexGen> {
        let k = self.side.offset();
        let op = match g.op {
            Op::Face(i) => Op::Face(i + k),
            Op::Degen(i) => Op::Degen(i + k),
        };
        vec![SimplexGen {
            op,
            at: g.at + self.side.shift(),
        }]
    }
    fn map_mor(&self, m: &MonotoneMap) -> MonotoneMap {
        let one = MonotoneMap::identity(1);
        match self.side {
            Side::Lower => free_bottom(m),
            Side::Upper => ordinal_sum(m, &one),
            Side::Both => ordinal_sum(&free_bottom(m), &one),
        }
    }
}

/// `Dec_⊥ X` (`Lower`), `Dec_⊤ X` (`Upper`) or both at once, of truncation
/// `T - 1` (resp. `T - 2`).
///
/// # Panics
/// If the truncation of `x` is too small.
pub fn dec(x: &SSet, side: Side) -> SSet {
    restrict(&DecFunctor::new(side, x.shape.trunc), x)
        .expect("decalage stays inside the truncation")
}

/// The decalage of a simplicial map.
pub fn dec_map(f: &SMap, side: Side) -> SMap {
    f.restrict(&DecFunctor::new(side, f.source.shape.trunc))
        .expect("decalage stays inside the truncation")
}

fn levelwise(source: SSet, target: SSet, maps: impl Fn(usize) -> Vec<usize>) -> SMap {
    let components = source
        .shape
        .objects()
        .into_iter()
        .map(|n| (n, maps(n)))
        .collect();
    NatMap::new(source, target, components).expect("levelwise tables have the right shape")
}

/// The counit `ε : Dec X -> X`, given by `d_0` on `Dec_⊥` and by the top
/// face on `Dec_⊤`.
pub fn counit(x: &SSet, side: Side) -> SMap {
    let source = dec(x, side);
    let target = x.truncate(source.shape.trunc).expect("lower truncation");
    let k = side.offset();
    levelwise(source, target, |n| {
        let phi = MonotoneMap::from_parts((0..=n).map(|v| v + k).collect(), n + 1 + side.shift());
        x.monotone_table(&phi)
    })
}

/// The comultiplication `δ : Dec X -> Dec Dec X`, given by `s_0` on `Dec_⊥`
/// and by the top degeneracy on `Dec_⊤`.
///
/// # Panics
/// For `Side::Both` or truncation below 2.
pub fn comult(x: &SSet, side: Side) -> SMap {
    assert!(
        side != Side::Both,
        "comultiplication is defined for one side at a time"
    );
    let d = dec(x, side);
    let target = dec(&d, side);
    let source = d.truncate(target.shape.trunc).expect("lower truncation");
    levelwise(source, target, |n| {
        let k = if side == Side::Lower { 0 } else { n + 1 };
        x.degen_table(n + 1, k).to_vec()
    })
}

/// The augmentation `Dec_⊥ X -> X_0` sending a simplex to its first vertex
/// (to its last vertex for `Dec_⊤`), as a map to the constant simplicial set.
///
/// # Panics
/// For `Side::Both`.
pub fn alpha_aug(x: &SSet, side: Side) -> SMap {
    assert!(
        side != Side::Both,
        "the augmentation is defined for one side at a time"
    );
    let source = dec(x, side);
    let target = SSet::constant(source.shape.trunc, x.level(&0));
    levelwise(source, target, |n| vertex_table(x, n + 1, side))
}

/// `X_n -> X_0` picking the first (`Lower`) or last (`Upper`) vertex.
fn vertex_table(x: &SSet, n: usize, side: Side) -> Vec<usize> {
    let v = if side == Side::Upper { n } else { 0 };
    x.monotone_table(&MonotoneMap::from_parts(vec![v], n + 1))
}

/// Edgewise subdivision `Δ -> Δ`, `[n] ↦ [n]^op ⊕ [n] = [2n+1]`.
#[derive(Clone, Copy, Debug)]
pub struct SdFunctor {
    pub dom: Simplex,
    pub cod: Simplex,
}

impl SdFunctor {
    /// Subdivision of a simplicial set of truncation `trunc >= 1`.
    pub fn new(trunc: usize) -> Self {
        assert!(trunc >= 1, "subdivision needs truncation at least 1");
        SdFunctor {
            dom: Simplex {
                trunc: (trunc - 1) / 2,
            },
            cod: Simplex { trunc },
        }
    }
}

impl IndexFunctor for SdFunctor {
    type Dom = Simplex;
    type Cod = Simplex;
    fn name(&self) -> &'static str {
        "sd"
    }
    fn domain(&self) -> &Simplex {
        &self.dom
    }
    fn codomain(&self) -> &Simplex {
        &self.cod
    }
    fn map_obj(&self, n: &usize) -> usize {
        2 * n + 1
    }
    fn map_gen(&self, g: &SimplexGen) -> Vec<SimplexGen> {
        monotone_word(&self.map_mor(&self.dom.morphism(g)))
    }
    fn map_mor(&self, m: &MonotoneMap) -> MonotoneMap {
        ordinal_sum(&opposite(m), m)
    }
}

/// `sd(X)_n = X_{2n+1}`, of truncation `(T-1)/2`.
pub fn sd(x: &SSet) -> SSet {
    restrict(&SdFunctor::new(x.shape.trunc), x).expect("subdivision stays inside the truncation")
}

pub fn sd_map(f: &SMap) -> SMap {
    f.restrict(&SdFunctor::new(f.source.shape.trunc))
        .expect("subdivision stays inside the truncation")
}

/// The forgetful functor `Δ -> Δ_⊥` (or into `Δ^⊥`), freely adding a bottom.
#[derive(Clone, Copy, Debug)]
pub struct Underlying {
    pub dom: Simplex,
    pub cod: Split,
}

impl IndexFunctor for Underlying {
    type Dom = Simplex;
    type Cod = Split;
    fn name(&self) -> &'static str {
        "underlying"
    }
    fn domain(&self) -> &Simplex {
        &self.dom
    }
    fn codomain(&self) -> &Split {
        &self.cod
    }
    fn map_obj(&self, n: &usize) -> i64 {
        *n as i64
    }
    fn map_gen(&self, g: &SimplexGen) -> Vec<SplitGen> {
        let op = match g.op {
            Op::Face(k) => SplitOp::Face(k),
            Op::Degen(k) => SplitOp::Degen(k),
        };
        vec![SplitGen {
            op,
            at: g.at as i64,
        }]
    }
    fn map_mor(&self, m: &MonotoneMap) -> MonotoneMap {
        free_bottom(m)
    }
}

/// `Δ_⊥ -> Δ`, `[n] ↦ [n+1]`, reading a bottom-preserving map as a plain
/// monotone map. Restriction along it is `Dec_⊥` with its comultiplication as
/// splitting.
#[derive(Clone, Copy, Debug)]
pub struct BottomFunctor {
    pub dom: Split,
    pub cod: Simplex,
}

impl IndexFunctor for BottomFunctor {
    type Dom = Split;
    type Cod = Simplex;
    fn name(&self) -> &'static str {
        "bottom"
    }
    fn domain(&self) -> &Split {
        &self.dom
    }
    fn codomain(&self) -> &Simplex {
        &self.cod
    }
    fn map_obj(&self, n: &i64) -> usize {
        (n + 1) as usize
    }
    fn map_gen(&self, g: &SplitGen) -> Vec<SimplexGen> {
        let at = (g.at + 1) as usize;
        let op = match g.op {
            SplitOp::Face(k) => Op::Face(k + 1),
            SplitOp::Degen(k) => Op::Degen(k + 1),
            SplitOp::Sub => Op::Degen(0),
        };
        vec![SimplexGen { op, at }]
    }
    fn map_mor(&self, m: &MonotoneMap) -> MonotoneMap {
        m.clone()
    }
}

/// The underlying simplicial set of a bottom-split one.
pub fn underlying(a: &SplitSSet) -> SSet {
    let functor = Underlying {
        dom: Simplex {
            trunc: a.shape.trunc,
        },
        cod: a.shape,
    };
    restrict(&functor, a).expect("same truncation")
}

/// `Dec_⊥ X` as a bottom-split simplicial set of truncation `T - 1`, split by
/// `s_0`; with `augmented`, level `-1` is `X_0` with augmentation `d_1`.
pub fn cofree(x: &SSet, augmented: bool) -> SplitSSet {
    assert!(x.shape.trunc >= 1, "decalage needs truncation at least 1");
    let functor = BottomFunctor {
        dom: Split {
            trunc: x.shape.trunc - 1,
            augmented,
        },
        cod: x.shape,
    };
    restrict(&functor, x).expect("decalage stays inside the truncation")
}

fn sub(n: i64) -> SplitGen {
    SplitGen {
        op: SplitOp::Sub,
        at: n,
    }
}

/// The coalgebra structure map `γ : X -> Dec_⊥ X`, levelwise `s_⊐`.
pub fn gamma(a: &SplitSSet) -> SMap {
    let x = underlying(a);
    let target = dec(&x, Side::Lower);
    let source = x.truncate(target.shape.trunc).expect("lower truncation");
    levelwise(source, target, |n| a.actions[&sub(n as i64)].clone())
}

/// The split identities, naturality of `γ`, the counit law `d_0 s_⊐ = id` and
/// coassociativity `s_⊐ s_⊐ = s_0 s_⊐`.
pub fn validate_coalgebra(a: &SplitSSet) -> CheckReport {
    let mut report = CheckReport::new("coalgebra");
    let mut relations = a.validate();
    relations.name = "split identities".into();
    report.absorb(relations);
    let t = a.shape.trunc as i64;
    if t < 1 {
        report.note("truncation 0 has no splitting");
        return report;
    }
    let mut nat = gamma(a).validate();
    nat.name = "gamma natural".into();
    report.absorb(nat);
    let face0 = |n: i64| SplitGen {
        op: SplitOp::Face(0),
        at: n,
    };
    let degen0 = |n: i64| SplitGen {
        op: SplitOp::Degen(0),
        at: n,
    };
    for n in 0..t {
        for x in 0..a.size(&n) {
            let back = a.act(&face0(n + 1), a.act(&sub(n), x));
            report.record("counit", back == x, || {
                Witness::new(format!("d0 ssub at {n}"), vec![a.id(&n, x).to_string()])
            });
            if n + 2 <= t {
                let y = a.act(&sub(n), x);
                let lhs = a.act(&sub(n + 1), y);
                let rhs = a.act(&degen0(n + 1), y);
                report.record("coassociativity", lhs == rhs, || {
                    Witness::new(
                        format!("ssub ssub vs s0 ssub at {n}"),
                        vec![a.id(&n, x).to_string()],
                    )
                });
            }
        }
    }
    report
}

/// Rigid: `γ` is cartesian on every generator.
pub fn is_rigid(a: &SplitSSet) -> CheckReport {
    if a.shape.trunc < 1 {
        return CheckReport::precondition("rigid", "truncation 0 has no splitting");
    }
    let mut r = cartesian_on(&gamma(a), FaceClass::All);
    r.name = "rigid".into();
    r
}

/// Pulls a splitting of the target of a right fibration back to its source:
/// `s_⊐ y` is the unique `y'` with `d_0 y' = y` over `s_⊐ F(y)`.
pub fn pullback_coalgebra(f: &SMap, c: &SplitSSet) -> Result<SplitSSet, Error> {
    if c.shape.augmented {
        return Err(Error::Precondition(
            "the splitting must be unaugmented".into(),
        ));
    }
    if underlying(c) != f.target {
        return Err(Error::Precondition(
            "the splitting is not on the target of the map".into(),
        ));
    }
    let fib = is_right_fibration(f);
    if !fib.passed() {
        return Err(Error::Precondition(
            "the map is not a right fibration".into(),
        ));
    }
    let y = &f.source;
    let t = y.shape.trunc;
    let mut actions = BTreeMap::new();
    for g in c.shape.generators() {
        let table = match g.op {
            SplitOp::Face(k) => y.face_table(g.at as usize, k).to_vec(),
            SplitOp::Degen(k) => y.degen_table(g.at as usize, k).to_vec(),
            SplitOp::Sub => {
                let n = g.at as usize;
                debug_assert!(n < t);
                let lifts: BTreeMap<(usize, usize), usize> = (0..y.size(&(n + 1)))
                    .map(|z| ((y.face(n + 1, 0, z), f.apply(&(n + 1), z)), z))
                    .collect();
                (0..y.size(&n))
                    .map(|z| {
                        let key = (z, c.act(&g, f.apply(&n, z)));
                        lifts.get(&key).copied().ok_or_else(|| {
                            Error::Precondition(format!(
                                "no lift of ssub at {} for {}",
                                n,
                                y.id(&n, z)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        actions.insert(g, table);
    }
    let levels = c
        .shape
        .objects()
        .into_iter()
        .map(|n| (n, y.level(&(n as usize)).to_vec()))
        .collect();
    Presheaf::new(c.shape, levels, actions)
}

/// A pointed simplicial set from `X`, the set `C` and `a : C -> X_0`.
pub fn pointed(x: &SSet, c: Vec<String>, a: Vec<usize>) -> Result<PointedSSet, Error> {
    let shape = Cocone::pointed(x.shape.trunc);
    let mut levels: BTreeMap<_, _> = x
        .levels
        .iter()
        .map(|(n, l)| (CoconeObj::Inner(*n), l.clone()))
        .collect();
    levels.insert(CoconeObj::Apex, c);
    let mut actions: BTreeMap<_, _> = x
        .actions
        .iter()
        .map(|(g, t)| (CoconeGen::Inner(*g), t.clone()))
        .collect();
    actions.insert(CoconeGen::Pt, a);
    Presheaf::new(shape, levels, actions)
}

/// The underlying simplicial set of a pointed one.
pub fn inner(p: &PointedSSet) -> SSet {
    let levels = p
        .levels
        .iter()
        .filter_map(|(o, l)| match o {
            CoconeObj::Inner(n) => Some((*n, l.clone())),
            CoconeObj::Apex => None,
        })
        .collect();
    let actions = p
        .actions
        .iter()
        .filter_map(|(g, t)| match g {
            CoconeGen::Inner(h) => Some((*h, t.clone())),
            CoconeGen::Pt => None,
        })
        .collect();
    Presheaf::new(p.shape.inner, levels, actions).expect("levels of a valid pointed set")
}

/// `(c, x)` with `x ∈ X_{n+1}` whose first (last, for `Upper`) vertex is
/// `a(c)`.
fn pointed_pairs(x: &SSet, a: &[usize], n: usize, side: Side) -> Vec<(usize, usize)> {
    let v = vertex_table(x, n + 1, side);
    let mut by_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (z, &w) in v.iter().enumerate() {
        by_vertex.entry(w).or_default().push(z);
    }
    let mut out = Vec::new();
    for (c, w) in a.iter().enumerate() {
        for &z in by_vertex.get(w).map(Vec::as_slice).unwrap_or(&[]) {
            out.push((c, z));
        }
    }
    out
}

fn local_objects(p: &PointedSSet, side: Side, name: &str) -> CheckReport {
    let t = p.shape.inner.trunc;
    if t < 1 {
        return CheckReport::precondition(name, "truncation 0 has no decalage");
    }
    let x = inner(p);
    let a = &p.actions[&CoconeGen::Pt];
    let mut report = CheckReport::new(name);
    for n in 0..t {
        let family = format!("level {n}");
        let k = if side == Side::Upper { n + 1 } else { 0 };
        let mut hits = vec![0usize; x.size(&n)];
        for (_, z) in pointed_pairs(&x, a, n, side) {
            hits[x.face(n + 1, k, z)] += 1;
        }
        for (y, &h) in hits.iter().enumerate() {
            report.record(&family, h == 1, || {
                Witness::new(
                    format!("{h} preimages at level {n}"),
                    vec![x.id(&n, y).to_string()],
                )
            });
        }
    }
    report
}

/// `C ×_{X_0} Dec_⊥ X -> Dec_⊥ X -> X` is a levelwise bijection.
pub fn is_local_initial(p: &PointedSSet) -> CheckReport {
    local_objects(p, Side::Lower, "local initial objects")
}

/// `C ×_{X_0} Dec_⊤ X -> Dec_⊤ X -> X` is a levelwise bijection.
pub fn is_local_terminal(p: &PointedSSet) -> CheckReport {
    local_objects(p, Side::Upper, "local terminal objects")
}

/// The right Kan extension along `Δ_⊲ -> Δ^⊥`: level `n` is
/// `C ×_{X_0} X_{n+1}` over first vertices, of truncation `T - 1`.
pub fn h_lower(p: &PointedSSet) -> Result<SplitSSet, Error> {
    let t = p.shape.inner.trunc;
    if t < 1 {
        return Err(Error::Truncation(
            "the right Kan extension needs truncation at least 1".into(),
        ));
    }
    let x = inner(p);
    let c = p.level(&CoconeObj::Apex);
    let a = &p.actions[&CoconeGen::Pt];
    let base = cofree(&x, true);
    let shape = base.shape;
    Presheaf::build(
        shape,
        |n| {
            h_pairs(&x, a, *n)
                .into_iter()
                .map(|(ci, z)| (*n, ci, z))
                .collect()
        },
        |g, &(_, ci, z)| (shape.source(g), ci, base.act(g, z)),
        |&(n, ci, z)| format!("({},{})", c[ci], base.id(&n, z)),
    )
}

fn h_pairs(x: &SSet, a: &[usize], n: i64) -> Vec<(usize, usize)> {
    if n < 0 {
        a.iter().copied().enumerate().collect()
    } else {
        pointed_pairs(x, a, n as usize, Side::Lower)
    }
}

/// Restriction along `Δ_⊲ -> Δ^⊥`: the underlying simplicial set pointed by
/// `s_⊐ : A_{-1} -> A_0`.
pub fn h_upper(a: &SplitSSet) -> Result<PointedSSet, Error> {
    if !a.shape.augmented {
        return Err(Error::Precondition(
            "h_upper needs an augmented splitting".into(),
        ));
    }
    restrict(&HFunctor::new(a.shape.trunc), a)
}

/// The counit `h^* h_* P -> P` (restricted to truncation `T - 1`): identity on
/// the pointing and `d_0` on simplices.
pub fn h_counit(p: &PointedSSet) -> Result<NatMap<Cocone<Simplex>>, Error> {
    let source = h_upper(&h_lower(p)?)?;
    let target = p.truncate(source.shape.trunc())?;
    let x = inner(p);
    let a = &p.actions[&CoconeGen::Pt];
    NatMap::from_fn(source, target, |o, i| match o {
        CoconeObj::Apex => i,
        CoconeObj::Inner(n) => {
            let (_, z) = h_pairs(&x, a, *n as i64)[i];
            x.face(n + 1, 0, z)
        }
    })
}

/// The unit `A -> h_* h^* A` (restricted to truncation `T - 1`): a simplex goes
/// to its augmentation paired with its splitting.
pub fn h_unit(a: &SplitSSet) -> Result<NatMap<Split>, Error> {
    let target = h_lower(&h_upper(a)?)?;
    let source = a.truncate(target.shape.trunc)?;
    let x = underlying(a);
    let pt = &a.actions[&sub(-1)];
    let mut components = BTreeMap::new();
    for n in source.shape.objects() {
        let index: BTreeMap<(usize, usize), usize> = h_pairs(&x, pt, n)
            .into_iter()
            .enumerate()
            .map(|(i, pair)| (pair, i))
            .collect();
        let mut table = Vec::with_capacity(a.size(&n));
        for z in 0..a.size(&n) {
            let mut aug = z;
            for m in (0..=n).rev() {
                aug = a.act(
                    &SplitGen {
                        op: SplitOp::Face(0),
                        at: m,
                    },
                    aug,
                );
            }
            let split = a.act(&sub(n), z);
            let i = index.get(&(aug, split)).ok_or_else(|| {
                Error::Malformed(format!("unit misses {} at level {n}", a.id(&n, z)))
            })?;
            table.push(*i);
        }
        components.insert(n, table);
    }
    NatMap::new(source, target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{is_2segal, is_segal};
    use crate::fixtures::{boolean_lattice, chain_nerve, corpus, non_2segal, FiniteCategory};
    use crate::index::check_functor;

    #[test]
    fn functors() {
        for side in [Side::Upper, Side::Lower, Side::Both] {
            assert!(
                check_functor(&DecFunctor::new(side, 4)).passed(),
                "{side:?}"
            );
        }
        assert!(check_functor(&SdFunctor::new(5)).passed());
        assert!(check_functor(&Underlying {
            dom: Simplex { trunc: 3 },
            cod: Split {
                trunc: 3,
                augmented: true
            }
        })
        .passed());
        assert!(check_functor(&BottomFunctor {
            dom: Split {
                trunc: 3,
                augmented: true
            },
            cod: Simplex { trunc: 4 }
        })
        .passed());
        assert!(check_functor(&HFunctor::new(3)).passed());
    }

    #[test]
    fn decalage_levels() {
        let x = chain_nerve(1, 3);
        assert_eq!(dec(&x, Side::Lower).size(&0), 3);
        let both = dec(&x, Side::Both);
        assert_eq!(dec(&dec(&x, Side::Lower), Side::Upper), both);
        assert_eq!(dec(&dec(&x, Side::Upper), Side::Lower), both);
        let point = SSet::constant(3, &["*".into()]);
        assert_eq!(dec(&point, Side::Lower), SSet::constant(2, &["*".into()]));
        assert!(counit(&point, Side::Lower).is_levelwise_bijective());
    }

    #[test]
    fn counit_comult_alpha_are_natural() {
        for (name, x) in corpus(4) {
            for side in [Side::Upper, Side::Lower] {
                assert!(counit(&x, side).validate().passed(), "{name}");
                assert!(comult(&x, side).validate().passed(), "{name}");
                assert!(alpha_aug(&x, side).validate().passed(), "{name}");
            }
        }
        let x = chain_nerve(2, 3);
        assert_eq!(
            alpha_aug(&x, Side::Lower).components[&0],
            x.face_table(1, 1)
        );
    }

    #[test]
    fn cofree_is_a_rigid_coalgebra_over_lower_2segal() {
        for (name, x) in corpus(5) {
            let a = cofree(&x, false);
            assert!(validate_coalgebra(&a).passed(), "{name}");
            assert!(is_rigid(&a).passed(), "{name}");
            assert_eq!(underlying(&a), dec(&x, Side::Lower));
        }
    }

    #[test]
    fn counit_of_gamma_is_identity() {
        let a = cofree(&FiniteCategory::partial_monoid().nerve(4), false);
        let id = counit(&underlying(&a), Side::Lower)
            .after(&gamma(&a))
            .unwrap();
        assert!(id
            .components
            .iter()
            .all(|(_, c)| c.iter().enumerate().all(|(i, &j)| i == j)));
    }

    #[test]
    fn bottom_of_lattice_is_initial() {
        let x = boolean_lattice(2).nerve(4);
        let bottom = x.find(&0, "0").unwrap();
        let p = pointed(&x, vec!["b".into()], vec![bottom]).unwrap();
        assert!(is_local_initial(&p).passed());
        assert!(is_local_terminal(&p).failed());
        let other = (bottom + 1) % x.size(&0);
        let q = pointed(&x, vec!["b".into()], vec![other]).unwrap();
        assert!(is_local_initial(&q).failed());
        assert!(h_counit(&p).unwrap().iso_report("counit").passed());
        assert!(!h_counit(&q).unwrap().is_levelwise_bijective());
    }

    #[test]
    fn h_round_trips() {
        let x = chain_nerve(2, 4);
        let p = pointed(&x, vec!["b".into()], vec![0]).unwrap();
        let a = h_lower(&p).unwrap();
        assert!(validate_coalgebra(&a).passed());
        assert!(is_rigid(&a).passed());
        assert!(h_unit(&a).unwrap().iso_report("unit").passed());
    }

    #[test]
    fn sd_detects_2segal() {
        for (name, x) in corpus(5).into_iter().chain(non_2segal(5)) {
            assert_eq!(
                is_segal(&sd(&x)).passed(),
                is_2segal(&x, Side::Both).passed(),
                "{name}"
            );
        }
    }
}
