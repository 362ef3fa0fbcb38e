//! Bicomodule configurations: the right Kan extension `q_*` of a simplicial
//! map, condition (★) and the unit, the bicomodule axioms, invertibility of
//! the abacus, the cocartesian correspondence `M → Δ¹`, and the comparison
//! with pointed bisimplicial sets through `j`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abacus::{
    generator_word, hom_enumerate, Abacus, AbacusGen, AbacusOp, BeadMap, BulkFunctor, DObj,
    JFunctor, PFunctor, QFunctor, RFunctor,
};
use crate::decalage::{counit, is_local_initial, is_local_terminal, pointed, Side};
use crate::fibration::{column, is_2segal, is_culf, is_double_segal, is_segal, row, stability};
use crate::fixtures::{chain_nerve, map_by_ids};
use crate::index::{
    BiGen, Cocone, CoconeGen, CoconeObj, IndexCategory, IndexFunctor, Simplex, SimplexGen,
};
use crate::presheaf::{
    arrow_to_smap, coequalize, is_bijection, pullback_sets, record_square, restrict, BiSSet, DSet,
    NatMap, Presheaf, SMap, SSet, SigmaSet, Square, SquareNames,
};
use crate::report::{CheckReport, Witness};
use crate::simplex::{MonotoneMap, Op};
use crate::Error;

fn obj(i: i64, j: i64) -> DObj {
    DObj { i, j }
}

fn gen(op: AbacusOp, i: i64, j: i64) -> AbacusGen {
    AbacusGen { op, at: obj(i, j) }
}

/// The inclusion of the first `i + 1` vertices of `[n]`.
fn head(i: usize, n: usize) -> MonotoneMap {
    MonotoneMap::new((0..=i).collect(), n + 1).expect("an initial segment")
}

/// A simplicial map restricted to a lower truncation.
pub fn truncate_map(f: &SMap, trunc: usize) -> Result<SMap, Error> {
    let source = f.source.truncate(trunc)?;
    let target = f.target.truncate(trunc)?;
    let components = (0..=trunc).map(|n| (n, f.components[&n].clone())).collect();
    NatMap::new(source, target, components)
}

/// The pullback `A ×_C B` of two simplicial maps with a common target; ids
/// are `(a,b)`.
pub fn fiber_product(f: &SMap, g: &SMap) -> Result<SSet, Error> {
    if f.target != g.target {
        return Err(Error::NotComposable(
            "the maps have different targets".into(),
        ));
    }
    let (a, b) = (&f.source, &g.source);
    SSet::from_monotone(
        a.shape.trunc,
        |n| {
            pullback_sets(&f.components[&n], &g.components[&n])
                .into_iter()
                .map(|(x, y)| (n, x, y))
                .collect()
        },
        |phi, &(_, x, y)| {
            (
                phi.dom() - 1,
                a.act_monotone(phi, x),
                b.act_monotone(phi, y),
            )
        },
        |&(n, x, y)| format!("({},{})", a.id(&n, x), b.id(&n, y)),
    )
}

/// `q_*(F)` for `F : X → Y`: the column is `X`, the row is `Y`, and
/// `B_{i,j}` consists of pairs `(x, y)` with `x ∈ X_i`, `y ∈ Y_{i+1+j}` and
/// `F(x)` the restriction of `y` to its first `i + 1` vertices.
pub fn q_lower_star(f: &SMap) -> Result<DSet, Error> {
    f.check_tables()?;
    let (x, y) = (&f.source, &f.target);
    if x.shape.trunc != y.shape.trunc {
        return Err(Error::Malformed(
            "source and target truncations differ".into(),
        ));
    }
    let shape = Abacus::full(y.shape.trunc);
    let elems = |o: &DObj| -> Vec<(DObj, Option<usize>, Option<usize>)> {
        let n = o.degree() as usize;
        if o.j < 0 {
            return (0..x.size(&n)).map(|a| (*o, Some(a), None)).collect();
        }
        if o.i < 0 {
            return (0..y.size(&n)).map(|b| (*o, None, Some(b))).collect();
        }
        let i = o.i as usize;
        let fx = &f.components[&i];
        pullback_sets(fx, &y.monotone_table(&head(i, n)))
            .into_iter()
            .map(|(a, b)| (*o, Some(a), Some(b)))
            .collect()
    };
    let act = |g: &AbacusGen, e: &(DObj, Option<usize>, Option<usize>)| {
        let (o, a, b) = *e;
        let bead = g.bead();
        let src = bead.src;
        let full =
            b.unwrap_or_else(|| f.components[&(o.i as usize)][a.expect("column elements carry x")]);
        let a2 = (src.i >= 0)
            .then(|| x.act_monotone(&bead.black_part(), a.expect("black beads carry x")));
        let b2 = (src.j >= 0).then(|| y.act_monotone(&bead.carrier, full));
        (src, a2, b2)
    };
    let show = |e: &(DObj, Option<usize>, Option<usize>)| {
        let (o, a, b) = *e;
        let n = o.degree() as usize;
        match (a, b) {
            (Some(a), Some(b)) => format!("({},{})", x.id(&(o.i as usize), a), y.id(&n, b)),
            (Some(a), None) => x.id(&n, a).to_string(),
            (None, Some(b)) => y.id(&n, b).to_string(),
            (None, None) => unreachable!("every element has a component"),
        }
    };
    Presheaf::build(shape, elems, act, show)
}

/// `q^*(B)`: the map from the augmentation column to the augmentation row
/// given by composites of abacus maps.
pub fn q_upper_star(b: &DSet) -> Result<SMap, Error> {
    require_full(b)?;
    arrow_to_smap(&restrict(&QFunctor::new(b.shape.trunc), b)?)
}

fn require_full(b: &DSet) -> Result<(), Error> {
    if !b.shape.abacus || b.shape.min_i != -1 {
        return Err(Error::Precondition(format!(
            "needs a presheaf on all of 𝒟, got {}",
            b.shape.name()
        )));
    }
    Ok(())
}

fn index_of(level: &[String]) -> BTreeMap<&str, usize> {
    level
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_str(), k))
        .collect()
}

/// The unit `B → q_* q^* B`: an element goes to its restrictions to the black
/// beads and to the whole string.
pub fn unit_map(b: &DSet) -> Result<NatMap<Abacus>, Error> {
    let fq = q_upper_star(b)?;
    let target = q_lower_star(&fq)?;
    let (x, y) = (&fq.source, &fq.target);
    let mut components = BTreeMap::new();
    for o in b.shape.objects() {
        if o.i < 0 || o.j < 0 {
            components.insert(o, (0..b.size(&o)).collect());
            continue;
        }
        let n = o.degree() as usize;
        let black = BeadMap::new(obj(o.i, -1), o, head(o.i as usize, n))?;
        let white = BeadMap::new(obj(-1, o.degree()), o, MonotoneMap::identity(n + 1))?;
        let xs = b.word_table(&o, &generator_word(&black));
        let ys = b.word_table(&o, &generator_word(&white));
        let index = index_of(target.level(&o));
        let mut table = Vec::with_capacity(b.size(&o));
        for (xa, yb) in xs.into_iter().zip(ys) {
            let id = format!("({},{})", x.id(&(o.i as usize), xa), y.id(&n, yb));
            table.push(
                *index.get(id.as_str()).ok_or_else(|| {
                    Error::Malformed(format!("{id} is not in the pullback at {o}"))
                })?,
            );
        }
        components.insert(o, table);
    }
    NatMap::new(b.clone(), target, components)
}

/// The unit `B → q_* q^* B` is a levelwise bijection.
pub fn unit_iso(b: &DSet) -> CheckReport {
    match unit_map(b) {
        Ok(m) => m.iso_report("unit"),
        Err(e) => CheckReport::precondition("unit", e.to_string()),
    }
}

fn shift_horizontal(op: AbacusOp) -> Option<AbacusOp> {
    match op {
        AbacusOp::D(k) => Some(AbacusOp::D(k + 1)),
        AbacusOp::S(k) => Some(AbacusOp::S(k + 1)),
        _ => None,
    }
}

/// Condition (★): every abacus map `f : B_{i,•} → Dec_⊥ B_{i-1,•}` is
/// cartesian, i.e. its naturality squares against the horizontal faces and
/// degeneracies (including the augmentation) are pullbacks.
pub fn condition_star(b: &DSet) -> CheckReport {
    if let Err(e) = require_full(b) {
        return CheckReport::precondition("condition star", e.to_string());
    }
    let mut report = CheckReport::new("condition star");
    for h in b.shape.generators() {
        let Some(op2) = shift_horizontal(h.op) else {
            continue;
        };
        let DObj { i, j } = h.at;
        if i < 0 {
            continue;
        }
        let family = format!("row {i}");
        let top = gen(AbacusOp::F, i, j);
        let h2 = AbacusGen {
            op: op2,
            at: obj(i - 1, j + 1),
        };
        let bottom = gen(AbacusOp::F, i, h.source().j);
        let (Some(t), Some(l), Some(r), Some(bt)) = (
            b.actions.get(&top),
            b.actions.get(&h),
            b.actions.get(&h2),
            b.actions.get(&bottom),
        ) else {
            report.skip(&family);
            continue;
        };
        let sq = Square {
            top: t,
            left: l,
            right: r,
            bottom: bt,
        };
        let names = SquareNames {
            a: b.level(&h.at),
            b: b.level(&top.source()),
            c: b.level(&h.source()),
        };
        let key = b.shape.gen_key(&h);
        record_square(
            &mut report,
            &family,
            || format!("f against {key}"),
            sq,
            names,
        );
    }
    report
}

/// Every stored abacus map is a bijection.
pub fn has_invertible_abacus(b: &DSet) -> CheckReport {
    let mut report = CheckReport::new("invertible abacus");
    if !b.shape.abacus {
        return CheckReport::precondition("invertible abacus", "the shape has no abacus maps");
    }
    for (g, table) in &b.actions {
        if g.op != AbacusOp::F {
            continue;
        }
        let src = g.source();
        let ok = is_bijection(table, b.size(&src));
        report.record(&format!("row {}", g.at.i), ok, || {
            let mut seen = BTreeMap::new();
            let mut elements = Vec::new();
            for (x, &y) in table.iter().enumerate() {
                if let Some(x0) = seen.insert(y, x) {
                    elements.push(format!(
                        "{} and {} collide",
                        b.id(&g.at, x0),
                        b.id(&g.at, x)
                    ));
                    break;
                }
            }
            if elements.is_empty() {
                let missed = (0..b.size(&src)).find(|y| !seen.contains_key(y));
                elements.extend(missed.map(|y| format!("{} is missed", b.id(&src, y))));
            }
            Witness::new(format!("f at {}", g.at), elements)
        });
    }
    report
}

/// The augmentation column (`column = true`, `n ↦ [n,-1]`) or row
/// (`n ↦ [-1,n]`) of 𝒟.
#[derive(Clone, Copy, Debug)]
pub struct Augmentation {
    pub column: bool,
    pub dom: Simplex,
    pub cod: Abacus,
}

impl Augmentation {
    pub fn new(cod: Abacus, column: bool) -> Self {
        Augmentation {
            column,
            dom: Simplex { trunc: cod.trunc },
            cod,
        }
    }
}

impl IndexFunctor for Augmentation {
    type Dom = Simplex;
    type Cod = Abacus;
    fn name(&self) -> &'static str {
        if self.column {
            "augmentation column"
        } else {
            "augmentation row"
        }
    }
    fn domain(&self) -> &Simplex {
        &self.dom
    }
    fn codomain(&self) -> &Abacus {
        &self.cod
    }
    fn map_obj(&self, n: &usize) -> DObj {
        if self.column {
            obj(*n as i64, -1)
        } else {
            obj(-1, *n as i64)
        }
    }
    fn map_gen(&self, g: &SimplexGen) -> Vec<AbacusGen> {
        let op = match (self.column, g.op) {
            (true, Op::Face(k)) => AbacusOp::E(k),
            (true, Op::Degen(k)) => AbacusOp::T(k),
            (false, Op::Face(k)) => AbacusOp::D(k),
            (false, Op::Degen(k)) => AbacusOp::S(k),
        };
        vec![AbacusGen {
            op,
            at: self.map_obj(&g.at),
        }]
    }
    fn map_mor(&self, m: &MonotoneMap) -> BeadMap {
        BeadMap {
            src: self.map_obj(&(m.dom() - 1)),
            tgt: self.map_obj(&(m.cod() - 1)),
            carrier: m.clone(),
        }
    }
}

pub fn augmentation_column(b: &DSet) -> SSet {
    restrict(&Augmentation::new(b.shape, true), b)
        .expect("the augmentation column lies in the shape")
}

/// # Panics
/// If the shape has no augmentation row.
pub fn augmentation_row(b: &DSet) -> SSet {
    restrict(&Augmentation::new(b.shape, false), b).expect("the augmentation row lies in the shape")
}

/// The bisimplicial part `B_{i,j}`, `i, j >= 0`.
pub fn bulk(b: &DSet) -> BiSSet {
    restrict(&BulkFunctor::of(b.shape), b).expect("the bulk lies in the shape")
}

/// `d_0 : B_{•,0} → B_{•,-1}`.
pub fn column_augmentation_map(b: &DSet) -> SMap {
    let source = column(&bulk(b), 0);
    let t = source.shape.trunc;
    let target = augmentation_column(b)
        .truncate(t)
        .expect("lower truncation");
    NatMap::from_fn(source, target, |n, x| {
        b.act(&gen(AbacusOp::D(0), *n as i64, 0), x)
    })
    .expect("tables of the right shape")
}

/// `e_0 : B_{0,•} → B_{-1,•}`.
pub fn row_augmentation_map(b: &DSet) -> SMap {
    let source = row(&bulk(b), 0);
    let t = source.shape.trunc;
    let target = augmentation_row(b).truncate(t).expect("lower truncation");
    NatMap::from_fn(source, target, |n, x| {
        b.act(&gen(AbacusOp::E(0), 0, *n as i64), x)
    })
    .expect("tables of the right shape")
}

fn named(mut r: CheckReport, name: &str) -> CheckReport {
    r.name = name.into();
    r
}

/// Stable and double Segal bulk, 2-Segal augmentation row and column, culf
/// augmentation maps.
pub fn is_bicomodule_config(b: &DSet) -> CheckReport {
    let mut report = CheckReport::new("bicomodule configuration");
    if b.shape.min_i != -1 {
        return CheckReport::precondition(
            "bicomodule configuration",
            "the augmentation row is missing",
        );
    }
    if b.shape.trunc < 3 {
        return CheckReport::precondition("bicomodule configuration", "truncation below 3");
    }
    let bk = bulk(b);
    report.absorb(stability(&bk, Side::Both));
    report.absorb(is_double_segal(&bk));
    report.absorb(named(
        is_2segal(&augmentation_column(b), Side::Both),
        "column 2-segal",
    ));
    report.absorb(named(
        is_2segal(&augmentation_row(b), Side::Both),
        "row 2-segal",
    ));
    report.absorb(named(
        is_culf(&column_augmentation_map(b)),
        "column map culf",
    ));
    report.absorb(named(is_culf(&row_augmentation_map(b)), "row map culf"));
    report
}

/// `X ×_Y Dec_⊤ Y` for `F : X → Y`, pulled back along the top face.
pub fn relative_top_decalage(f: &SMap) -> Result<SSet, Error> {
    let eps = counit(&f.target, Side::Upper);
    let fx = truncate_map(f, eps.source.shape.trunc)?;
    fiber_product(&fx, &eps)
}

/// `X ×_Y Dec_⊤ Y` is Segal.
pub fn is_rel_upper_2segal(f: &SMap) -> CheckReport {
    let t = f.source.shape.trunc;
    if t < 3 {
        return CheckReport::precondition(
            "relatively upper 2-segal",
            format!("truncation {t} below 3"),
        );
    }
    match relative_top_decalage(f) {
        Ok(p) => named(is_segal(&p), "relatively upper 2-segal"),
        Err(e) => CheckReport::precondition("relatively upper 2-segal", e.to_string()),
    }
}

/// The three conditions on `F : X → Y` matching the bicomodule axioms of
/// `q_*(F)`.
pub fn map_conditions(f: &SMap) -> CheckReport {
    let mut report = CheckReport::new("2-segal map conditions");
    report.absorb(named(is_2segal(&f.source, Side::Both), "source 2-segal"));
    report.absorb(named(is_2segal(&f.target, Side::Both), "target 2-segal"));
    report.absorb(is_rel_upper_2segal(f));
    report
}

fn biconditional(name: &str, left: CheckReport, right: CheckReport) -> CheckReport {
    if left.verdict == crate::Verdict::Precondition || right.verdict == crate::Verdict::Precondition
    {
        let mut r = CheckReport::precondition(name, "a side could not be decided");
        r.notes
            .extend(left.notes.iter().chain(&right.notes).cloned());
        return r;
    }
    let mut report = CheckReport::new(name);
    let (l, rt) = (left.passed(), right.passed());
    report.record("agreement", l == rt, || {
        Witness::new(
            format!("{} is {l}, {} is {rt}", left.name, right.name),
            Vec::new(),
        )
    });
    report.note(format!("{}: {l}", left.name));
    report.note(format!("{}: {rt}", right.name));
    report
}

/// Condition (★) holds exactly when the unit is invertible.
pub fn star_biconditional(b: &DSet) -> CheckReport {
    biconditional("star iff unit", condition_star(b), unit_iso(b))
}

/// `q_*(F)` is a bicomodule configuration exactly when `X` and `Y` are
/// 2-Segal and `F` is relatively upper 2-Segal.
pub fn dictionary(f: &SMap) -> CheckReport {
    match q_lower_star(f) {
        Ok(b) => biconditional("dictionary", is_bicomodule_config(&b), map_conditions(f)),
        Err(e) => CheckReport::precondition("dictionary", e.to_string()),
    }
}

/// Levelwise bijectivity of a simplicial map as a report.
pub fn is_levelwise_bijective(f: &SMap) -> CheckReport {
    let mut report = CheckReport::new("levelwise bijective");
    for n in f.source.shape.objects() {
        let ok = is_bijection(&f.components[&n], f.target.size(&n));
        report.record(&format!("level {n}"), ok, || {
            Witness::new(
                format!("level {n}"),
                vec![format!("{} -> {}", f.source.size(&n), f.target.size(&n))],
            )
        });
    }
    report
}

/// `q_*(F)` has invertible abacus maps exactly when `F` is bijective.
pub fn invertibility(f: &SMap) -> CheckReport {
    match q_lower_star(f) {
        Ok(b) => biconditional(
            "invertibility",
            has_invertible_abacus(&b),
            is_levelwise_bijective(f),
        ),
        Err(e) => CheckReport::precondition("invertibility", e.to_string()),
    }
}

/// `(i, x)` for every element of `M_n`, `x ∈ B_{i,n-1-i}`.
fn m_elements(b: &DSet, n: usize) -> Vec<(i64, usize)> {
    let n = n as i64;
    (-1..=n)
        .flat_map(|i| (0..b.size(&obj(i, n - 1 - i))).map(move |x| (i, x)))
        .collect()
}

fn pattern(i: i64, j: i64) -> String {
    let mut s = String::new();
    s.extend(core::iter::repeat_n('0', (i + 1) as usize));
    s.extend(core::iter::repeat_n('1', (j + 1) as usize));
    s
}

/// The total space `M` with `M_n = Σ_{i+1+j=n} B_{i,j}` and its projection to
/// `Δ¹`, from the color-preserving part of `B`. The face `d_k` acts on
/// `B_{i,j}` as `e_k` for `k <= i` and as `d_{k-i-1}` above; degeneracies
/// likewise. Ids are `[i,j]` followed by the id in `B_{i,j}`.
pub fn build_m(b: &DSet) -> Result<(SSet, SMap), Error> {
    if b.shape.min_i != -1 {
        return Err(Error::Precondition(
            "the augmentation row is missing".into(),
        ));
    }
    let t = b.shape.trunc;
    let shape = Simplex { trunc: t };
    let m = Presheaf::build(
        shape,
        |n| {
            m_elements(b, *n)
                .into_iter()
                .map(|(i, x)| (*n, i, x))
                .collect()
        },
        |g: &SimplexGen, &(n, i, x)| {
            let j = n as i64 - 1 - i;
            let (op, i2, n2) = match g.op {
                Op::Face(k) if k as i64 <= i => (AbacusOp::E(k), i - 1, n - 1),
                Op::Face(k) => (AbacusOp::D(k - (i + 1) as usize), i, n - 1),
                Op::Degen(k) if k as i64 <= i => (AbacusOp::T(k), i + 1, n + 1),
                Op::Degen(k) => (AbacusOp::S(k - (i + 1) as usize), i, n + 1),
            };
            (n2, i2, b.act(&gen(op, i, j), x))
        },
        |&(n, i, x)| {
            let o = obj(i, n as i64 - 1 - i);
            format!("{o}{}", b.id(&o, x))
        },
    )?;
    let delta1 = chain_nerve(1, t);
    let comps: BTreeMap<usize, Vec<String>> = (0..=t)
        .map(|n| {
            (
                n,
                m_elements(b, n)
                    .into_iter()
                    .map(|(i, _)| pattern(i, n as i64 - 1 - i))
                    .collect(),
            )
        })
        .collect();
    let index: BTreeMap<(usize, &str), usize> = (0..=t)
        .flat_map(|n| {
            m.level(&n)
                .iter()
                .enumerate()
                .map(move |(k, s)| ((n, s.as_str()), k))
        })
        .collect();
    let p = map_by_ids(m.clone(), delta1, |n, id| {
        comps[n][index[&(*n, id)]].clone()
    })?;
    Ok((m, p))
}

/// `build_m` of `q_*(F)`.
pub fn build_m_of_map(f: &SMap) -> Result<(SSet, SMap), Error> {
    build_m(&q_lower_star(f)?)
}

/// Recovers the Δ_{/[1]}-presheaf from `p : M → Δ¹`: `B_{i,j}` is the fiber
/// of `p` over the simplex with `i + 1` zeros and `j + 1` ones.
pub fn extract_from_m(p: &SMap) -> Result<DSet, Error> {
    let m = &p.source;
    let delta = &p.target;
    let t = m.shape.trunc;
    let shape = Abacus::slice(t);
    let r = RFunctor::new(shape);
    Presheaf::build(
        shape,
        |o| {
            let n = o.degree() as usize;
            let want = pattern(o.i, o.j);
            (0..m.size(&n))
                .filter(|&s| delta.id(&n, p.components[&n][s]) == want)
                .map(|s| (*o, s))
                .collect()
        },
        |g, &(_, s)| (g.source(), m.act_word(&r.map_gen(g), s)),
        |&(o, s)| m.id(&(o.degree() as usize), s).to_string(),
    )
}

/// The comparison from the color-preserving part of `B` to
/// `extract_from_m(build_m(B))`.
pub fn m_comparison(b: &DSet) -> Result<NatMap<Abacus>, Error> {
    let (_, p) = build_m(b)?;
    let e = extract_from_m(&p)?;
    let slice = restrict(
        &crate::abacus::Inclusion {
            dom: Abacus::slice(b.shape.trunc),
            cod: b.shape,
        },
        b,
    )?;
    let mut components = BTreeMap::new();
    for o in slice.shape.objects() {
        let index = index_of(e.level(&o));
        let table = slice
            .level(&o)
            .iter()
            .map(|id| index.get(format!("{o}{id}").as_str()).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Malformed(format!("an element of {o} is not in its fiber")))?;
        components.insert(o, table);
    }
    NatMap::new(slice, e, components)
}

/// `M` is 2-Segal exactly when `X` and `Y` are 2-Segal and `F` is relatively
/// upper 2-Segal.
pub fn m_2segal_dictionary(f: &SMap) -> CheckReport {
    match build_m_of_map(f) {
        Ok((m, _)) => biconditional(
            "total space",
            named(is_2segal(&m, Side::Both), "M 2-segal"),
            map_conditions(f),
        ),
        Err(e) => CheckReport::precondition("total space", e.to_string()),
    }
}

/// The presheaf `𝒟(-,[a,b])` with every morphism that lands in the black
/// beads, or starts in the augmentation row, collapsed to one point `*`.
/// For `[0,0]` it fails condition (★): both augmentations are points while
/// `B_{0,0}` has two elements.
pub fn collapsed_representable(target: DObj, trunc: usize) -> Result<DSet, Error> {
    let shape = Abacus::full(trunc);
    if !shape.contains(&target) {
        return Err(Error::OutOfRange(format!(
            "{target} is outside truncation {trunc}"
        )));
    }
    let collapsed =
        |h: &BeadMap| h.src.i < 0 || h.carrier.values().iter().all(|&v| v < target.blacks());
    let keep = |h: BeadMap| (!collapsed(&h)).then_some(h);
    Presheaf::build(
        shape,
        |o| {
            let mut l: Vec<(DObj, Option<BeadMap>)> = vec![(*o, None)];
            l.extend(
                hom_enumerate(*o, target)
                    .into_iter()
                    .filter_map(keep)
                    .map(|h| (*o, Some(h))),
            );
            l
        },
        |g, (_, h)| {
            let src = g.source();
            let image = h.as_ref().and_then(|h| {
                let c = crate::abacus::bead_compose(h, &g.bead()).expect("composable");
                keep(c)
            });
            (src, image)
        },
        |(_, h)| match h {
            None => "*".into(),
            Some(h) => h.carrier.values().iter().map(|v| format!("{v}")).collect(),
        },
    )
}

/// The bisimplicial part of a pointed bisimplicial set.
pub fn sigma_bulk(a: &SigmaSet) -> BiSSet {
    let levels = a
        .levels
        .iter()
        .filter_map(|(o, l)| match o {
            CoconeObj::Inner(x) => Some((*x, l.clone())),
            CoconeObj::Apex => None,
        })
        .collect();
    let actions = a
        .actions
        .iter()
        .filter_map(|(g, t)| match g {
            CoconeGen::Inner(h) => Some((*h, t.clone())),
            CoconeGen::Pt => None,
        })
        .collect();
    Presheaf::new(a.shape.inner, levels, actions).expect("levels of a valid pointed set")
}

/// The pointing set and the pointing map into `B_{0,0}`.
pub fn sigma_pointing(a: &SigmaSet) -> (&[String], &[usize]) {
    (a.level(&CoconeObj::Apex), &a.actions[&CoconeGen::Pt])
}

/// A pointed bisimplicial set from its bulk and pointing.
pub fn sigma_set(bulk: &BiSSet, c: Vec<String>, a: Vec<usize>) -> Result<SigmaSet, Error> {
    let shape = Cocone::sigma(bulk.shape.trunc);
    let mut levels: BTreeMap<_, _> = bulk
        .levels
        .iter()
        .map(|(o, l)| (CoconeObj::Inner(*o), l.clone()))
        .collect();
    levels.insert(CoconeObj::Apex, c);
    let mut actions: BTreeMap<_, _> = bulk
        .actions
        .iter()
        .map(|(g, t)| (CoconeGen::Inner(*g), t.clone()))
        .collect();
    actions.insert(CoconeGen::Pt, a);
    Presheaf::new(shape, levels, actions)
}

/// `p^* X`: the total decalage pointed by `s_0 : X_0 → X_1`.
pub fn p_star_tot(x: &SSet) -> Result<SigmaSet, Error> {
    if x.shape.trunc < 1 {
        return Err(Error::Truncation(
            "the total decalage needs truncation at least 1".into(),
        ));
    }
    restrict(&PFunctor::new(x.shape.trunc - 1), x)
}

/// `j^* B`: the bulk, pointed by `ssub : B_{0,-1} → B_{0,0}`.
pub fn j_upper_star(b: &DSet) -> Result<SigmaSet, Error> {
    if !b.shape.abacus || b.shape.trunc < 1 {
        return Err(Error::Precondition(
            "j^* needs abacus maps and truncation at least 1".into(),
        ));
    }
    restrict(&JFunctor::new(b.shape.trunc - 1), b)
}

/// The pointing is a local-initial-objects structure on the zeroth row.
pub fn horizontal_pointing(a: &SigmaSet) -> CheckReport {
    let (c, pt) = sigma_pointing(a);
    let r0 = row(&sigma_bulk(a), 0);
    match pointed(&r0, c.to_vec(), pt.to_vec()) {
        Ok(p) => named(is_local_initial(&p), "horizontal pointing"),
        Err(e) => CheckReport::precondition("horizontal pointing", e.to_string()),
    }
}

/// The pointing is a local-terminal-objects structure on the zeroth column.
pub fn vertical_pointing(a: &SigmaSet) -> CheckReport {
    let (c, pt) = sigma_pointing(a);
    let c0 = column(&sigma_bulk(a), 0);
    match pointed(&c0, c.to_vec(), pt.to_vec()) {
        Ok(p) => named(is_local_terminal(&p), "vertical pointing"),
        Err(e) => CheckReport::precondition("vertical pointing", e.to_string()),
    }
}

/// Stable, double Segal, and both pointing axioms.
pub fn boors_axioms(a: &SigmaSet) -> CheckReport {
    let mut report = CheckReport::new("boors axioms");
    let bk = sigma_bulk(a);
    report.absorb(stability(&bk, Side::Both));
    report.absorb(is_double_segal(&bk));
    report.absorb(horizontal_pointing(a));
    report.absorb(vertical_pointing(a));
    report
}

/// Upper stable, Segal rows, horizontal pointing.
pub fn half_axioms(a: &SigmaSet) -> CheckReport {
    let mut report = CheckReport::new("half axioms");
    let bk = sigma_bulk(a);
    report.absorb(stability(&bk, Side::Upper));
    let t = bk.shape.trunc;
    for k in 0..=t {
        if t - k < 2 {
            report.skip(&format!("row {k}"));
            continue;
        }
        report.absorb(named(is_segal(&row(&bk, k)), &format!("row {k}")));
    }
    report.absorb(horizontal_pointing(a));
    report
}

/// The bottom sections `ssub : A_{i,j} → A_{i,j+1}` induced by the pointing
/// on the zeroth row and propagated down by upper stability, and the
/// augmentation `A_{0,0} → C` of the zeroth row.
struct BottomSections {
    ss: BTreeMap<(usize, usize), Vec<usize>>,
    aug: Vec<usize>,
}

fn bottom_sections(bk: &BiSSet, pt: &[usize]) -> Result<BottomSections, Error> {
    let t = bk.shape.trunc;
    let r0 = row(bk, 0);
    let mut ss: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut aug = Vec::new();
    for j in 0..t {
        let first = r0.monotone_table(&MonotoneMap::new(vec![0], j + 2)?);
        let mut found: Vec<Option<(usize, usize)>> = vec![None; bk.size(&(0, j))];
        for z in 0..bk.size(&(0, j + 1)) {
            for (c, &p) in pt.iter().enumerate() {
                if p != first[z] {
                    continue;
                }
                let x = bk.d(0, j + 1, 0, z);
                if found[x].replace((c, z)).is_some() {
                    return Err(Error::Precondition(format!(
                        "{} has two bottom sections",
                        bk.id(&(0, j), x)
                    )));
                }
            }
        }
        let pairs = found
            .into_iter()
            .enumerate()
            .map(|(x, p)| {
                p.ok_or_else(|| {
                    Error::Precondition(format!("{} has no bottom section", bk.id(&(0, j), x)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if j == 0 {
            aug = pairs.iter().map(|p| p.0).collect();
        }
        ss.insert((0, j), pairs.into_iter().map(|p| p.1).collect());
    }
    for i in 1..t {
        for j in 0..(t - i) {
            let mut index = BTreeMap::new();
            for z in 0..bk.size(&(i, j + 1)) {
                index.insert((bk.e(i, j + 1, 0, z), bk.d(i, j + 1, 0, z)), z);
            }
            let above = &ss[&(i - 1, j)];
            let table = (0..bk.size(&(i, j)))
                .map(|x| {
                    index
                        .get(&(above[bk.e(i, j, 0, x)], x))
                        .copied()
                        .ok_or_else(|| {
                            Error::Precondition(format!(
                                "upper stability fails over {}",
                                bk.id(&(i, j), x)
                            ))
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            ss.insert((i, j), table);
        }
    }
    Ok(BottomSections { ss, aug })
}

/// Quotient maps onto a colimit and one representative per class.
struct Colimit {
    quotient: Vec<usize>,
    reps: Vec<usize>,
}

impl Colimit {
    fn of(n: usize, f: &[usize], g: &[usize]) -> Self {
        let (reps, quotient) = coequalize(n, f, g);
        Colimit { quotient, reps }
    }
}

/// Extends a pointed bisimplicial set to a presheaf on 𝒟 (on 𝒟 without its
/// augmentation row when `half`): bottom sections come from the pointing and
/// upper stability, the augmentation column consists of the row-wise
/// colimits, the augmentation row of the column-wise colimits, and the
/// abacus map is `f = e_⊤ ∘ ssub`. The result has truncation `T - 1` where
/// the bulk of `A` has truncation `T`.
fn extend(a: &SigmaSet, half: bool) -> Result<DSet, Error> {
    let bk = sigma_bulk(a);
    let t = bk.shape.trunc;
    if t < 2 {
        return Err(Error::Truncation(
            "extension needs bisimplicial truncation at least 2".into(),
        ));
    }
    let (c_ids, pt) = sigma_pointing(a);
    let sections = bottom_sections(&bk, pt)?;
    let ss = &sections.ss;
    let t2 = t - 1;
    let shape = if half {
        Abacus::upper_rows(t2)
    } else {
        Abacus::full(t2)
    };

    let mut cols: Vec<Colimit> = Vec::new();
    cols.push(Colimit {
        quotient: sections.aug.clone(),
        reps: pt.to_vec(),
    });
    for i in 1..=t2 {
        cols.push(Colimit::of(
            bk.size(&(i, 0)),
            bk.face_pair(i, 1, false),
            bk.face_pair(i, 1, true),
        ));
    }
    let rows: Vec<Colimit> = if half {
        Vec::new()
    } else {
        (0..=t2)
            .map(|j| Colimit::of(bk.size(&(0, j)), bk.e_pair(j, false), bk.e_pair(j, true)))
            .collect()
    };
    let bulk_size = |o: &DObj| bk.size(&(o.i as usize, o.j as usize));
    let size = |o: &DObj| -> usize {
        if o.i >= 0 && o.j >= 0 {
            bulk_size(o)
        } else if o.j < 0 {
            cols[o.i as usize].reps.len()
        } else {
            rows[o.j as usize].reps.len()
        }
    };
    // e_⊤ out of A_{i,j}, landing in the augmentation row when i = 0
    let top_face = |i: usize, j: usize, y: usize| -> usize {
        if i == 0 {
            rows[j].quotient[y]
        } else {
            bk.e(i, j, i, y)
        }
    };
    let column_split = |i: usize, c: usize| -> usize {
        if i == 0 {
            pt[c]
        } else {
            bk.d(i, 1, 1, ss[&(i, 0)][cols[i].reps[c]])
        }
    };
    let act = |g: &AbacusGen, x: usize| -> usize {
        let DObj { i, j } = g.at;
        let src = g.source();
        if i >= 0 && j >= 0 {
            let (iu, ju) = (i as usize, j as usize);
            return match g.op {
                AbacusOp::E(k) if src.i >= 0 => bk.e(iu, ju, k, x),
                AbacusOp::E(_) => rows[ju].quotient[x],
                AbacusOp::T(k) => bk.t(iu, ju, k, x),
                AbacusOp::D(k) if src.j >= 0 => bk.d(iu, ju, k, x),
                AbacusOp::D(_) => cols[iu].quotient[x],
                AbacusOp::S(k) => bk.s(iu, ju, k, x),
                AbacusOp::Sub => ss[&(iu, ju)][x],
                AbacusOp::F => top_face(iu, ju + 1, ss[&(iu, ju)][x]),
            };
        }
        if j < 0 {
            let iu = i as usize;
            let rep = cols[iu].reps[x];
            return match g.op {
                AbacusOp::E(k) => cols[iu - 1].quotient[bk.e(iu, 0, k, rep)],
                AbacusOp::T(k) => cols[iu + 1].quotient[bk.t(iu, 0, k, rep)],
                AbacusOp::Sub => column_split(iu, x),
                AbacusOp::F => top_face(iu, 0, column_split(iu, x)),
                _ => unreachable!("no horizontal generators into the augmentation column"),
            };
        }
        let ju = j as usize;
        let rep = rows[ju].reps[x];
        match g.op {
            AbacusOp::D(k) => rows[ju - 1].quotient[bk.d(0, ju, k, rep)],
            AbacusOp::S(k) => rows[ju + 1].quotient[bk.s(0, ju, k, rep)],
            _ => unreachable!("only horizontal generators into the augmentation row"),
        }
    };
    let mut levels = BTreeMap::new();
    for o in shape.objects() {
        let ids: Vec<String> = if o.i >= 0 && o.j >= 0 {
            bk.level(&(o.i as usize, o.j as usize)).to_vec()
        } else if o.j < 0 && o.i == 0 {
            c_ids.to_vec()
        } else if o.j < 0 {
            let iu = o.i as usize;
            cols[iu]
                .reps
                .iter()
                .map(|&r| bk.id(&(iu, 0), r).to_string())
                .collect()
        } else {
            let ju = o.j as usize;
            rows[ju]
                .reps
                .iter()
                .map(|&r| bk.id(&(0, ju), r).to_string())
                .collect()
        };
        debug_assert_eq!(ids.len(), size(&o));
        levels.insert(o, ids);
    }
    let actions = shape
        .generators()
        .into_iter()
        .map(|g| {
            let table = (0..size(&g.at)).map(|x| act(&g, x)).collect();
            (g, table)
        })
        .collect();
    let b = Presheaf::new(shape, levels, actions)?;
    let v = b.validate();
    if !v.passed() {
        let why = v
            .witnesses
            .first()
            .map(|w| w.instance.clone())
            .unwrap_or_default();
        return Err(Error::Malformed(format!(
            "the extension violates a relation: {why}"
        )));
    }
    Ok(b)
}

impl BiSSet {
    /// `d_0` or `d_1` (with `second`) out of `B_{i,j}`.
    fn face_pair(&self, i: usize, j: usize, second: bool) -> &[usize] {
        &self.actions[&BiGen::d(i, j, usize::from(second))]
    }
    /// `e_0` or `e_1` out of `B_{1,j}`.
    fn e_pair(&self, j: usize, second: bool) -> &[usize] {
        &self.actions[&BiGen::e(1, j, usize::from(second))]
    }
}

/// The presheaf on 𝒟 restricting to `A` along `j`, for `A` satisfying the
/// pointing axioms. Truncation drops by one.
pub fn extend_sigma_to_d(a: &SigmaSet) -> Result<DSet, Error> {
    let axioms = boors_axioms(a);
    if !axioms.passed() {
        let why = axioms
            .witnesses
            .first()
            .map(|w| w.instance.clone())
            .unwrap_or_else(|| axioms.notes.join("; "));
        return Err(Error::Precondition(format!(
            "the pointing axioms fail: {why}"
        )));
    }
    extend(a, false)
}

/// The presheaf on 𝒟 without augmentation row restricting to `A`, for `A`
/// upper stable with Segal rows and horizontal pointing.
pub fn extend_half(a: &SigmaSet) -> Result<DSet, Error> {
    let axioms = half_axioms(a);
    if !axioms.passed() {
        let why = axioms
            .witnesses
            .first()
            .map(|w| w.instance.clone())
            .unwrap_or_else(|| axioms.notes.join("; "));
        return Err(Error::Precondition(format!("the half axioms fail: {why}")));
    }
    extend(a, true)
}

/// Extra top sections `t_⊐ : A_{i,j} → A_{i+1,j}` from the vertical pointing,
/// propagated to the right by lower stability, keyed by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopSections {
    pub tables: BTreeMap<(usize, usize), Vec<usize>>,
}

pub fn top_sections(a: &SigmaSet) -> Result<TopSections, Error> {
    let bk = sigma_bulk(a);
    let (_, pt) = sigma_pointing(a);
    let t = bk.shape.trunc;
    let c0 = column(&bk, 0);
    let mut tables = BTreeMap::new();
    for i in 0..t {
        let last = c0.monotone_table(&MonotoneMap::new(vec![i + 1], i + 2)?);
        let mut found: Vec<Option<usize>> = vec![None; bk.size(&(i, 0))];
        for z in 0..bk.size(&(i + 1, 0)) {
            for &p in pt {
                if p == last[z] {
                    let x = bk.e(i + 1, 0, i + 1, z);
                    if found[x].replace(z).is_some() {
                        return Err(Error::Precondition(format!(
                            "{} has two top sections",
                            bk.id(&(i, 0), x)
                        )));
                    }
                }
            }
        }
        let table = found
            .into_iter()
            .enumerate()
            .map(|(x, z)| {
                z.ok_or_else(|| {
                    Error::Precondition(format!("{} has no top section", bk.id(&(i, 0), x)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        tables.insert((i, 0), table);
    }
    for j in 1..t {
        for i in 0..(t - j) {
            let mut index = BTreeMap::new();
            for z in 0..bk.size(&(i + 1, j)) {
                index.insert((bk.e(i + 1, j, i + 1, z), bk.d(i + 1, j, j, z)), z);
            }
            let left: &Vec<usize> = &tables[&(i, j - 1)];
            let table = (0..bk.size(&(i, j)))
                .map(|x| {
                    index
                        .get(&(x, left[bk.d(i, j, j, x)]))
                        .copied()
                        .ok_or_else(|| {
                            Error::Precondition(format!(
                                "lower stability fails over {}",
                                bk.id(&(i, j), x)
                            ))
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            tables.insert((i, j), table);
        }
    }
    Ok(TopSections { tables })
}

fn invert(table: &[usize], size: usize) -> Option<Vec<usize>> {
    if !is_bijection(table, size) {
        return None;
    }
    let mut inv = vec![0; size];
    for (x, &y) in table.iter().enumerate() {
        inv[y] = x;
    }
    Some(inv)
}

/// `t_⊤ ∘ ssub = t_⊐ ∘ ssub` out of every `B_{i,j}`, `j >= -1`. Without
/// `top`, the extra top sections are `f^{-1} ∘ s_0`.
pub fn ts_compat(b: &DSet, top: Option<&TopSections>) -> CheckReport {
    let mut report = CheckReport::new("ts compatibility");
    if !b.shape.abacus {
        return CheckReport::precondition(
            "ts compatibility",
            "the shape has no extra bottom sections",
        );
    }
    for o in b.shape.objects() {
        let DObj { i, j } = o;
        if i < 0 {
            continue;
        }
        let family = if j < 0 {
            "augmentation column".to_string()
        } else {
            format!("column {j}")
        };
        let up = obj(i + 1, j + 1);
        if !b.shape.contains(&up) {
            continue;
        }
        let tsplit: Vec<usize> = match top {
            Some(ts) => match ts.tables.get(&(i as usize, (j + 1) as usize)) {
                Some(t) => t.clone(),
                None => {
                    report.skip(&family);
                    continue;
                }
            },
            None => {
                let (Some(s0), Some(f)) = (
                    b.actions.get(&gen(AbacusOp::S(0), i, j + 1)),
                    b.actions.get(&gen(AbacusOp::F, i + 1, j + 1)),
                ) else {
                    report.skip(&family);
                    continue;
                };
                match invert(f, b.size(&obj(i, j + 2))) {
                    Some(inv) => s0.iter().map(|&y| inv[y]).collect(),
                    None => {
                        report.fail(
                            &family,
                            Witness::new(format!("f at {up} is not invertible"), Vec::new()),
                        );
                        continue;
                    }
                }
            }
        };
        let sub = &b.actions[&gen(AbacusOp::Sub, i, j)];
        let tt = &b.actions[&gen(AbacusOp::T(i as usize), i, j + 1)];
        for x in 0..b.size(&o) {
            let s = sub[x];
            let (l, r) = (tt[s], tsplit[s]);
            report.record(&family, l == r, || {
                Witness::new(
                    format!("out of {o}"),
                    vec![
                        b.id(&o, x).to_string(),
                        b.id(&up, l).into(),
                        b.id(&up, r).into(),
                    ],
                )
            });
        }
    }
    report
}

/// With `g = d_⊥ ∘ t_⊐`, both `g ∘ f` and `f ∘ g` are identities, for the
/// abacus maps `f : B_{i+1,j} → B_{i,j+1}` with `i >= 0`, `j >= -1`.
pub fn dual_abacus_inverse(b: &DSet, top: &TopSections) -> CheckReport {
    let mut report = CheckReport::new("dual abacus maps");
    for o in b.shape.objects() {
        let DObj { i, j } = o;
        if i < 1 {
            continue;
        }
        let (Some(f), Some(d0), Some(ts)) = (
            b.actions.get(&gen(AbacusOp::F, i, j)),
            b.actions.get(&gen(AbacusOp::D(0), i, j + 1)),
            top.tables.get(&((i - 1) as usize, (j + 1) as usize)),
        ) else {
            continue;
        };
        let family = format!("f at {o}");
        let g = |y: usize| d0[ts[y]];
        for x in 0..b.size(&o) {
            report.record(&family, g(f[x]) == x, || {
                Witness::new("g f", vec![b.id(&o, x).to_string()])
            });
        }
        let other = obj(i - 1, j + 1);
        for y in 0..b.size(&other) {
            report.record(&family, f[g(y)] == y, || {
                Witness::new("f g", vec![b.id(&other, y).to_string()])
            });
        }
    }
    report
}

/// Extends a bijection of bulks to a map of presheaves on 𝒟, using the
/// augmentation maps (and the abacus where those leave the truncation).
pub fn extend_bulk_iso(
    source: &DSet,
    target: &DSet,
    on_bulk: impl Fn(&DObj, usize) -> Option<usize>,
) -> Result<NatMap<Abacus>, Error> {
    if source.shape != target.shape {
        return Err(Error::Malformed("different shapes".into()));
    }
    let shape = source.shape;
    let mut components: BTreeMap<DObj, Vec<usize>> = BTreeMap::new();
    for o in shape.objects().into_iter().filter(|o| o.i >= 0 && o.j >= 0) {
        let table = (0..source.size(&o))
            .map(|x| on_bulk(&o, x))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Malformed(format!("no image for an element of {o}")))?;
        components.insert(o, table);
    }
    let missing = |o: DObj| Error::Malformed(format!("cannot reach {o} from the bulk"));
    // through a generator g out of a computed level: image(g x) = g(image x)
    let via =
        |o: DObj, g: AbacusGen, components: &mut BTreeMap<DObj, Vec<usize>>| -> Result<(), Error> {
            let from = g.at;
            let table = &source.actions[&g];
            let mut out = vec![None; source.size(&o)];
            for (x, &y) in table.iter().enumerate() {
                out[y] = Some(target.act(&g, components[&from][x]));
            }
            let out = out
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| missing(o))?;
            components.insert(o, out);
            Ok(())
        };
    for o in shape.objects().into_iter().filter(|o| o.j < 0) {
        let down = gen(AbacusOp::D(0), o.i, 0);
        if shape.contains(&down.at) {
            via(o, down, &mut components)?;
        } else {
            let f = gen(AbacusOp::F, o.i, -1);
            let inv =
                invert(&target.actions[&f], target.size(&f.source())).ok_or_else(|| missing(o))?;
            let table = (0..source.size(&o))
                .map(|x| inv[components[&f.source()][source.act(&f, x)]])
                .collect();
            components.insert(o, table);
        }
    }
    for o in shape.objects().into_iter().filter(|o| o.i < 0) {
        let up = gen(AbacusOp::E(0), 0, o.j);
        if shape.contains(&up.at) {
            via(o, up, &mut components)?;
        } else {
            let f = gen(AbacusOp::F, 0, o.j - 1);
            let inv = invert(&source.actions[&f], source.size(&o)).ok_or_else(|| missing(o))?;
            let table = (0..source.size(&o))
                .map(|y| target.act(&f, components[&f.at][inv[y]]))
                .collect();
            components.insert(o, table);
        }
    }
    NatMap::new(source.clone(), target.clone(), components)
}

/// The comparison `extend_sigma_to_d(p^* X) → q_*(id_X)`, the identity on
/// simplices of `X` in the bulk.
pub fn boors_comparison(x: &SSet, e: &DSet) -> Result<NatMap<Abacus>, Error> {
    let q = q_lower_star(&NatMap::identity(x))?.truncate(e.shape.trunc)?;
    let mut indexes = BTreeMap::new();
    for o in q.shape.objects() {
        indexes.insert(o, index_of(q.level(&o)));
    }
    extend_bulk_iso(e, &q, |o, s| {
        let n = o.degree() as usize;
        let i = o.i as usize;
        let xi = x.monotone_table(&head(i, n))[s];
        let id = format!("({},{})", x.id(&i, xi), x.id(&n, s));
        indexes[o].get(id.as_str()).copied()
    })
}

/// The restriction of a presheaf on 𝒟 to the objects with `i >= 0`.
pub fn upper_rows_part(b: &DSet) -> Result<DSet, Error> {
    restrict(
        &crate::abacus::Inclusion {
            dom: Abacus::upper_rows(b.shape.trunc),
            cod: b.shape,
        },
        b,
    )
}

/// `extend_half(A)` compared with a presheaf `B` on 𝒟 without augmentation
/// row restricting to `A`: the identity on the bulk, and on the augmentation
/// column the class of a representative goes to its `d_0` in `B`. `B` needs
/// truncation above that of the extension.
pub fn half_comparison(e: &DSet, b: &DSet) -> Result<NatMap<Abacus>, Error> {
    if b.shape.trunc <= e.shape.trunc {
        return Err(Error::Truncation(
            "the comparison needs one more degree in the target".into(),
        ));
    }
    let mut components = BTreeMap::new();
    for o in e.shape.objects() {
        let table = if o.j >= 0 || o.i == 0 {
            (0..e.size(&o))
                .map(|x| b.find(&o, e.id(&o, x)))
                .collect::<Option<Vec<_>>>()
        } else {
            let at = obj(o.i, 0);
            (0..e.size(&o))
                .map(|c| {
                    b.find(&at, e.id(&o, c))
                        .map(|y| b.act(&gen(AbacusOp::D(0), o.i, 0), y))
                })
                .collect()
        };
        components.insert(
            o,
            table
                .ok_or_else(|| Error::Malformed(format!("an element of {o} has no counterpart")))?,
        );
    }
    NatMap::new(e.clone(), b.truncate(e.shape.trunc)?, components)
}
