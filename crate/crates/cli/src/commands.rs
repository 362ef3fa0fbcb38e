//! The subcommands, as functions from inputs to an output document and an
//! exit code.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use segal_abacus::config::{
    boors_axioms, build_m, build_m_of_map, condition_star, dictionary, extend_half,
    extend_sigma_to_d, half_axioms, has_invertible_abacus, horizontal_pointing,
    is_bicomodule_config, is_rel_upper_2segal, j_upper_star, p_star_tot, q_lower_star,
    q_upper_star, ts_compat, unit_iso, vertical_pointing,
};
use segal_abacus::decalage::{
    counit, dec, is_local_initial, is_local_terminal, is_rigid, sd, validate_coalgebra, Side,
};
use segal_abacus::fibration::{
    is_2segal, is_culf, is_double_2segal, is_double_segal, is_left_fibration, is_right_fibration,
    is_segal, stability, tot,
};
use segal_abacus::fixtures::{
    boolean_lattice, identity_map, skeleton_of_simplex, to_point, FiniteCategory,
};
use segal_abacus::presheaf::SSet;
use segal_abacus::suites::{self, Corpus, Suite};
use segal_abacus::CheckReport;

use crate::format::Object;
use crate::report::{combine, exit_code, report_json};

fn named(mut r: CheckReport, name: &str) -> CheckReport {
    r.name = name.into();
    r
}

pub const CHECKS: &[(&str, &str)] = &[
    ("validate", "any"),
    ("segal", "sset"),
    ("2segal", "sset"),
    ("upper-2segal", "sset"),
    ("lower-2segal", "sset"),
    ("stability", "bisset"),
    ("upper-stability", "bisset"),
    ("lower-stability", "bisset"),
    ("double-segal", "bisset"),
    ("double-2segal", "bisset"),
    ("star", "dset"),
    ("unit", "dset"),
    ("bicomodule", "dset"),
    ("invertible-abacus", "dset"),
    ("ts-compat", "dset"),
    ("boors", "sigmaset"),
    ("half", "sigmaset"),
    ("horizontal-pointing", "sigmaset"),
    ("vertical-pointing", "sigmaset"),
    ("local-initial", "pointed"),
    ("local-terminal", "pointed"),
    ("coalgebra", "bsplit"),
    ("rigid", "bsplit"),
    ("culf", "smap"),
    ("left-fibration", "smap"),
    ("right-fibration", "smap"),
    ("rel-upper-2segal", "smap"),
    ("dictionary", "smap"),
    ("total-space", "smap"),
];

/// Runs one checker on a file. Inputs that do not validate are rejected.
pub fn check(what: &str, obj: &Object) -> Result<CheckReport> {
    let v = obj.validate();
    if what == "validate" {
        return Ok(named(v, "validate"));
    }
    if !v.passed() {
        bail!(
            "the input does not validate: {}",
            v.witnesses
                .first()
                .map(|w| w.instance.as_str())
                .unwrap_or("?")
        );
    }
    let r = match (what, obj) {
        ("segal", Object::SSet(x)) => is_segal(x),
        ("2segal", Object::SSet(x)) => is_2segal(x, Side::Both),
        ("upper-2segal", Object::SSet(x)) => is_2segal(x, Side::Upper),
        ("lower-2segal", Object::SSet(x)) => is_2segal(x, Side::Lower),
        ("stability", Object::BiSSet(b)) => stability(b, Side::Both),
        ("upper-stability", Object::BiSSet(b)) => stability(b, Side::Upper),
        ("lower-stability", Object::BiSSet(b)) => stability(b, Side::Lower),
        ("double-segal", Object::BiSSet(b)) => is_double_segal(b),
        ("double-2segal", Object::BiSSet(b)) => is_double_2segal(b),
        ("star", Object::DSet(b)) => condition_star(b),
        ("unit", Object::DSet(b)) => unit_iso(b),
        ("bicomodule", Object::DSet(b)) => is_bicomodule_config(b),
        ("invertible-abacus", Object::DSet(b)) => has_invertible_abacus(b),
        ("ts-compat", Object::DSet(b)) => ts_compat(b, None),
        ("boors", Object::Sigma(a)) => boors_axioms(a),
        ("half", Object::Sigma(a)) => half_axioms(a),
        ("horizontal-pointing", Object::Sigma(a)) => horizontal_pointing(a),
        ("vertical-pointing", Object::Sigma(a)) => vertical_pointing(a),
        ("local-initial", Object::Pointed(p)) => is_local_initial(p),
        ("local-terminal", Object::Pointed(p)) => is_local_terminal(p),
        ("coalgebra", Object::Split(a)) => validate_coalgebra(a),
        ("rigid", Object::Split(a)) => is_rigid(a),
        ("culf", Object::Map(f)) => is_culf(f),
        ("left-fibration", Object::Map(f)) => is_left_fibration(f),
        ("right-fibration", Object::Map(f)) => is_right_fibration(f),
        ("rel-upper-2segal", Object::Map(f)) => is_rel_upper_2segal(f),
        ("dictionary", Object::Map(f)) => dictionary(f),
        ("total-space", Object::Map(f)) => segal_abacus::config::m_2segal_dictionary(f),
        _ => match CHECKS.iter().find(|(n, _)| *n == what) {
            Some((_, shape)) => bail!("{what} needs a {shape} input, got {}", obj.kind()),
            None => bail!("unknown check {what}"),
        },
    };
    Ok(named(r, what))
}

pub const CONSTRUCTIONS: &[(&str, &str, &str)] = &[
    ("qstar", "smap", "dset"),
    ("qupper", "dset", "smap"),
    ("tot", "sset", "bisset"),
    ("boors-tot", "sset", "sigmaset"),
    ("jstar", "dset", "sigmaset"),
    ("extend", "sigmaset", "dset"),
    ("extend-half", "sigmaset", "dset-half"),
    ("M", "smap or dset", "smap"),
    ("dec-top", "sset", "sset"),
    ("dec-bottom", "sset", "sset"),
    ("counit-top", "sset", "smap"),
    ("counit-bottom", "sset", "smap"),
    ("sd", "sset", "sset"),
    ("identity", "sset", "smap"),
    ("to-point", "sset", "smap"),
];

pub fn construct(what: &str, obj: &Object) -> Result<Object> {
    let v = obj.validate();
    if !v.passed() {
        bail!(
            "the input does not validate: {}",
            v.witnesses
                .first()
                .map(|w| w.instance.as_str())
                .unwrap_or("?")
        );
    }
    let need_trunc = |x: &SSet, t: usize| -> Result<()> {
        if x.shape.trunc < t {
            bail!("{what} needs truncation at least {t}");
        }
        Ok(())
    };
    Ok(match (what, obj) {
        ("qstar", Object::Map(f)) => Object::DSet(q_lower_star(f)?),
        ("qupper", Object::DSet(b)) => Object::Map(q_upper_star(b)?),
        ("tot", Object::SSet(x)) => {
            need_trunc(x, 1)?;
            Object::BiSSet(tot(x))
        }
        ("boors-tot", Object::SSet(x)) => Object::Sigma(p_star_tot(x)?),
        ("jstar", Object::DSet(b)) => Object::Sigma(j_upper_star(b)?),
        ("extend", Object::Sigma(a)) => Object::DSet(extend_sigma_to_d(a)?),
        ("extend-half", Object::Sigma(a)) => Object::DSet(extend_half(a)?),
        ("M", Object::Map(f)) => Object::Map(build_m_of_map(f)?.1),
        ("M", Object::DSet(b)) => Object::Map(build_m(b)?.1),
        ("dec-top", Object::SSet(x)) => {
            need_trunc(x, 1)?;
            Object::SSet(dec(x, Side::Upper))
        }
        ("dec-bottom", Object::SSet(x)) => {
            need_trunc(x, 1)?;
            Object::SSet(dec(x, Side::Lower))
        }
        ("counit-top", Object::SSet(x)) => {
            need_trunc(x, 1)?;
            Object::Map(counit(x, Side::Upper))
        }
        ("counit-bottom", Object::SSet(x)) => {
            need_trunc(x, 1)?;
            Object::Map(counit(x, Side::Lower))
        }
        ("sd", Object::SSet(x)) => {
            need_trunc(x, 1)?;
            Object::SSet(sd(x))
        }
        ("identity", Object::SSet(x)) => Object::Map(identity_map(x)),
        ("to-point", Object::SSet(x)) => Object::Map(to_point(x)),
        _ => match CONSTRUCTIONS.iter().find(|(n, _, _)| *n == what) {
            Some((_, from, _)) => bail!("{what} needs a {from} input, got {}", obj.kind()),
            None => bail!("unknown construction {what}"),
        },
    })
}

/// Per-theorem round trips on one input, with the depth each one verified.
pub fn roundtrip(what: &str, obj: &Object) -> Result<(Value, i32)> {
    let v = obj.validate();
    if !v.passed() {
        bail!("the input does not validate");
    }
    let mut entries: Vec<(String, CheckReport, Option<usize>)> = Vec::new();
    match (what, obj) {
        ("boors", Object::SSet(x)) => {
            let depth = extend_sigma_to_d(&p_star_tot(x)?)
                .ok()
                .map(|e| e.shape.trunc);
            entries.push(("round trip".into(), suites::boors_round_trip(x), depth));
            entries.push((
                "pointing consequences".into(),
                suites::pointing_consequences(x),
                depth,
            ));
        }
        ("star", Object::Map(f)) => {
            let b = q_lower_star(f)?;
            let t = b.shape.trunc;
            entries.push((
                "star iff unit".into(),
                segal_abacus::config::star_biconditional(&b),
                Some(t),
            ));
            let mut back = CheckReport::new("q^* q_*");
            let same = q_upper_star(&b).map(|g| g == *f).unwrap_or(false);
            back.record("recovers the map", same, || {
                segal_abacus::Witness::new("q^* q_* F differs from F", vec![])
            });
            entries.push(("q^* q_* recovers F".into(), back, Some(t)));
            entries.push((
                "invertibility".into(),
                segal_abacus::config::invertibility(f),
                Some(t),
            ));
        }
        ("M", Object::Map(f)) => {
            let t = f.source.shape.trunc;
            let mut r = suites::run(
                Suite::TotalSpace,
                &Corpus {
                    spaces: vec![],
                    maps: vec![("input".into(), f.clone())],
                },
                t,
            );
            r.name = "total space".into();
            entries.push(("total space".into(), r, Some(t)));
        }
        ("boors", _) => bail!("boors needs an sset input, got {}", obj.kind()),
        ("star" | "M", _) => bail!("{what} needs an smap input, got {}", obj.kind()),
        _ => bail!("unknown round trip {what}"),
    }
    let code = combine(entries.iter().map(|(_, r, _)| exit_code(r)));
    let list: Vec<Value> = entries
        .iter()
        .map(|(name, r, depth)| {
            let mut v = report_json(r);
            v["statement"] = json!(name);
            v["verified_depth"] = json!(depth);
            v
        })
        .collect();
    Ok((json!({"roundtrip": what, "entries": list}), code))
}

/// Options of `run-suite`.
pub struct SuiteOptions {
    pub trunc: usize,
    pub bound: usize,
    pub jobs: Option<usize>,
    pub corpus_dir: Option<PathBuf>,
    pub max_size: usize,
    pub random: usize,
    pub seed: u64,
}

/// Reads every `.json` file of a directory, in name order.
pub fn load_corpus(dir: &Path, trunc: usize) -> Result<Corpus> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    let mut corpus = Corpus::default();
    for p in paths {
        let name = p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let obj = Object::read(&p)?;
        let v = obj.validate();
        if !v.passed() {
            bail!("{} does not validate", p.display());
        }
        let obj = if trunc < truncation_of(&obj) {
            obj.truncate(trunc)?
        } else {
            obj
        };
        match obj {
            Object::SSet(x) => corpus.spaces.push((name, x)),
            Object::Map(f) => corpus.maps.push((name, f)),
            other => bail!(
                "{}: corpus files are simplicial sets or maps, not {}",
                p.display(),
                other.kind()
            ),
        }
    }
    Ok(corpus)
}

fn truncation_of(obj: &Object) -> usize {
    match obj {
        Object::SSet(x) => x.shape.trunc,
        Object::Map(f) => f.source.shape.trunc,
        _ => usize::MAX,
    }
}

/// Random posets on at most `max_size` elements: each pair `a < b` is
/// related with probability one half, then closed transitively.
pub fn random_corpus(count: usize, seed: u64, trunc: usize, max_size: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Corpus::default();
    for k in 0..count {
        let n = rng.gen_range(1..=max_size.max(1));
        let relations: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let x = FiniteCategory::poset(n, &relations)
            .expect("relations a < b generate a poset")
            .nerve(trunc);
        corpus
            .maps
            .push((format!("id random{k}"), identity_map(&x)));
        corpus
            .maps
            .push((format!("random{k} to point"), to_point(&x)));
        corpus.spaces.push((format!("random{k}"), x));
    }
    corpus
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<(Value, CheckReport)> {
    let corpus = match &opts.corpus_dir {
        Some(dir) => load_corpus(dir, opts.trunc)?,
        None if opts.random > 0 => random_corpus(opts.random, opts.seed, opts.trunc, opts.max_size),
        None => {
            let mut c = Corpus::standard(opts.trunc);
            c.spaces.retain(|(_, x)| x.size(&0) <= opts.max_size);
            c.maps.retain(|(_, f)| {
                f.source.size(&0) <= opts.max_size && f.target.size(&0) <= opts.max_size
            });
            c
        }
    };
    let trunc = if suite == Suite::Presentation {
        opts.bound
    } else {
        opts.trunc
    };
    let cases = suites::cases(suite, &corpus, trunc);
    let run = || cases.par_iter().map(|c| c.run()).collect::<Vec<_>>();
    let reports = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()?
            .install(run),
        None => run(),
    };
    let case_list: Vec<Value> = reports
        .iter()
        .map(|r| json!({"case": r.name, "verdict": crate::report::verdict_name(r)}))
        .collect();
    let merged = suites::merge(suite, reports);
    let mut v = report_json(&merged);
    v["suite"] = json!(suite.name());
    v["statement"] = json!(suite.statement());
    v["verified_depth"] = json!(trunc);
    v["cases"] = json!(case_list);
    Ok((v, merged))
}

/// A monoid or partial monoid for `gen-example`.
#[derive(Debug, Deserialize)]
pub struct MonoidTable {
    pub elements: Vec<String>,
    pub unit: String,
    /// `mul[a][b]` is the product `a·b` (applied `b` first), `null` if undefined.
    pub mul: Vec<Vec<Option<String>>>,
}

/// A finite category for `gen-example`.
#[derive(Debug, Deserialize)]
pub struct CategoryTable {
    pub objects: Vec<String>,
    /// `[name, source, target]`.
    pub arrows: Vec<(String, String, String)>,
    /// One identity arrow per object, in object order.
    pub ids: Vec<String>,
    /// `[g, f, g∘f]`.
    pub compose: Vec<(String, String, String)>,
}

fn position(names: &[String], s: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == s)
        .ok_or_else(|| anyhow!("unknown {what} {s}"))
}

pub fn monoid_from_table(t: &MonoidTable) -> Result<FiniteCategory> {
    let names: Vec<&str> = t.elements.iter().map(String::as_str).collect();
    let unit = position(&t.elements, &t.unit, "element")?;
    if t.mul.len() != names.len() || t.mul.iter().any(|r| r.len() != names.len()) {
        bail!("the multiplication table must be {0}x{0}", names.len());
    }
    let mul = t
        .mul
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    c.as_deref()
                        .map(|s| position(&t.elements, s, "element"))
                        .transpose()
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<Option<usize>>>>>()?;
    Ok(FiniteCategory::monoid(&names, unit, &mul)?)
}

pub fn category_from_table(t: &CategoryTable) -> Result<FiniteCategory> {
    let names: Vec<String> = t.arrows.iter().map(|a| a.0.clone()).collect();
    let arrows = t
        .arrows
        .iter()
        .map(|(n, s, d)| {
            Ok((
                n.clone(),
                position(&t.objects, s, "object")?,
                position(&t.objects, d, "object")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let ids = t
        .ids
        .iter()
        .map(|i| position(&names, i, "arrow"))
        .collect::<Result<Vec<_>>>()?;
    let mut comp = vec![vec![None; names.len()]; names.len()];
    for (g, f, h) in &t.compose {
        comp[position(&names, g, "arrow")?][position(&names, f, "arrow")?] =
            Some(position(&names, h, "arrow")?);
    }
    Ok(FiniteCategory::new(t.objects.clone(), arrows, ids, comp)?)
}

/// Parameters of `gen-example`.
#[derive(Default)]
pub struct ExampleParams {
    pub size: Option<usize>,
    pub relations: Option<String>,
    pub table: Option<PathBuf>,
    pub dim: Option<usize>,
    pub skeleton: Option<usize>,
}

pub const EXAMPLES: &[&str] = &[
    "nerve-poset",
    "nerve-category",
    "nerve-monoid",
    "partial-monoid",
    "simplex",
    "constant",
    "boolean-lattice",
];

fn parse_relations(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once('<')
                .ok_or_else(|| anyhow!("relation {p:?} is not of the form a<b"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn read_table<T: for<'de> Deserialize<'de>>(p: &Option<PathBuf>) -> Result<Option<T>> {
    match p {
        None => Ok(None),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Some(
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?,
            ))
        }
    }
}

pub fn gen_example(kind: &str, p: &ExampleParams, trunc: usize) -> Result<Object> {
    let x = match kind {
        "nerve-poset" => {
            let n = p.size.unwrap_or(3);
            let relations = match &p.relations {
                Some(r) => parse_relations(r)?,
                None => (1..n).map(|k| (k - 1, k)).collect(),
            };
            FiniteCategory::poset(n, &relations)?.nerve(trunc)
        }
        "nerve-category" => {
            let t: CategoryTable =
                read_table(&p.table)?.ok_or_else(|| anyhow!("nerve-category needs --table"))?;
            let c = category_from_table(&t)?;
            if !c.is_total() {
                bail!("the composition table is not total");
            }
            c.nerve(trunc)
        }
        "nerve-monoid" => {
            let c = match read_table::<MonoidTable>(&p.table)? {
                Some(t) => monoid_from_table(&t)?,
                None => FiniteCategory::cyclic_group(p.size.unwrap_or(2)),
            };
            if !c.is_total() {
                bail!("the multiplication table is not total; use partial-monoid");
            }
            c.nerve(trunc)
        }
        "partial-monoid" => match read_table::<MonoidTable>(&p.table)? {
            Some(t) => monoid_from_table(&t)?.nerve(trunc),
            None => FiniteCategory::partial_monoid().nerve(trunc),
        },
        "simplex" => {
            let m = p.dim.unwrap_or(1);
            skeleton_of_simplex(m, p.skeleton.unwrap_or(m), trunc)
        }
        "constant" => {
            let ids: Vec<String> = (0..p.size.unwrap_or(1)).map(|k| format!("c{k}")).collect();
            SSet::constant(trunc, &ids)
        }
        "boolean-lattice" => boolean_lattice(p.dim.unwrap_or(2)).nerve(trunc),
        _ => bail!(
            "unknown example kind {kind}; expected one of {}",
            EXAMPLES.join(", ")
        ),
    };
    let obj = Object::SSet(x);
    if !obj.validate().passed() {
        bail!("the generated example does not validate");
    }
    Ok(obj)
}
