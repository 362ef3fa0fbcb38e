//! The JSON file format. A presheaf is
//! `{"shape", "trunc", "levels": {object: [ids]}, "actions": {generator: {x: y}}}`
//! where the action of a generator `a -> b` maps ids at `b` to ids at `a`.
//! A simplicial map is `{"shape": "smap", "source", "target", "components":
//! {level: {x: y}}}`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use segal_abacus::abacus::Abacus;
use segal_abacus::index::{BiSimplex, Cocone, IndexCategory, Simplex, Split};
use segal_abacus::presheaf::{
    BiSSet, DSet, Keyed, NatMap, PointedSSet, Presheaf, SMap, SSet, SigmaSet, SplitSSet,
};
use segal_abacus::CheckReport;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresheafFile {
    pub shape: String,
    pub trunc: usize,
    #[serde(default)]
    pub levels: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapFile {
    pub shape: String,
    pub source: PresheafFile,
    pub target: PresheafFile,
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

/// Anything the tool reads or writes.
#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    SSet(SSet),
    BiSSet(BiSSet),
    DSet(DSet),
    Sigma(SigmaSet),
    Pointed(PointedSSet),
    Split(SplitSSet),
    Map(SMap),
}

pub const SHAPES: [&str; 9] = [
    "sset",
    "bisset",
    "dset",
    "dslice",
    "dset-half",
    "sigmaset",
    "pointed",
    "bsplit",
    "augbsplit",
];

fn shape_of(name: &str) -> Option<&'static str> {
    SHAPES.into_iter().find(|k| *k == name)
}

fn to_file<C: IndexCategory>(p: &Presheaf<C>) -> PresheafFile {
    let Keyed { levels, actions } = p.to_keyed();
    PresheafFile {
        shape: p.shape.name().into(),
        trunc: p.shape.trunc(),
        levels,
        actions,
    }
}

fn from_file<C: IndexCategory>(shape: C, f: &PresheafFile) -> Result<Presheaf<C>> {
    let keyed = Keyed {
        levels: f.levels.clone(),
        actions: f.actions.clone(),
    };
    let p = Presheaf::from_keyed(shape, &keyed)?;
    let missing: Vec<String> = p
        .shape
        .generators()
        .iter()
        .filter(|g| !p.actions.contains_key(*g))
        .map(|g| p.shape.gen_key(g))
        .collect();
    if !missing.is_empty() {
        bail!("missing actions: {}", missing.join(", "));
    }
    Ok(p)
}

fn presheaf_from(f: &PresheafFile) -> Result<Object> {
    let t = f.trunc;
    Ok(
        match shape_of(&f.shape).ok_or_else(|| anyhow!("unknown shape {:?}", f.shape))? {
            "sset" => Object::SSet(from_file(Simplex { trunc: t }, f)?),
            "bisset" => Object::BiSSet(from_file(BiSimplex { trunc: t }, f)?),
            "dset" => Object::DSet(from_file(Abacus::full(t), f)?),
            "dslice" => Object::DSet(from_file(Abacus::slice(t), f)?),
            "dset-half" => Object::DSet(from_file(Abacus::upper_rows(t), f)?),
            "sigmaset" => Object::Sigma(from_file(Cocone::sigma(t), f)?),
            "pointed" => Object::Pointed(from_file(Cocone::pointed(t), f)?),
            "bsplit" => Object::Split(from_file(
                Split {
                    trunc: t,
                    augmented: false,
                },
                f,
            )?),
            "augbsplit" => Object::Split(from_file(
                Split {
                    trunc: t,
                    augmented: true,
                },
                f,
            )?),
            _ => unreachable!("shape_of only returns known shapes"),
        },
    )
}

fn sset_from(f: &PresheafFile) -> Result<SSet> {
    match presheaf_from(f)? {
        Object::SSet(x) => Ok(x),
        _ => bail!("expected a simplicial set, found shape {}", f.shape),
    }
}

pub fn map_to_file(m: &SMap) -> MapFile {
    let components = m
        .components
        .iter()
        .map(|(n, t)| {
            let table = t
                .iter()
                .enumerate()
                .map(|(x, &y)| (m.source.id(n, x).to_string(), m.target.id(n, y).to_string()))
                .collect();
            (n.to_string(), table)
        })
        .collect();
    MapFile {
        shape: "smap".into(),
        source: to_file(&m.source),
        target: to_file(&m.target),
        components,
    }
}

pub fn map_from_file(f: &MapFile) -> Result<SMap> {
    let source = sset_from(&f.source).context("source")?;
    let target = sset_from(&f.target).context("target")?;
    let mut components = BTreeMap::new();
    for n in source.shape.objects() {
        let table = f
            .components
            .get(&n.to_string())
            .ok_or_else(|| anyhow!("no component at level {n}"))?;
        let index: BTreeMap<&str, usize> = target
            .level(&n)
            .iter()
            .enumerate()
            .map(|(k, s)| (s.as_str(), k))
            .collect();
        let comp = source
            .level(&n)
            .iter()
            .map(|x| {
                let y = table
                    .get(x)
                    .ok_or_else(|| anyhow!("component {n} undefined on {x}"))?;
                index
                    .get(y.as_str())
                    .copied()
                    .ok_or_else(|| anyhow!("{y} is not a {n}-simplex of the target"))
            })
            .collect::<Result<Vec<_>>>()?;
        components.insert(n, comp);
    }
    Ok(NatMap::new(source, target, components)?)
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::SSet(x) => x.shape.name(),
            Object::BiSSet(x) => x.shape.name(),
            Object::DSet(x) => x.shape.name(),
            Object::Sigma(x) => x.shape.name(),
            Object::Pointed(x) => x.shape.name(),
            Object::Split(x) => x.shape.name(),
            Object::Map(_) => "smap",
        }
    }

    pub fn to_json(&self) -> Value {
        let v = match self {
            Object::SSet(x) => serde_json::to_value(to_file(x)),
            Object::BiSSet(x) => serde_json::to_value(to_file(x)),
            Object::DSet(x) => serde_json::to_value(to_file(x)),
            Object::Sigma(x) => serde_json::to_value(to_file(x)),
            Object::Pointed(x) => serde_json::to_value(to_file(x)),
            Object::Split(x) => serde_json::to_value(to_file(x)),
            Object::Map(m) => serde_json::to_value(map_to_file(m)),
        };
        v.expect("plain maps of strings serialize")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let shape = v
            .get("shape")
            .and_then(Value::as_str)
            .ok_or_else(|| anyhow!("missing \"shape\""))?;
        if shape == "smap" {
            let f: MapFile = serde_json::from_value(v.clone())?;
            return Ok(Object::Map(map_from_file(&f)?));
        }
        let f: PresheafFile = serde_json::from_value(v.clone())?;
        presheaf_from(&f)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Object::from_json(&v).with_context(|| format!("loading {}", path.display()))
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }

    /// The relation check of the underlying presheaf (both presheaves and
    /// naturality for a map).
    pub fn validate(&self) -> CheckReport {
        match self {
            Object::SSet(x) => x.validate(),
            Object::BiSSet(x) => x.validate(),
            Object::DSet(x) => x.validate(),
            Object::Sigma(x) => x.validate(),
            Object::Pointed(x) => x.validate(),
            Object::Split(x) => x.validate(),
            Object::Map(m) => {
                let mut r = CheckReport::new("validate");
                let mut s = m.source.validate();
                s.name = "source".into();
                r.absorb(s);
                let mut t = m.target.validate();
                t.name = "target".into();
                r.absorb(t);
                let mut n = m.validate();
                n.name = "naturality".into();
                r.absorb(n);
                r
            }
        }
    }

    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        Ok(match self {
            Object::SSet(x) => Object::SSet(x.truncate(trunc)?),
            Object::BiSSet(x) => Object::BiSSet(x.truncate(trunc)?),
            Object::DSet(x) => Object::DSet(x.truncate(trunc)?),
            Object::Sigma(x) => Object::Sigma(x.truncate(trunc)?),
            Object::Pointed(x) => Object::Pointed(x.truncate(trunc)?),
            Object::Split(x) => Object::Split(x.truncate(trunc)?),
            Object::Map(m) => Object::Map(segal_abacus::config::truncate_map(m, trunc)?),
        })
    }
}
