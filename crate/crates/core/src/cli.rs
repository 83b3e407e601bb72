//! The `vcat` command line: a JSON workspace of named categories,
//! bimodules, functors and chains, plus commands that check them.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check, 2 on a
//! usage, parse or reference error, 3 when an enumeration budget runs out.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::barcomp::{compose_bimodules_bounded, oracle_agreement_with, CoendOracle};
use crate::bimodule::{relation_bimodule, validate_bimodule, VBimodule};
use crate::doublecat::{build_composite_algebra, segal_check, Chain};
use crate::enriched::{change_of_base, preorder_category, validate_category, validate_functor, VCategory, VFunctor};
use crate::error::{Error, Result};
use crate::funcat::{completeness_check_fun, segal_check_fun, simplicial_identities_fun, FunSpace};
use crate::generate::{self, transitive_closure, Concrete, ConcreteChain, ConcreteModule};
use crate::indexcat::{
    active_slice, build_indexed_category, cofinality_probe, composite_cofinal_map, factorizations,
    fiber_formula_check, final_object_probe, interval_slice, sifted_probe_at, DEFAULT_MAX_RANK,
};
use crate::report::{Qualifier, Report};
use crate::vbackend::{Backend, Bool, BoolMor, FinSet, FinVect, Linearize, MonoidalFunctor};

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_BUDGET: usize = 1 << 20;
pub const BUDGET_ENV: &str = "VCAT_BUDGET";

/// Largest carrier accepted in a file; element labels are digit strings.
const MAX_CARRIER: usize = 10;

// ---------------------------------------------------------------- schema

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub format_version: u32,
    pub backend: BackendSpec,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, CategorySpec>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorSpec>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub chains: BTreeMap<String, ChainSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum BackendSpec {
    Bool,
    Finset,
    Finvect { p: u32 },
}

/// Over `bool` a category is a preorder generated by `le`; over `finset`
/// and `finvect` it is a category of functions between the `carriers`,
/// generated by `arrows` (linearized for `finvect`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub le: Vec<(String, String)>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub carriers: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub from: String,
    pub to: String,
    pub map: Vec<usize>,
}

/// Generated by `relation` over `bool`, by `elements` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub left: String,
    pub right: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relation: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<ArrowSpec>,
}

/// Hom maps send each element to the target element with the same label
/// unless `homs` says otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub source: String,
    pub target: String,
    #[serde(deserialize_with = "unique_keys")]
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub homs: Vec<HomSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub from: String,
    pub to: String,
    #[serde(deserialize_with = "unique_keys")]
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub categories: Vec<String>,
    pub bimodules: Vec<String>,
}

/// A map that rejects repeated keys instead of keeping the last one.
fn unique_keys<'de, D, V>(d: D) -> std::result::Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct Unique<V>(PhantomData<V>);
    impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
        type Value = BTreeMap<String, V>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map with distinct keys")
        }
        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some(k) = access.next_key::<String>()? {
                if out.contains_key(&k) {
                    return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                }
                let v = access.next_value()?;
                out.insert(k, v);
            }
            Ok(out)
        }
    }
    d.deserialize_map(Unique(PhantomData))
}

impl WorkspaceFile {
    /// Parses and checks the schema; references are checked by [`resolve`].
    pub fn parse(text: &str) -> Result<Self> {
        let ws: WorkspaceFile = serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let message = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m).to_string();
            Error::Parse {
                line: e.line(),
                column: e.column(),
                message,
            }
        })?;
        if ws.format_version != FORMAT_VERSION {
            return Err(Error::Unsupported(format!(
                "format_version {} (expected {FORMAT_VERSION})",
                ws.format_version
            )));
        }
        Ok(ws)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Reference(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Pretty JSON with keys in sorted order and a trailing newline.
    pub fn to_canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("workspace serializes");
        s.push('\n');
        s
    }
}

// ------------------------------------------------------------ resolution

/// A workspace with every reference resolved to backend values.
#[derive(Clone, Debug)]
pub struct Workspace<B: Backend> {
    pub categories: BTreeMap<String, Arc<VCategory<B>>>,
    pub bimodules: BTreeMap<String, Arc<VBimodule<B>>>,
    pub functors: BTreeMap<String, VFunctor<B>>,
    pub chains: BTreeMap<String, Chain<B>>,
}

impl<B: Backend> Workspace<B> {
    pub fn category(&self, name: &str) -> Result<&Arc<VCategory<B>>> {
        self.categories
            .get(name)
            .ok_or_else(|| Error::Reference(format!("no category named `{name}`")))
    }

    pub fn bimodule(&self, name: &str) -> Result<&Arc<VBimodule<B>>> {
        self.bimodules
            .get(name)
            .ok_or_else(|| Error::Reference(format!("no bimodule named `{name}`")))
    }

    pub fn chain(&self, name: &str) -> Result<&Chain<B>> {
        self.chains
            .get(name)
            .ok_or_else(|| Error::Reference(format!("no chain named `{name}`")))
    }
}

#[derive(Clone, Debug)]
pub enum Resolved {
    Bool(Workspace<Bool>),
    FinSet(Workspace<FinSet>),
    FinVect(Workspace<FinVect>),
}

pub fn resolve(file: &WorkspaceFile, budget: usize) -> Result<Resolved> {
    check_names(file)?;
    match file.backend {
        BackendSpec::Bool => resolve_bool(file).map(Resolved::Bool),
        BackendSpec::Finset => resolve_finset(file, budget).map(Resolved::FinSet),
        BackendSpec::Finvect { p } => {
            let lin = Linearize::new(p)?;
            linearize(&lin, &resolve_finset(file, budget)?).map(Resolved::FinVect)
        }
    }
}

fn check_names(file: &WorkspaceFile) -> Result<()> {
    let mut seen = BTreeSet::new();
    let names = file
        .categories
        .keys()
        .chain(file.bimodules.keys())
        .chain(file.functors.keys())
        .chain(file.chains.keys());
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Shape(format!("name `{n}` is used twice")));
        }
    }
    for (name, c) in &file.categories {
        let mut objs = BTreeSet::new();
        if let Some(o) = c.objects.iter().find(|o| !objs.insert(*o)) {
            return Err(Error::Shape(format!("category `{name}` lists object `{o}` twice")));
        }
    }
    Ok(())
}

fn object_of(c: &CategorySpec, cat: &str, obj: &str) -> Result<usize> {
    c.objects
        .iter()
        .position(|o| o == obj)
        .ok_or_else(|| Error::Reference(format!("category `{cat}` has no object `{obj}`")))
}

fn spec_of<'a>(file: &'a WorkspaceFile, name: &str) -> Result<&'a CategorySpec> {
    file.categories
        .get(name)
        .ok_or_else(|| Error::Reference(format!("no category named `{name}`")))
}

fn mismatch(what: &str, field: &str, backend: &str) -> Error {
    Error::BackendMismatch(format!("{what}: `{field}` is not used by the {backend} backend"))
}

fn resolve_bool(file: &WorkspaceFile) -> Result<Workspace<Bool>> {
    let mut categories = BTreeMap::new();
    let mut orders = BTreeMap::new();
    for (name, c) in &file.categories {
        if !c.carriers.is_empty() {
            return Err(mismatch(&format!("category `{name}`"), "carriers", "bool"));
        }
        if !c.arrows.is_empty() {
            return Err(mismatch(&format!("category `{name}`"), "arrows", "bool"));
        }
        let n = c.objects.len();
        let mut le = vec![vec![false; n]; n];
        for (a, b) in &c.le {
            le[object_of(c, name, a)?][object_of(c, name, b)?] = true;
        }
        let le = transitive_closure(le);
        categories.insert(name.clone(), Arc::new(preorder_category(Bool, c.objects.clone(), &le)?));
        orders.insert(name.clone(), le);
    }
    let mut bimodules = BTreeMap::new();
    for (name, m) in &file.bimodules {
        if !m.elements.is_empty() {
            return Err(mismatch(&format!("bimodule `{name}`"), "elements", "bool"));
        }
        let (ls, rs) = (spec_of(file, &m.left)?, spec_of(file, &m.right)?);
        let (lx, ly) = (&orders[&m.left], &orders[&m.right]);
        let mut seed = vec![vec![false; rs.objects.len()]; ls.objects.len()];
        for (a, b) in &m.relation {
            seed[object_of(ls, &m.left, a)?][object_of(rs, &m.right, b)?] = true;
        }
        // down-close on the left, up-close on the right
        let rel: Vec<Vec<bool>> = (0..lx.len())
            .map(|xp| {
                (0..ly.len())
                    .map(|yp| (0..lx.len()).any(|x| (0..ly.len()).any(|y| lx[xp][x] && seed[x][y] && ly[y][yp])))
                    .collect()
            })
            .collect();
        let bm = relation_bimodule(categories[&m.left].clone(), categories[&m.right].clone(), &rel)?;
        bimodules.insert(name.clone(), Arc::new(bm));
    }
    let mut functors = BTreeMap::new();
    for (name, f) in &file.functors {
        if !f.homs.is_empty() {
            return Err(mismatch(&format!("functor `{name}`"), "homs", "bool"));
        }
        let (src, tgt, object_map) = functor_objects(file, &categories, name, f)?;
        let n = src.num_objects();
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let m = BoolMor::new(*src.hom(x, y), *tgt.hom(object_map[x], object_map[y])).map_err(|_| {
                    Error::Axiom(format!(
                        "functor `{name}` does not preserve {} <= {}",
                        src.objects()[x],
                        src.objects()[y]
                    ))
                })?;
                homs.push(m);
            }
        }
        functors.insert(name.clone(), VFunctor::new(src, tgt, object_map, homs)?);
    }
    let chains = resolve_chains(file, &categories, &bimodules)?;
    Ok(Workspace {
        categories,
        bimodules,
        functors,
        chains,
    })
}

type FunctorParts<B> = (Arc<VCategory<B>>, Arc<VCategory<B>>, Vec<usize>);

fn functor_objects<B: Backend>(
    file: &WorkspaceFile,
    categories: &BTreeMap<String, Arc<VCategory<B>>>,
    name: &str,
    f: &FunctorSpec,
) -> Result<FunctorParts<B>> {
    let (ss, ts) = (spec_of(file, &f.source)?, spec_of(file, &f.target)?);
    for k in f.objects.keys() {
        object_of(ss, &f.source, k)?;
    }
    let object_map = ss
        .objects
        .iter()
        .map(|o| {
            let t = f
                .objects
                .get(o)
                .ok_or_else(|| Error::Reference(format!("functor `{name}` does not map object `{o}`")))?;
            object_of(ts, &f.target, t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((categories[&f.source].clone(), categories[&f.target].clone(), object_map))
}

fn resolve_chains<B: Backend>(
    file: &WorkspaceFile,
    categories: &BTreeMap<String, Arc<VCategory<B>>>,
    bimodules: &BTreeMap<String, Arc<VBimodule<B>>>,
) -> Result<BTreeMap<String, Chain<B>>> {
    let mut chains = BTreeMap::new();
    for (name, ch) in &file.chains {
        let cats = ch
            .categories
            .iter()
            .map(|c| {
                categories
                    .get(c)
                    .cloned()
                    .ok_or_else(|| Error::Reference(format!("chain `{name}`: no category named `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mods = ch
            .bimodules
            .iter()
            .map(|m| {
                bimodules
                    .get(m)
                    .cloned()
                    .ok_or_else(|| Error::Reference(format!("chain `{name}`: no bimodule named `{m}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let chain = Chain::new(cats, mods).map_err(|e| match e {
            Error::CategoryMismatch(m) => Error::CategoryMismatch(format!("chain `{name}`: {m}")),
            Error::Shape(m) => Error::Shape(format!("chain `{name}`: {m}")),
            e => e,
        })?;
        chains.insert(name.clone(), chain);
    }
    Ok(chains)
}

fn table(
    what: &str,
    a: &ArrowSpec,
    from: usize,
    to: usize,
    carriers: (usize, usize),
) -> Result<(usize, usize, Vec<usize>)> {
    if a.map.len() != carriers.0 || a.map.iter().any(|&v| v >= carriers.1) {
        return Err(Error::Shape(format!(
            "{what}: map {:?} is not a function from {} to {} elements",
            a.map, carriers.0, carriers.1
        )));
    }
    Ok((from, to, a.map.clone()))
}

fn resolve_finset(file: &WorkspaceFile, budget: usize) -> Result<Workspace<FinSet>> {
    let mut concrete = BTreeMap::new();
    let mut categories = BTreeMap::new();
    for (name, c) in &file.categories {
        let what = format!("category `{name}`");
        if !c.le.is_empty() {
            return Err(mismatch(&what, "le", "finset"));
        }
        for k in c.carriers.keys() {
            object_of(c, name, k)?;
        }
        let carriers = c
            .objects
            .iter()
            .map(|o| match c.carriers.get(o) {
                Some(&k) if k <= MAX_CARRIER => Ok(k),
                Some(&k) => Err(Error::Shape(format!("{what}: carrier of `{o}` has {k} > {MAX_CARRIER} elements"))),
                None => Err(Error::Reference(format!("{what}: no carrier for object `{o}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let gens = c
            .arrows
            .iter()
            .map(|a| {
                let (x, y) = (object_of(c, name, &a.from)?, object_of(c, name, &a.to)?);
                table(&what, a, x, y, (carriers[x], carriers[y]))
            })
            .collect::<Result<Vec<_>>>()?;
        let cc = Concrete::from_generators(c.objects.clone(), carriers, &gens, budget)
            .ok_or_else(|| Error::bound(format!("homs of {what}"), budget as u128 + 1, budget))?;
        categories.insert(name.clone(), Arc::new(cc.to_category()));
        concrete.insert(name.clone(), cc);
    }
    let mut bimodules = BTreeMap::new();
    for (name, m) in &file.bimodules {
        let what = format!("bimodule `{name}`");
        if !m.relation.is_empty() {
            return Err(mismatch(&what, "relation", "finset"));
        }
        let (ls, rs) = (spec_of(file, &m.left)?, spec_of(file, &m.right)?);
        let (lc, rc) = (&concrete[&m.left], &concrete[&m.right]);
        let gens = m
            .elements
            .iter()
            .map(|a| {
                let (x, y) = (object_of(ls, &m.left, &a.from)?, object_of(rs, &m.right, &a.to)?);
                table(&what, a, x, y, (lc.carriers[x], rc.carriers[y]))
            })
            .collect::<Result<Vec<_>>>()?;
        let cm = ConcreteModule::from_generators(lc, rc, &gens, budget)
            .ok_or_else(|| Error::bound(format!("entries of {what}"), budget as u128 + 1, budget))?;
        let bm = cm.to_bimodule(lc, rc, categories[&m.left].clone(), categories[&m.right].clone());
        bimodules.insert(name.clone(), Arc::new(bm));
    }
    let mut functors = BTreeMap::new();
    for (name, f) in &file.functors {
        let (src, tgt, object_map) = functor_objects(file, &categories, name, f)?;
        let (ss, ts) = (spec_of(file, &f.source)?, spec_of(file, &f.target)?);
        let mut overrides = BTreeMap::new();
        for h in &f.homs {
            let key = (object_of(ss, &f.source, &h.from)?, object_of(ss, &f.source, &h.to)?);
            if overrides.insert(key, &h.map).is_some() {
                return Err(Error::Shape(format!("functor `{name}` maps hom ({}, {}) twice", h.from, h.to)));
            }
        }
        let n = src.num_objects();
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (src.hom(x, y), tgt.hom(object_map[x], object_map[y]));
                let over = overrides.get(&(x, y));
                let image = |l: &str| {
                    let t = over.and_then(|m| m.get(l)).map(String::as_str).unwrap_or(l);
                    b.position(t).ok_or_else(|| {
                        Error::Reference(format!(
                            "functor `{name}`: no element `{t}` in hom ({}, {}) of `{}`",
                            ts.objects[object_map[x]], ts.objects[object_map[y]], f.target
                        ))
                    })
                };
                if let Some(m) = over {
                    if let Some(k) = m.keys().find(|k| a.position(k).is_none()) {
                        return Err(Error::Reference(format!(
                            "functor `{name}`: no element `{k}` in hom ({}, {}) of `{}`",
                            ss.objects[x], ss.objects[y], f.source
                        )));
                    }
                }
                let t = a.labels().iter().map(|l| image(l)).collect::<Result<Vec<_>>>()?;
                homs.push(FinSet.function(a, b, t)?);
            }
        }
        functors.insert(name.clone(), VFunctor::new(src, tgt, object_map, homs)?);
    }
    let chains = resolve_chains(file, &categories, &bimodules)?;
    Ok(Workspace {
        categories,
        bimodules,
        functors,
        chains,
    })
}

fn linearize(lin: &Linearize, ws: &Workspace<FinSet>) -> Result<Workspace<FinVect>> {
    let mut categories = BTreeMap::new();
    for (name, c) in &ws.categories {
        categories.insert(name.clone(), Arc::new(change_of_base(lin, c)?));
    }
    let t = *lin.target_backend();
    let mut bimodules = BTreeMap::new();
    for (name, m) in &ws.bimodules {
        let bm = VBimodule::from_fn(
            categories[&name_of(&ws.categories, m.left())].clone(),
            categories[&name_of(&ws.categories, m.right())].clone(),
            |x, y| lin.map_object(m.module(x, y)),
            |xp, x, y| {
                t.compose(
                    &lin.tensor_comparison(m.left().hom(xp, x), m.module(x, y)),
                    &lin.map_morphism(m.left_act(xp, x, y)),
                )
            },
            |x, y, yp| {
                t.compose(
                    &lin.tensor_comparison(m.module(x, y), m.right().hom(y, yp)),
                    &lin.map_morphism(m.right_act(x, y, yp)),
                )
            },
        )?;
        bimodules.insert(name.clone(), Arc::new(bm));
    }
    let mut functors = BTreeMap::new();
    for (name, f) in &ws.functors {
        let g = VFunctor::new(
            categories[&name_of(&ws.categories, f.source())].clone(),
            categories[&name_of(&ws.categories, f.target())].clone(),
            f.object_map().to_vec(),
            f.hom_maps().iter().map(|m| lin.map_morphism(m)).collect(),
        )?;
        functors.insert(name.clone(), g);
    }
    let mut chains = BTreeMap::new();
    for (name, ch) in &ws.chains {
        let cats = (0..=ch.len())
            .map(|i| categories[&name_of(&ws.categories, ch.cat(i))].clone())
            .collect();
        let mods = (1..=ch.len())
            .map(|i| {
                let key = ws
                    .bimodules
                    .iter()
                    .find(|(_, m)| Arc::ptr_eq(m, ch.module(i)))
                    .map(|(k, _)| k)
                    .expect("chains hold workspace bimodules");
                bimodules[key].clone()
            })
            .collect();
        chains.insert(name.clone(), Chain::new(cats, mods)?);
    }
    Ok(Workspace {
        categories,
        bimodules,
        functors,
        chains,
    })
}

fn name_of<B: Backend>(cats: &BTreeMap<String, Arc<VCategory<B>>>, c: &Arc<VCategory<B>>) -> String {
    cats.iter()
        .find(|(_, d)| Arc::ptr_eq(c, d))
        .map(|(k, _)| k.clone())
        .expect("workspace values hold workspace categories")
}

// --------------------------------------------------------------- commands

#[derive(Debug, Parser)]
#[command(name = "vcat", version, about = "Check enriched categories, bimodules and their composites")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, clap::Args)]
pub struct Budget {
    /// Enumeration budget.
    #[arg(long = "bound", env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every category, bimodule and functor in a workspace.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Print a workspace file in canonical form.
    Fmt { file: PathBuf },
    /// Compose bimodules `M: A -|-> B` and `N: B -|-> C` and compare with
    /// the coend computed directly.
    Compose {
        file: PathBuf,
        m: String,
        b: String,
        n: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Build the composite algebra of a chain and check the Segal condition.
    Segal {
        file: PathBuf,
        chain: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Enumerate functors `C ⊗ [k] -> D` for `k <= n`.
    Fun {
        file: PathBuf,
        c: String,
        d: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, conflicts_with = "complete")]
        segal: bool,
        #[arg(long)]
        complete: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Finite probes on categories of labelled simplices.
    Probe {
        kind: ProbeKind,
        /// Label set sizes.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Largest simplex rank.
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        bound: usize,
        /// Enumeration budget.
        #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Random composites and Segal checks over FinSet.
    Selftest {
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    /// Fibers of active slices against the label-tuple count.
    Fiber,
    /// The simplices-to-slice map used for composites.
    Cofinal,
    /// Slices of interval-labelled simplices are empty or have a final object.
    Terminal,
    /// Active slices of cellular simplices.
    Sifted,
}

/// What a command produced: informational lines and check reports.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub reports: Vec<Report>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, machine: bool) -> String {
        if machine {
            #[derive(Serialize)]
            struct Machine<'a> {
                passed: bool,
                lines: &'a [String],
                reports: &'a [Report],
            }
            let mut s = serde_json::to_string_pretty(&Machine {
                passed: self.passed(),
                lines: &self.lines,
                reports: &self.reports,
            })
            .expect("outcome serializes");
            s.push('\n');
            return s;
        }
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        for r in &self.reports {
            s.push_str(&r.render());
        }
        s
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        3
    } else {
        2
    }
}

pub fn render_error(e: &Error, machine: bool) -> String {
    if machine {
        let v = serde_json::json!({ "error": e.to_string(), "exit": error_exit_code(e) });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("error serializes"))
    } else {
        format!("error: {e}\n")
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let load = |file: &std::path::Path, budget: usize| resolve(&WorkspaceFile::read(file)?, budget);
    match &cli.command {
        Command::Fmt { file } => Ok(Outcome {
            lines: vec![WorkspaceFile::read(file)?.to_canonical().trim_end().to_string()],
            reports: Vec::new(),
        }),
        Command::Validate { file, budget } => Ok(load(file, budget.budget)?.validate()),
        Command::Compose { file, m, b, n, budget } => load(file, budget.budget)?.compose(m, b, n, budget.budget),
        Command::Segal { file, chain, budget } => load(file, budget.budget)?.segal(chain),
        Command::Fun {
            file,
            c,
            d,
            level,
            segal,
            complete,
            budget,
        } => {
            let mode = match (segal, complete) {
                (true, _) => FunMode::Segal,
                (_, true) => FunMode::Complete,
                _ => FunMode::Plain,
            };
            load(file, budget.budget)?.fun(c, d, *level, mode, budget.budget)
        }
        Command::Probe {
            kind,
            sizes,
            bound,
            budget,
        } => probe(*kind, sizes.as_deref(), *bound, *budget),
        Command::Selftest { count, budget } => selftest(cli.seed, *count, budget.budget),
    }
}

macro_rules! each_backend {
    ($self:expr, $ws:ident => $body:expr) => {
        match $self {
            Resolved::Bool($ws) => $body,
            Resolved::FinSet($ws) => $body,
            Resolved::FinVect($ws) => $body,
        }
    };
}

impl Resolved {
    pub fn validate(&self) -> Outcome {
        each_backend!(self, ws => validate(ws))
    }

    pub fn compose(&self, m: &str, b: &str, n: &str, budget: usize) -> Result<Outcome> {
        each_backend!(self, ws => compose(ws, m, b, n, budget))
    }

    pub fn segal(&self, chain: &str) -> Result<Outcome> {
        each_backend!(self, ws => segal(ws, chain))
    }

    pub fn fun(&self, c: &str, d: &str, level: usize, mode: FunMode, budget: usize) -> Result<Outcome> {
        each_backend!(self, ws => fun(ws, c, d, level, mode, budget))
    }
}

fn retitled(mut r: Report, title: String) -> Report {
    r.title = title;
    r
}

pub fn validate<B: Backend>(ws: &Workspace<B>) -> Outcome {
    let mut out = Outcome::default();
    for (name, c) in &ws.categories {
        out.reports.push(retitled(validate_category(c), format!("category {name}")));
    }
    for (name, m) in &ws.bimodules {
        out.reports.push(retitled(validate_bimodule(m), format!("bimodule {name}")));
    }
    for (name, f) in &ws.functors {
        out.reports.push(retitled(validate_functor(f), format!("functor {name}")));
    }
    for (name, ch) in &ws.chains {
        out.lines.push(format!("chain {name}: length {}", ch.len()));
    }
    out
}

pub fn compose<B: CoendOracle>(ws: &Workspace<B>, m: &str, b: &str, n: &str, budget: usize) -> Result<Outcome> {
    let (mm, nn, bb) = (ws.bimodule(m)?, ws.bimodule(n)?, ws.category(b)?);
    if **mm.right() != **bb {
        return Err(Error::CategoryMismatch(format!("`{m}` does not end at `{b}`")));
    }
    if **nn.left() != **bb {
        return Err(Error::CategoryMismatch(format!("`{n}` does not start at `{b}`")));
    }
    let w = compose_bimodules_bounded(mm, nn, budget)?;
    let mut out = Outcome::default();
    out.lines.push(format!("composite of {m} and {n} over {b}"));
    let be = mm.backend();
    let (c, e) = (mm.left(), nn.right());
    for (x, xn) in c.objects().iter().enumerate() {
        for (z, zn) in e.objects().iter().enumerate() {
            out.lines.push(format!("  ({xn}, {zn}): {}", be.show_object(w.bimodule.module(x, z))));
        }
    }
    out.reports.push(retitled(validate_bimodule(&w.bimodule), "composite bimodule".into()));
    match oracle_agreement_with(mm, nn, &w) {
        Ok(r) => {
            let verdict = if r.passed() { "exact" } else { "mismatch" };
            out.lines.push(format!("oracle agreement: {verdict}"));
            out.reports.push(r);
        }
        Err(Error::Unsupported(_)) => out.lines.push("oracle agreement: no oracle for this backend".into()),
        Err(e) => return Err(e),
    }
    Ok(out)
}

pub fn segal<B: Backend>(ws: &Workspace<B>, chain: &str) -> Result<Outcome> {
    let ch = ws.chain(chain)?;
    let alg = build_composite_algebra(ch)?;
    let mut out = Outcome::default();
    out.lines.push(format!("chain {chain}: length {}", ch.len()));
    out.reports.push(segal_check(&alg)?);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunMode {
    Plain,
    Segal,
    Complete,
}

pub fn fun<B: Backend>(
    ws: &Workspace<B>,
    c: &str,
    d: &str,
    level: usize,
    mode: FunMode,
    budget: usize,
) -> Result<Outcome> {
    let (cc, dd) = (ws.category(c)?, ws.category(d)?);
    if mode == FunMode::Segal && level < 2 {
        return Err(Error::Precondition("--segal needs --level 2 or more".into()));
    }
    let top = if mode == FunMode::Complete { level.max(1) } else { level };
    let space = FunSpace::new(cc, dd, top, budget)?;
    let mut out = Outcome::default();
    for k in 0..=level {
        out.lines.push(format!("level {k}: {} functors", space.level(k).len()));
    }
    if top >= 1 {
        out.reports.push(simplicial_identities_fun(&space)?);
    }
    match mode {
        FunMode::Plain => {}
        FunMode::Segal => out.reports.push(segal_check_fun(&space, level)?),
        FunMode::Complete => out.reports.push(completeness_check_fun(&space, budget)?),
    }
    Ok(out)
}

pub fn probe(kind: ProbeKind, sizes: Option<&[usize]>, rank: usize, budget: usize) -> Result<Outcome> {
    let mut out = Outcome::default();
    let need = |len: Option<usize>, default: &[usize]| -> Result<Vec<usize>> {
        let s = sizes.map(<[usize]>::to_vec).unwrap_or_else(|| default.to_vec());
        if s.is_empty() || s.contains(&0) || len.is_some_and(|l| l != s.len()) {
            return Err(Error::Precondition(format!("bad --sizes {s:?}")));
        }
        Ok(s)
    };
    match kind {
        ProbeKind::Fiber => {
            let s = need(None, &[2, 2, 2])?;
            let ic = build_indexed_category(&s, true, rank, budget)?;
            let full = build_indexed_category(&s, false, rank, budget)?;
            let mut r = Report::new("fiber formula");
            for t in full.category().objects() {
                for (phi, eta) in factorizations(&ic, t)? {
                    let mut f = fiber_formula_check(&ic, t, &phi, &eta)?;
                    f.notes.clear();
                    r.absorb(&t.to_string(), f);
                }
            }
            r.note(format!("{} targets", full.category().num_objects()));
            out.lines.push(format!("sizes {s:?}, rank <= {rank}"));
            out.reports.push(r);
        }
        ProbeKind::Cofinal => {
            let s = need(Some(3), &[2, 2, 2])?;
            let mut r = Report::new("cofinality").with_qualifier(Qualifier::NecessaryOnly);
            for x in 0..s[0] {
                for z in 0..s[2] {
                    let (ys, slice, f) = composite_cofinal_map([s[0], s[1], s[2]], x, z, rank, budget)?;
                    r.absorb(&format!("({x}, {z})"), cofinality_probe(ys.category(), &slice, &f, budget)?);
                }
            }
            out.lines.push(format!("sizes {s:?}, rank <= {rank}"));
            out.reports.push(r);
        }
        ProbeKind::Terminal => {
            let s = need(None, &[2, 2, 2])?;
            let ic = build_indexed_category(&s, false, rank, budget)?;
            let width = s[0] * s.len();
            let mut r = Report::new("final objects");
            let (mut empty, mut terminal) = (0, 0);
            for len in 1..=rank + 1 {
                for code in 0..width.pow(len as u32) {
                    let t: Vec<usize> = (0..len).map(|i| code / width.pow(i as u32) % width).collect();
                    let slice = interval_slice(&ic, &t)?;
                    let p = final_object_probe(&slice);
                    if p.passed() {
                        if slice.num_objects() == 0 {
                            empty += 1;
                        } else {
                            terminal += 1;
                        }
                    }
                    r.checked += p.checked;
                    r.failures.extend(p.failures.into_iter().map(|mut f| {
                        f.witness = format!("over {t:?}: {}", f.witness);
                        f
                    }));
                }
            }
            r.note(format!("{empty} empty, {terminal} with a final object"));
            out.lines.push(format!("sizes {s:?}, rank <= {rank}"));
            out.reports.push(r);
        }
        ProbeKind::Sifted => {
            let s = need(None, &[1, 1, 1])?;
            let lam = build_indexed_category(&s, true, rank, budget)?;
            let full = build_indexed_category(&s, false, rank, budget)?;
            let mut r = Report::new("siftedness").with_qualifier(Qualifier::NecessaryOnly);
            for t in full.category().objects() {
                let slice = active_slice(&lam, t)?;
                // pairs at the top rank would need cones beyond the truncation
                r.absorb(&t.to_string(), sifted_probe_at(&slice, |o| o.object.rank() < rank, budget)?);
            }
            out.lines.push(format!("sizes {s:?}, rank <= {rank}"));
            out.reports.push(r);
        }
    }
    Ok(out)
}

pub fn selftest(seed: u64, count: usize, budget: usize) -> Result<Outcome> {
    let mut rng = generate::rng(seed);
    let mut r = Report::new("selftest");
    for i in 0..count {
        let chain = ConcreteChain::random(&mut rng, 2, 2, 3);
        let (cats, mods) = chain.realize();
        let w = compose_bimodules_bounded(&mods[0], &mods[1], budget)?;
        r.absorb(&format!("instance {i}"), oracle_agreement_with(&mods[0], &mods[1], &w)?);
        let ch = Chain::new(cats, mods.into_iter().map(Arc::new).collect())?;
        r.absorb(&format!("instance {i}"), segal_check(&build_composite_algebra(&ch)?)?);
    }
    Ok(Outcome {
        lines: vec![format!("seed {seed}, {count} instances")],
        reports: vec![r],
    })
}
