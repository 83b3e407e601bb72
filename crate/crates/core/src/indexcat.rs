//! Finite truncations of the categories of labelled simplices over
//! `[n]`, their active slices, and enumeration probes.
//!
//! An object is a map `phi: [m] -> [n]` with labels `p_i` drawn from the
//! set numbered `phi(i)`. A morphism over `delta: [k] -> [m]` runs from
//! `(phi, p)` to `(phi delta, p delta)`, so arrows point the opposite
//! way to the underlying simplex maps.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::enriched::VCategory;
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FiniteCategory, FiniteFunctor};
use crate::report::{Qualifier, Report};
use crate::simplex::{compose, enumerate_maps, is_cellular, SimplexMap};
use crate::vbackend::tensor::apply_grouped;
use crate::vbackend::Backend;

pub const DEFAULT_MAX_RANK: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexedObject {
    pub base: SimplexMap,
    pub labels: Vec<usize>,
}

impl IndexedObject {
    pub fn new(base: SimplexMap, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != base.source_rank() + 1 {
            return Err(Error::Shape(format!("{} labels over {base}", labels.len())));
        }
        Ok(IndexedObject { base, labels })
    }

    pub fn rank(&self) -> usize {
        self.base.source_rank()
    }

    /// The object reached along `delta: [k] -> [m]`.
    pub fn pull(&self, delta: &SimplexMap) -> Result<IndexedObject> {
        let base = compose(delta, &self.base)?;
        let labels = delta.values().iter().map(|&i| self.labels[i]).collect();
        Ok(IndexedObject { base, labels })
    }
}

impl fmt::Display for IndexedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self
            .base
            .values()
            .iter()
            .zip(&self.labels)
            .map(|(i, p)| format!("{i}:{p}"))
            .collect();
        write!(f, "({})", v.join(" "))
    }
}

impl fmt::Debug for IndexedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A truncated indexing category together with its lookup tables.
#[derive(Clone, Debug)]
pub struct IndexedCategory {
    sizes: Vec<usize>,
    cellular_only: bool,
    max_rank: usize,
    cat: FiniteCategory<IndexedObject, SimplexMap>,
    index: HashMap<IndexedObject, usize>,
    arrow_index: HashMap<(usize, SimplexMap), usize>,
}

impl IndexedCategory {
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    pub fn cellular_only(&self) -> bool {
        self.cellular_only
    }

    pub fn category(&self) -> &FiniteCategory<IndexedObject, SimplexMap> {
        &self.cat
    }

    pub fn find(&self, o: &IndexedObject) -> Option<usize> {
        self.index.get(o).copied()
    }

    /// The arrow out of object `o` over `delta`, if it is in the truncation.
    pub fn arrow_over(&self, o: usize, delta: &SimplexMap) -> Option<usize> {
        self.arrow_index.get(&(o, delta.clone())).copied()
    }

    fn admits(&self, base: &SimplexMap) -> bool {
        base.source_rank() <= self.max_rank && (!self.cellular_only || is_cellular(base))
    }
}

fn label_tuples(sizes: &[usize], base: &SimplexMap) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &i in base.values() {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..sizes[i]).map(move |p| {
                    let mut t = t.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    out
}

/// All labelled maps `[m] -> [n]` with `m <= max_rank` (only cellular
/// ones when asked), where `n + 1 = sizes.len()`.
pub fn build_indexed_category(
    sizes: &[usize],
    cellular_only: bool,
    max_rank: usize,
    bound: usize,
) -> Result<IndexedCategory> {
    if sizes.is_empty() {
        return Err(Error::Shape("no label sets".into()));
    }
    let n = sizes.len() - 1;
    let mut bases = Vec::new();
    for m in 0..=max_rank {
        for phi in enumerate_maps(m, n)? {
            if !cellular_only || is_cellular(&phi) {
                bases.push(phi);
            }
        }
    }
    let needed: u128 = bases
        .iter()
        .map(|b| b.values().iter().map(|&i| sizes[i] as u128).product::<u128>())
        .sum();
    if needed > bound as u128 {
        return Err(Error::bound("indexed objects", needed, bound));
    }
    let mut objects = Vec::new();
    for b in &bases {
        for labels in label_tuples(sizes, b) {
            objects.push(IndexedObject { base: b.clone(), labels });
        }
    }
    let index: HashMap<IndexedObject, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mut maps_into: Vec<Vec<SimplexMap>> = Vec::new();
    for m in 0..=max_rank {
        let mut all = Vec::new();
        for k in 0..=max_rank {
            all.extend(enumerate_maps(k, m)?);
        }
        maps_into.push(all);
    }
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    let mut identities = vec![0; objects.len()];
    for (s, o) in objects.iter().enumerate() {
        for delta in &maps_into[o.rank()] {
            let t = o.pull(delta)?;
            if cellular_only && !is_cellular(&t.base) {
                continue;
            }
            let target = index[&t];
            if delta.is_identity() {
                identities[s] = arrows.len();
            }
            arrow_index.insert((s, delta.clone()), arrows.len());
            if arrows.len() >= bound {
                return Err(Error::bound("indexed arrows", arrows.len() as u128 + 1, bound));
            }
            arrows.push(Arrow {
                source: s,
                target,
                label: delta.clone(),
            });
        }
    }
    let lookup = arrow_index.clone();
    let arrows_ref = arrows.clone();
    let cat = FiniteCategory::new_unchecked_laws(objects, arrows, identities, |f, g| {
        let (a, b) = (&arrows_ref[f], &arrows_ref[g]);
        let d = compose(&b.label, &a.label).ok()?;
        lookup.get(&(a.source, d)).copied()
    })?;
    Ok(IndexedCategory {
        sizes: sizes.to_vec(),
        cellular_only,
        max_rank,
        cat,
        index,
        arrow_index,
    })
}

/// Checks that every object has exactly one arrow over each admissible
/// simplex map into its rank, and that it lands on the pulled-back labels.
pub fn unique_lift_check(ic: &IndexedCategory) -> Result<Report> {
    let mut r = Report::new("unique lifts");
    let cat = &ic.cat;
    for s in 0..cat.num_objects() {
        let o = cat.object(s);
        let mut seen: HashMap<&SimplexMap, usize> = HashMap::new();
        for &a in cat.outgoing(s) {
            *seen.entry(&cat.arrow(a).label).or_default() += 1;
            let t = o.pull(&cat.arrow(a).label)?;
            r.check(cat.object(cat.arrow(a).target) == &t, || "target labels pull back".into(), || {
                format!("{o} over {}", cat.arrow(a).label)
            });
        }
        for k in 0..=ic.max_rank {
            for delta in enumerate_maps(k, o.rank())? {
                let admissible = ic.admits(&compose(&delta, &o.base)?);
                let count = seen.get(&delta).copied().unwrap_or(0);
                r.check(count == usize::from(admissible), || "exactly one lift".into(), || format!("{o} over {delta}"));
            }
        }
    }
    Ok(r)
}

/// An object of an active slice: an object of the indexed category and
/// the active map that carries it to the target.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceObject {
    pub object: IndexedObject,
    pub index: usize,
    pub map: SimplexMap,
}

impl fmt::Debug for SliceObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} via {}", self.object, self.map)
    }
}

/// Slice objects with arrows labelled by arrows of the indexed category.
pub type Slice = FiniteCategory<SliceObject, usize>;

/// The active slice over any target of rank `rank` described by `matches`,
/// which decides whether `(object, delta)` is an active arrow to it.
pub fn active_slice_by(
    ic: &IndexedCategory,
    rank: usize,
    matches: impl Fn(&IndexedObject, &SimplexMap) -> bool,
) -> Result<Slice> {
    let cat = &ic.cat;
    let mut active: Vec<Vec<SimplexMap>> = Vec::new();
    for m in 0..=ic.max_rank {
        active.push(enumerate_maps(rank, m)?.into_iter().filter(|d| d.is_active()).collect());
    }
    let mut objects = Vec::new();
    for s in 0..cat.num_objects() {
        let o = cat.object(s);
        for d in &active[o.rank()] {
            if matches(o, d) {
                objects.push(SliceObject {
                    object: o.clone(),
                    index: s,
                    map: d.clone(),
                });
            }
        }
    }
    let mut by_object: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, so) in objects.iter().enumerate() {
        by_object.entry(so.index).or_default().push(i);
    }
    let mut arrows = Vec::new();
    let mut identities = vec![0; objects.len()];
    let mut lookup: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (i, so) in objects.iter().enumerate() {
        for &a in cat.outgoing(so.index) {
            let arrow = cat.arrow(a);
            let Some(targets) = by_object.get(&arrow.target) else { continue };
            for &j in targets {
                if compose(&objects[j].map, &arrow.label)? == so.map {
                    if arrow.label.is_identity() && i == j {
                        identities[i] = arrows.len();
                    }
                    lookup.insert((i, a, j), arrows.len());
                    arrows.push(Arrow { source: i, target: j, label: a });
                }
            }
        }
    }
    let arrows_ref = arrows.clone();
    FiniteCategory::new_unchecked_laws(objects, arrows, identities, |f, g| {
        let h = cat.compose(arrows_ref[f].label, arrows_ref[g].label)?;
        lookup.get(&(arrows_ref[f].source, h, arrows_ref[g].target)).copied()
    })
}

/// The active slice over an object of the full (untruncated, not
/// necessarily cellular) category with the same label sets.
pub fn active_slice(ic: &IndexedCategory, target: &IndexedObject) -> Result<Slice> {
    check_target(ic, target)?;
    active_slice_by(ic, target.rank(), |o, d| o.pull(d).map(|t| &t == target).unwrap_or(false))
}

fn check_target(ic: &IndexedCategory, target: &IndexedObject) -> Result<()> {
    if target.base.target_rank() != ic.n() {
        return Err(Error::RankMismatch(format!("{target} does not lie over [{}]", ic.n())));
    }
    for (&i, &p) in target.base.values().iter().zip(&target.labels) {
        if p >= ic.sizes[i] {
            return Err(Error::OutOfRange(format!("label {p} in set {i} of {target}")));
        }
    }
    Ok(())
}

/// The slice of the category of `x`-labelled simplices over `[n]` (built
/// with `n + 1` copies of one label set) over a list of labels in
/// `x × {0..n}`, where `(p, i)` is numbered `i * |x| + p`.
pub fn interval_slice(ic: &IndexedCategory, target: &[usize]) -> Result<Slice> {
    let x = ic.sizes[0];
    if ic.sizes.iter().any(|&s| s != x) {
        return Err(Error::Precondition("label sets differ".into()));
    }
    if target.is_empty() || target.iter().any(|&t| t >= x * (ic.n() + 1)) {
        return Err(Error::OutOfRange("target labels".into()));
    }
    active_slice_by(ic, target.len() - 1, |o, d| {
        d.values()
            .iter()
            .zip(target)
            .all(|(&i, &t)| o.base.apply(i) * x + o.labels[i] == t)
    })
}

/// Compares the fiber of an active slice over `(phi, eta)` with the label
/// tuples `q` over `eta` with `q_phi(i) = p_i`.
pub fn fiber_formula_check(
    ic: &IndexedCategory,
    target: &IndexedObject,
    phi: &SimplexMap,
    eta: &SimplexMap,
) -> Result<Report> {
    check_target(ic, target)?;
    if !phi.is_active() {
        return Err(Error::Precondition(format!("{phi} is not active")));
    }
    if !is_cellular(eta) || !ic.admits(eta) {
        return Err(Error::Precondition(format!("{eta} is not an admissible cellular map")));
    }
    if compose(phi, eta).ok().as_ref() != Some(&target.base) {
        return Err(Error::Precondition(format!("{eta} after {phi} is not the base of {target}")));
    }
    let mut r = Report::new(format!("fiber at ({phi}, {eta}) over {target}"));
    let slice = active_slice(ic, target)?;
    let actual: BTreeSet<Vec<usize>> = slice
        .objects()
        .iter()
        .filter(|so| &so.object.base == eta && &so.map == phi)
        .map(|so| so.object.labels.clone())
        .collect();
    let formula: BTreeSet<Vec<usize>> = label_tuples(&ic.sizes, eta)
        .into_iter()
        .filter(|q| phi.values().iter().zip(&target.labels).all(|(&j, &p)| q[j] == p))
        .collect();
    r.check(actual == formula, || "fiber equals the pullback".into(), || {
        format!("{} in the fiber, {} from the formula", actual.len(), formula.len())
    });
    r.note(format!("{} elements", actual.len()));
    Ok(r)
}

/// Every factorization `target.base = eta phi` with `eta` admissible and
/// cellular and `phi` active.
pub fn factorizations(ic: &IndexedCategory, target: &IndexedObject) -> Result<Vec<(SimplexMap, SimplexMap)>> {
    let mut out = Vec::new();
    for k in 0..=ic.max_rank {
        for eta in enumerate_maps(k, ic.n())? {
            if !is_cellular(&eta) {
                continue;
            }
            for phi in enumerate_maps(target.rank(), k)? {
                if phi.is_active() && compose(&phi, &eta)? == target.base {
                    out.push((phi.clone(), eta.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
            count -= 1;
        }
    }
    count
}

/// For every object `d` of the target, checks that the comma category
/// `d / F` is nonempty and connected.
pub fn cofinality_probe<O, A, P: fmt::Debug, B>(
    source: &FiniteCategory<O, A>,
    target: &FiniteCategory<P, B>,
    f: &FiniteFunctor,
    bound: usize,
) -> Result<Report> {
    cofinality_probe_at(source, target, f, |_| true, bound)
}

/// [`cofinality_probe`] restricted to the target objects `d` with `at(d)`.
pub fn cofinality_probe_at<O, A, P: fmt::Debug, B>(
    source: &FiniteCategory<O, A>,
    target: &FiniteCategory<P, B>,
    f: &FiniteFunctor,
    at_object: impl Fn(usize) -> bool,
    bound: usize,
) -> Result<Report> {
    let mut r = Report::new("cofinality").with_qualifier(Qualifier::NecessaryOnly);
    for d in (0..target.num_objects()).filter(|&d| at_object(d)) {
        // objects (c, a: d -> F c)
        let mut objs: Vec<(usize, usize)> = Vec::new();
        let mut at: HashMap<(usize, usize), usize> = HashMap::new();
        for c in 0..source.num_objects() {
            for a in target.hom(d, f.object_map[c]) {
                at.insert((c, a), objs.len());
                objs.push((c, a));
            }
        }
        if objs.len() > bound {
            return Err(Error::bound("comma category objects", objs.len() as u128, bound));
        }
        let mut edges = Vec::new();
        for (i, &(c, a)) in objs.iter().enumerate() {
            for &g in source.outgoing(c) {
                let a2 = target.compose(a, f.arrow_map[g]).expect("composable");
                edges.push((i, at[&(source.arrow(g).target, a2)]));
            }
        }
        let k = components(objs.len(), edges);
        r.check(k > 0, || "comma category is nonempty".into(), || format!("{:?}", target.object(d)));
        if k > 0 {
            r.check(k == 1, || "comma category is connected".into(), || {
                format!("{:?} ({k} components)", target.object(d))
            });
        }
    }
    Ok(r)
}

/// Whether a category is empty, has a terminal object, or neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinalVerdict {
    Empty,
    Terminal(usize),
    Neither,
}

pub fn final_object<O, A>(c: &FiniteCategory<O, A>) -> FinalVerdict {
    if c.num_objects() == 0 {
        return FinalVerdict::Empty;
    }
    let n = c.num_objects();
    (0..n)
        .find(|&t| (0..n).all(|s| c.hom(s, t).len() == 1))
        .map_or(FinalVerdict::Neither, FinalVerdict::Terminal)
}

/// Passes when the category is empty or has a terminal object; terminal
/// objects found are checked to be isomorphic.
pub fn final_object_probe<O: fmt::Debug, A>(c: &FiniteCategory<O, A>) -> Report {
    let mut r = Report::new("final object");
    match final_object(c) {
        FinalVerdict::Empty => r.note("empty"),
        FinalVerdict::Terminal(t) => {
            r.note(format!("terminal {:?}", c.object(t)));
            let n = c.num_objects();
            for s in (0..n).filter(|&s| s != t && (0..n).all(|u| c.hom(u, s).len() == 1)) {
                let iso = c.hom(s, t).first().is_some_and(|&f| c.is_isomorphism(f));
                r.check(iso, || "terminal objects are isomorphic".into(), || format!("{:?}", c.object(s)));
            }
            r.checked += 1;
        }
        FinalVerdict::Neither => r.fail("empty or has a terminal object", format!("{} objects", c.num_objects())),
    }
    r
}

/// The diagonal into the square passes [`cofinality_probe`].
pub fn sifted_probe<O: fmt::Debug, A>(c: &FiniteCategory<O, A>, bound: usize) -> Result<Report> {
    sifted_probe_at(c, |_| true, bound)
}

/// [`sifted_probe`] over the pairs of objects that both satisfy `keep`.
/// The comma categories of the diagonal are built directly: objects over
/// `(a, b)` are pairs of arrows `a -> c`, `b -> c`.
pub fn sifted_probe_at<O: fmt::Debug, A>(
    c: &FiniteCategory<O, A>,
    keep: impl Fn(&O) -> bool,
    bound: usize,
) -> Result<Report> {
    let mut r = Report::new("siftedness").with_qualifier(Qualifier::NecessaryOnly);
    if c.num_objects() == 0 {
        r.fail("nonempty", "empty category");
        return Ok(r);
    }
    let kept: Vec<usize> = (0..c.num_objects()).filter(|&o| keep(c.object(o))).collect();
    for &a in &kept {
        for &b in &kept {
            let mut objs: Vec<(usize, usize)> = Vec::new();
            let mut at: HashMap<(usize, usize), usize> = HashMap::new();
            for &f in c.outgoing(a) {
                for g in c.incoming(c.arrow(f).target).iter().filter(|&&g| c.arrow(g).source == b) {
                    at.insert((f, *g), objs.len());
                    objs.push((f, *g));
                }
            }
            if objs.len() > bound {
                return Err(Error::bound("comma category objects", objs.len() as u128, bound));
            }
            let mut edges = Vec::new();
            for (i, &(f, g)) in objs.iter().enumerate() {
                for &h in c.outgoing(c.arrow(f).target) {
                    let (f2, g2) = (c.compose(f, h).expect("composable"), c.compose(g, h).expect("composable"));
                    edges.push((i, at[&(f2, g2)]));
                }
            }
            let k = components(objs.len(), edges);
            let pair = || format!("({:?}, {:?})", c.object(a), c.object(b));
            r.check(k > 0, || "comma category is nonempty".into(), pair);
            if k > 0 {
                r.check(k == 1, || "comma category is connected".into(), || format!("{} ({k} components)", pair()));
            }
        }
    }
    Ok(r)
}

/// The functor from `y`-labelled simplices (one label set) into the
/// active slice over `(x, z)` of the cellular category with label sets
/// `(X, Y, Z)`, sending `(y_0..y_k)` to `(x, y_0, ..., y_k, z)`.
pub fn composite_cofinal_map(
    sizes: [usize; 3],
    x: usize,
    z: usize,
    max_rank: usize,
    bound: usize,
) -> Result<(IndexedCategory, Slice, FiniteFunctor)> {
    if max_rank < 2 {
        return Err(Error::Precondition("needs rank at least 2".into()));
    }
    let lam = build_indexed_category(&sizes, true, max_rank, bound)?;
    let target = IndexedObject::new(SimplexMap::new(2, vec![0, 2])?, vec![x, z])?;
    let slice = active_slice(&lam, &target)?;
    let ys = build_indexed_category(&[sizes[1]], false, max_rank - 2, bound)?;
    let at: HashMap<(usize, SimplexMap), usize> = slice
        .objects()
        .iter()
        .enumerate()
        .map(|(i, so)| ((so.index, so.map.clone()), i))
        .collect();
    let image = |o: &IndexedObject| -> Result<usize> {
        let k = o.rank();
        let mut base = vec![0];
        base.extend(std::iter::repeat_n(1, k + 1));
        base.push(2);
        let mut labels = vec![x];
        labels.extend(&o.labels);
        labels.push(z);
        let obj = IndexedObject::new(SimplexMap::new(2, base)?, labels)?;
        let idx = lam.find(&obj).ok_or_else(|| Error::Reference(format!("{obj} outside the truncation")))?;
        at.get(&(idx, SimplexMap::new(k + 2, vec![0, k + 2])?))
            .copied()
            .ok_or_else(|| Error::Reference(format!("{obj} is not in the slice")))
    };
    let ycat = ys.category();
    let object_map = ycat.objects().iter().map(image).collect::<Result<Vec<_>>>()?;
    let mut arrow_map = Vec::with_capacity(ycat.num_arrows());
    for a in ycat.arrows() {
        let k = ycat.object(a.source).rank();
        let mut v = vec![0];
        v.extend(a.label.values().iter().map(|&i| i + 1));
        v.push(k + 2);
        let ext = SimplexMap::new(k + 2, v)?;
        let s = object_map[a.source];
        let lam_arrow = lam
            .arrow_over(slice.object(s).index, &ext)
            .ok_or_else(|| Error::Reference(format!("no arrow over {ext}")))?;
        let found = slice
            .outgoing(s)
            .iter()
            .copied()
            .find(|&f| slice.arrow(f).label == lam_arrow && slice.arrow(f).target == object_map[a.target])
            .ok_or_else(|| Error::Reference(format!("no slice arrow over {ext}")))?;
        arrow_map.push(found);
    }
    let f = FiniteFunctor::new(ycat, &slice, object_map, arrow_map)?;
    Ok((ys, slice, f))
}

/// The multiple composite `C(y_0,y_1) ⊗ ... ⊗ C(y_(r-1),y_r) -> C(y_0,y_r)`,
/// the unit when `r = 0`.
fn multi_comp<B: Backend>(c: &VCategory<B>, path: &[usize]) -> Result<B::Mor> {
    let b = c.backend();
    match path.len() {
        0 => Err(Error::Shape("empty path".into())),
        1 => Ok(c.unit(path[0]).clone()),
        2 => Ok(b.identity(c.hom(path[0], path[1]))),
        r => {
            let head = multi_comp(c, &path[..r - 1])?;
            let last = c.hom(path[r - 2], path[r - 1]);
            b.compose(
                &b.tensor_mor(&head, &b.identity(last)),
                c.comp(path[0], path[r - 2], path[r - 1]),
            )
        }
    }
}

/// Per output factor, the run length and the map from that run.
type Groups<B> = Vec<(usize, <B as Backend>::Mor)>;

fn arrow_value<B: Backend>(c: &VCategory<B>, o: &IndexedObject, delta: &SimplexMap) -> Result<(usize, Groups<B>)> {
    let v = delta.values();
    let groups = v
        .windows(2)
        .map(|w| Ok((w[1] - w[0], multi_comp(c, &o.labels[w[0]..=w[1]])?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((v[0], groups))
}

fn factors<B: Backend>(c: &VCategory<B>, labels: &[usize]) -> Vec<B::Obj> {
    labels.windows(2).map(|w| c.hom(w[0], w[1]).clone()).collect()
}

/// Treats a category as an algebra over labelled simplices: the list
/// `(x_0..x_m)` goes to `C(x_0,x_1) ⊗ ... ⊗ C(x_(m-1),x_m)`, inert arrows
/// restrict to a run of factors and active arrows compose. Checks that
/// this assignment is functorial up to rank `max_rank`.
pub fn algebra_from_category<B: Backend>(c: &VCategory<B>, max_rank: usize, bound: usize) -> Result<Report> {
    let mut r = Report::new("category as an algebra");
    let ic = build_indexed_category(&[c.num_objects()], false, max_rank, bound)?;
    let b = c.backend();
    let cat = ic.category();
    let mut values: Vec<(usize, Groups<B>)> = Vec::with_capacity(cat.num_arrows());
    for a in cat.arrows() {
        values.push(arrow_value(c, cat.object(a.source), &a.label)?);
    }
    let as_map = |labels: &[usize], (start, groups): &(usize, Groups<B>)| -> Result<B::Mor> {
        let len: usize = groups.iter().map(|g| g.0).sum();
        apply_grouped(b, &factors(c, &labels[*start..=*start + len]), groups)
    };
    for f in 0..cat.num_arrows() {
        let af = cat.arrow(f);
        let src = cat.object(af.source);
        for &g in cat.outgoing(af.target) {
            let ag = cat.arrow(g);
            let h = cat.compose(f, g).expect("composable");
            let direct = as_map(&src.labels, &values[h])?;
            // restrict f to the factors g keeps, then apply g
            let (gs, ggroups) = &values[g];
            let glen: usize = ggroups.iter().map(|x| x.0).sum();
            let (fstart, fgroups) = &values[f];
            let kept: Vec<_> = fgroups[*gs..*gs + glen].to_vec();
            let start = fstart + fgroups[..*gs].iter().map(|x| x.0).sum::<usize>();
            let first = as_map(&src.labels, &(start, kept))?;
            let second = as_map(&cat.object(ag.source).labels, &values[g])?;
            let stepwise = b.compose(&first, &second)?;
            r.check(direct == stepwise, || "functoriality".into(), || {
                format!("{src} along {} then {}", af.label, ag.label)
            });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::validate_category;
    use crate::generate;
    use crate::simplex::count_maps;
    use crate::vbackend::Bool;

    const BIG: usize = 1 << 22;

    /// Independent recount: objects are pairs (map, labels); arrows out of
    /// an object are the admissible maps into its rank.
    fn recount(sizes: &[usize], cellular: bool, r: usize) -> (usize, usize) {
        let n = sizes.len() - 1;
        let mut objs = Vec::new();
        for m in 0..=r {
            for phi in enumerate_maps(m, n).unwrap() {
                if cellular && !is_cellular(&phi) {
                    continue;
                }
                let count: usize = phi.values().iter().map(|&i| sizes[i]).product();
                objs.push((phi, count));
            }
        }
        let mut arrows = 0;
        for (phi, count) in &objs {
            for k in 0..=r {
                for d in enumerate_maps(k, phi.source_rank()).unwrap() {
                    let t = compose(&d, phi).unwrap();
                    if !cellular || is_cellular(&t) {
                        arrows += count;
                    }
                }
            }
        }
        (objs.iter().map(|o| o.1).sum(), arrows)
    }

    #[test]
    fn counts_match_recount() {
        for sizes in [vec![1], vec![2], vec![1, 2], vec![2, 2], vec![2, 1, 2]] {
            for cellular in [false, true] {
                let ic = build_indexed_category(&sizes, cellular, 2, BIG).unwrap();
                let (o, a) = recount(&sizes, cellular, 2);
                assert_eq!((ic.category().num_objects(), ic.category().num_arrows()), (o, a), "{sizes:?}");
                ic.category().check_axioms().unwrap();
                assert!(unique_lift_check(&ic).unwrap().passed());
            }
        }
    }

    #[test]
    fn singleton_labels_give_plain_simplices() {
        let ic = build_indexed_category(&[1], false, 3, BIG).unwrap();
        assert_eq!(ic.category().num_objects(), 4);
        let arrows: u128 = (0..=3).flat_map(|m| (0..=3).map(move |k| count_maps(k, m))).sum();
        assert_eq!(ic.category().num_arrows() as u128, arrows);
    }

    #[test]
    fn objects_over_an_edge_are_pairs() {
        let ic = build_indexed_category(&[2, 3], false, 1, BIG).unwrap();
        let edge = SimplexMap::new(1, vec![0, 1]).unwrap();
        let over: Vec<_> = ic.category().objects().iter().filter(|o| o.base == edge).collect();
        assert_eq!(over.len(), 6);
    }

    #[test]
    fn rank_zero_slice_of_plain_simplices() {
        let ic = build_indexed_category(&[2], false, 3, BIG).unwrap();
        let target = IndexedObject::new(SimplexMap::new(0, vec![0]).unwrap(), vec![1]).unwrap();
        let s = active_slice(&ic, &target).unwrap();
        // an active map out of [0] forces a rank-0 source
        assert_eq!(s.num_objects(), 1);
        let edge = IndexedObject::new(SimplexMap::new(0, vec![0, 0]).unwrap(), vec![1, 0]).unwrap();
        let s = active_slice(&ic, &edge).unwrap();
        // sources (1 ... 0) of every rank from 1 to 3 with free middle labels
        assert_eq!(s.num_objects(), 1 + 2 + 4);
    }

    #[test]
    fn fiber_formula_small() {
        for sizes in [vec![1, 1, 1], vec![2, 1, 2], vec![2, 2, 2]] {
            let ic = build_indexed_category(&sizes, true, 2, BIG).unwrap();
            let full = build_indexed_category(&sizes, false, 2, BIG).unwrap();
            for t in full.category().objects() {
                for (phi, eta) in factorizations(&ic, t).unwrap() {
                    let r = fiber_formula_check(&ic, t, &phi, &eta).unwrap();
                    assert!(r.passed(), "{r}");
                }
            }
        }
        let ic = build_indexed_category(&[2, 2, 2], true, 2, BIG).unwrap();
        let t = IndexedObject::new(SimplexMap::new(2, vec![0, 2]).unwrap(), vec![0, 1]).unwrap();
        let bad = fiber_formula_check(&ic, &t, &SimplexMap::identity(1), &SimplexMap::identity(2));
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn final_objects_of_interval_slices() {
        for x in 1..=2 {
            for n in 0..=2 {
                let ic = build_indexed_category(&vec![x; n + 1], false, 2, BIG).unwrap();
                let width = x * (n + 1);
                for t in [vec![0], vec![width - 1, 0], vec![0, width - 1]] {
                    let s = interval_slice(&ic, &t).unwrap();
                    let monotone = t.windows(2).all(|w| w[0] / x <= w[1] / x);
                    let v = final_object(&s);
                    assert_eq!(matches!(v, FinalVerdict::Empty), !monotone, "{t:?}");
                    assert!(final_object_probe(&s).passed());
                }
            }
        }
        let two: FiniteCategory<&str, ()> = FiniteCategory::discrete(vec!["a", "b"]);
        assert!(!final_object_probe(&two).passed());
        let none: FiniteCategory<&str, ()> = FiniteCategory::discrete(vec![]);
        let r = final_object_probe(&none);
        assert!(r.passed() && r.notes == vec!["empty".to_string()]);
    }

    #[test]
    fn cofinality_examples() {
        let ic = build_indexed_category(&[2], false, 2, BIG).unwrap();
        let c = ic.category();
        assert!(cofinality_probe(c, c, &FiniteFunctor::identity(c), BIG).unwrap().passed());
        let one: FiniteCategory<&str, ()> = FiniteCategory::discrete(vec!["*"]);
        let two: FiniteCategory<&str, ()> = FiniteCategory::discrete(vec!["a", "b"]);
        let constant = FiniteFunctor::new(&one, &two, vec![0], vec![0]).unwrap();
        let r = cofinality_probe(&one, &two, &constant, BIG).unwrap();
        assert!(!r.passed() && r.qualifier == Qualifier::NecessaryOnly);
        let (ys, slice, f) = composite_cofinal_map([2, 2, 2], 0, 1, 3, BIG).unwrap();
        assert!(cofinality_probe(ys.category(), &slice, &f, BIG).unwrap().passed());
    }

    #[test]
    fn sifted_examples() {
        let mut one: FiniteCategory<&str, ()> = FiniteCategory::discrete(vec!["*"]);
        assert!(sifted_probe(&one, BIG).unwrap().passed());
        one = FiniteCategory::discrete(vec!["a", "b"]);
        assert!(!sifted_probe(&one, BIG).unwrap().passed());
        let lam = build_indexed_category(&[1, 1, 1], true, 2, BIG).unwrap();
        let full = build_indexed_category(&[1, 1, 1], false, 2, BIG).unwrap();
        for t in full.category().objects() {
            let s = active_slice(&lam, t).unwrap();
            assert!(sifted_probe(&s, BIG).unwrap().passed(), "{t}");
        }
    }

    #[test]
    fn algebras_from_categories() {
        let mut rng = generate::rng(7);
        for _ in 0..5 {
            let c = generate::random_finset_category(&mut rng, 2, 3);
            assert!(validate_category(&c).passed());
            let r = algebra_from_category(&c, 3, BIG).unwrap();
            assert!(r.passed(), "{r}");
        }
        let le = vec![vec![true, true], vec![false, true]];
        let c = crate::enriched::preorder_category(Bool, vec!["a".into(), "b".into()], &le).unwrap();
        assert!(algebra_from_category(&c, 3, BIG).unwrap().passed());
    }
}
