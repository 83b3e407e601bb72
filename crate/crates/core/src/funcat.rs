//! The simplicial set of functors `C ⊗ [n] -> D`: levels, faces and
//! degeneracies, Segal checks, natural transformations, and the
//! isomorphism quotient used for completeness.

use std::collections::HashMap;
use std::sync::Arc;

use crate::enriched::{is_complete_truncated, tensor_with_chaotic, tensor_with_interval, tensored_functor, VCategory, VFunctor};
use crate::error::{Error, Result};
use crate::report::{Qualifier, Report};
use crate::simplex::SimplexMap;
use crate::vbackend::Backend;

/// Every strict functor `source -> target`, in the order the search
/// visits them: object assignments lexicographically, then hom maps in
/// the order of [`Backend::hom_set`].
pub fn enumerate_functors<B: Backend>(
    source: &Arc<VCategory<B>>,
    target: &Arc<VCategory<B>>,
    bound: usize,
) -> Result<Vec<VFunctor<B>>> {
    let n = source.num_objects();
    let m = target.num_objects();
    let assignments = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if assignments > bound as u128 {
        return Err(Error::bound("object assignments", assignments, bound));
    }
    if m == 0 && n > 0 {
        return Ok(Vec::new());
    }
    let b = source.backend();
    // triples checked once their last pair is chosen
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let last = (p * n + q).max(q * n + r).max(p * n + r);
                due[last].push((p, q, r));
            }
        }
    }
    let mut out = Vec::new();
    let mut nodes = 0usize;
    let mut objs = vec![0; n];
    loop {
        let mut candidates: Vec<Vec<B::Mor>> = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let (s, t) = (source.hom(p, q), target.hom(objs[p], objs[q]));
                candidates.push(if b.is_initial(s) {
                    vec![b.from_initial(s, t)?]
                } else {
                    b.hom_set(s, t, bound)?
                });
            }
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(n * n);
        let mut maps: Vec<B::Mor> = Vec::with_capacity(n * n);
        let mut next = 0usize;
        loop {
            let t = chosen.len();
            if t == n * n {
                out.push(VFunctor::new(source.clone(), target.clone(), objs.clone(), maps.clone())?);
            } else if next < candidates[t].len() {
                nodes += 1;
                if nodes > bound {
                    return Err(Error::bound("functor search steps", nodes as u128, bound));
                }
                chosen.push(next);
                maps.push(candidates[t][next].clone());
                next = 0;
                if admissible(source, target, &objs, &maps, t, &due[t])? {
                    continue;
                }
                next = chosen.pop().expect("just pushed") + 1;
                maps.pop();
                continue;
            }
            // backtrack
            match chosen.pop() {
                Some(c) => {
                    maps.pop();
                    next = c + 1;
                }
                None => break,
            }
        }
        // next object assignment
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            objs[i] += 1;
            if objs[i] < m {
                break;
            }
            objs[i] = 0;
        }
    }
}

fn admissible<B: Backend>(
    source: &VCategory<B>,
    target: &VCategory<B>,
    objs: &[usize],
    maps: &[B::Mor],
    t: usize,
    due: &[(usize, usize, usize)],
) -> Result<bool> {
    let n = source.num_objects();
    let b = source.backend();
    let (p, q) = (t / n, t % n);
    if p == q && b.compose(source.unit(p), &maps[t])? != *target.unit(objs[p]) {
        return Ok(false);
    }
    for &(x, y, z) in due {
        let lhs = b.compose(source.comp(x, y, z), &maps[x * n + z])?;
        let rhs = b.compose(
            &b.tensor_mor(&maps[x * n + y], &maps[y * n + z]),
            target.comp(objs[x], objs[y], objs[z]),
        )?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The functors `C ⊗ [n] -> D`.
#[derive(Clone, Debug)]
pub struct FunLevel<B: Backend> {
    pub n: usize,
    pub source: Arc<VCategory<B>>,
    pub functors: Vec<VFunctor<B>>,
    index: HashMap<(Vec<usize>, Vec<B::Mor>), usize>,
}

impl<B: Backend> FunLevel<B> {
    pub fn len(&self) -> usize {
        self.functors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functors.is_empty()
    }

    /// The position of a functor with this level's source.
    pub fn position(&self, f: &VFunctor<B>) -> Option<usize> {
        self.index.get(&(f.object_map().to_vec(), f.hom_maps().to_vec())).copied()
    }
}

pub fn fun_level<B: Backend>(
    c: &Arc<VCategory<B>>,
    d: &Arc<VCategory<B>>,
    n: usize,
    bound: usize,
) -> Result<FunLevel<B>> {
    let source = Arc::new(tensor_with_interval(c, n));
    let functors = enumerate_functors(&source, d, bound)?;
    let index = functors
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.object_map().to_vec(), f.hom_maps().to_vec()), i))
        .collect();
    Ok(FunLevel {
        n,
        source,
        functors,
        index,
    })
}

/// Levels `0..=max_n` with face and degeneracy tables.
#[derive(Clone, Debug)]
pub struct FunSpace<B: Backend> {
    c: Arc<VCategory<B>>,
    d: Arc<VCategory<B>>,
    levels: Vec<FunLevel<B>>,
}

impl<B: Backend> FunSpace<B> {
    pub fn new(c: &Arc<VCategory<B>>, d: &Arc<VCategory<B>>, max_n: usize, bound: usize) -> Result<Self> {
        let levels = (0..=max_n).map(|n| fun_level(c, d, n, bound)).collect::<Result<_>>()?;
        Ok(FunSpace {
            c: c.clone(),
            d: d.clone(),
            levels,
        })
    }

    pub fn source(&self) -> &Arc<VCategory<B>> {
        &self.c
    }

    pub fn target(&self) -> &Arc<VCategory<B>> {
        &self.d
    }

    pub fn max_n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FunLevel<B> {
        &self.levels[n]
    }

    /// Restriction of every level-`n` functor along `alpha: [k] -> [n]`,
    /// as indices into level `k`.
    pub fn act(&self, alpha: &SimplexMap) -> Result<Vec<usize>> {
        let (k, n) = (alpha.source_rank(), alpha.target_rank());
        if n > self.max_n() || k > self.max_n() {
            return Err(Error::OutOfRange(format!("{alpha} beyond level {}", self.max_n())));
        }
        let (lk, ln) = (&self.levels[k], &self.levels[n]);
        let along = tensored_functor(self.c.num_objects(), lk.source.clone(), ln.source.clone(), alpha.values())?;
        ln.functors
            .iter()
            .map(|f| {
                let r = along.then(f)?;
                lk.position(&r)
                    .ok_or_else(|| Error::Reference("restriction is not an enumerated functor".into()))
            })
            .collect()
    }

    pub fn face(&self, n: usize, i: usize) -> Result<Vec<usize>> {
        self.act(&SimplexMap::coface(n, i)?)
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> Result<Vec<usize>> {
        self.act(&SimplexMap::codegeneracy(n, i)?)
    }
}

/// The face and degeneracy tables satisfy the simplicial identities.
pub fn simplicial_identities_fun<B: Backend>(space: &FunSpace<B>) -> Result<Report> {
    let mut r = Report::new("simplicial identities");
    let top = space.max_n();
    let after = |first: &[usize], second: &[usize]| -> Vec<usize> { first.iter().map(|&i| second[i]).collect() };
    for n in 2..=top {
        for j in 0..=n {
            for i in 0..j {
                // d_i d_j = d_(j-1) d_i on level n
                let lhs = after(&space.face(n, j)?, &space.face(n - 1, i)?);
                let rhs = after(&space.face(n, i)?, &space.face(n - 1, j - 1)?);
                r.check(lhs == rhs, || "face-face".into(), || format!("n={n}, i={i}, j={j}"));
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            let s = space.degeneracy(n, j)?;
            for i in 0..=n + 1 {
                let ds = after(&s, &space.face(n + 1, i)?);
                let expected = if i == j || i == j + 1 {
                    (0..space.level(n).len()).collect()
                } else if i < j {
                    after(&space.face(n, i)?, &space.degeneracy(n - 1, j - 1)?)
                } else {
                    after(&space.face(n, i - 1)?, &space.degeneracy(n - 1, j)?)
                };
                r.check(ds == expected, || "face-degeneracy".into(), || format!("n={n}, i={i}, j={j}"));
            }
            if n + 2 <= top {
                for i in 0..=j {
                    // s_i s_j = s_(j+1) s_i for i <= j
                    let l = after(&space.degeneracy(n, j)?, &space.degeneracy(n + 1, i)?);
                    let rr = after(&space.degeneracy(n, i)?, &space.degeneracy(n + 1, j + 1)?);
                    r.check(l == rr, || "degeneracy-degeneracy".into(), || format!("n={n}, i={i}, j={j}"));
                }
            }
        }
    }
    Ok(r)
}

/// Level `n` against the fiber product of `n` copies of level 1 over
/// level 0, through the restrictions to consecutive edges.
pub fn segal_check_fun<B: Backend>(space: &FunSpace<B>, n: usize) -> Result<Report> {
    if n < 2 || n > space.max_n() {
        return Err(Error::Precondition(format!("Segal check at level {n} needs 2 <= n <= {}", space.max_n())));
    }
    let mut r = Report::new(format!("Segal map at level {n}"));
    let edges = (1..=n)
        .map(|i| space.act(&SimplexMap::interval(i - 1, 1, n)?))
        .collect::<Result<Vec<_>>>()?;
    let (d1, d0) = (space.face(1, 1)?, space.face(1, 0)?);
    // fiber product: chains of level-1 functors with matching endpoints
    let mut by_start: HashMap<usize, Vec<usize>> = HashMap::new();
    for (e, &s) in d1.iter().enumerate() {
        by_start.entry(s).or_default().push(e);
    }
    let mut chains: Vec<Vec<usize>> = (0..space.level(1).len()).map(|e| vec![e]).collect();
    for _ in 1..n {
        chains = chains
            .into_iter()
            .flat_map(|ch| {
                let end = d0[*ch.last().expect("nonempty")];
                by_start
                    .get(&end)
                    .into_iter()
                    .flatten()
                    .map(move |&e| {
                        let mut c = ch.clone();
                        c.push(e);
                        c
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut hits: HashMap<Vec<usize>, usize> = chains.iter().map(|c| (c.clone(), 0)).collect();
    for f in 0..space.level(n).len() {
        let image: Vec<usize> = edges.iter().map(|e| e[f]).collect();
        match hits.get_mut(&image) {
            Some(h) => *h += 1,
            None => r.fail("image lies in the fiber product", format!("functor {f}")),
        }
    }
    let mut keys: Vec<_> = hits.into_iter().collect();
    keys.sort();
    for (chain, h) in keys {
        r.check(h == 1, || if h == 0 { "existence of a filler".into() } else { "uniqueness of the filler".into() }, || {
            format!("{chain:?}")
        });
    }
    r.note(format!("{} functors, {} chains", space.level(n).len(), chains.len()));
    Ok(r)
}

/// A natural transformation by its components `I -> D(Fx, Gx)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation<B: Backend> {
    pub source: usize,
    pub target: usize,
    pub components: Vec<B::Mor>,
}

/// The components of a level-1 functor: its hom maps between `(x,0)`
/// and `(x,1)` applied to the unit.
pub fn components_of<B: Backend>(space: &FunSpace<B>, h: usize) -> Result<Transformation<B>> {
    let l1 = space.level(1);
    let f = &l1.functors[h];
    let (c, b) = (&space.c, space.c.backend());
    let n = c.num_objects();
    let components = (0..n)
        .map(|x| b.compose(c.unit(x), f.hom_map(x, n + x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Transformation {
        source: space.face(1, 1)?[h],
        target: space.face(1, 0)?[h],
        components,
    })
}

/// Level-1 functors from `F` to `G` (indices into level 0).
pub fn natural_transformations<B: Backend>(space: &FunSpace<B>, f: usize, g: usize) -> Result<Vec<usize>> {
    let (d1, d0) = (space.face(1, 1)?, space.face(1, 0)?);
    Ok((0..space.level(1).len()).filter(|&h| d1[h] == f && d0[h] == g).collect())
}

/// Component families satisfying the naturality squares, found directly
/// from global elements of `D`.
pub fn component_families<B: Backend>(space: &FunSpace<B>, f: usize, g: usize, bound: usize) -> Result<Vec<Transformation<B>>> {
    let (c, d) = (&space.c, &space.d);
    let b = c.backend();
    let l0 = space.level(0);
    let (ff, gg) = (&l0.functors[f], &l0.functors[g]);
    let n = c.num_objects();
    let choices = (0..n)
        .map(|x| b.global_elements(d.hom(ff.map_object(x), gg.map_object(x)), bound))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let comps: Vec<B::Mor> = (0..n).map(|x| choices[x][pick[x]].clone()).collect();
        if is_natural(space, ff, gg, &comps)? {
            out.push(Transformation {
                source: f,
                target: g,
                components: comps,
            });
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
        if n == 0 {
            return Ok(out);
        }
    }
}

fn is_natural<B: Backend>(space: &FunSpace<B>, ff: &VFunctor<B>, gg: &VFunctor<B>, comps: &[B::Mor]) -> Result<bool> {
    let (c, d) = (&space.c, &space.d);
    let b = c.backend();
    let n = c.num_objects();
    for x in 0..n {
        for y in 0..n {
            let h = c.hom(x, y);
            let (fx, fy, gx, gy) = (ff.map_object(x), ff.map_object(y), gg.map_object(x), gg.map_object(y));
            // (F, eta_y) then compose, against (eta_x, G) then compose
            let lhs = b.compose_all(&[
                &b.right_unitor_inv(h),
                &b.tensor_mor(ff.hom_map(x, y), &comps[y]),
                d.comp(fx, fy, gy),
            ])?;
            let rhs = b.compose_all(&[
                &b.left_unitor_inv(h),
                &b.tensor_mor(&comps[x], gg.hom_map(x, y)),
                d.comp(fx, gx, gy),
            ])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Both enumerations of transformations `F => G` agree exactly.
pub fn transformation_agreement<B: Backend>(space: &FunSpace<B>, bound: usize) -> Result<Report> {
    let mut r = Report::new("natural transformations");
    let k = space.level(0).len();
    for f in 0..k {
        for g in 0..k {
            let mut via_level: Vec<Transformation<B>> = natural_transformations(space, f, g)?
                .into_iter()
                .map(|h| components_of(space, h))
                .collect::<Result<_>>()?;
            let mut direct = component_families(space, f, g, bound)?;
            let key = |t: &Transformation<B>| format!("{:?}", t.components);
            via_level.sort_by_key(|t| key(t));
            direct.sort_by_key(|t| key(t));
            r.check(via_level == direct, || "level 1 against component families".into(), || {
                format!("({f}, {g}): {} against {}", via_level.len(), direct.len())
            });
        }
    }
    Ok(r)
}

/// `theta_x` after `eta_x` in `D`, pointwise.
pub fn compose_components<B: Backend>(
    space: &FunSpace<B>,
    eta: &Transformation<B>,
    theta: &Transformation<B>,
) -> Result<Transformation<B>> {
    if eta.target != theta.source {
        return Err(Error::NotComposable(format!(
            "transformation into {} followed by one out of {}",
            eta.target, theta.source
        )));
    }
    let l0 = space.level(0);
    let (f, g, h) = (&l0.functors[eta.source], &l0.functors[eta.target], &l0.functors[theta.target]);
    let b = space.d.backend();
    let unit = b.unit_object();
    let components = (0..space.c.num_objects())
        .map(|x| {
            b.compose_all(&[
                &b.left_unitor_inv(&unit),
                &b.tensor_mor(&eta.components[x], &theta.components[x]),
                space.d.comp(f.map_object(x), g.map_object(x), h.map_object(x)),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Transformation {
        source: eta.source,
        target: theta.target,
        components,
    })
}

/// The composite read off the unique level-2 filler of the pair.
pub fn compose_transformations<B: Backend>(space: &FunSpace<B>, eta: usize, theta: usize) -> Result<usize> {
    if space.max_n() < 2 {
        return Err(Error::Precondition("needs level 2".into()));
    }
    let (d1, d0) = (space.face(1, 1)?, space.face(1, 0)?);
    if d0[eta] != d1[theta] {
        return Err(Error::NotComposable(format!("level-1 functors {eta} and {theta}")));
    }
    let (first, second) = (space.face(2, 2)?, space.face(2, 0)?);
    let fillers: Vec<usize> = (0..space.level(2).len())
        .filter(|&k| first[k] == eta && second[k] == theta)
        .collect();
    match fillers.as_slice() {
        [k] => Ok(space.face(2, 1)?[*k]),
        _ => Err(Error::Axiom(format!("{} fillers for ({eta}, {theta})", fillers.len()))),
    }
}

/// Both routes to composition agree on every composable pair.
pub fn composition_agreement<B: Backend>(space: &FunSpace<B>) -> Result<Report> {
    let mut r = Report::new("composition of transformations");
    let (d1, d0) = (space.face(1, 1)?, space.face(1, 0)?);
    let k = space.level(1).len();
    for eta in 0..k {
        for theta in (0..k).filter(|&t| d1[t] == d0[eta]) {
            let filler = compose_transformations(space, eta, theta).and_then(|h| components_of(space, h));
            let pointwise = compose_components(space, &components_of(space, eta)?, &components_of(space, theta)?)?;
            r.check(filler.as_ref().ok() == Some(&pointwise), || "filler against pointwise".into(), || {
                format!("({eta}, {theta})")
            });
        }
    }
    Ok(r)
}

fn union_find_classes(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Functors `C -> D` up to natural isomorphism: `F ~ G` when some functor
/// `C ⊗ E^1 -> D` restricts to `F` and `G` at the two vertices. Counts of
/// functors out of `C ⊗ E^k` for `k <= max_k` are recorded as notes.
#[derive(Clone, Debug)]
pub struct GroupoidQuotient {
    pub report: Report,
    /// For each level-0 functor, the least index in its class.
    pub class_of: Vec<usize>,
}

impl GroupoidQuotient {
    pub fn classes(&self) -> usize {
        self.class_of.iter().enumerate().filter(|(i, c)| *i == **c).count()
    }
}

fn chaotic_level<B: Backend>(space: &FunSpace<B>, k: usize, bound: usize) -> Result<(Arc<VCategory<B>>, Vec<VFunctor<B>>)> {
    let src = Arc::new(tensor_with_chaotic(&space.c, k));
    let fs = enumerate_functors(&src, &space.d, bound)?;
    Ok((src, fs))
}

fn vertex_restrictions<B: Backend>(
    space: &FunSpace<B>,
    src: &Arc<VCategory<B>>,
    h: &VFunctor<B>,
) -> Result<(usize, usize)> {
    let l0 = space.level(0);
    let n = space.c.num_objects();
    let at = |v: usize| -> Result<usize> {
        let inc = tensored_functor(n, l0.source.clone(), src.clone(), &[v])?;
        l0.position(&inc.then(h)?)
            .ok_or_else(|| Error::Reference("vertex restriction is not enumerated".into()))
    };
    Ok((at(0)?, at(1)?))
}

pub fn underlying_groupoid_fun<B: Backend>(space: &FunSpace<B>, max_k: usize, bound: usize) -> Result<GroupoidQuotient> {
    let mut report = Report::new("underlying groupoid").with_qualifier(Qualifier::Pi0Surrogate);
    let (src, isos) = chaotic_level(space, 1, bound)?;
    let pairs = isos
        .iter()
        .map(|h| vertex_restrictions(space, &src, h))
        .collect::<Result<Vec<_>>>()?;
    let class_of = union_find_classes(space.level(0).len(), pairs);
    for k in 0..=max_k {
        let count = if k == 1 { isos.len() } else { chaotic_level(space, k, bound)?.1.len() };
        report.note(format!("{count} functors out of C ⊗ E^{k}"));
    }
    let q = GroupoidQuotient { report, class_of };
    let classes = q.classes();
    let mut q = q;
    q.report.note(format!("{} functors in {classes} classes", space.level(0).len()));
    q.report.checked += 1;
    Ok(q)
}

/// Every functor `C ⊗ E^1 -> D` is constant along the collapse to `C`.
/// When `D` has only identity isomorphisms this must pass.
pub fn completeness_check_fun<B: Backend>(space: &FunSpace<B>, bound: usize) -> Result<Report> {
    let mut r = Report::new("completeness").with_qualifier(Qualifier::Pi0Surrogate);
    let n = space.c.num_objects();
    let gaunt = is_complete_truncated(&space.d)?;
    let (src, isos) = chaotic_level(space, 1, bound)?;
    let l0 = space.level(0);
    let collapse = tensored_functor(n, src.clone(), l0.source.clone(), &[0, 0])?;
    for (i, h) in isos.iter().enumerate() {
        let (a, b) = vertex_restrictions(space, &src, h)?;
        let constant = collapse.then(&l0.functors[a])?;
        r.check(constant == *h, || "natural isomorphism is an identity".into(), || {
            format!("isomorphism {i} between functors {a} and {b}")
        });
    }
    if gaunt {
        r.note("target has only identity isomorphisms");
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::{e_category, interval_category, preorder_category, underlying_category};
    use crate::generate;
    use crate::vbackend::{Bool, FinSet};

    const BIG: usize = 1 << 20;

    fn bool_cat(le: &[Vec<bool>]) -> Arc<VCategory<Bool>> {
        let names = (0..le.len()).map(|i| format!("p{i}")).collect();
        Arc::new(preorder_category(Bool, names, le).unwrap())
    }

    /// Monotone maps from `X × [n]` (product order) to `D`.
    fn monotone_count(x: &[Vec<bool>], n: usize, d: &[Vec<bool>]) -> usize {
        let k = x.len();
        let pts: Vec<(usize, usize)> = (0..=n).flat_map(|i| (0..k).map(move |a| (a, i))).collect();
        let m = d.len();
        let total = m.pow(pts.len() as u32);
        (0..total)
            .filter(|&code| {
                let f: Vec<usize> = (0..pts.len()).map(|p| code / m.pow(p as u32) % m).collect();
                pts.iter().enumerate().all(|(p, &(a, i))| {
                    pts.iter()
                        .enumerate()
                        .all(|(q, &(b, j))| !(x[a][b] && i <= j) || d[f[p]][f[q]])
                })
            })
            .count()
    }

    #[test]
    fn bool_levels_match_monotone_maps() {
        for x in generate::all_preorders(2) {
            for d in generate::all_preorders(2) {
                let (c, dd) = (bool_cat(&x), bool_cat(&d));
                for n in 0..=2 {
                    assert_eq!(fun_level(&c, &dd, n, BIG).unwrap().len(), monotone_count(&x, n, &d));
                }
            }
        }
    }

    #[test]
    fn unit_source_gives_chains() {
        let e0 = Arc::new(e_category(0, FinSet));
        let mut rng = generate::rng(3);
        let d = Arc::new(generate::random_finset_category(&mut rng, 2, 3));
        let u = underlying_category(&d, BIG).unwrap();
        // chains of length n ending at each object
        let mut ways = vec![0usize; u.num_objects()];
        for a in u.arrows() {
            ways[a.target] += 1;
        }
        let space = FunSpace::new(&e0, &d, 3, BIG).unwrap();
        assert_eq!(space.level(0).len(), d.num_objects());
        assert_eq!(space.level(1).len(), u.num_arrows());
        for n in 2..=3 {
            let mut next = vec![0usize; u.num_objects()];
            for a in u.arrows() {
                next[a.target] += ways[a.source];
            }
            ways = next;
            assert_eq!(space.level(n).len(), ways.iter().sum::<usize>());
            assert!(segal_check_fun(&space, n).unwrap().passed());
        }
    }

    #[test]
    fn simplicial_structure_and_segal() {
        let c = bool_cat(&[vec![true, true], vec![false, true]]);
        let d = bool_cat(&[vec![true, true], vec![true, true]]);
        let space = FunSpace::new(&c, &d, 3, BIG).unwrap();
        assert!(simplicial_identities_fun(&space).unwrap().passed());
        assert!(segal_check_fun(&space, 2).unwrap().passed());
        assert!(segal_check_fun(&space, 3).unwrap().passed());
        let mut rng = generate::rng(11);
        let c = Arc::new(generate::random_finset_category(&mut rng, 2, 2));
        let d = Arc::new(generate::random_finset_category(&mut rng, 2, 2));
        let space = FunSpace::new(&c, &d, 3, BIG).unwrap();
        let r = simplicial_identities_fun(&space).unwrap();
        assert!(r.passed(), "{r}");
        assert!(segal_check_fun(&space, 3).unwrap().passed());
    }

    #[test]
    fn transformations_two_ways() {
        let mut rng = generate::rng(5);
        for _ in 0..3 {
            let c = Arc::new(generate::random_finset_category(&mut rng, 2, 2));
            let d = Arc::new(generate::random_finset_category(&mut rng, 2, 3));
            let space = FunSpace::new(&c, &d, 2, BIG).unwrap();
            assert!(transformation_agreement(&space, BIG).unwrap().passed());
            let r = composition_agreement(&space).unwrap();
            assert!(r.passed(), "{r}");
        }
        let c = bool_cat(&[vec![true, false], vec![false, true]]);
        let d = bool_cat(&[vec![true, true], vec![false, true]]);
        let space = FunSpace::new(&c, &d, 2, BIG).unwrap();
        let l0 = space.level(0);
        for f in 0..l0.len() {
            for g in 0..l0.len() {
                let pointwise = (0..2).all(|x| *d.hom(l0.functors[f].map_object(x), l0.functors[g].map_object(x)));
                assert_eq!(!natural_transformations(&space, f, g).unwrap().is_empty(), pointwise);
            }
        }
    }

    #[test]
    fn identity_transformation_is_unique_for_unit_category() {
        let e0 = Arc::new(e_category(0, FinSet));
        let space = FunSpace::new(&e0, &e0, 2, BIG).unwrap();
        assert_eq!(natural_transformations(&space, 0, 0).unwrap().len(), 1);
        let id = natural_transformations(&space, 0, 0).unwrap()[0];
        assert_eq!(compose_transformations(&space, id, id).unwrap(), id);
    }

    #[test]
    fn completeness() {
        let e0 = Arc::new(e_category(0, Bool));
        let e1 = Arc::new(e_category(1, Bool));
        let space = FunSpace::new(&e0, &e1, 0, BIG).unwrap();
        let q = underlying_groupoid_fun(&space, 2, BIG).unwrap();
        assert_eq!((space.level(0).len(), q.classes()), (2, 1));
        let r = completeness_check_fun(&space, BIG).unwrap();
        assert!(!r.passed());
        let i2 = Arc::new(interval_category(2, Bool));
        for c in [e0.clone(), e1.clone(), i2.clone()] {
            let space = FunSpace::new(&c, &i2, 0, BIG).unwrap();
            assert!(completeness_check_fun(&space, BIG).unwrap().passed());
            let q = underlying_groupoid_fun(&space, 1, BIG).unwrap();
            assert_eq!(q.classes(), space.level(0).len());
        }
    }
}
