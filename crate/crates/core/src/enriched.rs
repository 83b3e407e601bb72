//! Categories enriched in a backend, and enriched functors between them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Arrow, FiniteCategory};
use crate::report::Report;
use crate::vbackend::{Backend, MonoidalFunctor, Product, DEFAULT_BOUND};

/// A category with finitely many objects enriched in `B`.
///
/// Composition runs left to right: `comp(x, y, z): C(x,y) ⊗ C(y,z) -> C(x,z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VCategory<B: Backend> {
    backend: B,
    objects: Vec<String>,
    homs: Vec<B::Obj>,
    units: Vec<B::Mor>,
    comps: Vec<B::Mor>,
}

impl<B: Backend> VCategory<B> {
    /// Builds a category from full tables, checking that every structure
    /// map has the right source and target. The category axioms are not
    /// checked here; see [`validate_category`].
    pub fn new(
        backend: B,
        objects: Vec<String>,
        homs: Vec<B::Obj>,
        units: Vec<B::Mor>,
        comps: Vec<B::Mor>,
    ) -> Result<Self> {
        let n = objects.len();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = objects.iter().find(|o| !seen.insert(o.as_str())) {
            return Err(Error::Shape(format!("duplicate object {dup:?}")));
        }
        if homs.len() != n * n || units.len() != n || comps.len() != n * n * n {
            return Err(Error::Shape("table sizes do not match the object count".into()));
        }
        let c = VCategory {
            backend,
            objects,
            homs,
            units,
            comps,
        };
        let b = &c.backend;
        for x in 0..n {
            let u = &c.units[x];
            if b.source(u) != b.unit_object() || b.target(u) != *c.hom(x, x) {
                return Err(Error::Shape(format!("unit of {} has the wrong type", c.objects[x])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let m = c.comp(x, y, z);
                    if b.source(m) != b.tensor(c.hom(x, y), c.hom(y, z)) || b.target(m) != *c.hom(x, z) {
                        return Err(Error::Shape(format!(
                            "composition at ({}, {}, {}) has the wrong type",
                            c.objects[x], c.objects[y], c.objects[z]
                        )));
                    }
                }
            }
        }
        Ok(c)
    }

    /// Builds a category from functions producing each table entry.
    pub fn from_fn(
        backend: B,
        objects: Vec<String>,
        hom: impl Fn(usize, usize) -> B::Obj,
        unit: impl Fn(usize) -> Result<B::Mor>,
        comp: impl Fn(usize, usize, usize) -> Result<B::Mor>,
    ) -> Result<Self> {
        let n = objects.len();
        let homs = (0..n * n).map(|i| hom(i / n, i % n)).collect();
        let units = (0..n).map(unit).collect::<Result<_>>()?;
        let mut comps = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comps.push(comp(x, y, z)?);
                }
            }
        }
        Self::new(backend, objects, homs, units, comps)
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &B::Obj {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn unit(&self, x: usize) -> &B::Mor {
        &self.units[x]
    }

    pub fn comp(&self, x: usize, y: usize, z: usize) -> &B::Mor {
        let n = self.objects.len();
        &self.comps[(x * n + y) * n + z]
    }

    /// A copy with one composition entry replaced (same type required).
    pub fn with_comp(&self, x: usize, y: usize, z: usize, m: B::Mor) -> Result<Self> {
        let n = self.objects.len();
        let mut comps = self.comps.clone();
        comps[(x * n + y) * n + z] = m;
        Self::new(
            self.backend.clone(),
            self.objects.clone(),
            self.homs.clone(),
            self.units.clone(),
            comps,
        )
    }

    /// The same category with renamed objects.
    pub fn relabeled(&self, objects: Vec<String>) -> Result<Self> {
        Self::new(
            self.backend.clone(),
            objects,
            self.homs.clone(),
            self.units.clone(),
            self.comps.clone(),
        )
    }

    /// The composite `I -> C(x,z)` of two global elements.
    pub fn compose_elements(&self, x: usize, y: usize, z: usize, f: &B::Mor, g: &B::Mor) -> Result<B::Mor> {
        let b = &self.backend;
        let i = b.unit_object();
        let pair = b.compose(&b.left_unitor_inv(&i), &b.tensor_mor(f, g))?;
        b.compose(&pair, self.comp(x, y, z))
    }
}

fn name3<B: Backend>(c: &VCategory<B>, x: usize, y: usize, z: usize) -> String {
    format!("({}, {}, {})", c.objects[x], c.objects[y], c.objects[z])
}

/// Checks both unit laws and associativity at every tuple of objects.
pub fn validate_category<B: Backend>(c: &VCategory<B>) -> Report {
    let mut r = Report::new("category axioms");
    let b = c.backend();
    let n = c.num_objects();
    let eq = |lhs: Result<B::Mor>, rhs: &B::Mor| lhs.map(|l| l == *rhs).unwrap_or(false);
    for x in 0..n {
        for y in 0..n {
            let h = c.hom(x, y);
            let left = b
                .tensor_mor(c.unit(x), &b.identity(h));
            r.check(
                eq(b.compose(&left, c.comp(x, x, y)), &b.left_unitor(h)),
                || "left unit law".into(),
                || format!("({}, {})", c.objects[x], c.objects[y]),
            );
            let right = b.tensor_mor(&b.identity(h), c.unit(y));
            r.check(
                eq(b.compose(&right, c.comp(x, y, y)), &b.right_unitor(h)),
                || "right unit law".into(),
                || format!("({}, {})", c.objects[x], c.objects[y]),
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let (a, bb, cc) = (c.hom(x, y), c.hom(y, z), c.hom(z, w));
                    let lhs = b
                        .compose(&b.associator(a, bb, cc), &b.tensor_mor(&b.identity(a), c.comp(y, z, w)))
                        .and_then(|m| b.compose(&m, c.comp(x, y, w)));
                    let rhs = b.compose(&b.tensor_mor(c.comp(x, y, z), &b.identity(cc)), c.comp(x, z, w));
                    let ok = match (lhs, rhs) {
                        (Ok(l), Ok(r)) => l == r,
                        _ => false,
                    };
                    r.check(
                        ok,
                        || "associativity".into(),
                        || {
                            format!(
                                "({}, {}, {}, {})",
                                c.objects[x], c.objects[y], c.objects[z], c.objects[w]
                            )
                        },
                    );
                }
            }
        }
    }
    r
}

fn numbered_objects(n: usize) -> Vec<String> {
    (0..=n).map(|i| i.to_string()).collect()
}

/// The category on objects `0..=n` whose homs are given by a preorder:
/// the unit where `le[i][j]`, the initial object otherwise.
pub fn preorder_category<B: Backend>(backend: B, objects: Vec<String>, le: &[Vec<bool>]) -> Result<VCategory<B>> {
    let n = objects.len();
    if le.len() != n || le.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("relation has the wrong size".into()));
    }
    for i in 0..n {
        if !le[i][i] {
            return Err(Error::Axiom(format!("relation is not reflexive at {i}")));
        }
        for j in 0..n {
            for k in 0..n {
                if le[i][j] && le[j][k] && !le[i][k] {
                    return Err(Error::Axiom(format!("relation is not transitive at ({i}, {j}, {k})")));
                }
            }
        }
    }
    let b = backend.clone();
    let unit = b.unit_object();
    let hom = |i: usize, j: usize| if le[i][j] { b.unit_object() } else { b.initial_object() };
    VCategory::from_fn(
        backend.clone(),
        objects,
        hom,
        |_| Ok(b.identity(&unit)),
        |i, j, k| {
            if le[i][j] && le[j][k] {
                Ok(b.left_unitor(&unit))
            } else {
                b.from_initial(&b.tensor(&hom(i, j), &hom(j, k)), &hom(i, k))
            }
        },
    )
}

/// The total order `0 <= 1 <= ... <= n` as an enriched category.
pub fn interval_category<B: Backend>(n: usize, backend: B) -> VCategory<B> {
    let le: Vec<Vec<bool>> = (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect();
    preorder_category(backend, numbered_objects(n), &le).expect("total order")
}

/// The chaotic category on `n + 1` objects: one arrow between any two.
pub fn e_category<B: Backend>(n: usize, backend: B) -> VCategory<B> {
    let le = vec![vec![true; n + 1]; n + 1];
    preorder_category(backend, numbered_objects(n), &le).expect("chaotic relation")
}

/// `C ⊗ P` for a preorder `P` on `0..k`: objects `(x, i)` at index
/// `i * |X| + x`, with `hom((x,i),(y,j)) = C(x,y)` when `i <= j` in `P` and
/// the initial object otherwise.
pub fn tensor_with_preorder<B: Backend>(c: &VCategory<B>, le: &[Vec<bool>]) -> Result<VCategory<B>> {
    let k = le.len();
    let n = c.num_objects();
    if le.iter().any(|row| row.len() != k) {
        return Err(Error::Shape("relation is not square".into()));
    }
    let b = c.backend().clone();
    let objects = (0..k)
        .flat_map(|i| c.objects().iter().map(move |x| format!("({x},{i})")))
        .collect();
    let split = |o: usize| (o % n, o / n);
    let hom = |p: usize, q: usize| {
        let ((x, i), (y, j)) = (split(p), split(q));
        if le[i][j] {
            c.hom(x, y).clone()
        } else {
            b.initial_object()
        }
    };
    VCategory::from_fn(
        b.clone(),
        objects,
        hom,
        |p| {
            let (x, i) = split(p);
            if le[i][i] {
                Ok(c.unit(x).clone())
            } else {
                Err(Error::Axiom("relation is not reflexive".into()))
            }
        },
        |p, q, s| {
            let ((x, i), (y, j), (z, l)) = (split(p), split(q), split(s));
            if le[i][j] && le[j][l] {
                if !le[i][l] {
                    return Err(Error::Axiom("relation is not transitive".into()));
                }
                Ok(c.comp(x, y, z).clone())
            } else {
                b.from_initial(&b.tensor(&hom(p, q), &hom(q, s)), &hom(p, s))
            }
        },
    )
}

/// `C ⊗ [n]`.
pub fn tensor_with_interval<B: Backend>(c: &VCategory<B>, n: usize) -> VCategory<B> {
    let le: Vec<Vec<bool>> = (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect();
    tensor_with_preorder(c, &le).expect("total order")
}

/// `C ⊗ E^n`.
pub fn tensor_with_chaotic<B: Backend>(c: &VCategory<B>, n: usize) -> VCategory<B> {
    tensor_with_preorder(c, &vec![vec![true; n + 1]; n + 1]).expect("chaotic relation")
}

/// The ordinary category of global elements: arrows `x -> y` are the
/// morphisms `I -> C(x,y)`.
pub fn underlying_category<B: Backend>(
    c: &VCategory<B>,
    bound: usize,
) -> Result<FiniteCategory<String, B::Mor>> {
    let b = c.backend();
    let n = c.num_objects();
    let mut arrows = Vec::new();
    let mut index: HashMap<(usize, usize, B::Mor), usize> = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for e in b.global_elements(c.hom(x, y), bound)? {
                index.insert((x, y, e.clone()), arrows.len());
                arrows.push(Arrow {
                    source: x,
                    target: y,
                    label: e,
                });
                if arrows.len() > bound {
                    return Err(Error::bound("underlying arrows", arrows.len() as u128, bound));
                }
            }
        }
    }
    let identities = (0..n)
        .map(|x| {
            index
                .get(&(x, x, c.unit(x).clone()))
                .copied()
                .ok_or_else(|| Error::Axiom("unit is not a global element".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<Arrow<B::Mor>> = arrows.clone();
    FiniteCategory::new(c.objects().to_vec(), arrows, identities, |f, g| {
        let (af, ag) = (&labels[f], &labels[g]);
        let h = c
            .compose_elements(af.source, af.target, ag.target, &af.label, &ag.label)
            .ok()?;
        index.get(&(af.source, ag.target, h)).copied()
    })
}

/// Whether every isomorphism of the underlying category is an identity.
pub fn is_complete_truncated<B: Backend>(c: &VCategory<B>) -> Result<bool> {
    let u = underlying_category(c, DEFAULT_BOUND)?;
    Ok((0..u.num_arrows()).all(|f| u.is_identity(f) || !u.is_isomorphism(f)))
}

/// Applies a monoidal functor to every hom object and structure map.
pub fn change_of_base<F: MonoidalFunctor>(f: &F, c: &VCategory<F::Source>) -> Result<VCategory<F::Target>> {
    let t = f.target_backend();
    let n = c.num_objects();
    VCategory::from_fn(
        t.clone(),
        c.objects().to_vec(),
        |x, y| f.map_object(c.hom(x, y)),
        |x| t.compose(&f.unit_comparison(), &f.map_morphism(c.unit(x))),
        |x, y, z| {
            let _ = n;
            t.compose(
                &f.tensor_comparison(c.hom(x, y), c.hom(y, z)),
                &f.map_morphism(c.comp(x, y, z)),
            )
        },
    )
}

/// The componentwise pairing of two categories over the product backend;
/// object `(c, d)` sits at index `c * |D| + d`.
pub fn external_category<V: Backend, W: Backend>(
    c: &VCategory<V>,
    d: &VCategory<W>,
) -> Result<VCategory<Product<V, W>>> {
    let m = d.num_objects();
    let objects = c
        .objects()
        .iter()
        .flat_map(|a| d.objects().iter().map(move |b| format!("({a},{b})")))
        .collect();
    VCategory::from_fn(
        Product::new(c.backend().clone(), d.backend().clone()),
        objects,
        |p, q| (c.hom(p / m, q / m).clone(), d.hom(p % m, q % m).clone()),
        |p| Ok((c.unit(p / m).clone(), d.unit(p % m).clone())),
        |p, q, r| Ok((c.comp(p / m, q / m, r / m).clone(), d.comp(p % m, q % m, r % m).clone())),
    )
}

/// An enriched functor, with `hom_map(x, x'): C(x,x') -> D(Fx, Fx')`.
#[derive(Clone, Debug, PartialEq)]
pub struct VFunctor<B: Backend> {
    source: Arc<VCategory<B>>,
    target: Arc<VCategory<B>>,
    object_map: Vec<usize>,
    hom_maps: Vec<B::Mor>,
}

impl<B: Backend> VFunctor<B> {
    /// Checks table sizes and the type of every hom map. Functoriality is
    /// checked by [`validate_functor`].
    pub fn new(
        source: Arc<VCategory<B>>,
        target: Arc<VCategory<B>>,
        object_map: Vec<usize>,
        hom_maps: Vec<B::Mor>,
    ) -> Result<Self> {
        let n = source.num_objects();
        if object_map.len() != n || hom_maps.len() != n * n {
            return Err(Error::Shape("functor tables have the wrong size".into()));
        }
        if object_map.iter().any(|&o| o >= target.num_objects()) {
            return Err(Error::Shape("object map leaves the target".into()));
        }
        let b = source.backend();
        for x in 0..n {
            for y in 0..n {
                let m = &hom_maps[x * n + y];
                if b.source(m) != *source.hom(x, y) || b.target(m) != *target.hom(object_map[x], object_map[y]) {
                    return Err(Error::Shape(format!(
                        "hom map at ({}, {}) has the wrong type",
                        source.objects()[x],
                        source.objects()[y]
                    )));
                }
            }
        }
        Ok(VFunctor {
            source,
            target,
            object_map,
            hom_maps,
        })
    }

    pub fn identity(c: Arc<VCategory<B>>) -> Self {
        let n = c.num_objects();
        let b = c.backend().clone();
        let hom_maps = (0..n * n).map(|i| b.identity(c.hom(i / n, i % n))).collect();
        VFunctor {
            source: c.clone(),
            target: c,
            object_map: (0..n).collect(),
            hom_maps,
        }
    }

    pub fn source(&self) -> &Arc<VCategory<B>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VCategory<B>> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn map_object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn hom_map(&self, x: usize, y: usize) -> &B::Mor {
        &self.hom_maps[x * self.source.num_objects() + y]
    }

    pub fn hom_maps(&self) -> &[B::Mor] {
        &self.hom_maps
    }

    /// A copy with one hom map replaced (same type required).
    pub fn with_hom_map(&self, x: usize, y: usize, m: B::Mor) -> Result<Self> {
        let mut hom_maps = self.hom_maps.clone();
        hom_maps[x * self.source.num_objects() + y] = m;
        Self::new(self.source.clone(), self.target.clone(), self.object_map.clone(), hom_maps)
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &VFunctor<B>) -> Result<VFunctor<B>> {
        if !same_category(&self.target, &g.source) {
            return Err(Error::CategoryMismatch("functors are not composable".into()));
        }
        let b = self.source.backend();
        let n = self.source.num_objects();
        let object_map: Vec<usize> = self.object_map.iter().map(|&o| g.object_map[o]).collect();
        let hom_maps = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                b.compose(self.hom_map(x, y), g.hom_map(self.object_map[x], self.object_map[y]))
            })
            .collect::<Result<_>>()?;
        Ok(VFunctor {
            source: self.source.clone(),
            target: g.target.clone(),
            object_map,
            hom_maps,
        })
    }
}

pub(crate) fn same_category<B: Backend>(a: &Arc<VCategory<B>>, b: &Arc<VCategory<B>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Checks strict preservation of units and composition.
pub fn validate_functor<B: Backend>(f: &VFunctor<B>) -> Report {
    let mut r = Report::new("functor axioms");
    let (c, d) = (f.source(), f.target());
    let b = c.backend();
    let n = c.num_objects();
    for x in 0..n {
        let fx = f.map_object(x);
        let ok = b
            .compose(c.unit(x), f.hom_map(x, x))
            .map(|m| m == *d.unit(fx))
            .unwrap_or(false);
        r.check(ok, || "unit preservation".into(), || c.objects()[x].clone());
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = b.compose(c.comp(x, y, z), f.hom_map(x, z));
                let rhs = b.compose(
                    &b.tensor_mor(f.hom_map(x, y), f.hom_map(y, z)),
                    d.comp(f.map_object(x), f.map_object(y), f.map_object(z)),
                );
                let ok = matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r);
                r.check(ok, || "composition preservation".into(), || name3(c, x, y, z));
            }
        }
    }
    r
}

/// The functor between two tensored categories over the same base `C`
/// (as built by [`tensor_with_preorder`]) sending `(x, i)` to
/// `(x, vertex_map[i])` and acting as the identity on nonempty homs.
pub fn tensored_functor<B: Backend>(
    base_objects: usize,
    source: Arc<VCategory<B>>,
    target: Arc<VCategory<B>>,
    vertex_map: &[usize],
) -> Result<VFunctor<B>> {
    let n = base_objects;
    let b = source.backend().clone();
    let m = source.num_objects();
    let object_map: Vec<usize> = (0..m).map(|o| vertex_map[o / n] * n + o % n).collect();
    let mut hom_maps = Vec::with_capacity(m * m);
    for p in 0..m {
        for q in 0..m {
            let s = source.hom(p, q);
            let t = target.hom(object_map[p], object_map[q]);
            hom_maps.push(if b.is_initial(s) {
                b.from_initial(s, t)?
            } else if s == t {
                b.identity(s)
            } else {
                return Err(Error::Precondition("vertex map is not monotone".into()));
            });
        }
    }
    VFunctor::new(source, target, object_map, hom_maps)
}

/// The inclusion `C -> C ⊗ P` at vertex `i`.
pub fn vertex_inclusion<B: Backend>(
    base: Arc<VCategory<B>>,
    tensored: Arc<VCategory<B>>,
    i: usize,
) -> Result<VFunctor<B>> {
    let n = base.num_objects();
    let b = base.backend().clone();
    let hom_maps = (0..n * n).map(|k| b.identity(base.hom(k / n, k % n))).collect();
    VFunctor::new(base, tensored, (0..n).map(|x| i * n + x).collect(), hom_maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vbackend::{Bool, FinSet, FinSetObj, FinVect, Linearize, Support};

    /// One-object FinSet category from a monoid multiplication table.
    fn monoid(table: &[Vec<usize>], unit: usize) -> VCategory<FinSet> {
        let s = FinSet;
        let k = table.len();
        let m = s.numbered(k);
        let mm = s.tensor(&m, &m);
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        VCategory::new(
            s,
            vec!["*".into()],
            vec![m.clone()],
            vec![s.element(&m, unit).unwrap()],
            vec![s.function(&mm, &m, flat).unwrap()],
        )
        .unwrap()
    }

    fn monoid_oracle(table: &[Vec<usize>], unit: usize) -> bool {
        let k = table.len();
        (0..k).all(|a| table[unit][a] == a && table[a][unit] == a)
            && (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| table[table[a][b]][c] == table[a][table[b][c]])))
    }

    #[test]
    fn monoid_tables_match_oracle() {
        // every binary operation on a 2-element set with each possible unit
        for code in 0..16usize {
            let table: Vec<Vec<usize>> = (0..2).map(|a| (0..2).map(|b| (code >> (a * 2 + b)) & 1).collect()).collect();
            for unit in 0..2 {
                let c = monoid(&table, unit);
                assert_eq!(validate_category(&c).passed(), monoid_oracle(&table, unit), "{table:?} unit {unit}");
            }
        }
    }

    /// The chain 0 < 1 < 2 < 3 with one extra arrow v in C(0,3).
    fn chain_with_extra() -> VCategory<FinSet> {
        let s = FinSet;
        let n = 4;
        let hom = |i: usize, j: usize| -> FinSetObj {
            if i > j {
                s.initial_object()
            } else if (i, j) == (0, 3) {
                s.object(["u", "v"]).unwrap()
            } else {
                s.object([format!("a{i}{j}")]).unwrap()
            }
        };
        VCategory::from_fn(
            s,
            (0..n).map(|i| i.to_string()).collect(),
            hom,
            |i| s.element(&hom(i, i), 0),
            |i, j, k| {
                let src = s.tensor(&hom(i, j), &hom(j, k));
                let tgt = hom(i, k);
                if src.is_empty() {
                    return s.from_initial(&src, &tgt);
                }
                // identities act trivially; every other composite into C(0,3) is u
                let table = if i == j || j == k {
                    (0..src.len()).collect()
                } else {
                    vec![0; src.len()]
                };
                s.function(&src, &tgt, table)
            },
        )
        .unwrap()
    }

    #[test]
    fn corrupted_composition_is_localized() {
        let c = chain_with_extra();
        assert!(validate_category(&c).passed());
        let s = FinSet;
        let src = s.tensor(c.hom(0, 1), c.hom(1, 3));
        let bad = s.function(&src, c.hom(0, 3), vec![1]).unwrap();
        let r = validate_category(&c.with_comp(0, 1, 3, bad).unwrap());
        assert_eq!(r.failures.len(), 1, "{r}");
        assert_eq!(r.failures[0].check, "associativity");
        assert_eq!(r.failures[0].witness, "(0, 1, 2, 3)");
    }

    #[test]
    fn preorders_are_valid_bool_categories() {
        let le = vec![vec![true, true, true], vec![false, true, true], vec![false, true, true]];
        let c = preorder_category(Bool, vec!["a".into(), "b".into(), "c".into()], &le).unwrap();
        assert!(validate_category(&c).passed());
        let bad = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(preorder_category(Bool, vec!["a".into(), "b".into(), "c".into()], &bad).is_err());
    }

    #[test]
    fn interval_and_chaotic() {
        let i2 = interval_category(2, Bool);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(*i2.hom(x, y), x <= y);
            }
        }
        assert_eq!(e_category(0, FinSet), interval_category(0, FinSet));
        for n in 0..=3 {
            assert!(validate_category(&interval_category(n, FinSet)).passed());
            assert!(validate_category(&e_category(n, FinSet)).passed());
            assert!(validate_category(&e_category(n, Bool)).passed());
            assert!(validate_category(&e_category(n, FinVect::new(2).unwrap())).passed());
        }
        let u = underlying_category(&e_category(1, FinSet), 100).unwrap();
        assert_eq!(u.num_objects(), 2);
        assert_eq!(u.hom(0, 1).len(), 1);
        assert_eq!(u.hom(1, 0).len(), 1);
    }

    #[test]
    fn underlying_categories() {
        let v = FinVect::new(2).unwrap();
        let c = interval_category(1, v).relabeled(vec!["a".into(), "b".into()]).unwrap();
        // every hom of dimension 1 has two global elements
        let u = underlying_category(&c, 100).unwrap();
        assert_eq!(u.hom(0, 1).len(), 2);
        assert_eq!(u.hom(1, 0).len(), 1);
        let p = underlying_category(&interval_category(3, FinSet), 100).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(p.hom(x, y).len(), usize::from(x <= y));
            }
        }
    }

    #[test]
    fn completeness_examples() {
        assert!(!is_complete_truncated(&e_category(1, FinSet)).unwrap());
        assert!(is_complete_truncated(&interval_category(3, FinSet)).unwrap());
        let z2 = monoid(&[vec![0, 1], vec![1, 0]], 0);
        assert!(!is_complete_truncated(&z2).unwrap());
    }

    #[test]
    fn tensoring_with_an_interval() {
        let c = monoid(&[vec![0, 1], vec![1, 0]], 0);
        let t = tensor_with_interval(&c, 1);
        assert_eq!(t.num_objects(), 2);
        assert_eq!(t.hom(0, 1).len(), 2);
        assert_eq!(t.hom(1, 0).len(), 0);
        assert!(validate_category(&t).passed());
        let t0 = tensor_with_interval(&c, 0);
        assert_eq!(t0.relabeled(c.objects().to_vec()).unwrap(), c);
    }

    #[test]
    fn change_of_base_examples() {
        let c = chain_with_extra();
        let b = change_of_base(&Support, &c).unwrap();
        assert!(validate_category(&b).passed());
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(*b.hom(x, y), x <= y);
            }
        }
        let lin = change_of_base(&Linearize::new(2).unwrap(), &interval_category(1, FinSet)).unwrap();
        assert_eq!(*lin.hom(0, 1), 1);
        assert_eq!(*lin.hom(1, 0), 0);
        assert!(validate_category(&lin).passed());
    }

    #[test]
    fn functor_checks() {
        let c = Arc::new(chain_with_extra());
        let id = VFunctor::identity(c.clone());
        assert!(validate_functor(&id).passed());
        let t = Arc::new(tensor_with_interval(&c, 1));
        for i in 0..2 {
            let inc = vertex_inclusion(c.clone(), t.clone(), i).unwrap();
            assert!(validate_functor(&inc).passed());
        }
    }

    #[test]
    fn corrupted_hom_map_is_localized() {
        // 0 < 1 < 2 with C(0,2) = {u, v}; swapping u and v breaks one equation
        let s = FinSet;
        let hom = |i: usize, j: usize| -> FinSetObj {
            if i > j {
                s.initial_object()
            } else if (i, j) == (0, 2) {
                s.object(["u", "v"]).unwrap()
            } else {
                s.object([format!("a{i}{j}")]).unwrap()
            }
        };
        let c = VCategory::from_fn(
            s,
            vec!["0".into(), "1".into(), "2".into()],
            hom,
            |i| s.element(&hom(i, i), 0),
            |i, j, k| {
                let src = s.tensor(&hom(i, j), &hom(j, k));
                let tgt = hom(i, k);
                if src.is_empty() {
                    return s.from_initial(&src, &tgt);
                }
                let table = if i == j || j == k { (0..src.len()).collect() } else { vec![0; src.len()] };
                s.function(&src, &tgt, table)
            },
        )
        .unwrap();
        assert!(validate_category(&c).passed());
        let c = Arc::new(c);
        let id = VFunctor::identity(c.clone());
        let swap = s.function(c.hom(0, 2), c.hom(0, 2), vec![1, 0]).unwrap();
        let r = validate_functor(&id.with_hom_map(0, 2, swap).unwrap());
        assert_eq!(r.failures.len(), 1, "{r}");
        assert_eq!(r.failures[0].witness, "(0, 1, 2)");
    }
}
