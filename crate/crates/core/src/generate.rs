//! Small test instances: random concrete categories and bimodules over
//! FinSet, and exhaustive or random preorders and relations over Bool.
//!
//! A concrete category assigns each object a small carrier set and takes
//! its homs to be sets of functions between carriers closed under
//! composition. Bimodules are likewise sets of functions closed under pre-
//! and postcomposition, so every generated instance satisfies the axioms.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bimodule::{relation_bimodule, VBimodule};
use crate::enriched::{preorder_category, VCategory};
use crate::error::Result;
use crate::vbackend::{Backend, Bool, FinSet, FinSetObj};

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Table = Vec<usize>;

fn then(f: &Table, g: &Table) -> Table {
    f.iter().map(|&i| g[i]).collect()
}

fn random_table(rng: &mut impl Rng, from: usize, to: usize) -> Table {
    (0..from).map(|_| rng.gen_range(0..to)).collect()
}

/// The element label of a function table: its digits, or `-` when empty.
pub fn label(t: &Table) -> String {
    if t.is_empty() {
        return "-".into();
    }
    t.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("")
}

fn set_of(tables: &BTreeSet<Table>) -> FinSetObj {
    FinSet.object(tables.iter().map(label)).expect("distinct tables")
}

fn index_of(tables: &BTreeSet<Table>, t: &Table) -> usize {
    tables.iter().position(|u| u == t).expect("closed under composition")
}

/// A category of functions between small carrier sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Concrete {
    pub names: Vec<String>,
    pub carriers: Vec<usize>,
    /// `homs[x * n + y]`: functions from carrier `x` to carrier `y`.
    pub homs: Vec<BTreeSet<Table>>,
}

impl Concrete {
    /// Random generators closed under composition; retried until every hom
    /// has at most `max_hom` elements.
    pub fn random(rng: &mut impl Rng, prefix: &str, objects: usize, max_carrier: usize, max_hom: usize) -> Self {
        loop {
            let carriers: Vec<usize> = (0..objects).map(|_| rng.gen_range(1..=max_carrier)).collect();
            let n = objects;
            let mut homs = vec![BTreeSet::new(); n * n];
            for x in 0..n {
                homs[x * n + x].insert((0..carriers[x]).collect());
            }
            for x in 0..n {
                for y in 0..n {
                    if rng.gen_bool(0.5) {
                        homs[x * n + y].insert(random_table(rng, carriers[x], carriers[y]));
                    }
                }
            }
            if close_category(&mut homs, n, max_hom) {
                return Concrete {
                    names: (0..n).map(|i| format!("{prefix}{i}")).collect(),
                    carriers,
                    homs,
                };
            }
        }
    }

    /// The closure of the given generators `(x, y, table)` under
    /// composition, with identities added. `None` when a hom outgrows
    /// `max_hom`.
    pub fn from_generators(
        names: Vec<String>,
        carriers: Vec<usize>,
        generators: &[(usize, usize, Vec<usize>)],
        max_hom: usize,
    ) -> Option<Self> {
        let n = carriers.len();
        let mut homs = vec![BTreeSet::new(); n * n];
        for x in 0..n {
            homs[x * n + x].insert((0..carriers[x]).collect());
        }
        for (x, y, t) in generators {
            homs[x * n + y].insert(t.clone());
        }
        close_category(&mut homs, n, max_hom).then_some(Concrete { names, carriers, homs })
    }

    pub fn num_objects(&self) -> usize {
        self.carriers.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> &BTreeSet<Table> {
        &self.homs[x * self.carriers.len() + y]
    }

    pub fn to_category(&self) -> VCategory<FinSet> {
        let s = FinSet;
        VCategory::from_fn(
            s,
            self.names.clone(),
            |x, y| set_of(self.hom(x, y)),
            |x| s.element(&set_of(self.hom(x, x)), index_of(self.hom(x, x), &(0..self.carriers[x]).collect())),
            |x, y, z| {
                let (a, b, c) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
                let table = a
                    .iter()
                    .flat_map(|f| b.iter().map(move |g| index_of(c, &then(f, g))))
                    .collect();
                s.function(&s.tensor(&set_of(a), &set_of(b)), &set_of(c), table)
            },
        )
        .expect("concrete categories are well typed")
    }
}

fn close_category(homs: &mut [BTreeSet<Table>], n: usize, max_hom: usize) -> bool {
    loop {
        let mut added = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let new: Vec<Table> = homs[x * n + y]
                        .iter()
                        .flat_map(|f| homs[y * n + z].iter().map(move |g| then(f, g)))
                        .collect();
                    for t in new {
                        added |= homs[x * n + z].insert(t);
                    }
                    if homs[x * n + z].len() > max_hom {
                        return false;
                    }
                }
            }
        }
        if !added {
            return true;
        }
    }
}

/// A bimodule between concrete categories: `elements[x * |Y| + y]` are
/// functions from the left carrier `x` to the right carrier `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteModule {
    pub elements: Vec<BTreeSet<Table>>,
}

impl ConcreteModule {
    /// Random generators closed under both actions; retried until every
    /// entry has at most `max_size` elements.
    pub fn random(rng: &mut impl Rng, left: &Concrete, right: &Concrete, max_size: usize) -> Self {
        let (nx, ny) = (left.num_objects(), right.num_objects());
        loop {
            let mut elements = vec![BTreeSet::new(); nx * ny];
            for x in 0..nx {
                for y in 0..ny {
                    if rng.gen_bool(0.6) {
                        elements[x * ny + y].insert(random_table(rng, left.carriers[x], right.carriers[y]));
                    }
                }
            }
            if close_module(&mut elements, left, right, max_size) {
                return ConcreteModule { elements };
            }
        }
    }

    /// The closure of the given generators under both actions. `None` when
    /// an entry outgrows `max_size`.
    pub fn from_generators(
        left: &Concrete,
        right: &Concrete,
        generators: &[(usize, usize, Vec<usize>)],
        max_size: usize,
    ) -> Option<Self> {
        let ny = right.num_objects();
        let mut elements = vec![BTreeSet::new(); left.num_objects() * ny];
        for (x, y, t) in generators {
            elements[x * ny + y].insert(t.clone());
        }
        close_module(&mut elements, left, right, max_size).then_some(ConcreteModule { elements })
    }

    /// The hom bimodule of a concrete category.
    pub fn hom(c: &Concrete) -> Self {
        ConcreteModule {
            elements: c.homs.clone(),
        }
    }

    pub fn to_bimodule(
        &self,
        left: &Concrete,
        right: &Concrete,
        left_cat: Arc<VCategory<FinSet>>,
        right_cat: Arc<VCategory<FinSet>>,
    ) -> VBimodule<FinSet> {
        let s = FinSet;
        let ny = right.num_objects();
        let el = |x: usize, y: usize| &self.elements[x * ny + y];
        VBimodule::from_fn(
            left_cat,
            right_cat,
            |x, y| set_of(el(x, y)),
            |xp, x, y| {
                let table = left
                    .hom(xp, x)
                    .iter()
                    .flat_map(|c| el(x, y).iter().map(move |m| index_of(el(xp, y), &then(c, m))))
                    .collect();
                s.function(&s.tensor(&set_of(left.hom(xp, x)), &set_of(el(x, y))), &set_of(el(xp, y)), table)
            },
            |x, y, yp| {
                let table = el(x, y)
                    .iter()
                    .flat_map(|m| right.hom(y, yp).iter().map(move |d| index_of(el(x, yp), &then(m, d))))
                    .collect();
                s.function(&s.tensor(&set_of(el(x, y)), &set_of(right.hom(y, yp))), &set_of(el(x, yp)), table)
            },
        )
        .expect("concrete bimodules are well typed")
    }
}

fn close_module(elements: &mut [BTreeSet<Table>], left: &Concrete, right: &Concrete, max_size: usize) -> bool {
    let (nx, ny) = (left.num_objects(), right.num_objects());
    loop {
        let mut added = false;
        for x in 0..nx {
            for y in 0..ny {
                let current: Vec<Table> = elements[x * ny + y].iter().cloned().collect();
                for m in &current {
                    for xp in 0..nx {
                        for c in left.hom(xp, x) {
                            added |= elements[xp * ny + y].insert(then(c, m));
                        }
                    }
                    for yp in 0..ny {
                        for d in right.hom(y, yp) {
                            added |= elements[x * ny + yp].insert(then(m, d));
                        }
                    }
                }
            }
        }
        if elements.iter().any(|e| e.len() > max_size) {
            return false;
        }
        if !added {
            return true;
        }
    }
}

/// A chain of concrete categories with a bimodule between each adjacent
/// pair, ready to be turned into backend values.
#[derive(Clone, Debug)]
pub struct ConcreteChain {
    pub cats: Vec<Concrete>,
    pub mods: Vec<ConcreteModule>,
}

impl ConcreteChain {
    pub fn random(rng: &mut impl Rng, length: usize, max_objects: usize, max_hom: usize) -> Self {
        let cats: Vec<Concrete> = (0..=length)
            .map(|i| {
                let k = rng.gen_range(1..=max_objects);
                Concrete::random(rng, &format!("{}", (b'a' + i as u8) as char), k, 2, max_hom)
            })
            .collect();
        let mods = (0..length)
            .map(|i| ConcreteModule::random(rng, &cats[i], &cats[i + 1], max_hom))
            .collect();
        ConcreteChain { cats, mods }
    }

    /// The categories (shared) and bimodules as backend values.
    pub fn realize(&self) -> (Vec<Arc<VCategory<FinSet>>>, Vec<VBimodule<FinSet>>) {
        let cats: Vec<Arc<VCategory<FinSet>>> = self.cats.iter().map(|c| Arc::new(c.to_category())).collect();
        let mods = self
            .mods
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_bimodule(&self.cats[i], &self.cats[i + 1], cats[i].clone(), cats[i + 1].clone()))
            .collect();
        (cats, mods)
    }
}

/// A random concrete category as a FinSet category.
pub fn random_finset_category(rng: &mut impl Rng, objects: usize, max_hom: usize) -> VCategory<FinSet> {
    Concrete::random(rng, "c", objects, 2, max_hom).to_category()
}

/// Reflexive-transitive closure of a relation on one set.
pub fn transitive_closure(mut le: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = le.len();
    for i in 0..n {
        le[i][i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// Every preorder on `n` points.
pub fn all_preorders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let cells = n * n;
    let mut out: Vec<Vec<Vec<bool>>> = (0..1u64 << cells)
        .map(|code| {
            (0..n)
                .map(|i| (0..n).map(|j| code >> (i * n + j) & 1 == 1).collect())
                .collect::<Vec<Vec<bool>>>()
        })
        .filter(|le| transitive_closure(le.clone()) == *le)
        .collect();
    out.dedup();
    out
}

pub fn random_preorder(rng: &mut impl Rng, n: usize) -> Vec<Vec<bool>> {
    let le = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.3)).collect()).collect();
    transitive_closure(le)
}

/// Whether `rel` is down-closed in `le_x` and up-closed in `le_y`.
pub fn is_module_relation(le_x: &[Vec<bool>], le_y: &[Vec<bool>], rel: &[Vec<bool>]) -> bool {
    let (nx, ny) = (le_x.len(), le_y.len());
    (0..nx).all(|x| {
        (0..ny).all(|y| {
            !rel[x][y] || ((0..nx).all(|xp| !le_x[xp][x] || rel[xp][y]) && (0..ny).all(|yp| !le_y[y][yp] || rel[x][yp]))
        })
    })
}

/// Every relation between two preorders that is a bimodule.
pub fn all_module_relations(le_x: &[Vec<bool>], le_y: &[Vec<bool>]) -> Vec<Vec<Vec<bool>>> {
    let (nx, ny) = (le_x.len(), le_y.len());
    (0..1u64 << (nx * ny))
        .map(|code| {
            (0..nx)
                .map(|x| (0..ny).map(|y| code >> (x * ny + y) & 1 == 1).collect())
                .collect::<Vec<Vec<bool>>>()
        })
        .filter(|rel| is_module_relation(le_x, le_y, rel))
        .collect()
}

/// The smallest bimodule relation containing a random one.
pub fn random_module_relation(rng: &mut impl Rng, le_x: &[Vec<bool>], le_y: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let (nx, ny) = (le_x.len(), le_y.len());
    let seed: Vec<Vec<bool>> = (0..nx).map(|_| (0..ny).map(|_| rng.gen_bool(0.3)).collect()).collect();
    (0..nx)
        .map(|xp| {
            (0..ny)
                .map(|yp| (0..nx).any(|x| (0..ny).any(|y| le_x[xp][x] && seed[x][y] && le_y[y][yp])))
                .collect()
        })
        .collect()
}

/// A preorder as a Bool category with objects `{prefix}0, {prefix}1, ...`.
pub fn bool_category(prefix: &str, le: &[Vec<bool>]) -> Result<VCategory<Bool>> {
    preorder_category(Bool, (0..le.len()).map(|i| format!("{prefix}{i}")).collect(), le)
}

/// A relation bimodule between two preorders built with [`bool_category`].
pub fn bool_bimodule(
    c: &Arc<VCategory<Bool>>,
    d: &Arc<VCategory<Bool>>,
    rel: &[Vec<bool>],
) -> Result<VBimodule<Bool>> {
    relation_bimodule(c.clone(), d.clone(), rel)
}

/// The preorder underlying a Bool category.
pub fn order_of(c: &VCategory<Bool>) -> Vec<Vec<bool>> {
    let n = c.num_objects();
    (0..n).map(|x| (0..n).map(|y| *c.hom(x, y)).collect()).collect()
}

/// The relation underlying a Bool bimodule.
pub fn relation_of(m: &VBimodule<Bool>) -> Vec<Vec<bool>> {
    let (nx, ny) = (m.left().num_objects(), m.right().num_objects());
    (0..nx).map(|x| (0..ny).map(|y| *m.module(x, y)).collect()).collect()
}

/// Boolean matrix product.
pub fn relation_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|z| (0..inner).any(|y| row[y] && b[y][z])).collect())
        .collect()
}
