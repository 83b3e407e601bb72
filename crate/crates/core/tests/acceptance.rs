//! Acceptance suite: one line per criterion with its check count, time and
//! time target. Exits nonzero if any criterion fails or runs over time.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use vcat::barcomp::{
    associator, bracketing_check, compose_bimodules, oracle_agreement_with, realization_truncation_check, unitor,
    unitor_right,
};
use vcat::bimodule::{validate_square, BimoduleSquare, VBimodule};
use vcat::doublecat::{
    build_composite_algebra, change_of_base_algebra, external_composite_check, reindex_functoriality, segal_check,
    Chain, CompositeAlgebra,
};
use vcat::enriched::{
    change_of_base, e_category, is_complete_truncated, preorder_category, tensor_with_interval, validate_category,
    VCategory,
};
use vcat::funcat::{completeness_check_fun, segal_check_fun, transformation_agreement, FunSpace};
use vcat::generate::{
    self, all_module_relations, all_preorders, bool_bimodule, bool_category, relation_of, ConcreteChain,
};
use vcat::indexcat::{
    build_indexed_category, cofinality_probe, composite_cofinal_map, factorizations, fiber_formula_check,
    final_object_probe, interval_slice,
};
use vcat::simplex::{compose, enumerate_maps, factor_active_inert, is_cellular, is_phi_cellular, SimplexMap};
use vcat::vbackend::{Backend, Bool, FinSet, Linearize, Support};
use vcat::Qualifier;

const BIG: usize = 1 << 22;

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

// ---------------------------------------------------------------- oracles

/// Boolean matrix product, written out directly.
fn bool_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|z| row.iter().zip(b).any(|(&r, s)| r && s[z])).collect())
        .collect()
}

/// Size of the coend quotient of `⊔_y M(x,y) × N(y,z)` by
/// `(m·b, n) ~ (m, b·n)`, by union-find on explicit triples.
fn coend_size(m: &VBimodule<FinSet>, n: &VBimodule<FinSet>, x: usize, z: usize) -> usize {
    let ny = m.right().num_objects();
    let mut offset = vec![0];
    for y in 0..ny {
        let last = *offset.last().unwrap();
        offset.push(last + m.module(x, y).len() * n.module(y, z).len());
    }
    let at = |y: usize, a: usize, c: usize| offset[y] + a * n.module(y, z).len() + c;
    let mut parent: Vec<usize> = (0..offset[ny]).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    let b = m.right();
    for y in 0..ny {
        for y2 in 0..ny {
            let hb = b.hom(y, y2).len();
            for g in 0..hb {
                for a in 0..m.module(x, y).len() {
                    for c in 0..n.module(y2, z).len() {
                        let moved_a = m.right_act(x, y, y2).apply(a * hb + g);
                        let moved_c = n.left_act(y, y2, z).apply(g * n.module(y2, z).len() + c);
                        let (r1, r2) = (root(&mut parent, at(y2, moved_a, c)), root(&mut parent, at(y, a, moved_c)));
                        parent[r1] = r2;
                    }
                }
            }
        }
    }
    (0..offset[ny]).filter(|&i| root(&mut parent, i) == i).count()
}

/// Monotone maps from `X × [n]` with the product order into `D`.
fn monotone_count(x: &[Vec<bool>], n: usize, d: &[Vec<bool>]) -> usize {
    let pts: Vec<(usize, usize)> = (0..=n).flat_map(|i| (0..x.len()).map(move |a| (a, i))).collect();
    let m = d.len();
    (0..m.pow(pts.len() as u32))
        .filter(|&code| {
            let f: Vec<usize> = (0..pts.len()).map(|p| code / m.pow(p as u32) % m).collect();
            pts.iter().enumerate().all(|(p, &(a, i))| {
                pts.iter().enumerate().all(|(q, &(b, j))| !(x[a][b] && i <= j) || d[f[p]][f[q]])
            })
        })
        .count()
}

fn antisymmetric(le: &[Vec<bool>]) -> bool {
    (0..le.len()).all(|i| (0..le.len()).all(|j| i == j || !(le[i][j] && le[j][i])))
}

fn preorders_up_to(n: usize) -> Vec<Vec<Vec<bool>>> {
    (1..=n).flat_map(all_preorders).collect()
}

fn square_sizes_match(s: &BimoduleSquare<FinSet>) -> bool {
    let (nx, nz) = (s.top.left().num_objects(), s.top.right().num_objects());
    (0..nx).all(|x| (0..nz).all(|z| s.top.module(x, z).len() == s.bottom.module(x, z).len()))
}

fn finset_algebra(chain: &ConcreteChain) -> CompositeAlgebra<FinSet> {
    let (cats, mods) = chain.realize();
    let ch = Chain::new(cats, mods.into_iter().map(Arc::new).collect()).unwrap();
    build_composite_algebra(&ch).unwrap()
}

fn bool_chain(les: &[Vec<Vec<bool>>], rels: &[Vec<Vec<bool>>]) -> Chain<Bool> {
    let cats: Vec<Arc<VCategory<Bool>>> = les
        .iter()
        .enumerate()
        .map(|(i, le)| Arc::new(bool_category(&format!("c{i}_"), le).unwrap()))
        .collect();
    let mods = rels
        .iter()
        .enumerate()
        .map(|(i, r)| Arc::new(bool_bimodule(&cats[i], &cats[i + 1], r).unwrap()))
        .collect();
    Chain::new(cats, mods).unwrap()
}

// -------------------------------------------------------------- criteria

fn oracle_equivalence() -> Tally {
    let mut t = Tally::default();
    let orders = preorders_up_to(2);
    for lx in &orders {
        for ly in &orders {
            for lz in &orders {
                let cx = Arc::new(bool_category("x", lx).unwrap());
                let cy = Arc::new(bool_category("y", ly).unwrap());
                let cz = Arc::new(bool_category("z", lz).unwrap());
                for r in all_module_relations(lx, ly) {
                    let m = bool_bimodule(&cx, &cy, &r).unwrap();
                    for s in all_module_relations(ly, lz) {
                        let n = bool_bimodule(&cy, &cz, &s).unwrap();
                        let w = compose_bimodules(&m, &n).unwrap();
                        t.check(relation_of(&w.bimodule) == bool_product(&r, &s), || format!("{r:?} ; {s:?}"));
                        let rep = oracle_agreement_with(&m, &n, &w).unwrap();
                        t.check(rep.passed(), || rep.render());
                    }
                }
            }
        }
    }
    let bool_checks = t.checks;
    let mut rng = generate::rng(1);
    for i in 0..200 {
        let (_, mods) = ConcreteChain::random(&mut rng, 2, 3, 3).realize();
        let (m, n) = (&mods[0], &mods[1]);
        let w = compose_bimodules(m, n).unwrap();
        for x in 0..m.left().num_objects() {
            for z in 0..n.right().num_objects() {
                t.check(w.bimodule.module(x, z).len() == coend_size(m, n, x, z), || {
                    format!("instance {i} at ({x}, {z})")
                });
            }
        }
        let rep = oracle_agreement_with(m, n, &w).unwrap();
        t.check(rep.passed(), || format!("instance {i}: {}", rep.render()));
    }
    t.notes.push(format!("{} bool checks", bool_checks));
    t
}

fn reflexive_coequalizer() -> Tally {
    let mut t = Tally::default();
    let mut rng = generate::rng(2);
    for i in 0..10 {
        let (_, mods) = ConcreteChain::random(&mut rng, 2, 2, 3).realize();
        let rep = realization_truncation_check(&mods[0], &mods[1], 3).unwrap();
        t.check(rep.passed(), || format!("instance {i}: {}", rep.render()));
    }
    t
}

fn unit_and_associativity() -> Tally {
    let mut t = Tally::default();
    let mut rng = generate::rng(3);
    for i in 0..100 {
        let (_, mods) = ConcreteChain::random(&mut rng, 1, 2, 2).realize();
        let s = unitor(&mods[0]).unwrap();
        t.check(s.is_invertible() && square_sizes_match(&s), || format!("left unitor {i}"));
        t.check(validate_square(&s).passed(), || format!("left unitor square {i}"));
    }
    for i in 0..100 {
        let (_, mods) = ConcreteChain::random(&mut rng, 1, 2, 2).realize();
        let s = unitor_right(&mods[0]).unwrap();
        t.check(s.is_invertible() && square_sizes_match(&s), || format!("right unitor {i}"));
        t.check(validate_square(&s).passed(), || format!("right unitor square {i}"));
    }
    for i in 0..100 {
        let (_, mods) = ConcreteChain::random(&mut rng, 3, 2, 2).realize();
        let s = associator(&mods[0], &mods[1], &mods[2]).unwrap();
        t.check(s.is_invertible() && square_sizes_match(&s), || format!("associator {i}"));
        t.check(validate_square(&s).passed(), || format!("associator square {i}"));
    }
    for i in 0..25 {
        let (_, mods) = ConcreteChain::random(&mut rng, 4, 2, 2).realize();
        let rep = bracketing_check(&mods[0], &mods[1], &mods[2], &mods[3]).unwrap();
        t.check(rep.passed(), || format!("four-chain {i}: {}", rep.render()));
    }
    t
}

fn segal_condition() -> Tally {
    let mut t = Tally::default();
    let orders = preorders_up_to(2);
    for l0 in &orders {
        for l1 in &orders {
            for l2 in &orders {
                for r in all_module_relations(l0, l1) {
                    for s in all_module_relations(l1, l2) {
                        let ch = bool_chain(&[l0.clone(), l1.clone(), l2.clone()], &[r.clone(), s.clone()]);
                        let alg = build_composite_algebra(&ch).unwrap();
                        t.check(relation_of(alg.entry(0, 2)) == bool_product(&r, &s), || format!("{r:?} ; {s:?}"));
                        let rep = segal_check(&alg).unwrap();
                        t.check(rep.passed(), || rep.render());
                    }
                }
            }
        }
    }
    let mut rng = generate::rng(4);
    let mut located = 0;
    for i in 0..20 {
        let alg = finset_algebra(&ConcreteChain::random(&mut rng, 3, 2, 3));
        let rep = segal_check(&alg).unwrap();
        t.check(rep.passed(), || format!("chain {i}: {}", rep.render()));
        let top = (0..alg.chain().cat(0).num_objects())
            .any(|x| (0..alg.chain().cat(3).num_objects()).any(|z| !alg.entry(0, 3).module(x, z).is_empty()));
        if top {
            let bad = segal_check(&alg.with_top_entry_doubled().unwrap()).unwrap();
            t.check(!bad.passed(), || format!("doubled chain {i} passed"));
            t.check(bad.failures.iter().all(|f| f.witness.contains("(0, 3)")), || {
                format!("doubled chain {i}: {}", bad.render())
            });
            located += 1;
        }
    }
    t.check(located > 0, || "no chain had a nonempty top entry".into());
    t.notes.push(format!("{located} faults located"));
    t
}

fn simplicial_functoriality() -> Tally {
    let mut t = Tally::default();
    let mut rng = generate::rng(5);
    for a in 0..5 {
        let alg = finset_algebra(&ConcreteChain::random(&mut rng, 3, 2, 2));
        for m in 0..=3 {
            for phi in enumerate_maps(m, 3).unwrap() {
                for l in 0..=3 {
                    for psi in enumerate_maps(l, m).unwrap() {
                        let rep = reindex_functoriality(&alg, &phi, &psi).unwrap();
                        t.check(rep.passed(), || format!("algebra {a}, {phi}, {psi}: {}", rep.render()));
                    }
                }
            }
        }
    }
    t
}

fn interval_tensor_tables() -> Tally {
    fn table<B: Backend>(t: &mut Tally, c: &VCategory<B>, what: &str) {
        let k = c.num_objects();
        let b = c.backend();
        for n in 0..=2 {
            let cn = tensor_with_interval(c, n);
            t.check(cn.num_objects() == k * (n + 1), || format!("{what}: object count at n = {n}"));
            for p in 0..cn.num_objects() {
                for q in 0..cn.num_objects() {
                    let ((x, i), (y, j)) = ((p % k, p / k), (q % k, q / k));
                    let expected = if i <= j { c.hom(x, y).clone() } else { b.initial_object() };
                    t.check(*cn.hom(p, q) == expected, || format!("{what}: hom ({x},{i}) -> ({y},{j}) at n = {n}"));
                }
            }
            t.check(validate_category(&cn).passed(), || format!("{what}: axioms at n = {n}"));
        }
    }
    let mut t = Tally::default();
    for le in preorders_up_to(2) {
        table(&mut t, &bool_category("p", &le).unwrap(), "bool");
    }
    let mut rng = generate::rng(6);
    let lin = Linearize::new(2).unwrap();
    for i in 0..10 {
        let k = 1 + i % 2;
        let c = generate::random_finset_category(&mut rng, k, 3);
        table(&mut t, &c, "finset");
        table(&mut t, &change_of_base(&lin, &c).unwrap(), "finvect");
    }
    t
}

fn functor_segal_space() -> Tally {
    let mut t = Tally::default();
    for x in preorders_up_to(2) {
        for d in preorders_up_to(2) {
            let names = |n: usize, p: &str| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
            let c = Arc::new(preorder_category(Bool, names(x.len(), "c"), &x).unwrap());
            let dd = Arc::new(preorder_category(Bool, names(d.len(), "d"), &d).unwrap());
            let space = FunSpace::new(&c, &dd, 3, BIG).unwrap();
            for n in 0..=3 {
                t.check(space.level(n).len() == monotone_count(&x, n, &d), || format!("{x:?} -> {d:?} level {n}"));
            }
            for n in [2, 3] {
                let rep = segal_check_fun(&space, n).unwrap();
                t.check(rep.passed(), || rep.render());
            }
            let rep = transformation_agreement(&space, BIG).unwrap();
            t.check(rep.passed(), || rep.render());
        }
    }
    let mut rng = generate::rng(7);
    for i in 0..5 {
        let c = Arc::new(generate::random_finset_category(&mut rng, 1 + i % 2, 2));
        let d = Arc::new(generate::random_finset_category(&mut rng, 2, 2));
        let space = FunSpace::new(&c, &d, 3, BIG).unwrap();
        for n in [2, 3] {
            let rep = segal_check_fun(&space, n).unwrap();
            t.check(rep.passed(), || format!("pair {i}: {}", rep.render()));
        }
        let rep = transformation_agreement(&space, BIG).unwrap();
        t.check(rep.passed(), || format!("pair {i}: {}", rep.render()));
    }
    t
}

fn completeness() -> Tally {
    let mut t = Tally::default();
    let mut gaunt_targets = 0;
    for x in preorders_up_to(2) {
        for d in preorders_up_to(2) {
            let c = Arc::new(bool_category("c", &x).unwrap());
            let dd = Arc::new(bool_category("d", &d).unwrap());
            let gaunt = is_complete_truncated(&dd).unwrap();
            t.check(gaunt == antisymmetric(&d), || format!("gaunt {d:?}"));
            let rep = completeness_check_fun(&FunSpace::new(&c, &dd, 1, BIG).unwrap(), BIG).unwrap();
            t.check(rep.qualifier == Qualifier::Pi0Surrogate, || "qualifier".into());
            if gaunt {
                gaunt_targets += 1;
                t.check(rep.passed(), || rep.render());
            }
        }
    }
    let mut rng = generate::rng(8);
    for i in 0..10 {
        let c = Arc::new(generate::random_finset_category(&mut rng, 1 + i % 2, 2));
        let d = Arc::new(generate::random_finset_category(&mut rng, 2, 3));
        if is_complete_truncated(&d).unwrap() {
            gaunt_targets += 1;
            let rep = completeness_check_fun(&FunSpace::new(&c, &d, 1, BIG).unwrap(), BIG).unwrap();
            t.check(rep.passed(), || format!("finset pair {i}: {}", rep.render()));
        }
    }
    let one = Arc::new(bool_category("c", &[vec![true]]).unwrap());
    let e1 = Arc::new(e_category(1, Bool));
    t.check(!is_complete_truncated(&e1).unwrap(), || "E^1 counted as gaunt".into());
    let rep = completeness_check_fun(&FunSpace::new(&one, &e1, 1, BIG).unwrap(), BIG).unwrap();
    t.check(!rep.passed() && rep.failures.iter().all(|f| !f.witness.is_empty()), || rep.render());
    let e1s = Arc::new(e_category(1, FinSet));
    let ones = Arc::new(vcat::barcomp::unit_category(FinSet));
    let rep = completeness_check_fun(&FunSpace::new(&ones, &e1s, 1, BIG).unwrap(), BIG).unwrap();
    t.check(!rep.passed(), || "finset E^1 passed".into());
    t.notes.push(format!("{gaunt_targets} gaunt targets"));
    t
}

fn simplex_combinatorics() -> Tally {
    let mut t = Tally::default();
    for m in 0..=5 {
        for n in 0..=5 {
            // every (active, inert) pair through every middle rank, counted by composite
            let mut composites: HashMap<SimplexMap, usize> = HashMap::new();
            for k in 0..=n {
                let actives: Vec<SimplexMap> = enumerate_maps(m, k).unwrap().into_iter().filter(|a| a.is_active()).collect();
                for i in enumerate_maps(k, n).unwrap().iter().filter(|i| i.is_inert()) {
                    for a in &actives {
                        *composites.entry(compose(a, i).unwrap()).or_default() += 1;
                    }
                }
            }
            let maps = enumerate_maps(m, n).unwrap();
            for f in &maps {
                let (a, i) = factor_active_inert(f);
                t.check(a.is_active() && i.is_inert() && compose(&a, &i).unwrap() == *f, || format!("{f}"));
                let found = composites.get(f).copied().unwrap_or(0);
                t.check(found == 1, || format!("{f} has {found} factorizations"));
            }
            if m <= 4 && n <= 4 {
                let id = SimplexMap::identity(n);
                for f in &maps {
                    let gaps = f.values().windows(2).all(|w| w[1] - w[0] <= 1);
                    t.check(is_phi_cellular(f, &id).unwrap() == gaps && is_cellular(f) == gaps, || format!("{f}"));
                }
            }
        }
    }
    t
}

fn fiber_formula() -> Tally {
    let mut t = Tally::default();
    for code in 0..8 {
        let sizes: Vec<usize> = (0..3).map(|i| 1 + (code >> i & 1)).collect();
        let ic = build_indexed_category(&sizes, true, 2, BIG).unwrap();
        let full = build_indexed_category(&sizes, false, 2, BIG).unwrap();
        for target in full.category().objects() {
            for (phi, eta) in factorizations(&ic, target).unwrap() {
                let rep = fiber_formula_check(&ic, target, &phi, &eta).unwrap();
                t.check(rep.passed(), || format!("{sizes:?} {target}: {}", rep.render()));
            }
        }
    }
    t
}

fn finality_shadows() -> Tally {
    let mut t = Tally::default();
    for x in 1..=2 {
        for n in 0..=2 {
            let ic = build_indexed_category(&vec![x; n + 1], false, 3, BIG).unwrap();
            let width = x * (n + 1);
            for len in 1..=4 {
                for code in 0..width.pow(len as u32) {
                    let labels: Vec<usize> = (0..len).map(|i| code / width.pow(i as u32) % width).collect();
                    let slice = interval_slice(&ic, &labels).unwrap();
                    let monotone = labels.windows(2).all(|w| w[0] / x <= w[1] / x);
                    t.check((slice.num_objects() == 0) == !monotone, || format!("emptiness over {labels:?}"));
                    let rep = final_object_probe(&slice);
                    t.check(rep.passed(), || format!("{labels:?}: {}", rep.render()));
                }
            }
        }
    }
    let mut qualified = true;
    for code in 0..8 {
        let s: Vec<usize> = (0..3).map(|i| 1 + (code >> i & 1)).collect();
        for x in 0..s[0] {
            for z in 0..s[2] {
                let (ys, slice, f) = composite_cofinal_map([s[0], s[1], s[2]], x, z, 3, BIG).unwrap();
                let rep = cofinality_probe(ys.category(), &slice, &f, BIG).unwrap();
                qualified &= rep.qualifier == Qualifier::NecessaryOnly;
                t.check(rep.passed(), || format!("{s:?} ({x}, {z}): {}", rep.render()));
            }
        }
    }
    t.check(qualified, || "cofinality reports must be NECESSARY-ONLY".into());
    t.notes.push("cofinality: NECESSARY-ONLY".into());
    t
}

fn change_of_base_and_external() -> Tally {
    let mut t = Tally::default();
    let mut rng = generate::rng(12);
    for i in 0..50 {
        let chain = ConcreteChain::random(&mut rng, 2, 3, 3);
        let alg = finset_algebra(&chain);
        let image = change_of_base_algebra(&Support, &alg).unwrap();
        let rep = segal_check(&image).unwrap();
        t.check(rep.passed(), || format!("instance {i}: {}", rep.render()));
        // supports compose as relations
        let (_, mods) = chain.realize();
        let support = |m: &VBimodule<FinSet>| -> Vec<Vec<bool>> {
            (0..m.left().num_objects())
                .map(|x| (0..m.right().num_objects()).map(|y| !m.module(x, y).is_empty()).collect())
                .collect()
        };
        let expected = bool_product(&support(&mods[0]), &support(&mods[1]));
        t.check(relation_of(image.entry(0, 2)) == expected, || format!("instance {i}: support of the composite"));
    }
    for i in 0..20 {
        let a = finset_algebra(&ConcreteChain::random(&mut rng, 2, 2, 2));
        let les: Vec<Vec<Vec<bool>>> = (0..3).map(|_| generate::random_preorder(&mut rng, 1 + i % 2)).collect();
        let rels: Vec<Vec<Vec<bool>>> =
            (0..2).map(|k| generate::random_module_relation(&mut rng, &les[k], &les[k + 1])).collect();
        let b = build_composite_algebra(&bool_chain(&les, &rels)).unwrap();
        let rep = external_composite_check(&a, &b).unwrap();
        t.check(rep.passed(), || format!("pair {i}: {}", rep.render()));
    }
    t
}

fn main() {
    let criteria: [(&str, f64, fn() -> Tally); 12] = [
        ("oracle equivalence of composites", 60.0, oracle_equivalence),
        ("reflexive coequalizer suffices", 30.0, reflexive_coequalizer),
        ("unit and associativity of composition", 60.0, unit_and_associativity),
        ("Segal condition for composite algebras", 60.0, segal_condition),
        ("simplicial functoriality of reindexing", 30.0, simplicial_functoriality),
        ("hom tables of C ⊗ [n]", 5.0, interval_tensor_tables),
        ("functor Segal space", 120.0, functor_segal_space),
        ("completeness of functor spaces", 30.0, completeness),
        ("simplex combinatorics", 10.0, simplex_combinatorics),
        ("fiber formula", 30.0, fiber_formula),
        ("finality and cofinality shadows", 60.0, finality_shadows),
        ("change of base and external products", 60.0, change_of_base_and_external),
    ];
    let only: BTreeSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut all = true;
    for (i, (name, target, run)) in criteria.iter().enumerate() {
        let k = i + 1;
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let t = run();
        let secs = start.elapsed().as_secs_f64();
        let ok = t.failures.is_empty() && t.checks > 0 && secs < *target;
        all &= ok;
        let notes = if t.notes.is_empty() { String::new() } else { format!("; {}", t.notes.join("; ")) };
        println!(
            "criterion {k:>2} {}: {name} ({} checks, {} failures, {secs:.2}s of {target:.0}s{notes})",
            if ok { "PASS" } else { "FAIL" },
            t.checks,
            t.failures.len()
        );
        for f in t.failures.iter().filter(|f| !f.is_empty()) {
            println!("    {f}");
        }
    }
    if !all {
        std::process::exit(1);
    }
}
