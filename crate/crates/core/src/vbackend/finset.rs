use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{Backend, BackendDescriptor, Coequalizer, Coproduct};
use crate::error::{Error, Result};

/// Finite sets and functions, with cartesian product as tensor.
///
/// Element order is part of the data: `a ⊗ b` lists `(a_i, b_j)` at index
/// `i * |b| + j`, and a coproduct lists its summands one after another.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FinSet;

struct Labels {
    labels: Vec<String>,
    hash: u64,
}

/// A finite set of distinct string labels.
#[derive(Clone)]
pub struct FinSetObj(Arc<Labels>);

impl FinSetObj {
    fn from_vec(labels: Vec<String>) -> Self {
        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        FinSetObj(Arc::new(Labels {
            hash: h.finish(),
            labels,
        }))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }
}

impl PartialEq for FinSetObj {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash && self.0.labels == other.0.labels)
    }
}

impl Eq for FinSetObj {}

impl Hash for FinSetObj {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.labels.join(", "))
    }
}

/// A total function between finite sets, stored as a table of indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSetMor {
    source: FinSetObj,
    target: FinSetObj,
    table: Vec<usize>,
}

impl FinSetMor {
    pub fn source(&self) -> &FinSetObj {
        &self.source
    }

    pub fn target(&self) -> &FinSetObj {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }
}

impl fmt::Debug for FinSetMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.source.label(i), self.target.label(j)))
            .collect();
        write!(f, "[{}]", pairs.join(", "))
    }
}

impl FinSet {
    /// A set with the given labels, which must be distinct.
    pub fn object<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<FinSetObj> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Shape(format!("duplicate label {l:?}")));
            }
        }
        Ok(FinSetObj::from_vec(labels))
    }

    /// The set `{0, ..., n-1}` with decimal labels.
    pub fn numbered(&self, n: usize) -> FinSetObj {
        FinSetObj::from_vec((0..n).map(|i| i.to_string()).collect())
    }

    pub fn function(&self, source: &FinSetObj, target: &FinSetObj, table: Vec<usize>) -> Result<FinSetMor> {
        if table.len() != source.len() || table.iter().any(|&t| t >= target.len()) {
            return Err(Error::Shape(format!(
                "table {table:?} is not a function {source:?} -> {target:?}"
            )));
        }
        Ok(FinSetMor {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    /// The function sending every element to `target[value]`.
    pub fn constant(&self, source: &FinSetObj, target: &FinSetObj, value: usize) -> Result<FinSetMor> {
        self.function(source, target, vec![value; source.len()])
    }

    /// The function `I -> a` picking element `i`.
    pub fn element(&self, a: &FinSetObj, i: usize) -> Result<FinSetMor> {
        self.function(&self.unit_object(), a, vec![i])
    }

    fn mor(source: FinSetObj, target: FinSetObj, table: Vec<usize>) -> FinSetMor {
        debug_assert_eq!(table.len(), source.len());
        FinSetMor {
            source,
            target,
            table,
        }
    }

    fn same_table(&self, source: FinSetObj, target: FinSetObj) -> FinSetMor {
        let table = (0..source.len()).collect();
        Self::mor(source, target, table)
    }
}

fn pair_label(a: &str, b: &str) -> String {
    let mut s = String::with_capacity(a.len() + b.len() + 3);
    s.push('(');
    s.push_str(a);
    s.push(',');
    s.push_str(b);
    s.push(')');
    s
}

fn offsets(objs: &[FinSetObj]) -> Vec<usize> {
    let mut acc = 0;
    let mut out = Vec::with_capacity(objs.len() + 1);
    for o in objs {
        out.push(acc);
        acc += o.len();
    }
    out.push(acc);
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl Backend for FinSet {
    type Obj = FinSetObj;
    type Mor = FinSetMor;

    fn descriptor(&self) -> BackendDescriptor {
        BackendDescriptor::FinSet
    }

    fn source(&self, f: &FinSetMor) -> FinSetObj {
        f.source.clone()
    }

    fn target(&self, f: &FinSetMor) -> FinSetObj {
        f.target.clone()
    }

    fn identity(&self, a: &FinSetObj) -> FinSetMor {
        self.same_table(a.clone(), a.clone())
    }

    fn compose(&self, f: &FinSetMor, g: &FinSetMor) -> Result<FinSetMor> {
        if f.target != g.source {
            return Err(Error::NotComposable(format!(
                "{:?} does not match {:?}",
                f.target, g.source
            )));
        }
        let table = f.table.iter().map(|&i| g.table[i]).collect();
        Ok(Self::mor(f.source.clone(), g.target.clone(), table))
    }

    fn unit_object(&self) -> FinSetObj {
        FinSetObj::from_vec(vec!["*".to_string()])
    }

    fn initial_object(&self) -> FinSetObj {
        FinSetObj::from_vec(Vec::new())
    }

    fn is_initial(&self, a: &FinSetObj) -> bool {
        a.is_empty()
    }

    fn from_initial(&self, source: &FinSetObj, target: &FinSetObj) -> Result<FinSetMor> {
        if !source.is_empty() {
            return Err(Error::Precondition(format!("{source:?} is not empty")));
        }
        Ok(Self::mor(source.clone(), target.clone(), Vec::new()))
    }

    fn tensor(&self, a: &FinSetObj, b: &FinSetObj) -> FinSetObj {
        let mut labels = Vec::with_capacity(a.len() * b.len());
        for x in a.labels() {
            for y in b.labels() {
                labels.push(pair_label(x, y));
            }
        }
        FinSetObj::from_vec(labels)
    }

    fn tensor_mor(&self, f: &FinSetMor, g: &FinSetMor) -> FinSetMor {
        let n = g.target.len();
        let mut table = Vec::with_capacity(f.table.len() * g.table.len());
        for &i in &f.table {
            for &j in &g.table {
                table.push(i * n + j);
            }
        }
        Self::mor(
            self.tensor(&f.source, &g.source),
            self.tensor(&f.target, &g.target),
            table,
        )
    }

    fn left_unitor(&self, a: &FinSetObj) -> FinSetMor {
        self.same_table(self.tensor(&self.unit_object(), a), a.clone())
    }

    fn right_unitor(&self, a: &FinSetObj) -> FinSetMor {
        self.same_table(self.tensor(a, &self.unit_object()), a.clone())
    }

    fn associator(&self, a: &FinSetObj, b: &FinSetObj, c: &FinSetObj) -> FinSetMor {
        self.same_table(
            self.tensor(&self.tensor(a, b), c),
            self.tensor(a, &self.tensor(b, c)),
        )
    }

    fn left_unitor_inv(&self, a: &FinSetObj) -> FinSetMor {
        self.same_table(a.clone(), self.tensor(&self.unit_object(), a))
    }

    fn right_unitor_inv(&self, a: &FinSetObj) -> FinSetMor {
        self.same_table(a.clone(), self.tensor(a, &self.unit_object()))
    }

    fn associator_inv(&self, a: &FinSetObj, b: &FinSetObj, c: &FinSetObj) -> FinSetMor {
        self.same_table(
            self.tensor(a, &self.tensor(b, c)),
            self.tensor(&self.tensor(a, b), c),
        )
    }

    fn coproduct(&self, objs: &[FinSetObj]) -> Coproduct<Self> {
        let mut labels = Vec::new();
        for (i, o) in objs.iter().enumerate() {
            for l in o.labels() {
                labels.push(format!("{i}:{l}"));
            }
        }
        let object = FinSetObj::from_vec(labels);
        let off = offsets(objs);
        let injections = objs
            .iter()
            .enumerate()
            .map(|(i, o)| Self::mor(o.clone(), object.clone(), (off[i]..off[i + 1]).collect()))
            .collect();
        Coproduct {
            summands: objs.to_vec(),
            object,
            injections,
        }
    }

    fn copair(&self, objs: &[FinSetObj], maps: &[FinSetMor], target: &FinSetObj) -> Result<FinSetMor> {
        if objs.len() != maps.len() {
            return Err(Error::Shape("copair needs one map per summand".into()));
        }
        let mut table = Vec::new();
        for (o, m) in objs.iter().zip(maps) {
            if m.source != *o || m.target != *target {
                return Err(Error::NotComposable(format!(
                    "copair component {m:?} does not fit {o:?} -> {target:?}"
                )));
            }
            table.extend_from_slice(&m.table);
        }
        Ok(Self::mor(self.coproduct(objs).object, target.clone(), table))
    }

    fn distribute_left(&self, a: &FinSetObj, objs: &[FinSetObj]) -> FinSetMor {
        let off = offsets(objs);
        let total = off[objs.len()];
        let mut table = vec![0; a.len() * total];
        for alpha in 0..a.len() {
            for (i, b) in objs.iter().enumerate() {
                for beta in 0..b.len() {
                    table[alpha * total + off[i] + beta] = a.len() * off[i] + alpha * b.len() + beta;
                }
            }
        }
        let parts: Vec<FinSetObj> = objs.iter().map(|b| self.tensor(a, b)).collect();
        Self::mor(
            self.tensor(a, &self.coproduct(objs).object),
            self.coproduct(&parts).object,
            table,
        )
    }

    fn distribute_right(&self, objs: &[FinSetObj], a: &FinSetObj) -> FinSetMor {
        let parts: Vec<FinSetObj> = objs.iter().map(|b| self.tensor(b, a)).collect();
        self.same_table(
            self.tensor(&self.coproduct(objs).object, a),
            self.coproduct(&parts).object,
        )
    }

    fn coequalizer(&self, f: &FinSetMor, g: &FinSetMor) -> Result<Coequalizer<Self>> {
        self.check_parallel(f, g)?;
        let target = &f.target;
        let mut uf = UnionFind::new(target.len());
        for (&a, &b) in f.table.iter().zip(&g.table) {
            uf.union(a, b);
        }
        // classes ordered by their least element; labelled by their least label
        let mut class_of_root = vec![usize::MAX; target.len()];
        let mut reps: Vec<usize> = Vec::new();
        let mut table = Vec::with_capacity(target.len());
        for x in 0..target.len() {
            let r = uf.find(x);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = reps.len();
                reps.push(x);
            }
            let c = class_of_root[r];
            if target.label(x) < target.label(reps[c]) {
                reps[c] = x;
            }
            table.push(c);
        }
        let object = FinSetObj::from_vec(reps.iter().map(|&r| target.label(r).to_string()).collect());
        Ok(Coequalizer {
            pair: (f.clone(), g.clone()),
            projection: Self::mor(target.clone(), object.clone(), table),
            object,
        })
    }

    fn factor_through_coequalizer(&self, h: &FinSetMor, coeq: &Coequalizer<Self>) -> Result<FinSetMor> {
        let (f, g) = &coeq.pair;
        if h.source != f.target {
            return Err(Error::NotComposable("factored map has the wrong source".into()));
        }
        if f.table.iter().zip(&g.table).any(|(&a, &b)| h.table[a] != h.table[b]) {
            return Err(Error::DoesNotCoequalize);
        }
        let mut table = vec![usize::MAX; coeq.object.len()];
        for (x, &q) in coeq.projection.table.iter().enumerate() {
            if table[q] == usize::MAX {
                table[q] = h.table[x];
            } else if table[q] != h.table[x] {
                return Err(Error::DoesNotCoequalize);
            }
        }
        Ok(Self::mor(coeq.object.clone(), h.target.clone(), table))
    }

    fn inverse(&self, f: &FinSetMor) -> Option<FinSetMor> {
        if f.source.len() != f.target.len() {
            return None;
        }
        let mut inv = vec![usize::MAX; f.target.len()];
        for (i, &j) in f.table.iter().enumerate() {
            if inv[j] != usize::MAX {
                return None;
            }
            inv[j] = i;
        }
        Some(Self::mor(f.target.clone(), f.source.clone(), inv))
    }

    fn global_elements(&self, a: &FinSetObj, bound: usize) -> Result<Vec<FinSetMor>> {
        if a.len() > bound {
            return Err(Error::bound("global elements", a.len() as u128, bound));
        }
        let unit = self.unit_object();
        Ok((0..a.len())
            .map(|i| Self::mor(unit.clone(), a.clone(), vec![i]))
            .collect())
    }

    fn hom_set(&self, a: &FinSetObj, b: &FinSetObj, bound: usize) -> Result<Vec<FinSetMor>> {
        let count = (b.len() as u128).checked_pow(a.len() as u32).unwrap_or(u128::MAX);
        if count > bound as u128 {
            return Err(Error::bound("functions", count, bound));
        }
        let mut out = Vec::with_capacity(count as usize);
        if count == 0 {
            return Ok(out);
        }
        let mut table = vec![0usize; a.len()];
        loop {
            out.push(Self::mor(a.clone(), b.clone(), table.clone()));
            let Some(pos) = (0..a.len()).rev().find(|&i| table[i] + 1 < b.len()) else {
                break;
            };
            table[pos] += 1;
            for t in table.iter_mut().skip(pos + 1) {
                *t = 0;
            }
        }
        Ok(out)
    }

    fn show_object(&self, a: &FinSetObj) -> String {
        format!("{a:?}")
    }

    fn show_morphism(&self, f: &FinSetMor) -> String {
        format!("{f:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_and_unit() {
        let s = FinSet;
        let a = s.object(["a", "b"]).unwrap();
        let x = s.object(["x"]).unwrap();
        let t = s.tensor(&a, &x);
        assert_eq!(t.labels(), ["(a,x)", "(b,x)"]);
        assert_eq!(s.unit_object().len(), 1);
    }

    #[test]
    fn coproduct_relabels() {
        let s = FinSet;
        let c = s.coproduct(&[s.object(["a"]).unwrap(), s.object(["b", "c"]).unwrap()]);
        assert_eq!(c.object.labels(), ["0:a", "1:b", "1:c"]);
        assert_eq!(c.injections[1].table(), [1, 2]);
        assert_eq!(s.coproduct(&[]).object, s.initial_object());
    }

    #[test]
    fn single_identification() {
        let s = FinSet;
        let one = s.object(["a"]).unwrap();
        let two = s.numbered(2);
        let f = s.function(&one, &two, vec![0]).unwrap();
        let g = s.function(&one, &two, vec![1]).unwrap();
        let q = s.coequalizer(&f, &g).unwrap();
        assert_eq!(q.object.len(), 1);
        let same = s.coequalizer(&f, &f).unwrap();
        assert_eq!(same.object.len(), 2);
        assert!(s.is_invertible(&same.projection));
    }

    #[test]
    fn representative_is_least_label() {
        let s = FinSet;
        let one = s.object(["a"]).unwrap();
        let tgt = s.object(["z", "m", "b"]).unwrap();
        let f = s.function(&one, &tgt, vec![0]).unwrap();
        let g = s.function(&one, &tgt, vec![2]).unwrap();
        let q = s.coequalizer(&f, &g).unwrap();
        assert_eq!(q.object.labels(), ["b", "m"]);
        assert_eq!(q.projection.table(), [0, 1, 0]);
    }

    #[test]
    fn factoring_constant_and_projection() {
        let s = FinSet;
        let one = s.object(["a"]).unwrap();
        let three = s.numbered(3);
        let f = s.function(&one, &three, vec![0]).unwrap();
        let g = s.function(&one, &three, vec![1]).unwrap();
        let q = s.coequalizer(&f, &g).unwrap();
        let u = s.factor_through_coequalizer(&q.projection, &q).unwrap();
        assert_eq!(u, s.identity(&q.object));
        let k = s.constant(&three, &one, 0).unwrap();
        let u = s.factor_through_coequalizer(&k, &q).unwrap();
        assert_eq!(s.compose(&q.projection, &u).unwrap(), k);
        let bad = s.function(&three, &three, vec![0, 1, 2]).unwrap();
        assert_eq!(s.factor_through_coequalizer(&bad, &q), Err(Error::DoesNotCoequalize));
    }

    #[test]
    fn distributivity_is_invertible() {
        let s = FinSet;
        let a = s.numbered(2);
        let bs = [s.numbered(1), s.numbered(3), s.numbered(0)];
        assert!(s.is_invertible(&s.distribute_left(&a, &bs)));
        assert!(s.is_invertible(&s.distribute_right(&bs, &a)));
    }

    #[test]
    fn hom_set_is_lexicographic() {
        let s = FinSet;
        let homs = s.hom_set(&s.numbered(2), &s.numbered(2), 10).unwrap();
        let tables: Vec<&[usize]> = homs.iter().map(|h| h.table()).collect();
        assert_eq!(tables, [[0, 0], [0, 1], [1, 0], [1, 1]]);
        assert_eq!(s.hom_set(&s.numbered(0), &s.numbered(0), 10).unwrap().len(), 1);
        assert_eq!(s.hom_set(&s.numbered(1), &s.numbered(0), 10).unwrap().len(), 0);
    }
}
