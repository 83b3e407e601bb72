//! Finite ordinary categories with explicit composition tables.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow<A> {
    pub source: usize,
    pub target: usize,
    pub label: A,
}

/// A category with finitely many objects and arrows. Composition is stored
/// for every composable pair; `compose(f, g)` means "first `f`, then `g`".
#[derive(Clone, Debug)]
pub struct FiniteCategory<O, A> {
    objects: Vec<O>,
    arrows: Vec<Arrow<A>>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl<O, A> FiniteCategory<O, A> {
    /// Builds the category and checks the identity and associativity laws.
    ///
    /// `compose(f, g)` is called for every pair with `target(f) == source(g)`
    /// and must return the index of the composite arrow.
    pub fn new(
        objects: Vec<O>,
        arrows: Vec<Arrow<A>>,
        identities: Vec<usize>,
        compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let cat = Self::build(objects, arrows, identities, compose)?;
        cat.check_axioms()?;
        Ok(cat)
    }

    /// Like [`FiniteCategory::new`] but only checks typing of the
    /// composition table. Used for generated categories whose axioms are
    /// covered by tests.
    pub(crate) fn new_unchecked_laws(
        objects: Vec<O>,
        arrows: Vec<Arrow<A>>,
        identities: Vec<usize>,
        compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        Self::build(objects, arrows, identities, compose)
    }

    fn build(
        objects: Vec<O>,
        arrows: Vec<Arrow<A>>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let n = objects.len();
        if identities.len() != n {
            return Err(Error::Axiom(format!(
                "{} identities for {} objects",
                identities.len(),
                n
            )));
        }
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::Axiom(format!("arrow {i} has an endpoint out of range")));
            }
            outgoing[a.source].push(i);
            incoming[a.target].push(i);
        }
        for (o, &id) in identities.iter().enumerate() {
            match arrows.get(id) {
                Some(a) if a.source == o && a.target == o => {}
                _ => return Err(Error::Axiom(format!("identity of object {o} is not an endomorphism"))),
            }
        }
        let mut composition = HashMap::new();
        for f in 0..arrows.len() {
            for &g in &outgoing[arrows[f].target] {
                let h = compose(f, g).ok_or_else(|| {
                    Error::Axiom(format!("composite of arrows {f} and {g} is undefined"))
                })?;
                let ok = arrows
                    .get(h)
                    .map(|a| a.source == arrows[f].source && a.target == arrows[g].target)
                    .unwrap_or(false);
                if !ok {
                    return Err(Error::Axiom(format!(
                        "composite of arrows {f} and {g} has the wrong endpoints"
                    )));
                }
                composition.insert((f, g), h);
            }
        }
        Ok(FiniteCategory {
            objects,
            arrows,
            identities,
            composition,
            outgoing,
            incoming,
        })
    }

    pub fn check_axioms(&self) -> Result<()> {
        for (f, a) in self.arrows.iter().enumerate() {
            if self.composition[&(self.identities[a.source], f)] != f
                || self.composition[&(f, self.identities[a.target])] != f
            {
                return Err(Error::Axiom(format!("identity law fails at arrow {f}")));
            }
        }
        for f in 0..self.arrows.len() {
            for &g in &self.outgoing[self.arrows[f].target] {
                let fg = self.composition[&(f, g)];
                for &h in &self.outgoing[self.arrows[g].target] {
                    let gh = self.composition[&(g, h)];
                    if self.composition[&(fg, h)] != self.composition[&(f, gh)] {
                        return Err(Error::Axiom(format!(
                            "associativity fails at arrows ({f}, {g}, {h})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &O {
        &self.objects[i]
    }

    pub fn arrows(&self) -> &[Arrow<A>] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow<A> {
        &self.arrows[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].source] == f
    }

    /// The composite "first `f`, then `g`", if they are composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn outgoing(&self, o: usize) -> &[usize] {
        &self.outgoing[o]
    }

    pub fn incoming(&self, o: usize) -> &[usize] {
        &self.incoming[o]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.outgoing[a]
            .iter()
            .copied()
            .filter(|&f| self.arrows[f].target == b)
            .collect()
    }

    /// Some inverse of `f`, if one exists.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        self.hom(a.target, a.source).into_iter().find(|&g| {
            self.composition[&(f, g)] == self.identities[a.source]
                && self.composition[&(g, f)] == self.identities[a.target]
        })
    }

    pub fn is_isomorphism(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn discrete(objects: Vec<O>) -> FiniteCategory<O, A>
    where
        A: Default,
    {
        let n = objects.len();
        let arrows = (0..n)
            .map(|i| Arrow {
                source: i,
                target: i,
                label: A::default(),
            })
            .collect();
        Self::build(objects, arrows, (0..n).collect(), |f, _| Some(f))
            .expect("discrete category is well formed")
    }
}

impl<O: Clone, A: Clone> FiniteCategory<O, A> {
    /// The product category; object `(a, b)` has index `a * |D| + b`.
    pub fn product<P: Clone, B: Clone>(
        &self,
        other: &FiniteCategory<P, B>,
    ) -> FiniteCategory<(O, P), (A, B)> {
        let m = other.num_objects();
        let k = other.num_arrows();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        let mut arrows = Vec::with_capacity(self.num_arrows() * k);
        for f in &self.arrows {
            for g in &other.arrows {
                arrows.push(Arrow {
                    source: f.source * m + g.source,
                    target: f.target * m + g.target,
                    label: (f.label.clone(), g.label.clone()),
                });
            }
        }
        let identities = (0..self.num_objects())
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| self.identities[a] * k + other.identities[b])
            .collect();
        FiniteCategory::build(objects, arrows, identities, |x, y| {
            let f = self.compose(x / k, y / k)?;
            let g = other.compose(x % k, y % k)?;
            Some(f * k + g)
        })
        .expect("product of categories is well formed")
    }
}

/// A functor between finite categories, stored as object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunctor {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl FiniteFunctor {
    /// Checks that the maps are well typed and strictly functorial.
    pub fn new<O, A, P, B>(
        source: &FiniteCategory<O, A>,
        target: &FiniteCategory<P, B>,
        object_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self> {
        if object_map.len() != source.num_objects() || arrow_map.len() != source.num_arrows() {
            return Err(Error::Shape("functor tables have the wrong length".into()));
        }
        if object_map.iter().any(|&o| o >= target.num_objects())
            || arrow_map.iter().any(|&f| f >= target.num_arrows())
        {
            return Err(Error::Shape("functor maps outside its target".into()));
        }
        for (f, a) in source.arrows().iter().enumerate() {
            let b = target.arrow(arrow_map[f]);
            if b.source != object_map[a.source] || b.target != object_map[a.target] {
                return Err(Error::Axiom(format!("arrow {f} is sent to an arrow with wrong endpoints")));
            }
        }
        for o in 0..source.num_objects() {
            if arrow_map[source.identity(o)] != target.identity(object_map[o]) {
                return Err(Error::Axiom(format!("identity of object {o} is not preserved")));
            }
        }
        for f in 0..source.num_arrows() {
            for &g in source.outgoing(source.arrow(f).target) {
                let h = source.compose(f, g).expect("composable");
                if target.compose(arrow_map[f], arrow_map[g]) != Some(arrow_map[h]) {
                    return Err(Error::Axiom(format!("composite of arrows {f}, {g} is not preserved")));
                }
            }
        }
        Ok(FiniteFunctor {
            object_map,
            arrow_map,
        })
    }

    pub fn identity<O, A>(cat: &FiniteCategory<O, A>) -> Self {
        FiniteFunctor {
            object_map: (0..cat.num_objects()).collect(),
            arrow_map: (0..cat.num_arrows()).collect(),
        }
    }

    /// The diagonal `C -> C x C` into [`FiniteCategory::product`].
    pub fn diagonal<O, A>(cat: &FiniteCategory<O, A>) -> Self {
        let n = cat.num_objects();
        let k = cat.num_arrows();
        FiniteFunctor {
            object_map: (0..n).map(|o| o * n + o).collect(),
            arrow_map: (0..k).map(|f| f * k + f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walking_arrow() -> FiniteCategory<&'static str, &'static str> {
        let arrows = vec![
            Arrow { source: 0, target: 0, label: "1a" },
            Arrow { source: 1, target: 1, label: "1b" },
            Arrow { source: 0, target: 1, label: "f" },
        ];
        FiniteCategory::new(vec!["a", "b"], arrows, vec![0, 1], |f, g| match (f, g) {
            (0, x) | (x, 1) => Some(x),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn walking_arrow_is_a_category() {
        let c = walking_arrow();
        assert_eq!(c.hom(0, 1), vec![2]);
        assert!(c.hom(1, 0).is_empty());
        assert!(!c.is_isomorphism(2));
        assert!(c.is_isomorphism(0));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // one object, arrows {e, a, b}, with a*b = a but (a*a)*b != a*(a*b)
        let arrows = (0..3)
            .map(|i| Arrow { source: 0, target: 0, label: i })
            .collect();
        let table = [[0, 1, 2], [1, 2, 1], [2, 0, 2]];
        let r = FiniteCategory::new(vec![()], arrows, vec![0], |f, g| Some(table[f][g]));
        assert!(matches!(r, Err(Error::Axiom(_))));
    }

    #[test]
    fn product_and_diagonal() {
        let c = walking_arrow();
        let p = c.product(&c);
        assert_eq!(p.num_objects(), 4);
        assert_eq!(p.num_arrows(), 9);
        p.check_axioms().unwrap();
        let d = FiniteFunctor::diagonal(&c);
        FiniteFunctor::new(&c, &p, d.object_map, d.arrow_map).unwrap();
    }
}
