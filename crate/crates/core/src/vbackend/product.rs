use super::{Backend, BackendDescriptor, Coequalizer, Coproduct};
use crate::error::{Error, Result};

/// The product `V x W` of two backends; everything is componentwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Product<V, W> {
    pub left: V,
    pub right: W,
}

impl<V: Backend, W: Backend> Product<V, W> {
    pub fn new(left: V, right: W) -> Self {
        Product { left, right }
    }

    fn split_coeq(coeq: &Coequalizer<Self>) -> (Coequalizer<V>, Coequalizer<W>) {
        (
            Coequalizer {
                pair: (coeq.pair.0 .0.clone(), coeq.pair.1 .0.clone()),
                object: coeq.object.0.clone(),
                projection: coeq.projection.0.clone(),
            },
            Coequalizer {
                pair: (coeq.pair.0 .1.clone(), coeq.pair.1 .1.clone()),
                object: coeq.object.1.clone(),
                projection: coeq.projection.1.clone(),
            },
        )
    }
}

fn pairs<A: Clone, B: Clone>(a: Vec<A>, b: Vec<B>, bound: usize) -> Result<Vec<(A, B)>> {
    let count = a.len() as u128 * b.len() as u128;
    if count > bound as u128 {
        return Err(Error::bound("product enumeration", count, bound));
    }
    Ok(a.iter()
        .flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone())))
        .collect())
}

impl<V: Backend, W: Backend> Backend for Product<V, W> {
    type Obj = (V::Obj, W::Obj);
    type Mor = (V::Mor, W::Mor);

    fn descriptor(&self) -> BackendDescriptor {
        BackendDescriptor::Product(
            Box::new(self.left.descriptor()),
            Box::new(self.right.descriptor()),
        )
    }

    fn source(&self, f: &Self::Mor) -> Self::Obj {
        (self.left.source(&f.0), self.right.source(&f.1))
    }

    fn target(&self, f: &Self::Mor) -> Self::Obj {
        (self.left.target(&f.0), self.right.target(&f.1))
    }

    fn identity(&self, a: &Self::Obj) -> Self::Mor {
        (self.left.identity(&a.0), self.right.identity(&a.1))
    }

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        Ok((self.left.compose(&f.0, &g.0)?, self.right.compose(&f.1, &g.1)?))
    }

    fn unit_object(&self) -> Self::Obj {
        (self.left.unit_object(), self.right.unit_object())
    }

    fn initial_object(&self) -> Self::Obj {
        (self.left.initial_object(), self.right.initial_object())
    }

    fn is_initial(&self, a: &Self::Obj) -> bool {
        self.left.is_initial(&a.0) && self.right.is_initial(&a.1)
    }

    fn from_initial(&self, source: &Self::Obj, target: &Self::Obj) -> Result<Self::Mor> {
        Ok((
            self.left.from_initial(&source.0, &target.0)?,
            self.right.from_initial(&source.1, &target.1)?,
        ))
    }

    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj {
        (self.left.tensor(&a.0, &b.0), self.right.tensor(&a.1, &b.1))
    }

    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        (self.left.tensor_mor(&f.0, &g.0), self.right.tensor_mor(&f.1, &g.1))
    }

    fn left_unitor(&self, a: &Self::Obj) -> Self::Mor {
        (self.left.left_unitor(&a.0), self.right.left_unitor(&a.1))
    }

    fn right_unitor(&self, a: &Self::Obj) -> Self::Mor {
        (self.left.right_unitor(&a.0), self.right.right_unitor(&a.1))
    }

    fn associator(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self::Mor {
        (
            self.left.associator(&a.0, &b.0, &c.0),
            self.right.associator(&a.1, &b.1, &c.1),
        )
    }

    fn left_unitor_inv(&self, a: &Self::Obj) -> Self::Mor {
        (self.left.left_unitor_inv(&a.0), self.right.left_unitor_inv(&a.1))
    }

    fn right_unitor_inv(&self, a: &Self::Obj) -> Self::Mor {
        (self.left.right_unitor_inv(&a.0), self.right.right_unitor_inv(&a.1))
    }

    fn associator_inv(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self::Mor {
        (
            self.left.associator_inv(&a.0, &b.0, &c.0),
            self.right.associator_inv(&a.1, &b.1, &c.1),
        )
    }

    fn coproduct(&self, objs: &[Self::Obj]) -> Coproduct<Self> {
        let (ls, rs): (Vec<_>, Vec<_>) = objs.iter().cloned().unzip();
        let l = self.left.coproduct(&ls);
        let r = self.right.coproduct(&rs);
        Coproduct {
            summands: objs.to_vec(),
            object: (l.object, r.object),
            injections: l.injections.into_iter().zip(r.injections).collect(),
        }
    }

    fn copair(&self, objs: &[Self::Obj], maps: &[Self::Mor], target: &Self::Obj) -> Result<Self::Mor> {
        let (ls, rs): (Vec<_>, Vec<_>) = objs.iter().cloned().unzip();
        let (lm, rm): (Vec<_>, Vec<_>) = maps.iter().cloned().unzip();
        Ok((
            self.left.copair(&ls, &lm, &target.0)?,
            self.right.copair(&rs, &rm, &target.1)?,
        ))
    }

    fn distribute_left(&self, a: &Self::Obj, objs: &[Self::Obj]) -> Self::Mor {
        let (ls, rs): (Vec<_>, Vec<_>) = objs.iter().cloned().unzip();
        (
            self.left.distribute_left(&a.0, &ls),
            self.right.distribute_left(&a.1, &rs),
        )
    }

    fn distribute_right(&self, objs: &[Self::Obj], a: &Self::Obj) -> Self::Mor {
        let (ls, rs): (Vec<_>, Vec<_>) = objs.iter().cloned().unzip();
        (
            self.left.distribute_right(&ls, &a.0),
            self.right.distribute_right(&rs, &a.1),
        )
    }

    fn coequalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Coequalizer<Self>> {
        let l = self.left.coequalizer(&f.0, &g.0)?;
        let r = self.right.coequalizer(&f.1, &g.1)?;
        Ok(Coequalizer {
            pair: (f.clone(), g.clone()),
            object: (l.object, r.object),
            projection: (l.projection, r.projection),
        })
    }

    fn factor_through_coequalizer(&self, h: &Self::Mor, coeq: &Coequalizer<Self>) -> Result<Self::Mor> {
        let (l, r) = Self::split_coeq(coeq);
        Ok((
            self.left.factor_through_coequalizer(&h.0, &l)?,
            self.right.factor_through_coequalizer(&h.1, &r)?,
        ))
    }

    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor> {
        Some((self.left.inverse(&f.0)?, self.right.inverse(&f.1)?))
    }

    fn global_elements(&self, a: &Self::Obj, bound: usize) -> Result<Vec<Self::Mor>> {
        pairs(
            self.left.global_elements(&a.0, bound)?,
            self.right.global_elements(&a.1, bound)?,
            bound,
        )
    }

    fn hom_set(&self, a: &Self::Obj, b: &Self::Obj, bound: usize) -> Result<Vec<Self::Mor>> {
        pairs(
            self.left.hom_set(&a.0, &b.0, bound)?,
            self.right.hom_set(&a.1, &b.1, bound)?,
            bound,
        )
    }

    fn show_object(&self, a: &Self::Obj) -> String {
        format!("({}, {})", self.left.show_object(&a.0), self.right.show_object(&a.1))
    }

    fn show_morphism(&self, f: &Self::Mor) -> String {
        format!(
            "({}, {})",
            self.left.show_morphism(&f.0),
            self.right.show_morphism(&f.1)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vbackend::{Bool, FinSet};

    #[test]
    fn componentwise_pairs() {
        let p = Product::new(FinSet, Bool);
        let a = (FinSet.numbered(2), true);
        let b = (FinSet.numbered(3), false);
        let t = p.tensor(&a, &b);
        assert_eq!(t.0.len(), 6);
        assert!(!t.1);
        assert_eq!(p.global_elements(&a, 10).unwrap().len(), 2);
        assert_eq!(p.global_elements(&b, 10).unwrap().len(), 0);
        assert_eq!(
            p.descriptor(),
            BackendDescriptor::Product(Box::new(BackendDescriptor::FinSet), Box::new(BackendDescriptor::Bool))
        );
    }
}
