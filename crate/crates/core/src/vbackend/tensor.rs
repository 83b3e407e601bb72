//! Canonical isomorphisms between bracketings of tensor products.
//!
//! Every list of factors has a normal form: the left-nested product
//! `((a ⊗ b) ⊗ c) ⊗ ...`, with the empty list giving the unit. The maps
//! here are built from the backend's associators and unitors only.

use super::Backend;
use crate::error::{Error, Result};

/// A bracketed tensor expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorExpr<O> {
    Unit,
    Leaf(O),
    Pair(Box<TensorExpr<O>>, Box<TensorExpr<O>>),
}

impl<O: Clone> TensorExpr<O> {
    pub fn pair(a: TensorExpr<O>, b: TensorExpr<O>) -> Self {
        TensorExpr::Pair(Box::new(a), Box::new(b))
    }

    /// The left-nested expression over `objs`.
    pub fn nested(objs: &[O]) -> Self {
        let mut it = objs.iter();
        let Some(first) = it.next() else {
            return TensorExpr::Unit;
        };
        it.fold(TensorExpr::Leaf(first.clone()), |acc, o| {
            TensorExpr::pair(acc, TensorExpr::Leaf(o.clone()))
        })
    }

    pub fn leaves(&self) -> Vec<O> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<O>) {
        match self {
            TensorExpr::Unit => {}
            TensorExpr::Leaf(o) => out.push(o.clone()),
            TensorExpr::Pair(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

/// The left-nested product of `objs`; the unit when empty.
pub fn nested<B: Backend>(b: &B, objs: &[B::Obj]) -> B::Obj {
    let mut it = objs.iter();
    let Some(first) = it.next() else {
        return b.unit_object();
    };
    it.fold(first.clone(), |acc, o| b.tensor(&acc, o))
}

/// The left-nested product of morphisms; the identity of the unit when empty.
pub fn nested_mor<B: Backend>(b: &B, mors: &[B::Mor]) -> B::Mor {
    let mut it = mors.iter();
    let Some(first) = it.next() else {
        return b.identity(&b.unit_object());
    };
    it.fold(first.clone(), |acc, m| b.tensor_mor(&acc, m))
}

pub fn eval<B: Backend>(b: &B, e: &TensorExpr<B::Obj>) -> B::Obj {
    match e {
        TensorExpr::Unit => b.unit_object(),
        TensorExpr::Leaf(o) => o.clone(),
        TensorExpr::Pair(x, y) => b.tensor(&eval(b, x), &eval(b, y)),
    }
}

/// `nested(l1) ⊗ nested(l2) -> nested(l1 ++ l2)`
pub fn join<B: Backend>(b: &B, l1: &[B::Obj], l2: &[B::Obj]) -> Result<B::Mor> {
    match l2.split_last() {
        None => Ok(b.right_unitor(&nested(b, l1))),
        Some(_) if l1.is_empty() => Ok(b.left_unitor(&nested(b, l2))),
        Some((last, [])) => Ok(b.identity(&b.tensor(&nested(b, l1), last))),
        Some((last, init)) => {
            let a = b.associator_inv(&nested(b, l1), &nested(b, init), last);
            let inner = b.tensor_mor(&join(b, l1, init)?, &b.identity(last));
            b.compose(&a, &inner)
        }
    }
}

/// `nested(l1 ++ l2) -> nested(l1) ⊗ nested(l2)`, inverse to [`join`].
pub fn split<B: Backend>(b: &B, l1: &[B::Obj], l2: &[B::Obj]) -> Result<B::Mor> {
    match l2.split_last() {
        None => Ok(b.right_unitor_inv(&nested(b, l1))),
        Some(_) if l1.is_empty() => Ok(b.left_unitor_inv(&nested(b, l2))),
        Some((last, [])) => Ok(b.identity(&b.tensor(&nested(b, l1), last))),
        Some((last, init)) => {
            let inner = b.tensor_mor(&split(b, l1, init)?, &b.identity(last));
            let a = b.associator(&nested(b, l1), &nested(b, init), last);
            b.compose(&inner, &a)
        }
    }
}

/// `eval(e) -> nested(leaves(e))`
pub fn normalize<B: Backend>(b: &B, e: &TensorExpr<B::Obj>) -> Result<B::Mor> {
    match e {
        TensorExpr::Unit => Ok(b.identity(&b.unit_object())),
        TensorExpr::Leaf(o) => Ok(b.identity(o)),
        TensorExpr::Pair(x, y) => {
            let parts = b.tensor_mor(&normalize(b, x)?, &normalize(b, y)?);
            b.compose(&parts, &join(b, &x.leaves(), &y.leaves())?)
        }
    }
}

/// `nested(leaves(e)) -> eval(e)`, inverse to [`normalize`].
pub fn denormalize<B: Backend>(b: &B, e: &TensorExpr<B::Obj>) -> Result<B::Mor> {
    match e {
        TensorExpr::Unit => Ok(b.identity(&b.unit_object())),
        TensorExpr::Leaf(o) => Ok(b.identity(o)),
        TensorExpr::Pair(x, y) => {
            let s = split(b, &x.leaves(), &y.leaves())?;
            b.compose(&s, &b.tensor_mor(&denormalize(b, x)?, &denormalize(b, y)?))
        }
    }
}

/// `nested(factors) -> nested([nested(g_1), ..., nested(g_k)])` where the
/// groups `g_j` are consecutive runs of `factors` with the given sizes.
pub fn regroup<B: Backend>(b: &B, factors: &[B::Obj], sizes: &[usize]) -> Result<B::Mor> {
    if sizes.iter().sum::<usize>() != factors.len() {
        return Err(Error::Shape("group sizes do not cover the factors".into()));
    }
    let mut groups = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &s in sizes {
        groups.push(TensorExpr::nested(&factors[start..start + s]));
        start += s;
    }
    let mut it = groups.into_iter();
    let expr = match it.next() {
        None => TensorExpr::Unit,
        Some(first) => it.fold(first, TensorExpr::pair),
    };
    denormalize(b, &expr)
}

/// Applies one morphism to each consecutive run of factors.
///
/// `groups[j] = (len, g)` consumes `len` factors with `g: nested(run) -> G_j`
/// (a run of length 0 takes `g: I -> G_j`). The result is
/// `nested(factors) -> nested([G_1, ..., G_k])`.
pub fn apply_grouped<B: Backend>(
    b: &B,
    factors: &[B::Obj],
    groups: &[(usize, B::Mor)],
) -> Result<B::Mor> {
    let sizes: Vec<usize> = groups.iter().map(|g| g.0).collect();
    let r = regroup(b, factors, &sizes)?;
    let maps: Vec<B::Mor> = groups.iter().map(|g| g.1.clone()).collect();
    b.compose(&r, &nested_mor(b, &maps))
}
