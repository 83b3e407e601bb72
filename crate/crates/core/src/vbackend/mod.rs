//! Monoidal categories with chosen finite coproducts and coequalizers.
//!
//! A backend is a value factory: objects and morphisms are plain values and
//! every operation is pure. Tensor products distribute over coproducts and
//! preserve coequalizers in each variable; the comparison maps witnessing
//! this are computed on demand (see [`factor_through_tensored`]).

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod boolean;
mod finset;
mod finvect;
mod functor;
mod product;
pub mod tensor;

pub use boolean::{Bool, BoolMor};
pub use finset::{FinSet, FinSetMor, FinSetObj};
pub use finvect::{FinVect, Matrix};
pub use functor::{FunctorDescriptor, Indicator, Linearize, MonoidalFunctor, Support};
pub use product::Product;

/// Default cap on enumerations such as global elements and hom-sets.
pub const DEFAULT_BOUND: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendDescriptor {
    FinSet,
    Bool,
    FinVect { p: u32 },
    Product(Box<BackendDescriptor>, Box<BackendDescriptor>),
}

impl fmt::Display for BackendDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendDescriptor::FinSet => write!(f, "FinSet"),
            BackendDescriptor::Bool => write!(f, "Bool"),
            BackendDescriptor::FinVect { p } => write!(f, "FinVect_{p}"),
            BackendDescriptor::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

/// A chosen coproduct with its injections.
#[derive(Clone, Debug, PartialEq)]
pub struct Coproduct<B: Backend> {
    pub summands: Vec<B::Obj>,
    pub object: B::Obj,
    pub injections: Vec<B::Mor>,
}

/// A chosen coequalizer of a parallel pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Coequalizer<B: Backend> {
    pub pair: (B::Mor, B::Mor),
    pub object: B::Obj,
    pub projection: B::Mor,
}

pub trait Backend: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Obj: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;
    type Mor: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn descriptor(&self) -> BackendDescriptor;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// The composite "first `f`, then `g`".
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    fn unit_object(&self) -> Self::Obj;
    fn initial_object(&self) -> Self::Obj;
    fn is_initial(&self, a: &Self::Obj) -> bool;
    /// The unique map out of an initial object.
    fn from_initial(&self, source: &Self::Obj, target: &Self::Obj) -> Result<Self::Mor>;

    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    /// `I ⊗ a -> a`
    fn left_unitor(&self, a: &Self::Obj) -> Self::Mor;
    /// `a ⊗ I -> a`
    fn right_unitor(&self, a: &Self::Obj) -> Self::Mor;
    /// `(a ⊗ b) ⊗ c -> a ⊗ (b ⊗ c)`
    fn associator(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self::Mor;

    fn left_unitor_inv(&self, a: &Self::Obj) -> Self::Mor {
        self.inverse(&self.left_unitor(a)).expect("unitor is invertible")
    }
    fn right_unitor_inv(&self, a: &Self::Obj) -> Self::Mor {
        self.inverse(&self.right_unitor(a)).expect("unitor is invertible")
    }
    fn associator_inv(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self::Mor {
        self.inverse(&self.associator(a, b, c))
            .expect("associator is invertible")
    }

    fn coproduct(&self, objs: &[Self::Obj]) -> Coproduct<Self>;
    /// The map out of `coproduct(objs)` restricting to `maps[i]` on summand `i`.
    fn copair(&self, objs: &[Self::Obj], maps: &[Self::Mor], target: &Self::Obj) -> Result<Self::Mor>;
    /// `a ⊗ ∐ b_i -> ∐ (a ⊗ b_i)`
    fn distribute_left(&self, a: &Self::Obj, objs: &[Self::Obj]) -> Self::Mor;
    /// `(∐ b_i) ⊗ a -> ∐ (b_i ⊗ a)`
    fn distribute_right(&self, objs: &[Self::Obj], a: &Self::Obj) -> Self::Mor;

    fn coequalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Coequalizer<Self>>;
    /// The unique `u` with `projection` followed by `u` equal to `h`.
    fn factor_through_coequalizer(&self, h: &Self::Mor, coeq: &Coequalizer<Self>) -> Result<Self::Mor>;

    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor>;
    fn is_invertible(&self, f: &Self::Mor) -> bool {
        self.inverse(f).is_some()
    }

    /// All morphisms `I -> a`, in a canonical order.
    fn global_elements(&self, a: &Self::Obj, bound: usize) -> Result<Vec<Self::Mor>>;
    /// All morphisms `a -> b`, in a canonical order.
    fn hom_set(&self, a: &Self::Obj, b: &Self::Obj, bound: usize) -> Result<Vec<Self::Mor>>;

    /// Short human-readable rendering of an object.
    fn show_object(&self, a: &Self::Obj) -> String;
    /// Short human-readable rendering of a morphism.
    fn show_morphism(&self, f: &Self::Mor) -> String;

    fn check_parallel(&self, f: &Self::Mor, g: &Self::Mor) -> Result<()> {
        if self.source(f) != self.source(g) || self.target(f) != self.target(g) {
            return Err(Error::NotParallel(format!(
                "{} and {}",
                self.show_morphism(f),
                self.show_morphism(g)
            )));
        }
        Ok(())
    }

    fn compose_all(&self, maps: &[&Self::Mor]) -> Result<Self::Mor> {
        let (first, rest) = maps
            .split_first()
            .ok_or_else(|| Error::Precondition("empty composite".into()))?;
        let mut acc = (*first).clone();
        for m in rest {
            acc = self.compose(&acc, m)?;
        }
        Ok(acc)
    }
}

/// Which side of a tensor product a coequalizer sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `a ⊗ Q`
    Left,
    /// `Q ⊗ a`
    Right,
}

/// Factors `h: a ⊗ L -> T` (or `L ⊗ a -> T`) through `a ⊗ Q` (or `Q ⊗ a`),
/// where `Q` is the coequalizer of `coeq.pair: S ⇉ L`.
///
/// The backend's tensor preserves coequalizers, so the comparison from the
/// coequalizer of the tensored pair to `a ⊗ Q` is invertible; this is
/// checked, and a failure is reported as [`Error::NotInvertible`].
pub fn factor_through_tensored<B: Backend>(
    backend: &B,
    side: Side,
    a: &B::Obj,
    coeq: &Coequalizer<B>,
    h: &B::Mor,
) -> Result<B::Mor> {
    let id = backend.identity(a);
    let tens = |m: &B::Mor| match side {
        Side::Left => backend.tensor_mor(&id, m),
        Side::Right => backend.tensor_mor(m, &id),
    };
    let inner = backend.coequalizer(&tens(&coeq.pair.0), &tens(&coeq.pair.1))?;
    let u = backend.factor_through_coequalizer(h, &inner)?;
    let comparison = backend.factor_through_coequalizer(&tens(&coeq.projection), &inner)?;
    let inv = backend.inverse(&comparison).ok_or_else(|| {
        Error::NotInvertible("tensor does not preserve this coequalizer".into())
    })?;
    backend.compose(&inv, &u)
}
