use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Backend, Bool, BoolMor, FinSet, FinSetMor, FinSetObj, FinVect, Matrix};
use crate::error::{Error, Result};

/// A strong monoidal functor between backends that preserves coproducts
/// and coequalizers.
pub trait MonoidalFunctor: Clone + Send + Sync {
    type Source: Backend;
    type Target: Backend;

    fn source_backend(&self) -> &Self::Source;
    fn target_backend(&self) -> &Self::Target;
    fn descriptor(&self) -> FunctorDescriptor;

    fn map_object(&self, a: &<Self::Source as Backend>::Obj) -> <Self::Target as Backend>::Obj;
    fn map_morphism(&self, f: &<Self::Source as Backend>::Mor) -> <Self::Target as Backend>::Mor;

    /// `I -> F(I)`
    fn unit_comparison(&self) -> <Self::Target as Backend>::Mor;
    /// `F(a) ⊗ F(b) -> F(a ⊗ b)`
    fn tensor_comparison(
        &self,
        a: &<Self::Source as Backend>::Obj,
        b: &<Self::Source as Backend>::Obj,
    ) -> <Self::Target as Backend>::Mor;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctorDescriptor {
    /// FinSet -> Bool, a set goes to whether it is nonempty.
    Support,
    /// FinSet -> FinVect_p, a set goes to the free vector space on it.
    Linearize { p: u32 },
    /// Bool -> FinSet, true goes to a point and false to the empty set.
    Indicator,
}

impl fmt::Display for FunctorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorDescriptor::Support => write!(f, "support"),
            FunctorDescriptor::Linearize { p } => write!(f, "linearize:{p}"),
            FunctorDescriptor::Indicator => write!(f, "indicator"),
        }
    }
}

impl FromStr for FunctorDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "support" => Ok(FunctorDescriptor::Support),
            "indicator" => Ok(FunctorDescriptor::Indicator),
            _ => {
                let p = s
                    .strip_prefix("linearize:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::Unsupported(format!("unsupported functor descriptor {s:?}")))?;
                FinVect::new(p)?;
                Ok(FunctorDescriptor::Linearize { p })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Support;

impl MonoidalFunctor for Support {
    type Source = FinSet;
    type Target = Bool;

    fn source_backend(&self) -> &FinSet {
        &FinSet
    }

    fn target_backend(&self) -> &Bool {
        &Bool
    }

    fn descriptor(&self) -> FunctorDescriptor {
        FunctorDescriptor::Support
    }

    fn map_object(&self, a: &FinSetObj) -> bool {
        !a.is_empty()
    }

    fn map_morphism(&self, f: &FinSetMor) -> BoolMor {
        BoolMor::new(!f.source().is_empty(), !f.target().is_empty()).expect("functions preserve inhabitation")
    }

    fn unit_comparison(&self) -> BoolMor {
        Bool.identity(&true)
    }

    fn tensor_comparison(&self, a: &FinSetObj, b: &FinSetObj) -> BoolMor {
        Bool.identity(&(!a.is_empty() && !b.is_empty()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Linearize {
    target: FinVect,
}

impl Linearize {
    pub fn new(p: u32) -> Result<Self> {
        Ok(Linearize {
            target: FinVect::new(p)?,
        })
    }
}

impl MonoidalFunctor for Linearize {
    type Source = FinSet;
    type Target = FinVect;

    fn source_backend(&self) -> &FinSet {
        &FinSet
    }

    fn target_backend(&self) -> &FinVect {
        &self.target
    }

    fn descriptor(&self) -> FunctorDescriptor {
        FunctorDescriptor::Linearize {
            p: self.target.characteristic(),
        }
    }

    fn map_object(&self, a: &FinSetObj) -> usize {
        a.len()
    }

    fn map_morphism(&self, f: &FinSetMor) -> Matrix {
        let rows: Vec<Vec<u32>> = (0..f.target().len())
            .map(|r| f.table().iter().map(|&t| u32::from(t == r)).collect())
            .collect();
        self.target
            .matrix(f.target().len(), f.source().len(), &rows)
            .expect("shape matches")
    }

    fn unit_comparison(&self) -> Matrix {
        Matrix::identity(1)
    }

    fn tensor_comparison(&self, a: &FinSetObj, b: &FinSetObj) -> Matrix {
        Matrix::identity(a.len() * b.len())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Indicator;

impl MonoidalFunctor for Indicator {
    type Source = Bool;
    type Target = FinSet;

    fn source_backend(&self) -> &Bool {
        &Bool
    }

    fn target_backend(&self) -> &FinSet {
        &FinSet
    }

    fn descriptor(&self) -> FunctorDescriptor {
        FunctorDescriptor::Indicator
    }

    fn map_object(&self, a: &bool) -> FinSetObj {
        if *a {
            FinSet.unit_object()
        } else {
            FinSet.initial_object()
        }
    }

    fn map_morphism(&self, f: &BoolMor) -> FinSetMor {
        let (s, t) = (Bool.source(f), Bool.target(f));
        if s {
            FinSet.identity(&FinSet.unit_object())
        } else {
            FinSet
                .from_initial(&FinSet.initial_object(), &self.map_object(&t))
                .expect("empty source")
        }
    }

    fn unit_comparison(&self) -> FinSetMor {
        FinSet.identity(&FinSet.unit_object())
    }

    fn tensor_comparison(&self, a: &bool, b: &bool) -> FinSetMor {
        let src = FinSet.tensor(&self.map_object(a), &self.map_object(b));
        let tgt = self.map_object(&(*a && *b));
        FinSet
            .function(&src, &tgt, vec![0; src.len()])
            .expect("point to point or empty")
    }
}
