use super::{Backend, BackendDescriptor, Coequalizer, Coproduct};
use crate::error::{Error, Result};

/// The two-element lattice `⊥ < ⊤` with meet as tensor and join as
/// coproduct. There is at most one morphism between any two objects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bool;

/// The morphism `source -> target`, which exists iff `source <= target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoolMor {
    source: bool,
    target: bool,
}

impl BoolMor {
    pub fn new(source: bool, target: bool) -> Result<Self> {
        if source && !target {
            return Err(Error::Shape("no morphism from true to false".into()));
        }
        Ok(BoolMor { source, target })
    }
}

fn mor(source: bool, target: bool) -> BoolMor {
    debug_assert!(!source || target);
    BoolMor { source, target }
}

impl Backend for Bool {
    type Obj = bool;
    type Mor = BoolMor;

    fn descriptor(&self) -> BackendDescriptor {
        BackendDescriptor::Bool
    }

    fn source(&self, f: &BoolMor) -> bool {
        f.source
    }

    fn target(&self, f: &BoolMor) -> bool {
        f.target
    }

    fn identity(&self, a: &bool) -> BoolMor {
        mor(*a, *a)
    }

    fn compose(&self, f: &BoolMor, g: &BoolMor) -> Result<BoolMor> {
        if f.target != g.source {
            return Err(Error::NotComposable(format!("{f:?} then {g:?}")));
        }
        Ok(mor(f.source, g.target))
    }

    fn unit_object(&self) -> bool {
        true
    }

    fn initial_object(&self) -> bool {
        false
    }

    fn is_initial(&self, a: &bool) -> bool {
        !*a
    }

    fn from_initial(&self, source: &bool, target: &bool) -> Result<BoolMor> {
        if *source {
            return Err(Error::Precondition("true is not initial".into()));
        }
        Ok(mor(false, *target))
    }

    fn tensor(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn tensor_mor(&self, f: &BoolMor, g: &BoolMor) -> BoolMor {
        mor(f.source && g.source, f.target && g.target)
    }

    fn left_unitor(&self, a: &bool) -> BoolMor {
        mor(*a, *a)
    }

    fn right_unitor(&self, a: &bool) -> BoolMor {
        mor(*a, *a)
    }

    fn associator(&self, a: &bool, b: &bool, c: &bool) -> BoolMor {
        let v = *a && *b && *c;
        mor(v, v)
    }

    fn coproduct(&self, objs: &[bool]) -> Coproduct<Self> {
        let object = objs.iter().any(|&b| b);
        Coproduct {
            summands: objs.to_vec(),
            object,
            injections: objs.iter().map(|&b| mor(b, object)).collect(),
        }
    }

    fn copair(&self, objs: &[bool], maps: &[BoolMor], target: &bool) -> Result<BoolMor> {
        if objs.len() != maps.len() {
            return Err(Error::Shape("copair needs one map per summand".into()));
        }
        for (o, m) in objs.iter().zip(maps) {
            if m.source != *o || m.target != *target {
                return Err(Error::NotComposable(format!("copair component {m:?}")));
            }
        }
        Ok(mor(objs.iter().any(|&b| b), *target))
    }

    fn distribute_left(&self, a: &bool, objs: &[bool]) -> BoolMor {
        let v = *a && objs.iter().any(|&b| b);
        mor(v, v)
    }

    fn distribute_right(&self, objs: &[bool], a: &bool) -> BoolMor {
        self.distribute_left(a, objs)
    }

    fn coequalizer(&self, f: &BoolMor, g: &BoolMor) -> Result<Coequalizer<Self>> {
        self.check_parallel(f, g)?;
        Ok(Coequalizer {
            pair: (*f, *g),
            object: f.target,
            projection: mor(f.target, f.target),
        })
    }

    fn factor_through_coequalizer(&self, h: &BoolMor, coeq: &Coequalizer<Self>) -> Result<BoolMor> {
        if h.source != coeq.object {
            return Err(Error::NotComposable("factored map has the wrong source".into()));
        }
        Ok(*h)
    }

    fn inverse(&self, f: &BoolMor) -> Option<BoolMor> {
        (f.source == f.target).then_some(*f)
    }

    fn global_elements(&self, a: &bool, _bound: usize) -> Result<Vec<BoolMor>> {
        Ok(if *a { vec![mor(true, true)] } else { Vec::new() })
    }

    fn hom_set(&self, a: &bool, b: &bool, _bound: usize) -> Result<Vec<BoolMor>> {
        Ok(if !*a || *b { vec![mor(*a, *b)] } else { Vec::new() })
    }

    fn show_object(&self, a: &bool) -> String {
        a.to_string()
    }

    fn show_morphism(&self, f: &BoolMor) -> String {
        format!("{}<={}", f.source, f.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_structure() {
        let b = Bool;
        assert!(!b.tensor(&true, &false));
        assert!(b.unit_object());
        assert!(b.coproduct(&[false, true]).object);
        assert!(!b.coproduct(&[]).object);
        assert_eq!(b.global_elements(&true, 1).unwrap().len(), 1);
        assert!(b.global_elements(&false, 1).unwrap().is_empty());
    }

    #[test]
    fn posetal() {
        let b = Bool;
        for x in [false, true] {
            for y in [false, true] {
                assert!(b.hom_set(&x, &y, 4).unwrap().len() <= 1);
            }
        }
        assert!(BoolMor::new(true, false).is_err());
    }
}
