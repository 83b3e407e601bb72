//! Bimodules between enriched categories, squares between bimodules,
//! restriction along functors, and the external product.

use std::sync::Arc;

use crate::enriched::{external_category, same_category, VCategory, VFunctor};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::vbackend::{Backend, Bool, BoolMor, MonoidalFunctor, Product};

/// A `C`-`D`-bimodule.
///
/// `left_act(x', x, y): C(x',x) ⊗ M(x,y) -> M(x',y)` and
/// `right_act(x, y, y'): M(x,y) ⊗ D(y,y') -> M(x,y')`.
#[derive(Clone, Debug, PartialEq)]
pub struct VBimodule<B: Backend> {
    left: Arc<VCategory<B>>,
    right: Arc<VCategory<B>>,
    modules: Vec<B::Obj>,
    left_actions: Vec<B::Mor>,
    right_actions: Vec<B::Mor>,
}

impl<B: Backend> VBimodule<B> {
    /// Builds a bimodule from full tables, checking only the types of the
    /// action maps. The axioms are checked by [`validate_bimodule`].
    pub fn new(
        left: Arc<VCategory<B>>,
        right: Arc<VCategory<B>>,
        modules: Vec<B::Obj>,
        left_actions: Vec<B::Mor>,
        right_actions: Vec<B::Mor>,
    ) -> Result<Self> {
        if left.backend() != right.backend() {
            return Err(Error::BackendMismatch("bimodule categories use different backends".into()));
        }
        let (nx, ny) = (left.num_objects(), right.num_objects());
        if modules.len() != nx * ny || left_actions.len() != nx * nx * ny || right_actions.len() != nx * ny * ny {
            return Err(Error::Shape("bimodule tables have the wrong size".into()));
        }
        let m = VBimodule {
            left,
            right,
            modules,
            left_actions,
            right_actions,
        };
        let b = m.backend();
        for xp in 0..nx {
            for x in 0..nx {
                for y in 0..ny {
                    let a = m.left_act(xp, x, y);
                    if b.source(a) != b.tensor(m.left.hom(xp, x), m.module(x, y)) || b.target(a) != *m.module(xp, y) {
                        return Err(Error::Shape(format!("left action at {} has the wrong type", m.name_lll(xp, x, y))));
                    }
                }
            }
        }
        for x in 0..nx {
            for y in 0..ny {
                for yp in 0..ny {
                    let a = m.right_act(x, y, yp);
                    if b.source(a) != b.tensor(m.module(x, y), m.right.hom(y, yp)) || b.target(a) != *m.module(x, yp) {
                        return Err(Error::Shape(format!("right action at {} has the wrong type", m.name_lrr(x, y, yp))));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a bimodule from functions producing each table entry.
    pub fn from_fn(
        left: Arc<VCategory<B>>,
        right: Arc<VCategory<B>>,
        module: impl Fn(usize, usize) -> B::Obj,
        left_act: impl Fn(usize, usize, usize) -> Result<B::Mor>,
        right_act: impl Fn(usize, usize, usize) -> Result<B::Mor>,
    ) -> Result<Self> {
        let (nx, ny) = (left.num_objects(), right.num_objects());
        let modules = (0..nx * ny).map(|i| module(i / ny, i % ny)).collect();
        let mut la = Vec::with_capacity(nx * nx * ny);
        for xp in 0..nx {
            for x in 0..nx {
                for y in 0..ny {
                    la.push(left_act(xp, x, y)?);
                }
            }
        }
        let mut ra = Vec::with_capacity(nx * ny * ny);
        for x in 0..nx {
            for y in 0..ny {
                for yp in 0..ny {
                    ra.push(right_act(x, y, yp)?);
                }
            }
        }
        Self::new(left, right, modules, la, ra)
    }

    pub fn backend(&self) -> &B {
        self.left.backend()
    }

    pub fn left(&self) -> &Arc<VCategory<B>> {
        &self.left
    }

    pub fn right(&self) -> &Arc<VCategory<B>> {
        &self.right
    }

    pub fn module(&self, x: usize, y: usize) -> &B::Obj {
        &self.modules[x * self.right.num_objects() + y]
    }

    pub fn left_act(&self, xp: usize, x: usize, y: usize) -> &B::Mor {
        let (nx, ny) = (self.left.num_objects(), self.right.num_objects());
        &self.left_actions[(xp * nx + x) * ny + y]
    }

    pub fn right_act(&self, x: usize, y: usize, yp: usize) -> &B::Mor {
        let ny = self.right.num_objects();
        &self.right_actions[(x * ny + y) * ny + yp]
    }

    /// A copy with one right action entry replaced (same type required).
    pub fn with_right_act(&self, x: usize, y: usize, yp: usize, m: B::Mor) -> Result<Self> {
        let ny = self.right.num_objects();
        let mut ra = self.right_actions.clone();
        ra[(x * ny + y) * ny + yp] = m;
        Self::new(
            self.left.clone(),
            self.right.clone(),
            self.modules.clone(),
            self.left_actions.clone(),
            ra,
        )
    }

    fn name_lll(&self, xp: usize, x: usize, y: usize) -> String {
        let (l, r) = (self.left.objects(), self.right.objects());
        format!("({}, {}, {})", l[xp], l[x], r[y])
    }

    fn name_lrr(&self, x: usize, y: usize, yp: usize) -> String {
        let (l, r) = (self.left.objects(), self.right.objects());
        format!("({}, {}, {})", l[x], r[y], r[yp])
    }
}

fn same<M: PartialEq>(lhs: Result<M>, rhs: Result<M>) -> bool {
    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}

/// Checks the unit, associativity and middle compatibility equations.
pub fn validate_bimodule<B: Backend>(m: &VBimodule<B>) -> Report {
    let mut r = Report::new("bimodule axioms");
    let b = m.backend();
    let (c, d) = (m.left(), m.right());
    let (nx, ny) = (c.num_objects(), d.num_objects());
    let (lo, ro) = (c.objects(), d.objects());
    for x in 0..nx {
        for y in 0..ny {
            let h = m.module(x, y);
            let lhs = b.compose(&b.tensor_mor(c.unit(x), &b.identity(h)), m.left_act(x, x, y));
            r.check(same(lhs, Ok(b.left_unitor(h))), || "left unit".into(), || format!("({}, {})", lo[x], ro[y]));
            let lhs = b.compose(&b.tensor_mor(&b.identity(h), d.unit(y)), m.right_act(x, y, y));
            r.check(same(lhs, Ok(b.right_unitor(h))), || "right unit".into(), || format!("({}, {})", lo[x], ro[y]));
        }
    }
    for x2 in 0..nx {
        for x1 in 0..nx {
            for x in 0..nx {
                for y in 0..ny {
                    let (a, bb, h) = (c.hom(x2, x1), c.hom(x1, x), m.module(x, y));
                    let lhs = b
                        .compose(&b.associator(a, bb, h), &b.tensor_mor(&b.identity(a), m.left_act(x1, x, y)))
                        .and_then(|t| b.compose(&t, m.left_act(x2, x1, y)));
                    let rhs = b.compose(&b.tensor_mor(c.comp(x2, x1, x), &b.identity(h)), m.left_act(x2, x, y));
                    r.check(
                        same(lhs, rhs),
                        || "left associativity".into(),
                        || format!("({}, {}, {}, {})", lo[x2], lo[x1], lo[x], ro[y]),
                    );
                }
            }
        }
    }
    for x in 0..nx {
        for y in 0..ny {
            for y1 in 0..ny {
                for y2 in 0..ny {
                    let (h, a, bb) = (m.module(x, y), d.hom(y, y1), d.hom(y1, y2));
                    let lhs = b
                        .compose(&b.tensor_mor(m.right_act(x, y, y1), &b.identity(bb)), m.right_act(x, y1, y2));
                    let rhs = b
                        .compose(&b.associator(h, a, bb), &b.tensor_mor(&b.identity(h), d.comp(y, y1, y2)))
                        .and_then(|t| b.compose(&t, m.right_act(x, y, y2)));
                    r.check(
                        same(lhs, rhs),
                        || "right associativity".into(),
                        || format!("({}, {}, {}, {})", lo[x], ro[y], ro[y1], ro[y2]),
                    );
                }
            }
        }
    }
    for x1 in 0..nx {
        for x in 0..nx {
            for y in 0..ny {
                for y1 in 0..ny {
                    let (a, h, bb) = (c.hom(x1, x), m.module(x, y), d.hom(y, y1));
                    let lhs = b.compose(&b.tensor_mor(m.left_act(x1, x, y), &b.identity(bb)), m.right_act(x1, y, y1));
                    let rhs = b
                        .compose(&b.associator(a, h, bb), &b.tensor_mor(&b.identity(a), m.right_act(x, y, y1)))
                        .and_then(|t| b.compose(&t, m.left_act(x1, x, y1)));
                    r.check(
                        same(lhs, rhs),
                        || "middle compatibility".into(),
                        || format!("({}, {}, {}, {})", lo[x1], lo[x], ro[y], ro[y1]),
                    );
                }
            }
        }
    }
    r
}

/// `C` as a `C`-`C`-bimodule over itself.
pub fn hom_bimodule<B: Backend>(c: Arc<VCategory<B>>) -> VBimodule<B> {
    let cc = c.clone();
    VBimodule::from_fn(
        c.clone(),
        c,
        |x, y| cc.hom(x, y).clone(),
        |xp, x, y| Ok(cc.comp(xp, x, y).clone()),
        |x, y, yp| Ok(cc.comp(x, y, yp).clone()),
    )
    .expect("composition has the action types")
}

/// `M(F-, G-)` as a bimodule over the sources of `F` and `G`.
pub fn restrict<B: Backend>(f: &VFunctor<B>, g: &VFunctor<B>, m: &VBimodule<B>) -> Result<VBimodule<B>> {
    if f.source().backend() != m.backend() || g.source().backend() != m.backend() {
        return Err(Error::BackendMismatch("restriction across backends".into()));
    }
    if !same_category(f.target(), m.left()) || !same_category(g.target(), m.right()) {
        return Err(Error::CategoryMismatch("functors do not land in the bimodule's categories".into()));
    }
    let b = m.backend();
    VBimodule::from_fn(
        f.source().clone(),
        g.source().clone(),
        |x, y| m.module(f.map_object(x), g.map_object(y)).clone(),
        |xp, x, y| {
            let h = m.module(f.map_object(x), g.map_object(y));
            b.compose(
                &b.tensor_mor(f.hom_map(xp, x), &b.identity(h)),
                m.left_act(f.map_object(xp), f.map_object(x), g.map_object(y)),
            )
        },
        |x, y, yp| {
            let h = m.module(f.map_object(x), g.map_object(y));
            b.compose(
                &b.tensor_mor(&b.identity(h), g.hom_map(y, yp)),
                m.right_act(f.map_object(x), g.map_object(y), g.map_object(yp)),
            )
        },
    )
}

/// The componentwise pairing of two bimodules over the product backend.
pub fn external_product<V: Backend, W: Backend>(
    m: &VBimodule<V>,
    n: &VBimodule<W>,
) -> Result<VBimodule<Product<V, W>>> {
    let left = Arc::new(external_category(m.left(), n.left())?);
    let right = Arc::new(external_category(m.right(), n.right())?);
    let (kl, kr) = (n.left().num_objects(), n.right().num_objects());
    VBimodule::from_fn(
        left,
        right,
        |x, y| (m.module(x / kl, y / kr).clone(), n.module(x % kl, y % kr).clone()),
        |xp, x, y| {
            Ok((
                m.left_act(xp / kl, x / kl, y / kr).clone(),
                n.left_act(xp % kl, x % kl, y % kr).clone(),
            ))
        },
        |x, y, yp| {
            Ok((
                m.right_act(x / kl, y / kr, yp / kr).clone(),
                n.right_act(x % kl, y % kr, yp % kr).clone(),
            ))
        },
    )
}

/// `M ⊔ N` over the same categories, with both injections indexed
/// `x * |D| + y`.
pub fn direct_sum<B: Backend>(
    m: &VBimodule<B>,
    n: &VBimodule<B>,
) -> Result<(VBimodule<B>, Vec<B::Mor>, Vec<B::Mor>)> {
    if !same_category(m.left(), n.left()) || !same_category(m.right(), n.right()) {
        return Err(Error::CategoryMismatch("direct sum of bimodules over different categories".into()));
    }
    let b = m.backend();
    let (nx, ny) = (m.left().num_objects(), m.right().num_objects());
    let sums: Vec<_> = (0..nx * ny)
        .map(|e| b.coproduct(&[m.module(e / ny, e % ny).clone(), n.module(e / ny, e % ny).clone()]))
        .collect();
    let (c, d) = (m.left(), m.right());
    let sum = VBimodule::from_fn(
        c.clone(),
        d.clone(),
        |x, y| sums[x * ny + y].object.clone(),
        |xp, x, y| {
            let (s, t) = (&sums[x * ny + y], &sums[xp * ny + y]);
            let h = c.hom(xp, x);
            let parts: Vec<_> = s.summands.iter().map(|o| b.tensor(h, o)).collect();
            let maps = [
                b.compose(m.left_act(xp, x, y), &t.injections[0])?,
                b.compose(n.left_act(xp, x, y), &t.injections[1])?,
            ];
            b.compose(&b.distribute_left(h, &s.summands), &b.copair(&parts, &maps, &t.object)?)
        },
        |x, y, yp| {
            let (s, t) = (&sums[x * ny + y], &sums[x * ny + yp]);
            let h = d.hom(y, yp);
            let parts: Vec<_> = s.summands.iter().map(|o| b.tensor(o, h)).collect();
            let maps = [
                b.compose(m.right_act(x, y, yp), &t.injections[0])?,
                b.compose(n.right_act(x, y, yp), &t.injections[1])?,
            ];
            b.compose(&b.distribute_right(&s.summands, h), &b.copair(&parts, &maps, &t.object)?)
        },
    )?;
    let first = sums.iter().map(|s| s.injections[0].clone()).collect();
    let second = sums.iter().map(|s| s.injections[1].clone()).collect();
    Ok((sum, first, second))
}

/// Applies a monoidal functor to a bimodule and its categories.
pub fn change_of_base_bimodule<F: MonoidalFunctor>(
    f: &F,
    m: &VBimodule<F::Source>,
) -> Result<VBimodule<F::Target>> {
    let left = Arc::new(crate::enriched::change_of_base(f, m.left())?);
    let right = if same_category(m.left(), m.right()) {
        left.clone()
    } else {
        Arc::new(crate::enriched::change_of_base(f, m.right())?)
    };
    let t = f.target_backend();
    let (c, d) = (m.left(), m.right());
    VBimodule::from_fn(
        left,
        right,
        |x, y| f.map_object(m.module(x, y)),
        |xp, x, y| {
            t.compose(
                &f.tensor_comparison(c.hom(xp, x), m.module(x, y)),
                &f.map_morphism(m.left_act(xp, x, y)),
            )
        },
        |x, y, yp| {
            t.compose(
                &f.tensor_comparison(m.module(x, y), d.hom(y, yp)),
                &f.map_morphism(m.right_act(x, y, yp)),
            )
        },
    )
}

/// A relation between two preorders as a bimodule over `Bool`; fails
/// unless the relation is down-closed on the left and up-closed on the
/// right.
pub fn relation_bimodule(
    c: Arc<VCategory<Bool>>,
    d: Arc<VCategory<Bool>>,
    rel: &[Vec<bool>],
) -> Result<VBimodule<Bool>> {
    let (cc, dd) = (c.clone(), d.clone());
    VBimodule::from_fn(
        c,
        d,
        |x, y| rel[x][y],
        |xp, x, y| BoolMor::new(*cc.hom(xp, x) && rel[x][y], rel[xp][y]),
        |x, y, yp| BoolMor::new(rel[x][y] && *dd.hom(y, yp), rel[x][yp]),
    )
}

/// A map of bimodules `M -> M'` lying over functors `F` and `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleSquare<B: Backend> {
    pub top: Arc<VBimodule<B>>,
    pub bottom: Arc<VBimodule<B>>,
    pub left: VFunctor<B>,
    pub right: VFunctor<B>,
    cells: Vec<B::Mor>,
}

impl<B: Backend> BimoduleSquare<B> {
    /// `cells[x * |Y| + y]: M(x,y) -> M'(Fx, Gy)`; types are checked.
    pub fn new(
        top: Arc<VBimodule<B>>,
        bottom: Arc<VBimodule<B>>,
        left: VFunctor<B>,
        right: VFunctor<B>,
        cells: Vec<B::Mor>,
    ) -> Result<Self> {
        if !same_category(left.source(), top.left())
            || !same_category(right.source(), top.right())
            || !same_category(left.target(), bottom.left())
            || !same_category(right.target(), bottom.right())
        {
            return Err(Error::CategoryMismatch("square boundary does not match".into()));
        }
        let (nx, ny) = (top.left().num_objects(), top.right().num_objects());
        if cells.len() != nx * ny {
            return Err(Error::Shape("square has the wrong number of cells".into()));
        }
        let b = top.backend();
        for x in 0..nx {
            for y in 0..ny {
                let c = &cells[x * ny + y];
                if b.source(c) != *top.module(x, y)
                    || b.target(c) != *bottom.module(left.map_object(x), right.map_object(y))
                {
                    return Err(Error::Shape(format!("cell at ({x}, {y}) has the wrong type")));
                }
            }
        }
        Ok(BimoduleSquare {
            top,
            bottom,
            left,
            right,
            cells,
        })
    }

    /// The identity square on a bimodule.
    pub fn identity(m: Arc<VBimodule<B>>) -> Self {
        let b = m.backend().clone();
        let ny = m.right().num_objects();
        let cells = (0..m.left().num_objects() * ny)
            .map(|i| b.identity(m.module(i / ny, i % ny)))
            .collect();
        BimoduleSquare {
            left: VFunctor::identity(m.left().clone()),
            right: VFunctor::identity(m.right().clone()),
            top: m.clone(),
            bottom: m,
            cells,
        }
    }

    pub fn cell(&self, x: usize, y: usize) -> &B::Mor {
        &self.cells[x * self.top.right().num_objects() + y]
    }
}

impl<B: Backend> BimoduleSquare<B> {
    /// `self` followed by `next`, cell by cell.
    pub fn then(&self, next: &BimoduleSquare<B>) -> Result<BimoduleSquare<B>> {
        if *self.bottom != *next.top {
            return Err(Error::NotComposable("squares do not share a bimodule".into()));
        }
        let b = self.top.backend();
        let (nx, ny) = (self.top.left().num_objects(), self.top.right().num_objects());
        let cells = (0..nx * ny)
            .map(|i| {
                let (x, y) = (i / ny, i % ny);
                b.compose(self.cell(x, y), next.cell(self.left.map_object(x), self.right.map_object(y)))
            })
            .collect::<Result<_>>()?;
        BimoduleSquare::new(
            self.top.clone(),
            next.bottom.clone(),
            self.left.then(&next.left)?,
            self.right.then(&next.right)?,
            cells,
        )
    }

    /// Whether every cell is invertible.
    pub fn is_invertible(&self) -> bool {
        let b = self.top.backend();
        self.cells.iter().all(|c| b.is_invertible(c))
    }

    pub fn cells(&self) -> &[B::Mor] {
        &self.cells
    }
}

/// Checks that the cells commute with both actions.
pub fn validate_square<B: Backend>(s: &BimoduleSquare<B>) -> Report {
    let mut r = Report::new("square equivariance");
    let (m, mp, f, g) = (&s.top, &s.bottom, &s.left, &s.right);
    let b = m.backend();
    let (nx, ny) = (m.left().num_objects(), m.right().num_objects());
    let (lo, ro) = (m.left().objects(), m.right().objects());
    for xp in 0..nx {
        for x in 0..nx {
            for y in 0..ny {
                let lhs = b.compose(m.left_act(xp, x, y), s.cell(xp, y));
                let rhs = b.compose(
                    &b.tensor_mor(f.hom_map(xp, x), s.cell(x, y)),
                    mp.left_act(f.map_object(xp), f.map_object(x), g.map_object(y)),
                );
                r.check(same(lhs, rhs), || "left equivariance".into(), || {
                    format!("({}, {}, {})", lo[xp], lo[x], ro[y])
                });
            }
        }
    }
    for x in 0..nx {
        for y in 0..ny {
            for yp in 0..ny {
                let lhs = b.compose(m.right_act(x, y, yp), s.cell(x, yp));
                let rhs = b.compose(
                    &b.tensor_mor(s.cell(x, y), g.hom_map(y, yp)),
                    mp.right_act(f.map_object(x), g.map_object(y), g.map_object(yp)),
                );
                r.check(same(lhs, rhs), || "right equivariance".into(), || {
                    format!("({}, {}, {})", lo[x], ro[y], ro[yp])
                });
            }
        }
    }
    r
}
