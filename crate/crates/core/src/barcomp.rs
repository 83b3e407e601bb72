//! Composition of bimodules through the bar construction.
//!
//! Level `k` at `(x, z)` is the coproduct over `(y_0, ..., y_k)` of
//! `M(x,y_0) ⊗ B(y_0,y_1) ⊗ ... ⊗ N(y_k,z)`, with factors nested to the
//! left and tuples in lexicographic order. Face `d_i` merges the factor
//! pair at positions `k - i` and `k - i + 1`, so at level 1 `d_0` is the
//! action on `N` and `d_1` the action on `M`. The composite is the
//! coequalizer of `d_0, d_1` from level 1 to level 0.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bimodule::{validate_square, BimoduleSquare, VBimodule};
use crate::enriched::{same_category, VCategory, VFunctor};
use crate::error::{Error, Result};
use crate::generate::relation_product;
use crate::report::Report;
use crate::vbackend::tensor::{apply_grouped, nested};
use crate::vbackend::{
    factor_through_tensored, Backend, Bool, BoolMor, Coequalizer, Coproduct, FinSet, FinSetMor, FinSetObj, FinVect,
    Product, Side, DEFAULT_BOUND,
};

/// One `(x, z)` entry of a bar level.
#[derive(Clone, Debug)]
pub struct BarEntry<B: Backend> {
    pub tuples: Vec<Vec<usize>>,
    pub factors: Vec<Vec<B::Obj>>,
    pub coproduct: Coproduct<B>,
}

impl<B: Backend> BarEntry<B> {
    pub fn object(&self) -> &B::Obj {
        &self.coproduct.object
    }
}

#[derive(Clone, Debug)]
pub struct BarLevel<B: Backend> {
    pub k: usize,
    cols: usize,
    pub entries: Vec<BarEntry<B>>,
}

impl<B: Backend> BarLevel<B> {
    pub fn entry(&self, x: usize, z: usize) -> &BarEntry<B> {
        &self.entries[x * self.cols + z]
    }
}

fn tuple_index(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &d| acc * base + d)
}

fn check_composable<B: Backend>(m: &VBimodule<B>, n: &VBimodule<B>) -> Result<()> {
    if m.backend() != n.backend() {
        return Err(Error::BackendMismatch("bimodules use different backends".into()));
    }
    if !same_category(m.right(), n.left()) {
        return Err(Error::CategoryMismatch("middle categories differ".into()));
    }
    Ok(())
}

/// The bar level `k` of `M ⊗ B^k ⊗ N`; `bound` caps the number of tuples.
pub fn bar_level<B: Backend>(m: &VBimodule<B>, n: &VBimodule<B>, k: usize, bound: usize) -> Result<BarLevel<B>> {
    check_composable(m, n)?;
    let b = m.backend();
    let mid = m.right();
    let ny = mid.num_objects();
    let (nx, nz) = (m.left().num_objects(), n.right().num_objects());
    let count = (ny as u128).checked_pow(k as u32 + 1).unwrap_or(u128::MAX);
    if count > bound as u128 {
        return Err(Error::bound(format!("bar level {k} tuples"), count, bound));
    }
    let tuples: Vec<Vec<usize>> = (0..count as usize)
        .map(|mut i| {
            let mut t = vec![0; k + 1];
            for d in t.iter_mut().rev() {
                *d = i % ny;
                i /= ny;
            }
            t
        })
        .collect();
    let mut entries = Vec::with_capacity(nx * nz);
    for x in 0..nx {
        for z in 0..nz {
            let factors: Vec<Vec<B::Obj>> = tuples
                .iter()
                .map(|t| {
                    let mut f = Vec::with_capacity(k + 2);
                    f.push(m.module(x, t[0]).clone());
                    for w in t.windows(2) {
                        f.push(mid.hom(w[0], w[1]).clone());
                    }
                    f.push(n.module(t[k], z).clone());
                    f
                })
                .collect();
            let summands: Vec<B::Obj> = factors.iter().map(|f| nested(b, f)).collect();
            entries.push(BarEntry {
                tuples: tuples.clone(),
                factors,
                coproduct: b.coproduct(&summands),
            });
        }
    }
    Ok(BarLevel { k, cols: nz, entries })
}

/// Bar levels `0..=k_max` with their face and degeneracy maps.
#[derive(Clone, Debug)]
pub struct BarComplex<B: Backend> {
    m: VBimodule<B>,
    n: VBimodule<B>,
    levels: Vec<BarLevel<B>>,
}

impl<B: Backend> BarComplex<B> {
    pub fn new(m: &VBimodule<B>, n: &VBimodule<B>, k_max: usize, bound: usize) -> Result<Self> {
        let levels = (0..=k_max).map(|k| bar_level(m, n, k, bound)).collect::<Result<_>>()?;
        Ok(BarComplex {
            m: m.clone(),
            n: n.clone(),
            levels,
        })
    }

    pub fn k_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &BarLevel<B> {
        &self.levels[k]
    }

    fn dims(&self) -> (usize, usize, usize) {
        (
            self.m.left().num_objects(),
            self.m.right().num_objects(),
            self.n.right().num_objects(),
        )
    }

    /// `d_i` at `(x, z)`, from level `k` to level `k - 1`.
    pub fn face_at(&self, k: usize, i: usize, x: usize, z: usize) -> Result<B::Mor> {
        if k == 0 || i > k || k > self.k_max() {
            return Err(Error::OutOfRange(format!("face d_{i} at level {k}")));
        }
        let b = self.m.backend();
        let (_, ny, _) = self.dims();
        let s = k - i;
        let (src, tgt) = (self.levels[k].entry(x, z), self.levels[k - 1].entry(x, z));
        let mid = self.m.right();
        let mut maps = Vec::with_capacity(src.tuples.len());
        for (t, factors) in src.tuples.iter().zip(&src.factors) {
            let merge = if s == 0 {
                self.m.right_act(x, t[0], t[1]).clone()
            } else if s == k {
                self.n.left_act(t[k - 1], t[k], z).clone()
            } else {
                mid.comp(t[s - 1], t[s], t[s + 1]).clone()
            };
            let mut groups: Vec<(usize, B::Mor)> = Vec::with_capacity(k + 1);
            for f in &factors[..s] {
                groups.push((1, b.identity(f)));
            }
            groups.push((2, merge));
            for f in &factors[s + 2..] {
                groups.push((1, b.identity(f)));
            }
            let mut rest = t.clone();
            rest.remove(s);
            let g = apply_grouped(b, factors, &groups)?;
            maps.push(b.compose(&g, &tgt.coproduct.injections[tuple_index(&rest, ny)])?);
        }
        b.copair(&src.coproduct.summands, &maps, tgt.object())
    }

    /// `s_i` at `(x, z)`, from level `k` to level `k + 1`.
    pub fn degeneracy_at(&self, k: usize, i: usize, x: usize, z: usize) -> Result<B::Mor> {
        if i > k || k + 1 > self.k_max() {
            return Err(Error::OutOfRange(format!("degeneracy s_{i} at level {k}")));
        }
        let b = self.m.backend();
        let (_, ny, _) = self.dims();
        let t_pos = k - i;
        let (src, tgt) = (self.levels[k].entry(x, z), self.levels[k + 1].entry(x, z));
        let mid = self.m.right();
        let mut maps = Vec::with_capacity(src.tuples.len());
        for (t, factors) in src.tuples.iter().zip(&src.factors) {
            let mut groups: Vec<(usize, B::Mor)> = Vec::with_capacity(k + 3);
            for f in &factors[..=t_pos] {
                groups.push((1, b.identity(f)));
            }
            groups.push((0, mid.unit(t[t_pos]).clone()));
            for f in &factors[t_pos + 1..] {
                groups.push((1, b.identity(f)));
            }
            let mut longer = t.clone();
            longer.insert(t_pos, t[t_pos]);
            let g = apply_grouped(b, factors, &groups)?;
            maps.push(b.compose(&g, &tgt.coproduct.injections[tuple_index(&longer, ny)])?);
        }
        b.copair(&src.coproduct.summands, &maps, tgt.object())
    }

    /// `d_i` at every `(x, z)`, indexed `x * |Z| + z`.
    pub fn face(&self, k: usize, i: usize) -> Result<Vec<B::Mor>> {
        let (nx, _, nz) = self.dims();
        (0..nx * nz).map(|e| self.face_at(k, i, e / nz, e % nz)).collect()
    }

    pub fn degeneracy(&self, k: usize, i: usize) -> Result<Vec<B::Mor>> {
        let (nx, _, nz) = self.dims();
        (0..nx * nz).map(|e| self.degeneracy_at(k, i, e / nz, e % nz)).collect()
    }
}

/// Checks every simplicial identity among the faces and degeneracies
/// available up to the top level.
pub fn simplicial_identities<B: Backend>(bar: &BarComplex<B>) -> Result<Report> {
    let mut r = Report::new("simplicial identities");
    let b = bar.m.backend();
    let top = bar.k_max();
    let eq = |lhs: Vec<B::Mor>, rhs: Vec<B::Mor>| lhs == rhs;
    let comp = |f: Vec<B::Mor>, g: Vec<B::Mor>| -> Result<Vec<B::Mor>> {
        f.iter().zip(&g).map(|(a, c)| b.compose(a, c)).collect()
    };
    let ident = |k: usize| -> Vec<B::Mor> { bar.levels[k].entries.iter().map(|e| b.identity(e.object())).collect() };
    // d_i d_j = d_{j-1} d_i for i < j, applying d_j first
    for k in 2..=top {
        for j in 1..=k {
            for i in 0..j {
                let lhs = comp(bar.face(k, j)?, bar.face(k - 1, i)?)?;
                let rhs = comp(bar.face(k, i)?, bar.face(k - 1, j - 1)?)?;
                r.check(eq(lhs, rhs), || "d_i d_j = d_(j-1) d_i".into(), || format!("k={k} i={i} j={j}"));
            }
        }
    }
    for k in 0..top {
        for j in 0..=k {
            for i in 0..=k + 1 {
                let lhs = comp(bar.degeneracy(k, j)?, bar.face(k + 1, i)?)?;
                let rhs = if i < j {
                    comp(bar.face(k, i)?, bar.degeneracy(k - 1, j - 1)?)?
                } else if i == j || i == j + 1 {
                    ident(k)
                } else {
                    comp(bar.face(k, i - 1)?, bar.degeneracy(k - 1, j)?)?
                };
                r.check(eq(lhs, rhs), || "d_i s_j".into(), || format!("k={k} i={i} j={j}"));
            }
        }
    }
    for k in 0..top.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                let lhs = comp(bar.degeneracy(k, j)?, bar.degeneracy(k + 1, i)?)?;
                let rhs = comp(bar.degeneracy(k, i)?, bar.degeneracy(k + 1, j + 1)?)?;
                r.check(eq(lhs, rhs), || "s_i s_j = s_(j+1) s_i".into(), || format!("k={k} i={i} j={j}"));
            }
        }
    }
    Ok(r)
}

/// A composite bimodule with the coequalizers presenting it.
#[derive(Clone, Debug)]
pub struct CompositeWitness<B: Backend> {
    pub bimodule: Arc<VBimodule<B>>,
    pub bar: BarComplex<B>,
    coequalizers: Vec<Coequalizer<B>>,
}

impl<B: Backend> CompositeWitness<B> {
    pub fn coequalizer(&self, x: usize, z: usize) -> &Coequalizer<B> {
        &self.coequalizers[x * self.bimodule.right().num_objects() + z]
    }

    pub fn projection(&self, x: usize, z: usize) -> &B::Mor {
        &self.coequalizer(x, z).projection
    }

    /// The map `M(x,y) ⊗ N(y,z) -> (M ⊗ N)(x,z)`.
    pub fn summand_map(&self, x: usize, y: usize, z: usize) -> Result<B::Mor> {
        let b = self.bimodule.backend();
        let e = self.bar.level(0).entry(x, z);
        b.compose(&e.coproduct.injections[y], self.projection(x, z))
    }

    /// Factors `h` out of level 0 at `(x, z)` through the composite.
    pub fn factor(&self, x: usize, z: usize, h: &B::Mor) -> Result<B::Mor> {
        self.bimodule.backend().factor_through_coequalizer(h, self.coequalizer(x, z))
    }

    /// Builds a map out of the composite at `(x, z)` from one map per
    /// middle object `y` on `M(x,y) ⊗ N(y,z)`.
    pub fn induced(&self, x: usize, z: usize, per_y: &[B::Mor], target: &B::Obj) -> Result<B::Mor> {
        let b = self.bimodule.backend();
        let e = self.bar.level(0).entry(x, z);
        let h = b.copair(&e.coproduct.summands, per_y, target)?;
        self.factor(x, z, &h)
    }
}

/// `M ⊗_B N` as the coequalizer of the two faces from level 1 to level 0,
/// with the outer actions induced through it.
pub fn compose_bimodules<B: Backend>(m: &VBimodule<B>, n: &VBimodule<B>) -> Result<CompositeWitness<B>> {
    compose_bimodules_bounded(m, n, DEFAULT_BOUND)
}

pub fn compose_bimodules_bounded<B: Backend>(
    m: &VBimodule<B>,
    n: &VBimodule<B>,
    bound: usize,
) -> Result<CompositeWitness<B>> {
    let bar = BarComplex::new(m, n, 1, bound)?;
    let b = m.backend();
    let (c, e) = (m.left(), n.right());
    let (nx, ny, nz) = (c.num_objects(), m.right().num_objects(), e.num_objects());
    let mut coequalizers = Vec::with_capacity(nx * nz);
    for x in 0..nx {
        for z in 0..nz {
            coequalizers.push(b.coequalizer(&bar.face_at(1, 0, x, z)?, &bar.face_at(1, 1, x, z)?)?);
        }
    }
    let obj = |x: usize, z: usize| coequalizers[x * nz + z].object.clone();
    let into = |x: usize, y: usize, z: usize| -> Result<B::Mor> {
        b.compose(&bar.level(0).entry(x, z).coproduct.injections[y], &coequalizers[x * nz + z].projection)
    };
    let left_act = |xp: usize, x: usize, z: usize| -> Result<B::Mor> {
        let a = c.hom(xp, x);
        let e0 = bar.level(0).entry(x, z);
        let per_y = (0..ny)
            .map(|y| {
                let (mm, nn) = (m.module(x, y), n.module(y, z));
                b.compose_all(&[
                    &b.associator_inv(a, mm, nn),
                    &b.tensor_mor(m.left_act(xp, x, y), &b.identity(nn)),
                    &into(xp, y, z)?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        let parts: Vec<B::Obj> = e0.coproduct.summands.iter().map(|s| b.tensor(a, s)).collect();
        let spread = b.compose(&b.distribute_left(a, &e0.coproduct.summands), &b.copair(&parts, &per_y, &obj(xp, z))?)?;
        factor_through_tensored(b, Side::Left, a, &coequalizers[x * nz + z], &spread)
    };
    let right_act = |x: usize, z: usize, zp: usize| -> Result<B::Mor> {
        let a = e.hom(z, zp);
        let e0 = bar.level(0).entry(x, z);
        let per_y = (0..ny)
            .map(|y| {
                let (mm, nn) = (m.module(x, y), n.module(y, z));
                b.compose_all(&[
                    &b.associator(mm, nn, a),
                    &b.tensor_mor(&b.identity(mm), n.right_act(y, z, zp)),
                    &into(x, y, zp)?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        let parts: Vec<B::Obj> = e0.coproduct.summands.iter().map(|s| b.tensor(s, a)).collect();
        let spread = b.compose(&b.distribute_right(&e0.coproduct.summands, a), &b.copair(&parts, &per_y, &obj(x, zp))?)?;
        factor_through_tensored(b, Side::Right, a, &coequalizers[x * nz + z], &spread)
    };
    let bimodule = VBimodule::from_fn(c.clone(), e.clone(), obj, left_act, right_act)?;
    Ok(CompositeWitness {
        bimodule: Arc::new(bimodule),
        bar,
        coequalizers,
    })
}

fn identity_square_between<B: Backend>(
    top: Arc<VBimodule<B>>,
    bottom: Arc<VBimodule<B>>,
    cells: Vec<B::Mor>,
) -> Result<BimoduleSquare<B>> {
    let (l, r) = (VFunctor::identity(top.left().clone()), VFunctor::identity(top.right().clone()));
    BimoduleSquare::new(top, bottom, l, r, cells)
}

/// The comparison `B ⊗_B N -> N` induced by the left action.
pub fn unitor<B: Backend>(n: &VBimodule<B>) -> Result<BimoduleSquare<B>> {
    let hb = crate::bimodule::hom_bimodule(n.left().clone());
    let w = compose_bimodules(&hb, n)?;
    let (nb, nz) = (n.left().num_objects(), n.right().num_objects());
    let cells = (0..nb * nz)
        .map(|i| {
            let (x, z) = (i / nz, i % nz);
            let per_y: Vec<B::Mor> = (0..nb).map(|y| n.left_act(x, y, z).clone()).collect();
            w.induced(x, z, &per_y, n.module(x, z))
        })
        .collect::<Result<_>>()?;
    identity_square_between(w.bimodule.clone(), Arc::new(n.clone()), cells)
}

/// The comparison `M ⊗_B B -> M` induced by the right action.
pub fn unitor_right<B: Backend>(m: &VBimodule<B>) -> Result<BimoduleSquare<B>> {
    let hb = crate::bimodule::hom_bimodule(m.right().clone());
    let w = compose_bimodules(m, &hb)?;
    let (nx, nb) = (m.left().num_objects(), m.right().num_objects());
    let cells = (0..nx * nb)
        .map(|i| {
            let (x, z) = (i / nb, i % nb);
            let per_y: Vec<B::Mor> = (0..nb).map(|y| m.right_act(x, y, z).clone()).collect();
            w.induced(x, z, &per_y, m.module(x, z))
        })
        .collect::<Result<_>>()?;
    identity_square_between(w.bimodule.clone(), Arc::new(m.clone()), cells)
}

/// The comparison `(M ⊗ N) ⊗ P -> M ⊗ (N ⊗ P)`.
pub fn associator<B: Backend>(m: &VBimodule<B>, n: &VBimodule<B>, p: &VBimodule<B>) -> Result<BimoduleSquare<B>> {
    let mn = compose_bimodules(m, n)?;
    let left = compose_bimodules(&mn.bimodule, p)?;
    let np = compose_bimodules(n, p)?;
    let right = compose_bimodules(m, &np.bimodule)?;
    associator_between(m, n, p, &mn, &left, &np, &right)
}

fn associator_between<B: Backend>(
    m: &VBimodule<B>,
    n: &VBimodule<B>,
    p: &VBimodule<B>,
    mn: &CompositeWitness<B>,
    left: &CompositeWitness<B>,
    np: &CompositeWitness<B>,
    right: &CompositeWitness<B>,
) -> Result<BimoduleSquare<B>> {
    let b = m.backend();
    let (nx, ny, nz, nw) = (
        m.left().num_objects(),
        n.left().num_objects(),
        p.left().num_objects(),
        p.right().num_objects(),
    );
    let mut cells = Vec::with_capacity(nx * nw);
    for x in 0..nx {
        for w in 0..nw {
            let target = right.bimodule.module(x, w).clone();
            let mut per_z = Vec::with_capacity(nz);
            for z in 0..nz {
                let pp = p.module(z, w);
                let e0 = mn.bar.level(0).entry(x, z);
                let per_y = (0..ny)
                    .map(|y| {
                        let (mm, nn) = (m.module(x, y), n.module(y, z));
                        b.compose_all(&[
                            &b.associator(mm, nn, pp),
                            &b.tensor_mor(&b.identity(mm), &np.summand_map(y, z, w)?),
                            &right.summand_map(x, y, w)?,
                        ])
                    })
                    .collect::<Result<Vec<_>>>()?;
                let parts: Vec<B::Obj> = e0.coproduct.summands.iter().map(|s| b.tensor(s, pp)).collect();
                let spread = b.compose(
                    &b.distribute_right(&e0.coproduct.summands, pp),
                    &b.copair(&parts, &per_y, &target)?,
                )?;
                per_z.push(factor_through_tensored(b, Side::Right, pp, mn.coequalizer(x, z), &spread)?);
            }
            cells.push(left.induced(x, w, &per_z, &target)?);
        }
    }
    identity_square_between(left.bimodule.clone(), right.bimodule.clone(), cells)
}

/// Horizontal composite of two squares `M -> M'` over `(F, G)` and
/// `N -> N'` over `(G, H)`, as a square between the composites.
pub fn compose_squares<B: Backend>(
    s1: &BimoduleSquare<B>,
    s2: &BimoduleSquare<B>,
    top: &CompositeWitness<B>,
    bottom: &CompositeWitness<B>,
) -> Result<BimoduleSquare<B>> {
    if s1.right != s2.left {
        return Err(Error::NotComposable("squares do not share a middle functor".into()));
    }
    let b = top.bimodule.backend();
    let g = &s1.right;
    let (nx, ny, nz) = (
        s1.top.left().num_objects(),
        s1.top.right().num_objects(),
        s2.top.right().num_objects(),
    );
    let mut cells = Vec::with_capacity(nx * nz);
    for x in 0..nx {
        for z in 0..nz {
            let (fx, hz) = (s1.left.map_object(x), s2.right.map_object(z));
            let per_y = (0..ny)
                .map(|y| {
                    b.compose(
                        &b.tensor_mor(s1.cell(x, y), s2.cell(y, z)),
                        &bottom.summand_map(fx, g.map_object(y), hz)?,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(top.induced(x, z, &per_y, bottom.bimodule.module(fx, hz))?);
        }
    }
    BimoduleSquare::new(
        top.bimodule.clone(),
        bottom.bimodule.clone(),
        s1.left.clone(),
        s2.right.clone(),
        cells,
    )
}

/// The two ways of rebracketing `((M N) P) Q` into `M (N (P Q))` agree and
/// are invertible.
pub fn bracketing_check<B: Backend>(
    m: &VBimodule<B>,
    n: &VBimodule<B>,
    p: &VBimodule<B>,
    q: &VBimodule<B>,
) -> Result<Report> {
    let mut r = Report::new("bracketings of a four-fold composite");
    let mn = compose_bimodules(m, n)?;
    let np = compose_bimodules(n, p)?;
    let pq = compose_bimodules(p, q)?;
    let mn_p = compose_bimodules(&mn.bimodule, p)?;
    let m_np = compose_bimodules(m, &np.bimodule)?;
    let mn_p_q = compose_bimodules(&mn_p.bimodule, q)?;
    let mn_pq = compose_bimodules(&mn.bimodule, &pq.bimodule)?;
    let n_pq = compose_bimodules(n, &pq.bimodule)?;
    let m_n_pq = compose_bimodules(m, &n_pq.bimodule)?;
    let m_np_q = compose_bimodules(&m_np.bimodule, q)?;
    let np_q = compose_bimodules(&np.bimodule, q)?;
    let m_np_q2 = compose_bimodules(m, &np_q.bimodule)?;

    // ((MN)P)Q -> (MN)(PQ) -> M(N(PQ))
    let a1 = associator_between(&mn.bimodule, p, q, &mn_p, &mn_p_q, &pq, &mn_pq)?;
    let a2 = associator_between(m, n, &pq.bimodule, &mn, &mn_pq, &n_pq, &m_n_pq)?;
    let path1 = a1.then(&a2)?;
    // ((MN)P)Q -> (M(NP))Q -> M((NP)Q) -> M(N(PQ))
    let a_mnp = associator_between(m, n, p, &mn, &mn_p, &np, &m_np)?;
    let b1 = compose_squares(&a_mnp, &BimoduleSquare::identity(Arc::new(q.clone())), &mn_p_q, &m_np_q)?;
    let b2 = associator_between(m, &np.bimodule, q, &m_np, &m_np_q, &np_q, &m_np_q2)?;
    let a_npq = associator_between(n, p, q, &np, &np_q, &pq, &n_pq)?;
    let b3 = compose_squares(&BimoduleSquare::identity(Arc::new(m.clone())), &a_npq, &m_np_q2, &m_n_pq)?;
    let path2 = b1.then(&b2)?.then(&b3)?;
    for (name, s) in [("first path", &path1), ("second path", &path2)] {
        r.check(s.is_invertible(), || "invertible".into(), || name.into());
        r.absorb(name, validate_square(s));
    }
    r.check(path1.cells() == path2.cells(), || "paths agree".into(), || "cells differ".into());
    Ok(r)
}

/// Backends with a direct, element-level computation of the composite.
pub trait CoendOracle: Backend {
    /// The composite computed without the bar construction.
    fn coend_oracle(m: &VBimodule<Self>, n: &VBimodule<Self>) -> Result<VBimodule<Self>> {
        let _ = (m, n);
        Err(Error::Unsupported("no coend oracle for this backend".into()))
    }

    /// The map `M(x,y) ⊗ N(y,z) -> O(x,z)` into the oracle's answer.
    fn oracle_summand(
        m: &VBimodule<Self>,
        n: &VBimodule<Self>,
        oracle: &VBimodule<Self>,
        x: usize,
        y: usize,
        z: usize,
    ) -> Result<Self::Mor> {
        let _ = (m, n, oracle, x, y, z);
        Err(Error::Unsupported("no coend oracle for this backend".into()))
    }
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

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Keeps the smaller index as the root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The set-level quotient at one `(x, z)`: triples `(y, m, n)` in order,
/// with a class index for each.
struct SetQuotient {
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    labels: Vec<String>,
}

fn set_quotient(m: &VBimodule<FinSet>, n: &VBimodule<FinSet>, x: usize, z: usize) -> SetQuotient {
    let mid = m.right();
    let ny = mid.num_objects();
    let mut offsets = Vec::with_capacity(ny + 1);
    let mut total = 0;
    for y in 0..ny {
        offsets.push(total);
        total += m.module(x, y).len() * n.module(y, z).len();
    }
    offsets.push(total);
    let pos = |y: usize, a: usize, c: usize| offsets[y] + a * n.module(y, z).len() + c;
    let mut uf = UnionFind::new(total);
    for y in 0..ny {
        for yp in 0..ny {
            let beta = mid.hom(y, yp);
            let (ra, la) = (m.right_act(x, y, yp), n.left_act(y, yp, z));
            // (m.β, n) ~ (m, β.n) for m in M(x,y), β in B(y,y'), n in N(y',z)
            for a in 0..m.module(x, y).len() {
                for bt in 0..beta.len() {
                    for c in 0..n.module(yp, z).len() {
                        let moved_m = ra.apply(a * beta.len() + bt);
                        let moved_n = la.apply(bt * n.module(yp, z).len() + c);
                        uf.union(pos(yp, moved_m, c), pos(y, a, moved_n));
                    }
                }
            }
        }
    }
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut class_of = Vec::with_capacity(total);
    for y in 0..ny {
        for a in 0..m.module(x, y).len() {
            for c in 0..n.module(y, z).len() {
                let root = uf.find(pos(y, a, c));
                let next = class_index.len();
                let k = *class_index.entry(root).or_insert_with(|| {
                    labels.push(format!(
                        "[{}|{}|{}]",
                        mid.objects()[y],
                        m.module(x, y).label(a),
                        n.module(y, z).label(c)
                    ));
                    next
                });
                class_of.push(k);
            }
        }
    }
    SetQuotient {
        offsets,
        class_of,
        labels,
    }
}

impl CoendOracle for FinSet {
    fn coend_oracle(m: &VBimodule<FinSet>, n: &VBimodule<FinSet>) -> Result<VBimodule<FinSet>> {
        check_composable(m, n)?;
        let s = FinSet;
        let (c, e) = (m.left(), n.right());
        let (nx, nz) = (c.num_objects(), e.num_objects());
        let ny = m.right().num_objects();
        let quotients: Vec<SetQuotient> = (0..nx * nz).map(|i| set_quotient(m, n, i / nz, i % nz)).collect();
        let objs: Vec<FinSetObj> = quotients
            .iter()
            .map(|q| s.object(q.labels.clone()))
            .collect::<Result<_>>()?;
        let q = |x: usize, z: usize| &quotients[x * nz + z];
        let obj = |x: usize, z: usize| objs[x * nz + z].clone();
        // a representative triple of each class
        let reps = |x: usize, z: usize| -> Vec<(usize, usize, usize)> {
            let qq = q(x, z);
            let mut out = vec![None; qq.labels.len()];
            for y in 0..ny {
                let width = n.module(y, z).len();
                for i in qq.offsets[y]..qq.offsets[y + 1] {
                    let k = qq.class_of[i];
                    if out[k].is_none() {
                        let local = i - qq.offsets[y];
                        out[k] = Some((y, local / width, local % width));
                    }
                }
            }
            out.into_iter().map(|r| r.expect("every class has a member")).collect()
        };
        let class = |x: usize, z: usize, y: usize, a: usize, cc: usize| {
            let qq = q(x, z);
            qq.class_of[qq.offsets[y] + a * n.module(y, z).len() + cc]
        };
        VBimodule::from_fn(
            c.clone(),
            e.clone(),
            obj,
            |xp, x, z| {
                let hom = c.hom(xp, x);
                let r = reps(x, z);
                let mut table = Vec::with_capacity(hom.len() * r.len());
                for g in 0..hom.len() {
                    for &(y, a, cc) in &r {
                        let moved = m.left_act(xp, x, y).apply(g * m.module(x, y).len() + a);
                        table.push(class(xp, z, y, moved, cc));
                    }
                }
                s.function(&s.tensor(hom, &obj(x, z)), &obj(xp, z), table)
            },
            |x, z, zp| {
                let hom = e.hom(z, zp);
                let r = reps(x, z);
                let mut table = Vec::with_capacity(hom.len() * r.len());
                for &(y, a, cc) in &r {
                    for g in 0..hom.len() {
                        let moved = n.right_act(y, z, zp).apply(cc * hom.len() + g);
                        table.push(class(x, zp, y, a, moved));
                    }
                }
                s.function(&s.tensor(&obj(x, z), hom), &obj(x, zp), table)
            },
        )
    }

    fn oracle_summand(
        m: &VBimodule<FinSet>,
        n: &VBimodule<FinSet>,
        oracle: &VBimodule<FinSet>,
        x: usize,
        y: usize,
        z: usize,
    ) -> Result<FinSetMor> {
        let s = FinSet;
        let q = set_quotient(m, n, x, z);
        let table = q.class_of[q.offsets[y]..q.offsets[y + 1]].to_vec();
        s.function(&s.tensor(m.module(x, y), n.module(y, z)), oracle.module(x, z), table)
    }
}

impl CoendOracle for Bool {
    fn coend_oracle(m: &VBimodule<Bool>, n: &VBimodule<Bool>) -> Result<VBimodule<Bool>> {
        check_composable(m, n)?;
        let rel = relation_product(&crate::generate::relation_of(m), &crate::generate::relation_of(n));
        crate::bimodule::relation_bimodule(m.left().clone(), n.right().clone(), &rel)
    }

    fn oracle_summand(
        m: &VBimodule<Bool>,
        n: &VBimodule<Bool>,
        oracle: &VBimodule<Bool>,
        x: usize,
        y: usize,
        z: usize,
    ) -> Result<BoolMor> {
        BoolMor::new(*m.module(x, y) && *n.module(y, z), *oracle.module(x, z))
    }
}

impl CoendOracle for FinVect {}
impl<V: Backend, W: Backend> CoendOracle for Product<V, W> {}

/// Builds the canonical comparison from the composite to the oracle and
/// checks that it is invertible and commutes with both actions.
pub fn oracle_agreement<B: CoendOracle>(m: &VBimodule<B>, n: &VBimodule<B>) -> Result<Report> {
    let w = compose_bimodules(m, n)?;
    oracle_agreement_with(m, n, &w)
}

pub fn oracle_agreement_with<B: CoendOracle>(
    m: &VBimodule<B>,
    n: &VBimodule<B>,
    w: &CompositeWitness<B>,
) -> Result<Report> {
    let oracle = Arc::new(B::coend_oracle(m, n)?);
    let (nx, ny, nz) = (m.left().num_objects(), m.right().num_objects(), n.right().num_objects());
    let mut cells = Vec::with_capacity(nx * nz);
    for x in 0..nx {
        for z in 0..nz {
            let per_y = (0..ny)
                .map(|y| B::oracle_summand(m, n, &oracle, x, y, z))
                .collect::<Result<Vec<_>>>()?;
            cells.push(w.induced(x, z, &per_y, oracle.module(x, z))?);
        }
    }
    let sq = identity_square_between(w.bimodule.clone(), oracle, cells)?;
    let mut r = Report::new("oracle agreement");
    let b = m.backend();
    for x in 0..nx {
        for z in 0..nz {
            r.check(b.is_invertible(sq.cell(x, z)), || "comparison is invertible".into(), || {
                format!("({}, {})", m.left().objects()[x], n.right().objects()[z])
            });
        }
    }
    r.absorb("comparison", validate_square(&sq));
    Ok(r)
}

/// The colimit of the bar levels `0..=k_max` under all faces and
/// degeneracies agrees with the coequalizer of levels 0 and 1.
pub fn realization_truncation_check<B: Backend>(m: &VBimodule<B>, n: &VBimodule<B>, k_max: usize) -> Result<Report> {
    realization_truncation_check_bounded(m, n, k_max, DEFAULT_BOUND)
}

pub fn realization_truncation_check_bounded<B: Backend>(
    m: &VBimodule<B>,
    n: &VBimodule<B>,
    k_max: usize,
    bound: usize,
) -> Result<Report> {
    if k_max < 2 {
        return Err(Error::Precondition("truncation level must be at least 2".into()));
    }
    let w = compose_bimodules_bounded(m, n, bound)?;
    let bar = BarComplex::new(m, n, k_max, bound)?;
    let b = m.backend();
    let (nx, nz) = (m.left().num_objects(), n.right().num_objects());
    let mut r = Report::new(format!("bar truncation at level {k_max}"));
    for x in 0..nx {
        for z in 0..nz {
            let levels: Vec<B::Obj> = (0..=k_max).map(|k| bar.level(k).entry(x, z).object().clone()).collect();
            let all = b.coproduct(&levels);
            // generating arrows: (source level, target level, map)
            let mut arrows: Vec<(usize, usize, B::Mor)> = Vec::new();
            for k in 1..=k_max {
                for i in 0..=k {
                    arrows.push((k, k - 1, bar.face_at(k, i, x, z)?));
                }
            }
            for k in 0..k_max {
                for i in 0..=k {
                    arrows.push((k, k + 1, bar.degeneracy_at(k, i, x, z)?));
                }
            }
            let sources: Vec<B::Obj> = arrows.iter().map(|a| levels[a.0].clone()).collect();
            let stay: Vec<B::Mor> = arrows.iter().map(|a| all.injections[a.0].clone()).collect();
            let moved = arrows
                .iter()
                .map(|a| b.compose(&a.2, &all.injections[a.1]))
                .collect::<Result<Vec<_>>>()?;
            let f = b.copair(&sources, &stay, &all.object)?;
            let g = b.copair(&sources, &moved, &all.object)?;
            let colim = b.coequalizer(&f, &g)?;
            let from_level0 = b.compose(&all.injections[0], &colim.projection)?;
            let comparison = w.factor(x, z, &from_level0)?;
            r.check(b.is_invertible(&comparison), || "comparison is invertible".into(), || {
                format!("({}, {})", m.left().objects()[x], n.right().objects()[z])
            });
        }
    }
    Ok(r)
}

/// A one-object category with trivial hom, for tests and examples.
pub fn unit_category<B: Backend>(backend: B) -> VCategory<B> {
    crate::enriched::interval_category(0, backend)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{hom_bimodule, validate_bimodule};
    use crate::generate::{self, bool_bimodule, bool_category, Concrete, ConcreteModule};

    fn random_triple(seed: u64, max_objects: usize, max_hom: usize) -> (VBimodule<FinSet>, VBimodule<FinSet>) {
        let mut r = generate::rng(seed);
        let chain = generate::ConcreteChain::random(&mut r, 2, max_objects, max_hom);
        let (_, mods) = chain.realize();
        (mods[0].clone(), mods[1].clone())
    }

    #[test]
    fn level_sizes() {
        // |Y| = 2 with every factor of size 2 at k = 1: 4 summands of 8
        let s = FinSet;
        let two = s.numbered(2);
        let y = Arc::new(
            VCategory::from_fn(
                s,
                vec!["a".into(), "b".into()],
                |_, _| two.clone(),
                |_| s.element(&two, 0),
                |_, _, _| s.function(&s.tensor(&two, &two), &two, vec![0, 1, 1, 0]),
            )
            .unwrap(),
        );
        let x = Arc::new(unit_category(s));
        let m = VBimodule::from_fn(
            x.clone(),
            y.clone(),
            |_, _| two.clone(),
            |_, _, _| Ok(s.left_unitor(&two)),
            |_, _, _| s.function(&s.tensor(&two, &two), &two, vec![0, 1, 1, 0]),
        )
        .unwrap();
        let n = VBimodule::from_fn(
            y.clone(),
            x,
            |_, _| two.clone(),
            |_, _, _| s.function(&s.tensor(&two, &two), &two, vec![0, 1, 1, 0]),
            |_, _, _| Ok(s.right_unitor(&two)),
        )
        .unwrap();
        let l1 = bar_level(&m, &n, 1, 100).unwrap();
        let e = l1.entry(0, 0);
        assert_eq!(e.tuples.len(), 4);
        assert!(e.coproduct.summands.iter().all(|o| o.len() == 8));
        assert_eq!(e.object().len(), 32);
        assert!(bar_level(&m, &n, 7, 100).unwrap_err().is_budget());
    }

    #[test]
    fn free_group_action_has_one_class() {
        // B = Z/2 acting freely on M(*,y) = Z/2, N(y,*) a point
        let s = FinSet;
        let g = s.object(["e", "t"]).unwrap();
        let pt = s.unit_object();
        let grp = Arc::new(
            VCategory::new(
                s,
                vec!["y".into()],
                vec![g.clone()],
                vec![s.element(&g, 0).unwrap()],
                vec![s.function(&s.tensor(&g, &g), &g, vec![0, 1, 1, 0]).unwrap()],
            )
            .unwrap(),
        );
        let one = Arc::new(unit_category(s));
        let m = VBimodule::from_fn(
            one.clone(),
            grp.clone(),
            |_, _| g.clone(),
            |_, _, _| Ok(s.left_unitor(&g)),
            |_, _, _| s.function(&s.tensor(&g, &g), &g, vec![0, 1, 1, 0]),
        )
        .unwrap();
        let n = VBimodule::from_fn(
            grp,
            one,
            |_, _| pt.clone(),
            |_, _, _| s.function(&s.tensor(&g, &pt), &pt, vec![0, 0]),
            |_, _, _| Ok(s.right_unitor(&pt)),
        )
        .unwrap();
        assert!(validate_bimodule(&m).passed() && validate_bimodule(&n).passed());
        let w = compose_bimodules(&m, &n).unwrap();
        assert_eq!(w.bimodule.module(0, 0).len(), 1);
        assert_eq!(FinSet::coend_oracle(&m, &n).unwrap().module(0, 0).len(), 1);
        assert!(oracle_agreement(&m, &n).unwrap().passed());
    }

    #[test]
    fn bool_composite_is_relation_product() {
        let le = vec![vec![true, true], vec![false, true]];
        let c = Arc::new(bool_category("x", &le).unwrap());
        let rels = generate::all_module_relations(&le, &le);
        for a in &rels {
            for bb in &rels {
                let (m, n) = (bool_bimodule(&c, &c, a).unwrap(), bool_bimodule(&c, &c, bb).unwrap());
                let w = compose_bimodules(&m, &n).unwrap();
                assert_eq!(generate::relation_of(&w.bimodule), relation_product(a, bb));
                assert!(validate_bimodule(&w.bimodule).passed());
                assert!(oracle_agreement(&m, &n).unwrap().passed());
            }
        }
    }

    #[test]
    fn random_finset_composites_match_oracle() {
        for seed in 0..20 {
            let (m, n) = random_triple(seed, 2, 3);
            let w = compose_bimodules(&m, &n).unwrap();
            assert!(validate_bimodule(&w.bimodule).passed(), "seed {seed}");
            let r = oracle_agreement_with(&m, &n, &w).unwrap();
            assert!(r.passed(), "seed {seed}: {r}");
        }
    }

    #[test]
    fn faces_and_degeneracies() {
        for seed in 0..4 {
            let (m, n) = random_triple(seed, 2, 2);
            let bar = BarComplex::new(&m, &n, 3, 10_000).unwrap();
            let r = simplicial_identities(&bar).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checked > 20);
        }
        let (m, n) = random_triple(9, 2, 2);
        let bar = BarComplex::new(&m, &n, 2, 10_000).unwrap();
        assert!(bar.face(0, 0).is_err());
        assert!(bar.face(2, 3).is_err());
        assert!(bar.degeneracy(2, 0).is_err());
    }

    #[test]
    fn unitors_and_associators_are_invertible() {
        for seed in 0..6 {
            let mut r = generate::rng(seed);
            let chain = generate::ConcreteChain::random(&mut r, 3, 2, 2);
            let (_, mods) = chain.realize();
            for md in &mods {
                let u = unitor(md).unwrap();
                assert!(u.is_invertible() && validate_square(&u).passed());
                let u = unitor_right(md).unwrap();
                assert!(u.is_invertible() && validate_square(&u).passed());
            }
            let a = associator(&mods[0], &mods[1], &mods[2]).unwrap();
            assert!(a.is_invertible(), "seed {seed}");
            assert!(validate_square(&a).passed());
        }
    }

    #[test]
    fn unit_middle_category_multiplies() {
        let mut r = generate::rng(3);
        let a = Concrete::random(&mut r, "a", 2, 2, 3);
        let one = Concrete {
            names: vec!["u".into()],
            carriers: vec![1],
            homs: vec![[vec![0]].into_iter().collect()],
        };
        let ac = Arc::new(a.to_category());
        let oc = Arc::new(one.to_category());
        let m = ConcreteModule::random(&mut r, &a, &one, 3).to_bimodule(&a, &one, ac.clone(), oc.clone());
        let n = ConcreteModule::random(&mut r, &one, &a, 3).to_bimodule(&one, &a, oc, ac);
        let w = compose_bimodules(&m, &n).unwrap();
        for x in 0..2 {
            for z in 0..2 {
                assert_eq!(w.bimodule.module(x, z).len(), m.module(x, 0).len() * n.module(0, z).len());
            }
        }
    }

    #[test]
    fn truncation_agrees() {
        for seed in 0..3 {
            let (m, n) = random_triple(seed, 2, 2);
            let r = realization_truncation_check(&m, &n, 2).unwrap();
            assert!(r.passed(), "{r}");
        }
        let le = vec![vec![true, true], vec![false, true]];
        let c = Arc::new(bool_category("x", &le).unwrap());
        let m = hom_bimodule(c.clone());
        assert!(realization_truncation_check(&m, &m, 2).unwrap().passed());
    }

    #[test]
    fn four_fold_bracketings() {
        for seed in 0..3 {
            let mut r = generate::rng(seed);
            let chain = generate::ConcreteChain::random(&mut r, 4, 2, 2);
            let (_, mods) = chain.realize();
            let rep = bracketing_check(&mods[0], &mods[1], &mods[2], &mods[3]).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn mismatched_middle_is_rejected() {
        let (m, _) = random_triple(1, 2, 2);
        assert!(matches!(compose_bimodules(&m, &m), Err(Error::CategoryMismatch(_))));
    }
}
