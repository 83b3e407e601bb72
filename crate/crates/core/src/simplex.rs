//! Monotone maps between finite ordinals `[m] = {0, ..., m}`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{Arrow, FiniteCategory};

/// Default limit on the number of maps produced by [`enumerate_maps`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 1 << 20;

/// A weakly increasing map `[m] -> [n]`, stored as its list of values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimplexMap {
    target_rank: usize,
    values: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapClass {
    Inert,
    Active,
    /// Both inert and active, which forces an identity.
    Identity,
    Generic,
}

impl SimplexMap {
    pub fn new(target_rank: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMap("a map needs at least one value".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!("{values:?} is not monotone")));
        }
        if values.iter().any(|&v| v > target_rank) {
            return Err(Error::InvalidMap(format!(
                "{values:?} leaves [{target_rank}]"
            )));
        }
        Ok(SimplexMap {
            target_rank,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap {
            target_rank: n,
            values: (0..=n).collect(),
        }
    }

    /// The unique map `[m] -> [0]`.
    pub fn terminal(m: usize) -> Self {
        SimplexMap {
            target_rank: 0,
            values: vec![0; m + 1],
        }
    }

    /// The constant map `[m] -> [n]` with value `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Result<Self> {
        Self::new(n, vec![v; m + 1])
    }

    /// The sub-interval inclusion `[len] -> [n]` starting at `start`.
    pub fn interval(start: usize, len: usize, n: usize) -> Result<Self> {
        Self::new(n, (start..=start + len).collect())
    }

    /// The coface `[n-1] -> [n]` that skips `i`.
    pub fn coface(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::OutOfRange(format!("coface {i} into [{n}]")));
        }
        Ok(SimplexMap {
            target_rank: n,
            values: (0..=n).filter(|&v| v != i).collect(),
        })
    }

    /// The codegeneracy `[n+1] -> [n]` that hits `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::OutOfRange(format!("codegeneracy {i} onto [{n}]")));
        }
        Ok(SimplexMap {
            target_rank: n,
            values: (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect(),
        })
    }

    pub fn source_rank(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn first(&self) -> usize {
        self.values[0]
    }

    pub fn last(&self) -> usize {
        *self.values.last().expect("nonempty")
    }

    /// `self` followed by `g`, i.e. the composite `g ∘ self`.
    pub fn then(&self, g: &SimplexMap) -> Result<SimplexMap> {
        compose(self, g)
    }

    pub fn is_identity(&self) -> bool {
        self.source_rank() == self.target_rank && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_inert(&self) -> bool {
        let a = self.values[0];
        self.values.iter().enumerate().all(|(i, &v)| v == a + i)
    }

    pub fn is_active(&self) -> bool {
        self.values[0] == 0 && self.last() == self.target_rank
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.is_active() && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }
}

impl fmt::Debug for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "({}):[{}]->[{}]",
            vals.join(","),
            self.source_rank(),
            self.target_rank
        )
    }
}

/// The composite "first `f`, then `g`" (that is, `g ∘ f`).
pub fn compose(f: &SimplexMap, g: &SimplexMap) -> Result<SimplexMap> {
    if f.target_rank != g.source_rank() {
        return Err(Error::RankMismatch(format!(
            "cannot follow {f} by {g}"
        )));
    }
    Ok(SimplexMap {
        target_rank: g.target_rank,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

pub fn classify(f: &SimplexMap) -> MapClass {
    match (f.is_inert(), f.is_active()) {
        (true, true) => MapClass::Identity,
        (true, false) => MapClass::Inert,
        (false, true) => MapClass::Active,
        (false, false) => MapClass::Generic,
    }
}

/// Splits `f` as `inert ∘ active` through its image interval `[f(0), f(m)]`.
pub fn factor_active_inert(f: &SimplexMap) -> (SimplexMap, SimplexMap) {
    let a = f.first();
    let b = f.last();
    let active = SimplexMap {
        target_rank: b - a,
        values: f.values.iter().map(|&v| v - a).collect(),
    };
    let inert = SimplexMap {
        target_rank: f.target_rank,
        values: (a..=b).collect(),
    };
    (active, inert)
}

/// The inert map `[1] -> [n]` picking the edge `{i-1, i}`.
pub fn rho(i: usize, n: usize) -> Result<SimplexMap> {
    if i == 0 || i > n {
        return Err(Error::OutOfRange(format!("rho({i}, {n}) needs 1 <= i <= n")));
    }
    Ok(SimplexMap {
        target_rank: n,
        values: vec![i - 1, i],
    })
}

pub fn is_cellular(f: &SimplexMap) -> bool {
    f.values.windows(2).all(|w| w[1] - w[0] <= 1)
}

/// Cellularity of `alpha` relative to `phi`: steps of `alpha` may not jump
/// past the next value of `phi`, and outside the image range of `phi` they
/// must have size at most one.
pub fn is_phi_cellular(alpha: &SimplexMap, phi: &SimplexMap) -> Result<bool> {
    if alpha.target_rank != phi.target_rank {
        return Err(Error::RankMismatch(format!(
            "{alpha} and {phi} have different targets"
        )));
    }
    let p = phi.values();
    let lo = phi.first();
    let hi = phi.last();
    for w in alpha.values.windows(2) {
        let (a, b) = (w[0], w[1]);
        let ok = if a < lo || a >= hi {
            b <= a + 1
        } else {
            // a lies in some block [p_j, p_{j+1}) with p_j < p_{j+1}
            let next = p.iter().copied().find(|&v| v > a).expect("a < last value of phi");
            b <= next
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `C(n+m+1, m+1)`, the number of maps `[m] -> [n]`.
pub fn count_maps(m: usize, n: usize) -> u128 {
    binomial((n + m + 1) as u128, (m + 1) as u128)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// All maps `[m] -> [n]` in lexicographic order of their value lists.
pub fn enumerate_maps(m: usize, n: usize) -> Result<Vec<SimplexMap>> {
    enumerate_maps_bounded(m, n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_maps_bounded(m: usize, n: usize, bound: usize) -> Result<Vec<SimplexMap>> {
    let count = count_maps(m, n);
    if count > bound as u128 {
        return Err(Error::bound(format!("maps [{m}]->[{n}]"), count, bound));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(SimplexMap {
            target_rank: n,
            values: cur.clone(),
        });
        // next weakly increasing tuple in lexicographic order
        let Some(pos) = (0..=m).rev().find(|&i| cur[i] < n) else {
            break;
        };
        let v = cur[pos] + 1;
        for c in cur.iter_mut().skip(pos) {
            *c = v;
        }
    }
    Ok(out)
}

/// All maps into `[n]` with source rank at most `max_rank`, ordered by
/// source rank and then lexicographically.
pub fn maps_into(n: usize, max_rank: usize, cellular_only: bool) -> Result<Vec<SimplexMap>> {
    let mut out = Vec::new();
    for m in 0..=max_rank {
        for f in enumerate_maps(m, n)? {
            if !cellular_only || is_cellular(&f) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// The rank-truncated slice `Δ_{/[n]}` viewed through its opposite.
///
/// Objects are maps `φ: [m] -> [n]`. An arrow `φ -> ψ` with `ψ: [k] -> [n]`
/// is labeled by the map `δ: [k] -> [m]` of Δ with `φ ∘ δ = ψ`, so arrows
/// run against the direction of `δ`.
pub fn slice_category(
    n: usize,
    cellular_only: bool,
    max_rank: usize,
) -> Result<FiniteCategory<SimplexMap, SimplexMap>> {
    let objects = maps_into(n, max_rank, cellular_only)?;
    let index: std::collections::HashMap<SimplexMap, usize> =
        objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mut arrows = Vec::new();
    let mut lookup = std::collections::HashMap::new();
    let mut identities = vec![0; objects.len()];
    for (s, phi) in objects.iter().enumerate() {
        for k in 0..=max_rank {
            for delta in enumerate_maps(k, phi.source_rank())? {
                let psi = compose(&delta, phi)?;
                if let Some(&t) = index.get(&psi) {
                    if delta.is_identity() {
                        identities[s] = arrows.len();
                    }
                    lookup.insert((s, delta.clone()), arrows.len());
                    arrows.push(Arrow {
                        source: s,
                        target: t,
                        label: delta,
                    });
                }
            }
        }
    }
    let labels: Vec<(usize, SimplexMap)> =
        arrows.iter().map(|a| (a.source, a.label.clone())).collect();
    FiniteCategory::new(objects, arrows, identities, |f, g| {
        let delta = compose(&labels[g].1, &labels[f].1).ok()?;
        lookup.get(&(labels[f].0, delta)).copied()
    })
}
