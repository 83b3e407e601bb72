use std::fmt;

use super::{Backend, BackendDescriptor, Coequalizer, Coproduct};
use crate::error::{Error, Result};

/// Finite-dimensional vector spaces over the prime field `F_p`, with
/// Kronecker product as tensor and direct sum as coproduct.
///
/// Basis order matters: `e_i ⊗ f_j` sits at index `i * dim(b) + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinVect {
    p: u32,
}

/// A matrix over `F_p`, row-major. As a morphism its source dimension is
/// `cols` and its target dimension is `rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FinVect {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > 65_521 {
            return Err(Error::Unsupported(format!("{p} is not a supported prime")));
        }
        Ok(FinVect { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// A matrix from row vectors; entries are reduced mod `p`.
    pub fn matrix(&self, rows: usize, cols: usize, entries: &[Vec<u32>]) -> Result<Matrix> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected a {rows}x{cols} matrix")));
        }
        Ok(Matrix {
            rows,
            cols,
            data: entries.iter().flatten().map(|&v| v % self.p).collect(),
        })
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    fn mul_s(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    fn inv_s(&self, a: u32) -> u32 {
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// `g * f`
    pub fn multiply(&self, g: &Matrix, f: &Matrix) -> Result<Matrix> {
        if g.cols != f.rows {
            return Err(Error::NotComposable(format!("{f:?} then {g:?}")));
        }
        let mut out = Matrix::zero(g.rows, f.cols);
        for i in 0..g.rows {
            for k in 0..g.cols {
                let a = g.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..f.cols {
                    let v = self.add(out.get(i, j), self.mul_s(a, f.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn subtract(&self, a: &Matrix, b: &Matrix) -> Matrix {
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a
                .data
                .iter()
                .zip(&b.data)
                .map(|(&x, &y)| self.add(x, self.neg(y)))
                .collect(),
        }
    }

    fn transpose(m: &Matrix) -> Matrix {
        let mut t = Matrix::zero(m.cols, m.rows);
        for r in 0..m.rows {
            for c in 0..m.cols {
                t.set(c, r, m.get(r, c));
            }
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, m: &Matrix) -> (Matrix, Vec<usize>) {
        let mut a = m.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
                continue;
            };
            for c in 0..a.cols {
                let tmp = a.get(row, c);
                a.set(row, c, a.get(pr, c));
                a.set(pr, c, tmp);
            }
            let inv = self.inv_s(a.get(row, col));
            for c in 0..a.cols {
                let v = self.mul_s(a.get(row, c), inv);
                a.set(row, c, v);
            }
            for r in 0..a.rows {
                let factor = a.get(r, col);
                if r == row || factor == 0 {
                    continue;
                }
                for c in 0..a.cols {
                    let v = self.add(a.get(r, c), self.neg(self.mul_s(factor, a.get(row, c))));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        self.rref(m).1.len()
    }

    fn permutation(&self, target_of: &[usize]) -> Matrix {
        let n = target_of.len();
        let mut m = Matrix::zero(n, n);
        for (src, &tgt) in target_of.iter().enumerate() {
            m.set(tgt, src, 1);
        }
        m
    }

    fn all_vectors(&self, len: usize, bound: usize) -> Result<Vec<Vec<u32>>> {
        let count = (self.p as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        if count > bound as u128 {
            return Err(Error::bound(format!("vectors of F_{}^{len}", self.p), count, bound));
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = vec![0u32; len];
        loop {
            out.push(cur.clone());
            let Some(pos) = (0..len).rev().find(|&i| cur[i] + 1 < self.p) else {
                break;
            };
            cur[pos] += 1;
            for c in cur.iter_mut().skip(pos + 1) {
                *c = 0;
            }
        }
        Ok(out)
    }
}

impl Backend for FinVect {
    type Obj = usize;
    type Mor = Matrix;

    fn descriptor(&self) -> BackendDescriptor {
        BackendDescriptor::FinVect { p: self.p }
    }

    fn source(&self, f: &Matrix) -> usize {
        f.cols
    }

    fn target(&self, f: &Matrix) -> usize {
        f.rows
    }

    fn identity(&self, a: &usize) -> Matrix {
        Matrix::identity(*a)
    }

    fn compose(&self, f: &Matrix, g: &Matrix) -> Result<Matrix> {
        self.multiply(g, f)
    }

    fn unit_object(&self) -> usize {
        1
    }

    fn initial_object(&self) -> usize {
        0
    }

    fn is_initial(&self, a: &usize) -> bool {
        *a == 0
    }

    fn from_initial(&self, source: &usize, target: &usize) -> Result<Matrix> {
        if *source != 0 {
            return Err(Error::Precondition(format!("dimension {source} is not initial")));
        }
        Ok(Matrix::zero(*target, 0))
    }

    fn tensor(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn tensor_mor(&self, f: &Matrix, g: &Matrix) -> Matrix {
        let mut out = Matrix::zero(f.rows * g.rows, f.cols * g.cols);
        for i1 in 0..f.rows {
            for j1 in 0..f.cols {
                let a = f.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..g.rows {
                    for j2 in 0..g.cols {
                        out.set(i1 * g.rows + i2, j1 * g.cols + j2, self.mul_s(a, g.get(i2, j2)));
                    }
                }
            }
        }
        out
    }

    fn left_unitor(&self, a: &usize) -> Matrix {
        Matrix::identity(*a)
    }

    fn right_unitor(&self, a: &usize) -> Matrix {
        Matrix::identity(*a)
    }

    fn associator(&self, a: &usize, b: &usize, c: &usize) -> Matrix {
        Matrix::identity(a * b * c)
    }

    fn left_unitor_inv(&self, a: &usize) -> Matrix {
        Matrix::identity(*a)
    }

    fn right_unitor_inv(&self, a: &usize) -> Matrix {
        Matrix::identity(*a)
    }

    fn associator_inv(&self, a: &usize, b: &usize, c: &usize) -> Matrix {
        Matrix::identity(a * b * c)
    }

    fn coproduct(&self, objs: &[usize]) -> Coproduct<Self> {
        let total: usize = objs.iter().sum();
        let mut off = 0;
        let injections = objs
            .iter()
            .map(|&d| {
                let mut m = Matrix::zero(total, d);
                for k in 0..d {
                    m.set(off + k, k, 1);
                }
                off += d;
                m
            })
            .collect();
        Coproduct {
            summands: objs.to_vec(),
            object: total,
            injections,
        }
    }

    fn copair(&self, objs: &[usize], maps: &[Matrix], target: &usize) -> Result<Matrix> {
        if objs.len() != maps.len() {
            return Err(Error::Shape("copair needs one map per summand".into()));
        }
        let total: usize = objs.iter().sum();
        let mut out = Matrix::zero(*target, total);
        let mut off = 0;
        for (&d, m) in objs.iter().zip(maps) {
            if m.cols != d || m.rows != *target {
                return Err(Error::NotComposable(format!("copair component {m:?}")));
            }
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.set(r, off + c, m.get(r, c));
                }
            }
            off += d;
        }
        Ok(out)
    }

    fn distribute_left(&self, a: &usize, objs: &[usize]) -> Matrix {
        let total: usize = objs.iter().sum();
        let mut target_of = vec![0; a * total];
        for alpha in 0..*a {
            let mut off = 0;
            for &b in objs {
                for beta in 0..b {
                    target_of[alpha * total + off + beta] = a * off + alpha * b + beta;
                }
                off += b;
            }
        }
        self.permutation(&target_of)
    }

    fn distribute_right(&self, objs: &[usize], a: &usize) -> Matrix {
        Matrix::identity(objs.iter().sum::<usize>() * a)
    }

    fn coequalizer(&self, f: &Matrix, g: &Matrix) -> Result<Coequalizer<Self>> {
        self.check_parallel(f, g)?;
        let d = f.rows;
        let diff = self.subtract(f, g);
        // rows of the echelon form of the transpose span the image of f - g
        let (basis, pivots) = self.rref(&Self::transpose(&diff));
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let mut proj = Matrix::zero(free.len(), d);
        for (k, &c) in free.iter().enumerate() {
            proj.set(k, c, 1);
        }
        for (r, &pc) in pivots.iter().enumerate() {
            for (k, &c) in free.iter().enumerate() {
                proj.set(k, pc, self.neg(basis.get(r, c)));
            }
        }
        Ok(Coequalizer {
            pair: (f.clone(), g.clone()),
            object: free.len(),
            projection: proj,
        })
    }

    fn factor_through_coequalizer(&self, h: &Matrix, coeq: &Coequalizer<Self>) -> Result<Matrix> {
        let (f, g) = &coeq.pair;
        if h.cols != f.rows {
            return Err(Error::NotComposable("factored map has the wrong source".into()));
        }
        if self.multiply(h, f)? != self.multiply(h, g)? {
            return Err(Error::DoesNotCoequalize);
        }
        // a section of the projection: quotient basis vector k lifts to the
        // k-th non-pivot standard vector, which is where proj has its identity block
        let q = &coeq.projection;
        let mut section = Matrix::zero(q.cols, q.rows);
        for k in 0..q.rows {
            let c = (0..q.cols)
                .find(|&c| q.get(k, c) == 1 && (0..q.rows).all(|k2| k2 == k || q.get(k2, c) == 0))
                .ok_or_else(|| Error::Shape("projection is not in canonical form".into()))?;
            section.set(c, k, 1);
        }
        let u = self.multiply(h, &section)?;
        if self.multiply(&u, q)? != *h {
            return Err(Error::DoesNotCoequalize);
        }
        Ok(u)
    }

    fn inverse(&self, f: &Matrix) -> Option<Matrix> {
        if f.rows != f.cols {
            return None;
        }
        let n = f.rows;
        if n == 0 {
            return Some(Matrix::zero(0, 0));
        }
        let mut aug = Matrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, f.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, pivots) = self.rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Some(inv)
    }

    fn global_elements(&self, a: &usize, bound: usize) -> Result<Vec<Matrix>> {
        Ok(self
            .all_vectors(*a, bound)?
            .into_iter()
            .map(|v| Matrix {
                rows: *a,
                cols: 1,
                data: v,
            })
            .collect())
    }

    fn hom_set(&self, a: &usize, b: &usize, bound: usize) -> Result<Vec<Matrix>> {
        Ok(self
            .all_vectors(a * b, bound)?
            .into_iter()
            .map(|v| Matrix {
                rows: *b,
                cols: *a,
                data: v,
            })
            .collect())
    }

    fn show_object(&self, a: &usize) -> String {
        format!("F{}^{}", self.p, a)
    }

    fn show_morphism(&self, f: &Matrix) -> String {
        format!("{f:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let v = FinVect::new(2).unwrap();
        assert_eq!(v.tensor(&2, &3), 6);
        assert_eq!(v.unit_object(), 1);
        assert_eq!(v.global_elements(&2, 16).unwrap().len(), 4);
        assert!(v.global_elements(&20, 16).is_err());
        assert!(FinVect::new(4).is_err());
    }

    #[test]
    fn cokernel_and_factorization() {
        let v = FinVect::new(3).unwrap();
        let f = v.matrix(3, 1, &[vec![1], vec![2], vec![0]]).unwrap();
        let g = Matrix::zero(3, 1);
        let q = v.coequalizer(&f, &g).unwrap();
        assert_eq!(q.object, 2);
        assert_eq!(v.multiply(&q.projection, &f).unwrap(), Matrix::zero(2, 1));
        let u = v.factor_through_coequalizer(&q.projection, &q).unwrap();
        assert_eq!(u, Matrix::identity(2));
        // h kills (1,2,0): h = [1 1 0] since 1 + 2 = 0 mod 3
        let h = v.matrix(1, 3, &[vec![1, 1, 0]]).unwrap();
        let u = v.factor_through_coequalizer(&h, &q).unwrap();
        assert_eq!(v.multiply(&u, &q.projection).unwrap(), h);
        let bad = v.matrix(1, 3, &[vec![1, 0, 0]]).unwrap();
        assert!(v.factor_through_coequalizer(&bad, &q).is_err());
    }

    #[test]
    fn inverses() {
        let v = FinVect::new(5).unwrap();
        let m = v.matrix(2, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = v.inverse(&m).unwrap();
        assert_eq!(v.multiply(&m, &inv).unwrap(), Matrix::identity(2));
        let s = v.matrix(2, 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(v.inverse(&s).is_none());
        assert!(v.inverse(&Matrix::zero(0, 0)).is_some());
    }

    #[test]
    fn kronecker_is_functorial() {
        let v = FinVect::new(2).unwrap();
        let a = v.matrix(2, 2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = v.matrix(1, 2, &[vec![1, 0]]).unwrap();
        let lhs = v.tensor_mor(&v.multiply(&a, &a).unwrap(), &v.multiply(&b, &Matrix::identity(2)).unwrap());
        let rhs = v
            .multiply(&v.tensor_mor(&a, &b), &v.tensor_mor(&a, &Matrix::identity(2)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
