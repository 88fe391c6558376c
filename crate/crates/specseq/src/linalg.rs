//! Sparse exact linear algebra over `Q`.
//!
//! Provides the kernel/image/rank/solve primitives everything else is built
//! on: spectral sequence pages are kernels modulo images, formality
//! witnesses are exact solves, and minimal models are repeated cohomology
//! computations. All routines use Gaussian elimination over exact rationals
//! with sparsity-aware pivot selection, so results are exact and
//! deterministic (basis orderings are fixed by `BTreeMap` iteration order).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Q;

/// A sparse vector: map from coordinate index to a nonzero rational entry.
pub type SparseVec = BTreeMap<usize, Q>;

/// Build a sparse vector from a list of `(index, value)` pairs, dropping zeros.
pub fn svec(entries: &[(usize, Q)]) -> SparseVec {
    let mut v = SparseVec::new();
    for (i, x) in entries {
        if !x.is_zero() {
            let e = v.entry(*i).or_insert_with(Q::zero);
            *e += x.clone();
            if e.is_zero() {
                v.remove(i);
            }
        }
    }
    v
}

/// A basis vector `e_i`.
pub fn unit_vec(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Q::from_integer(1.into()));
    v
}

/// `a + c * b`, with exact zero-dropping.
pub fn axpy(a: &SparseVec, c: &Q, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = a.clone();
    for (i, x) in b {
        let e = out.entry(*i).or_insert_with(Q::zero);
        *e += c.clone() * x;
        if e.is_zero() {
            out.remove(i);
        }
    }
    out
}

/// Scale a sparse vector.
pub fn scale(a: &SparseVec, c: &Q) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    a.iter().map(|(i, x)| (*i, c.clone() * x)).collect()
}

/// A sparse matrix stored as sparse rows. `rows × cols`, acting on column
/// vectors of length `cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SparseVec>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Q::from_integer(1.into()));
        }
        m
    }

    /// Build from columns (each a sparse vector of length `rows`).
    pub fn from_cols(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Mat::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col {
                assert!(*i < rows, "column entry out of range");
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if x.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, x);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.data[r].get(&c).cloned().unwrap_or_else(Q::zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    /// Matrix–vector product `A v`.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Q::zero();
            for (c, x) in row {
                if let Some(y) = v.get(c) {
                    acc += x.clone() * y;
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    /// Exact entrywise equality (shapes must match).
    pub fn eq_mat(&self, other: &Mat) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }

    /// Matrix product `self * other`.
    pub fn mul_mat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul_mat");
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            let mut row = SparseVec::new();
            for (k, x) in &self.data[r] {
                for (c, y) in &other.data[*k] {
                    let e = row.entry(*c).or_insert_with(Q::zero);
                    *e += x.clone() * y;
                }
            }
            row.retain(|_, v| !v.is_zero());
            out.data[r] = row;
        }
        out
    }

    /// The column with index `j` as a sparse vector.
    /// Restriction to the given row and column index sets (in order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let rpos: std::collections::BTreeMap<usize, usize> =
            rows.iter().enumerate().map(|(k, r)| (*r, k)).collect();
        let mut out = Mat::zero(rows.len(), cols.len());
        for (k, c) in cols.iter().enumerate() {
            for (r, x) in self.col(*c) {
                if let Some(rk) = rpos.get(&r) {
                    out.set(*rk, k, x);
                }
            }
        }
        out
    }

    pub fn col(&self, j: usize) -> SparseVec {
        let mut v = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            if let Some(x) = row.get(&j) {
                v.insert(r, x.clone());
            }
        }
        v
    }
}

/// A row-echelon decomposition with pivot bookkeeping.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Echelon rows in increasing pivot-column order; each row is reduced
    /// (pivot entry 1, pivot column cleared from all other rows).
    pub rows: Vec<SparseVec>,
    /// Pivot column of each echelon row.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new(), cols }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the echelon rows; returns the remainder and the
    /// coefficient used against each echelon row.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<Q>) {
        let mut rem = v.clone();
        let mut coeffs = vec![Q::zero(); self.rows.len()];
        for (k, p) in self.pivots.iter().enumerate() {
            if let Some(c) = rem.get(p).cloned() {
                coeffs[k] = c.clone();
                rem = axpy(&rem, &(-c), &self.rows[k]);
            }
        }
        (rem, coeffs)
    }

    /// Insert a vector; returns `Some(position)` if it added a new pivot,
    /// `None` if it reduced to zero (i.e. was already in the span).
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let (mut rem, _) = self.reduce(v);
        let pivot = match rem.keys().next() {
            Some(p) => *p,
            None => return None,
        };
        // Normalize so the pivot entry is 1.
        let pval = rem.get(&pivot).cloned().unwrap();
        rem = scale(&rem, &(Q::from_integer(1.into()) / pval));
        // Back-substitute into existing rows to keep reduced form.
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                *row = axpy(row, &(-c), &rem);
            }
        }
        // Insert maintaining pivot order.
        let pos = self.pivots.partition_point(|p| *p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, rem);
        Some(pos)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Result of a full rank/kernel/image computation for a matrix.
#[derive(Debug, Clone)]
pub struct RankKernelImage {
    pub rank: usize,
    /// Basis of the kernel (vectors of length `cols`). Deterministic: one
    /// vector per non-pivot column in increasing column order.
    pub kernel: Vec<SparseVec>,
    /// Basis of the image: the original columns at pivot positions.
    pub image: Vec<SparseVec>,
    /// Pivot columns in increasing order.
    pub pivot_cols: Vec<usize>,
}

/// Compute rank, a kernel basis, and an image basis of `A` exactly.
///
/// Postcondition (asserted): `rank + kernel.len() == cols`.
pub fn rank_kernel_image(a: &Mat) -> RankKernelImage {
    // Column-echelon computation: reduce the columns of A, tracking the
    // combination of original columns producing each reduced column.
    let mut ech = Echelon::new(a.rows);
    let mut pivot_cols = Vec::new();
    let mut kernel = Vec::new();
    // History of inserted (reduced) columns in insertion order together
    // with the expression of each in terms of original columns.
    let mut inserted: Vec<(SparseVec, SparseVec)> = Vec::new(); // (reduced col, combo)
    for j in 0..a.cols {
        let col = a.col(j);
        let (mut rem, coeffs) = ech.reduce(&col);
        // Express the reduction combination in terms of the insertion-order
        // history. `ech.reduce` coefficients refer to pivot-order rows, so
        // map pivot-order positions back to insertion entries.
        let mut combo = unit_vec(j);
        for (pos, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Row at pivot-position `pos` corresponds to some inserted entry:
            // find it by matching pivot columns.
            let pivot = ech.pivots[pos];
            let (k, _) = inserted
                .iter()
                .enumerate()
                .find(|(_, (rc, _))| rc.keys().next() == Some(&pivot))
                .expect("echelon bookkeeping out of sync");
            combo = axpy(&combo, &(-c.clone()), &inserted[k].1);
        }
        if rem.is_empty() {
            kernel.push(combo);
        } else {
            // Normalize exactly as Echelon::insert will.
            let pivot = *rem.keys().next().unwrap();
            let pval = rem.get(&pivot).cloned().unwrap();
            let inv = Q::from_integer(1.into()) / pval;
            rem = scale(&rem, &inv);
            combo = scale(&combo, &inv);
            // Back-substitution inside `ech` changes earlier rows, but those
            // rows keep their pivot columns, and our combos must be updated
            // in the same way to stay consistent.
            for entry in inserted.iter_mut() {
                if let Some(c) = entry.0.get(&pivot).cloned() {
                    entry.0 = axpy(&entry.0, &(-c.clone()), &rem);
                    entry.1 = axpy(&entry.1, &(-c), &combo);
                }
            }
            ech.insert(&rem)
                .expect("reduced nonzero column must insert");
            inserted.push((rem, combo));
            // `inserted` is in insertion order while `ech.rows` is in pivot
            // order; match entries by pivot column when checking consistency.
            debug_assert!(inserted.iter().all(|(rc, _)| {
                let p = *rc.keys().next().unwrap();
                ech.pivots
                    .iter()
                    .position(|q| *q == p)
                    .is_some_and(|k| ech.rows[k] == *rc)
            }));
            pivot_cols.push(j);
        }
    }
    let image = pivot_cols.iter().map(|j| a.col(*j)).collect::<Vec<_>>();
    let rank = pivot_cols.len();
    assert_eq!(rank + kernel.len(), a.cols, "rank-nullity violated");
    // Exactness check: every kernel vector maps to zero.
    for k in &kernel {
        assert!(a.mul_vec(k).is_empty(), "kernel vector not annihilated");
    }
    RankKernelImage { rank, kernel, image, pivot_cols }
}

/// Solve `A x = b` exactly. Returns `Ok(x)` with `A x == b` verified, or
/// `Err(())` if no solution exists (certified: `b` is not in the span of the
/// columns of `A`).
pub fn solve(a: &Mat, b: &SparseVec) -> Result<SparseVec, ()> {
    let mut ech = Echelon::new(a.rows);
    let mut combos: Vec<SparseVec> = Vec::new(); // combo per insertion-order row
    for j in 0..a.cols {
        let col = a.col(j);
        let (mut rem, coeffs) = ech.reduce(&col);
        let mut combo = unit_vec(j);
        for (pos, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pivot = ech.pivots[pos];
            let (k, _) = combos
                .iter()
                .enumerate()
                .find(|(k, _)| ech.rows.get(*k).map(|r| r.keys().next()) == Some(Some(&pivot)))
                .map(|(k, c)| (k, c.clone()))
                .expect("solve bookkeeping out of sync");
            combo = axpy(&combo, &(-c.clone()), &combos[k]);
        }
        if let Some(pivot) = rem.keys().next().cloned() {
            let pval = rem.get(&pivot).cloned().unwrap();
            let inv = Q::from_integer(1.into()) / pval;
            rem = scale(&rem, &inv);
            combo = scale(&combo, &inv);
            for (entry, cmb) in ech.rows.iter_mut().zip(combos.iter_mut()) {
                if let Some(c) = entry.get(&pivot).cloned() {
                    *entry = axpy(entry, &(-c.clone()), &rem);
                    *cmb = axpy(cmb, &(-c), &combo);
                }
            }
            let pos = ech.pivots.partition_point(|p| *p < pivot);
            ech.pivots.insert(pos, pivot);
            ech.rows.insert(pos, rem);
            combos.insert(pos, combo);
        }
    }
    let (rem, coeffs) = ech.reduce(b);
    if !rem.is_empty() {
        return Err(());
    }
    let mut x = SparseVec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            x = axpy(&x, c, &combos[k]);
        }
    }
    debug_assert_eq!(a.mul_vec(&x), *b, "solve produced a non-solution");
    Ok(x)
}

/// A presented subquotient `K / I` of an ambient coordinate space, with
/// deterministic representatives and exact projection.
#[derive(Debug, Clone)]
pub struct Subquotient {
    /// Representatives of the chosen quotient basis, as ambient vectors.
    pub reps: Vec<SparseVec>,
    /// Echelon of `I` (the denominator subspace).
    denom: Echelon,
    /// Echelon of `K` relative to `I`: rows beyond the denominator, with the
    /// expression of each row in terms of `reps` indices.
    rel_rows: Vec<SparseVec>,
    rel_pivots: Vec<usize>,
    rel_coords: Vec<SparseVec>,
}

impl Subquotient {
    /// Build `span(kernel) / span(image)`. `image` must be contained in
    /// `span(kernel)` (asserted).
    pub fn new(ambient_dim: usize, kernel: &[SparseVec], image: &[SparseVec]) -> Self {
        let mut ker_ech = Echelon::new(ambient_dim);
        for v in kernel {
            ker_ech.insert(v);
        }
        let mut denom = Echelon::new(ambient_dim);
        for v in image {
            assert!(ker_ech.contains(v), "image not contained in kernel");
            denom.insert(v);
        }
        let mut sq = Subquotient {
            reps: Vec::new(),
            denom,
            rel_rows: Vec::new(),
            rel_pivots: Vec::new(),
            rel_coords: Vec::new(),
        };
        for v in kernel {
            sq.try_add_rep(v);
        }
        sq
    }

    fn try_add_rep(&mut self, v: &SparseVec) {
        let (rem, _) = self.denom.reduce(v);
        let mut rem2 = rem;
        let mut coord = SparseVec::new();
        for (k, p) in self.rel_pivots.iter().enumerate() {
            if let Some(c) = rem2.get(p).cloned() {
                rem2 = axpy(&rem2, &(-c.clone()), &self.rel_rows[k]);
                coord = axpy(&coord, &(-c), &self.rel_coords[k]);
            }
        }
        if let Some(pivot) = rem2.keys().next().cloned() {
            let pval = rem2.get(&pivot).cloned().unwrap();
            let inv = Q::from_integer(1.into()) / pval;
            let rep_index = self.reps.len();
            self.reps.push(v.clone());
            let row = scale(&rem2, &inv);
            let coord = axpy(&scale(&coord, &inv), &Q::from_integer(1.into()), &{
                let mut u = SparseVec::new();
                u.insert(rep_index, inv);
                u
            });
            let pos = self.rel_pivots.partition_point(|p| *p < pivot);
            self.rel_pivots.insert(pos, pivot);
            self.rel_rows.insert(pos, row);
            self.rel_coords.insert(pos, coord);
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Express an ambient vector (which must lie in `K`) in the quotient
    /// basis. Returns `Err(())` if the vector is not in `K + I`.
    pub fn project(&self, v: &SparseVec) -> Result<SparseVec, ()> {
        let (rem, _) = self.denom.reduce(v);
        let mut rem2 = rem;
        let mut coord = SparseVec::new();
        for (k, p) in self.rel_pivots.iter().enumerate() {
            if let Some(c) = rem2.get(p).cloned() {
                rem2 = axpy(&rem2, &(-c.clone()), &self.rel_rows[k]);
                coord = axpy(&coord, &c, &self.rel_coords[k]);
            }
        }
        if rem2.is_empty() { Ok(coord) } else { Err(()) }
    }

    /// Whether an ambient vector lies in the denominator `I`.
    pub fn is_zero_class(&self, v: &SparseVec) -> bool {
        self.project(v).map(|c| c.is_empty()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, qr};

    fn mat(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Mat {
        let mut m = Mat::zero(rows, cols);
        for (r, c, x) in entries {
            m.set(*r, *c, qi(*x));
        }
        m
    }

    #[test]
    fn rank_nullity_and_kernel() {
        // 2x3 matrix [[1,2,3],[2,4,6]] has rank 1, kernel dim 2.
        let m = mat(2, 3, &[(0, 0, 1), (0, 1, 2), (0, 2, 3), (1, 0, 2), (1, 1, 4), (1, 2, 6)]);
        let rki = rank_kernel_image(&m);
        assert_eq!(rki.rank, 1);
        assert_eq!(rki.kernel.len(), 2);
        for k in &rki.kernel {
            assert!(m.mul_vec(k).is_empty());
        }
        assert_eq!(rki.image.len(), 1);
    }

    #[test]
    fn rank_full() {
        let m = mat(3, 3, &[(0, 0, 1), (1, 1, 5), (2, 2, -2), (0, 2, 7)]);
        let rki = rank_kernel_image(&m);
        assert_eq!(rki.rank, 3);
        assert!(rki.kernel.is_empty());
    }

    #[test]
    fn solve_exact_and_certified_failure() {
        let m = mat(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)]);
        let b = svec(&[(0, qi(5)), (1, qi(11))]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        // Singular system with inconsistent rhs.
        let s = mat(2, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 2), (1, 1, 2)]);
        let bad = svec(&[(0, qi(1)), (1, qi(3))]);
        assert!(solve(&s, &bad).is_err());
        let good = svec(&[(0, qi(1)), (1, qi(2))]);
        let x = solve(&s, &good).unwrap();
        assert_eq!(s.mul_vec(&x), good);
    }

    #[test]
    fn rational_pivots() {
        let mut m = Mat::zero(2, 2);
        m.set(0, 0, qr(1, 2));
        m.set(0, 1, qr(1, 3));
        m.set(1, 0, qr(1, 5));
        m.set(1, 1, qr(2, 15));
        // Row 2 = (2/5) * row 1, so rank 1.
        let rki = rank_kernel_image(&m);
        assert_eq!(rki.rank, 1);
        assert_eq!(rki.kernel.len(), 1);
    }

    #[test]
    fn subquotient_reps_and_projection() {
        // Ambient Q^3; K = span(e0, e1); I = span(e0 + e1).
        let k = vec![unit_vec(0), unit_vec(1)];
        let i = vec![svec(&[(0, qi(1)), (1, qi(1))])];
        let sq = Subquotient::new(3, &k, &i);
        assert_eq!(sq.dim(), 1);
        // e0 and -e1 represent the same class.
        let c0 = sq.project(&unit_vec(0)).unwrap();
        let c1 = sq.project(&scale(&unit_vec(1), &qi(-1))).unwrap();
        assert_eq!(c0, c1);
        // e2 is not in K.
        assert!(sq.project(&unit_vec(2)).is_err());
        // The denominator projects to zero.
        assert!(sq.is_zero_class(&svec(&[(0, qi(2)), (1, qi(2))])));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        e.insert(&svec(&[(0, qi(1)), (1, qi(1))]));
        e.insert(&svec(&[(1, qi(1)), (2, qi(1))]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&svec(&[(0, qi(1)), (2, qi(-1))])));
        assert!(!e.contains(&unit_vec(0)));
    }
}
