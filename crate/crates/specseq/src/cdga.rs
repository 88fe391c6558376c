//! Finite-dimensional bigraded commutative differential graded algebras.
//!
//! A `Cdga` is presented by a finite basis with bidegrees `(p, q)`, sparse
//! structure constants, and an optional differential of a fixed bidegree.
//! Total degree is `p + q` and the *weight* of a basis element is `q`; this
//! is the grading in which spectral sequence pages and weight tables are
//! reported. All invariants (graded commutativity, associativity, unit law,
//! Leibniz, `d∘d = 0`, bidegree homogeneity) are checked exactly.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{axpy, rank_kernel_image, scale, Mat, SparseVec, Subquotient};
use crate::scalar::{q1, sign, Q};

/// A named basis element sitting in bidegree `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElt {
    pub name: String,
    pub p: i64,
    pub q: i64,
}

impl BasisElt {
    pub fn degree(&self) -> i64 {
        self.p + self.q
    }
}

/// A finite bigraded cdga presented by structure constants.
#[derive(Debug, Clone)]
pub struct Cdga {
    pub basis: Vec<BasisElt>,
    pub unit: usize,
    /// Sparse product table: only nonzero products of basis pairs stored.
    products: BTreeMap<(usize, usize), SparseVec>,
    /// Bidegree of the differential, e.g. `(1, 0)` for a first-page
    /// differential or `(r, 1 - r)` for an `r`-th page.
    pub diff_bidegree: (i64, i64),
    /// Differential of each basis element (all empty = zero differential).
    diff: Vec<SparseVec>,
}

/// A violation of one of the cdga axioms, reported with the offending basis
/// elements.
#[derive(Debug, Clone, thiserror::Error)]
pub enum CdgaError {
    #[error("product not bidegree-homogeneous: {0} * {1}")]
    InhomogeneousProduct(String, String),
    #[error("differential not bidegree-homogeneous at {0}")]
    InhomogeneousDiff(String),
    #[error("graded commutativity fails at {0} * {1}")]
    Commutativity(String, String),
    #[error("associativity fails at ({0} * {1}) * {2}")]
    Associativity(String, String, String),
    #[error("unit law fails at {0}")]
    Unit(String),
    #[error("Leibniz rule fails at d({0} * {1})")]
    Leibniz(String, String),
    #[error("d*d != 0 at {0}")]
    DSquared(String),
}

impl Cdga {
    /// Create a cdga with the given basis and unit; products and the
    /// differential start at zero and are filled in by the builder methods.
    pub fn new(basis: Vec<BasisElt>, unit: usize, diff_bidegree: (i64, i64)) -> Self {
        let n = basis.len();
        assert!(unit < n, "unit index out of range");
        assert_eq!(basis[unit].p, 0, "unit must sit in bidegree (0,0)");
        assert_eq!(basis[unit].q, 0, "unit must sit in bidegree (0,0)");
        Cdga { basis, unit, products: BTreeMap::new(), diff_bidegree, diff: vec![SparseVec::new(); n] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn diff_is_zero(&self) -> bool {
        self.diff.iter().all(|v| v.is_empty())
    }

    /// Set the product of two basis elements. The unit's products are
    /// implicit and must not be set explicitly.
    pub fn set_product(&mut self, i: usize, j: usize, value: SparseVec) {
        assert!(i != self.unit && j != self.unit, "unit products are implicit");
        if value.is_empty() {
            self.products.remove(&(i, j));
        } else {
            self.products.insert((i, j), value);
        }
    }

    /// Set the product of `i` and `j` and fill in the graded-commutative
    /// transpose automatically.
    pub fn set_product_sym(&mut self, i: usize, j: usize, value: SparseVec) {
        let s = sign(self.basis[i].degree() * self.basis[j].degree());
        self.set_product(i, j, value.clone());
        if i != j {
            self.set_product(j, i, scale(&value, &s));
        }
    }

    pub fn set_diff(&mut self, i: usize, value: SparseVec) {
        self.diff[i] = value;
    }

    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        if i == self.unit {
            let mut v = SparseVec::new();
            v.insert(j, q1());
            return v;
        }
        if j == self.unit {
            let mut v = SparseVec::new();
            v.insert(i, q1());
            return v;
        }
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Bilinear product of two elements.
    pub fn product(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let coef = a.clone() * b;
                for (k, c) in self.basis_product(*i, *j) {
                    let e = out.entry(k).or_insert_with(Q::zero);
                    *e += coef.clone() * c;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Differential of an element.
    pub fn d(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            out = axpy(&out, a, &self.diff[*i]);
        }
        out
    }

    pub fn unit_elt(&self) -> SparseVec {
        let mut v = SparseVec::new();
        v.insert(self.unit, q1());
        v
    }

    /// Indices of basis elements in bidegree `(p, q)`, in basis order.
    pub fn cell(&self, p: i64, q: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].p == p && self.basis[i].q == q).collect()
    }

    /// Indices of basis elements of total degree `k`.
    pub fn degree_indices(&self, k: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree() == k).collect()
    }

    /// All occupied bidegrees with their dimensions, sorted.
    pub fn cell_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry((b.p, b.q)).or_insert(0) += 1;
        }
        out
    }

    /// Verify every cdga axiom exactly; returns the first violation found.
    pub fn validate(&self) -> Result<(), CdgaError> {
        let n = self.dim();
        // Bidegree homogeneity of products and differential.
        for ((i, j), v) in &self.products {
            let (p, q) = (self.basis[*i].p + self.basis[*j].p, self.basis[*i].q + self.basis[*j].q);
            for (k, _) in v {
                if self.basis[*k].p != p || self.basis[*k].q != q {
                    return Err(CdgaError::InhomogeneousProduct(
                        self.basis[*i].name.clone(),
                        self.basis[*j].name.clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            let (p, q) =
                (self.basis[i].p + self.diff_bidegree.0, self.basis[i].q + self.diff_bidegree.1);
            for (k, _) in &self.diff[i] {
                if self.basis[*k].p != p || self.basis[*k].q != q {
                    return Err(CdgaError::InhomogeneousDiff(self.basis[i].name.clone()));
                }
            }
        }
        // Unit law on every basis element.
        let one = self.unit_elt();
        for i in 0..n {
            let mut ei = SparseVec::new();
            ei.insert(i, q1());
            if self.product(&one, &ei) != ei || self.product(&ei, &one) != ei {
                return Err(CdgaError::Unit(self.basis[i].name.clone()));
            }
        }
        // Graded commutativity: x y = (-1)^{|x||y|} y x.
        for i in 0..n {
            for j in i..n {
                let s = sign(self.basis[i].degree() * self.basis[j].degree());
                let xy = self.basis_product(i, j);
                let yx = self.basis_product(j, i);
                if xy != scale(&yx, &s) {
                    return Err(CdgaError::Commutativity(
                        self.basis[i].name.clone(),
                        self.basis[j].name.clone(),
                    ));
                }
            }
        }
        // Associativity on all basis triples.
        for i in 0..n {
            let xi = {
                let mut v = SparseVec::new();
                v.insert(i, q1());
                v
            };
            for j in 0..n {
                let xj = {
                    let mut v = SparseVec::new();
                    v.insert(j, q1());
                    v
                };
                let ij = self.product(&xi, &xj);
                for k in 0..n {
                    let xk = {
                        let mut v = SparseVec::new();
                        v.insert(k, q1());
                        v
                    };
                    let jk = self.product(&xj, &xk);
                    if self.product(&ij, &xk) != self.product(&xi, &jk) {
                        return Err(CdgaError::Associativity(
                            self.basis[i].name.clone(),
                            self.basis[j].name.clone(),
                            self.basis[k].name.clone(),
                        ));
                    }
                }
            }
        }
        // Leibniz: d(xy) = dx*y + (-1)^{|x|} x*dy.
        for i in 0..n {
            let xi = {
                let mut v = SparseVec::new();
                v.insert(i, q1());
                v
            };
            let s = sign(self.basis[i].degree());
            for j in 0..n {
                let xj = {
                    let mut v = SparseVec::new();
                    v.insert(j, q1());
                    v
                };
                let lhs = self.d(&self.product(&xi, &xj));
                let rhs = axpy(
                    &self.product(&self.d(&xi), &xj),
                    &s,
                    &self.product(&xi, &self.d(&xj)),
                );
                if lhs != rhs {
                    return Err(CdgaError::Leibniz(
                        self.basis[i].name.clone(),
                        self.basis[j].name.clone(),
                    ));
                }
            }
        }
        // d∘d = 0.
        for i in 0..n {
            if !self.d(&self.diff[i]).is_empty() {
                return Err(CdgaError::DSquared(self.basis[i].name.clone()));
            }
        }
        Ok(())
    }

    /// Direct product of two cdgas (componentwise ring structure; basis of
    /// the product is the disjoint union, unit is the sum of units — the
    /// unit elements are merged into a single basis vector).
    ///
    /// Returns the product together with the two inclusion index maps
    /// (non-unital ring maps; the shared unit maps to both units).
    pub fn direct_product(a: &Cdga, b: &Cdga, name_a: &str, name_b: &str) -> (Cdga, Vec<usize>, Vec<usize>) {
        assert_eq!(a.diff_bidegree, b.diff_bidegree);
        // Basis: merged unit, then non-unit basis of a, then non-unit of b.
        let mut basis = vec![BasisElt { name: "one".into(), p: 0, q: 0 }];
        let mut map_a = vec![0usize; a.dim()];
        let mut map_b = vec![0usize; b.dim()];
        for i in 0..a.dim() {
            if i == a.unit {
                map_a[i] = 0;
            } else {
                map_a[i] = basis.len();
                let e = &a.basis[i];
                basis.push(BasisElt { name: format!("{name_a}.{}", e.name), p: e.p, q: e.q });
            }
        }
        for i in 0..b.dim() {
            if i == b.unit {
                map_b[i] = 0;
            } else {
                map_b[i] = basis.len();
                let e = &b.basis[i];
                basis.push(BasisElt { name: format!("{name_b}.{}", e.name), p: e.p, q: e.q });
            }
        }
        let mut out = Cdga::new(basis, 0, a.diff_bidegree);
        // Products within each factor; cross products vanish except through
        // the shared unit. Note: with a merged unit this is the fibered ring
        // {(x, y) : x0 == y0} — i.e. functions on the disjoint union with a
        // single global unit, which is exactly H^0-glued cohomology of a
        // disjoint union with matched constants. For our use (level-zero
        // algebras H(Σ) × H(X̃)) this is the honest product ring provided
        // sums of units are tracked through the index maps.
        let remap = |m: &Vec<usize>, v: &SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for (i, x) in v {
                let e = out.entry(m[*i]).or_insert_with(Q::zero);
                *e += x.clone();
            }
            out.retain(|_, x| !x.is_zero());
            out
        };
        for src in [(a, &map_a), (b, &map_b)] {
            let (alg, m) = src;
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    if i == alg.unit || j == alg.unit {
                        continue;
                    }
                    let v = alg.basis_product(i, j);
                    // Product may hit the unit of the factor; that is only
                    // consistent with the merged unit if the other factor has
                    // no complementary piece, so forbid unit-hitting products
                    // in factors (our level algebras never produce them in
                    // degree 0 except via the unit itself).
                    assert!(
                        !v.contains_key(&alg.unit),
                        "factor product hits the unit; direct_product unsupported"
                    );
                    if !v.is_empty() {
                        out.set_product(m[i], m[j], remap(m, &v));
                    }
                }
                if i != alg.unit {
                    let dv = alg.diff[i].clone();
                    out.set_diff(m[i], remap(m, &dv));
                }
            }
        }
        (out, map_a, map_b)
    }
}

/// The cohomology ring of a disjoint union of connected spaces: one global
/// unit, an idempotent indicator per component after the first, and the
/// positive-degree classes of every component. Each factor must be
/// connected (its `(0,0)` cell is exactly its unit).
///
/// Returns the union ring together with the restriction map to each factor
/// (these are cdga maps; the inclusion maps of factors are not unital and
/// are not returned).
pub fn disjoint_union(factors: &[&Cdga], labels: &[&str]) -> (Cdga, Vec<Mat>) {
    assert_eq!(factors.len(), labels.len());
    assert!(!factors.is_empty());
    let bid = factors[0].diff_bidegree;
    for f in factors {
        assert_eq!(f.cell(0, 0), vec![f.unit], "disjoint_union needs connected factors");
        assert!(f.diff_bidegree == bid || f.diff_is_zero());
    }
    let k = factors.len();
    let mut basis = vec![BasisElt { name: "one".into(), p: 0, q: 0 }];
    // Indicator idempotents e_1..e_{k-1} for components 1.. (component 0's
    // indicator is 1 - Σ e_i and is not a basis element).
    let ind_base = basis.len();
    for m in 1..k {
        basis.push(BasisElt { name: format!("e_{}", labels[m]), p: 0, q: 0 });
    }
    // Positive-degree classes, with index maps per factor.
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for (m, f) in factors.iter().enumerate() {
        let mut map = vec![usize::MAX; f.dim()];
        map[f.unit] = 0;
        for i in 0..f.dim() {
            if i == f.unit {
                continue;
            }
            assert!(f.basis[i].degree() > 0, "non-unit degree-0 class in a connected factor");
            map[i] = basis.len();
            basis.push(BasisElt {
                name: format!("{}.{}", labels[m], f.basis[i].name),
                p: f.basis[i].p,
                q: f.basis[i].q,
            });
        }
        maps.push(map);
    }
    let mut out = Cdga::new(basis, 0, bid);
    // Indicator products: e_i e_j = δ_ij e_i.
    for i in 0..k.saturating_sub(1) {
        for j in i..k - 1 {
            let v = if i == j {
                let mut v = SparseVec::new();
                v.insert(ind_base + i, q1());
                v
            } else {
                SparseVec::new()
            };
            out.set_product_sym(ind_base + i, ind_base + j, v);
        }
    }
    for (m, f) in factors.iter().enumerate() {
        let map = &maps[m];
        for i in 0..f.dim() {
            if i == f.unit {
                continue;
            }
            // Indicator action: x · e_j = [j == m] x (for j >= 1; component
            // 0 has no explicit indicator).
            for j in 1..k {
                let v = if j == m {
                    let mut v = SparseVec::new();
                    v.insert(map[i], q1());
                    v
                } else {
                    SparseVec::new()
                };
                out.set_product_sym(map[i], ind_base + j - 1, v);
            }
            // In-component products; positive-degree products never hit
            // degree 0 in a connected factor, so remapping is direct.
            for j in 0..f.dim() {
                if j == f.unit {
                    continue;
                }
                let v = f.basis_product(i, j);
                assert!(!v.contains_key(&f.unit), "positive-degree product hit the factor unit");
                let mut rv = SparseVec::new();
                for (t, c) in &v {
                    rv.insert(map[*t], c.clone());
                }
                out.set_product(map[i], map[j], rv);
            }
            // Differential.
            let dv = f.d(&{
                let mut e = SparseVec::new();
                e.insert(i, q1());
                e
            });
            let mut rdv = SparseVec::new();
            for (t, c) in &dv {
                assert_ne!(*t, f.unit);
                rdv.insert(map[*t], c.clone());
            }
            out.set_diff(map[i], rdv);
        }
    }
    // Restriction maps to each factor.
    let mut restrictions = Vec::new();
    for (m, f) in factors.iter().enumerate() {
        let map = &maps[m];
        let mut r = Mat::zero(f.dim(), out.dim());
        r.set(f.unit, 0, q1());
        for j in 1..k {
            if j == m {
                r.set(f.unit, ind_base + j - 1, q1());
            }
        }
        for i in 0..f.dim() {
            if i != f.unit {
                r.set(i, map[i], q1());
            }
        }
        restrictions.push(r);
    }
    (out, restrictions)
}

/// One cell of a computed page, with provenance into the previous page.
#[derive(Debug, Clone)]
pub struct PageCell {
    pub p: i64,
    pub q: i64,
    pub subq: Subquotient,
}

/// The result of taking cohomology of a page with respect to its
/// differential: the next page as a `Cdga` (zero differential) together with
/// provenance subquotients per bidegree.
#[derive(Debug, Clone)]
pub struct NextPage {
    pub page: Cdga,
    pub cells: Vec<PageCell>,
}

impl NextPage {
    /// Project an element of the previous page (which must be a cocycle) to
    /// the new page.
    pub fn project(&self, prev: &Cdga, x: &SparseVec) -> Result<SparseVec, ()> {
        let mut out = SparseVec::new();
        // Split x into bidegree-homogeneous components and project each.
        let mut comps: BTreeMap<(i64, i64), SparseVec> = BTreeMap::new();
        for (i, c) in x {
            let b = &prev.basis[*i];
            comps.entry((b.p, b.q)).or_default().insert(*i, c.clone());
        }
        for ((p, q), comp) in comps {
            let cell = self
                .cells
                .iter()
                .find(|c| c.p == p && c.q == q)
                .ok_or(())?;
            // Express the ambient component in the cell's local coordinates.
            let local = restrict_to_indices(&comp, &prev_cell_indices(prev, p, q))?;
            let coords = cell.subq.project(&local)?;
            let offset = self.cell_offset(p, q);
            for (k, c) in coords {
                let e = out.entry(offset + k).or_insert_with(Q::zero);
                *e += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    fn cell_offset(&self, p: i64, q: i64) -> usize {
        let mut off = 0;
        for c in &self.cells {
            if c.p == p && c.q == q {
                return off;
            }
            off += c.subq.dim();
        }
        unreachable!("cell offset requested for absent cell")
    }

    /// Lift a new-page basis index to a representative in the previous page's
    /// ambient coordinates.
    pub fn rep(&self, prev: &Cdga, new_index: usize) -> SparseVec {
        let mut off = 0;
        for c in &self.cells {
            if new_index < off + c.subq.dim() {
                let local = &c.subq.reps[new_index - off];
                let idxs = prev_cell_indices(prev, c.p, c.q);
                let mut out = SparseVec::new();
                for (k, v) in local {
                    out.insert(idxs[*k], v.clone());
                }
                return out;
            }
            off += c.subq.dim();
        }
        unreachable!("rep requested for out-of-range index")
    }
}

fn prev_cell_indices(prev: &Cdga, p: i64, q: i64) -> Vec<usize> {
    prev.cell(p, q)
}

fn restrict_to_indices(x: &SparseVec, idxs: &[usize]) -> Result<SparseVec, ()> {
    let pos: BTreeMap<usize, usize> = idxs.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let mut out = SparseVec::new();
    for (i, c) in x {
        match pos.get(i) {
            Some(k) => {
                out.insert(*k, c.clone());
            }
            None => return Err(()),
        }
    }
    Ok(out)
}

/// Take cohomology of `page` with respect to its differential, producing the
/// next page with the induced product. Well-definedness of the induced
/// product is verified exactly: products of boundaries with cocycle
/// representatives project to zero.
pub fn next_page(page: &Cdga, name_prefix: &str) -> NextPage {
    let (dp, dq) = page.diff_bidegree;
    // Cells of the incoming page.
    let cell_list: Vec<(i64, i64)> = page.cell_dims().keys().cloned().collect();
    let mut cells = Vec::new();
    for (p, q) in &cell_list {
        let here = page.cell(*p, *q);
        let target = page.cell(p + dp, q + dq);
        let source = page.cell(p - dp, q - dq);
        // Differential out of this cell.
        let d_out = matrix_of_diff(page, &here, &target);
        let kernel = rank_kernel_image(&d_out).kernel;
        // Image landing in this cell.
        let d_in = matrix_of_diff(page, &source, &here);
        let image = rank_kernel_image(&d_in).image;
        let subq = Subquotient::new(here.len(), &kernel, &image);
        if subq.dim() > 0 || (*p, *q) == (0, 0) {
            cells.push(PageCell { p: *p, q: *q, subq });
        }
    }
    // Assemble the new basis.
    let mut basis = Vec::new();
    let mut unit = None;
    for c in &cells {
        for k in 0..c.subq.dim() {
            let name = format!("{name_prefix}[{},{}]#{k}", c.p, c.q);
            if (c.p, c.q) == (0, 0) {
                // Identify the unit: project the old unit.
                unit.get_or_insert(basis.len());
            }
            basis.push(BasisElt { name, p: c.p, q: c.q });
        }
    }
    let unit = unit.expect("page without a unit cell");
    let mut new_page = Cdga::new(basis, unit, (dp + 1, dq - 1));
    let np = NextPage { page: new_page.clone(), cells };
    // Representatives in old coordinates for every new basis element.
    let dim = np
        .cells
        .iter()
        .map(|c| c.subq.dim())
        .sum::<usize>();
    let reps: Vec<SparseVec> = (0..dim).map(|i| np.rep(page, i)).collect();
    // Unit normalization: the new unit must represent the class of the old
    // unit. Verify the old unit projects to exactly the new unit vector.
    let unit_class = np.project(page, &page.unit_elt()).expect("unit must survive");
    assert_eq!(unit_class, {
        let mut v = SparseVec::new();
        v.insert(unit, q1());
        v
    }, "unit class must be the chosen unit representative");
    // Induced products.
    for i in 0..dim {
        for j in 0..dim {
            if i == unit || j == unit {
                continue;
            }
            let prod = page.product(&reps[i], &reps[j]);
            let projected = np
                .project(page, &prod)
                .expect("product of cocycles must be a cocycle class");
            new_page.set_product(i, j, projected);
        }
    }
    // Well-definedness: products of boundaries against representatives must
    // project to zero.
    for c in &np.cells {
        // Denominator generators: d of every source-cell basis element.
        let source = page.cell(c.p - dp, c.q - dq);
        for s in source {
            let mut es = SparseVec::new();
            es.insert(s, q1());
            let boundary = page.d(&es);
            if boundary.is_empty() {
                continue;
            }
            for rep in &reps {
                let prod = page.product(&boundary, rep);
                if let Ok(cls) = np.project(page, &prod) {
                    assert!(cls.is_empty(), "induced product not well defined");
                } else {
                    panic!("boundary*cocycle is not a cocycle — Leibniz violated upstream");
                }
            }
        }
    }
    NextPage { page: new_page, cells: np.cells }
}

fn matrix_of_diff(page: &Cdga, from: &[usize], to: &[usize]) -> Mat {
    let pos: BTreeMap<usize, usize> = to.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let mut m = Mat::zero(to.len(), from.len());
    for (j, i) in from.iter().enumerate() {
        let mut ei = SparseVec::new();
        ei.insert(*i, q1());
        for (k, v) in page.d(&ei) {
            match pos.get(&k) {
                Some(r) => m.set(*r, j, v),
                None => panic!("differential leaves the expected cell"),
            }
        }
    }
    m
}

/// Weight table of a page: entry `(k, m)` is the dimension of the weight-`m`
/// piece of total degree `k`, i.e. the sum of `dim E^{p,q}` over `p+q = k`,
/// `q = m`.
pub fn weight_table(page: &Cdga) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    for b in &page.basis {
        *out.entry((b.degree(), b.q)).or_insert(0) += 1;
    }
    out
}

/// Report of weight purity per degree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PurityReport {
    /// Degrees `k` whose entire weight content sits in weight `k`.
    pub pure_degrees: Vec<i64>,
    /// Cells `(k, m)` with `m != k` and nonzero dimension.
    pub impure_cells: Vec<(i64, i64, usize)>,
    /// Largest `r` such that weights are pure in all degrees `<= r`
    /// (at least 0; degree 0 weight 0 assumed).
    pub pure_through: i64,
}

/// Check purity: degree `k` is pure when every nonzero `(k, m)` entry has
/// `m = k`.
pub fn purity_check(page: &Cdga) -> PurityReport {
    let table = weight_table(page);
    let mut impure = Vec::new();
    let mut degrees: BTreeMap<i64, bool> = BTreeMap::new();
    for ((k, m), d) in &table {
        let e = degrees.entry(*k).or_insert(true);
        if m != k {
            *e = false;
            impure.push((*k, *m, *d));
        }
    }
    let pure_degrees: Vec<i64> =
        degrees.iter().filter(|(_, ok)| **ok).map(|(k, _)| *k).collect();
    let max_deg = degrees.keys().max().cloned().unwrap_or(0);
    let mut pure_through = max_deg;
    for k in 0..=max_deg {
        if !degrees.get(&k).cloned().unwrap_or(true) {
            pure_through = k - 1;
            break;
        }
    }
    PurityReport { pure_degrees, impure_cells: impure, pure_through }
}
