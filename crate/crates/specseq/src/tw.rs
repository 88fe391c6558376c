//! Thom–Whitney totalization of a finite strict cosimplicial cdga.
//!
//! A strict cosimplicial cdga is a finite tower of bigraded cdgas
//! `A^0, A^1, …, A^L` with coface maps `δ^i : A^{α-1} → A^α` (no
//! degeneracies) satisfying the cosimplicial identities. Its Thom–Whitney
//! simple is the end `∫_α A^α ⊗ Ω_α`: tuples of forms-valued elements, one
//! per level, compatible under every coface/face pairing.
//!
//! Elements are finitely supported in polynomial degree, so no truncation
//! parameter enters the arithmetic. Cohomology is computed exactly through
//! the simplicial contraction of `Ω_α` onto elementary forms: expansion
//! `E`, face integration `I` and the homotopy `S` descend to the end and
//! retract it onto the finite total complex `⊕_α A^α[-α]` with the
//! alternating coface differential. That retraction also solves `dx = y`
//! for exact cocycles in closed form, which is what Massey-product and
//! comparison computations need.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::cdga::Cdga;
use crate::linalg::{Mat, SparseVec};
use crate::scalar::{q1, sign, Q};
use crate::simplex::{faces_of, whitney_form, SimplexForm};

#[derive(Debug, Error)]
pub enum TwError {
    #[error("diagram must have at least one level")]
    EmptyDiagram,
    #[error("level {level} expects {expected} coface maps, found {found}")]
    CofaceCount { level: usize, expected: usize, found: usize },
    #[error("coface {i} into level {level} has wrong shape")]
    CofaceShape { level: usize, i: usize },
    #[error("coface {i} into level {level} is not a cdga map: {reason}")]
    NotCdgaMap { level: usize, i: usize, reason: String },
    #[error("cosimplicial identity fails: δ^{j} δ^{i} ≠ δ^{i} δ^{jm1} into level {level}")]
    CosimplicialIdentity { level: usize, i: usize, j: usize, jm1: usize },
    #[error("levels disagree on differential bidegree")]
    DiffBidegreeMismatch,
}

/// A finite strict cosimplicial cdga: levels `0..=L` and coface maps.
/// `cofaces[a]` holds `δ^0, …, δ^{a+1} : levels[a] → levels[a+1]`.
#[derive(Debug, Clone)]
pub struct CosimplicialCdga {
    pub levels: Vec<Cdga>,
    pub cofaces: Vec<Vec<Mat>>,
}

/// Check that a matrix is a map of cdgas (unit, differential, products on
/// all basis pairs).
pub fn check_cdga_map(src: &Cdga, dst: &Cdga, m: &Mat) -> Result<(), String> {
    if m.rows != dst.basis.len() || m.cols != src.basis.len() {
        return Err("shape mismatch".into());
    }
    // Unit.
    let u = m.mul_vec(&crate::linalg::unit_vec(src.unit));
    let expect = crate::linalg::unit_vec(dst.unit);
    if u != expect {
        return Err("unit not preserved".into());
    }
    // Bidegree homogeneity.
    for j in 0..src.basis.len() {
        let col = m.col(j);
        for (i, _) in &col {
            if dst.basis[*i].p != src.basis[j].p || dst.basis[*i].q != src.basis[j].q {
                return Err(format!(
                    "bidegree not preserved on basis element {}",
                    src.basis[j].name
                ));
            }
        }
    }
    // d-compatibility.
    for j in 0..src.basis.len() {
        let lhs = m.mul_vec(&src.d(&crate::linalg::unit_vec(j)));
        let rhs = dst.d(&m.mul_vec(&crate::linalg::unit_vec(j)));
        if lhs != rhs {
            return Err(format!("differential not intertwined at {}", src.basis[j].name));
        }
    }
    // Products.
    for a in 0..src.basis.len() {
        for b in 0..src.basis.len() {
            let lhs = m.mul_vec(&src.basis_product(a, b));
            let va = m.mul_vec(&crate::linalg::unit_vec(a));
            let vb = m.mul_vec(&crate::linalg::unit_vec(b));
            let rhs = dst.product(&va, &vb);
            if lhs != rhs {
                return Err(format!(
                    "product not preserved at ({}, {})",
                    src.basis[a].name, src.basis[b].name
                ));
            }
        }
    }
    Ok(())
}

impl CosimplicialCdga {
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn validate(&self) -> Result<(), TwError> {
        if self.levels.is_empty() {
            return Err(TwError::EmptyDiagram);
        }
        if self.cofaces.len() != self.levels.len() - 1 {
            return Err(TwError::CofaceCount {
                level: self.levels.len() - 1,
                expected: self.levels.len() - 1,
                found: self.cofaces.len(),
            });
        }
        for a in 0..self.cofaces.len() {
            let maps = &self.cofaces[a];
            if maps.len() != a + 2 {
                return Err(TwError::CofaceCount {
                    level: a + 1,
                    expected: a + 2,
                    found: maps.len(),
                });
            }
            for (i, m) in maps.iter().enumerate() {
                if m.rows != self.levels[a + 1].basis.len()
                    || m.cols != self.levels[a].basis.len()
                {
                    return Err(TwError::CofaceShape { level: a + 1, i });
                }
                check_cdga_map(&self.levels[a], &self.levels[a + 1], m)
                    .map_err(|reason| TwError::NotCdgaMap { level: a + 1, i, reason })?;
            }
        }
        // δ^j δ^i = δ^i δ^{j-1} for i < j, as maps levels[a] → levels[a+2].
        for a in 0..self.cofaces.len().saturating_sub(1) {
            for j in 1..=a + 2 {
                for i in 0..j {
                    let lhs = self.cofaces[a + 1][j].mul_mat(&self.cofaces[a][i]);
                    let rhs = self.cofaces[a + 1][i].mul_mat(&self.cofaces[a][j - 1]);
                    if !lhs.eq_mat(&rhs) {
                        return Err(TwError::CosimplicialIdentity {
                            level: a + 2,
                            i,
                            j,
                            jm1: j - 1,
                        });
                    }
                }
            }
        }
        // All levels must agree on the differential bidegree (relevant only
        // when any level carries a nonzero differential).
        let bid = self.levels[0].diff_bidegree;
        if self.levels.iter().any(|l| l.diff_bidegree != bid && !l.diff_is_zero()) {
            return Err(TwError::DiffBidegreeMismatch);
        }
        Ok(())
    }
}

/// An element of the Thom–Whitney end: for each level `α`, a finitely
/// supported map from basis indices of `A^α` to coefficient forms on `Δ^α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwElt {
    pub levels: Vec<BTreeMap<usize, SimplexForm>>,
}

impl TwElt {
    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.values().all(|f| f.is_zero()))
    }
}

/// The Thom–Whitney simple of a validated diagram, with its product,
/// differential, contraction onto the finite total complex, and exact
/// cocycle-solving.
#[derive(Debug, Clone)]
pub struct TwPage {
    pub diagram: CosimplicialCdga,
    /// Flat-index offsets of each level inside the total complex.
    offsets: Vec<usize>,
    total_dim: usize,
    /// For each level `α` and face `F ⊆ {0..α}`, the composite coface
    /// `A^{|F|-1} → A^α` indexed by the monotone injection with image `F`,
    /// together with the elementary form `ω_F`.
    expanders: Vec<Vec<(Vec<usize>, Mat, SimplexForm)>>,
}

impl TwPage {
    pub fn new(diagram: CosimplicialCdga) -> Result<Self, TwError> {
        diagram.validate()?;
        let mut offsets = Vec::new();
        let mut total = 0usize;
        for l in &diagram.levels {
            offsets.push(total);
            total += l.basis.len();
        }
        let mut expanders = Vec::new();
        for alpha in 0..diagram.levels.len() {
            let mut per_level = Vec::new();
            for f in faces_of(alpha) {
                let p = f.len() - 1;
                // Composite coface from level p to level alpha hitting the
                // vertex set f: insert the missing vertices in increasing
                // order; inserting final position v when all smaller
                // vertices are present uses coface index v.
                let mut m = Mat::identity(diagram.levels[p].basis.len());
                let mut level = p;
                for v in 0..=alpha {
                    if !f.contains(&v) {
                        m = diagram.cofaces[level][v].mul_mat(&m);
                        level += 1;
                    }
                }
                debug_assert_eq!(level, alpha);
                let w = whitney_form(alpha, &f);
                per_level.push((f, m, w));
            }
            expanders.push(per_level);
        }
        Ok(TwPage { diagram, offsets, total_dim: total, expanders })
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// Flat total-complex index of basis element `j` at level `a`.
    pub fn flat_index(&self, a: usize, j: usize) -> usize {
        self.offsets[a] + j
    }

    /// Inverse of `flat_index`.
    pub fn level_of(&self, flat: usize) -> (usize, usize) {
        let a = match self.offsets.binary_search(&flat) {
            Ok(a) => a,
            Err(a) => a - 1,
        };
        (a, flat - self.offsets[a])
    }

    /// Bidegree of a flat index: level plus coefficient bidegree in `p`.
    pub fn bidegree(&self, flat: usize) -> (i64, i64) {
        let (a, j) = self.level_of(flat);
        let b = &self.diagram.levels[a].basis[j];
        (a as i64 + b.p, b.q)
    }

    /// Composite cofaces `level 0 → level alpha` hitting a single vertex,
    /// one per vertex in increasing order.
    pub fn vertex_composites(&self, alpha: usize) -> Vec<Mat> {
        self.expanders[alpha]
            .iter()
            .filter(|(f, _, _)| f.len() == 1)
            .map(|(_, m, _)| m.clone())
            .collect()
    }

    /// Total degrees (coefficient degree plus form degree) present in `x`.
    pub fn degrees(&self, x: &TwElt) -> Vec<i64> {
        let mut out = std::collections::BTreeSet::new();
        for (a, l) in x.levels.iter().enumerate() {
            let ring = &self.diagram.levels[a];
            for (j, f) in l {
                let cdeg = ring.basis[*j].p + ring.basis[*j].q;
                for k in 0..=a as u32 {
                    if !f.form_component(k).is_zero() {
                        out.insert(cdeg + k as i64);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// The component of `x` of total degree `k`.
    pub fn degree_component(&self, x: &TwElt, k: i64) -> TwElt {
        let mut out = self.zero_elt();
        for (a, l) in x.levels.iter().enumerate() {
            let ring = &self.diagram.levels[a];
            for (j, f) in l {
                let cdeg = ring.basis[*j].p + ring.basis[*j].q;
                if k < cdeg || k > cdeg + a as i64 {
                    continue;
                }
                let part = f.form_component((k - cdeg) as u32);
                if !part.is_zero() {
                    out.levels[a].insert(*j, part);
                }
            }
        }
        out
    }

    pub fn zero_elt(&self) -> TwElt {
        TwElt { levels: vec![BTreeMap::new(); self.diagram.levels.len()] }
    }

    /// The multiplicative unit `(1, 1, …)` of the end.
    pub fn unit_elt(&self) -> TwElt {
        let mut v = SparseVec::new();
        v.insert(self.flat_index(0, self.diagram.levels[0].unit), q1());
        self.expand(&v)
    }

    pub fn add(&self, x: &TwElt, y: &TwElt) -> TwElt {
        let mut out = x.clone();
        for (a, l) in y.levels.iter().enumerate() {
            for (j, f) in l {
                let e = out.levels[a]
                    .entry(*j)
                    .or_insert_with(|| SimplexForm::zero(f.alpha));
                *e = e.add(f);
            }
        }
        self.prune(out)
    }

    pub fn scale(&self, x: &TwElt, c: &Q) -> TwElt {
        let mut out = self.zero_elt();
        for (a, l) in x.levels.iter().enumerate() {
            for (j, f) in l {
                out.levels[a].insert(*j, f.scale(c));
            }
        }
        self.prune(out)
    }

    fn prune(&self, mut x: TwElt) -> TwElt {
        for l in &mut x.levels {
            l.retain(|_, f| !f.is_zero());
        }
        x
    }

    /// Levelwise product with the Koszul sign `(a⊗ω)(b⊗η) =
    /// (-1)^{|ω||b|} ab ⊗ ω∧η` (forms split into pure degrees).
    pub fn mul(&self, x: &TwElt, y: &TwElt) -> TwElt {
        let mut out = self.zero_elt();
        for a in 0..self.diagram.levels.len() {
            let ring = &self.diagram.levels[a];
            for (i, fi) in &x.levels[a] {
                for (j, fj) in &y.levels[a] {
                    let prod = ring.basis_product(*i, *j);
                    if prod.is_empty() {
                        continue;
                    }
                    let degree_j = (ring.basis[*j].p + ring.basis[*j].q) as i64;
                    // Split the left form by degree to apply the sign.
                    for k in 0..=a as u32 {
                        let fk = fi.form_component(k);
                        if fk.is_zero() {
                            continue;
                        }
                        let wedge = fk.mul(fj).scale(&sign(k as i64 * degree_j));
                        if wedge.is_zero() {
                            continue;
                        }
                        for (t, c) in &prod {
                            let e = out.levels[a]
                                .entry(*t)
                                .or_insert_with(|| SimplexForm::zero(a));
                            *e = e.add(&wedge.scale(c));
                        }
                    }
                }
            }
        }
        self.prune(out)
    }

    /// Differential `d = d_A ⊗ 1 + (-1)^{|a|} 1 ⊗ d_Ω`.
    pub fn d(&self, x: &TwElt) -> TwElt {
        let mut out = self.zero_elt();
        for a in 0..self.diagram.levels.len() {
            let ring = &self.diagram.levels[a];
            for (j, f) in &x.levels[a] {
                let dj = ring.d(&crate::linalg::unit_vec(*j));
                for (t, c) in &dj {
                    let e = out.levels[a]
                        .entry(*t)
                        .or_insert_with(|| SimplexForm::zero(a));
                    *e = e.add(&f.scale(c));
                }
                let degree_j = (ring.basis[*j].p + ring.basis[*j].q) as i64;
                let df = f.d().scale(&sign(degree_j));
                if !df.is_zero() {
                    let e = out.levels[a]
                        .entry(*j)
                        .or_insert_with(|| SimplexForm::zero(a));
                    *e = e.add(&df);
                }
            }
        }
        self.prune(out)
    }

    /// Apply a coface matrix to a level-element (map of coefficient forms).
    fn apply_map(m: &Mat, l: &BTreeMap<usize, SimplexForm>, alpha: usize) -> BTreeMap<usize, SimplexForm> {
        let mut out: BTreeMap<usize, SimplexForm> = BTreeMap::new();
        for (j, f) in l {
            let col = m.col(*j);
            for (i, c) in &col {
                let e = out.entry(*i).or_insert_with(|| SimplexForm::zero(alpha));
                *e = e.add(&f.scale(c));
            }
        }
        out.retain(|_, f| !f.is_zero());
        out
    }

    /// End-compatibility: for every coface `δ^i : A^{a-1} → A^a`, the pairing
    /// `(δ^i ⊗ 1)(x_{a-1}) = (1 ⊗ ∂_i)(x_a)` must hold exactly.
    pub fn is_compatible(&self, x: &TwElt) -> bool {
        for a in 1..self.diagram.levels.len() {
            for i in 0..=a {
                let lhs = Self::apply_map(&self.diagram.cofaces[a - 1][i], &x.levels[a - 1], a - 1);
                let mut rhs: BTreeMap<usize, SimplexForm> = BTreeMap::new();
                for (j, f) in &x.levels[a] {
                    let r = f.face(i);
                    if !r.is_zero() {
                        rhs.insert(*j, r);
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Expansion `E` of a total-complex vector into a compatible element:
    /// level `α` receives `Σ_F ω_F ⊗ δ_F(v_{|F|-1})`.
    pub fn expand(&self, v: &SparseVec) -> TwElt {
        let mut out = self.zero_elt();
        // Split v by level.
        let mut per_level: Vec<SparseVec> = vec![SparseVec::new(); self.diagram.levels.len()];
        for (flat, c) in v {
            let (a, j) = self.level_of(*flat);
            per_level[a].insert(j, c.clone());
        }
        for alpha in 0..self.diagram.levels.len() {
            for (f, m, w) in &self.expanders[alpha] {
                let p = f.len() - 1;
                if per_level[p].is_empty() {
                    continue;
                }
                let img = m.mul_vec(&per_level[p]);
                for (i, c) in &img {
                    let e = out.levels[alpha]
                        .entry(*i)
                        .or_insert_with(|| SimplexForm::zero(alpha));
                    *e = e.add(&w.scale(c));
                }
            }
        }
        self.prune(out)
    }

    /// Integration `I`: the top-face integral of each level.
    pub fn integrate(&self, x: &TwElt) -> SparseVec {
        let mut out = SparseVec::new();
        for a in 0..self.diagram.levels.len() {
            let top: Vec<usize> = (0..=a).collect();
            for (j, f) in &x.levels[a] {
                let v = f.form_component(a as u32).integrate_face(&top);
                if !v.is_zero() {
                    out.insert(self.flat_index(a, *j), v);
                }
            }
        }
        out
    }

    /// Contraction homotopy `S = (-1)^{|a|} 1 ⊗ s` with
    /// `id - E∘I = d∘S + S∘d` on compatible elements.
    pub fn homotopy(&self, x: &TwElt) -> TwElt {
        let mut out = self.zero_elt();
        for a in 0..self.diagram.levels.len() {
            let ring = &self.diagram.levels[a];
            for (j, f) in &x.levels[a] {
                let degree_j = ring.basis[*j].p + ring.basis[*j].q;
                let s = crate::simplex::dupont_homotopy(f).scale(&sign(degree_j));
                if !s.is_zero() {
                    out.levels[a].insert(*j, s);
                }
            }
        }
        self.prune(out)
    }

    /// The transferred differential on the finite total complex:
    /// `D = d_A + (-1)^{|a|} Σ_i (-1)^i δ^i`. Verified against `I∘d∘E`.
    pub fn total_differential(&self) -> Mat {
        let mut m = Mat::zero(self.total_dim, self.total_dim);
        for flat in 0..self.total_dim {
            let (a, j) = self.level_of(flat);
            let ring = &self.diagram.levels[a];
            let mut col = SparseVec::new();
            let dj = ring.d(&crate::linalg::unit_vec(j));
            for (t, c) in &dj {
                col.insert(self.flat_index(a, *t), c.clone());
            }
            if a + 1 < self.diagram.levels.len() {
                let degree_j = (ring.basis[j].p + ring.basis[j].q) as i64;
                for (i, cf) in self.diagram.cofaces[a].iter().enumerate() {
                    let img = cf.mul_vec(&crate::linalg::unit_vec(j));
                    for (t, c) in &img {
                        let key = self.flat_index(a + 1, *t);
                        let e = col.entry(key).or_insert_with(Q::zero);
                        *e += sign(degree_j + i as i64) * c.clone();
                    }
                }
            }
            col.retain(|_, c| !c.is_zero());
            for (i, c) in col {
                m.set(i, flat, c);
            }
        }
        m
    }

    /// W(r)-weight bounds of an element: coefficient weight `q` plus
    /// `σ[r]`-weight of the form. Returns (min, max) over terms, or None.
    pub fn weight_range(&self, r: i64, x: &TwElt) -> Option<(i64, i64)> {
        let mut lo = None;
        let mut hi = None;
        for a in 0..self.diagram.levels.len() {
            for (j, f) in &x.levels[a] {
                let wq = self.diagram.levels[a].basis[*j].q;
                for k in 0..=a as u32 {
                    let fc = f.form_component(k);
                    if fc.is_zero() {
                        continue;
                    }
                    let w = wq - r * k as i64;
                    lo = Some(lo.map_or(w, |v: i64| v.min(w)));
                    hi = Some(hi.map_or(w, |v: i64| v.max(w)));
                }
            }
        }
        Some((lo?, hi?))
    }

    /// Cohomology of the end, computed exactly through the contraction onto
    /// the finite total complex and split by bidegree (level + coefficient
    /// `p`, coefficient `q`).
    pub fn cohomology(&self) -> crate::pages::Cohomology {
        crate::pages::cohomology(self)
    }

    /// Solve `dx = y` for a compatible cocycle `y` known to be exact in the
    /// end; returns `None` when `y` is not exact.
    pub fn solve_d(&self, y: &TwElt) -> Option<TwElt> {
        crate::pages::solve_d(self, y)
    }
}

impl crate::pages::Contracted for TwPage {
    type Elt = TwElt;

    fn total_dim(&self) -> usize {
        TwPage::total_dim(self)
    }
    fn bidegree(&self, flat: usize) -> (i64, i64) {
        TwPage::bidegree(self, flat)
    }
    fn expand(&self, v: &SparseVec) -> TwElt {
        TwPage::expand(self, v)
    }
    fn integrate(&self, x: &TwElt) -> SparseVec {
        TwPage::integrate(self, x)
    }
    fn homotopy(&self, x: &TwElt) -> TwElt {
        TwPage::homotopy(self, x)
    }
    fn d(&self, x: &TwElt) -> TwElt {
        TwPage::d(self, x)
    }
    fn mul(&self, x: &TwElt, y: &TwElt) -> TwElt {
        TwPage::mul(self, x, y)
    }
    fn add(&self, x: &TwElt, y: &TwElt) -> TwElt {
        TwPage::add(self, x, y)
    }
    fn scale(&self, x: &TwElt, c: &Q) -> TwElt {
        TwPage::scale(self, x, c)
    }
    fn is_zero(&self, x: &TwElt) -> bool {
        x.is_zero()
    }
    fn unit_flat(&self) -> SparseVec {
        let mut v = SparseVec::new();
        v.insert(self.flat_index(0, self.diagram.levels[0].unit), q1());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::BasisElt;
    use crate::linalg::unit_vec;
    use crate::scalar::qi;
    use crate::simplex::{dupont_homotopy, SimplexForm};

    /// The cohomology ring of a point.
    fn point_ring(name: &str) -> Cdga {
        Cdga::new(
            vec![BasisElt { name: format!("1_{name}"), p: 0, q: 0 }],
            0,
            (1, 0),
        )
    }

    /// H*(P¹): unit and a degree-2 point class.
    fn p1_ring(name: &str) -> Cdga {
        let mut c = Cdga::new(
            vec![
                BasisElt { name: format!("1_{name}"), p: 0, q: 0 },
                BasisElt { name: format!("pt_{name}"), p: 0, q: 2 },
            ],
            0,
            (1, 0),
        );
        c.set_product_sym(1, 1, SparseVec::new());
        c
    }

    /// Two projective lines meeting in one point: level 0 = H(L₁ ⊔ L₂),
    /// level 1 = H(point), cofaces the two restrictions to the point.
    /// Basis of level 0: one, e_b (indicator of L₂), a.pt, b.pt.
    fn two_lines() -> CosimplicialCdga {
        let a = p1_ring("a");
        let b = p1_ring("b");
        let (l0, _rests) = crate::cdga::disjoint_union(&[&a, &b], &["a", "b"]);
        let l1 = point_ring("pt");
        // Restriction via L₁: one ↦ 1, e_b ↦ 0, point classes ↦ 0.
        let mut d0 = Mat::zero(1, l0.basis.len());
        d0.set(0, 0, q1());
        // Restriction via L₂: one ↦ 1, e_b ↦ 1.
        let mut d1 = Mat::zero(1, l0.basis.len());
        d1.set(0, 0, q1());
        d1.set(0, 1, q1());
        CosimplicialCdga { levels: vec![l0, l1], cofaces: vec![vec![d0, d1]] }
    }

    #[test]
    fn two_lines_diagram_validates() {
        let d = two_lines();
        d.validate().expect("diagram should validate");
    }

    #[test]
    fn constant_diagram_cohomology() {
        // Q ⇉ Q with both cofaces the identity. The end is the subalgebra
        // {b ∈ Λ(t,dt) : b(0) = b(1)} (the level-0 value is determined by
        // the endpoints), i.e. forms on a circle: H⁰ = Q and H¹ = Q·[dt].
        // Equivalently: the two-object two-arrow index category has the
        // homotopy type of S¹, and the homotopy limit of the constant
        // diagram sees its cohomology. A single-level diagram, by contrast,
        // gives plain Q (checked below).
        let l0 = point_ring("x");
        let l1 = point_ring("y");
        let id = Mat::identity(1);
        let d = CosimplicialCdga { levels: vec![l0, l1], cofaces: vec![vec![id.clone(), id]] };
        let page = TwPage::new(d).unwrap();
        let dims = page.cohomology().dims();
        assert_eq!(dims.get(&(0, 0)), Some(&1));
        assert_eq!(dims.get(&(1, 0)), Some(&1));
        assert_eq!(dims.len(), 2);

        // End over a point: the algebra itself.
        let single = CosimplicialCdga { levels: vec![point_ring("z")], cofaces: vec![] };
        let page = TwPage::new(single).unwrap();
        let dims = page.cohomology().dims();
        assert_eq!(dims.len(), 1);
        assert_eq!(dims[&(0, 0)], 1);
    }

    #[test]
    fn two_lines_cohomology_is_mayer_vietoris() {
        // H*(L₁ ∪ L₂) = (Q, 0, Q²): wedge of two spheres.
        let page = TwPage::new(two_lines()).unwrap();
        let dims = page.cohomology().dims();
        assert_eq!(dims.get(&(0, 0)), Some(&1));
        assert_eq!(dims.get(&(0, 2)), Some(&2));
        assert_eq!(dims.get(&(1, 0)), None);
        assert_eq!(dims.values().sum::<usize>(), 3);
    }

    #[test]
    fn expansion_lands_in_end_and_integrates_back() {
        let page = TwPage::new(two_lines()).unwrap();
        for flat in 0..page.total_dim() {
            let v = unit_vec(flat);
            let x = page.expand(&v);
            assert!(page.is_compatible(&x), "E image compatible at {flat}");
            assert_eq!(page.integrate(&x), v, "I E = id at {flat}");
        }
    }

    #[test]
    fn transferred_differential_matches_tw() {
        let page = TwPage::new(two_lines()).unwrap();
        let dmat = page.total_differential();
        for flat in 0..page.total_dim() {
            let v = unit_vec(flat);
            let lhs = page.integrate(&page.d(&page.expand(&v)));
            let rhs = dmat.mul_vec(&v);
            assert_eq!(lhs, rhs, "I d E = D at {flat}");
        }
    }

    #[test]
    fn contraction_identity_on_end() {
        let page = TwPage::new(two_lines()).unwrap();
        // Build compatible elements beyond the elementary image: products of
        // expansions and their differentials.
        let mut battery = Vec::new();
        for i in 0..page.total_dim() {
            battery.push(page.expand(&unit_vec(i)));
        }
        let prod = page.mul(&battery[0].clone(), &battery[4].clone());
        battery.push(prod);
        for x in &battery {
            assert!(page.is_compatible(x));
            let dx = page.d(x);
            assert!(page.is_compatible(&dx), "d preserves the end");
            let sx = page.homotopy(x);
            assert!(page.is_compatible(&sx), "S preserves the end");
            let lhs = page.add(x, &page.scale(&page.expand(&page.integrate(x)), &-q1()));
            let rhs = page.add(&page.d(&page.homotopy(x)), &page.homotopy(&page.d(x)));
            assert_eq!(lhs, rhs, "id - E I = d S + S d");
        }
    }

    #[test]
    fn unit_is_global_one() {
        let page = TwPage::new(two_lines()).unwrap();
        let u = page.unit_elt();
        assert!(page.is_compatible(&u));
        // Level 0: the merged unit with constant coefficient 1; level 1:
        // the point unit with constant coefficient 1.
        assert_eq!(u.levels[0][&0], SimplexForm::one(0));
        assert_eq!(u.levels[1][&0], SimplexForm::one(1));
        // Unit is idempotent and acts as identity.
        let x = page.expand(&unit_vec(1));
        assert_eq!(page.mul(&u, &x), x);
        assert_eq!(page.mul(&x, &u), x);
    }

    #[test]
    fn solve_exact_cocycles() {
        let page = TwPage::new(two_lines()).unwrap();
        // Take x = S-image-ish element: use x = E v scaled plus a handmade
        // exact element y = d(x) and resolve it.
        let x = page.expand(&unit_vec(1));
        let y = page.d(&x);
        if y.is_zero() {
            // pt class is closed; use a non-closed combination instead: the
            // difference of the two line units is not closed in this complex?
            // Build from the e_b class (index of the second-line indicator).
            let x2 = page.expand(&unit_vec(2));
            let y2 = page.d(&x2);
            assert!(!y2.is_zero(), "expected a non-closed chain for the test");
            let sol = page.solve_d(&y2).expect("exact cocycle must be solvable");
            assert_eq!(page.d(&sol), y2);
        } else {
            let sol = page.solve_d(&y).expect("exact cocycle must be solvable");
            assert_eq!(page.d(&sol), y);
        }
    }

    #[test]
    fn weight_ranges() {
        let page = TwPage::new(two_lines()).unwrap();
        let u = page.unit_elt();
        assert_eq!(page.weight_range(1, &u), Some((0, 0)));
        // A dt-supported element: S of something or handmade: put pt ⊗ dt at
        // level 1 — not compatible, but weight bookkeeping is levelwise.
        let mut x = page.zero_elt();
        let mut m = BTreeMap::new();
        m.insert(0usize, SimplexForm::dt(1, 0));
        x.levels[1] = m;
        assert_eq!(page.weight_range(1, &x), Some((-1, -1)));
        assert_eq!(page.weight_range(2, &x), Some((-2, -2)));
        let _ = (qi(0), dupont_homotopy(&SimplexForm::one(1)));
    }
}
