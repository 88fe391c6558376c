//! Formality witnesses.
//!
//! The verdicts here are never probabilistic: every witness stores the
//! exact residuals it checked, and a witness is VALID only when all of
//! them are literally zero.
//!
//! All constructions work directly on a contracted first-page complex
//! (the polynomial-form model), which is the strictly multiplicative
//! presentation of the first page: multiplicativity is checked by exact
//! page arithmetic, never up to homotopy. A finite transfer of the
//! product is NOT used — the transferred binary product is associative
//! only up to an exact correction, so presenting it as the page algebra
//! would be dishonest.
//!
//! * [`purity_witness`] builds the closed subalgebra `M` spanned by the
//!   weight-column cocycles `Ker d₁^{0,•}` together with its inclusion
//!   `φ: (M,0) → (E1,d₁)` and projection `ψ: (M,0) → (E2,0)`, and reads
//!   off how far purity (hence formality) reaches.
//! * [`rho_witness`] builds a section `ρ: (E2,0) → (E1,d₁)` of the
//!   projection `Ker d₁ ↠ E2` from pivot representatives and certifies
//!   it as a strictly multiplicative quasi-isomorphism — the content of
//!   the geometric formality theorems for the supported shapes.
//! * [`triple_massey`] computes triple Massey products with their full
//!   indeterminacy subspace; it is the negative control: formal pages
//!   must have vanishing products, the Heisenberg control must not.

use std::collections::BTreeMap;

use crate::builders::E1Page;
use crate::cdga::{purity_check, BasisElt, Cdga};
use crate::linalg::{rank_kernel_image, solve, unit_vec, Echelon, Mat, SparseVec};
use crate::pages::{
    ring_page, solve_d, transferred_differential, Contracted, FinitePage, RingPage,
};
use crate::scalar::{q0, q1, sign, Q};

#[derive(Debug)]
pub enum FormalityError {
    /// The page does not have the support pattern the requested shape's
    /// geometric hypothesis forces.
    ShapeHypothesisViolation(String),
    /// A Massey product was requested for classes whose pairwise products
    /// do not vanish in cohomology.
    ProductNotZero(String),
    /// The page structure violated an expected algebraic identity.
    Structure(String),
}

impl std::fmt::Display for FormalityError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormalityError::ShapeHypothesisViolation(s) => {
                write!(f, "shape hypothesis violation: {s}")
            }
            FormalityError::ProductNotZero(s) => write!(f, "product not zero: {s}"),
            FormalityError::Structure(s) => write!(f, "structure failure: {s}"),
        }
    }
}

impl std::error::Error for FormalityError {}

/// A morphism from a zero-differential bigraded ring into a first-page
/// complex, together with its complete verification record. The page
/// elements themselves are not stored; every check result and a
/// finite-side shadow of every image and residual is.
#[derive(Debug, Clone)]
pub struct PageWitness {
    pub source: Cdga,
    /// Finite-side shadow (`I` applied to the image) of each source
    /// basis element, grouped into a matrix per source bidegree.
    pub blocks: BTreeMap<(i64, i64), Mat>,
    pub unit_preserved: bool,
    /// Every image is a page cocycle (chain-map condition against the
    /// zero source differential).
    pub chain_map: bool,
    /// Finite-side shadow of the multiplicativity residual
    /// `f(x)f(y) − f(xy)` for every source basis pair.
    pub residuals: BTreeMap<(usize, usize), SparseVec>,
    /// Exact page-level vanishing of each residual. This is the
    /// authoritative test: a page element can integrate to zero without
    /// being zero. VALID requires every entry true.
    pub residual_zero: BTreeMap<(usize, usize), bool>,
    /// First basis pair whose residual is not the zero page element.
    pub offending_pair: Option<(usize, usize)>,
    pub valid: bool,
    /// Induced map on cohomology per total degree `k`, in the coordinates
    /// of the page's cohomology ring.
    pub induced: BTreeMap<i64, Mat>,
}

/// Build and fully verify a page-level morphism witness from explicit
/// images of the source basis. The source must carry the zero
/// differential; `ring` fixes coordinates on the page cohomology.
pub fn page_witness<T: Contracted>(
    page: &T,
    ring: &RingPage,
    source: &Cdga,
    images: &[T::Elt],
) -> PageWitness {
    assert!(source.diff_is_zero(), "witness sources carry the zero differential");
    assert_eq!(images.len(), source.dim());
    let unit_preserved = {
        let u = page.expand(&page.unit_flat());
        page.is_zero(&page.add(&images[source.unit], &page.scale(&u, &-q1())))
    };
    let chain_map = images.iter().all(|x| page.is_zero(&page.d(x)));
    let mut residuals = BTreeMap::new();
    let mut residual_zero = BTreeMap::new();
    let mut offending_pair = None;
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = page.mul(&images[i], &images[j]);
            let mut rhs = page.scale(&images[i], &q0());
            for (k, c) in source.basis_product(i, j) {
                rhs = page.add(&rhs, &page.scale(&images[k], &c));
            }
            let res = page.add(&lhs, &page.scale(&rhs, &-q1()));
            let zero = page.is_zero(&res);
            if !zero && offending_pair.is_none() {
                offending_pair = Some((i, j));
            }
            residuals.insert((i, j), page.integrate(&res));
            residual_zero.insert((i, j), zero);
        }
    }
    // Finite-side shadow matrices per source bidegree.
    let shadows: Vec<SparseVec> = images.iter().map(|x| page.integrate(x)).collect();
    let mut blocks = BTreeMap::new();
    for (pq, _) in source.cell_dims() {
        let src = source.cell(pq.0, pq.1);
        let tgt: Vec<usize> =
            (0..page.total_dim()).filter(|f| page.bidegree(*f) == pq).collect();
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let mut m = Mat::zero(tgt.len(), src.len());
        for (c, idx) in src.iter().enumerate() {
            for (i, v) in &shadows[*idx] {
                m.set(pos[i], c, v.clone());
            }
        }
        blocks.insert(pq, m);
    }
    // Induced cohomology maps per total degree.
    let mut induced = BTreeMap::new();
    if chain_map {
        let max_deg = source
            .basis
            .iter()
            .map(|b| b.degree())
            .chain(ring.cdga.basis.iter().map(|b| b.degree()))
            .max()
            .unwrap_or(0);
        for k in 0..=max_deg {
            let src_k = source.degree_indices(k);
            let tgt_k = ring.cdga.degree_indices(k);
            if src_k.is_empty() && tgt_k.is_empty() {
                continue;
            }
            let pos: BTreeMap<usize, usize> =
                tgt_k.iter().enumerate().map(|(r, i)| (*i, r)).collect();
            let mut m = Mat::zero(tgt_k.len(), src_k.len());
            for (c, idx) in src_k.iter().enumerate() {
                for (i, v) in ring.class_of(page, &images[*idx]) {
                    m.set(pos[&i], c, v);
                }
            }
            induced.insert(k, m);
        }
    }
    let all_zero = residual_zero.values().all(|b| *b);
    let valid = unit_preserved && chain_map && all_zero;
    PageWitness {
        source: source.clone(),
        blocks,
        unit_preserved,
        chain_map,
        residuals,
        residual_zero,
        offending_pair,
        valid,
        induced,
    }
}

/// Verdict of an `r`-quasi-isomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIsoVerdict {
    pub ok: bool,
    /// First total degree where the requirement fails.
    pub first_failing_degree: Option<i64>,
}

/// Check that the induced cohomology maps are isomorphisms in all
/// degrees `≤ r` and a monomorphism in degree `r + 1` (`r = None` means
/// isomorphisms in every degree).
pub fn r_quasi_iso_check(induced: &BTreeMap<i64, Mat>, r: Option<i64>) -> QuasiIsoVerdict {
    let max_deg = induced.keys().max().cloned().unwrap_or(0);
    let empty = Mat::zero(0, 0);
    for k in 0..=max_deg + 1 {
        let m = induced.get(&k).unwrap_or(&empty);
        let rank = rank_kernel_image(m).rank;
        let iso = rank == m.rows && rank == m.cols;
        let mono = rank == m.cols;
        let ok = match r {
            None => iso,
            Some(r) if k <= r => iso,
            Some(r) if k == r + 1 => mono,
            Some(_) => true,
        };
        if !ok {
            return QuasiIsoVerdict { ok: false, first_failing_degree: Some(k) };
        }
    }
    QuasiIsoVerdict { ok: true, first_failing_degree: None }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PurityVerdict {
    /// Purity holds through the requested range; the witnesses certify
    /// `r`-formality (`∞`-formality when no bound was requested).
    RFormal,
    /// First impure cell `(degree, weight)` obstructing the request.
    Counterexample { cell: (i64, i64) },
}

/// The purity witness: `M = Ker d₁^{0,•}` with its two morphisms.
pub struct PurityWitness {
    pub m: Cdga,
    /// Inclusion `(M,0) → (E1,d₁)` as expanded page cocycles.
    pub phi: PageWitness,
    /// Projection `(M,0) → (E2,0)`.
    pub psi: PageWitness,
    /// The second page in the coordinates the witnesses use.
    pub e2: RingPage,
    /// Largest degree bound through which every weight is pure.
    pub pure_through: i64,
    pub verdict: PurityVerdict,
}

/// Build the purity witness on a first-page complex.
///
/// `M` is spanned, in each weight `q`, by the transferred-differential
/// kernel of the `p = 0` column. Its product is inherited from the page:
/// the expansion of a `(0,q)`-cocycle is the unique page cocycle of
/// total degree `q` and weight `q` in its class (nothing of weight `q`
/// exists in degree `q − 1`), so products of expansions are again
/// expansions of kernel vectors — this strictness is asserted, not
/// assumed, and makes `φ` multiplicative on the nose.
pub fn purity_witness<T: Contracted>(
    page: &T,
    r: Option<i64>,
) -> Result<PurityWitness, FormalityError> {
    let dmat = transferred_differential(page);
    let cell = |p: i64, q: i64| -> Vec<usize> {
        (0..page.total_dim()).filter(|f| page.bidegree(*f) == (p, q)).collect()
    };
    let weights: Vec<i64> = {
        let mut ws: Vec<i64> = (0..page.total_dim())
            .filter(|f| page.bidegree(*f).0 == 0)
            .map(|f| page.bidegree(f).1)
            .collect();
        ws.sort();
        ws.dedup();
        ws
    };
    let mut m_basis: Vec<BasisElt> = Vec::new();
    let mut m_vectors: Vec<SparseVec> = Vec::new(); // finite-side flat coordinates
    let mut m_unit = None;
    for q in weights {
        let here = cell(0, q);
        let target = cell(1, q);
        let sub = dmat.submatrix(&target, &here);
        let ker = rank_kernel_image(&sub).kernel;
        for (k, kv) in ker.iter().enumerate() {
            let mut ambient = SparseVec::new();
            for (loc, c) in kv {
                ambient.insert(here[*loc], c.clone());
            }
            if q == 0 {
                assert_eq!(ker.len(), 1, "expected a connected page");
                assert_eq!(ambient, page.unit_flat(), "degree-0 cocycle must be the unit");
                m_unit = Some(m_basis.len());
            }
            m_basis.push(BasisElt { name: format!("M[0,{q}]#{k}"), p: 0, q });
            m_vectors.push(ambient);
        }
    }
    let m_unit =
        m_unit.ok_or_else(|| FormalityError::Structure("page has no unit cell".into()))?;
    let images: Vec<T::Elt> = m_vectors.iter().map(|v| page.expand(v)).collect();
    let mut m = Cdga::new(m_basis, m_unit, (1, 0));
    // Products: the page product of two kernel expansions must be
    // exactly the expansion of its own integral (strictness), and the
    // integral must lie in the span of the kernel basis (closure).
    for i in 0..m_vectors.len() {
        for j in 0..m_vectors.len() {
            if i == m_unit || j == m_unit {
                continue;
            }
            let prod = page.mul(&images[i], &images[j]);
            let flat = page.integrate(&prod);
            let back = page.expand(&flat);
            if !page.is_zero(&page.add(&prod, &page.scale(&back, &-q1()))) {
                return Err(FormalityError::Structure(format!(
                    "product of weight-column cocycles {i},{j} is not an expansion"
                )));
            }
            let q = m.basis[i].q + m.basis[j].q;
            let span: Vec<usize> =
                (0..m_vectors.len()).filter(|k| m.basis[*k].q == q).collect();
            let cols: Vec<SparseVec> = span.iter().map(|k| m_vectors[*k].clone()).collect();
            let a = Mat::from_cols(page.total_dim(), &cols);
            let local = solve(&a, &flat).map_err(|_| {
                FormalityError::Structure(format!(
                    "product of weight-column cocycles {i},{j} left the kernel subalgebra"
                ))
            })?;
            let mut out = SparseVec::new();
            for (k, c) in local {
                out.insert(span[k], c);
            }
            m.set_product(i, j, out);
        }
    }
    m.validate().map_err(|e| FormalityError::Structure(format!("{e:?}")))?;
    let e2 = ring_page(page, "E2", (2, -1));
    let phi = page_witness(page, &e2, &m, &images);
    // ψ lands in the finite second page; reuse the same machinery with
    // the trivial contraction on E2 (whose cohomology is E2 itself).
    let psi = {
        let fp = FinitePage(&e2.cdga);
        let e2_ring = ring_page(&fp, "E2id", (2, -1));
        let psi_cols: Vec<SparseVec> = images.iter().map(|x| e2.class_of(page, x)).collect();
        page_witness(&fp, &e2_ring, &m, &psi_cols)
    };
    let purity = purity_check(&e2.cdga);
    let pure_through = purity.pure_through;
    let verdict = match r {
        Some(rr) if pure_through >= rr => PurityVerdict::RFormal,
        None if purity.impure_cells.is_empty() => PurityVerdict::RFormal,
        _ => {
            let (k, mw, _) = purity.impure_cells[0];
            PurityVerdict::Counterexample { cell: (k, mw) }
        }
    };
    Ok(PurityWitness { m, phi, psi, e2, pure_through, verdict })
}

/// Geometric shape under which a multiplicative section is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Normal projective surface (`n = 2`).
    Surface,
    /// Isolated singularities with `(n−2)`-connected links.
    ConnectedLink,
    /// Isolated singularities resolved with a smooth exceptional divisor.
    SmoothDivisor,
    /// Contraction of a subvariety with `(n−2)`-connected links or a
    /// smooth exceptional preimage (semi-purity may fail).
    Contraction,
}

impl Shape {
    pub fn parse(s: &str) -> Option<Shape> {
        match s {
            "surface" => Some(Shape::Surface),
            "connected-link" => Some(Shape::ConnectedLink),
            "smooth-divisor" => Some(Shape::SmoothDivisor),
            "contraction" => Some(Shape::Contraction),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Shape::Surface => "surface",
            Shape::ConnectedLink => "connected-link",
            Shape::SmoothDivisor => "smooth-divisor",
            Shape::Contraction => "contraction",
        }
    }
}

/// Check the machine-checkable footprint of a shape hypothesis on the
/// first-page cells and the second page. Only the page-level shadow of
/// the geometric hypothesis is decidable here; the shape itself is
/// explicit user input, never inferred. The connected-link footprint is
/// strictly weaker than the geometric hypothesis (it checks only the
/// forced concentration pattern of the second page).
fn shape_precheck(
    e1_cells: &BTreeMap<(i64, i64), usize>,
    e2: &Cdga,
    shape: Shape,
) -> Result<(), FormalityError> {
    let max_deg = e1_cells.keys().map(|(p, q)| p + q).max().unwrap_or(0);
    let n = max_deg / 2;
    let viol = |msg: String| Err(FormalityError::ShapeHypothesisViolation(msg));
    match shape {
        Shape::Surface => {
            if max_deg != 4 {
                return viol(format!("surface shape needs top degree 4, found {max_deg}"));
            }
            for (p, q) in e1_cells.keys() {
                if *p > 2 || *q > 4 - 2 * p {
                    return viol(format!(
                        "cell ({p}, {q}) outside the surface window q ≤ 4 − 2p"
                    ));
                }
            }
        }
        Shape::ConnectedLink => {
            // (n−2)-connected links force the positive columns of the
            // second page to concentrate in weight q = n − p.
            for b in &e2.basis {
                if b.p >= 1 && b.q != n - b.p {
                    return viol(format!(
                        "E2 cell ({}, {}) violates the connected-link pattern q = {n} − p",
                        b.p, b.q
                    ));
                }
            }
        }
        Shape::SmoothDivisor => {
            for (p, q) in e1_cells.keys() {
                if *p >= 2 {
                    return viol(format!(
                        "smooth exceptional divisor forbids depth-2 strata; found cell ({p}, {q})"
                    ));
                }
            }
        }
        Shape::Contraction => {
            // Same as connected-link, but the impure row q = n + 1 − p is
            // allowed: semi-purity can fail for contractions.
            for b in &e2.basis {
                if b.p >= 1 && b.q != n - b.p && b.q != n + 1 - b.p {
                    return viol(format!(
                        "E2 cell ({}, {}) violates the contraction pattern q ∈ {{{}−p, {}−p}}",
                        b.p,
                        b.q,
                        n,
                        n + 1
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The multiplicative-section witness `ρ: (E2,0) → (E1,d₁)`.
pub struct RhoWitness {
    pub witness: PageWitness,
    pub e2: RingPage,
}

/// Build `ρ` from pivot representatives of `Ker d₁ ↠ E2` and verify it
/// exactly: chain map, quasi-isomorphism, and strict multiplicativity on
/// every basis pair. The shape's page-level footprint is prechecked.
pub fn rho_witness<T: Contracted>(page: &T, shape: Shape) -> Result<RhoWitness, FormalityError> {
    rho_witness_scaled(page, shape, &[])
}

/// Same as [`rho_witness`] but with the section representatives rescaled
/// by the given nonzero scalars (cycled over the E2 basis, unit kept at
/// 1). Rescaling the representatives rescales the E2 basis itself, so
/// the source ring's structure constants pick up compensating factors;
/// the verdict must never depend on this normalization.
pub fn rho_witness_scaled<T: Contracted>(
    page: &T,
    shape: Shape,
    scales: &[Q],
) -> Result<RhoWitness, FormalityError> {
    let e2 = ring_page(page, "E2", (2, -1));
    let mut e1_cells: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for f in 0..page.total_dim() {
        *e1_cells.entry(page.bidegree(f)).or_insert(0) += 1;
    }
    shape_precheck(&e1_cells, &e2.cdga, shape)?;
    let dim = e2.cdga.dim();
    let lambda = |k: usize| -> Q {
        if scales.is_empty() || k == e2.cdga.unit {
            q1()
        } else {
            scales[k % scales.len()].clone()
        }
    };
    let mut source = e2.cdga.clone();
    for i in 0..dim {
        for j in 0..dim {
            if i == source.unit || j == source.unit {
                continue;
            }
            let prod = e2.cdga.basis_product(i, j);
            let mut scaled = SparseVec::new();
            for (k, c) in prod {
                scaled.insert(k, c * lambda(i) * lambda(j) / lambda(k));
            }
            source.set_product(i, j, scaled);
        }
    }
    source.validate().map_err(|e| FormalityError::Structure(format!("{e:?}")))?;
    let images: Vec<T::Elt> = (0..dim)
        .map(|k| page.scale(&page.expand(&e2.reps[k]), &lambda(k)))
        .collect();
    let witness = page_witness(page, &e2, &source, &images);
    assert!(witness.chain_map, "kernel representatives must be cocycles");
    assert!(
        r_quasi_iso_check(&witness.induced, None).ok,
        "a section of Ker d₁ ↠ E2 must be a quasi-isomorphism"
    );
    Ok(RhoWitness { witness, e2 })
}

/// Dispatch helpers for the two first-page presentations the builders
/// produce.
pub fn purity_witness_e1(e1: &E1Page, r: Option<i64>) -> Result<PurityWitness, FormalityError> {
    match e1 {
        E1Page::Pure(c) => purity_witness(&FinitePage(c), r),
        E1Page::Cone(c) => purity_witness(c, r),
    }
}

pub fn rho_witness_e1(e1: &E1Page, shape: Shape) -> Result<RhoWitness, FormalityError> {
    match e1 {
        E1Page::Pure(c) => rho_witness(&FinitePage(c), shape),
        E1Page::Cone(c) => rho_witness(c, shape),
    }
}

/// Semi-purity: purity of the weight filtration in every degree `k > n`.
#[derive(Debug, Clone)]
pub struct SemiPurityReport {
    pub holds: bool,
    /// Impure cells `(degree, weight, dim)` with `degree > n`.
    pub failures: Vec<(i64, i64, usize)>,
}

pub fn semi_purity_check(e2: &Cdga, n: i64) -> SemiPurityReport {
    let purity = purity_check(e2);
    let failures: Vec<(i64, i64, usize)> =
        purity.impure_cells.iter().filter(|(k, _, _)| *k > n).cloned().collect();
    SemiPurityReport { holds: failures.is_empty(), failures }
}

/// A triple Massey product with its full indeterminacy.
#[derive(Debug, Clone)]
pub struct MasseyResult {
    /// Class of the representative `x·b + (−1)^{|x|+1} a·z` in the
    /// cohomology-ring coordinates.
    pub rep_class: SparseVec,
    /// Basis of the indeterminacy subspace `x·H + H·z`.
    pub indeterminacy: Vec<SparseVec>,
    /// The coset contains zero, i.e. the product vanishes.
    pub contains_zero: bool,
}

fn class_degree(ring: &RingPage, v: &SparseVec, what: &str) -> i64 {
    let mut deg = None;
    for (i, _) in v {
        let d = ring.cdga.basis[*i].degree();
        match deg {
            None => deg = Some(d),
            Some(e) => assert_eq!(e, d, "{what} must be degree-homogeneous"),
        }
    }
    deg.unwrap_or(0)
}

/// Compute the triple Massey product `⟨x, y, z⟩` on a contracted
/// complex, with `x, y, z` given as classes in the coordinates of `ring`
/// (the extracted cohomology ring of `page`).
pub fn triple_massey<T: Contracted>(
    page: &T,
    ring: &RingPage,
    x: &SparseVec,
    y: &SparseVec,
    z: &SparseVec,
) -> Result<MasseyResult, FormalityError> {
    let dx = class_degree(ring, x, "x");
    let dy = class_degree(ring, y, "y");
    let dz = class_degree(ring, z, "z");
    let lift = |v: &SparseVec| -> T::Elt {
        let mut acc = page.expand(&SparseVec::new());
        for (i, c) in v {
            acc = page.add(&acc, &page.scale(&page.expand(&ring.reps[*i]), c));
        }
        acc
    };
    let xe = lift(x);
    let ye = lift(y);
    let ze = lift(z);
    let xy = page.mul(&xe, &ye);
    let yz = page.mul(&ye, &ze);
    for (name, prod) in [("xy", &xy), ("yz", &yz)] {
        if !ring.class_of(page, prod).is_empty() {
            return Err(FormalityError::ProductNotZero(format!(
                "{name} is nonzero in cohomology"
            )));
        }
    }
    let a = solve_d(page, &xy).expect("a product with zero class is exact");
    let b = solve_d(page, &yz).expect("a product with zero class is exact");
    // Representative x·b + (−1)^{|x|+1} a·z.
    let rep = page.add(&page.mul(&xe, &b), &page.scale(&page.mul(&a, &ze), &sign(dx + 1)));
    assert!(page.is_zero(&page.d(&rep)), "Massey representative must be a cocycle");
    let rep_class = ring.class_of(page, &rep);
    // Indeterminacy x·H^{|y|+|z|−1} + H^{|x|+|y|−1}·z, computed in the
    // cohomology ring (its products are the page products on classes).
    let mut indeterminacy = Vec::new();
    let mut ech = Echelon::new(ring.cdga.dim());
    for i in 0..ring.cdga.dim() {
        let d = ring.cdga.basis[i].degree();
        let mut candidates = Vec::new();
        if d == dy + dz - 1 {
            candidates.push(ring.cdga.product(x, &unit_vec(i)));
        }
        if d == dx + dy - 1 {
            candidates.push(ring.cdga.product(&unit_vec(i), z));
        }
        for v in candidates {
            if !v.is_empty() && ech.insert(&v).is_some() {
                indeterminacy.push(v);
            }
        }
    }
    let contains_zero = ech.contains(&rep_class);
    Ok(MasseyResult { rep_class, indeterminacy, contains_zero })
}

/// Enumerate all admissible triples of basis classes of `ring` (pairwise
/// products `xy` and `yz` zero in cohomology, unit excluded) and check
/// every triple Massey product contains zero. Returns the first failing
/// triple.
pub fn all_triples_vanish<T: Contracted>(
    page: &T,
    ring: &RingPage,
) -> Result<Option<(usize, usize, usize)>, FormalityError> {
    let dim = ring.cdga.dim();
    for i in 0..dim {
        for j in 0..dim {
            if !ring.cdga.basis_product(i, j).is_empty() {
                continue;
            }
            for k in 0..dim {
                if !ring.cdga.basis_product(j, k).is_empty() {
                    continue;
                }
                if i == ring.cdga.unit || j == ring.cdga.unit || k == ring.cdga.unit {
                    continue;
                }
                let res = triple_massey(page, ring, &unit_vec(i), &unit_vec(j), &unit_vec(k))?;
                if !res.contains_zero {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_contraction_pages, build_isolated_pages, ConePages};
    use crate::bundled::{cone_over_curve, heisenberg_control, nodal_curve, segre, two_lines_cp2};
    use crate::scalar::{qi, qr};

    fn purity_of(pages: &ConePages, r: Option<i64>) -> PurityWitness {
        purity_witness_e1(&pages.e1, r).unwrap()
    }

    #[test]
    fn purity_witness_on_two_lines() {
        let pages = build_contraction_pages(&two_lines_cp2()).unwrap();
        // H³ carries a weight-2 class: purity reaches degree 2 only.
        let w = purity_of(&pages, None);
        assert_eq!(w.pure_through, 2);
        assert_eq!(w.verdict, PurityVerdict::Counterexample { cell: (3, 2) });
        assert_eq!(purity_of(&pages, Some(2)).verdict, PurityVerdict::RFormal);
        // φ and ψ are strict morphisms with all residuals zero.
        assert!(w.phi.valid, "phi offending pair {:?}", w.phi.offending_pair);
        assert!(w.psi.valid, "psi offending pair {:?}", w.psi.offending_pair);
        // They are 2-quasi-isomorphisms but not 3-.
        assert!(r_quasi_iso_check(&w.phi.induced, Some(2)).ok);
        let fail = r_quasi_iso_check(&w.phi.induced, Some(3));
        assert!(!fail.ok);
        assert_eq!(fail.first_failing_degree, Some(3));
        assert!(r_quasi_iso_check(&w.psi.induced, Some(2)).ok);
        assert!(!r_quasi_iso_check(&w.psi.induced, Some(3)).ok);
    }

    #[test]
    fn purity_witness_on_segre_fails_exactly_at_three() {
        let pages = build_isolated_pages(&segre()).unwrap();
        let w = purity_of(&pages, None);
        assert_eq!(w.pure_through, 2);
        assert_eq!(w.verdict, PurityVerdict::Counterexample { cell: (3, 2) });
        assert!(w.phi.valid && w.psi.valid);
        // Inclusion of the kernel column: 2-quasi-iso but not 3-.
        assert!(r_quasi_iso_check(&w.phi.induced, Some(2)).ok);
        assert_eq!(
            r_quasi_iso_check(&w.phi.induced, Some(3)).first_failing_degree,
            Some(3)
        );
    }

    #[test]
    fn purity_witness_on_a_pure_page_is_identity_like() {
        let pages = build_isolated_pages(&cone_over_curve(2, 1)).unwrap();
        let w = purity_of(&pages, None);
        assert_eq!(w.verdict, PurityVerdict::RFormal);
        assert!(w.phi.valid && w.psi.valid);
        assert!(r_quasi_iso_check(&w.phi.induced, None).ok);
        assert!(r_quasi_iso_check(&w.psi.induced, None).ok);
        // ψ is a degreewise isomorphism: M and E2 have equal dimensions.
        assert_eq!(w.m.cell_dims(), w.e2.cdga.cell_dims());
    }

    #[test]
    fn rho_witness_on_the_required_shapes() {
        // Surface shape: the nodal-curve blow-down.
        let nodal = build_isolated_pages(&nodal_curve(3, 4, 1)).unwrap();
        let w = rho_witness_e1(&nodal.e1, Shape::Surface).unwrap();
        assert!(w.witness.valid, "offending pair {:?}", w.witness.offending_pair);

        // Smooth-divisor shape: cone over a genus-2 curve.
        let cone = build_isolated_pages(&cone_over_curve(2, 1)).unwrap();
        let w = rho_witness_e1(&cone.e1, Shape::SmoothDivisor).unwrap();
        assert!(w.witness.valid, "offending pair {:?}", w.witness.offending_pair);

        // Connected-link shape: the Segre cubic (10 nodes, threefold).
        let seg = build_isolated_pages(&segre()).unwrap();
        let w = rho_witness_e1(&seg.e1, Shape::ConnectedLink).unwrap();
        assert!(w.witness.valid, "offending pair {:?}", w.witness.offending_pair);

        // Contraction shape: two lines in the plane contracted to a point.
        let two = build_contraction_pages(&two_lines_cp2()).unwrap();
        let w = rho_witness_e1(&two.e1, Shape::Contraction).unwrap();
        assert!(w.witness.valid, "offending pair {:?}", w.witness.offending_pair);
    }

    #[test]
    fn shape_prechecks_reject_wrong_shapes() {
        // Two-lines has a depth-2 stratum: not a smooth divisor.
        let two = build_contraction_pages(&two_lines_cp2()).unwrap();
        assert!(matches!(
            rho_witness_e1(&two.e1, Shape::SmoothDivisor),
            Err(FormalityError::ShapeHypothesisViolation(_))
        ));
        // The Segre cubic is a threefold: not a surface.
        let seg = build_isolated_pages(&segre()).unwrap();
        assert!(matches!(
            rho_witness_e1(&seg.e1, Shape::Surface),
            Err(FormalityError::ShapeHypothesisViolation(_))
        ));
    }

    #[test]
    fn verdict_is_invariant_under_section_rescaling() {
        let two = build_contraction_pages(&two_lines_cp2()).unwrap();
        let cone = match &two.e1 {
            E1Page::Cone(c) => c,
            _ => unreachable!(),
        };
        let plain = rho_witness(cone, Shape::Contraction).unwrap();
        for scales in [vec![qi(2)], vec![qi(-1), qi(3)], vec![qr(1, 2), qi(5), qr(-7, 3)]] {
            let scaled = rho_witness_scaled(cone, Shape::Contraction, &scales).unwrap();
            assert_eq!(scaled.witness.valid, plain.witness.valid);
            // The witness matrices genuinely changed.
            assert_ne!(scaled.witness.blocks, plain.witness.blocks);
        }
    }

    #[test]
    fn semi_purity_two_lines_fails_segre_holds() {
        let pages = build_contraction_pages(&two_lines_cp2()).unwrap();
        let rep = semi_purity_check(&pages.e2.cdga, 2);
        assert!(!rep.holds);
        assert_eq!(rep.failures, vec![(3, 2, 1)]);
        let seg = build_isolated_pages(&segre()).unwrap();
        assert!(semi_purity_check(&seg.e2.cdga, 3).holds);
    }

    #[test]
    fn heisenberg_triple_product_does_not_vanish() {
        let h = heisenberg_control();
        let page = FinitePage(&h);
        let ring = ring_page(&page, "H", (1, 0));
        let idx = |n: &str| h.basis.iter().position(|b| b.name == n).unwrap();
        let a = ring.class_of(&page, &unit_vec(idx("a")));
        let b = ring.class_of(&page, &unit_vec(idx("b")));
        let res = triple_massey(&page, &ring, &a, &a, &b).unwrap();
        assert!(!res.contains_zero, "⟨a,a,b⟩ must not vanish in the Heisenberg control");
        assert!(res.indeterminacy.is_empty());
        // Degenerate input: x = 0 gives a coset containing zero.
        let zero = SparseVec::new();
        let res0 = triple_massey(&page, &ring, &zero, &a, &b).unwrap();
        assert!(res0.contains_zero);
    }

    #[test]
    fn formal_pages_have_vanishing_triple_products() {
        // ∞-formal page (pure): every admissible triple contains zero.
        let cone = build_isolated_pages(&cone_over_curve(2, 1)).unwrap();
        match &cone.e1 {
            E1Page::Pure(c) => {
                let fp = FinitePage(c);
                let ring = ring_page(&fp, "E2", (2, -1));
                assert_eq!(all_triples_vanish(&fp, &ring).unwrap(), None);
            }
            E1Page::Cone(c) => {
                let ring = ring_page(c, "E2", (2, -1));
                assert_eq!(all_triples_vanish(c, &ring).unwrap(), None);
            }
        }
        // The E2 output of a VALID witness has zero differential, so all
        // its admissible triples vanish as well.
        let e2 = &cone.e2.cdga;
        let fp = FinitePage(e2);
        let ring = ring_page(&fp, "E3", (1, 0));
        assert_eq!(all_triples_vanish(&fp, &ring).unwrap(), None);
    }

    #[test]
    fn product_not_zero_is_reported() {
        // In the Heisenberg cohomology [a]·[bx] = [abx] ≠ 0, so the
        // precondition check must reject the triple ⟨a, bx, a⟩.
        let h = heisenberg_control();
        let page = FinitePage(&h);
        let ring = ring_page(&page, "H", (1, 0));
        let a = ring.class_of(&page, &unit_vec(h.basis.iter().position(|b| b.name == "a").unwrap()));
        let mut bx = None;
        for i in 0..ring.cdga.dim() {
            if i != ring.cdga.unit && !ring.cdga.product(&a, &unit_vec(i)).is_empty() {
                bx = Some(unit_vec(i));
                break;
            }
        }
        let bx = bx.expect("a class pairing nontrivially with [a] exists");
        assert!(matches!(
            triple_massey(&page, &ring, &a, &bx, &a),
            Err(FormalityError::ProductNotZero(_))
        ));
    }
}
