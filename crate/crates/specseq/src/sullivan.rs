//! Weight-graded minimal Sullivan models of simply connected
//! finite-dimensional algebras with zero differential.
//!
//! The construction is the standard inductive one: for each degree `k`
//! from 2 up to the bound, first adjoin closed generators surjecting
//! onto the cokernel of `H^k(model) → H^k(target)` ("surjectors"), then
//! adjoin generators of degree `k` whose differentials kill the kernel
//! of `H^{k+1}(model) → H^{k+1}(target)` ("killers").  All linear
//! algebra is done per weight, so every generator is weight-homogeneous
//! by construction: a surjector inherits the weight of the class it
//! hits, a killer inherits the weight of the class it kills.
//!
//! The model is a free graded-commutative algebra; monomials are sorted
//! exponent vectors over the generator list, with odd generators
//! squaring to zero and Koszul signs tracked on reordering.

use std::collections::BTreeMap;

use crate::cdga::Cdga;
use crate::formality::{r_quasi_iso_check, QuasiIsoVerdict};
use crate::linalg::{rank_kernel_image, Echelon, Mat, SparseVec, Subquotient};
use crate::scalar::{q1, qi, Q};
use num_traits::Zero;

/// A monomial in the free algebra: sorted `(generator index, exponent)`
/// pairs.  Odd generators carry exponent 1 only.
pub type Mono = Vec<(usize, u32)>;

/// A polynomial in the model, as coefficient–monomial pairs.
pub type Poly = Vec<(Q, Mono)>;

/// One generator of a Sullivan model.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
    /// `d(generator)`, a polynomial in earlier generators (empty for
    /// closed generators).
    pub d: Poly,
    /// Image in the target algebra; zero for killer generators.
    pub phi: SparseVec,
}

/// A minimal Sullivan model correct through the stated degree bound.
#[derive(Debug, Clone)]
pub struct SullivanModel {
    pub gens: Vec<Generator>,
    /// Degree through which the model is minimal and correct.
    pub bound: i64,
    pub target: Cdga,
    /// Induced maps `H^k(model) → H^k(target)` for `k ≤ bound + 1`
    /// (rows = target cohomology, cols = model cohomology classes).
    pub induced: BTreeMap<i64, Mat>,
    /// Certificate that the model map is a `bound`-quasi-isomorphism.
    pub quasi_iso: QuasiIsoVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SullivanError {
    /// `H⁰ ≠ Q·1` or `H¹ ≠ 0`.
    NotSimplyConnected,
    /// A required generator would have to hit a class that is not
    /// weight-homogeneous; impossible for bigraded targets, so this
    /// signals corrupt input.
    WeightAmbiguity(String),
    Structure(String),
}

impl std::fmt::Display for SullivanError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SullivanError::NotSimplyConnected => {
                write!(f, "target is not simply connected (H⁰ ≠ Q or H¹ ≠ 0)")
            }
            SullivanError::WeightAmbiguity(s) => write!(f, "weight ambiguity: {s}"),
            SullivanError::Structure(s) => write!(f, "structure error: {s}"),
        }
    }
}

impl std::error::Error for SullivanError {}

pub fn mono_degree(gens: &[Generator], m: &Mono) -> i64 {
    m.iter().map(|&(g, e)| gens[g].degree * e as i64).sum()
}

pub fn mono_weight(gens: &[Generator], m: &Mono) -> i64 {
    m.iter().map(|&(g, e)| gens[g].weight * e as i64).sum()
}

pub fn mono_length(m: &Mono) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

/// Multiply two normal-form monomials.  Returns `None` when an odd
/// generator squares to zero, otherwise the Koszul sign and the sorted
/// product.
fn mono_mul(gens: &[Generator], a: &Mono, b: &Mono) -> Option<(Q, Mono)> {
    let mut out = a.clone();
    let mut sign = q1();
    for &(g, e) in b {
        let odd = gens[g].degree % 2 != 0;
        if odd {
            if e > 1 || out.iter().any(|&(h, _)| h == g) {
                return None;
            }
            // Moving the odd factor left past every odd factor of
            // larger index flips the sign once per crossing.
            let crossings = out
                .iter()
                .filter(|&&(h, _)| h > g && gens[h].degree % 2 != 0)
                .count();
            if crossings % 2 == 1 {
                sign = -sign;
            }
        }
        match out.binary_search_by_key(&g, |&(h, _)| h) {
            Ok(pos) => out[pos].1 += e,
            Err(pos) => out.insert(pos, (g, e)),
        }
    }
    Some((sign, out))
}

/// Collect like monomials and drop zero coefficients.
fn poly_normalize(terms: Vec<(Q, Mono)>) -> Poly {
    let mut acc: BTreeMap<Mono, Q> = BTreeMap::new();
    for (c, m) in terms {
        let slot = acc.entry(m).or_insert_with(Q::zero);
        *slot += c;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (c, m))
        .collect()
}

/// Leibniz differential of a monomial.
fn mono_d(gens: &[Generator], m: &Mono) -> Poly {
    let mut out: Vec<(Q, Mono)> = vec![];
    let mut prefix_degree = 0i64;
    for i in 0..m.len() {
        let (g, e) = m[i];
        if !gens[g].d.is_empty() {
            // m = A · g^e · B; the term is ±e · A g^{e-1} (dg) B.
            let mut head: Mono = m[..i].to_vec();
            if e > 1 {
                head.push((g, e - 1));
            }
            let tail: Mono = m[i + 1..].to_vec();
            let base_sign = if prefix_degree % 2 == 0 { q1() } else { -q1() };
            for (c, u) in &gens[g].d {
                if let Some((s1, hu)) = mono_mul(gens, &head, u) {
                    if let Some((s2, hut)) = mono_mul(gens, &hu, &tail) {
                        out.push((&base_sign * &s1 * s2 * c * qi(e as i64), hut));
                    }
                }
            }
        }
        prefix_degree += gens[g].degree * e as i64;
    }
    poly_normalize(out)
}

fn poly_d(gens: &[Generator], p: &Poly) -> Poly {
    let mut out = vec![];
    for (c, m) in p {
        for (c2, m2) in mono_d(gens, m) {
            out.push((c * c2, m2));
        }
    }
    poly_normalize(out)
}

/// All normal-form monomials of the given total degree, in a
/// deterministic (lexicographic-by-generator) order.
fn monomials_of_degree(gens: &[Generator], degree: i64) -> Vec<Mono> {
    let mut out = vec![];
    let mut cur: Mono = vec![];
    fn rec(gens: &[Generator], start: usize, remaining: i64, cur: &mut Mono, out: &mut Vec<Mono>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for g in start..gens.len() {
            let dg = gens[g].degree;
            if dg > remaining {
                continue;
            }
            let max_e = if gens[g].degree % 2 != 0 { 1 } else { remaining / dg };
            for e in 1..=max_e as u32 {
                if dg * e as i64 > remaining {
                    break;
                }
                cur.push((g, e));
                rec(gens, g + 1, remaining - dg * e as i64, cur, out);
                cur.pop();
            }
        }
    }
    rec(gens, 0, degree, &mut cur, &mut out);
    out
}

/// Image of a monomial under the model map, computed multiplicatively
/// in the target.
fn phi_mono(gens: &[Generator], target: &Cdga, m: &Mono) -> SparseVec {
    let mut v = target.unit_elt();
    for &(g, e) in m {
        for _ in 0..e {
            v = target.product(&v, &gens[g].phi);
            if v.is_empty() {
                return v;
            }
        }
    }
    v
}

/// One weight-homogeneous piece of `H^k(model)`.
struct HCell {
    weight: i64,
    /// Indices into the degree-`k` monomial list spanning this weight.
    members: Vec<usize>,
    /// Cohomology classes in the local coordinates of `members`.
    subq: Subquotient,
}

/// `H^k` of the current model, split by weight.
struct ModelH {
    monos: Vec<Mono>,
    cells: Vec<HCell>,
}

impl ModelH {
    /// Total class count across weights.
    fn class_count(&self) -> usize {
        self.cells.iter().map(|c| c.subq.dim()).sum()
    }
}

/// Differential matrix between two monomial bases (columns indexed by
/// `from`, rows by `to`).
fn d_matrix(gens: &[Generator], from: &[Mono], to_index: &BTreeMap<Mono, usize>, to_len: usize) -> Mat {
    let mut cols = vec![];
    for m in from {
        let mut col: SparseVec = BTreeMap::new();
        for (c, u) in mono_d(gens, m) {
            let r = *to_index
                .get(&u)
                .expect("differential left the expected monomial basis");
            col.insert(r, c);
        }
        cols.push(col);
    }
    Mat::from_cols(to_len, &cols)
}

fn model_h(gens: &[Generator], k: i64) -> ModelH {
    if k < 0 {
        return ModelH { monos: vec![], cells: vec![] };
    }
    let monos = monomials_of_degree(gens, k);
    let below = monomials_of_degree(gens, k - 1);
    let above = monomials_of_degree(gens, k + 1);
    let index: BTreeMap<Mono, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let above_index: BTreeMap<Mono, usize> =
        above.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dk = d_matrix(gens, &monos, &above_index, above.len());

    let mut weights: Vec<i64> = monos.iter().map(|m| mono_weight(gens, m)).collect();
    weights.sort_unstable();
    weights.dedup();

    let mut cells = vec![];
    for w in weights {
        let members: Vec<usize> = (0..monos.len())
            .filter(|&i| mono_weight(gens, &monos[i]) == w)
            .collect();
        let local: BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        // d preserves weight, so the kernel of the restricted columns
        // equals the kernel of the full columns.
        let restricted = dk.submatrix(&(0..above.len()).collect::<Vec<_>>(), &members);
        let kernel = rank_kernel_image(&restricted).kernel;
        let mut image = vec![];
        for b in &below {
            if mono_weight(gens, b) != w {
                continue;
            }
            let mut v: SparseVec = BTreeMap::new();
            for (c, u) in mono_d(gens, b) {
                let g = index[&u];
                v.insert(local[&g], c);
            }
            if !v.is_empty() {
                image.push(v);
            }
        }
        let subq = Subquotient::new(members.len(), &kernel, &image);
        if subq.dim() > 0 {
            cells.push(HCell { weight: w, members, subq });
        }
    }
    ModelH { monos, cells }
}

/// Expand a local class representative to a polynomial.
fn cell_rep_poly(_gens: &[Generator], mh: &ModelH, cell: &HCell, rep: &SparseVec) -> Poly {
    let mut out = vec![];
    for (l, c) in rep {
        out.push((c.clone(), mh.monos[cell.members[*l]].clone()));
    }
    poly_normalize(out)
}

/// Image of a class representative under the model map, checked to be
/// concentrated in the expected (degree, weight) cell of the target.
fn phi_class(
    gens: &[Generator],
    target: &Cdga,
    k: i64,
    w: i64,
    rep: &Poly,
) -> Result<SparseVec, SullivanError> {
    let mut v: SparseVec = BTreeMap::new();
    for (c, m) in rep {
        for (i, x) in phi_mono(gens, target, m) {
            let slot = v.entry(i).or_insert_with(Q::zero);
            *slot += c * x;
        }
    }
    v.retain(|_, c| !c.is_zero());
    for i in v.keys() {
        let b = &target.basis[*i];
        if b.degree() != k {
            return Err(SullivanError::Structure(format!(
                "model map not degree-preserving at target basis element {}",
                b.name
            )));
        }
        if b.q != w {
            return Err(SullivanError::WeightAmbiguity(format!(
                "class of degree {k} and weight {w} maps onto {} of weight {}",
                b.name, b.q
            )));
        }
    }
    Ok(v)
}

/// Verify `d² = 0` on every generator whose differential lives in
/// degrees `≤ bound + 1`.
fn check_d_squared(gens: &[Generator]) -> Result<(), SullivanError> {
    for g in gens {
        if !poly_d(gens, &g.d).is_empty() {
            return Err(SullivanError::Structure(format!(
                "d² ≠ 0 on generator {}",
                g.name
            )));
        }
    }
    Ok(())
}

/// Build the weight-graded minimal Sullivan model of a simply connected
/// bigraded algebra with zero differential, correct through degree `n`.
///
/// The basis weight of a target element is its second bidegree `q`
/// (total degree `p + q`), matching the weight convention of spectral
/// sequence pages.
pub fn minimal_model(target: &Cdga, n: i64) -> Result<SullivanModel, SullivanError> {
    if n < 2 {
        return Err(SullivanError::Structure("degree bound must be at least 2".into()));
    }
    if !target.diff_is_zero() {
        return Err(SullivanError::Structure(
            "target must carry the zero differential".into(),
        ));
    }
    let deg0 = target.degree_indices(0);
    if deg0.len() != 1 || deg0[0] != target.unit {
        return Err(SullivanError::NotSimplyConnected);
    }
    if !target.degree_indices(1).is_empty() {
        return Err(SullivanError::NotSimplyConnected);
    }

    let mut gens: Vec<Generator> = vec![];
    for k in 2..=n {
        // Surjectors: one closed generator per cokernel basis vector of
        // H^k(model) → H^k(target), computed weight by weight.
        let mh = model_h(&gens, k);
        let target_k = target.degree_indices(k);
        let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for &i in &target_k {
            by_weight.entry(target.basis[i].q).or_default().push(i);
        }
        let mut batch = vec![];
        for (&w, cell_idx) in &by_weight {
            let local: BTreeMap<usize, usize> =
                cell_idx.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let mut ech = Echelon::new(cell_idx.len());
            for cell in mh.cells.iter().filter(|c| c.weight == w) {
                for rep in &cell.subq.reps {
                    let p = cell_rep_poly(&gens, &mh, cell, rep);
                    let img = phi_class(&gens, target, k, w, &p)?;
                    let loc: SparseVec = img.iter().map(|(i, c)| (local[i], c.clone())).collect();
                    ech.insert(&loc);
                }
            }
            for (l, &gidx) in cell_idx.iter().enumerate() {
                let e: SparseVec = [(l, q1())].into_iter().collect();
                if ech.insert(&e).is_some() {
                    batch.push(Generator {
                        name: format!("x{}", gens.len() + batch.len()),
                        degree: k,
                        weight: w,
                        d: vec![],
                        phi: [(gidx, q1())].into_iter().collect(),
                    });
                }
            }
        }
        gens.extend(batch);
        check_d_squared(&gens)?;

        // Killers: one generator per kernel basis vector of
        // H^{k+1}(model) → H^{k+1}(target), with the kernel cocycle as
        // differential.
        let mh1 = model_h(&gens, k + 1);
        let target_k1 = target.degree_indices(k + 1);
        let mut batch = vec![];
        for cell in &mh1.cells {
            let cell_idx: Vec<usize> = target_k1
                .iter()
                .cloned()
                .filter(|&i| target.basis[i].q == cell.weight)
                .collect();
            let local: BTreeMap<usize, usize> =
                cell_idx.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let mut cols = vec![];
            let mut reps = vec![];
            for rep in &cell.subq.reps {
                let p = cell_rep_poly(&gens, &mh1, cell, rep);
                let img = phi_class(&gens, target, k + 1, cell.weight, &p)?;
                cols.push(img.iter().map(|(i, c)| (local[i], c.clone())).collect());
                reps.push(p);
            }
            let a = Mat::from_cols(cell_idx.len(), &cols);
            for kv in rank_kernel_image(&a).kernel {
                let mut dpoly = vec![];
                for (c, coeff) in &kv {
                    for (x, m) in &reps[*c] {
                        dpoly.push((coeff * x, m.clone()));
                    }
                }
                let dpoly = poly_normalize(dpoly);
                // Minimality: a kernel cocycle has no linear part, since
                // a linear cocycle spans a fresh cohomology class that
                // the surjector step just matched with the target.
                if dpoly.iter().any(|(_, m)| mono_length(m) < 2) {
                    return Err(SullivanError::Structure(
                        "killer differential acquired a linear part".into(),
                    ));
                }
                batch.push(Generator {
                    name: format!("x{}", gens.len() + batch.len()),
                    degree: k,
                    weight: cell.weight,
                    d: dpoly,
                    phi: BTreeMap::new(),
                });
            }
        }
        gens.extend(batch);
        check_d_squared(&gens)?;
    }

    // Induced cohomology maps through degree n + 1 and the
    // quasi-isomorphism certificate.
    let mut induced = BTreeMap::new();
    for k in 0..=n + 1 {
        let mh = model_h(&gens, k);
        let target_k = target.degree_indices(k);
        let local: BTreeMap<usize, usize> =
            target_k.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let mut cols = vec![];
        for cell in &mh.cells {
            for rep in &cell.subq.reps {
                let p = cell_rep_poly(&gens, &mh, cell, rep);
                let img = phi_class(&gens, target, k, cell.weight, &p)?;
                cols.push(img.iter().map(|(i, c)| (local[i], c.clone())).collect());
            }
        }
        induced.insert(k, Mat::from_cols(target_k.len(), &cols));
        let _ = mh.class_count();
    }
    let quasi_iso = r_quasi_iso_check(&induced, Some(n));
    if !quasi_iso.ok {
        return Err(SullivanError::Structure(format!(
            "constructed model is not an {n}-quasi-isomorphism (fails at degree {:?})",
            quasi_iso.first_failing_degree
        )));
    }

    Ok(SullivanModel {
        gens,
        bound: n,
        target: target.clone(),
        induced,
        quasi_iso,
    })
}

impl SullivanModel {
    /// `dim Gr^W_m π_k` for `k ≤ bound`: the number of generators of
    /// degree `k` and weight `m`.
    pub fn homotopy_table(&self) -> BTreeMap<(i64, i64), usize> {
        let mut t = BTreeMap::new();
        for g in &self.gens {
            *t.entry((g.degree, g.weight)).or_insert(0) += 1;
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled::{cp2_ring, nodal_curve, segre, two_lines_cp2};
    use crate::builders::{build_contraction_pages, build_isolated_pages};
    use crate::cdga::BasisElt;
    use crate::scalar::qi;

    fn table(model: &SullivanModel) -> BTreeMap<(i64, i64), usize> {
        model.homotopy_table()
    }

    #[test]
    fn cp2_minimal_model_matches_the_classical_one() {
        let m = minimal_model(&cp2_ring(), 7).unwrap();
        // Λ(x₂, y₅) with dy = x³: π₂ in weight 2, π₅ in weight 6.
        let expected: BTreeMap<(i64, i64), usize> = [((2, 2), 1), ((5, 6), 1)].into();
        assert_eq!(table(&m), expected);
        let y = m.gens.iter().find(|g| g.degree == 5).unwrap();
        assert_eq!(y.d.len(), 1);
        assert_eq!(y.d[0].1, vec![(0, 3)]);
        assert!(m.quasi_iso.ok);
    }

    #[test]
    fn truncated_polynomial_ring_has_only_pi2_through_seven() {
        // Q[h]/h⁵ behaves like a free algebra on one degree-2 generator
        // through degree 7: the first relation killer appears in degree 9.
        let mut basis = vec![BasisElt { name: "1".into(), p: 0, q: 0 }];
        for i in 1..=4 {
            basis.push(BasisElt { name: format!("h{i}"), p: 0, q: 2 * i });
        }
        let mut c = Cdga::new(basis, 0, (1, 0));
        for i in 0..=4i64 {
            for j in 0..=4i64 {
                if i + j <= 4 && i > 0 && j > 0 {
                    c.set_product(
                        i as usize,
                        j as usize,
                        [((i + j) as usize, q1())].into_iter().collect(),
                    );
                }
            }
        }
        c.validate().unwrap();
        let m = minimal_model(&c, 7).unwrap();
        let expected: BTreeMap<(i64, i64), usize> = [((2, 2), 1)].into();
        assert_eq!(table(&m), expected);
    }

    #[test]
    fn two_lines_model_is_free_on_a3_b4_with_two_relation_killers() {
        let pages = build_contraction_pages(&two_lines_cp2()).unwrap();
        let m = minimal_model(&pages.e2.cdga, 7).unwrap();
        // Λ(a₃, b₄) with a·b and b² killed: one generator each in
        // degrees 3, 4, 6, 7.  The killers inherit the weights of the
        // killed classes (6 = w(ab) and 8 = w(b²)); the source table
        // instead lists weights 5 and 7 for the last two cells, which
        // contradicts weight inheritance and is asserted verbatim only
        // in the acceptance gate.
        let expected: BTreeMap<(i64, i64), usize> =
            [((3, 2), 1), ((4, 4), 1), ((6, 6), 1), ((7, 8), 1)].into();
        assert_eq!(table(&m), expected);
        assert!(m.quasi_iso.ok);
    }

    fn nodal_expected(d: i64, dp: i64, n: i64) -> BTreeMap<(i64, i64), usize> {
        let g = (d - 1) * (d - 2) / 2 - n;
        let dd = d * dp;
        let mut t = BTreeMap::new();
        let mut put = |k: i64, w: i64, v: i64| {
            if v > 0 {
                t.insert((k, w), v as usize);
            }
        };
        put(2, 0, n);
        put(2, 1, 2 * g);
        put(2, 2, dd);
        put(3, 0, n * (n + 1) / 2);
        put(3, 1, 2 * g * n);
        put(3, 2, dd * n + g * (2 * g + 1));
        put(3, 3, dd * 2 * g);
        put(3, 4, dd * (dd + 1) / 2 - 1);
        t
    }

    #[test]
    fn nodal_homotopy_matches_the_closed_forms() {
        for (d, dp, n) in [(3i64, 4i64, 1usize), (2, 3, 0), (4, 5, 2)] {
            let pages = build_isolated_pages(&nodal_curve(d, dp, n)).unwrap();
            let m = minimal_model(&pages.e2.cdga, 3).unwrap();
            assert_eq!(
                table(&m),
                nodal_expected(d, dp, n as i64),
                "closed forms fail at (d, d', n) = ({d}, {dp}, {n})"
            );
        }
    }

    #[test]
    fn nodal_341_has_the_pinned_dimensions() {
        let pages = build_isolated_pages(&nodal_curve(3, 4, 1)).unwrap();
        let m = minimal_model(&pages.e2.cdga, 3).unwrap();
        let t = table(&m);
        assert_eq!(t.get(&(2, 0)), Some(&1));
        assert_eq!(t.get(&(2, 2)), Some(&12));
        assert_eq!(t.get(&(3, 0)), Some(&1));
        assert_eq!(t.get(&(3, 2)), Some(&12));
        assert_eq!(t.get(&(3, 4)), Some(&77));
    }

    #[test]
    fn segre_low_degrees_match_and_the_full_table_is_reported() {
        let pages = build_isolated_pages(&segre()).unwrap();
        let m = minimal_model(&pages.e2.cdga, 7).unwrap();
        let t = table(&m);
        // Low degrees are forced by dimensions and weight additivity
        // alone, independent of any choice of ring on the resolution.
        assert_eq!(t.get(&(2, 2)), Some(&1));
        assert_eq!(t.get(&(3, 2)), Some(&5));
        // The published table through degree 7; the input ring is a
        // documented candidate (the source does not display products),
        // so higher cells are compared and reported, not asserted.
        let published: BTreeMap<(i64, i64), usize> = [
            ((2, 2), 1),
            ((3, 2), 5),
            ((4, 4), 5),
            ((5, 3), 10),
            ((5, 5), 5),
            ((6, 4), 25),
            ((6, 5), 25),
            ((7, 4), 40),
            ((7, 5), 50),
            ((7, 7), 26),
        ]
        .into();
        let mismatches: Vec<_> = published
            .keys()
            .chain(t.keys())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|k| t.get(k) != published.get(k))
            .map(|k| (*k, t.get(k).copied(), published.get(k).copied()))
            .collect();
        if !mismatches.is_empty() {
            eprintln!("segre homotopy table deviates from the published one (got/published):");
            for (cell, got, pubv) in &mismatches {
                eprintln!("  {cell:?}: {got:?} vs {pubv:?}");
            }
        }
    }

    #[test]
    fn counts_are_independent_of_target_basis_order() {
        let pages = build_contraction_pages(&two_lines_cp2()).unwrap();
        let c = &pages.e2.cdga;
        // Rebuild the target with the non-unit basis reversed.
        let n = c.dim();
        let perm: Vec<usize> =
            std::iter::once(c.unit).chain((0..n).rev().filter(|&i| i != c.unit)).collect();
        let inv: BTreeMap<usize, usize> =
            perm.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let basis: Vec<BasisElt> = perm.iter().map(|&i| c.basis[i].clone()).collect();
        let mut shuffled = Cdga::new(basis, inv[&c.unit], c.diff_bidegree);
        for i in 0..n {
            for j in 0..n {
                if i == c.unit || j == c.unit {
                    continue;
                }
                let v = c.basis_product(i, j);
                if !v.is_empty() {
                    shuffled.set_product(
                        inv[&i],
                        inv[&j],
                        v.iter().map(|(k, x)| (inv[k], x.clone())).collect(),
                    );
                }
            }
        }
        shuffled.validate().unwrap();
        let a = minimal_model(c, 7).unwrap();
        let b = minimal_model(&shuffled, 7).unwrap();
        assert_eq!(table(&a), table(&b));
    }

    #[test]
    fn non_simply_connected_targets_are_rejected() {
        let basis = vec![
            BasisElt { name: "1".into(), p: 0, q: 0 },
            BasisElt { name: "a".into(), p: 0, q: 1 },
        ];
        let c = Cdga::new(basis, 0, (1, 0));
        assert_eq!(
            minimal_model(&c, 3).map(|_| ()).unwrap_err(),
            SullivanError::NotSimplyConnected
        );
    }

    #[test]
    fn non_weight_additive_products_raise_weight_ambiguity() {
        // A corrupt "CP²" whose h·h lands in the wrong weight.
        let basis = vec![
            BasisElt { name: "1".into(), p: 0, q: 0 },
            BasisElt { name: "h".into(), p: 0, q: 2 },
            BasisElt { name: "t".into(), p: 3, q: 1 },
        ];
        let mut c = Cdga::new(basis, 0, (1, 0));
        c.set_product(1, 1, [(2usize, q1())].into_iter().collect());
        let err = minimal_model(&c, 4).unwrap_err();
        assert!(matches!(err, SullivanError::WeightAmbiguity(_)));
    }

    #[test]
    fn model_differentials_are_weight_homogeneous_and_decomposable() {
        let pages = build_isolated_pages(&nodal_curve(3, 4, 1)).unwrap();
        let m = minimal_model(&pages.e2.cdga, 3).unwrap();
        for g in &m.gens {
            for (_, mono) in &g.d {
                assert_eq!(mono_weight(&m.gens, mono), g.weight);
                assert_eq!(mono_degree(&m.gens, mono), g.degree + 1);
                assert!(mono_length(mono) >= 2);
            }
        }
    }

    #[test]
    fn koszul_signs_square_to_zero_on_a_free_odd_pair() {
        // Internal consistency of the monomial algebra: (x₃x₅)² = 0 and
        // x₃x₅ = −x₅x₃ under the normal-form product.
        let gens = vec![
            Generator { name: "a".into(), degree: 3, weight: 0, d: vec![], phi: BTreeMap::new() },
            Generator { name: "b".into(), degree: 5, weight: 0, d: vec![], phi: BTreeMap::new() },
        ];
        let ab = vec![(0usize, 1u32), (1, 1)];
        assert!(mono_mul(&gens, &ab, &ab).is_none());
        let (s, m) = mono_mul(&gens, &[(1, 1)].to_vec(), &[(0, 1)].to_vec()).unwrap();
        assert_eq!(m, ab);
        assert_eq!(s, -qi(1));
    }
}
