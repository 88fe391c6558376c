//! Polynomial differential forms on standard simplices.
//!
//! `Ω_α` is the cdga of polynomial forms on the `α`-simplex: the free
//! graded-commutative algebra on `t_0, …, t_α, dt_0, …, dt_α` modulo
//! `Σ t_i = 1`, `Σ dt_i = 0`. We work in the normal form that eliminates
//! `t_α` and `dt_α`, so forms are polynomials in `t_0..t_{α-1}` with wedge
//! factors among `dt_0..dt_{α-1}`. All coefficients are exact rationals.
//!
//! The module provides the strict simplicial structure (face maps), exact
//! integration over faces, Whitney elementary forms, the vertex-dilation
//! contractions `h_j`, and the simplicial contraction operators
//! (`whitney_expand` / `integrate_faces` / `homotopy`) that retract `Ω_α`
//! onto the span of elementary forms. These retractions are what make
//! cohomology of Thom–Whitney totalizations computable exactly without any
//! polynomial degree cap.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::{factorial, q1, sign, Q};

/// A monomial `t^e · dt_S` on the `α`-simplex in reduced coordinates.
/// `exps` has length `α`; `dts` is a bitmask over `0..α` listing the wedge
/// factors in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormMono {
    pub exps: Vec<u32>,
    pub dts: u64,
}

impl FormMono {
    pub fn form_degree(&self) -> u32 {
        self.dts.count_ones()
    }
}

/// A polynomial differential form on `Δ^α` (possibly of mixed form degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexForm {
    pub alpha: usize,
    pub terms: BTreeMap<FormMono, Q>,
}

/// Sign of merging two sorted, disjoint wedge masks `a` and `b` into sorted
/// order with `a`'s factors written first. Returns `None` if they intersect.
fn merge_sign(a: u64, b: u64) -> Option<Q> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0i64;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros() as u64;
        // Number of factors of `a` strictly above position i must hop over b_i.
        swaps += (a >> (i + 1)).count_ones() as i64;
        bb &= bb - 1;
    }
    Some(sign(swaps))
}

impl SimplexForm {
    pub fn zero(alpha: usize) -> Self {
        SimplexForm { alpha, terms: BTreeMap::new() }
    }

    pub fn one(alpha: usize) -> Self {
        let mut f = Self::zero(alpha);
        f.terms.insert(FormMono { exps: vec![0; alpha], dts: 0 }, q1());
        f
    }

    /// The coordinate `t_i` for `i < α`, or the eliminated `1 - Σ t_k` for
    /// `i = α`.
    pub fn t(alpha: usize, i: usize) -> Self {
        assert!(i <= alpha);
        let mut f = Self::zero(alpha);
        if i < alpha {
            f.terms.insert(
                FormMono {
                    exps: (0..alpha).map(|k| if k == i { 1 } else { 0 }).collect(),
                    dts: 0,
                },
                q1(),
            );
        } else {
            f = Self::one(alpha);
            for k in 0..alpha {
                f = f.add(&Self::t(alpha, k).scale(&-q1()));
            }
        }
        f
    }

    /// The one-form `dt_i` for `i < α`, or `-Σ dt_k` for `i = α`.
    pub fn dt(alpha: usize, i: usize) -> Self {
        assert!(i <= alpha);
        let mut f = Self::zero(alpha);
        if i < alpha {
            f.terms.insert(FormMono { exps: vec![0; alpha], dts: 1 << i }, q1());
        } else {
            for k in 0..alpha {
                f = f.add(&Self::dt(alpha, k).scale(&-q1()));
            }
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_term(&mut self, m: FormMono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        // Re-fetch to drop exact zeros.
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.alpha, other.alpha);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.alpha);
        }
        SimplexForm {
            alpha: self.alpha,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), c.clone() * x)).collect(),
        }
    }

    /// Graded product with Koszul signs on the wedge factors.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.alpha, other.alpha);
        let mut out = Self::zero(self.alpha);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(s) = merge_sign(m1.dts, m2.dts) {
                    let exps: Vec<u32> =
                        m1.exps.iter().zip(&m2.exps).map(|(a, b)| a + b).collect();
                    out.insert_term(
                        FormMono { exps, dts: m1.dts | m2.dts },
                        s * c1.clone() * c2.clone(),
                    );
                }
            }
        }
        out
    }

    /// Exterior differential.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.alpha);
        for (m, c) in &self.terms {
            for i in 0..self.alpha {
                if m.exps[i] == 0 || m.dts & (1 << i) != 0 {
                    continue;
                }
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                // d t_i wedged on the left of dt_S: sort dt_i into S.
                let below = (m.dts & ((1u64 << i) - 1)).count_ones() as i64;
                out.insert_term(
                    FormMono { exps, dts: m.dts | (1 << i) },
                    sign(below) * Q::from_integer((m.exps[i] as i64).into()) * c.clone(),
                );
            }
        }
        out
    }

    /// Total polynomial degree bound of the form (for diagnostics).
    pub fn poly_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.exps.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// The component of pure form degree `k`.
    pub fn form_component(&self, k: u32) -> Self {
        SimplexForm {
            alpha: self.alpha,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.form_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Weight of the form under the brutal filtration `σ[r]`: coordinates
    /// `t_i` have weight 0 and each `dt_i` weight `-r`. Returns the
    /// (min, max) term weights, or `None` for the zero form.
    pub fn sigma_weight_range(&self, r: i64) -> Option<(i64, i64)> {
        let ws: Vec<i64> =
            self.terms.keys().map(|m| -(r * m.form_degree() as i64)).collect();
        Some((*ws.iter().min()?, *ws.iter().max()?))
    }

    /// Substitute each variable: `t_k ↦ ts[k]`, `dt_k ↦ dts[k]`, where the
    /// images live on a target simplex. `ts[k]` must be 0-forms and `dts[k]`
    /// one-forms.
    pub fn substitute(&self, target_alpha: usize, ts: &[SimplexForm], dts: &[SimplexForm]) -> Self {
        assert_eq!(ts.len(), self.alpha);
        assert_eq!(dts.len(), self.alpha);
        let mut out = Self::zero(target_alpha);
        for (m, c) in &self.terms {
            let mut acc = Self::one(target_alpha).scale(c);
            for (k, e) in m.exps.iter().enumerate() {
                for _ in 0..*e {
                    acc = acc.mul(&ts[k]);
                    if acc.is_zero() {
                        break;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            if acc.is_zero() {
                continue;
            }
            for k in 0..self.alpha {
                if m.dts & (1 << k) != 0 {
                    acc = acc.mul(&dts[k]);
                    if acc.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Face map `δ^i : Ω_α → Ω_{α-1}`, the restriction to the face opposite
    /// vertex `i` (in full coordinates: `t_k ↦ t_k` for `k < i`, `t_i ↦ 0`,
    /// `t_k ↦ t_{k-1}` for `k > i`).
    pub fn face(&self, i: usize) -> Self {
        let alpha = self.alpha;
        assert!(i <= alpha, "face index out of range");
        assert!(alpha >= 1, "no faces of the point");
        let ta = alpha - 1;
        let mut ts = Vec::with_capacity(alpha);
        let mut dts = Vec::with_capacity(alpha);
        for k in 0..alpha {
            // Image of reduced variable t_k under δ^i, expressed in the
            // reduced coordinates of Ω_{α-1}. Full-coordinate images of
            // index >= α-1 must be rewritten via the target's elimination
            // (`t_{α-1} = 1 - Σ`, `dt_{α-1} = -Σ`), which `SimplexForm::t`
            // and `::dt` already do when handed the eliminated index.
            let img = if k < i { k } else if k == i { usize::MAX } else { k - 1 };
            if img == usize::MAX {
                ts.push(SimplexForm::zero(ta));
                dts.push(SimplexForm::zero(ta));
            } else {
                ts.push(SimplexForm::t(ta, img));
                dts.push(SimplexForm::dt(ta, img));
            }
        }
        self.substitute(ta, &ts, &dts)
    }

    /// Evaluate at vertex `j` (all reduced coordinates 0 except `t_j = 1`;
    /// for `j = α` all reduced coordinates 0). Only the 0-form part
    /// survives. Returns the constant.
    pub fn eval_vertex(&self, j: usize) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            if m.dts != 0 {
                continue;
            }
            let ok = if j < self.alpha {
                m.exps.iter().enumerate().all(|(k, e)| *e == 0 || k == j)
            } else {
                m.exps.iter().all(|e| *e == 0)
            };
            if ok {
                acc += c.clone();
            }
        }
        acc
    }

    /// Restrict to the face spanned by the vertex set `face` (increasing),
    /// returning a form on `Δ^{|face|-1}` whose vertex `j` is `face[j]`.
    pub fn restrict_to_face(&self, face: &[usize]) -> Self {
        let alpha = self.alpha;
        debug_assert!(face.windows(2).all(|w| w[0] < w[1]));
        let mut cur = self.clone();
        // Remove the complement vertices in decreasing order so that the
        // remaining indices keep their relative order.
        for v in (0..=alpha).rev() {
            if !face.contains(&v) {
                cur = cur.face(v);
            }
        }
        cur
    }

    /// Exact integral of the top-form part over the whole simplex, oriented
    /// by the vertex order (positive form `dt_1 ∧ … ∧ dt_α` after
    /// eliminating `t_0`, which is `(-1)^α dt_0 ∧ … ∧ dt_{α-1}` in our
    /// reduced coordinates). This is the orientation for which face
    /// integration intertwines `d` with the alternating-sign simplicial
    /// coboundary.
    pub fn integrate_top(&self) -> Q {
        let alpha = self.alpha;
        let full: u64 = if alpha == 0 { 0 } else { (1u64 << alpha) - 1 };
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            if m.dts != full {
                continue;
            }
            // ∫_{Δ^α} t^e dt_0…dt_{α-1} = (Π e_k!) / (Σ e_k + α)!.
            let se: u64 = m.exps.iter().map(|e| *e as u64).sum();
            let mut num = q1();
            for e in &m.exps {
                num *= factorial(*e as u64);
            }
            acc += c.clone() * num / factorial(se + alpha as u64);
        }
        sign(alpha as i64) * acc
    }

    /// Integral over the face with vertex set `face` (increasing): restrict,
    /// then integrate the top part. For a single vertex this is evaluation.
    pub fn integrate_face(&self, face: &[usize]) -> Q {
        if face.len() == 1 {
            return self.eval_vertex(face[0]);
        }
        self.restrict_to_face(face).integrate_top()
    }

    /// Vertex-dilation contraction `h_j`: the chain homotopy of the flow
    /// contracting the simplex onto vertex `j`. Satisfies
    /// `d∘h_j + h_j∘d = id - ε_j` where `ε_j` is evaluation at vertex `j`
    /// (verified in tests).
    pub fn contract_to_vertex(&self, j: usize) -> Self {
        let alpha = self.alpha;
        assert!(j <= alpha);
        let mut out = Self::zero(alpha);
        for (m, c) in &self.terms {
            out = out.add(&contract_term(alpha, j, m, c));
        }
        out
    }
}

/// `h_j` applied to a single monomial. We pull back along
/// `Φ(u, x) = e_j + u (x - e_j)`, take the `du`-coefficient (with the sign
/// of moving `du` to the front of the wedge), and integrate `u` over
/// `[0, 1]` exactly.
fn contract_term(alpha: usize, j: usize, m: &FormMono, c: &Q) -> SimplexForm {
    // The substituted images, in the polynomial ring Q[u] ⊗ Ω_α-coords.
    // Represent an element of that ring as a map (u-power, du-flag-taken care
    // of separately). We expand the wedge product manually: exactly one dt
    // factor contributes its du-part.
    //
    // Under Φ*: for k != j: t_k ↦ u t_k, dt_k ↦ u dt_k + t_k du.
    // For k == j:          t_j ↦ 1 - u (1 - t_j), dt_j ↦ u dt_j + (t_j - 1) du.
    // (When j == α the variable t_j is the eliminated one and does not occur.)
    let dt_list: Vec<usize> = (0..alpha).filter(|i| m.dts & (1 << i) != 0).collect();
    let mut out = SimplexForm::zero(alpha);
    for (pos, istar) in dt_list.iter().enumerate() {
        // Polynomial part: u-graded pieces. Start from the t-monomial.
        // poly: map from (u_power, FormMono with dts of the surviving wedge)
        // to Q. Build the t-part first as (u_power, exps) pieces.
        let mut poly: BTreeMap<(u64, Vec<u32>), Q> = BTreeMap::new();
        poly.insert((0, vec![0; alpha]), c.clone());
        for k in 0..alpha {
            for _ in 0..m.exps[k] {
                poly = mul_poly_var(alpha, &poly, k, j);
            }
        }
        // du-part of dt_{i*}: (t_{i*} or t_j-1) factor without u.
        if *istar == j {
            // multiply by (t_j - 1)
            poly = add_polys(
                mul_poly_by_t(alpha, &poly, j),
                scale_poly(&poly, &-q1()),
            );
        } else {
            poly = mul_poly_by_t(alpha, &poly, *istar);
        }
        // Remaining dt factors each contribute u * dt_k.
        let mut wedge: u64 = 0;
        let mut extra_u = 0u64;
        for k in &dt_list {
            if k != istar {
                wedge |= 1 << k;
                extra_u += 1;
            }
        }
        // Sign: du sits at position `pos` within the wedge (in increasing
        // dt order); move it to the front.
        let s = sign(pos as i64);
        for ((up, exps), coef) in poly {
            let total_u = up + extra_u;
            // ∫_0^1 u^total du = 1/(total+1).
            let integral = q1() / Q::from_integer(((total_u + 1) as i64).into());
            let mono = FormMono { exps, dts: wedge };
            let mut term = SimplexForm::zero(alpha);
            term.insert_term(mono, s.clone() * coef * integral);
            out = out.add(&term);
        }
    }
    out
}

type UPoly = BTreeMap<(u64, Vec<u32>), Q>;

fn add_polys(mut a: UPoly, b: UPoly) -> UPoly {
    for (k, v) in b {
        let e = a.entry(k).or_insert_with(Q::zero);
        *e += v;
    }
    a.retain(|_, v| !v.is_zero());
    a
}

fn scale_poly(a: &UPoly, c: &Q) -> UPoly {
    a.iter().map(|(k, v)| (k.clone(), c.clone() * v)).collect()
}

/// Multiply by the image of `t_k` under the dilation toward vertex `j`.
fn mul_poly_var(alpha: usize, poly: &UPoly, k: usize, j: usize) -> UPoly {
    let _ = alpha;
    let mut out = UPoly::new();
    for ((up, exps), c) in poly {
        if k == j {
            // (1 - u) + u t_j: three pieces 1, -u, u t_j.
            let e0 = (*up, exps.clone());
            *out.entry(e0).or_insert_with(Q::zero) += c.clone();
            let e1 = (up + 1, exps.clone());
            *out.entry(e1).or_insert_with(Q::zero) -= c.clone();
            let mut exps2 = exps.clone();
            exps2[k] += 1;
            let e2 = (up + 1, exps2);
            *out.entry(e2).or_insert_with(Q::zero) += c.clone();
        } else {
            let mut exps2 = exps.clone();
            exps2[k] += 1;
            let e = (up + 1, exps2);
            *out.entry(e).or_insert_with(Q::zero) += c.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Multiply by the plain coordinate `t_k` (no `u`).
fn mul_poly_by_t(alpha: usize, poly: &UPoly, k: usize) -> UPoly {
    let _ = alpha;
    let mut out = UPoly::new();
    for ((up, exps), c) in poly {
        let mut exps2 = exps.clone();
        exps2[k] += 1;
        let e = (*up, exps2);
        *out.entry(e).or_insert_with(Q::zero) += c.clone();
    }
    out
}

/// All nonempty increasing vertex subsets of `{0..α}`.
pub fn faces_of(alpha: usize) -> Vec<Vec<usize>> {
    let n = alpha + 1;
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let f: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        out.push(f);
    }
    out.sort_by_key(|f| (f.len(), f.clone()));
    out
}

/// Whitney elementary form `ω_F` on `Δ^α` for a vertex set `F`, normalized
/// so that `∫_F ω_F = 1`.
pub fn whitney_form(alpha: usize, face: &[usize]) -> SimplexForm {
    let k = face.len() - 1;
    let mut acc = SimplexForm::zero(alpha);
    for (j, vj) in face.iter().enumerate() {
        let mut term = SimplexForm::t(alpha, *vj);
        for (i, vi) in face.iter().enumerate() {
            if i == j {
                continue;
            }
            term = term.mul(&SimplexForm::dt(alpha, *vi));
        }
        acc = acc.add(&term.scale(&sign(j as i64)));
    }
    let f = acc.scale(&factorial(k as u64));
    // Normalize sign/scale so the self-integral is exactly one.
    let self_int = f.integrate_face(face);
    assert!(!self_int.is_zero(), "whitney form must pair with its face");
    f.scale(&(q1() / self_int))
}

/// A simplicial cochain on `Δ^α`: one rational per face (vertex subset).
pub type FaceCochain = BTreeMap<Vec<usize>, Q>;

/// Simplicial coboundary of a face cochain.
pub fn cochain_d(alpha: usize, c: &FaceCochain) -> FaceCochain {
    let mut out = FaceCochain::new();
    for f in faces_of(alpha) {
        let mut acc = Q::zero();
        for (j, _) in f.iter().enumerate() {
            let mut sub = f.clone();
            sub.remove(j);
            if sub.is_empty() {
                continue;
            }
            if let Some(v) = c.get(&sub) {
                acc += sign(j as i64) * v.clone();
            }
        }
        if !acc.is_zero() {
            out.insert(f, acc);
        }
    }
    out
}

/// Whitney expansion `E`: send a face cochain to the matching combination of
/// elementary forms. A chain map from simplicial cochains to `Ω_α`.
pub fn whitney_expand(alpha: usize, c: &FaceCochain) -> SimplexForm {
    let mut out = SimplexForm::zero(alpha);
    for (f, v) in c {
        out = out.add(&whitney_form(alpha, f).scale(v));
    }
    out
}

/// Face integration `I`: integrate each pure-degree part over each face.
/// A chain map (Stokes) with `I ∘ E = id`.
pub fn integrate_faces(form: &SimplexForm) -> FaceCochain {
    let mut out = FaceCochain::new();
    for f in faces_of(form.alpha) {
        let k = (f.len() - 1) as u32;
        let v = form.form_component(k).integrate_face(&f);
        if !v.is_zero() {
            out.insert(f, v);
        }
    }
    out
}

/// Dupont simplicial homotopy `s` with `id - E∘I = d∘s + s∘d`.
///
/// The operator is `Σ_F (-1)^k ω_F ∧ (h_{i_k} ∘ … ∘ h_{i_0})` over proper
/// faces `F = {i_0 < … < i_k}`; the sign convention is pinned by the
/// exhaustive identity tests below.
pub fn dupont_homotopy(form: &SimplexForm) -> SimplexForm {
    let alpha = form.alpha;
    let mut out = SimplexForm::zero(alpha);
    for f in faces_of(alpha) {
        if f.len() == alpha + 1 {
            continue;
        }
        let mut g = form.clone();
        for v in &f {
            g = g.contract_to_vertex(*v);
        }
        let w = whitney_form(alpha, &f);
        out = out.add(&w.mul(&g).scale(&sign(f.len() as i64 - 1)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, qr};

    fn t(a: usize, i: usize) -> SimplexForm {
        SimplexForm::t(a, i)
    }
    fn dt(a: usize, i: usize) -> SimplexForm {
        SimplexForm::dt(a, i)
    }

    #[test]
    fn relations_hold() {
        // Σ t_i = 1 and Σ dt_i = 0 in reduced form.
        for alpha in 1..4 {
            let mut st = SimplexForm::zero(alpha);
            for i in 0..=alpha {
                st = st.add(&t(alpha, i));
            }
            assert_eq!(st, SimplexForm::one(alpha));
            let mut sdt = SimplexForm::zero(alpha);
            for i in 0..=alpha {
                sdt = sdt.add(&dt(alpha, i));
            }
            assert!(sdt.is_zero());
        }
    }

    #[test]
    fn d_squared_zero_and_leibniz() {
        let f = t(2, 0).mul(&t(2, 1)).add(&t(2, 1).mul(&dt(2, 0)));
        assert!(f.d().d().is_zero());
        let g = t(2, 1).mul(&t(2, 1)).add(&dt(2, 1));
        // d(fg) = df g + (-1)^{|f|}f dg fails for mixed f in general; test
        // pure-degree pieces instead.
        for fk in 0..2u32 {
            let fc = f.form_component(fk);
            let lhs = fc.mul(&g.form_component(0)).d();
            let rhs = fc
                .d()
                .mul(&g.form_component(0))
                .add(&fc.mul(&g.form_component(0).d()).scale(&sign(fk as i64)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn anticommutativity() {
        let a = dt(3, 0);
        let b = dt(3, 2);
        assert_eq!(a.mul(&b), b.mul(&a).scale(&-q1()));
        assert!(a.mul(&a).is_zero());
    }

    #[test]
    fn face_maps_match_display() {
        // δ^i: t_k ↦ t_k (k<i), 0 (k=i), t_{k-1} (k>i), on Ω_2 → Ω_1.
        let f = t(2, 1);
        assert_eq!(f.face(0), t(1, 0)); // k=1 > i=0 ↦ t_0
        assert!(f.face(1).is_zero());
        assert_eq!(f.face(2), t(1, 1)); // stays t_1 = eliminated 1 - t_0
    }

    #[test]
    fn simplicial_identities() {
        // δ^j δ^i = δ^i δ^{j-1} for i < j, checked on a battery of forms.
        for alpha in 2..4usize {
            let forms = vec![
                t(alpha, 0).mul(&t(alpha, 1)),
                t(alpha, 1).mul(&dt(alpha, 0)),
                dt(alpha, 0).mul(&dt(alpha, 1)),
                t(alpha, alpha - 1).mul(&dt(alpha, alpha - 1)),
            ];
            for f in forms {
                for j in 1..=alpha {
                    for i in 0..j {
                        assert_eq!(
                            f.face(i).face(j - 1),
                            f.face(j).face(i),
                            "identity fails at alpha={alpha} i={i} j={j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn integration_formulas() {
        // ∫_{Δ^1} t_0 dt_0 = -1/2 with the vertex-order orientation (t_0
        // decreases from vertex 0 to vertex 1).
        let f = t(1, 0).mul(&dt(1, 0));
        assert_eq!(f.integrate_top(), qr(-1, 2));
        // ∫_{Δ^2} t_0 t_1 dt_0 dt_1 = 1!1!/(2+2)! = 1/24 (even dimension,
        // no orientation flip).
        let f = t(2, 0).mul(&t(2, 1)).mul(&dt(2, 0)).mul(&dt(2, 1));
        assert_eq!(f.integrate_top(), qr(1, 24));
        // Stokes with simplicial boundary ∂[01] = [1] - [0].
        let g = t(1, 0).mul(&t(1, 0));
        let int_d = g.d().integrate_top();
        let boundary = g.eval_vertex(1) - g.eval_vertex(0);
        assert_eq!(int_d, boundary);
    }

    #[test]
    fn whitney_normalization_and_faces() {
        for alpha in 1..3usize {
            for face in faces_of(alpha) {
                let w = whitney_form(alpha, &face);
                assert_eq!(w.integrate_face(&face), q1(), "self integral at {face:?}");
                // Vanishing on other faces of the same dimension.
                for other in faces_of(alpha) {
                    if other.len() == face.len() && other != face {
                        assert_eq!(w.integrate_face(&other), Q::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn whitney_edge_forms_are_affine() {
        // On Δ^1: ω_{0} = t_0, ω_{1} = t_1 = 1 - t_0, ω_{01} = dt affine data.
        assert_eq!(whitney_form(1, &[0]), t(1, 0));
        assert_eq!(whitney_form(1, &[1]), t(1, 1));
        // ω_{01} should integrate to 1 over the edge [0,1].
        let w = whitney_form(1, &[0, 1]);
        assert_eq!(w.integrate_top(), q1());
    }

    #[test]
    fn vertex_contraction_homotopy() {
        // d h_j + h_j d = id - ε_j on pure-degree forms.
        for alpha in 1..3usize {
            let battery = vec![
                t(alpha, 0),
                t(alpha, 0).mul(&t(alpha, 0)),
                dt(alpha, 0),
                t(alpha, 0).mul(&dt(alpha, 0)),
                t(alpha, alpha.saturating_sub(1)).mul(&dt(alpha, 0)),
            ];
            for j in 0..=alpha {
                for f in &battery {
                    for k in 0..2u32 {
                        let fc = f.form_component(k);
                        if fc.is_zero() {
                            continue;
                        }
                        let lhs = fc
                            .contract_to_vertex(j)
                            .d()
                            .add(&fc.d().contract_to_vertex(j));
                        let mut expected = fc.clone();
                        if k == 0 {
                            let c = fc.eval_vertex(j);
                            expected = expected.add(&SimplexForm::one(alpha).scale(&-c));
                        }
                        assert_eq!(lhs, expected, "alpha={alpha} j={j} k={k}");
                    }
                }
            }
        }
    }

    fn battery(alpha: usize) -> Vec<SimplexForm> {
        let mut v = vec![SimplexForm::one(alpha)];
        for i in 0..alpha {
            v.push(t(alpha, i));
            v.push(dt(alpha, i));
            v.push(t(alpha, i).mul(&t(alpha, i)));
            v.push(t(alpha, i).mul(&dt(alpha, i)));
            for j in 0..i {
                v.push(t(alpha, j).mul(&dt(alpha, i)));
                v.push(dt(alpha, j).mul(&dt(alpha, i)));
                v.push(t(alpha, i).mul(&t(alpha, j)).mul(&dt(alpha, j)));
            }
        }
        if alpha >= 3 {
            v.push(
                t(alpha, 0)
                    .mul(&dt(alpha, 0))
                    .mul(&dt(alpha, 1))
                    .mul(&dt(alpha, 2)),
            );
        }
        v
    }

    #[test]
    fn expansion_integration_are_chain_maps() {
        for alpha in 1..4usize {
            // I ∘ E = id on cochains.
            for f in faces_of(alpha) {
                let mut c = FaceCochain::new();
                c.insert(f.clone(), qi(3));
                let back = integrate_faces(&whitney_expand(alpha, &c));
                assert_eq!(back, c, "I E != id at alpha={alpha} face={f:?}");
            }
            // E δ = d E and I d = δ I.
            for f in faces_of(alpha) {
                let mut c = FaceCochain::new();
                c.insert(f.clone(), q1());
                assert_eq!(
                    whitney_expand(alpha, &cochain_d(alpha, &c)),
                    whitney_expand(alpha, &c).d(),
                    "E not a chain map at alpha={alpha} face={f:?}"
                );
            }
            for form in battery(alpha) {
                for k in 0..=alpha as u32 {
                    let fc = form.form_component(k);
                    if fc.is_zero() {
                        continue;
                    }
                    assert_eq!(
                        integrate_faces(&fc.d()),
                        cochain_d(alpha, &integrate_faces(&fc)),
                        "I not a chain map at alpha={alpha}"
                    );
                }
            }
        }
    }

    #[test]
    fn dupont_contraction_identity() {
        // id - E I = d s + s d, exhaustively on an exact form battery.
        for alpha in 1..4usize {
            for form in battery(alpha) {
                for k in 0..=alpha as u32 {
                    let fc = form.form_component(k);
                    if fc.is_zero() {
                        continue;
                    }
                    let ei = whitney_expand(alpha, &integrate_faces(&fc));
                    let lhs = fc.add(&ei.scale(&-q1()));
                    let rhs = dupont_homotopy(&fc)
                        .d()
                        .add(&dupont_homotopy(&fc.d()));
                    assert_eq!(lhs, rhs, "homotopy identity fails alpha={alpha} k={k}");
                }
            }
        }
    }

    #[test]
    fn sigma_weights() {
        let f = t(2, 0).mul(&dt(2, 1)).add(&t(2, 1));
        assert_eq!(f.sigma_weight_range(1), Some((-1, 0)));
        assert_eq!(f.sigma_weight_range(2), Some((-2, 0)));
        assert_eq!(SimplexForm::zero(2).sigma_weight_range(1), None);
        // A polynomial function has σ[r]-weight 0 for all r.
        assert_eq!(t(2, 0).sigma_weight_range(5), Some((0, 0)));
        let _ = qi(0);
    }
}
