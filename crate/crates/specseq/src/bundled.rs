//! Bundled golden data: parameterized resolution data for the worked
//! examples (two lines contracted in the plane, the nodal-curve
//! blow-down family, the Segre cubic, cones over curves, a genus divisor)
//! plus the Heisenberg Massey control and punctured-line log data.

use num_traits::Zero;

use crate::cdga::{disjoint_union, BasisElt, Cdga};
use crate::builders::ResolutionDatum;
use crate::linalg::{svec, Mat, SparseVec};
use crate::scalar::{q1, qi};

/// `H*(pt)`.
pub fn point_ring(name: &str) -> Cdga {
    Cdga::new(vec![BasisElt { name: format!("1_{name}"), p: 0, q: 0 }], 0, (1, 0))
}

/// `H*(P¹) = Q[pt]/pt²`.
pub fn p1_ring(name: &str) -> Cdga {
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

/// `H*(CP²) = Q[h]/h³`.
pub fn cp2_ring() -> Cdga {
    let mut c = Cdga::new(
        vec![
            BasisElt { name: "one".into(), p: 0, q: 0 },
            BasisElt { name: "h".into(), p: 0, q: 2 },
            BasisElt { name: "h2".into(), p: 0, q: 4 },
        ],
        0,
        (1, 0),
    );
    c.set_product(1, 1, svec(&[(2, qi(1))]));
    c
}

/// `H*(S_g)` for a smooth projective curve of genus `g`: basis
/// `1, a_1..a_{2g}, pt` with the symplectic intersection form
/// `a_i a_{g+i} = pt`.
pub fn curve_ring(g: usize, name: &str) -> Cdga {
    let mut basis = vec![BasisElt { name: format!("1_{name}"), p: 0, q: 0 }];
    for i in 0..2 * g {
        basis.push(BasisElt { name: format!("a{}_{name}", i + 1), p: 0, q: 1 });
    }
    basis.push(BasisElt { name: format!("pt_{name}"), p: 0, q: 2 });
    let pt = basis.len() - 1;
    let mut c = Cdga::new(basis, 0, (1, 0));
    for i in 1..=2 * g {
        for j in i..=2 * g {
            let v = if j == i + g { svec(&[(pt, q1())]) } else { SparseVec::new() };
            c.set_product_sym(i, j, v);
        }
        c.set_product_sym(i, pt, SparseVec::new());
    }
    c.set_product_sym(pt, pt, SparseVec::new());
    c
}

/// `H*(P¹×P¹)`: basis `1, u, v, uv` with `u² = v² = 0`.
pub fn quadric_ring(name: &str) -> Cdga {
    let mut c = Cdga::new(
        vec![
            BasisElt { name: format!("1_{name}"), p: 0, q: 0 },
            BasisElt { name: format!("u_{name}"), p: 0, q: 2 },
            BasisElt { name: format!("v_{name}"), p: 0, q: 2 },
            BasisElt { name: format!("uv_{name}"), p: 0, q: 4 },
        ],
        0,
        (1, 0),
    );
    c.set_product_sym(1, 1, SparseVec::new());
    c.set_product_sym(1, 2, svec(&[(3, q1())]));
    c.set_product_sym(2, 2, SparseVec::new());
    c.set_product_sym(1, 3, SparseVec::new());
    c.set_product_sym(2, 3, SparseVec::new());
    c.set_product_sym(3, 3, SparseVec::new());
    c
}

/// Two projective lines through a point in the plane, contracted to a
/// point. `X̃ = CP²`, `D^(1) = L₁ ⊔ L₂`, `D^(2) = {pt}`, `Σ = {pt}`.
pub fn two_lines_cp2() -> ResolutionDatum {
    let a = p1_ring("a");
    let b = p1_ring("b");
    let (l1, _) = disjoint_union(&[&a, &b], &["a", "b"]);
    let l2 = point_ring("pt");
    // Both branches restrict the function value at the double point.
    let mut d0 = Mat::zero(1, l1.dim());
    d0.set(0, 0, q1()); // value on L₁ (global unit part)
    let mut d1 = Mat::zero(1, l1.dim());
    d1.set(0, 0, q1());
    d1.set(0, 1, q1()); // value on L₂ (unit + indicator)
    let x = cp2_ring();
    // j*: h restricts to the point class on each line (degree 1).
    let mut j1 = Mat::zero(l1.dim(), x.dim());
    j1.set(0, 0, q1());
    j1.set(2, 1, q1());
    j1.set(3, 1, q1());
    let mut g1 = Mat::zero(l1.dim(), 1);
    g1.set(0, 0, q1());
    ResolutionDatum {
        n: 2,
        sigma: 1,
        xtilde: x,
        strata: vec![l1, l2],
        restrictions: vec![vec![d0, d1]],
        j1,
        g1,
        gysin: None,
    }
}

/// The nodal-curve blow-down: contract the proper transform of a degree-d
/// plane curve with `n` nodes after blowing up its `dd'` intersection
/// points with an auxiliary smooth curve, then one more blow-up per node
/// to make the exceptional set normal crossings. Genus
/// `g = (d-1)(d-2)/2 - n`.
///
/// `Y` is the plane blown up at `dd' + n` points; `D^(1)` is the smooth
/// model `S_g` of the curve together with one exceptional line per node,
/// each meeting `S_g` twice; `D^(2)` is the `2n` branch points.
pub fn nodal_curve(d: i64, dp: i64, n: usize) -> ResolutionDatum {
    let dd = (d * dp) as usize;
    let g = ((d - 1) * (d - 2) / 2) as usize - n;
    // Y = CP² # (dd + n) CP̄²: H² basis a, b_1..b_dd, e_1..e_n; top class T.
    let mut basis = vec![BasisElt { name: "one".into(), p: 0, q: 0 }];
    basis.push(BasisElt { name: "a".into(), p: 0, q: 2 });
    for i in 0..dd {
        basis.push(BasisElt { name: format!("b{}", i + 1), p: 0, q: 2 });
    }
    for j in 0..n {
        basis.push(BasisElt { name: format!("e{}", j + 1), p: 0, q: 2 });
    }
    basis.push(BasisElt { name: "T".into(), p: 0, q: 4 });
    let t = basis.len() - 1;
    let mut y = Cdga::new(basis, 0, (1, 0));
    for i in 1..t {
        for j in i..t {
            let v = if i != j {
                SparseVec::new()
            } else if i == 1 {
                svec(&[(t, qi(d * d))])
            } else {
                svec(&[(t, -q1())])
            };
            y.set_product_sym(i, j, v);
        }
        y.set_product_sym(i, t, SparseVec::new());
    }
    y.set_product_sym(t, t, SparseVec::new());
    // D^(1) = S_g ⊔ E_1..E_n.
    let sg = curve_ring(g, "C");
    let exc: Vec<Cdga> = (0..n).map(|j| p1_ring(&format!("E{}", j + 1))).collect();
    let mut factors: Vec<&Cdga> = vec![&sg];
    factors.extend(exc.iter());
    let labels: Vec<String> = std::iter::once("C".to_string())
        .chain((0..n).map(|j| format!("E{}", j + 1)))
        .collect();
    let lrefs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let (d1ring, _) = disjoint_union(&factors, &lrefs);
    // d1ring basis: one, e_{E1}..e_{En}, C.a1..C.a2g, C.pt, E1.pt..En.pt.
    let idx_ind = |j: usize| 1 + j; // indicator of E_{j+1}
    let idx_cpt = 1 + n + 2 * g;
    let idx_ept = |j: usize| 1 + n + 2 * g + 1 + j;
    // j*: a ↦ d·pt_C; b_i ↦ pt_C; e_j ↦ 2·pt_C − pt_{E_j}; T ↦ 0.
    let mut j1 = Mat::zero(d1ring.dim(), y.dim());
    j1.set(0, 0, q1());
    j1.set(idx_cpt, 1, qi(d));
    for i in 0..dd {
        j1.set(idx_cpt, 2 + i, q1());
    }
    for j in 0..n {
        j1.set(idx_cpt, 2 + dd + j, qi(2));
        j1.set(idx_ept(j), 2 + dd + j, -q1());
    }
    // D^(2): the 2n points E_j ∩ S_g; restriction from the curve branch
    // (δ⁰) and from the exceptional-line branch (δ¹).
    let (strata, restrictions) = if n == 0 {
        (vec![d1ring.clone()], vec![])
    } else {
        let pts: Vec<Cdga> = (0..2 * n).map(|k| point_ring(&format!("P{}", k + 1))).collect();
        let prefs: Vec<&Cdga> = pts.iter().collect();
        let plabels: Vec<String> = (0..2 * n).map(|k| format!("P{}", k + 1)).collect();
        let plrefs: Vec<&str> = plabels.iter().map(|s| s.as_str()).collect();
        let (d2ring, _) = disjoint_union(&prefs, &plrefs);
        // A function with value w_k at point P_{k+1} is the class
        // w_0·one + Σ_{k≥1} (w_k − w_0)·e_{P(k+1)} in the union basis.
        let set_values = |m: &mut Mat, col: usize, w: &[crate::scalar::Q]| {
            m.set(0, col, w[0].clone());
            for k in 1..w.len() {
                m.set(k, col, w[k].clone() - w[0].clone());
            }
        };
        let mut d0 = Mat::zero(d2ring.dim(), d1ring.dim());
        let mut d1m = Mat::zero(d2ring.dim(), d1ring.dim());
        // Curve branch: every point lies on S_g, so only the unit restricts
        // (value 1 everywhere); indicators of exceptional lines vanish.
        set_values(&mut d0, 0, &vec![q1(); 2 * n]);
        // Line branch: the unit has value 1 everywhere; the indicator of
        // E_j has value 1 exactly at its two branch points.
        set_values(&mut d1m, 0, &vec![q1(); 2 * n]);
        for j in 0..n {
            let mut w = vec![qi(0); 2 * n];
            w[2 * j] = q1();
            w[2 * j + 1] = q1();
            set_values(&mut d1m, idx_ind(j), &w);
        }
        (vec![d1ring.clone(), d2ring], vec![vec![d0, d1m]])
    };
    let mut g1 = Mat::zero(d1ring.dim(), 1);
    g1.set(0, 0, q1());
    ResolutionDatum {
        n: 2,
        sigma: 1,
        xtilde: y,
        strata,
        restrictions,
        j1,
        g1,
        gysin: None,
    }
}

/// The Segre cubic: a simply connected projective threefold with 10
/// ordinary double points, resolved by the moduli space of stable
/// 6-marked rational curves, with exceptional divisor 10 disjoint copies
/// of `P¹ × P¹`.
///
/// The resolution ring is encoded synthetically: the paper supplies only
/// the dimensions `(1, 16, 16, 1)` and the restriction behavior, so a
/// ring with exactly the required kernels/images is bundled (the E2
/// dimension table is insensitive to the choice).
pub fn segre() -> ResolutionDatum {
    // H²: h, e_1..e_10, f_1..f_5; H⁴: h2, k_1..k_5, m_1..m_10; H⁶: T.
    let mut basis = vec![BasisElt { name: "one".into(), p: 0, q: 0 }];
    basis.push(BasisElt { name: "h".into(), p: 0, q: 2 });
    for i in 0..10 {
        basis.push(BasisElt { name: format!("e{}", i + 1), p: 0, q: 2 });
    }
    for i in 0..5 {
        basis.push(BasisElt { name: format!("f{}", i + 1), p: 0, q: 2 });
    }
    basis.push(BasisElt { name: "h2".into(), p: 0, q: 4 });
    for i in 0..5 {
        basis.push(BasisElt { name: format!("k{}", i + 1), p: 0, q: 4 });
    }
    for i in 0..10 {
        basis.push(BasisElt { name: format!("m{}", i + 1), p: 0, q: 4 });
    }
    basis.push(BasisElt { name: "T".into(), p: 0, q: 6 });
    let ih = 1;
    let ie = |i: usize| 2 + i;
    let iff = |i: usize| 12 + i;
    let ih2 = 17;
    let ik = |i: usize| 18 + i;
    let im = |i: usize| 23 + i;
    let it = 33;
    let alpha = |i: usize, j: usize| i % 5 == j; // 10×5 pattern of rank 5
    let mut x = Cdga::new(basis, 0, (1, 0));
    // Degree 2 × 2.
    x.set_product_sym(ih, ih, svec(&[(ih2, q1())]));
    for i in 0..10 {
        x.set_product_sym(ih, ie(i), SparseVec::new());
        for j in i..10 {
            x.set_product_sym(ie(i), ie(j), SparseVec::new());
        }
        for j in 0..5 {
            let v = if alpha(i, j) { svec(&[(im(i), q1())]) } else { SparseVec::new() };
            x.set_product_sym(ie(i), iff(j), v);
        }
    }
    for i in 0..5 {
        x.set_product_sym(ih, iff(i), SparseVec::new());
        for j in i..5 {
            x.set_product_sym(iff(i), iff(j), SparseVec::new());
        }
    }
    // Degree 2 × 4: only h·h² = T survives (forced by associativity).
    for a in [ih].into_iter().chain((0..10).map(ie)).chain((0..5).map(iff)) {
        for b in [ih2].into_iter().chain((0..5).map(ik)).chain((0..10).map(im)) {
            let v = if a == ih && b == ih2 { svec(&[(it, q1())]) } else { SparseVec::new() };
            x.set_product_sym(a, b, v);
        }
        x.set_product_sym(a, it, SparseVec::new());
    }
    for a in [ih2].into_iter().chain((0..5).map(ik)).chain((0..10).map(im)) {
        for b in [ih2].into_iter().chain((0..5).map(ik)).chain((0..10).map(im)) {
            if a <= b {
                x.set_product_sym(a, b, SparseVec::new());
            }
        }
        x.set_product_sym(a, it, SparseVec::new());
    }
    x.set_product_sym(it, it, SparseVec::new());
    // D^(1): 10 disjoint quadrics.
    let quads: Vec<Cdga> = (0..10).map(|i| quadric_ring(&format!("Q{}", i + 1))).collect();
    let qrefs: Vec<&Cdga> = quads.iter().collect();
    let qlabels: Vec<String> = (0..10).map(|i| format!("Q{}", i + 1)).collect();
    let qlrefs: Vec<&str> = qlabels.iter().map(|s| s.as_str()).collect();
    let (d1ring, _) = disjoint_union(&qrefs, &qlrefs);
    // d1ring basis: one, e_{Q2}..e_{Q10} (9), then per quadric u, v, uv.
    let iu = |i: usize| 10 + 3 * i;
    let iv = |i: usize| 11 + 3 * i;
    let iuv = |i: usize| 12 + 3 * i;
    let mut j1 = Mat::zero(d1ring.dim(), x.dim());
    j1.set(0, 0, q1());
    for i in 0..10 {
        j1.set(iu(i), ie(i), q1());
        for j in 0..5 {
            if alpha(i, j) {
                j1.set(iv(i), iff(j), q1());
            }
        }
        j1.set(iuv(i), im(i), q1());
    }
    // g1: one singular point per quadric; column i is the indicator of
    // component Q_{i+1}. Indicator of Q1 = one − Σ e_{Qj}.
    let mut g1 = Mat::zero(d1ring.dim(), 10);
    for i in 0..10 {
        if i == 0 {
            g1.set(0, 0, q1());
            for j in 1..10 {
                g1.set(j, 0, -q1());
            }
        } else {
            g1.set(i, i, q1());
        }
    }
    ResolutionDatum {
        n: 3,
        sigma: 10,
        xtilde: x,
        strata: vec![d1ring],
        restrictions: vec![],
        j1,
        g1,
        gysin: None,
    }
}

/// The projective cone over a smooth curve of genus `g` embedded with
/// degree `e`. The resolution is the ruled surface with section
/// contracted; the exceptional divisor is the smooth section curve.
pub fn cone_over_curve(g: usize, e: i64) -> ResolutionDatum {
    // Ruled surface ring: 1, a_1..a_2g (deg 1), f = fiber-class dual point,
    // s = section, v_i = a_i s (deg 3), T.
    let mut basis = vec![BasisElt { name: "one".into(), p: 0, q: 0 }];
    for i in 0..2 * g {
        basis.push(BasisElt { name: format!("a{}", i + 1), p: 0, q: 1 });
    }
    basis.push(BasisElt { name: "f".into(), p: 0, q: 2 });
    basis.push(BasisElt { name: "s".into(), p: 0, q: 2 });
    for i in 0..2 * g {
        basis.push(BasisElt { name: format!("v{}", i + 1), p: 0, q: 3 });
    }
    basis.push(BasisElt { name: "T".into(), p: 0, q: 4 });
    let ia = |i: usize| 1 + i;
    let if_ = 1 + 2 * g;
    let is_ = 2 + 2 * g;
    let iv = |i: usize| 3 + 2 * g + i;
    let it = 3 + 4 * g;
    let omega = |i: usize, j: usize| -> crate::scalar::Q {
        if j == i + g {
            q1()
        } else if i == j + g {
            -q1()
        } else {
            qi(0)
        }
    };
    let mut x = Cdga::new(basis, 0, (1, 0));
    for i in 0..2 * g {
        for j in i..2 * g {
            let w = omega(i, j);
            let v = if w.is_zero() { SparseVec::new() } else { svec(&[(if_, w)]) };
            x.set_product_sym(ia(i), ia(j), v);
        }
        x.set_product_sym(ia(i), if_, SparseVec::new());
        x.set_product_sym(ia(i), is_, svec(&[(iv(i), q1())]));
        for j in 0..2 * g {
            let w = omega(i, j);
            let v = if w.is_zero() { SparseVec::new() } else { svec(&[(it, w)]) };
            x.set_product_sym(ia(i), iv(j), v);
        }
        x.set_product_sym(ia(i), it, SparseVec::new());
        x.set_product_sym(iv(i), if_, SparseVec::new());
        x.set_product_sym(iv(i), is_, SparseVec::new());
        x.set_product_sym(iv(i), it, SparseVec::new());
        for j in i..2 * g {
            x.set_product_sym(iv(i), iv(j), SparseVec::new());
        }
    }
    x.set_product_sym(if_, if_, SparseVec::new());
    x.set_product_sym(if_, is_, svec(&[(it, q1())]));
    x.set_product_sym(is_, is_, svec(&[(it, -qi(e))]));
    x.set_product_sym(if_, it, SparseVec::new());
    x.set_product_sym(is_, it, SparseVec::new());
    x.set_product_sym(it, it, SparseVec::new());
    // D = the section curve.
    let c = curve_ring(g, "C");
    let ca = |i: usize| 1 + i;
    let cpt = 1 + 2 * g;
    let mut j1 = Mat::zero(c.dim(), x.dim());
    j1.set(0, 0, q1());
    for i in 0..2 * g {
        j1.set(ca(i), ia(i), q1());
    }
    j1.set(cpt, if_, q1());
    j1.set(cpt, is_, -qi(e));
    let mut g1 = Mat::zero(c.dim(), 1);
    g1.set(0, 0, q1());
    ResolutionDatum {
        n: 2,
        sigma: 1,
        xtilde: x,
        strata: vec![c],
        restrictions: vec![],
        j1,
        g1,
        gysin: None,
    }
}

/// A genus-`g` curve and a line meeting in one point, as a plain divisor
/// datum (the dual graph is a tree, so the first page is 1-formal
/// territory).
pub fn genus_divisor(g: usize) -> ResolutionDatum {
    let sg = curve_ring(g, "C");
    let line = p1_ring("L");
    let (d1ring, _) = disjoint_union(&[&sg, &line], &["C", "L"]);
    let d2 = point_ring("P");
    // d1ring basis: one, e_L, C.a's, C.pt, L.pt.
    let mut d0 = Mat::zero(1, d1ring.dim());
    d0.set(0, 0, q1());
    let mut d1m = Mat::zero(1, d1ring.dim());
    d1m.set(0, 0, q1());
    d1m.set(0, 1, q1());
    let x = point_ring("X");
    let mut j1 = Mat::zero(d1ring.dim(), 1);
    j1.set(0, 0, q1());
    ResolutionDatum {
        n: 2,
        sigma: 0,
        xtilde: x,
        strata: vec![d1ring.clone(), d2],
        restrictions: vec![vec![d0, d1m]],
        j1,
        g1: Mat::zero(d1ring.dim(), 0),
        gysin: None,
    }
}

/// The Heisenberg control cdga `Λ(a, b, x)` with `|a| = |b| = |x| = 1` and
/// `dx = ab`: the minimal non-formal example, whose triple Massey product
/// `⟨a, a, b⟩ = [ax]` does not vanish.
pub fn heisenberg_control() -> Cdga {
    // Bidegrees chosen so the differential has bidegree (1, 0).
    let basis = vec![
        BasisElt { name: "one".into(), p: 0, q: 0 },
        BasisElt { name: "a".into(), p: 0, q: 1 },
        BasisElt { name: "b".into(), p: 0, q: 1 },
        BasisElt { name: "x".into(), p: -1, q: 2 },
        BasisElt { name: "ab".into(), p: 0, q: 2 },
        BasisElt { name: "ax".into(), p: -1, q: 3 },
        BasisElt { name: "bx".into(), p: -1, q: 3 },
        BasisElt { name: "abx".into(), p: -1, q: 4 },
    ];
    let (one, a, b, xx, ab, ax, bx, abx) = (0usize, 1, 2, 3, 4, 5, 6, 7);
    let _ = one;
    let mut c = Cdga::new(basis, 0, (1, 0));
    // Nonzero exterior products only; absent pairs default to zero.
    c.set_product_sym(a, b, svec(&[(ab, q1())]));
    c.set_product_sym(a, xx, svec(&[(ax, q1())]));
    c.set_product_sym(b, xx, svec(&[(bx, q1())]));
    c.set_product_sym(a, bx, svec(&[(abx, q1())]));
    c.set_product_sym(b, ax, svec(&[(abx, -q1())]));
    c.set_product_sym(xx, ab, svec(&[(abx, q1())]));
    c.set_diff(xx, svec(&[(ab, q1())]));
    c
}

/// `P¹` minus `m` marked points, as a log-complement datum (Gysin data
/// included).
pub fn punctured_line(m: usize) -> ResolutionDatum {
    let pts: Vec<Cdga> = (0..m).map(|k| point_ring(&format!("p{k}"))).collect();
    let refs: Vec<&Cdga> = pts.iter().collect();
    let labels: Vec<String> = (0..m).map(|k| format!("p{k}")).collect();
    let lrefs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let (d1, _) = disjoint_union(&refs, &lrefs);
    let x = p1_ring("x");
    let mut j1 = Mat::zero(d1.dim(), x.dim());
    j1.set(0, 0, q1());
    let mut gy = Mat::zero(x.dim(), d1.dim());
    gy.set(1, 0, q1());
    for k in 1..m {
        gy.set(1, k, q1());
    }
    let d1dim = d1.dim();
    ResolutionDatum {
        n: 1,
        sigma: 0,
        xtilde: x,
        strata: vec![d1],
        restrictions: vec![],
        j1,
        g1: Mat::zero(d1dim, 0),
        gysin: Some(vec![vec![gy]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_contraction_pages, build_divisor_pages, build_isolated_pages};
    use std::collections::BTreeMap;

    fn dims(m: &BTreeMap<(i64, i64), usize>, p: i64, q: i64) -> usize {
        *m.get(&(p, q)).unwrap_or(&0)
    }

    #[test]
    fn rings_validate() {
        for r in [
            point_ring("p"),
            p1_ring("l"),
            cp2_ring(),
            curve_ring(2, "c"),
            quadric_ring("q"),
            heisenberg_control(),
        ] {
            r.validate().unwrap();
        }
        segre().xtilde.validate().unwrap();
        nodal_curve(3, 4, 1).xtilde.validate().unwrap();
        cone_over_curve(2, 3).xtilde.validate().unwrap();
    }

    #[test]
    fn segre_tables() {
        let pages = build_isolated_pages(&segre()).unwrap();
        // E1 rows: 11 → 10 (q=0), 16 → 20 (q=2), 16 → 10 (q=4), top Q.
        assert_eq!(dims(&pages.e1_dims, 0, 0), 11);
        assert_eq!(dims(&pages.e1_dims, 1, 0), 10);
        assert_eq!(dims(&pages.e1_dims, 0, 2), 16);
        assert_eq!(dims(&pages.e1_dims, 1, 2), 20);
        assert_eq!(dims(&pages.e1_dims, 0, 4), 16);
        assert_eq!(dims(&pages.e1_dims, 1, 4), 10);
        assert_eq!(dims(&pages.e1_dims, 0, 6), 1);
        // E2 dims: (1; 0; 1,5; 0; 6,0; 0; 1).
        let e2 = pages.e2.cdga.cell_dims();
        assert_eq!(dims(&e2, 0, 0), 1);
        assert_eq!(dims(&e2, 0, 2), 1);
        assert_eq!(dims(&e2, 1, 2), 5);
        assert_eq!(dims(&e2, 0, 4), 6);
        assert_eq!(dims(&e2, 1, 4), 0);
        assert_eq!(dims(&e2, 0, 6), 1);
        assert_eq!(e2.values().sum::<usize>(), 14);
        // Impure exactly at H³ = E2^{1,2} (weight 2 < 3).
        assert_eq!(pages.purity.pure_through, 2);
    }

    #[test]
    fn nodal_tables() {
        for (d, dp, n) in [(3i64, 4i64, 1usize), (2, 3, 0), (4, 5, 2)] {
            let dd = (d * dp) as usize;
            let g = ((d - 1) * (d - 2) / 2) as usize - n;
            let pages = build_isolated_pages(&nodal_curve(d, dp, n)).unwrap();
            let e2 = pages.e2.cdga.cell_dims();
            assert_eq!(dims(&e2, 0, 0), 1, "({d},{dp},{n})");
            assert_eq!(dims(&e2, 2, 0), n, "({d},{dp},{n})");
            assert_eq!(dims(&e2, 1, 1), 2 * g, "({d},{dp},{n})");
            assert_eq!(dims(&e2, 0, 2), dd, "({d},{dp},{n})");
            assert_eq!(dims(&e2, 1, 2), 0, "({d},{dp},{n})");
            assert_eq!(dims(&e2, 0, 4), 1, "({d},{dp},{n})");
            assert_eq!(e2.values().sum::<usize>(), 2 + n + 2 * g + dd);
        }
    }

    #[test]
    fn two_lines_tables() {
        let pages = build_contraction_pages(&two_lines_cp2()).unwrap();
        let e2 = pages.e2.cdga.cell_dims();
        assert_eq!(dims(&e2, 0, 0), 1);
        assert_eq!(dims(&e2, 1, 2), 1);
        assert_eq!(dims(&e2, 0, 4), 1);
        assert_eq!(e2.values().sum::<usize>(), 3);
    }

    #[test]
    fn cone_over_curve_is_pure() {
        let pages = build_isolated_pages(&cone_over_curve(2, 3)).unwrap();
        assert!(pages.purity.impure_cells.is_empty());
        let e2 = pages.e2.cdga.cell_dims();
        // Betti numbers (1, 0, 1, 2g, 1).
        assert_eq!(dims(&e2, 0, 0), 1);
        assert_eq!(dims(&e2, 0, 2), 1);
        assert_eq!(dims(&e2, 0, 3), 4);
        assert_eq!(dims(&e2, 0, 4), 1);
        assert_eq!(e2.values().sum::<usize>(), 7);
    }

    #[test]
    fn genus_divisor_page() {
        let pages = build_divisor_pages(&genus_divisor(2)).unwrap();
        // H*(S_2 ∨ P¹): degrees (1, 4, 2): wedge at a point.
        let e2 = pages.e2.cdga.cell_dims();
        assert_eq!(dims(&e2, 0, 0), 1);
        assert_eq!(dims(&e2, 0, 1), 4);
        assert_eq!(dims(&e2, 0, 2), 2);
        assert_eq!(e2.values().sum::<usize>(), 7);
    }

    #[test]
    fn heisenberg_cohomology() {
        let h = heisenberg_control();
        h.validate().unwrap();
        let fin = crate::pages::FinitePage(&h);
        let coh = crate::pages::cohomology(&fin);
        let total: usize = coh.dims().values().sum();
        // H = (Q; a, b; ax, bx; abx): dims 1, 2, 2, 1.
        assert_eq!(total, 6);
    }
}
