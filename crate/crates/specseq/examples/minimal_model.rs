//! Weight-graded minimal Sullivan models: compute the rational homotopy
//! groups of a nodal-curve blow-down surface through degree 3, with their
//! weight grading, and the classical model of the projective plane.

use specseq::builders::build_isolated_pages;
use specseq::bundled::{cp2_ring, nodal_curve};
use specseq::report::render_grid;
use specseq::sullivan::minimal_model;

fn main() {
    let pages = build_isolated_pages(&nodal_curve(3, 4, 1)).expect("bundled datum is valid");
    let model = minimal_model(&pages.e2.cdga, 3).expect("target is simply connected");
    println!("nodal-curve blow-down (d = 3, d' = 4, one node), generators through degree 3:");
    println!("{}", render_grid(&model.homotopy_table(), "weight", "degree"));
    println!(
        "model has {} generators; quasi-isomorphism through degree 3: {}",
        model.gens.len(),
        model.quasi_iso.ok
    );

    let model = minimal_model(&cp2_ring(), 7).expect("target is simply connected");
    println!("\nprojective plane through degree 7 (the classical (x2, y5 | dy = x^3)):");
    for g in &model.gens {
        println!("  generator {} in degree {}, weight {}", g.name, g.degree, g.weight);
    }
}
