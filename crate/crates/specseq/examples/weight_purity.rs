//! Weight tables and the semi-purity obstruction: contracting two lines
//! through a point in the plane produces a weight-2 class on H^3, which a
//! projective variety with isolated singularities could not carry.

use specseq::builders::build_contraction_pages;
use specseq::bundled::two_lines_cp2;
use specseq::formality::semi_purity_check;
use specseq::report::render_grid;

fn main() {
    let pages = build_contraction_pages(&two_lines_cp2()).expect("bundled datum is valid");
    println!("weight table (columns degree k, rows weight m):");
    println!("{}", render_grid(&pages.table, "m", "k"));
    let semi = semi_purity_check(&pages.e2.cdga, 2);
    if semi.holds {
        println!("semi-purity holds above the complex dimension");
    } else {
        for (k, m, d) in &semi.failures {
            println!(
                "semi-purity fails: H^{k} carries a {d}-dimensional piece of weight {m} (< {k})"
            );
        }
    }
}
