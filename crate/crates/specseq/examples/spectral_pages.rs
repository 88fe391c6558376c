//! Build the weight spectral sequence of the Segre cubic threefold and
//! print the first and second pages as (p, q) grids.

use specseq::builders::build_isolated_pages;
use specseq::bundled::segre;
use specseq::report::render_grid;

fn main() {
    let pages = build_isolated_pages(&segre()).expect("bundled datum is valid");
    println!("E1 of the Segre cubic (columns p, rows q):");
    println!("{}", render_grid(&pages.e1_dims, "q", "p"));
    println!("E2 (columns p, rows q):");
    println!("{}", render_grid(&pages.e2.cdga.cell_dims(), "q", "p"));
    println!("weight table (columns degree k, rows weight m):");
    println!("{}", render_grid(&pages.table, "m", "k"));
    println!("purity holds through degree {}", pages.purity.pure_through);
}
