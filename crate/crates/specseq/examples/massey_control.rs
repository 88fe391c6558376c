//! Triple Massey products with exact indeterminacy. Formal pages have
//! vanishing products everywhere; the Heisenberg cdga (dx = ab) is the
//! minimal control whose product <a, a, b> genuinely does not vanish.

use specseq::builders::{build_isolated_pages, E1Page};
use specseq::bundled::{heisenberg_control, segre};
use specseq::formality::{all_triples_vanish, triple_massey};
use specseq::linalg::unit_vec;
use specseq::pages::{ring_page, FinitePage};

fn main() {
    let pages = build_isolated_pages(&segre()).expect("bundled datum is valid");
    let bad = match &pages.e1 {
        E1Page::Pure(c) => all_triples_vanish(&FinitePage(c), &pages.e2),
        E1Page::Cone(c) => all_triples_vanish(c, &pages.e2),
    }
    .expect("all triples are admissible or skipped");
    match bad {
        None => println!("Segre cubic: every admissible triple Massey product contains zero"),
        Some(t) => println!("Segre cubic: nonvanishing triple at basis indices {t:?}"),
    }

    let h = heisenberg_control();
    let page = FinitePage(&h);
    let ring = ring_page(&page, "H", (1, 0));
    let deg1: Vec<usize> =
        (0..ring.cdga.dim()).filter(|&i| ring.cdga.basis[i].degree() == 1).collect();
    let res = triple_massey(&page, &ring, &unit_vec(deg1[0]), &unit_vec(deg1[0]), &unit_vec(deg1[1]))
        .expect("triple is admissible");
    println!(
        "Heisenberg control <a, a, b>: contains zero = {}, indeterminacy dimension = {}",
        res.contains_zero,
        res.indeterminacy.len()
    );
}
