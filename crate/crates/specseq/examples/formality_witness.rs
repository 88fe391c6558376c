//! Certify formality of the projective cone over a genus-2 curve: build a
//! multiplicative section of the first weight page and verify it is a
//! quasi-isomorphism with zero multiplicativity residual on every basis
//! pair, then cross-check with the purity route.

use specseq::builders::build_isolated_pages;
use specseq::bundled::cone_over_curve;
use specseq::formality::{purity_witness_e1, rho_witness_e1, PurityVerdict, Shape};

fn main() {
    let pages = build_isolated_pages(&cone_over_curve(2, 1)).expect("bundled datum is valid");
    let w = rho_witness_e1(&pages.e1, Shape::SmoothDivisor).expect("shape hypotheses hold");
    let zero = w.witness.residual_zero.values().filter(|z| **z).count();
    println!(
        "section witness: chain map = {}, unit preserved = {}, residuals zero = {}/{}",
        w.witness.chain_map,
        w.witness.unit_preserved,
        zero,
        w.witness.residual_zero.len()
    );
    println!("verdict: {}", if w.witness.valid { "VALID (formal)" } else { "INVALID" });

    let pw = purity_witness_e1(&pages.e1, None).expect("page is well-formed");
    match pw.verdict {
        PurityVerdict::RFormal => {
            println!("purity route agrees: pure through degree {}", pw.pure_through)
        }
        PurityVerdict::Counterexample { cell } => println!("impure cell {cell:?}"),
    }
}
