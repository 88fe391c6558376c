//! Parse a resolution datum from its text format, rebuild its pages, and
//! show that printing and re-parsing round-trips exactly.

use specseq::builders::build_isolated_pages;
use specseq::datum::{parse_datum, print_datum};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "data/segre.datum".into());
    let text = std::fs::read_to_string(&path).expect("datum file readable");
    let file = match parse_datum(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(1);
        }
    };
    println!(
        "{path}: kind = {}, ambient dimension {}, {} strata, {} singular points",
        file.kind.name(),
        file.datum.n,
        file.datum.strata.len(),
        file.datum.sigma
    );
    let printed = print_datum(&file, None);
    let again = parse_datum(&printed).expect("printer output re-parses");
    assert_eq!(print_datum(&again, None), printed, "print-parse-print is the identity");
    println!("round-trip: OK ({} bytes canonical form)", printed.len());
    if let Ok(pages) = build_isolated_pages(&file.datum) {
        println!("E2 dimensions: {:?}", pages.e2.cdga.cell_dims());
    }
}
