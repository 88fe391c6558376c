fn main() {
    for name in specseq::datum::BUILTIN_NAMES {
        let f = specseq::datum::builtin(name).unwrap();
        let fname = name.replace(':', "_").replace(',', "_");
        std::fs::write(format!("data/{fname}.datum"), specseq::datum::print_datum(&f, None)).unwrap();
        println!("data/{fname}.datum");
    }
}
