fn main() {
    std::process::exit(specseq::cli_main());
}
