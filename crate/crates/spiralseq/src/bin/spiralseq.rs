fn main() {
    std::process::exit(spiralseq::cli::run(std::env::args()));
}
