fn main() {
    std::process::exit(sparsest::cli::run(std::env::args_os()));
}
