fn main() {
    std::process::exit(rfcov::cli::run(std::env::args_os()));
}
