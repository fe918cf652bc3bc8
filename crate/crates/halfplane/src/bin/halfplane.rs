fn main() {
    std::process::exit(halfplane::cli::run(std::env::args_os()));
}
