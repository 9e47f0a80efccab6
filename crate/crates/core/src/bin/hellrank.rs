fn main() {
    std::process::exit(hellrank::cli::run(std::env::args_os()));
}
