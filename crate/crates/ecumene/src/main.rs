fn main() {
    std::process::exit(ecumene::cli::run(std::env::args_os()));
}
