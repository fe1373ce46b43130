fn main() {
    std::process::exit(hallcomm::cli::run_from(std::env::args_os()));
}
