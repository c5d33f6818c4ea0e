fn main() {
    std::process::exit(quivercat_service::cli::run(std::env::args_os()));
}
