fn main() {
    std::process::exit(logrank::cli::run());
}
