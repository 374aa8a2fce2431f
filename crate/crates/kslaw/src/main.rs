fn main() {
    std::process::exit(kslaw::cli::run());
}
