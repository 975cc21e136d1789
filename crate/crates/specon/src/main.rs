fn main() {
    std::process::exit(specon::cli::run());
}
