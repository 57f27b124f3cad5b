fn main() {
    std::process::exit(socle::cli::run());
}
