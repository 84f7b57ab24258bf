fn main() {
    std::process::exit(thetaplanes::cli::run());
}
