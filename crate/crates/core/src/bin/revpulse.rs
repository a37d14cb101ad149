fn main() {
    std::process::exit(revpulse::cli::main_with_args());
}
