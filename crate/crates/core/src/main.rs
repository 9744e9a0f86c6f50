fn main() {
    std::process::exit(abjudge::cli::run());
}
