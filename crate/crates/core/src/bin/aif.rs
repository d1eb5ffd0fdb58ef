fn main() {
    std::process::exit(aif::cli::run());
}
