fn main() {
    std::process::exit(relkit::cli::main_with(std::env::args()));
}
