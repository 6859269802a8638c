fn main() {
    std::process::exit(machin::cli::run(std::env::args()));
}
