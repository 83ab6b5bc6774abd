fn main() {
    std::process::exit(deckrecon::cli::run(std::env::args()));
}
