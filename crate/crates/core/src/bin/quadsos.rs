fn main() {
    std::process::exit(quadsos::cli::main());
}
