fn main() {
    std::process::exit(axial::cli::main());
}
