fn main() {
    std::process::exit(legmosaic::cli::main());
}
