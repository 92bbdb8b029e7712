fn main() {
    std::process::exit(pointspace::cli::main());
}
