fn main() {
    std::process::exit(sandhika::cli::main());
}
