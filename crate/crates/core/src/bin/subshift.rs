fn main() {
    std::process::exit(subshift_core::cli::main());
}
