fn main() {
    std::process::exit(ostrovsky::cli::main_with_args());
}
