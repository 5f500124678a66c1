fn main() {
    std::process::exit(cointoss::cli::main());
}
