fn main() {
    std::process::exit(dhs_cli::run());
}
