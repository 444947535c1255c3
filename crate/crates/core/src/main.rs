fn main() {
    std::process::exit(weighted_entropy::cli::run(std::env::args_os()));
}
