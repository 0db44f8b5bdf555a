fn main() {
    std::process::exit(cobound::cli::run(std::env::args_os()));
}
