fn main() {
    std::process::exit(inellipse_cli::run(std::env::args_os()));
}
