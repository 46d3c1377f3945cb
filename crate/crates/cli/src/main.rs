fn main() {
    std::process::exit(ghkit_cli::app::run(std::env::args_os()));
}
