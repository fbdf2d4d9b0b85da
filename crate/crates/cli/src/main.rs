fn main() {
    std::process::exit(suzuki_cli::run(std::env::args_os()));
}
