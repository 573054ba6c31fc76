fn main() {
    std::process::exit(microframe_cli::run(std::env::args_os()));
}
