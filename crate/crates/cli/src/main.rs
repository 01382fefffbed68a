fn main() {
    std::process::exit(qrdyn_cli::run(std::env::args_os()));
}
