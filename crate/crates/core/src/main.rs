fn main() {
    std::process::exit(qsets::cli::main_with_args(std::env::args_os()));
}
