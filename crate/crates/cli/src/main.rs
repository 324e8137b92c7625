fn main() {
    std::process::exit(corings_cli::main_with_args(std::env::args_os()));
}
