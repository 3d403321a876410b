fn main() {
    std::process::exit(fibertrap::cli::main_with_args(std::env::args_os()));
}
