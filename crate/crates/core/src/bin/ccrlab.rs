fn main() {
    std::process::exit(ccr_lab::cli::main_with_args(std::env::args_os()));
}
