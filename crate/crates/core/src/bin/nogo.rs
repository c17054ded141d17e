fn main() {
    std::process::exit(nogo_core::cli::main_with_args(std::env::args_os()));
}
