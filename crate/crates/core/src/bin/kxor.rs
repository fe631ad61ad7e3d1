fn main() {
    std::process::exit(kxor_bounds::cli::main_with_args(std::env::args_os()));
}
