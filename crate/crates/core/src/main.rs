fn main() {
    std::process::exit(exhull::cli::main_with_args(std::env::args_os()));
}
