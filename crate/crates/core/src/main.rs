fn main() {
    std::process::exit(pt_solvable::cli::main_with_args(std::env::args_os()));
}
