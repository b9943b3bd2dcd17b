fn main() {
    std::process::exit(costly_secretary::cli::main_with_args(std::env::args_os()));
}
