fn main() { std::process::exit(marked_sset::cli::main_with_args(std::env::args_os())) }
