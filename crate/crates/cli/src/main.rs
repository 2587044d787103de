fn main() {
    std::process::exit(gkat_cli::main_with(std::env::args_os()));
}
