fn main() {
    std::process::exit(skewalg_cli::main_with_args(std::env::args_os()));
}
