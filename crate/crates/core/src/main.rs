fn main() {
    std::process::exit(sasakian::cli::run_cli(std::env::args_os()));
}
