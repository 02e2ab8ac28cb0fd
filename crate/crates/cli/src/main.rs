fn main() {
    std::process::exit(pbz_cli::commands::run_from(std::env::args_os()));
}
