fn main() {
    std::process::exit(graypol_cli::run(std::env::args_os()));
}
