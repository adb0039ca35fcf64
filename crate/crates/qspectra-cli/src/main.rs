fn main() {
    std::process::exit(qspectra_cli::run(std::env::args_os()));
}
