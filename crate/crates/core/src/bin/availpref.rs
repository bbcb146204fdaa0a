fn main() {
    std::process::exit(availpref::cli::run(std::env::args_os()));
}
