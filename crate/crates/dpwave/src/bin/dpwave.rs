fn main() {
    std::process::exit(dpwave::cli::run(std::env::args_os()));
}
