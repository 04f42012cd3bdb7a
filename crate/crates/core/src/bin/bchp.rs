fn main() {
    std::process::exit(bchp::cli::run(std::env::args_os()));
}
