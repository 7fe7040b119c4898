fn main() {
    std::process::exit(ppath::cli::run(std::env::args_os()));
}
