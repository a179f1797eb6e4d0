fn main() {
    std::process::exit(bivek::cli::run(std::env::args_os()));
}
