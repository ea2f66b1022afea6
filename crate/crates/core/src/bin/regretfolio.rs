fn main() {
    std::process::exit(regretfolio::cli::run(std::env::args_os()));
}
