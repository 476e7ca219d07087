fn main() {
    std::process::exit(skeinlab::cli::run(std::env::args_os()));
}
