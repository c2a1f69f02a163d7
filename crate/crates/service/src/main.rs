fn main() {
    std::process::exit(kgsu::cli::run(std::env::args_os()));
}
