fn main() {
    std::process::exit(sumset_ramsey::cli::run(std::env::args_os()));
}
