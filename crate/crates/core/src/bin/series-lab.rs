fn main() {
    std::process::exit(series_lab::cli::run(std::env::args_os()));
}
