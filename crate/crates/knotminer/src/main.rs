fn main() {
    std::process::exit(knotminer::cli::dispatch(std::env::args_os()));
}
