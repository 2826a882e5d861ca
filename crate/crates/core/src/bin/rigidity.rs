fn main() {
    std::process::exit(rigidity::cli::dispatch(std::env::args_os()));
}
