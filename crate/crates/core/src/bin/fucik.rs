fn main() {
    std::process::exit(fucik_core::cli::parse_and_dispatch(std::env::args_os()));
}
