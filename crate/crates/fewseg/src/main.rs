fn main() {
    std::process::exit(fewseg::cli::main_with_args(std::env::args_os()));
}
