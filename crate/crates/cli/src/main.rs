fn main() {
    std::process::exit(orderdnnf_cli::run(std::env::args_os()));
}
