fn main() {
    std::process::exit(elastica_lab::cli::run(std::env::args_os()));
}
