fn main() {
    std::process::exit(fermitrot_cli::run(std::env::args_os()));
}
