fn main() {
    std::process::exit(bubble_lab::report::run_cli(std::env::args_os()));
}
