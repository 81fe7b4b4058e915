fn main() {
    std::process::exit(statengine::harness::run_cli(std::env::args_os()));
}
