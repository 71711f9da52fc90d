fn main() {
    std::process::exit(qdcool_exp::run_cli(std::env::args_os()));
}
