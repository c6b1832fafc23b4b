fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(ngw::cli::run_cli(&args));
}
