fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(horoslab_cli::run(args));
}
