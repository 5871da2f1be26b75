fn main() {
    let code = qresidue::cli::run(std::env::args_os());
    std::process::exit(code);
}
