fn main() {
    let code = jdisk::cli::run(std::env::args_os());
    std::process::exit(code);
}
