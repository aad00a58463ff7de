fn main() {
    let out = exanlab::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
