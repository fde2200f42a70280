fn main() {
    let out = multicat::cli::run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
