fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (output, code) = sullivan_cli::run(&args);
    if code == 0 {
        print!("{output}");
    } else {
        eprint!("{output}");
    }
    std::process::exit(code);
}
