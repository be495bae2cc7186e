use std::io::Write;

fn main() {
    let (code, text) = lextype_cli::run_cli(std::env::args_os());
    if code >= lextype_cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    std::process::exit(code);
}
