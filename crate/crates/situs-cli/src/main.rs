use std::io::Write;

fn main() {
    let (code, out) = situs_cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.as_bytes());
    std::process::exit(code);
}
