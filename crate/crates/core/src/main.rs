use std::io::Write;

fn main() {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = vknot::cli::run(std::env::args_os(), &mut stdin.lock(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
