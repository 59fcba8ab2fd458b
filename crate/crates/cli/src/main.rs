use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = dfan_cli::run(&args);
    std::io::stdout()
        .write_all(out.stdout.as_bytes())
        .expect("stdout");
    std::io::stderr()
        .write_all(out.stderr.as_bytes())
        .expect("stderr");
    std::process::exit(out.code);
}
