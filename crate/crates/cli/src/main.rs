use std::io::Write;

fn main() {
    let outcome = relmod_cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr.trim_end());
    }
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
