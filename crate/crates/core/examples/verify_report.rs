//! A full verification run, printed as a table and as JSON.

use sasakian::cli::run_cli;

fn main() {
    let base = ["sasakian", "verify", "--n1", "2", "--n2", "1", "--alpha", "-1+0.5i", "--samples", "32", "--seed", "11"];
    let text: Vec<&str> = base.iter().copied().chain(["--format", "text"]).collect();
    let code = run_cli(text);
    println!("exit code {code}");
    std::process::exit(run_cli(base));
}
