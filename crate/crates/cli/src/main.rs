use clap::Parser;
use groundstate_cli::Args;

fn main() {
    // Usage errors are input errors for the exit-code contract (2 is
    // reserved for undetermined classifications).
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { 1 } else { 0 };
            std::process::exit(code);
        }
    };
    std::process::exit(groundstate_cli::run(&args));
}
