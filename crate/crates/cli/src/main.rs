use std::io::{stderr, stdin, stdout};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let workers_env = std::env::var("RYSER_WORKERS").ok();
    let code = ryser_cli::run_cli(
        &args,
        &mut stdin().lock(),
        &mut stdout().lock(),
        &mut stderr().lock(),
        workers_env.as_deref(),
    );
    std::process::exit(code);
}
