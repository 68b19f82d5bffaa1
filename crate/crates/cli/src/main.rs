use std::process::ExitCode;

use clap::Parser;
use hermdiag_cli::{kmax_cap_from_env, run_command, Cli, CliError, RunConfig};

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Config(e.to_string().trim_end().to_string())),
    };
    let cfg = match kmax_cap_from_env().and_then(|cap| RunConfig::from_cli(cli, cap)) {
        Ok(cfg) => cfg,
        Err(e) => return fail(&e),
    };
    let mut stdout = std::io::stdout().lock();
    match run_command(&cfg, &mut stdout) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}
