use std::process::ExitCode;

use hfk_cli::{parse_command, report_status, run, CliError, EXIT_USAGE};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match parse_command(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let echo = std::iter::once("hfk-doubler")
        .chain(argv.iter().skip(1).map(String::as_str))
        .collect::<Vec<_>>()
        .join(" ");
    let outcome = run(&cli, &echo).and_then(|report| {
        let text = cli.render(&report);
        match &cli.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output {
                path: path.display().to_string(),
                message: e.to_string(),
            })?,
            None => print!("{text}"),
        }
        Ok(report_status(&report))
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hfk-doubler: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
