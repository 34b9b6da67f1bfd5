use std::io::{IsTerminal, Read, Write};
use std::process::ExitCode;
use wittlab::{exit, parse_request, run, Command};

fn main() -> ExitCode {
    let req = match parse_request(std::env::args()) {
        Ok(r) => r,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::SYNTAX as u8 } else { 0 });
        }
    };
    let batch = req.forms.is_empty() && matches!(req.command, Command::Depth | Command::Symbol | Command::Canonical | Command::Equal);
    let mut input = String::new();
    if batch && !std::io::stdin().is_terminal() {
        if let Err(e) = std::io::stdin().read_to_string(&mut input) {
            eprintln!("cannot read stdin: {e}");
            return ExitCode::from(exit::OTHER as u8);
        }
    }
    let (out, code) = run(&req, Some(&input));
    let text = serde_json::to_string_pretty(&out).expect("JSON values serialize");
    if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("cannot write output: {e}");
        }
        return ExitCode::from(exit::OTHER as u8);
    }
    if let Some(p) = &req.json_out {
        if let Err(e) = std::fs::write(p, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", p.display());
            return ExitCode::from(exit::OTHER as u8);
        }
    }
    ExitCode::from(code as u8)
}
