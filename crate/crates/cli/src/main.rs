mod args;
mod commands;
mod suite;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// 0 and 1 report the verdict, 2 a usage or input error, 3 an exhausted
/// resource limit.
fn exit_code(result: anyhow::Result<bool>) -> u8 {
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            let limit = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<teamsem::Error>(), Some(teamsem::Error::LimitExceeded(_))));
            if limit {
                3
            } else {
                2
            }
        }
    }
}

/// A closed stdout (`teamsem ... | head`) ends the process quietly.
fn quiet_broken_pipe() {
    let default = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        let msg = info
            .payload()
            .downcast_ref::<String>()
            .map(String::as_str)
            .or_else(|| info.payload().downcast_ref::<&str>().copied())
            .unwrap_or("");
        if msg.contains("Broken pipe") {
            std::process::exit(0);
        }
        default(info);
    }));
}

fn main() -> ExitCode {
    quiet_broken_pipe();
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Eval(a) => commands::eval(g, a),
        Command::Imply(a) => commands::imply(g, a),
        Command::Semvalue(a) => commands::semvalue(g, a),
        Command::PaperSuite(a) => commands::paper_suite(g, a),
        Command::Quant(c) => commands::quant(g, c),
        Command::JoinCheck(a) => commands::join_check(g, a),
    };
    ExitCode::from(exit_code(result))
}
