mod args;
mod commands;
mod instance;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hopf_core::combinatorial::trees::TreeMode;
use hopf_core::{HopfError, Result};

use args::{Cli, Command, Kind, Mode};
use commands::{filtration_bound, method, quotient_kind};
use instance::{build, family, Wrap};
use output::Table;

fn wrap_of(quotient: Option<Kind>) -> Wrap {
    quotient.map_or(Wrap::Plain, |k| Wrap::Quotient(quotient_kind(k)))
}

fn run(cli: &Cli) -> Result<Table> {
    let c = &cli.common;
    let mode = match c.mode {
        Mode::Planar => TreeMode::Planar,
        Mode::Symmetric => TreeMode::Symmetric,
    };
    let n = c.truncation;
    let max_n = filtration_bound(n);
    match &cli.command {
        Command::Coproduct { source, quotient } => {
            let s = source.resolved();
            commands::coproduct(build(&s, mode, n, wrap_of(*quotient))?, s.key.as_deref())
        }
        Command::Antipode { source, quotient, deform, method: m } => {
            let s = source.resolved();
            let wrap = match (deform, quotient) {
                (true, Some(_)) => return Err(HopfError::Config("--deform and --quotient are exclusive".into())),
                (true, None) => Wrap::Deformed,
                (false, q) => wrap_of(*q),
            };
            commands::antipode_cmd(build(&s, mode, n, wrap)?, method(*m), max_n, s.key.as_deref())
        }
        Command::Inverse { source, quotient, character, method: m } => {
            let s = source.resolved();
            commands::inverse_cmd(family(&s, mode, n)?, wrap_of(*quotient), character, method(*m), max_n, s.key.as_deref())
        }
        Command::Birkhoff { source, quotient, character } => {
            let s = source.resolved();
            let wrap = wrap_of(Some(quotient.unwrap_or(Kind::Normalized)));
            commands::birkhoff_cmd(family(&s, mode, n)?, wrap, character, max_n, s.key.as_deref())
        }
        Command::Quotient { source, kind } => {
            let s = source.resolved();
            commands::quotient_cmd(family(&s, mode, n)?, quotient_kind(*kind), s.key.as_deref())
        }
        Command::Qdeform { source, laurent } => {
            let s = source.resolved();
            commands::qdeform_cmd(family(&s, mode, n)?, *laurent, max_n, s.key.as_deref())
        }
        Command::Coaction { source } => {
            let s = source.resolved();
            commands::coaction_cmd(family(&s, mode, n)?, s.key.as_deref())
        }
        Command::Filtration { source, quotient } => {
            commands::filtration_cmd(build(&source.resolved(), mode, n, wrap_of(*quotient))?, max_n)
        }
        Command::Structure { source, quotient } => {
            commands::structure_cmd(build(&source.resolved(), mode, n, wrap_of(*quotient))?, max_n)
        }
        Command::Check { suite } => commands::check_cmd(*suite, n, c.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(table) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(table.render(cli.common.format).as_bytes());
            if table.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
