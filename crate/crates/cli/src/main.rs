//! `dmod`: batch front end for Drinfeld module computations.

mod algebra;
mod enc;
mod families;
mod frobrec;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use output::{render, Format, Output};

#[derive(Parser)]
#[command(name = "dmod", version, about = "Exact computations with Drinfeld modules over F_q[t]")]
struct Cli {
    /// Seeds every randomized step (field moduli, basis sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest splitting-extension degree searched over the base field.
    #[arg(long, global = true, default_value_t = 12)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Twisted polynomials L{τ}.
    #[command(subcommand)]
    Ore(algebra::OreCmd),
    /// A single Drinfeld module.
    #[command(subcommand)]
    Drinfeld(algebra::DrinfeldCmd),
    /// The Carlitz module.
    #[command(subcommand)]
    Carlitz(families::CarlitzCmd),
    /// Prime-by-prime Frobenius norms of a family.
    #[command(subcommand)]
    Type2(families::Type2Cmd),
    /// Residual Frobenius exponent of a family.
    #[command(subcommand)]
    Residual(families::ResidualCmd),
    /// Determinant motive.
    #[command(subcommand)]
    Motive(algebra::MotiveCmd),
    /// Frobenius-power recovery.
    #[command(subcommand)]
    Frobrec(frobrec::FrobrecCmd),
}

pub struct Config {
    pub seed: u64,
    pub cap: usize,
}

fn run(cli: &Cli) -> Result<Output> {
    let cfg = Config {
        seed: cli.seed,
        cap: cli.cap,
    };
    let mut inp = input::Inputs::new();
    match &cli.cmd {
        Cmd::Ore(c) => algebra::ore(c, &cfg, &mut inp),
        Cmd::Drinfeld(c) => algebra::drinfeld(c, &cfg, &mut inp),
        Cmd::Carlitz(c) => families::carlitz(c, &cfg, &mut inp),
        Cmd::Type2(c) => families::type2(c, &cfg, &mut inp),
        Cmd::Residual(c) => families::residual(c, &cfg, &mut inp),
        Cmd::Motive(c) => algebra::motive(c, &cfg, &mut inp),
        Cmd::Frobrec(c) => frobrec::frobrec(c, &mut inp),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let s = render(out, cli.format)?;
    match &cli.output {
        Some(path) => std::fs::write(path, s)?,
        None => std::io::stdout().write_all(s.as_bytes())?,
    }
    Ok(())
}

/// 0: every check passed; 1: a check failed or the answer is negative; 2: error.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out).map(|_| out.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
