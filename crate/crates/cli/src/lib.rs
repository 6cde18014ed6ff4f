//! The `monoforge` command-line front end as a library, so presets and
//! handlers can be driven from tests.

pub mod args;
pub mod commands;
pub mod inputs;
pub mod presets;
pub mod report;

use anyhow::Result;

use args::{Cli, Command};
use report::Report;

pub fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Poly(c) => commands::poly(g, c),
        Command::Code(c) => commands::code(g, c),
        Command::Dist(c) => commands::dist(g, c),
        Command::Matrix(c) => commands::matrix(g, c),
        Command::Rank(c) => commands::rank(g, c),
        Command::Cb(c) => commands::cb(g, c),
        Command::Approx(c) => commands::approx(g, c),
        Command::Experiment(a) => presets::run(g, a),
    }
}
