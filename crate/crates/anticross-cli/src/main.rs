//! `anticross`: generate MaxCut instances, classify their crossing regime,
//! scan spectral gaps, integrate the annealing dynamics, and sweep families —
//! every output embeds its run configuration and input hash.

mod args;
mod commands;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Cmd};
use commands::Ctx;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let out_dir = cli
        .out_dir
        .or_else(|| std::env::var_os("ANTICROSS_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let ctx = Ctx {
        out_dir,
        seed: cli.seed,
        fixed_node: cli.fixed_node,
        enum_cap: cli.enum_cap,
    };
    match cli.cmd {
        Cmd::Generate { family, out } => commands::cmd_generate(&ctx, family, out),
        Cmd::Analyze { graph, out } => commands::cmd_analyze(&ctx, &graph, out),
        Cmd::Gapscan {
            graph,
            grid,
            no_refine,
            out,
        } => commands::cmd_gapscan(&ctx, &graph, grid, no_refine, out),
        Cmd::Evolve {
            graph,
            t_max,
            dt,
            out,
        } => commands::cmd_evolve(&ctx, &graph, &t_max, dt, out),
        Cmd::Overlaps { graph, grid, out } => commands::cmd_overlaps(&ctx, &graph, grid, out),
        Cmd::Sweep {
            vary,
            r,
            l,
            k,
            min,
            max,
            grid,
            no_refine,
            jobs,
            out,
        } => sweep::cmd_sweep(&ctx, vary, r, l, k, min, max, grid, no_refine, jobs, out),
    }
}
