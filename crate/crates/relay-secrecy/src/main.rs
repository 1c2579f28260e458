//! Command-line surface: single-point Gaussian rate queries, finite-channel
//! policy search from a JSON fixture, power allocation over a budget
//! rectangle, and relay-gain sweeps emitted as CSV.
//!
//! All non-CSV output is JSON on standard output; errors exit nonzero with
//! a diagnostic on standard error.

use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use relay_secrecy::dm::{classify_eavesdropping, fixture, maximize_over_policies, SearchConfig};
use relay_secrecy::gaussian::{
    gaussian_wt_hi_breakdown, quantization_choice, regime, rs_fixed, rs_i, rs_ii, GaussianScenario,
};
use relay_secrecy::power::{optimize_powers, PowerBudget};
use relay_secrecy::sweep::{csv_string, run_sweep, Scheme, SweepSpec};

#[derive(Parser)]
#[command(
    name = "relay-secrecy",
    version,
    about = "Secrecy rates for a relay channel with an external eavesdropper"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form Gaussian secrecy rates at one operating point.
    Rate(RateArgs),
    /// Search input policies for a finite channel given as a JSON fixture.
    Dm(DmArgs),
    /// Optimize the power split over the budget rectangle.
    Power(PowerArgs),
    /// Sweep the relay-destination gain and emit CSV.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct RateArgs {
    /// Source-to-eavesdropper gain.
    #[arg(long)]
    a: f64,
    /// Relay-to-destination gain.
    #[arg(long)]
    b: f64,
    /// Source-to-relay gain.
    #[arg(long)]
    c: f64,
    /// Source power.
    #[arg(long)]
    p1: f64,
    /// Relay power.
    #[arg(long)]
    p2: f64,
}

#[derive(Args)]
struct DmArgs {
    /// JSON channel description (alphabet sizes plus transition table).
    #[arg(long)]
    fixture: PathBuf,
    /// Grid resolution: probability masses are multiples of 1/resolution.
    #[arg(long, default_value_t = 3)]
    resolution: usize,
    /// Quantizer output alphabet size (omit to search without compression).
    #[arg(long)]
    yhat_size: Option<usize>,
    /// Random restarts refined after the lattice pass.
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Seed for the restart sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Abort if the policy lattice exceeds this many cells.
    #[arg(long, default_value_t = 10_000_000)]
    cell_budget: u128,
    /// Also classify eavesdropper strength over the policy lattice.
    #[arg(long)]
    classify: bool,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    c: f64,
    /// Source power budget.
    #[arg(long)]
    p1_max: f64,
    /// Relay power budget.
    #[arg(long)]
    p2_max: f64,
    /// Grid points per power axis before refinement.
    #[arg(long, default_value_t = 201)]
    resolution: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value_t = 0.0)]
    b_min: f64,
    #[arg(long, default_value_t = 30.0)]
    b_max: f64,
    /// Number of b grid points, endpoints included.
    #[arg(long, default_value_t = 61)]
    steps: usize,
    #[arg(long, default_value_t = 5.0)]
    p1_max: f64,
    #[arg(long, default_value_t = 5.0)]
    p2_max: f64,
    /// Optimize (p1, p2) per point instead of using maximum power.
    #[arg(long)]
    power_control: bool,
    /// Comma-separated subset of proposed, wt_hi, direct.
    #[arg(long, value_delimiter = ',', default_value = "proposed,wt_hi,direct")]
    schemes: Vec<Scheme>,
    /// Grid points per power axis when --power-control is set.
    #[arg(long, default_value_t = 201)]
    resolution: usize,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_rate(args: &RateArgs) -> anyhow::Result<()> {
    let s = GaussianScenario::new(args.a, args.b, args.c, args.p1, args.p2)?;
    let report = serde_json::json!({
        "a": s.a, "b": s.b, "c": s.c, "p1": s.p1, "p2": s.p2,
        "regime": regime(&s).index(),
        "rate": rs_fixed(&s),
        "rs_i": rs_i(&s),
        "rs_ii": rs_ii(&s),
        "rs_fixed": rs_fixed(&s),
        "quantization": quantization_choice(&s),
        "wt_hi": gaussian_wt_hi_breakdown(&s),
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn cmd_dm(args: &DmArgs) -> anyhow::Result<()> {
    let ch = fixture::load_channel(&args.fixture)?;
    let search = SearchConfig {
        yhat_size: args.yhat_size,
        resolution: args.resolution,
        restarts: args.restarts,
        seed: args.seed,
        cell_budget: args.cell_budget,
    };
    let outcome = maximize_over_policies(&ch, &search)?;
    let classification = if args.classify {
        Some(classify_eavesdropping(&ch, &search)?)
    } else {
        None
    };
    let report = serde_json::json!({
        "fixture": args.fixture.display().to_string(),
        "sizes": ch.sizes(),
        "rate": outcome.breakdown.rs,
        "breakdown": outcome.breakdown,
        "policy": outcome.policy,
        "cells": outcome.cells,
        "classification": classification,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn cmd_power(args: &PowerArgs) -> anyhow::Result<()> {
    let budget = PowerBudget {
        p1_max: args.p1_max,
        p2_max: args.p2_max,
    };
    let sol = optimize_powers(args.a, args.b, args.c, &budget, args.resolution)?;
    let report = serde_json::json!({
        "a": args.a, "b": args.b, "c": args.c,
        "p1_max": budget.p1_max, "p2_max": budget.p2_max,
        "solution": sol,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<()> {
    let spec = SweepSpec {
        a: args.a,
        c: args.c,
        b_min: args.b_min,
        b_max: args.b_max,
        steps: args.steps,
        budget: PowerBudget {
            p1_max: args.p1_max,
            p2_max: args.p2_max,
        },
        power_control: args.power_control,
        schemes: args.schemes.clone(),
        resolution: args.resolution,
    };
    let rows = run_sweep(&spec)?;
    let csv = csv_string(&rows)?;
    match &args.out {
        Some(path) => fs::write(path, &csv)
            .with_context(|| format!("writing CSV to {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    match &Cli::parse().cmd {
        Cmd::Rate(args) => cmd_rate(args),
        Cmd::Dm(args) => cmd_dm(args),
        Cmd::Power(args) => cmd_power(args),
        Cmd::Sweep(args) => cmd_sweep(args),
    }
}
