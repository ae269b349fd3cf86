//! Minimum-gap sweep across a block-family parameter, on a bounded worker
//! pool, with per-instance progress and an exponential fit of the trend.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anticross_core::graphs::{generate_grk, GrkParams};
use anticross_core::maxcut::CostModel;
use anticross_core::spectrum::{
    gap_scan, scaling_fit, AnnealHamiltonian, GapScanConfig, ScalingFit,
};
use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use crate::args::Vary;
use crate::commands::Ctx;
use crate::output::{csv_header, fmt_f64, graph_hash, write_atomic, write_json};

struct InstanceResult {
    r: usize,
    k: usize,
    n_nodes: usize,
    n_qubits: usize,
    s_min: f64,
    gap_min: f64,
}

#[derive(Serialize)]
struct SweepSidecar {
    vary: String,
    fit: ScalingFit,
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    ctx: &Ctx,
    vary: Vary,
    r: usize,
    l: usize,
    k: usize,
    min: usize,
    max: usize,
    grid: usize,
    no_refine: bool,
    jobs: Option<usize>,
    out: Option<PathBuf>,
) -> Result<()> {
    if min > max {
        bail!("empty sweep range: min = {min} > max = {max}");
    }
    if max - min + 1 < 3 {
        bail!(
            "sweep range {min}..={max} yields {} instances; the exponential fit needs at least 3",
            max - min + 1
        );
    }
    let params: Vec<GrkParams> = (min..=max)
        .map(|v| match vary {
            Vary::R => GrkParams { r: v, l, k },
            Vary::K => GrkParams { r, l, k: v },
        })
        .collect();
    let n_jobs = jobs
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .clamp(1, params.len().max(1));

    // Validate every instance up front so nothing runs for a doomed sweep.
    for p in &params {
        generate_grk(p).with_context(|| format!("instance r={} l={} k={}", p.r, p.l, p.k))?;
    }

    let total = params.len();
    let started = Instant::now();
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let results: Vec<Mutex<Option<Result<InstanceResult>>>> =
        (0..total).map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..n_jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= total {
                    break;
                }
                let p = params[i];
                let t0 = Instant::now();
                let outcome = run_instance(ctx, &p, grid, !no_refine);
                let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                let avg = started.elapsed().as_secs_f64() / finished as f64;
                let eta = avg * (total - finished) as f64;
                eprintln!(
                    "sweep: r={} l={} k={} done in {:.1} s ({} of {}, ~{:.0} s remaining)",
                    p.r,
                    p.l,
                    p.k,
                    t0.elapsed().as_secs_f64(),
                    finished,
                    total,
                    eta
                );
                *results[i].lock().expect("result slot") = Some(outcome);
            });
        }
    });

    let mut rows = Vec::with_capacity(total);
    for slot in results {
        let outcome = slot
            .into_inner()
            .expect("result slot")
            .ok_or_else(|| anyhow!("a sweep instance produced no result"))?;
        rows.push(outcome?);
    }

    // The varied parameter is the fit abscissa.
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|row| {
            let x = match vary {
                Vary::R => row.r,
                Vary::K => row.k,
            };
            (x as f64, row.gap_min)
        })
        .collect();
    let fit = scaling_fit(&points)?;

    // The sweep's provenance hash covers the whole family: the hash of each
    // instance's canonical edge list, hashed in parameter order.
    let family_hash = {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        for p in &params {
            hasher.update(graph_hash(&generate_grr_checked(p)?).as_bytes());
        }
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(7 + 64);
        hex.push_str("sha256:");
        for b in digest {
            hex.push_str(&format!("{b:02x}"));
        }
        hex
    };

    let mut config = ctx.config(
        "sweep",
        match vary {
            Vary::R => format!("grk family: vary r in [{min}, {max}], l={l}, k={k}"),
            Vary::K => format!("grk family: vary k in [{min}, {max}], r={r}, l={l}"),
        },
    );
    config.grid = Some(grid);
    config.refine = Some(!no_refine);
    config.vary = Some(vary.as_str().to_string());
    config.range = Some((min, max));
    config.jobs = Some(n_jobs);

    let mut csv = csv_header(&config, &family_hash);
    csv.push_str("r,k,n_nodes,n_qubits,s_min,gap_min\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.r,
            row.k,
            row.n_nodes,
            row.n_qubits,
            fmt_f64(row.s_min),
            fmt_f64(row.gap_min)
        ));
    }

    let base = ctx.out_path(out, format!("sweep-grk-{}-{min}to{max}", vary.as_str()));
    let csv_path = base.with_extension("csv");
    let json_path = base.with_extension("json");
    write_atomic(&csv_path, &csv)?;
    write_json(
        &json_path,
        &config,
        &family_hash,
        SweepSidecar {
            vary: vary.as_str().to_string(),
            fit,
        },
    )?;
    println!(
        "sweep: {} instances in {:.1} s; wrote {} and {}",
        total,
        started.elapsed().as_secs_f64(),
        csv_path.display(),
        json_path.display()
    );
    Ok(())
}

fn generate_grr_checked(p: &GrkParams) -> Result<anticross_core::graphs::Graph> {
    Ok(generate_grk(p)?)
}

fn run_instance(ctx: &Ctx, p: &GrkParams, grid: usize, refine: bool) -> Result<InstanceResult> {
    let graph = generate_grk(p)?;
    let n_nodes = graph.n_nodes();
    let mut model = CostModel::new(graph, ctx.fixed_node)?;
    if let Some(cap) = ctx.enum_cap {
        model = model.with_enum_cap(cap);
    }
    let n_qubits = model.n_qubits();
    let h = AnnealHamiltonian::new(&model)?;
    let cfg = GapScanConfig {
        grid_points: grid,
        refine,
        ..GapScanConfig::default()
    };
    let scan =
        gap_scan(&h, &cfg).with_context(|| format!("scanning r={} l={} k={}", p.r, p.l, p.k))?;
    Ok(InstanceResult {
        r: p.r,
        k: p.k,
        n_nodes,
        n_qubits,
        s_min: scan.s_min,
        gap_min: scan.gap_min,
    })
}
