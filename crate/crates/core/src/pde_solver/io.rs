//! Long-format snapshot CSV plus a JSON manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::evolve::{SolutionSnapshot, Trajectory, TrajectoryStatus};
use super::grid::GridSpec;
use super::SolverError;
use crate::format::{fmt_sig, to_json_string};

pub const MANIFEST_KIND: &str = "trajectory_manifest";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub kind: String,
    pub grid: GridSpec,
    pub p: f64,
    pub times: Vec<f64>,
    pub status: TrajectoryStatus,
    pub steps: usize,
    pub blowup_time: Option<f64>,
    pub clipped_mass: f64,
    pub max_clip_fraction: f64,
    pub max_boundary_ratio: f64,
    /// Relative to the manifest's directory.
    pub snapshot_file: String,
}

impl Manifest {
    pub fn for_trajectory(tr: &Trajectory, snapshot_file: &str) -> Self {
        Self {
            schema: crate::SCHEMA.to_string(),
            kind: MANIFEST_KIND.to_string(),
            grid: *tr.grid(),
            p: tr.p(),
            times: tr.times(),
            status: tr.status,
            steps: tr.steps,
            blowup_time: tr.blowup_time,
            clipped_mass: tr.clipped_mass,
            max_clip_fraction: tr.max_clip_fraction,
            max_boundary_ratio: tr.max_boundary_ratio,
            snapshot_file: snapshot_file.to_string(),
        }
    }
}

/// CSV with header `t,index,u` (box) or `t,r,u` (radial), one row per node per snapshot.
pub fn snapshots_csv(tr: &Trajectory) -> String {
    let grid = tr.grid();
    let mut out = String::from(if grid.is_radial() { "t,r,u\n" } else { "t,index,u\n" });
    for s in &tr.snapshots {
        let t = fmt_sig(s.t);
        for (i, v) in s.field.iter().enumerate() {
            let x = if grid.is_radial() { fmt_sig(grid.radius(i)) } else { i.to_string() };
            out.push_str(&format!("{t},{x},{}\n", fmt_sig(*v)));
        }
    }
    out
}

/// Writes `manifest.json` and `snapshots.csv` into `dir`; returns the manifest path.
pub fn write_trajectory(tr: &Trajectory, dir: &Path) -> Result<PathBuf, SolverError> {
    fs::create_dir_all(dir).map_err(|e| SolverError::Io(format!("{}: {e}", dir.display())))?;
    let csv_name = "snapshots.csv";
    let manifest = Manifest::for_trajectory(tr, csv_name);
    let write = |path: PathBuf, body: String| {
        fs::write(&path, body).map_err(|e| SolverError::Io(format!("{}: {e}", path.display())))
    };
    write(dir.join(csv_name), snapshots_csv(tr))?;
    let body = to_json_string(&manifest).map_err(|e| SolverError::Format(e.to_string()))?;
    let path = dir.join("manifest.json");
    write(path.clone(), body)?;
    Ok(path)
}

/// Reads a trajectory back from a manifest written by [`write_trajectory`].
pub fn read_trajectory(manifest_path: &Path) -> Result<Trajectory, SolverError> {
    let io = |e: std::io::Error| SolverError::Io(format!("{}: {e}", manifest_path.display()));
    let text = fs::read_to_string(manifest_path).map_err(io)?;
    let m: Manifest = serde_json::from_str(&text).map_err(|e| SolverError::Format(e.to_string()))?;
    if m.kind != MANIFEST_KIND {
        return Err(SolverError::Format(format!("expected kind '{MANIFEST_KIND}', found '{}'", m.kind)));
    }
    m.grid.validate()?;
    let csv_path = manifest_path.parent().unwrap_or(Path::new(".")).join(&m.snapshot_file);
    let csv = fs::read_to_string(&csv_path).map_err(|e| SolverError::Io(format!("{}: {e}", csv_path.display())))?;
    let nodes = m.grid.node_count();
    let mut lines = csv.lines();
    lines.next().ok_or_else(|| SolverError::Format("empty snapshot file".into()))?;
    let mut values = Vec::with_capacity(nodes * m.times.len());
    for (k, line) in lines.enumerate() {
        let u = line
            .rsplit(',')
            .next()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .ok_or_else(|| SolverError::Format(format!("bad snapshot row {}: '{line}'", k + 2)))?;
        values.push(u);
    }
    if values.len() != nodes * m.times.len() {
        return Err(SolverError::Format(format!(
            "expected {} rows for {} snapshots of {nodes} nodes, found {}",
            nodes * m.times.len(),
            m.times.len(),
            values.len()
        )));
    }
    let snapshots = m
        .times
        .iter()
        .zip(values.chunks(nodes))
        .map(|(&t, chunk)| SolutionSnapshot::new(t, chunk.to_vec(), m.grid, m.p))
        .collect::<Result<Vec<_>, _>>()?;
    let tr = Trajectory {
        snapshots,
        status: m.status,
        steps: m.steps,
        blowup_time: m.blowup_time,
        clipped_mass: m.clipped_mass,
        max_clip_fraction: m.max_clip_fraction,
        max_boundary_ratio: m.max_boundary_ratio,
    };
    tr.check_invariants()?;
    Ok(tr)
}
