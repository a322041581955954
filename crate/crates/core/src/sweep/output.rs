use std::fs;
use std::path::{Path, PathBuf};

use crate::lattice::EdgeKind;
use crate::measures::{monogamy_surface_sample, IntervalSet};
use crate::{Error, Result};

use super::EntanglementReport;

pub const CSV_FILES: [&str; 7] = [
    "fig2_p_rail.csv",
    "fig3_p_step.csv",
    "fig4_p_avg.csv",
    "fig5_monogamy_surface.csv",
    "fig6_theta_max.csv",
    "fig7_pr_vs_ps.csv",
    "fig8_ggm.csv",
];

const EDGE_HEADER: [&str; 9] = ["n", "m", "boundary", "edge_a", "edge_b", "kind", "allowed", "p", "residual"];

/// Shortest of fixed or scientific notation at 12 significant digits, with
/// trailing zeros dropped, in the manner of C's `%.12g`.
pub fn format_g(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn format_intervals(set: &IntervalSet) -> String {
    set.intervals.iter().map(|(a, b)| format!("{}:{}", format_g(*a), format_g(*b))).collect::<Vec<_>>().join(";")
}

fn kind_label(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Rail => "rail",
        EdgeKind::Step => "step",
    }
}

struct CsvFile {
    path: PathBuf,
    writer: csv::Writer<fs::File>,
}

impl CsvFile {
    fn create(dir: &Path, name: &str, header: &[&str]) -> Result<Self> {
        let path = dir.join(name);
        let writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(&path)
            .map_err(|source| Error::Csv { path: path.clone(), source })?;
        let mut file = CsvFile { path, writer };
        file.row(header.iter().map(|s| s.to_string()))?;
        Ok(file)
    }

    fn row(&mut self, fields: impl IntoIterator<Item = String>) -> Result<()> {
        self.writer.write_record(fields).map_err(|source| Error::Csv { path: self.path.clone(), source })
    }

    fn finish(mut self) -> Result<()> {
        self.writer.flush().map_err(|source| Error::Io { path: self.path.clone(), source })
    }
}

/// Write the seven figure files (and state dumps if configured) into `dir`.
/// Rows follow the configured size order; failed sizes are absent.
pub fn emit_csv(report: &EntanglementReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;

    for (name, kind) in [(CSV_FILES[0], EdgeKind::Rail), (CSV_FILES[1], EdgeKind::Step)] {
        let mut f = CsvFile::create(dir, name, &EDGE_HEADER)?;
        for row in &report.rows {
            for (edge, fit) in row.werner.fits.iter().filter(|(e, _)| e.kind == kind) {
                f.row([
                    row.n.to_string(),
                    row.m.to_string(),
                    row.lattice.boundary().to_string(),
                    edge.a.to_string(),
                    edge.b.to_string(),
                    kind_label(edge.kind).into(),
                    edge.dimer_allowed.to_string(),
                    format_g(fit.p),
                    format_g(fit.residual),
                ])?;
            }
        }
        f.finish()?;
    }

    let mut f = CsvFile::create(dir, CSV_FILES[2], &["n", "p_r", "p_s", "p_avg", "F_r", "F_s", "F_avg"])?;
    for row in &report.rows {
        let fid = row.fidelities;
        f.row([
            row.n.to_string(),
            format_g(row.p_rail()),
            format_g(row.p_step()),
            format_g(row.p_avg),
            format_g(fid.rail),
            format_g(fid.step),
            format_g(fid.average),
        ])?;
    }
    f.finish()?;

    let mut f = CsvFile::create(dir, CSV_FILES[3], &["p_r", "p_s", "value"])?;
    for pt in monogamy_surface_sample(report.config.surface_resolution)? {
        f.row([format_g(pt.p_rail), format_g(pt.p_step), format_g(pt.value)])?;
    }
    f.finish()?;

    let mut f = CsvFile::create(dir, CSV_FILES[4], &["n", "p_r", "p_s", "theta_max", "s1_intervals", "s2_intervals"])?;
    for row in &report.rows {
        let c = &row.cloning;
        f.row([
            row.n.to_string(),
            format_g(c.p_rail),
            format_g(c.p_step),
            c.theta_max.map_or_else(|| "empty".into(), format_g),
            format_intervals(&c.rail_set),
            format_intervals(&c.step_set),
        ])?;
    }
    f.finish()?;

    let mut f = CsvFile::create(dir, CSV_FILES[5], &["n", "p_r", "p_s", "lhs", "tangle_rail", "tangle_step", "satisfied"])?;
    for row in &report.rows {
        let mono = &row.monogamy;
        f.row([
            row.n.to_string(),
            format_g(mono.p_rail),
            format_g(mono.p_step),
            format_g(mono.lhs),
            format_g(mono.tangle_rail),
            format_g(mono.tangle_step),
            mono.satisfied.to_string(),
        ])?;
    }
    f.finish()?;

    let mut f = CsvFile::create(dir, CSV_FILES[6], &["n", "ggm", "max_schmidt_sq", "maximizing_partition", "steps_on_A_side"])?;
    for row in &report.rows {
        f.row([
            row.n.to_string(),
            format_g(row.ggm.value),
            format_g(row.ggm.max_schmidt_sq),
            format!("{:#x}", row.reported_split),
            row.steps_on_a_side.to_string(),
        ])?;
    }
    f.finish()?;

    if report.config.emit_state_dumps {
        for row in &report.rows {
            let path = dir.join(format!("state_n{}.txt", row.n));
            let header = format!("rvb n={} boundary={} m={}", row.n, row.lattice.boundary(), row.m);
            fs::write(&path, row.state.dump_text(&header)).map_err(|source| Error::Io { path, source })?;
        }
    }
    Ok(())
}
