//! Run artifacts: CSV profiles, gnuplot companions, JSON summaries, and
//! the classification pretty-printer.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use anyhow::{Context, Result};
use serde::Serialize;
use swe_core::godunov::AdvanceReport;
use swe_core::riemann::{
    ClassificationEvidence, ClassificationReport, ConstructionTag, GapProbe, RiemannSolution,
    Uniqueness, Wave, WaveKind,
};
use swe_core::State;

use crate::l1::ErrorNorm;

/// Everything a finished run knows about itself.
#[derive(Debug, Clone)]
pub struct RunReport {
    /// Cell-center abscissae shared by both profiles.
    pub xs: Vec<f64>,
    pub numeric: Vec<State>,
    /// Exact solution sampled at [`RunReport::xs`]; absent for profile
    /// initial data (no closed-form solution to compare against).
    pub exact: Option<Vec<State>>,
    pub l1_error: Option<f64>,
    pub norm: ErrorNorm,
    /// Classification of the initial jump, when available.
    pub classification: Option<ClassificationReport>,
    /// Construction the exact solution follows, when available.
    pub tag: Option<ConstructionTag>,
    pub advance: AdvanceReport,
    pub t_end: f64,
    pub wall: Duration,
}

/// The JSON summary emitted next to the CSV.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub l1_error: Option<f64>,
    pub verdict: String,
    pub wall_time_seconds: f64,
    pub n: usize,
    pub t_end: f64,
    pub steps: usize,
    pub max_courant: f64,
    pub cfl_warnings: usize,
    pub norm: String,
    pub construction: Option<String>,
}

impl RunReport {
    /// One-line statement of what the classification found.
    pub fn verdict(&self) -> String {
        let tag = self.tag.map(|t| t.to_string());
        match (&self.classification, tag) {
            (Some(c), tag) => {
                let used = tag.map(|t| format!(" via {t}")).unwrap_or_default();
                match c.uniqueness {
                    Uniqueness::Unique => format!("unique solution{used}"),
                    Uniqueness::MultipleThree => format!("three solutions{used}"),
                    Uniqueness::None => "no admissible solution".to_string(),
                }
            }
            (None, Some(t)) => format!("solved via {t} (unclassified)"),
            (None, None) => "unclassified".to_string(),
        }
    }

    pub fn summary(&self) -> RunSummary {
        RunSummary {
            l1_error: self.l1_error,
            verdict: self.verdict(),
            wall_time_seconds: self.wall.as_secs_f64(),
            n: self.numeric.len(),
            t_end: self.t_end,
            steps: self.advance.steps,
            max_courant: self.advance.max_courant,
            cfl_warnings: self.advance.cfl_warnings,
            norm: self.norm.to_string(),
            construction: self.tag.map(|t| t.to_string()),
        }
    }

    /// The CSV text: header `x,h,u,a,h_exact,u_exact,a_exact`, one row per
    /// cell, 17 significant digits (numbers round-trip exactly).
    pub fn csv(&self) -> String {
        let mut out = String::with_capacity(self.xs.len() * 160 + 64);
        out.push_str("x,h,u,a,h_exact,u_exact,a_exact\n");
        for (i, (x, s)) in self.xs.iter().zip(&self.numeric).enumerate() {
            let e = self
                .exact
                .as_ref()
                .map(|ex| ex[i])
                .unwrap_or(State::new(f64::NAN, f64::NAN, f64::NAN));
            let _ = writeln!(
                out,
                "{x:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                s.h, s.u, s.a, e.h, e.u, e.a
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.csv())
            .with_context(|| format!("cannot write {}", path.display()))
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(&self.summary())?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
    }
}

/// A gnuplot script plotting numeric points over the exact line for both
/// `h` and `u`, reading `csv_name` from its own directory.
pub fn gnuplot_script(csv_name: &str, label: &str) -> String {
    format!(
        r##"# Companion plot script; run `gnuplot {label}.gp` in this directory.
set datafile separator ","
set key autotitle columnhead
set key outside top center horizontal
set grid
set xlabel "x"
set terminal pngcairo size 1200,900
set output "{label}.png"
set multiplot layout 2,1 title "{label}"
set ylabel "h"
plot "{csv_name}" using 1:5 with lines lw 2 lc rgb "#d62728" title "exact", \
     "{csv_name}" using 1:2 with points pt 7 ps 0.35 lc rgb "#1f77b4" title "numeric"
set ylabel "u"
plot "{csv_name}" using 1:6 with lines lw 2 lc rgb "#d62728" title "exact", \
     "{csv_name}" using 1:3 with points pt 7 ps 0.35 lc rgb "#1f77b4" title "numeric"
unset multiplot
"##
    )
}

pub fn write_gnuplot(path: &Path, csv_name: &str, label: &str) -> Result<()> {
    std::fs::write(path, gnuplot_script(csv_name, label))
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Parse a CSV produced by [`RunReport::csv`] back into `(x, numeric,
/// exact)` rows.
pub fn parse_csv(text: &str) -> Result<Vec<(f64, State, State)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            anyhow::ensure!(
                line == "x,h,u,a,h_exact,u_exact,a_exact",
                "unexpected CSV header: {line}"
            );
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.parse::<f64>().with_context(|| format!("line {}", lineno + 1)))
            .collect::<Result<_>>()?;
        anyhow::ensure!(fields.len() == 7, "line {} has {} fields", lineno + 1, fields.len());
        rows.push((
            fields[0],
            State::new(fields[1], fields[2], fields[3]),
            State::new(fields[4], fields[5], fields[6]),
        ));
    }
    Ok(rows)
}

fn fmt_state(s: &State) -> String {
    format!("(h = {:.17e}, u = {:.17e}, a = {:.17e})", s.h, s.u, s.a)
}

fn fmt_probe(label: &str, p: &Option<GapProbe>, out: &mut String) {
    match p {
        Some(p) => {
            let _ = writeln!(
                out,
                "  {label}: {}\n    gap to backward two-curve = {:.17e} ({})",
                fmt_state(&p.state),
                p.gap,
                if p.gap > 0.0 { "above" } else { "at or below" }
            );
        }
        None => {
            let _ = writeln!(out, "  {label}: unreachable (no stationary contact)");
        }
    }
}

fn evidence_text(e: &ClassificationEvidence, out: &mut String) {
    match e {
        ClassificationEvidence::FastEntry {
            contact_then_partner,
            partner_then_contact,
            far_contact_reachable,
        } => {
            let _ = writeln!(out, "evidence (supercritical entry):");
            fmt_probe("contact-then-partner", contact_then_partner, out);
            fmt_probe("partner-then-contact", partner_then_contact, out);
            let _ = writeln!(out, "  far end of curve segment reachable: {far_contact_reachable}");
        }
        ClassificationEvidence::SlowEntry {
            sonic_then_contact,
            drop_then_partner,
            far_contact_reachable,
        } => {
            let _ = writeln!(out, "evidence (subcritical entry):");
            fmt_probe("sonic-then-contact", sonic_then_contact, out);
            fmt_probe("drop-then-partner", drop_then_partner, out);
            let _ = writeln!(out, "  far end of curve segment reachable: {far_contact_reachable}");
        }
        ClassificationEvidence::Reflected(inner) => {
            let _ = writeln!(out, "solved in the mirrored frame; mirrored-problem evidence:");
            evidence_text(inner, out);
        }
    }
}

fn wave_text(w: &Wave) -> String {
    let body = match w.kind {
        WaveKind::Shock { speed } => format!("shock at speed {speed:.17e}"),
        WaveKind::Rarefaction { head, tail, family } => format!(
            "family-{family:?} rarefaction over speeds [{head:.17e}, {tail:.17e}]"
        ),
        WaveKind::StationaryContact => "stationary contact at speed 0".to_string(),
        WaveKind::DryFront {
            left_edge,
            right_edge,
        } => format!("dry front over speeds [{left_edge:.17e}, {right_edge:.17e}]"),
    };
    format!("{body}\n      {} -> {}", fmt_state(&w.left), fmt_state(&w.right))
}

fn solution_text(i: usize, s: &RiemannSolution, out: &mut String) {
    let _ = writeln!(out, "solution {}: construction {}", i + 1, s.tag);
    let _ = writeln!(out, "  states:");
    for st in &s.states {
        let _ = writeln!(out, "    {}", fmt_state(st));
    }
    let _ = writeln!(out, "  waves:");
    if s.waves.is_empty() {
        let _ = writeln!(out, "    (none: both sides identical)");
    }
    for w in &s.waves {
        let _ = writeln!(out, "    {}", wave_text(w));
    }
}

/// Human-readable classification: verdict, probe evidence, and every
/// solution's wave list at full precision.
pub fn classification_text(report: &ClassificationReport) -> String {
    let mut out = String::new();
    let uniqueness = match report.uniqueness {
        Uniqueness::Unique => "unique",
        Uniqueness::MultipleThree => "three distinct solutions",
        Uniqueness::None => "none",
    };
    let _ = writeln!(
        out,
        "existence: {}, uniqueness: {}",
        if report.exists { "yes" } else { "no" },
        uniqueness
    );
    evidence_text(&report.evidence, &mut out);
    for (i, s) in report.solutions.iter().enumerate() {
        solution_text(i, s, &mut out);
    }
    out
}
