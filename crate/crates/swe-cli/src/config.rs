//! Declarative problem configuration: TOML files plus command-line
//! overrides, validated into a [`ProblemConfig`].

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use swe_core::riemann::ConstructionTag;
use swe_core::State;

use crate::l1::ErrorNorm;

/// Initial condition: either classical two-state Riemann data or an
/// explicit per-cell profile.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    Jump {
        left: State,
        right: State,
        split_x: f64,
    },
    Profile(Vec<State>),
}

/// Where the run artifacts go; `None` falls back to names derived from the
/// run label.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub gnuplot: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

/// A fully validated problem description.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemConfig {
    pub initial: InitialData,
    pub x0: f64,
    pub x1: f64,
    pub n: usize,
    pub t_end: f64,
    pub cfl: f64,
    pub g: f64,
    /// Constructions preferred at interfaces whose data admit several
    /// solutions; earlier entries win.  Empty keeps the solver's own order.
    pub preference: Vec<ConstructionTag>,
    pub norm: ErrorNorm,
    pub output: OutputPaths,
}

/// Command-line overrides applied on top of a config or fixture.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub prefer: Vec<ConstructionTag>,
}

impl ProblemConfig {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(n) = o.n {
            self.n = n;
        }
        if let Some(cfl) = o.cfl {
            self.cfl = cfl;
        }
        if let Some(t) = o.t_end {
            self.t_end = t;
        }
        if !o.prefer.is_empty() {
            self.preference = o.prefer.clone();
        }
    }

    /// Check the structural invariants; returns `self` for chaining.
    pub fn validate(&self) -> Result<&Self> {
        if !(self.t_end > 0.0) {
            bail!("t_end must be positive (got {})", self.t_end);
        }
        if self.n < 2 {
            bail!("n must be at least 2 (got {})", self.n);
        }
        if !(self.x1 > self.x0) {
            bail!("domain is empty: x0 = {}, x1 = {}", self.x0, self.x1);
        }
        if !(self.cfl > 0.0) {
            bail!("cfl must be positive (got {})", self.cfl);
        }
        if !(self.g > 0.0) {
            bail!("g must be positive (got {})", self.g);
        }
        let all_heights_ok = match &self.initial {
            InitialData::Jump { left, right, .. } => left.h >= 0.0 && right.h >= 0.0,
            InitialData::Profile(cells) => cells.iter().all(|s| s.h >= 0.0),
        };
        if !all_heights_ok {
            bail!("initial water heights must be nonnegative");
        }
        if let InitialData::Profile(cells) = &self.initial {
            if cells.len() != self.n {
                bail!(
                    "profile has {} rows but n = {}; they must agree",
                    cells.len(),
                    self.n
                );
            }
        }
        Ok(self)
    }
}

// ---------------------------------------------------------------------------
// TOML surface
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    domain: RawDomain,
    time: RawTime,
    #[serde(default)]
    physics: RawPhysics,
    left: Option<RawState>,
    right: Option<RawState>,
    #[serde(default)]
    profile: Vec<RawState>,
    #[serde(default)]
    solver: RawSolver,
    #[serde(default, rename = "error-norm")]
    error_norm: ErrorNorm,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    x0: f64,
    x1: f64,
    n: usize,
    #[serde(default)]
    split_x: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    t_end: f64,
    #[serde(default = "default_cfl")]
    cfl: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhysics {
    #[serde(default = "default_g")]
    g: f64,
}

impl Default for RawPhysics {
    fn default() -> Self {
        RawPhysics { g: default_g() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    h: f64,
    u: f64,
    a: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    #[serde(default)]
    preference: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    csv: Option<PathBuf>,
    gnuplot: Option<PathBuf>,
    json: Option<PathBuf>,
}

fn default_cfl() -> f64 {
    0.75
}

fn default_g() -> f64 {
    9.8
}

impl RawState {
    fn state(&self) -> State {
        State::new(self.h, self.u, self.a)
    }
}

/// Parse a comma-separated or repeated list of construction tags.
pub fn parse_tags<S: AsRef<str>>(items: &[S]) -> Result<Vec<ConstructionTag>> {
    let mut tags = Vec::new();
    for item in items {
        for piece in item.as_ref().split(',').filter(|p| !p.trim().is_empty()) {
            let tag = ConstructionTag::from_str(piece.trim())
                .map_err(|e| anyhow::anyhow!("{e} (expected one of a1,a2,a3,b1,b2,b3)"))?;
            if !tags.contains(&tag) {
                tags.push(tag);
            }
        }
    }
    Ok(tags)
}

/// Parse and validate a TOML problem description.
pub fn from_toml_str(text: &str) -> Result<ProblemConfig> {
    let raw: RawConfig = toml::from_str(text).context("malformed config")?;
    let initial = match (&raw.left, &raw.right, raw.profile.is_empty()) {
        (Some(l), Some(r), true) => InitialData::Jump {
            left: l.state(),
            right: r.state(),
            split_x: raw.domain.split_x,
        },
        (None, None, false) => {
            InitialData::Profile(raw.profile.iter().map(RawState::state).collect())
        }
        (None, None, true) => bail!("config needs either [left]/[right] or [[profile]] rows"),
        _ => bail!("give either both [left] and [right] or [[profile]] rows, not a mix"),
    };
    let cfg = ProblemConfig {
        initial,
        x0: raw.domain.x0,
        x1: raw.domain.x1,
        n: raw.domain.n,
        t_end: raw.time.t_end,
        cfl: raw.time.cfl,
        g: raw.physics.g,
        preference: parse_tags(&raw.solver.preference)?,
        norm: raw.error_norm,
        output: OutputPaths {
            csv: raw.output.csv,
            gnuplot: raw.output.gnuplot,
            json: raw.output.json,
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Read and validate a TOML problem file.
pub fn load(path: &Path) -> Result<ProblemConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    from_toml_str(&text).with_context(|| format!("in config {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [domain]
        x0 = -1.0
        x1 = 1.0
        n = 4

        [time]
        t_end = 0.1

        [left]
        h = 1.0
        u = 5.0
        a = 1.0

        [right]
        h = 1.2
        u = 4.0
        a = 1.2
    "#;

    #[test]
    fn minimal_jump_config_fills_defaults() {
        let cfg = from_toml_str(MINIMAL).unwrap();
        assert_eq!(cfg.cfl, 0.75);
        assert_eq!(cfg.g, 9.8);
        assert!(cfg.preference.is_empty());
        assert_eq!(cfg.norm, ErrorNorm::default());
        match cfg.initial {
            InitialData::Jump { left, split_x, .. } => {
                assert_eq!(left, State::new(1.0, 5.0, 1.0));
                assert_eq!(split_x, 0.0);
            }
            other => panic!("expected jump data, got {other:?}"),
        }
    }

    #[test]
    fn profile_rows_must_match_n() {
        let text = r#"
            [domain]
            x0 = 0.0
            x1 = 1.0
            n = 3

            [time]
            t_end = 0.05

            [[profile]]
            h = 1.0
            u = 0.0
            a = 0.0

            [[profile]]
            h = 0.5
            u = 0.0
            a = 0.1
        "#;
        let err = from_toml_str(text).unwrap_err();
        assert!(format!("{err:#}").contains("profile has 2 rows but n = 3"));
    }

    #[test]
    fn preference_strings_parse_case_insensitively() {
        let tags = parse_tags(&["A1,b3", "a2"]).unwrap();
        use ConstructionTag::*;
        assert_eq!(tags, vec![A1, B3, A2]);
        assert!(parse_tags(&["c9"]).is_err());
    }

    #[test]
    fn invalid_numbers_are_rejected() {
        let mut cfg = from_toml_str(MINIMAL).unwrap();
        cfg.t_end = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = from_toml_str(MINIMAL).unwrap();
        cfg.n = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = from_toml_str(MINIMAL).unwrap();
        if let InitialData::Jump { left, .. } = &mut cfg.initial {
            left.h = -0.5;
        }
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn overrides_replace_only_given_fields() {
        let mut cfg = from_toml_str(MINIMAL).unwrap();
        cfg.apply(&Overrides {
            n: Some(100),
            prefer: vec![ConstructionTag::A2],
            ..Default::default()
        });
        assert_eq!(cfg.n, 100);
        assert_eq!(cfg.t_end, 0.1);
        assert_eq!(cfg.preference, vec![ConstructionTag::A2]);
    }
}
