//! Flat key=value configuration with dotted keys.
//!
//! The format is one `key = value` pair per line, `#` comments, no
//! sections. Dotted keys group related knobs (`ctx.N`, `s_grid.points`);
//! command-line flags of the same dotted names override file values. The
//! resolved map always contains every defaulted key, so a report's config
//! echo is complete.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::bounds::BoundContext;
use crate::error::{Error, Result};
use crate::specfun::DimensionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Orthogonality,
    Lemma1,
    ZeroSpacing,
    BoundSweep,
    SigmaScaling,
    ZeroCensus,
    Harnack,
    Jensen,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 8] = [
        ScenarioKind::Orthogonality,
        ScenarioKind::Lemma1,
        ScenarioKind::ZeroSpacing,
        ScenarioKind::BoundSweep,
        ScenarioKind::SigmaScaling,
        ScenarioKind::ZeroCensus,
        ScenarioKind::Harnack,
        ScenarioKind::Jensen,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Orthogonality => "orthogonality",
            ScenarioKind::Lemma1 => "lemma1",
            ScenarioKind::ZeroSpacing => "zero-spacing",
            ScenarioKind::BoundSweep => "bound-sweep",
            ScenarioKind::SigmaScaling => "sigma-scaling",
            ScenarioKind::ZeroCensus => "zero-census",
            ScenarioKind::Harnack => "harnack",
            ScenarioKind::Jensen => "jensen",
        }
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScenarioKind::ALL
            .iter()
            .find(|k| k.name() == s)
            .copied()
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown scenario '{s}'; expected one of {}",
                    ScenarioKind::ALL
                        .iter()
                        .map(|k| k.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parse the key=value text format into an override map.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key = value, got '{line}'", lineno + 1))
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Per-scenario defaults layered under the base defaults. Every knob a
/// scenario reads appears here, so the config echo is complete.
fn defaults(kind: ScenarioKind) -> BTreeMap<String, String> {
    let mut m: BTreeMap<String, String> = BTreeMap::new();
    let e = std::f64::consts::E;
    let put = |m: &mut BTreeMap<String, String>, k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    put(&mut m, "scenario", kind.name().to_string());
    put(&mut m, "seed", "42".to_string());
    put(&mut m, "dim.D", "4,5,6".to_string());
    put(&mut m, "ctx.N", "2".to_string());
    put(&mut m, "ctx.T0", "1".to_string());
    put(&mut m, "ctx.s_hat", "1".to_string());
    put(&mut m, "ctx.C0", "1".to_string());
    put(&mut m, "ctx.C4", "1".to_string());
    put(&mut m, "ctx.C3_over_C2", "4".to_string());
    put(&mut m, "ctx.t0_4d", format!("{}", 4.0 * crate::bounds::M_PION_GEV * crate::bounds::M_PION_GEV));
    put(&mut m, "ctx.eps", "0".to_string());
    put(&mut m, "ctx.delta1_frac", "0.001".to_string());
    put(&mut m, "s_grid.start", format!("{}", e.powi(2)));
    put(&mut m, "s_grid.stop", format!("{}", e.powi(10)));
    put(&mut m, "s_grid.points", "9".to_string());
    put(&mut m, "s_grid.spacing", "log".to_string());
    put(&mut m, "model.kind", "gray_disk".to_string());
    put(&mut m, "model.g", "0.8".to_string());
    match kind {
        ScenarioKind::Orthogonality => {
            put(&mut m, "dim.D", "4,5,6,7".to_string());
            put(&mut m, "orthogonality.l_max", "12".to_string());
        }
        ScenarioKind::Lemma1 => {
            put(&mut m, "lemma1.trials", "10000".to_string());
            put(&mut m, "lemma1.l_max", "200".to_string());
        }
        ScenarioKind::ZeroSpacing => {
            put(&mut m, "zero_spacing.l_list", "10,50,200".to_string());
            put(&mut m, "zero_spacing.lambdas", "0.5,1,2".to_string());
        }
        ScenarioKind::BoundSweep => {
            put(&mut m, "s_grid.start", format!("{}", e.powi(6)));
            put(&mut m, "s_grid.points", "7".to_string());
            put(&mut m, "bound_sweep.t_fracs", "0.04,0.16,0.36".to_string());
        }
        ScenarioKind::SigmaScaling => {}
        ScenarioKind::ZeroCensus => {
            put(&mut m, "dim.D", "5".to_string());
            put(&mut m, "s_grid.start", format!("{}", e.powi(4)));
            put(&mut m, "s_grid.points", "5".to_string());
            // scan radius = multiplier / (ln s)^2, wide enough to catch the
            // first few amplitude zeros past the guaranteed zero-free disk
            put(&mut m, "zero_census.scan_mult", "20".to_string());
        }
        ScenarioKind::Harnack => {
            put(&mut m, "dim.D", "5".to_string());
            put(&mut m, "s_grid.start", format!("{}", e.powi(6)));
            put(&mut m, "s_grid.points", "3".to_string());
            put(&mut m, "harnack.samples", "1000".to_string());
            put(&mut m, "harnack.r_list", "0.1,0.3,0.5".to_string());
            put(&mut m, "harnack.r0_frac", "0.5".to_string());
        }
        ScenarioKind::Jensen => {
            put(&mut m, "dim.D", "5".to_string());
            put(&mut m, "s_grid.start", format!("{}", e.powi(4)));
            put(&mut m, "s_grid.points", "4".to_string());
            put(&mut m, "jensen.radii_frac", "0.1,0.25,0.5".to_string());
        }
    }
    m
}

/// A fully resolved configuration: defaults merged with file values and
/// command-line overrides, with typed accessors that name the offending key
/// in every error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedConfig {
    map: BTreeMap<String, String>,
    kind: ScenarioKind,
}

impl ResolvedConfig {
    /// Layer overrides on the scenario defaults. `overrides` wins over
    /// `file`, both win over defaults. Unknown keys are rejected so typos
    /// fail loudly.
    pub fn resolve(
        kind: ScenarioKind,
        file: &BTreeMap<String, String>,
        overrides: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut map = defaults(kind);
        for (k, v) in file.iter().chain(overrides.iter()) {
            if k == "scenario" {
                // the scenario choice comes from the caller; a config-file
                // scenario key must agree with it
                let named: ScenarioKind = v.parse()?;
                if named != kind {
                    return Err(Error::Config(format!(
                        "config names scenario '{v}' but '{}' was requested",
                        kind.name()
                    )));
                }
                continue;
            }
            if !map.contains_key(k) {
                return Err(Error::Config(format!(
                    "unknown config key '{k}' for scenario '{}'",
                    kind.name()
                )));
            }
            map.insert(k.clone(), v.clone());
        }
        let cfg = ResolvedConfig { map, kind };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let ctx = self.bound_context()?;
        let (start, _stop, points, _) = self.s_grid_raw()?;
        if points < 1 {
            return Err(Error::Config("s_grid.points: must be >= 1".to_string()));
        }
        if start <= ctx.s_hat {
            return Err(Error::Config(format!(
                "s_grid.start: {start} must exceed ctx.s_hat = {}",
                ctx.s_hat
            )));
        }
        self.seed()?;
        self.dims()?;
        Ok(())
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    /// The full resolved map, for the report's config echo.
    pub fn echo(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Config(format!("missing config key '{key}'")))
    }

    pub fn get_f64(&self, key: &str) -> Result<f64> {
        self.raw(key)?
            .parse()
            .map_err(|_| Error::Config(format!("{key}: expected a number, got '{}'", self.map[key])))
    }

    pub fn get_u64(&self, key: &str) -> Result<u64> {
        self.raw(key)?
            .parse()
            .map_err(|_| Error::Config(format!("{key}: expected an integer, got '{}'", self.map[key])))
    }

    pub fn get_str(&self, key: &str) -> Result<&str> {
        self.raw(key)
    }

    pub fn get_f64_list(&self, key: &str) -> Result<Vec<f64>> {
        self.raw(key)?
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{key}: bad list entry '{p}'")))
            })
            .collect()
    }

    pub fn get_u64_list(&self, key: &str) -> Result<Vec<u64>> {
        self.raw(key)?
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{key}: bad list entry '{p}'")))
            })
            .collect()
    }

    pub fn seed(&self) -> Result<u64> {
        self.get_u64("seed")
    }

    pub fn dims(&self) -> Result<Vec<DimensionSpec>> {
        self.get_u64_list("dim.D")?
            .into_iter()
            .map(|d| {
                DimensionSpec::new(d as u32)
                    .map_err(|e| Error::Config(format!("dim.D: {e}")))
            })
            .collect()
    }

    pub fn bound_context(&self) -> Result<BoundContext> {
        Ok(BoundContext {
            n_exp: self.get_f64("ctx.N")?,
            t0: self.get_f64("ctx.T0")?,
            s_hat: self.get_f64("ctx.s_hat")?,
            c0: self.get_f64("ctx.C0")?,
            c4: self.get_f64("ctx.C4")?,
            t0_4d: self.get_f64("ctx.t0_4d")?,
            eps: self.get_f64("ctx.eps")?,
            c3_over_c2: self.get_f64("ctx.C3_over_C2")?,
            delta1_frac: self.get_f64("ctx.delta1_frac")?,
            lemma2_bare: false,
        })
    }

    fn s_grid_raw(&self) -> Result<(f64, f64, u64, bool)> {
        let spacing = self.get_str("s_grid.spacing")?;
        let log = match spacing {
            "log" => true,
            "linear" => false,
            other => {
                return Err(Error::Config(format!(
                    "s_grid.spacing: expected 'log' or 'linear', got '{other}'"
                )))
            }
        };
        Ok((
            self.get_f64("s_grid.start")?,
            self.get_f64("s_grid.stop")?,
            self.get_u64("s_grid.points")?,
            log,
        ))
    }

    /// The energy grid, materialized.
    pub fn s_grid(&self) -> Result<Vec<f64>> {
        let (start, stop, points, log) = self.s_grid_raw()?;
        if points == 1 {
            return Ok(vec![start]);
        }
        let n = points as usize;
        Ok((0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                if log {
                    (start.ln() + f * (stop.ln() - start.ln())).exp()
                } else {
                    start + f * (stop - start)
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_text() {
        let m = parse_config_text("ctx.N = 3.0\n# comment\n\nseed=7 # trailing\n").unwrap();
        assert_eq!(m["ctx.N"], "3.0");
        assert_eq!(m["seed"], "7");
        assert!(parse_config_text("just words\n").is_err());
    }

    #[test]
    fn defaults_are_complete_and_override() {
        let cfg = ResolvedConfig::resolve(
            ScenarioKind::SigmaScaling,
            &BTreeMap::new(),
            &BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(cfg.seed().unwrap(), 42);
        assert_eq!(cfg.s_grid().unwrap().len(), 9);
        let ctx = cfg.bound_context().unwrap();
        assert_eq!(ctx.n_exp, 2.0);

        let mut over = BTreeMap::new();
        over.insert("ctx.N".to_string(), "3".to_string());
        let cfg = ResolvedConfig::resolve(ScenarioKind::SigmaScaling, &BTreeMap::new(), &over)
            .unwrap();
        assert_eq!(cfg.bound_context().unwrap().n_exp, 3.0);
    }

    #[test]
    fn rejects_unknown_key_and_bad_values() {
        let mut over = BTreeMap::new();
        over.insert("ctx.bogus".to_string(), "1".to_string());
        assert!(
            ResolvedConfig::resolve(ScenarioKind::Lemma1, &BTreeMap::new(), &over).is_err()
        );
        let mut over = BTreeMap::new();
        over.insert("s_grid.start".to_string(), "0.5".to_string());
        // start below s_hat = 1
        assert!(
            ResolvedConfig::resolve(ScenarioKind::SigmaScaling, &BTreeMap::new(), &over)
                .is_err()
        );
    }

    #[test]
    fn scenario_names_round_trip() {
        for k in ScenarioKind::ALL {
            assert_eq!(k.name().parse::<ScenarioKind>().unwrap(), k);
        }
        assert!("nope".parse::<ScenarioKind>().is_err());
    }

    #[test]
    fn log_grid_is_geometric() {
        let cfg = ResolvedConfig::resolve(
            ScenarioKind::SigmaScaling,
            &BTreeMap::new(),
            &BTreeMap::new(),
        )
        .unwrap();
        let g = cfg.s_grid().unwrap();
        let r0 = g[1] / g[0];
        let r1 = g[8] / g[7];
        assert!((r0 - r1).abs() < 1e-9 * r0);
    }

    #[test]
    fn config_scenario_key_must_agree() {
        let mut file = BTreeMap::new();
        file.insert("scenario".to_string(), "lemma1".to_string());
        assert!(
            ResolvedConfig::resolve(ScenarioKind::Jensen, &file, &BTreeMap::new()).is_err()
        );
        assert!(
            ResolvedConfig::resolve(ScenarioKind::Lemma1, &file, &BTreeMap::new()).is_ok()
        );
    }
}
