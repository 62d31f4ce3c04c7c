use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of fracture zones the generator supports.
pub const MAX_HUBS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointSet {
    /// Mean azimuth in degrees, measured counter-clockwise from the x axis.
    pub mean: f64,
    /// Half-width of the uniform azimuth window in degrees.
    pub spread: f64,
}

impl JointSet {
    pub const fn new(mean: f64, spread: f64) -> Self {
        Self { mean, spread }
    }

    /// `njs` sets evenly spaced over a half circle, starting along the x axis.
    pub fn evenly_spaced(njs: usize) -> Vec<JointSet> {
        (0..njs)
            .map(|k| JointSet::new(180.0 * k as f64 / njs as f64, DEFAULT_SPREAD))
            .collect()
    }
}

pub const DEFAULT_SPREAD: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ApertureMode {
    Fixed,
    /// Uniform on `[mean / 2, 3 mean / 2]`.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenerationMode {
    /// Stop right after the fracture that first connects the two x faces.
    Threshold,
    /// Run every generation.
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n_g: u32,
    pub n: u32,
    pub njs: usize,
    pub gamma: f64,
    pub alpha: f64,
    pub hub_growth: u32,
    pub back_growth: u32,
    pub n_fz: usize,
    pub joint_set_azimuths: Vec<JointSet>,
    pub aperture_mean: f64,
    pub aperture_mode: ApertureMode,
    pub seed: u64,
    pub l_min: f64,
    pub mode: GenerationMode,
    /// In fixed-count mode, fail when the finished network does not span.
    pub require_spanning: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self::with_domain(300)
    }
}

impl GeneratorConfig {
    /// Default parameter set for an `n x n` domain; `alpha` follows `5 n / 2`.
    pub fn with_domain(n: u32) -> Self {
        Self {
            n_g: 200,
            n,
            njs: 2,
            gamma: 0.55,
            alpha: default_alpha(n),
            hub_growth: 3,
            back_growth: 2,
            n_fz: 3,
            joint_set_azimuths: JointSet::evenly_spaced(2),
            aperture_mean: 3.0,
            aperture_mode: ApertureMode::Fixed,
            seed: 1,
            l_min: 2.0,
            mode: GenerationMode::Threshold,
            require_spanning: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, field: &str, reason: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::invalid(field, reason))
            }
        };
        check(self.gamma.is_finite() && self.gamma > 0.0, "gamma", "must be > 0")?;
        check(
            self.l_min.is_finite() && self.l_min > 0.0,
            "l_min",
            "must be > 0",
        )?;
        check(
            self.alpha.is_finite() && self.alpha > self.l_min,
            "alpha",
            "must exceed l_min",
        )?;
        check(self.n_g >= 1, "n_g", "must be >= 1")?;
        check(self.n >= 16, "n", "must be >= 16")?;
        check(self.n_fz <= MAX_HUBS, "n_fz", "must be in 0..=4")?;
        check(self.hub_growth >= 1, "hub_growth", "must be >= 1")?;
        check(self.back_growth >= 1, "back_growth", "must be >= 1")?;
        check(
            self.joint_set_azimuths.len() == self.njs,
            "joint_set_azimuths",
            "must have exactly njs entries",
        )?;
        check(
            self.joint_set_azimuths
                .iter()
                .all(|s| s.mean.is_finite() && s.spread.is_finite() && s.spread >= 0.0),
            "joint_set_azimuths",
            "means must be finite and spreads >= 0",
        )?;
        check(
            self.aperture_mean.is_finite() && self.aperture_mean > 0.0,
            "aperture_mean",
            "must be > 0",
        )?;
        Ok(())
    }

    /// Flat `key=value` lines, one per field, in declaration order.
    pub fn to_kv(&self) -> String {
        let sets = format_joint_sets(&self.joint_set_azimuths);
        [
            format!("n_g={}", self.n_g),
            format!("n={}", self.n),
            format!("njs={}", self.njs),
            format!("gamma={}", self.gamma),
            format!("alpha={}", self.alpha),
            format!("hub_growth={}", self.hub_growth),
            format!("back_growth={}", self.back_growth),
            format!("n_fz={}", self.n_fz),
            format!("joint_set_azimuths={sets}"),
            format!("aperture_mean={}", self.aperture_mean),
            format!("aperture_mode={}", self.aperture_mode),
            format!("seed={}", self.seed),
            format!("l_min={}", self.l_min),
            format!("mode={}", self.mode),
            format!("require_spanning={}", self.require_spanning),
        ]
        .join("\n")
            + "\n"
    }

    /// Names accepted by [`GeneratorConfig::set_key`].
    pub const KEYS: [&'static str; 15] = [
        "n_g",
        "n",
        "njs",
        "gamma",
        "alpha",
        "hub_growth",
        "back_growth",
        "n_fz",
        "joint_set_azimuths",
        "aperture_mean",
        "aperture_mode",
        "seed",
        "l_min",
        "mode",
        "require_spanning",
    ];

    /// Assign one field from its textual value. Derived defaults (`alpha`,
    /// `joint_set_azimuths`) are not recomputed here.
    pub fn set_key(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "n_g" => self.n_g = parse(value)?,
            "n" => self.n = parse(value)?,
            "njs" => self.njs = parse(value)?,
            "gamma" => self.gamma = parse(value)?,
            "alpha" => self.alpha = parse(value)?,
            "hub_growth" => self.hub_growth = parse(value)?,
            "back_growth" => self.back_growth = parse(value)?,
            "n_fz" => self.n_fz = parse(value)?,
            "joint_set_azimuths" => self.joint_set_azimuths = parse_joint_sets(value)?,
            "aperture_mean" => self.aperture_mean = parse(value)?,
            "aperture_mode" => self.aperture_mode = parse(value)?,
            "seed" => self.seed = parse(value)?,
            "l_min" => self.l_min = parse(value)?,
            "mode" => self.mode = parse(value)?,
            "require_spanning" => self.require_spanning = parse(value)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }
}

pub fn default_alpha(n: u32) -> f64 {
    5.0 * n as f64 / 2.0
}

fn parse<T: FromStr>(value: &str) -> std::result::Result<T, String>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| format!("cannot parse `{value}`: {e}"))
}

/// `mean:spread` pairs separated by commas, e.g. `0:5,90:5`. An empty value
/// means no joint sets.
pub fn parse_joint_sets(value: &str) -> std::result::Result<Vec<JointSet>, String> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|pair| {
            let (mean, spread) = pair
                .split_once(':')
                .ok_or_else(|| format!("joint set `{pair}` is not `mean:spread`"))?;
            Ok(JointSet::new(parse(mean.trim())?, parse(spread.trim())?))
        })
        .collect()
}

pub fn format_joint_sets(sets: &[JointSet]) -> String {
    sets.iter()
        .map(|s| format!("{}:{}", s.mean, s.spread))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for ApertureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ApertureMode::Fixed => "fixed",
            ApertureMode::Uniform => "uniform",
        })
    }
}

impl FromStr for ApertureMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fixed" => Ok(ApertureMode::Fixed),
            "uniform" | "uniform-range" => Ok(ApertureMode::Uniform),
            other => Err(format!("expected `fixed` or `uniform`, got `{other}`")),
        }
    }
}

impl fmt::Display for GenerationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenerationMode::Threshold => "threshold",
            GenerationMode::Fixed => "fixed",
        })
    }
}

impl FromStr for GenerationMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "threshold" => Ok(GenerationMode::Threshold),
            "fixed" => Ok(GenerationMode::Fixed),
            other => Err(format!("expected `threshold` or `fixed`, got `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_reference_parameter_set() {
        let c = GeneratorConfig::default();
        assert_eq!(c.n_g, 200);
        assert_eq!(c.n, 300);
        assert_eq!(c.njs, 2);
        assert_eq!(c.gamma, 0.55);
        assert_eq!(c.alpha, 750.0);
        assert_eq!(c.hub_growth, 3);
        assert_eq!(c.back_growth, 2);
        c.validate().unwrap();
    }

    #[test]
    fn kv_round_trip() {
        let mut c = GeneratorConfig::with_domain(128);
        c.joint_set_azimuths = vec![JointSet::new(30.0, 2.5), JointSet::new(120.0, 5.0)];
        c.aperture_mode = ApertureMode::Uniform;
        let mut back = GeneratorConfig::default();
        for line in c.to_kv().lines() {
            let (k, v) = line.split_once('=').unwrap();
            back.set_key(k, v).unwrap();
        }
        assert_eq!(back, c);
    }

    #[test]
    fn validation_names_field() {
        let mut c = GeneratorConfig::default();
        c.gamma = -1.0;
        match c.validate() {
            Err(Error::InvalidConfig { field, .. }) => assert_eq!(field, "gamma"),
            other => panic!("{other:?}"),
        }
        let mut c = GeneratorConfig::default();
        c.njs = 3;
        assert!(c.validate().is_err());
        let mut c = GeneratorConfig::default();
        c.n_fz = 5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn joint_set_parsing() {
        assert_eq!(
            parse_joint_sets("0:5, 90:5").unwrap(),
            vec![JointSet::new(0.0, 5.0), JointSet::new(90.0, 5.0)]
        );
        assert!(parse_joint_sets("0").is_err());
        assert!(parse_joint_sets("").unwrap().is_empty());
    }
}
