//! Random draws used by the generator: truncated power-law lengths, hub
//! placement and fracture azimuths.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::config::{GeneratorConfig, JointSet};
use crate::error::{Error, Result};
use crate::geometry::Point;

/// Rejection-sampling cap for positions that must land inside the domain.
pub const MAX_PLACEMENT_RETRIES: usize = 1000;

/// Inverse CDF of the power law `p(l) ~ l^-gamma` truncated to
/// `[l_min, l_max]`, evaluated at `u` in `[0, 1)`.
///
/// `gamma == 1` is rejected; [`LengthLaw`] covers that case with the
/// logarithmic form.
pub fn sample_fracture_length(gamma: f64, l_min: f64, l_max: f64, u: f64) -> Result<f64> {
    if !(l_min > 0.0 && l_max > l_min) {
        return Err(Error::Domain(format!(
            "length bounds must satisfy 0 < l_min < l_max, got [{l_min}, {l_max}]"
        )));
    }
    if !(gamma > 0.0) || gamma == 1.0 {
        return Err(Error::Domain(format!(
            "gamma must be positive and != 1, got {gamma}"
        )));
    }
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain(format!("u must lie in [0, 1), got {u}")));
    }
    let e = 1.0 - gamma;
    let lo = l_min.powf(e);
    let hi = l_max.powf(e);
    Ok((lo + u * (hi - lo)).powf(1.0 / e).clamp(l_min, l_max))
}

/// Truncated power-law length distribution, any `gamma > 0`.
#[derive(Debug, Clone, Copy)]
pub struct LengthLaw {
    pub gamma: f64,
    pub l_min: f64,
    pub l_max: f64,
}

impl LengthLaw {
    pub fn new(gamma: f64, l_min: f64, l_max: f64) -> Result<Self> {
        if !(gamma > 0.0 && l_min > 0.0 && l_max > l_min) {
            return Err(Error::Domain(format!(
                "invalid length law gamma={gamma} on [{l_min}, {l_max}]"
            )));
        }
        Ok(Self {
            gamma,
            l_min,
            l_max,
        })
    }

    pub fn inverse_cdf(&self, u: f64) -> f64 {
        if self.gamma == 1.0 {
            (self.l_min.ln() + u * (self.l_max.ln() - self.l_min.ln()))
                .exp()
                .clamp(self.l_min, self.l_max)
        } else {
            // bounds already validated
            sample_fracture_length(self.gamma, self.l_min, self.l_max, u)
                .expect("validated length law")
        }
    }

    pub fn cdf(&self, l: f64) -> f64 {
        let l = l.clamp(self.l_min, self.l_max);
        if self.gamma == 1.0 {
            (l.ln() - self.l_min.ln()) / (self.l_max.ln() - self.l_min.ln())
        } else {
            let e = 1.0 - self.gamma;
            (l.powf(e) - self.l_min.powf(e)) / (self.l_max.powf(e) - self.l_min.powf(e))
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.inverse_cdf(rng.random::<f64>())
    }
}

/// Circular fracture zone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HubSpec {
    pub center: Point,
    pub radius: f64,
}

/// Draw `n_fz` hubs: centers from a Gaussian around the domain center with
/// standard deviation `n / 4` per axis (resampled until inside), radii
/// `round(10 + 10 U)`.
pub fn place_hubs<R: Rng + ?Sized>(config: &GeneratorConfig, rng: &mut R) -> Result<Vec<HubSpec>> {
    let n = config.n as f64;
    let normal = Normal::new(n / 2.0, n / 4.0).expect("positive sigma");
    (0..config.n_fz)
        .map(|hub| {
            let center = sample_inside(rng, n, |r| {
                Point::new(normal.sample(r), normal.sample(r))
            })
            .ok_or_else(|| {
                Error::GenerationFailed(format!(
                    "hub {hub}: no center inside the domain after {MAX_PLACEMENT_RETRIES} draws"
                ))
            })?;
            let radius = (10.0 + 10.0 * rng.random::<f64>()).round();
            Ok(HubSpec { center, radius })
        })
        .collect()
}

/// Rejection-sample a point inside `[0, n]^2`.
pub(crate) fn sample_inside<R, F>(rng: &mut R, n: f64, mut draw: F) -> Option<Point>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Point,
{
    (0..MAX_PLACEMENT_RETRIES)
        .map(|_| draw(rng))
        .find(|p| (0.0..=n).contains(&p.x) && (0.0..=n).contains(&p.y))
}

/// Directional law of a fracture population.
#[derive(Debug, Clone, Copy)]
pub enum AzimuthLaw<'a> {
    /// Uniform on `[0, 360)`; used inside fracture zones.
    Star,
    /// Uniform on `[0, 180)`; background without joint sets.
    HalfStar,
    /// Pick a set uniformly, then uniform within its window.
    Sets(&'a [JointSet]),
}

impl<'a> AzimuthLaw<'a> {
    pub fn background(sets: &'a [JointSet]) -> Self {
        if sets.is_empty() {
            AzimuthLaw::HalfStar
        } else {
            AzimuthLaw::Sets(sets)
        }
    }
}

/// Azimuth in degrees, normalized to `[0, 360)`.
pub fn sample_azimuth<R: Rng + ?Sized>(law: AzimuthLaw<'_>, rng: &mut R) -> f64 {
    let deg = match law {
        AzimuthLaw::Star => 360.0 * rng.random::<f64>(),
        AzimuthLaw::HalfStar => 180.0 * rng.random::<f64>(),
        AzimuthLaw::Sets(sets) => {
            let set = sets[rng.random_range(0..sets.len())];
            set.mean + set.spread * (2.0 * rng.random::<f64>() - 1.0)
        }
    };
    normalize_degrees(deg)
}

pub(crate) fn normalize_degrees(deg: f64) -> f64 {
    let d = deg.rem_euclid(360.0);
    if d >= 360.0 {
        0.0
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn length_bounds() {
        assert_eq!(sample_fracture_length(0.55, 1.0, 750.0, 0.0).unwrap(), 1.0);
        let top = sample_fracture_length(0.55, 1.0, 750.0, 1.0 - f64::EPSILON).unwrap();
        assert!((top - 750.0).abs() < 1e-9, "{top}");
    }

    #[test]
    fn length_errors() {
        assert!(sample_fracture_length(1.0, 1.0, 750.0, 0.5).is_err());
        assert!(sample_fracture_length(0.5, 2.0, 2.0, 0.5).is_err());
        assert!(sample_fracture_length(-0.5, 1.0, 2.0, 0.5).is_err());
        assert!(sample_fracture_length(0.5, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn length_monotonicity_flips_at_unit_gamma() {
        let a = sample_fracture_length(0.55, 2.0, 100.0, 0.2).unwrap();
        let b = sample_fracture_length(0.55, 2.0, 100.0, 0.8).unwrap();
        assert!(a < b);
        // the inverse CDF is monotone in u for every gamma; the exponent
        // 1/(1-gamma) changes sign but so does the bracket's direction
        let a = sample_fracture_length(1.8, 2.0, 100.0, 0.2).unwrap();
        let b = sample_fracture_length(1.8, 2.0, 100.0, 0.8).unwrap();
        assert!(a < b);
    }

    #[test]
    fn log_form_at_unit_gamma() {
        let law = LengthLaw::new(1.0, 1.0, 100.0).unwrap();
        assert!((law.inverse_cdf(0.5) - 10.0).abs() < 1e-12);
        assert!((law.cdf(10.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn no_hubs() {
        let mut cfg = GeneratorConfig::default();
        cfg.n_fz = 0;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(place_hubs(&cfg, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn three_hubs_inside_with_radii_in_range() {
        let mut cfg = GeneratorConfig::with_domain(128);
        cfg.n_fz = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let hubs = place_hubs(&cfg, &mut rng).unwrap();
        assert_eq!(hubs.len(), 3);
        for h in hubs {
            assert!((0.0..=128.0).contains(&h.center.x));
            assert!((0.0..=128.0).contains(&h.center.y));
            assert!((10.0..=20.0).contains(&h.radius));
            assert_eq!(h.radius, h.radius.round());
        }
    }

    #[test]
    fn set_azimuths_stay_in_windows() {
        let sets = [JointSet::new(0.0, 5.0), JointSet::new(90.0, 5.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let az = sample_azimuth(AzimuthLaw::Sets(&sets), &mut rng);
            assert!((0.0..360.0).contains(&az));
            let m = az.rem_euclid(180.0);
            let d0 = m.min(180.0 - m);
            let d90 = (m - 90.0).abs();
            assert!(d0 <= 5.0 + 1e-9 || d90 <= 5.0 + 1e-9, "{az}");
        }
    }

    #[test]
    fn half_star_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10_000 {
            let az = sample_azimuth(AzimuthLaw::HalfStar, &mut rng);
            assert!((0.0..180.0).contains(&az));
        }
    }
}
