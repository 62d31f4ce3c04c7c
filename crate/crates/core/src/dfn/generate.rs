use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::config::{ApertureMode, GenerationMode, GeneratorConfig};
use super::network::{Fracture, FractureKind, FractureNetwork};
use super::sample::{place_hubs, sample_azimuth, sample_inside, AzimuthLaw, HubSpec, LengthLaw};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{Axis, SpanningTracker};

/// Grow a fracture network generation by generation.
///
/// At generation `t` (1-based) every hub spawns one fracture when
/// `t % hub_growth == 0`, then the background spawns one when
/// `t % back_growth == 0`. In threshold mode growth stops right after the
/// fracture that first links the two x faces.
pub fn generate_network(config: &GeneratorConfig) -> Result<FractureNetwork> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let hubs = place_hubs(config, &mut rng)?;
    let law = LengthLaw::new(config.gamma, config.l_min, config.alpha)?;
    let n = config.n as f64;
    let mut tracker = SpanningTracker::new(n, (config.alpha / 8.0).max(1.0), Axis::X);

    let mut fractures: Vec<Fracture> = Vec::new();
    let mut spans = false;
    let finish = |fractures, hubs| FractureNetwork {
        fractures,
        domain: n,
        config: config.clone(),
        hubs,
    };

    for t in 1..=config.n_g {
        let mut spawned = Vec::new();
        if t % config.hub_growth == 0 {
            for (h, hub) in hubs.iter().enumerate() {
                spawned.push(spawn_hub(config, &law, hub, h, fractures.len() + spawned.len(), &mut rng)?);
            }
        }
        if t % config.back_growth == 0 {
            spawned.push(spawn_background(config, &law, fractures.len() + spawned.len(), &mut rng)?);
        }
        for f in spawned {
            spans = tracker.add(f.segment, f.aperture);
            fractures.push(f);
            if spans && config.mode == GenerationMode::Threshold {
                return Ok(finish(fractures, hubs));
            }
        }
    }

    match config.mode {
        GenerationMode::Threshold => Err(Error::GenerationFailed(format!(
            "no spanning cluster after {} generations ({} fractures)",
            config.n_g,
            fractures.len()
        ))),
        GenerationMode::Fixed if config.require_spanning && !spans => Err(Error::GenerationFailed(
            format!("fixed-count network of {} fractures does not span", fractures.len()),
        )),
        GenerationMode::Fixed => Ok(finish(fractures, hubs)),
    }
}

fn aperture<R: Rng + ?Sized>(config: &GeneratorConfig, rng: &mut R) -> f64 {
    match config.aperture_mode {
        ApertureMode::Fixed => config.aperture_mean,
        ApertureMode::Uniform => config.aperture_mean * (0.5 + rng.random::<f64>()),
    }
}

fn spawn_hub<R: Rng + ?Sized>(
    config: &GeneratorConfig,
    law: &LengthLaw,
    hub: &HubSpec,
    hub_id: usize,
    id: usize,
    rng: &mut R,
) -> Result<Fracture> {
    let n = config.n as f64;
    let offset = Normal::new(0.0, hub.radius).expect("positive radius");
    let center = sample_inside(rng, n, |r| {
        Point::new(
            hub.center.x + offset.sample(r),
            hub.center.y + offset.sample(r),
        )
    })
    .ok_or_else(|| Error::GenerationFailed(format!("hub {hub_id}: no fracture center inside the domain")))?;
    let azimuth = sample_azimuth(AzimuthLaw::Star, rng);
    let length = law.sample(rng);
    let aperture = aperture(config, rng);
    Fracture::from_center(id, center, length, azimuth, aperture, FractureKind::Hub, Some(hub_id), n)
        .ok_or_else(|| Error::GenerationFailed(format!("fracture {id} degenerate after clipping")))
}

fn spawn_background<R: Rng + ?Sized>(
    config: &GeneratorConfig,
    law: &LengthLaw,
    id: usize,
    rng: &mut R,
) -> Result<Fracture> {
    let n = config.n as f64;
    let center = Point::new(n * rng.random::<f64>(), n * rng.random::<f64>());
    let azimuth = sample_azimuth(AzimuthLaw::background(&config.joint_set_azimuths), rng);
    let length = law.sample(rng);
    let aperture = aperture(config, rng);
    Fracture::from_center(id, center, length, azimuth, aperture, FractureKind::Background, None, n)
        .ok_or_else(|| Error::GenerationFailed(format!("fracture {id} degenerate after clipping")))
}
