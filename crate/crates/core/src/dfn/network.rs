use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::GeneratorConfig;
use super::sample::HubSpec;
use crate::error::{Error, Result};
use crate::geometry::{Point, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FractureKind {
    Hub,
    Background,
}

impl fmt::Display for FractureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FractureKind::Hub => "hub",
            FractureKind::Background => "background",
        })
    }
}

impl FromStr for FractureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hub" => Ok(FractureKind::Hub),
            "background" => Ok(FractureKind::Background),
            other => Err(format!("unknown fracture kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fracture {
    pub id: usize,
    pub center: Point,
    /// Sampled length before clipping to the domain.
    pub length: f64,
    /// Degrees in `[0, 360)`.
    pub azimuth: f64,
    pub aperture: f64,
    pub kind: FractureKind,
    pub hub_id: Option<usize>,
    /// Trace clipped to the domain box.
    pub segment: Segment,
}

impl Fracture {
    #[allow(clippy::too_many_arguments)]
    /// Build a fracture from its center, length and azimuth, clipping the
    /// trace to `[0, n]^2`. Returns `None` when nothing of it remains inside.
    pub fn from_center(
        id: usize,
        center: Point,
        length: f64,
        azimuth: f64,
        aperture: f64,
        kind: FractureKind,
        hub_id: Option<usize>,
        n: f64,
    ) -> Option<Self> {
        let (s, c) = azimuth.to_radians().sin_cos();
        let h = 0.5 * length;
        let raw = Segment::new(
            Point::new(center.x - h * c, center.y - h * s),
            Point::new(center.x + h * c, center.y + h * s),
        );
        let segment = raw.clip_to_box(n, n)?;
        (segment.length() > 0.0).then_some(Self {
            id,
            center,
            length,
            azimuth,
            aperture,
            kind,
            hub_id,
            segment,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractureNetwork {
    /// Creation order; downstream source/sink selection relies on it.
    pub fractures: Vec<Fracture>,
    /// Side length of the square domain.
    pub domain: f64,
    pub config: GeneratorConfig,
    pub hubs: Vec<HubSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FractureRow {
    id: usize,
    x1: String,
    y1: String,
    x2: String,
    y2: String,
    aperture: String,
    kind: String,
    hub_id: String,
}

impl FractureNetwork {
    pub fn len(&self) -> usize {
        self.fractures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractures.is_empty()
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment> + '_ {
        self.fractures.iter().map(|f| &f.segment)
    }

    /// CSV with header `id,x1,y1,x2,y2,aperture,kind,hub_id`, six decimals.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for f in &self.fractures {
            w.serialize(FractureRow {
                id: f.id,
                x1: format!("{:.6}", f.segment.a.x),
                y1: format!("{:.6}", f.segment.a.y),
                x2: format!("{:.6}", f.segment.b.x),
                y2: format!("{:.6}", f.segment.b.y),
                aperture: format!("{:.6}", f.aperture),
                kind: f.kind.to_string(),
                hub_id: f.hub_id.map(|h| h.to_string()).unwrap_or_default(),
            })?;
        }
        if self.fractures.is_empty() {
            w.write_record(["id", "x1", "y1", "x2", "y2", "aperture", "kind", "hub_id"])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("ascii csv")
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::file(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    /// Read a network written by [`FractureNetwork::write_csv`]. Center,
    /// length and azimuth are recovered from the clipped trace; `config`
    /// supplies the domain size.
    pub fn read_csv<R: Read>(input: R, config: GeneratorConfig) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let mut fractures = Vec::new();
        for (row_idx, rec) in r.deserialize::<FractureRow>().enumerate() {
            let line = row_idx + 2;
            let rec = rec?;
            let num = |s: &str| -> Result<f64> {
                s.trim().parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{s}` is not a number"),
                })
            };
            let a = Point::new(num(&rec.x1)?, num(&rec.y1)?);
            let b = Point::new(num(&rec.x2)?, num(&rec.y2)?);
            let kind = rec
                .kind
                .parse()
                .map_err(|message| Error::Parse { line, message })?;
            let hub_id = if rec.hub_id.trim().is_empty() {
                None
            } else {
                Some(rec.hub_id.trim().parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad hub_id `{}`", rec.hub_id),
                })?)
            };
            let segment = Segment::new(a, b);
            let azimuth = super::sample::normalize_degrees(
                (b.y - a.y).atan2(b.x - a.x).to_degrees(),
            );
            fractures.push(Fracture {
                id: rec.id,
                center: Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y)),
                length: segment.length(),
                azimuth,
                aperture: num(&rec.aperture)?,
                kind,
                hub_id,
                segment,
            });
        }
        Ok(Self {
            fractures,
            domain: config.n as f64,
            config,
            hubs: Vec::new(),
        })
    }

    pub fn load_csv(path: &Path, config: GeneratorConfig) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::file(path, e))?;
        Self::read_csv(std::io::BufReader::new(file), config)
    }

    /// Network made of explicit traces, for hand-built scenarios.
    pub fn from_segments(
        domain: f64,
        aperture: f64,
        segments: impl IntoIterator<Item = Segment>,
    ) -> Self {
        let mut config = GeneratorConfig::with_domain(domain.round().max(16.0) as u32);
        config.aperture_mean = aperture;
        let fractures = segments
            .into_iter()
            .enumerate()
            .map(|(id, segment)| Fracture {
                id,
                center: Point::new(
                    0.5 * (segment.a.x + segment.b.x),
                    0.5 * (segment.a.y + segment.b.y),
                ),
                length: segment.length(),
                azimuth: super::sample::normalize_degrees(
                    (segment.b.y - segment.a.y)
                        .atan2(segment.b.x - segment.a.x)
                        .to_degrees(),
                ),
                aperture,
                kind: FractureKind::Background,
                hub_id: None,
                segment,
            })
            .collect();
        Self {
            fractures,
            domain,
            config,
            hubs: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_and_precision() {
        let net = FractureNetwork::from_segments(
            64.0,
            3.0,
            [Segment::new(Point::new(0.0, 1.0 / 3.0), Point::new(64.0, 2.0))],
        );
        let text = net.to_csv_string();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("id,x1,y1,x2,y2,aperture,kind,hub_id"));
        assert_eq!(
            lines.next(),
            Some("0,0.000000,0.333333,64.000000,2.000000,3.000000,background,")
        );
    }

    #[test]
    fn empty_network_still_has_header() {
        let net = FractureNetwork::from_segments(64.0, 3.0, []);
        assert_eq!(
            net.to_csv_string().trim(),
            "id,x1,y1,x2,y2,aperture,kind,hub_id"
        );
    }

    #[test]
    fn csv_read_back() {
        let net = FractureNetwork::from_segments(
            64.0,
            2.0,
            [
                Segment::new(Point::new(1.0, 1.0), Point::new(10.0, 5.0)),
                Segment::new(Point::new(3.0, 0.0), Point::new(3.0, 64.0)),
            ],
        );
        let text = net.to_csv_string();
        let back = FractureNetwork::read_csv(text.as_bytes(), net.config.clone()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back.fractures[1].segment, net.fractures[1].segment);
        assert_eq!(back.to_csv_string(), text);
    }

    #[test]
    fn clipped_construction() {
        let f = Fracture::from_center(
            0,
            Point::new(10.0, 10.0),
            100.0,
            0.0,
            3.0,
            FractureKind::Background,
            None,
            50.0,
        )
        .unwrap();
        assert_eq!(f.segment.a, Point::new(0.0, 10.0));
        assert_eq!(f.segment.b, Point::new(50.0, 10.0));
        assert_eq!(f.length, 100.0);
    }
}
