//! Planar segment primitives shared by the generator, the graph builder and
//! the rasterizer.

use serde::{Deserialize, Serialize};

/// Orientation determinants with magnitude at or below this value are treated
/// as collinear.
pub const ORIENTATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            self.x + t * (other.x - self.x),
            self.y + t * (other.y - self.y),
        )
    }
}

fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

fn dot(a: Point, b: Point) -> f64 {
    a.x * b.x + a.y * b.y
}

/// Signed area of the triangle `(a, b, c)` times two.
pub fn orientation(a: Point, b: Point, c: Point) -> f64 {
    cross(b.sub(a), c.sub(a))
}

fn sign(d: f64) -> i8 {
    if d > ORIENTATION_TOL {
        1
    } else if d < -ORIENTATION_TOL {
        -1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn min_x(&self) -> f64 {
        self.a.x.min(self.b.x)
    }

    pub fn max_x(&self) -> f64 {
        self.a.x.max(self.b.x)
    }

    pub fn min_y(&self) -> f64 {
        self.a.y.min(self.b.y)
    }

    pub fn max_y(&self) -> f64 {
        self.a.y.max(self.b.y)
    }

    /// Euclidean distance from `p` to the closed segment.
    pub fn distance_to(&self, p: Point) -> f64 {
        let d = self.b.sub(self.a);
        let len2 = dot(d, d);
        if len2 == 0.0 {
            return self.a.dist(p);
        }
        let t = (dot(p.sub(self.a), d) / len2).clamp(0.0, 1.0);
        self.a.lerp(self.b, t).dist(p)
    }

    /// Whether `p`, already known to be collinear with the segment, lies
    /// within its bounding box.
    fn covers_collinear(&self, p: Point) -> bool {
        let eps = ORIENTATION_TOL;
        p.x >= self.min_x() - eps
            && p.x <= self.max_x() + eps
            && p.y >= self.min_y() - eps
            && p.y <= self.max_y() + eps
    }

    /// Intersection of two closed segments.
    ///
    /// Endpoint contact counts as an intersection. For collinear overlap the
    /// midpoint of the shared interval is returned.
    pub fn intersection(&self, other: &Segment) -> Option<Point> {
        let (p, q) = (self, other);
        let d1 = sign(orientation(p.a, p.b, q.a));
        let d2 = sign(orientation(p.a, p.b, q.b));
        let d3 = sign(orientation(q.a, q.b, p.a));
        let d4 = sign(orientation(q.a, q.b, p.b));

        if d1 == 0 && d2 == 0 {
            return collinear_overlap(p, q);
        }

        if d1 * d2 < 0 && d3 * d4 < 0 {
            let r = p.b.sub(p.a);
            let s = q.b.sub(q.a);
            let t = cross(q.a.sub(p.a), s) / cross(r, s);
            return Some(p.a.lerp(p.b, t));
        }

        // touching configurations
        if d1 == 0 && p.covers_collinear(q.a) && d3 * d4 <= 0 {
            return Some(q.a);
        }
        if d2 == 0 && p.covers_collinear(q.b) && d3 * d4 <= 0 {
            return Some(q.b);
        }
        if d3 == 0 && q.covers_collinear(p.a) && d1 * d2 <= 0 {
            return Some(p.a);
        }
        if d4 == 0 && q.covers_collinear(p.b) && d1 * d2 <= 0 {
            return Some(p.b);
        }
        None
    }

    /// Clip to the axis-aligned box `[0, w] x [0, h]` (Liang-Barsky).
    pub fn clip_to_box(&self, w: f64, h: f64) -> Option<Segment> {
        let d = self.b.sub(self.a);
        let mut t0 = 0.0_f64;
        let mut t1 = 1.0_f64;
        let checks = [
            (-d.x, self.a.x),
            (d.x, w - self.a.x),
            (-d.y, self.a.y),
            (d.y, h - self.a.y),
        ];
        for (p, q) in checks {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
                continue;
            }
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
            if t0 > t1 {
                return None;
            }
        }
        let clamp = |pt: Point| Point::new(pt.x.clamp(0.0, w), pt.y.clamp(0.0, h));
        Some(Segment::new(
            clamp(self.a.lerp(self.b, t0)),
            clamp(self.a.lerp(self.b, t1)),
        ))
    }
}

fn collinear_overlap(p: &Segment, q: &Segment) -> Option<Point> {
    // project on the dominant axis of p (or q when p is degenerate)
    let dir = if p.length() > 0.0 {
        p.b.sub(p.a)
    } else {
        q.b.sub(q.a)
    };
    let origin = p.a;
    let proj = |pt: Point| dot(pt.sub(origin), dir);
    let (p0, p1) = minmax(proj(p.a), proj(p.b));
    let (q0, q1) = minmax(proj(q.a), proj(q.b));
    let lo = p0.max(q0);
    let hi = p1.min(q1);
    let len2 = dot(dir, dir);
    // tolerance in projected units
    let slack = ORIENTATION_TOL * len2.sqrt();
    if lo > hi + slack {
        return None;
    }
    if len2 == 0.0 {
        return (p.a.dist(q.a) <= ORIENTATION_TOL).then_some(p.a);
    }
    let mid = 0.5 * (lo + hi.max(lo)) / len2;
    Some(Point::new(origin.x + mid * dir.x, origin.y + mid * dir.y))
}

fn minmax(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
