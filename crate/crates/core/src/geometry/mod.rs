//! Domains, points and the deterministic geometry built on them.
//!
//! Coordinate conventions: disks, annuli, balls and shells are centred at the
//! origin; squares and tori occupy `[0, L]^2`; intervals occupy `[0, L]`.

mod hyperbolic;
mod hypersphere;
mod special;
mod visibility;

pub use hyperbolic::hyperbolic_distance;
pub use hypersphere::{
    cap_area, intersection_volume, sphere_surface, unit_ball_volume, MAX_DIMENSION,
};
pub use special::reg_incomplete_beta;
pub use visibility::{segment_hits_ball, visibility};

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use smallvec::SmallVec;

use crate::error::{invalid, Result};

pub type Coords = SmallVec<[f64; 3]>;

/// A position in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Coords,
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() {
            return Err(invalid("a point needs at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid(format!("non-finite coordinate in {coords:?}")));
        }
        Ok(Self {
            coords: Coords::from_slice(coords),
        })
    }

    pub fn x(x: f64) -> Self {
        Self {
            coords: smallvec::smallvec![x],
        }
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Self {
            coords: smallvec::smallvec![x, y],
        }
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        Self {
            coords: smallvec::smallvec![x, y, z],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// Plain Euclidean distance (no periodic wrapping).
    pub fn distance(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// A circular obstacle inside a square domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstacle {
    pub center: Point,
    pub radius: f64,
}

impl Obstacle {
    pub fn new(x: f64, y: f64, radius: f64) -> Self {
        Self {
            center: Point::xy(x, y),
            radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Disk { radius: f64 },
    Annulus { inner: f64, outer: f64 },
    Square { side: f64, obstacles: Vec<Obstacle> },
    /// Solid ball in three dimensions.
    Sphere { radius: f64 },
    SphericalShell { inner: f64, outer: f64 },
    /// Flat two-torus with side `side`.
    Torus { side: f64 },
    Interval { length: f64 },
}

/// A validated bounded region.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    shape: Shape,
}

/// Obstructed squares whose obstacles cover more than this fraction are
/// rejected; rejection sampling would be too slow.
pub const MAX_OBSTACLE_FRACTION: f64 = 0.9;

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

impl Domain {
    pub fn new(shape: Shape) -> Result<Self> {
        match &shape {
            Shape::Disk { radius } | Shape::Sphere { radius } => positive("radius", *radius)?,
            Shape::Annulus { inner, outer } | Shape::SphericalShell { inner, outer } => {
                positive("inner radius", *inner)?;
                positive("outer radius", *outer)?;
                if inner >= outer {
                    return Err(invalid(format!(
                        "inner radius {inner} must be below outer radius {outer}"
                    )));
                }
            }
            Shape::Square { side, obstacles } => {
                positive("side", *side)?;
                let mut covered = 0.0;
                for (k, ob) in obstacles.iter().enumerate() {
                    positive("obstacle radius", ob.radius)?;
                    if ob.center.dim() != 2 || !ob.center.is_finite() {
                        return Err(invalid(format!("obstacle {k} needs a finite 2-D centre")));
                    }
                    if ob.radius >= side / 2.0 {
                        return Err(invalid(format!(
                            "obstacle {k} radius {} must be below half the side",
                            ob.radius
                        )));
                    }
                    let c = ob.center.coords();
                    if c.iter().any(|&v| v - ob.radius <= 0.0 || v + ob.radius >= *side) {
                        return Err(invalid(format!("obstacle {k} must lie strictly inside the square")));
                    }
                    for (m, other) in obstacles.iter().enumerate().take(k) {
                        if ob.center.distance(&other.center) <= ob.radius + other.radius {
                            return Err(invalid(format!("obstacles {m} and {k} overlap")));
                        }
                    }
                    covered += PI * ob.radius * ob.radius;
                }
                if covered > MAX_OBSTACLE_FRACTION * side * side {
                    return Err(invalid("obstacles cover more than 90% of the square"));
                }
            }
            Shape::Torus { side } => positive("side", *side)?,
            Shape::Interval { length } => positive("length", *length)?,
        }
        Ok(Self { shape })
    }

    pub fn disk(radius: f64) -> Result<Self> {
        Self::new(Shape::Disk { radius })
    }

    pub fn annulus(inner: f64, outer: f64) -> Result<Self> {
        Self::new(Shape::Annulus { inner, outer })
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::new(Shape::Square {
            side,
            obstacles: Vec::new(),
        })
    }

    pub fn square_with_obstacles(side: f64, obstacles: Vec<Obstacle>) -> Result<Self> {
        Self::new(Shape::Square { side, obstacles })
    }

    pub fn sphere(radius: f64) -> Result<Self> {
        Self::new(Shape::Sphere { radius })
    }

    pub fn shell(inner: f64, outer: f64) -> Result<Self> {
        Self::new(Shape::SphericalShell { inner, outer })
    }

    pub fn torus(side: f64) -> Result<Self> {
        Self::new(Shape::Torus { side })
    }

    pub fn interval(length: f64) -> Result<Self> {
        Self::new(Shape::Interval { length })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        match self.shape {
            Shape::Interval { .. } => 1,
            Shape::Disk { .. } | Shape::Annulus { .. } | Shape::Square { .. } | Shape::Torus { .. } => 2,
            Shape::Sphere { .. } | Shape::SphericalShell { .. } => 3,
        }
    }

    /// Lebesgue measure (length, area or volume).
    pub fn measure(&self) -> f64 {
        match &self.shape {
            Shape::Disk { radius } => PI * radius * radius,
            Shape::Annulus { inner, outer } => PI * (outer * outer - inner * inner),
            Shape::Square { side, obstacles } => {
                side * side - obstacles.iter().map(|o| PI * o.radius * o.radius).sum::<f64>()
            }
            Shape::Sphere { radius } => 4.0 / 3.0 * PI * radius.powi(3),
            Shape::SphericalShell { inner, outer } => 4.0 / 3.0 * PI * (outer.powi(3) - inner.powi(3)),
            Shape::Torus { side } => side * side,
            Shape::Interval { length } => *length,
        }
    }

    /// Largest distance between two points of the domain (in the domain metric).
    pub fn diameter(&self) -> f64 {
        match &self.shape {
            Shape::Disk { radius } | Shape::Sphere { radius } => 2.0 * radius,
            Shape::Annulus { outer, .. } | Shape::SphericalShell { outer, .. } => 2.0 * outer,
            Shape::Square { side, .. } => side * 2f64.sqrt(),
            Shape::Torus { side } => side * 2f64.sqrt() / 2.0,
            Shape::Interval { length } => *length,
        }
    }

    /// True when every segment between two domain points stays in the domain.
    pub fn is_convex(&self) -> bool {
        match &self.shape {
            Shape::Annulus { .. } | Shape::SphericalShell { .. } => false,
            Shape::Square { obstacles, .. } => obstacles.is_empty(),
            // the torus has no boundary, so line of sight is never blocked
            Shape::Torus { .. } => true,
            _ => true,
        }
    }

    /// Axis-aligned bounding box `(lower, upper)`.
    pub fn bounding_box(&self) -> (Coords, Coords) {
        let d = self.dim();
        let (lo, hi) = match &self.shape {
            Shape::Disk { radius } | Shape::Sphere { radius } => (-radius, *radius),
            Shape::Annulus { outer, .. } | Shape::SphericalShell { outer, .. } => (-outer, *outer),
            Shape::Square { side, .. } | Shape::Torus { side } => (0.0, *side),
            Shape::Interval { length } => (0.0, *length),
        };
        (smallvec::smallvec![lo; d], smallvec::smallvec![hi; d])
    }

    /// Membership test (closed domain; obstacle and hole boundaries belong to it).
    pub fn contains(&self, p: &Point) -> bool {
        if p.dim() != self.dim() || !p.is_finite() {
            return false;
        }
        let c = p.coords();
        match &self.shape {
            Shape::Disk { radius } | Shape::Sphere { radius } => p.norm() <= *radius,
            Shape::Annulus { inner, outer } | Shape::SphericalShell { inner, outer } => {
                let r = p.norm();
                r >= *inner && r <= *outer
            }
            Shape::Square { side, obstacles } => {
                c.iter().all(|&v| (0.0..=*side).contains(&v))
                    && obstacles.iter().all(|o| p.distance(&o.center) >= o.radius)
            }
            Shape::Torus { side } => c.iter().all(|&v| (0.0..=*side).contains(&v)),
            Shape::Interval { length } => (0.0..=*length).contains(&c[0]),
        }
    }

    /// Displacement `y - x`, using the minimum-image convention on the torus.
    pub fn displacement(&self, x: &Point, y: &Point) -> Coords {
        let mut d: Coords = x.coords().iter().zip(y.coords()).map(|(a, b)| b - a).collect();
        if let Shape::Torus { side } = self.shape {
            for v in d.iter_mut() {
                *v -= side * (*v / side).round();
            }
        }
        d
    }

    /// Distance in the domain metric.
    pub fn distance(&self, x: &Point, y: &Point) -> f64 {
        match self.shape {
            Shape::Torus { .. } => self.displacement(x, y).iter().map(|v| v * v).sum::<f64>().sqrt(),
            _ => x.distance(y),
        }
    }

    /// One point uniformly distributed on the domain.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        match &self.shape {
            Shape::Disk { radius } => {
                let r = radius * rng.random::<f64>().sqrt();
                let t = 2.0 * PI * rng.random::<f64>();
                Point::xy(r * t.cos(), r * t.sin())
            }
            Shape::Annulus { inner, outer } => {
                let (a, b) = (inner * inner, outer * outer);
                let r = (a + (b - a) * rng.random::<f64>()).sqrt();
                let t = 2.0 * PI * rng.random::<f64>();
                Point::xy(r * t.cos(), r * t.sin())
            }
            Shape::Square { side, obstacles } => loop {
                let p = Point::xy(side * rng.random::<f64>(), side * rng.random::<f64>());
                if obstacles.iter().all(|o| p.distance(&o.center) >= o.radius) {
                    break p;
                }
            },
            Shape::Sphere { radius } => {
                let r = radius * rng.random::<f64>().cbrt();
                scaled_direction3(rng, r)
            }
            Shape::SphericalShell { inner, outer } => {
                let (a, b) = (inner.powi(3), outer.powi(3));
                let r = (a + (b - a) * rng.random::<f64>()).cbrt();
                scaled_direction3(rng, r)
            }
            Shape::Torus { side } => Point::xy(side * rng.random::<f64>(), side * rng.random::<f64>()),
            Shape::Interval { length } => Point::x(length * rng.random::<f64>()),
        }
    }
}

/// Uniform direction in `dim` dimensions.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Coords {
    loop {
        let v: Coords = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

fn scaled_direction3<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Point {
    let u = random_direction(rng, 3);
    Point::xyz(r * u[0], r * u[1], r * u[2])
}
