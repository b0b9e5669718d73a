//! Body files and the default corpus.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::polytope::{ball_approx, convex_hull, cross_polytope, cube, random_hull, regular_simplex, unit_cube, Polytope};
use crate::zonotope::{cube_zonotope, random_zonotope, Zonotope};

/// Half-space data `<normals[i], x> <= offsets[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspaces {
    pub normals: Vec<Vec<f64>>,
    pub offsets: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodySource {
    /// A constructor string such as `cube` or `random-hull(12,3)`.
    Named { data: String },
    Vrep { data: Vec<Vec<f64>> },
    Hrep { data: Halfspaces },
    Zonotope {
        generators: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
    },
}

/// A reproducible body description: the same spec always builds the same
/// body, bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(flatten)]
    pub source: BodySource,
}

impl BodySpec {
    pub fn named(constructor: &str, dim: usize) -> Self {
        BodySpec { name: None, dim, source: BodySource::Named { data: constructor.to_string() } }
    }

    pub fn vrep(name: impl Into<String>, points: Vec<Vec<f64>>) -> Self {
        let dim = points.first().map_or(0, |p| p.len());
        BodySpec { name: Some(name.into()), dim, source: BodySource::Vrep { data: points } }
    }

    pub fn zonotope(name: impl Into<String>, z: &Zonotope) -> Self {
        let center = z.center().iter().any(|c| *c != 0.0).then(|| z.center().to_vec());
        BodySpec {
            name: Some(name.into()),
            dim: z.dim(),
            source: BodySource::Zonotope { generators: z.generators().to_vec(), center },
        }
    }

    /// The explicit name, or one derived from the source.
    pub fn label(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match &self.source {
            BodySource::Named { data } => data.clone(),
            BodySource::Vrep { data } => format!("vrep({})", data.len()),
            BodySource::Hrep { data } => format!("hrep({})", data.offsets.len()),
            BodySource::Zonotope { generators, .. } => format!("zonotope({})", generators.len()),
        }
    }

    pub fn build(&self) -> Result<Body> {
        let n = self.dim;
        let (poly, zonotope, ball) = match &self.source {
            BodySource::Named { data } => build_named(data, n)?,
            BodySource::Vrep { data } => {
                if data.iter().any(|p| p.len() != n) {
                    return Err(GeomError::Parse(format!("vertex length differs from dim {n}")));
                }
                (convex_hull(data, n)?, None, false)
            }
            BodySource::Hrep { data } => {
                if data.normals.iter().any(|u| u.len() != n) {
                    return Err(GeomError::Parse(format!("normal length differs from dim {n}")));
                }
                (Polytope::from_hrep(&data.normals, &data.offsets)?, None, false)
            }
            BodySource::Zonotope { generators, center } => {
                let z = Zonotope::new(center.clone().unwrap_or_else(|| vec![0.0; n]), generators.clone())?;
                if z.dim() != n {
                    return Err(GeomError::Parse(format!("generator length differs from dim {n}")));
                }
                (z.to_polytope()?, Some(z), false)
            }
        };
        Ok(Body { name: self.label(), spec: self.clone(), poly, zonotope, ball_approx: ball })
    }
}

/// A built body with the zonotope it came from, when there is one.
#[derive(Debug, Clone)]
pub struct Body {
    pub name: String,
    pub spec: BodySpec,
    pub poly: Polytope,
    pub zonotope: Option<Zonotope>,
    /// Polytopal approximation of the Euclidean ball.
    pub ball_approx: bool,
}

impl Body {
    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn is_zonoid(&self) -> bool {
        self.zonotope.is_some()
    }
}

fn parse_args(s: &str, name: &str) -> Result<Vec<u64>> {
    let inner = s
        .strip_prefix(name)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| GeomError::Parse(format!("expected {name}(...), got '{s}'")))?;
    inner
        .split(',')
        .map(|a| a.trim().parse::<u64>().map_err(|_| GeomError::Parse(format!("bad argument '{a}' in '{s}'"))))
        .collect()
}

fn build_named(s: &str, n: usize) -> Result<(Polytope, Option<Zonotope>, bool)> {
    let head = s.split('(').next().unwrap_or(s);
    match head {
        "cube" => Ok((cube(n), Some(cube_zonotope(n)), false)),
        "unit-cube" => Ok((unit_cube(n), Some(cube_zonotope(n).scaled(0.5)), false)),
        "cross" => Ok((cross_polytope(n), None, false)),
        "simplex" => Ok((regular_simplex(n)?, None, false)),
        "ball-approx" => match parse_args(s, head)?[..] {
            [count] => Ok((ball_approx(n, count as usize, 0)?, None, true)),
            [count, seed] => Ok((ball_approx(n, count as usize, seed)?, None, true)),
            _ => Err(GeomError::Parse(format!("ball-approx takes (count[,seed]), got '{s}'"))),
        },
        "random-hull" => match parse_args(s, head)?[..] {
            [count, seed] => Ok((random_hull(n, count as usize, seed)?, None, false)),
            _ => Err(GeomError::Parse(format!("random-hull takes (count,seed), got '{s}'"))),
        },
        "random-zonotope" => match parse_args(s, head)?[..] {
            [m, seed] => {
                let z = random_zonotope(n, m as usize, seed)?;
                Ok((z.to_polytope()?, Some(z), false))
            }
            _ => Err(GeomError::Parse(format!("random-zonotope takes (m,seed), got '{s}'"))),
        },
        _ => Err(GeomError::Parse(format!(
            "unknown body '{s}' (known: cube, unit-cube, cross, simplex, ball-approx(N), random-hull(N,seed), random-zonotope(m,seed))"
        ))),
    }
}

/// Q_n, the cross-polytope, the regular simplex, a 500-point ball
/// approximation, five random hulls of `4n` points and five random
/// zonotopes with `n + 3` generators.
pub fn default_corpus(n: usize) -> Vec<BodySpec> {
    let mut out = vec![
        BodySpec::named("cube", n),
        BodySpec::named("cross", n),
        BodySpec::named("simplex", n),
        BodySpec::named("ball-approx(500)", n),
    ];
    for seed in 0..5 {
        out.push(BodySpec::named(&format!("random-hull({},{seed})", 4 * n), n));
    }
    for seed in 0..5 {
        out.push(BodySpec::named(&format!("random-zonotope({},{seed})", n + 3), n));
    }
    out
}

/// Reads a JSON body file: a single spec or a list of specs.
pub fn parse_bodies(text: &str) -> Result<Vec<BodySpec>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.is_array() {
        Ok(serde_json::from_value(value)?)
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}
