//! Microframes: antonym pole pairs and their axis vectors.
//!
//! Orientation is fixed by the pair file: column 1 is `w-` (bias toward -1),
//! column 2 is `w+` (bias toward +1). The axis is `v(w+) - v(w-)` with no
//! normalisation.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::embedding::EmbeddingTable;
use crate::linalg;
use crate::{Error, Result};

/// Axes shorter than this are treated as degenerate.
pub const MIN_AXIS_NORM: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PolePair {
    pub minus: String,
    pub plus: String,
}

impl PolePair {
    pub fn new(minus: impl Into<String>, plus: impl Into<String>) -> Self {
        PolePair {
            minus: minus.into(),
            plus: plus.into(),
        }
    }

    /// `minus--plus`.
    pub fn id(&self) -> String {
        format!("{}--{}", self.minus, self.plus)
    }

    pub fn flipped(&self) -> PolePair {
        PolePair::new(self.plus.clone(), self.minus.clone())
    }
}

/// Parses the two-column pair format. `#` starts a comment line.
pub fn parse_pairs(text: &str, origin: &Path) -> Result<Vec<PolePair>> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() != 2 || cols.iter().any(|c| c.is_empty()) {
            return Err(Error::Malformed {
                path: origin.to_path_buf(),
                line: i + 1,
                message: "expected two tab-separated pole words".into(),
            });
        }
        pairs.push(PolePair::new(cols[0], cols[1]));
    }
    Ok(pairs)
}

pub fn read_pairs(path: impl AsRef<Path>) -> Result<Vec<PolePair>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(&text, path)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Microframe {
    id: String,
    pole_minus: String,
    pole_plus: String,
    axis: Vec<f64>,
    axis_norm: f64,
}

impl Microframe {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn pole_minus(&self) -> &str {
        &self.pole_minus
    }

    pub fn pole_plus(&self) -> &str {
        &self.pole_plus
    }

    /// `v(w+) - v(w-)`, computed in f64 from the stored f32 pole vectors.
    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn axis_norm(&self) -> f64 {
        self.axis_norm
    }

    pub fn pair(&self) -> PolePair {
        PolePair::new(self.pole_minus.clone(), self.pole_plus.clone())
    }

    /// The same frame with poles swapped; the axis is negated exactly.
    pub fn flipped(&self) -> Microframe {
        Microframe {
            id: self.pair().flipped().id(),
            pole_minus: self.pole_plus.clone(),
            pole_plus: self.pole_minus.clone(),
            axis: self.axis.iter().map(|x| -x).collect(),
            axis_norm: self.axis_norm,
        }
    }

    /// Builds a frame directly from an axis, for synthetic experiments.
    pub fn from_axis(pair: PolePair, axis: Vec<f64>) -> Result<Microframe> {
        let axis_norm = linalg::norm64(&axis);
        if axis_norm.is_nan() || axis_norm < MIN_AXIS_NORM {
            return Err(Error::ZeroNorm(Some(pair.id())));
        }
        Ok(Microframe {
            id: pair.id(),
            pole_minus: pair.minus,
            pole_plus: pair.plus,
            axis,
            axis_norm,
        })
    }
}

/// The axis vector of a frame.
pub fn axis_vector(frame: &Microframe) -> &[f64] {
    frame.axis()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DropReason {
    MissingPole { missing: Vec<String> },
    IdenticalPoles,
    DegenerateAxis,
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropReason::MissingPole { missing } => {
                write!(f, "missing pole: {}", missing.join(", "))
            }
            DropReason::IdenticalPoles => f.write_str("identical poles"),
            DropReason::DegenerateAxis => f.write_str("degenerate axis"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DroppedPair {
    #[serde(flatten)]
    pub pair: PolePair,
    pub reason: DropReason,
}

/// Frames in input order plus every pair that could not become a frame.
#[derive(Debug, Clone, Default)]
pub struct FrameRegistry {
    frames: Vec<Microframe>,
    dropped: Vec<DroppedPair>,
}

impl FrameRegistry {
    pub fn frames(&self) -> &[Microframe] {
        &self.frames
    }

    pub fn dropped(&self) -> &[DroppedPair] {
        &self.dropped
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Microframe> {
        self.frames.iter().find(|f| f.id == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.frames.iter().position(|f| f.id == id)
    }

    /// Looks up a frame by id, accepting the flipped id too (`plus--minus`).
    pub fn resolve(&self, id: &str) -> Result<Microframe> {
        if let Some(f) = self.get(id) {
            return Ok(f.clone());
        }
        if let Some((a, b)) = id.split_once("--") {
            if let Some(f) = self.get(&format!("{b}--{a}")) {
                return Ok(f.flipped());
            }
        }
        Err(Error::UnknownFrame(id.to_string()))
    }

    /// A registry restricted to the given frame ids, in registry order.
    pub fn subset(&self, ids: &HashSet<&str>) -> FrameRegistry {
        FrameRegistry {
            frames: self
                .frames
                .iter()
                .filter(|f| ids.contains(f.id()))
                .cloned()
                .collect(),
            dropped: Vec::new(),
        }
    }

    pub fn from_frames(frames: Vec<Microframe>) -> Result<FrameRegistry> {
        let mut seen = HashSet::new();
        for f in &frames {
            if !seen.insert(f.id.clone()) {
                return Err(Error::DuplicateFrame(f.id.clone()));
            }
        }
        Ok(FrameRegistry {
            frames,
            dropped: Vec::new(),
        })
    }

    /// Audit export: frame ids with their poles, and the dropped pairs.
    pub fn export(&self) -> RegistryExport<'_> {
        RegistryExport {
            frames: self
                .frames
                .iter()
                .map(|f| FrameExport {
                    id: &f.id,
                    pole_minus: &f.pole_minus,
                    pole_plus: &f.pole_plus,
                })
                .collect(),
            dropped: &self.dropped,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FrameExport<'a> {
    pub id: &'a str,
    pub pole_minus: &'a str,
    pub pole_plus: &'a str,
}

#[derive(Debug, Serialize)]
pub struct RegistryExport<'a> {
    pub frames: Vec<FrameExport<'a>>,
    pub dropped: &'a [DroppedPair],
}

/// Turns pole pairs into frames, dropping pairs that cannot form an axis.
pub fn build_registry(pairs: &[PolePair], table: &EmbeddingTable) -> Result<FrameRegistry> {
    if pairs.is_empty() {
        return Err(Error::EmptyPairList);
    }
    let mut ids = HashSet::with_capacity(pairs.len());
    let mut registry = FrameRegistry::default();
    for pair in pairs {
        let id = pair.id();
        if !ids.insert(id.clone()) {
            return Err(Error::DuplicateFrame(id));
        }
        let drop = |reason| DroppedPair {
            pair: pair.clone(),
            reason,
        };
        if pair.minus == pair.plus {
            registry.dropped.push(drop(DropReason::IdenticalPoles));
            continue;
        }
        let (minus, plus) = match (table.vector_of(&pair.minus), table.vector_of(&pair.plus)) {
            (Some(m), Some(p)) => (m, p),
            (m, p) => {
                let mut missing = Vec::new();
                if m.is_none() {
                    missing.push(pair.minus.clone());
                }
                if p.is_none() {
                    missing.push(pair.plus.clone());
                }
                registry
                    .dropped
                    .push(drop(DropReason::MissingPole { missing }));
                continue;
            }
        };
        let axis: Vec<f64> = plus
            .iter()
            .zip(minus)
            .map(|(&p, &m)| f64::from(p) - f64::from(m))
            .collect();
        let axis_norm = linalg::norm64(&axis);
        if axis_norm < MIN_AXIS_NORM {
            registry.dropped.push(drop(DropReason::DegenerateAxis));
            continue;
        }
        registry.frames.push(Microframe {
            id,
            pole_minus: pair.minus.clone(),
            pole_plus: pair.plus.clone(),
            axis,
            axis_norm,
        });
    }
    Ok(registry)
}
