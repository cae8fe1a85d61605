//! Graph data model: edges, potentials, boundary presets and results.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used to decide whether a grid is uniform.
const UNIFORM_GRID_TOL: f64 = 1e-6;

/// Potential carried by one edge.
///
/// Square wells and barriers are centred on the edge. A well whose width
/// equals the edge length fills it, which is the parallel-wells geometry.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialDescriptor {
    Free,
    SquareWell {
        depth_ev: f64,
        width_nm: f64,
    },
    SquareBarrier {
        height_ev: f64,
        width_nm: f64,
    },
    Tabulated(TabulatedPotential),
    /// A point scatterer with known amplitudes, placed at the edge midpoint.
    CompositeRing {
        t: Complex64,
        r: Complex64,
    },
}

impl PotentialDescriptor {
    /// Constant potential level (eV) and its extent, for square profiles.
    pub fn square_profile(&self) -> Option<(f64, f64)> {
        match *self {
            PotentialDescriptor::SquareWell { depth_ev, width_nm } => Some((depth_ev, width_nm)),
            PotentialDescriptor::SquareBarrier {
                height_ev,
                width_nm,
            } => Some((height_ev, width_nm)),
            _ => None,
        }
    }

    /// Smallest value of the potential in eV (0 for potentials that vanish somewhere).
    pub fn min_ev(&self) -> f64 {
        match self {
            PotentialDescriptor::Free | PotentialDescriptor::CompositeRing { .. } => 0.0,
            PotentialDescriptor::SquareWell { depth_ev, .. } => depth_ev.min(0.0),
            PotentialDescriptor::SquareBarrier { height_ev, .. } => height_ev.min(0.0),
            PotentialDescriptor::Tabulated(tab) => {
                tab.values_ev.iter().copied().fold(0.0, f64::min)
            }
        }
    }

    /// Potential value in eV at position `x` of a support starting at 0.
    pub fn value_at(&self, x: f64) -> f64 {
        match self {
            PotentialDescriptor::Free | PotentialDescriptor::CompositeRing { .. } => 0.0,
            PotentialDescriptor::SquareWell { .. } | PotentialDescriptor::SquareBarrier { .. } => {
                let (u, w) = self.square_profile().unwrap();
                if (0.0..=w).contains(&x) {
                    u
                } else {
                    0.0
                }
            }
            PotentialDescriptor::Tabulated(tab) => tab.value_at(x),
        }
    }
}

/// V(ξ) in eV sampled on a uniform grid; linear interpolation, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    pub start_nm: f64,
    pub step_nm: f64,
    pub values_ev: Vec<f64>,
}

impl TabulatedPotential {
    pub fn new(start_nm: f64, step_nm: f64, values_ev: Vec<f64>) -> Result<Self> {
        if values_ev.len() < 2 {
            return Err(Error::InvalidPotential(
                "tabulated potential needs at least two samples".into(),
            ));
        }
        if !(step_nm > 0.0) || !start_nm.is_finite() {
            return Err(Error::InvalidPotential(format!(
                "bad tabulated grid: start {start_nm}, step {step_nm}"
            )));
        }
        if values_ev.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPotential("non-finite sample".into()));
        }
        Ok(TabulatedPotential {
            start_nm,
            step_nm,
            values_ev,
        })
    }

    /// Build from `(xi_nm, V_eV)` pairs; the abscissae must be strictly
    /// increasing and uniformly spaced.
    pub fn from_samples(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidPotential(
                "tabulated potential needs at least two samples".into(),
            ));
        }
        let step = samples[1].0 - samples[0].0;
        if !(step > 0.0) {
            return Err(Error::InvalidPotential(
                "abscissae must be strictly increasing".into(),
            ));
        }
        for (i, w) in samples.windows(2).enumerate() {
            let d = w[1].0 - w[0].0;
            if !(d > 0.0) {
                return Err(Error::InvalidPotential(format!(
                    "abscissae not increasing at row {}",
                    i + 2
                )));
            }
            if (d - step).abs() > UNIFORM_GRID_TOL * step {
                return Err(Error::InvalidPotential(format!(
                    "non-uniform grid at row {}: spacing {d} vs {step}",
                    i + 2
                )));
            }
        }
        let n = samples.len() - 1;
        let step = (samples[n].0 - samples[0].0) / n as f64;
        let values = samples.iter().map(|s| s.1).collect();
        TabulatedPotential::new(samples[0].0, step, values)
    }

    /// Parse the two-column text format `xi_nm V_eV`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty());
            let mut next = |what: &str| -> Result<f64> {
                let tok = cols
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: missing {what}", lineno + 1)))?;
                tok.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {what} `{tok}`: {e}", lineno + 1)))
            };
            let x = next("xi_nm")?;
            let v = next("V_eV")?;
            if cols.next().is_some() {
                return Err(Error::Parse(format!(
                    "line {}: expected two columns",
                    lineno + 1
                )));
            }
            samples.push((x, v));
        }
        TabulatedPotential::from_samples(&samples)
    }

    pub fn end_nm(&self) -> f64 {
        self.start_nm + self.step_nm * (self.values_ev.len() - 1) as f64
    }

    /// Value at `x` measured in the same coordinate as `start_nm`.
    pub fn value_at(&self, x: f64) -> f64 {
        let s = (x - self.start_nm) / self.step_nm;
        let last = self.values_ev.len() - 1;
        if !(s >= 0.0) || s > last as f64 {
            return 0.0;
        }
        let i = (s.floor() as usize).min(last - 1);
        let f = s - i as f64;
        self.values_ev[i] * (1.0 - f) + self.values_ev[i + 1] * f
    }
}

/// One edge, oriented from the in-vertex to the out-vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub length: f64,
    pub potential: PotentialDescriptor,
    /// Orientation of the flux phase on this edge: −1, 0 or +1.
    pub ab_sign: i8,
}

impl EdgeSpec {
    pub fn free(length: f64) -> Self {
        EdgeSpec {
            length,
            potential: PotentialDescriptor::Free,
            ab_sign: 0,
        }
    }

    pub fn with_potential(length: f64, potential: PotentialDescriptor) -> Self {
        EdgeSpec {
            length,
            potential,
            ab_sign: 0,
        }
    }

    pub fn with_ab_sign(mut self, sign: i8) -> Self {
        self.ab_sign = sign;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) || !self.length.is_finite() {
            return Err(Error::InvalidGraph(format!(
                "edge length must be positive, got {}",
                self.length
            )));
        }
        if !(-1..=1).contains(&self.ab_sign) {
            return Err(Error::InvalidGraph(format!(
                "ab_sign {} not in {{-1,0,1}}",
                self.ab_sign
            )));
        }
        match &self.potential {
            PotentialDescriptor::Free => {}
            PotentialDescriptor::SquareWell { depth_ev, width_nm } => {
                if !(*depth_ev <= 0.0) {
                    return Err(Error::InvalidPotential(format!(
                        "well depth must be negative, got {depth_ev} eV"
                    )));
                }
                self.check_width(*width_nm)?;
            }
            PotentialDescriptor::SquareBarrier {
                height_ev,
                width_nm,
            } => {
                if !(*height_ev >= 0.0) {
                    return Err(Error::InvalidPotential(format!(
                        "barrier height must be positive, got {height_ev} eV"
                    )));
                }
                self.check_width(*width_nm)?;
            }
            PotentialDescriptor::Tabulated(tab) => {
                if tab.start_nm < 0.0 || tab.end_nm() > self.length * (1.0 + 1e-12) {
                    return Err(Error::InvalidPotential(format!(
                        "tabulated support [{}, {}] outside edge of length {}",
                        tab.start_nm,
                        tab.end_nm(),
                        self.length
                    )));
                }
            }
            PotentialDescriptor::CompositeRing { t, .. } => {
                if !(t.norm() > 0.0) {
                    return Err(Error::InvalidPotential(
                        "composite element with t = 0".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_width(&self, width: f64) -> Result<()> {
        if !(width > 0.0) || width > self.length * (1.0 + 1e-12) {
            return Err(Error::InvalidPotential(format!(
                "width {width} must lie in (0, {}]",
                self.length
            )));
        }
        Ok(())
    }

    /// Square profile filling the whole edge, if any.
    pub fn filling_level_ev(&self) -> Option<f64> {
        match &self.potential {
            PotentialDescriptor::Free => Some(0.0),
            p => p
                .square_profile()
                .and_then(|(u, w)| ((w - self.length).abs() <= 1e-12 * self.length).then_some(u)),
        }
    }
}

/// Boundary data of the two leads, one per row of the scattering table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScatteringPreset {
    /// a_in = 1, b_in = r, a_out = t, b_out = 0.
    #[default]
    LeftScattering,
    /// a_in = 0, b_in = t, a_out = r, b_out = 1.
    RightScattering,
    /// Pure outgoing wave to the right: a_out = 1, b_out = 0.
    Jost1,
    /// Pure outgoing wave to the left: a_in = 0, b_in = 1.
    Jost2,
}

impl FromStr for ScatteringPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "left" | "leftscattering" => Ok(ScatteringPreset::LeftScattering),
            "right" | "rightscattering" => Ok(ScatteringPreset::RightScattering),
            "jost1" => Ok(ScatteringPreset::Jost1),
            "jost2" => Ok(ScatteringPreset::Jost2),
            _ => Err(Error::Parse(format!("unknown preset `{s}`"))),
        }
    }
}

/// In-vertex and out-vertex joined by parallel edges.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTerminalGraph {
    pub edges: Vec<EdgeSpec>,
    /// Flux parameter α = Φ/(Φ₀L), nm⁻¹.
    pub flux_alpha: f64,
    pub boundary: ScatteringPreset,
}

impl TwoTerminalGraph {
    pub fn new(edges: Vec<EdgeSpec>, flux_alpha: f64, boundary: ScatteringPreset) -> Result<Self> {
        let g = TwoTerminalGraph {
            edges,
            flux_alpha,
            boundary,
        };
        g.validate()?;
        Ok(g)
    }

    /// Two free arms. With nonzero flux the first arm carries +α and the second −α.
    pub fn ring(l1: f64, l2: f64, alpha: f64) -> Result<Self> {
        let (s1, s2) = if alpha != 0.0 { (1, -1) } else { (0, 0) };
        TwoTerminalGraph::new(
            vec![
                EdgeSpec::free(l1).with_ab_sign(s1),
                EdgeSpec::free(l2).with_ab_sign(s2),
            ],
            alpha,
            ScatteringPreset::LeftScattering,
        )
    }

    /// `n` identical square wells of depth `depth_ev` each filling an edge of length `width_nm`.
    pub fn parallel_wells(n: usize, depth_ev: f64, width_nm: f64) -> Result<Self> {
        let edge = EdgeSpec::with_potential(
            width_nm,
            PotentialDescriptor::SquareWell { depth_ev, width_nm },
        );
        TwoTerminalGraph::new(vec![edge; n], 0.0, ScatteringPreset::LeftScattering)
    }

    pub fn with_boundary(mut self, boundary: ScatteringPreset) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::InvalidGraph("graph needs at least one edge".into()));
        }
        if !self.flux_alpha.is_finite() {
            return Err(Error::InvalidGraph("flux must be finite".into()));
        }
        for e in &self.edges {
            e.validate()?;
        }
        if self.flux_alpha != 0.0 {
            if self.edges.len() != 2 {
                return Err(Error::InvalidGraph(format!(
                    "flux is defined only for the two-arm ring, got {} edges",
                    self.edges.len()
                )));
            }
        } else if self.edges.iter().any(|e| e.ab_sign != 0) {
            return Err(Error::InvalidGraph("ab_sign set without flux".into()));
        }
        Ok(())
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }
}

/// Transmission and reflection amplitudes at one wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub t: Complex64,
    pub r: Complex64,
    pub transmission: f64,
    pub reflection: f64,
}

impl ScatteringResult {
    pub fn new(t: Complex64, r: Complex64) -> Self {
        ScatteringResult {
            t,
            r,
            transmission: t.norm_sqr(),
            reflection: r.norm_sqr(),
        }
    }

    /// |T + R − 1|.
    pub fn unitarity_defect(&self) -> f64 {
        (self.transmission + self.reflection - 1.0).abs()
    }
}

impl fmt::Display for ScatteringResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t = {:.6}{:+.6}i, r = {:.6}{:+.6}i, T = {:.6}, R = {:.6}",
            self.t.re, self.t.im, self.r.re, self.r.im, self.transmission, self.reflection
        )
    }
}
