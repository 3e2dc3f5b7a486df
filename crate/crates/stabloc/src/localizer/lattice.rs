//! Lattice graphs and subsystem placements.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    Linear,
    Ladder,
    Square,
    Cubic,
    Toric,
}

/// `linear:N`, `ladder:RUNGS`, `square:LxW`, `cubic:L`, `toric:NP`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub dims: Vec<usize>,
}

impl LatticeSpec {
    pub fn linear(n: usize) -> Self {
        LatticeSpec { kind: LatticeKind::Linear, dims: vec![n] }
    }

    pub fn ladder(rungs: usize) -> Self {
        LatticeSpec { kind: LatticeKind::Ladder, dims: vec![rungs] }
    }

    pub fn square(rows: usize, cols: usize) -> Self {
        LatticeSpec { kind: LatticeKind::Square, dims: vec![rows, cols] }
    }

    pub fn toric(np: usize) -> Self {
        LatticeSpec { kind: LatticeKind::Toric, dims: vec![np] }
    }

    pub fn n_nodes(&self) -> usize {
        match self.kind {
            LatticeKind::Linear => self.dims[0],
            LatticeKind::Ladder => 2 * self.dims[0],
            LatticeKind::Square => self.dims[0] * self.dims[1],
            LatticeKind::Cubic => self.dims[0].pow(3),
            LatticeKind::Toric => 2 * self.dims[0] * self.dims[0],
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        match self.kind {
            LatticeKind::Linear => Ok(Graph::path(self.dims[0])),
            LatticeKind::Ladder => Ok(ladder(self.dims[0])),
            LatticeKind::Square => Ok(grid(&[self.dims[0], self.dims[1]])),
            LatticeKind::Cubic => Ok(grid(&[self.dims[0]; 3])),
            LatticeKind::Toric => Ok(super::toric::ToricCode::new(self.dims[0])?.graph),
        }
    }
}

impl LatticeSpec {
    /// Other natural node orderings, as old → new maps: the column-major
    /// scan for ladders and square grids. Empty for the rest.
    pub fn labellings(&self) -> Vec<Vec<usize>> {
        let (rows, cols) = match self.kind {
            LatticeKind::Ladder => (2, self.dims[0]),
            LatticeKind::Square => (self.dims[0], self.dims[1]),
            _ => return vec![],
        };
        vec![(0..rows * cols).map(|v| (v % cols) * rows + v / cols).collect()]
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            LatticeKind::Linear => "linear",
            LatticeKind::Ladder => "ladder",
            LatticeKind::Square => "square",
            LatticeKind::Cubic => "cubic",
            LatticeKind::Toric => "toric",
        };
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{kind}:{}", dims.join("x"))
    }
}

impl FromStr for LatticeSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, dims) = s
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("expected KIND:dims, got {s:?}")))?;
        let dims: Vec<usize> = dims
            .split('x')
            .map(|d| d.trim().parse().map_err(|_| Error::Parameter(format!("bad dimension {d:?}"))))
            .collect::<Result<_>>()?;
        let (kind, want) = match kind.trim() {
            "linear" => (LatticeKind::Linear, 1),
            "ladder" => (LatticeKind::Ladder, 1),
            "square" => (LatticeKind::Square, 2),
            "cubic" => (LatticeKind::Cubic, 1),
            "toric" => (LatticeKind::Toric, 1),
            other => return Err(Error::Parameter(format!("unknown lattice {other:?}"))),
        };
        let dims = if kind == LatticeKind::Square && dims.len() == 1 { vec![dims[0]; 2] } else { dims };
        if dims.len() != want || dims.contains(&0) {
            return Err(Error::Parameter(format!("{s:?} needs {want} positive dimension(s)")));
        }
        Ok(LatticeSpec { kind, dims })
    }
}

/// Ladder with node `leg * rungs + r`.
fn ladder(rungs: usize) -> Graph {
    let mut g = Graph::empty(2 * rungs);
    for r in 0..rungs {
        g.set_edge(r, rungs + r, true);
        if r + 1 < rungs {
            g.set_edge(r, r + 1, true);
            g.set_edge(rungs + r, rungs + r + 1, true);
        }
    }
    g
}

/// Open hypercubic grid; the first coordinate varies slowest.
fn grid(dims: &[usize]) -> Graph {
    let n: usize = dims.iter().product();
    let mut g = Graph::empty(n);
    let mut stride = 1;
    for d in (0..dims.len()).rev() {
        for i in 0..n {
            if (i / stride) % dims[d] + 1 < dims[d] {
                g.set_edge(i, i + stride, true);
            }
        }
        stride *= dims[d];
    }
    g
}

/// Where a subsystem sits on a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Bulk,
    Boundary,
    Corner,
}

impl FromStr for Placement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bulk" => Ok(Placement::Bulk),
            "boundary" => Ok(Placement::Boundary),
            "corner" => Ok(Placement::Corner),
            _ => Err(Error::Parameter(format!("unknown placement {s:?}"))),
        }
    }
}

/// `n` consecutive nodes of a linear graph.
pub fn linear_segment(n_total: usize, n: usize, at: Placement) -> Result<Vec<usize>> {
    if n > n_total {
        return Err(Error::Parameter("segment longer than the chain".into()));
    }
    let start = match at {
        Placement::Boundary | Placement::Corner => 0,
        Placement::Bulk => (n_total - n) / 2,
    };
    Ok((start..start + n).collect())
}

/// `r` consecutive rungs of a ladder.
pub fn ladder_rungs(rungs: usize, r: usize, at: Placement) -> Result<Vec<usize>> {
    if r > rungs {
        return Err(Error::Parameter("more rungs than the ladder has".into()));
    }
    let start = match at {
        Placement::Boundary | Placement::Corner => 0,
        Placement::Bulk => (rungs - r) / 2,
    };
    let mut s: Vec<usize> = (start..start + r).collect();
    s.extend((start..start + r).map(|i| rungs + i));
    Ok(s)
}

/// `n` consecutive nodes of the first leg of a ladder, starting at `start`.
pub fn ladder_leg(rungs: usize, start: usize, n: usize) -> Result<Vec<usize>> {
    if start + n > rungs {
        return Err(Error::Parameter("leg segment runs off the ladder".into()));
    }
    Ok((start..start + n).collect())
}

/// A 2×2 plaquette of a rows×cols square lattice.
pub fn plaquette(rows: usize, cols: usize, at: Placement) -> Result<Vec<usize>> {
    if rows < 2 || cols < 2 {
        return Err(Error::Parameter("lattice too small for a plaquette".into()));
    }
    let (r, c) = match at {
        Placement::Corner => (0, 0),
        Placement::Boundary => (0, (cols - 2) / 2),
        Placement::Bulk => ((rows - 2) / 2, (cols - 2) / 2),
    };
    let mut s = vec![r * cols + c, r * cols + c + 1, (r + 1) * cols + c, (r + 1) * cols + c + 1];
    s.sort_unstable();
    Ok(s)
}

/// Which nodes form S, written as on the command line:
/// `0,3,5`, `plaquette:bulk`, `rungs:2:bulk`, `leg:START:N`, `segment:N:bulk`,
/// `line:bulk` (the four-node noisy placement), `loop:ROW`, `loops:D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsystemSpec {
    Nodes(Vec<usize>),
    Plaquette(Placement),
    Rungs(usize, Placement),
    Leg { start: usize, n: usize },
    Segment(usize, Placement),
    Line(Placement),
    Loop(usize),
    Loops(usize),
}

impl FromStr for SubsystemSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse subsystem {s:?}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let parts: Vec<&str> = s.trim().split(':').collect();
        Ok(match parts.as_slice() {
            ["plaquette", at] => SubsystemSpec::Plaquette(at.parse()?),
            ["rungs", r, at] => SubsystemSpec::Rungs(num(r)?, at.parse()?),
            ["leg", start, n] => SubsystemSpec::Leg { start: num(start)?, n: num(n)? },
            ["segment", n, at] => SubsystemSpec::Segment(num(n)?, at.parse()?),
            ["line", at] => SubsystemSpec::Line(at.parse()?),
            ["loop", r] => SubsystemSpec::Loop(num(r)?),
            ["loops", d] => SubsystemSpec::Loops(num(d)?),
            [list] => SubsystemSpec::Nodes(list.split(',').map(num).collect::<Result<_>>()?),
            _ => return Err(bad()),
        })
    }
}

impl SubsystemSpec {
    /// Node list of S on `lattice`.
    pub fn nodes(&self, lattice: &LatticeSpec) -> Result<Vec<usize>> {
        let wrong = || Error::Parameter(format!("{self:?} does not apply to {lattice}"));
        let mut s = match (self, lattice.kind) {
            (SubsystemSpec::Nodes(v), _) => v.clone(),
            (SubsystemSpec::Plaquette(at), LatticeKind::Square) => plaquette(lattice.dims[0], lattice.dims[1], *at)?,
            (SubsystemSpec::Rungs(r, at), LatticeKind::Ladder) => ladder_rungs(lattice.dims[0], *r, *at)?,
            (SubsystemSpec::Leg { start, n }, LatticeKind::Ladder) => ladder_leg(lattice.dims[0], *start, *n)?,
            (SubsystemSpec::Segment(n, at), LatticeKind::Linear) => linear_segment(lattice.dims[0], *n, *at)?,
            (SubsystemSpec::Line(at), _) => super::noisy::alpha_c(lattice, *at)?.0,
            (SubsystemSpec::Loop(r), LatticeKind::Toric) => super::toric::ToricCode::new(lattice.dims[0])?.row_loop(*r),
            (SubsystemSpec::Loops(d), LatticeKind::Toric) => {
                let tc = super::toric::ToricCode::new(lattice.dims[0])?;
                let mut v = tc.row_loop(0);
                v.extend(tc.row_loop(*d));
                v
            }
            _ => return Err(wrong()),
        };
        let n = lattice.n_nodes();
        if let Some(&bad) = s.iter().find(|&&i| i >= n) {
            return Err(Error::NodeOutOfRange { node: bad, n });
        }
        s.sort_unstable();
        s.dedup();
        Ok(s)
    }
}
