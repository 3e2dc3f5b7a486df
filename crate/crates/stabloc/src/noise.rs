//! Single-qubit Pauli channels and their conjugation by node Cliffords.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::reduction::Axis;
use crate::tags::CliffordTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// bit flip
    BF,
    /// bit-phase flip
    BPF,
    /// phase damping
    PD,
    /// depolarizing
    DP,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [ChannelKind::BF, ChannelKind::BPF, ChannelKind::PD, ChannelKind::DP];

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::BF => "BF",
            ChannelKind::BPF => "BPF",
            ChannelKind::PD => "PD",
            ChannelKind::DP => "DP",
        }
    }
}

impl FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ChannelKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown channel {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub q: f64,
    pub eps: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, q: f64, eps: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) || !(0.0..=1.0).contains(&eps) {
            return Err(Error::Parameter(format!("q={q}, eps={eps} outside [0,1]")));
        }
        if kind == ChannelKind::DP && q > dp_q_max(eps) {
            // the identity weight (1 − 3q/4)(1 − 9εq/4) would go negative
            return Err(Error::Parameter(format!("DP with eps={eps} is not a channel for q > {}", dp_q_max(eps))));
        }
        Ok(ChannelSpec { kind, q, eps })
    }

    /// Largest q for which the spec is a valid channel.
    pub fn q_max(kind: ChannelKind, eps: f64) -> f64 {
        match kind {
            ChannelKind::DP => dp_q_max(eps),
            _ => 1.0,
        }
    }

    pub fn probs(&self) -> PauliProbs {
        channel_probs(self)
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:q={},eps={}", self.kind.name(), self.q, self.eps)
    }
}

/// `KIND:q=..,eps=..`; both parameters optional and default to 0.
impl FromStr for ChannelSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let kind: ChannelKind = kind.trim().parse()?;
        let (mut q, mut eps) = (0.0, 0.0);
        for kv in rest.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("expected key=value, got {kv:?}")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parameter(format!("bad number {v:?}")))?;
            match k.trim() {
                "q" => q = v,
                "eps" => eps = v,
                other => return Err(Error::Parameter(format!("unknown key {other:?}"))),
            }
        }
        ChannelSpec::new(kind, q, eps)
    }
}

fn dp_q_max(eps: f64) -> f64 {
    if eps <= 4.0 / 9.0 {
        1.0
    } else {
        4.0 / (9.0 * eps)
    }
}

/// Probabilities (q0, q1, q2, q3) of I, X, Y, Z.
pub type PauliProbs = [f64; 4];

pub const NOISELESS: PauliProbs = [1.0, 0.0, 0.0, 0.0];

/// Expands a spec into Pauli probabilities. With ε > 0 the non-Markovian
/// form is used; BF and BPF reuse the PD form on their own Pauli.
pub fn channel_probs(spec: &ChannelSpec) -> PauliProbs {
    let (q, e) = (spec.q, spec.eps);
    let single = |k: usize| {
        let mut p = [0.0; 4];
        p[0] = (1.0 - q / 2.0) * (1.0 - e * q / 2.0);
        p[k] = (q / 2.0) * (1.0 + e * (1.0 - q / 2.0));
        p
    };
    match spec.kind {
        ChannelKind::BF => single(1),
        ChannelKind::BPF => single(2),
        ChannelKind::PD => single(3),
        ChannelKind::DP => {
            let x = (q / 4.0) * (1.0 + 3.0 * e * (1.0 - 3.0 * q / 4.0));
            [(1.0 - 3.0 * q / 4.0) * (1.0 - 9.0 * e * q / 4.0), x, x, x]
        }
    }
}

/// Pauli index of U†σ^p U for the tag unitary U, phases dropped.
pub fn conjugate_pauli(tag: CliffordTag, p: u8) -> u8 {
    // U = H^f R^s Z^sg, so U†σU = Z(R†(HσH)R)Z; Z keeps labels
    let mut p = p;
    if tag.white {
        p = match p {
            1 => 3,
            3 => 1,
            x => x,
        };
    }
    if tag.diamond {
        p = match p {
            1 => 2,
            2 => 1,
            x => x,
        };
    }
    p
}

/// A Pauli-label permutation, i.e. a single-qubit Clifford modulo phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frame([u8; 4]);

impl Frame {
    pub const IDENTITY: Frame = Frame([0, 1, 2, 3]);

    pub fn of(tag: CliffordTag) -> Frame {
        Frame([0, 1, 2, 3].map(|p| conjugate_pauli(tag, p)))
    }

    /// Conjugation by U₁U₂ given the frames of U₁ and U₂.
    pub fn then(self, second: Frame) -> Frame {
        Frame(self.0.map(|p| second.0[p as usize]))
    }

    pub fn map(self, p: u8) -> u8 {
        self.0[p as usize]
    }

    /// Probability vector of the conjugated channel U† K U.
    pub fn conjugate_probs(self, probs: &PauliProbs) -> PauliProbs {
        let mut out = [0.0; 4];
        for p in 0..4 {
            out[self.0[p] as usize] += probs[p];
        }
        out
    }
}

/// Total probability of Paulis anticommuting with σ^axis.
pub fn flip_probability(probs: &PauliProbs, axis: Axis) -> f64 {
    let a = axis.index() as usize;
    (1..4).filter(|&k| k != a).map(|k| probs[k]).sum()
}
