//! Strings of coroots `b, b + g_1, ..., b + g_l` for a parabolic subset and
//! an adjacent simple root `beta` (written `b` for its coroot).
//!
//! Strings are produced by the modified Kostant game on the coroot diagram
//! of each component of `S_P` next to `beta`, their gaps are filled along
//! unbroken coroot strings, and the component strings are glued.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::n_beta;
use crate::kostant_game::{self, Configuration, Strategy};
use crate::root_system::{CorootVec, ParabolicSubset, RootData, RootVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorootString {
    /// `beta` as a 0-based vertex.
    beta: usize,
    /// Simple roots the offsets `g_j` may use.
    parabolic: ParabolicSubset,
    elements: Vec<CorootVec>,
}

impl CorootString {
    /// The one-element string `{b}`.
    pub fn singleton(rank: usize, parabolic: ParabolicSubset, beta: usize) -> Self {
        CorootString {
            beta,
            parabolic,
            elements: vec![RootVec::simple(rank, beta)],
        }
    }

    pub fn from_elements(parabolic: ParabolicSubset, beta: usize, elements: Vec<CorootVec>) -> Self {
        CorootString {
            beta,
            parabolic,
            elements,
        }
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn elements(&self) -> &[CorootVec] {
        &self.elements
    }

    /// Height of the last element.
    pub fn length(&self) -> i64 {
        self.elements.last().map(|e| e.height()).unwrap_or(0)
    }

    pub fn heights(&self) -> Vec<i64> {
        self.elements.iter().map(|e| e.height()).collect()
    }
}

fn check_beta(data: &RootData, parabolic: &ParabolicSubset, beta: usize) -> Result<()> {
    data.cartan().check_vertex(beta)?;
    if parabolic.rank() != data.rank() {
        return Err(Error::DimensionMismatch {
            got: parabolic.rank(),
            rank: data.rank(),
        });
    }
    if parabolic.contains(beta) {
        return Err(Error::ContextMismatch(format!(
            "vertex {} lies in the parabolic subset",
            beta + 1
        )));
    }
    Ok(())
}

/// Plays the modified game on the coroot diagram of `component` at its
/// vertex next to `beta`, with as many arrows as point from that vertex
/// to `beta`. Each configuration `c` contributes `b + sum c_i coroot_i`.
///
/// `strategy` uses 0-based vertices of the full diagram.
pub fn component_string(
    data: &RootData,
    component: &[usize],
    beta: usize,
    strategy: &Strategy,
) -> Result<CorootString> {
    let cartan = data.cartan();
    let parabolic = ParabolicSubset::from_indices(data.rank(), component)?;
    check_beta(data, &parabolic, beta)?;
    let attach: Vec<usize> = component
        .iter()
        .copied()
        .filter(|&v| cartan.entry(beta, v) != 0)
        .collect();
    let j = match attach.as_slice() {
        [j] => *j,
        [] => return Err(Error::NotAdjacent { beta: beta + 1 }),
        _ => {
            return Err(Error::ContextMismatch(format!(
                "vertex {} meets the component more than once",
                beta + 1
            )))
        }
    };
    let arrows = cartan.arrows(beta, j);
    let sub = cartan.dual().subdiagram(component)?;
    let local = |v: usize| component.iter().position(|&c| c == v);
    let local_j = local(j).unwrap();
    let local_strategy = match strategy {
        Strategy::LowestIndex => Strategy::LowestIndex,
        Strategy::Sequence(seq) => Strategy::Sequence(
            seq.iter()
                .map(|&v| local(v).ok_or(Error::VertexOutOfRange { vertex: v + 1, rank: sub.rank() }))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let start = Configuration::modified(sub.rank(), local_j, arrows)?;
    let (_, moves) = kostant_game::play(&sub, &start, &local_strategy)?;
    let configs = kostant_game::trace(&sub, &start, &moves)?;
    let elements = configs
        .iter()
        .map(|c| {
            let mut v = RootVec::simple(data.rank(), beta);
            for (l, &chips) in c.chips().iter().enumerate() {
                v.0[component[l]] += chips;
            }
            v
        })
        .collect();
    Ok(CorootString {
        beta,
        parabolic,
        elements,
    })
}

/// Inserts the intermediate coroots of every jump. A jump from `x` to
/// `x + m coroot_i` becomes `x, x + coroot_i, ..., x + m coroot_i`; each
/// inserted vector must be a positive coroot, otherwise the root string
/// would be broken.
pub fn fill_gaps(data: &RootData, s: &CorootString) -> Result<CorootString> {
    let mut elements: Vec<CorootVec> = Vec::with_capacity(s.elements.len());
    for pair in s.elements.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        elements.push(a.clone());
        let diff = b - a;
        let support: Vec<usize> = diff.support().collect();
        let (dir, steps) = match support.as_slice() {
            [i] if diff[*i] > 0 => (*i, diff[*i]),
            _ => {
                return Err(Error::ContextMismatch(format!(
                    "step {a} -> {b} is not a multiple of one simple coroot"
                )))
            }
        };
        for m in 1..steps {
            let mut v = a.clone();
            v.0[dir] += m;
            if !data.coroots.contains(&v) {
                return Err(Error::Internal(format!("{v} is not a positive coroot")));
            }
            elements.push(v);
        }
    }
    if let Some(last) = s.elements.last() {
        elements.push(last.clone());
    }
    Ok(CorootString {
        beta: s.beta,
        parabolic: s.parabolic.clone(),
        elements,
    })
}

/// Concatenates component strings: after the first string's elements, each
/// further string's offsets are added to the accumulated last offset.
pub fn glue(
    data: &RootData,
    parts: &[CorootString],
    parabolic: &ParabolicSubset,
    beta: usize,
) -> Result<CorootString> {
    check_beta(data, parabolic, beta)?;
    if parts.len() > 3 {
        return Err(Error::ContextMismatch(format!(
            "{} components meet vertex {}",
            parts.len(),
            beta + 1
        )));
    }
    let n = data.rank();
    let base = RootVec::simple(n, beta);
    let mut used = vec![false; n];
    let mut elements = vec![base.clone()];
    let mut offset = RootVec::zero(n);
    for part in parts {
        if part.beta != beta || part.elements.first() != Some(&base) {
            return Err(Error::ContextMismatch("string does not start at beta".into()));
        }
        for v in part.parabolic.members() {
            if used[v] || !parabolic.contains(v) {
                return Err(Error::ContextMismatch(format!(
                    "component vertex {} is reused or outside the parabolic",
                    v + 1
                )));
            }
            used[v] = true;
        }
        for e in &part.elements[1..] {
            elements.push(e + &offset);
        }
        offset = &(part.elements.last().unwrap() - &base) + &offset;
    }
    Ok(CorootString {
        beta,
        parabolic: parabolic.clone(),
        elements,
    })
}

/// The maximal good string for `(P, beta)`: component strings by the
/// lowest-index strategy, gaps filled, glued in ascending component order.
/// A `beta` with no neighbor in `S_P` gets the singleton string.
pub fn maximal_good_string(data: &RootData, parabolic: &ParabolicSubset, beta: usize) -> Result<CorootString> {
    check_beta(data, parabolic, beta)?;
    let cartan = data.cartan();
    let parts = parabolic
        .components(cartan)
        .into_iter()
        .filter(|comp| comp.iter().any(|&v| cartan.entry(beta, v) != 0))
        .map(|comp| {
            let s = component_string(data, &comp, beta, &Strategy::LowestIndex)?;
            fill_gaps(data, &s)
        })
        .collect::<Result<Vec<_>>>()?;
    glue(data, &parts, parabolic, beta)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringCertificate {
    /// Every element is a positive coroot with `b`-coefficient 1 and offsets
    /// supported on `S_P`, and heights strictly increase.
    pub valid: bool,
    pub good: bool,
    pub maximal: bool,
    pub n_beta: i64,
    pub length: i64,
    /// Positions `r` (0-based, element 0 is `b`) with a height jump of more
    /// than one between elements `r` and `r + 1`.
    pub gaps: Vec<usize>,
}

/// Recomputes every string property from scratch.
pub fn certify(data: &RootData, s: &CorootString) -> StringCertificate {
    let n_b = n_beta(data, &s.parabolic, s.beta);
    let heights = s.heights();
    let valid = !s.elements.is_empty()
        && s.elements[0] == RootVec::simple(data.rank(), s.beta)
        && s.elements.iter().all(|e| {
            data.coroots.contains(e)
                && e[s.beta] == 1
                && e.support().all(|i| i == s.beta || s.parabolic.contains(i))
        })
        && heights.windows(2).all(|w| w[0] < w[1]);
    let good = heights.iter().enumerate().all(|(j, &h)| h == j as i64 + 1);
    let gaps = heights
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] + 1 < w[1])
        .map(|(r, _)| r)
        .collect();
    let length = s.length();
    StringCertificate {
        valid,
        good,
        maximal: length == n_b - 1,
        n_beta: n_b,
        length,
        gaps,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorootStringJson {
    #[serde(rename = "type")]
    pub type_label: String,
    #[serde(rename = "S_P")]
    pub parabolic: Vec<usize>,
    pub beta: usize,
    pub n_beta: i64,
    pub string: Vec<Vec<i64>>,
    pub good: bool,
    pub maximal: bool,
}

pub fn to_json(data: &RootData, s: &CorootString) -> CorootStringJson {
    let cert = certify(data, s);
    CorootStringJson {
        type_label: data.cartan().label(),
        parabolic: s.parabolic.members().iter().map(|v| v + 1).collect(),
        beta: s.beta + 1,
        n_beta: cert.n_beta,
        string: s.elements.iter().map(|e| e.0.clone()).collect(),
        good: cert.good,
        maximal: cert.maximal,
    }
}
