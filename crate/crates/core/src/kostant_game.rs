//! The Kostant chip-firing game on a Dynkin diagram and its modified
//! version with an extra, always happy vertex.
//!
//! The extra vertex is never stored. A game marked at vertex `j` with `k`
//! arrows simply adds `k` (its single chip times the arrow count) to the
//! neighbor sum of `j`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{CartanData, RootVec};

/// Marked vertex and arrow count of a modified game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Marking {
    pub vertex: usize,
    pub arrows: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    chips: Vec<i64>,
    marking: Option<MarkKey>,
}

// Ord/Hash-friendly copy of a marking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct MarkKey(usize, i64);

impl Configuration {
    pub fn new(chips: Vec<i64>) -> Self {
        Configuration {
            chips,
            marking: None,
        }
    }

    /// Standard game start: one chip on `vertex`.
    pub fn single_chip(n: usize, vertex: usize) -> Self {
        Configuration::new(RootVec::simple(n, vertex).0)
    }

    /// Modified game start: no chips on the diagram, one on the extra vertex.
    pub fn modified(n: usize, vertex: usize, arrows: i64) -> Result<Self> {
        if vertex >= n {
            return Err(Error::VertexOutOfRange {
                vertex: vertex + 1,
                rank: n,
            });
        }
        if arrows < 1 {
            return Err(Error::ZeroArrows);
        }
        Ok(Configuration {
            chips: vec![0; n],
            marking: Some(MarkKey(vertex, arrows)),
        })
    }

    pub fn with_chips(&self, chips: Vec<i64>) -> Self {
        Configuration {
            chips,
            marking: self.marking,
        }
    }

    pub fn chips(&self) -> &[i64] {
        &self.chips
    }

    pub fn marking(&self) -> Option<Marking> {
        self.marking.map(|MarkKey(vertex, arrows)| Marking { vertex, arrows })
    }

    pub fn rank(&self) -> usize {
        self.chips.len()
    }

    /// Total chips, counting the extra vertex's chip in a modified game.
    pub fn height(&self) -> i64 {
        self.chips.iter().sum::<i64>() + i64::from(self.marking.is_some())
    }

    pub fn as_root(&self) -> RootVec {
        RootVec(self.chips.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexStatus {
    Happy,
    Unhappy,
    Excited,
}

/// Twice the half-neighbor sum; avoids halving.
fn neighbor_sum(d: &CartanData, c: &Configuration, i: usize) -> i64 {
    let mut s: i64 = d.neighbors(i).map(|j| d.arrows(i, j) * c.chips[j]).sum();
    if let Some(MarkKey(v, k)) = c.marking {
        if v == i {
            s += k;
        }
    }
    s
}

fn check(d: &CartanData, c: &Configuration) -> Result<()> {
    if c.rank() != d.rank() {
        return Err(Error::DimensionMismatch {
            got: c.rank(),
            rank: d.rank(),
        });
    }
    Ok(())
}

pub fn status(d: &CartanData, c: &Configuration, i: usize) -> Result<VertexStatus> {
    check(d, c)?;
    d.check_vertex(i)?;
    let twice = 2 * c.chips[i];
    let s = neighbor_sum(d, c, i);
    Ok(match twice.cmp(&s) {
        std::cmp::Ordering::Equal => VertexStatus::Happy,
        std::cmp::Ordering::Less => VertexStatus::Unhappy,
        std::cmp::Ordering::Greater => VertexStatus::Excited,
    })
}

pub fn unhappy_vertices(d: &CartanData, c: &Configuration) -> Vec<usize> {
    (0..d.rank())
        .filter(|&i| 2 * c.chips[i] < neighbor_sum(d, c, i))
        .collect()
}

pub fn is_terminal(d: &CartanData, c: &Configuration) -> bool {
    unhappy_vertices(d, c).is_empty()
}

/// Fires an unhappy vertex: `c_i <- -c_i + sum_j n_ij c_j` (plus `k` at the
/// marked vertex).
pub fn fire(d: &CartanData, c: &Configuration, i: usize) -> Result<Configuration> {
    if status(d, c, i)? != VertexStatus::Unhappy {
        return Err(Error::IllegalMove {
            step: 1,
            vertex: i + 1,
        });
    }
    let mut chips = c.chips.clone();
    chips[i] = -c.chips[i] + neighbor_sum(d, c, i);
    Ok(c.with_chips(chips))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Always fire the unhappy vertex with the smallest index.
    LowestIndex,
    /// Fire these vertices (0-based) in order, then continue by lowest index.
    Sequence(Vec<usize>),
}

/// Plays until no vertex is unhappy. Returns the terminal configuration and
/// the fired vertices.
pub fn play(
    d: &CartanData,
    start: &Configuration,
    strategy: &Strategy,
) -> Result<(Configuration, Vec<usize>)> {
    check(d, start)?;
    let mut c = start.clone();
    let mut moves = Vec::new();
    if let Strategy::Sequence(seq) = strategy {
        for (step, &v) in seq.iter().enumerate() {
            if v >= d.rank() || status(d, &c, v)? != VertexStatus::Unhappy {
                return Err(Error::IllegalMove {
                    step: step + 1,
                    vertex: v + 1,
                });
            }
            c = fire(d, &c, v)?;
            moves.push(v);
        }
    }
    while let Some(&v) = unhappy_vertices(d, &c).first() {
        c = fire(d, &c, v)?;
        moves.push(v);
    }
    Ok((c, moves))
}

/// Replays `moves` from `start`, returning every configuration visited
/// (including `start`).
pub fn trace(d: &CartanData, start: &Configuration, moves: &[usize]) -> Result<Vec<Configuration>> {
    check(d, start)?;
    let mut out = vec![start.clone()];
    for (step, &v) in moves.iter().enumerate() {
        let last = out.last().unwrap();
        if v >= d.rank() || status(d, last, v)? != VertexStatus::Unhappy {
            return Err(Error::IllegalMove {
                step: step + 1,
                vertex: v + 1,
            });
        }
        let next = fire(d, last, v)?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub vertex: usize,
    pub to: usize,
}

/// Every configuration reachable from a start, with one edge per legal move.
#[derive(Debug, Clone)]
pub struct GameGraph {
    label: String,
    nodes: Vec<Configuration>,
    edges: Vec<Edge>,
    terminals: Vec<usize>,
}

/// Breadth-first exploration of all plays, deduplicating configurations.
pub fn game_graph(d: &CartanData, start: &Configuration) -> Result<GameGraph> {
    check(d, start)?;
    let mut nodes = vec![start.clone()];
    let mut index: HashMap<Configuration, usize> = HashMap::from([(start.clone(), 0)]);
    let mut edges = Vec::new();
    let mut terminals = Vec::new();
    let mut k = 0;
    while k < nodes.len() {
        let current = nodes[k].clone();
        let unhappy = unhappy_vertices(d, &current);
        if unhappy.is_empty() {
            terminals.push(k);
        }
        for v in unhappy {
            let next = fire(d, &current, v)?;
            let to = match index.get(&next) {
                Some(&t) => t,
                None => {
                    nodes.push(next.clone());
                    index.insert(next, nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            edges.push(Edge { from: k, vertex: v, to });
        }
        k += 1;
    }
    Ok(GameGraph {
        label: d.label(),
        nodes,
        edges,
        terminals,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameGraphJson {
    #[serde(rename = "type")]
    pub type_label: String,
    pub marked_vertex: Option<usize>,
    pub arrows: Option<i64>,
    pub nodes: Vec<Vec<i64>>,
    pub edges: Vec<Edge>,
    pub terminals: Vec<usize>,
}

impl GameGraph {
    pub fn nodes(&self) -> &[Configuration] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn root(&self) -> &Configuration {
        &self.nodes[0]
    }

    pub fn terminals(&self) -> Vec<&Configuration> {
        self.terminals.iter().map(|&t| &self.nodes[t]).collect()
    }

    pub fn terminal_indices(&self) -> &[usize] {
        &self.terminals
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of distinct complete plays, i.e. root-to-terminal paths.
    /// Node indices are in BFS order, and every edge raises the height, so a
    /// reverse sweep by height is a valid topological order.
    pub fn count_complete_plays(&self) -> u128 {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.nodes[k].height()));
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            out[e.from].push(e.to);
        }
        let mut paths = vec![0u128; self.nodes.len()];
        for k in order {
            paths[k] = if out[k].is_empty() {
                1
            } else {
                out[k].iter().map(|&t| paths[t]).sum()
            };
        }
        paths[0]
    }

    /// Number of legal move sequences of each length, starting at the root.
    pub fn count_plays_by_length(&self) -> Vec<u128> {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&k| self.nodes[k].height());
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            out[e.from].push(e.to);
        }
        // ways[k][len]
        let mut ways: Vec<Vec<u128>> = vec![Vec::new(); self.nodes.len()];
        ways[0] = vec![1];
        let mut totals: Vec<u128> = Vec::new();
        for k in order {
            let w = std::mem::take(&mut ways[k]);
            for (len, &cnt) in w.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                if totals.len() <= len {
                    totals.resize(len + 1, 0);
                }
                totals[len] += cnt;
                for &t in &out[k] {
                    if ways[t].len() <= len + 1 {
                        ways[t].resize(len + 2, 0);
                    }
                    ways[t][len + 1] += cnt;
                }
            }
        }
        totals
    }

    pub fn to_json(&self) -> GameGraphJson {
        let marking = self.nodes[0].marking();
        GameGraphJson {
            type_label: self.label.clone(),
            marked_vertex: marking.map(|m| m.vertex + 1),
            arrows: marking.map(|m| m.arrows),
            nodes: self.nodes.iter().map(|c| c.chips.clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    from: e.from,
                    vertex: e.vertex + 1,
                    to: e.to,
                })
                .collect(),
            terminals: self.terminals.clone(),
        }
    }

    /// Graphviz rendering: nodes labeled by chip vectors, edges by the fired
    /// (1-based) vertex.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let name: String = self
            .label
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        writeln!(s, "digraph game_{name} {{").unwrap();
        writeln!(s, "  rankdir=TB;").unwrap();
        let terminals: BTreeSet<usize> = self.terminals.iter().copied().collect();
        for (k, c) in self.nodes.iter().enumerate() {
            let label = RootVec(c.chips.clone()).to_string();
            if terminals.contains(&k) {
                writeln!(s, "  n{k} [label=\"{label}\", shape=doublecircle];").unwrap();
            } else {
                writeln!(s, "  n{k} [label=\"{label}\"];").unwrap();
            }
        }
        for e in &self.edges {
            writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.vertex + 1).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// `h_j` for every vertex: the terminal height of the 1-arrow modified game
/// on the dual diagram at `j`, minus one.
pub fn heights(d: &CartanData) -> Vec<i64> {
    let dual = d.dual();
    (0..d.rank())
        .map(|j| {
            let start = Configuration::modified(d.rank(), j, 1).expect("valid vertex");
            let (end, _) = play(&dual, &start, &Strategy::LowestIndex).expect("modified game terminates");
            end.height() - 1
        })
        .collect()
}

/// Checks that the `k`-arrow modified game at `j` on `d` terminates at
/// height `k h + 1`, where `h + 1` is the 1-arrow terminal height.
pub fn k_arrow_height_check(d: &CartanData, j: usize, k: i64) -> Result<bool> {
    let one = Configuration::modified(d.rank(), j, 1)?;
    let many = Configuration::modified(d.rank(), j, k)?;
    let (end1, _) = play(d, &one, &Strategy::LowestIndex)?;
    let (endk, _) = play(d, &many, &Strategy::LowestIndex)?;
    let h = end1.height() - 1;
    Ok(endk.height() == k * h + 1)
}

/// All configurations seen in the standard game, over every start vertex.
pub fn standard_game_roots(d: &CartanData) -> Result<Vec<RootVec>> {
    let mut all = BTreeSet::new();
    for i in 0..d.rank() {
        let g = game_graph(d, &Configuration::single_chip(d.rank(), i))?;
        for c in g.nodes() {
            all.insert(c.as_root());
        }
    }
    Ok(all.into_iter().collect())
}

/// Terminal configurations of the standard game, per start vertex.
pub fn standard_terminals(d: &CartanData) -> Result<Vec<Vec<RootVec>>> {
    (0..d.rank())
        .map(|i| {
            let g = game_graph(d, &Configuration::single_chip(d.rank(), i))?;
            Ok(g.terminals().into_iter().map(|c| c.as_root()).collect())
        })
        .collect()
}
