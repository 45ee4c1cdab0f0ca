//! Finite-type Cartan data, positive (co)roots and the pairings between them.
//!
//! Vertices follow the Bourbaki labeling for every family:
//!
//! | type | diagram (0-based internally, 1-based in text) | short roots |
//! |------|-----------------------------------------------|-------------|
//! | A_n  | 1 - 2 - ... - n                               | none        |
//! | B_n  | 1 - ... - (n-1) => n                          | n           |
//! | C_n  | 1 - ... - (n-1) <= n                          | 1..n-1      |
//! | D_n  | 1 - ... - (n-2), (n-2) - (n-1), (n-2) - n     | none        |
//! | E_n  | 1 - 3 - 4 - 5 - ... - n, 2 - 4                | none        |
//! | F_4  | 1 - 2 => 3 - 4                                | 3, 4        |
//! | G_2  | 1 <= 2 (triple)                               | 1           |
//!
//! The Cartan matrix is stored as `A[i][j] = <alpha_j, coroot_i>`, so the
//! number of arrows entering vertex `i` from vertex `j` is `-A[i][j]`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];
}

/// A finite Cartan type such as `A4` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every valid type with rank at most `max_rank`, ordered by family then rank.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = LieType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        LieType::new(family, rank)
    }
}

/// Integer coefficients over the simple roots (or simple coroots).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i64>);

/// Coroots use the same coordinates, taken over the simple coroots.
pub type CorootVec = RootVec;

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

impl Index<usize> for RootVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &RootVec {
    type Output = RootVec;
    fn add(self, rhs: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVec {
    type Output = RootVec;
    fn sub(self, rhs: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&RootVec> for i64 {
    type Output = RootVec;
    fn mul(self, rhs: &RootVec) -> RootVec {
        RootVec(rhs.0.iter().map(|a| self * a).collect())
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A Cartan matrix together with where it came from.
///
/// `dual()` transposes the matrix: the roots of the dual data are the
/// coroots of the original, written over the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanData {
    lie_type: Option<LieType>,
    matrix: Vec<Vec<i64>>,
    dual: bool,
    /// Original (1-based in text) labels of the vertices; identity unless
    /// this is a subdiagram.
    labels: Vec<usize>,
}

impl CartanData {
    /// Bourbaki-labeled Cartan data for `lie_type`.
    pub fn build(lie_type: LieType) -> CartanData {
        let n = lie_type.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let simple = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        // `long` and `short` joined by `r` arrows pointing at the short root.
        let multi = |a: &mut Vec<Vec<i64>>, long: usize, short: usize, r: i64| {
            a[short][long] = -r;
            a[long][short] = -1;
        };
        match lie_type.family() {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    simple(&mut a, i, i + 1);
                }
            }
            Family::B => {
                for i in 0..n - 2 {
                    simple(&mut a, i, i + 1);
                }
                multi(&mut a, n - 2, n - 1, 2);
            }
            Family::C => {
                for i in 0..n - 2 {
                    simple(&mut a, i, i + 1);
                }
                multi(&mut a, n - 1, n - 2, 2);
            }
            Family::D => {
                for i in 0..n - 2 {
                    simple(&mut a, i, i + 1);
                }
                simple(&mut a, n - 3, n - 1);
            }
            Family::E => {
                simple(&mut a, 0, 2);
                simple(&mut a, 1, 3);
                for i in 2..n - 1 {
                    simple(&mut a, i, i + 1);
                }
            }
            Family::F => {
                simple(&mut a, 0, 1);
                multi(&mut a, 1, 2, 2);
                simple(&mut a, 2, 3);
            }
            Family::G => {
                multi(&mut a, 1, 0, 3);
            }
        }
        CartanData {
            lie_type: Some(lie_type),
            matrix: a,
            dual: false,
            labels: (1..=n).collect(),
        }
    }

    /// Cartan data from an explicit matrix. The matrix must be a valid
    /// generalized Cartan matrix of finite type; only the sign pattern is
    /// checked here.
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Result<CartanData> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { got: row.len(), rank: n });
            }
            for j in 0..n {
                let ok = if i == j {
                    row[j] == 2
                } else {
                    row[j] <= 0 && (row[j] == 0) == (matrix[j][i] == 0)
                };
                if !ok {
                    return Err(Error::Internal(format!(
                        "not a Cartan matrix at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CartanData {
            lie_type: None,
            matrix,
            dual: false,
            labels: (1..=n).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn lie_type(&self) -> Option<LieType> {
        self.lie_type
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `A[i][j] = <alpha_j, coroot_i>`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// Number of arrows entering vertex `i` from vertex `j`.
    pub fn arrows(&self, i: usize, j: usize) -> i64 {
        if i == j {
            0
        } else {
            -self.matrix[i][j]
        }
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != i && self.matrix[i][j] != 0)
    }

    pub fn is_simply_laced(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[i][j] >= -1))
    }

    /// 1-based labels of the vertices in the ambient diagram.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self) -> String {
        let base = match self.lie_type {
            Some(t) => t.to_string(),
            None => format!("rank{}", self.rank()),
        };
        let n = self.lie_type.map(|t| t.rank()).unwrap_or(self.rank());
        let mut out = base;
        if self.labels.len() != n || self.labels.iter().enumerate().any(|(i, &l)| l != i + 1) {
            let list: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
            out.push_str(&format!("[{}]", list.join(",")));
        }
        if self.dual {
            out.push('^');
        }
        out
    }

    /// Transposed Cartan data (the diagram of simple coroots).
    pub fn dual(&self) -> CartanData {
        let n = self.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[j][i]).collect())
            .collect();
        CartanData {
            lie_type: self.lie_type,
            matrix,
            dual: !self.dual,
            labels: self.labels.clone(),
        }
    }

    /// Induced subdiagram on `vertices` (0-based, kept in the given order).
    pub fn subdiagram(&self, vertices: &[usize]) -> Result<CartanData> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let matrix = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.matrix[i][j]).collect())
            .collect();
        Ok(CartanData {
            lie_type: self.lie_type,
            matrix,
            dual: self.dual,
            labels: vertices.iter().map(|&v| self.labels[v]).collect(),
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.rank() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v + 1,
                rank: self.rank(),
            })
        }
    }

    /// Positive integers `d_i` with `d_i A[i][j] = d_j A[j][i]`, normalized
    /// so that the shortest simple root of each component has `d = 1`.
    /// `d_i` is proportional to the squared length of `alpha_i`.
    pub fn symmetrizer(&self) -> Vec<i64> {
        let n = self.rank();
        // rational d as (num, den), propagated along the (forest) diagram
        let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            let mut component = vec![start];
            d[start] = Some((1, 1));
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let (num, den) = d[i].unwrap();
                for j in self.neighbors(i).collect::<Vec<_>>() {
                    if d[j].is_none() {
                        // d_j = d_i * A[i][j] / A[j][i]
                        let nn = num * self.matrix[i][j];
                        let dd = den * self.matrix[j][i];
                        let g = num_integer::gcd(nn, dd);
                        let (mut nn, mut dd) = (nn / g, dd / g);
                        if dd < 0 {
                            nn = -nn;
                            dd = -dd;
                        }
                        d[j] = Some((nn, dd));
                        component.push(j);
                        queue.push_back(j);
                    }
                }
            }
            // scale the component to coprime positive integers
            let l = component
                .iter()
                .fold(1i64, |acc, &i| num_integer::lcm(acc, d[i].unwrap().1));
            let mut vals: Vec<i64> = component
                .iter()
                .map(|&i| {
                    let (num, den) = d[i].unwrap();
                    num * (l / den)
                })
                .collect();
            let g = vals.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v));
            for v in vals.iter_mut() {
                *v /= g;
            }
            for (k, &i) in component.iter().enumerate() {
                d[i] = Some((vals[k], 1));
            }
        }
        d.into_iter().map(|x| x.unwrap().0).collect()
    }

    /// Symmetric bilinear form `(x, y)` on root coordinates, scaled so that
    /// `(alpha_i, alpha_i) = 2 d_i`.
    pub fn inner(&self, x: &RootVec, y: &RootVec) -> i64 {
        let d = self.symmetrizer();
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * y[j] * d[i] * self.matrix[i][j];
            }
        }
        s
    }

    /// `<x, coroot_i>` for `x` in root coordinates.
    pub fn pair_simple_coroot(&self, x: &RootVec, i: usize) -> i64 {
        self.matrix[i].iter().zip(&x.0).map(|(a, c)| a * c).sum()
    }

    /// `<root, coroot>` for a root over simple roots and a coroot over simple
    /// coroots.
    pub fn pairing(&self, root: &RootVec, coroot: &CorootVec) -> Result<i64> {
        self.check_len(root)?;
        self.check_len(coroot)?;
        let n = self.rank();
        let mut s = 0;
        for j in 0..n {
            if coroot[j] != 0 {
                s += coroot[j] * self.pair_simple_coroot(root, j);
            }
        }
        Ok(s)
    }

    /// `<sum k_i w_i, coroot>` where `w_i` are the fundamental weights.
    pub fn weight_pairing(&self, weight: &[i64], coroot: &CorootVec) -> Result<i64> {
        if weight.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                got: weight.len(),
                rank: self.rank(),
            });
        }
        self.check_len(coroot)?;
        Ok(weight.iter().zip(&coroot.0).map(|(k, c)| k * c).sum())
    }

    /// Simple reflection `s_i(x) = x - <x, coroot_i> alpha_i` in root coordinates.
    pub fn reflect(&self, i: usize, x: &RootVec) -> RootVec {
        let p = self.pair_simple_coroot(x, i);
        let mut out = x.clone();
        out.0[i] -= p;
        out
    }

    fn check_len(&self, v: &RootVec) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                got: v.len(),
                rank: self.rank(),
            })
        }
    }
}

/// The positive roots of a Cartan datum, indexed for O(1) membership.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanData,
    positive: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
}

impl RootSystem {
    /// Enumerates positive roots by extending along unbroken root strings,
    /// one height level at a time.
    pub fn new(cartan: CartanData) -> RootSystem {
        let positive = string_closure(&cartan);
        let index = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        RootSystem {
            cartan,
            positive,
            index,
        }
    }

    pub fn of_type(t: LieType) -> RootSystem {
        RootSystem::new(CartanData::build(t))
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive
    }

    pub fn len(&self) -> usize {
        self.positive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }

    pub fn contains(&self, v: &RootVec) -> bool {
        self.index.contains_key(v)
    }

    pub fn is_root(&self, v: &RootVec) -> bool {
        self.contains(v) || self.contains(&-v)
    }

    pub fn position(&self, v: &RootVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn sum_positive_roots(&self) -> RootVec {
        let mut sum = RootVec::zero(self.rank());
        for r in &self.positive {
            sum = &sum + r;
        }
        sum
    }

    pub fn highest_root(&self) -> &RootVec {
        self.positive.last().expect("nonempty root system")
    }

    /// The coroot of a positive root, over simple coroots:
    /// `coroot(alpha) = 2 alpha / (alpha, alpha)`.
    pub fn coroot(&self, root: &RootVec) -> CorootVec {
        let d = self.cartan.symmetrizer();
        let norm = self.cartan.inner(root, root);
        let coeffs = root
            .0
            .iter()
            .zip(&d)
            .map(|(a, di)| {
                let num = 2 * a * di;
                debug_assert_eq!(num % norm, 0);
                num / norm
            })
            .collect();
        RootVec(coeffs)
    }

    /// Positive roots supported on `subset`.
    pub fn parabolic_roots(&self, subset: &ParabolicSubset) -> Vec<&RootVec> {
        self.positive
            .iter()
            .filter(|r| subset.contains_support(r))
            .collect()
    }
}

/// Positive roots and positive coroots of one Cartan datum.
#[derive(Debug, Clone)]
pub struct RootData {
    pub roots: RootSystem,
    pub coroots: RootSystem,
}

impl RootData {
    pub fn new(cartan: CartanData) -> RootData {
        let coroots = RootSystem::new(cartan.dual());
        RootData {
            roots: RootSystem::new(cartan),
            coroots,
        }
    }

    pub fn of_type(t: LieType) -> RootData {
        RootData::new(CartanData::build(t))
    }

    pub fn cartan(&self) -> &CartanData {
        self.roots.cartan()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }
}

fn string_closure(cartan: &CartanData) -> Vec<RootVec> {
    let n = cartan.rank();
    let mut found: HashSet<RootVec> = HashSet::new();
    let mut simple: Vec<RootVec> = (0..n).map(|i| RootVec::simple(n, i)).collect();
    simple.sort();
    let mut levels: Vec<Vec<RootVec>> = vec![simple];
    for r in &levels[0] {
        found.insert(r.clone());
    }
    loop {
        let current = levels.last().unwrap();
        let mut next: Vec<RootVec> = Vec::new();
        for root in current {
            for i in 0..n {
                if *root == RootVec::simple(n, i) {
                    continue;
                }
                // p = how far the alpha_i-string extends below `root`
                let mut p = 0;
                let mut probe = root.clone();
                loop {
                    probe.0[i] -= 1;
                    if found.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - cartan.pair_simple_coroot(root, i);
                if q > 0 {
                    let mut up = root.clone();
                    up.0[i] += 1;
                    if found.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

/// Positive roots found as the orbit of the simple roots under simple
/// reflections. Shares no code path with [`RootSystem::new`].
pub fn reflection_closure(cartan: &CartanData) -> Vec<RootVec> {
    let n = cartan.rank();
    let mut seen: HashSet<RootVec> = HashSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for i in 0..n {
        let r = RootVec::simple(n, i);
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let s = cartan.reflect(i, &r);
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut out: Vec<RootVec> = seen.into_iter().filter(|r| r.is_positive()).collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    out
}

/// A subset `S_P` of the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicSubset {
    members: Vec<bool>,
}

impl ParabolicSubset {
    pub fn empty(n: usize) -> Self {
        ParabolicSubset {
            members: vec![false; n],
        }
    }

    /// From 0-based vertex indices.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut members = vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(Error::VertexOutOfRange { vertex: i + 1, rank: n });
            }
            members[i] = true;
        }
        Ok(ParabolicSubset { members })
    }

    /// From a bitmask over vertices (bit `i` = vertex `i`, 0-based).
    pub fn from_mask(n: usize, mask: u32) -> Self {
        ParabolicSubset {
            members: (0..n).map(|i| mask & (1 << i) != 0).collect(),
        }
    }

    /// Parses a comma-separated 1-based list such as `"1,2,3"`. The empty
    /// string gives the empty subset.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty(n));
        }
        let mut indices = Vec::new();
        for part in s.split(',') {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::BadSubset(s.to_string()))?;
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, rank: n });
            }
            indices.push(v - 1);
        }
        Self::from_indices(n, &indices)
    }

    pub fn rank(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.members[i]).collect()
    }

    /// Simple roots not in `S_P`, i.e. the variables of the Hilbert polynomial.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.members[i]).collect()
    }

    pub fn contains_support(&self, r: &RootVec) -> bool {
        r.support().all(|i| self.members[i])
    }

    /// Connected components of the induced subdiagram, each sorted, ordered
    /// by smallest vertex.
    pub fn components(&self, cartan: &CartanData) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if !self.members[start] || seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in cartan.neighbors(i) {
                    if self.members[j] && !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether `beta` lies outside `S_P` and has a neighbor inside it.
    pub fn is_adjacent(&self, cartan: &CartanData, beta: usize) -> bool {
        !self.members[beta] && cartan.neighbors(beta).any(|j| self.members[j])
    }

    pub fn adjacent_vertices(&self, cartan: &CartanData) -> Vec<usize> {
        (0..self.rank())
            .filter(|&b| self.is_adjacent(cartan, b))
            .collect()
    }

    /// 1-based comma-separated rendering.
    pub fn to_list_string(&self) -> String {
        self.members()
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Every subset except the full one, in bitmask order.
    pub fn all_proper(n: usize) -> Vec<ParabolicSubset> {
        (0..(1u32 << n) - 1)
            .map(|mask| ParabolicSubset::from_mask(n, mask))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn parses_types() {
        assert_eq!(t("a4"), LieType::new(Family::A, 4).unwrap());
        assert_eq!(t("E8").rank(), 8);
        assert!("D3".parse::<LieType>().is_err());
        assert!("E9".parse::<LieType>().is_err());
        assert!("B1".parse::<LieType>().is_err());
        assert!("F5".parse::<LieType>().is_err());
        assert!("Z9".parse::<LieType>().is_err());
        assert!("A".parse::<LieType>().is_err());
        assert!("A0".parse::<LieType>().is_err());
    }

    #[test]
    fn a2_matrix() {
        let c = CartanData::build(t("A2"));
        assert_eq!(c.matrix(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn g2_off_diagonal() {
        let c = CartanData::build(t("G2"));
        let mut off = vec![c.entry(0, 1), c.entry(1, 0)];
        off.sort();
        assert_eq!(off, vec![-3, -1]);
        // short alpha_1 receives three arrows
        assert_eq!(c.arrows(0, 1), 3);
    }

    #[test]
    fn f4_arrows() {
        let c = CartanData::build(t("F4"));
        assert_eq!(c.arrows(2, 1), 2);
        assert_eq!(c.arrows(1, 2), 1);
        assert_eq!(c.arrows(0, 1), 1);
        assert_eq!(c.arrows(3, 2), 1);
    }

    #[test]
    fn dual_is_involution_and_transposes() {
        for ty in LieType::all_up_to_rank(8) {
            let c = CartanData::build(ty);
            assert_eq!(c.dual().dual(), c);
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    assert_eq!(c.dual().entry(i, j), c.entry(j, i));
                }
            }
        }
        let a3 = CartanData::build(t("A3"));
        assert_eq!(a3.dual().matrix(), a3.matrix());
        let b3 = CartanData::build(t("B3"));
        let c3 = CartanData::build(t("C3"));
        assert_eq!(b3.dual().matrix(), c3.matrix());
        let f4 = CartanData::build(t("F4"));
        assert_eq!(f4.dual().arrows(1, 2), 2);
        assert_eq!(f4.dual().arrows(2, 1), 1);
    }

    #[test]
    fn symmetrizable() {
        for ty in LieType::all_up_to_rank(8) {
            let c = CartanData::build(ty);
            let d = c.symmetrizer();
            assert!(d.iter().all(|&x| x > 0));
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    assert_eq!(d[i] * c.entry(i, j), d[j] * c.entry(j, i), "{ty}");
                }
            }
        }
    }

    #[test]
    fn small_root_systems() {
        let a2 = RootSystem::of_type(t("A2"));
        assert_eq!(
            a2.positive_roots(),
            &[RootVec(vec![0, 1]), RootVec(vec![1, 0]), RootVec(vec![1, 1])]
        );
        assert_eq!(RootSystem::of_type(t("A4")).len(), 10);
        let f4 = RootSystem::of_type(t("F4"));
        assert_eq!(f4.len(), 24);
        let sub: Vec<_> = f4.positive_roots().iter().filter(|r| r[3] == 0).collect();
        assert_eq!(sub.len(), 9);
        assert!(f4.contains(&RootVec(vec![0, 1, 2, 0])));
    }

    #[test]
    fn root_counts_match_reflection_orbits() {
        let expected = |ty: LieType| -> usize {
            let n = ty.rank();
            match ty.family() {
                Family::A => n * (n + 1) / 2,
                Family::B | Family::C => n * n,
                Family::D => n * (n - 1),
                Family::E => [36, 63, 120][n - 6],
                Family::F => 24,
                Family::G => 6,
            }
        };
        for ty in LieType::all_up_to_rank(8) {
            let c = CartanData::build(ty);
            let rs = RootSystem::new(c.clone());
            assert_eq!(rs.len(), expected(ty), "{ty}");
            assert_eq!(rs.positive_roots(), reflection_closure(&c).as_slice(), "{ty}");
        }
    }

    #[test]
    fn rho_pairs_to_height() {
        for ty in LieType::all_up_to_rank(8) {
            let c = CartanData::build(ty);
            let dual = RootSystem::new(c.dual());
            let rho = vec![1; c.rank()];
            for cr in dual.positive_roots() {
                assert_eq!(c.weight_pairing(&rho, cr).unwrap(), cr.height());
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual_basis() {
        let c = CartanData::build(t("B3"));
        for i in 0..3 {
            for j in 0..3 {
                let w = RootVec::simple(3, i);
                let cr = RootVec::simple(3, j);
                assert_eq!(c.weight_pairing(&w.0, &cr).unwrap(), (i == j) as i64);
            }
        }
    }

    #[test]
    fn f4_pairings() {
        let c = CartanData::build(t("F4"));
        let a2 = RootVec::simple(4, 1);
        let a3 = RootVec::simple(4, 2);
        // s_3(alpha_2) = alpha_2 + 2 alpha_3
        assert_eq!(c.pairing(&a2, &a3).unwrap(), -2);
        assert_eq!(c.pairing(&a3, &a2).unwrap(), -1);
        assert!(c.pairing(&RootVec(vec![1]), &a3).is_err());
    }

    #[test]
    fn coroots_match_dual_system() {
        for ty in LieType::all_up_to_rank(8) {
            let rs = RootSystem::of_type(ty);
            let dual = RootSystem::new(rs.cartan().dual());
            let mut coroots: Vec<RootVec> = rs.positive_roots().iter().map(|r| rs.coroot(r)).collect();
            coroots.sort();
            let mut expected = dual.positive_roots().to_vec();
            expected.sort();
            assert_eq!(coroots, expected, "{ty}");
        }
    }

    #[test]
    fn sum_of_positive_roots() {
        assert_eq!(RootSystem::of_type(t("A2")).sum_positive_roots().0, vec![2, 2]);
        assert_eq!(
            RootSystem::of_type(t("A4")).sum_positive_roots().0,
            vec![4, 6, 6, 4]
        );
        // alpha_1, alpha_2, alpha_1+alpha_2, alpha_1+2alpha_2
        assert_eq!(RootSystem::of_type(t("B2")).sum_positive_roots().0, vec![3, 4]);
    }

    #[test]
    fn parabolic_subsets() {
        let c = CartanData::build(t("A3"));
        let p = ParabolicSubset::parse("1,3", 3).unwrap();
        assert_eq!(p.components(&c), vec![vec![0], vec![2]]);
        assert_eq!(p.adjacent_vertices(&c), vec![1]);
        assert_eq!(p.complement(), vec![1]);
        assert_eq!(p.to_list_string(), "1,3");
        assert!(ParabolicSubset::parse("0", 3).is_err());
        assert!(ParabolicSubset::parse("4", 3).is_err());
        assert!(ParabolicSubset::parse("x", 3).is_err());
        assert_eq!(ParabolicSubset::all_proper(3).len(), 7);
    }

    #[test]
    fn subdiagram_keeps_labels() {
        let f4 = CartanData::build(t("F4"));
        let sub = f4.dual().subdiagram(&[0, 1, 2]).unwrap();
        assert_eq!(sub.rank(), 3);
        assert_eq!(sub.labels(), &[1, 2, 3]);
        assert_eq!(sub.arrows(1, 2), 2);
        assert_eq!(sub.label(), "F4[1,2,3]^");
    }
}
