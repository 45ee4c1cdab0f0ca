//! Falling-factorial coefficients of a lattice function on a box, and the
//! degree lower bound they certify.
//!
//! For a multi-index `s`, `M_s(k) = prod_i k_i (k_i - 1) ... (k_i - s_i + 1)`.
//! Any polynomial can be written `P(k) = sum_s h_s M_s(k)`, and because
//! `M_s(k) = 0` unless `s <= k`, the coefficients `h_s` with `s <= m` are
//! determined by the values of `P` on the box `0 <= k <= m`:
//!
//! ```text
//! h_k = (P(k) - sum_{s <= k, s != k} h_s M_s(k)) / (k_1! ... k_l!)
//! ```
//!
//! solved in order of increasing height. If `P` vanishes on the pointed box
//! at `m` but not at `m`, every lower coefficient is zero and `h_m != 0`, so
//! `deg P >= m_1 + ... + m_l`.
//!
//! Everything here is generic over [`Field`]; use [`Rational`](crate::Rational)
//! for exact answers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{factorial, falling, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxMode {
    /// `0 <= k <= m`, `k != m`.
    Pointed,
    /// `0 < k <= m`, `k != m` (equivalently `sum k < sum m`).
    Strict,
}

/// Lattice points of a pointed box, visited by height and then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedBox {
    corner: Vec<u32>,
    mode: BoxMode,
}

impl PointedBox {
    pub fn pointed(corner: Vec<u32>) -> Self {
        PointedBox {
            corner,
            mode: BoxMode::Pointed,
        }
    }

    pub fn strict(corner: Vec<u32>) -> Self {
        PointedBox {
            corner,
            mode: BoxMode::Strict,
        }
    }

    pub fn corner(&self) -> &[u32] {
        &self.corner
    }

    pub fn mode(&self) -> BoxMode {
        self.mode
    }

    /// Every point of the closed box `lo <= k <= m` in height-then-lex
    /// order, including the corner.
    fn closed_points(&self) -> Vec<Vec<u32>> {
        let lo = match self.mode {
            BoxMode::Pointed => 0,
            BoxMode::Strict => 1,
        };
        if self.corner.iter().any(|&c| c < lo) {
            return Vec::new();
        }
        let mut pts = vec![Vec::new()];
        for &c in &self.corner {
            let mut next = Vec::with_capacity(pts.len() * (c - lo + 1) as usize);
            for p in &pts {
                for v in lo..=c {
                    let mut q: Vec<u32> = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            pts = next;
        }
        pts.sort_by(|a, b| {
            let ha: u32 = a.iter().sum();
            let hb: u32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        pts
    }

    pub fn points(&self) -> Vec<Vec<u32>> {
        let mut pts = self.closed_points();
        pts.retain(|p| *p != self.corner);
        pts
    }

    pub fn len(&self) -> usize {
        let lo = match self.mode {
            BoxMode::Pointed => 0,
            BoxMode::Strict => 1,
        };
        if self.corner.iter().any(|&c| c < lo) {
            return 0;
        }
        self.corner
            .iter()
            .map(|&c| (c - lo + 1) as usize)
            .product::<usize>()
            - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A deterministic function on integer lattice points.
pub trait EvalOracle<T> {
    fn dim(&self) -> usize;
    fn eval(&self, k: &[i64]) -> T;
}

/// Adapts a closure into an [`EvalOracle`].
pub struct FnOracle<F> {
    dim: usize,
    f: F,
}

impl<F> FnOracle<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnOracle { dim, f }
    }
}

impl<T, F: Fn(&[i64]) -> T> EvalOracle<T> for FnOracle<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, k: &[i64]) -> T {
        (self.f)(k)
    }
}

impl<T, O: EvalOracle<T> + ?Sized> EvalOracle<T> for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn eval(&self, k: &[i64]) -> T {
        (**self).eval(k)
    }
}

fn monomial<T: Field>(s: &[u32], k: &[T]) -> T {
    s.iter()
        .zip(k)
        .fold(T::one(), |acc, (&si, ki)| acc * falling(ki, si))
}

fn to_i64(p: &[u32]) -> Vec<i64> {
    p.iter().map(|&v| i64::from(v)).collect()
}

/// Sparse falling-factorial coefficients `h_s`, `0 <= s <= m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxCoeffs<T> {
    corner: Vec<u32>,
    nonzero: BTreeMap<Vec<u32>, T>,
}

impl<T: Field> BoxCoeffs<T> {
    pub fn corner(&self) -> &[u32] {
        &self.corner
    }

    pub fn get(&self, s: &[u32]) -> T {
        self.nonzero.get(s).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero coefficients, keyed by multi-index.
    pub fn nonzero(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.nonzero
    }

    /// `sum_s h_s M_s(k)` at an arbitrary point.
    pub fn evaluate(&self, k: &[T]) -> T {
        self.nonzero
            .iter()
            .fold(T::zero(), |acc, (s, h)| acc + h.clone() * monomial(s, k))
    }

    pub fn evaluate_int(&self, k: &[i64]) -> T {
        let k: Vec<T> = k.iter().map(|&v| T::from_i64(v).unwrap()).collect();
        self.evaluate(&k)
    }
}

/// Triangular solve for the coefficients on the box `0 <= s <= m`.
pub fn coeffs<T: Field, O: EvalOracle<T>>(oracle: &O, m: &[u32]) -> BoxCoeffs<T> {
    assert_eq!(oracle.dim(), m.len(), "oracle dimension");
    let mut nonzero: BTreeMap<Vec<u32>, T> = BTreeMap::new();
    for k in PointedBox::pointed(m.to_vec()).closed_points() {
        let kt: Vec<T> = k.iter().map(|&v| T::from_u32(v).unwrap()).collect();
        let mut rest = oracle.eval(&to_i64(&k));
        for (s, h) in &nonzero {
            if s.iter().zip(&k).all(|(a, b)| a <= b) {
                rest = rest - h.clone() * monomial(s, &kt);
            }
        }
        if !rest.is_zero() {
            let denom = k.iter().fold(T::one(), |acc, &v| acc * factorial::<T>(v));
            nonzero.insert(k, rest / denom);
        }
    }
    BoxCoeffs {
        corner: m.to_vec(),
        nonzero,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeBound<T> {
    /// The oracle vanishes on the pointed box at `m` and not at `m`.
    pub applies: bool,
    /// `m_1 + ... + m_l`; a lower bound on the degree when `applies`.
    pub bound: u64,
    /// `h_m`.
    pub witness: T,
    /// Every `h_s` with `s <= m`, `s != m` is zero.
    pub lower_coeffs_vanish: bool,
}

pub fn degree_bound<T: Field, O: EvalOracle<T>>(oracle: &O, m: &[u32]) -> DegreeBound<T> {
    let vanishes = PointedBox::pointed(m.to_vec())
        .points()
        .iter()
        .all(|p| oracle.eval(&to_i64(p)).is_zero());
    let corner = oracle.eval(&to_i64(m));
    let c = coeffs(oracle, m);
    let witness = c.get(m);
    let lower_coeffs_vanish = c.nonzero.keys().all(|s| s == m);
    DegreeBound {
        applies: vanishes && !corner.is_zero(),
        bound: m.iter().map(|&v| u64::from(v)).sum(),
        witness,
        lower_coeffs_vanish,
    }
}

/// `Q(k) = H(-k - 1)`.
pub struct Shifted<O> {
    inner: O,
}

impl<T, O: EvalOracle<T>> EvalOracle<T> for Shifted<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval(&self, k: &[i64]) -> T {
        let shifted: Vec<i64> = k.iter().map(|&v| -v - 1).collect();
        self.inner.eval(&shifted)
    }
}

/// Shifts an index map `H` whose zeros fill `{ -m <= k <= -1, k != -m }` so
/// that they become the pointed box at `m - 1`. Fails when `H(-m) = 0` or
/// some `m_i` is not positive. Returns the shifted oracle and its corner
/// `m - 1`.
pub fn shift_transform<T: Field, O: EvalOracle<T>>(oracle: O, m: &[i64]) -> Result<(Shifted<O>, Vec<u32>)> {
    if m.len() != oracle.dim() {
        return Err(Error::DimensionMismatch {
            got: m.len(),
            rank: oracle.dim(),
        });
    }
    if m.iter().any(|&v| v < 1) {
        return Err(Error::Hypothesis("first Chern class coefficients must be positive".into()));
    }
    let minus: Vec<i64> = m.iter().map(|&v| -v).collect();
    if oracle.eval(&minus).is_zero() {
        return Err(Error::Hypothesis("index vanishes at -c1".into()));
    }
    let corner = m.iter().map(|&v| (v - 1) as u32).collect();
    Ok((Shifted { inner: oracle }, corner))
}

/// Intersection numbers of a 4-manifold with `H^2` spanned by `t1, t2` and
/// `c1 = a1 t1 + a2 t2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Dim4Chern {
    pub t11: i64,
    pub t22: i64,
    pub t12: i64,
    pub a1: i64,
    pub a2: i64,
    pub todd: i64,
}

impl Dim4Chern {
    /// Coefficients `(a20, a02, a11, a10, a01, a00)` of
    /// `k1^2, k2^2, k1 k2, k1, k2, 1`.
    pub fn coefficients<T: Field>(&self) -> [T; 6] {
        let f = |v: i64| T::from_i64(v).unwrap();
        let two = f(2);
        [
            f(self.t11) / two.clone(),
            f(self.t22) / two.clone(),
            f(self.t12),
            f(self.a1 * self.t11 + self.a2 * self.t12) / two.clone(),
            f(self.a1 * self.t12 + self.a2 * self.t22) / two,
            f(self.todd),
        ]
    }
}

/// Index of `k1 t1 + k2 t2` on a 4-manifold from its intersection numbers.
pub fn dim4_index<T: Field>(chern: &Dim4Chern, k1: &T, k2: &T) -> T {
    let [a20, a02, a11, a10, a01, a00] = chern.coefficients::<T>();
    a20 * k1.clone() * k1.clone()
        + a02 * k2.clone() * k2.clone()
        + a11 * k1.clone() * k2.clone()
        + a10 * k1.clone()
        + a01 * k2.clone()
        + a00
}
