//! The Hilbert polynomial of `G/P` in factored form:
//!
//! ```text
//! H_P(sum k_b w_b) = prod_{a in R+ \ R_P+} <w + rho, coroot(a)> / <rho, coroot(a)>
//! ```
//!
//! with one affine-linear factor per positive root outside `R_P`. The
//! polynomial is never expanded.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coroot_strings::{certify, maximal_good_string};
use crate::error::{Error, Result};
use crate::pointed_box::{EvalOracle, PointedBox};
use crate::root_system::{CorootVec, ParabolicSubset, RootData, RootVec};
use crate::scalar::Field;
use crate::Rational;

/// `n_b = 2 - <sum_{a in R_P+} a, coroot(b)>`; zero for `b` in `S_P`.
pub fn n_beta(data: &RootData, parabolic: &ParabolicSubset, beta: usize) -> i64 {
    let cartan = data.cartan();
    let sum: i64 = data
        .roots
        .positive_roots()
        .iter()
        .filter(|r| parabolic.contains_support(r))
        .map(|r| cartan.pair_simple_coroot(r, beta))
        .sum();
    2 - sum
}

/// `n_b` as `sum_{a in R+ \ R_P+} <a, coroot(b)>`.
pub fn n_beta_from_complement(data: &RootData, parabolic: &ParabolicSubset, beta: usize) -> i64 {
    let cartan = data.cartan();
    data.roots
        .positive_roots()
        .iter()
        .filter(|r| !parabolic.contains_support(r))
        .map(|r| cartan.pair_simple_coroot(r, beta))
        .sum()
}

/// First Chern class data of `G/P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Data {
    /// `(b, n_b)` for every `b` outside `S_P`, 0-based vertices.
    pub n_beta: Vec<(usize, i64)>,
    /// `gcd` of the `n_b`: the Fano index.
    pub index: i64,
    pub dimension: usize,
    pub b2: usize,
}

impl C1Data {
    pub fn values(&self) -> Vec<i64> {
        self.n_beta.iter().map(|&(_, n)| n).collect()
    }
}

pub fn c1(data: &RootData, parabolic: &ParabolicSubset) -> Result<C1Data> {
    if parabolic.is_full() {
        return Err(Error::FullParabolic);
    }
    let cartan = data.cartan();
    for b in parabolic.members() {
        let n = n_beta(data, parabolic, b);
        if n != 0 {
            return Err(Error::Internal(format!("n_{} = {n} inside S_P", b + 1)));
        }
    }
    let mut out = Vec::new();
    for b in parabolic.complement() {
        let n = n_beta(data, parabolic, b);
        if !parabolic.is_adjacent(cartan, b) && n != 2 {
            return Err(Error::Internal(format!("n_{} = {n} for a non-adjacent root", b + 1)));
        }
        out.push((b, n));
    }
    let index = out.iter().fold(0i64, |g, &(_, n)| g.gcd(&n));
    let dimension = data
        .roots
        .positive_roots()
        .iter()
        .filter(|r| !parabolic.contains_support(r))
        .count();
    Ok(C1Data {
        b2: out.len(),
        n_beta: out,
        index,
        dimension,
    })
}

/// Affine-linear form `sum_b c_b k_b + constant` in the weight variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineForm {
    /// Coefficient per vertex of the full diagram; zero on `S_P`.
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl AffineForm {
    /// `<w + rho, coroot>` as a form in the `k_b` with `b` outside `S_P`.
    pub fn from_coroot(coroot: &CorootVec, parabolic: &ParabolicSubset) -> AffineForm {
        let coeffs = coroot
            .0
            .iter()
            .enumerate()
            .map(|(i, &c)| if parabolic.contains(i) { 0 } else { c })
            .collect();
        AffineForm {
            coeffs,
            constant: coroot.height(),
        }
    }

    /// `k_b + constant`.
    pub fn single(n: usize, beta: usize, constant: i64) -> AffineForm {
        AffineForm {
            coeffs: RootVec::simple(n, beta).0,
            constant,
        }
    }

    pub fn eval(&self, weight: &[i64]) -> i64 {
        self.coeffs.iter().zip(weight).map(|(c, k)| c * k).sum::<i64>() + self.constant
    }

    pub fn eval_in<T: Field>(&self, weight: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(weight)
            .filter(|(&c, _)| c != 0)
            .fold(T::from_i64(self.constant).unwrap(), |acc, (&c, k)| {
                acc + T::from_i64(c).unwrap() * k.clone()
            })
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "k{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else {
            write!(f, " + {}", self.constant)
        }
    }
}

/// A weight `sum k_b w_b` supported outside `S_P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    coeffs: Vec<i64>,
}

impl Weight {
    pub fn new(coeffs: Vec<i64>, parabolic: &ParabolicSubset) -> Result<Weight> {
        if coeffs.len() != parabolic.rank() {
            return Err(Error::DimensionMismatch {
                got: coeffs.len(),
                rank: parabolic.rank(),
            });
        }
        if let Some(i) = parabolic.members().into_iter().find(|&i| coeffs[i] != 0) {
            return Err(Error::ContextMismatch(format!(
                "weight has a nonzero coefficient on vertex {} of S_P",
                i + 1
            )));
        }
        Ok(Weight { coeffs })
    }

    /// From the values on `S \ S_P`, in increasing vertex order.
    pub fn from_free(values: &[i64], parabolic: &ParabolicSubset) -> Result<Weight> {
        let free = parabolic.complement();
        if values.len() != free.len() {
            return Err(Error::DimensionMismatch {
                got: values.len(),
                rank: free.len(),
            });
        }
        let mut coeffs = vec![0; parabolic.rank()];
        for (&b, &v) in free.iter().zip(values) {
            coeffs[b] = v;
        }
        Ok(Weight { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

#[derive(Debug, Clone)]
pub struct HilbertPoly {
    label: String,
    parabolic: ParabolicSubset,
    coroots: Vec<CorootVec>,
    factors: Vec<AffineForm>,
    denominator: BigInt,
}

/// Builds `H_P` with one factor per root of `R+ \ R_P+`, in root order.
pub fn hilbert(data: &RootData, parabolic: &ParabolicSubset) -> Result<HilbertPoly> {
    if parabolic.rank() != data.rank() {
        return Err(Error::DimensionMismatch {
            got: parabolic.rank(),
            rank: data.rank(),
        });
    }
    let mut coroots = Vec::new();
    let mut factors = Vec::new();
    let mut denominator = BigInt::one();
    for r in data.roots.positive_roots() {
        if parabolic.contains_support(r) {
            continue;
        }
        let cr = data.roots.coroot(r);
        let form = AffineForm::from_coroot(&cr, parabolic);
        denominator *= BigInt::from(form.constant);
        coroots.push(cr);
        factors.push(form);
    }
    Ok(HilbertPoly {
        label: data.cartan().label(),
        parabolic: parabolic.clone(),
        coroots,
        factors,
        denominator,
    })
}

impl HilbertPoly {
    pub fn factors(&self) -> &[AffineForm] {
        &self.factors
    }

    /// The coroot each factor comes from.
    pub fn coroots(&self) -> &[CorootVec] {
        &self.coroots
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Total degree, which is the number of factors.
    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Variables `k_b`, 0-based vertices in increasing order.
    pub fn variables(&self) -> Vec<usize> {
        self.parabolic.complement()
    }

    /// Exact numerator at a full-length weight vector.
    pub fn numerator(&self, weight: &[i64]) -> BigInt {
        let mut acc = BigInt::one();
        for f in &self.factors {
            let v = f.eval(weight);
            if v == 0 {
                return BigInt::zero();
            }
            acc *= BigInt::from(v);
        }
        acc
    }

    pub fn evaluate(&self, weight: &Weight) -> Rational {
        Rational::new(self.numerator(weight.coeffs()), self.denominator.clone())
    }

    /// Evaluates with the variables `k_b` given in increasing vertex order.
    pub fn evaluate_free(&self, values: &[i64]) -> Rational {
        let w = Weight::from_free(values, &self.parabolic).expect("one value per variable");
        self.evaluate(&w)
    }

    /// Evaluation over any field, variables as in [`Self::evaluate_free`].
    pub fn evaluate_in<T: Field>(&self, values: &[T]) -> T {
        let mut full = vec![T::zero(); self.parabolic.rank()];
        for (b, v) in self.variables().into_iter().zip(values) {
            full[b] = v.clone();
        }
        let num = self
            .factors
            .iter()
            .fold(T::one(), |acc, f| acc * f.eval_in(&full));
        num / T::from_bigint(&self.denominator)
    }
}

impl EvalOracle<Rational> for HilbertPoly {
    fn dim(&self) -> usize {
        self.parabolic.complement().len()
    }

    fn eval(&self, k: &[i64]) -> Rational {
        self.evaluate_free(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub points_checked: usize,
    pub all_zero: bool,
    /// Strict-box points (the `n~` values) where `H_P` is not zero.
    pub nonzero_points: Vec<Vec<i64>>,
    pub value_at_minus_c1: String,
    /// `H_P(-c1) = (-1)^dim`.
    pub minus_c1_ok: bool,
}

/// Evaluates `H_P` at every `w = -sum n~_b w_b` with `0 < n~_b <= n_b` and
/// `sum n~_b < sum n_b`, and at `-c1`.
pub fn verify_vanishing_box(data: &RootData, parabolic: &ParabolicSubset) -> Result<VanishingReport> {
    let c = c1(data, parabolic)?;
    let h = hilbert(data, parabolic)?;
    let corner: Vec<u32> = c.values().iter().map(|&n| n as u32).collect();
    let bx = PointedBox::strict(corner);
    let mut nonzero_points = Vec::new();
    let points = bx.points();
    for p in &points {
        let k: Vec<i64> = p.iter().map(|&v| -i64::from(v)).collect();
        if !h.evaluate_free(&k).is_zero() {
            nonzero_points.push(p.iter().map(|&v| i64::from(v)).collect());
        }
    }
    let minus_c1: Vec<i64> = c.values().iter().map(|n| -n).collect();
    let at_c1 = h.evaluate_free(&minus_c1);
    let expected = if c.dimension % 2 == 0 { 1 } else { -1 };
    let minus_c1_ok = at_c1.is_integer() && at_c1.to_integer() == BigInt::from(expected);
    Ok(VanishingReport {
        points_checked: points.len(),
        all_zero: nonzero_points.is_empty(),
        nonzero_points,
        value_at_minus_c1: at_c1.to_string(),
        minus_c1_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCertificate {
    /// 1-based vertex.
    pub beta: usize,
    pub n_beta: i64,
    /// The factors `k_b + 1, ..., k_b + n_b - 1`, rendered.
    pub factors: Vec<String>,
    pub ok: bool,
    pub failures: Vec<String>,
}

/// For every `b` outside `S_P`, builds the maximal good string and checks
/// that the factor of `H_P` at its `j`-th element is exactly `k_b + j`
/// (with `b` itself giving `k_b + 1`), and that these are distinct literal
/// factors of the numerator.
pub fn certify_linear_factors(data: &RootData, parabolic: &ParabolicSubset) -> Result<Vec<FactorCertificate>> {
    let h = hilbert(data, parabolic)?;
    let n = data.rank();
    let mut out = Vec::new();
    for beta in parabolic.complement() {
        let s = maximal_good_string(data, parabolic, beta)?;
        let cert = certify(data, &s);
        let mut failures = Vec::new();
        if !(cert.valid && cert.good && cert.maximal) {
            failures.push(format!(
                "string is not a valid maximal good string (valid={}, good={}, maximal={})",
                cert.valid, cert.good, cert.maximal
            ));
        }
        let mut factors = Vec::new();
        let mut used = vec![false; h.factors.len()];
        for (j, e) in s.elements().iter().enumerate() {
            let form = AffineForm::from_coroot(e, parabolic);
            let expected = AffineForm::single(n, beta, j as i64 + 1);
            if form != expected {
                failures.push(format!("element {e} gives factor {form}, expected {expected}"));
            }
            match h.coroots.iter().enumerate().position(|(k, c)| c == e && !used[k]) {
                Some(k) => used[k] = true,
                None => failures.push(format!("element {e} is not a distinct factor of H_P")),
            }
            factors.push(form.to_string());
        }
        if factors.len() as i64 != cert.n_beta - 1 {
            failures.push(format!(
                "{} factors certified, expected n_b - 1 = {}",
                factors.len(),
                cert.n_beta - 1
            ));
        }
        out.push(FactorCertificate {
            beta: beta + 1,
            n_beta: cert.n_beta,
            factors,
            ok: failures.is_empty(),
            failures,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequalities {
    /// `sum_b (n_b - 1) <= dim`.
    pub pasquier: Inequality,
    /// `b2 (k0 - 1) <= dim`.
    pub mukai: Inequality,
    pub mukai_equality: bool,
}

pub fn inequalities(c: &C1Data) -> Inequalities {
    let dim = c.dimension as i64;
    let pasquier_lhs: i64 = c.values().iter().map(|n| n - 1).sum();
    let mukai_lhs = c.b2 as i64 * (c.index - 1);
    Inequalities {
        pasquier: Inequality {
            lhs: pasquier_lhs,
            rhs: dim,
            ok: pasquier_lhs <= dim,
        },
        mukai: Inequality {
            lhs: mukai_lhs,
            rhs: dim,
            ok: mukai_lhs <= dim,
        },
        mukai_equality: mukai_lhs == dim,
    }
}

/// Full per-case report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    #[serde(rename = "type")]
    pub type_label: String,
    #[serde(rename = "S_P")]
    pub parabolic: Vec<usize>,
    pub b2: usize,
    pub dim: usize,
    /// Keyed by 1-based vertex.
    pub n_beta: BTreeMap<usize, i64>,
    pub index_k0: i64,
    pub box_points_checked: usize,
    pub box_all_zero: bool,
    pub value_at_minus_c1: String,
    pub minus_c1_ok: bool,
    pub pasquier: Inequality,
    pub mukai: Inequality,
    pub mukai_equality: bool,
    /// `sum (n_b - 1)` certified as a lower bound on the degree by the
    /// falling-factorial coefficient at the shifted corner.
    pub degree_bound: Option<u64>,
    pub factor_certificates: Vec<FactorCertificate>,
    /// Every falsified invariant, with its witness.
    pub failures: Vec<String>,
}

impl CaseReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check for one `(type, S_P)` case. The degree bound is only
/// computed when the box has at most `degree_box_limit` points.
pub fn verify_case(data: &RootData, parabolic: &ParabolicSubset, degree_box_limit: usize) -> Result<CaseReport> {
    let c = c1(data, parabolic)?;
    let h = hilbert(data, parabolic)?;
    let vanishing = verify_vanishing_box(data, parabolic)?;
    let ineq = inequalities(&c);
    let certs = certify_linear_factors(data, parabolic)?;
    let mut failures = Vec::new();

    if h.degree() != c.dimension || h.factors().iter().any(|f| f.is_constant()) {
        failures.push("degree of H_P differs from the dimension".to_string());
    }
    for p in &vanishing.nonzero_points {
        failures.push(format!("H_P(-{p:?}) != 0 inside the strict box"));
    }
    if !vanishing.minus_c1_ok {
        failures.push(format!("H_P(-c1) = {}", vanishing.value_at_minus_c1));
    }
    for &(b, n) in &c.n_beta {
        let alt = n_beta_from_complement(data, parabolic, b);
        if alt != n {
            failures.push(format!("n_{} = {n} but the complement sum gives {alt}", b + 1));
        }
    }
    if !ineq.pasquier.ok {
        failures.push(format!("sum (n_b - 1) = {} > dim = {}", ineq.pasquier.lhs, ineq.pasquier.rhs));
    }
    if !ineq.mukai.ok {
        failures.push(format!("b2 (k0 - 1) = {} > dim = {}", ineq.mukai.lhs, ineq.mukai.rhs));
    }
    for cert in &certs {
        for f in &cert.failures {
            failures.push(format!("beta {}: {f}", cert.beta));
        }
        // predicted zeros at k_b = -j must show up in direct evaluation
        let free = parabolic.complement();
        let pos = free.iter().position(|&v| v + 1 == cert.beta).unwrap();
        for j in 1..cert.n_beta {
            let mut values: Vec<i64> = free.iter().map(|&v| 3 + v as i64).collect();
            values[pos] = -j;
            if !h.evaluate_free(&values).is_zero() {
                failures.push(format!("H_P does not vanish at k_{} = -{j}", cert.beta));
            }
        }
    }

    let box_size: usize = c.values().iter().map(|&n| n as usize).product();
    let degree_bound = if box_size <= degree_box_limit {
        let m = c.values();
        let (shifted, corner) = crate::pointed_box::shift_transform(&h, &m)?;
        let bound = crate::pointed_box::degree_bound(&shifted, &corner);
        if !(bound.applies && bound.lower_coeffs_vanish && !bound.witness.is_zero()) {
            failures.push("shifted H_P fails the pointed-box degree bound".to_string());
        }
        if bound.bound as usize > h.degree() {
            failures.push(format!("degree bound {} exceeds deg H_P = {}", bound.bound, h.degree()));
        }
        Some(bound.bound)
    } else {
        None
    };

    Ok(CaseReport {
        type_label: data.cartan().label(),
        parabolic: parabolic.members().iter().map(|v| v + 1).collect(),
        b2: c.b2,
        dim: c.dimension,
        n_beta: c.n_beta.iter().map(|&(b, n)| (b + 1, n)).collect(),
        index_k0: c.index,
        box_points_checked: vanishing.points_checked,
        box_all_zero: vanishing.all_zero,
        value_at_minus_c1: vanishing.value_at_minus_c1,
        minus_c1_ok: vanishing.minus_c1_ok,
        pasquier: ineq.pasquier,
        mukai: ineq.mukai,
        mukai_equality: ineq.mukai_equality,
        degree_bound,
        factor_certificates: certs,
        failures,
    })
}

/// Integer value of an exact rational, if it is one and fits in `i64`.
pub fn as_i64(v: &Rational) -> Option<i64> {
    if v.is_integer() {
        v.to_integer().to_i64()
    } else {
        None
    }
}

/// `(-1)^dim`.
pub fn sign_of_dimension(dim: usize) -> Rational {
    let one = Rational::one();
    if dim.is_multiple_of(2) {
        one
    } else {
        -one
    }
}
