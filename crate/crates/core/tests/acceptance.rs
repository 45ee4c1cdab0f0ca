//! Acceptance criteria. Runs as a plain binary so each criterion prints one
//! PASS/FAIL line; exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kostant_core::coroot_strings::{certify, component_string, fill_gaps};
use kostant_core::hilbert::{c1, certify_linear_factors, hilbert};
use kostant_core::kostant_game::{
    game_graph, heights, play, standard_game_roots, Configuration, Strategy,
};
use kostant_core::pointed_box::{coeffs, degree_bound, FnOracle, PointedBox};
use kostant_core::report::{run_survey, SurveyReport};
use kostant_core::root_system::reflection_closure;
use kostant_core::weyl_words::{brute::WeylGroup, moves_to_word, word_to_moves};
use kostant_core::{
    CartanData, Family, LieType, ParabolicSubset, Rational, RootData, RootSystem, RootVec,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ty(s: &str) -> LieType {
    s.parse().unwrap()
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn criterion_1() -> Check {
    let a4 = CartanData::build(ty("A4"));
    let h = heights(&a4);
    ensure(h == vec![4, 6, 6, 4], || format!("heights(A4) = {h:?}"))?;
    let rs = RootSystem::new(a4);
    let weighted = RootVec(h.clone());
    ensure(weighted == rs.sum_positive_roots(), || {
        format!("sum h_j alpha_j = {weighted} but sum R+ = {}", rs.sum_positive_roots())
    })?;
    Ok("heights (4,6,6,4)".into())
}

fn criterion_2() -> Check {
    let data = RootData::of_type(ty("F4"));
    let sub = data.cartan().dual().subdiagram(&[0, 1, 2]).unwrap();
    let start = Configuration::modified(3, 2, 1).unwrap();
    let g = game_graph(&sub, &start).unwrap();
    let terms: Vec<Vec<i64>> = g.terminals().iter().map(|c| c.chips().to_vec()).collect();
    ensure(terms == vec![vec![2, 4, 3]], || format!("terminals {terms:?}"))?;

    let p = ParabolicSubset::parse("1,2,3", 4).unwrap();
    let c = c1(&data, &p).unwrap();
    ensure(c.n_beta == vec![(3, 11)], || format!("n_beta {:?}", c.n_beta))?;

    let s = component_string(&data, &[0, 1, 2], 3, &Strategy::Sequence(vec![2, 1, 2, 0, 1, 2])).unwrap();
    let filled = fill_gaps(&data, &s).unwrap();
    let listed: [[i64; 4]; 10] = [
        [0, 0, 0, 1],
        [0, 0, 1, 1],
        [0, 1, 1, 1],
        [0, 2, 1, 1],
        [0, 2, 2, 1],
        [1, 2, 2, 1],
        [2, 2, 2, 1],
        [2, 3, 2, 1],
        [2, 4, 2, 1],
        [2, 4, 3, 1],
    ];
    let got: Vec<Vec<i64>> = filled.elements().iter().map(|e| e.0.clone()).collect();
    let want: Vec<Vec<i64>> = listed.iter().map(|r| r.to_vec()).collect();
    ensure(got == want, || format!("filled string {got:?}"))?;
    let cert = certify(&data, &filled);
    ensure(cert.good && cert.maximal && cert.length == 10, || format!("{cert:?}"))?;

    let h = hilbert(&data, &p).unwrap();
    for l in 1..=10 {
        let v = h.evaluate_free(&[-l]);
        ensure(v.is_zero(), || format!("H(-{l}) = {v}"))?;
    }
    let v = h.evaluate_free(&[-11]);
    ensure(v == q(-1), || format!("H(-11) = {v}"))?;
    Ok("sink (2,4,3), n4 = 11, 10 coroots, H(-11) = -1".into())
}

fn criterion_3() -> Check {
    let mut graphs = 0;
    for t in LieType::all_up_to_rank(6) {
        let d = CartanData::build(t);
        for diagram in [d.clone(), d.dual()] {
            for j in 0..d.rank() {
                for k in [1, 2] {
                    let g = game_graph(&diagram, &Configuration::modified(d.rank(), j, k).unwrap()).unwrap();
                    ensure(g.terminals().len() == 1, || {
                        format!("{} vertex {} k={k}: {} terminals", diagram.label(), j + 1, g.terminals().len())
                    })?;
                    graphs += 1;
                }
            }
        }
    }
    Ok(format!("{graphs} game graphs, one terminal each"))
}

/// Every complete play, by depth-first search over legal moves.
fn all_plays(d: &CartanData, start: &Configuration, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
    let g = kostant_core::kostant_game::unhappy_vertices(d, start);
    if g.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for v in g {
        let next = kostant_core::kostant_game::fire(d, start, v).unwrap();
        prefix.push(v);
        all_plays(d, &next, out, prefix);
        prefix.pop();
    }
}

/// A move sequence reaching each node, along breadth-first parent edges.
fn paths_to_nodes(g: &kostant_core::kostant_game::GameGraph) -> Vec<Vec<usize>> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.len()];
    for e in g.edges() {
        if e.to != 0 && parent[e.to].is_none() {
            parent[e.to] = Some((e.from, e.vertex));
        }
    }
    (0..g.len())
        .map(|mut k| {
            let mut moves = Vec::new();
            while let Some((from, v)) = parent[k] {
                moves.push(v);
                k = from;
            }
            moves.reverse();
            moves
        })
        .collect()
}

fn criterion_4() -> Check {
    let mut total_plays = 0usize;
    for name in ["A2", "A3", "B2", "B3", "C3", "G2", "F4"] {
        let rs = RootSystem::of_type(ty(name));
        let cartan = rs.cartan().clone();
        let w = WeylGroup::full(&cartan);
        let n = cartan.rank();
        for j in 0..n {
            let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
            let wj = WeylGroup::generate(&cartan, &others);
            let quotient = w.order() / wj.order();
            let start = Configuration::modified(n, j, 1).unwrap();
            let g = game_graph(&cartan.dual(), &start).unwrap();
            ensure(g.len() == quotient, || {
                format!("{name} j={}: {} configurations, |W|/|W_j| = {quotient}", j + 1, g.len())
            })?;
            let reps: BTreeSet<usize> = w.minimal_coset_reps(j).into_iter().collect();
            ensure(reps.len() == quotient, || format!("{name} j={}: {} reps", j + 1, reps.len()))?;

            // every complete play is a reduced word of W^j and replays to itself
            let mut plays = Vec::new();
            all_plays(&cartan.dual(), &start, &mut plays, &mut Vec::new());
            for moves in &plays {
                let word = moves_to_word(&rs, j, 1, moves).map_err(|e| format!("{name} {moves:?}: {e}"))?;
                let e = w
                    .find(&cartan, &word)
                    .ok_or_else(|| format!("{name}: word {:?} not in W", word.one_based()))?;
                ensure(w.length(e) == moves.len(), || format!("{name}: word {:?} not reduced", word.one_based()))?;
                ensure(reps.contains(&e), || format!("{name}: word {:?} not in W^j", word.one_based()))?;
                let back = word_to_moves(&rs, j, 1, &word).map_err(|e| e.to_string())?;
                ensure(back.last() == g.terminals().first().copied(), || format!("{name}: replay missed the sink"))?;
            }
            // one play per configuration; distinct configurations give distinct cosets
            let mut seen = BTreeSet::new();
            for moves in paths_to_nodes(&g) {
                let word = moves_to_word(&rs, j, 1, &moves).map_err(|e| format!("{name} {moves:?}: {e}"))?;
                let e = w.find(&cartan, &word).ok_or("word not in W")?;
                ensure(reps.contains(&e), || format!("{name}: word {:?} not in W^j", word.one_based()))?;
                seen.insert(e);
            }
            ensure(seen == reps, || format!("{name} j={}: plays reach {} of {} reps", j + 1, seen.len(), reps.len()))?;
            total_plays += plays.len();
        }
    }
    Ok(format!("{total_plays} complete plays checked"))
}

fn survey() -> &'static SurveyReport {
    use std::sync::OnceLock;
    static REPORT: OnceLock<SurveyReport> = OnceLock::new();
    REPORT.get_or_init(|| run_survey(8, 0).expect("survey runs"))
}

fn criterion_5() -> Check {
    let r = survey();
    let mut points = 0;
    for c in &r.cases {
        ensure(c.box_all_zero, || format!("{} {:?}: nonzero inside the box", c.type_label, c.parabolic))?;
        ensure(c.minus_c1_ok, || {
            format!("{} {:?}: H(-c1) = {}", c.type_label, c.parabolic, c.value_at_minus_c1)
        })?;
        points += c.box_points_checked;
    }
    let e8 = r
        .cases
        .iter()
        .find(|c| c.type_label == "E8" && c.parabolic.is_empty())
        .ok_or("E8 full flag missing")?;
    ensure(e8.box_points_checked == 255 && e8.value_at_minus_c1 == "1", || format!("{e8:?}"))?;
    ensure(r.ok(), || r.summary.failures.join("; "))?;
    Ok(format!(
        "{} cases, {points} box points, all zero, {:.2}s",
        r.summary.cases, r.summary.wall_time
    ))
}

/// `G/P` is a projective space.
fn projective(t: LieType, complement: &[usize]) -> bool {
    let n = t.rank();
    match (t.family(), complement) {
        (Family::A, &[c]) => c == 1 || c == n,
        (Family::C, &[c]) => c == 1,
        (Family::B, &[c]) => n == 2 && c == 2,
        _ => false,
    }
}

fn criterion_6() -> Check {
    let r = survey();
    let mut equalities = 0;
    for (c, (t, p)) in r.cases.iter().zip(kostant_core::report::survey_cases(8)) {
        ensure(c.type_label == t.to_string(), || "case order differs".into())?;
        ensure(c.pasquier.ok && c.pasquier.lhs <= c.dim as i64, || format!("{} {:?}: pasquier", c.type_label, c.parabolic))?;
        ensure(c.mukai.ok && c.mukai.lhs <= c.dim as i64, || format!("{} {:?}: mukai", c.type_label, c.parabolic))?;
        let complement: Vec<usize> = p.complement().iter().map(|v| v + 1).collect();
        let expected = projective(t, &complement);
        ensure(c.mukai_equality == expected, || {
            format!("{} {:?}: equality {} expected {expected}", c.type_label, c.parabolic, c.mukai_equality)
        })?;
        if expected {
            ensure(c.b2 == 1 && c.index_k0 == c.dim as i64 + 1, || format!("{c:?}"))?;
            equalities += 1;
        }
    }
    Ok(format!("both inequalities hold; {equalities} equality cases, all projective spaces"))
}

fn criterion_7() -> Check {
    let mut checked = 0usize;
    for t in LieType::all_up_to_rank(8) {
        let data = RootData::of_type(t);
        for p in ParabolicSubset::all_proper(t.rank()) {
            let h = hilbert(&data, &p).unwrap();
            let c = c1(&data, &p).unwrap();
            let certs = certify_linear_factors(&data, &p).unwrap();
            let free = p.complement();
            // route 1: zeros predicted by the certified factors
            let mut zero_at: BTreeMap<usize, BTreeSet<i64>> = BTreeMap::new();
            for (cert, &(b, n)) in certs.iter().zip(&c.n_beta) {
                ensure(cert.ok && cert.beta == b + 1, || format!("{t} {:?}: {:?}", p.members(), cert.failures))?;
                let expected: Vec<String> = (1..n).map(|j| format!("k{} + {j}", b + 1)).collect();
                ensure(cert.factors == expected, || format!("{t}: factors {:?}", cert.factors))?;
                let literal = h.factors().iter().filter(|f| expected.contains(&f.to_string())).count();
                ensure(literal >= expected.len(), || format!("{t} {:?}: only {literal} literal factors", p.members()))?;
                zero_at.insert(b, (1..n).map(|j| -j).collect());
            }
            // route 2: direct evaluation on the strict box and at -c1
            let corner: Vec<u32> = c.values().iter().map(|&v| v as u32).collect();
            let mut pts = PointedBox::strict(corner).points();
            pts.push(c.values().iter().map(|&v| v as u32).collect());
            for pt in pts {
                let k: Vec<i64> = pt.iter().map(|&v| -i64::from(v)).collect();
                let predicted = free.iter().zip(&k).any(|(b, v)| zero_at[b].contains(v));
                let direct = h.evaluate_free(&k).is_zero();
                ensure(predicted == direct, || format!("{t} {:?} at {k:?}: predicted {predicted}, direct {direct}", p.members()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} points, zero discrepancies"))
}

/// Dense multivariate polynomial in the power basis.
type Poly = BTreeMap<Vec<u32>, Rational>;

/// Power-basis expansion of `M_s(k) = prod falling(k_i, s_i)`.
fn falling_power_basis(s: &[u32]) -> Poly {
    let mut poly: Poly = BTreeMap::from([(vec![0; s.len()], Rational::one())]);
    for (i, &si) in s.iter().enumerate() {
        for r in 0..si {
            let mut next = Poly::new();
            for (e, c) in &poly {
                let mut up = e.clone();
                up[i] += 1;
                *next.entry(up).or_insert_with(Rational::zero) += c.clone();
                if r > 0 {
                    *next.entry(e.clone()).or_insert_with(Rational::zero) -= c.clone() * q(r as i64);
                }
            }
            poly = next;
        }
    }
    poly.retain(|_, c| !c.is_zero());
    poly
}

fn eval_poly(p: &Poly, k: &[i64]) -> Rational {
    p.iter().fold(Rational::zero(), |acc, (e, c)| {
        let term = e
            .iter()
            .zip(k)
            .fold(c.clone(), |t, (&d, &v)| t * q(v.pow(d)));
        acc + term
    })
}

fn grid(dim: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut p = p.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

fn random_index(rng: &mut ChaCha8Rng, dim: usize, max_height: u32) -> Vec<u32> {
    let mut s = vec![0u32; dim];
    let h = rng.gen_range(0..=max_height);
    for _ in 0..h {
        s[rng.gen_range(0..dim)] += 1;
    }
    s
}

fn criterion_8() -> Check {
    const DEGREE: u32 = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6f7374);
    for trial in 0..1000 {
        let dim = rng.gen_range(1..=3);
        let m = random_index(&mut rng, dim, DEGREE);
        // terms that vanish on the pointed box at m: s = m, or s not <= m
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        let lead = loop {
            let v = rng.gen_range(-9i64..=9);
            if v != 0 {
                break q(v) / q(rng.gen_range(1..=4));
            }
        };
        terms.insert(m.clone(), lead.clone());
        for _ in 0..rng.gen_range(0..6) {
            let s = random_index(&mut rng, dim, DEGREE);
            if s.iter().zip(&m).any(|(a, b)| a > b) {
                terms.insert(s, q(rng.gen_range(-20..=20)));
            }
        }
        let mut poly = Poly::new();
        for (s, c) in &terms {
            for (e, v) in falling_power_basis(s) {
                *poly.entry(e).or_insert_with(Rational::zero) += c.clone() * v;
            }
        }
        poly.retain(|_, c| !c.is_zero());
        let oracle = FnOracle::new(dim, |k: &[i64]| eval_poly(&poly, k));

        let bound = degree_bound::<Rational, _>(&oracle, &m);
        let ht: u64 = m.iter().map(|&v| u64::from(v)).sum();
        ensure(bound.applies && bound.lower_coeffs_vanish && bound.bound == ht, || {
            format!("trial {trial}: m = {m:?}, {bound:?}")
        })?;
        let factorials: Rational = m.iter().fold(Rational::one(), |acc, &v| {
            (1..=v).fold(acc, |a, i| a * q(i64::from(i)))
        });
        ensure(bound.witness == oracle.eval_at(&m) / factorials, || format!("trial {trial}: witness"))?;
        ensure(bound.witness == lead, || format!("trial {trial}: witness {} != {lead}", bound.witness))?;

        // reconstruction from the full degree box
        let mut full = vec![0u32; dim];
        for e in poly.keys() {
            for (f, &d) in full.iter_mut().zip(e) {
                *f = (*f).max(d);
            }
        }
        let c = coeffs::<Rational, _>(&oracle, &full);
        for (s, v) in c.nonzero() {
            ensure(terms.get(s) == Some(v), || format!("trial {trial}: h_{s:?} = {v}"))?;
        }
        ensure(c.nonzero().len() == terms.values().filter(|v| !v.is_zero()).count(), || {
            format!("trial {trial}: coefficient count")
        })?;
        for k in grid(dim, -2, DEGREE as i64 + 1) {
            ensure(c.evaluate_int(&k) == eval_poly(&poly, &k), || format!("trial {trial}: mismatch at {k:?}"))?;
        }
    }
    Ok("1000 trials".into())
}

trait EvalAt {
    fn eval_at(&self, m: &[u32]) -> Rational;
}

impl<F: Fn(&[i64]) -> Rational> EvalAt for FnOracle<F> {
    fn eval_at(&self, m: &[u32]) -> Rational {
        use kostant_core::pointed_box::EvalOracle;
        let k: Vec<i64> = m.iter().map(|&v| i64::from(v)).collect();
        self.eval(&k)
    }
}

fn criterion_9() -> Check {
    let mut types = 0;
    for t in LieType::all_up_to_rank(6) {
        let d = CartanData::build(t);
        let game: BTreeSet<RootVec> = standard_game_roots(&d).unwrap().into_iter().collect();
        let closure: BTreeSet<RootVec> = RootSystem::new(d.clone()).positive_roots().iter().cloned().collect();
        let orbit: BTreeSet<RootVec> = reflection_closure(&d).into_iter().collect();
        ensure(game == closure, || format!("{t}: game {} roots, closure {}", game.len(), closure.len()))?;
        ensure(orbit == closure, || format!("{t}: orbit {} roots, closure {}", orbit.len(), closure.len()))?;
        for i in 0..d.rank() {
            play(&d, &Configuration::single_chip(d.rank(), i), &Strategy::LowestIndex).map_err(|e| e.to_string())?;
        }
        types += 1;
    }
    Ok(format!("{types} types, identical root sets"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("A4 heights", criterion_1, Duration::from_millis(10)),
        ("F4 golden case", criterion_2, Duration::from_millis(100)),
        ("confluence sweep, rank <= 6", criterion_3, Duration::from_secs(60)),
        ("game <-> coset bijection", criterion_4, Duration::from_secs(60)),
        ("vanishing survey, rank <= 8", criterion_5, Duration::from_secs(600)),
        ("inequality survey", criterion_6, Duration::from_secs(600)),
        ("factor certificates vs evaluation", criterion_7, Duration::from_secs(600)),
        ("pointed-box degree bound, 1000 trials", criterion_8, Duration::from_secs(600)),
        ("cross-enumerator equivalence", criterion_9, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = t0.elapsed();
        let timing = if elapsed <= *budget { String::new() } else { format!(" (over the {budget:?} budget)") };
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{elapsed:.2?}]{timing}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
