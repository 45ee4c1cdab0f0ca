//! Reduced words, inversion sets and minimal length coset representatives
//! `W^j` of `W / W_j`, and their correspondence with plays of the modified
//! Kostant game on the coroot diagram.
//!
//! A word `(i_1, ..., i_t)` denotes `w = s_{i_t} ... s_{i_1}`: the first
//! letter is applied first. Its inversions are
//! `s_{i_1} ... s_{i_{l-1}}(alpha_{i_l})` for `l = 1..t`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kostant_game::{self, Configuration};
use crate::root_system::{CartanData, RootSystem, RootVec};

/// Simple reflection on a vector in root coordinates. Pass `cartan.dual()`
/// to act on coroot coordinates.
pub fn act(cartan: &CartanData, i: usize, v: &RootVec) -> RootVec {
    cartan.reflect(i, v)
}

/// Simple reflection on a weight `sum k_m w_m`, in fundamental weight
/// coordinates: `s_i(k)_m = k_m - k_i A[m][i]`.
pub fn act_weight(cartan: &CartanData, i: usize, weight: &[i64]) -> Vec<i64> {
    let ki = weight[i];
    weight
        .iter()
        .enumerate()
        .map(|(m, &km)| km - ki * cartan.entry(m, i))
        .collect()
}

/// Applies `w = s_{i_t} ... s_{i_1}` to a root.
pub fn apply_word(cartan: &CartanData, letters: &[usize], v: &RootVec) -> RootVec {
    letters.iter().fold(v.clone(), |acc, &i| act(cartan, i, &acc))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Wraps letters without checking reducedness; see [`inversions`].
    pub fn new(letters: Vec<usize>) -> Self {
        ReducedWord { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.letters.iter().map(|i| i + 1).collect()
    }
}

/// The inversion roots of a word, in order. Fails if the word is not
/// reduced, i.e. some inversion is negative or repeats.
pub fn inversions(rs: &RootSystem, word: &ReducedWord) -> Result<Vec<RootVec>> {
    let cartan = rs.cartan();
    let n = cartan.rank();
    let mut out: Vec<RootVec> = Vec::with_capacity(word.len());
    for (l, &i) in word.letters.iter().enumerate() {
        cartan.check_vertex(i)?;
        let mut v = RootVec::simple(n, i);
        for &m in word.letters[..l].iter().rev() {
            v = act(cartan, m, &v);
        }
        if !rs.contains(&v) || out.contains(&v) {
            return Err(Error::NotReduced { position: l + 1 });
        }
        out.push(v);
    }
    Ok(out)
}

/// Checks that `word` is reduced and represents an element of `W^j`.
/// Returns the inversions.
pub fn check_coset_word(rs: &RootSystem, j: usize, word: &ReducedWord) -> Result<Vec<RootVec>> {
    let inv = inversions(rs, word)?;
    for (l, r) in inv.iter().enumerate() {
        if r[j] <= 0 {
            return Err(Error::NotMinimal { position: l + 1 });
        }
    }
    Ok(inv)
}

/// The minimal length representatives `W^j`, one reduced word each.
#[derive(Debug, Clone)]
pub struct CosetFamily {
    label: String,
    excluded: usize,
    words: Vec<ReducedWord>,
    longest: ReducedWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetFamilyJson {
    #[serde(rename = "type")]
    pub type_label: String,
    pub j: usize,
    pub size: usize,
    pub longest_word: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub words: Option<Vec<Vec<usize>>>,
}

impl CosetFamily {
    pub fn excluded(&self) -> usize {
        self.excluded
    }

    pub fn words(&self) -> &[ReducedWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn longest(&self) -> &ReducedWord {
        &self.longest
    }

    pub fn to_json(&self, with_words: bool) -> CosetFamilyJson {
        CosetFamilyJson {
            type_label: self.label.clone(),
            j: self.excluded + 1,
            size: self.words.len(),
            longest_word: self.longest.one_based(),
            words: with_words.then(|| self.words.iter().map(|w| w.one_based()).collect()),
        }
    }
}

/// Breadth-first search from the identity, extending words on the left by
/// `s_i` whenever the new inversion `w^{-1}(alpha_i)` lies outside `R_j`.
/// Elements are told apart by `w(fundamental weight j)`, which determines
/// the coset `w W_j`.
pub fn coset_reps(rs: &RootSystem, j: usize) -> Result<CosetFamily> {
    let cartan = rs.cartan();
    cartan.check_vertex(j)?;
    let n = cartan.rank();
    let mut start_weight = vec![0; n];
    start_weight[j] = 1;
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::from([(start_weight.clone(), 0)]);
    let mut words = vec![ReducedWord::new(Vec::new())];
    let mut weights = vec![start_weight];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let word = words[k].clone();
        for i in 0..n {
            // w^{-1}(alpha_i) = s_{i_1} ... s_{i_t}(alpha_i)
            let mut v = RootVec::simple(n, i);
            for &m in word.letters.iter().rev() {
                v = act(cartan, m, &v);
            }
            if !(v.is_positive() && v[j] > 0) {
                continue;
            }
            let weight = act_weight(cartan, i, &weights[k]);
            if seen.contains_key(&weight) {
                continue;
            }
            let mut letters = word.letters.clone();
            letters.push(i);
            seen.insert(weight.clone(), words.len());
            words.push(ReducedWord::new(letters));
            weights.push(weight);
            queue.push_back(words.len() - 1);
        }
    }
    let longest = words
        .iter()
        .max_by_key(|w| w.len())
        .cloned()
        .unwrap_or_default();
    let max_len = longest.len();
    if words.iter().filter(|w| w.len() == max_len).count() != 1 {
        return Err(Error::Internal("longest coset representative is not unique".into()));
    }
    Ok(CosetFamily {
        label: cartan.label(),
        excluded: j,
        words,
        longest,
    })
}

impl Default for ReducedWord {
    fn default() -> Self {
        ReducedWord::new(Vec::new())
    }
}

/// `w_l(beta~)` for every prefix of `word`, computed in the auxiliary space
/// spanned by the simple coroots and an extra vector `beta~` with
/// `(alpha_i, beta~) = -k delta_ij`. Returns the coroot coefficients; the
/// `beta~` coefficient stays 1 throughout.
pub fn auxiliary_orbit(cartan: &CartanData, j: usize, k: i64, word: &ReducedWord) -> Vec<RootVec> {
    let n = cartan.rank();
    let mut c = RootVec::zero(n);
    let mut out = vec![c.clone()];
    for &i in &word.letters {
        // (alpha_i, x) for x = sum c_m coroot_m + beta~
        let pairing: i64 = (0..n).map(|m| c[m] * cartan.entry(m, i)).sum::<i64>()
            - if i == j { k } else { 0 };
        c.0[i] -= pairing;
        out.push(c.clone());
    }
    out
}

/// Maps a legal move sequence of the `k`-arrow modified game at `j` on the
/// coroot diagram to its reduced word of `W^j`, checking along the way that
/// each chip increment equals `k` times the `alpha_j`-coefficient of the
/// matching inversion.
pub fn moves_to_word(rs: &RootSystem, j: usize, k: i64, moves: &[usize]) -> Result<ReducedWord> {
    let cartan = rs.cartan();
    let dual = cartan.dual();
    let start = Configuration::modified(cartan.rank(), j, k)?;
    let configs = kostant_game::trace(&dual, &start, moves)?;
    let word = ReducedWord::new(moves.to_vec());
    let inv = check_coset_word(rs, j, &word)?;
    for (l, &i) in moves.iter().enumerate() {
        let placed = configs[l + 1].chips()[i] - configs[l].chips()[i];
        if placed != k * inv[l][j] {
            return Err(Error::Internal(format!(
                "chip increment {placed} at move {} disagrees with inversion coefficient {}",
                l + 1,
                inv[l][j]
            )));
        }
    }
    Ok(word)
}

/// Converts a reduced word of `W^j` to the configurations visited by the
/// corresponding play.
pub fn word_to_moves(rs: &RootSystem, j: usize, k: i64, word: &ReducedWord) -> Result<Vec<Configuration>> {
    check_coset_word(rs, j, word)?;
    let cartan = rs.cartan();
    let start = Configuration::modified(cartan.rank(), j, k)?;
    kostant_game::trace(&cartan.dual(), &start, &word.letters)
}

/// Brute-force Weyl group enumeration, for checking the coset machinery on
/// small types. An element is identified by the images of the simple roots.
pub mod brute {
    use super::*;

    #[derive(Debug, Clone)]
    pub struct Element {
        /// Images of the simple roots, concatenated.
        pub signature: Vec<i64>,
        /// A reduced word (BFS order gives minimal length).
        pub word: ReducedWord,
    }

    #[derive(Debug, Clone)]
    pub struct WeylGroup {
        pub elements: Vec<Element>,
        index: HashMap<Vec<i64>, usize>,
        generators: Vec<usize>,
        rank: usize,
    }

    fn compose_left(cartan: &CartanData, i: usize, sig: &[i64]) -> Vec<i64> {
        let n = cartan.rank();
        sig.chunks(n)
            .flat_map(|img| cartan.reflect(i, &RootVec(img.to_vec())).0)
            .collect()
    }

    impl WeylGroup {
        /// The subgroup generated by `generators`; all of `W` when every
        /// vertex is listed.
        pub fn generate(cartan: &CartanData, generators: &[usize]) -> WeylGroup {
            let n = cartan.rank();
            let identity: Vec<i64> = (0..n).flat_map(|i| RootVec::simple(n, i).0).collect();
            let mut elements = vec![Element {
                signature: identity.clone(),
                word: ReducedWord::default(),
            }];
            let mut index = HashMap::from([(identity, 0)]);
            let mut k = 0;
            while k < elements.len() {
                for &i in generators {
                    let sig = compose_left(cartan, i, &elements[k].signature);
                    if !index.contains_key(&sig) {
                        let mut letters = elements[k].word.letters.clone();
                        letters.push(i);
                        index.insert(sig.clone(), elements.len());
                        elements.push(Element {
                            signature: sig,
                            word: ReducedWord::new(letters),
                        });
                    }
                }
                k += 1;
            }
            WeylGroup {
                elements,
                index,
                generators: generators.to_vec(),
                rank: n,
            }
        }

        pub fn full(cartan: &CartanData) -> WeylGroup {
            let all: Vec<usize> = (0..cartan.rank()).collect();
            Self::generate(cartan, &all)
        }

        pub fn order(&self) -> usize {
            self.elements.len()
        }

        pub fn length(&self, e: usize) -> usize {
            self.elements[e].word.len()
        }

        /// Elements with `w(alpha_i) > 0` for every `i != j`.
        pub fn minimal_coset_reps(&self, j: usize) -> Vec<usize> {
            let n = self.rank;
            (0..self.elements.len())
                .filter(|&e| {
                    self.elements[e]
                        .signature
                        .chunks(n)
                        .enumerate()
                        .all(|(i, img)| i == j || RootVec(img.to_vec()).is_positive())
                })
                .collect()
        }

        /// Number of reduced words of every element, indexed like `elements`.
        pub fn reduced_word_counts(&self, cartan: &CartanData) -> Vec<u128> {
            let mut counts = vec![0u128; self.elements.len()];
            counts[0] = 1;
            // BFS order is sorted by length
            for e in 1..self.elements.len() {
                let len = self.length(e);
                let mut total = 0;
                for &i in &self.generators {
                    let sig = compose_left(cartan, i, &self.elements[e].signature);
                    let f = self.index[&sig];
                    if self.length(f) + 1 == len {
                        total += counts[f];
                    }
                }
                counts[e] = total;
            }
            counts
        }

        pub fn find(&self, cartan: &CartanData, word: &ReducedWord) -> Option<usize> {
            let n = cartan.rank();
            let mut sig: Vec<i64> = (0..n).flat_map(|i| RootVec::simple(n, i).0).collect();
            for &i in word.letters() {
                sig = compose_left(cartan, i, &sig);
            }
            self.index.get(&sig).copied()
        }
    }
}
