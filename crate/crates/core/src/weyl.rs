//! Finite Weyl group arithmetic on the simple-coroot lattice.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::root_data::{dot, rat, split_list, Basis, RatVec, RootSystem};

/// Largest Coxeter number among the finite types (E8).
pub const MAX_ELEMENT_ORDER: usize = 30;

/// Default cap on `|W|` for operations that enumerate the whole group.
pub const DEFAULT_GROUP_BUDGET: usize = 1_000_000;

/// A sequence of simple reflections, one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    /// Accepts `"121"`, `"1 2 1"` or `"1,2,1"`. Multi-digit letters need a
    /// separator.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let parts = split_list(s);
        let letters = if parts.len() == 1 {
            parts[0]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in word {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            parts
                .iter()
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad letter {p:?} in word {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// Finite Weyl group element, identified by its integer action on the
/// simple-coroot basis (row-major; column `j` is the image of `α_j∨`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    rank: usize,
    action: Vec<i64>,
    length: usize,
}

impl WeylElt {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[i64] {
        &self.action
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.action[row * self.rank + col]
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rank).all(|r| (0..self.rank).all(|c| self.entry(r, c) == i64::from(r == c)))
    }

    /// `w(λ)` on an integral coweight.
    pub fn apply(&self, lambda: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|r| dot(&self.action[r * self.rank..(r + 1) * self.rank], lambda))
            .collect()
    }

    /// `w(λ)` on a rational coweight.
    pub fn act(&self, lambda: &RatVec) -> RatVec {
        assert_eq!(lambda.basis, Basis::SimpleCoroot);
        let coords = (0..self.rank)
            .map(|r| {
                lambda
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| self.entry(r, *c) != 0)
                    .map(|(c, x)| x * rat(self.entry(r, c)))
                    .sum::<BigRational>()
            })
            .collect();
        RatVec::new(Basis::SimpleCoroot, coords)
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x == 0 {
                continue;
            }
            for c in 0..n {
                out[r * n + c] += x * b[k * n + c];
            }
        }
    }
    out
}

impl RootSystem {
    /// `2ρ∨ = Σ β∨`, a regular dominant integral coweight.
    pub fn two_rho_vee(&self) -> Vec<i64> {
        (0..self.rank)
            .map(|i| self.positive_coroots.iter().map(|c| c[i]).sum())
            .collect()
    }

    fn elt(&self, action: Vec<i64>) -> WeylElt {
        let n = self.rank;
        let length = self
            .positive_coroots
            .iter()
            .filter(|c| {
                let img: i64 = (0..n).map(|r| dot(&action[r * n..(r + 1) * n], c)).sum();
                img < 0
            })
            .count();
        WeylElt {
            rank: n,
            action,
            length,
        }
    }

    pub fn weyl_identity(&self) -> WeylElt {
        let n = self.rank;
        let action = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        WeylElt {
            rank: n,
            action,
            length: 0,
        }
    }

    /// `s_i`, one-based.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElt> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            });
        }
        let n = self.rank;
        let mut action = self.weyl_identity().action;
        for c in 0..n {
            action[(i - 1) * n + c] -= self.cartan[i - 1][c];
        }
        Ok(WeylElt {
            rank: n,
            action,
            length: 1,
        })
    }

    /// Reflection `r_β` in the positive root with (zero-based) index `k`:
    /// `r_β(μ) = μ − <μ, β> β∨`.
    pub fn root_reflection(&self, k: usize) -> Result<WeylElt> {
        if k >= self.num_positive_roots() {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                max: self.num_positive_roots(),
            });
        }
        let n = self.rank;
        let coroot = &self.positive_coroots[k];
        let row = self.root_pairing_row(k);
        let mut action = self.weyl_identity().action;
        for r in 0..n {
            for c in 0..n {
                action[r * n + c] -= coroot[r] * row[c];
            }
        }
        Ok(self.elt(action))
    }

    pub fn weyl_from_word(&self, word: &WeylWord) -> Result<WeylElt> {
        let mut action = self.weyl_identity().action;
        for &letter in &word.0 {
            let s = self.simple_reflection(letter)?;
            action = mat_mul(self.rank, &action, &s.action);
        }
        Ok(self.elt(action))
    }

    pub fn weyl_mul(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        self.elt(mat_mul(self.rank, &a.action, &b.action))
    }

    /// Length-lexicographically minimal reduced word.
    pub fn lex_min_word(&self, w: &WeylElt) -> WeylWord {
        // w(2ρ∨) determines w; s_i is a left descent iff <w(2ρ∨), α_i> < 0.
        let mut u = w.apply(&self.two_rho_vee());
        let mut letters = Vec::with_capacity(w.length);
        while let Some(i) = (0..self.rank).find(|&i| self.pair_simple(&u, i) < 0) {
            let p = self.pair_simple(&u, i);
            u[i] -= p;
            letters.push(i + 1);
        }
        WeylWord(letters)
    }

    pub fn weyl_inverse(&self, w: &WeylElt) -> WeylElt {
        let mut word = self.lex_min_word(w).0;
        word.reverse();
        self.weyl_from_word(&WeylWord(word))
            .expect("letters of a computed word are in range")
    }

    pub fn longest_element(&self) -> WeylElt {
        let n = self.rank;
        // w_0 is the unique element sending 2ρ∨ to −2ρ∨; build it greedily.
        let mut u: Vec<i64> = self.two_rho_vee().iter().map(|x| -x).collect();
        let mut letters = Vec::new();
        while let Some(i) = (0..n).find(|&i| self.pair_simple(&u, i) < 0) {
            let p = self.pair_simple(&u, i);
            u[i] -= p;
            letters.push(i + 1);
        }
        self.weyl_from_word(&WeylWord(letters)).expect("letters in range")
    }

    /// Least `m ≥ 1` with `w^m = 1`.
    pub fn element_order(&self, w: &WeylElt) -> Result<usize> {
        let mut power = w.action.clone();
        for m in 1..=MAX_ELEMENT_ORDER {
            if is_identity_matrix(self.rank, &power) {
                return Ok(m);
            }
            power = mat_mul(self.rank, &power, &w.action);
        }
        Err(Error::Consistency(format!("element order exceeds {MAX_ELEMENT_ORDER}")))
    }

    /// Index of the positive root `±w(β_k)` and whether the image is positive.
    pub fn act_on_root(&self, w: &WeylElt, k: usize) -> (usize, bool) {
        let img = w.apply(&self.positive_coroots[k]);
        self.find_coroot(&img).expect("Weyl group elements permute the coroots")
    }

    /// Display form like `s_{12}` (identity is `1`).
    pub fn weyl_display(&self, w: &WeylElt) -> String {
        let word = self.lex_min_word(w);
        if word.is_empty() {
            "1".into()
        } else {
            format!("s_{{{word}}}")
        }
    }
}

fn is_identity_matrix(n: usize, m: &[i64]) -> bool {
    (0..n * n).all(|k| m[k] == i64::from(k / n == k % n))
}

/// Lookup tables over an enumerated group, indexed by element position.
#[derive(Debug)]
pub struct GroupTables {
    /// `left_reflect[k][w] = r_{β_k} w`.
    pub left_reflect: Vec<Vec<u32>>,
    /// `right_reflect[k][w] = w r_{β_k}`.
    pub right_reflect: Vec<Vec<u32>>,
    pub inverse: Vec<u32>,
    /// Bit `k` set iff `w⁻¹(β_k)` is negative.
    pub inv_neg: Vec<u128>,
    pub order: Vec<u8>,
}

/// The whole finite Weyl group in canonical order (by length, then by
/// length-lexicographically minimal reduced word).
#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    elements: Vec<WeylElt>,
    words: Vec<WeylWord>,
    /// Keyed by `w(2ρ∨)`, which determines `w`.
    by_orbit: HashMap<Vec<i64>, u32>,
    longest: u32,
    tables: OnceLock<GroupTables>,
}

impl WeylGroup {
    pub fn enumerate(rs: Arc<RootSystem>, budget: usize) -> Result<Self> {
        let order = rs.group_order();
        if order > budget as u128 {
            return Err(Error::GroupBudget { order, budget });
        }
        let n = rs.rank;
        let two_rho_v = rs.two_rho_vee();
        // Breadth-first closure on the orbit of 2ρ∨, level by level; within a
        // level, sort by (first letter, position of the remainder).
        let mut levels: Vec<Vec<(Vec<i64>, WeylWord)>> = vec![vec![(two_rho_v.clone(), WeylWord::default())]];
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        seen.insert(two_rho_v.clone(), ());
        loop {
            let prev = levels.last().unwrap();
            let mut next: HashMap<Vec<i64>, (usize, usize)> = HashMap::new();
            for (pos, (u, _)) in prev.iter().enumerate() {
                for i in 0..n {
                    let p = rs.pair_simple(u, i);
                    // s_i x goes up iff <x(2ρ∨), α_i> > 0
                    if p <= 0 {
                        continue;
                    }
                    let mut y = u.clone();
                    y[i] -= p;
                    if seen.contains_key(&y) {
                        continue;
                    }
                    let key = (i, pos);
                    next.entry(y)
                        .and_modify(|k| {
                            if key < *k {
                                *k = key
                            }
                        })
                        .or_insert(key);
                }
            }
            if next.is_empty() {
                break;
            }
            let mut level: Vec<(Vec<i64>, (usize, usize))> = next.into_iter().collect();
            level.sort_by_key(|(_, k)| *k);
            let built: Vec<(Vec<i64>, WeylWord)> = level
                .into_iter()
                .map(|(u, (i, pos))| {
                    let mut w = vec![i + 1];
                    w.extend_from_slice(&prev[pos].1 .0);
                    (u, WeylWord(w))
                })
                .collect();
            for (u, _) in &built {
                seen.insert(u.clone(), ());
            }
            levels.push(built);
        }
        let mut elements = Vec::new();
        let mut words = Vec::new();
        let mut by_orbit = HashMap::new();
        for (u, word) in levels.into_iter().flatten() {
            let w = rs.weyl_from_word(&word)?;
            debug_assert_eq!(w.length(), word.len());
            by_orbit.insert(u, elements.len() as u32);
            elements.push(w);
            words.push(word);
        }
        if elements.len() as u128 != order {
            return Err(Error::Consistency(format!(
                "enumerated {} elements, expected {order}",
                elements.len()
            )));
        }
        let longest = (elements.len() - 1) as u32;
        Ok(Self {
            rs,
            elements,
            words,
            by_orbit,
            longest,
            tables: OnceLock::new(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn element(&self, idx: u32) -> &WeylElt {
        &self.elements[idx as usize]
    }

    pub fn word(&self, idx: u32) -> &WeylWord {
        &self.words[idx as usize]
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    pub fn longest_index(&self) -> u32 {
        self.longest
    }

    pub fn length(&self, idx: u32) -> usize {
        self.elements[idx as usize].length
    }

    pub fn index_of(&self, w: &WeylElt) -> u32 {
        let u = w.apply(&self.rs.two_rho_vee());
        self.by_orbit[&u]
    }

    pub fn index_of_word(&self, word: &WeylWord) -> Result<u32> {
        Ok(self.index_of(&self.rs.weyl_from_word(word)?))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let w = self.rs.weyl_mul(self.element(a), self.element(b));
        self.index_of(&w)
    }

    pub fn tables(&self) -> &GroupTables {
        self.tables.get_or_init(|| self.build_tables())
    }

    fn build_tables(&self) -> GroupTables {
        let rs = &*self.rs;
        let two_rho_v = rs.two_rho_vee();
        let nroots = rs.num_positive_roots();
        let orbit: Vec<Vec<i64>> = self.elements.iter().map(|w| w.apply(&two_rho_v)).collect();
        let mut left_reflect = vec![Vec::with_capacity(self.len()); nroots];
        let mut right_reflect = vec![Vec::with_capacity(self.len()); nroots];
        let mut inv_neg = Vec::with_capacity(self.len());
        for (w, u) in self.elements.iter().zip(&orbit) {
            let mut mask = 0u128;
            for k in 0..nroots {
                let coroot = &rs.positive_coroots[k];
                let p = rs.pair_root(u, k);
                if p < 0 {
                    mask |= 1u128 << k;
                }
                // r_β w (2ρ∨) = u − <u, β> β∨
                let left: Vec<i64> = u.iter().zip(coroot).map(|(x, c)| x - p * c).collect();
                left_reflect[k].push(self.by_orbit[&left]);
                // w r_β (2ρ∨) = u − <2ρ∨, β> w(β∨)
                let q = rs.pair_root(&two_rho_v, k);
                let wc = w.apply(coroot);
                let right: Vec<i64> = u.iter().zip(&wc).map(|(x, c)| x - q * c).collect();
                right_reflect[k].push(self.by_orbit[&right]);
            }
            inv_neg.push(mask);
        }
        let inverse = self
            .elements
            .iter()
            .map(|w| self.index_of(&rs.weyl_inverse(w)))
            .collect();
        let order = self
            .elements
            .iter()
            .map(|w| rs.element_order(w).expect("finite order") as u8)
            .collect();
        GroupTables {
            left_reflect,
            right_reflect,
            inverse,
            inv_neg,
            order,
        }
    }
}
