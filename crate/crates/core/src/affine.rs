//! Affine Weyl group `Q∨ ⋊ W`: elements `x = t^λ w`, lengths, affine
//! reflections acting on the left, cocovers, Bruhat intervals and Newton
//! points.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{Basis, RatVec, RootSystem};
use crate::weyl::{WeylElt, WeylGroup, WeylWord};

/// Largest supported rank (E8, A8).
pub const MAX_RANK: usize = 8;

/// Default cap on the number of elements in a Bruhat interval.
pub const DEFAULT_INTERVAL_BUDGET: usize = 10_000_000;

/// `x = t^λ w` with `λ ∈ Q∨` in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElt {
    pub translation: Vec<i64>,
    pub finite: WeylElt,
}

/// `r_{α,m} = t^{mα∨} r_α`, the reflection across `H_{α,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineReflection {
    /// Zero-based index into the positive roots.
    pub root: usize,
    pub level: i64,
}

/// Dominant rational coweight in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPoint {
    pub value: RatVec,
}

impl NewtonPoint {
    pub fn to_strings(&self) -> Vec<String> {
        self.value.to_strings()
    }
}

impl std::fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.value.fmt(f)
    }
}

/// JSON form `{"lambda": [...], "w": "word"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineEltJson {
    pub lambda: Vec<i64>,
    pub w: String,
}

impl AffineElt {
    pub fn new(translation: Vec<i64>, finite: WeylElt) -> Self {
        assert_eq!(translation.len(), finite.rank());
        Self { translation, finite }
    }

    pub fn is_translation(&self) -> bool {
        self.finite.is_identity()
    }
}

impl AffineReflection {
    pub fn to_elt(&self, rs: &RootSystem) -> AffineElt {
        let r = rs.root_reflection(self.root).expect("valid root index");
        let translation = rs.positive_coroots[self.root].iter().map(|c| c * self.level).collect();
        AffineElt::new(translation, r)
    }
}

impl RootSystem {
    pub fn translation(&self, lambda: &[i64]) -> AffineElt {
        AffineElt::new(lambda.to_vec(), self.weyl_identity())
    }

    pub fn affine_identity(&self) -> AffineElt {
        self.translation(&vec![0; self.rank])
    }

    pub fn affine_from_word(&self, lambda: &[i64], word: &str) -> Result<AffineElt> {
        if lambda.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                got: lambda.len(),
            });
        }
        let w = self.weyl_from_word(&WeylWord::parse(word)?)?;
        Ok(AffineElt::new(lambda.to_vec(), w))
    }

    /// `(t^λ u)(t^μ v) = t^{λ + u(μ)} uv`.
    pub fn affine_mul(&self, x: &AffineElt, y: &AffineElt) -> AffineElt {
        let moved = x.finite.apply(&y.translation);
        let translation = x.translation.iter().zip(&moved).map(|(a, b)| a + b).collect();
        AffineElt::new(translation, self.weyl_mul(&x.finite, &y.finite))
    }

    /// `(t^λ w)⁻¹ = t^{−w⁻¹λ} w⁻¹`.
    pub fn affine_inverse(&self, x: &AffineElt) -> AffineElt {
        let winv = self.weyl_inverse(&x.finite);
        let translation = winv.apply(&x.translation).iter().map(|c| -c).collect();
        AffineElt::new(translation, winv)
    }

    /// Signs `[w⁻¹β_k < 0]` for every positive root.
    fn inverse_negativity(&self, w: &WeylElt) -> Vec<bool> {
        let u = w.apply(&self.two_rho_vee());
        (0..self.num_positive_roots())
            .map(|k| self.pair_root(&u, k) < 0)
            .collect()
    }

    /// Iwahori–Matsumoto length
    /// `Σ_{w⁻¹α>0} |<λ,α>| + Σ_{w⁻¹α<0} |<λ,α> − 1|`.
    pub fn affine_length(&self, x: &AffineElt) -> usize {
        self.inverse_negativity(&x.finite)
            .iter()
            .enumerate()
            .map(|(k, &neg)| (self.pair_root(&x.translation, k) - i64::from(neg)).unsigned_abs() as usize)
            .sum()
    }

    /// The unique `(v, λ⁺)` with `λ = v(λ⁺)`; fails unless `λ` is regular.
    pub fn decompose_chamber(&self, x: &AffineElt) -> Result<(WeylElt, Vec<i64>, WeylElt)> {
        let (dom, applied) = self.dominant_rep_ints(&x.translation);
        if (0..self.rank).any(|i| self.pair_simple(&dom, i) == 0) {
            return Err(Error::NotRegular(x.translation.clone()));
        }
        // λ⁺ = s_{i_k} ⋯ s_{i_1} λ, so λ = s_{i_1} ⋯ s_{i_k} λ⁺.
        let word = WeylWord(applied.iter().map(|i| i + 1).collect());
        let v = self.weyl_from_word(&word)?;
        Ok((v, dom, x.finite.clone()))
    }

    /// `ν(t^λ w) = ((1/m) Σ_{i=1}^m w^i(λ))⁺` with `m` the order of `w`.
    pub fn newton_point(&self, x: &AffineElt) -> NewtonPoint {
        let m = self.element_order(&x.finite).expect("finite order");
        let mut sum = vec![0i64; self.rank];
        let mut cur = x.translation.clone();
        for _ in 0..m {
            cur = x.finite.apply(&cur);
            sum.iter_mut().zip(&cur).for_each(|(s, c)| *s += c);
        }
        scaled_newton(self, &sum, m as i64)
    }

    /// Affine reflections `r` with `ℓ(r x) < ℓ(x)`: the walls separating the
    /// base alcove from `x`'s alcove.
    pub fn left_inversions(&self, x: &AffineElt) -> Vec<AffineReflection> {
        let neg = self.inverse_negativity(&x.finite);
        let mut out = Vec::new();
        for (k, &n) in neg.iter().enumerate() {
            // <·, β_k> lies in (j, j+1) on x's alcove and in (0, 1) on the base alcove.
            let j = self.pair_root(&x.translation, k) - i64::from(n);
            let levels = if j >= 1 { 1..=j } else { (j + 1)..=0 };
            out.extend(levels.map(|level| AffineReflection { root: k, level }));
        }
        out
    }

    /// `{ r x : r ∈ left_inversions(x), ℓ(r x) = ℓ(x) − 1 }`, sorted.
    pub fn cocovers(&self, x: &AffineElt) -> Vec<AffineElt> {
        let len = self.affine_length(x);
        let mut out: Vec<AffineElt> = self
            .left_inversions(x)
            .into_iter()
            .map(|r| self.affine_mul(&r.to_elt(self), x))
            .filter(|y| self.affine_length(y) + 1 == len)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn affine_display(&self, x: &AffineElt) -> String {
        let lam: Vec<String> = x.translation.iter().map(|c| c.to_string()).collect();
        let w = self.weyl_display(&x.finite);
        if x.finite.is_identity() {
            format!("t^{{[{}]}}", lam.join(","))
        } else {
            format!("t^{{[{}]}} * {w}", lam.join(","))
        }
    }

    pub fn affine_to_json(&self, x: &AffineElt) -> AffineEltJson {
        AffineEltJson {
            lambda: x.translation.clone(),
            w: self.lex_min_word(&x.finite).to_string(),
        }
    }

    pub fn affine_from_json(&self, j: &AffineEltJson) -> Result<AffineElt> {
        self.affine_from_word(&j.lambda, &j.w)
    }
}

/// `ν = (S / m)⁺` for an integral orbit sum `S`.
pub(crate) fn scaled_newton(rs: &RootSystem, sum: &[i64], m: i64) -> NewtonPoint {
    let (dom, _) = rs.dominant_rep_ints(sum);
    let m = BigInt::from(m);
    NewtonPoint {
        value: RatVec::new(
            Basis::SimpleCoroot,
            dom.into_iter()
                .map(|c| BigRational::new(BigInt::from(c), m.clone()))
                .collect(),
        ),
    }
}

/// Compact element `t^λ w` with `w` an index into an enumerated group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompactElt {
    pub lambda: [i32; MAX_RANK],
    pub w: u32,
}

impl CompactElt {
    pub fn from_affine(group: &WeylGroup, x: &AffineElt) -> Self {
        let mut lambda = [0i32; MAX_RANK];
        for (dst, src) in lambda.iter_mut().zip(&x.translation) {
            *dst = i32::try_from(*src).expect("translation fits in i32");
        }
        Self {
            lambda,
            w: group.index_of(&x.finite),
        }
    }

    pub fn to_affine(&self, group: &WeylGroup) -> AffineElt {
        let rank = group.root_system().rank;
        AffineElt::new(
            self.lambda[..rank].iter().map(|&c| i64::from(c)).collect(),
            group.element(self.w).clone(),
        )
    }
}

/// Index-based cocover machinery over an enumerated group.
pub struct AffineTables<'g> {
    group: &'g WeylGroup,
    rank: usize,
    nroots: usize,
    /// `<β_k∨, β_j>`.
    coroot_root: Vec<Vec<i64>>,
}

impl<'g> AffineTables<'g> {
    pub fn new(group: &'g WeylGroup) -> Self {
        let rs = group.root_system();
        let nroots = rs.num_positive_roots();
        let coroot_root = (0..nroots)
            .map(|k| (0..nroots).map(|j| rs.pair_root(&rs.positive_coroots[k], j)).collect())
            .collect();
        group.tables();
        Self {
            group,
            rank: rs.rank,
            nroots,
            coroot_root,
        }
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    fn pairings(&self, x: &CompactElt) -> Vec<i64> {
        let rs = self.group.root_system();
        let lam: Vec<i64> = x.lambda[..self.rank].iter().map(|&c| i64::from(c)).collect();
        (0..self.nroots).map(|k| rs.pair_root(&lam, k)).collect()
    }

    fn length_from(&self, pairings: &[i64], w: u32) -> i64 {
        let mask = self.group.tables().inv_neg[w as usize];
        pairings
            .iter()
            .enumerate()
            .map(|(k, p)| (p - ((mask >> k) & 1) as i64).abs())
            .sum()
    }

    pub fn length(&self, x: &CompactElt) -> usize {
        self.length_from(&self.pairings(x), x.w) as usize
    }

    /// Cocovers of `x`, appended to `out` (unsorted).
    pub fn cocovers_into(&self, x: &CompactElt, out: &mut Vec<CompactElt>) {
        let tables = self.group.tables();
        let rs = self.group.root_system();
        let pairs = self.pairings(x);
        let len = self.length_from(&pairs, x.w);
        let mask = tables.inv_neg[x.w as usize];
        let mut shifted = vec![0i64; self.nroots];
        for k in 0..self.nroots {
            let p = pairs[k];
            let j = p - ((mask >> k) & 1) as i64;
            let levels = if j >= 1 { 1..=j } else { (j + 1)..=0 };
            let target_w = tables.left_reflect[k][x.w as usize];
            let target_mask = tables.inv_neg[target_w as usize];
            let cc = &self.coroot_root[k];
            for level in levels {
                // r_{β,m} t^λ w = t^{λ + (m − <λ,β>) β∨} r_β w
                let c = level - p;
                let mut l = 0i64;
                for jdx in 0..self.nroots {
                    let q = pairs[jdx] + c * cc[jdx];
                    shifted[jdx] = q;
                    l += (q - ((target_mask >> jdx) & 1) as i64).abs();
                }
                if l + 1 == len {
                    let mut lambda = x.lambda;
                    for (dst, cv) in lambda.iter_mut().zip(&rs.positive_coroots[k]) {
                        *dst += (c * cv) as i32;
                    }
                    out.push(CompactElt { lambda, w: target_w });
                }
            }
        }
    }

    /// Integral orbit sum and order for the Newton point of `x`.
    pub fn newton_scaled(&self, x: &CompactElt) -> (Vec<i64>, i64) {
        let w = self.group.element(x.w);
        let m = self.group.tables().order[x.w as usize] as usize;
        let mut cur: Vec<i64> = x.lambda[..self.rank].iter().map(|&c| i64::from(c)).collect();
        let mut sum = vec![0i64; self.rank];
        for _ in 0..m {
            cur = w.apply(&cur);
            sum.iter_mut().zip(&cur).for_each(|(s, c)| *s += c);
        }
        (sum, m as i64)
    }

    pub fn newton_point(&self, x: &CompactElt) -> NewtonPoint {
        let (sum, m) = self.newton_scaled(x);
        scaled_newton(self.group.root_system(), &sum, m)
    }
}

/// The Bruhat interval `{ y ≤ x }`, stored level by level from `x` down.
#[derive(Debug, Clone)]
pub struct BruhatInterval {
    pub top: CompactElt,
    /// Elements sorted by decreasing length, then canonically.
    pub elements: Vec<CompactElt>,
    members: HashSet<CompactElt>,
}

impl BruhatInterval {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, y: &CompactElt) -> bool {
        self.members.contains(y)
    }

    pub fn contains_affine(&self, group: &WeylGroup, y: &AffineElt) -> bool {
        self.contains(&CompactElt::from_affine(group, y))
    }

    pub fn to_affine(&self, group: &WeylGroup) -> Vec<AffineElt> {
        self.elements.iter().map(|e| e.to_affine(group)).collect()
    }
}

/// Breadth-first cocover closure below `x`.
pub fn downward_closure(group: &WeylGroup, x: &AffineElt, budget: usize) -> Result<BruhatInterval> {
    let tables = AffineTables::new(group);
    downward_closure_compact(&tables, CompactElt::from_affine(group, x), budget)
}

pub fn downward_closure_compact(tables: &AffineTables<'_>, top: CompactElt, budget: usize) -> Result<BruhatInterval> {
    let mut members: HashSet<CompactElt> = HashSet::new();
    members.insert(top);
    let mut elements = vec![top];
    let mut level = vec![top];
    let mut scratch = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for y in &level {
            scratch.clear();
            tables.cocovers_into(y, &mut scratch);
            for z in scratch.drain(..) {
                if members.insert(z) {
                    next.push(z);
                }
            }
        }
        if members.len() > budget {
            return Err(Error::IntervalBudget {
                budget,
                visited: members.len(),
            });
        }
        next.sort_unstable();
        elements.extend_from_slice(&next);
        level = next;
    }
    Ok(BruhatInterval { top, elements, members })
}
