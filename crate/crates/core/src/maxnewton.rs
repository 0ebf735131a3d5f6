//! Maximal Newton points: superregularity constants, the path formula
//! `ν_x = λ − α∨_x`, cocover classification, chain lifting and a brute-force
//! oracle over the Bruhat interval below `x`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::affine::{downward_closure_compact, AffineElt, AffineEltJson, AffineTables, CompactElt, NewtonPoint};
use crate::error::{Error, Result};
use crate::qbg::{EdgeKind, PathStep, QbgPath, QuantumBruhatGraph, DEFAULT_PATH_BUDGET};
use crate::root_data::{Basis, LieType, RatVec, RootSystem};
use crate::weyl::{WeylElt, WeylGroup};

/// `x = t^{vλ} w` with `λ` dominant and regular.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaxNewtonInput {
    pub v: WeylElt,
    pub lambda_plus: Vec<i64>,
    pub w: WeylElt,
}

impl MaxNewtonInput {
    pub fn new(rs: &RootSystem, v: WeylElt, lambda_plus: Vec<i64>, w: WeylElt) -> Result<Self> {
        if lambda_plus.len() != rs.rank {
            return Err(Error::Dimension {
                expected: rs.rank,
                got: lambda_plus.len(),
            });
        }
        let pairings = simple_pairings(rs, &lambda_plus);
        if pairings.iter().any(|&p| p < 0) {
            return Err(Error::NotDominant(format!("{lambda_plus:?}")));
        }
        if pairings.contains(&0) {
            return Err(Error::NotRegular(lambda_plus));
        }
        Ok(Self { v, lambda_plus, w })
    }

    pub fn from_affine(rs: &RootSystem, x: &AffineElt) -> Result<Self> {
        let (v, lambda_plus, w) = rs.decompose_chamber(x)?;
        Ok(Self { v, lambda_plus, w })
    }

    pub fn to_affine(&self) -> AffineElt {
        AffineElt::new(self.v.apply(&self.lambda_plus), self.w.clone())
    }

    /// `w⁻¹v`, the start of the relevant paths.
    pub fn path_start(&self, rs: &RootSystem) -> WeylElt {
        rs.weyl_mul(&rs.weyl_inverse(&self.w), &self.v)
    }
}

fn simple_pairings(rs: &RootSystem, lambda: &[i64]) -> Vec<i64> {
    (0..rs.rank).map(|i| rs.pair_simple(lambda, i)).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `M_k = max{2ℓ(w_0)+2k−2, 2k c_G}`, with `3ℓ(w_0)+3k−3` in place of the
/// first entry for `G_2`.
pub fn m_k(rs: &RootSystem, k: usize) -> i64 {
    let l0 = rs.longest_length as i64;
    let k = k as i64;
    let base = if rs.is_g2() {
        3 * l0 + 3 * k - 3
    } else {
        2 * l0 + 2 * k - 2
    };
    base.max(2 * k * rs.c_g)
}

/// `⟨λ, α_i⟩ > M_k` for every simple root.
pub fn exceeds_m_k(rs: &RootSystem, lambda_plus: &[i64], k: usize) -> bool {
    let bound = m_k(rs, k);
    simple_pairings(rs, lambda_plus).iter().all(|&p| p > bound)
}

/// The uniform hypothesis `⟨λ, α_i⟩ > 4ℓ(w_0)` (classical) or
/// `> 12ℓ(w_0)` (exceptional), which implies `⟨λ, α_i⟩ > M_k` for every `k`.
pub fn uniform_superregular(rs: &RootSystem, lambda_plus: &[i64]) -> bool {
    let factor = match rs.lie_type {
        LieType::A | LieType::B | LieType::C | LieType::D => 4,
        _ => 12,
    };
    let bound = factor * rs.longest_length as i64;
    simple_pairings(rs, lambda_plus).iter().all(|&p| p > bound)
}

/// Minimal path length `k` from `w⁻¹v` to `v`, and whether `λ` exceeds `M_k`.
pub fn is_superregular(qbg: &QuantumBruhatGraph, input: &MaxNewtonInput) -> (bool, usize) {
    let rs = qbg.root_system();
    let g = qbg.group();
    let k = qbg.distance(g.index_of(&input.path_start(rs)), g.index_of(&input.v));
    (exceeds_m_k(rs, &input.lambda_plus, k), k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxNewtonResult {
    pub input: MaxNewtonInput,
    pub nu_x: NewtonPoint,
    /// `α∨_x`, the weight of the witness path.
    pub correction: Vec<i64>,
    pub k: usize,
    /// `false` means the formula value is unproven for this `x`.
    pub superregular: bool,
    pub witness_path: QbgPath,
}

/// `ν_x = λ − (weight of a shortest path from w⁻¹v to v)`.
pub fn max_newton_formula(qbg: &QuantumBruhatGraph, input: &MaxNewtonInput) -> MaxNewtonResult {
    let rs = qbg.root_system();
    let g = qbg.group();
    let path = qbg.min_path(g.index_of(&input.path_start(rs)), g.index_of(&input.v));
    let k = path.len();
    let nu = sub(&input.lambda_plus, &path.weight);
    MaxNewtonResult {
        input: input.clone(),
        nu_x: NewtonPoint {
            value: RatVec::coroot(&nu),
        },
        correction: path.weight.clone(),
        k,
        superregular: exceeds_m_k(rs, &input.lambda_plus, k),
        witness_path: path,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub nu: NewtonPoint,
    pub interval_size: usize,
    /// Distinct Newton points occurring in the interval.
    pub distinct_points: Vec<NewtonPoint>,
}

/// Exact rational coweight `coords / denom` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ScaledPoint {
    coords: Vec<i64>,
    denom: i64,
}

impl ScaledPoint {
    fn new(coords: Vec<i64>, denom: i64) -> Self {
        let g = coords.iter().fold(denom, |acc, &c| acc.gcd(&c));
        Self {
            coords: coords.iter().map(|c| c / g).collect(),
            denom: denom / g,
        }
    }

    /// Dominance `self ≤ other`.
    fn leq(&self, other: &ScaledPoint) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| i128::from(*b) * i128::from(self.denom) >= i128::from(*a) * i128::from(other.denom))
    }

    fn to_newton(&self) -> NewtonPoint {
        let d = BigInt::from(self.denom);
        NewtonPoint {
            value: RatVec::new(
                Basis::SimpleCoroot,
                self.coords
                    .iter()
                    .map(|&c| BigRational::new(BigInt::from(c), d.clone()))
                    .collect(),
            ),
        }
    }
}

/// Single pass keeping the current maximal elements under dominance.
fn dominance_maximum(points: &[ScaledPoint]) -> Result<ScaledPoint> {
    let mut maximal: Vec<ScaledPoint> = Vec::new();
    for p in points {
        if maximal.iter().any(|q| p.leq(q)) {
            continue;
        }
        maximal.retain(|q| !q.leq(p));
        maximal.push(p.clone());
    }
    match maximal.len() {
        1 => Ok(maximal.pop().unwrap()),
        0 => Err(Error::Consistency("no Newton points to maximize".into())),
        _ => {
            let names: Vec<String> = maximal.iter().map(|p| p.to_newton().to_string()).collect();
            Err(Error::Consistency(format!(
                "Newton points have no unique dominance maximum; antichain [{}]",
                names.join("; ")
            )))
        }
    }
}

/// `max{ ν(y) : y ≤ x }` by enumerating the Bruhat interval below `x`.
pub fn viehmann_oracle(group: &WeylGroup, x: &AffineElt, budget: usize) -> Result<OracleResult> {
    let tables = AffineTables::new(group);
    viehmann_oracle_with(&tables, x, budget)
}

pub fn viehmann_oracle_with(tables: &AffineTables<'_>, x: &AffineElt, budget: usize) -> Result<OracleResult> {
    let group = tables.group();
    let rs = group.root_system();
    let interval = downward_closure_compact(tables, CompactElt::from_affine(group, x), budget)?;
    let mut seen: HashSet<ScaledPoint> = HashSet::new();
    for y in &interval.elements {
        let (sum, m) = tables.newton_scaled(y);
        let (dom, _) = rs.dominant_rep_ints(&sum);
        seen.insert(ScaledPoint::new(dom, m));
    }
    let mut points: Vec<ScaledPoint> = seen.into_iter().collect();
    points.sort();
    let max = dominance_maximum(&points)?;
    Ok(OracleResult {
        nu: max.to_newton(),
        interval_size: interval.len(),
        distinct_points: points.iter().map(ScaledPoint::to_newton).collect(),
    })
}

/// Cocovers reachable through translations only: the dominant parts `μ⁺` of
/// the translations at the smallest depth below `x` where any occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationReduction {
    pub depth: usize,
    pub terminals: Vec<Vec<i64>>,
    pub nu: NewtonPoint,
}

/// Descends through cocovers level by level until translations appear and
/// returns the dominance maximum of their dominant representatives.
pub fn translation_semi_oracle(
    tables: &AffineTables<'_>,
    x: &AffineElt,
    budget: usize,
) -> Result<TranslationReduction> {
    let group = tables.group();
    let rs = group.root_system();
    let identity = group.identity_index();
    let mut level = vec![CompactElt::from_affine(group, x)];
    let mut depth = 0;
    let mut visited = 0usize;
    let mut scratch = Vec::new();
    loop {
        let translations: Vec<Vec<i64>> = level
            .iter()
            .filter(|e| e.w == identity)
            .map(|e| e.to_affine(group).translation)
            .collect();
        if !translations.is_empty() {
            let mut terminals: Vec<Vec<i64>> = translations;
            terminals.sort();
            let points: Vec<ScaledPoint> = terminals
                .iter()
                .map(|t| ScaledPoint::new(rs.dominant_rep_ints(t).0, 1))
                .collect();
            let nu = dominance_maximum(&points)?.to_newton();
            return Ok(TranslationReduction { depth, terminals, nu });
        }
        let mut next: HashSet<CompactElt> = HashSet::new();
        for y in &level {
            scratch.clear();
            tables.cocovers_into(y, &mut scratch);
            next.extend(scratch.drain(..));
        }
        visited += next.len();
        if visited > budget {
            return Err(Error::IntervalBudget { budget, visited });
        }
        level = next.into_iter().collect();
        level.sort_unstable();
        depth += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocoverCase {
    pub case_id: u8,
    /// Zero-based positive-root index of `α`.
    pub alpha: usize,
    /// `n` in `r_β = t^{n vα∨} r_{vα}`.
    pub level: i64,
    pub result: AffineElt,
}

/// Smallest `⟨λ, α_i⟩` for which the four-case cocover description holds.
pub fn cocover_bound(rs: &RootSystem) -> i64 {
    let l0 = rs.longest_length as i64;
    if rs.is_g2() {
        3 * l0
    } else {
        2 * l0
    }
}

/// The four-case cocover formulas, checked against the hypothesis
/// `⟨λ, α_i⟩ ≥ 2ℓ(w_0)` (`3ℓ(w_0)` for `G_2`).
pub fn classify_cocovers(rs: &RootSystem, input: &MaxNewtonInput) -> Result<Vec<CocoverCase>> {
    let bound = cocover_bound(rs);
    if simple_pairings(rs, &input.lambda_plus).iter().any(|&p| p < bound) {
        return Err(Error::Hypothesis(format!(
            "cocover classification needs <λ,α_i> >= {bound} for all i"
        )));
    }
    Ok(cocover_cases(rs, input))
}

/// The four-case formulas without the hypothesis check. Near chamber walls
/// two cases may produce the same element, and the list may differ from
/// the true cocovers.
pub fn cocover_cases(rs: &RootSystem, input: &MaxNewtonInput) -> Vec<CocoverCase> {
    let MaxNewtonInput { v, lambda_plus, w } = input;
    let u = input.path_start(rs);
    let (lv, lu) = (v.length() as i64, u.length() as i64);
    let mut out = Vec::new();
    for a in 0..rs.num_positive_roots() {
        let r = rs.root_reflection(a).expect("root index");
        let h = rs.coroot_height2(a);
        let coroot = &rs.positive_coroots[a];
        let vr = rs.weyl_mul(v, &r);
        let r_va_w = rs.weyl_mul(&rs.weyl_mul(&vr, &rs.weyl_inverse(v)), w);
        let ur_len = rs.weyl_mul(&u, &r).length() as i64;
        let pairing = rs.pair_root(lambda_plus, a);
        let lowered = sub(lambda_plus, coroot);
        let mut push = |case_id: u8, level: i64, translation: Vec<i64>| {
            out.push(CocoverCase {
                case_id,
                alpha: a,
                level,
                result: AffineElt::new(translation, r_va_w.clone()),
            })
        };
        let lvr = vr.length() as i64;
        if lvr == lv - 1 {
            push(1, 0, vr.apply(lambda_plus));
        }
        if lvr == lv + h - 1 {
            push(2, 1, vr.apply(&lowered));
        }
        if ur_len == lu + 1 {
            push(3, pairing, v.apply(lambda_plus));
        }
        if ur_len == lu - h + 1 {
            push(4, pairing - 1, v.apply(&lowered));
        }
    }
    out
}

/// The affine reflection `t^{n vα∨} r_{vα}` used by a cocover case.
pub fn case_reflection(rs: &RootSystem, input: &MaxNewtonInput, case: &CocoverCase) -> AffineElt {
    let r = rs.root_reflection(case.alpha).expect("root index");
    let r_va = rs.weyl_mul(&rs.weyl_mul(&input.v, &r), &rs.weyl_inverse(&input.v));
    let va = input.v.apply(&rs.positive_coroots[case.alpha]);
    AffineElt::new(va.iter().map(|c| c * case.level).collect(), r_va)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SaturatedChain {
    /// `x = x_0 ⋗ x_1 ⋗ ⋯ ⋗ x_k = t^μ`.
    pub elements: Vec<AffineElt>,
    pub terminal_translation: Vec<i64>,
}

/// Bound on `⟨λ, α_i⟩` under which a length-`k` path lifts to `2^k` chains.
pub fn lifting_bound(rs: &RootSystem, k: usize) -> i64 {
    let l0 = rs.longest_length as i64;
    let k = k as i64;
    if rs.is_g2() {
        3 * l0 + 3 * k - 3
    } else {
        2 * l0 + 2 * k - 2
    }
}

/// Lifts a shortest path from `w⁻¹v` to `v` to `2^k` saturated chains from
/// `x` down to pure translations, peeling the path from either end.
pub fn lift_chains(rs: &RootSystem, input: &MaxNewtonInput, path: &QbgPath) -> Result<Vec<SaturatedChain>> {
    let k = path.len();
    let bound = lifting_bound(rs, k);
    if simple_pairings(rs, &input.lambda_plus).iter().any(|&p| p < bound) {
        return Err(Error::Hypothesis(format!(
            "chain lifting along a path of length {k} needs <λ,α_i> >= {bound} for all i"
        )));
    }
    let x = input.to_affine();
    if k > 0 && rs.affine_length(&x) <= k {
        return Err(Error::Hypothesis(format!(
            "chain lifting needs ℓ(x) > {k}, got {}",
            rs.affine_length(&x)
        )));
    }
    let tails = lift_rec(rs, input, &path.edges);
    Ok(tails
        .into_iter()
        .map(|tail| {
            let mut elements = vec![x.clone()];
            elements.extend(tail);
            let terminal_translation = elements.last().unwrap().translation.clone();
            SaturatedChain {
                elements,
                terminal_translation,
            }
        })
        .collect())
}

fn lift_rec(rs: &RootSystem, input: &MaxNewtonInput, edges: &[crate::qbg::QbgEdge]) -> Vec<Vec<AffineElt>> {
    let Some((first, last)) = edges.first().zip(edges.last()) else {
        return vec![Vec::new()];
    };
    let MaxNewtonInput { v, lambda_plus, w } = input;
    let step = |root: usize| {
        let r = rs.root_reflection(root).expect("root index");
        let vr = rs.weyl_mul(v, &r);
        let r_va_w = rs.weyl_mul(&rs.weyl_mul(&vr, &rs.weyl_inverse(v)), w);
        (vr, r_va_w)
    };
    let mut out = Vec::new();

    // Front edge w⁻¹v → w⁻¹v r_α: cases (3) and (4), v unchanged.
    let (_, w1) = step(first.root);
    let lam1 = match first.kind {
        EdgeKind::Up => lambda_plus.clone(),
        EdgeKind::Down => sub(lambda_plus, &rs.positive_coroots[first.root]),
    };
    let next = MaxNewtonInput {
        v: v.clone(),
        lambda_plus: lam1,
        w: w1,
    };
    let x1 = next.to_affine();
    for tail in lift_rec(rs, &next, &edges[1..]) {
        let mut chain = vec![x1.clone()];
        chain.extend(tail);
        out.push(chain);
    }

    // Back edge v r_α → v: cases (1) and (2), v becomes v r_α.
    let (vr, w1) = step(last.root);
    let lam1 = match last.kind {
        EdgeKind::Up => lambda_plus.clone(),
        EdgeKind::Down => sub(lambda_plus, &rs.positive_coroots[last.root]),
    };
    let next = MaxNewtonInput {
        v: vr,
        lambda_plus: lam1,
        w: w1,
    };
    let x1 = next.to_affine();
    for tail in lift_rec(rs, &next, &edges[..edges.len() - 1]) {
        let mut chain = vec![x1.clone()];
        chain.extend(tail);
        out.push(chain);
    }
    out
}

/// Checks that consecutive elements differ by a left affine reflection and
/// lose exactly one unit of length, ending at a translation.
pub fn is_saturated_chain(rs: &RootSystem, chain: &SaturatedChain) -> bool {
    let ends_in_translation = chain
        .elements
        .last()
        .is_some_and(|e| e.is_translation() && e.translation == chain.terminal_translation);
    ends_in_translation
        && chain.elements.windows(2).all(|p| {
            let (a, b) = (&p[0], &p[1]);
            rs.affine_length(a) == rs.affine_length(b) + 1 && rs.cocovers(a).contains(b)
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MazurReport {
    /// `ν(b) ≤ λ − α∨_x`; a necessary condition for `X_x(b) ≠ ∅`, never sufficient.
    pub holds: bool,
    pub bound: NewtonPoint,
    /// Set when `λ` is not superregular and the bound is only conjectural.
    pub conjectural: bool,
}

pub fn mazur_check(qbg: &QuantumBruhatGraph, input: &MaxNewtonInput, nu_b: &RatVec) -> Result<MazurReport> {
    let rs = qbg.root_system();
    if !rs.is_dominant(nu_b) {
        return Err(Error::NotDominant(nu_b.to_string()));
    }
    let res = max_newton_formula(qbg, input);
    Ok(MazurReport {
        holds: rs.dominance_leq(nu_b, &res.nu_x.value)?,
        bound: res.nu_x,
        conjectural: !res.superregular,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QschBridge {
    /// Exponent vector of the minimal monomial `q^d` in `σ_u * σ_v`.
    pub d: Vec<i64>,
    /// `x' = t^{w_0 v(λ)} w_0 v u⁻¹`.
    pub x_prime: MaxNewtonInput,
    /// `λ − Σ d_i α_i∨`.
    pub nu: NewtonPoint,
}

pub fn qsch_bridge(qbg: &QuantumBruhatGraph, u: &WeylElt, v: &WeylElt, lambda_plus: &[i64]) -> Result<QschBridge> {
    let rs = qbg.root_system();
    let g = qbg.group();
    let w0 = rs.longest_element();
    let w0v = rs.weyl_mul(&w0, v);
    let k = qbg.distance(g.index_of(u), g.index_of(&w0v));
    if !exceeds_m_k(rs, lambda_plus, k) {
        return Err(Error::Hypothesis(format!(
            "need <λ,α_i> > M_{k} = {} for all i",
            m_k(rs, k)
        )));
    }
    let d = qbg.min_quantum_monomial(g.index_of(u), g.index_of(v));
    let w_prime = rs.weyl_mul(&w0v, &rs.weyl_inverse(u));
    let x_prime = MaxNewtonInput::new(rs, w0v, lambda_plus.to_vec(), w_prime)?;
    let nu = NewtonPoint {
        value: RatVec::coroot(&sub(lambda_plus, &d)),
    };
    let check = max_newton_formula(qbg, &x_prime);
    if check.nu_x != nu {
        return Err(Error::Consistency(format!(
            "minimal monomial gives {nu}, path formula gives {}",
            check.nu_x
        )));
    }
    Ok(QschBridge { d, x_prime, nu })
}

/// `ν_i = λ − (⟨λ, α_i⟩ / 2) α_i∨`, the Newton point of `t^λ s_i` (one-based `i`).
pub fn projection_point(rs: &RootSystem, lambda_plus: &[i64], i: usize) -> RatVec {
    let half = BigRational::new(BigInt::from(rs.pair_simple(lambda_plus, i - 1)), BigInt::from(2));
    let mut v = RatVec::coroot(lambda_plus);
    v.coords[i - 1] -= half;
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationRow {
    pub mu: Vec<i64>,
    pub mu_plus: Vec<i64>,
    pub f_mu_plus: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub k: usize,
    /// `ν(x)`, computed from `t^λ v⁻¹wv`.
    pub nu_of_x: Option<NewtonPoint>,
    /// One-based index of the wall used, `None` when `k = 0`.
    pub index: Option<usize>,
    pub nu_i: Option<RatVec>,
    pub f_nu_i: Option<BigRational>,
    /// `ν_i(x) ≥ ν(x)`.
    pub projection_holds: bool,
    pub rows: Vec<SeparationRow>,
}

impl SeparationReport {
    /// Every terminal satisfies `F_i(μ⁺) > F_i(ν_i(x))`.
    pub fn all_strict(&self) -> bool {
        match &self.f_nu_i {
            Some(f) => self.rows.iter().all(|r| &r.f_mu_plus > f),
            None => true,
        }
    }
}

/// Evaluates `F_i` on the terminals of all lifted chains of all shortest
/// paths, with `i` the smallest index such that `ν(x)` lies on `H_{α_i}`.
pub fn f_separation_check(qbg: &QuantumBruhatGraph, input: &MaxNewtonInput) -> Result<SeparationReport> {
    let rs = qbg.root_system();
    let g = qbg.group();
    let (superregular, k) = is_superregular(qbg, input);
    if k == 0 {
        return Ok(SeparationReport {
            k,
            nu_of_x: None,
            index: None,
            nu_i: None,
            f_nu_i: None,
            projection_holds: true,
            rows: Vec::new(),
        });
    }
    if !superregular {
        return Err(Error::Hypothesis(format!(
            "separation check needs <λ,α_i> > M_{k} = {}",
            m_k(rs, k)
        )));
    }
    let conj = rs.weyl_mul(&rs.weyl_mul(&rs.weyl_inverse(&input.v), &input.w), &input.v);
    let nu = rs.newton_point(&AffineElt::new(input.lambda_plus.clone(), conj));
    let i = (1..=rs.rank)
        .find(|&i| num_traits::Zero::is_zero(&rs.pair_simple_rat(&nu.value, i - 1)))
        .ok_or_else(|| Error::Consistency(format!("ν(x) = {nu} lies on no wall")))?;
    let nu_i = projection_point(rs, &input.lambda_plus, i);
    let f_nu_i = rs.f_functional(i, &nu_i)?;
    let projection_holds = rs.dominance_leq(&nu.value, &nu_i)?;

    let paths = qbg.all_min_paths(
        g.index_of(&input.path_start(rs)),
        g.index_of(&input.v),
        DEFAULT_PATH_BUDGET,
    )?;
    let mut terminals: Vec<Vec<i64>> = Vec::new();
    for p in &paths {
        for c in lift_chains(rs, input, p)? {
            terminals.push(c.terminal_translation);
        }
    }
    terminals.sort();
    terminals.dedup();
    let rows = terminals
        .into_iter()
        .map(|mu| {
            let mu_plus = rs.dominant_rep_ints(&mu).0;
            let f = rs.f_functional(i, &RatVec::coroot(&mu_plus))?;
            Ok(SeparationRow {
                mu,
                mu_plus,
                f_mu_plus: f,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeparationReport {
        k,
        nu_of_x: Some(nu),
        index: Some(i),
        nu_i: Some(nu_i),
        f_nu_i: Some(f_nu_i),
        projection_holds,
        rows,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleJson {
    pub nu: Vec<String>,
    pub interval_size: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaxNewtonJson {
    pub x: AffineEltJson,
    pub k: usize,
    pub superregular: bool,
    pub correction: Vec<i64>,
    pub nu_x: Vec<String>,
    pub witness_path: Vec<PathStep>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleJson>,
}

impl MaxNewtonResult {
    pub fn to_json(&self, rs: &RootSystem, oracle: Option<&OracleResult>) -> MaxNewtonJson {
        MaxNewtonJson {
            x: rs.affine_to_json(&self.input.to_affine()),
            k: self.k,
            superregular: self.superregular,
            correction: self.correction.clone(),
            nu_x: self.nu_x.to_strings(),
            witness_path: self.witness_path.steps(),
            oracle: oracle.map(|o| OracleJson {
                nu: o.nu.to_strings(),
                interval_size: o.interval_size,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub v: u32,
    pub w: u32,
    pub k: usize,
    pub superregular: bool,
    pub formula: NewtonPoint,
    pub oracle: NewtonPoint,
    pub interval_size: usize,
}

impl SweepRow {
    pub fn agrees(&self) -> bool {
        self.formula == self.oracle
    }
}

/// Formula against oracle for every `(v, w)` at a fixed dominant regular `λ`.
pub fn sweep(qbg: &QuantumBruhatGraph, lambda_plus: &[i64], budget: usize) -> Result<Vec<SweepRow>> {
    let n = qbg.group().len() as u32;
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|v| (0..n).map(move |w| (v, w))).collect();
    sweep_pairs(qbg, lambda_plus, &pairs, budget)
}

/// Formula against oracle for the given `(v, w)` index pairs.
pub fn sweep_pairs(
    qbg: &QuantumBruhatGraph,
    lambda_plus: &[i64],
    pairs: &[(u32, u32)],
    budget: usize,
) -> Result<Vec<SweepRow>> {
    let g = qbg.group();
    let rs = g.root_system();
    let tables = AffineTables::new(g);
    let mut rows = Vec::with_capacity(pairs.len());
    for &(v, w) in pairs {
        let input = MaxNewtonInput::new(rs, g.element(v).clone(), lambda_plus.to_vec(), g.element(w).clone())?;
        let f = max_newton_formula(qbg, &input);
        let o = viehmann_oracle_with(&tables, &input.to_affine(), budget)?;
        rows.push(SweepRow {
            v,
            w,
            k: f.k,
            superregular: f.superregular,
            formula: f.nu_x,
            oracle: o.nu,
            interval_size: o.interval_size,
        });
    }
    Ok(rows)
}

/// Groups `(v, w)` pairs by the `k` of their path, for reporting.
pub fn counts_by_k(rows: &[SweepRow]) -> Vec<(usize, usize, usize)> {
    let mut by: HashMap<usize, (usize, usize)> = HashMap::new();
    for r in rows {
        let e = by.entry(r.k).or_default();
        e.0 += 1;
        e.1 += usize::from(r.agrees());
    }
    let mut out: Vec<_> = by.into_iter().map(|(k, (n, a))| (k, n, a)).collect();
    out.sort();
    out
}
