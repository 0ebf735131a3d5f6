//! Root-system tables for the finite crystallographic types and exact
//! linear algebra on the coroot lattice.
//!
//! Simple roots are numbered as in Bourbaki (see `CONVENTIONS.md`). All
//! coweights are stored in the simple-coroot basis.

mod polygon;
mod ratvec;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use polygon::{dominance_leq_slopes, upper_hull_polygon, HullPoint, NewtonPolygon};
pub(crate) use ratvec::split_list;
pub use ratvec::{fmt_rational, frac, parse_rational, rat, Basis, RatVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
            LieType::E => "E",
            LieType::F => "F",
            LieType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::Parse(format!("unknown Lie type {other:?}"))),
        }
    }
}

/// Parses `"A2"`, `"E6"`, `"G2"` etc. into a type and rank.
pub fn parse_cartan_type(s: &str) -> Result<(LieType, usize)> {
    let s = s.trim();
    let split = s
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Parse(format!("missing rank in {s:?}")))?;
    let lie_type: LieType = s[..split].parse()?;
    let rank = s[split..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
    Ok((lie_type, rank))
}

fn supported(lie_type: LieType, rank: usize) -> std::result::Result<(), &'static str> {
    let ok = match lie_type {
        LieType::A => (1..=8).contains(&rank),
        LieType::B | LieType::C => (2..=5).contains(&rank),
        LieType::D => (4..=5).contains(&rank),
        LieType::E => (6..=8).contains(&rank),
        LieType::F => rank == 4,
        LieType::G => rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(match lie_type {
            LieType::A => "type A is supported for ranks 1..=8",
            LieType::B | LieType::C => "types B and C are supported for ranks 2..=5",
            LieType::D => "type D is supported for ranks 4..=5",
            LieType::E => "type E exists only in ranks 6, 7, 8",
            LieType::F => "type F exists only in rank 4",
            LieType::G => "type G exists only in rank 2",
        })
    }
}

/// `kac[i][j] = <α_i∨, α_j>`, zero-based.
fn kac_matrix(lie_type: LieType, rank: usize) -> Vec<Vec<i64>> {
    let n = rank;
    let mut k = vec![vec![0i64; n]; n];
    for (i, row) in k.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut simple = |a: usize, b: usize| {
        k[a][b] = -1;
        k[b][a] = -1;
    };
    // (long, short, multiplicity)
    let mut multiple: Option<(usize, usize, i64)> = None;
    match lie_type {
        LieType::A => (1..n).for_each(|i| simple(i - 1, i)),
        LieType::B => {
            (1..n - 1).for_each(|i| simple(i - 1, i));
            multiple = Some((n - 2, n - 1, 2));
        }
        LieType::C => {
            (1..n - 1).for_each(|i| simple(i - 1, i));
            multiple = Some((n - 1, n - 2, 2));
        }
        LieType::D => {
            (1..n - 1).for_each(|i| simple(i - 1, i));
            simple(n - 3, n - 1);
        }
        LieType::E => {
            // 1-3-4-5-...-n with 2 attached to 4
            simple(0, 2);
            (3..n).for_each(|i| simple(i - 1, i));
            simple(1, 3);
        }
        LieType::F => {
            simple(0, 1);
            simple(2, 3);
            multiple = Some((1, 2, 2));
        }
        LieType::G => multiple = Some((1, 0, 3)),
    }
    if let Some((long, short, m)) = multiple {
        k[long][short] = -1;
        k[short][long] = -m;
    }
    k
}

fn known_group_order(lie_type: LieType, rank: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match lie_type {
        LieType::A => fact(rank + 1),
        LieType::B | LieType::C => (1u128 << rank) * fact(rank),
        LieType::D => (1u128 << (rank - 1)) * fact(rank),
        LieType::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        LieType::F => 1_152,
        LieType::G => 12,
    }
}

/// Immutable root datum of a finite crystallographic root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    /// `cartan[i][j] = <α_j∨, α_i>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, ordered by height and
    /// then reverse-lexicographically (so `α_1, …, α_r` come first).
    pub positive_roots: Vec<Vec<i64>>,
    /// `positive_coroots[k]` is the coroot of `positive_roots[k]`, in
    /// simple-coroot coordinates.
    pub positive_coroots: Vec<Vec<i64>>,
    pub two_rho: Vec<i64>,
    pub highest_coroot: Vec<i64>,
    pub c_g: i64,
    pub longest_length: usize,
    /// `root_pairings[k][j] = <α_j∨, β_k>`, so `<λ, β_k> = λ · root_pairings[k]`.
    root_pairings: Vec<Vec<i64>>,
    /// `<β_k∨, 2ρ>`.
    coroot_heights2: Vec<i64>,
    coroot_lookup: HashMap<Vec<i64>, usize>,
    /// `Σ β` over positive roots with nonzero `α_i` coefficient, as pairing rows.
    f_rows: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self> {
        supported(lie_type, rank).map_err(|reason| Error::InvalidType {
            lie_type: lie_type.to_string(),
            rank,
            reason: reason.to_string(),
        })?;
        let kac = kac_matrix(lie_type, rank);
        let cartan: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| kac[j][i]).collect()).collect();

        let roots = positive_roots(&kac);
        let half_norms = symmetrizer(&kac);
        let coroots: Vec<Vec<i64>> = roots
            .iter()
            .map(|beta| {
                // (β,β)/2 = Σ_ij β_i β_j d_i K_ij / 2
                let norm2: i64 = (0..rank)
                    .flat_map(|i| (0..rank).map(move |j| (i, j)))
                    .map(|(i, j)| beta[i] * beta[j] * half_norms[i] * kac[i][j])
                    .sum();
                let d_beta = norm2 / 2;
                beta.iter()
                    .zip(&half_norms)
                    .map(|(b, d)| {
                        debug_assert_eq!((b * d) % d_beta, 0);
                        b * d / d_beta
                    })
                    .collect()
            })
            .collect();

        let two_rho = (0..rank)
            .map(|i| roots.iter().map(|b| b[i]).sum())
            .collect::<Vec<i64>>();
        let root_pairings: Vec<Vec<i64>> = roots
            .iter()
            .map(|beta| {
                (0..rank)
                    .map(|j| (0..rank).map(|i| beta[i] * cartan[i][j]).sum())
                    .collect()
            })
            .collect();
        let two_rho_row: Vec<i64> = (0..rank)
            .map(|j| (0..rank).map(|i| two_rho[i] * cartan[i][j]).sum())
            .collect();
        let coroot_heights2 = coroots.iter().map(|c| dot(c, &two_rho_row)).collect();
        let highest_coroot = coroots
            .iter()
            .max_by_key(|c| c.iter().sum::<i64>())
            .cloned()
            .expect("root system has at least one root");
        let c_g = *highest_coroot.iter().max().unwrap();
        let coroot_lookup = coroots.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
        let f_rows = (0..rank)
            .map(|i| {
                let mut row = vec![0i64; rank];
                for (beta, p) in roots.iter().zip(&root_pairings) {
                    if beta[i] > 0 {
                        row.iter_mut().zip(p).for_each(|(r, x)| *r += x);
                    }
                }
                row
            })
            .collect();

        Ok(Self {
            lie_type,
            rank,
            cartan,
            longest_length: roots.len(),
            positive_roots: roots,
            positive_coroots: coroots,
            two_rho,
            highest_coroot,
            c_g,
            root_pairings,
            coroot_heights2,
            coroot_lookup,
            f_rows,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (t, r) = parse_cartan_type(s)?;
        Self::new(t, r)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `|W|` from the classification (no enumeration).
    pub fn group_order(&self) -> u128 {
        known_group_order(self.lie_type, self.rank)
    }

    pub fn is_g2(&self) -> bool {
        self.lie_type == LieType::G
    }

    /// Row `p` with `<λ, β_k> = Σ_j λ_j p_j`.
    pub fn root_pairing_row(&self, k: usize) -> &[i64] {
        &self.root_pairings[k]
    }

    /// `<λ, β_k>` for an integral coweight `λ`.
    pub fn pair_root(&self, lambda: &[i64], k: usize) -> i64 {
        dot(lambda, &self.root_pairings[k])
    }

    /// `<λ, α_i>` for simple index `i` (zero-based).
    pub fn pair_simple(&self, lambda: &[i64], i: usize) -> i64 {
        dot(lambda, &self.cartan[i])
    }

    /// `<β_k∨, 2ρ>`.
    pub fn coroot_height2(&self, k: usize) -> i64 {
        self.coroot_heights2[k]
    }

    /// Index of the positive coroot equal to `±c`, with the sign.
    pub fn find_coroot(&self, c: &[i64]) -> Option<(usize, bool)> {
        if let Some(&k) = self.coroot_lookup.get(c) {
            return Some((k, true));
        }
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        self.coroot_lookup.get(&neg).map(|&k| (k, false))
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|b| b == beta)
    }

    /// `<λ, β>` with `λ` in the coroot basis and `β` in the root basis.
    pub fn pairing(&self, lambda: &RatVec, beta: &RatVec) -> Result<BigRational> {
        self.check_coroot(lambda)?;
        if beta.basis != Basis::SimpleRoot {
            return Err(Error::Basis {
                expected: Basis::SimpleRoot.to_string(),
                got: beta.basis.to_string(),
            });
        }
        self.check_dim(beta.dim())?;
        let mut acc = BigRational::zero();
        for (i, b) in beta.coords.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (j, l) in lambda.coords.iter().enumerate() {
                if self.cartan[i][j] != 0 {
                    acc += b * l * rat(self.cartan[i][j]);
                }
            }
        }
        Ok(acc)
    }

    /// `<λ, α_i>` for rational `λ` (zero-based `i`).
    pub fn pair_simple_rat(&self, lambda: &RatVec, i: usize) -> BigRational {
        lambda
            .coords
            .iter()
            .zip(&self.cartan[i])
            .filter(|(_, &c)| c != 0)
            .map(|(l, &c)| l * rat(c))
            .sum()
    }

    pub fn is_dominant(&self, lambda: &RatVec) -> bool {
        (0..self.rank).all(|i| !self.pair_simple_rat(lambda, i).is_negative())
    }

    /// The dominant representative `λ⁺` of the `W`-orbit of `λ`.
    pub fn dominant_rep(&self, lambda: &RatVec) -> Result<RatVec> {
        self.check_coroot(lambda)?;
        let mut v = lambda.clone();
        loop {
            let neg = (0..self.rank)
                .map(|i| (i, self.pair_simple_rat(&v, i)))
                .find(|(_, p)| p.is_negative());
            match neg {
                Some((i, p)) => v.coords[i] -= p,
                None => return Ok(v),
            }
        }
    }

    /// Integral dominant representative together with the reflection
    /// indices applied, in order (`λ⁺ = s_{i_k} ⋯ s_{i_1} λ`).
    pub fn dominant_rep_ints(&self, lambda: &[i64]) -> (Vec<i64>, Vec<usize>) {
        let mut v = lambda.to_vec();
        let mut applied = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| self.pair_simple(&v, i) < 0) {
            let p = self.pair_simple(&v, i);
            v[i] -= p;
            applied.push(i);
        }
        (v, applied)
    }

    /// `F_i(v) = <v, Σ β>` over positive roots `β` whose `α_i`
    /// coefficient is nonzero. `i` is one-based.
    pub fn f_functional(&self, i: usize, v: &RatVec) -> Result<BigRational> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            });
        }
        self.check_coroot(v)?;
        Ok(v.coords.iter().zip(&self.f_rows[i - 1]).map(|(c, &r)| c * rat(r)).sum())
    }

    /// `λ − μ` has nonnegative simple-coroot coordinates.
    pub fn dominance_leq(&self, mu: &RatVec, lambda: &RatVec) -> Result<bool> {
        self.check_coroot(mu)?;
        self.check_coroot(lambda)?;
        dominance_leq(mu, lambda)
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                got: d,
            });
        }
        Ok(())
    }

    fn check_coroot(&self, v: &RatVec) -> Result<()> {
        if v.basis != Basis::SimpleCoroot {
            return Err(Error::Basis {
                expected: Basis::SimpleCoroot.to_string(),
                got: v.basis.to_string(),
            });
        }
        self.check_dim(v.dim())
    }

    /// Integral coweight with the given simple-root pairings, if it lies in `Q∨`.
    pub fn coweight_from_pairings(&self, pairings: &[i64]) -> Result<Vec<i64>> {
        self.check_dim(pairings.len())?;
        // Solve Σ_j λ_j cartan[i][j] = p_i exactly.
        let n = self.rank;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self.cartan[i].iter().map(|&c| rat(c)).collect();
                row.push(rat(pairings[i]));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::Consistency("singular Cartan matrix".into()))?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            let pivot = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, pv) in row.iter_mut().zip(&pivot) {
                        *x -= &f * pv;
                    }
                }
            }
        }
        let sol = RatVec::new(Basis::SimpleCoroot, m.into_iter().map(|r| r[n].clone()).collect());
        sol.to_ints().ok_or_else(|| {
            Error::Parse(format!(
                "pairings {pairings:?} give the coweight ({sol}) which is not in the coroot lattice"
            ))
        })
    }

    /// Type-A only: `ε`-coordinates (summing to zero) to simple-coroot coordinates.
    pub fn eps_to_coroot(&self, eps: &RatVec) -> Result<RatVec> {
        if self.lie_type != LieType::A {
            return Err(Error::Basis {
                expected: "type A for epsilon coordinates".into(),
                got: self.name(),
            });
        }
        if eps.basis != Basis::Epsilon {
            return Err(Error::Basis {
                expected: Basis::Epsilon.to_string(),
                got: eps.basis.to_string(),
            });
        }
        if eps.dim() != self.rank + 1 {
            return Err(Error::Dimension {
                expected: self.rank + 1,
                got: eps.dim(),
            });
        }
        let total: BigRational = eps.coords.iter().sum();
        if !total.is_zero() {
            return Err(Error::Parse(format!("epsilon coordinates ({eps}) do not sum to zero")));
        }
        let mut acc = BigRational::zero();
        let coords = eps.coords[..self.rank]
            .iter()
            .map(|e| {
                acc += e;
                acc.clone()
            })
            .collect();
        Ok(RatVec::new(Basis::SimpleCoroot, coords))
    }

    /// Type-A only: simple-coroot coordinates to `ε`-coordinates.
    pub fn coroot_to_eps(&self, v: &RatVec) -> Result<RatVec> {
        if self.lie_type != LieType::A {
            return Err(Error::Basis {
                expected: "type A for epsilon coordinates".into(),
                got: self.name(),
            });
        }
        self.check_coroot(v)?;
        let n = self.rank;
        let coords = (0..=n)
            .map(|k| {
                let cur = if k < n {
                    v.coords[k].clone()
                } else {
                    BigRational::zero()
                };
                let prev = if k > 0 {
                    v.coords[k - 1].clone()
                } else {
                    BigRational::zero()
                };
                cur - prev
            })
            .collect();
        Ok(RatVec::new(Basis::Epsilon, coords))
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            lie_type: self.lie_type.to_string(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.clone(),
            positive_coroots: self.positive_coroots.clone(),
            two_rho: self.two_rho.clone(),
            highest_coroot: self.highest_coroot.clone(),
            c_g: self.c_g,
            longest_length: self.longest_length,
        }
    }
}

/// Serialized root datum (integers only).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumJson {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub positive_coroots: Vec<Vec<i64>>,
    pub two_rho: Vec<i64>,
    pub highest_coroot: Vec<i64>,
    #[serde(rename = "c_G")]
    pub c_g: i64,
    pub longest_length: usize,
}

/// `μ ≤ λ`: the difference `λ − μ` has nonnegative coordinates.
pub fn dominance_leq(mu: &RatVec, lambda: &RatVec) -> Result<bool> {
    mu.check_same(lambda)?;
    Ok(mu.coords.iter().zip(&lambda.coords).all(|(m, l)| m <= l))
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive roots by the root-string algorithm, sorted by height and then
/// reverse-lexicographically.
fn positive_roots(kac: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = kac.len();
    let unit = |i: usize| {
        let mut e = vec![0i64; n];
        e[i] = 1;
        e
    };
    let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..n).map(unit).collect()];
    let mut all: std::collections::HashSet<Vec<i64>> = layers[0].iter().cloned().collect();
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in layers.last().unwrap() {
            for i in 0..n {
                // <α_i∨, β>
                let pair: i64 = (0..n).map(|j| beta[j] * kac[i][j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pair;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        layers.push(next);
    }
    let mut roots: Vec<Vec<i64>> = layers.into_iter().flatten().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

/// Half squared lengths `d_i = (α_i, α_i)/2` as coprime positive integers,
/// so that `d_i K_ij = d_j K_ji`.
fn symmetrizer(kac: &[Vec<i64>]) -> Vec<i64> {
    let n = kac.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    d[0] = Some(rat(1));
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && kac[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * rat(kac[i][j]) / rat(kac[j][i]));
                stack.push(j);
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(|x| x.expect("connected Dynkin diagram")).collect();
    let lcm = d.iter().fold(num_bigint::BigInt::from(1), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    let scaled: Vec<i64> = d
        .iter()
        .map(|x| i64::try_from((x * BigRational::from_integer(lcm.clone())).to_integer()).unwrap())
        .collect();
    let g = scaled.iter().fold(0i64, |acc, &x| num_integer::Integer::gcd(&acc, &x));
    scaled.into_iter().map(|x| x / g).collect()
}
