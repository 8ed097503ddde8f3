//! Groupoid point counts over prime fields by exhaustive enumeration.
//!
//! `Coh^n(A^d)` is the quotient of the variety of `d`-tuples of commuting
//! `n x n` matrices by `GL_n`, so its number of `F_q`-points is
//! `#{commuting tuples} / |GL_n(F_q)|`. Sheaves supported at the origin are the
//! nilpotent tuples. A point of `Quot(O^r, n)` additionally carries `r` vectors
//! that generate `F_q^n` under the matrices; there `GL_n` acts freely and the
//! quotient count is an integer.
//!
//! These counts never touch the symbolic code and serve as ground truth for it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{MotiveError, Result};

pub const DEFAULT_WORK_BUDGET: u128 = 1_000_000_000;
pub const DEFAULT_N_BOUND: usize = 3;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `|GL_n(F_q)| = prod_{i=0}^{n-1} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - q.pow(i as u32)))
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and a is nonzero mod p
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// An `n x n` matrix over `F_p`, entries stored row-major in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrimeFieldMatrix {
    p: u32,
    n: usize,
    entries: Vec<u32>,
}

impl PrimeFieldMatrix {
    pub fn new(p: u32, n: usize, entries: Vec<i64>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(MotiveError::NotPrime(p as u64));
        }
        if entries.len() != n * n {
            return Err(MotiveError::InvalidArgument(format!(
                "{n}x{n} matrix needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| e.rem_euclid(p as i64) as u32)
            .collect();
        Ok(PrimeFieldMatrix { p, n, entries })
    }

    pub fn zero(p: u32, n: usize) -> Self {
        PrimeFieldMatrix {
            p,
            n,
            entries: vec![0; n * n],
        }
    }

    /// The matrix whose row-major entries are the base-`p` digits of `index`,
    /// least significant first.
    pub fn from_index(p: u32, n: usize, mut index: u64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push((index % p as u64) as u32);
            index /= p as u64;
        }
        PrimeFieldMatrix { p, n, entries }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (n, p) = (self.n, self.p as u64);
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                entries[i * n + j] = (acc % p) as u32;
            }
        }
        PrimeFieldMatrix {
            p: self.p,
            n,
            entries,
        }
    }

    /// `A^n = 0` for an `n x n` matrix is equivalent to nilpotency.
    pub fn is_nilpotent(&self) -> bool {
        let mut acc = self.clone();
        for _ in 1..self.n {
            if acc.is_zero() {
                return true;
            }
            acc = acc.mul(self);
        }
        acc.is_zero()
    }

    /// `AB == BA`, without allocating.
    pub fn commutes_with(&self, other: &Self) -> bool {
        let (n, p) = (self.n, self.p as u64);
        for i in 0..n {
            for j in 0..n {
                let mut ab = 0u64;
                let mut ba = 0u64;
                for k in 0..n {
                    ab += self.get(i, k) as u64 * other.get(k, j) as u64;
                    ba += other.get(i, k) as u64 * self.get(k, j) as u64;
                }
                if ab % p != ba % p {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.n)
            .map(|i| {
                let acc: u64 = (0..self.n)
                    .map(|k| self.get(i, k) as u64 * v[k] as u64)
                    .sum();
                (acc % p) as u32
            })
            .collect()
    }

    /// Trace and determinant are enough to classify 2x2 matrices; only used there.
    fn trace_det_2x2(&self) -> (u32, u32) {
        let p = self.p as u64;
        let (a, b, c, d) = (
            self.get(0, 0) as u64,
            self.get(0, 1) as u64,
            self.get(1, 0) as u64,
            self.get(1, 1) as u64,
        );
        (((a + d) % p) as u32, ((a * d + p * p - b * c) % p) as u32)
    }
}

/// A subspace of `F_p^n`, stored as its reduced row echelon basis (canonical).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn span(p: u32, n: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors.into_iter().collect();
        let p64 = p as u64;
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = inv_mod(rows[rank][col], p) as u64;
            for x in rows[rank].iter_mut() {
                *x = (*x as u64 * inv % p64) as u32;
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row[col] == 0 {
                    continue;
                }
                let f = row[col] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + (p64 - f) * y as u64) % p64) as u32;
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        Subspace { rows }
    }

    pub fn sum(&self, other: &Subspace, p: u32, n: usize) -> Subspace {
        if other.rows.is_empty() {
            return self.clone();
        }
        if self.rows.is_empty() {
            return other.clone();
        }
        Subspace::span(p, n, self.rows.iter().chain(&other.rows).cloned())
    }
}

/// Smallest subspace containing `vectors` and stable under every matrix in
/// `mats` (the submodule they generate). Breadth-first: each round adds the
/// images of the current basis; stops once the dimension stops growing, so at
/// most `n` rounds run.
pub fn generated_submodule(
    mats: &[&PrimeFieldMatrix],
    vectors: &[Vec<u32>],
    p: u32,
    n: usize,
) -> Subspace {
    let mut current = Subspace::span(p, n, vectors.iter().cloned());
    loop {
        let images: Vec<Vec<u32>> = current
            .rows
            .iter()
            .flat_map(|b| mats.iter().map(move |m| m.apply(b)))
            .collect();
        let next = Subspace::span(p, n, current.rows.iter().cloned().chain(images));
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let total = (p as u64).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let d = (idx % p as u64) as u32;
                    idx /= p as u64;
                    d
                })
                .collect()
        })
        .collect()
}

/// Number of `r`-tuples of vectors generating `F_p^n` as a module over `mats`.
///
/// The submodule generated by a tuple is the sum of the cyclic submodules of its
/// entries, so tuples are counted by a dynamic program over invariant subspaces
/// instead of one closure per tuple.
pub fn count_generating_tuples(mats: &[&PrimeFieldMatrix], r: usize, p: u32, n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    // v and c*v generate the same submodule: close one vector per line
    let cyclic = all_vectors(p, n)
        .into_iter()
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .map(|v| (generated_submodule(mats, &[v], p, n), p as u128 - 1))
        .chain(std::iter::once((Subspace::zero(), 1)));
    // intern subspaces so each sum is row-reduced once
    let mut ids: HashMap<Subspace, usize> = HashMap::from([(Subspace::zero(), 0)]);
    let mut spaces = vec![Subspace::zero()];
    let mut intern = |s: Subspace, spaces: &mut Vec<Subspace>| {
        *ids.entry(s).or_insert_with_key(|s| {
            spaces.push(s.clone());
            spaces.len() - 1
        })
    };
    let mut cyclic_counts: HashMap<usize, u128> = HashMap::new();
    for (s, mult) in cyclic {
        *cyclic_counts.entry(intern(s, &mut spaces)).or_default() += mult;
    }
    let mut sums: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states: HashMap<usize, u128> = HashMap::from([(0, 1)]);
    for _ in 0..r {
        let mut next: HashMap<usize, u128> = HashMap::new();
        for (&w, cw) in &states {
            for (&k, ck) in &cyclic_counts {
                let id = match sums.get(&(w, k)) {
                    Some(&id) => id,
                    None => {
                        let s = spaces[w].sum(&spaces[k], p, n);
                        let id = intern(s, &mut spaces);
                        sums.insert((w, k), id);
                        id
                    }
                };
                *next.entry(id).or_default() += cw * ck;
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|(s, _)| spaces[*s].dim() == n)
        .map(|(_, c)| c)
        .sum()
}

/// Tuple-by-tuple version of [`count_generating_tuples`], used to test it.
pub fn count_generating_tuples_naive(
    mats: &[&PrimeFieldMatrix],
    r: usize,
    p: u32,
    n: usize,
) -> u128 {
    let vectors = all_vectors(p, n);
    let total = vectors.len().pow(r as u32);
    let mut count = 0;
    for mut idx in 0..total {
        let tuple: Vec<Vec<u32>> = (0..r)
            .map(|_| {
                let v = vectors[idx % vectors.len()].clone();
                idx /= vectors.len();
                v
            })
            .collect();
        if generated_submodule(mats, &tuple, p, n).dim() == n {
            count += 1;
        }
    }
    count
}

/// The moduli problems the oracle can count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `Coh^n(A^1)`: all matrices.
    CohA1,
    /// `Coh^n(A^2)`: commuting pairs.
    CohA2,
    /// `Coh^n(A^1)_0`: nilpotent matrices.
    CohNilpA1,
    /// `Coh^n(A^2)_0`: commuting nilpotent pairs.
    CohNilpA2,
    QuotA1 {
        r: usize,
    },
    QuotA2 {
        r: usize,
    },
    QuotNilpA1 {
        r: usize,
    },
    QuotNilpA2 {
        r: usize,
    },
    /// Length-2 sheaves on `A^1` supported at two distinct geometric points:
    /// 2x2 matrices with squarefree characteristic polynomial.
    CohDistinctA1,
    /// `Sym^2_{(1^2)}(A^1)`: squarefree monic quadratics (a variety, trivial group).
    SymDistinctA1,
}

impl Space {
    pub fn name(&self) -> &'static str {
        match self {
            Space::CohA1 => "coh-a1",
            Space::CohA2 => "coh-a2",
            Space::CohNilpA1 => "coh-nilp-a1",
            Space::CohNilpA2 => "coh-nilp-a2",
            Space::QuotA1 { .. } => "quot-a1",
            Space::QuotA2 { .. } => "quot-a2",
            Space::QuotNilpA1 { .. } => "quot-nilp-a1",
            Space::QuotNilpA2 { .. } => "quot-nilp-a2",
            Space::CohDistinctA1 => "coh-distinct-a1",
            Space::SymDistinctA1 => "sym-distinct-a1",
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match *self {
            Space::QuotA1 { r }
            | Space::QuotA2 { r }
            | Space::QuotNilpA1 { r }
            | Space::QuotNilpA2 { r } => Some(r),
            _ => None,
        }
    }

    /// Builds a space from its name; Quot spaces take the rank `r`.
    pub fn parse(name: &str, r: Option<usize>) -> Result<Space> {
        let need_r = || {
            r.filter(|&r| r >= 1)
                .ok_or_else(|| MotiveError::InvalidArgument(format!("{name} needs a rank r >= 1")))
        };
        Ok(match name {
            "coh-a1" => Space::CohA1,
            "coh-a2" => Space::CohA2,
            "coh-nilp-a1" => Space::CohNilpA1,
            "coh-nilp-a2" => Space::CohNilpA2,
            "quot-a1" => Space::QuotA1 { r: need_r()? },
            "quot-a2" => Space::QuotA2 { r: need_r()? },
            "quot-nilp-a1" => Space::QuotNilpA1 { r: need_r()? },
            "quot-nilp-a2" => Space::QuotNilpA2 { r: need_r()? },
            "coh-distinct-a1" => Space::CohDistinctA1,
            "sym-distinct-a1" => Space::SymDistinctA1,
            other => {
                return Err(MotiveError::InvalidArgument(format!(
                    "unknown space {other:?}"
                )))
            }
        })
    }

    /// Number of tuple evaluations the enumeration performs, roughly.
    pub fn estimated_cost(&self, n: usize, q: u64) -> u128 {
        let q = q as u128;
        let pow = |e: usize| q.saturating_pow(e as u32);
        let mats = pow(n * n);
        let nilp = pow(n * n - n.min(n * n));
        let vecs = pow(n);
        match *self {
            Space::CohA1 | Space::CohNilpA1 | Space::CohDistinctA1 => mats,
            Space::SymDistinctA1 => vecs,
            Space::CohA2 => mats.saturating_mul(mats),
            Space::CohNilpA2 => mats.saturating_add(nilp.saturating_mul(nilp)),
            Space::QuotA1 { r } => mats.saturating_mul(vecs.saturating_mul(r as u128 + 1)),
            Space::QuotNilpA1 { r } => {
                mats.saturating_add(nilp.saturating_mul(vecs.saturating_mul(r as u128 + 1)))
            }
            Space::QuotA2 { .. } => mats.saturating_mul(mats),
            Space::QuotNilpA2 { r } => mats
                .saturating_add(nilp.saturating_mul(nilp))
                .saturating_add(nilp.saturating_mul(vecs.saturating_mul(r as u128 + 1))),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank() {
            Some(r) => write!(f, "{} (r={r})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for Space {
    type Err = MotiveError;
    fn from_str(s: &str) -> Result<Space> {
        Space::parse(s, None)
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub threads: usize,
    pub work_budget: u128,
    pub n_bound: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            work_budget: DEFAULT_WORK_BUDGET,
            n_bound: DEFAULT_N_BOUND,
        }
    }
}

/// Result of a groupoid count: `raw / group_order` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidCount {
    pub space: Space,
    pub n: usize,
    pub q: u64,
    pub raw: BigUint,
    pub group_order: BigUint,
    pub elapsed_ms: u128,
}

impl GroupoidCount {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.raw.clone().into(), self.group_order.clone().into())
    }

    /// Whether `group_order` divides `raw`, as it must for free actions.
    pub fn is_integral(&self) -> bool {
        (&self.raw % &self.group_order).is_zero()
    }

    pub fn value_string(&self) -> String {
        let v = self.value();
        format!("{}/{}", v.numer(), v.denom())
    }

    pub const CSV_HEADER: [&'static str; 8] = [
        "space",
        "r",
        "n",
        "q",
        "raw",
        "group_order",
        "value",
        "elapsed_ms",
    ];

    pub fn csv_record(&self) -> [String; 8] {
        [
            self.space.name().to_string(),
            self.space.rank().map(|r| r.to_string()).unwrap_or_default(),
            self.n.to_string(),
            self.q.to_string(),
            self.raw.to_string(),
            self.group_order.to_string(),
            self.value_string(),
            self.elapsed_ms.to_string(),
        ]
    }
}

impl Serialize for GroupoidCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            space: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            r: Option<usize>,
            n: usize,
            q: u64,
            raw: String,
            group_order: String,
            value: String,
            elapsed_ms: u128,
        }
        Repr {
            space: self.space.name(),
            r: self.space.rank(),
            n: self.n,
            q: self.q,
            raw: self.raw.to_string(),
            group_order: self.group_order.to_string(),
            value: self.value_string(),
            elapsed_ms: self.elapsed_ms,
        }
        .serialize(s)
    }
}

fn all_matrices(p: u32, n: usize) -> Vec<PrimeFieldMatrix> {
    let total = (p as u64).pow((n * n) as u32);
    (0..total)
        .into_par_iter()
        .map(|i| PrimeFieldMatrix::from_index(p, n, i))
        .collect()
}

fn nilpotent_matrices(p: u32, n: usize) -> Vec<PrimeFieldMatrix> {
    all_matrices(p, n)
        .into_par_iter()
        .filter(PrimeFieldMatrix::is_nilpotent)
        .collect()
}

/// Commuting pairs `(A, B)` with `A` from `left` and `B` from `right`, found by a
/// full double loop split over the index range of `A`.
fn commuting_pairs<'a>(
    left: &'a [PrimeFieldMatrix],
    right: &'a [PrimeFieldMatrix],
) -> Vec<(&'a PrimeFieldMatrix, &'a PrimeFieldMatrix)> {
    left.par_iter()
        .flat_map_iter(|a| {
            right
                .iter()
                .filter(move |b| a.commutes_with(b))
                .map(move |b| (a, b))
        })
        .collect()
}

fn count_commuting_pairs(left: &[PrimeFieldMatrix], right: &[PrimeFieldMatrix]) -> u128 {
    left.par_iter()
        .map(|a| right.iter().filter(|b| a.commutes_with(b)).count() as u128)
        .sum()
}

fn squarefree_quadratic(trace: u32, det: u32, p: u32) -> bool {
    // discriminant trace^2 - 4 det, nonzero mod p
    let p = p as u64;
    !(trace as u64 * trace as u64 + 4 * (p - det as u64)).is_multiple_of(p)
}

fn enumerate(space: Space, n: usize, p: u32) -> u128 {
    if n == 0 {
        return 1;
    }
    match space {
        Space::CohDistinctA1 => all_matrices(p, 2)
            .par_iter()
            .filter(|m| {
                let (tr, det) = m.trace_det_2x2();
                squarefree_quadratic(tr, det, p)
            })
            .count() as u128,
        Space::SymDistinctA1 => {
            // x^2 + b x + c has trace -b and determinant c
            let mut count = 0;
            for b in 0..p {
                for c in 0..p {
                    if squarefree_quadratic((p - b) % p, c, p) {
                        count += 1;
                    }
                }
            }
            count
        }
        Space::CohA1 => (0..(p as u64).pow((n * n) as u32))
            .into_par_iter()
            .filter(|&i| PrimeFieldMatrix::from_index(p, n, i).dim() == n)
            .count() as u128,
        Space::CohNilpA1 => nilpotent_matrices(p, n).len() as u128,
        Space::CohA2 => {
            let all = all_matrices(p, n);
            count_commuting_pairs(&all, &all)
        }
        Space::CohNilpA2 => {
            let nil = nilpotent_matrices(p, n);
            count_commuting_pairs(&nil, &nil)
        }
        Space::QuotA1 { r } => all_matrices(p, n)
            .par_iter()
            .map(|a| count_generating_tuples(&[a], r, p, n))
            .sum(),
        Space::QuotNilpA1 { r } => nilpotent_matrices(p, n)
            .par_iter()
            .map(|a| count_generating_tuples(&[a], r, p, n))
            .sum(),
        Space::QuotA2 { r } => {
            let all = all_matrices(p, n);
            commuting_pairs(&all, &all)
                .par_iter()
                .map(|(a, b)| count_generating_tuples(&[a, b], r, p, n))
                .sum()
        }
        Space::QuotNilpA2 { r } => {
            let nil = nilpotent_matrices(p, n);
            commuting_pairs(&nil, &nil)
                .par_iter()
                .map(|(a, b)| count_generating_tuples(&[a, b], r, p, n))
                .sum()
        }
    }
}

/// Counts `space` in length `n` over `F_q` by exhaustive enumeration.
pub fn count(space: Space, n: usize, q: u64, cfg: &OracleConfig) -> Result<GroupoidCount> {
    if !is_prime(q) || q > u16::MAX as u64 {
        return Err(MotiveError::NotPrime(q));
    }
    if n > cfg.n_bound {
        return Err(MotiveError::InvalidArgument(format!(
            "n = {n} exceeds the configured bound {}",
            cfg.n_bound
        )));
    }
    if cfg.threads == 0 {
        return Err(MotiveError::InvalidArgument(
            "thread count must be at least 1".into(),
        ));
    }
    if matches!(space, Space::CohDistinctA1 | Space::SymDistinctA1) && n != 2 {
        return Err(MotiveError::InvalidArgument(format!(
            "{space} is only defined for n = 2"
        )));
    }
    let estimate = space.estimated_cost(n, q);
    if estimate > cfg.work_budget {
        return Err(MotiveError::BudgetExceeded {
            estimate,
            budget: cfg.work_budget,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| MotiveError::InvalidArgument(e.to_string()))?;
    let start = Instant::now();
    let raw = pool.install(|| enumerate(space, n, q as u32));
    Ok(GroupoidCount {
        space,
        n,
        q,
        raw: BigUint::from(raw),
        group_order: if space == Space::SymDistinctA1 {
            BigUint::one()
        } else {
            gl_order(n, q)
        },
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn count_coh_a1(n: usize, q: u64, cfg: &OracleConfig) -> Result<GroupoidCount> {
    count(Space::CohA1, n, q, cfg)
}

pub fn count_coh_a2(n: usize, q: u64, cfg: &OracleConfig) -> Result<GroupoidCount> {
    count(Space::CohA2, n, q, cfg)
}

/// Sheaves on `A^d` supported at the origin, `d` in `{1, 2}`.
pub fn count_nilpotent_coh(
    d: usize,
    n: usize,
    q: u64,
    cfg: &OracleConfig,
) -> Result<GroupoidCount> {
    match d {
        1 => count(Space::CohNilpA1, n, q, cfg),
        2 => count(Space::CohNilpA2, n, q, cfg),
        _ => Err(MotiveError::InvalidArgument(format!(
            "dimension {d} not supported"
        ))),
    }
}

pub fn count_quot_a1(r: usize, n: usize, q: u64, cfg: &OracleConfig) -> Result<GroupoidCount> {
    count(Space::QuotA1 { r }, n, q, cfg)
}

pub fn count_quot_a2(r: usize, n: usize, q: u64, cfg: &OracleConfig) -> Result<GroupoidCount> {
    count(Space::QuotA2 { r }, n, q, cfg)
}

/// Punctual Quot scheme of `O^r` on `A^d` at the origin, `d` in `{1, 2}`.
pub fn count_quot_punctual(
    d: usize,
    r: usize,
    n: usize,
    q: u64,
    cfg: &OracleConfig,
) -> Result<GroupoidCount> {
    match d {
        1 => count(Space::QuotNilpA1 { r }, n, q, cfg),
        2 => count(Space::QuotNilpA2 { r }, n, q, cfg),
        _ => Err(MotiveError::InvalidArgument(format!(
            "dimension {d} not supported"
        ))),
    }
}

pub fn count_coh2_a1_distinct_support(q: u64) -> Result<GroupoidCount> {
    count(Space::CohDistinctA1, 2, q, &OracleConfig::default())
}

pub fn count_squarefree_monic_quadratics(q: u64) -> Result<GroupoidCount> {
    count(Space::SymDistinctA1, 2, q, &OracleConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OracleConfig {
        OracleConfig {
            threads: 2,
            ..OracleConfig::default()
        }
    }

    fn value(c: &GroupoidCount) -> (i64, i64) {
        let v = c.value();
        (
            i64::try_from(v.numer()).unwrap(),
            i64::try_from(v.denom()).unwrap(),
        )
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order(0, 7), BigUint::one());
        assert_eq!(gl_order(3, 2), BigUint::from(168u32));
    }

    #[test]
    fn gl_order_matches_invertible_matrix_count() {
        for (n, q) in [(2, 2), (2, 3), (3, 2)] {
            let invertible = all_matrices(q, n)
                .iter()
                .filter(|m| {
                    let e: Vec<Vec<u32>> = (0..n)
                        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
                        .collect();
                    Subspace::span(q, n, e).dim() == n
                })
                .count();
            assert_eq!(BigUint::from(invertible), gl_order(n, q as u64));
        }
    }

    #[test]
    fn matrix_construction() {
        assert_eq!(
            PrimeFieldMatrix::new(4, 1, vec![1]),
            Err(MotiveError::NotPrime(4))
        );
        let m = PrimeFieldMatrix::new(5, 2, vec![-1, 7, 5, 0]).unwrap();
        assert_eq!((m.get(0, 0), m.get(0, 1), m.get(1, 0)), (4, 2, 0));
        assert!(PrimeFieldMatrix::new(5, 2, vec![1]).is_err());
    }

    #[test]
    fn coh_counts() {
        let c = count_coh_a1(1, 2, &cfg()).unwrap();
        assert_eq!((c.raw.clone(), value(&c)), (BigUint::from(2u32), (2, 1)));
        assert_eq!(value(&count_coh_a1(2, 2, &cfg()).unwrap()), (8, 3));
        assert_eq!(value(&count_coh_a1(0, 3, &cfg()).unwrap()), (1, 1));
        for q in [2u64, 3, 5] {
            let c = count_coh_a1(2, q, &cfg()).unwrap();
            assert_eq!(c.raw, BigUint::from(q).pow(4));
            let c = count_coh_a2(1, q, &cfg()).unwrap();
            assert_eq!(value(&c), ((q * q) as i64, q as i64 - 1));
        }
        let c = count_coh_a2(2, 2, &cfg()).unwrap();
        assert_eq!(c.raw, BigUint::from(88u32));
        assert_eq!(value(&c), (44, 3));
    }

    #[test]
    fn nilpotent_counts() {
        let c = count_nilpotent_coh(1, 2, 2, &cfg()).unwrap();
        assert_eq!(c.raw, BigUint::from(4u32));
        assert_eq!(value(&c), (2, 3));
        assert_eq!(
            value(&count_nilpotent_coh(1, 1, 5, &cfg()).unwrap()),
            (1, 4)
        );
        // nilpotent n x n matrices over F_q number q^{n^2 - n}
        assert_eq!(
            count_nilpotent_coh(1, 3, 3, &cfg()).unwrap().raw,
            BigUint::from(729u32)
        );
        assert!(count_nilpotent_coh(3, 1, 2, &cfg()).is_err());
    }

    #[test]
    fn quot_counts() {
        let c = count_quot_a1(2, 1, 2, &cfg()).unwrap();
        assert_eq!(c.raw, BigUint::from(6u32));
        assert!(c.is_integral());
        let c = count_quot_a2(1, 2, 2, &cfg()).unwrap();
        assert_eq!(value(&c), (24, 1));
        for n in 0..=3 {
            let c = count_quot_a1(1, n, 2, &cfg()).unwrap();
            assert_eq!(value(&c), (1 << n, 1));
        }
    }

    #[test]
    fn dynamic_program_matches_tuple_enumeration() {
        for (p, n) in [(2, 2), (3, 2), (2, 3)] {
            let mats = all_matrices(p, n);
            for (i, a) in mats.iter().enumerate().step_by(7) {
                let b = &mats[(i * 5 + 3) % mats.len()];
                for r in 1..=2 {
                    assert_eq!(
                        count_generating_tuples(&[a], r, p, n),
                        count_generating_tuples_naive(&[a], r, p, n)
                    );
                    if a.commutes_with(b) {
                        assert_eq!(
                            count_generating_tuples(&[a, b], r, p, n),
                            count_generating_tuples_naive(&[a, b], r, p, n)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn budget_and_bounds() {
        let small = OracleConfig {
            work_budget: 1000,
            ..cfg()
        };
        assert!(matches!(
            count_coh_a2(2, 3, &small),
            Err(MotiveError::BudgetExceeded {
                estimate: 6561,
                budget: 1000
            })
        ));
        assert!(count_coh_a1(4, 2, &cfg()).is_err());
        assert_eq!(count_coh_a1(1, 4, &cfg()), Err(MotiveError::NotPrime(4)));
    }

    #[test]
    fn distinct_support_stratum() {
        assert_eq!(value(&count_coh2_a1_distinct_support(2).unwrap()), (4, 3));
        assert_eq!(value(&count_coh2_a1_distinct_support(3).unwrap()), (9, 8));
        for q in [2, 3, 5] {
            let c = count_squarefree_monic_quadratics(q).unwrap();
            assert_eq!(value(&c), ((q * q - q) as i64, 1));
        }
        assert!(count(Space::CohDistinctA1, 3, 2, &cfg()).is_err());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let one = OracleConfig {
            threads: 1,
            ..cfg()
        };
        let four = OracleConfig {
            threads: 4,
            ..cfg()
        };
        for space in [Space::CohA2, Space::QuotA2 { r: 2 }, Space::CohNilpA2] {
            assert_eq!(
                count(space, 2, 3, &one).unwrap().raw,
                count(space, 2, 3, &four).unwrap().raw
            );
        }
    }

    #[test]
    fn count_json_schema() {
        let mut c = count_coh_a2(2, 2, &cfg()).unwrap();
        c.elapsed_ms = 5;
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"space":"coh-a2","n":2,"q":2,"raw":"88","group_order":"6","value":"44/3","elapsed_ms":5}"#
        );
    }
}
