//! Additive codes over GF(4) from graphs, and the enumeration kernels that
//! compute weight distributions and minimum distances. Codewords are F2
//! combinations of the generator rows; the sweep walks all 2^k selection
//! vectors in reflected-binary Gray order so each step costs one row XOR
//! and one popcount.

use rayon::prelude::*;

use crate::bits::{f2_rank, BitRow};
use crate::gf4::{symplectic_form, F4Vector};
use crate::graph::{BitGraph, MetacirculantSpec};
use crate::Error;

/// Additive code given by generator rows. For graph codes the a-rows form
/// the adjacency matrix and the b-rows the identity, i.e. the row span of
/// A + wI.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdditiveCode {
    len: usize,
    gens: Vec<F4Vector>,
}

impl AdditiveCode {
    pub fn new(len: usize, gens: Vec<F4Vector>) -> Result<AdditiveCode, Error> {
        for g in &gens {
            if g.len() != len {
                return Err(Error::LengthMismatch { left: g.len(), right: len });
            }
        }
        Ok(AdditiveCode { len, gens })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[F4Vector] {
        &self.gens
    }

    /// The codeword for a generator-selection vector (bit i picks row i).
    pub fn codeword(&self, selection: u64) -> F4Vector {
        assert!(self.gens.len() <= 64, "selection vector limited to 64 rows");
        let mut word = F4Vector::zeros(self.len);
        for (i, g) in self.gens.iter().enumerate() {
            if selection >> i & 1 == 1 {
                word.xor_assign(g);
            }
        }
        word
    }

    /// One line per generator, symbols from {0, 1, w, W}.
    pub fn generator_dump(&self) -> String {
        let mut s = String::new();
        for g in &self.gens {
            s.push_str(&g.symbols());
            s.push('\n');
        }
        s
    }

    /// True when every b-row is the matching unit vector, which lets the
    /// sweep kernels keep the b accumulator implicit.
    fn has_identity_b(&self) -> bool {
        self.gens.len() == self.len
            && self.gens.iter().enumerate().all(|(i, g)| {
                g.b_row().count_ones() == 1 && g.b_row().get(i)
            })
    }

    fn a_rows_u64(&self) -> Vec<u64> {
        self.gens
            .iter()
            .map(|g| {
                let w = g.a_row().words();
                if w.is_empty() {
                    0
                } else {
                    w[0]
                }
            })
            .collect()
    }

    fn b_rows_u64(&self) -> Vec<u64> {
        self.gens
            .iter()
            .map(|g| {
                let w = g.b_row().words();
                if w.is_empty() {
                    0
                } else {
                    w[0]
                }
            })
            .collect()
    }
}

/// Generators a-row = adjacency row, b-row = unit vector: row i is
/// (adjacency of vertex i) + w placed at coordinate i.
pub fn code_from_graph(g: &BitGraph) -> Result<AdditiveCode, Error> {
    let n = g.vertex_count();
    for u in 0..n {
        if g.row(u).get(u) {
            return Err(Error::BadGraphForCode(format!("nonzero diagonal at vertex {}", u + 1)));
        }
        for v in g.row(u).iter_ones() {
            if !g.row(v).get(u) {
                return Err(Error::BadGraphForCode(format!(
                    "asymmetric adjacency between {} and {}",
                    u + 1,
                    v + 1
                )));
            }
        }
    }
    let gens = (0..n)
        .map(|i| {
            let mut b = BitRow::zeros(n);
            b.set(i, true);
            F4Vector::from_rows(g.row(i).clone(), b)
        })
        .collect();
    AdditiveCode::new(n, gens)
}

/// Self-duality under the trace form: all generator pairs orthogonal and
/// the (a ‖ b) rows have full F2 rank.
pub fn is_symplectic_self_dual(c: &AdditiveCode) -> bool {
    if c.generator_count() != c.len() {
        return false;
    }
    let gens = c.generators();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if symplectic_form(&gens[i], &gens[j]).expect("equal lengths within a code") {
                return false;
            }
        }
    }
    let stacked: Vec<BitRow> = gens.iter().map(|g| g.a_row().concat(g.b_row())).collect();
    f2_rank(&stacked) == c.len()
}

/// Cap on full-sweep enumeration; 2^len codewords are walked, so this is a
/// wall-clock guard, not a correctness limit.
#[derive(Copy, Clone, Debug)]
pub struct SweepBudget {
    pub max_len: u32,
}

impl Default for SweepBudget {
    fn default() -> Self {
        SweepBudget { max_len: 40 }
    }
}

/// Codeword counts per Hamming weight, 0 ..= length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn from_counts(counts: Vec<u64>) -> WeightDistribution {
        WeightDistribution { counts }
    }

    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    pub fn min_positive_weight(&self) -> Option<u32> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0).map(|w| w as u32)
    }

    pub fn all_positive_weights_even(&self) -> bool {
        (1..self.counts.len()).all(|w| w % 2 == 0 || self.counts[w] == 0)
    }

    /// Nonzero entries as (weight, count) pairs.
    pub fn to_pairs(&self) -> Vec<(u32, u64)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w as u32, c))
            .collect()
    }

    /// JSON with counts as decimal strings; some counts exceed 2^32 and
    /// string form keeps them safe for arbitrary JSON consumers.
    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        for (w, c) in self.to_pairs() {
            map.insert(w.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "length": self.length(), "counts": map }).to_string()
    }
}

const HIST_SIZE: usize = 65;

fn add_hists(mut a: [u64; HIST_SIZE], b: [u64; HIST_SIZE]) -> [u64; HIST_SIZE] {
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x += y;
    }
    a
}

fn xor_prefix_rows(rows: &[u64], prefix: u64, q: usize) -> u64 {
    let mut acc = 0;
    let mut pb = prefix;
    let mut i = q;
    while pb != 0 {
        if pb & 1 == 1 {
            acc ^= rows[i];
        }
        pb >>= 1;
        i += 1;
    }
    acc
}

/// Gray walk over the 2^q selections whose top bits equal `prefix`,
/// accumulating the weight histogram. b-rows are the identity, so the
/// selection vector itself is the b part.
fn hist_chunk_identity(rows: &[u64], prefix: u64, q: usize) -> [u64; HIST_SIZE] {
    let mut hist = [0u64; HIST_SIZE];
    let mut acc = xor_prefix_rows(rows, prefix, q);
    let mut v = prefix << q;
    hist[(acc | v).count_ones() as usize] += 1;
    if q == 0 {
        return hist;
    }
    let total: u64 = 1 << q;
    let r0 = rows[0];
    acc ^= r0;
    v ^= 1;
    hist[(acc | v).count_ones() as usize] += 1;
    let mut t: u64 = 2;
    while t < total {
        // Even step: flip bit tz(t); odd step t+1 always flips bit 0.
        let f = t.trailing_zeros() as usize;
        acc ^= rows[f];
        v ^= 1 << f;
        hist[(acc | v).count_ones() as usize] += 1;
        acc ^= r0;
        v ^= 1;
        hist[(acc | v).count_ones() as usize] += 1;
        t += 2;
    }
    hist
}

/// General variant: both a and b accumulators walk.
fn hist_chunk_general(a_rows: &[u64], b_rows: &[u64], prefix: u64, q: usize) -> [u64; HIST_SIZE] {
    let mut hist = [0u64; HIST_SIZE];
    let mut acc_a = xor_prefix_rows(a_rows, prefix, q);
    let mut acc_b = xor_prefix_rows(b_rows, prefix, q);
    hist[(acc_a | acc_b).count_ones() as usize] += 1;
    let total: u64 = 1u64 << q;
    let mut t: u64 = 1;
    while t < total {
        let f = t.trailing_zeros() as usize;
        acc_a ^= a_rows[f];
        acc_b ^= b_rows[f];
        hist[(acc_a | acc_b).count_ones() as usize] += 1;
        t += 1;
    }
    hist
}

fn prefix_bits(gens: usize) -> usize {
    if gens <= 20 {
        0
    } else {
        (gens - 20).min(12)
    }
}

fn check_sweep_budget(c: &AdditiveCode, budget: &SweepBudget) -> Result<(), Error> {
    let k = c.generator_count();
    let cap = budget.max_len.min(62) as usize;
    if k > cap {
        return Err(Error::BudgetRefused { len: k, cap });
    }
    if c.len() > 64 {
        return Err(Error::BudgetRefused { len: c.len(), cap: 64 });
    }
    Ok(())
}

/// Exact weight distribution by full 2^k Gray-code sweep, parallelized over
/// fixed selection prefixes. Deterministic for any worker count.
pub fn weight_distribution(c: &AdditiveCode, budget: &SweepBudget) -> Result<WeightDistribution, Error> {
    check_sweep_budget(c, budget)?;
    let k = c.generator_count();
    let p = prefix_bits(k);
    let q = k - p;
    let a_rows = c.a_rows_u64();
    let hist = if c.has_identity_b() {
        (0u64..1 << p)
            .into_par_iter()
            .map(|prefix| hist_chunk_identity(&a_rows, prefix, q))
            .reduce(|| [0u64; HIST_SIZE], add_hists)
    } else {
        let b_rows = c.b_rows_u64();
        (0u64..1 << p)
            .into_par_iter()
            .map(|prefix| hist_chunk_general(&a_rows, &b_rows, prefix, q))
            .reduce(|| [0u64; HIST_SIZE], add_hists)
    };
    let mut counts = hist.to_vec();
    counts.truncate(c.len() + 1);
    debug_assert_eq!(hist[c.len() + 1..].iter().sum::<u64>(), 0);
    Ok(WeightDistribution::from_counts(counts))
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DistanceOutcome {
    Exact(u32),
    /// Scan stopped at the first codeword lighter than the threshold; the
    /// witness is its generator-selection vector.
    Aborted { weight: u32, witness: u64 },
}

struct ChunkScan {
    min_weight: u32,
    aborted: Option<(u32, u64)>,
}

/// Scans one prefix chunk tracking the minimum nonzero-codeword weight;
/// stops at the first weight strictly below `abort_below`.
fn scan_chunk(rows: &[u64], prefix: u64, q: usize, abort_below: u32) -> ChunkScan {
    let mut min_w = u32::MAX;
    let mut acc = xor_prefix_rows(rows, prefix, q);
    let mut v = prefix << q;
    if v != 0 {
        let w = (acc | v).count_ones();
        if w < min_w {
            min_w = w;
            if w < abort_below {
                return ChunkScan { min_weight: w, aborted: Some((w, v)) };
            }
        }
    }
    let total: u64 = 1u64 << q;
    let mut t: u64 = 1;
    while t < total {
        let f = t.trailing_zeros() as usize;
        acc ^= rows[f];
        v ^= 1 << f;
        let w = (acc | v).count_ones();
        if w < min_w {
            min_w = w;
            if w < abort_below {
                return ChunkScan { min_weight: w, aborted: Some((w, v)) };
            }
        }
        t += 1;
    }
    ChunkScan { min_weight: min_w, aborted: None }
}

fn scan_chunk_general(
    a_rows: &[u64],
    b_rows: &[u64],
    prefix: u64,
    q: usize,
    abort_below: u32,
) -> ChunkScan {
    let mut min_w = u32::MAX;
    let mut acc_a = xor_prefix_rows(a_rows, prefix, q);
    let mut acc_b = xor_prefix_rows(b_rows, prefix, q);
    let total: u64 = 1u64 << q;
    let mut t: u64 = 0;
    while t < total {
        if t > 0 {
            let f = t.trailing_zeros() as usize;
            acc_a ^= a_rows[f];
            acc_b ^= b_rows[f];
        }
        let v = prefix << q | gray(t);
        if v != 0 {
            let w = (acc_a | acc_b).count_ones();
            if w < min_w {
                min_w = w;
                if w < abort_below {
                    return ChunkScan { min_weight: w, aborted: Some((w, v)) };
                }
            }
        }
        t += 1;
    }
    ChunkScan { min_weight: min_w, aborted: None }
}

fn gray(t: u64) -> u64 {
    t ^ (t >> 1)
}

/// Exact minimum distance by full sweep. With `abort_below` set the scan
/// returns early on the first nonzero codeword lighter than the threshold;
/// the reported witness is deterministic for any worker count.
pub fn min_distance(
    c: &AdditiveCode,
    budget: &SweepBudget,
    abort_below: Option<u32>,
) -> Result<DistanceOutcome, Error> {
    check_sweep_budget(c, budget)?;
    let k = c.generator_count();
    if k == 0 {
        return Err(Error::BadGraphForCode("code with no generators has no distance".into()));
    }
    let p = prefix_bits(k);
    let q = k - p;
    let threshold = abort_below.unwrap_or(0);
    let a_rows = c.a_rows_u64();
    let identity_b = c.has_identity_b();
    let b_rows = if identity_b { Vec::new() } else { c.b_rows_u64() };
    let scan = |prefix: u64| {
        if identity_b {
            scan_chunk(&a_rows, prefix, q, threshold)
        } else {
            scan_chunk_general(&a_rows, &b_rows, prefix, q, threshold)
        }
    };
    if threshold > 0 {
        // Early-exit path: first aborting chunk in prefix order wins.
        if let Some((w, v)) = (0u64..1 << p)
            .into_par_iter()
            .find_map_first(|prefix| scan(prefix).aborted)
        {
            return Ok(DistanceOutcome::Aborted { weight: w, witness: v });
        }
    }
    let min = (0u64..1 << p)
        .into_par_iter()
        .map(|prefix| scan(prefix).min_weight)
        .reduce(|| u32::MAX, u32::min);
    Ok(DistanceOutcome::Exact(min))
}

/// Minimum weight over nonzero codewords built from at most `t` generator
/// rows: an upper bound on the distance, exact once t reaches the
/// generator count.
pub fn low_support_min_weight(c: &AdditiveCode, t: usize) -> u32 {
    fn rec(gens: &[F4Vector], start: usize, left: usize, acc: &F4Vector, best: &mut u32) {
        if left == 0 {
            return;
        }
        for i in start..gens.len() {
            let mut next = acc.clone();
            next.xor_assign(&gens[i]);
            let w = next.weight();
            if !next.is_zero() {
                *best = (*best).min(w);
            }
            rec(gens, i + 1, left - 1, &next, best);
        }
    }
    let mut best = u32::MAX;
    let zero = F4Vector::zeros(c.len());
    rec(c.generators(), 0, t.min(c.generator_count()), &zero, &mut best);
    best
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TypeClass {
    TypeI,
    TypeII,
}

impl std::fmt::Display for TypeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TypeClass::TypeI => write!(f, "I"),
            TypeClass::TypeII => write!(f, "II"),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct TypeReport {
    pub class: TypeClass,
    /// |S_0| for odd m, |S_0| + |S_(m/2)| for even m.
    pub delta_s: u32,
    pub degrees_all_odd: bool,
}

/// Classifies via the connection-set parity Delta_S and cross-checks the
/// equivalent graph condition (every vertex degree odd). The two criteria
/// disagreeing means the code was not built from this spec's graph.
pub fn classify_type(spec: &MetacirculantSpec, c: &AdditiveCode) -> Result<TypeReport, Error> {
    let m = spec.m();
    let delta_s = if m.is_multiple_of(2) {
        (spec.s(0).len() + spec.s((m / 2) as usize).len()) as u32
    } else {
        spec.s(0).len() as u32
    };
    let degrees_all_odd = c.generators().iter().all(|g| g.a_row().count_ones() % 2 == 1);
    let by_delta = delta_s % 2 == 1;
    if by_delta != degrees_all_odd {
        return Err(Error::TypeCriteriaDisagree { delta_s, degrees_all_odd });
    }
    Ok(TypeReport {
        class: if by_delta { TypeClass::TypeII } else { TypeClass::TypeI },
        delta_s,
        degrees_all_odd,
    })
}
