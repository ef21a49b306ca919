//! Spec enumeration and code search. Valid connection-set tuples form a
//! product of independent orbit choices, so both exhaustive streaming and
//! uniform sampling come cheap: every orbit of the relevant stabilizing
//! map is either wholly in or wholly out of a set.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::code::{
    code_from_graph, low_support_min_weight, min_distance, weight_distribution, DistanceOutcome,
    SweepBudget, TypeClass, WeightDistribution,
};
use crate::graph::{build_graph, gcd, pow_mod, valence, MetacirculantSpec};
use crate::Error;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SearchMode {
    Exhaustive,
    Randomized { seed: u64, iterations: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub m: u32,
    pub n: u32,
    /// Units of Z_n to scan; None means all of them, ascending.
    pub alphas: Option<Vec<u32>>,
    pub d_target: u32,
    pub mode: SearchMode,
    pub type_filter: Option<TypeClass>,
    pub valence_min: Option<u32>,
    pub valence_max: Option<u32>,
}

impl SearchTask {
    pub fn exhaustive(m: u32, n: u32, d_target: u32) -> SearchTask {
        SearchTask {
            m,
            n,
            alphas: None,
            d_target,
            mode: SearchMode::Exhaustive,
            type_filter: None,
            valence_min: None,
            valence_max: None,
        }
    }

    pub fn randomized(m: u32, n: u32, d_target: u32, seed: u64, iterations: u64) -> SearchTask {
        SearchTask { mode: SearchMode::Randomized { seed, iterations }, ..SearchTask::exhaustive(m, n, d_target) }
    }

    fn alpha_list(&self) -> Vec<u32> {
        match &self.alphas {
            Some(list) => list.clone(),
            None => units(self.n),
        }
    }
}

/// A spec that survived screening. `distance` is exact when `exact` is
/// true; otherwise it is the value of the low-support screen, an upper
/// bound on weights explored so far, recorded for lengths beyond the
/// enumeration budget.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub spec: MetacirculantSpec,
    pub distance: u32,
    pub exact: bool,
    pub weight_distribution: Option<WeightDistribution>,
    pub class_key: Option<String>,
}

impl SearchHit {
    /// One NDJSON record: {"spec": .., "d": .., "exact": .., "wd"?: ..,
    /// "class_key"?: ..}.
    pub fn to_ndjson(&self) -> String {
        let mut obj = serde_json::Map::new();
        obj.insert(
            "spec".into(),
            serde_json::to_value(&self.spec).expect("spec serialization is infallible"),
        );
        obj.insert("d".into(), serde_json::Value::from(self.distance));
        obj.insert("exact".into(), serde_json::Value::from(self.exact));
        if let Some(wd) = &self.weight_distribution {
            let v: serde_json::Value =
                serde_json::from_str(&wd.to_json()).expect("wd json roundtrip");
            obj.insert("wd".into(), v);
        }
        if let Some(key) = &self.class_key {
            obj.insert("class_key".into(), serde_json::Value::String(key.clone()));
        }
        serde_json::Value::Object(obj).to_string()
    }
}

pub fn units(n: u32) -> Vec<u32> {
    (1..n.max(2)).filter(|&a| gcd(a as u64, n as u64) == 1).collect()
}

fn neg(n: u32, x: u32) -> u32 {
    if x == 0 {
        0
    } else {
        n - x
    }
}

/// Cycles of the bijection f over the given domain, as bitmasks sorted
/// ascending.
fn orbits_under(n: u32, f: impl Fn(u32) -> u32, domain: impl Iterator<Item = u32>) -> Vec<u64> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for x in domain {
        if seen[x as usize] {
            continue;
        }
        let mut mask = 0u64;
        let mut y = x;
        loop {
            seen[y as usize] = true;
            mask |= 1 << y;
            y = f(y);
            if y == x {
                break;
            }
        }
        out.push(mask);
    }
    out.sort_unstable();
    out
}

/// Orbits of x -> -x on Z_n \ {0}: the atoms available to S_0.
pub fn s0_orbits(n: u32) -> Vec<u64> {
    orbits_under(n, |x| neg(n, x), 1..n)
}

/// Orbits of x -> alpha^m * x on Z_n: the atoms for S_k, 1 <= k < m/2
/// (and all k < m for odd m).
pub fn sk_orbits(m: u32, n: u32, alpha: u32) -> Vec<u64> {
    let beta = pow_mod(alpha as u64, m, n as u64) as u32;
    orbits_under(n, |x| (x as u64 * beta as u64 % n as u64) as u32, 0..n)
}

/// Orbits of x -> -alpha^(m/2) * x on Z_n: the atoms for S_(m/2) when m is
/// even. Squaring this map gives multiplication by alpha^m, so these
/// atoms automatically satisfy the S_k stability condition too.
pub fn shalf_orbits(m: u32, n: u32, alpha: u32) -> Vec<u64> {
    debug_assert_eq!(m % 2, 0);
    let gamma = pow_mod(alpha as u64, m / 2, n as u64) as u32;
    orbits_under(n, |x| neg(n, (x as u64 * gamma as u64 % n as u64) as u32), 0..n)
}

fn slot_orbits(m: u32, n: u32, alpha: u32) -> Vec<Vec<u64>> {
    let half = m / 2;
    let mut slots = Vec::with_capacity(half as usize + 1);
    slots.push(s0_orbits(n));
    for k in 1..=half {
        if m.is_multiple_of(2) && k == half {
            slots.push(shalf_orbits(m, n, alpha));
        } else {
            slots.push(sk_orbits(m, n, alpha));
        }
    }
    slots
}

const MAX_SLOT_SUBSETS: usize = 1 << 22;

/// Streams every valid spec for (m, n, alpha) exactly once. Order: each
/// set ranges over its subset masks ascending, tuples ordered
/// lexicographically with S_0 most significant.
pub struct SpecEnumerator {
    m: u32,
    n: u32,
    alpha: u32,
    /// Per slot, every achievable subset mask, ascending.
    slots: Vec<Vec<u64>>,
    cursor: u128,
}

impl SpecEnumerator {
    pub fn total(&self) -> u128 {
        self.slots.iter().map(|s| s.len() as u128).product()
    }

    /// The idx-th spec in enumeration order.
    pub fn spec_at(&self, idx: u128) -> MetacirculantSpec {
        assert!(idx < self.total());
        let mut masks = vec![0u64; self.slots.len()];
        let mut rest = idx;
        for (slot, subsets) in self.slots.iter().enumerate().rev() {
            let r = subsets.len() as u128;
            masks[slot] = subsets[(rest % r) as usize];
            rest /= r;
        }
        let spec = MetacirculantSpec::from_masks(self.m, self.n, self.alpha, &masks)
            .expect("orbit unions form valid sets");
        debug_assert!(crate::graph::validate_spec(&spec).is_empty());
        spec
    }
}

impl Iterator for SpecEnumerator {
    type Item = MetacirculantSpec;

    fn next(&mut self) -> Option<MetacirculantSpec> {
        if self.cursor >= self.total() {
            return None;
        }
        let spec = self.spec_at(self.cursor);
        self.cursor += 1;
        Some(spec)
    }
}

pub fn enumerate_specs(m: u32, n: u32, alpha: u32) -> Result<SpecEnumerator, Error> {
    if m < 2 || n == 0 {
        return Err(Error::SpecShape(format!("need m >= 2 and n >= 1, got m={m} n={n}")));
    }
    if n > 64 {
        return Err(Error::SpecShape(format!("enumeration supports n <= 64, got {n}")));
    }
    if gcd(alpha as u64, n as u64) != 1 {
        return Err(Error::InvalidSpec(vec![crate::graph::Violation::AlphaNotUnit {
            alpha,
            n,
        }]));
    }
    let slots = slot_orbits(m, n, alpha)
        .into_iter()
        .map(|orbits| {
            if orbits.len() >= MAX_SLOT_SUBSETS.trailing_zeros() as usize {
                return Err(Error::Search(format!(
                    "slot with {} orbits is too large to materialize",
                    orbits.len()
                )));
            }
            let mut subsets: Vec<u64> = (0u64..1 << orbits.len())
                .map(|pick| {
                    orbits
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| pick >> j & 1 == 1)
                        .fold(0u64, |acc, (_, &o)| acc | o)
                })
                .collect();
            subsets.sort_unstable();
            Ok(subsets)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(SpecEnumerator { m, n, alpha, slots, cursor: 0 })
}

fn delta_s(spec: &MetacirculantSpec) -> u32 {
    let m = spec.m();
    if m.is_multiple_of(2) {
        (spec.s(0).len() + spec.s((m / 2) as usize).len()) as u32
    } else {
        spec.s(0).len() as u32
    }
}

fn passes_cheap_filters(spec: &MetacirculantSpec, task: &SearchTask) -> bool {
    let v = valence(spec).expect("enumerated specs are valid");
    // A single generator row is a codeword of weight valence + 1.
    if v + 1 < task.d_target {
        return false;
    }
    if task.valence_min.is_some_and(|lo| v < lo) || task.valence_max.is_some_and(|hi| v > hi) {
        return false;
    }
    if let Some(t) = task.type_filter {
        let is_two = delta_s(spec) % 2 == 1;
        if (t == TypeClass::TypeII) != is_two {
            return false;
        }
    }
    true
}

fn fingerprint(wd: &WeightDistribution) -> String {
    let mut h = Sha256::new();
    h.update(format!("len={}", wd.length()));
    for (w, c) in wd.to_pairs() {
        h.update(format!("|{w}:{c}"));
    }
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Full screening pipeline for one candidate: cheap spec-level filters,
/// then the sparse-support screen, then the abort-early sweep. Survivors
/// get an exact distance and a full distribution via one more sweep.
pub fn evaluate_spec(
    spec: &MetacirculantSpec,
    task: &SearchTask,
    budget: &SweepBudget,
) -> Result<Option<SearchHit>, Error> {
    if !passes_cheap_filters(spec, task) {
        return Ok(None);
    }
    let g = build_graph(spec)?;
    let c = code_from_graph(&g)?;
    let screen = low_support_min_weight(&c, 3);
    if screen < task.d_target {
        return Ok(None);
    }
    let sweepable = c.generator_count() <= budget.max_len.min(62) as usize;
    if !sweepable {
        // Beyond the enumeration budget only the screen bound is known.
        return Ok(Some(SearchHit {
            spec: spec.clone(),
            distance: screen,
            exact: false,
            weight_distribution: None,
            class_key: None,
        }));
    }
    match min_distance(&c, budget, Some(task.d_target))? {
        DistanceOutcome::Aborted { .. } => Ok(None),
        DistanceOutcome::Exact(d) => {
            if d < task.d_target {
                return Ok(None);
            }
            let wd = weight_distribution(&c, budget)?;
            debug_assert_eq!(wd.min_positive_weight(), Some(d));
            let key = fingerprint(&wd);
            Ok(Some(SearchHit {
                spec: spec.clone(),
                distance: d,
                exact: true,
                weight_distribution: Some(wd),
                class_key: Some(key),
            }))
        }
    }
}

/// Exhaustive scan over a contiguous index range of one alpha's
/// enumeration. Output order follows enumeration order for any worker
/// count. Exposed so long runs can checkpoint between ranges.
pub fn exhaustive_range(
    task: &SearchTask,
    alpha: u32,
    start: u128,
    end: u128,
    budget: &SweepBudget,
) -> Result<Vec<SearchHit>, Error> {
    let en = enumerate_specs(task.m, task.n, alpha)?;
    let end = end.min(en.total());
    if start >= end {
        return Ok(Vec::new());
    }
    let indices: Vec<u128> = (start..end).collect();
    let evaluated: Result<Vec<Option<SearchHit>>, Error> = indices
        .par_iter()
        .map(|&i| evaluate_spec(&en.spec_at(i), task, budget))
        .collect();
    Ok(evaluated?.into_iter().flatten().collect())
}

pub fn exhaustive_search(task: &SearchTask, budget: &SweepBudget) -> Result<Vec<SearchHit>, Error> {
    if task.mode != SearchMode::Exhaustive {
        return Err(Error::Search("task mode is not exhaustive".into()));
    }
    if task.d_target == 0 {
        return Err(Error::Search("d_target must be at least 1".into()));
    }
    let len = (task.m as usize) * (task.n as usize);
    let cap = budget.max_len.min(62) as usize;
    if len > cap {
        return Err(Error::BudgetRefused { len, cap });
    }
    let mut hits = Vec::new();
    for alpha in task.alpha_list() {
        let en = enumerate_specs(task.m, task.n, alpha)?;
        let count = en.total();
        hits.extend(exhaustive_range(task, alpha, 0, count, budget)?);
    }
    Ok(hits)
}

/// Uniform sampling over the valid spec space: each orbit joins its set
/// with probability 1/2, independently; alpha is drawn uniformly from the
/// task's list. Identical seed and task give identical output. Repeated
/// samples of the same spec are reported once.
pub fn random_search(task: &SearchTask, budget: &SweepBudget) -> Result<Vec<SearchHit>, Error> {
    let SearchMode::Randomized { seed, iterations } = task.mode else {
        return Err(Error::Search("task mode is not randomized".into()));
    };
    if task.n > 64 {
        return Err(Error::SpecShape(format!("sampling supports n <= 64, got {}", task.n)));
    }
    let alphas = task.alpha_list();
    if alphas.is_empty() {
        return Err(Error::Search("no alpha values to sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeSet<(u32, Vec<u64>)> = BTreeSet::new();
    let mut hits = Vec::new();
    for _ in 0..iterations {
        let alpha = alphas[rng.gen_range(0..alphas.len())];
        let slots = slot_orbits(task.m, task.n, alpha);
        let masks: Vec<u64> = slots
            .iter()
            .map(|orbits| {
                orbits
                    .iter()
                    .fold(0u64, |acc, &o| if rng.gen::<bool>() { acc | o } else { acc })
            })
            .collect();
        if !seen.insert((alpha, masks.clone())) {
            continue;
        }
        let spec = MetacirculantSpec::from_masks(task.m, task.n, alpha, &masks)?;
        debug_assert!(crate::graph::validate_spec(&spec).is_empty());
        if let Some(hit) = evaluate_spec(&spec, task, budget)? {
            hits.push(hit);
        }
    }
    Ok(hits)
}

/// Hits grouped by identical weight distribution. Same enumerator is
/// necessary, not sufficient, for code equivalence; the keys are coarse
/// class labels, not canonical forms.
#[derive(Clone, Debug)]
pub struct EnumeratorClass {
    pub class_key: String,
    /// Indices into the input hit list, in input order.
    pub members: Vec<usize>,
}

pub fn class_by_enumerator(hits: &[SearchHit]) -> Result<Vec<EnumeratorClass>, Error> {
    let mut classes: Vec<EnumeratorClass> = Vec::new();
    for (i, hit) in hits.iter().enumerate() {
        let key = match (&hit.class_key, &hit.weight_distribution) {
            (Some(k), _) => k.clone(),
            (None, Some(wd)) => fingerprint(wd),
            (None, None) => {
                return Err(Error::Search(format!(
                    "hit {i} has no weight distribution to class by"
                )))
            }
        };
        match classes.iter_mut().find(|c| c.class_key == key) {
            Some(c) => c.members.push(i),
            None => classes.push(EnumeratorClass { class_key: key, members: vec![i] }),
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_lists() {
        assert_eq!(units(9), vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(units(13).len(), 12);
        assert_eq!(units(1), vec![1]);
    }

    #[test]
    fn orbit_shapes() {
        // n = 9: negation pairs {1,8},{2,7},{3,6},{4,5}.
        assert_eq!(s0_orbits(9).len(), 4);
        // n = 6: {3} is self-negative.
        let o6 = s0_orbits(6);
        assert_eq!(o6.len(), 3);
        assert!(o6.contains(&(1 << 3)));
        // alpha^3 = 1 mod 9 for alpha = 4: every point is fixed.
        assert_eq!(sk_orbits(3, 9, 4).len(), 9);
        // alpha^3 = 8 = -1 mod 9 for alpha = 2: 0 plus negation pairs.
        assert_eq!(sk_orbits(3, 9, 2).len(), 5);
    }

    #[test]
    fn enumeration_counts_match_structure() {
        // 16 choices of S_0, 512 of S_1.
        assert_eq!(enumerate_specs(3, 9, 4).unwrap().total(), 8192);
        // S_1 constrained to 32 choices when alpha^3 = -1.
        assert_eq!(enumerate_specs(3, 9, 2).unwrap().total(), 512);
        // Tiny space: S_0 in {{},{1}} x four S_1 subsets of {0,1}.
        assert_eq!(enumerate_specs(2, 2, 1).unwrap().total(), 8);
        assert!(enumerate_specs(3, 9, 3).is_err());
    }

    #[test]
    fn enumeration_is_unique_valid_and_ordered() {
        let en = enumerate_specs(2, 4, 1).unwrap();
        let count = en.total();
        let specs: Vec<MetacirculantSpec> = en.collect();
        assert_eq!(specs.len() as u128, count);
        for s in &specs {
            assert!(crate::graph::validate_spec(s).is_empty());
        }
        let mut dedup = specs.clone();
        dedup.sort_by_key(|s| format!("{s}"));
        dedup.dedup_by_key(|s| format!("{s}"));
        assert_eq!(dedup.len(), specs.len());
        // First spec is the all-empty tuple.
        assert!(specs[0].s(0).is_empty() && specs[0].s(1).is_empty());
    }

    #[test]
    fn spec_at_agrees_with_iteration() {
        let en = enumerate_specs(3, 9, 2).unwrap();
        let direct: Vec<MetacirculantSpec> = enumerate_specs(3, 9, 2).unwrap().collect();
        for (i, s) in direct.iter().enumerate() {
            assert_eq!(&en.spec_at(i as u128), s);
        }
    }

    #[test]
    fn dodecacode_found_by_tiny_exhaustive_search() {
        let task = SearchTask::exhaustive(2, 6, 6);
        let hits = exhaustive_search(&task, &SweepBudget::default()).unwrap();
        assert!(!hits.is_empty());
        let target = MetacirculantSpec::new(2, 6, 5, &[vec![3], vec![0, 3, 4, 5]]).unwrap();
        assert!(hits.iter().any(|h| h.spec == target));
        for h in &hits {
            assert!(h.exact && h.distance >= 6);
            assert!(h.class_key.is_some());
        }
        // Re-evaluating a hit standalone reproduces its distance.
        let again = evaluate_spec(&target, &task, &SweepBudget::default()).unwrap().unwrap();
        assert_eq!(again.distance, 6);
    }

    #[test]
    fn random_search_is_deterministic_and_a_restriction() {
        let task = SearchTask::randomized(2, 6, 6, 17, 400);
        let budget = SweepBudget::default();
        let a = random_search(&task, &budget).unwrap();
        let b = random_search(&task, &budget).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.spec, y.spec);
            assert_eq!(x.distance, y.distance);
        }
        let exhaustive = exhaustive_search(&SearchTask::exhaustive(2, 6, 6), &budget).unwrap();
        for h in &a {
            assert!(exhaustive.iter().any(|e| e.spec == h.spec));
        }
        // Zero iterations: vacuous.
        let empty =
            random_search(&SearchTask::randomized(2, 6, 6, 1, 0), &budget).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn classing_partitions_by_distribution() {
        let task = SearchTask::exhaustive(2, 6, 6);
        let hits = exhaustive_search(&task, &SweepBudget::default()).unwrap();
        let classes = class_by_enumerator(&hits).unwrap();
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, hits.len());
        for c in &classes {
            for &i in &c.members {
                assert_eq!(hits[i].class_key.as_ref(), Some(&c.class_key));
            }
        }
        // One hit, no distribution: classing must refuse.
        let mut orphan = hits[0].clone();
        orphan.weight_distribution = None;
        orphan.class_key = None;
        assert!(class_by_enumerator(&[orphan]).is_err());
    }

    #[test]
    fn search_mode_and_budget_guards() {
        let budget = SweepBudget::default();
        let wrong = SearchTask::randomized(2, 6, 6, 1, 5);
        assert!(matches!(exhaustive_search(&wrong, &budget), Err(Error::Search(_))));
        assert!(matches!(
            random_search(&SearchTask::exhaustive(2, 6, 6), &budget),
            Err(Error::Search(_))
        ));
        let big = SearchTask::exhaustive(6, 13, 20);
        assert!(matches!(exhaustive_search(&big, &budget), Err(Error::BudgetRefused { .. })));
    }

    #[test]
    fn ndjson_record_shape() {
        let task = SearchTask::exhaustive(2, 6, 6);
        let hits = exhaustive_search(&task, &SweepBudget::default()).unwrap();
        let line = hits[0].to_ndjson();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["d"], 6);
        assert_eq!(v["exact"], true);
        assert!(v["spec"]["m"].is_number());
        assert!(v["wd"]["counts"].is_object());
        assert!(v["class_key"].is_string());
        assert!(!line.contains('\n'));
    }

    #[test]
    fn screen_only_hit_beyond_budget() {
        // The 78-vertex spec passes the sparse screen at its claimed
        // distance but is far beyond full enumeration.
        let spec = MetacirculantSpec::new(
            6,
            13,
            12,
            &[
                vec![1, 4, 6, 7, 9, 12],
                vec![1, 2, 3, 5, 7, 8, 9, 11],
                vec![1, 2, 4, 5, 8, 10],
                vec![1, 2, 3, 6, 7, 8, 12],
            ],
        )
        .unwrap();
        let task = SearchTask::exhaustive(6, 13, 20);
        let hit = evaluate_spec(&spec, &task, &SweepBudget::default()).unwrap().unwrap();
        assert!(!hit.exact);
        assert!(hit.distance >= 20);
        assert!(hit.weight_distribution.is_none());
        assert!(hit.class_key.is_none());
    }
}
