//! Metacirculant parameter tuples, their validation rules, and graph
//! construction. Vertices (i, j) of Z_m x Z_n carry the 1-based label
//! i*n + j + 1, so layer i occupies labels i*n+1 ..= (i+1)*n.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitRow;
use crate::Error;

/// Parameter tuple (m, n, alpha, S_0..S_{floor(m/2)}) of a metacirculant
/// graph on Z_m x Z_n. Structural shape (set count, element range) is
/// enforced at construction; the arithmetic conditions are checked by
/// [`validate_spec`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MetacirculantSpec {
    m: u32,
    n: u32,
    alpha: u32,
    s_sets: Vec<BTreeSet<u32>>,
}

#[derive(Serialize, Deserialize)]
struct SpecWire {
    m: u32,
    n: u32,
    alpha: i64,
    s: Vec<Vec<i64>>,
}

impl MetacirculantSpec {
    /// Builds a spec, reducing alpha and all set elements mod n. Duplicate
    /// elements after reduction are rejected, as is a set count other than
    /// floor(m/2) + 1.
    pub fn new(m: u32, n: u32, alpha: i64, s_sets: &[Vec<i64>]) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::SpecShape(format!("m must be at least 2, got {m}")));
        }
        if n < 1 {
            return Err(Error::SpecShape(format!("n must be at least 1, got {n}")));
        }
        let want = (m / 2 + 1) as usize;
        if s_sets.len() != want {
            return Err(Error::SpecShape(format!(
                "expected {want} connection sets S_0..S_{} for m={m}, got {}",
                m / 2,
                s_sets.len()
            )));
        }
        let mut sets = Vec::with_capacity(want);
        for (k, raw) in s_sets.iter().enumerate() {
            let mut set = BTreeSet::new();
            for &x in raw {
                let r = x.rem_euclid(n as i64) as u32;
                if !set.insert(r) {
                    return Err(Error::SpecShape(format!(
                        "S_{k} contains {r} twice after reduction mod {n}"
                    )));
                }
            }
            sets.push(set);
        }
        Ok(MetacirculantSpec { m, n, alpha: alpha.rem_euclid(n as i64) as u32, s_sets: sets })
    }

    pub fn from_masks(m: u32, n: u32, alpha: u32, masks: &[u64]) -> Result<Self, Error> {
        let sets: Vec<Vec<i64>> = masks
            .iter()
            .map(|&mask| (0..n as i64).filter(|&x| mask >> x & 1 == 1).collect())
            .collect();
        MetacirculantSpec::new(m, n, alpha as i64, &sets)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn vertex_count(&self) -> usize {
        (self.m * self.n) as usize
    }

    pub fn s_sets(&self) -> &[BTreeSet<u32>] {
        &self.s_sets
    }

    pub fn s(&self, k: usize) -> &BTreeSet<u32> {
        &self.s_sets[k]
    }

    pub fn parse_json(text: &str) -> Result<Self, Error> {
        let wire: SpecWire =
            serde_json::from_str(text).map_err(|e| Error::SpecShape(format!("bad spec JSON: {e}")))?;
        MetacirculantSpec::new(wire.m, wire.n, wire.alpha, &wire.s)
    }

    pub fn to_json(&self) -> String {
        let wire = SpecWire {
            m: self.m,
            n: self.n,
            alpha: self.alpha as i64,
            s: self.s_sets.iter().map(|s| s.iter().map(|&x| x as i64).collect()).collect(),
        };
        serde_json::to_string(&wire).expect("spec serialization cannot fail")
    }
}

impl Serialize for MetacirculantSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SpecWire {
            m: self.m,
            n: self.n,
            alpha: self.alpha as i64,
            s: self.s_sets.iter().map(|s| s.iter().map(|&x| x as i64).collect()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MetacirculantSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = SpecWire::deserialize(de)?;
        MetacirculantSpec::new(wire.m, wire.n, wire.alpha, &wire.s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for MetacirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma({}, {}, {}", self.m, self.n, self.alpha)?;
        for s in &self.s_sets {
            let elems: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            write!(f, ", {{{}}}", elems.join(","))?;
        }
        write!(f, ")")
    }
}

/// One violated construction condition. Display names the condition the way
/// the definition states it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    AlphaNotUnit { alpha: u32, n: u32 },
    ZeroInS0,
    S0NotSymmetric,
    SkNotAlphaPowMStable { k: usize },
    HalfSetNotSkewStable,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AlphaNotUnit { alpha, n } => {
                write!(f, "alpha = {alpha} is not a unit of Z_{n}")
            }
            Violation::ZeroInS0 => write!(f, "S_0 must not contain 0"),
            Violation::S0NotSymmetric => write!(f, "S_0 != -S_0 (mod n)"),
            Violation::SkNotAlphaPowMStable { k } => {
                write!(f, "alpha^m * S_{k} != S_{k} (mod n)")
            }
            Violation::HalfSetNotSkewStable => {
                write!(f, "alpha^(m/2) * S_(m/2) != -S_(m/2) (mod n)")
            }
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn pow_mod(base: u64, exp: u32, modulus: u64) -> u64 {
    let mut result = 1u64 % modulus;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    result
}

fn map_set(set: &BTreeSet<u32>, n: u32, f: impl Fn(u32) -> u32) -> BTreeSet<u32> {
    set.iter().map(|&x| f(x) % n).collect()
}

/// Checks the construction conditions: alpha is a unit, S_0 is symmetric and
/// avoids 0, every S_k is stable under multiplication by alpha^m, and for
/// even m the middle set satisfies alpha^(m/2) * S_(m/2) = -S_(m/2).
/// Returns the full list of violations rather than stopping at the first.
pub fn validate_spec(spec: &MetacirculantSpec) -> Vec<Violation> {
    let (m, n) = (spec.m, spec.n);
    let mut out = Vec::new();
    if gcd(spec.alpha as u64, n as u64) != 1 {
        out.push(Violation::AlphaNotUnit { alpha: spec.alpha, n });
        // The remaining conditions still make sense; keep checking.
    }
    let s0 = spec.s(0);
    if s0.contains(&0) {
        out.push(Violation::ZeroInS0);
    }
    if map_set(s0, n, |x| (n - x % n) % n) != *s0 {
        out.push(Violation::S0NotSymmetric);
    }
    let am = pow_mod(spec.alpha as u64, m, n as u64) as u32;
    for k in 1..=(m / 2) as usize {
        let sk = spec.s(k);
        if map_set(sk, n, |x| (am as u64 * x as u64 % n as u64) as u32) != *sk {
            out.push(Violation::SkNotAlphaPowMStable { k });
        }
    }
    if m % 2 == 0 {
        let half = (m / 2) as usize;
        let ah = pow_mod(spec.alpha as u64, m / 2, n as u64);
        let sh = spec.s(half);
        let mapped = map_set(sh, n, |x| {
            let prod = ah * x as u64 % n as u64;
            ((n as u64 - prod) % n as u64) as u32
        });
        if mapped != *sh {
            out.push(Violation::HalfSetNotSkewStable);
        }
    }
    out
}

/// Undirected graph as a packed adjacency matrix, one bit row per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitGraph {
    rows: Vec<BitRow>,
}

impl BitGraph {
    pub fn empty(n: usize) -> BitGraph {
        BitGraph { rows: vec![BitRow::zeros(n); n] }
    }

    /// Builds from 1-based (u, v) pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<BitGraph, Error> {
        let mut g = BitGraph::empty(n);
        for &(u, v) in edges {
            if u == v || u < 1 || v < 1 || u > n || v > n {
                return Err(Error::SpecShape(format!("bad edge ({u}, {v}) for {n} vertices")));
            }
            g.rows[u - 1].set(v - 1, true);
            g.rows[v - 1].set(u - 1, true);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    /// 0-based adjacency test.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].get(v)
    }

    pub fn row(&self, u: usize) -> &BitRow {
        &self.rows[u]
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.rows[u].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.vertex_count()).map(|u| self.degree(u)).collect()
    }

    pub fn is_regular(&self) -> Option<u32> {
        let mut it = self.rows.iter().map(|r| r.count_ones());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Sorted 1-based edge list with u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for v in self.rows[u].iter_ones() {
                if v > u {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    /// Edge-list text: one "u v" pair per line, 1-based, u < v, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>, Error> {
        let mut out = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = (it.next(), it.next());
            match (u, v, it.next()) {
                (Some(u), Some(v), None) => {
                    let u: usize = u
                        .parse()
                        .map_err(|_| Error::SpecShape(format!("line {}: bad vertex", ln + 1)))?;
                    let v: usize = v
                        .parse()
                        .map_err(|_| Error::SpecShape(format!("line {}: bad vertex", ln + 1)))?;
                    out.push((u.min(v), u.max(v)));
                }
                _ => return Err(Error::SpecShape(format!("line {}: expected 'u v'", ln + 1))),
            }
        }
        Ok(out)
    }
}

/// Builds the graph after validating the spec.
pub fn build_graph(spec: &MetacirculantSpec) -> Result<BitGraph, Error> {
    let violations = validate_spec(spec);
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    build_graph_override(spec)
}

/// Builds without validating the arithmetic conditions. The directional
/// adjacency rule is still cross-checked: blocks that the rule fires in both
/// directions (intra-layer, and antipodal layers for even m) must agree, and
/// the diagonal must stay empty. A spec that bypasses validation and breaks
/// those conditions is caught here.
pub fn build_graph_override(spec: &MetacirculantSpec) -> Result<BitGraph, Error> {
    let (m, n) = (spec.m as usize, spec.n as usize);
    let nv = m * n;
    let half = m / 2;
    // fired[u] holds v iff the rule (i,j) ~ (i+k, j+t) fired for u -> v.
    let mut fired: Vec<BitRow> = vec![BitRow::zeros(nv); nv];
    for i in 0..m {
        let mult = pow_mod(spec.alpha as u64, i as u32, n as u64);
        for k in 0..=half {
            let layer = (i + k) % m;
            for &s in spec.s(k) {
                let t = (mult * s as u64 % n as u64) as usize;
                for j in 0..n {
                    let u = i * n + j;
                    let v = layer * n + (j + t) % n;
                    if u == v {
                        return Err(Error::InconsistentConstruction(format!(
                            "self-loop at vertex {} from S_{k}",
                            u + 1
                        )));
                    }
                    fired[u].set(v, true);
                }
            }
        }
    }
    // Same-layer blocks and (for even m) antipodal blocks receive firings
    // from both endpoints; they must be mutually consistent.
    for u in 0..nv {
        let lu = u / n;
        for v in fired[u].iter_ones() {
            let lv = v / n;
            let both_directions = lu == lv || (m % 2 == 0 && (lv + half) % m == lu);
            if both_directions && !fired[v].get(u) {
                return Err(Error::InconsistentConstruction(format!(
                    "adjacency rule fired for {} -> {} but not back",
                    u + 1,
                    v + 1
                )));
            }
        }
    }
    // Remaining cross-layer blocks fire in one direction only; mirror them.
    let mut g = BitGraph::empty(nv);
    for (u, row) in fired.iter().enumerate() {
        for v in row.iter_ones() {
            g.rows[u].set(v, true);
            g.rows[v].set(u, true);
        }
    }
    Ok(g)
}

/// Common vertex degree from the connection-set sizes alone:
/// m = 2:      |S_0| + |S_1|
/// m >= 4 even: |S_0| + |S_(m/2)| + 2 * sum of |S_r| for 0 < r < m/2
/// m odd:      |S_0| + 2 * sum of |S_r| for 0 < r <= (m-1)/2
pub fn valence(spec: &MetacirculantSpec) -> Result<u32, Error> {
    let violations = validate_spec(spec);
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }
    let sizes: Vec<u32> = spec.s_sets().iter().map(|s| s.len() as u32).collect();
    let m = spec.m();
    Ok(if m.is_multiple_of(2) {
        let half = (m / 2) as usize;
        sizes[0] + sizes[half] + 2 * sizes[1..half].iter().sum::<u32>()
    } else {
        sizes[0] + 2 * sizes[1..].iter().sum::<u32>()
    })
}

/// The graph splits into m independent layers exactly when S_0 is empty.
pub fn is_multipartite(spec: &MetacirculantSpec) -> bool {
    spec.s(0).is_empty()
}

/// Graph-level cross-check for [`is_multipartite`]: no edge joins two
/// vertices of the same layer.
pub fn has_no_intra_layer_edges(spec: &MetacirculantSpec, g: &BitGraph) -> bool {
    let n = spec.n() as usize;
    g.edges().iter().all(|&(u, v)| (u - 1) / n != (v - 1) / n)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Sufficient condition for the (m, n) metacirculant family to consist of
/// circulant-isomorphic graphs: gcd(m, n) = 1 and gcd(m, phi(n)) = 1.
pub fn circulant_isomorphism_guaranteed(m: u32, n: u32) -> bool {
    gcd(m as u64, n as u64) == 1 && gcd(m as u64, euler_phi(n as u64)) == 1
}

/// Circulant graph on Z_n with connection set S, where x ~ y iff the
/// circular distance min(|x-y|, n-|x-y|) lies in S. Requires every element
/// of S to satisfy 0 < s <= n/2.
pub fn build_circulant(n: u32, s: &BTreeSet<u32>) -> Result<BitGraph, Error> {
    for &x in s {
        if x == 0 || 2 * x > n {
            return Err(Error::SpecShape(format!(
                "circulant connection set element {x} outside 0 < s <= {}/2",
                n
            )));
        }
    }
    let n = n as usize;
    let mut g = BitGraph::empty(n);
    for x in 0..n {
        for &d in s {
            let y = (x + d as usize) % n;
            if x != y {
                g.rows[x].set(y, true);
                g.rows[y].set(x, true);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> MetacirculantSpec {
        MetacirculantSpec::new(2, 5, 2, &[vec![1, 4], vec![0]]).unwrap()
    }

    #[test]
    fn petersen_spec_is_valid_and_builds_fig_edges() {
        let spec = petersen();
        assert!(validate_spec(&spec).is_empty());
        let g = build_graph(&spec).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        let n1: Vec<usize> = g.row(0).iter_ones().map(|v| v + 1).collect();
        assert_eq!(n1, vec![2, 5, 6]);
        assert_eq!(g.is_regular(), Some(3));
    }

    #[test]
    fn zero_in_s0_is_reported_by_name() {
        let spec = MetacirculantSpec::new(2, 5, 2, &[vec![0, 1, 4], vec![0]]).unwrap();
        let v = validate_spec(&spec);
        assert!(v.contains(&Violation::ZeroInS0), "{v:?}");
        assert!(build_graph(&spec).is_err());
    }

    #[test]
    fn asymmetric_s0_is_reported() {
        let spec = MetacirculantSpec::new(2, 5, 2, &[vec![1], vec![0]]).unwrap();
        assert_eq!(validate_spec(&spec), vec![Violation::S0NotSymmetric]);
    }

    #[test]
    fn dodecacode_spec_is_valid() {
        let spec = MetacirculantSpec::new(2, 6, 5, &[vec![3], vec![0, 3, 4, 5]]).unwrap();
        assert!(validate_spec(&spec).is_empty());
        let g = build_graph(&spec).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 30);
        assert_eq!(g.is_regular(), Some(5));
    }

    #[test]
    fn spec_reduction_and_duplicates() {
        // 9 reduces to 3 mod 6, duplicating the existing 3.
        assert!(MetacirculantSpec::new(2, 6, 5, &[vec![3, 9], vec![0]]).is_err());
        let s = MetacirculantSpec::new(2, 6, 11, &[vec![-3], vec![0]]).unwrap();
        assert_eq!(s.alpha(), 5);
        assert!(s.s(0).contains(&3));
    }

    #[test]
    fn empty_sets_give_edgeless_graph() {
        let spec = MetacirculantSpec::new(3, 4, 1, &[vec![], vec![]]).unwrap();
        let g = build_graph(&spec).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn override_still_catches_broken_symmetry() {
        // S_0 = {1} over Z_5 is not symmetric; the directional rule fires
        // 1 -> 2 but never 2 -> 1.
        let spec = MetacirculantSpec::new(2, 5, 2, &[vec![1], vec![0]]).unwrap();
        match build_graph_override(&spec) {
            Err(Error::InconsistentConstruction(_)) => {}
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn valence_formula_cases() {
        let g78 = MetacirculantSpec::new(
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
        assert_eq!(valence(&g78).unwrap(), 41);
        let g91 = MetacirculantSpec::new(
            7,
            13,
            3,
            &[
                vec![],
                vec![4, 7, 8, 10, 11, 12],
                vec![1, 3, 4, 7, 8, 9, 10, 11, 12],
                vec![0, 4, 7, 8, 10, 11, 12],
            ],
        )
        .unwrap();
        assert_eq!(valence(&g91).unwrap(), 44);
        assert!(is_multipartite(&g91));
        assert!(!is_multipartite(&g78));
    }

    #[test]
    fn multipartite_cross_check_on_built_graph() {
        let g91 = MetacirculantSpec::new(
            7,
            13,
            3,
            &[
                vec![],
                vec![4, 7, 8, 10, 11, 12],
                vec![1, 3, 4, 7, 8, 9, 10, 11, 12],
                vec![0, 4, 7, 8, 10, 11, 12],
            ],
        )
        .unwrap();
        let g = build_graph(&g91).unwrap();
        assert!(has_no_intra_layer_edges(&g91, &g));
        let pet = petersen();
        let gp = build_graph(&pet).unwrap();
        assert!(!has_no_intra_layer_edges(&pet, &gp));
    }

    #[test]
    fn circulant_guarantee_examples() {
        assert!(!circulant_isomorphism_guaranteed(3, 9));
        assert!(circulant_isomorphism_guaranteed(3, 4));
        assert!(!circulant_isomorphism_guaranteed(2, 5));
    }

    #[test]
    fn circulant_small_graphs() {
        let c5 = build_circulant(5, &BTreeSet::from([1])).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.is_regular(), Some(2));
        let k4 = build_circulant(4, &BTreeSet::from([1, 2])).unwrap();
        assert_eq!(k4.edge_count(), 6);
        let tri2 = build_circulant(6, &BTreeSet::from([2])).unwrap();
        assert_eq!(tri2.edge_count(), 6);
        assert_eq!(tri2.is_regular(), Some(2));
        assert!(tri2.has_edge(0, 2) && tri2.has_edge(2, 4) && tri2.has_edge(0, 4));
        assert!(!tri2.has_edge(0, 1));
        assert!(build_circulant(6, &BTreeSet::from([4])).is_err());
    }

    #[test]
    fn circulant_rows_are_cyclic_shifts() {
        let g = build_circulant(7, &BTreeSet::from([1, 2])).unwrap();
        for i in 0..7usize {
            for j in 0..7usize {
                assert_eq!(g.has_edge(i, j), g.has_edge((i + 1) % 7, (j + 1) % 7));
            }
        }
    }

    #[test]
    fn edge_list_roundtrip() {
        let spec = petersen();
        let g = build_graph(&spec).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text.lines().count(), 15);
        let parsed = BitGraph::parse_edge_list(&text).unwrap();
        let rebuilt = BitGraph::from_edges(10, &parsed).unwrap();
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = petersen();
        let json = spec.to_json();
        let back = MetacirculantSpec::parse_json(&json).unwrap();
        assert_eq!(back, spec);
        assert!(MetacirculantSpec::parse_json("{\"m\":2}").is_err());
        assert!(MetacirculantSpec::parse_json("not json").is_err());
    }
}
