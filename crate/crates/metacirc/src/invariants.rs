//! Structural graph invariants: eccentricities, girth, clique number, and
//! automorphism group order. Everything here is exact; the automorphism
//! search carries an explicit node budget and reports exhaustion instead of
//! guessing.

use crate::bits::BitRow;
use crate::graph::BitGraph;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Diameter {
    Finite(u32),
    Disconnected,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Girth {
    Finite(u32),
    /// No cycle at all.
    Acyclic,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum AutOutcome {
    Exact(u128),
    /// The backtracking search hit its node budget before finishing.
    BudgetExhausted { nodes: u64 },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum AutMode {
    Skip,
    Budgeted(u64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphInvariants {
    /// Common degree when the graph is regular.
    pub valence: Option<u32>,
    pub diameter: Diameter,
    pub girth: Girth,
    pub clique_number: u32,
    pub automorphism_order: Option<AutOutcome>,
    /// No edge inside any layer; only known when layer shape was supplied.
    pub multipartite: Option<bool>,
}

const UNSEEN: u32 = u32::MAX;

fn bfs_dists(g: &BitGraph, src: usize) -> Vec<u32> {
    let n = g.vertex_count();
    let mut dist = vec![UNSEEN; n];
    let mut queue = std::collections::VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for v in g.row(u).iter_ones() {
            if dist[v] == UNSEEN {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn diameter(g: &BitGraph) -> Diameter {
    let n = g.vertex_count();
    assert!(n > 0, "diameter of the empty graph is undefined");
    let mut max = 0;
    for src in 0..n {
        let dist = bfs_dists(g, src);
        for &d in &dist {
            if d == UNSEEN {
                return Diameter::Disconnected;
            }
            max = max.max(d);
        }
    }
    Diameter::Finite(max)
}

/// Exact girth: for each root, run BFS and close cycles on non-tree edges;
/// the minimum over all roots is the girth.
pub fn girth(g: &BitGraph) -> Girth {
    let n = g.vertex_count();
    let mut best = u32::MAX;
    for src in 0..n {
        let mut dist = vec![UNSEEN; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            if dist[u] * 2 >= best {
                break;
            }
            for v in g.row(u).iter_ones() {
                if dist[v] == UNSEEN {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if v != parent[u] {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if best == u32::MAX {
        Girth::Acyclic
    } else {
        Girth::Finite(best)
    }
}

/// Greedy coloring of the candidate set. Returns (vertex, bound) pairs with
/// bounds non-decreasing; bound is the color index, an upper bound on the
/// clique size inside the candidates processed so far.
fn color_order(g: &BitGraph, p: &BitRow) -> Vec<(usize, u32)> {
    let mut order = Vec::new();
    let mut rest = p.clone();
    let mut color = 0u32;
    while !rest.is_zero() {
        color += 1;
        let mut available = rest.clone();
        loop {
            let Some(v) = available.iter_ones().next() else { break };
            order.push((v, color));
            rest.set(v, false);
            available.set(v, false);
            // v's neighbors cannot share its color class.
            for u in g.row(v).iter_ones() {
                available.set(u, false);
            }
        }
    }
    order
}

fn expand_clique(g: &BitGraph, p: &BitRow, size: u32, best: &mut u32) {
    if p.is_zero() {
        *best = (*best).max(size);
        return;
    }
    let order = color_order(g, p);
    let mut p = p.clone();
    for &(v, bound) in order.iter().rev() {
        if size + bound <= *best {
            return; // earlier entries have smaller bounds
        }
        let mut next = p.clone();
        next.and_assign(g.row(v));
        expand_clique(g, &next, size + 1, best);
        p.set(v, false);
    }
}

pub fn clique_number(g: &BitGraph) -> u32 {
    let n = g.vertex_count();
    assert!(n > 0, "clique number of the empty graph is undefined");
    let mut all = BitRow::zeros(n);
    for v in 0..n {
        all.set(v, true);
    }
    let mut best = 0;
    expand_clique(g, &all, 0, &mut best);
    best
}

/// Equitable color refinement: colors stabilize under "my color + multiset
/// of neighbor colors". Automorphisms preserve the resulting classes.
fn refine_colors(g: &BitGraph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    loop {
        let mut signatures: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nbr: Vec<u32> = g.row(v).iter_ones().map(|u| colors[u]).collect();
            nbr.sort_unstable();
            signatures.push((colors[v], nbr));
        }
        let mut sorted = signatures.clone();
        sorted.sort();
        sorted.dedup();
        let new_count = sorted.len();
        let old_count = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
        let next: Vec<u32> = signatures
            .iter()
            .map(|sig| sorted.binary_search(sig).expect("own signature present") as u32)
            .collect();
        if new_count == old_count {
            return next;
        }
        colors = next;
    }
}

struct AutSearch<'a> {
    g: &'a BitGraph,
    colors: Vec<u32>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    count: u128,
    exhausted: bool,
}

impl AutSearch<'_> {
    fn recurse(&mut self, depth: usize) {
        if self.exhausted {
            return;
        }
        if depth == self.order.len() {
            self.count += 1;
            return;
        }
        let v = self.order[depth];
        let n = self.g.vertex_count();
        for w in 0..n {
            if self.used[w] || self.colors[w] != self.colors[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            let consistent = (0..depth).all(|s| {
                self.g.has_edge(self.order[s], v) == self.g.has_edge(self.image[s], w)
            });
            if !consistent {
                continue;
            }
            self.image[depth] = w;
            self.used[w] = true;
            self.recurse(depth + 1);
            self.used[w] = false;
        }
    }
}

/// Counts automorphisms by backtracking over vertex images, pruned by the
/// refined color classes and adjacency consistency with the mapped prefix.
/// Exact only when the search completes within the budget.
pub fn automorphism_order(g: &BitGraph, node_budget: u64) -> AutOutcome {
    let n = g.vertex_count();
    if n == 0 {
        return AutOutcome::Exact(1);
    }
    let colors = refine_colors(g);
    // Map vertices in an order that keeps each new vertex attached to the
    // already-mapped prefix where possible: more constraints, earlier cuts.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut class_size = std::collections::HashMap::new();
    for &c in &colors {
        *class_size.entry(c).or_insert(0u32) += 1;
    }
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let attached = order.iter().filter(|&&u| g.has_edge(u, v)).count();
                (attached, std::cmp::Reverse(class_size[&colors[v]]), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    let mut search = AutSearch {
        g,
        colors,
        order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        budget: node_budget,
        count: 0,
        exhausted: false,
    };
    search.recurse(0);
    if search.exhausted {
        AutOutcome::BudgetExhausted { nodes: search.nodes }
    } else {
        AutOutcome::Exact(search.count)
    }
}

/// One-stop invariant report. `layers = Some((m, n))` additionally checks
/// whether any edge stays inside a layer of the Z_m x Z_n vertex grid.
pub fn graph_invariants(g: &BitGraph, layers: Option<(u32, u32)>, aut: AutMode) -> GraphInvariants {
    let multipartite = layers.map(|(m, n)| {
        debug_assert_eq!(g.vertex_count(), (m * n) as usize);
        g.edges().iter().all(|&(u, v)| (u - 1) / n as usize != (v - 1) / n as usize)
    });
    GraphInvariants {
        valence: g.is_regular(),
        diameter: diameter(g),
        girth: girth(g),
        clique_number: clique_number(g),
        automorphism_order: match aut {
            AutMode::Skip => None,
            AutMode::Budgeted(b) => Some(automorphism_order(g, b)),
        },
        multipartite,
    }
}
