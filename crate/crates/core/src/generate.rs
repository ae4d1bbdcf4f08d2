//! Seeded random instances, with optional planted structure.
//!
//! Vertices are named `v1, v2, …` and hyperedges `h1, h2, …` in creation order.
//! Every generator returns a valid hypergraph: uncovered vertices are attached to
//! an existing hyperedge before building.

use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::symmetry::Automorphism;

/// The generator used everywhere a seed is accepted.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Edges = Vec<Vec<(usize, f64)>>;

#[derive(Debug, Clone, PartialEq)]
pub struct RandomConfig {
    pub vertices: RangeInclusive<usize>,
    pub hyperedges: RangeInclusive<usize>,
    /// Clipped to `1..=N` per instance.
    pub cardinality: RangeInclusive<usize>,
    /// Coefficients are uniform on this interval, with exact zeros redrawn.
    pub coefficients: RangeInclusive<f64>,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            vertices: 1..=12,
            hyperedges: 1..=12,
            cardinality: 1..=12,
            coefficients: -3.0..=3.0,
        }
    }
}

fn coefficient<R: Rng>(rng: &mut R, range: &RangeInclusive<f64>) -> f64 {
    assert!(
        range.start() < range.end() || *range.start() != 0.0,
        "coefficient range must contain a nonzero value"
    );
    loop {
        let c = rng.random_range(range.clone());
        if c != 0.0 {
            return c;
        }
    }
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn assemble(n: usize, edges: Edges) -> Result<Hypergraph> {
    let named = names("h", edges.len()).into_iter().zip(edges).collect();
    Hypergraph::from_indexed(names("v", n), named)
}

fn indexed(h: &Hypergraph) -> Edges {
    h.hyperedges().iter().map(|e| e.entries().to_vec()).collect()
}

/// Attaches every vertex of `0..n` that lies in no hyperedge to a random one.
fn cover<R: Rng>(rng: &mut R, n: usize, edges: &mut Edges, mut draw: impl FnMut(&mut R) -> f64) {
    let mut covered = vec![false; n];
    edges.iter().flatten().for_each(|&(v, _)| covered[v] = true);
    for v in (0..n).filter(|&v| !covered[v]) {
        let e = rng.random_range(0..edges.len());
        let c = draw(rng);
        edges[e].push((v, c));
    }
}

pub fn random_hypergraph<R: Rng>(rng: &mut R, config: &RandomConfig) -> Hypergraph {
    let n = rng.random_range(config.vertices.clone()).max(1);
    let m = rng.random_range(config.hyperedges.clone()).max(1);
    let lo = (*config.cardinality.start()).clamp(1, n);
    let hi = (*config.cardinality.end()).clamp(lo, n);
    let range = config.coefficients.clone();
    let mut edges: Edges = (0..m)
        .map(|_| {
            let k = rng.random_range(lo..=hi);
            sample(rng, n, k)
                .into_iter()
                .map(|v| (v, coefficient(rng, &range)))
                .collect()
        })
        .collect();
    cover(rng, n, &mut edges, |r| coefficient(r, &range));
    assemble(n, edges).expect("generated instance is valid")
}

/// Adds a vertex that is a twin (or anti-twin) of a random vertex `i`.
/// Returns the new hypergraph and the pair `(i, new)`.
pub fn plant_twin<R: Rng>(rng: &mut R, base: &Hypergraph, anti: bool) -> (Hypergraph, usize, usize) {
    let n = base.num_vertices();
    let i = rng.random_range(0..n);
    let sign = if anti { -1.0 } else { 1.0 };
    let mut edges = indexed(base);
    for e in &mut edges {
        if let Some(&(_, c)) = e.iter().find(|&&(v, _)| v == i) {
            e.push((n, sign * c));
        }
    }
    (assemble(n + 1, edges).expect("twin keeps validity"), i, n)
}

/// Adds a vertex that duplicates a random vertex `i`: every hyperedge through `i`
/// is copied with `i` replaced by the new vertex, each copy negated with
/// probability one half. Returns the hypergraph and `(i, new)`.
pub fn plant_duplicate<R: Rng>(rng: &mut R, base: &Hypergraph) -> (Hypergraph, usize, usize) {
    let n = base.num_vertices();
    let i = rng.random_range(0..n);
    let mut edges = indexed(base);
    let copies: Edges = edges
        .iter()
        .filter(|e| e.iter().any(|&(v, _)| v == i))
        .map(|e| {
            let flip = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
            e.iter()
                .map(|&(v, c)| (if v == i { n } else { v }, flip * c))
                .collect()
        })
        .collect();
    edges.extend(copies);
    (assemble(n + 1, edges).expect("duplicate keeps validity"), i, n)
}

/// A connected bipartite `c`-uniform hypergraph with `|C| ≡ 1` on `n ≥ c` vertices
/// and at least `m` hyperedges.
pub fn bipartite_uniform<R: Rng>(rng: &mut R, n: usize, m: usize, c: usize) -> Hypergraph {
    assert!(c >= 1 && n >= c, "need 1 ≤ c ≤ n");
    let side: Vec<f64> = (0..n)
        .map(|v| if v == 0 || rng.random_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let mut covered = vec![false; n];
    let mut edges: Edges = Vec::new();
    while edges.len() < m.max(1) || covered.iter().any(|&x| !x) {
        let mut members: Vec<usize> = Vec::with_capacity(c);
        if !edges.is_empty() {
            let inside: Vec<usize> = (0..n).filter(|&v| covered[v]).collect();
            members.push(inside[rng.random_range(0..inside.len())]);
        }
        let mut fresh: Vec<usize> = (0..n).filter(|&v| !covered[v] && !members.contains(&v)).collect();
        while members.len() < c && !fresh.is_empty() {
            members.push(fresh.swap_remove(rng.random_range(0..fresh.len())));
        }
        while members.len() < c {
            let v = rng.random_range(0..n);
            if !members.contains(&v) {
                members.push(v);
            }
        }
        let orientation = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        members.iter().for_each(|&v| covered[v] = true);
        edges.push(members.into_iter().map(|v| (v, orientation * side[v])).collect());
    }
    assemble(n, edges).expect("bipartite instance is valid")
}

/// A hypergraph with an involution `τ` whose swapped motif is duplicated.
///
/// Vertices `0..n0` are fixed, `n0..n0+n1` form `V′` and the next `n1` form `V″`.
/// `V′` is chained by hyperedges so it is connected; each hyperedge meeting `V′`
/// is mirrored onto `V″` through `C_{τ(v),τ(h)} = s(v)·C_{v,h}` with random
/// `s = ±1` on `V′` and `s = +1` on `V₀`. Hyperedges inside `V₀` are either fixed
/// or come in swapped identical pairs.
pub fn planted_involution<R: Rng>(
    rng: &mut R,
    n0: usize,
    n1: usize,
    extra: usize,
) -> (Hypergraph, Automorphism) {
    assert!(n1 >= 1, "V′ must be nonempty");
    let coeff = -3.0..=3.0;
    let n = n0 + 2 * n1;
    let signs_p: Vec<f64> = (0..n1)
        .map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let draw_subset = |rng: &mut R, pool: &[usize], min: usize| -> Vec<usize> {
        let k = rng.random_range(min.min(pool.len())..=pool.len().min(4));
        sample(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect()
    };
    let fixed: Vec<usize> = (0..n0).collect();

    // hyperedges meeting V′; a chain keeps V′ connected
    let mut motif: Edges = (0..n1)
        .map(|k| {
            let mut members = vec![n0 + k];
            if k > 0 {
                members.push(n0 + k - 1);
            }
            if n0 > 0 && rng.random_bool(0.5) {
                members.extend(draw_subset(rng, &fixed, 1));
            }
            members.into_iter().map(|v| (v, coefficient(rng, &coeff))).collect()
        })
        .collect();
    for _ in 0..extra {
        let primary: Vec<usize> = (n0..n0 + n1).collect();
        let mut members = draw_subset(rng, &primary, 1);
        if n0 > 0 {
            members.extend(draw_subset(rng, &fixed, 0));
        }
        motif.push(members.into_iter().map(|v| (v, coefficient(rng, &coeff))).collect());
    }
    let mut inner: Edges = Vec::new();
    let mut inner_pairs: Vec<(usize, usize)> = Vec::new();
    if n0 > 0 {
        for _ in 0..rng.random_range(0..=extra.max(1)) {
            let e: Vec<(usize, f64)> = draw_subset(rng, &fixed, 1)
                .into_iter()
                .map(|v| (v, coefficient(rng, &coeff)))
                .collect();
            if rng.random_bool(0.3) {
                inner_pairs.push((inner.len(), inner.len() + 1));
                inner.push(e.clone());
            }
            inner.push(e);
        }
    }
    // fixed vertices still uncovered join a motif hyperedge (and hence its mirror)
    let mut covered = vec![false; n];
    motif.iter().chain(&inner).flatten().for_each(|&(v, _)| covered[v] = true);
    for v in (0..n0).filter(|&v| !covered[v]) {
        let e = rng.random_range(0..motif.len());
        let c = coefficient(rng, &coeff);
        motif[e].push((v, c));
    }

    let tau_v = |v: usize| if v < n0 { v } else if v < n0 + n1 { v + n1 } else { v - n1 };
    let sign = |v: usize| if v < n0 { 1.0 } else { signs_p[(v - n0) % n1] };
    let mirrors: Edges = motif
        .iter()
        .map(|e| e.iter().map(|&(v, c)| (tau_v(v), sign(v) * c)).collect())
        .collect();
    let (a, b) = (motif.len(), inner.len());
    let mut hyperedge_perm: Vec<usize> = Vec::with_capacity(2 * a + b);
    hyperedge_perm.extend((0..a).map(|j| a + b + j));
    let mut inner_perm: Vec<usize> = (0..b).collect();
    for &(x, y) in &inner_pairs {
        inner_perm.swap(x, y);
    }
    hyperedge_perm.extend(inner_perm.into_iter().map(|j| a + j));
    hyperedge_perm.extend(0..a);

    let edges: Edges = motif.into_iter().chain(inner).chain(mirrors).collect();
    let h = assemble(n, edges).expect("involution instance is valid");
    let tau = Automorphism::new(
        (0..n).map(tau_v).collect(),
        hyperedge_perm,
        (0..n).map(sign).collect(),
    );
    (h, tau)
}

/// Edges `(a, b)` of a random connected graph on `0..n`: a random spanning tree
/// plus each other pair with probability `p`.
fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// An oriented graph edge: `+1` at one end and `−1` at the other, at random.
fn oriented<R: Rng>(rng: &mut R, a: usize, b: usize) -> Vec<(usize, f64)> {
    let o = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    vec![(a, o), (b, -o)]
}

fn nonempty_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let k = rng.random_range(1..=n);
    let mut s = sample(rng, n, k).into_vec();
    s.sort_unstable();
    s
}

/// A graph in which a vertex `v′` and its copy `v″` have the same neighbours in a
/// random connected graph on `n0 ≥ 1` vertices and are not adjacent.
/// Returns the graph, the swap `τ` and `(v′, v″)`.
pub fn duplicated_vertex_graph<R: Rng>(rng: &mut R, n0: usize) -> (Hypergraph, Automorphism, usize, usize) {
    let (vp, vpp) = (n0, n0 + 1);
    let mut edges: Edges = random_graph(rng, n0, 0.3)
        .into_iter()
        .map(|(a, b)| oriented(rng, a, b))
        .collect();
    let base = edges.len();
    let links: Edges = nonempty_subset(rng, n0)
        .into_iter()
        .map(|w| oriented(rng, vp, w))
        .collect();
    let mirrored: Edges = links
        .iter()
        .map(|e| e.iter().map(|&(v, c)| (if v == vp { vpp } else { v }, c)).collect())
        .collect();
    let k = links.len();
    edges.extend(links);
    edges.extend(mirrored);
    let h = assemble(n0 + 2, edges).expect("graph is valid");
    let mut vperm: Vec<usize> = (0..n0 + 2).collect();
    vperm.swap(vp, vpp);
    let mut hperm: Vec<usize> = (0..base + 2 * k).collect();
    for j in 0..k {
        hperm.swap(base + j, base + k + j);
    }
    let tau = Automorphism::new(vperm, hperm, vec![1.0; n0 + 2]);
    (h, tau, vp, vpp)
}

/// Like [`duplicated_vertex_graph`], but `v′` and `v″` are also joined by an edge
/// and every edge has `A = +1` (coefficients `+1` and `−1`), so `e_{v′} − e_{v″}`
/// is an eigenfunction for `1 + 1/deg v′`.
pub fn adjacent_pair_graph<R: Rng>(rng: &mut R, n0: usize) -> (Hypergraph, usize, usize) {
    let (vp, vpp) = (n0, n0 + 1);
    let mut edges: Edges = random_graph(rng, n0, 0.3)
        .into_iter()
        .map(|(a, b)| oriented(rng, a, b))
        .collect();
    for w in nonempty_subset(rng, n0) {
        edges.push(oriented(rng, vp, w));
        edges.push(oriented(rng, vpp, w));
    }
    edges.push(oriented(rng, vp, vpp));
    (assemble(n0 + 2, edges).expect("graph is valid"), vp, vpp)
}

/// A graph with an edge `(v₁′, v₂′)` and a disjoint copy `(v₁″, v₂″)`; each copy
/// endpoint has the same neighbours in a random connected graph on `n0 ≥ 1`
/// vertices as its original. Returns the graph, `τ` and `[v₁′, v₂′]`.
pub fn duplicated_edge_graph<R: Rng>(rng: &mut R, n0: usize) -> (Hypergraph, Automorphism, [usize; 2]) {
    let primes = [n0, n0 + 1];
    let image = |v: usize| if v >= n0 { v + 2 } else { v };
    let mut edges: Edges = random_graph(rng, n0, 0.3)
        .into_iter()
        .map(|(a, b)| oriented(rng, a, b))
        .collect();
    let base = edges.len();
    let mut motif: Edges = vec![oriented(rng, primes[0], primes[1])];
    // every fixed vertex must be reachable, so at least one link is drawn
    let mut links = Vec::new();
    while links.is_empty() {
        for &p in &primes {
            for w in 0..n0 {
                if rng.random_bool(0.4) {
                    links.push((p, w));
                }
            }
        }
    }
    motif.extend(links.into_iter().map(|(p, w)| oriented(rng, p, w)));
    let mirrored: Edges = motif
        .iter()
        .map(|e| e.iter().map(|&(v, c)| (image(v), c)).collect())
        .collect();
    let k = motif.len();
    edges.extend(motif);
    edges.extend(mirrored);
    let n = n0 + 4;
    let h = assemble(n, edges).expect("graph is valid");
    let vperm: Vec<usize> = (0..n)
        .map(|v| if v < n0 { v } else if v < n0 + 2 { v + 2 } else { v - 2 })
        .collect();
    let mut hperm: Vec<usize> = (0..base + 2 * k).collect();
    for j in 0..k {
        hperm.swap(base + j, base + k + j);
    }
    (h, Automorphism::new(vperm, hperm, vec![1.0; n]), primes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{involution_split, verify_automorphism};

    #[test]
    fn random_instances_respect_config() {
        let mut rng = seeded(1);
        let cfg = RandomConfig::default();
        for _ in 0..50 {
            let h = random_hypergraph(&mut rng, &cfg);
            assert!((1..=12).contains(&h.num_vertices()));
            assert!((1..=12).contains(&h.num_hyperedges()));
            for e in h.hyperedges() {
                assert!(e.entries().iter().all(|&(_, c)| c != 0.0 && c.abs() <= 3.0));
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let cfg = RandomConfig::default();
        let a = random_hypergraph(&mut seeded(7), &cfg);
        let b = random_hypergraph(&mut seeded(7), &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn planted_involutions_verify() {
        let mut rng = seeded(3);
        for n0 in 0..4 {
            for n1 in 1..4 {
                let (h, tau) = planted_involution(&mut rng, n0, n1, 2);
                assert!(verify_automorphism(&h, &tau).unwrap().holds);
                let split = involution_split(&h, &tau).unwrap();
                assert_eq!(split.fixed.len(), n0);
                assert!(split.primary_connected);
            }
        }
    }

    #[test]
    fn graph_generators_verify() {
        let mut rng = seeded(5);
        for n0 in 1..6 {
            let (h, tau, _, _) = duplicated_vertex_graph(&mut rng, n0);
            assert!(verify_automorphism(&h, &tau).unwrap().holds);
            let (h, tau, _) = duplicated_edge_graph(&mut rng, n0);
            assert!(verify_automorphism(&h, &tau).unwrap().holds);
            let (h, _, _) = adjacent_pair_graph(&mut rng, n0);
            assert!(h.is_connected());
        }
    }

    #[test]
    fn bipartite_generator() {
        let mut rng = seeded(11);
        let h = bipartite_uniform(&mut rng, 7, 5, 3);
        assert!(h.is_connected());
        assert!(h.hyperedges().iter().all(|e| e.cardinality() == 3));
    }
}
