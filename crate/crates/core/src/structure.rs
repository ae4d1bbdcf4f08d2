//! Bipartiteness, the largest-eigenvalue bound `λ_N ≤ max|h|` with its equality
//! certificate, interlacing under weak vertex deletion, and general eigenvalue bounds.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::function::{HyperedgeFunction, VertexFunction};
use crate::hypergraph::Hypergraph;
use crate::spectral::{spectrum_vertex, zero_multiplicities};

/// Slack used when comparing eigenvalues against the bounds in this module.
pub const BOUND_SLACK: f64 = 1e-9;

/// Relative tolerance of the log-space consistency sweep for the equality certificate.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-9;

/// A split `V = V₁ ⊔ V₂` such that each hyperedge has all inputs (`C > 0`) on one
/// side and all outputs (`C < 0`) on the other. Either part may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitenessCertificate {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    /// For each hyperedge, true when its inputs are in `part1` and its outputs in `part2`.
    pub inputs_in_part1: Vec<bool>,
}

impl BipartitenessCertificate {
    /// `+1` for `part1`, `−1` for `part2`.
    pub fn side(&self, v: usize) -> f64 {
        if self.part1.binary_search(&v).is_ok() {
            1.0
        } else {
            -1.0
        }
    }

    /// Re-checks that `sign(C_{v,h}) · side(v)` is constant on every hyperedge and
    /// agrees with the recorded orientation.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let covered = self.part1.len() + self.part2.len() == h.num_vertices();
        covered
            && h.hyperedges().iter().enumerate().all(|(j, e)| {
                let want = if self.inputs_in_part1[j] { 1.0 } else { -1.0 };
                e.entries()
                    .iter()
                    .all(|&(v, c)| c.signum() * self.side(v) == want)
            })
    }
}

/// Parity 2-colouring of the sign constraints `side(v)·side(w) = sign(C_{v,h})·sign(C_{w,h})`.
///
/// Every component is anchored at its lowest vertex with side `+1`. Returns the
/// vertex sides and hyperedge orientations, or `None` on a contradiction.
pub(crate) fn sign_colouring(h: &Hypergraph) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = h.num_vertices();
    let mut side = vec![0.0; n];
    let mut orient = vec![0.0; h.num_hyperedges()];
    for anchor in 0..n {
        if side[anchor] != 0.0 {
            continue;
        }
        side[anchor] = 1.0;
        let mut queue = VecDeque::from([anchor]);
        while let Some(v) = queue.pop_front() {
            for &(e, c) in h.memberships(v) {
                if orient[e] != 0.0 {
                    continue;
                }
                orient[e] = side[v] * c.signum();
                for &(w, cw) in h.hyperedge(e).entries() {
                    let want = orient[e] * cw.signum();
                    if side[w] == 0.0 {
                        side[w] = want;
                        queue.push_back(w);
                    } else if side[w] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some((side, orient))
}

/// Finds a bipartition of a connected hypergraph; the first vertex always lands in `part1`.
pub fn bipartition(h: &Hypergraph) -> Result<Option<BipartitenessCertificate>> {
    require_connected(h)?;
    Ok(sign_colouring(h).map(|(side, orient)| certificate_from(&side, &orient)))
}

fn certificate_from(side: &[f64], orient: &[f64]) -> BipartitenessCertificate {
    let (part1, part2) = (0..side.len()).partition(|&v| side[v] > 0.0);
    BipartitenessCertificate {
        part1,
        part2,
        inputs_in_part1: orient.iter().map(|&o| o > 0.0).collect(),
    }
}

fn require_connected(h: &Hypergraph) -> Result<()> {
    match h.components().len() {
        1 => Ok(()),
        k => Err(Error::Disconnected(k)),
    }
}

/// A nowhere-zero `f` with `|C_{v,h}·f(v)| = g(h)` for every incidence.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityCertificate {
    pub f: VertexFunction,
    pub g: HyperedgeFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaMaxReport {
    /// `max_h |h|`, an upper bound for `λ_N`.
    pub bound: f64,
    pub bipartite: bool,
    pub uniform: bool,
    /// Whether `λ_N = max|h|`, decided structurally.
    pub attained: bool,
    /// Present exactly when `attained`; `f` is then an eigenfunction for `λ_N`.
    pub certificate: Option<EqualityCertificate>,
}

/// Decides whether `λ_N` reaches `max|h|` without computing the spectrum.
///
/// Equality needs a bipartition, constant `|h|`, and a solution of
/// `|f(v)| / |f(w)| = |C_{w,h}| / |C_{v,h}|` for `v, w ∈ h`. The latter is solved
/// for `log|f|` along a breadth-first spanning tree of the incidence graph and
/// then checked on every incidence. Signs come from the bipartition.
pub fn lambda_max_analysis(h: &Hypergraph) -> Result<LambdaMaxReport> {
    require_connected(h)?;
    let bound = h.max_cardinality() as f64;
    let uniform = h
        .hyperedges()
        .iter()
        .all(|e| e.cardinality() == h.max_cardinality());
    let colouring = sign_colouring(h);
    let bipartite = colouring.is_some();
    let certificate = match colouring {
        Some((side, _)) if uniform => magnitude_system(h).map(|(log_f, log_g)| {
            EqualityCertificate {
                f: VertexFunction::new(
                    log_f.iter().zip(&side).map(|(x, s)| s * x.exp()).collect(),
                ),
                g: HyperedgeFunction::new(log_g.iter().map(|y| y.exp()).collect()),
            }
        }),
        _ => None,
    };
    Ok(LambdaMaxReport {
        bound,
        bipartite,
        uniform,
        attained: certificate.is_some(),
        certificate,
    })
}

/// Solves `log|f(v)| + log|C_{v,h}| = log g(h)` with `log|f(v₀)| = 0`.
fn magnitude_system(h: &Hypergraph) -> Option<(Vec<f64>, Vec<f64>)> {
    let mut log_f = vec![f64::NAN; h.num_vertices()];
    let mut log_g = vec![f64::NAN; h.num_hyperedges()];
    log_f[0] = 0.0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(e, c) in h.memberships(v) {
            if !log_g[e].is_nan() {
                continue;
            }
            log_g[e] = log_f[v] + c.abs().ln();
            for &(w, cw) in h.hyperedge(e).entries() {
                if log_f[w].is_nan() {
                    log_f[w] = log_g[e] - cw.abs().ln();
                    queue.push_back(w);
                }
            }
        }
    }
    let consistent = h.hyperedges().iter().enumerate().all(|(e, edge)| {
        edge.entries()
            .iter()
            .all(|&(v, c)| (log_f[v] + c.abs().ln() - log_g[e]).abs() <= CERTIFICATE_TOLERANCE)
    });
    consistent.then_some((log_f, log_g))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport {
    pub original: Vec<f64>,
    pub reduced: Vec<f64>,
    /// Number of weak-deleted vertices, `r`.
    pub removed: usize,
    /// `λ_k(Γ) ≤ λ_k(Γ̂) ≤ λ_{k+r}(Γ)` for every `k ≤ N − r`, with slack [`BOUND_SLACK`].
    pub holds: bool,
    /// Largest amount by which either inequality is violated (≤ 0 when it holds strictly).
    pub worst_violation: f64,
}

pub fn interlacing_report<S: AsRef<str>>(h: &Hypergraph, removed: &[S]) -> Result<InterlacingReport> {
    let reduced = h.weak_delete_vertices(removed)?;
    let r = h.num_vertices() - reduced.num_vertices();
    let original = spectrum_vertex(h)?.eigenvalues().to_vec();
    let small = spectrum_vertex(&reduced)?.eigenvalues().to_vec();
    let worst_violation = small
        .iter()
        .enumerate()
        .map(|(k, &mu)| (original[k] - mu).max(mu - original[k + r]))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(InterlacingReport {
        holds: worst_violation <= BOUND_SLACK,
        original,
        reduced: small,
        removed: r,
        worst_violation,
    })
}

/// Upper bounds for `λ_{N−k}`, `k = 0, …, N−1` (entry `k` bounds `λ_{N−k}`).
///
/// With cardinalities sorted `|h_1| ≤ … ≤ |h_M|`, the bound is
/// `max_{i=0..k} (|h_{M−i}| − k + i)`. Positions below `h_1` count as cardinality 0.
pub fn eigenvalue_upper_bounds(h: &Hypergraph) -> Vec<f64> {
    let mut cards: Vec<usize> = h.hyperedges().iter().map(|e| e.cardinality()).collect();
    cards.sort_unstable();
    let m = cards.len() as isize;
    let card = |pos: isize| if pos >= 1 { cards[(pos - 1) as usize] as isize } else { 0 };
    (0..h.num_vertices() as isize)
        .map(|k| {
            (0..=k)
                .map(|i| card(m - i) - k + i)
                .max()
                .unwrap_or(0) as f64
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    /// Smallest nonzero eigenvalue.
    pub lambda_min: f64,
    /// `N / (N − m_V)`, equal to `N / (M − m_H)`.
    pub ratio: f64,
    pub lambda_max: f64,
    /// `λ_min ≤ ratio ≤ λ_N` within [`BOUND_SLACK`].
    pub ordered: bool,
    /// `λ_min = λ_N` within [`BOUND_SLACK`].
    pub equalities: bool,
    /// Whether one of the two inequalities is tight.
    pub some_inequality_tight: bool,
    pub m_v: usize,
    pub m_h: usize,
    /// `N (1 − 1/max|h|)`, an upper bound for `m_V`.
    pub m_v_bound: f64,
    /// `M − N / max|h|`, an upper bound for `m_H`.
    pub m_h_bound: f64,
}

pub fn min_nonzero_sandwich(h: &Hypergraph) -> Result<SandwichReport> {
    let spectrum = spectrum_vertex(h)?;
    let zeros = zero_multiplicities(h)?;
    let n = h.num_vertices() as f64;
    let lambda_min = spectrum
        .smallest_nonzero()
        .ok_or_else(|| Error::Numerical("no nonzero eigenvalue".into()))?;
    let lambda_max = spectrum.largest().unwrap_or(0.0);
    let ratio = n / (h.num_vertices() - zeros.m_v) as f64;
    let max_card = h.max_cardinality() as f64;
    Ok(SandwichReport {
        lambda_min,
        ratio,
        lambda_max,
        ordered: lambda_min <= ratio + BOUND_SLACK && ratio <= lambda_max + BOUND_SLACK,
        equalities: (lambda_max - lambda_min).abs() <= BOUND_SLACK,
        some_inequality_tight: (ratio - lambda_min).abs() <= BOUND_SLACK
            || (lambda_max - ratio).abs() <= BOUND_SLACK,
        m_v: zeros.m_v,
        m_h: zeros.m_h,
        m_v_bound: n * (1.0 - 1.0 / max_card),
        m_h_bound: h.num_hyperedges() as f64 - n / max_card,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::HypergraphSpec;
    use crate::operators::apply_l;

    fn six_vertex() -> Hypergraph {
        HypergraphSpec::new(["v1", "v2", "v3", "v4", "v5", "v6"])
            .hyperedge("h1", [("v1", 2.0), ("v2", 3.0), ("v4", -7.0), ("v5", -1.0)])
            .hyperedge("h2", [("v2", 1.0), ("v3", 2.0), ("v5", -1.0), ("v6", -4.0)])
            .build()
            .unwrap()
    }

    fn two_vertex() -> Hypergraph {
        HypergraphSpec::new(["v1", "v2"])
            .hyperedge("h1", [("v1", 1.0), ("v2", 1.0)])
            .hyperedge("h2", [("v1", 1.0), ("v2", 2.0)])
            .build()
            .unwrap()
    }

    fn three_vertex() -> Hypergraph {
        HypergraphSpec::new(["v1", "v2", "v3"])
            .hyperedge("h1", [("v1", 1.0), ("v2", 1.0)])
            .hyperedge("h2", [("v2", 1.0), ("v3", 1.0)])
            .hyperedge("h3", [("v1", 1.0), ("v2", 1.0), ("v3", 1.0)])
            .build()
            .unwrap()
    }

    fn edge() -> Hypergraph {
        HypergraphSpec::new(["a", "b"])
            .hyperedge("e", [("a", 1.0), ("b", -1.0)])
            .build()
            .unwrap()
    }

    #[test]
    fn six_vertex_bipartition() {
        let h = six_vertex();
        let cert = bipartition(&h).unwrap().unwrap();
        assert_eq!(cert.part1, vec![0, 1, 2]);
        assert_eq!(cert.part2, vec![3, 4, 5]);
        assert!(cert.verify(&h));
    }

    #[test]
    fn edge_is_bipartite() {
        let cert = bipartition(&edge()).unwrap().unwrap();
        assert_eq!((cert.part1, cert.part2), (vec![0], vec![1]));
    }

    #[test]
    fn all_positive_hypergraph_is_bipartite_with_empty_second_part() {
        let cert = bipartition(&three_vertex()).unwrap().unwrap();
        assert_eq!(cert.part1, vec![0, 1, 2]);
        assert!(cert.part2.is_empty());
    }

    #[test]
    fn odd_signed_cycle_is_not_bipartite() {
        let h = HypergraphSpec::new(["a", "b", "c"])
            .hyperedge("e1", [("a", 1.0), ("b", -1.0)])
            .hyperedge("e2", [("b", 1.0), ("c", -1.0)])
            .hyperedge("e3", [("c", 1.0), ("a", -1.0)])
            .build()
            .unwrap();
        assert_eq!(bipartition(&h).unwrap(), None);
    }

    #[test]
    fn disconnected_is_rejected() {
        let h = HypergraphSpec::new(["a", "b"])
            .hyperedge("e1", [("a", 1.0)])
            .hyperedge("e2", [("b", 1.0)])
            .build()
            .unwrap();
        assert_eq!(bipartition(&h), Err(Error::Disconnected(2)));
        assert_eq!(lambda_max_analysis(&h), Err(Error::Disconnected(2)));
    }

    #[test]
    fn two_vertex_equality_not_attained() {
        let r = lambda_max_analysis(&two_vertex()).unwrap();
        assert_eq!(r.bound, 2.0);
        assert!(r.bipartite && r.uniform);
        assert!(!r.attained);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn edge_equality_attained() {
        let h = edge();
        let r = lambda_max_analysis(&h).unwrap();
        assert!(r.attained);
        let cert = r.certificate.unwrap();
        let lf = apply_l(&h, &cert.f).unwrap();
        assert!((lf.values() - cert.f.values() * 2.0).amax() < 1e-12);
    }

    #[test]
    fn weighted_certificate() {
        // |C| varies but the magnitude system is solvable: f = (1, 1/2, 1/2·…)
        let h = HypergraphSpec::new(["a", "b", "c"])
            .hyperedge("e1", [("a", 1.0), ("b", -2.0)])
            .hyperedge("e2", [("b", 3.0), ("c", -6.0)])
            .build()
            .unwrap();
        let r = lambda_max_analysis(&h).unwrap();
        assert!(r.attained);
        let cert = r.certificate.unwrap();
        assert!((cert.f[1] + 0.5).abs() < 1e-12);
        assert!((cert.f[2] - 0.25).abs() < 1e-12);
        let lf = apply_l(&h, &cert.f).unwrap();
        assert!((lf.values() - cert.f.values() * 2.0).amax() < 1e-12);
        let top = spectrum_vertex(&h).unwrap().largest().unwrap();
        assert!((top - 2.0).abs() < 1e-9);
    }

    #[test]
    fn interlacing_three_vertex() {
        let r = interlacing_report(&three_vertex(), &["v3"]).unwrap();
        assert_eq!(r.removed, 1);
        assert!(r.holds);
        let none = interlacing_report(&three_vertex(), &[] as &[&str]).unwrap();
        assert!(none.holds);
        assert_eq!(none.original, none.reduced);
    }

    #[test]
    fn upper_bounds_three_vertex() {
        let b = eigenvalue_upper_bounds(&three_vertex());
        assert_eq!(b, vec![3.0, 2.0, 2.0]);
    }

    #[test]
    fn upper_bounds_uniform() {
        let h = HypergraphSpec::new(["a", "b", "c", "d"])
            .hyperedge("e1", [("a", 1.0), ("b", 1.0), ("c", 1.0)])
            .hyperedge("e2", [("b", 1.0), ("c", 1.0), ("d", 1.0)])
            .build()
            .unwrap();
        assert!(eigenvalue_upper_bounds(&h).iter().all(|&b| b <= 3.0));
    }

    #[test]
    fn sandwich_examples() {
        let s = min_nonzero_sandwich(&two_vertex()).unwrap();
        assert!((s.ratio - 1.0).abs() < 1e-15);
        assert!(s.ordered && !s.equalities);
        assert!((s.lambda_min - (1.0 - 3.0 / 10f64.sqrt())).abs() < 1e-12);

        let one = HypergraphSpec::new(["v"])
            .hyperedge("h", [("v", 1.0)])
            .build()
            .unwrap();
        let s = min_nonzero_sandwich(&one).unwrap();
        assert!((s.lambda_min - 1.0).abs() < 1e-12);
        assert!((s.ratio - 1.0).abs() < 1e-12);
        assert!(s.equalities && s.some_inequality_tight);
    }
}
