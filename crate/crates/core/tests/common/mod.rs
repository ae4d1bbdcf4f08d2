//! Oracles and instance strategies shared by the integration tests. Nothing here
//! calls into the crate's numerics.
#![allow(dead_code)]

use hyperlap::generate::{random_hypergraph, seeded, RandomConfig};
use hyperlap::Hypergraph;
use proptest::prelude::*;

/// Symmetric form `S_ij = Σ_h C_ih C_jh / √(deg_i deg_j)` straight from the
/// coefficients, off the diagonal; `S_ii = 1`.
pub fn symmetric_laplacian(h: &Hypergraph) -> Vec<Vec<f64>> {
    let n = h.num_vertices();
    let c = coefficients(h);
    let deg: Vec<f64> = c.iter().map(|row| row.iter().map(|x| x * x).sum()).collect();
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            s[i][j] = if i == j {
                1.0
            } else {
                let dot: f64 = c[i].iter().zip(&c[j]).map(|(a, b)| a * b).sum();
                dot / (deg[i] * deg[j]).sqrt()
            };
        }
    }
    s
}

/// `Lᴴ_{hk} = Σ_v C_vh C_vk / deg v`.
pub fn hyperedge_laplacian(h: &Hypergraph) -> Vec<Vec<f64>> {
    let c = coefficients(h);
    let m = h.num_hyperedges();
    let deg: Vec<f64> = c.iter().map(|row| row.iter().map(|x| x * x).sum()).collect();
    let mut out = vec![vec![0.0; m]; m];
    for a in 0..m {
        for b in 0..m {
            out[a][b] = (0..c.len()).map(|v| c[v][a] * c[v][b] / deg[v]).sum();
        }
    }
    out
}

/// Dense `C_{v,h}` rows.
pub fn coefficients(h: &Hypergraph) -> Vec<Vec<f64>> {
    (0..h.num_vertices())
        .map(|v| (0..h.num_hyperedges()).map(|e| h.coefficient(v, e)).collect())
        .collect()
}

/// Cyclic Jacobi rotations until the off-diagonal mass vanishes; sorted eigenvalues.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Exact rank of an integer matrix by cross-multiplying elimination, rows kept
/// small by dividing out their gcd.
pub fn exact_rank(rows: &[Vec<i64>]) -> usize {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in 0..m {
        let Some(pivot) = (rank..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, pivot);
        for r in rank + 1..n {
            let (p, q) = (a[rank][col], a[r][col]);
            for k in 0..m {
                a[r][k] = p * a[r][k] - q * a[rank][k];
            }
            let g = a[r].iter().fold(0, |g, &x| gcd(g, x));
            if g > 1 {
                a[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// All `2^N` side assignments; some assignment makes every hyperedge's
/// `sign(C)·side` constant.
pub fn brute_force_bipartite(h: &Hypergraph) -> Vec<Vec<bool>> {
    let n = h.num_vertices();
    assert!(n <= 16);
    (0u32..1 << n)
        .map(|mask| (0..n).map(|v| mask >> v & 1 == 1).collect::<Vec<bool>>())
        .filter(|side| {
            h.hyperedges().iter().all(|e| {
                let signs: Vec<bool> = e
                    .entries()
                    .iter()
                    .map(|&(v, c)| (c > 0.0) == side[v])
                    .collect();
                signs.iter().all(|&s| s == signs[0])
            })
        })
        .collect()
}

/// Small instances with integer coefficients in `−3..=3 ∖ {0}`.
pub fn integer_instance() -> impl Strategy<Value = (Hypergraph, Vec<Vec<i64>>)> {
    (1usize..=7, 1usize..=7).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), m).prop_map(move |mut cols| {
            for (j, col) in cols.iter_mut().enumerate() {
                if col.iter().all(|&x| x == 0) {
                    col[j % n] = 1;
                }
            }
            for v in 0..n {
                if cols.iter().all(|col| col[v] == 0) {
                    cols[v % m][v] = -2;
                }
            }
            let edges = cols
                .iter()
                .enumerate()
                .map(|(j, col)| {
                    let entries = (0..n)
                        .filter(|&v| col[v] != 0)
                        .map(|v| (v, col[v] as f64))
                        .collect();
                    (format!("h{}", j + 1), entries)
                })
                .collect();
            let names = (1..=n).map(|i| format!("v{i}")).collect();
            let rows = (0..n).map(|v| cols.iter().map(|c| c[v]).collect()).collect();
            (Hypergraph::from_indexed(names, edges).unwrap(), rows)
        })
    })
}

/// Seeded instances from the crate generator with `N, M ≤ 10`.
pub fn random_instance() -> impl Strategy<Value = Hypergraph> {
    any::<u64>().prop_map(|seed| {
        let config = RandomConfig {
            vertices: 1..=10,
            hyperedges: 1..=10,
            cardinality: 1..=5,
            coefficients: -3.0..=3.0,
        };
        random_hypergraph(&mut seeded(seed), &config)
    })
}

pub fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
