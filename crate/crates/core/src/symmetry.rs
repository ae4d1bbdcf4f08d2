//! Vertex symmetries and the eigenpairs they force.
//!
//! Pairwise relations (twins, duplicates and their negatives) are found by scanning
//! coefficient and adjacency rows. General symmetries are automorphisms with a sign
//! map; they are verified, never searched for. An involution splits the spectrum
//! into parts symmetric and antisymmetric under `τ_*`, and when the swapped motif
//! is duplicated the symmetric part is the spectrum of a smaller quotient hypergraph.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::hypergraph::Hypergraph;
use crate::linalg;
use crate::operators::{apply_l_unchecked, build_operators};
use crate::spectral::spectrum_vertex;

/// Absolute tolerance for coefficient comparisons.
pub const COEFFICIENT_TOLERANCE: f64 = 1e-12;
/// Relative tolerance for adjacency and degree comparisons (scaled by `1 + deg`).
pub const ADJACENCY_TOLERANCE: f64 = 1e-12;
/// Residual bound asserted for localized eigenpairs and commutation checks.
pub const LOCALIZED_RESIDUAL: f64 = 1e-10;
/// Residual bound asserted for eigenpairs extended from a duplicated motif.
pub const MOTIF_RESIDUAL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Twin,
    AntiTwin,
    Duplicate,
    AntiDuplicate,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Twin => "twin",
            RelationKind::AntiTwin => "anti-twin",
            RelationKind::Duplicate => "duplicate",
            RelationKind::AntiDuplicate => "anti-duplicate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexRelation {
    /// Vertex indices with `pair.0 < pair.1`.
    pub pair: (usize, usize),
    pub kind: RelationKind,
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= ADJACENCY_TOLERANCE * (1.0 + scale)
}

/// All related pairs, sorted by pair and then by kind. A pair can carry several kinds.
pub fn find_vertex_relations(h: &Hypergraph) -> Vec<VertexRelation> {
    let n = h.num_vertices();
    let a = build_operators(h).adjacency;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let scale = h.degree_at(i).max(h.degree_at(j));
            let rows_equal = |sign: f64| {
                (0..h.num_hyperedges()).all(|e| {
                    (h.coefficient(i, e) - sign * h.coefficient(j, e)).abs() <= COEFFICIENT_TOLERANCE
                })
            };
            let adj_equal = |sign: f64| (0..n).all(|k| close(a[(i, k)], sign * a[(j, k)], scale));
            let kinds = [
                (RelationKind::Twin, rows_equal(1.0)),
                (RelationKind::AntiTwin, rows_equal(-1.0)),
                (RelationKind::Duplicate, adj_equal(1.0)),
                (RelationKind::AntiDuplicate, adj_equal(-1.0)),
            ];
            out.extend(
                kinds
                    .into_iter()
                    .filter(|&(_, holds)| holds)
                    .map(|(kind, _)| VertexRelation { pair: (i, j), kind }),
            );
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalizedMode {
    /// `f(v_i) = f(v_j) = 1`, zero elsewhere.
    SameSign,
    /// `f(v_i) = −f(v_j) = 1`, zero elsewhere.
    OppositeSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedEigenpair {
    pub lambda: f64,
    pub f: VertexFunction,
    /// `‖Lf − λf‖∞`.
    pub residual: f64,
}

/// Eigenpair supported on two vertices, if the two-vertex conditions hold.
///
/// Same-sign: needs `deg v_i = deg v_j` or `A_ij = 0`, and `A_ik = −A_jk` for
/// `k ≠ i, j`; then `λ = 1 − A_ij / deg v_i`. Opposite-sign: the same with
/// `A_ik = A_jk`, and `λ = 1 + A_ij / deg v_i`. In both modes `0 ≤ λ ≤ 2`.
pub fn localized_eigenpair(
    h: &Hypergraph,
    i: usize,
    j: usize,
    mode: LocalizedMode,
) -> Result<LocalizedEigenpair> {
    let n = h.num_vertices();
    if i == j || i >= n || j >= n {
        return Err(Error::ConditionsNotMet(format!(
            "need two distinct vertex indices below {n}, got {i} and {j}"
        )));
    }
    let a = build_operators(h).adjacency;
    let (di, dj) = (h.degree_at(i), h.degree_at(j));
    let scale = di.max(dj);
    let name = |v: usize| h.vertices()[v].as_str();
    if !close(di, dj, scale) && !close(a[(i, j)], 0.0, scale) {
        return Err(Error::ConditionsNotMet(format!(
            "deg {} ≠ deg {} and A ≠ 0 between them",
            name(i),
            name(j)
        )));
    }
    let (sign, other) = match mode {
        LocalizedMode::SameSign => (-1.0, 1.0),
        LocalizedMode::OppositeSign => (1.0, -1.0),
    };
    if let Some(k) = (0..n).find(|&k| k != i && k != j && !close(a[(i, k)], sign * a[(j, k)], scale)) {
        return Err(Error::ConditionsNotMet(format!(
            "adjacency of {} and {} to {} does not match",
            name(i),
            name(j),
            name(k)
        )));
    }
    let lambda = 1.0 + sign * a[(i, j)] / di;
    let mut f = DVector::zeros(n);
    f[i] = 1.0;
    f[j] = other;
    let residual = (apply_l_unchecked(h, &f) - &f * lambda).amax();
    if residual > LOCALIZED_RESIDUAL {
        return Err(Error::Numerical(format!(
            "localized eigenpair residual {residual:e}"
        )));
    }
    Ok(LocalizedEigenpair {
        lambda,
        f: f.into(),
        residual,
    })
}

/// The eigenvalue carried by the constant functions, if they are eigenfunctions.
pub fn constant_eigenvalue(h: &Hypergraph) -> Option<f64> {
    let a = build_operators(h).adjacency;
    let q: Vec<f64> = (0..h.num_vertices())
        .map(|i| 1.0 - a.row(i).sum() / h.degree_at(i))
        .collect();
    q.iter()
        .all(|x| (x - q[0]).abs() <= 1e-10)
        .then_some(q[0])
}

/// A vertex permutation `σ`, a hyperedge permutation and a sign map `s`, meant to
/// satisfy `C_{σ(v),σ(h)} = s(v)·C_{v,h}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism {
    vertex_perm: Vec<usize>,
    hyperedge_perm: Vec<usize>,
    signs: Vec<f64>,
}

impl Automorphism {
    /// Unchecked; see [`verify_automorphism`].
    pub fn new(vertex_perm: Vec<usize>, hyperedge_perm: Vec<usize>, signs: Vec<f64>) -> Self {
        Automorphism {
            vertex_perm,
            hyperedge_perm,
            signs,
        }
    }

    pub fn identity(h: &Hypergraph) -> Self {
        Automorphism {
            vertex_perm: (0..h.num_vertices()).collect(),
            hyperedge_perm: (0..h.num_hyperedges()).collect(),
            signs: vec![1.0; h.num_vertices()],
        }
    }

    /// Reads `s(v)` off the first hyperedge containing `v`; `+1` if that incidence is not preserved.
    pub fn with_inferred_signs(
        h: &Hypergraph,
        vertex_perm: Vec<usize>,
        hyperedge_perm: Vec<usize>,
    ) -> Result<Self> {
        let mut out = Automorphism {
            signs: vec![1.0; vertex_perm.len()],
            vertex_perm,
            hyperedge_perm,
        };
        out.check_shape(h)?;
        for v in 0..h.num_vertices() {
            let (e, c) = h.memberships(v)[0];
            let image = h.coefficient(out.vertex_perm[v], out.hyperedge_perm[e]);
            if image != 0.0 {
                out.signs[v] = (image / c).signum();
            }
        }
        Ok(out)
    }

    /// Involution built from vertex and hyperedge transpositions given by id, signs inferred.
    pub fn from_swaps<S: AsRef<str>>(
        h: &Hypergraph,
        vertex_swaps: &[(S, S)],
        hyperedge_swaps: &[(S, S)],
    ) -> Result<Self> {
        let mut vp: Vec<usize> = (0..h.num_vertices()).collect();
        let mut hp: Vec<usize> = (0..h.num_hyperedges()).collect();
        for (a, b) in vertex_swaps {
            let (a, b) = (h.vertex_index(a.as_ref())?, h.vertex_index(b.as_ref())?);
            vp.swap(a, b);
        }
        for (a, b) in hyperedge_swaps {
            let (a, b) = (h.hyperedge_index(a.as_ref())?, h.hyperedge_index(b.as_ref())?);
            hp.swap(a, b);
        }
        Automorphism::with_inferred_signs(h, vp, hp)
    }

    pub fn vertex_perm(&self) -> &[usize] {
        &self.vertex_perm
    }

    pub fn hyperedge_perm(&self) -> &[usize] {
        &self.hyperedge_perm
    }

    pub fn signs(&self) -> &[f64] {
        &self.signs
    }

    /// Overrides `s(v)`.
    pub fn set_sign(&mut self, v: usize, sign: f64) {
        self.signs[v] = sign;
    }

    /// `σ_*f(v) = s(v)·f(σ(v))`.
    pub fn push_forward(&self, f: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(f.len(), |v, _| self.signs[v] * f[self.vertex_perm[v]])
    }

    pub fn is_involution(&self) -> bool {
        let sq = |p: &[usize]| p.iter().enumerate().all(|(i, &j)| p[j] == i);
        sq(&self.vertex_perm) && sq(&self.hyperedge_perm)
    }

    fn check_shape(&self, h: &Hypergraph) -> Result<()> {
        fn bijection(p: &[usize], n: usize, what: &str) -> Result<()> {
            if p.len() != n {
                return Err(Error::MalformedPermutation(format!(
                    "{what} map has length {}, expected {n}",
                    p.len()
                )));
            }
            let mut hit = vec![false; n];
            for &x in p {
                if x >= n || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::MalformedPermutation(format!(
                        "{what} map is not a bijection at image {x}"
                    )));
                }
            }
            Ok(())
        }
        bijection(&self.vertex_perm, h.num_vertices(), "vertex")?;
        bijection(&self.hyperedge_perm, h.num_hyperedges(), "hyperedge")?;
        if self.signs.len() != h.num_vertices() || self.signs.iter().any(|&s| s != 1.0 && s != -1.0) {
            return Err(Error::MalformedPermutation(
                "sign map must assign ±1 to every vertex".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismCheck {
    /// Definition and commutation both hold.
    pub holds: bool,
    /// First `(vertex, hyperedge)` pair, by id, where `C_{σ(v),σ(h)} ≠ s(v)·C_{v,h}`.
    pub violation: Option<(String, String)>,
    /// `max_u ‖L(σ_* e_u) − σ_*(L e_u)‖∞` over indicator functions.
    pub residual: f64,
}

/// Checks the automorphism definition exactly, then commutation with `L` on every
/// indicator function.
pub fn verify_automorphism(h: &Hypergraph, sigma: &Automorphism) -> Result<AutomorphismCheck> {
    sigma.check_shape(h)?;
    let violation = (0..h.num_vertices())
        .flat_map(|v| (0..h.num_hyperedges()).map(move |e| (v, e)))
        .find(|&(v, e)| {
            h.coefficient(sigma.vertex_perm[v], sigma.hyperedge_perm[e])
                != sigma.signs[v] * h.coefficient(v, e)
        })
        .map(|(v, e)| (h.vertices()[v].clone(), h.hyperedge(e).id().to_owned()));
    let n = h.num_vertices();
    let residual = (0..n)
        .map(|u| {
            let e = DVector::from_fn(n, |i, _| if i == u { 1.0 } else { 0.0 });
            let lhs = apply_l_unchecked(h, &sigma.push_forward(&e));
            let rhs = sigma.push_forward(&apply_l_unchecked(h, &e));
            (lhs - rhs).amax()
        })
        .fold(0.0, f64::max);
    Ok(AutomorphismCheck {
        holds: violation.is_none() && residual <= LOCALIZED_RESIDUAL,
        violation,
        residual,
    })
}

/// `V = V₀ ⊔ V′ ⊔ V″` for an involution `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSplit {
    /// `V₀`, the fixed vertices.
    pub fixed: Vec<usize>,
    /// `V′`, the lowest index of each two-element orbit.
    pub primary: Vec<usize>,
    /// `V″`, with `secondary[k] = τ(primary[k])`.
    pub secondary: Vec<usize>,
    /// Whether `V′` is connected through hyperedges of Γ restricted to `V′`.
    /// When false, the split can be refined into several involutions.
    pub primary_connected: bool,
}

pub fn involution_split(h: &Hypergraph, tau: &Automorphism) -> Result<InvolutionSplit> {
    let check = verify_automorphism(h, tau)?;
    if !check.holds {
        return Err(Error::NotAutomorphism(match check.violation {
            Some((v, e)) => format!("coefficient of {v} in {e} is not preserved"),
            None => format!("commutation residual {:e}", check.residual),
        }));
    }
    if !tau.is_involution() {
        return Err(Error::NotInvolution("τ∘τ is not the identity".into()));
    }
    let p = tau.vertex_perm();
    let fixed: Vec<usize> = (0..p.len()).filter(|&v| p[v] == v).collect();
    let primary: Vec<usize> = (0..p.len()).filter(|&v| p[v] > v).collect();
    let secondary = primary.iter().map(|&v| p[v]).collect();
    let primary_connected = connected_within(h, &primary);
    Ok(InvolutionSplit {
        fixed,
        primary,
        secondary,
        primary_connected,
    })
}

fn connected_within(h: &Hypergraph, set: &[usize]) -> bool {
    let Some(&start) = set.first() else {
        return true;
    };
    let mut inside = vec![false; h.num_vertices()];
    set.iter().for_each(|&v| inside[v] = true);
    let mut seen = vec![false; h.num_vertices()];
    seen[start] = true;
    let mut count = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(e, _) in h.memberships(v) {
            for w in h.hyperedge(e).vertices() {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    count == set.len()
}

/// Eigenvalues with `(·,·)_V`-orthonormal eigenfunctions as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPart {
    pub eigenvalues: Vec<f64>,
    pub eigenfunctions: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenspaceSplit {
    /// Eigenpairs with `τ_*f = −f`.
    pub antisymmetric: SpectrumPart,
    /// Eigenpairs with `τ_*f = f`.
    pub symmetric: SpectrumPart,
}

/// Splits an eigenbasis of `L` by the eigenvalue of `τ_*`.
///
/// `τ_*` commutes with `L` and is a symmetric signed permutation, so inside each
/// eigenvalue cluster it acts as a symmetric matrix `Uᵀ T U`; diagonalizing that
/// small matrix separates the `±1` eigenspaces and re-orthonormalizes them.
pub fn symmetry_eigenspace_split(h: &Hypergraph, tau: &Automorphism) -> Result<EigenspaceSplit> {
    involution_split(h, tau)?;
    let spectrum = spectrum_vertex(h)?;
    let n = h.num_vertices();
    let root: Vec<f64> = h.degrees().iter().map(|d| d.sqrt()).collect();
    let mut anti = (Vec::new(), Vec::new());
    let mut sym = (Vec::new(), Vec::new());
    for cluster in spectrum.clusters() {
        let f = spectrum
            .eigenvectors()
            .columns(cluster.start, cluster.multiplicity)
            .into_owned();
        let mut u = f.clone();
        for i in 0..n {
            u.row_mut(i).scale_mut(root[i]);
        }
        let tu = DMatrix::from_columns(
            &u.column_iter()
                .map(|c| tau.push_forward(&c.into_owned()))
                .collect::<Vec<_>>(),
        );
        let b = u.transpose() * tu;
        let b = (&b + b.transpose()) * 0.5;
        let (parity, w) = linalg::symmetric_eigen(&b, "τ restricted to an eigenspace")?;
        for (k, &p) in parity.iter().enumerate() {
            let mut g = &f * w.column(k);
            linalg::normalize_sign(&mut g);
            let lambda = spectrum.eigenvalues()[cluster.start + k];
            let target = if p < 0.0 { &mut anti } else { &mut sym };
            target.0.push(lambda);
            target.1.push(g);
        }
    }
    let part = |(values, vectors): (Vec<f64>, Vec<DVector<f64>>)| {
        let mut pairs: Vec<(f64, DVector<f64>)> = values.into_iter().zip(vectors).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        SpectrumPart {
            eigenvalues: pairs.iter().map(|p| p.0).collect(),
            eigenfunctions: if pairs.is_empty() {
                DMatrix::zeros(n, 0)
            } else {
                DMatrix::from_columns(&pairs.into_iter().map(|p| p.1).collect::<Vec<_>>())
            },
        }
    };
    Ok(EigenspaceSplit {
        antisymmetric: part(anti),
        symmetric: part(sym),
    })
}

/// An induced subhypergraph: vertices `V̂` and hyperedges `Ĥ` such that any two
/// vertices of `V̂` sharing a hyperedge of Γ share one in `Ĥ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motif {
    pub vertices: Vec<usize>,
    pub hyperedges: Vec<usize>,
}

impl Motif {
    /// The motif on `vertices` with every hyperedge meeting them.
    pub fn induced(h: &Hypergraph, vertices: &[usize]) -> Motif {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let hyperedges = (0..h.num_hyperedges())
            .filter(|&e| vertices.iter().any(|&v| h.hyperedge(e).contains(v)))
            .collect();
        Motif {
            vertices,
            hyperedges,
        }
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidMotif("empty vertex set".into()));
        }
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= h.num_vertices()) {
            return Err(Error::InvalidMotif(format!("vertex index {v} out of range")));
        }
        if let Some(&e) = self.hyperedges.iter().find(|&&e| e >= h.num_hyperedges()) {
            return Err(Error::InvalidMotif(format!("hyperedge index {e} out of range")));
        }
        for (e, edge) in h.hyperedges().iter().enumerate() {
            let inside = self.vertices.iter().filter(|&&v| edge.contains(v)).count();
            if inside >= 2 && !self.hyperedges.contains(&e) {
                return Err(Error::InvalidMotif(format!(
                    "hyperedge {} joins two motif vertices but is not in the motif",
                    edge.id()
                )));
            }
        }
        Ok(())
    }
}

/// `L_{Γ,Γ̂}` on the motif vertices (in motif order), with Γ-degrees.
pub fn induced_laplacian(h: &Hypergraph, motif: &Motif) -> Result<DMatrix<f64>> {
    motif.validate(h)?;
    let k = motif.vertices.len();
    let mut m = DMatrix::identity(k, k);
    for &e in &motif.hyperedges {
        let edge = h.hyperedge(e);
        for (a, &va) in motif.vertices.iter().enumerate() {
            for (b, &vb) in motif.vertices.iter().enumerate() {
                if a != b {
                    m[(a, b)] += edge.coefficient(va) * edge.coefficient(vb) / h.degree_at(va);
                }
            }
        }
    }
    Ok(m)
}

fn require_duplicated(h: &Hypergraph, split: &InvolutionSplit) -> Result<()> {
    let mut side = vec![0u8; h.num_vertices()];
    split.primary.iter().for_each(|&v| side[v] = 1);
    split.secondary.iter().for_each(|&v| side[v] = 2);
    match h.hyperedges().iter().find(|e| {
        e.vertices().any(|v| side[v] == 1) && e.vertices().any(|v| side[v] == 2)
    }) {
        Some(e) => Err(Error::NotDuplicatedMotif(format!(
            "hyperedge {} contains vertices of both V′ and V″",
            e.id()
        ))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MotifEigenpair {
    pub lambda: f64,
    pub f: VertexFunction,
    /// `‖Lf − λf‖∞` against the full Laplacian.
    pub residual: f64,
}

/// Eigenpairs of `L` obtained from the induced Laplacian of a duplicated motif `V′`.
///
/// Each eigenvector `g` of `L_{Γ,Γ′}` is extended by `f(τ(v′)) = −s(v′)·g(v′)` and
/// `f = 0` on `V₀`. Fixed vertices adjacent to `V′` must have `s = +1`, otherwise
/// their contributions from `v′` and `τ(v′)` add up instead of cancelling.
pub fn duplicated_motif_eigenpairs(
    h: &Hypergraph,
    tau: &Automorphism,
    motif: &Motif,
) -> Result<Vec<MotifEigenpair>> {
    let split = involution_split(h, tau)?;
    if motif.vertices != split.primary {
        return Err(Error::InvalidMotif("motif vertices must be V′ of the involution".into()));
    }
    require_duplicated(h, &split)?;
    require_positive_fixed_neighbours(h, tau, &split, false)?;
    let lhat = induced_laplacian(h, motif)?;
    let k = motif.vertices.len();
    let root: Vec<f64> = motif.vertices.iter().map(|&v| h.degree_at(v).sqrt()).collect();
    let sym = DMatrix::from_fn(k, k, |a, b| lhat[(a, b)] * root[a] / root[b]);
    let sym = (&sym + sym.transpose()) * 0.5;
    let (values, vectors) = linalg::symmetric_eigen(&sym, "induced motif Laplacian")?;
    let n = h.num_vertices();
    values
        .iter()
        .enumerate()
        .map(|(c, &lambda)| {
            let mut f = DVector::zeros(n);
            for (a, (&v, &w)) in motif.vertices.iter().zip(&split.secondary).enumerate() {
                let g = vectors[(a, c)] / root[a];
                f[v] = g;
                f[w] = -tau.signs()[v] * g;
            }
            let residual = (apply_l_unchecked(h, &f) - &f * lambda).amax();
            if residual > MOTIF_RESIDUAL {
                return Err(Error::Numerical(format!(
                    "duplicated motif eigenpair residual {residual:e}"
                )));
            }
            Ok(MotifEigenpair {
                lambda,
                f: f.into(),
                residual,
            })
        })
        .collect()
}

fn require_positive_fixed_neighbours(
    h: &Hypergraph,
    tau: &Automorphism,
    split: &InvolutionSplit,
    all_fixed: bool,
) -> Result<()> {
    let mut near = vec![all_fixed; h.num_vertices()];
    for &v in &split.primary {
        for &(e, _) in h.memberships(v) {
            h.hyperedge(e).vertices().for_each(|w| near[w] = true);
        }
    }
    match split
        .fixed
        .iter()
        .find(|&&v| near[v] && tau.signs()[v] < 0.0)
    {
        Some(&v) => Err(Error::ConditionsNotMet(format!(
            "fixed vertex {} has sign −1",
            h.vertices()[v]
        ))),
        None => Ok(()),
    }
}

/// The quotient `Γ^τ` on `V₀ ∪ V′`.
///
/// Each hyperedge orbit `{h, τ(h)}` with `h ≠ τ(h)` becomes one hyperedge: the member
/// meeting `V′` if there is one, otherwise the lower index. Its coefficients at
/// `V₀` are multiplied by `√2`; those at `V′` are kept. Fixed hyperedges are copied.
/// With this choice `L^τ` is similar to `L` on the symmetric functions, so
/// `spectrum(Γ^τ)` is the symmetric part of [`symmetry_eigenspace_split`].
/// Requires a duplicated motif and `s = +1` on all of `V₀`.
pub fn quotient_hypergraph(h: &Hypergraph, tau: &Automorphism) -> Result<Hypergraph> {
    quotient_with_scaling(h, tau, QuotientScaling::FixedVerticesOfCollapsedOrbits)
}

/// Where the `√2` factor goes when collapsing hyperedge orbits. Only the default
/// yields the symmetric spectrum; the others exist to document that.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientScaling {
    FixedVerticesOfCollapsedOrbits,
    AllCoefficients,
    None,
}

#[doc(hidden)]
pub fn quotient_with_scaling(
    h: &Hypergraph,
    tau: &Automorphism,
    scaling: QuotientScaling,
) -> Result<Hypergraph> {
    let split = involution_split(h, tau)?;
    require_duplicated(h, &split)?;
    require_positive_fixed_neighbours(h, tau, &split, true)?;
    let mut keep = vec![None; h.num_vertices()];
    let mut names = Vec::new();
    for v in 0..h.num_vertices() {
        if !split.secondary.contains(&v) {
            keep[v] = Some(names.len());
            names.push(h.vertices()[v].clone());
        }
    }
    let meets_primary = |e: usize| h.hyperedge(e).vertices().any(|v| split.primary.contains(&v));
    let hp = tau.hyperedge_perm();
    let mut edges = Vec::new();
    for e in 0..h.num_hyperedges() {
        let partner = hp[e];
        let collapsed = partner != e;
        let representative = !collapsed
            || meets_primary(e)
            || (!meets_primary(partner) && e < partner);
        if !representative {
            continue;
        }
        let entries = h
            .hyperedge(e)
            .entries()
            .iter()
            .map(|&(v, c)| {
                let factor = match scaling {
                    QuotientScaling::FixedVerticesOfCollapsedOrbits
                        if collapsed && split.fixed.binary_search(&v).is_ok() =>
                    {
                        std::f64::consts::SQRT_2
                    }
                    QuotientScaling::AllCoefficients => std::f64::consts::SQRT_2,
                    _ => 1.0,
                };
                keep[v]
                    .map(|nv| (nv, c * factor))
                    .ok_or_else(|| Error::NotDuplicatedMotif(format!(
                        "representative {} touches V″",
                        h.hyperedge(e).id()
                    )))
            })
            .collect::<Result<Vec<_>>>()?;
        edges.push((h.hyperedge(e).id().to_owned(), entries));
    }
    Hypergraph::from_indexed(names, edges)
}

/// Whether the motifs on `V′` and `V″` are twin (`C_{v′,h} = C_{v″,h}`) or
/// anti-twin (`C_{v′,h} = −C_{v″,h}`) for every hyperedge.
pub fn twin_motif_kind(h: &Hypergraph, split: &InvolutionSplit) -> Option<RelationKind> {
    if split.primary.is_empty() {
        return None;
    }
    let all = |sign: f64| {
        split.primary.iter().zip(&split.secondary).all(|(&a, &b)| {
            (0..h.num_hyperedges()).all(|e| {
                (h.coefficient(a, e) - sign * h.coefficient(b, e)).abs() <= COEFFICIENT_TOLERANCE
            })
        })
    };
    if all(1.0) {
        Some(RelationKind::Twin)
    } else if all(-1.0) {
        Some(RelationKind::AntiTwin)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::HypergraphSpec;

    fn three_vertex() -> Hypergraph {
        HypergraphSpec::new(["v1", "v2", "v3"])
            .hyperedge("h1", [("v1", 1.0), ("v2", 1.0)])
            .hyperedge("h2", [("v2", 1.0), ("v3", 1.0)])
            .hyperedge("h3", [("v1", 1.0), ("v2", 1.0), ("v3", 1.0)])
            .build()
            .unwrap()
    }

    fn fig3_swap(h: &Hypergraph) -> Automorphism {
        Automorphism::from_swaps(h, &[("v1", "v3")], &[("h1", "h2")]).unwrap()
    }

    fn path() -> Hypergraph {
        HypergraphSpec::new(["a", "o", "b"])
            .hyperedge("e1", [("a", 1.0), ("o", -1.0)])
            .hyperedge("e2", [("b", 1.0), ("o", -1.0)])
            .build()
            .unwrap()
    }

    #[test]
    fn three_vertex_relations_and_localized_pair() {
        let h = three_vertex();
        assert!(find_vertex_relations(&h)
            .iter()
            .all(|r| r.pair != (0, 2)));
        let p = localized_eigenpair(&h, 0, 2, LocalizedMode::OppositeSign).unwrap();
        assert!((p.lambda - 0.5).abs() < 1e-15);
        assert!(p.residual <= 1e-15);
        assert!(matches!(
            localized_eigenpair(&h, 0, 2, LocalizedMode::SameSign),
            Err(Error::ConditionsNotMet(_))
        ));
    }

    #[test]
    fn twin_pair() {
        let h = HypergraphSpec::new(["a", "b", "c"])
            .hyperedge("e1", [("a", 2.0), ("b", 2.0), ("c", -1.0)])
            .hyperedge("e2", [("a", -1.0), ("b", -1.0)])
            .build()
            .unwrap();
        let rel = find_vertex_relations(&h);
        assert!(rel.contains(&VertexRelation {
            pair: (0, 1),
            kind: RelationKind::Twin
        }));
        let p = localized_eigenpair(&h, 0, 1, LocalizedMode::OppositeSign).unwrap();
        assert!(p.lambda.abs() < 1e-15);
        let a = build_operators(&h).adjacency;
        assert_eq!(h.degree_at(0), -a[(0, 1)]);
    }

    #[test]
    fn anti_twin_adjacency_equals_degree() {
        let h = HypergraphSpec::new(["a", "b", "c"])
            .hyperedge("e1", [("a", 2.0), ("b", -2.0), ("c", 1.0)])
            .hyperedge("e2", [("a", 3.0), ("b", -3.0)])
            .build()
            .unwrap();
        let rel = find_vertex_relations(&h);
        assert!(rel.iter().any(|r| r.kind == RelationKind::AntiTwin));
        let a = build_operators(&h).adjacency;
        assert_eq!(a[(0, 1)], h.degree_at(0));
        let p = localized_eigenpair(&h, 0, 1, LocalizedMode::SameSign).unwrap();
        assert!(p.lambda.abs() < 1e-15);
    }

    #[test]
    fn duplicate_pair_has_eigenvalue_one() {
        let h = HypergraphSpec::new(["a", "b", "c"])
            .hyperedge("e1", [("a", 1.0), ("c", -2.0)])
            .hyperedge("e2", [("b", 1.0), ("c", -2.0)])
            .build()
            .unwrap();
        assert!(find_vertex_relations(&h).contains(&VertexRelation {
            pair: (0, 1),
            kind: RelationKind::Duplicate
        }));
        let p = localized_eigenpair(&h, 0, 1, LocalizedMode::OppositeSign).unwrap();
        assert_eq!(p.lambda, 1.0);
    }

    #[test]
    fn localized_eigenvalue_can_exceed_one() {
        // A single oriented edge: f = (1, −1) has eigenvalue 2.
        let h = HypergraphSpec::new(["a", "b"])
            .hyperedge("e", [("a", 1.0), ("b", -1.0)])
            .build()
            .unwrap();
        let p = localized_eigenpair(&h, 0, 1, LocalizedMode::OppositeSign).unwrap();
        assert_eq!(p.lambda, 2.0);
    }

    #[test]
    fn constant_eigenvalue_examples() {
        assert_eq!(constant_eigenvalue(&path()), Some(0.0));
        let uniform = HypergraphSpec::new(["a", "b", "c", "d"])
            .hyperedge("e1", [("a", 1.0), ("b", 1.0), ("c", 1.0)])
            .hyperedge("e2", [("b", 1.0), ("c", 1.0), ("d", 1.0)])
            .hyperedge("e3", [("a", 1.0), ("c", 1.0), ("d", 1.0)])
            .hyperedge("e4", [("a", 1.0), ("b", 1.0), ("d", 1.0)])
            .build()
            .unwrap();
        assert!((constant_eigenvalue(&uniform).unwrap() - 3.0).abs() < 1e-12);
        let two_vertex = HypergraphSpec::new(["v1", "v2"])
            .hyperedge("h1", [("v1", 1.0), ("v2", 1.0)])
            .hyperedge("h2", [("v1", 1.0), ("v2", 2.0)])
            .build()
            .unwrap();
        assert_eq!(constant_eigenvalue(&two_vertex), None);
    }

    #[test]
    fn automorphism_checks() {
        let h = three_vertex();
        let id = verify_automorphism(&h, &Automorphism::identity(&h)).unwrap();
        assert!(id.holds && id.residual == 0.0);
        let swap = fig3_swap(&h);
        assert_eq!(swap.signs(), &[1.0, 1.0, 1.0]);
        assert!(verify_automorphism(&h, &swap).unwrap().holds);
        // swapping vertices without the hyperedges breaks incidence
        let bad = Automorphism::new(vec![2, 1, 0], vec![0, 1, 2], vec![1.0; 3]);
        let check = verify_automorphism(&h, &bad).unwrap();
        assert!(!check.holds);
        assert_eq!(check.violation, Some(("v1".into(), "h1".into())));
        let malformed = Automorphism::new(vec![0, 0, 1], vec![0, 1, 2], vec![1.0; 3]);
        assert!(matches!(
            verify_automorphism(&h, &malformed),
            Err(Error::MalformedPermutation(_))
        ));
    }

    #[test]
    fn three_vertex_split() {
        let h = three_vertex();
        let split = involution_split(&h, &fig3_swap(&h)).unwrap();
        assert_eq!(split.fixed, vec![1]);
        assert_eq!((split.primary, split.secondary), (vec![0], vec![2]));
        let parts = symmetry_eigenspace_split(&h, &fig3_swap(&h)).unwrap();
        assert_eq!(parts.antisymmetric.eigenvalues.len(), 1);
        assert!((parts.antisymmetric.eigenvalues[0] - 0.5).abs() < 1e-12);
        let r = 201f64.sqrt();
        let sym = &parts.symmetric.eigenvalues;
        assert!((sym[0] - (15.0 - r) / 12.0).abs() < 1e-12);
        assert!((sym[1] - (15.0 + r) / 12.0).abs() < 1e-12);
    }

    #[test]
    fn identity_split() {
        let h = three_vertex();
        let id = Automorphism::identity(&h);
        let split = involution_split(&h, &id).unwrap();
        assert_eq!(split.fixed, vec![0, 1, 2]);
        assert!(split.primary.is_empty());
        let parts = symmetry_eigenspace_split(&h, &id).unwrap();
        assert!(parts.antisymmetric.eigenvalues.is_empty());
        assert_eq!(parts.symmetric.eigenvalues.len(), 3);
        let q = quotient_hypergraph(&h, &id).unwrap();
        assert_eq!(q, h);
    }

    #[test]
    fn not_an_involution() {
        let h = HypergraphSpec::new(["a", "b", "c"])
            .hyperedge("e", [("a", 1.0), ("b", 1.0), ("c", 1.0)])
            .build()
            .unwrap();
        let rot = Automorphism::new(vec![1, 2, 0], vec![0], vec![1.0; 3]);
        assert!(verify_automorphism(&h, &rot).unwrap().holds);
        assert!(matches!(involution_split(&h, &rot), Err(Error::NotInvolution(_))));
    }

    #[test]
    fn two_disjoint_pairs() {
        let h = HypergraphSpec::new(["a", "b", "c", "d"])
            .hyperedge("e1", [("a", 1.0), ("b", 1.0)])
            .hyperedge("e2", [("c", 1.0), ("d", 1.0)])
            .build()
            .unwrap();
        let tau = Automorphism::from_swaps(&h, &[("a", "b"), ("c", "d")], &[]).unwrap();
        let split = involution_split(&h, &tau).unwrap();
        assert_eq!(split.primary, vec![0, 2]);
        assert!(!split.primary_connected);
    }

    #[test]
    fn induced_laplacian_cases() {
        let h = three_vertex();
        let whole = Motif::induced(&h, &[0, 1, 2]);
        let l = induced_laplacian(&h, &whole).unwrap();
        assert!((l - build_operators(&h).vertex_laplacian).amax() < 1e-15);
        let single = Motif::induced(&h, &[0]);
        assert_eq!(induced_laplacian(&h, &single).unwrap(), DMatrix::identity(1, 1));
        let open = Motif {
            vertices: vec![0, 1],
            hyperedges: vec![0],
        };
        assert!(matches!(induced_laplacian(&h, &open), Err(Error::InvalidMotif(_))));
    }

    #[test]
    fn path_quotient_and_duplicated_vertex() {
        let h = path();
        let tau = Automorphism::from_swaps(&h, &[("a", "b")], &[("e1", "e2")]).unwrap();
        let pairs = duplicated_motif_eigenpairs(&h, &tau, &Motif::induced(&h, &[0])).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].lambda, 1.0);
        assert_eq!(pairs[0].f.as_slice(), &[1.0, 0.0, -1.0]);
        let q = quotient_hypergraph(&h, &tau).unwrap();
        let qs = spectrum_vertex(&q).unwrap();
        // path a–o–b has spectrum {0, 1, 2}; symmetric part {0, 2}
        assert!(qs.eigenvalues()[0].abs() < 1e-12);
        assert!((qs.eigenvalues()[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn crossing_hyperedge_is_rejected() {
        let h = three_vertex();
        assert!(matches!(
            quotient_hypergraph(&h, &fig3_swap(&h)),
            Err(Error::NotDuplicatedMotif(_))
        ));
    }

    #[test]
    fn twin_motif_predicate() {
        let h = HypergraphSpec::new(["a", "b", "c"])
            .hyperedge("e1", [("a", 1.0), ("b", 1.0), ("c", 3.0)])
            .build()
            .unwrap();
        let tau = Automorphism::from_swaps(&h, &[("a", "b")], &[]).unwrap();
        let split = involution_split(&h, &tau).unwrap();
        assert_eq!(twin_motif_kind(&h, &split), Some(RelationKind::Twin));
    }
}
