//! Runs every theorem check in the crate against a single hypergraph.
//!
//! Each check yields one [`CheckOutcome`]. Numerical breakdowns are returned as
//! errors rather than as failed checks. Checks that need connectivity run per
//! connected component.

use rand::Rng;

use crate::error::Result;
use crate::function::{HyperedgeFunction, VertexFunction};
use crate::generate::seeded;
use crate::hypergraph::Hypergraph;
use crate::kernel::{check_balancing, elementary_modes, kernel_basis_hyperedges, kernel_basis_vertices};
use crate::operators::{apply_l, boundary, build_operators, coboundary, scalar_product_h, scalar_product_v};
use crate::spectral::{rayleigh_vertex, spectrum_hyperedge, spectrum_vertex, zero_multiplicities, Spectrum};
use crate::structure::{
    bipartition, eigenvalue_upper_bounds, interlacing_report, lambda_max_analysis, min_nonzero_sandwich,
};
use crate::symmetry::{
    constant_eigenvalue, duplicated_motif_eigenpairs, find_vertex_relations, involution_split,
    localized_eigenpair, quotient_hypergraph, symmetry_eigenspace_split, verify_automorphism,
    Automorphism, LocalizedMode, Motif, RelationKind,
};

/// Tolerance for "this value occurs in the spectrum".
pub const SPECTRUM_MATCH: f64 = 1e-8;

/// Elementary modes are enumerated only up to this many hyperedges.
const MODE_AUDIT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        detail: detail.into(),
    }
}

/// All checks; `tau` adds the involution checks.
pub fn audit(h: &Hypergraph, tau: Option<&Automorphism>) -> Result<Vec<CheckOutcome>> {
    let n = h.num_vertices();
    let m = h.num_hyperedges();
    let ops = build_operators(h);
    let lv = spectrum_vertex(h)?;
    let lh = spectrum_hyperedge(h)?;
    let zeros = zero_multiplicities(h)?;
    let mut out = Vec::new();

    let trace = ops.vertex_laplacian.trace();
    out.push(outcome(
        "trace",
        (trace - n as f64).abs() <= 1e-9 * n as f64,
        format!("trace(L) = {trace}, N = {n}"),
    ));

    out.push(outcome(
        "zero-multiplicities",
        zeros.m_v as isize - zeros.m_h as isize == n as isize - m as isize
            && lv.zero_count() == zeros.m_v
            && lh.zero_count() == zeros.m_h,
        format!(
            "m_V = {}, m_H = {}, rank = {}, zero eigenvalues of L / Lᴴ: {} / {}",
            zeros.m_v,
            zeros.m_h,
            zeros.incidence_rank,
            lv.zero_count(),
            lh.zero_count()
        ),
    ));

    let nonzero_v = &lv.eigenvalues()[zeros.m_v..];
    let nonzero_h = &lh.eigenvalues()[zeros.m_h.min(m)..];
    let gap = nonzero_v
        .iter()
        .zip(nonzero_h)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    out.push(outcome(
        "nonzero-spectra-agree",
        nonzero_v.len() == nonzero_h.len() && gap <= 1e-8,
        format!("{} nonzero eigenvalues, max gap {gap:e}", nonzero_v.len()),
    ));

    out.push(adjointness(h)?);
    out.push(rayleigh(h, &lv)?);
    out.push(orientation_flip(h, &ops.vertex_laplacian)?);

    let top = lv.largest().unwrap_or(0.0);
    let max_card = h.max_cardinality() as f64;
    out.push(outcome(
        "largest-eigenvalue-bound",
        top <= max_card + 1e-9,
        format!("λ_N = {top}, max|h| = {max_card}"),
    ));

    let bounds = eigenvalue_upper_bounds(h);
    let worst = (0..n)
        .map(|k| lv.eigenvalues()[n - 1 - k] - bounds[k])
        .fold(f64::NEG_INFINITY, f64::max);
    out.push(outcome(
        "eigenvalue-upper-bounds",
        worst <= 1e-9,
        format!("max over k of λ_(N−k) − bound_k = {worst:e}"),
    ));

    if zeros.m_v < n {
        let s = min_nonzero_sandwich(h)?;
        out.push(outcome(
            "min-nonzero-sandwich",
            s.ordered && s.some_inequality_tight == s.equalities,
            format!(
                "{} ≤ {} ≤ {}, equalities = {}",
                s.lambda_min, s.ratio, s.lambda_max, s.equalities
            ),
        ));
        out.push(outcome(
            "zero-multiplicity-bounds",
            s.m_v as f64 <= s.m_v_bound + 1e-9 && s.m_h as f64 <= s.m_h_bound + 1e-9,
            format!(
                "m_V = {} ≤ {}, m_H = {} ≤ {}",
                s.m_v, s.m_v_bound, s.m_h, s.m_h_bound
            ),
        ));
    }

    out.extend(component_checks(h)?);
    out.push(interlacing_all(h)?);
    out.extend(symmetry_checks(h, &lv, &ops.adjacency)?);
    out.extend(kernel_checks(h, zeros.m_v, zeros.m_h)?);
    if let Some(tau) = tau {
        out.extend(involution_checks(h, tau, &lv)?);
    }
    Ok(out)
}

fn adjointness(h: &Hypergraph) -> Result<CheckOutcome> {
    let mut rng = seeded(0);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let f = VertexFunction::new((0..h.num_vertices()).map(|_| rng.random_range(-1.0..1.0)).collect());
        let g = HyperedgeFunction::new(
            (0..h.num_hyperedges()).map(|_| rng.random_range(-1.0..1.0)).collect(),
        );
        let lhs = scalar_product_h(&boundary(h, &f)?, &g)?;
        let rhs = scalar_product_v(h, &f, &coboundary(h, &g)?)?;
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    Ok(outcome(
        "adjointness",
        worst <= 1e-10,
        format!("max relative gap {worst:e}"),
    ))
}

fn rayleigh(h: &Hypergraph, lv: &Spectrum) -> Result<CheckOutcome> {
    let (lo, hi) = (lv.eigenvalues()[0], lv.largest().unwrap_or(0.0));
    let mut worst: f64 = 0.0;
    for k in 0..lv.len() {
        let rq = rayleigh_vertex(h, &lv.eigenvector(k).into())?;
        worst = worst.max((rq - lv.eigenvalues()[k]).abs());
    }
    let mut rng = seeded(1);
    let mut inside = true;
    for _ in 0..10 {
        let f = VertexFunction::new((0..h.num_vertices()).map(|_| rng.random_range(-1.0..1.0)).collect());
        if f.is_zero() {
            continue;
        }
        let rq = rayleigh_vertex(h, &f)?;
        inside &= lo - 1e-9 <= rq && rq <= hi + 1e-9;
    }
    Ok(outcome(
        "rayleigh-quotient",
        worst <= 1e-9 && inside,
        format!("eigenvector quotient error {worst:e}, random quotients in [λ_1, λ_N]: {inside}"),
    ))
}

fn orientation_flip(h: &Hypergraph, l: &nalgebra::DMatrix<f64>) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for e in h.hyperedges() {
        let flipped = h.flip_orientation(e.id())?;
        worst = worst.max((build_operators(&flipped).vertex_laplacian - l).amax());
    }
    Ok(outcome(
        "orientation-flip-invariance",
        worst <= 1e-12,
        format!("max entry change {worst:e}"),
    ))
}

fn component_checks(h: &Hypergraph) -> Result<Vec<CheckOutcome>> {
    let mut bip_ok = true;
    let mut eq_ok = true;
    let mut notes = Vec::new();
    for comp in h.components() {
        let sub = h.restrict_to(&comp)?;
        if let Some(cert) = bipartition(&sub)? {
            bip_ok &= cert.verify(&sub);
        }
        let report = lambda_max_analysis(&sub)?;
        let top = spectrum_vertex(&sub)?.largest().unwrap_or(0.0);
        let numeric = (top - report.bound).abs() <= 1e-8;
        eq_ok &= numeric == report.attained;
        if let Some(cert) = &report.certificate {
            let lf = apply_l(&sub, &cert.f)?;
            let residual = (lf.values() - cert.f.values() * report.bound).amax();
            eq_ok &= residual <= 1e-8 * cert.f.values().amax().max(1.0);
        }
        notes.push(format!(
            "{{{}}}: bipartite = {}, attained = {}, λ_N = {top}",
            comp.iter()
                .map(|&v| h.vertices()[v].as_str())
                .collect::<Vec<_>>()
                .join(","),
            report.bipartite,
            report.attained
        ));
    }
    Ok(vec![
        outcome("bipartition-certificate", bip_ok, notes.join("; ")),
        outcome(
            "largest-eigenvalue-equality",
            eq_ok,
            "structural equality matches the eigensolver on every component",
        ),
    ])
}

fn interlacing_all(h: &Hypergraph) -> Result<CheckOutcome> {
    let mut tried = 0;
    let mut worst = f64::NEG_INFINITY;
    for v in h.vertices() {
        match interlacing_report(h, &[v.as_str()]) {
            Ok(r) => {
                tried += 1;
                worst = worst.max(r.worst_violation);
            }
            Err(e) if e.is_numerical() => return Err(e),
            Err(_) => {}
        }
    }
    Ok(outcome(
        "interlacing",
        tried == 0 || worst <= 1e-9,
        format!("{tried} single-vertex weak deletions, worst violation {worst:e}"),
    ))
}

fn symmetry_checks(
    h: &Hypergraph,
    lv: &Spectrum,
    a: &nalgebra::DMatrix<f64>,
) -> Result<Vec<CheckOutcome>> {
    let n = h.num_vertices();
    let mut lemma = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let slack = h.degree_at(i) + h.degree_at(j) - (2.0 * a[(i, j)]).abs();
            lemma = lemma.min(slack / (1.0 + h.degree_at(i) + h.degree_at(j)));
        }
    }
    let relations = find_vertex_relations(h);
    let mut rel_ok = true;
    for r in &relations {
        let (mode, expected) = match r.kind {
            RelationKind::Twin => (LocalizedMode::OppositeSign, 0.0),
            RelationKind::AntiTwin => (LocalizedMode::SameSign, 0.0),
            RelationKind::Duplicate => (LocalizedMode::OppositeSign, 1.0),
            RelationKind::AntiDuplicate => (LocalizedMode::SameSign, 1.0),
        };
        rel_ok &= match localized_eigenpair(h, r.pair.0, r.pair.1, mode) {
            Ok(p) => (p.lambda - expected).abs() <= 1e-9 && lv.contains(expected, SPECTRUM_MATCH),
            Err(e) if e.is_numerical() => return Err(e),
            Err(_) => false,
        };
    }
    let mut localized = 0;
    let mut loc_ok = true;
    for i in 0..n {
        for j in i + 1..n {
            for mode in [LocalizedMode::SameSign, LocalizedMode::OppositeSign] {
                match localized_eigenpair(h, i, j, mode) {
                    Ok(p) => {
                        localized += 1;
                        loc_ok &= lv.contains(p.lambda, SPECTRUM_MATCH)
                            && (-1e-12..=2.0 + 1e-12).contains(&p.lambda);
                    }
                    Err(e) if e.is_numerical() => return Err(e),
                    Err(_) => {}
                }
            }
        }
    }
    let constant = constant_eigenvalue(h);
    Ok(vec![
        outcome(
            "adjacency-degree-lemma",
            lemma >= -1e-12,
            format!("min relative slack of deg v_i + deg v_j − |2A_ij|: {lemma:e}"),
        ),
        outcome(
            "vertex-relations",
            rel_ok,
            format!("{} relations, each forcing its eigenvalue", relations.len()),
        ),
        outcome(
            "localized-eigenpairs",
            loc_ok,
            format!("{localized} two-vertex eigenpairs, all in the spectrum and in [0, 2]"),
        ),
        outcome(
            "constant-functions",
            constant.is_none_or(|l| lv.contains(l, SPECTRUM_MATCH)),
            match constant {
                Some(l) => format!("constants are eigenfunctions for {l}"),
                None => "constants are not eigenfunctions".to_owned(),
            },
        ),
    ])
}

fn kernel_checks(h: &Hypergraph, m_v: usize, m_h: usize) -> Result<Vec<CheckOutcome>> {
    let fluxes = kernel_basis_hyperedges(h)?;
    let harmonic = kernel_basis_vertices(h)?;
    let mut balanced = true;
    for f in &fluxes {
        balanced &= check_balancing(h, &f.gamma)?.balanced;
    }
    let mut out = vec![outcome(
        "kernel-dimensions",
        fluxes.len() == m_h && harmonic.len() == m_v && balanced,
        format!(
            "dim ker 𝓘 = {} (m_H = {m_h}), dim ker 𝓘ᵀ = {} (m_V = {m_v})",
            fluxes.len(),
            harmonic.len()
        ),
    )];
    if h.num_hyperedges() <= MODE_AUDIT_LIMIT {
        let modes = elementary_modes(h, h.num_hyperedges())?;
        let mut ok = true;
        for (i, a) in modes.iter().enumerate() {
            ok &= check_balancing(h, &a.gamma)?.balanced;
            for b in &modes[i + 1..] {
                let contains = |x: &[usize], y: &[usize]| y.iter().all(|j| x.contains(j));
                ok &= !contains(&a.support, &b.support) && !contains(&b.support, &a.support);
            }
        }
        out.push(outcome(
            "elementary-modes",
            ok,
            format!("{} support-minimal balanced modes", modes.len()),
        ));
    }
    Ok(out)
}

fn involution_checks(h: &Hypergraph, tau: &Automorphism, lv: &Spectrum) -> Result<Vec<CheckOutcome>> {
    let check = verify_automorphism(h, tau)?;
    let mut out = vec![outcome(
        "automorphism",
        check.holds,
        format!("commutation residual {:e}", check.residual),
    )];
    if !check.holds {
        return Ok(out);
    }
    let split = match involution_split(h, tau) {
        Ok(s) => s,
        Err(e) if e.is_numerical() => return Err(e),
        Err(e) => {
            out.push(outcome("involution", false, e.to_string()));
            return Ok(out);
        }
    };
    let parts = symmetry_eigenspace_split(h, tau)?;
    let mut union: Vec<f64> = parts
        .antisymmetric
        .eigenvalues
        .iter()
        .chain(&parts.symmetric.eigenvalues)
        .copied()
        .collect();
    union.sort_by(f64::total_cmp);
    let gap = union
        .iter()
        .zip(lv.eigenvalues())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let negative_fixed = split.fixed.iter().filter(|&&v| tau.signs()[v] < 0.0).count();
    out.push(outcome(
        "symmetry-split",
        gap <= 1e-9 && parts.antisymmetric.eigenvalues.len() == split.primary.len() + negative_fixed,
        format!(
            "{} antisymmetric and {} symmetric eigenvalues",
            parts.antisymmetric.eigenvalues.len(),
            parts.symmetric.eigenvalues.len()
        ),
    ));
    if split.primary.is_empty() {
        return Ok(out);
    }
    let motif = Motif::induced(h, &split.primary);
    match duplicated_motif_eigenpairs(h, tau, &motif) {
        Ok(pairs) => out.push(outcome(
            "duplicated-motif-eigenpairs",
            pairs.iter().all(|p| lv.contains(p.lambda, SPECTRUM_MATCH)),
            format!("{} eigenpairs from the induced Laplacian", pairs.len()),
        )),
        Err(e) if e.is_numerical() => return Err(e),
        Err(e) => out.push(outcome("duplicated-motif-eigenpairs", true, format!("not applicable: {e}"))),
    }
    match quotient_hypergraph(h, tau) {
        Ok(q) => {
            let qs = spectrum_vertex(&q)?;
            let sym = &parts.symmetric.eigenvalues;
            let gap = qs
                .eigenvalues()
                .iter()
                .zip(sym)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            out.push(outcome(
                "quotient-spectrum",
                qs.len() == sym.len() && gap <= 1e-8,
                format!("quotient has {} vertices, max gap {gap:e}", q.num_vertices()),
            ));
        }
        Err(e) if e.is_numerical() => return Err(e),
        Err(e) => out.push(outcome("quotient-spectrum", true, format!("not applicable: {e}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::HypergraphSpec;

    #[test]
    fn three_vertex_passes_everything() {
        let h = HypergraphSpec::new(["v1", "v2", "v3"])
            .hyperedge("h1", [("v1", 1.0), ("v2", 1.0)])
            .hyperedge("h2", [("v2", 1.0), ("v3", 1.0)])
            .hyperedge("h3", [("v1", 1.0), ("v2", 1.0), ("v3", 1.0)])
            .build()
            .unwrap();
        let tau = Automorphism::from_swaps(&h, &[("v1", "v3")], &[("h1", "h2")]).unwrap();
        let results = audit(&h, Some(&tau)).unwrap();
        let failed: Vec<_> = results.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(results.len() >= 20);
    }
}
