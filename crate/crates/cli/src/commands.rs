use serde::Serialize;

use hyperlap::audit::audit;
use hyperlap::generate::{
    bipartite_uniform, plant_duplicate, plant_twin, planted_involution, random_hypergraph, seeded,
    RandomConfig,
};
use hyperlap::io;
use hyperlap::kernel::{elementary_modes, kernel_basis_hyperedges, kernel_basis_vertices, DEFAULT_MODE_LIMIT};
use hyperlap::spectral::{
    component_spectra, default_zero_tolerance, spectrum_hyperedge_with_tolerance,
    spectrum_vertex_with_tolerance, zero_multiplicities,
};
use hyperlap::structure::{bipartition, eigenvalue_upper_bounds, lambda_max_analysis, min_nonzero_sandwich};
use hyperlap::symmetry::{
    constant_eigenvalue, duplicated_motif_eigenpairs, find_vertex_relations, involution_split,
    localized_eigenpair, quotient_hypergraph, symmetry_eigenspace_split, twin_motif_kind,
    verify_automorphism, Automorphism, LocalizedMode, Motif, RelationKind,
};
use hyperlap::Hypergraph;

use crate::report::{json, sig, sigs, spectrum_csv};
use crate::{tau, CliError, Common, Format, GenerateArgs, Outcome, Planted};

fn load(c: &Common) -> Result<Hypergraph, CliError> {
    let text = std::fs::read_to_string(&c.input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", c.input.display())))?;
    io::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", c.input.display())))
}

fn zero_tolerance(c: &Common, h: &Hypergraph) -> Result<f64, CliError> {
    match c.tolerance {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            Err(CliError::Input(format!("--tolerance must be a nonnegative number, got {t}")))
        }
        Some(t) => Ok(t),
        None => Ok(default_zero_tolerance(h.num_vertices())),
    }
}

fn json_only(c: &Common, command: &str) -> Result<(), CliError> {
    match c.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Input(format!("{command} has no CSV output"))),
    }
}

fn done(c: &Common, text: String) -> Outcome {
    Outcome {
        text,
        violation: false,
        diagnostics: Vec::new(),
        output: c.output.clone(),
    }
}

fn ids(h: &Hypergraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| h.vertices()[v].clone()).collect()
}

fn label(k: usize) -> String {
    format!("C{}", k + 1)
}

#[derive(Serialize)]
struct Instance {
    vertices: usize,
    hyperedges: usize,
    max_cardinality: usize,
    components: usize,
}

fn instance(h: &Hypergraph) -> Instance {
    Instance {
        vertices: h.num_vertices(),
        hyperedges: h.num_hyperedges(),
        max_cardinality: h.max_cardinality(),
        components: h.components().len(),
    }
}

#[derive(Serialize)]
struct Component {
    label: String,
    vertices: Vec<String>,
}

#[derive(Serialize)]
struct LabelledEigenvalue {
    eigenvalue: f64,
    component: String,
}

#[derive(Serialize)]
struct ZeroReport {
    m_v: usize,
    m_h: usize,
    incidence_rank: usize,
    zero_eigenvalues_v: usize,
    zero_eigenvalues_h: usize,
}

#[derive(Serialize)]
struct SpectrumReport {
    instance: Instance,
    zero_tolerance: f64,
    components: Vec<Component>,
    vertex_spectrum: Vec<LabelledEigenvalue>,
    hyperedge_spectrum: Vec<f64>,
    zero_multiplicities: ZeroReport,
}

pub fn spectrum(c: &Common) -> Result<Outcome, CliError> {
    let h = load(c)?;
    let tol = zero_tolerance(c, &h)?;
    let parts = component_spectra(&h, tol)?;
    let mut union: Vec<(f64, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(k, (_, s))| s.eigenvalues().iter().map(move |&x| (x, k)))
        .collect();
    union.sort_by(|a, b| a.0.total_cmp(&b.0));
    if c.format == Format::Csv {
        let values: Vec<f64> = union.iter().map(|p| p.0).collect();
        return Ok(done(c, spectrum_csv(&values)));
    }
    let lh = spectrum_hyperedge_with_tolerance(&h, tol)?;
    let zeros = zero_multiplicities(&h)?;
    let report = SpectrumReport {
        instance: instance(&h),
        zero_tolerance: sig(tol),
        components: parts
            .iter()
            .enumerate()
            .map(|(k, (vs, _))| Component {
                label: label(k),
                vertices: ids(&h, vs),
            })
            .collect(),
        vertex_spectrum: union
            .iter()
            .map(|&(x, k)| LabelledEigenvalue {
                eigenvalue: sig(x),
                component: label(k),
            })
            .collect(),
        hyperedge_spectrum: sigs(lh.eigenvalues()),
        zero_multiplicities: ZeroReport {
            m_v: zeros.m_v,
            m_h: zeros.m_h,
            incidence_rank: zeros.incidence_rank,
            zero_eigenvalues_v: parts.iter().map(|(_, s)| s.zero_count()).sum(),
            zero_eigenvalues_h: lh.zero_count(),
        },
    };
    Ok(done(c, json(&report)))
}

#[derive(Serialize)]
struct UpperBound {
    k: usize,
    eigenvalue: f64,
    bound: f64,
}

#[derive(Serialize)]
struct Sandwich {
    lambda_min: f64,
    ratio: f64,
    lambda_max: f64,
    ordered: bool,
    equalities: bool,
    m_v: usize,
    m_v_bound: f64,
    m_h: usize,
    m_h_bound: f64,
}

#[derive(Serialize)]
struct ComponentBound {
    label: String,
    vertices: Vec<String>,
    largest_eigenvalue: f64,
    max_cardinality: f64,
    bipartite: bool,
    uniform: bool,
    attained: bool,
}

#[derive(Serialize)]
struct BoundsReport {
    instance: Instance,
    largest_eigenvalue: f64,
    largest_eigenvalue_bound_holds: bool,
    /// Entry `k` bounds the eigenvalue `λ_(N−k)`.
    upper_bounds: Vec<UpperBound>,
    smallest_nonzero: Option<Sandwich>,
    components: Vec<ComponentBound>,
}

pub fn bounds(c: &Common) -> Result<Outcome, CliError> {
    json_only(c, "bounds")?;
    let h = load(c)?;
    let tol = zero_tolerance(c, &h)?;
    let lv = spectrum_vertex_with_tolerance(&h, tol)?;
    let n = h.num_vertices();
    let top = lv.largest().unwrap_or(0.0);
    let upper = eigenvalue_upper_bounds(&h)
        .into_iter()
        .enumerate()
        .map(|(k, b)| UpperBound {
            k,
            eigenvalue: sig(lv.eigenvalues()[n - 1 - k]),
            bound: sig(b),
        })
        .collect();
    let zeros = zero_multiplicities(&h)?;
    let sandwich = if zeros.m_v < n {
        let s = min_nonzero_sandwich(&h)?;
        Some(Sandwich {
            lambda_min: sig(s.lambda_min),
            ratio: sig(s.ratio),
            lambda_max: sig(s.lambda_max),
            ordered: s.ordered,
            equalities: s.equalities,
            m_v: s.m_v,
            m_v_bound: sig(s.m_v_bound),
            m_h: s.m_h,
            m_h_bound: sig(s.m_h_bound),
        })
    } else {
        None
    };
    let mut components = Vec::new();
    for (k, vs) in h.components().into_iter().enumerate() {
        let sub = h.restrict_to(&vs)?;
        let a = lambda_max_analysis(&sub)?;
        let top = spectrum_vertex_with_tolerance(&sub, tol)?.largest().unwrap_or(0.0);
        components.push(ComponentBound {
            label: label(k),
            vertices: ids(&h, &vs),
            largest_eigenvalue: sig(top),
            max_cardinality: sig(a.bound),
            bipartite: a.bipartite,
            uniform: a.uniform,
            attained: a.attained,
        });
    }
    let report = BoundsReport {
        instance: instance(&h),
        largest_eigenvalue: sig(top),
        largest_eigenvalue_bound_holds: top <= h.max_cardinality() as f64 + 1e-9,
        upper_bounds: upper,
        smallest_nonzero: sandwich,
        components,
    };
    Ok(done(c, json(&report)))
}

#[derive(Serialize)]
struct ComponentBipartition {
    label: String,
    vertices: Vec<String>,
    bipartite: bool,
    part1: Option<Vec<String>>,
    part2: Option<Vec<String>>,
    /// Hyperedges whose inputs lie in `part1`.
    inputs_in_part1: Option<Vec<String>>,
}

#[derive(Serialize)]
struct BipartiteReport {
    instance: Instance,
    bipartite: bool,
    components: Vec<ComponentBipartition>,
}

pub fn bipartite(c: &Common) -> Result<Outcome, CliError> {
    json_only(c, "bipartite")?;
    let h = load(c)?;
    let mut components = Vec::new();
    for (k, vs) in h.components().into_iter().enumerate() {
        let sub = h.restrict_to(&vs)?;
        let cert = bipartition(&sub)?;
        let lift = |part: &[usize]| part.iter().map(|&v| sub.vertices()[v].clone()).collect();
        components.push(ComponentBipartition {
            label: label(k),
            vertices: ids(&h, &vs),
            bipartite: cert.is_some(),
            part1: cert.as_ref().map(|c| lift(&c.part1)),
            part2: cert.as_ref().map(|c| lift(&c.part2)),
            inputs_in_part1: cert.as_ref().map(|c| {
                (0..sub.num_hyperedges())
                    .filter(|&j| c.inputs_in_part1[j])
                    .map(|j| sub.hyperedge(j).id().to_owned())
                    .collect()
            }),
        });
    }
    let report = BipartiteReport {
        instance: instance(&h),
        bipartite: components.iter().all(|c| c.bipartite),
        components,
    };
    Ok(done(c, json(&report)))
}

#[derive(Serialize)]
struct Relation {
    vertices: [String; 2],
    kind: &'static str,
    eigenvalue: f64,
}

#[derive(Serialize)]
struct Localized {
    vertices: [String; 2],
    mode: &'static str,
    eigenvalue: f64,
}

#[derive(Serialize)]
struct InvolutionReport {
    tau: String,
    fixed: Vec<String>,
    primary: Vec<String>,
    secondary: Vec<String>,
    primary_connected: bool,
    twin_motif: Option<&'static str>,
    antisymmetric_spectrum: Vec<f64>,
    symmetric_spectrum: Vec<f64>,
    /// `None` when the motif is not duplicated in the required sense.
    motif_eigenvalues: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct SymmetryReport {
    instance: Instance,
    relations: Vec<Relation>,
    localized_eigenpairs: Vec<Localized>,
    constant_eigenvalue: Option<f64>,
    involution: Option<InvolutionReport>,
}

/// Twins force the eigenvalue 0, duplicates the eigenvalue 1.
fn forced_eigenvalue(kind: RelationKind) -> f64 {
    match kind {
        RelationKind::Twin | RelationKind::AntiTwin => 0.0,
        RelationKind::Duplicate | RelationKind::AntiDuplicate => 1.0,
    }
}

fn mode_name(mode: LocalizedMode) -> &'static str {
    match mode {
        LocalizedMode::SameSign => "same-sign",
        LocalizedMode::OppositeSign => "opposite-sign",
    }
}

fn load_tau(c: &Common, h: &Hypergraph) -> Result<Option<Automorphism>, CliError> {
    let Some(text) = &c.tau else { return Ok(None) };
    let t = tau::automorphism(h, text)?;
    let check = verify_automorphism(h, &t)?;
    if let Some((v, e)) = check.violation {
        return Err(CliError::Input(format!(
            "--tau is not an automorphism: the coefficient of {v} in {e} is not carried over"
        )));
    }
    Ok(Some(t))
}

pub fn symmetries(c: &Common) -> Result<Outcome, CliError> {
    json_only(c, "symmetries")?;
    let h = load(c)?;
    let tau = load_tau(c, &h)?;
    let n = h.num_vertices();
    let pair = |i: usize, j: usize| [h.vertices()[i].clone(), h.vertices()[j].clone()];
    let relations = find_vertex_relations(&h)
        .into_iter()
        .map(|r| Relation {
            vertices: pair(r.pair.0, r.pair.1),
            kind: r.kind.name(),
            eigenvalue: forced_eigenvalue(r.kind),
        })
        .collect();
    let mut localized = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for mode in [LocalizedMode::SameSign, LocalizedMode::OppositeSign] {
                match localized_eigenpair(&h, i, j, mode) {
                    Ok(p) => localized.push(Localized {
                        vertices: pair(i, j),
                        mode: mode_name(mode),
                        eigenvalue: sig(p.lambda),
                    }),
                    Err(e) if e.is_numerical() => return Err(e.into()),
                    Err(_) => {}
                }
            }
        }
    }
    let involution = match &tau {
        None => None,
        Some(t) => {
            let split = involution_split(&h, t)?;
            let parts = symmetry_eigenspace_split(&h, t)?;
            let motif = Motif::induced(&h, &split.primary);
            let motif_eigenvalues = match duplicated_motif_eigenpairs(&h, t, &motif) {
                Ok(p) => Some(p.iter().map(|p| sig(p.lambda)).collect()),
                Err(e) if e.is_numerical() => return Err(e.into()),
                Err(_) => None,
            };
            Some(InvolutionReport {
                tau: tau::format_tau(&h, t),
                fixed: ids(&h, &split.fixed),
                primary: ids(&h, &split.primary),
                secondary: ids(&h, &split.secondary),
                primary_connected: split.primary_connected,
                twin_motif: twin_motif_kind(&h, &split).map(|k| k.name()),
                antisymmetric_spectrum: sigs(&parts.antisymmetric.eigenvalues),
                symmetric_spectrum: sigs(&parts.symmetric.eigenvalues),
                motif_eigenvalues,
            })
        }
    };
    let report = SymmetryReport {
        instance: instance(&h),
        relations,
        localized_eigenpairs: localized,
        constant_eigenvalue: constant_eigenvalue(&h).map(sig),
        involution,
    };
    Ok(done(c, json(&report)))
}

#[derive(Serialize)]
struct Mode {
    support: Vec<String>,
    flux: Vec<f64>,
}

#[derive(Serialize)]
struct KernelReport {
    instance: Instance,
    m_v: usize,
    m_h: usize,
    incidence_rank: usize,
    vertices: Vec<String>,
    hyperedges: Vec<String>,
    /// Orthonormal basis of the functions with `Lf = 0`, one row per function.
    harmonic_basis: Vec<Vec<f64>>,
    /// Orthonormal basis of the balanced flux distributions.
    flux_basis: Vec<Vec<f64>>,
    /// Support-minimal balanced fluxes; `None` when `M` exceeds the enumeration limit.
    elementary_modes: Option<Vec<Mode>>,
}

pub fn kernel(c: &Common) -> Result<Outcome, CliError> {
    json_only(c, "kernel")?;
    let h = load(c)?;
    let zeros = zero_multiplicities(&h)?;
    let m = h.num_hyperedges();
    let edge_ids: Vec<String> = h.hyperedges().iter().map(|e| e.id().to_owned()).collect();
    let modes = if m <= DEFAULT_MODE_LIMIT {
        Some(
            elementary_modes(&h, m)?
                .into_iter()
                .map(|f| Mode {
                    support: f.support.iter().map(|&j| edge_ids[j].clone()).collect(),
                    flux: f.gamma.values().iter().copied().map(sig).collect(),
                })
                .collect(),
        )
    } else {
        None
    };
    let report = KernelReport {
        instance: instance(&h),
        m_v: zeros.m_v,
        m_h: zeros.m_h,
        incidence_rank: zeros.incidence_rank,
        vertices: h.vertices().to_vec(),
        hyperedges: edge_ids.clone(),
        harmonic_basis: kernel_basis_vertices(&h)?
            .iter()
            .map(|f| f.values().iter().copied().map(sig).collect())
            .collect(),
        flux_basis: kernel_basis_hyperedges(&h)?
            .iter()
            .map(|f| f.gamma.values().iter().copied().map(sig).collect())
            .collect(),
        elementary_modes: modes,
    };
    Ok(done(c, json(&report)))
}

/// The quotient as a document (JSON) or its vertex spectrum (CSV).
pub fn quotient(c: &Common) -> Result<Outcome, CliError> {
    let h = load(c)?;
    let Some(t) = load_tau(c, &h)? else {
        return Err(CliError::Input("quotient needs --tau".to_owned()));
    };
    let q = quotient_hypergraph(&h, &t)?;
    match c.format {
        Format::Json => Ok(done(c, io::serialize(&q))),
        Format::Csv => {
            let tol = zero_tolerance(c, &q)?;
            let s = spectrum_vertex_with_tolerance(&q, tol)?;
            Ok(done(c, spectrum_csv(s.eigenvalues())))
        }
    }
}

#[derive(Serialize)]
struct CheckLine {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct CheckReport {
    instance: Instance,
    passed: bool,
    checks: Vec<CheckLine>,
}

pub fn check(c: &Common) -> Result<Outcome, CliError> {
    json_only(c, "check")?;
    let h = load(c)?;
    let tau = load_tau(c, &h)?;
    let results = audit(&h, tau.as_ref())?;
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("check failed: {}: {}", r.name, r.detail))
        .collect();
    let report = CheckReport {
        instance: instance(&h),
        passed: failed.is_empty(),
        checks: results
            .into_iter()
            .map(|r| CheckLine {
                name: r.name,
                passed: r.passed,
                detail: r.detail,
            })
            .collect(),
    };
    let mut out = done(c, json(&report));
    out.violation = !failed.is_empty();
    out.diagnostics = failed;
    Ok(out)
}

pub fn generate(a: &GenerateArgs) -> Result<Outcome, CliError> {
    if a.vertices == 0 || a.hyperedges == 0 {
        return Err(CliError::Input("--vertices and --hyperedges must be positive".to_owned()));
    }
    if a.min_cardinality == 0 || a.min_cardinality > a.max_cardinality {
        return Err(CliError::Input(
            "need 1 ≤ --min-cardinality ≤ --max-cardinality".to_owned(),
        ));
    }
    let (lo, hi) = (a.min_coefficient, a.max_coefficient);
    if !(lo.is_finite() && hi.is_finite() && lo <= hi && (lo != 0.0 || hi != 0.0)) {
        return Err(CliError::Input(
            "the coefficient range must be finite, ordered and contain a nonzero value".to_owned(),
        ));
    }
    let mut rng = seeded(a.seed);
    let config = RandomConfig {
        vertices: a.vertices..=a.vertices,
        hyperedges: a.hyperedges..=a.hyperedges,
        cardinality: a.min_cardinality..=a.max_cardinality,
        coefficients: lo..=hi,
    };
    let mut diagnostics = Vec::new();
    let h = match a.planted {
        None => random_hypergraph(&mut rng, &config),
        Some(Planted::Twins | Planted::AntiTwins | Planted::Duplicates) => {
            let base = random_hypergraph(&mut rng, &config);
            let (h, i, j) = match a.planted {
                Some(Planted::Duplicates) => plant_duplicate(&mut rng, &base),
                anti => plant_twin(&mut rng, &base, anti == Some(Planted::AntiTwins)),
            };
            diagnostics.push(format!("planted pair: {} {}", h.vertices()[i], h.vertices()[j]));
            h
        }
        Some(Planted::Bipartite) => {
            let card = a.max_cardinality.min(a.vertices);
            bipartite_uniform(&mut rng, a.vertices, a.hyperedges, card)
        }
        Some(Planted::Involution) => {
            let n1 = (a.vertices / 3).max(1);
            let n0 = a.vertices.saturating_sub(2 * n1);
            let (h, t) = planted_involution(&mut rng, n0, n1, a.hyperedges / 3);
            diagnostics.push(format!("tau: {}", tau::format_tau(&h, &t)));
            h
        }
    };
    Ok(Outcome {
        text: io::serialize(&h),
        violation: false,
        diagnostics,
        output: a.output.clone(),
    })
}
