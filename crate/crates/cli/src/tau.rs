//! The `--tau` argument: `VERTEX_PAIRS[;HYPEREDGE_PAIRS]`, each a comma-separated
//! list of `a=b` transpositions, e.g. `v1=v3;h1=h2`. Vertices and hyperedges not
//! named are fixed. Signs `s(v)` are read off the coefficients.

use hyperlap::symmetry::Automorphism;
use hyperlap::Hypergraph;

use crate::CliError;

type Pairs = Vec<(String, String)>;

pub fn parse_tau(text: &str) -> Result<(Pairs, Pairs), CliError> {
    let mut sections = text.split(';');
    let vertices = pairs(sections.next().unwrap_or(""))?;
    let hyperedges = pairs(sections.next().unwrap_or(""))?;
    if sections.next().is_some() {
        return Err(CliError::Input(format!(
            "--tau has more than two ';'-separated sections: {text:?}"
        )));
    }
    Ok((vertices, hyperedges))
}

fn pairs(section: &str) -> Result<Pairs, CliError> {
    section
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| match p.split_once('=') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                Ok((a.trim().to_owned(), b.trim().to_owned()))
            }
            _ => Err(CliError::Input(format!("--tau pair {p:?} is not of the form a=b"))),
        })
        .collect()
}

/// Builds the involution and rejects anything that is not one.
pub fn automorphism(h: &Hypergraph, text: &str) -> Result<Automorphism, CliError> {
    let (vs, hs) = parse_tau(text)?;
    for (a, b) in vs.iter().chain(&hs) {
        if a == b {
            return Err(CliError::Input(format!("--tau swaps {a} with itself")));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for id in vs.iter().flat_map(|(a, b)| [a, b]) {
        if !seen.insert(("v", id)) {
            return Err(CliError::Input(format!("--tau moves vertex {id} twice")));
        }
    }
    for id in hs.iter().flat_map(|(a, b)| [a, b]) {
        if !seen.insert(("h", id)) {
            return Err(CliError::Input(format!("--tau moves hyperedge {id} twice")));
        }
    }
    Ok(Automorphism::from_swaps(h, &vs, &hs)?)
}

/// The `--tau` text for an involution, the inverse of [`automorphism`].
pub fn format_tau(h: &Hypergraph, tau: &Automorphism) -> String {
    let swaps = |perm: &[usize], ids: &dyn Fn(usize) -> String| {
        (0..perm.len())
            .filter(|&i| perm[i] > i)
            .map(|i| format!("{}={}", ids(i), ids(perm[i])))
            .collect::<Vec<_>>()
            .join(",")
    };
    let v = swaps(tau.vertex_perm(), &|i| h.vertices()[i].clone());
    let e = swaps(tau.hyperedge_perm(), &|j| h.hyperedge(j).id().to_owned());
    format!("{v};{e}")
}
