//! Plain-text input formats. Blank lines and lines starting with `#` are
//! skipped everywhere; reported line numbers are 1-based.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::complexes::{Ear, EarDecomposition, SimplicialComplex, SphereFactor};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::oseq::{Monomial, MonomialSet};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn label(line: usize, tok: &str) -> Result<u32> {
    match tok.parse::<u32>() {
        Ok(0) => Err(Error::parse(line, "vertex labels must be positive")),
        Ok(v) => Ok(v),
        Err(_) => Err(Error::parse(line, format!("bad vertex label {tok:?}"))),
    }
}

/// One facet (or basis) per line as space-separated positive integers.
pub fn parse_facet_list(text: &str) -> Result<Vec<Vec<u32>>> {
    content_lines(text)
        .map(|(n, l)| l.split_whitespace().map(|t| label(n, t)).collect())
        .collect()
}

pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let facets = parse_facet_list(text)?;
    if facets.is_empty() {
        return Err(Error::EmptyComplex);
    }
    SimplicialComplex::new(facets)
}

fn scalar(line: usize, tok: &str) -> Result<BigRational> {
    let bad = || Error::parse(line, format!("bad matrix entry {tok:?}"));
    let int = |s: &str| s.parse::<BigInt>().map_err(|_| bad());
    match tok.split_once('/') {
        None => Ok(BigRational::from_integer(int(tok)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(Error::parse(line, "zero denominator"));
            }
            Ok(BigRational::new(int(p)?, q))
        }
    }
}

/// One row per line; entries separated by tabs or spaces, each an integer
/// or a fraction `p/q`.
pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (n, l) in content_lines(text) {
        let row = l.split_whitespace().map(|t| scalar(n, t)).collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::parse(n, format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows)
}

fn header_field(line: usize, tok: Option<&str>, key: &str) -> Result<usize> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(line, format!("header must be `vars=<n> k=<d>`, missing {key}")))
}

/// Header `vars=<n> k=<d>`, then one generator per line as `n` exponents.
pub fn parse_monomials(text: &str) -> Result<MonomialSet> {
    let mut lines = content_lines(text);
    let Some((hn, header)) = lines.next() else {
        return Err(Error::parse(0, "missing header `vars=<n> k=<d>`"));
    };
    let mut toks = header.split_whitespace();
    let vars = header_field(hn, toks.next(), "vars")?;
    let k = header_field(hn, toks.next(), "k")?;
    if toks.next().is_some() {
        return Err(Error::parse(hn, "trailing text after header"));
    }
    let mut gens = Vec::new();
    for (n, l) in lines {
        let exps = l
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| Error::parse(n, format!("bad exponent {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if exps.len() != vars {
            return Err(Error::parse(n, format!("{} exponents for {} variables", exps.len(), vars)));
        }
        let m = Monomial(exps);
        if m.degree() != k {
            return Err(Error::parse(n, format!("degree {} differs from k={}", m.degree(), k)));
        }
        gens.push(m);
    }
    MonomialSet::new(vars, k, gens)
}

fn vertex_list(line: usize, text: &str) -> Result<Vec<u32>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| label(line, t.trim())).collect()
}

fn sphere_factor(line: usize, tok: &str) -> Result<SphereFactor> {
    let (size, verts) =
        tok.split_once(':').ok_or_else(|| Error::parse(line, format!("expected <size>:<v,...>, got {tok:?}")))?;
    let size: usize = size.parse().map_err(|_| Error::parse(line, format!("bad factor size {size:?}")))?;
    let vertices = vertex_list(line, verts)?;
    if vertices.len() != size {
        return Err(Error::parse(line, format!("factor lists {} vertices, size says {}", vertices.len(), size)));
    }
    Ok(SphereFactor { vertices })
}

/// Ear 0 as `S <size>:<v,...> ...`; later ears as
/// `B [<v,...>] <size>:<v,...> ...`. A bare `B [<v,...>]` has no sphere
/// factors.
pub fn parse_ears(text: &str) -> Result<EarDecomposition> {
    let mut ears = Vec::new();
    for (n, l) in content_lines(text) {
        let kind = l.chars().next().expect("content lines are nonempty");
        let rest = l[kind.len_utf8()..].trim_start();
        let ear = match kind {
            'S' => Ear::Sphere(rest.split_whitespace().map(|t| sphere_factor(n, t)).collect::<Result<_>>()?),
            'B' => {
                let inner = rest.strip_prefix('[').ok_or_else(|| Error::parse(n, "ball needs a [simplex] factor"))?;
                let (simplex, tail) = inner.split_once(']').ok_or_else(|| Error::parse(n, "unclosed ["))?;
                Ear::Ball {
                    simplex: vertex_list(n, simplex.trim())?,
                    sphere: tail.split_whitespace().map(|t| sphere_factor(n, t)).collect::<Result<_>>()?,
                }
            }
            _ => return Err(Error::parse(n, "ear lines start with S or B")),
        };
        ears.push(ear);
    }
    Ok(EarDecomposition { ears })
}

/// Comma-separated integers, e.g. `1,3,3,1`.
pub fn parse_h(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse(1, "empty sequence"));
    }
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::parse(1, format!("bad entry {:?}", t.trim()))))
        .collect()
}
