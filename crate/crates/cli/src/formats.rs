//! Plain-text file formats and the witness output writer.
//!
//! Three input formats, all line-oriented, `#` starting a comment line,
//! whitespace-separated fields, `.` as the radix point:
//!
//! - distance matrix: header `n <count>`, then `count` rows of `count` reals;
//! - point cloud: header `points <count> <dim> <norm>` with norm one of
//!   `l1`, `l2`, `linf`, then `count` rows of `dim` coordinates;
//! - mapping: header `map <domainSize> <codomainSize>`, then `domainSize`
//!   lines each holding one zero-based target index.
//!
//! Target subsets for `--target` are a bare whitespace-separated list of
//! zero-based indices.
//!
//! Reals are written with 17 significant digits (`{:.16e}`), which
//! round-trips `f64` exactly, so parse → serialize → parse is the identity
//! and equal inputs produce byte-identical outputs.

use std::fmt::Write as _;

use ghkit::{GhResult, GhWitness, Mapping, MetricSpace, Norm, PipelineResult};

/// A parse failure with a line number (1-based) and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Significant lines of a file: (1-based line number, trimmed content),
/// comments and blanks skipped.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_real(line: usize, token: &str) -> Result<f64, ParseError> {
    token.parse::<f64>().map_err(|_| ParseError {
        line,
        message: format!("expected a real number, got `{token}`"),
    })
}

fn parse_count(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| ParseError {
        line,
        message: format!("expected a count, got `{token}`"),
    })
}

/// Formats a real with 17 significant digits.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

// ---------------------------------------------------------------------------
// Distance matrix files
// ---------------------------------------------------------------------------

pub fn parse_space(text: &str) -> Result<MetricSpace<f64>, ParseError> {
    let mut lines = significant_lines(text);
    let Some((ln, header)) = lines.next() else {
        return fail(1, "empty file; expected `n <count>`");
    };
    let mut fields = header.split_whitespace();
    if fields.next() != Some("n") {
        return fail(ln, "expected header `n <count>`");
    }
    let n = parse_count(ln, fields.next().unwrap_or(""))?;
    if fields.next().is_some() {
        return fail(ln, "trailing fields after `n <count>`");
    }
    if n == 0 {
        return fail(ln, "a space needs at least one point");
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((ln, row)) = lines.next() else {
            return fail(ln, format!("expected {n} matrix rows"));
        };
        let entries: Vec<f64> = row
            .split_whitespace()
            .map(|t| parse_real(ln, t))
            .collect::<Result<_, _>>()?;
        if entries.len() != n {
            return fail(ln, format!("expected {n} entries, got {}", entries.len()));
        }
        rows.push(entries);
    }
    if let Some((ln, _)) = lines.next() {
        return fail(ln, "unexpected content after the matrix");
    }
    MetricSpace::from_rows(rows).map_err(|e| ParseError {
        line: 1,
        message: e.to_string(),
    })
}

pub fn serialize_space(space: &MetricSpace<f64>) -> String {
    let n = space.size();
    let mut out = format!("n {n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| fmt_real(space.dist(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Point cloud files
// ---------------------------------------------------------------------------

/// A parsed point cloud; the induced matrix is always a valid metric.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub norm: Norm,
    pub points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn to_space(&self) -> MetricSpace<f64> {
        MetricSpace::from_points(&self.points, self.norm).expect("rows are uniform and nonempty")
    }
}

fn norm_name(norm: Norm) -> &'static str {
    match norm {
        Norm::L1 => "l1",
        Norm::L2 => "l2",
        Norm::Linf => "linf",
    }
}

pub fn parse_points(text: &str) -> Result<PointCloud, ParseError> {
    let mut lines = significant_lines(text);
    let Some((ln, header)) = lines.next() else {
        return fail(1, "empty file; expected `points <count> <dim> <norm>`");
    };
    let mut fields = header.split_whitespace();
    if fields.next() != Some("points") {
        return fail(ln, "expected header `points <count> <dim> <norm>`");
    }
    let count = parse_count(ln, fields.next().unwrap_or(""))?;
    let dim = parse_count(ln, fields.next().unwrap_or(""))?;
    let norm = match fields.next() {
        Some("l1") => Norm::L1,
        Some("l2") => Norm::L2,
        Some("linf") => Norm::Linf,
        other => return fail(ln, format!("unknown norm `{}`", other.unwrap_or(""))),
    };
    if fields.next().is_some() {
        return fail(ln, "trailing fields after the header");
    }
    if count == 0 {
        return fail(ln, "a point cloud needs at least one point");
    }
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let Some((ln, row)) = lines.next() else {
            return fail(ln, format!("expected {count} coordinate rows"));
        };
        let coords: Vec<f64> = row
            .split_whitespace()
            .map(|t| parse_real(ln, t))
            .collect::<Result<_, _>>()?;
        if coords.len() != dim {
            return fail(
                ln,
                format!("expected {dim} coordinates, got {}", coords.len()),
            );
        }
        points.push(coords);
    }
    if let Some((ln, _)) = lines.next() {
        return fail(ln, "unexpected content after the points");
    }
    Ok(PointCloud { norm, points })
}

pub fn serialize_points(cloud: &PointCloud) -> String {
    let dim = cloud.points.first().map_or(0, Vec::len);
    let mut out = format!(
        "points {} {} {}\n",
        cloud.points.len(),
        dim,
        norm_name(cloud.norm)
    );
    for p in &cloud.points {
        let row: Vec<String> = p.iter().map(|&c| fmt_real(c)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Loads a space from either format, deciding by the header keyword.
pub fn parse_space_auto(text: &str) -> Result<MetricSpace<f64>, ParseError> {
    match significant_lines(text).next() {
        Some((_, l)) if l.starts_with("points") => Ok(parse_points(text)?.to_space()),
        _ => parse_space(text),
    }
}

// ---------------------------------------------------------------------------
// Mapping files
// ---------------------------------------------------------------------------

pub fn parse_mapping(text: &str) -> Result<Mapping, ParseError> {
    let mut lines = significant_lines(text);
    let Some((ln, header)) = lines.next() else {
        return fail(1, "empty file; expected `map <domainSize> <codomainSize>`");
    };
    let mut fields = header.split_whitespace();
    if fields.next() != Some("map") {
        return fail(ln, "expected header `map <domainSize> <codomainSize>`");
    }
    let domain = parse_count(ln, fields.next().unwrap_or(""))?;
    let codomain = parse_count(ln, fields.next().unwrap_or(""))?;
    if fields.next().is_some() {
        return fail(ln, "trailing fields after the header");
    }
    let mut image = Vec::with_capacity(domain);
    for _ in 0..domain {
        let Some((ln, row)) = lines.next() else {
            return fail(ln, format!("expected {domain} target lines"));
        };
        let mut fields = row.split_whitespace();
        let target = parse_count(ln, fields.next().unwrap_or(""))?;
        if fields.next().is_some() {
            return fail(ln, "expected one index per line");
        }
        image.push(target);
    }
    if let Some((ln, _)) = lines.next() {
        return fail(ln, "unexpected content after the mapping");
    }
    Mapping::new(domain, codomain, image).map_err(|e| ParseError {
        line: 1,
        message: e.to_string(),
    })
}

pub fn serialize_mapping(map: &Mapping) -> String {
    let mut out = format!("map {} {}\n", map.domain_size(), map.codomain_size());
    for &t in map.image() {
        let _ = writeln!(out, "{t}");
    }
    out
}

// ---------------------------------------------------------------------------
// Index lists (targets)
// ---------------------------------------------------------------------------

pub fn parse_indices(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in significant_lines(text) {
        for token in line.split_whitespace() {
            out.push(parse_count(ln, token)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Witness output
// ---------------------------------------------------------------------------

/// Serializes a search result: value, method, node count, and the canonical
/// sorted pair list of the witness.
pub fn write_gh_result(result: &GhResult<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "value {}", fmt_real(result.value));
    let _ = writeln!(out, "method {}", result.method.name());
    let _ = writeln!(out, "nodes {}", result.nodes_explored);
    out.push_str("witness\n");
    for (i, j) in result.witness.pair_list() {
        let _ = writeln!(out, "{i} {j}");
    }
    if let GhWitness::MappingPair { f, g } = &result.witness {
        out.push_str("map-f\n");
        for &t in f.image() {
            let _ = writeln!(out, "{t}");
        }
        out.push_str("map-g\n");
        for &t in g.image() {
            let _ = writeln!(out, "{t}");
        }
    }
    out
}

fn write_flag_line(out: &mut String, label: &str, flags: &[bool]) {
    out.push_str(label);
    for (i, &set) in flags.iter().enumerate() {
        if set {
            let _ = write!(out, " {i}");
        }
    }
    out.push('\n');
}

/// Serializes a construction certificate. `value` is half the constructed
/// bijection's distortion (distance units); `bound` is the distortion-scale
/// guarantee it is checked against. `pair_targets` maps the bijection's
/// codomain indices back to the presented space when the construction ran
/// into a subspace.
pub fn write_certificate(
    cert: &ghkit::BijectionCertificate<f64>,
    dis_tilde: f64,
    bound: f64,
    pair_targets: Option<&[usize]>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "value {}", fmt_real(0.5 * dis_tilde));
    out.push_str("method construction\n");
    let _ = writeln!(out, "nodes {}", cert.trace.len());
    out.push_str("witness\n");
    for (x, y) in cert.f_tilde.graph() {
        let y = pair_targets.map_or(y, |t| t[y]);
        let _ = writeln!(out, "{x} {y}");
    }
    write_flag_line(&mut out, "classI", &cert.class_i);
    write_flag_line(&mut out, "classII", &cert.class_ii);
    let _ = writeln!(out, "disTilde {}", fmt_real(dis_tilde));
    let _ = writeln!(out, "bound {}", fmt_real(bound));
    out
}

/// Serializes a pipeline result: the certificate block followed by the
/// pipeline quantities.
pub fn write_pipeline(result: &PipelineResult<f64>) -> String {
    let targets: Option<Vec<usize>> = result.target.as_ref().map(|t| t.members().to_vec());
    let mut out = write_certificate(
        &result.certificate,
        result.dis_tilde,
        result.guarantee_bound,
        targets.as_deref(),
    );
    let _ = writeln!(out, "disF {}", fmt_real(result.dis_f));
    let _ = writeln!(out, "deltaEff {}", fmt_real(result.delta_eff));
    let _ = writeln!(out, "rho {}", fmt_real(result.rho));
    let _ = writeln!(out, "eps {}", fmt_real(result.eps));
    out
}
