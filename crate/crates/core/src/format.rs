//! Line-oriented text formats for algebras, arrows, complexes, chain maps and
//! dg algebras. `#` starts a comment; every file begins with a `FIELD` line.
//!
//! ```text
//! FIELD Q                      FIELD FP 5
//! DIM 2                        RANGE 0 1
//! MULT 0 0 1 1/2               DIMS 1 2
//! UNIT 1 0                     D 1 ; 1 2 ; 1 4
//! AUG 1 0                      MULT 1 ; 2 2 ; 0 0 ; 0 0
//! ```
//!
//! Matrix literals are `rows cols ; row ; row …`. Chain-map files put the
//! source and target complexes under `SOURCE` and `TARGET` headers, followed
//! by `MAP <n> ; <literal>` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{AugmentedAlgebra, NonUnitalAlgebra, UnitalAlgebra};
use crate::arrow::ArrowObject;
use crate::chain::{tensor_complex, ChainComplex, ChainMap, Degree};
use crate::dg::DGAlgebraNU;
use crate::error::{parse_err, Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Any parsed file, typed by the keywords it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    NonUnital(NonUnitalAlgebra),
    Unital(UnitalAlgebra),
    Augmented(AugmentedAlgebra),
    Arrows(Vec<ArrowObject>),
    Complex(ChainComplex),
    ChainMap(ChainMap),
    DGAlgebra(DGAlgebraNU),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::NonUnital(_) => "non-unital algebra",
            Document::Unital(_) => "unital algebra",
            Document::Augmented(_) => "augmented algebra",
            Document::Arrows(_) => "arrows",
            Document::Complex(_) => "chain complex",
            Document::ChainMap(_) => "chain map",
            Document::DGAlgebra(_) => "dg algebra",
        }
    }

    pub fn emit(&self) -> String {
        match self {
            Document::NonUnital(a) => emit_algebra(a, None, None),
            Document::Unital(a) => emit_algebra(&a.base, Some(&a.unit), None),
            Document::Augmented(b) => emit_augmented(b),
            Document::Arrows(arrows) => emit_arrows(arrows),
            Document::Complex(c) => emit_complex(c),
            Document::ChainMap(f) => emit_chain_map(f),
            Document::DGAlgebra(a) => emit_dg(a),
        }
    }
}

#[derive(Debug, Clone)]
struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                return None;
            }
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            Some(Line {
                number: i + 1,
                keyword,
                rest: rest.trim(),
            })
        })
        .collect()
}

fn parse_field(lines: &[Line]) -> Result<Field> {
    let first = match lines.first() {
        Some(l) if l.keyword == "FIELD" => l,
        _ => return Err(parse_err(1, "missing FIELD line")),
    };
    let toks: Vec<&str> = first.rest.split_whitespace().collect();
    match toks.as_slice() {
        ["Q"] => Ok(Field::Rationals),
        ["FP", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| parse_err(first.number, format!("bad characteristic `{p}`")))?;
            Field::prime(p).map_err(|e| parse_err(first.number, e.to_string()))
        }
        _ => Err(parse_err(first.number, "expected `FIELD Q` or `FIELD FP <p>`")),
    }
}

fn at(line: &Line, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => parse_err(line.number, other.to_string()),
    }
}

fn parse_usize(line: &Line, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line.number, format!("expected a non-negative integer, found `{tok}`")))
}

fn parse_degree(line: &Line, tok: &str) -> Result<Degree> {
    tok.trim()
        .parse()
        .map_err(|_| parse_err(line.number, format!("expected a degree, found `{}`", tok.trim())))
}

fn parse_scalars(field: Field, line: &Line, expected: usize) -> Result<Vec<Scalar>> {
    let toks: Vec<&str> = line.rest.split_whitespace().collect();
    if toks.len() != expected {
        return Err(parse_err(
            line.number,
            format!("{} expects {expected} scalars, found {}", line.keyword, toks.len()),
        ));
    }
    toks.iter()
        .map(|t| field.parse_scalar(t).map_err(|e| at(line, e)))
        .collect()
}

/// `<n> ; <matrix literal>`
fn parse_indexed_literal(field: Field, line: &Line) -> Result<(Degree, Matrix)> {
    let (n, literal) = line
        .rest
        .split_once(';')
        .ok_or_else(|| parse_err(line.number, format!("expected `{} <n> ; <matrix>`", line.keyword)))?;
    let n = parse_degree(line, n)?;
    let m = Matrix::parse_literal(field, literal).map_err(|e| at(line, e))?;
    Ok((n, m))
}

/// Parses any supported file, choosing the type from its keywords.
pub fn parse_document(text: &str) -> Result<Document> {
    let lines = significant_lines(text);
    let field = parse_field(&lines)?;
    let body = &lines[1..];
    let has = |k: &str| body.iter().any(|l| l.keyword == k);
    if has("SOURCE") || has("TARGET") || has("MAP") {
        return parse_chain_map_lines(field, body).map(Document::ChainMap);
    }
    if has("RANGE") {
        let dg = body.iter().any(|l| l.keyword == "MULT" && l.rest.contains(';'));
        return if dg {
            parse_dg_lines(field, body).map(Document::DGAlgebra)
        } else {
            parse_complex_lines(field, body, lines[0].number).map(Document::Complex)
        };
    }
    if has("ARROW") {
        return parse_arrow_lines(field, body).map(Document::Arrows);
    }
    parse_algebra_lines(field, body, lines[0].number)
}

fn parse_algebra_lines(field: Field, body: &[Line], header: usize) -> Result<Document> {
    let mut dim = None;
    let mut entries = Vec::new();
    let mut unit = None;
    let mut aug = None;
    for line in body {
        match line.keyword {
            "DIM" => {
                if dim.is_some() {
                    return Err(parse_err(line.number, "duplicate DIM line"));
                }
                dim = Some(parse_usize(line, line.rest)?);
            }
            "MULT" => {
                let n = dim.ok_or_else(|| parse_err(line.number, "MULT before DIM"))?;
                let toks: Vec<&str> = line.rest.split_whitespace().collect();
                if toks.len() != 4 {
                    return Err(parse_err(line.number, "expected `MULT i j k <scalar>`"));
                }
                let (i, j, k) = (parse_usize(line, toks[0])?, parse_usize(line, toks[1])?, parse_usize(line, toks[2])?);
                if i >= n || j >= n || k >= n {
                    return Err(parse_err(line.number, format!("index out of range for DIM {n}")));
                }
                let c = field.parse_scalar(toks[3]).map_err(|e| at(line, e))?;
                entries.push((i, j, k, c, line.number));
            }
            "UNIT" | "AUG" => {
                let n = dim.ok_or_else(|| parse_err(line.number, format!("{} before DIM", line.keyword)))?;
                let v = parse_scalars(field, line, n)?;
                let slot = if line.keyword == "UNIT" { &mut unit } else { &mut aug };
                if slot.is_some() {
                    return Err(parse_err(line.number, format!("duplicate {} line", line.keyword)));
                }
                *slot = Some((v, line.number));
            }
            other => return Err(parse_err(line.number, format!("unexpected keyword `{other}`"))),
        }
    }
    let dim = dim.ok_or_else(|| parse_err(header, "missing DIM line"))?;
    let base = NonUnitalAlgebra::new(field, dim, entries.into_iter().map(|(i, j, k, c, _)| (i, j, k, c)))
        .map_err(|e| parse_err(header, e.to_string()))?;
    match (unit, aug) {
        (None, None) => Ok(Document::NonUnital(base)),
        (Some((u, ln)), None) => UnitalAlgebra::new(base, u)
            .map(Document::Unital)
            .map_err(|e| parse_err(ln, e.to_string())),
        (Some((u, uln)), Some((e, eln))) => {
            let alg = UnitalAlgebra::new(base, u).map_err(|err| parse_err(uln, err.to_string()))?;
            AugmentedAlgebra::new(alg, e)
                .map(Document::Augmented)
                .map_err(|err| parse_err(eln, err.to_string()))
        }
        (None, Some((_, ln))) => Err(parse_err(ln, "AUG requires a UNIT line")),
    }
}

fn parse_arrow_lines(field: Field, body: &[Line]) -> Result<Vec<ArrowObject>> {
    let mut arrows = Vec::new();
    let mut iter = body.iter();
    while let Some(line) = iter.next() {
        if line.keyword != "ARROW" {
            return Err(parse_err(line.number, format!("expected ARROW, found `{}`", line.keyword)));
        }
        let literal_line;
        let literal = if line.rest.is_empty() {
            literal_line = iter
                .next()
                .ok_or_else(|| parse_err(line.number, "ARROW without a matrix literal"))?;
            format!("{} {}", literal_line.keyword, literal_line.rest)
        } else {
            literal_line = line;
            line.rest.to_string()
        };
        let m = Matrix::parse_literal(field, &literal).map_err(|e| at(literal_line, e))?;
        arrows.push(ArrowObject::new(m));
    }
    Ok(arrows)
}

fn parse_complex_lines(field: Field, body: &[Line], header: usize) -> Result<ChainComplex> {
    parse_complex_inner(field, body, header, false).map(|(c, _)| c)
}

/// `MULT` blocks by degree, with the line each was read from.
type MultBlocks = BTreeMap<Degree, (Matrix, usize)>;

/// Returns the complex and any `MULT n ; literal` blocks when `allow_mult`.
fn parse_complex_inner(
    field: Field,
    body: &[Line],
    header: usize,
    allow_mult: bool,
) -> Result<(ChainComplex, MultBlocks)> {
    let mut range = None;
    let mut dims = None;
    let mut diffs = BTreeMap::new();
    let mut mults = BTreeMap::new();
    for line in body {
        match line.keyword {
            "RANGE" => {
                let toks: Vec<&str> = line.rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(parse_err(line.number, "expected `RANGE lo hi`"));
                }
                let (lo, hi) = (parse_degree(line, toks[0])?, parse_degree(line, toks[1])?);
                if hi < lo {
                    return Err(parse_err(line.number, "RANGE needs lo <= hi"));
                }
                range = Some((lo, hi));
            }
            "DIMS" => {
                let (lo, hi) = range.ok_or_else(|| parse_err(line.number, "DIMS before RANGE"))?;
                let v = line
                    .rest
                    .split_whitespace()
                    .map(|t| parse_usize(line, t))
                    .collect::<Result<Vec<_>>>()?;
                if v.len() != (hi - lo + 1) as usize {
                    return Err(parse_err(line.number, format!("DIMS needs {} entries", hi - lo + 1)));
                }
                dims = Some(v);
            }
            "D" => {
                let (n, m) = parse_indexed_literal(field, line)?;
                if diffs.insert(n, (m, line.number)).is_some() {
                    return Err(parse_err(line.number, format!("duplicate differential d_{n}")));
                }
            }
            "MULT" if allow_mult => {
                let (n, m) = parse_indexed_literal(field, line)?;
                if mults.insert(n, (m, line.number)).is_some() {
                    return Err(parse_err(line.number, format!("duplicate MULT block {n}")));
                }
            }
            other => return Err(parse_err(line.number, format!("unexpected keyword `{other}`"))),
        }
    }
    let (lo, _) = range.ok_or_else(|| parse_err(header, "missing RANGE line"))?;
    let dims = dims.ok_or_else(|| parse_err(header, "missing DIMS line"))?;
    // Validate each differential separately so errors point at their line.
    for (n, (m, ln)) in &diffs {
        let single: BTreeMap<Degree, Matrix> = [(*n, m.clone())].into_iter().collect();
        ChainComplex::new_unchecked(field, lo, dims.clone(), single).map_err(|e| parse_err(*ln, e.to_string()))?;
    }
    let first = diffs.values().map(|(_, ln)| *ln).min().unwrap_or(header);
    let complex = ChainComplex::new(field, lo, dims, diffs.into_iter().map(|(n, (m, _))| (n, m)).collect())
        .map_err(|e| parse_err(first, e.to_string()))?;
    Ok((complex, mults))
}

fn parse_dg_lines(field: Field, body: &[Line]) -> Result<DGAlgebraNU> {
    let header = body.first().map(|l| l.number).unwrap_or(1);
    let (carrier, mults) = parse_complex_inner(field, body, header, true)?;
    let square = tensor_complex(&carrier, &carrier)?;
    for (n, (m, ln)) in &mults {
        if m.rows() != carrier.dim(*n) || m.cols() != square.dim(*n) {
            return Err(parse_err(
                *ln,
                format!("MULT {n} must be {}x{}", carrier.dim(*n), square.dim(*n)),
            ));
        }
    }
    let first = mults.values().map(|(_, ln)| *ln).min().unwrap_or(header);
    let comps = mults.into_iter().map(|(n, (m, _))| (n, m)).collect();
    let mult = ChainMap::new(square, carrier.clone(), comps).map_err(|e| parse_err(first, e.to_string()))?;
    Ok(DGAlgebraNU::new_unchecked(carrier, mult))
}

fn parse_chain_map_lines(field: Field, body: &[Line]) -> Result<ChainMap> {
    let pos = |k: &str| body.iter().position(|l| l.keyword == k);
    let (s, t) = match (pos("SOURCE"), pos("TARGET")) {
        (Some(s), Some(t)) if s < t => (s, t),
        _ => {
            let ln = body.first().map(|l| l.number).unwrap_or(1);
            return Err(parse_err(ln, "chain-map files need SOURCE then TARGET sections"));
        }
    };
    if s != 0 {
        return Err(parse_err(body[0].number, "expected SOURCE after FIELD"));
    }
    let maps_at = body[t + 1..]
        .iter()
        .position(|l| l.keyword == "MAP")
        .map(|i| i + t + 1)
        .unwrap_or(body.len());
    let src = parse_complex_lines(field, &body[s + 1..t], body[s].number)?;
    let dst = parse_complex_lines(field, &body[t + 1..maps_at], body[t].number)?;
    let mut comps = BTreeMap::new();
    let mut first = None;
    for line in &body[maps_at..] {
        if line.keyword != "MAP" {
            return Err(parse_err(line.number, format!("expected MAP, found `{}`", line.keyword)));
        }
        let (n, m) = parse_indexed_literal(field, line)?;
        if m.rows() != dst.dim(n) || m.cols() != src.dim(n) {
            return Err(parse_err(line.number, format!("MAP {n} must be {}x{}", dst.dim(n), src.dim(n))));
        }
        first.get_or_insert(line.number);
        comps.insert(n, m);
    }
    ChainMap::new(src, dst, comps).map_err(|e| parse_err(first.unwrap_or(body[t].number), e.to_string()))
}

pub fn parse_algebra_file(text: &str) -> Result<Document> {
    match parse_document(text)? {
        d @ (Document::NonUnital(_) | Document::Unital(_) | Document::Augmented(_)) => Ok(d),
        other => Err(parse_err(1, format!("expected an algebra file, found {}", other.kind()))),
    }
}

pub fn parse_complex_file(text: &str) -> Result<ChainComplex> {
    match parse_document(text)? {
        Document::Complex(c) => Ok(c),
        other => Err(parse_err(1, format!("expected a complex file, found {}", other.kind()))),
    }
}

pub fn parse_chain_map_file(text: &str) -> Result<ChainMap> {
    match parse_document(text)? {
        Document::ChainMap(f) => Ok(f),
        other => Err(parse_err(1, format!("expected a chain-map file, found {}", other.kind()))),
    }
}

pub fn parse_dg_file(text: &str) -> Result<DGAlgebraNU> {
    match parse_document(text)? {
        Document::DGAlgebra(a) => Ok(a),
        // A complex without MULT blocks is a dg algebra with zero product.
        Document::Complex(c) => Ok(DGAlgebraNU::zero_mult(c)),
        other => Err(parse_err(1, format!("expected a dg-algebra file, found {}", other.kind()))),
    }
}

pub fn parse_arrow_file(text: &str) -> Result<Vec<ArrowObject>> {
    match parse_document(text)? {
        Document::Arrows(a) => Ok(a),
        other => Err(parse_err(1, format!("expected an arrow file, found {}", other.kind()))),
    }
}

fn field_line(field: Field) -> String {
    match field {
        Field::Rationals => "FIELD Q\n".into(),
        Field::PrimeField(p) => format!("FIELD FP {p}\n"),
    }
}

fn scalars(field: Field, v: &[Scalar]) -> String {
    v.iter().map(|x| field.format_scalar(x)).collect::<Vec<_>>().join(" ")
}

fn emit_algebra(a: &NonUnitalAlgebra, unit: Option<&[Scalar]>, aug: Option<&[Scalar]>) -> String {
    let field = a.field();
    let mut out = field_line(field);
    writeln!(out, "DIM {}", a.dim()).unwrap();
    for (i, j, k, c) in a.structure_constants() {
        writeln!(out, "MULT {i} {j} {k} {}", field.format_scalar(c)).unwrap();
    }
    if let Some(u) = unit {
        writeln!(out, "UNIT {}", scalars(field, u)).unwrap();
    }
    if let Some(e) = aug {
        writeln!(out, "AUG {}", scalars(field, e)).unwrap();
    }
    out
}

pub fn emit_nonunital(a: &NonUnitalAlgebra) -> String {
    emit_algebra(a, None, None)
}

pub fn emit_augmented(b: &AugmentedAlgebra) -> String {
    emit_algebra(b.base(), Some(&b.alg.unit), Some(&b.eps))
}

pub fn emit_arrows(arrows: &[ArrowObject]) -> String {
    let field = arrows.first().map(|a| a.field()).unwrap_or(Field::Rationals);
    let mut out = field_line(field);
    for a in arrows {
        writeln!(out, "ARROW\n{}", a.map()).unwrap();
    }
    out
}

fn complex_body(c: &ChainComplex) -> String {
    let mut out = String::new();
    writeln!(out, "RANGE {} {}", c.lo(), c.hi()).unwrap();
    let dims: Vec<String> = c.degrees().map(|n| c.dim(n).to_string()).collect();
    writeln!(out, "DIMS {}", dims.join(" ")).unwrap();
    for n in c.degrees() {
        let d = c.d(n);
        if !d.is_zero() {
            writeln!(out, "D {n} ; {d}").unwrap();
        }
    }
    out
}

pub fn emit_complex(c: &ChainComplex) -> String {
    field_line(c.field()) + &complex_body(c)
}

pub fn emit_chain_map(f: &ChainMap) -> String {
    let mut out = field_line(f.field());
    out.push_str("SOURCE\n");
    out.push_str(&complex_body(&f.src));
    out.push_str("TARGET\n");
    out.push_str(&complex_body(&f.dst));
    for n in f.degrees() {
        let m = f.component(n);
        if !m.is_zero() {
            writeln!(out, "MAP {n} ; {m}").unwrap();
        }
    }
    out
}

/// Emits one `MULT` block per degree of `C ⊗ C`, zero or not, so that the
/// file is recognizable as a dg algebra.
pub fn emit_dg(a: &DGAlgebraNU) -> String {
    let mut out = emit_complex(&a.carrier);
    for n in a.mult.src.degrees() {
        writeln!(out, "MULT {n} ; {}", a.mult.component(n)).unwrap();
    }
    out
}
