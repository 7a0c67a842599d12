//! Exact serialization: JSON files and line-oriented text for series,
//! elements, tensors, cell diagrams, and partitions, with fraction
//! strings throughout.  Emitted output is canonical and round-trips.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bialgebra::{PElement, PMonomial, PTensor};
use crate::lambda::{PartitionVector, VectorMultiset};
use crate::series::{autiv_rational, Rational, SeriesError, TruncatedSeries};
use crate::setmodel::{FinSurjection, SetModelError, SetPartition, T1Cell};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Model(#[from] SetModelError),
}

fn format_err(message: impl Into<String>) -> IoError {
    IoError::Format(message.into())
}

/// "p/q", or just "p" for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let s = s.trim();
    let (numer_text, denom_text) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| format_err(format!("bad numerator in fraction {s:?}")))?;
    let denom: BigInt = denom_text
        .parse()
        .map_err(|_| format_err(format!("bad denominator in fraction {s:?}")))?;
    if denom.is_zero() {
        return Err(format_err(format!("zero denominator in fraction {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

#[derive(Serialize, Deserialize)]
struct SeriesFileTerm {
    lambda: Vec<u64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesFile {
    truncation: u64,
    normalization: String,
    terms: Vec<SeriesFileTerm>,
}

/// Canonical series JSON: terms in vector order, f-normalized
/// coefficients.
pub fn series_to_json(series: &TruncatedSeries) -> String {
    let file = SeriesFile {
        truncation: series.truncation(),
        normalization: "f".into(),
        terms: series
            .raw_terms()
            .map(|(v, c)| SeriesFileTerm {
                lambda: v.to_dense(),
                coeff: format_rational(&(autiv_rational(v) * c)),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("series files serialize")
}

/// Accepts both the emitted "f" normalization and "raw" coefficients.
pub fn series_from_json(text: &str) -> Result<TruncatedSeries, IoError> {
    let file: SeriesFile = serde_json::from_str(text)?;
    let raw = match file.normalization.as_str() {
        "f" => false,
        "raw" => true,
        other => return Err(format_err(format!("unknown normalization {other:?}"))),
    };
    let mut terms = Vec::with_capacity(file.terms.len());
    for term in &file.terms {
        let v = PartitionVector::from_dense(&term.lambda);
        if v.weight() > file.truncation {
            return Err(format_err(format!(
                "term {v} is heavier than the declared truncation {}",
                file.truncation
            )));
        }
        let mut c = parse_rational(&term.coeff)?;
        if !raw {
            c /= autiv_rational(&v);
        }
        terms.push((v, c));
    }
    Ok(TruncatedSeries::from_raw_terms(terms, file.truncation))
}

pub fn series_to_text(series: &TruncatedSeries) -> String {
    let mut out = format!("truncation {}\n", series.truncation());
    for (v, c) in series.raw_terms() {
        out.push_str(&format!(
            "f({v}) = {}\n",
            format_rational(&(autiv_rational(v) * c))
        ));
    }
    out
}

pub fn series_from_text(text: &str) -> Result<TruncatedSeries, IoError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| format_err("empty series text"))?;
    let truncation: u64 = header
        .strip_prefix("truncation ")
        .and_then(|w| w.trim().parse().ok())
        .ok_or_else(|| format_err(format!("bad series header {header:?}")))?;
    let mut terms = Vec::new();
    for line in lines {
        let body = line
            .strip_prefix("f(")
            .ok_or_else(|| format_err(format!("bad series line {line:?}")))?;
        let (vector_text, rest) = body
            .split_once(')')
            .ok_or_else(|| format_err(format!("bad series line {line:?}")))?;
        let coeff_text = rest
            .trim()
            .strip_prefix('=')
            .ok_or_else(|| format_err(format!("bad series line {line:?}")))?;
        let v: PartitionVector = vector_text
            .parse()
            .map_err(|e| format_err(format!("{e}")))?;
        if v.weight() > truncation {
            return Err(format_err(format!(
                "term {v} is heavier than the declared truncation {truncation}"
            )));
        }
        let c = parse_rational(coeff_text)? / autiv_rational(&v);
        terms.push((v, c));
    }
    Ok(TruncatedSeries::from_raw_terms(terms, truncation))
}

fn monomial_to_dense(m: &PMonomial) -> Vec<Vec<u64>> {
    m.expand().iter().map(|v| v.to_dense()).collect()
}

fn monomial_from_dense(dense: &[Vec<u64>]) -> Result<PMonomial, IoError> {
    let mut out = PMonomial::new();
    for entry in dense {
        let v = PartitionVector::from_dense(entry);
        if v.is_zero() {
            return Err(format_err("zero vector inside a monomial"));
        }
        out.insert(v);
    }
    Ok(out)
}

/// "A(1)*A(0,1)^2", or "1" for the empty monomial.
pub fn monomial_to_text(m: &PMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.counts()
        .map(|(v, mult)| {
            if mult == 1 {
                format!("A({v})")
            } else {
                format!("A({v})^{mult}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn monomial_from_text(text: &str) -> Result<PMonomial, IoError> {
    let text = text.trim();
    if text == "1" {
        return Ok(PMonomial::new());
    }
    let mut out = PMonomial::new();
    for factor in text.split('*') {
        let body = factor
            .trim()
            .strip_prefix("A(")
            .ok_or_else(|| format_err(format!("bad monomial factor {factor:?}")))?;
        let (vector_text, rest) = body
            .split_once(')')
            .ok_or_else(|| format_err(format!("bad monomial factor {factor:?}")))?;
        let mult: u64 = match rest.trim() {
            "" => 1,
            exp => exp
                .strip_prefix('^')
                .and_then(|e| e.parse().ok())
                .ok_or_else(|| format_err(format!("bad exponent in {factor:?}")))?,
        };
        let v: PartitionVector = vector_text
            .parse()
            .map_err(|e| format_err(format!("{e}")))?;
        if v.is_zero() {
            return Err(format_err("zero vector inside a monomial"));
        }
        out.insert_many(v, mult);
    }
    Ok(out)
}

/// "{(1),(0,1)}" with entries in canonical order.
pub fn multiset_to_text(m: &VectorMultiset) -> String {
    let entries: Vec<String> = m.expand().iter().map(|v| format!("({v})")).collect();
    format!("{{{}}}", entries.join(","))
}

pub fn multiset_from_text(text: &str) -> Result<VectorMultiset, IoError> {
    let text = text.trim();
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format_err(format!("multiset {text:?} is not brace-delimited")))?;
    let mut out = VectorMultiset::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format_err(format!("bad multiset entry near {rest:?}")))?;
        let (vector_text, tail) = body
            .split_once(')')
            .ok_or_else(|| format_err(format!("unterminated entry near {rest:?}")))?;
        let v: PartitionVector = vector_text
            .parse()
            .map_err(|e| format_err(format!("{e}")))?;
        if v.is_zero() {
            return Err(format_err("zero vector inside a multiset"));
        }
        out.insert(v);
        rest = tail.trim();
        if let Some(t) = rest.strip_prefix(',') {
            rest = t.trim();
        } else if !rest.is_empty() {
            return Err(format_err(format!("expected a comma near {rest:?}")));
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct ElementFileTerm {
    monomial: Vec<Vec<u64>>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementFile {
    terms: Vec<ElementFileTerm>,
}

pub fn element_to_json(x: &PElement) -> String {
    let file = ElementFile {
        terms: x
            .terms()
            .map(|(m, c)| ElementFileTerm {
                monomial: monomial_to_dense(m),
                coeff: format_rational(c),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("element files serialize")
}

pub fn element_from_json(text: &str) -> Result<PElement, IoError> {
    let file: ElementFile = serde_json::from_str(text)?;
    let mut out = PElement::zero();
    for term in &file.terms {
        out.accumulate(monomial_from_dense(&term.monomial)?, parse_rational(&term.coeff)?);
    }
    Ok(out)
}

pub fn element_to_text(x: &PElement) -> String {
    let mut out = String::new();
    for (m, c) in x.terms() {
        out.push_str(&format!("{} * {}\n", format_rational(c), monomial_to_text(m)));
    }
    out
}

pub fn element_from_text(text: &str) -> Result<PElement, IoError> {
    let mut out = PElement::zero();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (coeff_text, monomial_text) = line
            .split_once(" * ")
            .ok_or_else(|| format_err(format!("bad element line {line:?}")))?;
        out.accumulate(monomial_from_text(monomial_text)?, parse_rational(coeff_text)?);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TensorFileTerm {
    left: Vec<Vec<u64>>,
    right: Vec<Vec<u64>>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    terms: Vec<TensorFileTerm>,
}

/// Canonical tensor JSON, terms ordered right leg first.
pub fn tensor_to_json(t: &PTensor) -> String {
    let file = TensorFile {
        terms: t
            .terms_right_major()
            .into_iter()
            .map(|(l, r, c)| TensorFileTerm {
                left: monomial_to_dense(l),
                right: monomial_to_dense(r),
                coeff: format_rational(c),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("tensor files serialize")
}

pub fn tensor_from_json(text: &str) -> Result<PTensor, IoError> {
    let file: TensorFile = serde_json::from_str(text)?;
    let mut out = PTensor::zero();
    for term in &file.terms {
        out.accumulate(
            monomial_from_dense(&term.left)?,
            monomial_from_dense(&term.right)?,
            parse_rational(&term.coeff)?,
        );
    }
    Ok(out)
}

pub fn tensor_to_text(t: &PTensor) -> String {
    let mut out = String::new();
    for (l, r, c) in t.terms_right_major() {
        out.push_str(&format!(
            "{} * {} (x) {}\n",
            format_rational(c),
            monomial_to_text(l),
            monomial_to_text(r)
        ));
    }
    out
}

pub fn tensor_from_text(text: &str) -> Result<PTensor, IoError> {
    let mut out = PTensor::zero();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (head, right_text) = line
            .split_once(" (x) ")
            .ok_or_else(|| format_err(format!("bad tensor line {line:?}")))?;
        let (coeff_text, left_text) = head
            .split_once(" * ")
            .ok_or_else(|| format_err(format!("bad tensor line {line:?}")))?;
        out.accumulate(
            monomial_from_text(left_text)?,
            monomial_from_text(right_text)?,
            parse_rational(coeff_text)?,
        );
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    t01: usize,
    t00: usize,
    down: Vec<usize>,
    t11: usize,
    right: Vec<usize>,
}

/// Cell diagram JSON: sets as sizes, maps as assignment arrays.
pub fn t1cell_to_json(c: &T1Cell) -> String {
    let file = DiagramFile {
        t01: c.source_size(),
        t00: c.base_size(),
        down: c.down().assignment().to_vec(),
        t11: c.end_size(),
        right: c.right().assignment().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("diagram files serialize")
}

pub fn t1cell_from_json(text: &str) -> Result<T1Cell, IoError> {
    let file: DiagramFile = serde_json::from_str(text)?;
    for (name, len) in [("down", file.down.len()), ("right", file.right.len())] {
        if len != file.t01 {
            return Err(format_err(format!(
                "{name} assignment has {len} entries for a source of size {}",
                file.t01
            )));
        }
    }
    let down = FinSurjection::new(file.t00, file.down)?;
    let right = FinSurjection::new(file.t11, file.right)?;
    Ok(T1Cell::new(down, right)?)
}

/// A partition whose ground set carries arbitrary distinct labels; the
/// underlying `SetPartition` lives on label ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPartition {
    labels: Vec<u64>,
    partition: SetPartition,
}

impl LabeledPartition {
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    /// Maps index blocks back to the original labels.
    pub fn relabel_blocks(&self, p: &SetPartition) -> Vec<Vec<u64>> {
        p.blocks()
            .iter()
            .map(|block| block.iter().map(|&i| self.labels[i]).collect())
            .collect()
    }
}

/// Parses a JSON block list such as `[[1,2],[3]]`; the ground set is the
/// union of the labels.
pub fn labeled_partition_from_json(text: &str) -> Result<LabeledPartition, IoError> {
    let blocks: Vec<Vec<u64>> = serde_json::from_str(text)?;
    let mut labels: Vec<u64> = blocks.iter().flatten().copied().collect();
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(IoError::Model(SetModelError::InvalidPartition(
            "a label appears twice".into(),
        )));
    }
    let rank = |label: u64| labels.binary_search(&label).expect("label was collected");
    let index_blocks = blocks
        .iter()
        .map(|block| block.iter().map(|&l| rank(l)).collect())
        .collect();
    let partition = SetPartition::new(labels.len(), index_blocks)?;
    Ok(LabeledPartition { labels, partition })
}

pub fn blocks_to_json(blocks: &[Vec<u64>]) -> String {
    serde_json::to_string(&blocks).expect("block lists serialize")
}
