//! Gauss codes of alternating knot diagrams and their involutive
//! Wirtinger-style presentations.
//!
//! Positions are 1-based throughout. Odd positions are taken to be
//! overcrossings; the label at an even position names the overstrand of the
//! undercrossing met there.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fpgroup::{Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussCodeError {
    #[error("empty Gauss code")]
    Empty,
    #[error("position {position}: `{token}` is not a positive decimal integer")]
    MalformedInteger { position: usize, token: String },
    #[error("sequence has odd length {0}")]
    OddLength(usize),
    #[error("position {position}: label {label} is outside 1..{crossings}")]
    LabelOutOfRange {
        position: usize,
        label: u64,
        crossings: usize,
    },
    #[error("label {label} occurs {count} times (positions {positions:?}), expected exactly 2")]
    Multiplicity {
        label: usize,
        count: usize,
        positions: Vec<usize>,
    },
    #[error(
        "label {label} occurs at positions {first} and {second}; alternation needs one odd and one even position"
    )]
    Parity {
        label: usize,
        first: usize,
        second: usize,
    },
}

/// A validated alternating Gauss code with `crossings` labels, each used
/// exactly twice, once at an odd and once at an even position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussCode {
    crossings: usize,
    sequence: Vec<usize>,
}

impl GaussCode {
    pub fn new(sequence: Vec<usize>) -> Result<Self, GaussCodeError> {
        if sequence.is_empty() {
            return Err(GaussCodeError::Empty);
        }
        if !sequence.len().is_multiple_of(2) {
            return Err(GaussCodeError::OddLength(sequence.len()));
        }
        let n = sequence.len() / 2;
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &label) in sequence.iter().enumerate() {
            if label == 0 || label > n {
                return Err(GaussCodeError::LabelOutOfRange {
                    position: i + 1,
                    label: label as u64,
                    crossings: n,
                });
            }
            positions[label - 1].push(i + 1);
        }
        for (l, pos) in positions.iter().enumerate() {
            if pos.len() != 2 {
                return Err(GaussCodeError::Multiplicity {
                    label: l + 1,
                    count: pos.len(),
                    positions: pos.clone(),
                });
            }
            if pos[0] % 2 == pos[1] % 2 {
                return Err(GaussCodeError::Parity {
                    label: l + 1,
                    first: pos[0],
                    second: pos[1],
                });
            }
        }
        Ok(GaussCode {
            crossings: n,
            sequence,
        })
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Label at 1-based position `i`.
    fn at(&self, i: usize) -> usize {
        self.sequence[i - 1]
    }
}

/// Parses one comma-separated census line.
pub fn parse_gauss_code(text: &str) -> Result<GaussCode, GaussCodeError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(GaussCodeError::Empty);
    }
    let mut seq = Vec::new();
    let mut raw = Vec::new();
    for (i, tok) in text.split(',').enumerate() {
        let tok = tok.trim();
        let v: u64 = tok
            .parse()
            .ok()
            .filter(|_| tok.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| GaussCodeError::MalformedInteger {
                position: i + 1,
                token: tok.to_string(),
            })?;
        raw.push(v);
    }
    if raw.len() % 2 != 0 {
        return Err(GaussCodeError::OddLength(raw.len()));
    }
    let n = raw.len() / 2;
    for (i, &v) in raw.iter().enumerate() {
        if v == 0 || v > n as u64 {
            return Err(GaussCodeError::LabelOutOfRange {
                position: i + 1,
                label: v,
                crossings: n,
            });
        }
        seq.push(v as usize);
    }
    GaussCode::new(seq)
}

impl FromStr for GaussCode {
    type Err = GaussCodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.sequence.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// One length-4 relator per crossing: downstream arc, overstrand, upstream
/// arc, overstrand, read around each even position (wrapping at the end).
/// All letters are positive; crossing signs are irrelevant once generators
/// are involutions.
pub fn wirtinger_relators(gc: &GaussCode) -> Vec<Word> {
    let n = gc.crossings();
    let mut out = Vec::with_capacity(n);
    for j in 1..n {
        let (ds, over, us) = (gc.at(2 * j - 1), gc.at(2 * j), gc.at(2 * j + 1));
        out.push(Word::from_positive(&[ds, over, us, over]));
    }
    let (ds, over, us) = (gc.at(2 * n - 1), gc.at(2 * n), gc.at(1));
    out.push(Word::from_positive(&[ds, over, us, over]));
    out
}

/// `<X | S ∪ R>`: one involutive generator per crossing label, the squares,
/// then the crossing relators.
pub fn knot_presentation(gc: &GaussCode) -> Presentation {
    Presentation::involutive(gc.crossings(), wirtinger_relators(gc))
        .expect("Gauss code labels are in range")
}
