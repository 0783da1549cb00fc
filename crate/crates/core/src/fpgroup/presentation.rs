use std::fmt::Write as _;

use thiserror::Error;

use super::word::{Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("involutive flag list has length {got}, expected {expected}")]
    FlagLength { expected: usize, got: usize },
    #[error("relator {index} uses generator g{generator} but only {ngens} generators exist")]
    GeneratorOutOfRange {
        index: usize,
        generator: usize,
        ngens: usize,
    },
    #[error("generator g{0} is flagged involutive but its square is not a relator")]
    MissingSquare(usize),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A finite group presentation.
///
/// Generators flagged involutive are promised to square to the identity;
/// the square itself must appear among the relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ngens: usize,
    involutive: Vec<bool>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        ngens: usize,
        involutive: Vec<bool>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        if ngens == 0 {
            return Err(PresentationError::NoGenerators);
        }
        if involutive.len() != ngens {
            return Err(PresentationError::FlagLength {
                expected: ngens,
                got: involutive.len(),
            });
        }
        for (index, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= ngens {
                    return Err(PresentationError::GeneratorOutOfRange {
                        index,
                        generator: g + 1,
                        ngens,
                    });
                }
            }
        }
        for (g, _) in involutive.iter().enumerate().filter(|(_, &f)| f) {
            let has_square = relators.iter().any(|r| {
                r.len() == 2 && r.letters()[0].generator() == g && r.letters()[0] == r.letters()[1]
            });
            if !has_square {
                return Err(PresentationError::MissingSquare(g + 1));
            }
        }
        Ok(Presentation {
            ngens,
            involutive,
            relators,
        })
    }

    /// All generators involutive; squares are prepended to `relators`.
    pub fn involutive(ngens: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut all: Vec<Word> = (0..ngens)
            .map(|g| Word::new(vec![Letter::gen(g); 2]))
            .collect();
        all.extend(relators);
        Presentation::new(ngens, vec![true; ngens], all)
    }

    /// No involutive flags.
    pub fn plain(ngens: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Presentation::new(ngens, vec![false; ngens], relators)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn involutive_flags(&self) -> &[bool] {
        &self.involutive
    }

    pub fn is_involutive(&self, gen: usize) -> bool {
        self.involutive[gen]
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub(crate) fn push_relator(&mut self, w: Word) {
        debug_assert!(w.max_generator().is_none_or(|g| g < self.ngens));
        self.relators.push(w);
    }

    /// Total number of letters over all relators.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Replaces inverse letters of involutive generators by the positive letter.
    pub fn normalize_letter(&self, l: Letter) -> Letter {
        if self.involutive[l.generator()] {
            l.positive()
        } else {
            l
        }
    }

    /// Inverse of `w` in this presentation's alphabet; for involutive
    /// generators the inverse letter is normalized back to the positive one.
    pub fn inverse_word(&self, w: &Word) -> Word {
        w.letters()
            .iter()
            .rev()
            .map(|&l| self.normalize_letter(l.inverse()))
            .collect()
    }

    pub fn free_reduce(&self, w: &Word) -> Word {
        free_reduce(w, self)
    }

    /// Parses the plain-text presentation format:
    ///
    /// ```text
    /// gens: 2; involutive: 11
    /// g1 g1
    /// g2 g2
    /// g1 g2 g1 g2 g1 g2 g1 g2
    /// ```
    ///
    /// Letters may be separated by whitespace or `*`; `^-1` marks an inverse.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(PresentationError::Syntax {
            line: 1,
            message: "missing header line".into(),
        })?;
        let (ngens, involutive) =
            parse_header(header).map_err(|message| PresentationError::Syntax {
                line: hline,
                message,
            })?;
        let mut relators = Vec::new();
        for (lineno, line) in lines {
            let w = parse_word(line, ngens).map_err(|message| PresentationError::Syntax {
                line: lineno,
                message,
            })?;
            relators.push(w);
        }
        Presentation::new(ngens, involutive, relators)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let flags: String = self
            .involutive
            .iter()
            .map(|&f| if f { '1' } else { '0' })
            .collect();
        let _ = writeln!(out, "gens: {}; involutive: {}", self.ngens, flags);
        for r in &self.relators {
            let _ = writeln!(out, "{}", r);
        }
        out
    }
}

fn parse_header(header: &str) -> Result<(usize, Vec<bool>), String> {
    let mut ngens = None;
    let mut flags = None;
    for part in header.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| format!("expected `key: value` in header, got `{}`", part))?;
        match key.trim() {
            "gens" => {
                ngens = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| format!("bad generator count: {}", e))?,
                )
            }
            "involutive" => {
                flags = Some(
                    value
                        .trim()
                        .chars()
                        .map(|c| match c {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            other => Err(format!("bad involutive flag `{}`", other)),
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
            other => return Err(format!("unknown header key `{}`", other)),
        }
    }
    let ngens = ngens.ok_or("header is missing `gens`")?;
    let flags = flags.unwrap_or_else(|| vec![false; ngens]);
    Ok((ngens, flags))
}

fn parse_word(line: &str, ngens: usize) -> Result<Word, String> {
    let mut letters = Vec::new();
    for tok in line.split(|c: char| c.is_whitespace() || c == '*') {
        if tok.is_empty() || tok == "1" {
            continue;
        }
        let (name, inverse) = match tok.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let idx = name
            .strip_prefix('g')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1 && i <= ngens)
            .ok_or_else(|| format!("bad letter `{}` (expected g1..g{})", tok, ngens))?;
        letters.push(if inverse {
            Letter::inv(idx - 1)
        } else {
            Letter::gen(idx - 1)
        });
    }
    Ok(Word::new(letters))
}

/// Cancels adjacent inverse pairs. For involutive generators `x^-1` is first
/// normalized to `x`, after which `x x` cancels as well.
pub fn free_reduce(w: &Word, p: &Presentation) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let l = p.normalize_letter(l);
        match out.last() {
            Some(&top) if top == l.inverse() || (top == l && p.is_involutive(l.generator())) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word::new(out)
}

/// Free reduction followed by cancellation between the two ends.
pub fn cyclically_reduce(w: &Word, p: &Presentation) -> Word {
    let w = free_reduce(w, p);
    let l = w.letters();
    let (mut i, mut j) = (0usize, l.len());
    while j - i >= 2 {
        let (a, b) = (l[i], l[j - 1]);
        if a == b.inverse() || (a == b && p.is_involutive(a.generator())) {
            i += 1;
            j -= 1;
        } else {
            break;
        }
    }
    Word::new(l[i..j].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduce_cancels_inverse_pairs() {
        let p = Presentation::plain(2, vec![]).unwrap();
        let w = Word::from_signed(&[1, -1, 2]);
        assert_eq!(free_reduce(&w, &p), Word::from_signed(&[2]));
    }

    #[test]
    fn free_reduce_cancels_involutive_squares() {
        let p = Presentation::involutive(2, vec![]).unwrap();
        assert_eq!(
            free_reduce(&Word::from_signed(&[1, 1, 2]), &p),
            Word::from_signed(&[2])
        );
        assert_eq!(
            free_reduce(&Word::from_signed(&[1, -1, -2]), &p),
            Word::from_signed(&[2])
        );
    }

    #[test]
    fn free_reduce_empty() {
        let p = Presentation::plain(1, vec![]).unwrap();
        assert!(free_reduce(&Word::empty(), &p).is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let p = Presentation::plain(2, vec![]).unwrap();
        let w = Word::from_signed(&[1, 2, 1, -1, 2, -1]);
        assert_eq!(cyclically_reduce(&w, &p), Word::from_signed(&[2, 2]));
    }

    #[test]
    fn involutive_flag_requires_square() {
        let err = Presentation::new(1, vec![true], vec![]).unwrap_err();
        assert_eq!(err, PresentationError::MissingSquare(1));
    }

    #[test]
    fn out_of_range_relator_rejected() {
        let err = Presentation::plain(1, vec![Word::from_signed(&[2])]).unwrap_err();
        assert!(matches!(err, PresentationError::GeneratorOutOfRange { .. }));
    }

    #[test]
    fn text_format_roundtrip() {
        let p = Presentation::new(
            2,
            vec![true, false],
            vec![
                Word::from_signed(&[1, 1]),
                Word::from_signed(&[1, 2, -1, -2]),
            ],
        )
        .unwrap();
        let text = p.to_text();
        assert!(text.starts_with("gens: 2; involutive: 10\n"));
        assert_eq!(Presentation::parse(&text).unwrap(), p);
    }

    #[test]
    fn parse_accepts_star_separators_and_comments() {
        let p = Presentation::parse("# D4\ngens: 2; involutive: 11\ng1*g1\ng2*g2\n\n(g1 g2)")
            .unwrap_err();
        assert!(matches!(p, PresentationError::Syntax { line: 6, .. }));
        let p = Presentation::parse("gens: 2; involutive: 11\ng1*g1\ng2 * g2\ng1*g2^-1").unwrap();
        assert_eq!(p.relators()[2], Word::from_signed(&[1, -2]));
    }
}
