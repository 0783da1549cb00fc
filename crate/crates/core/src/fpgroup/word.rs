use std::fmt;

/// A signed generator letter.
///
/// Encoded as `2 * generator + inverse_bit`, so the natural ordering of the
/// codes is `g1 < g1^-1 < g2 < g2^-1 < ...`, which is the default shortlex
/// letter ranking.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    /// Positive letter for the zero-based generator `gen`.
    pub fn gen(gen: usize) -> Self {
        debug_assert!(gen < (u16::MAX as usize) / 2);
        Letter((gen as u16) << 1)
    }

    /// Inverse letter for the zero-based generator `gen`.
    pub fn inv(gen: usize) -> Self {
        Letter::gen(gen).inverse()
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u16)
    }

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Zero-based generator index.
    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// The positive letter of the same generator.
    #[inline]
    pub fn positive(self) -> Self {
        Letter(self.0 & !1)
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator() + 1)
        } else {
            write!(f, "g{}", self.generator() + 1)
        }
    }
}

/// A finite, possibly unreduced, word over signed generator letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from 1-based signed generator labels: `3` is `g3`,
    /// `-3` is `g3^-1`. Zero is not a valid label.
    pub fn from_signed(labels: &[i32]) -> Self {
        Word(
            labels
                .iter()
                .map(|&l| {
                    assert!(l != 0, "generator labels are 1-based");
                    let g = l.unsigned_abs() as usize - 1;
                    if l > 0 {
                        Letter::gen(g)
                    } else {
                        Letter::inv(g)
                    }
                })
                .collect(),
        )
    }

    /// Builds a word of positive letters from 1-based labels.
    pub fn from_positive(labels: &[usize]) -> Self {
        Word(labels.iter().map(|&l| Letter::gen(l - 1)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Formal inverse: reversed with every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * e);
        for _ in 0..e {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Largest zero-based generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut sums = vec![0i64; ngens];
        for l in &self.0 {
            sums[l.generator()] += l.sign();
        }
        sums
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_matches_default_ranking() {
        let g1 = Letter::gen(0);
        let g1i = Letter::inv(0);
        let g2 = Letter::gen(1);
        assert!(g1 < g1i && g1i < g2);
        assert_eq!(g1i.inverse(), g1);
        assert_eq!(g1i.positive(), g1);
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let w = Word::from_signed(&[1, 2, -3]);
        assert_eq!(w.inverse(), Word::from_signed(&[3, -2, -1]));
        assert_eq!(w.exponent_sums(3), vec![1, 1, -1]);
        assert_eq!(w.to_string(), "g1 g2 g3^-1");
    }
}
