use crate::fpgroup::{Letter, Presentation, Word};

/// Column layout shared by the engine and the finished table: involutive
/// generators get one self-inverse column, the others one column per sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Columns {
    /// column for each letter code
    pub of_letter: Vec<u32>,
    /// column of the inverse letter
    pub inverse: Vec<u32>,
}

impl Columns {
    pub fn new(p: &Presentation) -> Self {
        let mut of_letter = vec![0u32; 2 * p.ngens()];
        let mut inverse = Vec::new();
        let mut next = 0u32;
        for g in 0..p.ngens() {
            if p.is_involutive(g) {
                of_letter[2 * g] = next;
                of_letter[2 * g + 1] = next;
                inverse.push(next);
                next += 1;
            } else {
                of_letter[2 * g] = next;
                of_letter[2 * g + 1] = next + 1;
                inverse.push(next + 1);
                inverse.push(next);
                next += 2;
            }
        }
        Columns { of_letter, inverse }
    }

    pub fn count(&self) -> usize {
        self.inverse.len()
    }

    pub fn word(&self, w: &Word) -> Vec<u32> {
        w.letters()
            .iter()
            .map(|l| self.of_letter[l.code()])
            .collect()
    }
}

/// A complete coset table. Cosets are numbered `1..=index` in order of first
/// definition (after discarding coincident cosets); coset 1 is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub(crate) columns: Columns,
    pub(crate) ncosets: usize,
    /// row-major, `(ncosets + 1) * ncols`, row 0 unused
    pub(crate) rows: Vec<u32>,
}

impl CosetTable {
    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.ncosets
    }

    pub fn ncols(&self) -> usize {
        self.columns.count()
    }

    /// Image of `coset` under the letter, `None` if undefined.
    pub fn action(&self, coset: usize, letter: Letter) -> Option<usize> {
        let col = self.columns.of_letter[letter.code()] as usize;
        match self.rows[coset * self.ncols() + col] {
            0 => None,
            c => Some(c as usize),
        }
    }

    /// Follows a word from `coset`; `None` if some step is undefined.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(coset, |c, &l| self.action(c, l))
    }

    /// Checks totality, inverse consistency, that every relator closes at
    /// every coset, and that every subgroup generator fixes coset 1.
    pub fn validate(&self, p: &Presentation, subgroup: &[Word]) -> Result<(), String> {
        let ncols = self.ncols();
        for c in 1..=self.ncosets {
            for col in 0..ncols {
                let d = self.rows[c * ncols + col] as usize;
                if d == 0 || d > self.ncosets {
                    return Err(format!(
                        "coset {} column {} undefined or out of range",
                        c, col
                    ));
                }
                let back = self.rows[d * ncols + self.columns.inverse[col] as usize] as usize;
                if back != c {
                    return Err(format!(
                        "coset {} column {} -> {} but inverse maps back to {}",
                        c, col, d, back
                    ));
                }
            }
        }
        for r in p.relators() {
            for c in 1..=self.ncosets {
                if self.trace(c, r) != Some(c) {
                    return Err(format!("relator {} does not close at coset {}", r, c));
                }
            }
        }
        for w in subgroup {
            if self.trace(1, w) != Some(1) {
                return Err(format!("subgroup generator {} does not fix coset 1", w));
            }
        }
        Ok(())
    }
}
