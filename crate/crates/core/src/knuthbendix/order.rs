use std::cmp::Ordering;

use crate::fpgroup::Letter;

/// Shortlex order: shorter words first, equal lengths compared
/// lexicographically under a letter ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortlexOrder {
    /// rank of each letter code
    rank: Vec<u16>,
}

impl ShortlexOrder {
    /// `g1 < g1^-1 < g2 < g2^-1 < ...`
    pub fn standard(ngens: usize) -> Self {
        ShortlexOrder {
            rank: (0..2 * ngens as u16).collect(),
        }
    }

    /// Ranking given as the full list of letters, smallest first.
    pub fn from_ranking(letters: &[Letter]) -> Result<Self, String> {
        let n = letters.len();
        if !n.is_multiple_of(2) {
            return Err("ranking must list every generator and its inverse".into());
        }
        let mut rank = vec![u16::MAX; n];
        for (r, l) in letters.iter().enumerate() {
            if l.code() >= n || rank[l.code()] != u16::MAX {
                return Err(format!("letter {} repeated or out of range", l));
            }
            rank[l.code()] = r as u16;
        }
        Ok(ShortlexOrder { rank })
    }

    pub fn nletters(&self) -> usize {
        self.rank.len()
    }

    #[inline]
    pub fn rank(&self, l: Letter) -> u16 {
        self.rank[l.code()]
    }

    pub fn compare(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                match self.rank(*x).cmp(&self.rank(*y)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}
