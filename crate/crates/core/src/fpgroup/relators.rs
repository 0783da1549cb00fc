//! Truncated fourth-power relator families and relator deduplication.

use std::collections::HashSet;

use super::presentation::{cyclically_reduce, Presentation};
use super::word::{Letter, Word};

/// Shortlex stream of conjugator words over positive letters with no two
/// adjacent letters equal, lengths `0..=max_len`. The empty word comes first.
#[derive(Clone, Debug)]
pub struct ConjugatorWords {
    ngens: usize,
    max_len: usize,
    current: Option<Vec<usize>>,
}

pub fn conjugator_words(ngens: usize, max_len: usize) -> ConjugatorWords {
    ConjugatorWords {
        ngens,
        max_len,
        current: Some(Vec::new()),
    }
}

impl ConjugatorWords {
    fn smallest_of_length(&self, len: usize) -> Option<Vec<usize>> {
        if len > self.max_len || self.ngens == 0 || (len >= 2 && self.ngens < 2) {
            return None;
        }
        Some((0..len).map(|i| i % 2).collect())
    }

    fn successor(&self, w: &[usize]) -> Option<Vec<usize>> {
        for i in (0..w.len()).rev() {
            let prev = if i > 0 { Some(w[i - 1]) } else { None };
            let bump = (w[i] + 1..self.ngens).find(|&v| Some(v) != prev);
            if let Some(v) = bump {
                let mut next = w[..i].to_vec();
                next.push(v);
                for _ in i + 1..w.len() {
                    let last = *next.last().unwrap();
                    next.push(if last == 0 { 1 } else { 0 });
                }
                return Some(next);
            }
        }
        self.smallest_of_length(w.len() + 1)
    }
}

impl Iterator for ConjugatorWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        self.current = self.successor(&cur);
        Some(cur.iter().map(|&g| Letter::gen(g)).collect())
    }
}

/// Shortlex-least word among all cyclic rotations of `w` and of its inverse.
/// `w` should already be freely reduced. Inverse letters of involutive
/// generators are replaced by the generator first.
pub fn relator_canonical_form(w: &Word, p: &Presentation) -> Word {
    let w: Word = w.letters().iter().map(|&l| p.normalize_letter(l)).collect();
    let w = &w;
    let n = w.len();
    if n == 0 {
        return Word::empty();
    }
    let inv = p.inverse_word(w);
    let mut best: Option<&[Letter]> = None;
    let mut best_start = (0usize, false);
    let mut doubled = Vec::with_capacity(2 * n);
    doubled.extend_from_slice(w.letters());
    doubled.extend_from_slice(w.letters());
    let mut doubled_inv = Vec::with_capacity(2 * n);
    doubled_inv.extend_from_slice(inv.letters());
    doubled_inv.extend_from_slice(inv.letters());
    for (is_inv, d) in [(false, &doubled), (true, &doubled_inv)] {
        for s in 0..n {
            let cand = &d[s..s + n];
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
                best_start = (s, is_inv);
            }
        }
    }
    let (s, is_inv) = best_start;
    let d = if is_inv { &doubled_inv } else { &doubled };
    Word::new(d[s..s + n].to_vec())
}

/// Dedup key for a relator: canonical form of its cyclic reduction.
pub(crate) fn relator_key(w: &Word, p: &Presentation) -> Word {
    relator_canonical_form(&cyclically_reduce(w, p), p)
}

fn fourth_power_relator(a: Letter, w: &Word, b: Letter) -> Word {
    let mut base = Vec::with_capacity(2 + 2 * w.len());
    base.push(a);
    base.extend_from_slice(w.letters());
    base.push(b);
    base.extend(w.letters().iter().rev().copied());
    Word::new(base).pow(4)
}

fn add_fourth_powers(base: &Presentation, max_len: usize, allow_equal: bool) -> Presentation {
    let n = base.ngens();
    let mut out = base.clone();
    let mut seen: HashSet<Word> = base
        .relators()
        .iter()
        .map(|r| relator_key(r, base))
        .collect();
    for w in conjugator_words(n, max_len) {
        for a in 0..n {
            for b in 0..n {
                if a == b && (!allow_equal || w.is_empty()) {
                    continue;
                }
                let r = fourth_power_relator(Letter::gen(a), &w, Letter::gen(b));
                let key = relator_key(&r, base);
                if key.is_empty() {
                    continue;
                }
                if seen.insert(key.clone()) {
                    out.push_relator(key);
                }
            }
        }
    }
    out
}

/// `G_k(K)`: the knot base presentation plus `(a w b w^-1)^4` for distinct
/// generators `a, b` and every conjugator `w` with `|w| <= k`.
///
/// `base` must be all-involutive (as produced by
/// [`knot_presentation`](crate::knotcodes::knot_presentation)).
pub fn build_gk(base: &Presentation, k: usize) -> Presentation {
    debug_assert!(base.involutive_flags().iter().all(|&f| f));
    add_fourth_powers(base, k, false)
}

/// `G_{n,k}`: `n` involutions with `(a_i w a_j w^-1)^4` for all `i, j` and
/// conjugators `|w| <= k`, skipping `i = j` only for the empty conjugator.
pub fn build_gnk(n: usize, k: usize) -> Presentation {
    assert!(n >= 1, "G_(n,k) needs at least one generator");
    let base = Presentation::involutive(n, vec![]).expect("squares present");
    add_fourth_powers(&base, k, true)
}
