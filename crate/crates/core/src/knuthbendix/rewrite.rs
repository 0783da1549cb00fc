use std::cmp::Ordering;

use serde::Serialize;

use super::order::ShortlexOrder;
use super::trie::{Trie, NO_RULE};
use crate::fpgroup::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rule {
    #[serde(serialize_with = "ser_word")]
    pub lhs: Word,
    #[serde(serialize_with = "ser_word")]
    pub rhs: Word,
}

pub(crate) fn ser_word<S: serde::Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

/// One rewrite: `before` with the rule's left side at `position` replaced
/// by its right side gives `after`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub position: usize,
    pub rule: Rule,
    #[serde(serialize_with = "ser_word")]
    pub before: Word,
    #[serde(serialize_with = "ser_word")]
    pub after: Word,
}

/// Rule storage shared by the completion engine and finished systems.
///
/// Rules whose left side is a single letter mapping to at most one letter
/// (`g^-1 -> g` for involutions) are applied as a letter substitution and
/// kept out of the tries.
#[derive(Clone, Debug)]
pub(crate) struct RuleStore {
    pub nletters: usize,
    pub lhs: Vec<Vec<Letter>>,
    pub rhs: Vec<Vec<Letter>>,
    pub alive: Vec<bool>,
    pub alive_count: usize,
    letter_rule: Vec<u32>,
    slot_of: Vec<usize>,
    width: usize,
    /// reversed left sides; drives reduction
    rev: Trie,
    /// left sides; only maintained during completion
    fwd: Option<Trie>,
}

impl RuleStore {
    /// `substituted` marks letters that only ever occur as the left side of
    /// a letter rule; they get no trie slot.
    pub fn new(nletters: usize, substituted: &[bool], with_forward: bool) -> Self {
        let mut slot_of = vec![usize::MAX; nletters];
        let mut width = 0;
        for (code, slot) in slot_of.iter_mut().enumerate() {
            if !substituted.get(code).copied().unwrap_or(false) {
                *slot = width;
                width += 1;
            }
        }
        RuleStore {
            nletters,
            lhs: Vec::new(),
            rhs: Vec::new(),
            alive: Vec::new(),
            alive_count: 0,
            letter_rule: vec![NO_RULE; nletters],
            slot_of,
            width,
            rev: Trie::new(width),
            fwd: with_forward.then(|| Trie::new(width)),
        }
    }

    pub fn len(&self) -> usize {
        self.lhs.len()
    }

    #[inline]
    fn slot(&self, l: Letter) -> usize {
        self.slot_of[l.code()]
    }

    fn is_letter_rule(&self, lhs: &[Letter], rhs: &[Letter]) -> bool {
        lhs.len() == 1 && rhs.len() <= 1 && self.slot(lhs[0]) == usize::MAX
    }

    pub fn add(&mut self, lhs: Vec<Letter>, rhs: Vec<Letter>) -> u32 {
        let id = self.lhs.len() as u32;
        if self.is_letter_rule(&lhs, &rhs) {
            self.letter_rule[lhs[0].code()] = id;
        } else {
            debug_assert!(lhs.iter().all(|&l| self.slot(l) != usize::MAX));
            let slots: Vec<usize> = lhs.iter().map(|&l| self.slot(l)).collect();
            self.rev.insert(slots.iter().rev().copied(), id);
            if let Some(f) = self.fwd.as_mut() {
                f.insert(slots.iter().copied(), id);
            }
        }
        self.lhs.push(lhs);
        self.rhs.push(rhs);
        self.alive.push(true);
        self.alive_count += 1;
        id
    }

    pub fn kill(&mut self, id: u32) {
        let i = id as usize;
        if !self.alive[i] {
            return;
        }
        self.alive[i] = false;
        self.alive_count -= 1;
        let lhs = &self.lhs[i];
        if lhs.len() == 1 && self.letter_rule[lhs[0].code()] == id {
            self.letter_rule[lhs[0].code()] = NO_RULE;
            return;
        }
        let slots: Vec<usize> = lhs.iter().map(|&l| self.slot_of[l.code()]).collect();
        self.rev.remove(slots.iter().rev().copied(), id);
        if let Some(f) = self.fwd.as_mut() {
            f.remove(slots.iter().copied(), id);
        }
    }

    /// Temporarily hides a rule from matching (used while tidying).
    pub fn hide(&mut self, id: u32) {
        let slots: Vec<usize> = self.lhs[id as usize]
            .iter()
            .map(|&l| self.slot(l))
            .collect();
        self.rev.remove(slots.iter().rev().copied(), id);
    }

    pub fn unhide(&mut self, id: u32) {
        let slots: Vec<usize> = self.lhs[id as usize]
            .iter()
            .map(|&l| self.slot(l))
            .collect();
        self.rev.insert(slots.iter().rev().copied(), id);
    }

    pub fn trie_nodes(&self) -> usize {
        self.rev.nodes() + self.fwd.as_ref().map_or(0, Trie::nodes)
    }

    /// Drops trie nodes left behind by killed rules.
    pub fn rebuild_indexes(&mut self) {
        let mut rev = Trie::new(self.width);
        let mut fwd = self.fwd.as_ref().map(|_| Trie::new(self.width));
        for id in 0..self.lhs.len() as u32 {
            let i = id as usize;
            if !self.alive[i] || self.is_letter_rule_id(id) {
                continue;
            }
            let slots: Vec<usize> = self.lhs[i].iter().map(|&l| self.slot(l)).collect();
            rev.insert(slots.iter().rev().copied(), id);
            if let Some(f) = fwd.as_mut() {
                f.insert(slots.iter().copied(), id);
            }
        }
        self.rev = rev;
        self.fwd = fwd;
    }

    pub fn is_letter_rule_id(&self, id: u32) -> bool {
        let l = &self.lhs[id as usize];
        l.len() == 1 && self.letter_rule[l[0].code()] == id
    }

    /// Rule whose left side is a suffix of `w`, if any.
    #[inline]
    fn suffix_match(&self, w: &[Letter]) -> Option<u32> {
        let mut node = 0u32;
        for &l in w.iter().rev() {
            let s = self.slot(l);
            if s == usize::MAX {
                return None;
            }
            node = self.rev.child(node, s);
            if node == 0 {
                return None;
            }
            let t = self.rev.terminal(node);
            if t != NO_RULE {
                return Some(t);
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &[Letter]) -> bool {
        (1..=w.len()).any(|end| {
            self.letter_rule[w[end - 1].code()] != NO_RULE || self.suffix_match(&w[..end]).is_some()
        })
    }

    pub fn reduce(&self, input: &[Letter]) -> Vec<Letter> {
        self.reduce_impl(input, None)
    }

    pub fn reduce_traced(&self, input: &[Letter], trace: &mut Vec<RewriteStep>) -> Vec<Letter> {
        self.reduce_impl(input, Some(trace))
    }

    fn rule(&self, id: u32) -> Rule {
        Rule {
            lhs: Word::new(self.lhs[id as usize].clone()),
            rhs: Word::new(self.rhs[id as usize].clone()),
        }
    }

    fn reduce_impl(
        &self,
        input: &[Letter],
        mut trace: Option<&mut Vec<RewriteStep>>,
    ) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(input.len());
        let mut pending: Vec<Letter> = input.iter().rev().copied().collect();
        let current = |out: &[Letter], pending: &[Letter]| -> Word {
            out.iter().chain(pending.iter().rev()).copied().collect()
        };
        while let Some(l) = pending.pop() {
            let lr = self.letter_rule[l.code()];
            if lr != NO_RULE {
                let rhs = &self.rhs[lr as usize];
                if let Some(t) = trace.as_deref_mut() {
                    let mut before_pending = pending.clone();
                    before_pending.push(l);
                    let before = current(&out, &before_pending);
                    let mut after_pending = pending.clone();
                    after_pending.extend(rhs.iter().rev());
                    t.push(RewriteStep {
                        position: out.len(),
                        rule: self.rule(lr),
                        before,
                        after: current(&out, &after_pending),
                    });
                }
                pending.extend(rhs.iter().rev());
                continue;
            }
            out.push(l);
            if let Some(id) = self.suffix_match(&out) {
                let lhs_len = self.lhs[id as usize].len();
                let rhs = &self.rhs[id as usize];
                let pos = out.len() - lhs_len;
                let before = trace.as_ref().map(|_| current(&out, &pending));
                out.truncate(pos);
                pending.extend(rhs.iter().rev());
                if let Some(t) = trace.as_deref_mut() {
                    t.push(RewriteStep {
                        position: pos,
                        rule: self.rule(id),
                        before: before.unwrap(),
                        after: current(&out, &pending),
                    });
                }
            }
        }
        out
    }

    /// Proper overlaps of `id` with rules accepted by `filter`:
    /// `(left, right, overlap_len)` where a suffix of `lhs[left]` equals a
    /// prefix of `lhs[right]`.
    pub fn overlaps_of(
        &self,
        id: u32,
        mut filter: impl FnMut(u32) -> bool,
    ) -> Vec<(u32, u32, usize)> {
        let fwd = self.fwd.as_ref().expect("forward index");
        let l = &self.lhs[id as usize];
        let m = l.len();
        let mut out = Vec::new();
        if self.slot_of_letters_missing(l) {
            return out;
        }
        for ov in 1..m {
            // id on the left
            let s = l[m - ov..].iter().map(|&x| self.slot(x));
            if let Some(node) = fwd.walk(s, |_, _| {}) {
                fwd.for_each_below(node, |q| {
                    if filter(q) {
                        out.push((id, q, ov));
                    }
                });
            }
            // id on the right
            let p = l[..ov].iter().rev().map(|&x| self.slot(x));
            if let Some(node) = self.rev.walk(p, |_, _| {}) {
                self.rev.for_each_below(node, |q| {
                    if q != id && filter(q) {
                        out.push((q, id, ov));
                    }
                });
            }
        }
        out
    }

    fn slot_of_letters_missing(&self, w: &[Letter]) -> bool {
        w.iter().any(|&l| self.slot(l) == usize::MAX)
    }

    /// Both sides of the critical pair of an overlap.
    pub fn critical_pair(&self, left: u32, right: u32, ov: usize) -> (Vec<Letter>, Vec<Letter>) {
        let (ll, lr) = (&self.lhs[left as usize], &self.rhs[left as usize]);
        let (rl, rr) = (&self.lhs[right as usize], &self.rhs[right as usize]);
        let mut a = lr.clone();
        a.extend_from_slice(&rl[ov..]);
        let mut b = ll[..ll.len() - ov].to_vec();
        b.extend_from_slice(rr);
        (a, b)
    }

    pub fn alive_ids(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.lhs.len() as u32).filter(move |&i| self.alive[i as usize])
    }
}

/// A string rewriting system for a finitely presented group.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    ngens: usize,
    order: ShortlexOrder,
    store: RuleStore,
    confluent: bool,
}

/// A critical pair whose two sides reduce to different words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnresolvedPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
}

impl RewriteSystem {
    /// Builds a system from explicit rules; every rule is indexed as given.
    /// The system is not marked confluent until [`certify`](Self::certify)
    /// succeeds.
    pub fn from_rules(ngens: usize, order: ShortlexOrder, rules: Vec<(Word, Word)>) -> Self {
        let mut store = RuleStore::new(2 * ngens, &[], false);
        for (l, r) in rules {
            store.add(l.into_letters(), r.into_letters());
        }
        RewriteSystem {
            ngens,
            order,
            store,
            confluent: false,
        }
    }

    /// Packs the live rules of a completion run, sorted by left side.
    pub(crate) fn from_store(
        ngens: usize,
        order: ShortlexOrder,
        src: &RuleStore,
        substituted: &[bool],
        confluent: bool,
    ) -> Self {
        let mut ids: Vec<u32> = src.alive_ids().collect();
        ids.sort_by(|&a, &b| order.compare(&src.lhs[a as usize], &src.lhs[b as usize]));
        let mut store = RuleStore::new(2 * ngens, substituted, false);
        for id in ids {
            store.add(src.lhs[id as usize].clone(), src.rhs[id as usize].clone());
        }
        RewriteSystem {
            ngens,
            order,
            store,
            confluent,
        }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn order(&self) -> &ShortlexOrder {
        &self.order
    }

    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    pub fn len(&self) -> usize {
        self.store.alive_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.store.alive_ids().map(|i| self.store.rule(i)).collect()
    }

    pub(crate) fn store(&self) -> &RuleStore {
        &self.store
    }

    pub fn reduce(&self, w: &Word) -> Word {
        Word::new(self.store.reduce(w.letters()))
    }

    pub fn reduce_traced(&self, w: &Word) -> (Word, Vec<RewriteStep>) {
        let mut trace = Vec::new();
        let out = self.store.reduce_traced(w.letters(), &mut trace);
        (Word::new(out), trace)
    }

    pub fn is_reduced_word(&self, w: &Word) -> bool {
        !self.store.is_reducible(w.letters())
    }

    /// Rules whose left side is not strictly greater than the right side.
    pub fn non_decreasing_rules(&self) -> Vec<Rule> {
        self.store
            .alive_ids()
            .filter(|&i| {
                self.order
                    .compare(&self.store.lhs[i as usize], &self.store.rhs[i as usize])
                    != Ordering::Greater
            })
            .map(|i| self.store.rule(i))
            .collect()
    }

    /// Exhaustive critical-pair check, covering both proper overlaps and
    /// left sides contained in other left sides.
    pub fn unresolved_pairs(&self, limit: usize) -> Vec<UnresolvedPair> {
        let st = &self.store;
        let width = st.nletters;
        let mut fwd = Trie::new(width);
        for id in st.alive_ids() {
            fwd.insert(st.lhs[id as usize].iter().map(|l| l.code()), id);
        }
        let mut bad = Vec::new();
        let check = |overlap: Vec<Letter>,
                     a: Vec<Letter>,
                     b: Vec<Letter>,
                     bad: &mut Vec<UnresolvedPair>| {
            let ra = st.reduce(&a);
            let rb = st.reduce(&b);
            if ra != rb {
                bad.push(UnresolvedPair {
                    overlap: Word::new(overlap),
                    left: Word::new(ra),
                    right: Word::new(rb),
                });
            }
        };
        for i in st.alive_ids() {
            let l = &st.lhs[i as usize];
            let r = &st.rhs[i as usize];
            for s in 0..l.len() {
                let mut inner = Vec::new();
                let end = fwd.walk(l[s..].iter().map(|x| x.code()), |d, j| inner.push((d, j)));
                if let Some(node) = end {
                    let j = fwd.terminal(node);
                    if j != NO_RULE && !(s == 0 && j == i) {
                        inner.push((l.len() - s, j));
                    }
                }
                for (d, j) in inner {
                    // lhs[j] occurs inside lhs[i] at s
                    let mut b = l[..s].to_vec();
                    b.extend_from_slice(&st.rhs[j as usize]);
                    b.extend_from_slice(&l[s + d..]);
                    check(l.clone(), r.clone(), b, &mut bad);
                }
                if s >= 1 {
                    if let Some(node) = end {
                        let ov = l.len() - s;
                        let mut below = Vec::new();
                        fwd.for_each_below(node, |j| below.push(j));
                        for j in below {
                            let (a, b) = st.critical_pair(i, j, ov);
                            let mut overlap = l.clone();
                            overlap.extend_from_slice(&st.lhs[j as usize][ov..]);
                            check(overlap, a, b, &mut bad);
                        }
                    }
                }
                if bad.len() >= limit {
                    return bad;
                }
            }
        }
        bad
    }

    /// Marks the system confluent if every critical pair resolves.
    pub fn certify(&mut self) -> bool {
        self.confluent = self.unresolved_pairs(1).is_empty();
        self.confluent
    }
}
