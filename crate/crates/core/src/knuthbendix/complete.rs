use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::time::Instant;

use super::order::ShortlexOrder;
use super::rewrite::{RewriteStep, RewriteSystem, RuleStore};
use super::{HaltReason, KbLimits};
use crate::fpgroup::{Letter, Presentation, Word};

/// Minimum number of new rules between interreduction passes.
const TIDY_MIN: usize = 200;

pub(crate) enum Finish {
    Confluent(RewriteSystem),
    Halted(HaltReason, RewriteSystem),
    /// The watched target reduced to the identity.
    TargetReached(Vec<RewriteStep>),
}

struct Completer<'a> {
    ngens: usize,
    ord: &'a ShortlexOrder,
    limits: &'a KbLimits,
    substituted: Vec<bool>,
    store: RuleStore,
    processed: Vec<bool>,
    queue: BinaryHeap<Reverse<(usize, Vec<u16>, u32)>>,
    since_tidy: usize,
    since_deletion: usize,
    dropped_long: bool,
    started: Instant,
    ticks: u32,
    target: Option<Vec<Letter>>,
    /// the no-progress window only counts rules found by completion
    seeding: bool,
}

impl<'a> Completer<'a> {
    fn new(
        p: &Presentation,
        ord: &'a ShortlexOrder,
        limits: &'a KbLimits,
        target: Option<&Word>,
    ) -> Self {
        let n = p.ngens();
        let mut substituted = vec![false; 2 * n];
        for g in 0..n {
            if p.is_involutive(g) {
                substituted[Letter::inv(g).code()] = true;
            }
        }
        let store = RuleStore::new(2 * n, &substituted, true);
        Completer {
            ngens: n,
            ord,
            limits,
            substituted,
            store,
            processed: Vec::new(),
            queue: BinaryHeap::new(),
            since_tidy: 0,
            since_deletion: 0,
            dropped_long: false,
            started: Instant::now(),
            ticks: 0,
            target: target.map(|w| w.letters().to_vec()),
            seeding: true,
        }
    }

    fn key(&self, id: u32) -> (usize, Vec<u16>, u32) {
        let l = &self.store.lhs[id as usize];
        (l.len(), l.iter().map(|&x| self.ord.rank(x)).collect(), id)
    }

    fn push_rule(&mut self, lhs: Vec<Letter>, rhs: Vec<Letter>) -> u32 {
        let id = self.store.add(lhs, rhs);
        self.processed.push(false);
        if self.store.is_letter_rule_id(id) {
            self.processed[id as usize] = true;
        } else {
            let k = self.key(id);
            self.queue.push(Reverse(k));
        }
        id
    }

    fn out_of_time(&mut self) -> bool {
        self.ticks = self.ticks.wrapping_add(1);
        if !self.ticks.is_multiple_of(128) {
            return false;
        }
        self.limits
            .max_seconds
            .is_some_and(|s| self.started.elapsed().as_secs_f64() > s)
    }

    fn target_reached(&self) -> bool {
        self.target
            .as_ref()
            .is_some_and(|t| self.store.reduce(t).is_empty())
    }

    /// Reduces both sides and records the difference as a new rule.
    fn add_equation(&mut self, a: &[Letter], b: &[Letter]) -> Result<(), HaltReason> {
        let ra = self.store.reduce(a);
        let rb = self.store.reduce(b);
        if ra == rb {
            return Ok(());
        }
        let (l, r) = match self.ord.compare(&ra, &rb) {
            Ordering::Greater => (ra, rb),
            _ => (rb, ra),
        };
        if self.limits.max_rule_length.is_some_and(|cap| l.len() > cap) {
            self.dropped_long = true;
            return Ok(());
        }
        self.push_rule(l, r);
        self.since_tidy += 1;
        self.since_deletion += 1;
        if self.store.alive_count > self.limits.max_rules {
            return Err(HaltReason::RuleLimit);
        }
        if !self.seeding
            && self
                .limits
                .no_progress_window
                .is_some_and(|n| self.since_deletion >= n)
        {
            return Err(HaltReason::NoProgress);
        }
        Ok(())
    }

    fn tidy_due(&self) -> bool {
        let mut every = TIDY_MIN.max(self.store.alive_count / 4);
        if let Some(n) = self.limits.no_progress_window {
            every = every.min((n / 2).max(1));
        }
        self.since_tidy >= every
    }

    /// Interreduction: rules whose left side became reducible are removed
    /// and their equations re-added; right sides are brought to normal form.
    fn tidy(&mut self) -> Result<(), HaltReason> {
        self.since_tidy = 0;
        let mut readd = Vec::new();
        let ids: Vec<u32> = self.store.alive_ids().collect();
        for id in ids {
            if self.store.is_letter_rule_id(id) {
                continue;
            }
            self.store.hide(id);
            let i = id as usize;
            if self.store.is_reducible(&self.store.lhs[i]) {
                self.store.kill(id);
                readd.push((self.store.lhs[i].clone(), self.store.rhs[i].clone()));
            } else {
                let r = self.store.reduce(&self.store.rhs[i]);
                self.store.rhs[i] = r;
                self.store.unhide(id);
            }
        }
        if !readd.is_empty() {
            self.since_deletion = 0;
        }
        let live_len: usize = self
            .store
            .alive_ids()
            .map(|i| self.store.lhs[i as usize].len())
            .sum();
        if self.store.trie_nodes() > 4 * live_len + 4096 {
            self.store.rebuild_indexes();
        }
        for (l, r) in readd {
            self.add_equation(&l, &r)?;
        }
        Ok(())
    }

    fn seed(&mut self, p: &Presentation) -> Result<(), HaltReason> {
        for g in 0..self.ngens {
            let (x, xi) = (Letter::gen(g), Letter::inv(g));
            if p.is_involutive(g) {
                self.push_rule(vec![xi], vec![x]);
                self.add_equation(&[x, x], &[])?;
            } else {
                self.add_equation(&[x, xi], &[])?;
                self.add_equation(&[xi, x], &[])?;
            }
        }
        for r in p.relators() {
            let l = r.letters();
            let h = l.len().div_ceil(2);
            let v: Vec<Letter> = l[h..].iter().rev().map(|x| x.inverse()).collect();
            self.add_equation(&l[..h], &v)?;
        }
        self.tidy()?;
        self.seeding = false;
        self.since_deletion = 0;
        Ok(())
    }

    fn process(&mut self, id: u32) -> Result<(), HaltReason> {
        self.processed[id as usize] = true;
        let processed = &self.processed;
        let alive = &self.store.alive;
        let pairs = self
            .store
            .overlaps_of(id, |q| processed[q as usize] && alive[q as usize]);
        for (left, right, ov) in pairs {
            if !self.store.alive[left as usize] || !self.store.alive[right as usize] {
                continue;
            }
            let (a, b) = self.store.critical_pair(left, right, ov);
            self.add_equation(&a, &b)?;
            if self.out_of_time() {
                return Err(HaltReason::TimedOut);
            }
        }
        Ok(())
    }

    fn snapshot(&self, confluent: bool) -> RewriteSystem {
        RewriteSystem::from_store(
            self.ngens,
            self.ord.clone(),
            &self.store,
            &self.substituted,
            confluent,
        )
    }

    fn run_loop(&mut self) -> Result<(), HaltReason> {
        loop {
            while let Some(Reverse((_, _, id))) = self.queue.pop() {
                let i = id as usize;
                if !self.store.alive[i] || self.processed[i] {
                    continue;
                }
                self.process(id)?;
                if self.target_reached() {
                    return Ok(());
                }
                if self.tidy_due() {
                    self.tidy()?;
                }
                if self.out_of_time() {
                    return Err(HaltReason::TimedOut);
                }
            }
            self.tidy()?;
            if !self.queue.is_empty() {
                continue;
            }
            // Certificate pass; any unresolved pair goes back in.
            let rs = self.snapshot(false);
            let bad = rs.unresolved_pairs(usize::MAX);
            if bad.is_empty() {
                return Ok(());
            }
            let before = self.store.len();
            for pair in bad {
                self.add_equation(pair.left.letters(), pair.right.letters())?;
            }
            if self.store.len() == before {
                // only possible when the length cap discarded the repairs
                debug_assert!(self.dropped_long);
                return Ok(());
            }
        }
    }

    fn finish(mut self, p: &Presentation) -> Finish {
        let res = self.seed(p).and_then(|_| {
            if self.target_reached() {
                Ok(())
            } else {
                self.run_loop()
            }
        });
        if let Some(t) = &self.target {
            let mut trace = Vec::new();
            if self.store.reduce_traced(t, &mut trace).is_empty() {
                return Finish::TargetReached(trace);
            }
        }
        match res {
            Err(reason) => Finish::Halted(reason, self.snapshot(false)),
            Ok(()) if self.dropped_long => {
                Finish::Halted(HaltReason::LengthCap, self.snapshot(false))
            }
            Ok(()) => Finish::Confluent(self.snapshot(true)),
        }
    }
}

pub(crate) fn run(
    p: &Presentation,
    ord: &ShortlexOrder,
    limits: &KbLimits,
    target: Option<&Word>,
) -> Finish {
    Completer::new(p, ord, limits, target).finish(p)
}
