use std::collections::HashSet;
use std::time::{Duration, Instant};

use super::table::{Columns, CosetTable};
use super::{Strategy, TcLimits, TcOutcome};
use crate::fpgroup::{free_reduce, Presentation, Word};

/// Coset 0 is the "undefined" sentinel; real cosets start at 1.
const UNDEF: u32 = 0;

#[derive(Debug)]
enum Stop {
    Overflow,
    TimedOut,
}

/// Returned by a scan that needed a new coset while the table was full.
struct Full;

pub(crate) struct Enumerator {
    columns: Columns,
    ncols: usize,
    relators: Vec<Vec<u32>>,
    subgroup: Vec<Vec<u32>>,
    /// cyclic conjugates of relators and their inverses, grouped by first column
    conjugates: Vec<Vec<Vec<u32>>>,
    strategy: Strategy,
    max_cosets: usize,
    deadline: Option<Instant>,
    ticks: u32,

    table: Vec<u32>,
    /// union-find parent; `parent[c] == c` iff coset `c` is live
    parent: Vec<u32>,
    allocated: usize,
    live: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
}

impl Enumerator {
    pub fn new(p: &Presentation, subgroup: &[Word], limits: &TcLimits) -> Self {
        let columns = Columns::new(p);
        let ncols = columns.count();
        let mut relators: Vec<Vec<u32>> = Vec::new();
        let mut seen = HashSet::new();
        for r in p.relators() {
            let r = free_reduce(r, p);
            // squares of involutive generators hold by construction
            if r.len() == 2
                && r.letters()[0] == r.letters()[1]
                && p.is_involutive(r.letters()[0].generator())
            {
                continue;
            }
            if r.is_empty() {
                continue;
            }
            let cols = columns.word(&r);
            if seen.insert(cols.clone()) {
                relators.push(cols);
            }
        }
        let subgroup = subgroup
            .iter()
            .map(|w| columns.word(&free_reduce(w, p)))
            .filter(|w| !w.is_empty())
            .collect();
        let conjugates = if limits.strategy == Strategy::Felsch {
            build_conjugates(&relators, &columns)
        } else {
            Vec::new()
        };
        let deadline = limits
            .max_seconds
            .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
        Enumerator {
            ncols,
            columns,
            relators,
            subgroup,
            conjugates,
            strategy: limits.strategy,
            max_cosets: limits.max_cosets,
            deadline,
            ticks: 0,
            table: vec![UNDEF; 2 * ncols],
            parent: vec![0, 1],
            allocated: 1,
            live: 1,
            queue: Vec::new(),
            deductions: Vec::new(),
        }
    }

    pub fn run(mut self) -> TcOutcome {
        let res = match self.strategy {
            Strategy::Hlt => self.run_hlt(),
            Strategy::Felsch => self.run_felsch(),
        };
        match res {
            Ok(()) => {
                let table = self.finish();
                TcOutcome::Enumerated {
                    index: table.ncosets,
                    table,
                }
            }
            Err(Stop::Overflow) => TcOutcome::Overflow,
            Err(Stop::TimedOut) => TcOutcome::TimedOut,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, v: u32) {
        self.table[c as usize * self.ncols + col as usize] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Stop::TimedOut);
                }
            }
        }
        Ok(())
    }

    fn define(&mut self, c: u32, col: u32) -> Result<u32, Full> {
        if self.allocated >= self.max_cosets {
            return Err(Full);
        }
        self.allocated += 1;
        let new = self.allocated as u32;
        self.table.resize(self.table.len() + self.ncols, UNDEF);
        self.parent.push(new);
        self.live += 1;
        self.set(c, col, new);
        let inv = self.columns.inverse[col as usize];
        self.set(new, inv, c);
        if self.strategy == Strategy::Felsch {
            self.deductions.push((c, col));
        }
        Ok(new)
    }

    fn deduce(&mut self, f: u32, col: u32, b: u32) {
        self.set(f, col, b);
        let inv = self.columns.inverse[col as usize];
        self.set(b, inv, f);
        if self.strategy == Strategy::Felsch {
            self.deductions.push((f, col));
        }
    }

    /// Scans `word` from `c`, defining cosets to fill the gap.
    fn scan_and_fill(&mut self, c: u32, word: &[u32]) -> Result<(), Full> {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len();
        loop {
            while i < j {
                let nx = self.get(f, word[i]);
                if nx == UNDEF {
                    break;
                }
                f = nx;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let nx = self.get(b, self.columns.inverse[word[j - 1] as usize]);
                if nx == UNDEF {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.deduce(f, word[i], b);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    /// Scans `word` from `c` without defining cosets.
    fn scan_and_deduce(&mut self, c: u32, word: &[u32]) {
        let mut f = c;
        let mut i = 0usize;
        let mut j = word.len();
        while i < j {
            let nx = self.get(f, word[i]);
            if nx == UNDEF {
                break;
            }
            f = nx;
            i += 1;
        }
        if i == j {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        while j > i {
            let nx = self.get(b, self.columns.inverse[word[j - 1] as usize]);
            if nx == UNDEF {
                break;
            }
            b = nx;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.deduce(f, word[i], b);
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let e = self.queue[qi];
            qi += 1;
            for col in 0..self.ncols as u32 {
                let f = self.get(e, col);
                if f == UNDEF {
                    continue;
                }
                let inv = self.columns.inverse[col as usize];
                if self.get(f, inv) == e {
                    self.set(f, inv, UNDEF);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let e1x = self.get(e1, col);
                if e1x != UNDEF {
                    self.merge(f1, e1x);
                } else {
                    let f1i = self.get(f1, inv);
                    if f1i != UNDEF {
                        self.merge(e1, f1i);
                    } else {
                        self.set(e1, col, f1);
                        self.set(f1, inv, e1);
                        if self.strategy == Strategy::Felsch {
                            self.deductions.push((e1, col));
                        }
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Renumbers live cosets consecutively in definition order. Returns the
    /// new number of the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let mut newnum = vec![UNDEF; self.allocated + 1];
        let mut next = 0u32;
        let mut new_cursor = None;
        for c in 1..=self.allocated as u32 {
            if self.is_live(c) {
                next += 1;
                newnum[c as usize] = next;
                if new_cursor.is_none() && c >= cursor {
                    new_cursor = Some(next);
                }
            }
        }
        let ncols = self.ncols;
        let mut dst = 1usize;
        for c in 1..=self.allocated {
            if !self.is_live(c as u32) {
                continue;
            }
            for col in 0..ncols {
                let v = self.table[c * ncols + col];
                self.table[dst * ncols + col] = if v == UNDEF {
                    UNDEF
                } else {
                    newnum[v as usize]
                };
            }
            dst += 1;
        }
        self.allocated = next as usize;
        self.live = self.allocated;
        self.table.truncate((self.allocated + 1) * ncols);
        self.parent = (0..=self.allocated as u32).collect();
        if self.strategy == Strategy::Felsch {
            let ds: Vec<(u32, u32)> = self
                .deductions
                .iter()
                .filter(|&&(c, _)| (c as usize) < newnum.len() && newnum[c as usize] != UNDEF)
                .map(|&(c, col)| (newnum[c as usize], col))
                .collect();
            self.deductions = ds;
        }
        new_cursor.unwrap_or(next + 1)
    }

    /// Scans all relators from every live coset without defining.
    fn lookahead(&mut self) -> Result<(), Stop> {
        let rels = std::mem::take(&mut self.relators);
        let mut c = 1u32;
        while (c as usize) <= self.allocated {
            if self.is_live(c) {
                for r in &rels {
                    self.scan_and_deduce(c, r);
                    if !self.is_live(c) {
                        break;
                    }
                }
                if let Err(e) = self.tick() {
                    self.relators = rels;
                    return Err(e);
                }
            }
            c += 1;
        }
        self.relators = rels;
        Ok(())
    }

    /// Frees table space when full. Returns the cursor's new position.
    fn make_room(&mut self, cursor: u32) -> Result<u32, Stop> {
        let dead = self.allocated - self.live;
        if dead * 64 < self.max_cosets {
            self.lookahead()?;
        }
        if self.allocated == self.live {
            return Err(Stop::Overflow);
        }
        Ok(self.compact(cursor))
    }

    fn run_hlt(&mut self) -> Result<(), Stop> {
        let subgroup = std::mem::take(&mut self.subgroup);
        for w in &subgroup {
            while self.scan_and_fill(1, w).is_err() {
                self.make_room(1)?;
            }
        }
        self.subgroup = subgroup;
        let rels = std::mem::take(&mut self.relators);
        let res = self.hlt_loop(&rels);
        self.relators = rels;
        res
    }

    fn hlt_loop(&mut self, rels: &[Vec<u32>]) -> Result<(), Stop> {
        let mut c = 1u32;
        'cosets: while (c as usize) <= self.allocated {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            for r in rels {
                if self.scan_and_fill(c, r).is_err() {
                    c = self.make_room(c)?;
                    continue 'cosets;
                }
                if !self.is_live(c) {
                    c += 1;
                    continue 'cosets;
                }
            }
            for col in 0..self.ncols as u32 {
                if self.get(c, col) == UNDEF && self.define(c, col).is_err() {
                    c = self.make_room(c)?;
                    continue 'cosets;
                }
            }
            self.tick()?;
            c += 1;
        }
        Ok(())
    }

    fn process_deductions(&mut self) -> Result<(), Stop> {
        let conj = std::mem::take(&mut self.conjugates);
        let mut res = Ok(());
        while let Some((c, col)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for w in &conj[col as usize] {
                self.scan_and_deduce(c, w);
                if !self.is_live(c) {
                    break;
                }
            }
            if self.is_live(c) {
                let d = self.get(c, col);
                let inv = self.columns.inverse[col as usize];
                if d != UNDEF && inv != col {
                    for w in &conj[inv as usize] {
                        if !self.is_live(d) {
                            break;
                        }
                        self.scan_and_deduce(d, w);
                    }
                }
            }
            if let Err(e) = self.tick() {
                res = Err(e);
                break;
            }
        }
        self.conjugates = conj;
        res
    }

    fn run_felsch(&mut self) -> Result<(), Stop> {
        let subgroup = std::mem::take(&mut self.subgroup);
        for w in &subgroup {
            if self.scan_and_fill(1, w).is_err() {
                return Err(Stop::Overflow);
            }
        }
        self.subgroup = subgroup;
        // rows before the cursor were complete when it passed them
        let mut cursor = 1u32;
        loop {
            self.process_deductions()?;
            let mut gap = self.find_gap(cursor);
            if gap.is_none() && cursor > 1 {
                gap = self.find_gap(1);
            }
            match gap {
                Some((c, col)) => {
                    cursor = c;
                    if self.define(c, col).is_err() {
                        if self.allocated > self.live {
                            cursor = self.compact(1);
                            continue;
                        }
                        return Err(Stop::Overflow);
                    }
                }
                None => {
                    let before = self.live;
                    self.lookahead()?;
                    if self.live == before && self.deductions.is_empty() {
                        return Ok(());
                    }
                }
            }
        }
    }

    fn find_gap(&self, from: u32) -> Option<(u32, u32)> {
        (from..=self.allocated as u32)
            .filter(|&c| self.is_live(c))
            .find_map(|c| {
                (0..self.ncols as u32)
                    .find(|&col| self.get(c, col) == UNDEF)
                    .map(|col| (c, col))
            })
    }

    fn finish(mut self) -> CosetTable {
        self.compact(1);
        CosetTable {
            columns: self.columns,
            ncosets: self.allocated,
            rows: self.table,
        }
    }
}

fn build_conjugates(relators: &[Vec<u32>], columns: &Columns) -> Vec<Vec<Vec<u32>>> {
    let mut by_col: Vec<Vec<Vec<u32>>> = vec![Vec::new(); columns.count()];
    let mut seen = HashSet::new();
    for r in relators {
        let inv: Vec<u32> = r
            .iter()
            .rev()
            .map(|&c| columns.inverse[c as usize])
            .collect();
        for w in [r, &inv] {
            for s in 0..w.len() {
                let rot: Vec<u32> = w[s..].iter().chain(&w[..s]).copied().collect();
                if seen.insert(rot.clone()) {
                    by_col[rot[0] as usize].push(rot);
                }
            }
        }
    }
    by_col
}
