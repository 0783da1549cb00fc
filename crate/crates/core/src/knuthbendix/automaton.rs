use std::collections::VecDeque;

use serde::Serialize;

use super::rewrite::RewriteSystem;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IrreducibleCount {
    Finite(u128),
    Infinite,
    /// Finitely many, but more than fit in a `u128`.
    TooLarge,
}

/// Aho–Corasick automaton over all left sides. States that have matched a
/// left side are dead; the live part accepts exactly the irreducible words.
struct Automaton {
    width: usize,
    delta: Vec<u32>,
    dead: Vec<bool>,
}

impl Automaton {
    fn build(rs: &RewriteSystem) -> Self {
        let width = 2 * rs.ngens();
        let store = rs.store();
        let mut delta: Vec<u32> = vec![u32::MAX; width];
        let mut dead = vec![false];
        for id in store.alive_ids() {
            let mut node = 0usize;
            for l in &store.lhs[id as usize] {
                let slot = node * width + l.code();
                node = if delta[slot] == u32::MAX {
                    let new = dead.len();
                    dead.push(false);
                    delta.extend(std::iter::repeat_n(u32::MAX, width));
                    delta[slot] = new as u32;
                    new
                } else {
                    delta[slot] as usize
                };
            }
            dead[node] = true;
        }
        // breadth-first failure links, folded straight into delta
        let mut fail = vec![0u32; dead.len()];
        let mut queue = VecDeque::new();
        for d in delta.iter_mut().take(width) {
            match *d {
                u32::MAX => *d = 0,
                c => {
                    fail[c as usize] = 0;
                    queue.push_back(c);
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            let s = s as usize;
            let f = fail[s] as usize;
            dead[s] = dead[s] || dead[f];
            for a in 0..width {
                let slot = s * width + a;
                match delta[slot] {
                    u32::MAX => delta[slot] = delta[f * width + a],
                    c => {
                        fail[c as usize] = delta[f * width + a];
                        queue.push_back(c);
                    }
                }
            }
        }
        Automaton { width, delta, dead }
    }

    fn count(&self) -> IrreducibleCount {
        #[derive(Copy, Clone, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let n = self.dead.len();
        if self.dead[0] {
            return IrreducibleCount::Finite(0);
        }
        let mut mark = vec![Mark::New; n];
        // None marks overflow
        let mut paths: Vec<Option<u128>> = vec![Some(0); n];
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        mark[0] = Mark::Open;
        while let Some(top) = stack.last_mut() {
            let (s, a) = (top.0 as usize, top.1);
            if a == self.width {
                stack.pop();
                let mut total = Some(1u128);
                for b in 0..self.width {
                    let t = self.delta[s * self.width + b] as usize;
                    if !self.dead[t] {
                        total = total.zip(paths[t]).and_then(|(x, y)| x.checked_add(y));
                    }
                }
                paths[s] = total;
                mark[s] = Mark::Done;
                continue;
            }
            top.1 += 1;
            let t = self.delta[s * self.width + a] as usize;
            if self.dead[t] {
                continue;
            }
            match mark[t] {
                Mark::Open => return IrreducibleCount::Infinite,
                Mark::Done => {}
                Mark::New => {
                    mark[t] = Mark::Open;
                    stack.push((t as u32, 0));
                }
            }
        }
        match paths[0] {
            Some(m) => IrreducibleCount::Finite(m),
            None => IrreducibleCount::TooLarge,
        }
    }
}

/// Number of words with no left side of `rs` as a subword. For a confluent
/// system of a group this is the group order.
pub fn count_irreducible(rs: &RewriteSystem) -> IrreducibleCount {
    Automaton::build(rs).count()
}
