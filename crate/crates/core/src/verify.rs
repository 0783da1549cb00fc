//! Machine checks of word identities, engine cross-validation and a
//! brute-force homomorphism counter for small finite groups.

use serde::Serialize;

use crate::fpgroup::{Letter, Presentation, Word};
use crate::knuthbendix::{
    complete, count_irreducible, is_consequence, Consequence, HaltReason, IrreducibleCount,
    KbLimits, KbOutcome, RewriteStep, ShortlexOrder,
};
use crate::toddcoxeter::{self, GroupOrder, TcLimits};

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGroupTable {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl SmallGroupTable {
    /// Checks closure, associativity, identity and inverses exhaustively.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, String> {
        let m = table.len();
        if m == 0 {
            return Err("empty table".into());
        }
        let mut mul = Vec::with_capacity(m * m);
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    m
                ));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= m) {
                return Err(format!("row {} contains {} outside 0..{}", i, x, m));
            }
            mul.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| mul[a * m + b];
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or("no identity element")?;
        let mut inverse = vec![0; m];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..m)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| format!("element {} has no inverse", x))?;
        }
        for a in 0..m {
            for b in 0..m {
                let ab = at(a, b);
                for c in 0..m {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(format!("associativity fails at ({}, {}, {})", a, b, c));
                    }
                }
            }
        }
        Ok(SmallGroupTable {
            order: m,
            mul,
            identity,
            inverse,
        })
    }

    pub fn cyclic(m: usize) -> Self {
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        SmallGroupTable::new(table).expect("cyclic group table")
    }

    /// The group generated by the given permutations of `0..degree`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, String> {
        let degree = gens.first().map_or(0, Vec::len);
        if gens.iter().any(|g| {
            let mut s = g.clone();
            s.sort_unstable();
            s != (0..degree).collect::<Vec<_>>()
        }) {
            return Err("generators must be permutations of the same degree".into());
        }
        let compose =
            |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&x| b[x]).collect() };
        let mut elems: Vec<Vec<usize>> = vec![(0..degree).collect()];
        let mut index = std::collections::HashMap::new();
        index.insert(elems[0].clone(), 0usize);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let e = compose(&elems[i], g);
                if !index.contains_key(&e) {
                    index.insert(e.clone(), elems.len());
                    elems.push(e);
                }
            }
            i += 1;
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        SmallGroupTable::new(table)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        } else {
            gens.push((0..n).collect());
        }
        SmallGroupTable::from_permutations(&gens).expect("symmetric group")
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        SmallGroupTable::from_permutations(&[rot, refl]).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Evaluates `w` with generator `g` sent to `images[g]`.
    pub fn evaluate(&self, images: &[usize], w: &Word) -> usize {
        w.letters().iter().fold(self.identity, |acc, &l| {
            let x = images[l.generator()];
            self.mul(acc, if l.is_inverse() { self.inverse(x) } else { x })
        })
    }
}

/// Visits every assignment of generators to elements satisfying the
/// relators, checking each relator as soon as its generators are assigned.
fn for_each_hom(p: &Presentation, target: &SmallGroupTable, mut f: impl FnMut(&[usize]) -> bool) {
    let n = p.ngens();
    let mut by_last: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(g) = r.max_generator() {
            by_last[g].push(r)
        }
    }
    let mut images = vec![0usize; n];
    fn go(
        g: usize,
        images: &mut Vec<usize>,
        by_last: &[Vec<&Word>],
        target: &SmallGroupTable,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if g == images.len() {
            return f(images);
        }
        for x in 0..target.order() {
            images[g] = x;
            if by_last[g]
                .iter()
                .all(|r| target.evaluate(images, r) == target.identity())
                && !go(g + 1, images, by_last, target, f)
            {
                return false;
            }
        }
        true
    }
    go(0, &mut images, &by_last, target, &mut f);
}

/// Number of homomorphisms from the group of `p` to `target`.
pub fn hom_count(p: &Presentation, target: &SmallGroupTable) -> u64 {
    let mut count = 0u64;
    for_each_hom(p, target, |_| {
        count += 1;
        true
    });
    count
}

/// A homomorphism to `target` under which `w` is not the identity, if any.
pub fn find_separating_hom(
    p: &Presentation,
    w: &Word,
    target: &SmallGroupTable,
) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_hom(p, target, |images| {
        if target.evaluate(images, w) != target.identity() {
            found = Some(images.to_vec());
            false
        } else {
            true
        }
    });
    found
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdentityStatus {
    Verified {
        trace: Vec<RewriteStep>,
    },
    Failed {
        #[serde(serialize_with = "crate::knuthbendix::ser_word")]
        normal_form: Word,
    },
    Unknown {
        reason: HaltReason,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub presentation: String,
    #[serde(serialize_with = "crate::knuthbendix::ser_word")]
    pub target: Word,
    #[serde(flatten)]
    pub status: IdentityStatus,
}

impl IdentityReport {
    pub fn is_verified(&self) -> bool {
        matches!(self.status, IdentityStatus::Verified { .. })
    }
}

/// Checks that a `Verified` trace really rewrites the target to the
/// identity, one rule application at a time.
pub fn check_trace(target: &Word, trace: &[RewriteStep]) -> Result<(), String> {
    let mut current = target.clone();
    for (i, step) in trace.iter().enumerate() {
        if step.before != current {
            return Err(format!(
                "step {} starts from {} not {}",
                i, step.before, current
            ));
        }
        let b = step.before.letters();
        let (l, r) = (step.rule.lhs.letters(), step.rule.rhs.letters());
        if step.position + l.len() > b.len() || &b[step.position..step.position + l.len()] != l {
            return Err(format!(
                "step {}: rule {} not found at {}",
                i, step.rule.lhs, step.position
            ));
        }
        let mut after = b[..step.position].to_vec();
        after.extend_from_slice(r);
        after.extend_from_slice(&b[step.position + l.len()..]);
        if step.after.letters() != &after[..] {
            return Err(format!("step {}: result mismatch", i));
        }
        current = step.after.clone();
    }
    if current.is_empty() {
        Ok(())
    } else {
        Err(format!("trace ends at {} instead of the identity", current))
    }
}

/// Runs `is_consequence` and packages the outcome.
pub fn verify_identity(
    name: &str,
    p: &Presentation,
    target: &Word,
    limits: &KbLimits,
) -> IdentityReport {
    let ord = ShortlexOrder::standard(p.ngens());
    let status = match is_consequence(p, target, &ord, limits) {
        Consequence::True { trace } => {
            debug_assert!(check_trace(target, &trace).is_ok());
            IdentityStatus::Verified { trace }
        }
        Consequence::False { normal_form } => IdentityStatus::Failed { normal_form },
        Consequence::Unknown { reason } => IdentityStatus::Unknown { reason },
    };
    IdentityReport {
        name: name.to_string(),
        presentation: p.to_text(),
        target: target.clone(),
        status,
    }
}

fn commutator(x: &Word, y: &Word) -> Word {
    x.concat(y).concat(&x.inverse()).concat(&y.inverse())
}

/// `⟨b, c | (cb)²(bc)⁻², (c·bcb⁻¹)²(bcb⁻¹·c)⁻²⟩` with b = g1 and c = g2,
/// optionally without the second relator.
pub fn fourth_power_presentation(with_second: bool) -> Presentation {
    let b = Word::from_signed(&[1]);
    let c = Word::from_signed(&[2]);
    let square_swap = |x: &Word, y: &Word| {
        let xy = x.concat(y).pow(2);
        let yx = y.concat(x).pow(2);
        xy.concat(&yx.inverse())
    };
    let mut rels = vec![square_swap(&c, &b)];
    if with_second {
        let bcb = b.concat(&c).concat(&b.inverse());
        rels.push(square_swap(&c, &bcb));
    }
    Presentation::plain(2, rels).expect("well-formed")
}

/// `c·b⁴·c⁻¹·b⁻⁴`
pub fn fourth_power_target() -> Word {
    commutator(&Word::from_signed(&[2]), &Word::from_signed(&[1]).pow(4))
}

/// Every generator's fourth power commutes with every other generator,
/// derived from the two relators alone.
pub fn verify_fourth_power_identity(limits: &KbLimits) -> IdentityReport {
    verify_identity(
        "fourth powers commute",
        &fourth_power_presentation(true),
        &fourth_power_target(),
        limits,
    )
}

/// Relators `QpQp·(pQpQ)⁻¹`, `qPqP·(PqPq)⁻¹`, `qpqp·(pqpq)⁻¹` in p = g1,
/// q = g2 (capitals are inverses); `omit` drops one of them (0-based).
pub fn h_abelian_presentation(omit: Option<usize>) -> Presentation {
    let p = Word::from_signed(&[1]);
    let q = Word::from_signed(&[2]);
    let (pi, qi) = (p.inverse(), q.inverse());
    let swap = |x: &Word, y: &Word| {
        let xy = x.concat(y).pow(2);
        let yx = y.concat(x).pow(2);
        xy.concat(&yx.inverse())
    };
    let rels: Vec<Word> = [swap(&qi, &p), swap(&q, &pi), swap(&q, &p)]
        .into_iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != omit)
        .map(|(_, r)| r)
        .collect();
    Presentation::plain(2, rels).expect("well-formed")
}

/// `p²·q²·p⁻²·q⁻²`
pub fn h_abelian_target() -> Word {
    commutator(&Word::from_signed(&[1, 1]), &Word::from_signed(&[2, 2]))
}

/// Squares of the two generators commute.
pub fn verify_h_abelian_identity(limits: &KbLimits) -> IdentityReport {
    verify_identity(
        "squares commute",
        &h_abelian_presentation(None),
        &h_abelian_target(),
        limits,
    )
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CrossCheck {
    Agree { order: usize },
    Disagree { tc: usize, kb: u128 },
    Inconclusive,
}

/// Group order computed by both engines.
pub fn cross_check_order(p: &Presentation, tc: &TcLimits, kb: &KbLimits) -> CrossCheck {
    let tc_order = match toddcoxeter::order(p, tc) {
        GroupOrder::Finite(m) => m,
        _ => return CrossCheck::Inconclusive,
    };
    let kb_order = match complete(p, &ShortlexOrder::standard(p.ngens()), kb) {
        KbOutcome::Confluent(rs) => match count_irreducible(&rs) {
            IrreducibleCount::Finite(m) => m,
            IrreducibleCount::Infinite | IrreducibleCount::TooLarge => {
                return CrossCheck::Disagree {
                    tc: tc_order,
                    kb: u128::MAX,
                }
            }
        },
        KbOutcome::Halted { .. } => return CrossCheck::Inconclusive,
    };
    if kb_order == tc_order as u128 {
        CrossCheck::Agree { order: tc_order }
    } else {
        CrossCheck::Disagree {
            tc: tc_order,
            kb: kb_order,
        }
    }
}

/// Replaces every occurrence of generator `from` by generator `to`, for
/// substitution checks such as setting b = c.
pub fn substitute(w: &Word, from: usize, to: usize) -> Word {
    w.letters()
        .iter()
        .map(|&l| {
            if l.generator() == from {
                if l.is_inverse() {
                    Letter::inv(to)
                } else {
                    Letter::gen(to)
                }
            } else {
                l
            }
        })
        .collect()
}
