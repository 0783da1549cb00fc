#![allow(dead_code)]

use std::path::PathBuf;

use fourmove::fpgroup::{Letter, Presentation, Word};
use fourmove::knuthbendix::{
    complete, count_irreducible, IrreducibleCount, KbLimits, KbOutcome, ShortlexOrder,
};
use fourmove::toddcoxeter::{self, GroupOrder, TcLimits};
use proptest::prelude::*;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn hard_knot_codes() -> Vec<String> {
    std::fs::read_to_string(fixture("hard_knots.txt"))
        .expect("fixture")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect()
}

pub const TREFOIL: &str = "1,2,3,1,2,3";
pub const FIGURE_EIGHT: &str = "1,2,3,4,2,1,4,3";
pub const UNKNOT: &str = "1,1";

/// A random presentation with at most 3 generators and 6 relators of
/// length at most 6.
pub fn random_presentation(rng: &mut impl Rng) -> Presentation {
    let n = rng.gen_range(1..=3);
    let involutive: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.3)).collect();
    let mut rels: Vec<Word> = (0..n)
        .filter(|&g| involutive[g])
        .map(|g| Word::new(vec![Letter::gen(g); 2]))
        .collect();
    let extra = rng.gen_range(1..=6 - rels.len().min(5));
    for _ in 0..extra {
        let len = rng.gen_range(1..=6);
        let w: Word = (0..len)
            .map(|_| {
                let g = rng.gen_range(0..n);
                if rng.gen_bool(0.5) {
                    Letter::gen(g)
                } else {
                    Letter::inv(g)
                }
            })
            .collect();
        rels.push(w);
    }
    Presentation::new(n, involutive, rels).expect("well-formed")
}

pub fn word_strategy(ngens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..ngens, any::<bool>()), 0..=max_len).prop_map(|v| {
        v.into_iter()
            .map(|(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) })
            .collect()
    })
}

pub fn presentation_strategy() -> impl Strategy<Value = Presentation> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(
                    word_strategy(n, 6).prop_filter("nonempty", |w| !w.is_empty()),
                    1..=6,
                ),
            )
        })
        .prop_map(|(n, inv, mut rels)| {
            for g in (0..n).rev().filter(|&g| inv[g]) {
                rels.insert(0, Word::new(vec![Letter::gen(g); 2]));
            }
            Presentation::new(n, inv, rels).expect("well-formed")
        })
}

pub fn small_tc() -> TcLimits {
    TcLimits::with_max_cosets(50_000)
}

pub fn small_kb() -> KbLimits {
    KbLimits {
        max_rules: 5_000,
        max_seconds: Some(5.0),
        ..Default::default()
    }
}

pub fn tc_order(p: &Presentation, limits: &TcLimits) -> Option<usize> {
    match toddcoxeter::order(p, limits) {
        GroupOrder::Finite(m) => Some(m),
        _ => None,
    }
}

pub fn kb_count(p: &Presentation, limits: &KbLimits) -> Option<IrreducibleCount> {
    match complete(p, &ShortlexOrder::standard(p.ngens()), limits) {
        KbOutcome::Confluent(rs) => Some(count_irreducible(&rs)),
        KbOutcome::Halted { .. } => None,
    }
}
