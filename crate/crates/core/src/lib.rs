//! Group-theoretic machinery for deciding whether the Dabkowski–Sahi 4-move
//! invariant of an alternating knot is trivially valued.
//!
//! A knot is read from its Gauss code ([`knotcodes`]), turned into an
//! involutive Wirtinger-style presentation, extended by truncated families of
//! fourth-power relators ([`fpgroup`]), and the resulting group is shown to be
//! finite by coset enumeration ([`toddcoxeter`]) or by Knuth–Bendix
//! completion ([`knuthbendix`]). [`pipeline`] strings the stages together and
//! runs whole census files; [`verify`] machine-checks supporting identities
//! and cross-validates the two engines.

pub mod fpgroup;
pub mod knotcodes;
pub mod knuthbendix;
pub mod pipeline;
pub mod toddcoxeter;
pub mod verify;
