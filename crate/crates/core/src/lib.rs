//! Exact-arithmetic toolkit for Ryser designs.
//!
//! A Ryser design is a family of v distinct nonempty blocks over a v-point
//! universe with a constant pairwise intersection λ >= 1, every block larger
//! than λ, and at least two block sizes. The open conjecture is that every
//! such design is Type-1: its equivalence class under block complementation
//! contains a symmetric design. This crate provides the machinery to state
//! and probe that question at desk scale:
//!
//! * [`bitset`]: fixed-width point sets over `u64` limbs;
//! * [`design`]: set systems, replication profiles, classification;
//! * [`complement`]: the complementation operator and its verified
//!   properties, block classes;
//! * [`invariants`]: the exact parameter ledger (ρ = c/d, g, a, point-class
//!   sizes) and every identity tying the parameters together;
//! * [`equivalence`]: equivalence classes, Type-1 detection, the
//!   large/small coexistence check, the even-block construction;
//! * [`generators`]: difference sets and the seed designs built from them;
//! * [`search`]: exhaustive isomorph-free search over (v, λ) cells.
//!
//! All arithmetic is exact (big integers and reduced big rationals); no
//! floating point anywhere.

pub mod bitset;
pub mod complement;
pub mod design;
pub mod equivalence;
pub mod generators;
pub mod invariants;
pub mod search;

pub use bitset::{PointId, PointSet};
pub use design::{DesignKind, ReplicationProfile, SetSystem};

/// The `num` crate this library builds its exact arithmetic on, re-exported
/// so downstream crates use the same types.
pub use num;
