//! Core engine for generating-pair atlases of finite two-generated groups.
//!
//! Pipeline: enumerate the conjugacy classes of generating pairs of a finite
//! group G (`epi`), decompose them into orbits under the two Nielsen moves
//! realizing the Out⁺(F₂) ≅ SL₂(ℤ) action (`mcg`), read off each orbit's
//! modular-curve signature and monodromy, and decide congruence versus
//! noncongruence exactly via the level test in SL₂(ℤ/2l) (`congruence`).
//! The `markoff` module runs the parallel story on the Markoff surface
//! mod p, including the trace bijection against SL₂(F_p) generating pairs.

pub mod congruence;
pub mod epi;
pub mod error;
pub mod group;
pub mod markoff;
pub mod mcg;
pub mod perm;
pub mod standard;
pub mod util;

pub use error::{Error, Result};
pub use group::{identify_alt_sym, AltSym, ConjClass, PermGroup};
pub use perm::{Perm, Point};
