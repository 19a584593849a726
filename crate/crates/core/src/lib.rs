//! Exact computer algebra for skew Hurwitz polynomial rings (hR, alpha)
//! over finite coefficient rings: ring construction, polynomial
//! arithmetic, one-sided annihilators and insulators, and strong-primeness
//! deciders that emit re-checkable certificates.

pub mod annihilate;
pub mod endo;
pub mod error;
pub mod fp;
pub mod hurwitz;
pub mod literal;
pub mod primetest;
pub mod ring;
pub mod sets;

pub use endo::{endo_apply, endo_image, make_ring, Endomorphism, ImageQuery};
pub use error::{Error, Result};
pub use hurwitz::{binom_mod, binom_reduced, hp_add, hp_embed_set, hp_mul, hp_neg, hp_stats, HPoly, SupportStats};
pub use ring::{elem_arith, ArithOp, Elem, EndoSelector, Family, FiniteRing, RingSpec, DEFAULT_ELEMENT_CAP, TABLE_LIMIT};
pub use sets::{ElementSet, SetTag};
