//! Separating families of linear orders and tournaments, and the hereditarily
//! rigid relation families they give rise to.
//!
//! A family of binary relations on `{0, .., m-1}` is *separating* when distinct
//! ordered pairs `(x, y)`, `x != y`, have distinct profiles
//! `(ρ(x, y))_ρ`. For orders and tournaments this is the same as being
//! hereditarily rigid, and [`check`] decides it three independent ways.
//!
//! ```
//! use rigidsep::{construct, check};
//!
//! let fam = construct::paper_family_6();
//! assert!(check::is_separating(&fam).unwrap());
//! assert_eq!(construct::lower_bound(6).unwrap(), fam.len());
//! ```

pub mod bits;
pub mod check;
pub mod construct;
pub mod error;
pub mod json;
pub mod relation;
pub mod sat;
pub mod search;

pub use bits::BitString;
pub use check::{is_separating, DoubleProfile, Profile, Separation, Verdicts};
pub use error::{Error, Result};
pub use relation::{
    BinaryRel, BinaryRelation, Family, FamilyKind, GroundSet, LinearOrder, Members, PartialUnaryMap, Reflexivity,
    Tournament,
};
pub use sat::CnfInstance;
pub use search::{SearchBudget, SearchOutcome, SearchStatus, SymmetryFlags};
