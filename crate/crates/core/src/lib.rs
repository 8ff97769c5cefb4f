//! Exact computation of Castelnuovo–Mumford regularity for homogeneous
//! ideals, minimal reduction degrees, and the asymptotic behaviour of
//! `reg(I^n)` and of the regularity of integral closures of powers.

pub mod degree;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod monomial_ideal;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod reductions;
pub mod regularity;
pub mod ring;
pub mod selftest;

pub use degree::ExtDegree;
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{Ring, RingRef};
