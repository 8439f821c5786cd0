//! Exact computer algebra over graded complete-intersection quotients
//! A = Q/(f_1..f_c) of polynomial rings: Groebner bases, minimal graded free
//! resolutions, cohomology operators, bigraded Ext tables with Rees-algebra
//! actions, asymptotic invariants, and support-variety data.

pub mod error;
pub mod field;
pub mod free;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod interp;
pub mod linalg;
pub mod modules;
pub mod par;
pub mod ring;

pub mod resolution;
pub mod operators;
pub mod ext;
pub mod asymptotics;
pub mod variety;

pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

pub mod poly;
