//! Cohomology of finite inverse semigroups with coefficients in semilattices
//! of abelian groups, and crossed module extensions built from and
//! classified by order-preserving 3-cocycles.

pub mod cochain;
pub mod cohomology;
pub mod correspondence;
pub mod cover;
pub mod crossed;
pub mod extraction;
pub mod fixtures;
pub mod report;
pub mod semigroup;
pub mod tmodule;
pub mod words;
