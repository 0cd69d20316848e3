//! Machine checks for the completeness of prime sequences in arithmetic
//! progressions and for the diameter of the reduced order-super-commuting
//! graph of the symmetric group.
//!
//! The library is organized around two pillars:
//!
//! * Number theory ([`primes`], [`sumset`]): sieved residue-class prime
//!   sequences, interval (Bertrand-type) checks, subset-sum generating
//!   polynomials `(1+x^{q_1})...(1+x^{q_n})`, completeness certificates,
//!   representation witnesses, and double (disjoint) representations.
//! * Group theory ([`symgroup`], [`supergraph`]): cycle types, element
//!   orders, centralizer order sets via wreath-product structure, and the
//!   order quotient of the reduced super-commuting graph with its
//!   components, diameter, and an independent arithmetic criterion.
//!
//! Everything is deterministic and exact: integer arithmetic only, no
//! probabilistic primality, no randomized search. All public values are
//! immutable after construction, so they can be shared freely across
//! threads.

mod bitrow;
pub mod fixtures;
pub mod primes;
pub mod sumset;
pub mod supergraph;
pub mod symgroup;

pub use primes::{ClassSequence, IntervalReport, PrimeClass, Ratio};
pub use sumset::{
    CoefficientTable, CompletenessCertificate, DoubleRepresentation, PresenceTable,
    Representation, Universe,
};
pub use supergraph::{CriterionWitness, Diameter, OrderGraph};
pub use symgroup::{CycleType, OrderSet};
