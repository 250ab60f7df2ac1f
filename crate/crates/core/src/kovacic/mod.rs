//! Differential Galois evidence for y″ = r y with r Fuchsian: rational
//! Riccati solutions (case I), the case-II steps of Kovacic's algorithm,
//! exponent screening for case III, and the resulting classification of
//! the identity component.

mod case1;
mod case2;
mod classify;
mod linear;

pub use case1::{case1_search, product_test, CaseOneResult, ProductTest, RiccatiSolution};
pub use case2::{candidates, e_sets, search_p, theta, xi, CaseTwoSolution, ECandidate};
pub use classify::{analyze, case_three_possible, classify, Classification, GaloisVerdict};
