//! One-dimensional modules: tableaux, eigenvalue data, the inverse problem
//! and classification.

pub mod classify;
pub mod eigen;
pub mod solve;
pub mod tableau;

pub use classify::{classify, find_cc_representative, row_multiset_classes, symbolic_module_check};
pub use eigen::{eigenvalues_of, elementary_symmetric, quotient_relation_check, EigenvalueData};
pub use solve::{
    solve_b, solve_b_shifted, solve_with, tableau_from_eigenvalues, ExactRoots, NumericRoots, RootFinder, Solved,
};
pub use tableau::{Tableau, TableauJson};
