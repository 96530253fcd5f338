//! Word problem, endomorphisms and twisted conjugacy for the
//! Baumslag-Solitar groups `B(m,n) = <a, b | a^-1 b^m a = b^n>`.

pub mod britton;
pub mod cli;
pub mod error;
pub mod group;
pub mod homs;
pub mod models;
pub mod random;
pub mod reidemeister;
pub mod selftest;
pub mod word;

pub use britton::{are_equal, britton_reduce, normal_form, NormalForm};
pub use error::{Error, Result};
pub use group::{standardize, GroupSpec, Standardization};
pub use homs::{
    endo_apply, endo_compose, endo_validate, induced_on_ab, induced_on_z, kappa, kappa_scale, kernel_decompose,
    koch_form_search, EndoSpec, InducedData, KappaScale, KernelDecomposition,
};
pub use models::{model_equal_oracle, ModelElement, ModelFamily};
pub use reidemeister::{
    certify_infinite, coincidence_certify, coker_order, enumerate_classes_ball, power_constraint, reidemeister_abelian,
    snf, BallReport, Certificate, IntMatrix, ReidemeisterOutcome,
};
pub use word::{exp_sum, parse_word, Gen, Syllable, Word};
