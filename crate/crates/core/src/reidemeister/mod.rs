//! Twisted conjugacy: integer linear algebra, abelian Reidemeister counts,
//! infinitude certificates and ball enumeration.

mod abelian;
mod ball;
mod certificate;
mod certify;
mod matrix;
mod power;

pub use abelian::{reidemeister_abelian, AbelianGroup, AbelianMap};
pub use certificate::{
    Attempt, Certificate, Invariant, ReidemeisterOutcome, ScaleCheck, Witness, WITNESS_COUNT,
};
pub use matrix::{coker_order, snf, CokerOrder, IntMatrix, SnfResult};
pub use power::{power_constraint, power_constraint_holds};
pub use certify::{
    certify_catalog, certify_infinite, coincidence_certify, verify_abelian_certificate, verify_certificate,
    CatalogResult,
};
pub use ball::{
    ball_partition, default_bounds, enumerate_classes_ball, word_ball_partition, BallModel, BallPartition, BallReport,
    BoxBounds, Partition, WordBall,
};
