//! Three worked constructions, each built as a self-verifying scenario:
//! the singular torus collapsing onto a circle, the unit tangent bundle of
//! the `(2,m,m)` triangle orbifold, and the Borromean-rings representation
//! variety with its flexibility phenomenon.

mod borromean;
mod torus;
mod twomm;

pub use borromean::{
    borromean_flexibility, borromean_rep, BorromeanBranch, BorromeanRep, FlexibilityReport,
};
pub use torus::{torus_hp_rep, torus_scenario, TorusScenario};
pub use twomm::{build_2mm, build_2mm_with_break, transition_2mm, transition_2mm_limit_checks, TwoMMReport};
