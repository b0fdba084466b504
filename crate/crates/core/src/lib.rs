//! Balanced lines of bichromatic planar point sets.
//!
//! Exact enumeration of balanced lines, simulation of k-level rotations and
//! sliding rotations, and auditable certificates that an instance with `r`
//! red points has at least `r` balanced lines.

pub mod checks;
pub mod exec;
pub mod gen;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod rotation;
pub mod sliding;

pub use checks::{check_lemmas, LemmaReport};
pub use exec::Exec;
pub use gen::{batch_params, gen_clustered, gen_random, gen_separated_convex};
pub use geom::{
    halfplane_weight, is_balanced, orientation, Color, DirectedLine, Direction, Frame, GeomError, Instance,
    LabeledPoint, Orientation, PointId, Rational, Side,
};
pub use oracle::{count_balanced, enumerate_naive, enumerate_sweep, enumerate_sweep_with, BalancedLine};
pub use rotation::{
    check_lemma_br, find_balanced_halving, is_delta_preserving, run_rotation, transitions_at, RotationError,
    RotationSpec, RotationTrace, Subset, Transition,
};
pub use sliding::{
    decompose_fhg, find_gamma, verify_lower_bound, Certificate, FhgSplit, Gamma, SlidingError, SlidingRotation,
    Waist,
};
