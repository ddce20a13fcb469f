//! Certified numerics: dyadic floats, intervals, complex balls, `log`/`exp`
//! enclosures and root isolation.

pub mod ball;
pub mod dyadic;
pub mod elementary;
pub mod interval;
pub mod roots;

pub use ball::ComplexBall;
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
pub use roots::{isolate_roots, isolate_squarefree, precision_cap, refine_root, RootBall};
