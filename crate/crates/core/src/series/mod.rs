//! Generalized Liouville series: `f(z) = Σ a_k z^k` with integer coefficients
//! vanishing outside blocks `[t_{n−1}, s_n]`.

mod adversarial;
mod engine;
mod spec;

pub use adversarial::adversarial_series;
pub use engine::{
    abs_upper, block_value, partial_sum, partial_sums, tail_bound, tail_bound_at,
    validate_structure, value_enclosure, StructureReport, TailBound, ValueEnclosure,
    EXACT_EXPONENT_CAP,
};
pub use spec::{Contour, Exponents, NumStr, Series, SeriesKind, SeriesSpec};
