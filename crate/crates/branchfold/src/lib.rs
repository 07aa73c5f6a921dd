//! Measured branched surfaces and the surfaces they carry.
//!
//! A branched surface is described combinatorially: surface sections with
//! boundary ports, and branch curves that glue ports according to allowed
//! pairings. A non-negative integer weight per section is an invariant
//! measure when every curve resolves exactly; the carried surface is then
//! reconstructed sheet by sheet and its topology (Euler characteristic,
//! boundary, connectedness, orientability, genus, boundary slopes) computed
//! exactly.
//!
//! Modules:
//! - [`branched`]: sections, ports, branch curves, structural validation.
//! - [`format`]: the TOML model and measure file formats.
//! - [`measures`]: invariant measures, branch-equation feasibility, cone
//!   enumeration, zero propagation, closed-surface carriage certificates.
//! - [`carried`]: sheet-level reconstruction, wirings, surface reports.
//! - [`models`]: the shipped genus-g models, their weight families, and
//!   grid verification.
//! - [`knots`]: planar-diagram codes, tangle calculus, square doubles, and
//!   the Alexander polynomial.
//!
//! Start with the `examples/` directory; each example exercises one
//! capability end to end.

pub mod branched;
pub mod carried;
pub mod format;
pub mod knots;
pub mod measures;
pub mod models;

pub use branched::{euler_char, new_branched_surface, validate_spec, BranchedSurface};
pub use carried::{analyze, carry_report, default_wiring, reconstruct, resolve, separating_parity, wiring_search, SurfaceReport};
pub use format::{parse_measure_table, parse_model, serialize_measure_table, serialize_model};
pub use measures::{
    branch_feasible, carries_closed_surface, enumerate_measures, euler_functional, is_invariant_measure,
    positive_weights, zero_set_propagation, InvariantMeasure,
};
pub use knots::{
    alexander, pattern_substitute, rational_tangle, ribbon_record, seifert_genus_upper,
    square_double, square_tangle, tangle_close, Laurent, PdCode, TangleDiagram,
};
pub use models::{build_rg, build_rgi, fgn_measure, verify_grid, RgModel};
