//! Knot-diagram toolkit: 4-valent diagrams, planar-diagram codes, integer
//! Laurent polynomials, tangle calculus, and the Alexander polynomial.

pub mod alexander;
pub mod diagram;
pub mod laurent;
pub mod pd;
pub mod tangle;

pub use alexander::{alexander, AlexanderError};
pub use diagram::{Corner, Diagram, DiagramError, End};
pub use laurent::{determinant, Laurent};
pub use pd::{
    connected_sum, figure_eight, format_pd, from_diagram, mirror, parse_pd, seifert_genus_upper,
    to_diagram, trefoil, unknot, with_kink, PdCode, PdError,
};
pub use tangle::{
    parse_tangle, pattern_substitute, rational_tangle, ribbon_record, serialize_tangle,
    square_double, square_tangle, tangle_close, tangle_sum, RibbonRecord, TangleDiagram,
    TangleError,
};
