//! Pinned tolerances used by tests, verification suites and callers.
//!
//! Two families: *definitional* identities that are exact algebra on the
//! same inputs (only rounding separates the two sides), and *closed-form*
//! identities whose two sides travel through different expression trees.

/// Definitional identities: `s_i · ℓ_i = w_i`, recomputing a reported cost.
pub const REL_DEFINITIONAL: f64 = 1e-12;

/// Closed-form identities: flow = (α−1)·energy, the order-reversal
/// equivalence between the two objective routes, budget decompositions.
pub const REL_IDENTITY: f64 = 1e-9;

/// Agreement between the coordinate-descent oracle and the closed form.
pub const REL_ORACLE: f64 = 1e-5;

/// Agreement between analytic derivatives and central finite differences.
pub const REL_DERIVATIVE: f64 = 1e-5;

/// Relative step for central finite differences: `h = FD_STEP · max(1, p̂)`.
pub const FD_STEP: f64 = 1e-5;

/// Denominator floor when normalizing a derivative mismatch.
pub const DERIVATIVE_FLOOR: f64 = 1e-12;

/// Physical range of the energy exponent; values outside it are accepted
/// but flagged.
pub const ALPHA_PHYSICAL: (f64, f64) = (2.0, 3.0);
