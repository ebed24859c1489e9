//! Central numeric thresholds shared by the library, the verification
//! harness, and the CLI. Each constant names the contract it backs.

/// Width of the exact `q = 1` branch window. Inside `|q - 1| < Q_ONE_EPS`
/// the closed-form Shannon limits are used instead of the generic formulas,
/// which suffer catastrophic cancellation in `(x^(1-q) - 1)/(1 - q)`.
pub const Q_ONE_EPS: f64 = 1e-9;

/// Accepted deviation of a probability vector's sum from 1 at construction.
/// Inputs inside this window are silently renormalized; outside it they are
/// rejected. Wide enough that count-derived histograms never fail on rounding.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Zero test used by the Boolean difference (q = 0 support counting) on
/// ingested floating-point data. Constructed distributions use exact zeros.
pub const INGESTED_ZERO_TOL: f64 = 1e-12;

/// Tolerance for algebraic identities that are exact in real arithmetic and
/// accumulate only a handful of f64 roundings (power-sum factorization,
/// fast-path agreement, Jensen-difference identities).
pub const IDENTITY_TOL: f64 = 1e-12;

/// Tolerance for identities routed through longer computations (chain rule,
/// pseudoadditivity, generalized additivity, mutual-entropy identity).
pub const ALGEBRA_TOL: f64 = 1e-10;

/// Tolerance for sampled inequality checks (bounds, Jensen q-inequalities,
/// joint convexity, triangle inequality). True violations are zero; this
/// absorbs f64 rounding in the two sides.
pub const INEQUALITY_TOL: f64 = 1e-12;

/// Step for central second differences in the per-argument convexity check.
pub const SECOND_DIFF_STEP: f64 = 1e-4;

/// Bound on raw second differences in the convex/concave regimes. The true
/// second difference of a convex restriction is nonnegative; rounding in the
/// three stencil evaluations stays several orders below this.
pub const SECOND_DIFF_TOL: f64 = 1e-9;

/// Bound on |second difference| at q = 2, where the difference is affine in
/// each argument and the stencil cancels exactly up to rounding.
pub const AFFINE_SECOND_DIFF_TOL: f64 = 1e-10;

/// Absolute tolerance for the q -> 1 continuity checks at |q - 1| = 1e-6.
pub const Q_LIMIT_TOL: f64 = 1e-5;

/// Default convergence tolerance for the simplex minimizer (infinity norm
/// of the projected-gradient step).
pub const MINIMIZER_TOL: f64 = 1e-10;
