use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A projective vector or seed was the all-zero vector.
    #[error("all-zero vector is not a valid projective solution")]
    ZeroVector,

    /// `squarefree_split` or a related routine was called on zero.
    #[error("operation undefined on zero")]
    ZeroInput,

    /// Trial division exceeded its bound before the number was factored.
    #[error("factorization bound exceeded while processing {0}")]
    FactorizationBound(String),

    /// A supplied seed does not satisfy the form it claims to solve.
    #[error("seed does not satisfy the form")]
    SeedNotOnForm,

    /// Square-determinant refusal: no bilinear solution exists for this
    /// determinant class.
    #[error("determinant {0} is zero or not a perfect square; no bilinear solution exists")]
    NonSquareDeterminant(String),

    /// The precondition `a3*x3^2 + a4*x4^2 != 0` of the seed lift failed.
    #[error("degenerate seed: a3*x3^2 + a4*x4^2 = 0")]
    DegenerateSeed,

    /// Ternary seed with vanishing third coordinate.
    #[error("ternary seed has beta3 = 0")]
    ZeroBeta3,

    /// Coefficients do not admit the two-positive/two-negative arrangement.
    #[error("coefficient signs admit no isotropic arrangement")]
    SignArrangement,

    /// No rational point could be found on a form within the solver's reach.
    #[error("no rational point on the form: {0}")]
    NoRationalPoint(String),

    /// A linear family fed to the square-determinant criterion is not a
    /// genuine two-parameter solution.
    #[error("family is not a rank-2 identically-vanishing solution")]
    InvalidLinearFamily,

    /// The supplied pencil point is not a root of the pencil determinant.
    #[error("pencil determinant does not vanish at the given point")]
    NotAPencilRoot,

    /// The supplied pencil point does not make the determinant a nonzero square.
    #[error("pencil determinant at the given point is not a nonzero perfect square")]
    NotASquarePencilPoint,

    /// The two forms are proportional; the pencil degenerates identically.
    #[error("the two forms are proportional; the pair degenerates to a single quadric")]
    ProportionalForms,

    /// A quadric restriction vanished identically; its solution set is not
    /// expressible in the supported two-parameter output shape.
    #[error("restricted form vanishes identically; solution stratum exceeds two parameters")]
    UnsupportedStratum,

    /// Derivation guard: the seed point has y = 0.
    #[error("derivation requires y != 0 at the seed point")]
    ZeroY,

    /// Derivation guard: the two seed points share the same t.
    #[error("derivation requires two points with distinct t values")]
    EqualT,

    /// Derivation guard: the denominator expression vanishes.
    #[error("derivation denominator vanishes at the given point(s)")]
    DegenerateDenominator,

    /// Quartic-to-pair correspondence guard: `a1^3 - 4*a1*a2 + 4*a3 = 0`.
    #[error("singular configuration: a1^3 - 4*a1*a2 + 4*a3 = 0 (shift t first)")]
    SingularConfiguration,

    /// A point claimed to lie on a curve or form does not.
    #[error("point does not satisfy the equation")]
    PointNotOnCurve,

    /// Input failed structural validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
