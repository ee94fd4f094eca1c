//! Numeric factors relating a holomorphic Poisson structure to its real data.
//! Every factor used elsewhere in the crate is read from here.

/// `symplectic_inverse(ω_R) = 4π_R` for the Darboux form `ω = dz∧dw`.
pub const DARBOUX_REAL: i64 = 4;
/// `symplectic_inverse(ω_I) = −4π_I`.
pub const DARBOUX_IMAG: i64 = -4;
/// Off-diagonal block `4π_I♯` of the structure whose `−i` eigenbundle is `L_{4π}`.
pub const DIRAC: i64 = 4;
/// The realified cotangent algebroid of `π` matches `(T*X)_{4π_R}`.
pub const COTANGENT_REAL: i64 = 4;
/// Its `j`-deformation matches `(T*X)_{4π_I}`.
pub const COTANGENT_IMAG: i64 = 4;
/// `{l′_V, l′_W}_{π_R} = ¼ l′_{[V,W]}`, as `(numerator, denominator)`.
pub const LINEAR_REAL: (i64, i64) = (1, 4);
/// `{l′_V, l′_W}_{π_I} = −¼ l′_{[V,W]_j}`.
pub const LINEAR_IMAG: (i64, i64) = (-1, 4);
