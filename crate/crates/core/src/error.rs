use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at nonpositive integer x = {0}")]
    GammaPole(f64),
    #[error("series denominator parameter {param} reaches a nonpositive integer at term {term}")]
    SeriesPole { param: f64, term: usize },
    #[error("series diverges at unit argument (denominator minus numerator sum = {balance})")]
    SeriesDivergence { balance: f64 },
    #[error("argument z = {0} outside the supported series domain")]
    ArgumentDomain(f64),
    #[error("parameter domain violation: {0}")]
    ParamDomain(String),
    #[error("point ({x}, {y}) outside the open coordinate square")]
    OutsideDomain { x: f64, y: f64 },
    #[error("point too close to the coordinate boundary (distance {0:.3e}) for finite differences")]
    BoundaryStep(f64),
    #[error("quadrature non-convergence: {0}")]
    QuadratureNonConverged(String),
    #[error("evaluation too close to a pole: {0}")]
    NearPole(String),
    #[error("difference operator requires t and t ± 1/2 away from 0 (t = {0})")]
    LatticeDegeneracy(f64),
    #[error("basis index out of range: n = {n}, level N = {level}")]
    IndexRange { n: u32, level: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
