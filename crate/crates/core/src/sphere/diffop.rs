//! The Hamiltonian and symmetry operators as second-order differential
//! operators in the (x, y) chart.
//!
//! Labels follow the eigenvalue equations: L₁ is the pure-x operator
//! diagonal on Ψ (pair k₁,k₂), L₂ is diagonal on Λ (pair k₂,k₃), and
//! L₃ = H - L₁ - L₂ - (a₁+a₂+a₃). H = L₁ + L₂ + L₃ + a₁ + a₂ + a₃ holds as
//! a pointwise operator identity.

use super::{psi_jet, BasisIndex, FieldJet, Params3, SpherePoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymOp {
    H,
    L1,
    L2,
    L3,
}

/// Coefficients of c_xx ∂xx + c_yy ∂yy + c_xy ∂xy + c_x ∂x + c_y ∂y + c₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpCoeffs {
    pub cxx: f64,
    pub cyy: f64,
    pub cxy: f64,
    pub cx: f64,
    pub cy: f64,
    pub c0: f64,
}

pub fn coeffs(op: SymOp, k: &Params3, x: f64, y: f64) -> OpCoeffs {
    let (a1, a2, a3) = (k.a1, k.a2, k.a3);
    match op {
        SymOp::L1 => OpCoeffs {
            cxx: 4.0 * (1.0 - x * x),
            cyy: 0.0,
            cxy: 0.0,
            cx: -4.0 * x,
            cy: 0.0,
            c0: a2 * (1.0 + x) / (1.0 - x) + a1 * (1.0 - x) / (1.0 + x),
        },
        SymOp::L2 => OpCoeffs {
            cxx: 2.0 * (1.0 + x) * (1.0 + y) * (1.0 - x * x) / (1.0 - y),
            cyy: 2.0 * (1.0 - x) * (1.0 - y * y),
            cxy: 4.0 * (1.0 + y) * (1.0 - x * x),
            cx: ((1.0 - x * x) * (3.0 + y) - 2.0 * x * (1.0 + x) * (1.0 + y)) / (1.0 - y),
            cy: -(2.0 * y * (1.0 - x) + (1.0 + x) * (1.0 + y)),
            c0: a3 * (1.0 - x) * (1.0 - y) / (2.0 * (1.0 + y))
                + 2.0 * a2 * (1.0 + y) / ((1.0 - x) * (1.0 - y)),
        },
        SymOp::L3 => OpCoeffs {
            cxx: 2.0 * (1.0 - x) * (1.0 + y) * (1.0 - x * x) / (1.0 - y),
            cyy: 2.0 * (1.0 + x) * (1.0 - y * y),
            cxy: -4.0 * (1.0 + y) * (1.0 - x * x),
            cx: -((1.0 - x * x) * (3.0 + y) + 2.0 * x * (1.0 - x) * (1.0 + y)) / (1.0 - y),
            cy: -(2.0 * y * (1.0 + x) + (1.0 - x) * (1.0 + y)),
            c0: 2.0 * a1 * (1.0 + y) / ((1.0 + x) * (1.0 - y))
                + a3 * (1.0 + x) * (1.0 - y) / (2.0 * (1.0 + y)),
        },
        SymOp::H => OpCoeffs {
            cxx: 8.0 * (1.0 - x * x) / (1.0 - y),
            cyy: 4.0 * (1.0 - y * y),
            cxy: 0.0,
            cx: -8.0 * x / (1.0 - y),
            cy: -(6.0 * y + 2.0),
            c0: 4.0 * a1 / ((1.0 + x) * (1.0 - y))
                + 4.0 * a2 / ((1.0 - x) * (1.0 - y))
                + 2.0 * a3 / (1.0 + y),
        },
    }
}

/// Operator applied to an exact derivative jet at (x, y). Noise-free inner
/// evaluations for nested operator checks.
pub fn apply_diffop_jet(op: SymOp, k: &Params3, x: f64, y: f64, jet: &FieldJet) -> f64 {
    let c = coeffs(op, k, x, y);
    c.cxx * jet.fxx + c.cyy * jet.fyy + c.cxy * jet.fxy + c.cx * jet.fx + c.cy * jet.fy
        + c.c0 * jet.f
}

/// Operator applied to Ψ_{N-n,n} analytically (exact partials).
pub fn apply_psi_analytic(op: SymOp, idx: BasisIndex, k: &Params3, x: f64, y: f64) -> Result<f64> {
    let jet = psi_jet(idx, k, x, y)?;
    Ok(apply_diffop_jet(op, k, x, y, &jet))
}

/// Minimum distance to the boundary below which pointwise checks reject a point.
pub const FD_EXCLUSION: f64 = 1e-3;
const FD_H: f64 = 1e-4;

fn fd_step(p: &SpherePoint) -> Result<f64> {
    let d = p.boundary_distance();
    if d < 10.0 * FD_H {
        return Err(Error::BoundaryStep(d));
    }
    Ok(FD_H.min(d / 10.0))
}

/// 4th-order central-difference jet of an arbitrary scalar field on (x, y).
pub fn fd_jet<F: Fn(f64, f64) -> f64>(f: &F, x: f64, y: f64, h: f64) -> FieldJet {
    let d1 = |g: &dyn Fn(f64) -> f64| {
        (-g(2.0 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2.0 * h)) / (12.0 * h)
    };
    let d2 = |g: &dyn Fn(f64) -> f64| {
        (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2.0 * h))
            / (12.0 * h * h)
    };
    let fx = d1(&|e| f(x + e, y));
    let fy = d1(&|e| f(x, y + e));
    let fxx = d2(&|e| f(x + e, y));
    let fyy = d2(&|e| f(x, y + e));
    // cross term: 4th-order stencil in each direction
    let w = [-1.0 / 12.0, 8.0 / 12.0, -8.0 / 12.0, 1.0 / 12.0];
    let off = [2.0 * h, h, -h, -2.0 * h];
    let mut fxy = 0.0;
    for (ci, ei) in w.iter().zip(off) {
        for (cj, ej) in w.iter().zip(off) {
            fxy += ci * cj / (h * h) * f(x + ei, y + ej);
        }
    }
    FieldJet { f: f(x, y), fx, fy, fxx, fxy, fyy }
}

/// Operator applied to an arbitrary scalar field by 4th-order central finite
/// differences, step 1e-4 shrunk near the boundary. Points closer than 10h to
/// the boundary are rejected.
pub fn apply_diffop<F: Fn(f64, f64) -> f64>(
    op: SymOp,
    k: &Params3,
    f: &F,
    p: &SpherePoint,
) -> Result<f64> {
    let h = fd_step(p)?;
    let jet = fd_jet(f, p.x, p.y, h);
    Ok(apply_diffop_jet(op, k, p.x, p.y, &jet))
}
