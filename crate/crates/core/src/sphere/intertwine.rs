//! First-order differential operators shifting the potential parameters.
//!
//! T and T* act in x and shift (k₁,k₂) by ∓1; they intertwine the
//! Hamiltonians, T H^{(k₁,k₂,k₃)} = H^{(k₁-1,k₂-1,k₃)} T. The U operators act
//! in y and raise k₃ by one at fixed n; they are level ladders (they depend
//! on the level N and do not preserve the energy), and their sum V is
//! N-independent.
//!
//! U_{(+,-,-,+)} here carries -½(k₃+½)(y-1)/(y+1) where the source prints
//! the opposite sign; the sign used is the one whose action on the basis
//! closes, and V = U_{(+,+,-,-)} + U_{(+,-,-,+)} is adjusted accordingly.

use super::{psi_jet, BasisIndex, Params3, SpherePoint};
use crate::error::Result;

/// Operator expressed through the field value and the needed first partial.
#[derive(Debug, Clone, Copy)]
pub struct FirstOrderValues {
    pub f: f64,
    /// ∂f/∂x for the x-family (T, T*), ∂f/∂y for the y-family (U, V)
    pub df: f64,
}

/// T = √(1-x²) ∂x - ½(k₂-½)√((1+x)/(1-x)) + ½(k₁-½)√((1-x)/(1+x)).
pub fn t_combine(k: &Params3, v: FirstOrderValues, x: f64) -> f64 {
    (1.0 - x * x).sqrt() * v.df
        - 0.5 * (k.k2 - 0.5) * ((1.0 + x) / (1.0 - x)).sqrt() * v.f
        + 0.5 * (k.k1 - 0.5) * ((1.0 - x) / (1.0 + x)).sqrt() * v.f
}

/// T* = -√(1-x²) ∂x - ½(k₂+½)√((1+x)/(1-x)) + ½(k₁+½)√((1-x)/(1+x)).
pub fn t_star_combine(k: &Params3, v: FirstOrderValues, x: f64) -> f64 {
    -(1.0 - x * x).sqrt() * v.df
        - 0.5 * (k.k2 + 0.5) * ((1.0 + x) / (1.0 - x)).sqrt() * v.f
        + 0.5 * (k.k1 + 0.5) * ((1.0 - x) / (1.0 + x)).sqrt() * v.f
}

/// U_{(+,+,-,-)} = √((1+y)/2)[-(1-y)∂y - N - (k₁+k₂)/2 - ½ + ½(k₃+½)(1-y)/(1+y)].
pub fn u_ppmm_combine(k: &Params3, level: u32, v: FirstOrderValues, y: f64) -> f64 {
    let c = -f64::from(level) - 0.5 * (k.k1 + k.k2) - 0.5;
    ((1.0 + y) / 2.0).sqrt()
        * (-(1.0 - y) * v.df + (c + 0.5 * (k.k3 + 0.5) * (1.0 - y) / (1.0 + y)) * v.f)
}

/// U_{(+,-,-,+)} = √((1+y)/2)[(y-1)∂y + N + (k₁+k₂)/2 + k₃ + 3/2 - ½(k₃+½)(y-1)/(y+1)].
pub fn u_pmmp_combine(k: &Params3, level: u32, v: FirstOrderValues, y: f64) -> f64 {
    let c = f64::from(level) + 0.5 * (k.k1 + k.k2) + k.k3 + 1.5;
    ((1.0 + y) / 2.0).sqrt()
        * ((y - 1.0) * v.df + (c - 0.5 * (k.k3 + 0.5) * (y - 1.0) / (y + 1.0)) * v.f)
}

/// V = U_{(+,+,-,-)} + U_{(+,-,-,+)} = √((1+y)/2)[2(y-1)∂y + k₃+1 - (k₃+½)(y-1)/(y+1)].
/// N-independent.
pub fn v_combine(k: &Params3, v: FirstOrderValues, y: f64) -> f64 {
    ((1.0 + y) / 2.0).sqrt()
        * (2.0 * (y - 1.0) * v.df
            + (k.k3 + 1.0 - (k.k3 + 0.5) * (y - 1.0) / (y + 1.0)) * v.f)
}

fn fd_dx<F: Fn(f64, f64) -> f64>(f: &F, x: f64, y: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h, y) + 8.0 * f(x + h, y) - 8.0 * f(x - h, y) + f(x - 2.0 * h, y)) / (12.0 * h)
}

fn fd_dy<F: Fn(f64, f64) -> f64>(f: &F, x: f64, y: f64, h: f64) -> f64 {
    (-f(x, y + 2.0 * h) + 8.0 * f(x, y + h) - 8.0 * f(x, y - h) + f(x, y - 2.0 * h)) / (12.0 * h)
}

fn fd_h(p: &SpherePoint) -> Result<f64> {
    let d = p.boundary_distance();
    if d < 1e-3 {
        return Err(crate::error::Error::BoundaryStep(d));
    }
    Ok(1e-4f64.min(d / 10.0))
}

/// T applied to an arbitrary scalar field at p (finite-difference ∂x).
pub fn apply_t<F: Fn(f64, f64) -> f64>(k: &Params3, f: &F, p: &SpherePoint) -> Result<f64> {
    let h = fd_h(p)?;
    let v = FirstOrderValues { f: f(p.x, p.y), df: fd_dx(f, p.x, p.y, h) };
    Ok(t_combine(k, v, p.x))
}

pub fn apply_t_star<F: Fn(f64, f64) -> f64>(k: &Params3, f: &F, p: &SpherePoint) -> Result<f64> {
    let h = fd_h(p)?;
    let v = FirstOrderValues { f: f(p.x, p.y), df: fd_dx(f, p.x, p.y, h) };
    Ok(t_star_combine(k, v, p.x))
}

pub fn apply_u_ppmm<F: Fn(f64, f64) -> f64>(
    k: &Params3,
    level: u32,
    f: &F,
    p: &SpherePoint,
) -> Result<f64> {
    let h = fd_h(p)?;
    let v = FirstOrderValues { f: f(p.x, p.y), df: fd_dy(f, p.x, p.y, h) };
    Ok(u_ppmm_combine(k, level, v, p.y))
}

pub fn apply_u_pmmp<F: Fn(f64, f64) -> f64>(
    k: &Params3,
    level: u32,
    f: &F,
    p: &SpherePoint,
) -> Result<f64> {
    let h = fd_h(p)?;
    let v = FirstOrderValues { f: f(p.x, p.y), df: fd_dy(f, p.x, p.y, h) };
    Ok(u_pmmp_combine(k, level, v, p.y))
}

pub fn apply_v<F: Fn(f64, f64) -> f64>(k: &Params3, f: &F, p: &SpherePoint) -> Result<f64> {
    let h = fd_h(p)?;
    let v = FirstOrderValues { f: f(p.x, p.y), df: fd_dy(f, p.x, p.y, h) };
    Ok(v_combine(k, v, p.y))
}

/// Exact first-order values of Ψ for the analytic application route.
pub fn psi_values_x(idx: BasisIndex, k: &Params3, x: f64, y: f64) -> Result<FirstOrderValues> {
    let jet = psi_jet(idx, k, x, y)?;
    Ok(FirstOrderValues { f: jet.f, df: jet.fx })
}

pub fn psi_values_y(idx: BasisIndex, k: &Params3, x: f64, y: f64) -> Result<FirstOrderValues> {
    let jet = psi_jet(idx, k, x, y)?;
    Ok(FirstOrderValues { f: jet.f, df: jet.fy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::diffop::{apply_diffop, SymOp};

    fn k_test() -> Params3 {
        Params3::new(0.7, 1.1, 0.4).unwrap()
    }

    fn pt(x: f64, y: f64) -> SpherePoint {
        SpherePoint::from_xy(x, y).unwrap()
    }

    #[test]
    fn t_ladder_on_basis() {
        // T Ψ^{(k)}_{m,n} = -(n+1) Ψ^{(k1-1,k2-1,k3)}_{m,n+1}
        let k = Params3::new(1.7, 1.4, 0.6).unwrap();
        let kd = k.shifted(-1.0, -1.0, 0.0).unwrap();
        let (x, y) = (0.31, -0.42);
        for (level, n) in [(2, 0), (3, 1), (4, 4)] {
            let idx = BasisIndex::new(level, n).unwrap();
            let v = psi_values_x(idx, &k, x, y).unwrap();
            let lhs = t_combine(&k, v, x);
            let img = BasisIndex::new(level + 1, n + 1).unwrap();
            let rhs = -(f64::from(n) + 1.0) * psi_jet(img, &kd, x, y).unwrap().f;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs(), "N={level} n={n}");
        }
    }

    #[test]
    fn t_star_ladder_on_basis() {
        // T* Ψ_{m,n} = -(k1+k2+n+1) Ψ^{(k1+1,k2+1,k3)}_{m,n-1}; at n=0 the image vanishes
        let k = k_test();
        let ku = Params3::new(k.k1 + 1.0, k.k2 + 1.0, k.k3).unwrap();
        let (x, y) = (0.11, 0.27);
        for (level, n) in [(2, 1), (4, 3)] {
            let idx = BasisIndex::new(level, n).unwrap();
            let v = psi_values_x(idx, &k, x, y).unwrap();
            let lhs = t_star_combine(&k, v, x);
            let img = BasisIndex::new(level - 1, n - 1).unwrap();
            let rhs = -(k.k1 + k.k2 + f64::from(n) + 1.0) * psi_jet(img, &ku, x, y).unwrap().f;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs());
        }
        let idx = BasisIndex::new(3, 0).unwrap();
        let v = psi_values_x(idx, &k, x, y).unwrap();
        assert!(t_star_combine(&k, v, x).abs() < 1e-13);
    }

    #[test]
    fn u_ladders_on_basis() {
        let k = k_test();
        let ku = Params3::new(k.k1, k.k2, k.k3 + 1.0).unwrap();
        let (x, y) = (0.31, -0.42);
        for (level, n) in [(2, 0), (3, 1), (4, 2)] {
            let idx = BasisIndex::new(level, n).unwrap();
            let v = psi_values_y(idx, &k, x, y).unwrap();
            // U_{(+,+,-,-)} Ψ_{m,n} = -(n+N+k1+k2+1) Ψ^{(k3+1)}_{m-1,n}, m ≥ 1
            let lhs = u_ppmm_combine(&k, level, v, y);
            let img = BasisIndex::new(level - 1, n).unwrap();
            let rhs = -(f64::from(n + level) + k.k1 + k.k2 + 1.0)
                * psi_jet(img, &ku, x, y).unwrap().f;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs(), "U++-- N={level} n={n}");
            // U_{(+,-,-,+)} Ψ_{m,n} = (n+N+k1+k2+k3+2) Ψ^{(k3+1)}_{m,n}
            let lhs = u_pmmp_combine(&k, level, v, y);
            let img = BasisIndex::new(level, n).unwrap();
            let rhs = (f64::from(n + level) + k.sum() + 2.0) * psi_jet(img, &ku, x, y).unwrap().f;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs(), "U+--+ N={level} n={n}");
        }
        // m = 0 annihilation for U_{(+,+,-,-)}
        let idx = BasisIndex::new(3, 3).unwrap();
        let v = psi_values_y(idx, &k, x, y).unwrap();
        assert!(u_ppmm_combine(&k, 3, v, y).abs() < 1e-13);
        // n = N = 0 coefficient of U_{(+,-,-,+)} is k1+k2+k3+2
        let idx = BasisIndex::new(0, 0).unwrap();
        let v = psi_values_y(idx, &k, x, y).unwrap();
        let ratio = u_pmmp_combine(&k, 0, v, y) / psi_jet(idx, &ku, x, y).unwrap().f;
        assert!((ratio - (k.sum() + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn v_is_sum_of_u_forms_and_n_independent() {
        let k = k_test();
        let (x, y) = (0.4, 0.1);
        let v = FirstOrderValues { f: 1.37, df: -0.58 };
        for level in [0u32, 3, 7] {
            let sum = u_ppmm_combine(&k, level, v, y) + u_pmmp_combine(&k, level, v, y);
            let direct = v_combine(&k, v, y);
            assert!((sum - direct).abs() < 1e-12 * direct.abs().max(1.0), "N={level}");
        }
    }

    #[test]
    fn t_intertwines_hamiltonians() {
        // T H^{(k)} f = H^{(k1-1,k2-1,k3)} T f pointwise; the inner operator
        // runs on exact Chebyshev jets, only the outer one uses FD
        use crate::fields::ChebProduct;
        use crate::sphere::diffop::apply_diffop_jet;
        let k = Params3::new(1.7, 1.4, 0.6).unwrap();
        let kd = k.shifted(-1.0, -1.0, 0.0).unwrap();
        for field in [
            ChebProduct { dx: 1, dy: 2 },
            ChebProduct { dx: 3, dy: 0 },
            ChebProduct { dx: 2, dy: 2 },
            ChebProduct { dx: 4, dy: 1 },
        ] {
            let hf =
                |x: f64, y: f64| apply_diffop_jet(SymOp::H, &k, x, y, &field.jet(x, y));
            let tf = |x: f64, y: f64| {
                let jet = field.jet(x, y);
                t_combine(&k, FirstOrderValues { f: jet.f, df: jet.fx }, x)
            };
            for &(x, y) in &[(0.25, -0.3), (-0.45, 0.2)] {
                let p = pt(x, y);
                let lhs = apply_t(&k, &hf, &p).unwrap();
                let rhs = apply_diffop(SymOp::H, &kd, &tf, &p).unwrap();
                assert!(
                    (lhs - rhs).abs() < 1e-5 * lhs.abs().max(1.0),
                    "deg=({},{}) at ({x},{y}): {lhs} vs {rhs}",
                    field.dx,
                    field.dy
                );
            }
        }
    }
}
