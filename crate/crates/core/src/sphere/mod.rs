//! Eigenbases of (H, L₁) and (H, L₂) on the first octant of the 2-sphere.
//!
//! Coordinates: s₁ = sinθ cosφ, s₂ = sinθ sinφ, s₃ = cosθ with
//! x = cos 2φ, y = cos 2θ, so that
//!   s₁² = (1+x)(1-y)/4, s₂² = (1-x)(1-y)/4, s₃² = (1+y)/2.
//! The Λ basis lives in the permuted coordinates
//!   X = (1+x+3y-xy)/(xy-x+y+3), Y = (x-y-1-xy)/2,
//! obtained from the 1 ↔ 3 axis exchange.

pub mod diffop;
pub mod intertwine;

use crate::error::{Error, Result};
use crate::specialfn::{gamma_ratio, jacobi_p, jacobi_p_d2y, jacobi_p_dy};

/// Potential parameters (k₁,k₂,k₃) with the derived a_j = ¼ - k_j².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params3 {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Params3 {
    /// Requires 0 < k_j ≤ 3 so that all prefactor exponents and gamma
    /// arguments stay positive.
    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        for (name, k) in [("k1", k1), ("k2", k2), ("k3", k3)] {
            if !(k > 0.0 && k <= 3.0) {
                return Err(Error::ParamDomain(format!("{name} = {k} outside (0, 3]")));
            }
        }
        Ok(Self { k1, k2, k3, a1: 0.25 - k1 * k1, a2: 0.25 - k2 * k2, a3: 0.25 - k3 * k3 })
    }

    /// The 1 ↔ 3 exchange (k₃, k₂, k₁).
    pub fn swap13(&self) -> Self {
        Self { k1: self.k3, k2: self.k2, k3: self.k1, a1: self.a3, a2: self.a2, a3: self.a1 }
    }

    pub fn sum(&self) -> f64 {
        self.k1 + self.k2 + self.k3
    }

    pub fn shifted(&self, d1: f64, d2: f64, d3: f64) -> Result<Self> {
        Self::new(self.k1 + d1, self.k2 + d2, self.k3 + d3)
    }
}

/// Basis label (N, n) with 0 ≤ n ≤ N; the second index m = N - n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    pub level: u32,
    pub n: u32,
}

impl BasisIndex {
    pub fn new(level: u32, n: u32) -> Result<Self> {
        if n > level {
            return Err(Error::IndexRange { n, level });
        }
        Ok(Self { level, n })
    }

    pub fn m(&self) -> u32 {
        self.level - self.n
    }
}

/// E_N = -(2N + k₁ + k₂ + k₃ + 2)² + ¼.
pub fn energy(level: u32, k: &Params3) -> f64 {
    let w = 2.0 * f64::from(level) + k.sum() + 2.0;
    -w * w + 0.25
}

/// A point in the open first octant, carrying both coordinate charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    /// permuted-chart abscissa X
    pub xp: f64,
    /// permuted-chart ordinate Y
    pub yp: f64,
}

/// The (x,y) → (X,Y) map induced by the 1 ↔ 3 exchange. An involution.
pub fn permuted_xy(x: f64, y: f64) -> (f64, f64) {
    (
        (1.0 + x + 3.0 * y - x * y) / (x * y - x + y + 3.0),
        (x - y - 1.0 - x * y) / 2.0,
    )
}

impl SpherePoint {
    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        if !(x > -1.0 && x < 1.0 && y > -1.0 && y < 1.0) {
            return Err(Error::OutsideDomain { x, y });
        }
        let theta = 0.5 * y.acos();
        let phi = 0.5 * x.acos();
        let (xp, yp) = permuted_xy(x, y);
        Ok(Self {
            s1: theta.sin() * phi.cos(),
            s2: theta.sin() * phi.sin(),
            s3: theta.cos(),
            theta,
            phi,
            x,
            y,
            xp,
            yp,
        })
    }

    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        if !(theta > 0.0 && theta < half_pi && phi > 0.0 && phi < half_pi) {
            return Err(Error::OutsideDomain { x: theta, y: phi });
        }
        Self::from_xy((2.0 * phi).cos(), (2.0 * theta).cos())
    }

    /// Distance to the coordinate boundary of the open square.
    pub fn boundary_distance(&self) -> f64 {
        (1.0 - self.x.abs()).min(1.0 - self.y.abs())
    }
}

/// Value and first/second partials with respect to (x, y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

/// Ψ_{N-n,n} and its partials, evaluated analytically.
///
/// Ψ = ((1-y)/2)^{(2n+k₁+k₂+1)/2} ((1+y)/2)^{(k₃+½)/2}
///     ((1-x)/2)^{(k₂+½)/2} ((1+x)/2)^{(k₁+½)/2}
///     P_n^{(k₂,k₁)}(x) P_{N-n}^{(2n+k₁+k₂+1,k₃)}(y).
pub fn psi_jet(idx: BasisIndex, k: &Params3, x: f64, y: f64) -> Result<FieldJet> {
    let n = idx.n;
    let m = idx.m();
    let e1 = 0.5 * (k.k1 + 0.5);
    let e2 = 0.5 * (k.k2 + 0.5);
    let e3 = 0.5 * (k.k3 + 0.5);
    let ay = 2.0 * f64::from(n) + k.k1 + k.k2 + 1.0;
    let ey = 0.5 * ay;

    let a_fac = ((1.0 - x) / 2.0).powf(e2) * ((1.0 + x) / 2.0).powf(e1);
    let b_fac = ((1.0 - y) / 2.0).powf(ey) * ((1.0 + y) / 2.0).powf(e3);
    let p = jacobi_p(n, k.k2, k.k1, x)?;
    let dp = jacobi_p_dy(n, k.k2, k.k1, x)?;
    let d2p = jacobi_p_d2y(n, k.k2, k.k1, x)?;
    let q = jacobi_p(m, ay, k.k3, y)?;
    let dq = jacobi_p_dy(m, ay, k.k3, y)?;
    let d2q = jacobi_p_d2y(m, ay, k.k3, y)?;

    // logarithmic derivatives of the power prefactors
    let la = -e2 / (1.0 - x) + e1 / (1.0 + x);
    let la2 = la * la - e2 / ((1.0 - x) * (1.0 - x)) - e1 / ((1.0 + x) * (1.0 + x));
    let lb = -ey / (1.0 - y) + e3 / (1.0 + y);
    let lb2 = lb * lb - ey / ((1.0 - y) * (1.0 - y)) - e3 / ((1.0 + y) * (1.0 + y));

    let ab = a_fac * b_fac;
    Ok(FieldJet {
        f: ab * p * q,
        fx: ab * q * (la * p + dp),
        fy: ab * p * (lb * q + dq),
        fxx: ab * q * (la2 * p + 2.0 * la * dp + d2p),
        fyy: ab * p * (lb2 * q + 2.0 * lb * dq + d2q),
        fxy: ab * (la * p + dp) * (lb * q + dq),
    })
}

/// Ψ_{N-n,n}(p).
pub fn psi(idx: BasisIndex, k: &Params3, p: &SpherePoint) -> Result<f64> {
    Ok(psi_jet(idx, k, p.x, p.y)?.f)
}

/// Λ_{N-q,q}: the 1 ↔ 3 permutation of Ψ, evaluated through the permuted chart.
pub fn lambda_basis(idx: BasisIndex, k: &Params3, p: &SpherePoint) -> Result<f64> {
    Ok(psi_jet(idx, &k.swap13(), p.xp, p.yp)?.f)
}

/// Λ as a function of the (x, y) chart, for quadrature closures.
pub fn lambda_xy(idx: BasisIndex, k: &Params3, x: f64, y: f64) -> Result<f64> {
    let (xp, yp) = permuted_xy(x, y);
    Ok(psi_jet(idx, &k.swap13(), xp, yp)?.f)
}

/// Rescale factor (-1)ⁿ n! Γ(N-n+1) / (Γ(N-n+k₃+1) Γ(n+k₂+1)) taking Ψ to Ψ'.
pub fn rescale_factor(idx: BasisIndex, k: &Params3) -> Result<f64> {
    let n = f64::from(idx.n);
    let m = f64::from(idx.m());
    let sign = if idx.n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * gamma_ratio(&[n + 1.0, m + 1.0], &[m + k.k3 + 1.0, n + k.k2 + 1.0])?)
}

/// Ψ'_{N-n,n}(p).
pub fn psi_prime(idx: BasisIndex, k: &Params3, p: &SpherePoint) -> Result<f64> {
    Ok(rescale_factor(idx, k)? * psi(idx, k, p)?)
}

/// Λ'_{N-q,q}(p) = Ψ'_{N-q,q} with parameters swapped, at the permuted point.
pub fn lambda_prime(idx: BasisIndex, k: &Params3, p: &SpherePoint) -> Result<f64> {
    Ok(rescale_factor(idx, &k.swap13())? * lambda_basis(idx, k, p)?)
}

/// Closed-form ‖Ψ_{N-n,n}‖² over the first octant.
pub fn norm_psi_sq(idx: BasisIndex, k: &Params3) -> Result<f64> {
    let n = f64::from(idx.n);
    let m = f64::from(idx.m());
    let nn = f64::from(idx.level);
    let s = k.sum();
    let g = gamma_ratio(
        &[n + k.k1 + 1.0, n + k.k2 + 1.0, m + k.k3 + 1.0, nn + n + k.k1 + k.k2 + 2.0],
        &[n + 1.0, m + 1.0, n + k.k1 + k.k2 + 1.0, nn + n + s + 2.0],
    )?;
    Ok(g / (4.0 * (2.0 * nn + s + 2.0) * (2.0 * n + k.k1 + k.k2 + 1.0)))
}

/// ‖Λ_{N-q,q}‖², from ‖Ψ‖² by the 1 ↔ 3 exchange.
pub fn norm_lambda_sq(idx: BasisIndex, k: &Params3) -> Result<f64> {
    norm_psi_sq(idx, &k.swap13())
}

/// ‖Ψ'‖² = rescale² ‖Ψ‖².
pub fn norm_psi_prime_sq(idx: BasisIndex, k: &Params3) -> Result<f64> {
    let f = rescale_factor(idx, k)?;
    Ok(f * f * norm_psi_sq(idx, k)?)
}

/// ‖Λ'‖².
pub fn norm_lambda_prime_sq(idx: BasisIndex, k: &Params3) -> Result<f64> {
    norm_psi_prime_sq(idx, &k.swap13())
}

/// L₁ eigenvalue on Ψ_{N-n,n}: the form consistent with
/// ¼(L₁ + 2k₁k₂ + 2k₁ + 2k₂ + 3/2)Ψ = -n(n+k₁+k₂+1)Ψ.
pub fn l1_eigenvalue(n: u32, k: &Params3) -> f64 {
    let n = f64::from(n);
    -4.0 * n * (n + k.k1 + k.k2 + 1.0) - (2.0 * k.k1 * k.k2 + 2.0 * (k.k1 + k.k2) + 1.5)
}

/// L₂ eigenvalue on Λ_{N-q,q}, same form with (k₂,k₃).
pub fn l2_eigenvalue(q: u32, k: &Params3) -> f64 {
    let q = f64::from(q);
    -4.0 * q * (q + k.k2 + k.k3 + 1.0) - (2.0 * k.k2 * k.k3 + 2.0 * (k.k2 + k.k3) + 1.5)
}

/// The μ_n display variant carrying +2k₁k₂ instead of -2k₁k₂. Kept only so
/// the eigenvalue-form disambiguation can score both candidates.
pub fn l1_eigenvalue_display_variant(n: u32, k: &Params3) -> f64 {
    let n = 2.0 * f64::from(n) + 1.0;
    -n * n - 2.0 * n * (k.k1 + k.k2) + 2.0 * k.k1 * k.k2 - 0.5
}
