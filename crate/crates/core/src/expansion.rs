//! Inner products on the first octant, the interbasis expansion coefficients
//! R'ⁿ_q, the Ξ' closed form, and the orthogonal-matrix identities.
//!
//! The area measure in the (x,y) chart is
//!   dA = (1-x)^{-1/2}(1+x)^{-1/2}(1+y)^{-1/2} dx dy / (4√2),
//! and every Ψ·Ψ or Λ·Ψ pair integrand factors as
//!   (1-x)^{k₂}(1+x)^{k₁}(1-y)^{k₁+k₂+1}(1+y)^{k₃} × polynomial(x,y),
//! so a tensor Gauss–Jacobi rule with those exponents integrates all of them
//! to rounding once the order exceeds the polynomial degree.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::parallel;
use crate::racah::{phi_n, WilsonParams};
use crate::specialfn::gamma_ratio;
use crate::sphere::{
    lambda_xy, norm_lambda_prime_sq, norm_psi_prime_sq, psi_jet, rescale_factor, BasisIndex,
    Params3,
};

/// Gauss–Jacobi nodes and weights for ∫_{-1}^{1} (1-x)^a (1+x)^b f(x) dx,
/// by the Golub–Welsch algorithm on the symmetrized recurrence matrix.
pub fn gauss_jacobi(order: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if order < 2 {
        return Err(Error::ParamDomain(format!("quadrature order {order} < 2")));
    }
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::ParamDomain(format!(
            "non-integrable endpoint exponents ({a}, {b})"
        )));
    }
    let mut m = DMatrix::zeros(order, order);
    let mut diag = (b - a) / (2.0 + a + b);
    for i in 0..order - 1 {
        let i1 = (i + 1) as f64;
        let denom = 2.0 * i1 + a + b;
        let off = 2.0 / denom
            * (i1 * (i1 + a) * (i1 + b) * (i1 + a + b) / ((denom + 1.0) * (denom - 1.0))).sqrt();
        m[(i, i)] = diag;
        m[(i, i + 1)] = off;
        m[(i + 1, i)] = off;
        diag = (b * b - a * a) / (denom * (denom + 2.0));
    }
    m[(order - 1, order - 1)] = diag;

    let mu0 = 2f64.powf(a + b + 1.0) * gamma_ratio(&[a + 1.0, b + 1.0], &[a + b + 2.0])?;
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|j| {
            let v0 = eig.eigenvectors[(0, j)];
            (eig.eigenvalues[j], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    Ok(pairs.into_iter().unzip())
}

/// Endpoint exponents absorbed into the rule weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentProfile {
    pub x_minus: f64,
    pub x_plus: f64,
    pub y_minus: f64,
    pub y_plus: f64,
}

/// Tensor-product rule on the open square with the measure folded in.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub order: usize,
    pub params: Params3,
    pub exponents: ExponentProfile,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// plain Gauss–Jacobi tensor weights, x-major
    pub w_rule: Vec<f64>,
    /// weights with dA folded in and the absorbed exponents divided out
    pub w_measure: Vec<f64>,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.order * self.order
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, i: usize) -> (f64, f64) {
        (self.xs[i / self.order], self.ys[i % self.order])
    }

    /// Exact value of Σ w_rule: the product of the two beta integrals of the
    /// absorbed weight. Self-calibration oracle.
    pub fn beta_integral_exact(&self) -> f64 {
        let e = &self.exponents;
        let bx = 2f64.powf(e.x_minus + e.x_plus + 1.0)
            * gamma_ratio(&[e.x_minus + 1.0, e.x_plus + 1.0], &[e.x_minus + e.x_plus + 2.0])
                .unwrap();
        let by = 2f64.powf(e.y_minus + e.y_plus + 1.0)
            * gamma_ratio(&[e.y_minus + 1.0, e.y_plus + 1.0], &[e.y_minus + e.y_plus + 2.0])
                .unwrap();
        bx * by
    }
}

/// Build the tensor rule with x-exponents (k₂, k₁) and y-exponents
/// (k₁+k₂+1, k₃), matching the squared Ψ-prefactors after the measure.
pub fn build_grid(k: &Params3, order: usize) -> Result<QuadratureGrid> {
    if order < 8 {
        return Err(Error::ParamDomain(format!("grid order {order} < 8")));
    }
    let exponents = ExponentProfile {
        x_minus: k.k2,
        x_plus: k.k1,
        y_minus: k.k1 + k.k2 + 1.0,
        y_plus: k.k3,
    };
    let (xs, wx) = gauss_jacobi(order, exponents.x_minus, exponents.x_plus)?;
    let (ys, wy) = gauss_jacobi(order, exponents.y_minus, exponents.y_plus)?;
    let mut w_rule = Vec::with_capacity(order * order);
    let mut w_measure = Vec::with_capacity(order * order);
    let c = 1.0 / (4.0 * 2f64.sqrt());
    for i in 0..order {
        for j in 0..order {
            let (x, y) = (xs[i], ys[j]);
            let w = wx[i] * wy[j];
            w_rule.push(w);
            // dA density over the absorbed weight
            let mu = (1.0 - x).powf(-0.5) * (1.0 + x).powf(-0.5) * (1.0 + y).powf(-0.5) * c;
            let wabs = (1.0 - x).powf(exponents.x_minus)
                * (1.0 + x).powf(exponents.x_plus)
                * (1.0 - y).powf(exponents.y_minus)
                * (1.0 + y).powf(exponents.y_plus);
            w_measure.push(w * mu / wabs);
        }
    }
    Ok(QuadratureGrid { order, params: *k, exponents, xs, ys, w_rule, w_measure })
}

/// Values of a field at all grid nodes.
pub fn tabulate<F: Fn(f64, f64) -> f64 + Sync>(f: &F, grid: &QuadratureGrid) -> Vec<f64> {
    parallel::tabulate(grid.len(), |i| {
        let (x, y) = grid.node(i);
        f(x, y)
    })
}

/// ⟨f, g⟩ = Σ wᵢ f(pᵢ) g(pᵢ) against the octant area measure.
pub fn inner_product<F, G>(f: &F, g: &G, grid: &QuadratureGrid) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
    G: Fn(f64, f64) -> f64 + Sync,
{
    parallel::sum_indexed(grid.len(), |i| {
        let (x, y) = grid.node(i);
        grid.w_measure[i] * f(x, y) * g(x, y)
    })
}

/// Inner product of two tabulated fields.
pub fn inner_product_tab(a: &[f64], b: &[f64], grid: &QuadratureGrid) -> f64 {
    parallel::sum_indexed(grid.len(), |i| grid.w_measure[i] * a[i] * b[i])
}

/// Sequential variant, for the parallel-vs-sequential comparison bench.
pub fn inner_product_tab_seq(a: &[f64], b: &[f64], grid: &QuadratureGrid) -> f64 {
    parallel::sum_indexed_seq(grid.len(), |i| grid.w_measure[i] * a[i] * b[i])
}

/// Tabulated Ψ'_{N-n,n} for n = 0..N, one row per n.
pub fn tabulate_psi_prime(level: u32, k: &Params3, grid: &QuadratureGrid) -> Result<Vec<Vec<f64>>> {
    (0..=level)
        .map(|n| {
            let idx = BasisIndex::new(level, n)?;
            let fac = rescale_factor(idx, k)?;
            Ok(tabulate(&|x, y| fac * psi_jet(idx, k, x, y).map(|j| j.f).unwrap_or(f64::NAN), grid))
        })
        .collect()
}

/// Tabulated Λ'_{N-q,q} for q = 0..N.
pub fn tabulate_lambda_prime(
    level: u32,
    k: &Params3,
    grid: &QuadratureGrid,
) -> Result<Vec<Vec<f64>>> {
    let ks = k.swap13();
    (0..=level)
        .map(|q| {
            let idx = BasisIndex::new(level, q)?;
            let fac = rescale_factor(idx, &ks)?;
            Ok(tabulate(&|x, y| fac * lambda_xy(idx, k, x, y).unwrap_or(f64::NAN), grid))
        })
        .collect()
}

/// Full matrix of expansion coefficients R'[n][q] = ⟨Λ'_q, Ψ'_n⟩ / ‖Ψ'_n‖².
/// Norms come from the closed form, never from quadrature.
pub fn expansion_matrix(level: u32, k: &Params3, grid: &QuadratureGrid) -> Result<DMatrix<f64>> {
    let psis = tabulate_psi_prime(level, k, grid)?;
    let lams = tabulate_lambda_prime(level, k, grid)?;
    let dim = level as usize + 1;
    let mut r = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        let norm = norm_psi_prime_sq(BasisIndex::new(level, n as u32)?, k)?;
        for q in 0..dim {
            r[(n, q)] = inner_product_tab(&lams[q], &psis[n], grid) / norm;
        }
    }
    Ok(r)
}

/// Single coefficient R'ⁿ_q.
pub fn expansion_coeff(
    level: u32,
    n: u32,
    q: u32,
    k: &Params3,
    grid: &QuadratureGrid,
) -> Result<f64> {
    let idx_n = BasisIndex::new(level, n)?;
    let idx_q = BasisIndex::new(level, q)?;
    let fac_n = rescale_factor(idx_n, k)?;
    let fac_q = rescale_factor(idx_q, &k.swap13())?;
    let ip = inner_product(
        &|x, y| fac_q * lambda_xy(idx_q, k, x, y).unwrap_or(f64::NAN),
        &|x, y| fac_n * psi_jet(idx_n, k, x, y).map(|j| j.f).unwrap_or(f64::NAN),
        grid,
    );
    Ok(ip / norm_psi_prime_sq(idx_n, k)?)
}

/// R'ⁿ_q with a convergence check: the grid order is doubled and the
/// coefficient must move by less than `tol`.
pub fn expansion_coeff_checked(
    level: u32,
    n: u32,
    q: u32,
    k: &Params3,
    grid: &QuadratureGrid,
    tol: f64,
) -> Result<f64> {
    let v1 = expansion_coeff(level, n, q, k, grid)?;
    let fine = build_grid(k, grid.order * 2)?;
    let v2 = expansion_coeff(level, n, q, k, &fine)?;
    if (v1 - v2).abs() > tol * v2.abs().max(1.0) {
        return Err(Error::QuadratureNonConverged(format!(
            "R'[{n}][{q}] moved {:.3e} under order doubling",
            (v1 - v2).abs()
        )));
    }
    Ok(v2)
}

/// Closed form of the scale constant: c = 1/(16 (k₁+k₂+k₃+2)²). Inferred from
/// the beta-integral factorization at n = q = N = 0; symmetric under every
/// permutation of (k₁,k₂,k₃).
pub fn scale_constant_closed_form(k: &Params3) -> f64 {
    let s2 = k.sum() + 2.0;
    1.0 / (16.0 * s2 * s2)
}

/// Prefactor of Ξ' without the constant c:
/// (-1)^N ((S+2)/(2N+S+2))² · 4(2N+S+2) Γ(N+1) / (Γ(N+S+2) Γ(k₂+1)).
pub fn xi_prefactor(level: u32, k: &Params3) -> Result<f64> {
    let nn = f64::from(level);
    let s = k.sum();
    let omega = 2.0 * nn + s + 2.0;
    let sign = if level % 2 == 0 { 1.0 } else { -1.0 };
    let corr = (s + 2.0) / omega;
    Ok(sign * corr * corr * 4.0 * omega
        * gamma_ratio(&[nn + 1.0], &[nn + s + 2.0, k.k2 + 1.0])?)
}

/// Ξ'(k₁,k₂,k₃; n,N,q) = c · prefactor(N,k) · Φ_n(t_q), t_q = q + (k₂+k₃+1)/2.
pub fn xi_closed_form(level: u32, n: u32, q: u32, k: &Params3, c: f64) -> Result<f64> {
    let w = WilsonParams::from_k_level(k, f64::from(level));
    let t = w.lattice_t(q);
    Ok(c * xi_prefactor(level, k)? * phi_n(n, &w, t)?)
}

/// The scale constant determined from quadrature at n = q = N = 0, with an
/// error estimate from doubling the order.
#[derive(Debug, Clone, Copy)]
pub struct ScaleConstant {
    pub c: f64,
    pub error_estimate: f64,
}

pub fn scale_constant_c(k: &Params3, grid: &QuadratureGrid) -> Result<ScaleConstant> {
    let solve = |g: &QuadratureGrid| -> Result<f64> {
        let idx = BasisIndex::new(0, 0)?;
        let fac_p = rescale_factor(idx, k)?;
        let fac_l = rescale_factor(idx, &k.swap13())?;
        let xi = inner_product(
            &|x, y| fac_l * lambda_xy(idx, k, x, y).unwrap_or(f64::NAN),
            &|x, y| fac_p * psi_jet(idx, k, x, y).map(|j| j.f).unwrap_or(f64::NAN),
            g,
        );
        Ok(xi / xi_prefactor(0, k)?)
    };
    let c1 = solve(grid)?;
    let fine = build_grid(k, grid.order * 2)?;
    let c2 = solve(&fine)?;
    Ok(ScaleConstant { c: c2, error_estimate: (c1 - c2).abs() })
}

/// Report of the orthogonal-matrix identities for O[n][q] = ‖Ψ'_n‖ R'ⁿ_q / ‖Λ'_q‖.
#[derive(Debug, Clone)]
pub struct OrthogonalityReport {
    pub level: u32,
    /// max |OᵀO - I| and |OOᵀ - I|
    pub max_deviation: f64,
    /// max deviation of the two displayed summation identities
    pub identity_deviation: f64,
    pub pass: bool,
    pub tolerance: f64,
}

pub fn verify_orthogonal_matrix(
    level: u32,
    k: &Params3,
    grid: &QuadratureGrid,
) -> Result<OrthogonalityReport> {
    let dim = level as usize + 1;
    let r = expansion_matrix(level, k, grid)?;
    let psi_norm: Vec<f64> = (0..=level)
        .map(|n| norm_psi_prime_sq(BasisIndex::new(level, n).unwrap(), k))
        .collect::<Result<_>>()?;
    let lam_norm: Vec<f64> = (0..=level)
        .map(|q| norm_lambda_prime_sq(BasisIndex::new(level, q).unwrap(), k))
        .collect::<Result<_>>()?;
    let mut o = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for q in 0..dim {
            o[(n, q)] = psi_norm[n].sqrt() * r[(n, q)] / lam_norm[q].sqrt();
        }
    }
    let eye = DMatrix::<f64>::identity(dim, dim);
    let d1 = (o.transpose() * &o - &eye).abs().max();
    let d2 = (&o * o.transpose() - &eye).abs().max();

    // Σ_ℓ R'^{n₁}_ℓ R'^{n₂}_ℓ / ‖Λ'_ℓ‖² = δ_{n₁n₂} / ‖Ψ'_{n₁}‖²
    // Σ_ℓ ‖Ψ'_ℓ‖² R'^ℓ_{q₁} R'^ℓ_{q₂} = δ_{q₁q₂} ‖Λ'_{q₁}‖²
    let mut idev = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            for l in 0..dim {
                s1 += r[(i, l)] * r[(j, l)] / lam_norm[l];
                s2 += psi_norm[l] * r[(l, i)] * r[(l, j)];
            }
            let d_ij = if i == j { 1.0 } else { 0.0 };
            idev = idev.max((s1 * psi_norm[i] - d_ij).abs());
            idev = idev.max((s2 / lam_norm[i] - d_ij).abs());
        }
    }
    let tolerance = 1e-8;
    Ok(OrthogonalityReport {
        level,
        max_deviation: d1.max(d2),
        identity_deviation: idev,
        pass: d1.max(d2) < tolerance && idev < tolerance,
        tolerance,
    })
}

/// Quadrature matrix elements ⟨Ψ'_{n'}, L₂Ψ'_n⟩ / ‖Ψ'_{n'}‖², with L₂Ψ
/// applied analytically. Oracle for the quadalg tridiagonal.
pub fn l2_matrix_elements(level: u32, k: &Params3, grid: &QuadratureGrid) -> Result<DMatrix<f64>> {
    use crate::sphere::diffop::{apply_psi_analytic, SymOp};
    let dim = level as usize + 1;
    let psis = tabulate_psi_prime(level, k, grid)?;
    let mut l2psis = Vec::with_capacity(dim);
    for n in 0..=level {
        let idx = BasisIndex::new(level, n)?;
        let fac = rescale_factor(idx, k)?;
        l2psis.push(tabulate(
            &|x, y| fac * apply_psi_analytic(SymOp::L2, idx, k, x, y).unwrap_or(f64::NAN),
            grid,
        ));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let norm = norm_psi_prime_sq(BasisIndex::new(level, i as u32)?, k)?;
        for j in 0..dim {
            m[(i, j)] = inner_product_tab(&psis[i], &l2psis[j], grid) / norm;
        }
    }
    Ok(m)
}
