//! Wilson functions: the Q-basis, the second (nonpolynomial) solution Ψ_n of
//! the τ*τ eigenvalue equation, the residual identities it and Φ_n satisfy at
//! non-integer degree, and the combination ˜Φ_n that restores the eigenvalue
//! equation.
//!
//! The balanced series involved converge like Σ k⁻², far too slowly for the
//! target accuracies by direct truncation, so partial sums at K, 2K, 4K are
//! Richardson-extrapolated with the known tail exponents. The reported
//! tail_estimate is the difference between the last two extrapolants.

use crate::error::{Error, Result};
use crate::racah::{tau_star_tau_apply, WilsonParams};
use crate::specialfn::{gamma_ratio, pochhammer};

/// Truncation request for the accelerated series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// first checkpoint; the series is summed to 4·k_base terms
    pub k_base: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { k_base: 25_000 }
    }
}

/// What a series evaluation actually did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    pub k_cut: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

fn near_nonpositive_integer(x: f64) -> bool {
    x <= 1e-13 && (x - x.round()).abs() < 1e-13
}

/// Σ_{k≥0} Π(aᵢ)_k / (k! Π(bⱼ)_k) at unit argument with Richardson
/// extrapolation; terminating numerators are summed exactly.
fn sum_balanced(nums: &[f64], dens: &[f64], trunc: Truncation) -> Result<(f64, SeriesTruncation)> {
    // exact finite sum when a numerator parameter is a nonpositive integer
    if let Some(m) = nums
        .iter()
        .filter(|&&a| near_nonpositive_integer(a))
        .map(|&a| (-a.round()) as usize)
        .min()
    {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..m {
            let kf = k as f64;
            let mut r = 1.0 / (kf + 1.0);
            for &a in nums {
                r *= a + kf;
            }
            for &b in dens {
                let d = b + kf;
                if d == 0.0 {
                    return Err(Error::SeriesPole { param: b, term: k });
                }
                r /= d;
            }
            term *= r;
            sum += term;
        }
        return Ok((sum, SeriesTruncation { k_cut: m + 1, tail_estimate: 0.0, converged: true }));
    }

    let sigma = 1.0 + dens.iter().sum::<f64>() - nums.iter().sum::<f64>();
    if sigma <= 1.05 {
        return Err(Error::SeriesDivergence { balance: sigma - 1.0 });
    }
    for &b in dens {
        if near_nonpositive_integer(b) {
            return Err(Error::SeriesPole { param: b, term: (-b.round()) as usize });
        }
    }

    let k1 = trunc.k_base.max(1000);
    let checkpoints = [k1, 2 * k1, 4 * k1];
    let mut partials = [0.0f64; 3];
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    let mut k = 0usize;
    for (ci, &kc) in checkpoints.iter().enumerate() {
        while k < kc {
            sum += term;
            let kf = k as f64;
            let mut r = 1.0 / (kf + 1.0);
            for &a in nums {
                r *= a + kf;
            }
            for &b in dens {
                r /= b + kf;
            }
            term *= r;
            k += 1;
        }
        partials[ci] = sum;
    }
    // tail of the partial sums behaves as c₁ K^{1-σ}(1 + c₂/K + …)
    let p = sigma - 1.0;
    let rich = |s1: f64, s2: f64, pp: f64| {
        let w = 2f64.powf(pp);
        (w * s2 - s1) / (w - 1.0)
    };
    let r1a = rich(partials[0], partials[1], p);
    let r1b = rich(partials[1], partials[2], p);
    let r2 = rich(r1a, r1b, p + 1.0);
    let tail = (r2 - r1b).abs();
    Ok((
        r2,
        SeriesTruncation {
            k_cut: checkpoints[2],
            tail_estimate: tail,
            converged: tail <= 1e-9 * r2.abs().max(1e-300),
        },
    ))
}

/// Φ_n(t) for real degree n: the terminating ₄F₃ when n is a nonnegative
/// integer, otherwise the extrapolated infinite series.
pub fn phi_general(
    n: f64,
    w: &WilsonParams,
    t: f64,
    trunc: Truncation,
) -> Result<(f64, SeriesTruncation)> {
    let s = w.sum();
    sum_balanced(
        &[-n, n + s - 1.0, w.alpha + t, w.alpha - t],
        &[w.alpha + w.beta, w.alpha + w.gamma, w.alpha + w.delta],
        trunc,
    )
}

/// Q(t,α,β)_k = Γ(1-β+t)Γ(1-β-t)/(Γ(α+t)Γ(α-t)) (1-β+t)_k (1-β-t)_k.
pub fn q_basis(k: u32, w: &WilsonParams, t: f64) -> Result<f64> {
    let pref = gamma_ratio(
        &[1.0 - w.beta + t, 1.0 - w.beta - t],
        &[w.alpha + t, w.alpha - t],
    )?;
    Ok(pref * pochhammer(1.0 - w.beta + t, k) * pochhammer(1.0 - w.beta - t, k))
}

/// Ψ_n(t): the Q-basis prefactor times
/// ₄F₃(1-n-α-β, n+γ+δ, 1-β+t, 1-β-t; 2-α-β, 1-β+γ, 1-β+δ; 1).
pub fn psi_second(
    n: f64,
    w: &WilsonParams,
    t: f64,
    trunc: Truncation,
) -> Result<(f64, SeriesTruncation)> {
    let [a, b, g, d] = w.as_array();
    let pref = gamma_ratio(&[1.0 - b + t, 1.0 - b - t], &[a + t, a - t])?;
    let (v, meta) = sum_balanced(
        &[1.0 - n - a - b, n + g + d, 1.0 - b + t, 1.0 - b - t],
        &[2.0 - a - b, 1.0 - b + g, 1.0 - b + d],
        trunc,
    )?;
    Ok((pref * v, SeriesTruncation { tail_estimate: meta.tail_estimate * pref.abs(), ..meta }))
}

/// The bracket constant in the τ*τ residual identities. The source prints
/// both n(n+s-1) and n(n+s); the residual oracle selects n(n+s-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenConstant {
    /// n(n+α+β+γ+δ-1)
    SumMinusOne,
    /// n(n+α+β+γ+δ)
    Sum,
}

impl EigenConstant {
    pub fn value(&self, n: f64, w: &WilsonParams) -> f64 {
        match self {
            EigenConstant::SumMinusOne => n * (n + w.sum() - 1.0),
            EigenConstant::Sum => n * (n + w.sum()),
        }
    }
}

/// Γ-ratio right side of the Φ residual identity:
/// Γ(α+β)Γ(α+γ)Γ(α+δ) / [Γ(-n)Γ(n+s-1)Γ(α+t)Γ(α-t)].
pub fn phi_residual_rhs(n: f64, w: &WilsonParams, t: f64) -> Result<f64> {
    let [a, b, g, d] = w.as_array();
    gamma_ratio(
        &[a + b, a + g, a + d],
        &[-n, n + w.sum() - 1.0, a + t, a - t],
    )
}

/// Γ-ratio right side of the Ψ residual identity:
/// Γ(2-α-β)Γ(1-β+γ)Γ(1-β+δ) / [Γ(1-n-α-β)Γ(n+γ+δ)Γ(α+t)Γ(α-t)].
pub fn psi_residual_rhs(n: f64, w: &WilsonParams, t: f64) -> Result<f64> {
    let [a, b, g, d] = w.as_array();
    gamma_ratio(
        &[2.0 - a - b, 1.0 - b + g, 1.0 - b + d],
        &[1.0 - n - a - b, n + g + d, a + t, a - t],
    )
}

fn apply_bracket<F: Fn(f64) -> f64 + Copy>(
    f: F,
    n: f64,
    w: &WilsonParams,
    t: f64,
    constant: EigenConstant,
) -> Result<f64> {
    Ok(tau_star_tau_apply(&f, w, t)? - constant.value(n, w) * f(t))
}

/// ([τ*τ - C]Φ_n(t) - rhs) / |rhs| for the chosen bracket constant.
pub fn phi_residual(
    n: f64,
    w: &WilsonParams,
    t: f64,
    constant: EigenConstant,
    trunc: Truncation,
) -> Result<f64> {
    let f = |u: f64| phi_general(n, w, u, trunc).map(|v| v.0).unwrap_or(f64::NAN);
    let lhs = apply_bracket(f, n, w, t, constant)?;
    let rhs = phi_residual_rhs(n, w, t)?;
    Ok((lhs - rhs) / rhs.abs().max(1e-300))
}

/// Same for the second solution Ψ_n.
pub fn psi_residual(
    n: f64,
    w: &WilsonParams,
    t: f64,
    constant: EigenConstant,
    trunc: Truncation,
) -> Result<f64> {
    let f = |u: f64| psi_second(n, w, u, trunc).map(|v| v.0).unwrap_or(f64::NAN);
    let lhs = apply_bracket(f, n, w, t, constant)?;
    let rhs = psi_residual_rhs(n, w, t)?;
    Ok((lhs - rhs) / rhs.abs().max(1e-300))
}

/// Mixing coefficient of Ψ_n inside ˜Φ_n:
/// Γ(α+β)Γ(α+γ)Γ(α+δ)Γ(1-n-α-β)Γ(n+γ+δ) /
/// [Γ(-n)Γ(n+s-1)Γ(2-α-β)Γ(1-β+γ)Γ(1-β+δ)].
/// Exactly zero at integer n (Γ(-n) pole); near-integer n is rejected
/// outside an explicit limit study.
pub fn mixing_coefficient(n: f64, w: &WilsonParams) -> Result<f64> {
    let dist = (n - n.round()).abs();
    if dist == 0.0 && n >= 0.0 {
        return Ok(0.0);
    }
    if dist < 1e-8 {
        return Err(Error::NearPole(format!(
            "degree n = {n} within 1e-8 of an integer; mixing coefficient cancellation"
        )));
    }
    let [a, b, g, d] = w.as_array();
    gamma_ratio(
        &[a + b, a + g, a + d, 1.0 - n - a - b, n + g + d],
        &[-n, n + w.sum() - 1.0, 2.0 - a - b, 1.0 - b + g, 1.0 - b + d],
    )
}

/// ˜Φ_n(t) = Φ_n(t) - κ(n) Ψ_n(t); satisfies the τ*τ eigenvalue equation for
/// non-integer n.
pub fn wilson_function(
    n: f64,
    w: &WilsonParams,
    t: f64,
    trunc: Truncation,
) -> Result<(f64, SeriesTruncation)> {
    let kappa = mixing_coefficient(n, w)?;
    let (phi, m1) = phi_general(n, w, t, trunc)?;
    if kappa == 0.0 {
        return Ok((phi, m1));
    }
    let (psi, m2) = psi_second(n, w, t, trunc)?;
    let tail = m1.tail_estimate + kappa.abs() * m2.tail_estimate;
    Ok((
        phi - kappa * psi,
        SeriesTruncation {
            k_cut: m1.k_cut.max(m2.k_cut),
            tail_estimate: tail,
            converged: m1.converged && m2.converged,
        },
    ))
}

/// Residual of (τ*τ - n(n+s-1)) on ˜Φ_n, scaled by the eigenvalue times the
/// sup of |˜Φ| over the stencil so zeros of ˜Φ do not inflate it.
pub fn wilson_eigen_residual(
    n: f64,
    w: &WilsonParams,
    t: f64,
    trunc: Truncation,
) -> Result<f64> {
    let f = |u: f64| wilson_function(n, w, u, trunc).map(|v| v.0).unwrap_or(f64::NAN);
    let lam = EigenConstant::SumMinusOne.value(n, w);
    let lhs = tau_star_tau_apply(&f, w, t)?;
    let sup = f(t - 1.0).abs().max(f(t).abs()).max(f(t + 1.0).abs());
    Ok((lhs - lam * f(t)) / (lam.abs().max(1.0) * sup.max(1e-300)))
}

/// Convergence window used for §5 panels: the seven parameter combinations
/// entering the two series and the mixing coefficient all positive.
pub fn in_convergence_window(w: &WilsonParams) -> bool {
    let [a, b, g, d] = w.as_array();
    [a + b, a + g, a + d, g + d, 1.0 - b + g, 1.0 - b + d, 2.0 - a - b]
        .iter()
        .all(|&v| v > 0.05)
}

/// Distance from x to the nearest nonpositive-integer lattice point of the
/// Γ factors hit by the operators at t, t ± ½, t ± 1.
fn pole_distance(w: &WilsonParams, t: f64) -> f64 {
    let mut dist = f64::INFINITY;
    for shift in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let u = t + shift;
        for x in [
            1.0 - w.beta + u,
            1.0 - w.beta - u,
            w.alpha + u,
            w.alpha - u,
        ] {
            if x < 0.5 {
                dist = dist.min((x - x.round()).abs());
            }
        }
        dist = dist.min(u.abs()); // division by 2t in the operators
    }
    dist
}

/// True when the evaluation points stay clear of the Γ pole lattice.
pub fn t_clear_of_poles(w: &WilsonParams, t: f64) -> bool {
    pole_distance(w, t) > 1e-2
}

/// Residuals of both bracket candidates on a (n, t) pair; used by the
/// disambiguation report.
pub fn bracket_candidates_residuals(
    n: f64,
    w: &WilsonParams,
    t: f64,
    trunc: Truncation,
) -> Result<(f64, f64)> {
    Ok((
        phi_residual(n, w, t, EigenConstant::SumMinusOne, trunc)?,
        phi_residual(n, w, t, EigenConstant::Sum, trunc)?,
    ))
}
