//! Racah/Wilson polynomials Φ_n as terminating ₄F₃ at unit argument, the
//! parameter dictionary to (k₁,k₂,k₃,N), the discrete orthogonality weight,
//! and the half-step difference operators τ, τ*, μ acting in the spectral
//! variable t.
//!
//! Conventions: τ f(t) = [f(t+½) - f(t-½)]/(2t) is parameter-free and maps
//! the (α,β,γ,δ) family to (α+½,β+½,γ+½,δ+½); τ* carries the coefficients of
//! its *target* family and maps (α+½,…) back to (α,…). μ^{(p,q)} lowers the
//! pair (p,q) by ½ and raises the complementary pair, with coefficients
//! taken at the target values.

use crate::error::{Error, Result};
use crate::specialfn::{gamma_ratio, hyp_pfq, pochhammer, HypSeriesSpec};
use crate::sphere::Params3;

/// Wilson parameters (α,β,γ,δ), optionally carrying the (k,N) they encode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilsonParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub provenance: Option<Provenance>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub k: Params3,
    pub level: f64,
}

impl WilsonParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self { alpha, beta, gamma, delta, provenance: None }
    }

    /// Dictionary α = (k₂+k₃+1)/2, β = -N-(k₂+k₃+1)/2, γ = (k₂-k₃+1)/2,
    /// δ = N+k₁+(k₂+k₃+3)/2. The level may be any real.
    pub fn from_k_level(k: &Params3, level: f64) -> Self {
        let half = 0.5 * (k.k2 + k.k3 + 1.0);
        Self {
            alpha: half,
            beta: -level - half,
            gamma: 0.5 * (k.k2 - k.k3 + 1.0),
            delta: level + k.k1 + half + 1.0,
            provenance: Some(Provenance { k: *k, level }),
        }
    }

    /// Inverse dictionary: k₁ = δ+β-1, k₂ = α+γ-1, k₃ = α-γ, N = -α-β.
    pub fn to_k_level(&self) -> (f64, f64, f64, f64) {
        (
            self.delta + self.beta - 1.0,
            self.alpha + self.gamma - 1.0,
            self.alpha - self.gamma,
            -self.alpha - self.beta,
        )
    }

    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma + self.delta
    }

    /// First lattice point t₀ = α.
    pub fn t0(&self) -> f64 {
        self.alpha
    }

    /// t_q = q + α (equals q + (k₂+k₃+1)/2 under the dictionary).
    pub fn lattice_t(&self, q: u32) -> f64 {
        f64::from(q) + self.alpha
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    /// Shift all four parameters by the same half step.
    pub fn shift_all(&self, d: f64) -> Self {
        Self::new(self.alpha + d, self.beta + d, self.gamma + d, self.delta + d)
    }
}

/// Φ_n(α,β,γ,δ; t) = ₄F₃(-n, n+α+β+γ+δ-1, α+t, α-t; α+β, α+γ, α+δ; 1),
/// a polynomial of degree n in t², normalized so the k = 0 term is 1.
pub fn phi_n(n: u32, w: &WilsonParams, t: f64) -> Result<f64> {
    let nf = f64::from(n);
    let spec = HypSeriesSpec::new(
        &[-nf, nf + w.sum() - 1.0, w.alpha + t, w.alpha - t],
        &[w.alpha + w.beta, w.alpha + w.gamma, w.alpha + w.delta],
        1.0,
    );
    Ok(hyp_pfq(&spec)?.value)
}

/// Alias with the Racah truncation policy: when provenance fixes an integer
/// level N (so α+β = -N), indices n > N are rejected.
pub fn wilson_poly(n: u32, w: &WilsonParams, t: f64) -> Result<f64> {
    if let Some(p) = w.provenance {
        if (p.level - p.level.round()).abs() < 1e-12 && f64::from(n) > p.level.round() {
            return Err(Error::IndexRange { n, level: p.level.round() as u32 });
        }
    }
    phi_n(n, w, t)
}

/// Discrete Racah weight
/// w(q) = (2α)_q(α+1)_q(α+β)_q(α+γ)_q(α+δ)_q / [(α)_q(α-β+1)_q(α-γ+1)_q(α-δ+1)_q q!].
pub fn racah_weight(q: u32, w: &WilsonParams) -> Result<f64> {
    let (a, b, g, d) = (w.alpha, w.beta, w.gamma, w.delta);
    for x in [a, a - b + 1.0, a - g + 1.0, a - d + 1.0] {
        if x <= 0.0 && (x + f64::from(q) - 1.0) >= 0.0 && (x - x.round()).abs() < 1e-12 {
            return Err(Error::NearPole(format!("weight denominator ({x})_q vanishes")));
        }
    }
    let num = pochhammer(2.0 * a, q)
        * pochhammer(a + 1.0, q)
        * pochhammer(a + b, q)
        * pochhammer(a + g, q)
        * pochhammer(a + d, q);
    let den = pochhammer(a, q)
        * pochhammer(a - b + 1.0, q)
        * pochhammer(a - g + 1.0, q)
        * pochhammer(a - d + 1.0, q)
        * pochhammer(1.0, q);
    if den == 0.0 {
        return Err(Error::NearPole("weight denominator vanished".into()));
    }
    Ok(num / den)
}

/// The Γ-ratio form proportional to ‖Λ'‖² as a function of t; its reciprocal
/// is the orthogonality measure, symmetric in all permutations of (α,β,γ,δ).
pub fn norm_lambda_proportionality(w: &WilsonParams, t: f64) -> Result<f64> {
    let (a, b, g, d) = (w.alpha, w.beta, w.gamma, w.delta);
    gamma_ratio(
        &[t - a + 1.0, t - b + 1.0, t - g + 1.0, t - d + 1.0, t],
        &[t + a, t + b, t + g, t + d, t + 1.0],
    )
}

/// P_k(α,t) = (α+t)_k (α-t)_k.
pub fn pk_basis(k: u32, alpha: f64, t: f64) -> f64 {
    pochhammer(alpha + t, k) * pochhammer(alpha - t, k)
}

/// Coefficients w_k of Φ_n = Σ w_k P_k(α,t):
/// w_k = (-n)_k (n+α+β+γ+δ-1)_k / (k! (α+β)_k (α+γ)_k (α+δ)_k), w₀ = 1.
pub fn solve_wk(n: u32, w: &WilsonParams) -> Result<Vec<f64>> {
    let nf = f64::from(n);
    let s = w.sum();
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut wk = 1.0;
    out.push(wk);
    for k in 0..n {
        let kf = f64::from(k);
        let den = (kf + 1.0)
            * (w.alpha + w.beta + kf)
            * (w.alpha + w.gamma + kf)
            * (w.alpha + w.delta + kf);
        if den == 0.0 {
            return Err(Error::SeriesPole { param: w.alpha + w.beta, term: k as usize });
        }
        wk *= (-nf + kf) * (nf + s - 1.0 + kf) / den;
        out.push(wk);
    }
    Ok(out)
}

fn guard_t(t: f64) -> Result<()> {
    if t == 0.0 {
        return Err(Error::LatticeDegeneracy(t));
    }
    Ok(())
}

/// τ f(t) = [f(t+½) - f(t-½)]/(2t).
pub fn tau_apply<F: Fn(f64) -> f64>(f: &F, t: f64) -> Result<f64> {
    guard_t(t)?;
    Ok((f(t + 0.5) - f(t - 0.5)) / (2.0 * t))
}

/// τ* f(t) = [(α+t)(β+t)(γ+t)(δ+t) f(t+½) - (α-t)(β-t)(γ-t)(δ-t) f(t-½)]/(2t),
/// with (α,β,γ,δ) the target-family values.
pub fn tau_star_apply<F: Fn(f64) -> f64>(f: &F, w: &WilsonParams, t: f64) -> Result<f64> {
    guard_t(t)?;
    let [a, b, g, d] = w.as_array();
    let up = (a + t) * (b + t) * (g + t) * (d + t);
    let dn = (a - t) * (b - t) * (g - t) * (d - t);
    Ok((up * f(t + 0.5) - dn * f(t - 0.5)) / (2.0 * t))
}

/// τ*τ f(t), using f at t-1, t, t+1.
pub fn tau_star_tau_apply<F: Fn(f64) -> f64>(f: &F, w: &WilsonParams, t: f64) -> Result<f64> {
    guard_t(t)?;
    guard_t(t + 0.5)?;
    guard_t(t - 0.5)?;
    let [a, b, g, d] = w.as_array();
    let up = (a + t) * (b + t) * (g + t) * (d + t) / (2.0 * t * (2.0 * t + 1.0));
    let dn = (a - t) * (b - t) * (g - t) * (d - t) / (2.0 * t * (2.0 * t - 1.0));
    Ok(up * (f(t + 1.0) - f(t)) + dn * (f(t - 1.0) - f(t)))
}

/// μ^{(p,q)} f(t) = [(p+t)(q+t) f(t+½) - (p-t)(q-t) f(t-½)]/(2t), with p,q the
/// target values of the lowered pair.
pub fn mu_apply<F: Fn(f64) -> f64>(pair: (f64, f64), f: &F, t: f64) -> Result<f64> {
    guard_t(t)?;
    let (p, q) = pair;
    Ok(((p + t) * (q + t) * f(t + 0.5) - (p - t) * (q - t) * f(t - 0.5)) / (2.0 * t))
}

/// (τ*τ - n(n+α+β+γ+δ-1)) Φ_n(t); vanishes for nonnegative integer n.
pub fn eigen_residual(n: u32, w: &WilsonParams, t: f64) -> Result<f64> {
    let nf = f64::from(n);
    let f = |u: f64| phi_n(n, w, u).unwrap_or(f64::NAN);
    let lhs = tau_star_tau_apply(&f, w, t)?;
    Ok(lhs - nf * (nf + w.sum() - 1.0) * phi_n(n, w, t)?)
}

/// (α+β)_n (α+γ)_n (α+δ)_n Φ_n(t): invariant under all 24 parameter
/// permutations.
pub fn permutation_invariant_form(n: u32, w: &WilsonParams, t: f64) -> Result<f64> {
    let p = pochhammer(w.alpha + w.beta, n)
        * pochhammer(w.alpha + w.gamma, n)
        * pochhammer(w.alpha + w.delta, n);
    Ok(p * phi_n(n, w, t)?)
}

/// Ratio of the invariant form under a permutation of (α,β,γ,δ) to the
/// original; 1 for every permutation.
pub fn permutation_covariant(n: u32, w: &WilsonParams, perm: &[usize; 4], t: f64) -> Result<f64> {
    let v = w.as_array();
    let wp = WilsonParams::from_array([v[perm[0]], v[perm[1]], v[perm[2]], v[perm[3]]]);
    Ok(permutation_invariant_form(n, &wp, t)? / permutation_invariant_form(n, w, t)?)
}

/// All 24 permutations of four indices.
pub fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut idx = [0usize, 1, 2, 3];
    fn heap(k: usize, idx: &mut [usize; 4], out: &mut Vec<[usize; 4]>) {
        if k == 1 {
            out.push(*idx);
            return;
        }
        for i in 0..k {
            heap(k - 1, idx, out);
            if k % 2 == 0 {
                idx.swap(i, k - 1);
            } else {
                idx.swap(0, k - 1);
            }
        }
    }
    heap(4, &mut idx, &mut out);
    out
}

/// Gram matrix of the Racah orthogonality sum
/// G[n₁][n₂] = Σ_{q=0}^{N} w(q) Φ_{n₁}(t_q) Φ_{n₂}(t_q).
pub fn racah_gram(level: u32, w: &WilsonParams) -> Result<Vec<Vec<f64>>> {
    let dim = level as usize + 1;
    let mut g = vec![vec![0.0; dim]; dim];
    for q in 0..=level {
        let t = w.lattice_t(q);
        let wt = racah_weight(q, w)?;
        let vals: Vec<f64> = (0..=level).map(|n| phi_n(n, w, t)).collect::<Result<_>>()?;
        for (i, gi) in g.iter_mut().enumerate() {
            for (j, gij) in gi.iter_mut().enumerate() {
                *gij += wt * vals[i] * vals[j];
            }
        }
    }
    Ok(g)
}

/// Largest |G[i][j]|/√(G[i][i]G[j][j]) over i ≠ j.
pub fn gram_off_diagonal_ratio(g: &[Vec<f64>]) -> f64 {
    let dim = g.len();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                worst = worst.max(g[i][j].abs() / (g[i][i].abs() * g[j][j].abs()).sqrt());
            }
        }
    }
    worst
}

/// Residual of the 3-term recurrence: the vector Ξ'(n) = R'ⁿ_q ‖Ψ'_n‖² is an
/// eigenvector of the transposed primed tridiagonal with eigenvalue λ_q.
pub fn recurrence_3term(level: u32, k: &Params3, q: u32) -> Result<f64> {
    use crate::quadalg::{l2_matrix, BasisTag};
    let dim = level as usize + 1;
    let m = l2_matrix(level, k, BasisTag::PsiPrime)?.entries;
    let c = crate::expansion::scale_constant_closed_form(k);
    let v: Vec<f64> = (0..=level)
        .map(|n| crate::expansion::xi_closed_form(level, n, q, k, c))
        .collect::<Result<_>>()?;
    let lam = crate::sphere::l2_eigenvalue(q, k);
    let vmax = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mmax = m.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut worst = 0.0f64;
    for n in 0..dim {
        let mut acc = 0.0;
        for (i, vi) in v.iter().enumerate() {
            acc += m[(i, n)] * vi; // transposed action
        }
        worst = worst.max((acc - lam * v[n]).abs());
    }
    Ok(worst / (vmax * mmax))
}
