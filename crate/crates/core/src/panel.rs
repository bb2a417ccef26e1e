//! Seeded random parameter panels.
//!
//! Generator: the ChaCha8 stream cipher (rand_chacha), seeded with a 64-bit
//! integer; each draw maps the next 53 random bits to a uniform f64 in [0,1)
//! through the standard-uniform distribution. A given seed therefore fixes
//! the panel exactly, independent of platform and thread count.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::racah::WilsonParams;
use crate::sphere::Params3;
use crate::wilsonfn::{in_convergence_window, t_clear_of_poles};

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// `count` parameter triples with each k_j uniform in (lo, hi].
pub fn k_panel(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<Params3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            loop {
                let (k1, k2, k3) = (
                    uniform(&mut rng, lo, hi),
                    uniform(&mut rng, lo, hi),
                    uniform(&mut rng, lo, hi),
                );
                if let Ok(k) = Params3::new(k1, k2, k3) {
                    return k;
                }
            }
        })
        .collect()
}

/// §5-style draws: parameters in the convergence window, degree a fixed
/// non-integer offset from a small integer, evaluation point clear of the
/// Γ pole lattice of the operators.
pub fn wilson_function_panel(seed: u64, count: usize) -> Vec<(WilsonParams, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w = WilsonParams::new(
            uniform(&mut rng, 0.7, 1.3),
            uniform(&mut rng, 0.4, 1.0),
            uniform(&mut rng, 0.4, 1.0),
            uniform(&mut rng, 0.8, 1.5),
        );
        let n = uniform(&mut rng, 0.15, 0.85) + f64::from(rng.random_range(0..3u32));
        let t = uniform(&mut rng, 0.55, 1.45);
        if in_convergence_window(&w) && t_clear_of_poles(&w, t) && (n - n.round()).abs() > 0.1 {
            out.push((w, n, t));
        }
    }
    out
}

/// Wilson-orthogonality draws for the infinite lattice sum: α, γ, δ moderate
/// and positive, β strongly negative and non-integer so that the summand
/// decays like q^{2(s+n₁+n₂)-3} with s + n_max + n_max well below zero.
pub fn wilson_orthogonality_panel(seed: u64, count: usize, n_max: u32) -> Vec<WilsonParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let alpha = uniform(&mut rng, 0.6, 1.4);
        let gamma = uniform(&mut rng, 0.5, 1.0);
        let delta = uniform(&mut rng, 0.5, 1.0);
        // s + 2 n_max <= -3 with margin; keep β away from integers
        let depth = 2.0 * f64::from(n_max) + 3.0 + uniform(&mut rng, 0.5, 2.5);
        let beta = -(alpha + gamma + delta + depth);
        if (beta - beta.round()).abs() < 0.05 {
            continue;
        }
        out.push(WilsonParams::new(alpha, beta, gamma, delta));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panels_are_seed_deterministic() {
        let a = k_panel(42, 5, 0.1, 2.0);
        let b = k_panel(42, 5, 0.1, 2.0);
        assert_eq!(a.len(), 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.k1.to_bits(), y.k1.to_bits());
            assert_eq!(x.k2.to_bits(), y.k2.to_bits());
            assert_eq!(x.k3.to_bits(), y.k3.to_bits());
        }
        let c = k_panel(43, 5, 0.1, 2.0);
        assert!(a[0].k1 != c[0].k1);
    }

    #[test]
    fn wilson_panel_respects_window() {
        for (w, n, t) in wilson_function_panel(7, 30) {
            assert!(in_convergence_window(&w));
            assert!(t_clear_of_poles(&w, t));
            assert!((n - n.round()).abs() > 0.1);
            assert!(t > 0.5);
        }
    }

    #[test]
    fn orthogonality_panel_decays() {
        for w in wilson_orthogonality_panel(11, 10, 5) {
            let s = w.sum();
            assert!(s + 10.0 < -1.0, "s = {s} not deep enough for n_max = 5");
            assert!((w.beta - w.beta.round()).abs() >= 0.05);
        }
    }
}
