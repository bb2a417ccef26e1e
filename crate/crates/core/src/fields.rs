//! Smooth test fields with exact derivative jets.
//!
//! Pointwise operator checks (intertwining contracts, commutators) need the
//! inner operator applied without finite-difference noise: nesting two FD
//! applications amplifies rounding by 1/h⁴. Products of low-degree Chebyshev
//! polynomials carry their exact jets, so only the outermost operator ever
//! uses finite differences.

use crate::sphere::FieldJet;

/// T_d, T_d', T_d'' by the three-term recurrence.
pub fn cheb_jet1(d: u32, t: f64) -> (f64, f64, f64) {
    let (mut p0, mut d0, mut s0) = (1.0f64, 0.0f64, 0.0f64); // T_0
    if d == 0 {
        return (p0, d0, s0);
    }
    let (mut p1, mut d1, mut s1) = (t, 1.0, 0.0); // T_1
    for _ in 2..=d {
        let p2 = 2.0 * t * p1 - p0;
        let d2 = 2.0 * p1 + 2.0 * t * d1 - d0;
        let s2 = 4.0 * d1 + 2.0 * t * s1 - s0;
        (p0, d0, s0) = (p1, d1, s1);
        (p1, d1, s1) = (p2, d2, s2);
    }
    (p1, d1, s1)
}

/// Product field T_dx(x)·T_dy(y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChebProduct {
    pub dx: u32,
    pub dy: u32,
}

impl ChebProduct {
    pub fn value(&self, x: f64, y: f64) -> f64 {
        cheb_jet1(self.dx, x).0 * cheb_jet1(self.dy, y).0
    }

    /// Exact jet at (x, y).
    pub fn jet(&self, x: f64, y: f64) -> FieldJet {
        let (px, dpx, d2px) = cheb_jet1(self.dx, x);
        let (py, dpy, d2py) = cheb_jet1(self.dy, y);
        FieldJet {
            f: px * py,
            fx: dpx * py,
            fy: px * dpy,
            fxx: d2px * py,
            fyy: px * d2py,
            fxy: dpx * dpy,
        }
    }
}

/// The fixed panel used by the intertwining contracts: Chebyshev products of
/// degree at most `max_degree` in each variable, constants excluded.
pub fn cheb_panel(max_degree: u32) -> Vec<ChebProduct> {
    let mut out = Vec::new();
    for dx in 0..=max_degree {
        for dy in 0..=max_degree {
            if dx + dy > 0 {
                out.push(ChebProduct { dx, dy });
            }
        }
    }
    out
}
