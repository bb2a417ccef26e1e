//! Matrix representations of L₁, L₂, L₃ and R = [L₁,L₂] on the
//! (N+1)-dimensional energy eigenspace, with verification of the quadratic
//! algebra closure and the Casimir identity.
//!
//! In the eigenvalue-equation labeling used here (L₁ diagonal on Ψ, pair
//! k₁k₂), the structure relations pair each L_i with the potential parameter
//! absent from it: ā₁ = a₃, ā₂ = a₁, ā₃ = a₂. The B_n diagonal carries
//! -½(k₁²-k₂²) where the source prints +¼-k₁²; the quadrature matrix
//! elements select the former.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::sphere::{energy, l1_eigenvalue, rescale_factor, BasisIndex, Params3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    Psi,
    PsiPrime,
}

/// Dense representation of a symmetry operator on the energy-N eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub basis: BasisTag,
    pub entries: DMatrix<f64>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

/// Superdiagonal coefficient A_n of L₂Ψ_{m,n} = A_nΨ_{m-1,n+1} + B_nΨ_{m,n} + C_nΨ_{m+1,n-1}.
pub fn l2_coeff_a(n: u32, level: u32, k: &Params3) -> f64 {
    let n = f64::from(n);
    let nn = f64::from(level);
    let s12 = k.k1 + k.k2;
    -4.0 * (nn + k.k3 - n) * (nn + n + k.sum() + 2.0) * (n + 1.0) * (n + s12 + 1.0)
        / ((2.0 * n + s12 + 2.0) * (2.0 * n + s12 + 1.0))
}

/// Diagonal coefficient B_n (corrected constant term, see module docs).
pub fn l2_coeff_b(n: u32, level: u32, k: &Params3) -> f64 {
    let n = f64::from(n);
    let nn = f64::from(level);
    let s12 = k.k1 + k.k2;
    let omega = 2.0 * nn + k.sum() + 2.0;
    -(k.k1 * k.k1 - k.k2 * k.k2) * (k.k3 * k.k3 - omega * omega)
        / (2.0 * (2.0 * n + s12 + 2.0) * (2.0 * n + s12))
        + 0.5 * (2.0 * n + s12 + 1.0) * (2.0 * n + s12 + 1.0)
        - 0.5 * (k.k1 * k.k1 - k.k2 * k.k2)
        - 0.5 * omega * omega
        + 0.5 * k.k3 * k.k3
}

/// Subdiagonal coefficient C_n.
pub fn l2_coeff_c(n: u32, level: u32, k: &Params3) -> f64 {
    let n = f64::from(n);
    let nn = f64::from(level);
    let s12 = k.k1 + k.k2;
    -4.0 * (nn - n + 1.0) * (nn + n + s12 + 1.0) * (n + k.k1) * (n + k.k2)
        / ((2.0 * n + s12) * (2.0 * n + s12 + 1.0))
}

/// Diagonal L₁ representation, entries -4n(n+k₁+k₂+1) - (2k₁k₂+2k₁+2k₂+3/2).
pub fn l1_matrix(level: u32, k: &Params3) -> OperatorMatrix {
    let dim = level as usize + 1;
    let mut m = DMatrix::zeros(dim, dim);
    for n in 0..=level {
        m[(n as usize, n as usize)] = l1_eigenvalue(n, k);
    }
    OperatorMatrix { basis: BasisTag::Psi, entries: m }
}

/// Tridiagonal L₂ representation; in the Ψ' basis the entries are conjugated
/// by the rescale factors.
pub fn l2_matrix(level: u32, k: &Params3, basis: BasisTag) -> Result<OperatorMatrix> {
    let dim = level as usize + 1;
    let mut m = DMatrix::zeros(dim, dim);
    let fac: Vec<f64> = match basis {
        BasisTag::Psi => vec![1.0; dim],
        BasisTag::PsiPrime => (0..=level)
            .map(|n| rescale_factor(BasisIndex::new(level, n).unwrap(), k))
            .collect::<Result<_>>()?,
    };
    for n in 0..=level {
        let i = n as usize;
        m[(i, i)] = l2_coeff_b(n, level, k);
        if n < level {
            m[(i + 1, i)] = l2_coeff_a(n, level, k) * fac[i] / fac[i + 1];
        }
        if n > 0 {
            m[(i - 1, i)] = l2_coeff_c(n, level, k) * fac[i] / fac[i - 1];
        }
    }
    Ok(OperatorMatrix { basis, entries: m })
}

/// L₃ = E_N·I - L₁ - L₂ - (a₁+a₂+a₃)·I.
pub fn l3_matrix(level: u32, k: &Params3, basis: BasisTag) -> Result<OperatorMatrix> {
    let dim = level as usize + 1;
    let e = energy(level, k);
    let asum = k.a1 + k.a2 + k.a3;
    let l1 = l1_matrix(level, k);
    let l2 = l2_matrix(level, k, basis)?;
    let m = DMatrix::from_diagonal_element(dim, dim, e - asum) - l1.entries - l2.entries;
    Ok(OperatorMatrix { basis, entries: m })
}

fn comm(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

fn anti(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b + b * a
}

/// Symmetrizer of three operators: the sum over all six orderings
/// (no 1/6 normalization, matching {A,B} = AB + BA).
pub fn symmetrizer3(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> DMatrix<f64> {
    a * b * c + a * c * b + b * a * c + b * c * a + c * a * b + c * b * a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetrizerConvention {
    /// Σ over all 6 orderings.
    SumSixOrderings,
    /// Σ over 6 orderings divided by 6.
    Normalized,
}

/// Outcome of one matrix-identity check.
#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub label: String,
    /// max-abs entry of LHS - RHS, relative to max(1, ‖LHS‖, ‖RHS‖)
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct AlgebraReport {
    pub level: u32,
    pub tolerance: f64,
    pub residuals: Vec<IdentityResidual>,
    pub pass: bool,
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

fn rel_residual(lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) -> f64 {
    let scale = max_abs(lhs).max(max_abs(rhs)).max(1.0);
    max_abs(&(lhs - rhs)) / scale
}

/// The parameter ā_i paired with L_i in the structure relations: (a₃, a₁, a₂).
/// Determined against the matrix representations; wrong pairings leave
/// residuals of order one.
fn paired_a(k: &Params3) -> [f64; 3] {
    [k.a3, k.a1, k.a2]
}

pub const ALGEBRA_TOLERANCE: f64 = 1e-8;

/// Verify [L_i, R] = 4{L_i,L_k} - 4{L_i,L_j} - (8+16ā_j)L_j + (8+16ā_k)L_k + 8(ā_j-ā_k)
/// for the three cyclic assignments, plus R = [L₁,L₂] = [L₂,L₃] = [L₃,L₁].
pub fn verify_closure(level: u32, k: &Params3) -> Result<AlgebraReport> {
    let dim = level as usize + 1;
    let l = [
        l1_matrix(level, k).entries,
        l2_matrix(level, k, BasisTag::Psi)?.entries,
        l3_matrix(level, k, BasisTag::Psi)?.entries,
    ];
    let a = paired_a(k);
    let r = comm(&l[0], &l[1]);
    let eye = DMatrix::identity(dim, dim);

    let mut residuals = vec![
        IdentityResidual {
            label: "R = [L2,L3]".into(),
            residual: rel_residual(&r, &comm(&l[1], &l[2])),
        },
        IdentityResidual {
            label: "R = [L3,L1]".into(),
            residual: rel_residual(&r, &comm(&l[2], &l[0])),
        },
    ];
    for (i, j, kk) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let lhs = comm(&l[i], &r);
        let rhs = 4.0 * anti(&l[i], &l[kk]) - 4.0 * anti(&l[i], &l[j])
            - (8.0 + 16.0 * a[j]) * &l[j]
            + (8.0 + 16.0 * a[kk]) * &l[kk]
            + 8.0 * (a[j] - a[kk]) * &eye;
        residuals.push(IdentityResidual {
            label: format!("[L{},R] closure", i + 1),
            residual: rel_residual(&lhs, &rhs),
        });
    }
    let pass = residuals.iter().all(|r| r.residual < ALGEBRA_TOLERANCE);
    Ok(AlgebraReport { level, tolerance: ALGEBRA_TOLERANCE, residuals, pass })
}

/// Verify the Casimir identity expressing R² inside the algebra.
pub fn verify_casimir(
    level: u32,
    k: &Params3,
    convention: SymmetrizerConvention,
) -> Result<AlgebraReport> {
    let dim = level as usize + 1;
    let l1 = l1_matrix(level, k).entries;
    let l2 = l2_matrix(level, k, BasisTag::Psi)?.entries;
    let l3 = l3_matrix(level, k, BasisTag::Psi)?.entries;
    let a = paired_a(k);
    let (a1, a2, a3) = (a[0], a[1], a[2]);
    let r = comm(&l1, &l2);
    let eye = DMatrix::identity(dim, dim);

    let norm = match convention {
        SymmetrizerConvention::SumSixOrderings => 1.0,
        SymmetrizerConvention::Normalized => 1.0 / 6.0,
    };
    let scalar = 32.0 / 3.0 * (a1 + a2 + a3)
        + 48.0 * (a1 * a2 + a2 * a3 + a3 * a1)
        + 64.0 * a1 * a2 * a3;
    let rhs = 8.0 / 3.0 * norm * symmetrizer3(&l1, &l2, &l3)
        - (16.0 * a1 + 12.0) * &l1 * &l1
        - (16.0 * a2 + 12.0) * &l2 * &l2
        - (16.0 * a3 + 12.0) * &l3 * &l3
        + 52.0 / 3.0 * (anti(&l1, &l2) + anti(&l2, &l3) + anti(&l3, &l1))
        + (16.0 + 176.0 * a1) / 3.0 * &l1
        + (16.0 + 176.0 * a2) / 3.0 * &l2
        + (16.0 + 176.0 * a3) / 3.0 * &l3
        + scalar * eye;
    let lhs = &r * &r;
    let residual = rel_residual(&lhs, &rhs);
    Ok(AlgebraReport {
        level,
        tolerance: ALGEBRA_TOLERANCE,
        pass: residual < ALGEBRA_TOLERANCE,
        residuals: vec![IdentityResidual { label: "R^2 Casimir".into(), residual }],
    })
}

/// L₂ in the orthonormalized Ψ basis (symmetric when the representation is
/// self-adjoint).
pub fn l2_orthonormal(level: u32, k: &Params3) -> Result<DMatrix<f64>> {
    let m = l2_matrix(level, k, BasisTag::Psi)?.entries;
    let dim = level as usize + 1;
    let norms: Vec<f64> = (0..=level)
        .map(|n| crate::sphere::norm_psi_sq(BasisIndex::new(level, n).unwrap(), k))
        .collect::<Result<Vec<_>>>()?;
    let mut s = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            s[(i, j)] = m[(i, j)] * (norms[i] / norms[j]).sqrt();
        }
    }
    Ok(s)
}

/// Max deviation of the sorted L₂ spectrum from the λ_q eigenvalue family.
pub fn l2_spectrum_residual(level: u32, k: &Params3) -> Result<f64> {
    let s = l2_orthonormal(level, k)?;
    let mut eig: Vec<f64> = s.symmetric_eigenvalues().iter().copied().collect();
    let mut lam: Vec<f64> = (0..=level).map(|q| crate::sphere::l2_eigenvalue(q, k)).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lam.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eig
        .iter()
        .zip(&lam)
        .map(|(e, l)| (e - l).abs())
        .fold(0.0f64, f64::max))
}
