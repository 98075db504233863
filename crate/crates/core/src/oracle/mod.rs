//! Brute-force validators working on the full 4×4 density matrix in the
//! basis {|ββ⟩, |βα⟩, |αβ⟩, |αα⟩}: Wootters spin-flip concurrence, quantum
//! discord by explicit measurement minimization, and skew-information LQU
//! from the W matrix. These share no algebra with the closed forms in
//! [`crate::correlations`] and are used to certify them.

mod linalg;
pub mod validate;

use num_complex::Complex64;

pub use linalg::{CMatrix, HermitianEigen};

use crate::channel::XState;
use crate::error::{Error, Result};

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A full two-qubit density matrix: Hermitian, unit trace, PSD (within
/// 1e-12 / 1e-10 tolerances checked at construction).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    m: CMatrix,
}

impl DensityMatrix4 {
    pub fn new(entries: [[Complex64; 4]; 4]) -> Result<Self> {
        let mut m = CMatrix::zeros(4);
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Self::from_matrix(m)
    }

    pub(crate) fn from_matrix(m: CMatrix) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::domain("density matrix must be 4x4"));
        }
        if m.hermiticity_defect() > 1e-12 {
            return Err(Error::domain(
                "density matrix is not Hermitian within 1e-12",
            ));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::domain(format!(
                "density matrix trace must be 1, got {tr}"
            )));
        }
        let eig = linalg::eig_hermitian(&m, 1e-12)?;
        if eig.values.iter().any(|&v| v < -1e-10) {
            return Err(Error::domain("density matrix has a negative eigenvalue"));
        }
        Ok(Self { m })
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    /// Reduced state of qubit A (first tensor slot), as a 2×2 matrix.
    pub fn reduce_a(&self) -> CMatrix {
        let mut out = CMatrix::zeros(2);
        for a1 in 0..2 {
            for a2 in 0..2 {
                for b in 0..2 {
                    out[(a1, a2)] += self.m[(2 * a1 + b, 2 * a2 + b)];
                }
            }
        }
        out
    }

    /// Reduced state of qubit B (second tensor slot).
    pub fn reduce_b(&self) -> CMatrix {
        let mut out = CMatrix::zeros(2);
        for b1 in 0..2 {
            for b2 in 0..2 {
                for a in 0..2 {
                    out[(b1, b2)] += self.m[(2 * a + b1, 2 * a + b2)];
                }
            }
        }
        out
    }
}

/// Polar/azimuth parameterization of a rank-1 projective measurement basis
/// on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    pub theta_m: f64,
    pub phi_m: f64,
}

impl MeasurementAngles {
    pub fn new(theta_m: f64, phi_m: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta_m) {
            return Err(Error::domain(format!(
                "polar angle must lie in [0, pi], got {theta_m}"
            )));
        }
        if !(0.0..2.0 * std::f64::consts::PI).contains(&phi_m) {
            return Err(Error::domain(format!(
                "azimuth must lie in [0, 2pi), got {phi_m}"
            )));
        }
        Ok(Self { theta_m, phi_m })
    }

    /// The two orthonormal basis vectors of the measurement.
    fn basis(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (0.5 * self.theta_m).sin_cos();
        let ph = Complex64::from_polar(1.0, self.phi_m);
        [
            [Complex64::new(c, 0.0), ph * s],
            [Complex64::new(s, 0.0), -(ph * c)],
        ]
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian 4×4
/// matrix. Reconstruction error is below 1e-10.
pub fn eig_hermitian(m: &DensityMatrix4) -> Result<HermitianEigen> {
    linalg::eig_hermitian(&m.m, 1e-12)
}

/// Principal square root √ρ = U √D U† of a PSD matrix.
pub fn sqrt_psd(m: &DensityMatrix4) -> Result<CMatrix> {
    linalg::sqrt_psd(&m.m, 1e-10)
}

fn pauli(i: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2);
    match i {
        1 => {
            m[(0, 1)] = C_ONE;
            m[(1, 0)] = C_ONE;
        }
        2 => {
            m[(0, 1)] = Complex64::new(0.0, -1.0);
            m[(1, 0)] = Complex64::new(0.0, 1.0);
        }
        3 => {
            m[(0, 0)] = C_ONE;
            m[(1, 1)] = -C_ONE;
        }
        _ => panic!("pauli index must be 1..=3"),
    }
    m
}

/// σ_i ⊗ 𝕀₂ (first qubit) in the fixed basis ordering.
fn pauli_on_a(i: usize) -> CMatrix {
    let p = pauli(i);
    let mut out = CMatrix::zeros(4);
    for a1 in 0..2 {
        for a2 in 0..2 {
            for b in 0..2 {
                out[(2 * a1 + b, 2 * a2 + b)] = p[(a1, a2)];
            }
        }
    }
    out
}

fn xlog2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

fn entropy_from_eigenvalues<I: IntoIterator<Item = f64>>(vals: I) -> f64 {
    -vals.into_iter().map(xlog2).sum::<f64>() + 0.0
}

/// Eigenvalues of a Hermitian 2×2 matrix in closed form.
fn eig2(m: &CMatrix) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let half_gap = (((a - d) * (a - d)) + 4.0 * m[(0, 1)].norm_sqr()).sqrt() * 0.5;
    let mid = 0.5 * (a + d);
    (mid + half_gap, mid - half_gap)
}

fn entropy2(m: &CMatrix) -> f64 {
    let (l1, l2) = eig2(m);
    entropy_from_eigenvalues([l1.max(0.0), l2.max(0.0)])
}

/// Von Neumann entropy S(ρ) in bits from the full spectrum.
pub fn von_neumann_entropy(m: &DensityMatrix4) -> Result<f64> {
    let eig = eig_hermitian(m)?;
    Ok(entropy_from_eigenvalues(
        eig.values.into_iter().map(|v| v.max(0.0)),
    ))
}

/// Wootters concurrence: 𝒞 = max{0, √λ₁ - √λ₂ - √λ₃ - √λ₄} where λᵢ are the
/// descending eigenvalues of ρ ρ̃ and ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
pub fn wootters_concurrence(m: &DensityMatrix4) -> Result<f64> {
    let yy = {
        let y = pauli(2);
        let mut out = CMatrix::zeros(4);
        for a1 in 0..2 {
            for a2 in 0..2 {
                for b1 in 0..2 {
                    for b2 in 0..2 {
                        out[(2 * a1 + b1, 2 * a2 + b2)] = y[(a1, a2)] * y[(b1, b2)];
                    }
                }
            }
        }
        out
    };
    let tilde = yy.mul(&m.m.conj()).mul(&yy);
    // eigenvalues of ρρ̃ equal those of the Hermitian √ρ ρ̃ √ρ
    let root = sqrt_psd(m)?;
    let sym = root.mul(&tilde).mul(&root).symmetrized();
    let eig = linalg::eig_hermitian(&sym, 1e-9)?;
    let s: Vec<f64> = eig.values.iter().map(|v| v.max(0.0).sqrt()).collect();
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

/// Average conditional entropy of qubit A after measuring qubit B in the
/// basis given by `angles`: Σ_j p_j S(ρ_{A|j}).
pub fn conditional_entropy(m: &DensityMatrix4, angles: &MeasurementAngles) -> f64 {
    let basis = angles.basis();
    let mut acc = 0.0;
    for v in &basis {
        // (I ⊗ ⟨b_j|) ρ (I ⊗ |b_j⟩): unnormalized conditional state of A
        let mut cond = CMatrix::zeros(2);
        for a1 in 0..2 {
            for a2 in 0..2 {
                let mut e = C_ZERO;
                for b1 in 0..2 {
                    for b2 in 0..2 {
                        e += v[b1].conj() * m.m[(2 * a1 + b1, 2 * a2 + b2)] * v[b2];
                    }
                }
                cond[(a1, a2)] = e;
            }
        }
        let p = cond.trace().re;
        if p <= 1e-15 {
            continue;
        }
        let (l1, l2) = eig2(&cond);
        acc += p * entropy_from_eigenvalues([(l1 / p).max(0.0), (l2 / p).max(0.0)]);
    }
    acc
}

/// Classical correlation J(Π) = S(ρ_A) - Σ_j p_j S(ρ_{A|j}) for a fixed
/// measurement on B.
pub fn classical_correlation(m: &DensityMatrix4, angles: &MeasurementAngles) -> f64 {
    entropy2(&m.reduce_a()) - conditional_entropy(m, angles)
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Quantum discord by direct measurement minimization:
/// Q = I(ρ) - max_Π J(Π) with I = S(ρ_A) + S(ρ_B) - S(ρ), the maximum taken
/// over rank-1 projective measurements on qubit B. A `grid_n` × `grid_n`
/// angle grid seeds a golden-section coordinate descent refined to 1e-7.
pub fn discord_numeric(m: &DensityMatrix4, grid_n: usize) -> Result<f64> {
    if grid_n < 64 {
        return Err(Error::domain(format!(
            "measurement grid must have at least 64 points per axis, got {grid_n}"
        )));
    }
    let s_a = entropy2(&m.reduce_a());
    let s_b = entropy2(&m.reduce_b());
    let s_ab = von_neumann_entropy(m)?;
    let mutual_information = s_a + s_b - s_ab;

    let xi = |theta: f64, phi: f64| {
        conditional_entropy(
            m,
            &MeasurementAngles {
                theta_m: theta,
                phi_m: phi,
            },
        )
    };

    let pi = std::f64::consts::PI;
    let theta_step = pi / (grid_n - 1) as f64;
    let phi_step = 2.0 * pi / grid_n as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..grid_n {
        let theta = i as f64 * theta_step;
        for j in 0..grid_n {
            let phi = j as f64 * phi_step;
            let v = xi(theta, phi);
            if v < best.0 {
                best = (v, theta, phi);
            }
        }
    }

    // Coordinate descent from the best grid point, one golden-section line
    // search per coordinate per round, windows shrinking toward 1e-7.
    let (mut val, mut theta, mut phi) = best;
    let mut window_t = theta_step;
    let mut window_p = phi_step;
    for _ in 0..200 {
        let (t_new, v1) = golden_section_min(
            |t| xi(t, phi),
            (theta - window_t).max(0.0),
            (theta + window_t).min(pi),
            1e-7,
        );
        let (p_new, v2) =
            golden_section_min(|p| xi(t_new, p), phi - window_p, phi + window_p, 1e-7);
        let moved = (t_new - theta).abs().max((p_new - phi).abs());
        theta = t_new;
        phi = p_new;
        val = v1.min(v2).min(val);
        window_t = (window_t * 0.5).max(1e-7);
        window_p = (window_p * 0.5).max(1e-7);
        if moved < 1e-7 {
            break;
        }
    }

    let classical = s_a - val;
    Ok((mutual_information - classical).max(0.0))
}

/// Local quantum uncertainty from the W matrix:
/// ω_ij = Tr(√ρ (σ_i⊗𝕀₂) √ρ (σ_j⊗𝕀₂)), 𝒰 = 1 - max eigenvalue of W.
pub fn lqu_numeric(m: &DensityMatrix4) -> Result<f64> {
    let root = sqrt_psd(m)?;
    let sig: Vec<CMatrix> = (1..=3).map(pauli_on_a).collect();
    let mut w = CMatrix::zeros(3);
    for i in 0..3 {
        for j in i..3 {
            let t = root.mul(&sig[i]).mul(&root).mul(&sig[j]).trace();
            debug_assert!(t.im.abs() < 1e-9, "W matrix entry has imaginary part {t}");
            w[(i, j)] = Complex64::new(t.re, 0.0);
            w[(j, i)] = Complex64::new(t.re, 0.0);
        }
    }
    let eig = linalg::eig_hermitian(&w, 1e-9)?;
    Ok((1.0 - eig.values[0]).clamp(0.0, 1.0))
}

/// Embed an [`XState`] block into the full 4×4 basis: entries (2,2), (3,3),
/// (2,3), (3,2) in 1-based indexing; everything else zero.
pub fn lift_to_full(state: &XState) -> Result<DensityMatrix4> {
    let mut m = CMatrix::zeros(4);
    m[(1, 1)] = Complex64::new(state.rho22(), 0.0);
    m[(2, 2)] = Complex64::new(state.rho33(), 0.0);
    m[(1, 2)] = state.rho23();
    m[(2, 1)] = state.rho23().conj();
    DensityMatrix4::from_matrix(m)
}
