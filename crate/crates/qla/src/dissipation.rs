//! Open-system machinery for lossy 1D media at desk scale: split
//! Hamiltonians per Fourier mode, Trotter stepping, the amplitude-damping
//! Kraus pair, its unitary dilation, and measurement-conditioned evolution.
//!
//! All state here is complex double precision, separate from the real
//! lattice amplitudes of the 2D solver. Matrices are small and dense;
//! per-mode evolutions are independent.

use crate::error::{QlaError, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Homogeneous scalar medium with complex permittivity ε = ε_R + i ε_I.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossyMedium1D {
    pub eps_r: f64,
    pub eps_i: f64,
    pub mu0: f64,
}

impl LossyMedium1D {
    pub fn new(eps_r: f64, eps_i: f64) -> Result<Self> {
        Self::with_mu0(eps_r, eps_i, 1.0)
    }

    pub fn with_mu0(eps_r: f64, eps_i: f64, mu0: f64) -> Result<Self> {
        if !(eps_r > 0.0) {
            return Err(QlaError::InvalidMedium(format!("eps_r must be positive, got {eps_r}")));
        }
        if eps_i < 0.0 {
            return Err(QlaError::InvalidMedium(format!(
                "eps_i must be non-negative (dissipative medium), got {eps_i}"
            )));
        }
        Ok(Self { eps_r, eps_i, mu0 })
    }

    /// Loss angle δ = ε_I / ε_R.
    pub fn loss_angle(&self) -> f64 {
        self.eps_i / self.eps_r
    }

    /// Phase velocity v_δ = 1/√(ε_R μ0 (1 + δ²)).
    pub fn phase_velocity(&self) -> f64 {
        let d = self.loss_angle();
        1.0 / (self.eps_r * self.mu0 * (1.0 + d * d)).sqrt()
    }
}

/// Hermitian/anti-Hermitian split of a dissipative generator: the state
/// evolves under i ∂ψ/∂t = (H0 − i H1) ψ.
///
/// `u1` diagonalizes `h1` with eigenvalues sorted descending, so the
/// `gammas` (strictly positive eigenvalues, the damped subspace) come
/// first. For positive semi-definite `h1` this realizes
/// `h1 = u1 · diag(γ1..γr, 0, ..) · u1†`; for an indefinite `h1` (the
/// single-mode lossy operator has a ± pair) only the positive branch is
/// damped and the remainder is left untouched by the Kraus path.
#[derive(Debug, Clone)]
pub struct SplitHamiltonians {
    pub h0: CMat,
    pub h1: CMat,
    pub u1: CMat,
    pub eigenvalues: Vec<f64>,
    pub gammas: Vec<f64>,
}

impl SplitHamiltonians {
    pub fn new(h0: CMat, h1: CMat) -> Result<Self> {
        let scale = h0.iter().chain(h1.iter()).map(|c| c.norm()).fold(1.0, f64::max);
        for (name, m) in [("h0", &h0), ("h1", &h1)] {
            let res = hermiticity_residual(m);
            if res > 1e-12 * scale {
                let _ = name;
                return Err(QlaError::NotHermitian(res));
            }
        }
        let (eigenvalues, u1) = hermitian_eigen(&h1);
        let tol = 1e-12 * scale;
        let gammas: Vec<f64> = eigenvalues.iter().copied().take_while(|&l| l > tol).collect();
        Ok(Self { h0, h1, u1, eigenvalues, gammas })
    }

    pub fn dim(&self) -> usize {
        self.h0.nrows()
    }
}

/// H0 and H1 for a single Fourier mode k of the lossy 1D medium, after the
/// Dyson map diag(|ε|/√ε_R, √μ0):
/// H0 = v_δ (σx + (δ/2) σy) k,  H1 = (δ v_δ / 2) σx k.
pub fn lossy_hamiltonians(medium: &LossyMedium1D, wavenumber: f64) -> Result<SplitHamiltonians> {
    let d = medium.loss_angle();
    let v = medium.phase_velocity();
    let k = wavenumber;
    let h0 = CMat::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(v * k, -v * k * d / 2.0),
            Complex64::new(v * k, v * k * d / 2.0),
            Complex64::new(0.0, 0.0),
        ],
    );
    let g = d * v * k / 2.0;
    let h1 = CMat::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(g, 0.0),
            Complex64::new(g, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    );
    SplitHamiltonians::new(h0, h1)
}

/// Amplitude-damping Kraus pair.
///
/// `k0` carries Γ = diag(e^{−γᵢ δt}) on the damped block and identity
/// elsewhere; `k1` carries √(I − Γ²) in its lower-left block. Completeness
/// K0†K0 + K1†K1 = I holds by construction.
#[derive(Debug, Clone)]
pub struct KrausPair {
    pub k0: CMat,
    pub k1: CMat,
    pub gammas: Vec<f64>,
    pub dt: f64,
}

pub fn kraus_pair(gammas: &[f64], d: usize, dt: f64) -> Result<KrausPair> {
    let r = gammas.len();
    if r > d {
        return Err(QlaError::RankExceedsDimension { r, d });
    }
    if let Some(&bad) = gammas.iter().find(|&&g| !(g > 0.0)) {
        return Err(QlaError::NonPositiveRate(bad));
    }
    let mut k0 = CMat::identity(d, d);
    let mut k1 = CMat::zeros(d, d);
    for (i, &g) in gammas.iter().enumerate() {
        let gamma_dt = (-g * dt).exp();
        k0[(i, i)] = Complex64::new(gamma_dt, 0.0);
        k1[(d - r + i, i)] = Complex64::new((1.0 - gamma_dt * gamma_dt).sqrt(), 0.0);
    }
    Ok(KrausPair { k0, k1, gammas: gammas.to_vec(), dt })
}

impl KrausPair {
    /// Max-abs entry of K0†K0 + K1†K1 − I.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.k0.nrows();
        let m = self.k0.adjoint() * &self.k0 + self.k1.adjoint() * &self.k1 - CMat::identity(d, d);
        m.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// The 2d×2d unitary dilation of the damping channel: Kraus column blocks
/// completed to a unitary, block-diagonal rotation structure
/// cos(θᵢ/2) = e^{−γᵢ δt} on each damped mode.
#[derive(Debug, Clone)]
pub struct DilationOperator {
    pub u_diss: CMat,
    pub rank: usize,
    pub dim: usize,
}

pub fn dilation(pair: &KrausPair) -> Result<DilationOperator> {
    let d = pair.k0.nrows();
    let r = pair.gammas.len();
    let n = 2 * d;
    // Block layout on (system ⊗ environment-qubit) coordinates:
    // rows/cols [0..r | r..d | d..2d−r | 2d−r..2d].
    let mut u = CMat::identity(n, n);
    for i in 0..r {
        let gamma = pair.k0[(i, i)].re;
        let root = (1.0 - gamma * gamma).sqrt();
        u[(i, i)] = Complex64::new(gamma, 0.0);
        u[(n - r + i, n - r + i)] = Complex64::new(gamma, 0.0);
        u[(n - r + i, i)] = Complex64::new(root, 0.0);
        u[(i, n - r + i)] = Complex64::new(-root, 0.0);
    }
    let residual = unitarity_residual(&u);
    if residual > 1e-12 {
        return Err(QlaError::DilationNotUnitary { residual });
    }
    Ok(DilationOperator { u_diss: u, rank: r, dim: d })
}

impl DilationOperator {
    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.u_diss)
    }
}

/// One non-unitary Trotter step: e^{−i δt H0} · U1 · K0 · U1† · ψ.
///
/// Splitting error against the exact evolution e^{−i δt (H0 − i H1)} is
/// O(δt²) when H1 is positive semi-definite.
pub fn trotter_step(psi: &CVec, split: &SplitHamiltonians, dt: f64) -> CVec {
    let mut tilde = split.u1.adjoint() * psi;
    for (i, &g) in split.gammas.iter().enumerate() {
        tilde[i] *= Complex64::new((-g * dt).exp(), 0.0);
    }
    let back = &split.u1 * tilde;
    propagator(&split.h0, dt) * back
}

/// e^{−i dt h} for Hermitian h.
pub fn propagator(h: &CMat, dt: f64) -> CMat {
    expm(&(h.map(|v| v * Complex64::new(0.0, -dt))))
}

/// Measurement-conditioned evolution through the dilated space.
///
/// Embeds ψ (in the h1 eigenbasis) alongside a zeroed environment branch,
/// applies the dilation, projects the environment onto |0⟩, and propagates
/// the surviving system state with e^{−i δt H0}. Returns the renormalized
/// state and the measurement probability p0; the state equals
/// `trotter_step(ψ)` up to normalization.
pub fn evolve_open(psi: &CVec, split: &SplitHamiltonians, dt: f64) -> Result<(CVec, f64)> {
    let d = split.dim();
    let pair = kraus_pair(&split.gammas, d, dt)?;
    let dil = dilation(&pair)?;
    let tilde = split.u1.adjoint() * psi;
    let mut phi = CVec::zeros(2 * d);
    for i in 0..d {
        phi[i] = tilde[i];
    }
    let phi = dil.u_diss * phi;
    let kept = CVec::from_iterator(d, (0..d).map(|i| phi[i]));
    let p0 = kept.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if p0 < 1e-12 {
        return Err(QlaError::UnrecoverableBranch { p0 });
    }
    let state = propagator(&split.h0, dt) * (&split.u1 * kept) / Complex64::new(p0.sqrt(), 0.0);
    Ok((state, p0))
}

/// Exact success probability of the |0⟩ measurement branch and its lower
/// bound, for ψ expressed in the h1 eigenbasis (damped components first):
///
/// p(0) = Σ_{i<r} e^{−2γᵢδt} |ψᵢ|² + Σ_{i≥r} |ψᵢ|²
///      ≥ 1 + (e^{−2 γmax δt} − 1) · Σ_{i<r} |ψᵢ|²,
///
/// with equality when all damped weight sits on the γmax mode.
pub fn success_probability(psi: &CVec, gammas: &[f64], dt: f64) -> (f64, f64) {
    let r = gammas.len();
    let mut p0 = 0.0;
    let mut damped_weight = 0.0;
    for (i, c) in psi.iter().enumerate() {
        let w = c.norm_sqr();
        if i < r {
            p0 += (-2.0 * gammas[i] * dt).exp() * w;
            damped_weight += w;
        } else {
            p0 += w;
        }
    }
    let gamma_max = gammas.iter().copied().fold(0.0, f64::max);
    let bound = 1.0 + ((-2.0 * gamma_max * dt).exp() - 1.0) * damped_weight;
    (p0, bound)
}

// --- dense helpers --------------------------------------------------------

pub fn hermiticity_residual(m: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn unitarity_residual(m: &CMat) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMat::identity(n, n)).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
/// Intended for the small dense matrices of this module.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let one_norm = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let s = if one_norm > 0.5 { (one_norm / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a.map(|v| v / Complex64::new(2f64.powi(s as i32), 0.0));
    let mut term = CMat::identity(n, n);
    let mut sum = CMat::identity(n, n);
    for k in 1..=30 {
        term = (&term * &b) / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.iter().map(|c| c.norm()).fold(0.0, f64::max) < 1e-20 {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues sorted descending and the matching
/// unitary of column eigenvectors (m = V diag(λ) V†).
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = CMat::identity(n, n);
    let scale = m.iter().map(|c| c.norm()).fold(1e-300, f64::max);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                if g.norm() <= 1e-300 {
                    continue;
                }
                let phase = g / Complex64::new(g.norm(), 0.0);
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                let theta = 0.5 * (2.0 * g.norm()).atan2(alpha - beta);
                let (c, s) = (theta.cos(), theta.sin());
                // J = [[c, −s·phase],[s·phase*, c]] zeroes the (p,q) entry of J†AJ
                let jpp = Complex64::new(c, 0.0);
                let jpq = -phase * s;
                let jqp = phase.conj() * s;
                let jqq = Complex64::new(c, 0.0);
                // A ← J† A J applied to rows/cols p,q
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * jpp + aiq * jqp;
                    a[(i, q)] = aip * jpq + aiq * jqq;
                }
                for i in 0..n {
                    let api = a[(p, i)];
                    let aqi = a[(q, i)];
                    a[(p, i)] = jpp.conj() * api + jqp.conj() * aqi;
                    a[(q, i)] = jpq.conj() * api + jqq.conj() * aqi;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * jpp + viq * jqp;
                    v[(i, q)] = vip * jpq + viq * jqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    (eigenvalues, vectors)
}
