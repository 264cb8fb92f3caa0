//! Linear-combination-of-unitaries decomposition of the sparse gradient
//! operators in their one-sided 6×6 form.
//!
//! The non-unitary matrix `V_X(β0, β2)` (identity except for its two
//! modified magnetic rows) equals `½ Σᵢ LCUᵢ` with four orthogonal terms,
//! two of them diagonal. The cancellation is exact algebra, valid for all
//! angles. The total weight Σwᵢ = 2 is the normalization cost a
//! quantum-hardware encoding of the sum would pay in amplitude
//! amplification.
//!
//! The y-direction set is constructed by the same pattern with the affected
//! rows and angles swapped; it is derived by symmetry rather than taken
//! from a printed source.

use nalgebra::Matrix6;

/// Four orthogonal terms whose half-weighted sum reconstructs a sparse
/// gradient operator.
#[derive(Debug, Clone)]
pub struct LcuSet {
    pub terms: [Matrix6<f64>; 4],
    pub weights: [f64; 4],
}

impl LcuSet {
    /// ½ Σᵢ LCUᵢ.
    pub fn reconstruct(&self) -> Matrix6<f64> {
        let mut sum = Matrix6::zeros();
        for (t, w) in self.terms.iter().zip(self.weights) {
            sum += t * w;
        }
        sum
    }

    /// Max-abs entry of LCUᵢᵀ LCUᵢ − I over all terms.
    pub fn max_orthogonality_residual(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| (t.transpose() * t - Matrix6::identity()).abs().max())
            .fold(0.0, f64::max)
    }

    /// Σ wᵢ — the LCU normalization cost.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// The one-sided x-gradient matrix: identity except
/// row 4 = (−sin β2)·q2 + (cos β2)·q4 and row 5 = (sin β0)·q1 + (cos β0)·q5.
pub fn vx_matrix(beta0: f64, beta2: f64) -> Matrix6<f64> {
    let (c0, s0) = (beta0.cos(), beta0.sin());
    let (c2, s2) = (beta2.cos(), beta2.sin());
    #[rustfmt::skip]
    let m = Matrix6::from_row_slice(&[
        1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, -s2, 0.0,  c2, 0.0,
        0.0,  s0, 0.0, 0.0, 0.0,  c0,
    ]);
    m
}

/// The one-sided y-gradient matrix: identity except
/// row 3 = (sin β3)·q2 + (cos β3)·q3 and row 5 = (−sin β1)·q0 + (cos β1)·q5.
pub fn vy_matrix(beta1: f64, beta3: f64) -> Matrix6<f64> {
    let (c1, s1) = (beta1.cos(), beta1.sin());
    let (c3, s3) = (beta3.cos(), beta3.sin());
    #[rustfmt::skip]
    let m = Matrix6::from_row_slice(&[
        1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
        0.0, 0.0,  s3,  c3, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
        -s1, 0.0, 0.0, 0.0, 0.0,  c1,
    ]);
    m
}

/// The four unitaries for `vx_matrix`: identity, a diagonal sign matrix,
/// and two rotations that differ only in the sign of their source rows.
pub fn lcu_terms(beta0: f64, beta2: f64) -> LcuSet {
    let (c0, s0) = (beta0.cos(), beta0.sin());
    let (c2, s2) = (beta2.cos(), beta2.sin());
    let lcu1 = Matrix6::identity();
    let lcu2 = Matrix6::from_diagonal(&nalgebra::Vector6::new(-1.0, 1.0, 1.0, -1.0, -1.0, -1.0));
    #[rustfmt::skip]
    let lcu3 = Matrix6::from_row_slice(&[
        1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0,  c0, 0.0, 0.0, 0.0, -s0,
        0.0, 0.0,  c2, 0.0,  s2, 0.0,
        0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, -s2, 0.0,  c2, 0.0,
        0.0,  s0, 0.0, 0.0, 0.0,  c0,
    ]);
    #[rustfmt::skip]
    let lcu4 = Matrix6::from_row_slice(&[
        1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, -c0, 0.0, 0.0, 0.0,  s0,
        0.0, 0.0, -c2, 0.0, -s2, 0.0,
        0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, -s2, 0.0,  c2, 0.0,
        0.0,  s0, 0.0, 0.0, 0.0,  c0,
    ]);
    LcuSet { terms: [lcu1, lcu2, lcu3, lcu4], weights: [0.5; 4] }
}

/// The y-direction set, built by the same pattern (derived by symmetry).
pub fn lcu_terms_y(beta1: f64, beta3: f64) -> LcuSet {
    let (c1, s1) = (beta1.cos(), beta1.sin());
    let (c3, s3) = (beta3.cos(), beta3.sin());
    let lcu1 = Matrix6::identity();
    let lcu2 = Matrix6::from_diagonal(&nalgebra::Vector6::new(1.0, -1.0, 1.0, -1.0, -1.0, -1.0));
    #[rustfmt::skip]
    let lcu3 = Matrix6::from_row_slice(&[
         c1, 0.0, 0.0, 0.0, 0.0,  s1,
        0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0,  c3, -s3, 0.0, 0.0,
        0.0, 0.0,  s3,  c3, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
        -s1, 0.0, 0.0, 0.0, 0.0,  c1,
    ]);
    #[rustfmt::skip]
    let lcu4 = Matrix6::from_row_slice(&[
        -c1, 0.0, 0.0, 0.0, 0.0, -s1,
        0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, -c3,  s3, 0.0, 0.0,
        0.0, 0.0,  s3,  c3, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
        -s1, 0.0, 0.0, 0.0, 0.0,  c1,
    ]);
    LcuSet { terms: [lcu1, lcu2, lcu3, lcu4], weights: [0.5; 4] }
}

/// Max-abs entry of `V_X(β0,β2) − ½ Σᵢ LCUᵢ`. The cancellation is exact
/// algebra; numerically this stays at rounding level for all angles.
pub fn verify_lcu(beta0: f64, beta2: f64) -> f64 {
    (vx_matrix(beta0, beta2) - lcu_terms(beta0, beta2).reconstruct()).abs().max()
}

/// Max-abs entry of `V_Y(β1,β3) − ½ Σᵢ LCUᵢ` for the symmetry-derived set.
pub fn verify_lcu_y(beta1: f64, beta3: f64) -> f64 {
    (vy_matrix(beta1, beta3) - lcu_terms_y(beta1, beta3).reconstruct()).abs().max()
}
