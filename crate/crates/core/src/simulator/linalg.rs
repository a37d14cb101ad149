//! Small dense helpers shared by the stepping engine and the test oracles.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];

pub const IDENTITY2: Mat2 = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

/// exp(−i·(Re r·X + Im r·Y)/2): the step for a drive whose rate times step
/// length is `r`.
pub fn drive_step(r: Complex64) -> Mat2 {
    let m = r.norm();
    if m == 0.0 {
        return IDENTITY2;
    }
    let (s, c) = (m / 2.0).sin_cos();
    let u = r / m;
    let minus_is = Complex64::new(0.0, -s);
    [[Complex64::new(c, 0.0), minus_is * u.conj()], [minus_is * u, Complex64::new(c, 0.0)]]
}

/// exp(−i·a·Z/2).
pub fn rz(a: f64) -> Mat2 {
    [
        [Complex64::from_polar(1.0, -a / 2.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, a / 2.0)],
    ]
}

/// exp(−i·a·X/2).
pub fn rx(a: f64) -> Mat2 {
    let (s, c) = (a / 2.0).sin_cos();
    [[Complex64::new(c, 0.0), Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), Complex64::new(c, 0.0)]]
}

/// exp(−i·a·Y/2).
pub fn ry(a: f64) -> Mat2 {
    let (s, c) = (a / 2.0).sin_cos();
    [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]]
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_to_dense(m: &Mat2) -> DMatrix<Complex64> {
    DMatrix::from_fn(2, 2, |i, j| m[i][j])
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Largest singular value.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

/// ‖U − e^{iφ}V‖ with φ chosen to align the two (the phase that maximizes
/// Re tr(e^{−iφ} V†U)). An upper bound on the minimum over φ.
pub fn phase_distance(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>) -> f64 {
    let overlap = (v.adjoint() * u).trace();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    operator_norm(&(u - v * phase))
}

/// ‖U†U − I‖.
pub fn unitarity_error(u: &DMatrix<Complex64>) -> f64 {
    operator_norm(&(u.adjoint() * u - DMatrix::identity(u.nrows(), u.ncols())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn drive_step_matches_rotations() {
        let d = |a: &Mat2, b: &Mat2| phase_distance(&mat2_to_dense(a), &mat2_to_dense(b));
        assert!(d(&drive_step(Complex64::new(0.7, 0.0)), &rx(0.7)) < 1e-15);
        assert!(d(&drive_step(Complex64::new(0.0, 0.7)), &ry(0.7)) < 1e-15);
        // Rotating the drive phase conjugates by Rz.
        let phi = 0.9;
        let turned = drive_step(Complex64::from_polar(1.3, -phi));
        let conj = mat2_mul(&rz(-phi), &mat2_mul(&drive_step(Complex64::new(1.3, 0.0)), &rz(phi)));
        assert!(d(&turned, &conj) < 1e-15);
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let u = mat2_to_dense(&rx(0.4));
        let v = &u * Complex64::from_polar(1.0, 2.1);
        assert!(phase_distance(&u, &v) < 1e-15);
        let w = mat2_to_dense(&rz(PI));
        assert_abs_diff_eq!(unitarity_error(&w), 0.0, epsilon = 1e-15);
        assert!(phase_distance(&u, &w) > 0.5);
    }
}
