//! Dense complex matrices and the spectral routines the rest of the crate
//! builds on.
//!
//! Everything here is sized for two-qutrit problems (9x9), so the solvers
//! favour robustness and determinism over asymptotic speed. Hermitian
//! eigenvalues come from the cyclic two-sided Jacobi method; singular values
//! come from one-sided Jacobi orthogonalization, which computes small
//! singular values to full absolute accuracy instead of the `sqrt(eps)`
//! accuracy a detour through `A^dagger A` would give. That matters because
//! realigned density matrices routinely have exactly vanishing singular
//! values, and the validation gate compares them against closed forms at
//! `1e-9` or tighter.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Hard cap on Jacobi sweeps before giving up with [`Error::NoConvergence`].
/// Cyclic Jacobi on 9x9 inputs converges in 5-8 sweeps; hitting 50 means the
/// input is pathological (NaN/inf entries) rather than merely ill-conditioned.
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Relative threshold below which off-diagonal mass counts as zero.
pub const JACOBI_REL_TOL: f64 = 1e-14;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data. Panics if the length does not
    /// match `rows * cols`; shape errors here are programming bugs, not
    /// recoverable conditions.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "row-major data length {} does not match {}x{}",
            data.len(),
            rows,
            cols
        );
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self, context: &'static str) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::DimensionMismatch {
                context,
                expected: self.rows,
                got: self.cols,
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        Self::from_fn(ra * rb, ca * cb, |i, j| {
            self[(i / rb, j / cb)] * other[(i % rb, j % cb)]
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation `max |self - other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// The input is checked against `tol` (entrywise deviation from the
    /// conjugate transpose) and then symmetrized, so the iteration works on
    /// an exactly Hermitian matrix. Cyclic two-sided Jacobi: each sweep
    /// visits the strict upper triangle in row-major order and annihilates
    /// the pivot with a unitary plane rotation; the sweep loop stops once the
    /// off-diagonal Frobenius mass drops below `1e-14` of the total.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let n = self.require_square("eigensolve needs a square matrix")?;
        let dev = self.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        if n == 0 {
            return Ok(Vec::new());
        }

        // (A + A^dagger) / 2, stored dense with an exactly real diagonal.
        let mut a: Vec<Complex64> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                a.push(if i == j { Complex64::new(z.re, 0.0) } else { z });
            }
        }

        let total: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if total == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let threshold = JACOBI_REL_TOL * total;

        for _ in 0..JACOBI_MAX_SWEEPS {
            let off: f64 = {
                let mut s = 0.0;
                for p in 0..n {
                    for q in (p + 1)..n {
                        s += a[p * n + q].norm_sqr();
                    }
                }
                (2.0 * s).sqrt()
            };
            if off < threshold {
                let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
                eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
                return Ok(eigs);
            }

            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    let mag = apq.norm();
                    if mag == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;

                    // Unitary rotation in the (p, q) plane. `u` strips the
                    // phase of the pivot so the angle choice reduces to the
                    // real symmetric case.
                    let u = apq / mag;
                    let tau = (app - aqq) / (2.0 * mag);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    for i in 0..n {
                        if i == p || i == q {
                            continue;
                        }
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        let new_ip = aip * c + aiq * u.conj() * s;
                        let new_iq = aiq * c - aip * u * s;
                        a[i * n + p] = new_ip;
                        a[p * n + i] = new_ip.conj();
                        a[i * n + q] = new_iq;
                        a[q * n + i] = new_iq.conj();
                    }
                    let shift = 2.0 * s * c * mag;
                    a[p * n + p] = Complex64::new(c * c * app + s * s * aqq + shift, 0.0);
                    a[q * n + q] = Complex64::new(s * s * app + c * c * aqq - shift, 0.0);
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                }
            }
        }
        Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        })
    }

    /// Singular values, descending.
    ///
    /// One-sided Jacobi: plane rotations applied from the right
    /// orthogonalize pairs of columns; on convergence the column norms are
    /// the singular values. Working on the matrix itself (never on
    /// `A^dagger A`) keeps tiny singular values accurate to machine epsilon
    /// in absolute terms.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let n = self.require_square("singular values need a square matrix")?;
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut a = self.data.clone(); // column j lives at stride n: a[i * n + j]

        // Columns this small relative to the whole matrix are deflated: they
        // contribute singular values below every tolerance in the crate, and
        // insisting on orthogonalizing them never terminates (the rounding
        // residue left in a rotated-away column can stay perfectly parallel
        // to its partner, so the cosine test below would fire forever).
        // Rotations preserve the Frobenius norm, so one threshold suffices.
        let deflate = JACOBI_REL_TOL * self.frobenius_norm();

        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    // Gram data for the column pair.
                    let mut gpp = 0.0;
                    let mut gqq = 0.0;
                    let mut gpq = Complex64::new(0.0, 0.0);
                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        gpp += aip.norm_sqr();
                        gqq += aiq.norm_sqr();
                        gpq += aip.conj() * aiq;
                    }
                    if gpp.sqrt() <= deflate || gqq.sqrt() <= deflate {
                        continue;
                    }
                    let mag = gpq.norm();
                    if mag <= JACOBI_REL_TOL * (gpp * gqq).sqrt() {
                        continue; // already orthogonal
                    }
                    rotated = true;

                    let u = gpq / mag;
                    let tau = (gpp - gqq) / (2.0 * mag);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip * c + aiq * u.conj() * s;
                        a[i * n + q] = aiq * c - aip * u * s;
                    }
                }
            }
            if !rotated {
                let mut sv: Vec<f64> = (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|i| a[i * n + j].norm_sqr())
                            .sum::<f64>()
                            .sqrt()
                    })
                    .collect();
                sv.sort_by(|x, y| y.partial_cmp(x).expect("singular values are finite"));
                return Ok(sv);
            }
        }
        Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        })
    }

    /// Trace norm (sum of singular values).
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.iter().sum())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kron_matches_hand_expansion() {
        let a = ComplexMatrix::new(2, 2, vec![r(1.0), r(2.0), r(3.0), r(4.0)]);
        let b = ComplexMatrix::new(2, 2, vec![r(0.0), c(0.0, 1.0), c(0.0, -1.0), r(0.0)]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 1)], c(0.0, 1.0));
        assert_eq!(k[(1, 0)], c(0.0, -1.0));
        assert_eq!(k[(0, 3)], c(0.0, 2.0));
        assert_eq!(k[(2, 1)], c(0.0, 3.0));
        assert_eq!(k[(3, 2)], c(0.0, -4.0));
        assert_eq!(k[(0, 0)], r(0.0));
    }

    #[test]
    fn adjoint_is_an_involution() {
        let m = ComplexMatrix::new(2, 3, vec![c(1.0, 2.0), r(0.5), c(0.0, -1.0), r(3.0), c(2.0, 2.0), r(0.0)]);
        let back = m.adjoint().adjoint();
        assert_eq!(m, back);
        assert_eq!(m.adjoint()[(1, 1)], c(2.0, -2.0));
        assert_eq!(m.adjoint()[(2, 0)], c(0.0, 1.0));
    }

    #[test]
    fn hermitian_eigenvalues_of_a_phase_coupled_pair() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::new(2, 2, vec![r(2.0), c(0.0, 1.0), c(0.0, -1.0), r(2.0)]);
        let eigs = m.hermitian_eigenvalues(1e-12).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-14);
        assert!((eigs[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_eigenvalues_of_a_circulant() {
        // Real symmetric circulant with first row (0, 1, 1): eigenvalues 2, -1, -1.
        let m = ComplexMatrix::new(
            3,
            3,
            vec![r(0.0), r(1.0), r(1.0), r(1.0), r(0.0), r(1.0), r(1.0), r(1.0), r(0.0)],
        );
        let eigs = m.hermitian_eigenvalues(1e-12).unwrap();
        assert!((eigs[0] + 1.0).abs() < 1e-14);
        assert!((eigs[1] + 1.0).abs() < 1e-14);
        assert!((eigs[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigensolve_rejects_non_hermitian_input() {
        let m = ComplexMatrix::new(2, 2, vec![r(1.0), r(1.0), r(0.0), r(1.0)]);
        match m.hermitian_eigenvalues(1e-12) {
            Err(Error::NotHermitian(dev)) => assert!((dev - 1.0).abs() < 1e-15),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn eigensolve_rejects_non_square_input() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            m.hermitian_eigenvalues(1e-12),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn singular_values_of_a_nilpotent_block() {
        // [[0, 2], [0, 0]] is far from normal: eigenvalues all zero, singular
        // values {2, 0}.
        let m = ComplexMatrix::new(2, 2, vec![r(0.0), r(2.0), r(0.0), r(0.0)]);
        let sv = m.singular_values().unwrap();
        assert!((sv[0] - 2.0).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-14);
    }

    #[test]
    fn singular_values_ignore_entry_phases_of_rank_one() {
        // outer product of unit vectors scaled by 3, with assorted phases:
        // exactly one nonzero singular value, 3.
        let x = [c(0.6, 0.0), c(0.0, 0.8)];
        let y = [c(0.0, 1.0), r(0.0)];
        let m = ComplexMatrix::from_fn(2, 2, |i, j| x[i] * y[j].conj() * r(3.0));
        let sv = m.singular_values().unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-14);
    }

    #[test]
    fn trace_norm_of_hermitian_is_sum_of_abs_eigenvalues() {
        // diag-like Hermitian with known spectrum {3, -1}: trace norm 4.
        let m = ComplexMatrix::new(2, 2, vec![r(1.0), c(0.0, 2.0), c(0.0, -2.0), r(1.0)]);
        assert!((m.trace_norm().unwrap() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn zero_matrix_spectra() {
        let z = ComplexMatrix::zeros(4, 4);
        assert_eq!(z.hermitian_eigenvalues(0.0).unwrap(), vec![0.0; 4]);
        assert_eq!(z.singular_values().unwrap(), vec![0.0; 4]);
    }

    // Random-input invariants. Entries are kept in a tame range; the point is
    // structure (ordering, trace/norm identities), not overflow behaviour.
    fn complex_entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn eigenvalues_satisfy_trace_identities(entries in complex_entries(5)) {
            let g = ComplexMatrix::new(5, 5, entries.iter().map(|&(re, im)| c(re, im)).collect());
            let h = &g + &g.adjoint();
            let eigs = h.hermitian_eigenvalues(1e-12).unwrap();
            prop_assert!(eigs.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = eigs.iter().sum();
            prop_assert!((sum - h.trace().re).abs() < 1e-10);
            let sq: f64 = eigs.iter().map(|l| l * l).sum();
            prop_assert!((sq - h.frobenius_norm().powi(2)).abs() < 1e-9);
        }

        #[test]
        fn singular_values_match_frobenius_and_hermitian_spectra(entries in complex_entries(4)) {
            let g = ComplexMatrix::new(4, 4, entries.iter().map(|&(re, im)| c(re, im)).collect());
            let sv = g.singular_values().unwrap();
            prop_assert!(sv.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(sv.iter().all(|&s| s >= 0.0));
            let sq: f64 = sv.iter().map(|s| s * s).sum();
            prop_assert!((sq - g.frobenius_norm().powi(2)).abs() < 1e-9);

            // For Hermitian inputs the singular values are |eigenvalues|.
            let h = &g + &g.adjoint();
            let mut abs_eigs: Vec<f64> = h
                .hermitian_eigenvalues(1e-12)
                .unwrap()
                .iter()
                .map(|l| l.abs())
                .collect();
            abs_eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let sv_h = h.singular_values().unwrap();
            for (a, b) in abs_eigs.iter().zip(&sv_h) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }
    }
}
