//! Entanglement detection: partial transpose and realignment.
//!
//! Both criteria map a state to a matrix whose trace norm exceeds 1 only if
//! the state is entangled:
//!
//! * partial transpose `(rho^T_B)_{ij,kl} = rho_{il,kj}` - a trace norm
//!   above 1 (negativity `N1 > 0`) certifies *distillable* ("free")
//!   entanglement in 3x3,
//! * realignment `(rho^R)_{ij,kl} = rho_{ik,jl}` - a trace norm above 1
//!   (`N2 > 0`) certifies entanglement but not distillability, so it is the
//!   tool that sees *bound* entanglement where the partial transpose is
//!   blind.
//!
//! `N2` is reported signed: separable states commonly sit well below zero
//! (the maximally mixed state has `N2 = -1/3`), and the approach toward the
//! detection threshold is informative. Clamp at zero when plotting if only
//! the detected region is of interest.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::model::DensityMatrix;

/// Detection threshold used by [`classify`] when callers have no reason to
/// pick their own: measures this far above zero count as detections.
pub const DEFAULT_CLASSIFICATION_TOL: f64 = 1e-9;

/// Outcome of running both criteria against a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Negativity positive: distillable entanglement.
    Free,
    /// Negativity zero but realignment positive: entangled yet undistillable.
    Bound,
    /// Neither criterion fires; separable or entangled below detection.
    Undetected,
}

impl Classification {
    pub fn from_measures(n1: f64, n2: f64, tol: f64) -> Self {
        if n1 > tol {
            Classification::Free
        } else if n2 > tol {
            Classification::Bound
        } else {
            Classification::Undetected
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Free => "FREE",
            Classification::Bound => "BOUND",
            Classification::Undetected => "UNDETECTED",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything the criteria say about one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaReport {
    pub n1: f64,
    pub n2: f64,
    pub pt_trace_norm: f64,
    pub realign_trace_norm: f64,
    /// Lower bound on the concurrence, clamped at zero.
    pub concurrence_lb: f64,
    /// The same bound before clamping (can dip below zero only through
    /// floating-point noise, since the partial-transpose norm of a state is
    /// never below 1).
    pub concurrence_lb_raw: f64,
    pub classification: Classification,
}

impl CriteriaReport {
    /// Runs both criteria once and derives all measures from the two norms.
    pub fn evaluate(rho: &DensityMatrix, tol: f64) -> Result<Self> {
        let pt_trace_norm = partial_transpose(rho).trace_norm()?;
        let realign_trace_norm = realign(rho)?.trace_norm()?;
        let n1 = (pt_trace_norm - 1.0) / 2.0;
        let n2 = (realign_trace_norm - 1.0) / 2.0;
        let (concurrence_lb, concurrence_lb_raw) =
            concurrence_from_norms(rho.dim_a(), pt_trace_norm, realign_trace_norm);
        Ok(Self {
            n1,
            n2,
            pt_trace_norm,
            realign_trace_norm,
            concurrence_lb,
            concurrence_lb_raw,
            classification: Classification::from_measures(n1, n2, tol),
        })
    }
}

/// Partial transpose over the second subsystem:
/// `(rho^T_B)_{ij,kl} = rho_{il,kj}`. An involution that preserves trace and
/// Hermiticity; works for any subsystem dimensions.
pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let m = rho.matrix();
    ComplexMatrix::from_fn(da * db, da * db, |row, col| {
        let (i, j) = (row / db, row % db);
        let (k, l) = (col / db, col % db);
        m[(i * db + l, k * db + j)]
    })
}

/// Realignment `(rho^R)_{ij,kl} = rho_{ik,jl}`: row indices both come from
/// the first subsystem, column indices from the second, so equal subsystem
/// dimensions are required for the square matrix this crate works with.
pub fn realign(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    if da != db {
        return Err(Error::DimensionMismatch {
            context: "realignment needs equal subsystem dimensions",
            expected: da,
            got: db,
        });
    }
    let n = da;
    let m = rho.matrix();
    Ok(ComplexMatrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        m[(i * n + k, j * n + l)]
    }))
}

/// Negativity `N1 = (||rho^T_B||_1 - 1) / 2`.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok((partial_transpose(rho).trace_norm()? - 1.0) / 2.0)
}

/// Realignment measure `N2 = (||rho^R||_1 - 1) / 2`, reported signed.
pub fn realignment_measure(rho: &DensityMatrix) -> Result<f64> {
    Ok((realign(rho)?.trace_norm()? - 1.0) / 2.0)
}

/// Classifies a state as FREE / BOUND / UNDETECTED at threshold `tol`.
pub fn classify(rho: &DensityMatrix, tol: f64) -> Result<Classification> {
    Ok(Classification::from_measures(
        negativity(rho)?,
        realignment_measure(rho)?,
        tol,
    ))
}

fn concurrence_from_norms(n: usize, pt_norm: f64, realign_norm: f64) -> (f64, f64) {
    let prefactor = (2.0 / (n as f64 * (n as f64 - 1.0))).sqrt();
    let raw = prefactor * (pt_norm.max(realign_norm) - 1.0);
    (raw.max(0.0), raw)
}

/// Concurrence lower bound
/// `C(rho) >= sqrt(2 / (n(n-1))) * (max(||rho^T_B||_1, ||rho^R||_1) - 1)`
/// for an `n x n` bipartite state. Returns `(clamped_at_zero, raw)`.
pub fn concurrence_lower_bound(rho: &DensityMatrix) -> Result<(f64, f64)> {
    if rho.dim_a() != rho.dim_b() {
        return Err(Error::DimensionMismatch {
            context: "concurrence bound needs equal subsystem dimensions",
            expected: rho.dim_a(),
            got: rho.dim_b(),
        });
    }
    let pt_norm = partial_transpose(rho).trace_norm()?;
    let realign_norm = realign(rho)?.trace_norm()?;
    Ok(concurrence_from_norms(rho.dim_a(), pt_norm, realign_norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Complex64;
    use crate::model::{
        evolve, horodecki_state, max_entangled_projector, swap_operator, upb_tiles_state,
    };

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn partial_transpose_of_max_entangled_is_scaled_swap() {
        let pt = partial_transpose(&max_entangled_projector());
        assert!(pt.max_abs_diff(&swap_operator().scale(r(1.0 / 3.0))) < 1e-15);
        // Nine singular values of 1/3: trace norm 3, negativity 1.
        assert!((pt.trace_norm().unwrap() - 3.0).abs() < 1e-12);
        assert!((negativity(&max_entangled_projector()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn realign_of_max_entangled_is_scaled_identity() {
        let re = realign(&max_entangled_projector()).unwrap();
        assert!(re.max_abs_diff(&ComplexMatrix::identity(9).scale(r(1.0 / 3.0))) < 1e-15);
        assert!((realignment_measure(&max_entangled_projector()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_is_a_trace_preserving_involution() {
        let rho = horodecki_state(4.2).unwrap();
        let pt = partial_transpose(&rho);
        assert!((pt.trace() - r(1.0)).norm() < 1e-15);
        assert!(pt.hermiticity_deviation() < 1e-15);
        // Applying it twice via the raw index map returns the input exactly.
        let back = ComplexMatrix::from_fn(9, 9, |row, col| {
            let (i, j) = (row / 3, row % 3);
            let (k, l) = (col / 3, col % 3);
            pt[(i * 3 + l, k * 3 + j)]
        });
        assert_eq!(rho.matrix().max_abs_diff(&back), 0.0);
    }

    #[test]
    fn realigned_maximally_mixed_state_has_norm_one_third() {
        let mixed = DensityMatrix::new(3, 3, ComplexMatrix::identity(9).scale(r(1.0 / 9.0)))
            .unwrap();
        assert!((realign(&mixed).unwrap().trace_norm().unwrap() - 1.0 / 3.0).abs() < 1e-13);
        // Signed measure: deep in the negative, nothing detected.
        assert!((realignment_measure(&mixed).unwrap() + 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn realignment_norm_equals_swapped_partial_transpose_norm() {
        // ||rho^R||_1 = ||(S rho)^T_B||_1 because the two matrices differ by
        // row/column permutations. Check on an evolved state with complex
        // entries.
        let rho = evolve(&horodecki_state(3.9).unwrap(), 0.6, -1.0).unwrap();
        let re_norm = realign(&rho).unwrap().trace_norm().unwrap();
        let srho = &swap_operator() * rho.matrix();
        let spt = ComplexMatrix::from_fn(9, 9, |row, col| {
            let (i, j) = (row / 3, row % 3);
            let (k, l) = (col / 3, col % 3);
            srho[(i * 3 + l, k * 3 + j)]
        });
        assert!((re_norm - spt.trace_norm().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn horodecki_t0_measures_match_closed_forms() {
        // ||rho_alpha^R||_1 = (19 + 2 sqrt(19 - 3 alpha (5 - alpha))) / 21 at t = 0.
        let rho = horodecki_state(3.5).unwrap();
        let rn = realign(&rho).unwrap().trace_norm().unwrap();
        assert!((rn - 1.076_454_822_641_142_3).abs() < 1e-12);
        assert!((realignment_measure(&rho).unwrap() - 0.038_227_411_320_571_15).abs() < 1e-12);
        // PT is blind up to alpha = 4; above it the norm is
        // (2 + sqrt(41 - 4 alpha (5 - alpha))) / 7.
        assert!((negativity(&rho).unwrap()).abs() < 1e-12);
        let free = horodecki_state(4.5).unwrap();
        let ptn = partial_transpose(&free).trace_norm().unwrap();
        assert!((ptn - 1.093_836_321_356_054_4).abs() < 1e-12);
        assert!((negativity(&free).unwrap() - 0.046_918_160_678_027_24).abs() < 1e-12);
    }

    #[test]
    fn classification_spans_all_three_regimes() {
        let tol = DEFAULT_CLASSIFICATION_TOL;
        assert_eq!(
            classify(&horodecki_state(2.5).unwrap(), tol).unwrap(),
            Classification::Undetected
        );
        assert_eq!(
            classify(&horodecki_state(3.5).unwrap(), tol).unwrap(),
            Classification::Bound
        );
        assert_eq!(
            classify(&horodecki_state(4.5).unwrap(), tol).unwrap(),
            Classification::Free
        );
        assert_eq!(
            classify(&upb_tiles_state(), tol).unwrap(),
            Classification::Bound
        );
    }

    #[test]
    fn report_is_consistent_with_individual_measures() {
        let rho = evolve(&horodecki_state(3.9).unwrap(), 0.25, -1.0).unwrap();
        let report = CriteriaReport::evaluate(&rho, DEFAULT_CLASSIFICATION_TOL).unwrap();
        assert!((report.n1 - negativity(&rho).unwrap()).abs() < 1e-14);
        assert!((report.n2 - realignment_measure(&rho).unwrap()).abs() < 1e-14);
        assert!((report.n1 - (report.pt_trace_norm - 1.0) / 2.0).abs() < 1e-15);
        let (clamped, raw) = concurrence_lower_bound(&rho).unwrap();
        assert_eq!(report.concurrence_lb, clamped);
        assert_eq!(report.concurrence_lb_raw, raw);
        assert_eq!(
            report.classification,
            classify(&rho, DEFAULT_CLASSIFICATION_TOL).unwrap()
        );
    }

    #[test]
    fn concurrence_bound_of_max_entangled_state() {
        // max norm is 3, prefactor 1/sqrt(3): bound = 2/sqrt(3).
        let (clamped, raw) = concurrence_lower_bound(&max_entangled_projector()).unwrap();
        let expected = 2.0 / 3.0_f64.sqrt();
        assert!((clamped - expected).abs() < 1e-12);
        assert!((raw - expected).abs() < 1e-12);
        // Separable state: both norms sit at/below 1, the bound clamps to 0.
        let mixed = DensityMatrix::new(3, 3, ComplexMatrix::identity(9).scale(r(1.0 / 9.0)))
            .unwrap();
        let (clamped, raw) = concurrence_lower_bound(&mixed).unwrap();
        assert!(clamped >= 0.0);
        assert!(clamped < 1e-12);
        assert!(raw.abs() < 1e-12);
    }

    #[test]
    fn unequal_subsystems_realign_is_rejected_but_pt_works() {
        // 2 (x) 3 maximally mixed state.
        let rho = DensityMatrix::new(2, 3, ComplexMatrix::identity(6).scale(r(1.0 / 6.0)))
            .unwrap();
        assert!(matches!(
            realign(&rho),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            concurrence_lower_bound(&rho),
            Err(Error::DimensionMismatch { .. })
        ));
        let pt = partial_transpose(&rho);
        assert!((pt.trace_norm().unwrap() - 1.0).abs() < 1e-13);
    }
}
