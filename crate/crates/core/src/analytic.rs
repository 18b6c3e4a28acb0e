//! Closed-form spectra for the `beta = -1` evolution of the Horodecki family.
//!
//! At `beta = -1` the propagator reduces to
//! `U(t) = e^{-it} (cos t * I - i sin t * S)`, and conjugating
//! `rho_alpha` by it stays inside a four-parameter family:
//!
//! ```text
//! rho_alpha(t) = (1/7) { 2 P+ + a rho_cyc + b (S rho_cyc S) + i c [S, S rho_cyc S] }
//!   a = alpha cos^2 t + (5 - alpha) sin^2 t
//!   b = alpha sin^2 t + (5 - alpha) cos^2 t
//!   c = (1/2) sin(2t) (2 alpha - 5)
//! ```
//!
//! In the basis ordered `{00, 11, 22, 01, 10, 12, 21, 20, 02}` the partial
//! transpose and the realignment of `rho_alpha(t)` are block diagonal with
//! one 3x3 block and three identical 2x2 blocks, so every spectrum below is
//! elementary. Everything in this module is scalar arithmetic - no calls
//! into [`crate::linalg`] - which is what makes it an independent oracle for
//! the numeric pipeline; the crossing tests and the `validate` gate hold the
//! two code paths against each other.

use crate::error::{Error, Result};

/// The time-dependent weights `(a, b, c)` of `rho_alpha(t)`; see the module
/// docs. Invariants: `a + b = 5` and `a - b = (2 alpha - 5) cos 2t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (2.0..=5.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

pub fn abc_coefficients(alpha: f64, t: f64) -> Result<EvolutionCoefficients> {
    check_alpha(alpha)?;
    let (sin, cos) = t.sin_cos();
    let (s2, c2) = (sin * sin, cos * cos);
    Ok(EvolutionCoefficients {
        a: alpha * c2 + (5.0 - alpha) * s2,
        b: alpha * s2 + (5.0 - alpha) * c2,
        c: 0.5 * (2.0 * t).sin() * (2.0 * alpha - 5.0),
    })
}

/// Eigenvalues of the partial transpose of `rho_alpha(t)`, ascending.
///
/// The 3x3 block contributes `{2, 2 - sqrt(3) c, 2 + sqrt(3) c}` and the
/// repeated 2x2 block `(5 +/- sqrt((a-b)^2 + 16)) / 2`, all divided by 21.
pub fn pt_spectrum_closed(alpha: f64, t: f64) -> Result<[f64; 9]> {
    let EvolutionCoefficients { a, b, c } = abc_coefficients(alpha, t)?;
    let sqrt3c = 3.0_f64.sqrt() * c;
    let disc = ((a - b).powi(2) + 16.0).sqrt();
    let pair_minus = (5.0 - disc) / 2.0;
    let pair_plus = (5.0 + disc) / 2.0;
    let mut eigs = [
        2.0,
        2.0 - sqrt3c,
        2.0 + sqrt3c,
        pair_minus,
        pair_minus,
        pair_minus,
        pair_plus,
        pair_plus,
        pair_plus,
    ];
    for e in &mut eigs {
        *e /= 21.0;
    }
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("closed-form eigenvalues are finite"));
    Ok(eigs)
}

/// Negativity of `rho_alpha(t)` in closed form. Only two eigenvalues can go
/// negative: `(2 - sqrt(3)|c|)/21` once and `(5 - sqrt((a-b)^2 + 16))/42`
/// with multiplicity three.
pub fn negativity_closed(alpha: f64, t: f64) -> Result<f64> {
    let EvolutionCoefficients { a, b, c } = abc_coefficients(alpha, t)?;
    let lambda_1 = (2.0 - 3.0_f64.sqrt() * c.abs()) / 21.0;
    let lambda_2 = (5.0 - ((a - b).powi(2) + 16.0).sqrt()) / 42.0;
    Ok((-lambda_1).max(0.0) + 3.0 * (-lambda_2).max(0.0))
}

/// The five distinct singular-value formulas of the realigned
/// `rho_alpha(t)`. The full nine-value spectrum is
/// `{xi1, xi2, xi3, zeta1 x3, zeta2 x3} / 21`; the values here carry no
/// `1/21` so they can be compared against the block formulas directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealignmentSingulars {
    /// `7`, from the row-sum eigenvector of the circulant 3x3 block.
    pub xi1: f64,
    /// `sqrt(1 + 3 (2 alpha - 5)^2 cos^2 2t) / 2`, twice degenerate.
    pub xi2: f64,
    pub xi3: f64,
    /// `|4 + sin(2t)(2 alpha - 5)| / 2`, from the repeated 2x2 block.
    pub zeta1: f64,
    /// `|4 - sin(2t)(2 alpha - 5)| / 2`.
    pub zeta2: f64,
}

impl RealignmentSingulars {
    /// The nine actual singular values (the `1/21` applied), descending.
    pub fn scaled_spectrum(&self) -> [f64; 9] {
        let mut sv = [
            self.xi1, self.xi2, self.xi3, self.zeta1, self.zeta1, self.zeta1, self.zeta2,
            self.zeta2, self.zeta2,
        ];
        for s in &mut sv {
            *s /= 21.0;
        }
        sv.sort_by(|x, y| y.partial_cmp(x).expect("closed-form singulars are finite"));
        sv
    }
}

pub fn realign_singulars_closed(alpha: f64, t: f64) -> Result<RealignmentSingulars> {
    check_alpha(alpha)?;
    let cos2t = (2.0 * t).cos();
    let x = (2.0 * t).sin() * (2.0 * alpha - 5.0);
    let xi = 0.5 * (1.0 + 3.0 * (2.0 * alpha - 5.0).powi(2) * cos2t * cos2t).sqrt();
    Ok(RealignmentSingulars {
        xi1: 7.0,
        xi2: xi,
        xi3: xi,
        zeta1: 0.5 * (4.0 + x).abs(),
        zeta2: 0.5 * (4.0 - x).abs(),
    })
}

/// Trace norm of the realigned `rho_alpha(t)`, valid on the whole family.
pub fn realign_norm_closed(alpha: f64, t: f64) -> Result<f64> {
    let s = realign_singulars_closed(alpha, t)?;
    Ok((s.xi1 + s.xi2 + s.xi3 + 3.0 * (s.zeta1 + s.zeta2)) / 21.0)
}

/// Shortcut form `(19 + sqrt(1 + 3 (2 alpha - 5)^2 cos^2 2t)) / 21`.
///
/// Valid only while `|sin(2t)(2 alpha - 5)| <= 4`, i.e. everywhere for
/// `alpha <= 4.5`; beyond that the absolute values in the 2x2 blocks stop
/// cancelling and [`realign_norm_closed`] must be used.
pub fn realign_norm_simplified(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let cos2t = (2.0 * t).cos();
    Ok((19.0 + (1.0 + 3.0 * (2.0 * alpha - 5.0).powi(2) * cos2t * cos2t).sqrt()) / 21.0)
}

/// `(||rho_alpha^T_B||_1, ||rho_alpha^R||_1)` of the unevolved state:
///
/// ```text
/// ||rho^T_B||_1 = 1                                     for alpha <= 4
///               = (2 + sqrt(41 - 4 alpha (5 - alpha))) / 7   otherwise
/// ||rho^R||_1   = (19 + 2 sqrt(19 - 3 alpha (5 - alpha))) / 21
/// ```
pub fn t0_norms_closed(alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let pt = if alpha <= 4.0 {
        1.0
    } else {
        (2.0 + (41.0 - 4.0 * alpha * (5.0 - alpha)).sqrt()) / 7.0
    };
    let realign = (19.0 + 2.0 * (19.0 - 3.0 * alpha * (5.0 - alpha)).sqrt()) / 21.0;
    Ok((pt, realign))
}

/// The alpha above which the negativity is positive somewhere in the cycle:
/// `5/2 + 2/sqrt(3)`. Below it `N1(t)` is identically zero and the PT
/// criterion stays blind at every time.
pub fn n1_vanishing_threshold() -> f64 {
    2.5 + 2.0 / 3.0_f64.sqrt()
}
