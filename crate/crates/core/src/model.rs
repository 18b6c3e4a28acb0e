//! Operators, exact evolution, and initial states for the two-qutrit model.
//!
//! Both sites carry spin 1. Single-site basis `|0>, |1>, |2>` is the
//! `sz` eigenbasis ordered `m = +1, 0, -1`; the composite basis is row-major
//! in the site labels, so `|a b>` sits at index `3a + b`.
//!
//! The Hamiltonian is the bilinear-biquadratic exchange
//! `H = s1.s2 - beta (s1.s2)^2`. Because `s1.s2` satisfies a cubic identity
//! on the 9-dimensional space, the propagator has the closed form
//!
//! ```text
//! U(t) = e^{i beta t} (cos t * I - i sin t * S) (I + (e^{i 3 (1+beta) t} - 1) P)
//! ```
//!
//! with `S` the swap operator and `P` the projector onto the two-site
//! singlet. Everything in this module reproduces those operators exactly
//! (swap as a 0/1 permutation matrix) so downstream spectra stay clean.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};

/// Entrywise Hermiticity tolerance for validated states.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on `|trace - 1|` for validated states.
pub const TRACE_TOL: f64 = 1e-12;
/// How negative the smallest eigenvalue of a state may be before it is
/// rejected. Looser than the other two because it sits downstream of an
/// iterative eigensolve.
pub const PSD_TOL: f64 = 1e-10;
/// Entrywise tolerance on `U U^dagger - I` for validated unitaries.
pub const UNITARITY_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex::new(re, im)
}

fn r(re: f64) -> Complex64 {
    Complex::new(re, 0.0)
}

/// A validated bipartite density matrix.
///
/// Construction checks Hermiticity, unit trace, and positive
/// semidefiniteness (up to [`PSD_TOL`]), so holding a `DensityMatrix` means
/// holding a physical state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(dim_a: usize, dim_b: usize, mat: ComplexMatrix) -> Result<Self> {
        let dim = dim_a * dim_b;
        if mat.rows() != dim || mat.cols() != dim {
            return Err(Error::DimensionMismatch {
                context: "density matrix must be square of the composite dimension",
                expected: dim,
                got: mat.rows().max(mat.cols()),
            });
        }
        let dev = mat.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let trace = mat.trace();
        if (trace - r(1.0)).norm() > TRACE_TOL {
            return Err(Error::TraceNotOne(trace.re));
        }
        let eigs = mat.hermitian_eigenvalues(HERMITICITY_TOL)?;
        let min_eig = eigs.first().copied().unwrap_or(0.0);
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite(min_eig));
        }
        Ok(Self { dim_a, dim_b, mat })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Eigenvalues of the state, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.mat.hermitian_eigenvalues(HERMITICITY_TOL)
    }
}

/// A propagator tagged with the `(t, beta)` that produced it.
/// Construction rejects matrices that are not unitary to [`UNITARITY_TOL`].
#[derive(Debug, Clone)]
pub struct UnitaryOperator {
    mat: ComplexMatrix,
    t: f64,
    beta: f64,
}

impl UnitaryOperator {
    pub fn new(mat: ComplexMatrix, t: f64, beta: f64) -> Result<Self> {
        let n = mat.rows();
        let dev = (&mat * &mat.adjoint()).max_abs_diff(&ComplexMatrix::identity(n));
        if dev > UNITARITY_TOL {
            return Err(Error::DimensionMismatch {
                context: "matrix is not unitary to tolerance",
                expected: n,
                got: n,
            });
        }
        Ok(Self { mat, t, beta })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Model parameters: Horodecki mixing parameter `alpha`, biquadratic
/// coupling `beta`, and evolution time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: f64,
    beta: f64,
    t: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, t: f64) -> Result<Self> {
        if !(2.0..=5.0).contains(&alpha) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(Self { alpha, beta, t })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

// ---- operators ------------------------------------------------------------

/// Spin-1 operators `(sx, sy, sz)` in the `m = +1, 0, -1` basis.
pub fn spin1_operators() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let h = 1.0 / 2.0_f64.sqrt();
    let sx = ComplexMatrix::new(
        3,
        3,
        vec![
            r(0.0), r(h), r(0.0),
            r(h), r(0.0), r(h),
            r(0.0), r(h), r(0.0),
        ],
    );
    let sy = ComplexMatrix::new(
        3,
        3,
        vec![
            r(0.0), c(0.0, -h), r(0.0),
            c(0.0, h), r(0.0), c(0.0, -h),
            r(0.0), c(0.0, h), r(0.0),
        ],
    );
    let sz = ComplexMatrix::new(
        3,
        3,
        vec![
            r(1.0), r(0.0), r(0.0),
            r(0.0), r(0.0), r(0.0),
            r(0.0), r(0.0), r(-1.0),
        ],
    );
    (sx, sy, sz)
}

/// The exchange coupling `s1.s2 = sx(x)sx + sy(x)sy + sz(x)sz`.
fn spin_dot() -> ComplexMatrix {
    let (sx, sy, sz) = spin1_operators();
    let mut out = sx.kron(&sx);
    out = &out + &sy.kron(&sy);
    out = &out + &sz.kron(&sz);
    out
}

/// Two-site swap, `S |a b> = |b a>`, built directly as a 0/1 permutation
/// matrix. (It also equals `(s1.s2)^2 + s1.s2 - I`; the tests hold the two
/// routes against each other.)
pub fn swap_operator() -> ComplexMatrix {
    ComplexMatrix::from_fn(9, 9, |row, col| {
        let (i, j) = (row / 3, row % 3);
        let (k, l) = (col / 3, col % 3);
        if i == l && j == k {
            r(1.0)
        } else {
            r(0.0)
        }
    })
}

/// Projector onto the two-site singlet `(|02> - |11> + |20>)/sqrt(3)`,
/// via `P = ((s1.s2)^2 - I) / 3`. Note the singlet of two spin-1 sites is
/// symmetric under exchange: `S P = P S = +P`.
pub fn singlet_projector() -> ComplexMatrix {
    let dot = spin_dot();
    let m = &(&dot * &dot) - &ComplexMatrix::identity(9);
    m.scale(r(1.0 / 3.0))
}

/// Bilinear-biquadratic exchange Hamiltonian `H = s1.s2 - beta (s1.s2)^2`.
pub fn hamiltonian(beta: f64) -> ComplexMatrix {
    let dot = spin_dot();
    &dot - &(&dot * &dot).scale(r(beta))
}

/// Exact propagator `U(t) = e^{iHt}`:
///
/// ```text
/// U(t) = e^{i beta t} (cos t * I - i sin t * S)(I + (e^{i 3 (1+beta) t} - 1) P)
/// ```
///
/// At `beta = -1` the projector factor collapses to the identity and
/// `U(pi/2) = -S`: up to phase, the evolution swaps the two sites.
pub fn evolution_operator(t: f64, beta: f64) -> UnitaryOperator {
    let i9 = ComplexMatrix::identity(9);
    let swap = swap_operator();
    let rot = &i9.scale(r(t.cos())) - &swap.scale(c(0.0, t.sin()));
    let proj_phase = Complex64::from_polar(1.0, 3.0 * (1.0 + beta) * t) - r(1.0);
    let factor = &i9 + &singlet_projector().scale(proj_phase);
    let mat = (&rot * &factor).scale(Complex64::from_polar(1.0, beta * t));
    UnitaryOperator::new(mat, t, beta).expect("closed-form propagator is unitary")
}

/// Conjugates `rho` by the propagator: `U(t) rho U(t)^dagger`. The result is
/// revalidated, so numerical drift outside the density-matrix tolerances
/// surfaces as an error instead of corrupting downstream measures.
pub fn evolve(rho: &DensityMatrix, t: f64, beta: f64) -> Result<DensityMatrix> {
    if rho.dim_a() != 3 || rho.dim_b() != 3 {
        return Err(Error::DimensionMismatch {
            context: "evolution is defined on two qutrits",
            expected: 3,
            got: if rho.dim_a() != 3 { rho.dim_a() } else { rho.dim_b() },
        });
    }
    let u = evolution_operator(t, beta);
    let evolved = &(u.matrix() * rho.matrix()) * &u.matrix().adjoint();
    DensityMatrix::new(3, 3, evolved)
}

// ---- initial states ---------------------------------------------------------

fn outer(v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
}

/// `|a b>` as a composite-basis coordinate vector.
fn basis_ket(a: usize, b: usize) -> Vec<Complex64> {
    let mut v = vec![r(0.0); 9];
    v[3 * a + b] = r(1.0);
    v
}

/// Projector onto the maximally entangled state
/// `(|00> + |11> + |22>)/sqrt(3)`.
pub fn max_entangled_projector() -> DensityMatrix {
    let mut v = vec![r(0.0); 9];
    for a in 0..3 {
        v[3 * a + a] = r(1.0 / 3.0_f64.sqrt());
    }
    DensityMatrix::new(3, 3, outer(&v)).expect("projector is a valid state")
}

/// The one-parameter Horodecki family on `[2, 5]`:
///
/// ```text
/// rho_alpha = 2/7 P+  +  alpha/7 rho_cyc  +  (5 - alpha)/7 (S rho_cyc S)
/// ```
///
/// where `P+` projects onto the maximally entangled state and `rho_cyc` is
/// the uniform mixture of `|01>, |12>, |20>`. Separable for
/// `alpha <= 3`, bound entangled for `3 < alpha <= 4`, free for `alpha > 4`.
pub fn horodecki_state(alpha: f64) -> Result<DensityMatrix> {
    if !(2.0..=5.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let p_plus = max_entangled_projector();
    let swap = swap_operator();

    let mut cyc = ComplexMatrix::zeros(9, 9);
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        cyc = &cyc + &outer(&basis_ket(a, b));
    }
    let cyc = cyc.scale(r(1.0 / 3.0));
    let cyc_swapped = &(&swap * &cyc) * &swap;

    let mat = &(&p_plus.matrix().scale(r(2.0 / 7.0)) + &cyc.scale(r(alpha / 7.0)))
        + &cyc_swapped.scale(r((5.0 - alpha) / 7.0));
    DensityMatrix::new(3, 3, mat)
}

/// Normalized projector onto the orthogonal complement of an unextendible
/// product basis: `rho = (I - sum_j |phi_j><phi_j|) / 4`.
fn upb_complement(vectors: [Vec<Complex64>; 5]) -> DensityMatrix {
    let mut proj = ComplexMatrix::zeros(9, 9);
    for v in &vectors {
        proj = &proj + &outer(v);
    }
    let mat = (&ComplexMatrix::identity(9) - &proj).scale(r(0.25));
    DensityMatrix::new(3, 3, mat).expect("UPB complement is a valid state")
}

fn product_ket(x: [Complex64; 3], y: [Complex64; 3]) -> Vec<Complex64> {
    x.iter()
        .flat_map(|&a| y.iter().map(move |&b| a * b))
        .collect()
}

/// Bound entangled state from the "tiles" unextendible product basis:
/// four domino states `|0>(|0>-|1>)`, `(|0>-|1>)|2>`, `|2>(|1>-|2>)`,
/// `(|1>-|2>)|0>` (normalized) plus the stopper `(|0>+|1>+|2>)^{x2}/3`.
pub fn upb_tiles_state() -> DensityMatrix {
    let h = 1.0 / 2.0_f64.sqrt();
    let third = 1.0 / 3.0_f64.sqrt();
    let e = |k: usize| -> [Complex64; 3] {
        let mut v = [r(0.0); 3];
        v[k] = r(1.0);
        v
    };
    let diff = |a: usize, b: usize| -> [Complex64; 3] {
        let mut v = [r(0.0); 3];
        v[a] = r(h);
        v[b] = r(-h);
        v
    };
    let uniform = [r(third); 3];
    upb_complement([
        product_ket(e(0), diff(0, 1)),
        product_ket(diff(0, 1), e(2)),
        product_ket(e(2), diff(1, 2)),
        product_ket(diff(1, 2), e(0)),
        product_ket(uniform, uniform),
    ])
}

/// Bound entangled state from the "pyramid" unextendible product basis:
/// `phi_j = v_j (x) v_{2j mod 5}` with the `v_j` the unit vectors to the
/// apex-raised vertices of a regular pentagon, chosen so `v_j` is orthogonal
/// to `v_{j +/- 2}`.
pub fn upb_pyramid_state() -> DensityMatrix {
    let scale = 2.0 / (5.0 + 5.0_f64.sqrt()).sqrt();
    let height = (1.0 + 5.0_f64.sqrt()).sqrt() / 2.0;
    let v = |j: usize| -> [Complex64; 3] {
        let angle = 2.0 * std::f64::consts::PI * (j as f64) / 5.0;
        [
            r(scale * angle.cos()),
            r(scale * angle.sin()),
            r(scale * height),
        ]
    };
    let phis: [Vec<Complex64>; 5] =
        std::array::from_fn(|j| product_ket(v(j), v((2 * j) % 5)));
    upb_complement(phis)
}
