//! Time/parameter grids, CSV output, and the closed-form validation gate.
//!
//! Grid points are independent, so with the `parallel` feature (on by
//! default) they are evaluated with rayon; results are collected back in
//! grid order either way, and because evaluation of a point never depends
//! on its neighbours, the sequential and parallel paths produce bitwise
//! identical records - the CSV bytes do not depend on the thread count.

use std::io;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::analytic;
use crate::criteria::{partial_transpose, realign, CriteriaReport};
use crate::error::Result;
use crate::model::{evolve, horodecki_state, DensityMatrix, HERMITICITY_TOL};

/// One evaluated grid point. `alpha` is a label for the CSV (`None` for
/// states outside the Horodecki family, written as `n/a`).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub t: f64,
    pub alpha: Option<f64>,
    pub beta: f64,
    pub report: CriteriaReport,
}

/// Failure to understand a number or grid given on a command line.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(String);

impl ParseError {
    fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

/// Parses a float that may be written in terms of pi: accepts plain float
/// literals plus `pi`, `2pi`, `pi/4`, `3pi/4`, each with an optional leading
/// minus sign.
pub fn parse_number(s: &str) -> std::result::Result<f64, ParseError> {
    let trimmed = s.trim();
    let (sign, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, trimmed),
    };
    let fail = || ParseError::new(format!("cannot parse '{s}' as a number (expected a float or a pi form like 'pi', '2pi', 'pi/4', '3pi/4')"));

    if body.starts_with(['-', '+']) {
        return Err(fail()); // the sign was already consumed above
    }
    let value = if let Some(idx) = body.find("pi") {
        let coef_str = &body[..idx];
        let rest = &body[idx + 2..];
        let coef = if coef_str.is_empty() {
            1.0
        } else {
            coef_str.parse::<f64>().map_err(|_| fail())?
        };
        let divisor = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            d.parse::<f64>().map_err(|_| fail())?
        } else {
            return Err(fail());
        };
        coef * std::f64::consts::PI / divisor
    } else {
        body.parse::<f64>().map_err(|_| fail())?
    };

    let value = sign * value;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(fail())
    }
}

/// An inclusive arithmetic progression written `start:end:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl FromStr for GridSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(ParseError::new(format!(
                "grid '{s}' must have the form start:end:step"
            )));
        }
        let start = parse_number(parts[0])?;
        let end = parse_number(parts[1])?;
        let step = parse_number(parts[2])?;
        // parse_number already rejects non-finite values, so this suffices.
        if step <= 0.0 {
            return Err(ParseError::new(format!("grid step must be positive, got {step}")));
        }
        if end < start {
            return Err(ParseError::new(format!(
                "grid end {end} lies below start {start}"
            )));
        }
        Ok(GridSpec { start, end, step })
    }
}

impl GridSpec {
    /// The grid points `start, start + step, ...` up to and including `end`
    /// (when `end` lands on the grid up to a small relative slack, as it
    /// does for spans that are whole multiples of the step). A final point
    /// that overshoots `end` through accumulated rounding is clamped back,
    /// so grid values never leave `[start, end]`.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        let mut vals: Vec<f64> = (0..count)
            .map(|k| self.start + k as f64 * self.step)
            .collect();
        if let Some(last) = vals.last_mut() {
            if *last > self.end {
                *last = self.end;
            }
        }
        vals
    }
}

/// `steps` evenly spaced times from `t_start` to `t_end` inclusive.
pub fn time_grid(t_start: f64, t_end: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "a time grid needs at least its two endpoints");
    let dt = (t_end - t_start) / (steps - 1) as f64;
    (0..steps).map(|k| t_start + k as f64 * dt).collect()
}

fn sweep_point(
    rho0: &DensityMatrix,
    alpha: Option<f64>,
    beta: f64,
    tol: f64,
    t: f64,
) -> Result<SweepRecord> {
    let evolved = evolve(rho0, t, beta)?;
    let report = CriteriaReport::evaluate(&evolved, tol)?;
    Ok(SweepRecord { t, alpha, beta, report })
}

/// Evaluates both criteria along a time grid, sequentially.
pub fn sweep_records_seq(
    rho0: &DensityMatrix,
    alpha: Option<f64>,
    beta: f64,
    times: &[f64],
    tol: f64,
) -> Result<Vec<SweepRecord>> {
    times
        .iter()
        .map(|&t| sweep_point(rho0, alpha, beta, tol, t))
        .collect()
}

/// Evaluates both criteria along a time grid on the rayon thread pool.
/// Records come back in grid order, identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn sweep_records_par(
    rho0: &DensityMatrix,
    alpha: Option<f64>,
    beta: f64,
    times: &[f64],
    tol: f64,
) -> Result<Vec<SweepRecord>> {
    times
        .par_iter()
        .map(|&t| sweep_point(rho0, alpha, beta, tol, t))
        .collect()
}

/// Dispatches to the parallel path when built with the `parallel` feature,
/// the sequential one otherwise.
pub fn sweep_records(
    rho0: &DensityMatrix,
    alpha: Option<f64>,
    beta: f64,
    times: &[f64],
    tol: f64,
) -> Result<Vec<SweepRecord>> {
    #[cfg(feature = "parallel")]
    {
        sweep_records_par(rho0, alpha, beta, times, tol)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_records_seq(rho0, alpha, beta, times, tol)
    }
}

/// Header of the sweep CSV format.
pub const CSV_HEADER: &str =
    "t,alpha,beta,N1,N2,pt_trace_norm,realign_trace_norm,concurrence_lb,classification";

/// The one number format used in CSV output: scientific with 12 significant
/// digits, enough to round-trip any value the pipeline produces while
/// keeping files byte-stable across platforms and thread counts.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

/// Writes records as CSV (LF line endings, [`CSV_HEADER`] first).
pub fn write_csv<W: io::Write>(out: &mut W, records: &[SweepRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for rec in records {
        let alpha = rec
            .alpha
            .map_or_else(|| "n/a".to_owned(), format_number);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            format_number(rec.t),
            alpha,
            format_number(rec.beta),
            format_number(rec.report.n1),
            format_number(rec.report.n2),
            format_number(rec.report.pt_trace_norm),
            format_number(rec.report.realign_trace_norm),
            format_number(rec.report.concurrence_lb),
            rec.report.classification,
        )?;
    }
    Ok(())
}

/// Worst absolute deviations between the numeric pipeline and the closed
/// forms, over whatever grid produced it.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OracleDeviations {
    pub pt_spectrum: f64,
    pub negativity: f64,
    pub realign_singulars: f64,
    pub realign_norm: f64,
}

impl OracleDeviations {
    pub fn worst(&self) -> f64 {
        self.pt_spectrum
            .max(self.negativity)
            .max(self.realign_singulars)
            .max(self.realign_norm)
    }

    fn merge(self, other: Self) -> Self {
        Self {
            pt_spectrum: self.pt_spectrum.max(other.pt_spectrum),
            negativity: self.negativity.max(other.negativity),
            realign_singulars: self.realign_singulars.max(other.realign_singulars),
            realign_norm: self.realign_norm.max(other.realign_norm),
        }
    }
}

/// Deviations at a single `(alpha, t)` point of the `beta = -1` family.
fn point_deviations(alpha: f64, t: f64) -> Result<OracleDeviations> {
    let rho = evolve(&horodecki_state(alpha)?, t, -1.0)?;

    let pt = partial_transpose(&rho);
    let numeric_spectrum = pt.hermitian_eigenvalues(HERMITICITY_TOL)?;
    let closed_spectrum = analytic::pt_spectrum_closed(alpha, t)?;
    let pt_spectrum = numeric_spectrum
        .iter()
        .zip(closed_spectrum)
        .map(|(n, c)| (n - c).abs())
        .fold(0.0, f64::max);

    let numeric_n1 = (pt.trace_norm()? - 1.0) / 2.0;
    let negativity = (numeric_n1 - analytic::negativity_closed(alpha, t)?).abs();

    let realigned = realign(&rho)?;
    let numeric_sv = realigned.singular_values()?;
    let closed_sv = analytic::realign_singulars_closed(alpha, t)?.scaled_spectrum();
    let realign_singulars = numeric_sv
        .iter()
        .zip(closed_sv)
        .map(|(n, c)| (n - c).abs())
        .fold(0.0, f64::max);

    let numeric_norm: f64 = numeric_sv.iter().sum();
    let realign_norm = (numeric_norm - analytic::realign_norm_closed(alpha, t)?).abs();

    Ok(OracleDeviations {
        pt_spectrum,
        negativity,
        realign_singulars,
        realign_norm,
    })
}

/// Runs the numeric pipeline against the closed forms over the cartesian
/// grid `alphas x times` (at `beta = -1`, where the closed forms hold) and
/// reports the worst deviation seen in each quantity, sequentially.
pub fn oracle_deviations_seq(alphas: &[f64], times: &[f64]) -> Result<OracleDeviations> {
    let mut worst = OracleDeviations::default();
    for &alpha in alphas {
        for &t in times {
            worst = worst.merge(point_deviations(alpha, t)?);
        }
    }
    Ok(worst)
}

/// Parallel version of [`oracle_deviations_seq`]; same result, rayon pool.
#[cfg(feature = "parallel")]
pub fn oracle_deviations_par(alphas: &[f64], times: &[f64]) -> Result<OracleDeviations> {
    let pairs: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| times.iter().map(move |&t| (a, t)))
        .collect();
    let devs = pairs
        .par_iter()
        .map(|&(a, t)| point_deviations(a, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(devs.into_iter().fold(OracleDeviations::default(), OracleDeviations::merge))
}

/// Dispatches to the parallel gate when available.
pub fn oracle_deviations(alphas: &[f64], times: &[f64]) -> Result<OracleDeviations> {
    #[cfg(feature = "parallel")]
    {
        oracle_deviations_par(alphas, times)
    }
    #[cfg(not(feature = "parallel"))]
    {
        oracle_deviations_seq(alphas, times)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Classification;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn numbers_parse_in_plain_and_pi_forms() {
        assert_eq!(parse_number("0.25").unwrap(), 0.25);
        assert_eq!(parse_number("-3e-2").unwrap(), -0.03);
        assert_eq!(parse_number("pi").unwrap(), PI);
        assert_eq!(parse_number("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_number("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_number("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_number("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_number(" 1.5pi ").unwrap(), 1.5 * PI);

        for bad in ["", "pie", "pi/", "pi4", "2pi/0", "--1", "one"] {
            assert!(parse_number(bad).is_err(), "'{bad}' should not parse");
        }
    }

    #[test]
    fn grids_parse_and_enumerate_inclusively() {
        let grid: GridSpec = "2:5:0.25".parse().unwrap();
        let vals = grid.values();
        assert_eq!(vals.len(), 13);
        assert_eq!(vals[0], 2.0);
        assert_eq!(*vals.last().unwrap(), 5.0);

        // A pi-sized span hits its endpoint despite the rounding in pi/200.
        let grid: GridSpec = "0:pi:pi/200".parse().unwrap();
        let vals = grid.values();
        assert_eq!(vals.len(), 201);
        assert_eq!(*vals.last().unwrap(), PI);

        // Degenerate but legal: single point.
        assert_eq!(GridSpec::from_str("1:1:0.5").unwrap().values(), vec![1.0]);

        // A span that is not a whole number of steps stops short of the end.
        let vals = GridSpec::from_str("0:1:0.3").unwrap().values();
        assert_eq!(vals.len(), 4);
        assert!((vals[3] - 0.9).abs() < 1e-15);

        for bad in ["1:2", "2:1:0.5", "0:1:0", "0:1:-0.1", "a:b:c", "1:2:3:4"] {
            assert!(GridSpec::from_str(bad).is_err(), "'{bad}' should not parse");
        }
    }

    #[test]
    fn time_grid_hits_both_endpoints() {
        let grid = time_grid(0.0, PI, 5);
        assert_eq!(grid.len(), 5);
        assert_eq!(grid[0], 0.0);
        assert!((grid[2] - PI / 2.0).abs() < 1e-15);
        assert_eq!(grid[4], PI);
    }

    #[test]
    fn csv_format_is_stable() {
        assert_eq!(format_number(0.5), "5.00000000000e-1");
        assert_eq!(format_number(0.0), "0.00000000000e0");
        assert_eq!(format_number(-1.0 / 3.0), "-3.33333333333e-1");

        let rho = horodecki_state(3.9).unwrap();
        let times = time_grid(0.0, 0.4, 2);
        let records = sweep_records(&rho, Some(3.9), -1.0, &times, 1e-9).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("0.00000000000e0,3.90000000000e0,-1.00000000000e0,"));
        assert_eq!(lines[1].split(',').count(), 9);
        assert!(!text.contains('\r'));

        // `alpha: None` renders as n/a.
        let mut rec = records[0].clone();
        rec.alpha = None;
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec]).unwrap();
        assert!(String::from_utf8(buf).unwrap().lines().nth(1).unwrap().contains(",n/a,"));
    }

    #[test]
    fn sweep_crosses_from_bound_to_free() {
        // alpha = 3.9 starts PT-blind but realignment-positive, and the
        // evolution pushes it across the free boundary within a quarter
        // period.
        let rho = horodecki_state(3.9).unwrap();
        let times = time_grid(0.0, PI / 4.0, 9);
        let records = sweep_records(&rho, Some(3.9), -1.0, &times, 1e-9).unwrap();
        assert_eq!(records[0].report.classification, Classification::Bound);
        assert_eq!(
            records.last().unwrap().report.classification,
            Classification::Free
        );
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_sweeps_are_bitwise_identical() {
        let rho = horodecki_state(4.2).unwrap();
        let times = time_grid(0.0, PI, 40);
        let seq = sweep_records_seq(&rho, Some(4.2), -1.0, &times, 1e-9).unwrap();
        let par = sweep_records_par(&rho, Some(4.2), -1.0, &times, 1e-9).unwrap();
        assert_eq!(seq, par); // PartialEq on f64 fields: exact equality

        let alphas = [2.5, 3.65, 4.75];
        assert_eq!(
            oracle_deviations_seq(&alphas, &times).unwrap(),
            oracle_deviations_par(&alphas, &times).unwrap()
        );
    }

    #[test]
    fn oracle_gate_is_tight_on_a_spot_grid() {
        let alphas = [2.0, 3.4, 4.5, 5.0];
        let times = [0.0, 0.47, PI / 4.0, 2.0];
        let devs = oracle_deviations(&alphas, &times).unwrap();
        assert!(devs.worst() < 1e-10, "{devs:?}");
    }
}
