//! Parsing of `--state` specs and of on-disk state files.
//!
//! Spec grammar: `horodecki:<alpha>` | `upb-tiles` | `upb-pyramid` |
//! `file:<path>`. State files are plain text: a `dims 3 3` line followed by
//! 81 whitespace-separated complex entries `re+imj` (e.g. `0.095238-0.0j`),
//! row-major; blank lines and `#` comments are skipped.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use bes_core::linalg::{Complex64, ComplexMatrix};
use bes_core::model::DensityMatrix;
use bes_core::sweep::parse_number;

/// Why a state could not be produced. The split matters for exit codes:
/// `Spec` is a malformed request (exit 2), `Validation` is a syntactically
/// fine state file whose matrix is not a density matrix (exit 4).
#[derive(Debug)]
pub enum LoadError {
    Spec(String),
    Validation(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Horodecki { alpha: f64 },
    UpbTiles,
    UpbPyramid,
    File { path: PathBuf },
}

impl FromStr for StateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(alpha) = s.strip_prefix("horodecki:") {
            let alpha = parse_number(alpha)
                .map_err(|e| format!("bad alpha in state spec '{s}': {e}"))?;
            return Ok(StateSpec::Horodecki { alpha });
        }
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(format!("state spec '{s}' is missing a path"));
            }
            return Ok(StateSpec::File { path: PathBuf::from(path) });
        }
        match s {
            "upb-tiles" => Ok(StateSpec::UpbTiles),
            "upb-pyramid" => Ok(StateSpec::UpbPyramid),
            _ => Err(format!(
                "unknown state spec '{s}' (expected horodecki:<alpha>, upb-tiles, upb-pyramid, or file:<path>)"
            )),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Horodecki { alpha } => write!(f, "horodecki:{alpha}"),
            StateSpec::UpbTiles => f.write_str("upb-tiles"),
            StateSpec::UpbPyramid => f.write_str("upb-pyramid"),
            StateSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl StateSpec {
    /// The alpha column value for CSV output (`n/a` for non-Horodecki states).
    pub fn alpha_label(&self) -> Option<f64> {
        match self {
            StateSpec::Horodecki { alpha } => Some(*alpha),
            _ => None,
        }
    }

    pub fn load(&self) -> Result<DensityMatrix, LoadError> {
        match self {
            StateSpec::Horodecki { alpha } => bes_core::model::horodecki_state(*alpha)
                .map_err(|e| LoadError::Spec(e.to_string())),
            StateSpec::UpbTiles => Ok(bes_core::model::upb_tiles_state()),
            StateSpec::UpbPyramid => Ok(bes_core::model::upb_pyramid_state()),
            StateSpec::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    LoadError::Spec(format!("cannot read {}: {e}", path.display()))
                })?;
                parse_state_file(&text)
            }
        }
    }
}

/// One complex entry in `re+imj` form (`0.5-0.25j`); a bare real is also
/// accepted.
fn parse_complex(token: &str) -> Result<Complex64, String> {
    let bad = || format!("cannot parse '{token}' as a complex entry (expected re+imj)");
    if let Some(body) = token.strip_suffix('j') {
        // Split before the sign of the imaginary part: the last +/- that is
        // neither leading nor part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| {
                (bytes[i] == b'+' || bytes[i] == b'-')
                    && !matches!(bytes[i - 1], b'e' | b'E')
            })
            .ok_or_else(bad)?;
        let re: f64 = body[..split].parse().map_err(|_| bad())?;
        let im: f64 = body[split..].parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    } else {
        token
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad())
    }
}

/// Parses the on-disk state format and validates the result as a density
/// matrix. Syntax problems come back as [`LoadError::Spec`]; a well-formed
/// matrix that is not Hermitian / unit-trace / PSD as [`LoadError::Validation`].
pub fn parse_state_file(text: &str) -> Result<DensityMatrix, LoadError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));

    let dims_line = lines
        .next()
        .ok_or_else(|| LoadError::Spec("state file is empty".into()))?;
    if dims_line != "dims 3 3" {
        return Err(LoadError::Spec(format!(
            "state file must start with 'dims 3 3', found '{dims_line}'"
        )));
    }

    let tokens: Vec<&str> = lines.flat_map(str::split_whitespace).collect();
    if tokens.len() != 81 {
        return Err(LoadError::Spec(format!(
            "state file must hold 81 entries after the dims line, found {}",
            tokens.len()
        )));
    }
    let mut data = Vec::with_capacity(81);
    for token in tokens {
        data.push(parse_complex(token).map_err(LoadError::Spec)?);
    }
    DensityMatrix::new(3, 3, ComplexMatrix::new(9, 9, data))
        .map_err(|e| LoadError::Validation(e.to_string()))
}
