//! Built-in space identifiers:
//!
//! ```text
//! space := "sphere" | "point" | "cpn:" uint | "product:" space "," space
//! ```
//!
//! `product:` nests to the right of the colon, so `product:product:sphere,sphere,cpn:2`
//! is `(S² × S²) × ℂP²`.

use eqloc_core::{spaces, LocalizationProblem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid space identifier {input:?} at offset {offset}: {message}")]
pub struct SpaceIdError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

/// Largest `n` accepted for `cpn:<n>`; the torus has rank `n + 1`.
pub const MAX_PROJECTIVE_DIM: usize = 64;

pub fn parse_space(id: &str) -> Result<LocalizationProblem, SpaceIdError> {
    let (problem, rest) = space(id, 0)?;
    if rest != id.len() {
        return Err(error(id, rest, "unexpected trailing input"));
    }
    Ok(problem)
}

fn error(input: &str, offset: usize, message: &str) -> SpaceIdError {
    SpaceIdError { input: input.to_string(), offset, message: message.to_string() }
}

fn space(input: &str, at: usize) -> Result<(LocalizationProblem, usize), SpaceIdError> {
    let s = &input[at..];
    if let Some(rest) = s.strip_prefix("product:") {
        let start = at + s.len() - rest.len();
        let (a, after_a) = space(input, start)?;
        if !input[after_a..].starts_with(',') {
            return Err(error(input, after_a, "expected ',' between product factors"));
        }
        let (b, after_b) = space(input, after_a + 1)?;
        return Ok((spaces::product(&a, &b), after_b));
    }
    if let Some(rest) = s.strip_prefix("cpn:") {
        let start = at + 4;
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(error(input, start, "expected the complex dimension n"));
        }
        let n: usize = rest[..digits].parse().map_err(|_| error(input, start, "dimension too large"))?;
        if n > MAX_PROJECTIVE_DIM {
            return Err(error(input, start, "dimension too large"));
        }
        return Ok((spaces::projective_space(n), start + digits));
    }
    for (name, build) in [("sphere", spaces::sphere_rotation as fn() -> _), ("point", spaces::point)] {
        if s.starts_with(name) {
            return Ok((build(), at + name.len()));
        }
    }
    Err(error(input, at, "expected 'sphere', 'point', 'cpn:<n>' or 'product:<space>,<space>'"))
}
