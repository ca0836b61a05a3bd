//! Line-oriented state-file parser.
//!
//! ```text
//! # comment
//! dims <d_A> <d_B>
//! term <i> <j> <coeff>
//! param real|magnitude
//! ```
//!
//! `<coeff>` is a scalar in the text grammar (`3`, `-1/2`, `2i`, `1/2-3/4i`),
//! a bare parameter name (`p`), or `<scalar>*<name>` (`-1/2*p`, `2i*p`).
//! The file may use any single parameter name except `i`. A `param` line
//! declares how the parameter is interpreted; a parameter without a
//! declaration defaults to a real one.

use num_traits::One;

use crate::exact::{GaussianRational, Matrix};

use super::{BipartiteState, ParamKind, ParamPoly, StateError};

fn syntax(line: usize, msg: impl Into<String>) -> StateError {
    StateError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

enum Coeff {
    Scalar(GaussianRational),
    Param {
        scalar: GaussianRational,
        name: String,
    },
}

fn parse_coeff(token: &str, line: usize) -> Result<Coeff, StateError> {
    if let Some((scalar_text, name)) = token.split_once('*') {
        let scalar: GaussianRational = scalar_text
            .parse()
            .map_err(|_| syntax(line, format!("invalid scalar `{scalar_text}`")))?;
        if !is_identifier(name) || name == "i" {
            return Err(syntax(line, format!("invalid parameter name `{name}`")));
        }
        return Ok(Coeff::Param {
            scalar,
            name: name.to_string(),
        });
    }
    if let Ok(scalar) = token.parse::<GaussianRational>() {
        return Ok(Coeff::Scalar(scalar));
    }
    if token == "i" {
        return Err(syntax(line, "bare `i` is not a coefficient; write `1i`"));
    }
    if is_identifier(token) {
        return Ok(Coeff::Param {
            scalar: GaussianRational::one(),
            name: token.to_string(),
        });
    }
    Err(syntax(line, format!("invalid coefficient `{token}`")))
}

/// A parsed state plus what the file actually declared: callers that take an
/// analysis mode on the command line use `declared_kind` to distinguish an
/// explicit `param` line (binding) from the default interpretation of a bare
/// parameter (rebindable).
pub struct ParsedState {
    pub state: BipartiteState,
    pub declared_kind: Option<ParamKind>,
}

/// Parses state-file text into a validated [`BipartiteState`].
pub fn parse_state(text: &str) -> Result<BipartiteState, StateError> {
    Ok(parse_state_full(text)?.state)
}

/// Parses state-file text, also reporting whether a `param` line was present.
pub fn parse_state_full(text: &str) -> Result<ParsedState, StateError> {
    let mut dims: Option<(usize, usize)> = None;
    let mut coeffs: Option<Matrix<ParamPoly>> = None;
    let mut filled: Vec<(usize, usize)> = Vec::new();
    let mut declared: Option<ParamKind> = None;
    let mut param_name: Option<String> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let keyword = fields.next().unwrap();
        match keyword {
            "dims" => {
                if dims.is_some() {
                    return Err(syntax(line, "duplicate dims line"));
                }
                let d_a: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "dims needs two positive integers"))?;
                let d_b: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "dims needs two positive integers"))?;
                if fields.next().is_some() {
                    return Err(syntax(line, "trailing fields after dims"));
                }
                if d_a == 0 || d_b == 0 {
                    return Err(StateError::BadDims);
                }
                dims = Some((d_a, d_b));
                coeffs = Some(Matrix::zeros(d_a, d_b));
            }
            "term" => {
                let (d_a, d_b) = dims.ok_or_else(|| syntax(line, "term before dims"))?;
                let i: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "term needs two indices and a coefficient"))?;
                let j: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "term needs two indices and a coefficient"))?;
                let token = fields
                    .next()
                    .ok_or_else(|| syntax(line, "term needs a coefficient"))?;
                if fields.next().is_some() {
                    return Err(syntax(line, "trailing fields after term"));
                }
                if i >= d_a || j >= d_b {
                    return Err(StateError::IndexOutOfRange { i, j, d_a, d_b });
                }
                if filled.contains(&(i, j)) {
                    return Err(StateError::DuplicateTerm { i, j });
                }
                filled.push((i, j));
                let entry = match parse_coeff(token, line)? {
                    Coeff::Scalar(z) => ParamPoly::constant(z),
                    Coeff::Param { scalar, name } => {
                        match &param_name {
                            None => param_name = Some(name.clone()),
                            Some(existing) if *existing == name => {}
                            Some(existing) => {
                                return Err(StateError::MultipleParameters {
                                    first: existing.clone(),
                                    second: name,
                                })
                            }
                        }
                        ParamPoly::monomial(name, scalar, 1)
                    }
                };
                coeffs.as_mut().unwrap()[(i, j)] = entry;
            }
            "param" => {
                if declared.is_some() {
                    return Err(syntax(line, "duplicate param line"));
                }
                let kind = match fields.next() {
                    Some("real") => ParamKind::Real,
                    Some("magnitude") => ParamKind::ComplexMagnitude,
                    _ => return Err(syntax(line, "param must be `real` or `magnitude`")),
                };
                if fields.next().is_some() {
                    return Err(syntax(line, "trailing fields after param"));
                }
                declared = Some(kind);
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let coeffs = coeffs.ok_or(StateError::EmptyState)?;
    let zero_entries = filled.is_empty();
    if zero_entries {
        return Err(StateError::EmptyState);
    }
    let kind = match (declared, &param_name) {
        (Some(k), Some(_)) => k,
        (Some(_), None) => return Err(StateError::UnusedParameterKind),
        (None, Some(_)) => ParamKind::Real,
        (None, None) => ParamKind::None,
    };
    Ok(ParsedState {
        state: BipartiteState::new(coeffs, kind)?,
        declared_kind: declared,
    })
}
