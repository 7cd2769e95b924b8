//! Textual state descriptions: `family:params`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fock_core::{DensityOperator, FockVector, C64};

use super::{
    cat, cat_norm, cat_tail, check_complex, check_modulus, check_nbar, coherent, coherent_phase,
    fock, generalized_coherent, phase_tail, poisson_tail, squeezed_tail, squeezed_vacuum, thermal,
    thermal_tail, State,
};

/// A state family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Fock(usize),
    Coherent(C64),
    GeneralizedCoherent { alpha: C64, phases: Vec<f64> },
    Cat { alpha: C64, phi: f64 },
    SqueezedVacuum(C64),
    CoherentPhase(C64),
    Thermal(f64),
}

impl StateSpec {
    pub fn family(&self) -> &'static str {
        match self {
            StateSpec::Fock(_) => "fock",
            StateSpec::Coherent(_) => "coherent",
            StateSpec::GeneralizedCoherent { .. } => "gencoh",
            StateSpec::Cat { .. } => "cat",
            StateSpec::SqueezedVacuum(_) => "squeezed",
            StateSpec::CoherentPhase(_) => "phase",
            StateSpec::Thermal(_) => "thermal",
        }
    }

    pub fn is_pure(&self) -> bool {
        match self {
            StateSpec::Thermal(n) => *n == 0.0,
            _ => true,
        }
    }

    /// True when the spec describes |0⟩.
    pub fn is_vacuum(&self) -> bool {
        match self {
            StateSpec::Fock(n) => *n == 0,
            StateSpec::Coherent(a) | StateSpec::SqueezedVacuum(a) | StateSpec::CoherentPhase(a) => {
                a.norm() == 0.0
            }
            StateSpec::GeneralizedCoherent { alpha, .. } => alpha.norm() == 0.0,
            StateSpec::Cat { .. } => false,
            StateSpec::Thermal(n) => *n == 0.0,
        }
    }

    /// Checks parameter domains without building anything.
    pub fn validate(&self) -> Result<()> {
        match self {
            StateSpec::Fock(_) => Ok(()),
            StateSpec::Coherent(a) => check_complex("alpha", *a),
            StateSpec::GeneralizedCoherent { alpha, phases } => {
                check_complex("alpha", *alpha)?;
                if phases.iter().any(|p| !p.is_finite()) {
                    return Err(Error::InvalidParameter("phase table entries must be finite".into()));
                }
                Ok(())
            }
            StateSpec::Cat { alpha, phi } => {
                check_complex("alpha", *alpha)?;
                if !phi.is_finite() {
                    return Err(Error::InvalidParameter("phi must be finite".into()));
                }
                let d = cat_norm(*alpha, *phi);
                if d <= 1e-14 {
                    return Err(Error::DegenerateNormalization(format!(
                        "1 + cos(phi) exp(-2|alpha|^2) = {d:e}"
                    )));
                }
                Ok(())
            }
            StateSpec::SqueezedVacuum(z) => check_modulus("zeta", *z),
            StateSpec::CoherentPhase(e) => check_modulus("epsilon", *e),
            StateSpec::Thermal(n) => check_nbar(*n),
        }
    }

    /// Photon-number mass at n ≥ dim before renormalization.
    pub fn tail_mass(&self, dim: usize) -> f64 {
        match self {
            StateSpec::Fock(n) => {
                if *n >= dim {
                    1.0
                } else {
                    0.0
                }
            }
            StateSpec::Coherent(a) | StateSpec::GeneralizedCoherent { alpha: a, .. } => {
                poisson_tail(a.norm_sqr(), dim)
            }
            StateSpec::Cat { alpha, phi } => cat_tail(*alpha, *phi, dim),
            StateSpec::SqueezedVacuum(z) => squeezed_tail(z.norm(), dim),
            StateSpec::CoherentPhase(e) => phase_tail(e.norm(), dim),
            StateSpec::Thermal(n) => thermal_tail(*n, dim),
        }
    }

    /// Mean photon number of the untruncated state.
    pub fn mean_number(&self) -> f64 {
        match self {
            StateSpec::Fock(n) => *n as f64,
            StateSpec::Coherent(a) | StateSpec::GeneralizedCoherent { alpha: a, .. } => a.norm_sqr(),
            StateSpec::Cat { alpha, phi } => {
                let x = alpha.norm_sqr();
                let e = (-2.0 * x).exp();
                x * (1.0 - phi.cos() * e) / (1.0 + phi.cos() * e)
            }
            StateSpec::SqueezedVacuum(z) => z.norm_sqr() / (1.0 - z.norm_sqr()),
            StateSpec::CoherentPhase(e) => e.norm_sqr() / (1.0 - e.norm_sqr()),
            StateSpec::Thermal(n) => *n,
        }
    }

    pub fn build(&self, dim: usize) -> Result<State> {
        Ok(match self {
            StateSpec::Fock(n) => State::Pure(fock(*n, dim)?),
            StateSpec::Coherent(a) => State::Pure(coherent(*a, dim)?),
            StateSpec::GeneralizedCoherent { alpha, phases } => {
                State::Pure(generalized_coherent(*alpha, phases, dim)?)
            }
            StateSpec::Cat { alpha, phi } => State::Pure(cat(*alpha, *phi, dim)?),
            StateSpec::SqueezedVacuum(z) => State::Pure(squeezed_vacuum(*z, dim)?),
            StateSpec::CoherentPhase(e) => State::Pure(coherent_phase(*e, dim)?),
            StateSpec::Thermal(n) => State::Mixed(thermal(*n, dim)?),
        })
    }

    pub fn pure(&self, dim: usize) -> Result<FockVector> {
        match self.build(dim)? {
            State::Pure(v) => Ok(v),
            State::Mixed(_) => Err(Error::Unsupported(format!("{self} is not a pure state"))),
        }
    }

    pub fn density(&self, dim: usize) -> Result<DensityOperator> {
        Ok(self.build(dim)?.density())
    }

    /// Parses a spec; `@file` phase tables are resolved relative to `base`.
    pub fn parse_in(s: &str, base: Option<&Path>) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("state spec `{s}` lacks a `family:` prefix")))?;
        let tokens: Vec<&str> = rest.split(',').map(str::trim).collect();
        let spec = match family.trim() {
            "fock" => {
                one_token(&tokens, s)?;
                let n = tokens[0]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("`{}` is not a photon number", tokens[0])))?;
                StateSpec::Fock(n)
            }
            "coherent" => StateSpec::Coherent(complex(&tokens, s)?),
            "squeezed" => StateSpec::SqueezedVacuum(complex(&tokens, s)?),
            "phase" => StateSpec::CoherentPhase(complex(&tokens, s)?),
            "thermal" => {
                one_token(&tokens, s)?;
                StateSpec::Thermal(real(tokens[0])?)
            }
            "cat" => match tokens.len() {
                2 => StateSpec::Cat {
                    alpha: C64::new(real(tokens[0])?, 0.0),
                    phi: real(tokens[1])?,
                },
                3 => StateSpec::Cat {
                    alpha: C64::new(real(tokens[0])?, real(tokens[1])?),
                    phi: real(tokens[2])?,
                },
                _ => return Err(Error::Parse(format!("`{s}`: cat takes re,im,phi"))),
            },
            "gencoh" => {
                let (alpha, file) = match tokens.len() {
                    2 => (C64::new(real(tokens[0])?, 0.0), tokens[1]),
                    3 => (C64::new(real(tokens[0])?, real(tokens[1])?), tokens[2]),
                    _ => return Err(Error::Parse(format!("`{s}`: gencoh takes re,im,@phasefile"))),
                };
                let path = file
                    .strip_prefix('@')
                    .ok_or_else(|| Error::Parse(format!("`{file}`: phase table must be given as @file")))?;
                let path = match base {
                    Some(b) if Path::new(path).is_relative() => b.join(path),
                    _ => Path::new(path).to_path_buf(),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Parse(format!("cannot read phase table {}: {e}", path.display()))
                })?;
                StateSpec::GeneralizedCoherent {
                    alpha,
                    phases: parse_phase_table(&text)?,
                }
            }
            other => return Err(Error::Parse(format!("unknown state family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// One real per line; blank lines and `#` comments are ignored.
pub fn parse_phase_table(text: &str) -> Result<Vec<f64>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(real)
        .collect()
}

fn one_token(tokens: &[&str], s: &str) -> Result<()> {
    if tokens.len() != 1 {
        return Err(Error::Parse(format!("`{s}` takes exactly one parameter")));
    }
    Ok(())
}

fn real(t: &str) -> Result<f64> {
    let v = t
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("`{t}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("`{t}` is not finite")));
    }
    Ok(v)
}

fn complex(tokens: &[&str], s: &str) -> Result<C64> {
    match tokens.len() {
        1 => Ok(C64::new(real(tokens[0])?, 0.0)),
        2 => Ok(C64::new(real(tokens[0])?, real(tokens[1])?)),
        _ => Err(Error::Parse(format!("`{s}`: expected re,im"))),
    }
}

impl FromStr for StateSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StateSpec::parse_in(s, None)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Fock(n) => write!(f, "fock:{n}"),
            StateSpec::Coherent(a) => write!(f, "coherent:{},{}", a.re, a.im),
            StateSpec::GeneralizedCoherent { alpha, phases } => {
                write!(f, "gencoh:{},{},@[{} phases]", alpha.re, alpha.im, phases.len())
            }
            StateSpec::Cat { alpha, phi } => write!(f, "cat:{},{},{}", alpha.re, alpha.im, phi),
            StateSpec::SqueezedVacuum(z) => write!(f, "squeezed:{},{}", z.re, z.im),
            StateSpec::CoherentPhase(e) => write!(f, "phase:{},{}", e.re, e.im),
            StateSpec::Thermal(n) => write!(f, "thermal:{n}"),
        }
    }
}
