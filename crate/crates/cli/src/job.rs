use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Dihedral(usize),
    Cayley(PathBuf),
}

impl FromStr for GroupSource {
    type Err = CliError;

    /// Builtin groups, currently `dihedral:<n>`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let (name, param) = s
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("group {s:?} is not of the form name:param")))?;
        match name {
            "dihedral" => param
                .parse()
                .ok()
                .filter(|&n: &usize| n >= 1)
                .map(GroupSource::Dihedral)
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "dihedral parameter {param:?} is not a positive integer"
                    ))
                }),
            _ => Err(CliError::Usage(format!("unknown builtin group {name:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Calculus,
    Connection,
    Curvature,
    Ricci,
    Dirac,
    Wave,
    SpectralAction,
    ReportAll,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Calculus,
        Command::Connection,
        Command::Curvature,
        Command::Ricci,
        Command::Dirac,
        Command::Wave,
        Command::SpectralAction,
        Command::ReportAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Calculus => "calculus",
            Command::Connection => "connection",
            Command::Curvature => "curvature",
            Command::Ricci => "ricci",
            Command::Dirac => "dirac",
            Command::Wave => "wave",
            Command::SpectralAction => "spectral-action",
            Command::ReportAll => "report-all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown command {s:?}")))
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("{s:?} is not a rational number p/q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(CliError::Usage(format!("{s:?} has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// Polynomial coefficients, lowest degree first, separated by commas.
pub fn parse_coefficients(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',').map(parse_rational).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub group: GroupSource,
    pub class: String,
    pub mu: BigRational,
    pub command: Command,
    /// Test function for the spectral action, lowest degree first.
    pub test_function: Vec<BigRational>,
    pub cutoff: BigRational,
}

impl JobSpec {
    pub fn new(group: GroupSource, class: impl Into<String>, command: Command) -> Self {
        JobSpec {
            group,
            class: class.into(),
            mu: BigRational::zero(),
            command,
            test_function: default_test_function(),
            cutoff: BigRational::from_integer(1.into()),
        }
    }
}

/// Degree-4 Taylor polynomial of `e^{-u}`.
pub fn default_test_function() -> Vec<BigRational> {
    [(1, 1), (-1, 1), (1, 2), (-1, 6), (1, 24)]
        .into_iter()
        .map(|(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sources() {
        assert_eq!(
            "dihedral:6".parse::<GroupSource>().unwrap(),
            GroupSource::Dihedral(6)
        );
        assert!("dihedral:x".parse::<GroupSource>().is_err());
        assert!("dihedral:0".parse::<GroupSource>().is_err());
        assert!("cyclic:4".parse::<GroupSource>().is_err());
        assert!("dihedral".parse::<GroupSource>().is_err());
    }

    #[test]
    fn commands_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("ricci-flat".parse::<Command>().is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-2/6").unwrap(),
            BigRational::new((-1).into(), 3.into())
        );
        assert_eq!(
            parse_rational("4").unwrap(),
            BigRational::from_integer(4.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert_eq!(parse_coefficients("1,-1,1/2").unwrap().len(), 3);
    }
}
