use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use dioph_core::numerics::{PrecisionReal, WorkingPrecision};

use crate::error::CliError;

pub const MIN_PRECISION_BITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Count(usize),
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("`{s}`: expected a positive integer or `auto`")),
            Ok(k) => Ok(Threads::Count(k)),
        }
    }
}

impl fmt::Display for Threads {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threads::Auto => f.write_str("auto"),
            Threads::Count(k) => write!(f, "{k}"),
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision_bits: usize,
    pub tol: PrecisionReal,
    pub format: OutputFormat,
    pub threads: Threads,
    /// Significant digits for printed reals.
    pub digits: usize,
}

impl RunConfig {
    pub fn new(
        precision_bits: usize,
        tol: &str,
        format: OutputFormat,
        threads: Threads,
        digits: usize,
    ) -> Result<Self, CliError> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(CliError::Usage(format!(
                "precision must be at least {MIN_PRECISION_BITS} bits, got {precision_bits}"
            )));
        }
        let tol = PrecisionReal::parse(tol, precision_bits)
            .map_err(|_| CliError::Usage(format!("tolerance `{tol}` is not a decimal number")))?;
        if !tol.is_positive() {
            return Err(CliError::Usage("tolerance must be positive".into()));
        }
        if !(1..=60).contains(&digits) {
            return Err(CliError::Usage(format!("digits must lie in 1..=60, got {digits}")));
        }
        Ok(RunConfig {
            precision_bits,
            tol,
            format,
            threads,
            digits,
        })
    }

    pub fn working_precision(&self) -> WorkingPrecision {
        WorkingPrecision::new(self.precision_bits, self.tol.clone())
    }

    /// Parse a decimal at the working precision.
    pub fn real(&self, what: &str, s: &str) -> Result<PrecisionReal, CliError> {
        PrecisionReal::parse(s, self.precision_bits)
            .map_err(|_| CliError::Usage(format!("{what}: `{s}` is not a decimal number")))
    }

    pub fn thread_pool(&self) -> Result<rayon::ThreadPool, CliError> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Threads::Count(k) = self.threads {
            b = b.num_threads(k);
        }
        b.build().map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_precision_and_bad_tol() {
        assert!(RunConfig::new(32, "1e-30", OutputFormat::Json, Threads::Auto, 12).is_err());
        assert!(RunConfig::new(128, "-1", OutputFormat::Json, Threads::Auto, 12).is_err());
        assert!(RunConfig::new(128, "abc", OutputFormat::Json, Threads::Auto, 12).is_err());
        assert!(RunConfig::new(64, "1e-10", OutputFormat::Text, Threads::Count(2), 12).is_ok());
    }

    #[test]
    fn thread_spec() {
        assert_eq!("auto".parse::<Threads>(), Ok(Threads::Auto));
        assert_eq!("3".parse::<Threads>(), Ok(Threads::Count(3)));
        assert!("0".parse::<Threads>().is_err());
        assert!("x".parse::<Threads>().is_err());
    }
}
