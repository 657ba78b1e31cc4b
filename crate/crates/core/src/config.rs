//! Run configuration shared by the command-line front end and the surveys.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::RootOptions;
use crate::enumeration::{OracleLimits, DEFAULT_INDEPENDENT_LIMIT, DEFAULT_MIS_LIMIT};
use crate::error::{Error, Result};
use crate::graph::DEFAULT_VERTEX_CAPACITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
    Svg,
    Text,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Dot => "dot",
            OutputFormat::Svg => "svg",
            OutputFormat::Text => "text",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "json" => OutputFormat::Json,
            "csv" => OutputFormat::Csv,
            "dot" => OutputFormat::Dot,
            "svg" => OutputFormat::Svg,
            "text" => OutputFormat::Text,
            _ => return Err(Error::Domain(format!("unknown output format {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub oracle_limit_mis: usize,
    pub oracle_limit_ind: usize,
    pub vertex_capacity: usize,
    pub root_tol: f64,
    pub max_iterations: usize,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            oracle_limit_mis: DEFAULT_MIS_LIMIT,
            oracle_limit_ind: DEFAULT_INDEPENDENT_LIMIT,
            vertex_capacity: DEFAULT_VERTEX_CAPACITY,
            root_tol: 1e-10,
            max_iterations: 1000,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("oracle_limit_mis", self.oracle_limit_mis),
            ("oracle_limit_ind", self.oracle_limit_ind),
            ("vertex_capacity", self.vertex_capacity),
            ("max_iterations", self.max_iterations),
        ] {
            if v == 0 {
                return Err(Error::Domain(format!("{name} must be positive")));
            }
        }
        if !(self.root_tol > 0.0 && self.root_tol < 1e-2) {
            return Err(Error::Domain(format!("root tolerance {} is outside (0, 1e-2)", self.root_tol)));
        }
        Ok(())
    }

    pub fn oracle_limits(&self) -> OracleLimits {
        OracleLimits {
            mis: self.oracle_limit_mis,
            independent: self.oracle_limit_ind,
        }
    }

    pub fn root_options(&self) -> RootOptions {
        RootOptions {
            tol: self.root_tol,
            max_iterations: self.max_iterations,
        }
    }
}
