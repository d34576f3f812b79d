//! A built complex together with its Laplacian and phase-estimation settings.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::complex::{slot_count, CliqueComplex, Instance};
use crate::error::{Error, Result};
use crate::homology::{Convention, HodgeOperator, DEFAULT_ZERO_TOL};
use crate::qpipeline::{member_zero_weight, p_one, reduced_density, DensityOperator, PEConfig, POne, PhaseMode};

/// Phase-register choice; `AutoBits` picks the default register size from
/// the spectrum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeSetting {
    #[default]
    Ideal,
    Bits(u32),
    AutoBits,
}

impl std::str::FromStr for PeSetting {
    type Err = Error;

    /// `ideal`, `bits:<t>` or `bits:auto`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "bits:auto" {
            return Ok(PeSetting::AutoBits);
        }
        Ok(match s.parse::<PhaseMode>()? {
            PhaseMode::Ideal => PeSetting::Ideal,
            PhaseMode::Bits(t) => PeSetting::Bits(t),
        })
    }
}

impl std::fmt::Display for PeSetting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PeSetting::Ideal => f.write_str("ideal"),
            PeSetting::Bits(t) => write!(f, "bits:{t}"),
            PeSetting::AutoBits => f.write_str("bits:auto"),
        }
    }
}

impl PeSetting {
    pub fn config(&self, op: &HodgeOperator) -> PEConfig {
        match self {
            PeSetting::Ideal => PEConfig::ideal(op),
            PeSetting::Bits(t) => PEConfig::bits(op, *t),
            PeSetting::AutoBits => PEConfig::bits(op, PEConfig::default_bits(op)),
        }
    }
}

/// Everything the extraction step reads for one `(complex, k)`.
#[derive(Debug)]
pub struct Pipeline {
    complex: CliqueComplex,
    k: usize,
    op: HodgeOperator,
    pe: PEConfig,
    simplices: usize,
    beta_pe: f64,
    p_one: POne,
    density: OnceLock<DensityOperator>,
}

impl Pipeline {
    pub fn new(complex: CliqueComplex, k: usize, convention: Convention, pe: PeSetting) -> Result<Self> {
        Self::with_zero_tol(complex, k, convention, pe, DEFAULT_ZERO_TOL)
    }

    pub fn with_zero_tol(
        complex: CliqueComplex,
        k: usize,
        convention: Convention,
        pe: PeSetting,
        zero_tol: f64,
    ) -> Result<Self> {
        if !(zero_tol > 0.0 && zero_tol < 1.0) {
            return Err(Error::InvalidInput(format!("zero tolerance {zero_tol} outside (0, 1)")));
        }
        let op = HodgeOperator::new(&complex, k, convention)?;
        let pe = PEConfig { zero_tol, ..pe.config(&op) };
        pe.validate(&op)?;
        let simplices = complex.count(k)?;
        let beta_pe = member_zero_weight(&op, &pe)?;
        let p_one = p_one(&complex, k, &op, &pe)?;
        Ok(Self { complex, k, op, pe, simplices, beta_pe, p_one, density: OnceLock::new() })
    }

    /// Builds the complex an instance needs for dimension `k`.
    pub fn from_instance(instance: &Instance, k: usize, convention: Convention, pe: PeSetting) -> Result<Self> {
        Self::new(instance.complex_for(k)?, k, convention, pe)
    }

    pub fn complex(&self) -> &CliqueComplex {
        &self.complex
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn operator(&self) -> &HodgeOperator {
        &self.op
    }

    pub fn pe_config(&self) -> &PEConfig {
        &self.pe
    }

    /// C_{k,n}.
    pub fn slot_count(&self) -> usize {
        slot_count(self.complex.n(), self.k)
    }

    /// |S_k|.
    pub fn simplex_count(&self) -> usize {
        self.simplices
    }

    /// Σ_{s∈S_k} zero-phase weight.
    pub fn beta_pe(&self) -> f64 {
        self.beta_pe
    }

    pub fn p_one(&self) -> POne {
        self.p_one
    }

    /// The reduced density operator, built on first use.
    pub fn density(&self) -> Result<&DensityOperator> {
        if let Some(rho) = self.density.get() {
            return Ok(rho);
        }
        let rho = reduced_density(&self.complex, self.k, &self.op, &self.pe)?;
        Ok(self.density.get_or_init(|| rho))
    }
}
