//! Flag-qubit observables and the `b = Tr[(|0⟩⟨0| ⊗ I ⊗ M) ρ]` measurement.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use super::pipeline::Pipeline;
use crate::error::{Error, Result};
use crate::qpipeline::{trace_estimate, FlagObservable, TraceEstimate, C64};

const HERMITIAN_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-12;
/// Smallest `σ_min/σ_max` of the induced system accepted as nonsingular.
pub const SINGULAR_RATIO: f64 = 1e-12;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// A Hermitian 2×2 contraction on the flag qubit.
pub fn check_flag_observable(m: &Matrix2<C64>) -> Result<()> {
    if (m - m.adjoint()).iter().any(|z| z.norm() > HERMITIAN_TOL) {
        return Err(Error::InvalidInput("flag observable is not Hermitian".into()));
    }
    let norm = m.singular_values().max();
    if norm > 1.0 + NORM_TOL {
        return Err(Error::NormViolation { norm });
    }
    Ok(())
}

pub fn projector_zero() -> Matrix2<C64> {
    Matrix2::new(c(1.0), c(0.0), c(0.0), c(0.0))
}

pub fn projector_one() -> Matrix2<C64> {
    Matrix2::new(c(0.0), c(0.0), c(0.0), c(1.0))
}

pub fn pauli_z() -> Matrix2<C64> {
    Matrix2::new(c(1.0), c(0.0), c(0.0), c(-1.0))
}

/// `(X + Z)/√2`.
pub fn hadamard_observable() -> Matrix2<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Matrix2::new(c(h), c(h), c(h), c(-h))
}

/// The measured pair `(M₁, M₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservablePair {
    m1: Matrix2<C64>,
    m2: Matrix2<C64>,
}

impl ObservablePair {
    /// Validates both observables and the induced system.
    pub fn new(m1: Matrix2<C64>, m2: Matrix2<C64>) -> Result<Self> {
        check_flag_observable(&m1)?;
        check_flag_observable(&m2)?;
        let pair = Self { m1, m2 };
        let a = pair.trace_matrix();
        let sv = a.singular_values();
        if sv.max() == 0.0 || sv.min() / sv.max() < SINGULAR_RATIO {
            return Err(Error::SingularSystem { det: a.determinant() });
        }
        Ok(pair)
    }

    pub fn m1(&self) -> &Matrix2<C64> {
        &self.m1
    }

    pub fn m2(&self) -> &Matrix2<C64> {
        &self.m2
    }

    /// `[[Tr(M₁|1⟩⟨1|), Tr(M₁|0⟩⟨0|)], [Tr(M₂|1⟩⟨1|), Tr(M₂|0⟩⟨0|)]]`.
    pub fn trace_matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.m1[(1, 1)].re, self.m1[(0, 0)].re, self.m2[(1, 1)].re, self.m2[(0, 0)].re)
    }

    /// Named pairs for invariance checks; the first is the default.
    pub fn presets() -> Vec<(&'static str, ObservablePair)> {
        let id = Matrix2::identity();
        [
            ("projectors", projector_one(), projector_zero()),
            ("identity-one", id, projector_one()),
            ("z-zero", pauli_z(), projector_zero()),
            ("hadamard-one", hadamard_observable(), projector_one()),
        ]
        .into_iter()
        .map(|(name, m1, m2)| (name, ObservablePair::new(m1, m2).expect("preset pairs are valid")))
        .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: PairWire = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad pair file: {e}")))?;
        Self::new(wire.m1.to_matrix(), wire.m2.to_matrix())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PairWire::from(self)).expect("pair serializes")
    }
}

impl Default for ObservablePair {
    /// `M₁ = |1⟩⟨1|`, `M₂ = |0⟩⟨0|`: `A = I/C`.
    fn default() -> Self {
        Self { m1: projector_one(), m2: projector_zero() }
    }
}

impl Serialize for ObservablePair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ObservablePair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = PairWire::deserialize(d)?;
        ObservablePair::new(wire.m1.to_matrix(), wire.m2.to_matrix()).map_err(serde::de::Error::custom)
    }
}

/// Row-major real and imaginary parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixWire {
    re: [[f64; 2]; 2],
    #[serde(default)]
    im: [[f64; 2]; 2],
}

impl MatrixWire {
    fn to_matrix(&self) -> Matrix2<C64> {
        Matrix2::from_fn(|i, j| C64::new(self.re[i][j], self.im[i][j]))
    }

    fn from_matrix(m: &Matrix2<C64>) -> Self {
        let mut re = [[0.0; 2]; 2];
        let mut im = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                re[i][j] = m[(i, j)].re;
                im[i][j] = m[(i, j)].im;
            }
        }
        Self { re, im }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairWire {
    m1: MatrixWire,
    m2: MatrixWire,
}

impl From<&ObservablePair> for PairWire {
    fn from(p: &ObservablePair) -> Self {
        Self { m1: MatrixWire::from_matrix(&p.m1), m2: MatrixWire::from_matrix(&p.m2) }
    }
}

/// How `b` is obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Measurement {
    Exact,
    Sampled { delta: f64, confidence: f64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BValue {
    Exact(f64),
    Sampled(TraceEstimate),
}

impl BValue {
    pub fn value(&self) -> f64 {
        match self {
            BValue::Exact(v) => *v,
            BValue::Sampled(t) => t.value,
        }
    }

    pub fn samples_used(&self) -> Option<u64> {
        match self {
            BValue::Exact(_) => None,
            BValue::Sampled(t) => Some(t.samples_used),
        }
    }
}

/// `b = Tr[(|0⟩⟨0| ⊗ I ⊗ M) ρ]`. Exact mode evaluates
/// `(β^PE · M₁₁ + p₁ · M₀₀) / C`; sampled mode runs trace estimation on ρ.
pub fn observable_b(m: &Matrix2<C64>, pipeline: &Pipeline, mode: Measurement) -> Result<BValue> {
    check_flag_observable(m)?;
    match mode {
        Measurement::Exact => {
            let c = pipeline.slot_count() as f64;
            Ok(BValue::Exact((pipeline.beta_pe() * m[(1, 1)].re + pipeline.p_one().trace * m[(0, 0)].re) / c))
        }
        Measurement::Sampled { delta, confidence, seed } => {
            let rho = pipeline.density()?;
            Ok(BValue::Sampled(trace_estimate(&FlagObservable::new(*m), rho, delta, confidence, seed)?))
        }
    }
}
