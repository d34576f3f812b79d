//! Exact block encodings (subnormalization 1).
//!
//! Every encoding is ancilla-major: the designated block is the top-left
//! `system_dim × system_dim` corner, where all ancillas read zero.

use nalgebra::{DMatrix, DVector};

use super::density::DensityOperator;
use super::phase::C64;
use crate::error::{Error, Result};

/// Largest unitary that is ever materialized densely.
pub const MAX_DENSE_DIM: usize = 4096;
/// Allowed deviation of `U†U` from the identity.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Allowed deviation of the designated block from its target.
pub const BLOCK_TOL: f64 = 1e-9;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Complex Householder reflection times a global phase, mapping `e_0` to a
/// given unit vector. Applied in O(dim) without forming the matrix.
#[derive(Clone, Debug)]
struct StatePrep {
    omega: C64,
    /// Unit reflection vector; `None` when the reflection is the identity.
    u: Option<DVector<C64>>,
}

impl StatePrep {
    fn new(phi: &DVector<C64>) -> Self {
        let a = phi[0];
        let omega = if a.norm() > 0.0 { a / a.norm() } else { ONE };
        // y = conj(ω)·φ has a real, non-negative first entry.
        let mut diff = phi.map(|z| z * omega.conj());
        diff[0] -= ONE;
        let norm = diff.norm();
        let u = (norm > 1e-300).then(|| diff / C64::new(norm, 0.0));
        Self { omega, u }
    }

    /// `x ← U x` on each of `stride` interleaved vectors, where element `p`
    /// of vector `s` lives at `p·stride + s`.
    fn apply(&self, x: &mut [C64], stride: usize, adjoint: bool) {
        let phase = if adjoint { self.omega.conj() } else { self.omega };
        if let Some(u) = &self.u {
            let mut proj = vec![ZERO; stride];
            for (p, up) in u.iter().enumerate() {
                let row = &x[p * stride..(p + 1) * stride];
                let c = up.conj();
                for (acc, v) in proj.iter_mut().zip(row) {
                    *acc += c * v;
                }
            }
            for (p, up) in u.iter().enumerate() {
                let row = &mut x[p * stride..(p + 1) * stride];
                for (v, pr) in row.iter_mut().zip(&proj) {
                    *v -= up * pr * 2.0;
                }
            }
        }
        for v in x.iter_mut() {
            *v *= phase;
        }
    }

    fn dim(&self, fallback: usize) -> usize {
        self.u.as_ref().map_or(fallback, |u| u.len())
    }
}

/// `W = (U† ⊗ I)(I ⊗ SWAP_{B,B'})(U ⊗ I)` over `A ⊗ B ⊗ B'`, where `U`
/// prepares a purification of ρ on `A ⊗ B`. Its `0_A 0_B` block is ρ.
#[derive(Clone, Debug)]
struct SwapEncoding {
    prep: StatePrep,
    copy_dim: usize,
    system_dim: usize,
}

impl SwapEncoding {
    fn dim(&self) -> usize {
        self.copy_dim * self.system_dim * self.system_dim
    }

    fn apply(&self, x: &DVector<C64>) -> DVector<C64> {
        let d = self.system_dim;
        let mut y: Vec<C64> = x.iter().copied().collect();
        self.prep.apply(&mut y, d, false);
        let mut z = vec![ZERO; y.len()];
        for a in 0..self.copy_dim {
            let base = a * d * d;
            for b in 0..d {
                for bp in 0..d {
                    z[base + b * d + bp] = y[base + bp * d + b];
                }
            }
        }
        self.prep.apply(&mut z, d, true);
        DVector::from_vec(z)
    }

    /// Frobenius norm of `U†U − I` for the preparation unitary, column by column.
    fn prep_deviation(&self) -> f64 {
        let dim = self.prep.dim(self.copy_dim * self.system_dim);
        let mut total = 0.0;
        for p in 0..dim {
            let mut col = vec![ZERO; dim];
            col[p] = ONE;
            self.prep.apply(&mut col, 1, false);
            self.prep.apply(&mut col, 1, true);
            col[p] -= ONE;
            total += col.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        total.sqrt()
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Dense(DMatrix<C64>),
    Swap(SwapEncoding),
}

/// A unitary together with the matrix its designated block encodes.
#[derive(Clone, Debug)]
pub struct BlockEncoding {
    repr: Repr,
    ancilla_dim: usize,
    system_dim: usize,
    target: DMatrix<C64>,
    /// Upper bound on the operator norm of `target`.
    norm_bound: f64,
}

/// Outcome of [`BlockEncoding::verify`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Verification {
    /// Bound on `‖U†U − I‖`.
    pub unitarity: f64,
    /// Largest entrywise deviation of the block from the target.
    pub block: f64,
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_dense(dim: usize) -> Result<()> {
    if dim > MAX_DENSE_DIM {
        return Err(Error::InvalidInput(format!("dense unitary of dimension {dim} exceeds {MAX_DENSE_DIM}")));
    }
    Ok(())
}

impl BlockEncoding {
    /// Wraps an explicit unitary whose top-left `target.nrows()` block is meant
    /// to equal `target`.
    pub fn from_unitary(unitary: DMatrix<C64>, target: DMatrix<C64>) -> Result<Self> {
        let s = target.nrows();
        if s == 0 || target.ncols() != s || unitary.nrows() != unitary.ncols() || unitary.nrows() % s != 0 {
            return Err(Error::DimensionMismatch { expected: s, found: unitary.nrows() });
        }
        check_dense(unitary.nrows())?;
        let norm_bound = target.singular_values().max();
        Ok(Self { ancilla_dim: unitary.nrows() / s, system_dim: s, repr: Repr::Dense(unitary), target, norm_bound })
    }

    /// Total dimension `ancilla_dim · system_dim`.
    pub fn dim(&self) -> usize {
        self.ancilla_dim * self.system_dim
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    pub fn system_dim(&self) -> usize {
        self.system_dim
    }

    pub fn target(&self) -> &DMatrix<C64> {
        &self.target
    }

    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    /// The explicit unitary, when stored densely.
    pub fn unitary(&self) -> Option<&DMatrix<C64>> {
        match &self.repr {
            Repr::Dense(u) => Some(u),
            Repr::Swap(_) => None,
        }
    }

    /// Materializes the unitary; refused above [`MAX_DENSE_DIM`].
    pub fn to_dense(&self) -> Result<DMatrix<C64>> {
        match &self.repr {
            Repr::Dense(u) => Ok(u.clone()),
            Repr::Swap(w) => {
                check_dense(w.dim())?;
                let mut out = DMatrix::from_element(w.dim(), w.dim(), ZERO);
                for j in 0..w.dim() {
                    out.set_column(j, &self.apply(&basis(w.dim(), j))?);
                }
                Ok(out)
            }
        }
    }

    /// `U x`.
    pub fn apply(&self, x: &DVector<C64>) -> Result<DVector<C64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(match &self.repr {
            Repr::Dense(u) => u * x,
            Repr::Swap(w) => w.apply(x),
        })
    }

    /// The designated block, read off the unitary column by column.
    pub fn block(&self) -> DMatrix<C64> {
        let s = self.system_dim;
        match &self.repr {
            Repr::Dense(u) => u.view((0, 0), (s, s)).into_owned(),
            Repr::Swap(w) => {
                let mut out = DMatrix::from_element(s, s, ZERO);
                for j in 0..s {
                    let col = w.apply(&basis(w.dim(), j));
                    out.set_column(j, &col.rows(0, s));
                }
                out
            }
        }
    }

    /// Bound on the spectral norm of `U†U − I`. Dense encodings return the
    /// Frobenius norm of the residual; the swap construction bounds it through
    /// its preparation unitary (the swap itself is a permutation).
    pub fn unitarity_deviation(&self) -> f64 {
        match &self.repr {
            Repr::Dense(u) => (u.adjoint() * u - DMatrix::identity(u.nrows(), u.ncols())).norm(),
            Repr::Swap(w) => {
                let e = w.prep_deviation();
                e + e * (1.0 + e)
            }
        }
    }

    /// Checks unitarity and block equality against the pinned tolerances.
    pub fn verify(&self) -> Result<Verification> {
        let v = Verification { unitarity: self.unitarity_deviation(), block: max_abs(&(self.block() - &self.target)) };
        if v.unitarity > UNITARITY_TOL {
            return Err(Error::Verification(v.unitarity));
        }
        if v.block > BLOCK_TOL {
            return Err(Error::Verification(v.block));
        }
        Ok(v)
    }
}

fn basis(dim: usize, j: usize) -> DVector<C64> {
    let mut v = DVector::from_element(dim, ZERO);
    v[j] = ONE;
    v
}

/// Encodes `ρ = Tr_A |Φ⟩⟨Φ|` from a purification over `A ⊗ B` (copy-major).
pub fn block_encode_purification(phi: &DVector<C64>, copy_dim: usize) -> Result<BlockEncoding> {
    if copy_dim == 0 || phi.is_empty() || phi.len() % copy_dim != 0 {
        return Err(Error::DimensionMismatch { expected: copy_dim, found: phi.len() });
    }
    let norm = phi.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NormViolation { norm });
    }
    let d = phi.len() / copy_dim;
    let mut target = DMatrix::from_element(d, d, ZERO);
    for a in 0..copy_dim {
        let v = phi.rows(a * d, d);
        target += &v * v.adjoint();
    }
    let w = SwapEncoding { prep: StatePrep::new(phi), copy_dim, system_dim: d };
    Ok(BlockEncoding { repr: Repr::Swap(w), ancilla_dim: copy_dim * d, system_dim: d, target, norm_bound: 1.0 })
}

/// Encodes the pipeline's reduced density operator through its purification.
pub fn block_encode_density(rho: &DensityOperator) -> Result<BlockEncoding> {
    let mut enc = block_encode_purification(&rho.purification(), rho.slot_dim())?;
    enc.target = rho.to_matrix();
    Ok(enc)
}

/// `I ⊗ P + X ⊗ (I − P)` with `P = |0⟩⟨0|_phase ⊗ I_slot`.
pub fn block_encode_projector(phase_dim: usize, slot_dim: usize) -> Result<BlockEncoding> {
    if phase_dim == 0 || slot_dim == 0 {
        return Err(Error::InvalidInput("projector dimensions must be positive".into()));
    }
    let d = phase_dim * slot_dim;
    check_dense(2 * d)?;
    let p = DMatrix::from_fn(d, d, |i, j| if i == j && i < slot_dim { ONE } else { ZERO });
    let q = DMatrix::identity(d, d) - &p;
    let mut u = DMatrix::from_element(2 * d, 2 * d, ZERO);
    u.view_mut((0, 0), (d, d)).copy_from(&p);
    u.view_mut((d, d), (d, d)).copy_from(&p);
    u.view_mut((0, d), (d, d)).copy_from(&q);
    u.view_mut((d, 0), (d, d)).copy_from(&q);
    Ok(BlockEncoding { repr: Repr::Dense(u), ancilla_dim: 2, system_dim: d, target: p, norm_bound: 1.0 })
}

/// Dilation `[[M, S], [S, −M]]` with `S = √(I − M²)` for a Hermitian
/// contraction `M`.
pub fn block_encode_hermitian(m: &DMatrix<C64>) -> Result<BlockEncoding> {
    let d = m.nrows();
    if d == 0 || m.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: m.ncols() });
    }
    check_dense(2 * d)?;
    if max_abs(&(m - m.adjoint())) > 1e-12 {
        return Err(Error::InvalidInput("observable is not Hermitian".into()));
    }
    let eig = m.clone().symmetric_eigen();
    let norm = eig.eigenvalues.amax();
    if norm > 1.0 + 1e-12 {
        return Err(Error::NormViolation { norm });
    }
    let roots = eig.eigenvalues.map(|mu| C64::new((1.0 - mu * mu).max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    let s = v * DMatrix::from_diagonal(&roots) * v.adjoint();
    let mut u = DMatrix::from_element(2 * d, 2 * d, ZERO);
    u.view_mut((0, 0), (d, d)).copy_from(m);
    u.view_mut((d, d), (d, d)).copy_from(&(-m));
    u.view_mut((0, d), (d, d)).copy_from(&s);
    u.view_mut((d, 0), (d, d)).copy_from(&s);
    Ok(BlockEncoding { repr: Repr::Dense(u), ancilla_dim: 2, system_dim: d, target: m.clone(), norm_bound: norm })
}

/// Encodes the Kronecker product of the targets with one use of each unitary,
/// permuting all ancillas ahead of all systems.
pub fn tensor_block_encoding(encodings: &[BlockEncoding]) -> Result<BlockEncoding> {
    let (first, rest) = encodings
        .split_first()
        .ok_or_else(|| Error::InvalidInput("no encodings to tensor".into()))?;
    let mut acc = first.clone();
    for next in rest {
        acc = tensor_pair(&acc, next)?;
    }
    Ok(acc)
}

fn tensor_pair(x: &BlockEncoding, y: &BlockEncoding) -> Result<BlockEncoding> {
    let dim = x.dim() * y.dim();
    check_dense(dim)?;
    let ux = x.to_dense()?;
    let uy = y.to_dense()?;
    let (a1, s1, a2, s2) = (x.ancilla_dim, x.system_dim, y.ancilla_dim, y.system_dim);
    // Kronecker index (a1, s1, a2, s2) → encoded index (a1, a2, s1, s2).
    let perm: Vec<usize> = (0..dim)
        .map(|p| {
            let (i2, r) = (p % s2, p / s2);
            let (b2, r) = (r % a2, r / a2);
            let (i1, b1) = (r % s1, r / s1);
            ((b1 * a2 + b2) * s1 + i1) * s2 + i2
        })
        .collect();
    let kron = ux.kronecker(&uy);
    let mut u = DMatrix::from_element(dim, dim, ZERO);
    for q in 0..dim {
        for p in 0..dim {
            u[(perm[p], perm[q])] = kron[(p, q)];
        }
    }
    Ok(BlockEncoding {
        repr: Repr::Dense(u),
        ancilla_dim: a1 * a2,
        system_dim: s1 * s2,
        target: x.target.kronecker(&y.target),
        norm_bound: x.norm_bound * y.norm_bound,
    })
}
