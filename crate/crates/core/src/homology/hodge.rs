//! Combinatorial Hodge Laplacians embedded into the full k-slot space.
//!
//! The slot space has one basis vector per potential k-simplex on `n`
//! vertices (`C_{k,n}` of them, in ascending word order). On the slots of
//! S_k the operator is `∂_kᵀ∂_k + ∂_{k+1}∂_{k+1}ᵀ`. What happens on the
//! remaining slots depends on the [`Convention`]:
//!
//! * `Restricted`: zero rows and columns, so every non-simplex slot is a
//!   kernel state.
//! * `Dual`: slots that are simplices of the complement graph's clique
//!   complex carry that complex's own Laplacian. Slots belonging to neither
//!   complex (possible only for k ≥ 2) get the top eigenvalue on the
//!   diagonal, which places them at eigenphase π under the default phase
//!   scaling, so they never read as kernel. At k = 0 every slot is a
//!   vertex of the complex and the complement block is empty.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::boundary::boundary_matrix;
use super::spectral::{kernel_threshold, Eigensystem, SpectralSummary};
use crate::complex::{enumerate_slots, slot_index, CliqueComplex, SimplexWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    Restricted,
    Dual,
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "restricted" => Ok(Convention::Restricted),
            "dual" => Ok(Convention::Dual),
            _ => Err(Error::InvalidInput(format!("unknown convention '{s}'"))),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convention::Restricted => "restricted",
            Convention::Dual => "dual",
        })
    }
}

/// Which invariant subspace of the slot space a block covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Slots in S_k.
    Complex,
    /// Slots outside S_k: zero block (restricted) or the complement complex (dual).
    Complement,
    /// Dual only: slots in neither complex.
    Gapped,
}

/// One diagonal block of the operator and its eigensystem.
#[derive(Clone, Debug)]
pub struct SpectralBlock {
    pub kind: BlockKind,
    /// Slot indices covered, ascending.
    pub slots: Vec<usize>,
    pub matrix: DMatrix<f64>,
    pub eigen: Eigensystem,
}

/// Δ_k on the full `C_{k,n}`-dimensional slot space.
#[derive(Clone, Debug)]
pub struct HodgeOperator {
    k: usize,
    n: usize,
    convention: Convention,
    slots: Vec<SimplexWord>,
    member: Vec<bool>,
    blocks: Vec<SpectralBlock>,
    /// slot index -> (block, position within block)
    locate: Vec<(usize, usize)>,
}

/// Δ_k restricted to S_k, in the order of `complex.simplices(k)`.
pub fn complex_laplacian(complex: &CliqueComplex, k: usize) -> Result<DMatrix<f64>> {
    if !complex.is_built(k + 1) {
        return Err(Error::Unbuilt(k + 1));
    }
    let down = boundary_matrix(complex, k)?.to_matrix();
    let up = boundary_matrix(complex, k + 1)?.to_matrix();
    Ok(down.transpose() * &down + &up * up.transpose())
}

fn zero_block(kind: BlockKind, slots: Vec<usize>) -> SpectralBlock {
    let d = slots.len();
    SpectralBlock {
        kind,
        slots,
        matrix: DMatrix::zeros(d, d),
        eigen: Eigensystem { values: vec![0.0; d], vectors: DMatrix::identity(d, d) },
    }
}

fn diagonal_block(kind: BlockKind, slots: Vec<usize>, value: f64) -> SpectralBlock {
    let d = slots.len();
    SpectralBlock {
        kind,
        slots,
        matrix: DMatrix::identity(d, d) * value,
        eigen: Eigensystem { values: vec![value; d], vectors: DMatrix::identity(d, d) },
    }
}

fn laplacian_block(kind: BlockKind, complex: &CliqueComplex, k: usize) -> Result<SpectralBlock> {
    let slots = complex.simplices(k)?.iter().map(|&s| slot_index(s)).collect();
    let matrix = complex_laplacian(complex, k)?;
    let eigen = Eigensystem::new(&matrix)?;
    Ok(SpectralBlock { kind, slots, matrix, eigen })
}

impl HodgeOperator {
    /// Builds Δ_k under `convention`. The complex must be built through k+1.
    pub fn new(complex: &CliqueComplex, k: usize, convention: Convention) -> Result<Self> {
        let n = complex.n();
        let slots = enumerate_slots(n, k)?;
        let total = slots.len();
        let mut member = vec![false; total];
        for &s in complex.simplices(k)? {
            member[slot_index(s)] = true;
        }

        let mut blocks = vec![laplacian_block(BlockKind::Complex, complex, k)?];
        let outside: Vec<usize> = (0..total).filter(|&i| !member[i]).collect();
        match convention {
            Convention::Restricted => blocks.push(zero_block(BlockKind::Complement, outside)),
            Convention::Dual => {
                // Vertices belong to both complexes, so at k = 0 nothing is left outside S_k.
                let co_block = if k == 0 {
                    zero_block(BlockKind::Complement, Vec::new())
                } else {
                    laplacian_block(BlockKind::Complement, &complex.complement()?, k)?
                };
                let mut in_co = vec![false; total];
                for &i in &co_block.slots {
                    in_co[i] = true;
                }
                let gapped: Vec<usize> = outside.into_iter().filter(|&i| !in_co[i]).collect();
                let top = blocks[0].eigen.lambda_max().max(co_block.eigen.lambda_max());
                let gap = if top > 0.0 { top } else { 1.0 };
                blocks.push(co_block);
                blocks.push(diagonal_block(BlockKind::Gapped, gapped, gap));
            }
        }

        let mut locate = vec![(usize::MAX, 0); total];
        for (b, block) in blocks.iter().enumerate() {
            for (pos, &slot) in block.slots.iter().enumerate() {
                locate[slot] = (b, pos);
            }
        }
        debug_assert!(locate.iter().all(|&(b, _)| b != usize::MAX));
        Ok(Self { k, n, convention, slots, member, blocks, locate })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Slot words in ascending order; index = slot index.
    pub fn slots(&self) -> &[SimplexWord] {
        &self.slots
    }

    /// C_{k,n}.
    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn is_member(&self, slot: usize) -> bool {
        self.member[slot]
    }

    /// |S_k| for restricted, C_{k,n} for dual.
    pub fn support_size(&self) -> usize {
        match self.convention {
            Convention::Restricted => self.block(BlockKind::Complex).slots.len(),
            Convention::Dual => self.dim(),
        }
    }

    pub fn blocks(&self) -> &[SpectralBlock] {
        &self.blocks
    }

    pub fn block(&self, kind: BlockKind) -> &SpectralBlock {
        self.blocks.iter().find(|b| b.kind == kind).expect("block present for this convention")
    }

    /// (block index, position) of a slot.
    pub fn locate(&self, slot: usize) -> (usize, usize) {
        self.locate[slot]
    }

    /// The dense `C_{k,n} × C_{k,n}` matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        for b in &self.blocks {
            for (i, &si) in b.slots.iter().enumerate() {
                for (j, &sj) in b.slots.iter().enumerate() {
                    out[(si, sj)] = b.matrix[(i, j)];
                }
            }
        }
        out
    }

    /// Largest eigenvalue over the whole slot space.
    pub fn lambda_max(&self) -> f64 {
        self.blocks.iter().map(|b| b.eigen.lambda_max()).fold(0.0, f64::max)
    }

    /// Cutoff below which an eigenvalue counts as zero.
    pub fn kernel_cutoff(&self, zero_tol: f64) -> f64 {
        kernel_threshold(self.lambda_max(), zero_tol)
    }

    /// Orthogonal projector onto the kernel, over the full slot space.
    pub fn kernel_projector(&self, zero_tol: f64) -> DMatrix<f64> {
        let cut = self.kernel_cutoff(zero_tol);
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        for b in &self.blocks {
            for (j, &lambda) in b.eigen.values.iter().enumerate() {
                if lambda >= cut {
                    continue;
                }
                let v = b.eigen.vectors.column(j);
                for (p, &sp) in b.slots.iter().enumerate() {
                    for (q, &sq) in b.slots.iter().enumerate() {
                        out[(sp, sq)] += v[p] * v[q];
                    }
                }
            }
        }
        out
    }

    /// Spectrum of the S_k block (the Laplacian of the complex itself).
    /// This is where κ of the complexity formulas is read from.
    pub fn spectral_summary(&self, zero_tol: f64) -> SpectralSummary {
        self.block_summary(BlockKind::Complex, zero_tol)
    }

    /// Spectrum of one block, with the kernel cutoff taken relative to the
    /// operator's global top eigenvalue.
    pub fn block_summary(&self, kind: BlockKind, zero_tol: f64) -> SpectralSummary {
        let values = self.block(kind).eigen.values.clone();
        let mut s = SpectralSummary::from_eigenvalues(values, zero_tol);
        let cut = self.kernel_cutoff(zero_tol);
        s.kernel_dim = s.eigenvalues.iter().filter(|&&l| l < cut).count();
        s.lambda_min_nonzero = s.eigenvalues.iter().copied().find(|&l| l >= cut);
        s.kappa = s.lambda_min_nonzero.map(|m| s.lambda_max / m);
        s
    }

    /// Spectrum over the whole slot space.
    pub fn full_spectral_summary(&self, zero_tol: f64) -> SpectralSummary {
        let values = self.blocks.iter().flat_map(|b| b.eigen.values.iter().copied()).collect();
        SpectralSummary::from_eigenvalues(values, zero_tol)
    }
}
