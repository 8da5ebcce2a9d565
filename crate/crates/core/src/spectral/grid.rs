//! Truncated Fourier lattices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dispersion::WaveVector;
use crate::error::{Error, Result};

/// Integer lattice coordinates (radial index, zonal index).
pub type LatticeIndex = (i32, i32);

/// Full n×n lattice with k = spacing·(i, j), i, j ∈ [−n/2, n/2), and the
/// 2/3-rule mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    pub n_modes: usize,
    pub k_max: f64,
    /// Lattice spacing 2·k_max/n.
    pub spacing: f64,
    pub lattice: Vec<LatticeIndex>,
    pub modes: Vec<WaveVector>,
    /// `true` where the mode is retained.
    pub dealias_mask: Vec<bool>,
}

/// Builds the lattice. A mode is retained when both |components| are at most
/// (2/3)·k_max, i.e. 3|i| ≤ n.
pub fn build_mode_grid(n_modes: usize, k_max: f64) -> Result<ModeGrid> {
    if n_modes < 8 || !n_modes.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "n_modes must be even and at least 8, got {n_modes}"
        )));
    }
    if !(k_max.is_finite() && k_max > 0.0) {
        return Err(Error::InvalidParameter {
            name: "k_max",
            value: k_max,
            reason: "must be finite and positive",
        });
    }
    let spacing = 2.0 * k_max / n_modes as f64;
    let half = (n_modes / 2) as i32;
    let mut lattice = Vec::with_capacity(n_modes * n_modes);
    for i in -half..half {
        for j in -half..half {
            lattice.push((i, j));
        }
    }
    let n = n_modes as i32;
    let dealias_mask = lattice
        .iter()
        .map(|&(i, j)| 3 * i.abs() <= n && 3 * j.abs() <= n)
        .collect();
    let modes = lattice
        .iter()
        .map(|&(i, j)| WaveVector::new(spacing * i as f64, spacing * j as f64))
        .collect();
    Ok(ModeGrid {
        n_modes,
        k_max,
        spacing,
        lattice,
        modes,
        dealias_mask,
    })
}

impl ModeGrid {
    /// The retained modes as a [`ModeSet`].
    pub fn retained(&self) -> ModeSet {
        let indices = self
            .lattice
            .iter()
            .zip(&self.dealias_mask)
            .filter_map(|(idx, keep)| keep.then_some(*idx))
            .collect();
        ModeSet::new(self.spacing, indices).expect("dealiased lattice is symmetric")
    }
}

/// An ordered set of lattice modes closed under k → −k.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    pub spacing: f64,
    indices: Vec<LatticeIndex>,
    vectors: Vec<WaveVector>,
    conj: Vec<usize>,
    lookup: HashMap<LatticeIndex, usize>,
}

impl ModeSet {
    /// Sorts and deduplicates `indices`; fails unless every −k is present.
    pub fn new(spacing: f64, mut indices: Vec<LatticeIndex>) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidParameter {
                name: "spacing",
                value: spacing,
                reason: "must be finite and positive",
            });
        }
        indices.sort_unstable();
        indices.dedup();
        let lookup: HashMap<LatticeIndex, usize> = indices
            .iter()
            .enumerate()
            .map(|(n, idx)| (*idx, n))
            .collect();
        let conj = indices
            .iter()
            .map(|&(i, j)| {
                lookup.get(&(-i, -j)).copied().ok_or_else(|| {
                    Error::InvalidArgument(format!("mode set lacks the conjugate of ({i}, {j})"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let vectors = indices
            .iter()
            .map(|&(i, j)| WaveVector::new(spacing * i as f64, spacing * j as f64))
            .collect();
        Ok(Self {
            spacing,
            indices,
            vectors,
            conj,
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[LatticeIndex] {
        &self.indices
    }

    pub fn vectors(&self) -> &[WaveVector] {
        &self.vectors
    }

    pub fn vector(&self, n: usize) -> WaveVector {
        self.vectors[n]
    }

    /// Position of −k for the mode at position `n`.
    pub fn conj(&self, n: usize) -> usize {
        self.conj[n]
    }

    pub fn position(&self, idx: LatticeIndex) -> Option<usize> {
        self.lookup.get(&idx).copied()
    }

    /// Largest |component| index.
    pub fn max_index(&self) -> i32 {
        self.indices
            .iter()
            .map(|&(i, j)| i.abs().max(j.abs()))
            .max()
            .unwrap_or(0)
    }
}
