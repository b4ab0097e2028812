use alloc::vec::Vec;

use crate::series::MultiIndex;

/// Multipliers of total degree at most `max_degree`.
///
/// The polynomial spaces indexed by `n` in the one-variable literature
/// correspond to `max_degree = 2n` here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    pub max_degree: u32,
}

impl BasisSpec {
    pub const fn new(max_degree: u32) -> Self {
        Self { max_degree }
    }

    /// `(D+1)(D+2)/2`.
    #[allow(clippy::len_without_is_empty)]
    pub const fn len(self) -> usize {
        let d = self.max_degree as usize;
        (d + 1) * (d + 2) / 2
    }

    pub fn contains(self, idx: MultiIndex) -> bool {
        idx.total() <= self.max_degree
    }
}

/// All `(k, l)` with `k + l <= D`, in canonical order.
pub fn enumerate_basis(spec: BasisSpec) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(spec.len());
    for n in 0..=spec.max_degree {
        for k in (0..=n).rev() {
            out.push(MultiIndex::new(k, n - k));
        }
    }
    out
}
