use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::fpmod::{free_map, submodule, CertifiedSequence, Module, ModuleMap, RelMatrix};
use crate::linalg::FpMatrix;

use crate::fpmod::{minimal_generators, Act};

/// `... -> free(g_1) -> free(g_0) -> M -> 0`, stored in free coordinates.
///
/// `diffs[i]` is the matrix of `free(g_{i+1}) -> free(g_i)` over the acting
/// algebra; `kernels[i]` spans (F_p columns) the kernel of the map out of
/// `free(g_i)`, which is the `(i+1)`-st syzygy.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    module: Arc<Module>,
    ranks: Vec<usize>,
    diffs: Vec<RelMatrix>,
    kernels: Vec<FpMatrix>,
    augmentation: FpMatrix,
    minimal: bool,
}

/// Generators of the submodule of `free(g)` spanned by the columns of `k`
/// chosen without radical reduction: basis vectors of `k` are added in order
/// while they are not in the submodule generated so far.
fn spanning_generators(alg: &Algebra, g: usize, k: &FpMatrix) -> Vec<Vec<u32>> {
    let p = alg.p();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut span = FpMatrix::zeros(p, k.rows(), 0);
    let mut rank = 0;
    for j in 0..k.cols() {
        if rank == k.cols() {
            break;
        }
        let v = FpMatrix::from_cols(p, k.rows(), &[k.col(j)]);
        let with = span.hstack(&v);
        if with.rank() == rank {
            continue;
        }
        let mut orbit = FpMatrix::zeros(p, k.rows(), 0);
        for b in 0..alg.dim() {
            orbit = orbit.hstack(&Act::Free(g).apply(alg, &alg.basis_vec(b), &v));
        }
        span = span.hstack(&orbit).image_cols();
        rank = span.cols();
        gens.push(k.col(j));
    }
    gens
}

impl FreeResolution {
    /// Resolution with `length` differentials. With `minimal`, generators
    /// are lifted from the top at every step.
    pub fn new(m: &Arc<Module>, length: usize, minimal: bool) -> FreeResolution {
        let alg = m.algebra();
        let n = alg.dim();
        let p = alg.p();
        let base = if minimal { m.minimized() } else { m.clone() };
        let augmentation = base.cover();
        let mut ranks = vec![base.gens()];
        let mut diffs = Vec::new();
        let mut kernels = vec![augmentation.kernel_cols()];
        for _ in 0..length {
            let g = *ranks.last().unwrap();
            let k = kernels.last().unwrap();
            let gens = if minimal {
                minimal_generators(alg, Act::Free(g), k)
            } else {
                spanning_generators(alg, g, k)
            };
            let d = RelMatrix::from_free_vectors(alg, g, &gens);
            let next = if gens.is_empty() {
                FpMatrix::zeros(p, 0, 0)
            } else {
                d.realize(alg).kernel_cols()
            };
            debug_assert_eq!(next.rows(), gens.len() * n);
            ranks.push(gens.len());
            diffs.push(d);
            kernels.push(next);
        }
        FreeResolution { module: m.clone(), ranks, diffs, kernels, augmentation, minimal }
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }
    pub fn length(&self) -> usize {
        self.diffs.len()
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }
    /// `free(g_i) -> free(g_{i-1})`, for `1 <= i <= length`.
    pub fn diff(&self, i: usize) -> &RelMatrix {
        &self.diffs[i - 1]
    }
    /// F_p matrix of `free(g_0) -> M`.
    pub fn augmentation(&self) -> &FpMatrix {
        &self.augmentation
    }
    /// Columns spanning the `i`-th syzygy inside `free(g_{i-1})`, `i >= 1`.
    pub fn syzygy_span(&self, i: usize) -> &FpMatrix {
        &self.kernels[i - 1]
    }

    /// The `i`-th syzygy as a module (`i = 0` gives `M`).
    pub fn syzygy(&self, i: usize) -> Arc<Module> {
        if i == 0 {
            return self.module.clone();
        }
        let m = &self.module;
        let free = Module::free(m.ring(), m.side(), self.ranks[i - 1]);
        submodule(&free, self.syzygy_span(i)).expect("kernels are submodules").module
    }

    pub fn free_module(&self, i: usize) -> Arc<Module> {
        Module::free(self.module.ring(), self.module.side(), self.ranks[i])
    }

    /// The resolution as maps `free(g_L) -> ... -> free(g_0) -> M`.
    pub fn maps(&self) -> Vec<ModuleMap> {
        let frees: Vec<Arc<Module>> = (0..self.ranks.len()).map(|i| self.free_module(i)).collect();
        let mut maps: Vec<ModuleMap> =
            (1..=self.length()).rev().map(|i| free_map(&frees[i], &frees[i - 1], self.diff(i))).collect();
        let cover = ModuleMap::new(&frees[0], &self.module, self.augmentation.clone()).expect("cover is linear");
        maps.push(cover);
        maps
    }

    /// Certifies `0 -> Omega^{L+1} -> free(g_L) -> ... -> free(g_0) -> M -> 0`.
    pub fn certify(&self) -> Result<CertifiedSequence> {
        let mut maps = self.maps();
        let last = self.length();
        let top = self.free_module(last);
        let syz = submodule(&top, &self.kernels[last])?;
        maps.insert(0, syz.inclusion);
        let mut seq = CertifiedSequence::bounded(&maps)?;
        seq.tag_free_objects();
        Ok(seq)
    }
}

pub fn free_resolution(m: &Arc<Module>, length: usize, minimal: bool) -> FreeResolution {
    FreeResolution::new(m, length, minimal)
}

/// `Omega^n M` from the minimal resolution.
pub fn syzygy(m: &Arc<Module>, n: usize) -> Arc<Module> {
    if n == 0 {
        return m.clone();
    }
    FreeResolution::new(m, n - 1, true).syzygy(n)
}
