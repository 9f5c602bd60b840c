//! Seeded generators of random instances for sweeps: modules, Gorenstein
//! projective modules, Gorenstein projective presentations and chains.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Ring, Side};
use crate::error::Result;
use crate::fpmod::{direct_sum, free_cover, kernel, Module, ModuleMap, RelMatrix};
use crate::homology::syzygy;
use crate::linalg::FpMatrix;

use super::{gp_test, GPresentation, GpMode};

/// A random cyclic-or-small module given by a random presentation.
pub fn random_module<R: Rng>(ring: &Arc<Ring>, side: Side, max_gens: usize, rng: &mut R) -> Arc<Module> {
    let alg = ring.acting(side);
    let (p, n) = (alg.p(), alg.dim());
    let g = rng.gen_range(1..=max_gens.max(1));
    let rows = rng.gen_range(0..=g + 1);
    let entries = (0..rows * g).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
    Module::from_presentation(ring, side, RelMatrix::new(rows, g, entries)).expect("random entries are valid")
}

/// Random element of `Hom(src, tgt)`.
pub fn random_hom<R: Rng>(src: &Arc<Module>, tgt: &Arc<Module>, rng: &mut R) -> Result<ModuleMap> {
    let p = src.p();
    let mut mat = FpMatrix::zeros(p, tgt.dim(), src.dim());
    for h in src.hom_basis(tgt)? {
        mat.add_scaled(rng.gen_range(0..p), &h);
    }
    ModuleMap::new(src, tgt, mat)
}

/// Gorenstein projective modules to draw from: free modules and high
/// syzygies of random modules.
#[derive(Clone, Debug)]
pub struct GpPool {
    pub modules: Vec<Arc<Module>>,
}

impl GpPool {
    pub fn new<R: Rng>(ring: &Arc<Ring>, side: Side, mode: &GpMode, size: usize, rng: &mut R) -> Result<GpPool> {
        let mut modules = vec![Module::free(ring, side, 1)];
        let mut tries = 0;
        while modules.len() < size && tries < 8 * size {
            tries += 1;
            let g = random_gp_module(ring, side, mode, rng)?;
            if !g.is_zero() && !modules.iter().any(|m| m.same_rep(&g)) {
                modules.push(g);
            }
        }
        Ok(GpPool { modules })
    }

    pub fn pick<R: Rng>(&self, rng: &mut R) -> Arc<Module> {
        self.modules[rng.gen_range(0..self.modules.len())].clone()
    }
}

/// `Omega^d` of a random module, `d` the number of degrees the mode checks;
/// falls back to a free module when the syzygy does not certify.
pub fn random_gp_module<R: Rng>(ring: &Arc<Ring>, side: Side, mode: &GpMode, rng: &mut R) -> Result<Arc<Module>> {
    let m = random_module(ring, side, 2, rng);
    let g = syzygy(&m, mode.degrees().max(1));
    if gp_test(&g, mode)?.passes() {
        Ok(g.minimized())
    } else {
        Ok(Module::free(ring, side, 1))
    }
}

/// `free(g) + G -> K` onto a given module, with a random map on `G`.
fn cover_plus<R: Rng>(k: &Arc<Module>, g: &Arc<Module>, rng: &mut R) -> Result<ModuleMap> {
    let cover = free_cover(k);
    let extra = random_hom(g, k, rng)?;
    let sum = direct_sum(k.ring(), k.side(), &[cover.src().clone(), g.clone()])?;
    ModuleMap::new(&sum.module, k, cover.matrix().hstack(extra.matrix()))
}

/// A Gorenstein projective presentation `F_1 + G_1 -> F_0 + G_0 -> A -> 0`.
pub fn random_gp_presentation<R: Rng>(a: &Arc<Module>, pool: &GpPool, mode: &GpMode, rng: &mut R) -> Result<GPresentation> {
    let e = cover_plus(a, &pool.pick(rng), rng)?;
    let k = kernel(&e);
    let onto_k = cover_plus(&k.module, &pool.pick(rng), rng)?;
    let g = k.inclusion.compose(&onto_k)?;
    GPresentation::new(g, e, mode)
}

/// Maps of `0 -> A -> G_{n-1} -> ... -> G_0 -> M -> 0` with every `G_i` a
/// free module plus a member of the pool.
pub fn random_gp_resolution<R: Rng>(m: &Arc<Module>, n: usize, pool: &GpPool, rng: &mut R) -> Result<Vec<ModuleMap>> {
    let mut maps: Vec<ModuleMap> = Vec::new();
    let mut target = m.clone();
    let mut into_target: Option<ModuleMap> = None;
    for _ in 0..n {
        let onto = cover_plus(&target, &pool.pick(rng), rng)?;
        let onto = match &into_target {
            Some(i) => i.compose(&onto)?,
            None => onto,
        };
        let k = kernel(&onto);
        maps.push(onto);
        target = k.module.clone();
        into_target = Some(k.inclusion);
    }
    maps.push(into_target.unwrap_or_else(|| ModuleMap::identity(m)));
    maps.reverse();
    Ok(maps)
}
