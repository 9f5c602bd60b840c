//! Free resolutions, Ext into the ring, transposes, the evaluation map into
//! the double dual and the bounded dimension tests built on them.

mod resolution;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Ring, Side};
use crate::error::{Error, Result};
use crate::fpmod::{
    dual, is_projective, iso_probe, quotient_by, submodule, CertifiedSequence, Dual, IsoVerdict, Module, ModuleMap,
    RelMatrix,
};
use crate::linalg::FpMatrix;

pub use resolution::{free_resolution, syzygy, FreeResolution};

/// A dimension known exactly, or known to exceed a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bounded {
    Exact(usize),
    Above(usize),
}

impl Bounded {
    pub fn exact(self) -> Option<usize> {
        match self {
            Bounded::Exact(d) => Some(d),
            Bounded::Above(_) => None,
        }
    }
}

impl fmt::Display for Bounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bounded::Exact(d) => write!(f, "= {d}"),
            Bounded::Above(b) => write!(f, "> {b}"),
        }
    }
}

/// `Ext^i(M, R)`, a module on the other side.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub value: Arc<Module>,
    pub dim: usize,
}

/// Dimensions of `Ext^i(M, R)` for `0 <= i <= max_degree`.
pub fn ext_dims(m: &Arc<Module>, max_degree: usize) -> Vec<usize> {
    ext_dims_from(&FreeResolution::new(m, max_degree + 1, true), max_degree)
}

/// Same, from a given resolution of length at least `max_degree + 1`.
pub fn ext_dims_from(res: &FreeResolution, max_degree: usize) -> Vec<usize> {
    assert!(res.length() > max_degree, "resolution too short");
    let m = res.module();
    let opp = m.ring().acting(m.side().flip());
    let n = opp.dim();
    let ranks: Vec<usize> = (1..=max_degree + 1).map(|i| res.diff(i).dual().realize(opp).rank()).collect();
    (0..=max_degree)
        .map(|i| {
            let incoming = if i == 0 { 0 } else { ranks[i - 1] };
            res.ranks()[i] * n - ranks[i] - incoming
        })
        .collect()
}

/// `Ext^i(M, R)` with its module structure, as a subquotient of the dual of
/// the `i`-th term of the minimal resolution.
pub fn ext(m: &Arc<Module>, i: usize) -> ExtGroup {
    ext_from(&FreeResolution::new(m, i + 1, true), i)
}

pub fn ext_from(res: &FreeResolution, i: usize) -> ExtGroup {
    let m = res.module();
    let side = m.side().flip();
    let opp = m.ring().acting(side);
    let free = Module::free(m.ring(), side, res.ranks()[i]);
    let cocycles = res.diff(i + 1).dual().realize(opp).kernel_cols();
    let z = submodule(&free, &cocycles).expect("kernels are submodules");
    let value = if i == 0 {
        z.module
    } else {
        let b = res.diff(i).dual().realize(opp);
        let in_z = z.inclusion.matrix().solve_matrix(&b).expect("coboundaries are cocycles");
        quotient_by(&z.module, &in_z).expect("images are submodules").module
    };
    ExtGroup { degree: i, dim: value.dim(), value }
}

/// `Coker(f*)` for the presentation `free(m) -> free(g) -> M -> 0` given by `rel`.
pub fn transpose_of_presentation(ring: &Arc<Ring>, side: Side, rel: &RelMatrix) -> Result<Arc<Module>> {
    Module::from_presentation(ring, side.flip(), rel.dual())
}

/// The transpose built from the minimal presentation.
pub fn transpose(m: &Arc<Module>) -> Arc<Module> {
    let base = m.minimized();
    transpose_of_presentation(m.ring(), m.side(), base.relations()).expect("dual presentation is valid")
}

/// The evaluation map `M -> M**` with the duals it was built from.
#[derive(Clone, Debug)]
pub struct Sigma {
    pub map: ModuleMap,
    pub dual: Dual,
    pub double_dual: Dual,
}

impl Sigma {
    pub fn is_injective(&self) -> bool {
        self.map.is_injective()
    }
    pub fn is_bijective(&self) -> bool {
        self.map.is_iso()
    }
    pub fn kernel_dim(&self) -> usize {
        self.map.src().dim() - self.map.rank()
    }
    pub fn cokernel_dim(&self) -> usize {
        self.map.tgt().dim() - self.map.rank()
    }
}

pub fn sigma(m: &Arc<Module>) -> Sigma {
    let d1 = dual(m);
    let d2 = dual(&d1.module);
    let ms = &d1.module;
    let p = m.p();
    let n = m.algebra().dim();
    // the value of x at generator j of M* is G_j x, G_j the functional
    let functionals: Vec<FpMatrix> = (0..ms.dim()).map(|h| d1.functional(h)).collect();
    let mut stacked = FpMatrix::zeros(p, ms.gens() * n, m.dim());
    for j in 0..ms.gens() {
        let c = ms.gen_images().col(j);
        let mut g = FpMatrix::zeros(p, n, m.dim());
        for (f, &ch) in functionals.iter().zip(&c) {
            if ch != 0 {
                g.add_scaled(ch, f);
            }
        }
        stacked.set_block(j * n, 0, &g);
    }
    let mat = d2.embedding.matrix().solve_matrix(&stacked).expect("evaluation lands in the double dual");
    let map = ModuleMap::new(m, &d2.module, mat).expect("evaluation is linear");
    Sigma { map, dual: d1, double_dual: d2 }
}

/// `0 -> Ext^1(Tr M, R) -> M -> M** -> Ext^2(Tr M, R) -> 0`.
#[derive(Clone, Debug)]
pub struct StarSequence {
    pub sequence: CertifiedSequence,
    pub sigma: Sigma,
    /// Dimensions of `Ext^1(Tr M, R)` and `Ext^2(Tr M, R)`.
    pub ext_dims: [usize; 2],
    /// Whether the kernel and cokernel of sigma were matched to the Ext
    /// modules by an explicit isomorphism.
    pub values: [IsoVerdict; 2],
}

impl StarSequence {
    pub fn dims_match(&self) -> bool {
        self.ext_dims == [self.sigma.kernel_dim(), self.sigma.cokernel_dim()]
    }
}

pub fn star_sequence(m: &Arc<Module>, seed: u64) -> Result<StarSequence> {
    let s = sigma(m);
    let k = crate::fpmod::kernel(&s.map);
    let c = crate::fpmod::cokernel(&s.map);
    let tr = transpose(m);
    let res = FreeResolution::new(&tr, 3, true);
    let e1 = ext_from(&res, 1);
    let e2 = ext_from(&res, 2);
    let maps = [k.inclusion.clone(), s.map.clone(), c.projection.clone()];
    let mut sequence = CertifiedSequence::bounded(&maps)?;
    sequence.tag_free_objects();
    let values = [iso_probe(&e1.value, &k.module, seed), iso_probe(&e2.value, &c.module, seed ^ 0x5eed)];
    for v in &values {
        if let IsoVerdict::NotIsomorphic(why) = v {
            return Err(Error::Failure(format!("Ext of the transpose differs from the sigma (co)kernel: {why}")));
        }
    }
    Ok(StarSequence { sequence, sigma: s, ext_dims: [e1.dim, e2.dim], values })
}

/// `Ext^i(Tr M, R)` for `1 <= i <= n` and the evaluation-map cross-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionfreeVerdict {
    pub n: usize,
    pub holds: bool,
    /// `table[i-1] = dim Ext^i(Tr M, R)`, at least two entries.
    pub table: Vec<usize>,
    pub sigma_injective: bool,
    pub sigma_bijective: bool,
}

impl TorsionfreeVerdict {
    /// Torsionless iff 1-torsionfree, reflexive iff 2-torsionfree.
    pub fn consistent(&self) -> bool {
        (self.table[0] == 0) == self.sigma_injective
            && (self.table[0] == 0 && self.table[1] == 0) == self.sigma_bijective
    }
}

pub fn n_torsionfree(m: &Arc<Module>, n: usize) -> Result<TorsionfreeVerdict> {
    if n == 0 {
        return Err(Error::OutOfRange("n-torsionfree needs n >= 1".into()));
    }
    let tr = transpose(m);
    let top = n.max(2);
    let dims = ext_dims(&tr, top);
    let table = dims[1..=top].to_vec();
    let s = sigma(m);
    Ok(TorsionfreeVerdict {
        n,
        holds: table[..n].iter().all(|&d| d == 0),
        table,
        sigma_injective: s.is_injective(),
        sigma_bijective: s.is_bijective(),
    })
}

/// Smallest `d <= bound` with `Omega^d M` projective.
pub fn pd_bounded(m: &Arc<Module>, bound: usize) -> Bounded {
    let res = FreeResolution::new(m, bound.saturating_sub(1), true);
    for d in 0..=bound {
        if is_projective(&res.syzygy(d)).is_projective() {
            return Bounded::Exact(d);
        }
    }
    Bounded::Above(bound)
}

/// `R / rad R` on the given side.
pub fn top_of_ring(ring: &Arc<Ring>, side: Side) -> Arc<Module> {
    let alg = ring.acting(side);
    let rel = RelMatrix::new(alg.radical().len(), 1, alg.radical().to_vec());
    Module::from_presentation(ring, side, rel).expect("radical elements are algebra elements")
}

/// Injective dimension of the ring as a module on `side`: the least `d`
/// with `Ext^{d+1}(R / rad R, R) = 0`.
pub fn injdim_bounded(ring: &Arc<Ring>, side: Side, bound: usize) -> Bounded {
    let dims = ext_dims(&top_of_ring(ring, side), bound + 1);
    match (0..=bound).find(|&d| dims[d + 1] == 0) {
        Some(d) => Bounded::Exact(d),
        None => Bounded::Above(bound),
    }
}

#[cfg(test)]
mod tests;
