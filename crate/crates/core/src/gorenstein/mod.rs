//! Gorenstein projective certification, Gorenstein transposes and the
//! constructions relating Gorenstein syzygies, projective syzygies and
//! transposes.
//!
//! A module `G` is certified Gorenstein projective through the vanishing of
//! `Ext^i(G, R)` and `Ext^i(Tr G, R)`: in degrees `1..=d` when the ring has
//! verified injective dimension `d` on both sides (a complete test), or in
//! degrees `1..=B` otherwise (a test up to the bound).

mod construct;
mod sweep;
mod transpose;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_ring, InjDim, Ring, Side};
use crate::error::{Error, Result};
use crate::fpmod::{
    cokernel, dual, is_exact, CertifiedSequence, Module, ModuleMap, ObjectTag, ProjectivityVerdict, Quotient,
    RelMatrix,
};
use crate::homology::{ext_dims, injdim_bounded, syzygy, transpose, Bounded, FreeResolution};
use crate::linalg::FpMatrix;

pub use sweep::{random_gp_module, random_gp_presentation, random_gp_resolution, random_hom, random_module, GpPool};
pub use transpose::{
    construct_cor32, construct_prop36, cor35_report, lemma21_check, prop34_report, thm31_embed, thm31_realize,
    Clause, Cor32Output, Embedding31, Evidence, Prop36Output, Realized31, TheoremReport,
};
pub use construct::{
    construct_cor25, construct_prop22, construct_thm24_bwd, construct_thm24_fwd, construct_thm26, precover_check,
    Cor25Output, PrecoverEntry, PrecoverReport, Prop22Output, Thm24Output, Thm26Output,
};

/// Default bound for Ext computations and bounded tests.
pub const DEFAULT_BOUND: usize = 6;

#[derive(Clone, Debug)]
enum ModeKind {
    Ring(usize),
    Bounded(usize),
}

/// How Gorenstein projectivity is decided.
#[derive(Clone, Debug)]
pub struct GpMode {
    kind: ModeKind,
    ring: Option<Arc<Ring>>,
}

impl GpMode {
    /// Complete test for a ring whose injective dimension on both sides is
    /// verified to be at most `d`.
    pub fn ring(ring: &Arc<Ring>, d: usize) -> Result<GpMode> {
        for side in [Side::Left, Side::Right] {
            match injdim_bounded(ring, side, d) {
                Bounded::Exact(_) => {}
                Bounded::Above(_) => {
                    return Err(Error::ModeMismatch(format!(
                        "injective dimension of {} on the {side} exceeds {d}",
                        ring.base().name()
                    )))
                }
            }
        }
        Ok(GpMode { kind: ModeKind::Ring(d), ring: Some(ring.clone()) })
    }

    pub fn bounded(b: usize) -> GpMode {
        GpMode { kind: ModeKind::Bounded(b), ring: None }
    }

    /// Ring mode when the declared injective dimension is finite and
    /// verifies, otherwise bounded mode with the default bound.
    pub fn auto(ring: &Arc<Ring>) -> GpMode {
        if let Some(InjDim::Finite(d)) = ring.base().declared_injdim() {
            if let Ok(m) = GpMode::ring(ring, d) {
                return m;
            }
        }
        GpMode::bounded(DEFAULT_BOUND)
    }

    /// Number of Ext degrees checked.
    pub fn degrees(&self) -> usize {
        match self.kind {
            ModeKind::Ring(d) | ModeKind::Bounded(d) => d,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.kind, ModeKind::Ring(_))
    }

    pub fn label(&self) -> String {
        match self.kind {
            ModeKind::Ring(d) => format!("ring({d})"),
            ModeKind::Bounded(b) => format!("bounded({b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GpVerdict {
    Gp,
    /// First degree with nonzero Ext, and whether it was `Ext(Tr G, R)`.
    NotGp { degree: usize, transpose: bool },
    GpUpToBound(usize),
}

impl fmt::Display for GpVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GpVerdict::Gp => write!(f, "GP"),
            GpVerdict::NotGp { degree, transpose } => {
                write!(f, "not-GP (degree {degree}{})", if *transpose { ", transpose" } else { "" })
            }
            GpVerdict::GpUpToBound(b) => write!(f, "GP-up-to-bound({b})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GpCertificate {
    pub module: Arc<Module>,
    pub mode: String,
    /// `dim Ext^i(G, R)` for `i = 1..=degrees`.
    pub ext_module: Vec<usize>,
    /// `dim Ext^i(Tr G, R)` for `i = 1..=degrees`.
    pub ext_transpose: Vec<usize>,
    pub verdict: GpVerdict,
}

impl GpCertificate {
    /// GP, definitively or up to the bound.
    pub fn passes(&self) -> bool {
        !matches!(self.verdict, GpVerdict::NotGp { .. })
    }

    pub fn tag(&self) -> ObjectTag {
        ObjectTag::Gp { bound: self.ext_module.len() }
    }
}

pub fn gp_test(m: &Arc<Module>, mode: &GpMode) -> Result<GpCertificate> {
    if let Some(r) = &mode.ring {
        if !same_ring(r, m.ring()) {
            return Err(Error::ModeMismatch("ring mode was verified for a different ring".into()));
        }
    }
    let d = mode.degrees();
    let (ext_module, ext_transpose) = if d == 0 {
        (Vec::new(), Vec::new())
    } else {
        (ext_dims(m, d)[1..].to_vec(), ext_dims(&transpose(m), d)[1..].to_vec())
    };
    let first = |t: &[usize]| t.iter().position(|&x| x != 0).map(|i| i + 1);
    let verdict = match (first(&ext_module), first(&ext_transpose)) {
        (Some(i), Some(j)) if j < i => GpVerdict::NotGp { degree: j, transpose: true },
        (Some(i), _) => GpVerdict::NotGp { degree: i, transpose: false },
        (None, Some(j)) => GpVerdict::NotGp { degree: j, transpose: true },
        (None, None) if mode.is_complete() => GpVerdict::Gp,
        (None, None) => GpVerdict::GpUpToBound(d),
    };
    Ok(GpCertificate { module: m.clone(), mode: mode.label(), ext_module, ext_transpose, verdict })
}

/// Certifies `m` or fails with the verdict.
pub fn require_gp(m: &Arc<Module>, mode: &GpMode) -> Result<GpCertificate> {
    let c = gp_test(m, mode)?;
    if c.passes() {
        Ok(c)
    } else {
        Err(Error::Failure(format!("module expected to be Gorenstein projective: {}", c.verdict)))
    }
}

/// `0 -> G -> P -> G' -> 0` with `P` free, `G -> P` the evaluation at the
/// generators of `G*`.
#[derive(Clone, Debug)]
pub struct GpEmbedding {
    pub inclusion: ModuleMap,
    pub cokernel: Quotient,
}

pub fn gp_embedding(g: &Arc<Module>) -> Result<GpEmbedding> {
    let d = dual(g);
    let gs = &d.module;
    let p = g.p();
    let n = g.algebra().dim();
    let functionals: Vec<FpMatrix> = (0..gs.dim()).map(|h| d.functional(h)).collect();
    let mut mat = FpMatrix::zeros(p, gs.gens() * n, g.dim());
    for j in 0..gs.gens() {
        let c = gs.gen_images().col(j);
        for (f, &ch) in functionals.iter().zip(&c) {
            if ch != 0 {
                let mut block = mat.block(j * n, 0, n, g.dim());
                block.add_scaled(ch, f);
                mat.set_block(j * n, 0, &block);
            }
        }
    }
    let free = Module::free(g.ring(), g.side(), gs.gens());
    let inclusion = ModuleMap::new(g, &free, mat)?;
    if !inclusion.is_injective() {
        return Err(Error::MissingGpData("module is not torsionless, no embedding into a free module".into()));
    }
    let cokernel = cokernel(&inclusion);
    Ok(GpEmbedding { inclusion, cokernel })
}

/// Smallest `d <= bound` with `Omega^d M` Gorenstein projective.
pub fn gpd_bounded(m: &Arc<Module>, bound: usize, mode: &GpMode) -> Result<Bounded> {
    let res = FreeResolution::new(m, bound.saturating_sub(1), true);
    for d in 0..=bound {
        if gp_test(&res.syzygy(d), mode)?.passes() {
            return Ok(Bounded::Exact(d));
        }
    }
    Ok(Bounded::Above(bound))
}

/// A free presentation `free(m) -> free(g) -> A -> 0`.
#[derive(Clone, Debug)]
pub struct FreePresentation {
    pub relations: RelMatrix,
    /// `free(g) -> A`.
    pub cover: ModuleMap,
}

impl FreePresentation {
    /// The presentation stored with the module.
    pub fn of(a: &Arc<Module>) -> FreePresentation {
        FreePresentation { relations: a.relations().clone(), cover: crate::fpmod::free_cover(a) }
    }

    pub fn module(&self) -> &Arc<Module> {
        self.cover.tgt()
    }

    /// `Coker(f*)`.
    pub fn transpose(&self) -> Arc<Module> {
        let a = self.module();
        crate::homology::transpose_of_presentation(a.ring(), a.side(), &self.relations)
            .expect("dual presentation is valid")
    }

    pub fn relation_map(&self) -> ModuleMap {
        let a = self.module();
        let src = Module::free(a.ring(), a.side(), self.relations.rows());
        crate::fpmod::free_map(&src, self.cover.src(), &self.relations)
    }
}

/// `X_1 -> X_0 -> A -> 0` with both `X_i` Gorenstein projective.
#[derive(Clone, Debug)]
pub struct GPresentation {
    pub g: ModuleMap,
    pub e: ModuleMap,
    pub certs: [GpCertificate; 2],
    pub exactness: CertifiedSequence,
}

impl GPresentation {
    pub fn new(g: ModuleMap, e: ModuleMap, mode: &GpMode) -> Result<GPresentation> {
        let a = e.tgt().clone();
        let zero = Module::zero(a.ring(), a.side());
        let maps = [g.clone(), e.clone(), ModuleMap::zero(&a, &zero)];
        let mut exactness = is_exact(&maps)?.map_err(|f| Error::NotExact(f.to_string()))?;
        let c1 = require_gp(g.src(), mode)?;
        let c0 = require_gp(g.tgt(), mode)?;
        exactness.set_tag(0, c1.tag());
        exactness.set_tag(1, c0.tag());
        Ok(GPresentation { g, e, certs: [c1, c0], exactness })
    }

    /// The free presentation of a module, which is a special GP presentation.
    pub fn free(a: &Arc<Module>, mode: &GpMode) -> Result<GPresentation> {
        let p = FreePresentation::of(a);
        GPresentation::new(p.relation_map(), p.cover, mode)
    }

    pub fn module(&self) -> &Arc<Module> {
        self.e.tgt()
    }
}

/// `Coker(g*)` with the certified sequence `0 -> A* -> X_0* -> X_1* -> Coker g* -> 0`.
#[derive(Clone, Debug)]
pub struct GorensteinTranspose {
    pub module: Arc<Module>,
    pub sequence: CertifiedSequence,
    /// `X_1* -> Coker g*`.
    pub projection: ModuleMap,
}

pub fn gorenstein_transpose(pi: &GPresentation) -> Result<GorensteinTranspose> {
    let (x1, x0, a) = (pi.g.src(), pi.g.tgt(), pi.e.tgt());
    let (d1, d0, da) = (dual(x1), dual(x0), dual(a));
    let es = crate::fpmod::dual_map(&pi.e, &d0, &da)?;
    let gs = crate::fpmod::dual_map(&pi.g, &d1, &d0)?;
    let c = cokernel(&gs);
    let sequence = CertifiedSequence::bounded(&[es, gs, c.projection.clone()])?;
    Ok(GorensteinTranspose { module: c.module, sequence, projection: c.projection })
}

/// Whether a chain is the bounded sequence of projective / GP objects
/// claimed by its tags, re-derived from scratch.
pub(crate) fn tag_projectives(seq: &mut CertifiedSequence, skip: &[usize]) {
    for i in 1..seq.len_objects() - 1 {
        if skip.contains(&i) {
            continue;
        }
        let m = seq.object(i).clone();
        let free = m.dim() > 0 && m.relations().rows() == 0 && m.dim() == m.gens() * m.algebra().dim();
        if free {
            seq.set_tag(i, ObjectTag::Free);
        } else if let ProjectivityVerdict::Projective(w) = crate::fpmod::is_projective(&m) {
            seq.set_tag(i, ObjectTag::Projective(w));
        }
    }
}

/// `Omega^n` of a module with its GP certificate.
pub fn gp_syzygy(m: &Arc<Module>, n: usize, mode: &GpMode) -> Result<(Arc<Module>, GpCertificate)> {
    let s = syzygy(m, n);
    let c = gp_test(&s, mode)?;
    Ok((s, c))
}


#[cfg(test)]
mod tests;
