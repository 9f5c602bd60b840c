//! Constructions on modules: sums, sub/quotient modules, kernels, cokernels,
//! pushouts, pullbacks and duals.

use std::sync::Arc;

use crate::algebra::{Ring, Side};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, QuotientSpace};

use super::{Module, ModuleMap, RelMatrix};

/// A submodule together with its inclusion.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: Arc<Module>,
    pub inclusion: ModuleMap,
}

/// A quotient module with its projection and a linear section of it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Arc<Module>,
    pub projection: ModuleMap,
    pub section: FpMatrix,
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Arc<Module>,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: Arc<Module>,
    pub from_b: ModuleMap,
    pub from_c: ModuleMap,
    /// Linear section of the projection from `B + C`.
    pub section: FpMatrix,
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: Arc<Module>,
    pub to_b: ModuleMap,
    pub to_c: ModuleMap,
    /// Inclusion into `B + C`.
    pub inclusion: FpMatrix,
}

/// `M* = Hom(M, R)`, realized as the submodule of `free(g)` on the other
/// side cut out by the transposed relations: a homomorphism is recorded by
/// the images of the generators of `M`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub of: Arc<Module>,
    pub module: Arc<Module>,
    /// Inclusion of `M*` into the dual of the free cover of `M`.
    pub embedding: ModuleMap,
}

impl Dual {
    /// F_p matrix (`n x dim M`) of the homomorphism `M -> R` at basis
    /// vector `i` of `M*`.
    pub fn functional(&self, i: usize) -> FpMatrix {
        let m = &self.of;
        let alg = m.algebra();
        let y = self.embedding.matrix().col(i);
        let n = alg.dim();
        let images = FpMatrix::from_fn(alg.p(), n, m.gens(), |k, j| y[j * n + k]);
        let regular: Vec<FpMatrix> = (0..n).map(|b| alg.left_basis_mat(b).clone()).collect();
        super::cover_matrix(alg, &regular, n, &images).mul(m.cover_section())
    }
}

/// Submodule spanned by the columns of `span` (which must be invariant).
pub fn submodule(m: &Arc<Module>, span: &FpMatrix) -> Result<Sub> {
    let basis = span.image_cols();
    let mut actions = Vec::with_capacity(m.actions().len());
    for (b, a) in m.actions().iter().enumerate() {
        let x = basis
            .solve_matrix(&a.mul(&basis))
            .ok_or_else(|| Error::InvalidModule(format!("subspace is not stable under basis element {b}")))?;
        actions.push(x);
    }
    let sub = Arc::new(Module::from_checked_actions(m.ring(), m.side(), basis.cols(), actions));
    Ok(Sub { inclusion: ModuleMap::trusted(&sub, m, basis), module: sub })
}

/// Quotient by the submodule spanned by the columns of `span`.
pub fn quotient_by(m: &Arc<Module>, span: &FpMatrix) -> Result<Quotient> {
    let q = QuotientSpace::new(m.p(), m.dim(), span);
    let mut actions = Vec::with_capacity(m.actions().len());
    for (b, a) in m.actions().iter().enumerate() {
        if !q.proj.mul(a).mul(span).is_zero() {
            return Err(Error::InvalidModule(format!("subspace is not stable under basis element {b}")));
        }
        actions.push(q.proj.mul(a).mul(&q.lift));
    }
    let quo = Arc::new(Module::from_checked_actions(m.ring(), m.side(), q.dim(), actions));
    Ok(Quotient { projection: ModuleMap::trusted(m, &quo, q.proj), section: q.lift, module: quo })
}

pub fn kernel(f: &ModuleMap) -> Sub {
    submodule(f.src(), &f.matrix().kernel_cols()).expect("kernels are submodules")
}

/// The image as a submodule of the target, with the corestriction of `f`.
pub fn image(f: &ModuleMap) -> (Sub, ModuleMap) {
    let sub = submodule(f.tgt(), f.matrix()).expect("images are submodules");
    let co = sub.inclusion.matrix().solve_matrix(f.matrix()).expect("f lands in its image");
    let corestriction = ModuleMap::trusted(f.src(), &sub.module, co);
    (sub, corestriction)
}

pub fn cokernel(f: &ModuleMap) -> Quotient {
    quotient_by(f.tgt(), f.matrix()).expect("images are submodules")
}

pub fn direct_sum(ring: &Arc<Ring>, side: Side, ms: &[Arc<Module>]) -> Result<DirectSum> {
    let alg = ring.acting(side);
    let p = alg.p();
    for m in ms {
        if m.side() != side || !crate::algebra::same_ring(m.ring(), ring) {
            return Err(Error::RingMismatch("direct sum of modules over different rings or sides".into()));
        }
    }
    let blocks = |f: &dyn Fn(&Module) -> &FpMatrix| -> FpMatrix {
        let parts: Vec<&FpMatrix> = ms.iter().map(|m| f(m)).collect();
        FpMatrix::block_diag(p, &parts)
    };
    let actions: Vec<FpMatrix> = (0..alg.dim()).map(|b| blocks(&|m| &m.actions()[b])).collect();
    let gen_images = blocks(&|m| m.gen_images());
    let cover_section = blocks(&|m| m.cover_section());
    let g: usize = ms.iter().map(|m| m.gens()).sum();
    let rows: usize = ms.iter().map(|m| m.relations().rows()).sum();
    let mut entries = vec![alg.zero(); rows * g];
    let (mut r0, mut c0) = (0, 0);
    for m in ms {
        let rel = m.relations();
        for r in 0..rel.rows() {
            for j in 0..rel.cols() {
                entries[(r0 + r) * g + c0 + j] = rel.get(r, j).to_vec();
            }
        }
        r0 += rel.rows();
        c0 += rel.cols();
    }
    let dim: usize = ms.iter().map(|m| m.dim()).sum();
    let sum = Arc::new(Module {
        ring: ring.clone(),
        side,
        dim,
        actions,
        relations: RelMatrix::new(rows, g, entries),
        gen_images,
        cover_section,
    });
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in ms {
        let d = m.dim();
        let mut inj = FpMatrix::zeros(p, dim, d);
        inj.set_block(off, 0, &FpMatrix::identity(p, d));
        projections.push(ModuleMap::trusted(&sum, m, inj.transpose()));
        injections.push(ModuleMap::trusted(m, &sum, inj));
        off += d;
    }
    Ok(DirectSum { module: sum, injections, projections })
}

/// `(B + C) / {(f a, -g a)}` with the two induced maps.
pub fn pushout(f: &ModuleMap, g: &ModuleMap) -> Result<Pushout> {
    if !f.src().same_rep(g.src()) {
        return Err(Error::NotComposable("pushout needs a common source".into()));
    }
    let (b, c) = (f.tgt(), g.tgt());
    let sum = direct_sum(b.ring(), b.side(), &[b.clone(), c.clone()])?;
    let span = f.matrix().vstack(&g.matrix().neg());
    let q = quotient_by(&sum.module, &span)?;
    let from_b = q.projection.compose(&sum.injections[0])?;
    let from_c = q.projection.compose(&sum.injections[1])?;
    Ok(Pushout { module: q.module, from_b, from_c, section: q.section })
}

/// `{(b, c) : f b = g c}` with the two projections.
pub fn pullback(f: &ModuleMap, g: &ModuleMap) -> Result<Pullback> {
    if !f.tgt().same_rep(g.tgt()) {
        return Err(Error::NotComposable("pullback needs a common target".into()));
    }
    let (b, c) = (f.src(), g.src());
    let sum = direct_sum(b.ring(), b.side(), &[b.clone(), c.clone()])?;
    let diff = ModuleMap::trusted(&sum.module, f.tgt(), f.matrix().hstack(&g.matrix().neg()));
    let k = kernel(&diff);
    let to_b = sum.projections[0].compose(&k.inclusion)?;
    let to_c = sum.projections[1].compose(&k.inclusion)?;
    Ok(Pullback { module: k.module, to_b, to_c, inclusion: k.inclusion.matrix().clone() })
}

pub fn dual(m: &Arc<Module>) -> Dual {
    let side = m.side().flip();
    let ring = m.ring();
    let opp = ring.acting(side);
    let cover_dual = Module::free(ring, side, m.gens());
    let constraints = m.relations().dual().realize(opp);
    let k = submodule(&cover_dual, &constraints.kernel_cols()).expect("kernels are submodules");
    Dual { of: m.clone(), module: k.module, embedding: k.inclusion }
}

/// `f* : N* -> M*`, `h -> h . f`.
pub fn dual_map(f: &ModuleMap, dm: &Dual, dn: &Dual) -> Result<ModuleMap> {
    if !dm.of.same_rep(f.src()) || !dn.of.same_rep(f.tgt()) {
        return Err(Error::NotComposable("duals do not match the map".into()));
    }
    let (m, n) = (f.src(), f.tgt());
    let alg = m.algebra();
    let nd = alg.dim();
    // lift of f to the free covers, as a matrix over the algebra
    let lifted = n.cover_section().mul(&f.matrix().mul(m.gen_images()));
    let mut entries = Vec::with_capacity(m.gens() * n.gens());
    for i in 0..m.gens() {
        for j in 0..n.gens() {
            entries.push((0..nd).map(|k| lifted.get(j * nd + k, i)).collect());
        }
    }
    let d = RelMatrix::new(m.gens(), n.gens(), entries).dual();
    let t = d.realize(dm.module.algebra());
    let mat = dm
        .embedding
        .matrix()
        .solve_matrix(&t.mul(dn.embedding.matrix()))
        .ok_or_else(|| Error::Failure("dual map leaves the dual module".into()))?;
    ModuleMap::new(&dn.module, &dm.module, mat)
}

/// The map `X -> mono.src` whose composite with the monomorphism is `f`.
pub fn factor_through_mono(f: &ModuleMap, mono: &ModuleMap) -> Result<ModuleMap> {
    let mat = mono
        .matrix()
        .solve_matrix(f.matrix())
        .ok_or_else(|| Error::NotComposable("map does not factor through the submodule".into()))?;
    if mono.matrix().mul(&mat) != *f.matrix() {
        return Err(Error::NotComposable("map does not factor through the monomorphism".into()));
    }
    ModuleMap::new(f.src(), mono.src(), mat)
}

/// The map `epi.tgt -> Z` whose precomposite with the epimorphism is `f`.
pub fn factor_through_epi(f: &ModuleMap, epi: &ModuleMap) -> Result<ModuleMap> {
    let p = f.src().p();
    let section = epi
        .matrix()
        .solve_matrix(&FpMatrix::identity(p, epi.tgt().dim()))
        .ok_or_else(|| Error::NotComposable("map to factor through is not surjective".into()))?;
    let mat = f.matrix().mul(&section);
    if mat.mul(epi.matrix()) != *f.matrix() {
        return Err(Error::NotComposable("map does not vanish on the kernel".into()));
    }
    ModuleMap::new(epi.tgt(), f.tgt(), mat)
}
