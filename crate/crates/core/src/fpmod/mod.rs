//! Finitely presented modules over a [`Ring`](crate::algebra::Ring) and their
//! homomorphisms.
//!
//! A module is stored twice: as the cokernel of a free presentation
//! `free(m) -> free(g)` and as a concrete representation (one action matrix
//! per basis element of the acting algebra). Elements of `free(g)` are row
//! tuples of ring elements; the relation matrix acts on them by right
//! multiplication, so a map `free(a) -> free(b)` is an `a x b` matrix over the
//! acting algebra. On the F_p level, `free(g)` has basis `b_k e_j` at
//! coordinate `j * n + k`.

mod iso;
mod ops;
mod parse;
mod sequence;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_ring, Algebra, Ring, Side};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, FpMatrix, QuotientSpace};

pub use iso::{iso_probe, rad_layers, IsoVerdict};
pub use ops::{
    cokernel, direct_sum, dual, dual_map, factor_through_epi, factor_through_mono, image, kernel, pullback, pushout, quotient_by, submodule, DirectSum,
    Dual, Pullback, Pushout, Quotient, Sub,
};
pub use parse::{map_to_spec, parse_bundle, parse_module, Bundle};
pub use sequence::{
    free_cover, is_exact, is_projective, CertifiedSequence, ExactnessFailure, NodeCert, ObjectTag,
    ProjectivityVerdict, SplitWitness,
};

/// Matrix with entries in the acting algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
}

impl RelMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vec<u32>>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RelMatrix { rows, cols, entries }
    }

    pub fn zero(alg: &Algebra, rows: usize, cols: usize) -> Self {
        RelMatrix { rows, cols, entries: vec![alg.zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &[u32] {
        &self.entries[i * self.cols + j]
    }

    /// Reads row `r` from a vector of `free(cols)`.
    pub fn from_free_vectors(alg: &Algebra, cols: usize, vs: &[Vec<u32>]) -> Self {
        let n = alg.dim();
        let mut entries = Vec::with_capacity(vs.len() * cols);
        for v in vs {
            for j in 0..cols {
                entries.push(v[j * n..(j + 1) * n].to_vec());
            }
        }
        RelMatrix { rows: vs.len(), cols, entries }
    }

    /// F_p matrix of `free(rows) -> free(cols)`, `(s_r) -> (sum_r s_r D_rj)_j`.
    pub fn realize(&self, alg: &Algebra) -> FpMatrix {
        let n = alg.dim();
        let mut m = FpMatrix::zeros(alg.p(), self.cols * n, self.rows * n);
        for r in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(r, j);
                if e.iter().all(|&x| x == 0) {
                    continue;
                }
                m.set_block(j * n, r * n, &alg.right_mat(e));
            }
        }
        m
    }

    /// The same entries read in the opposite algebra, transposed: the matrix
    /// of the dual map between the duals of the free modules.
    pub fn dual(&self) -> RelMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, j).to_vec());
            }
        }
        RelMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Appends zero rows.
    pub fn pad_rows(&self, alg: &Algebra, extra: usize) -> RelMatrix {
        let mut entries = self.entries.clone();
        entries.extend(std::iter::repeat_n(alg.zero(), extra * self.cols));
        RelMatrix { rows: self.rows + extra, cols: self.cols, entries }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Module {
    ring: Arc<Ring>,
    side: Side,
    dim: usize,
    actions: Vec<FpMatrix>,
    relations: RelMatrix,
    gen_images: FpMatrix,
    cover_section: FpMatrix,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Module({} {}, dim {}, {} gens, {} rels)",
            self.ring.base().name(),
            self.side,
            self.dim,
            self.gens(),
            self.relations.rows
        )
    }
}

/// Action matrices of the regular module on `free(g)`.
pub(crate) fn free_actions(alg: &Algebra, g: usize) -> Vec<FpMatrix> {
    (0..alg.dim())
        .map(|b| {
            let l = alg.left_basis_mat(b);
            FpMatrix::block_diag(alg.p(), &vec![l; g])
        })
        .collect()
}

pub(crate) fn element_action(alg: &Algebra, actions: &[FpMatrix], d: usize, a: &[u32]) -> FpMatrix {
    let mut out = FpMatrix::zeros(alg.p(), d, d);
    for (m, &c) in actions.iter().zip(a) {
        if c != 0 {
            out.add_scaled(c, m);
        }
    }
    out
}

/// `d x (g n)` matrix sending `b_k e_j` to `b_k * images_j`.
pub(crate) fn cover_matrix(alg: &Algebra, actions: &[FpMatrix], d: usize, images: &FpMatrix) -> FpMatrix {
    let n = alg.dim();
    let g = images.cols();
    let mut c = FpMatrix::zeros(alg.p(), d, g * n);
    for j in 0..g {
        let y = images.block(0, j, d, 1);
        for (k, a) in actions.iter().enumerate() {
            c.set_block(0, j * n + k, &a.mul(&y));
        }
    }
    c
}

pub(crate) fn check_module_axioms(alg: &Algebra, d: usize, actions: &[FpMatrix]) -> Result<()> {
    let n = alg.dim();
    if actions.len() != n {
        return Err(Error::InvalidModule(format!("{} action matrices, algebra has dim {n}", actions.len())));
    }
    for (b, a) in actions.iter().enumerate() {
        if a.rows() != d || a.cols() != d || a.p() != alg.p() {
            return Err(Error::InvalidModule(format!("action of basis element {b} is not {d}x{d} over F_{}", alg.p())));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = actions[i].mul(&actions[j]);
            let rhs = element_action(alg, actions, d, alg.product(i, j));
            if lhs != rhs {
                return Err(Error::InvalidModule(format!("module axiom fails on basis pair ({i}, {j})")));
            }
        }
    }
    if element_action(alg, actions, d, alg.unit()) != FpMatrix::identity(alg.p(), d) {
        return Err(Error::InvalidModule("unit does not act as the identity".into()));
    }
    Ok(())
}

/// How the acting algebra acts on a coordinate space.
#[derive(Clone, Copy)]
pub(crate) enum Act<'a> {
    /// One action matrix per basis element.
    Mats(&'a [FpMatrix]),
    /// The free module of the given rank, in block coordinates.
    Free(usize),
}

impl Act<'_> {
    /// `a` applied to every column of `cols`.
    pub(crate) fn apply(&self, alg: &Algebra, a: &[u32], cols: &FpMatrix) -> FpMatrix {
        match *self {
            Act::Mats(m) => element_action(alg, m, cols.rows(), a).mul(cols),
            Act::Free(g) => {
                let n = alg.dim();
                let l = alg.left_mat(a);
                let mut out = FpMatrix::zeros(alg.p(), cols.rows(), cols.cols());
                for j in 0..g {
                    out.set_block(j * n, 0, &l.mul(&cols.block(j * n, 0, n, cols.cols())));
                }
                out
            }
        }
    }
}

/// Generators of the submodule `U` spanned by the columns of `candidates`:
/// a lift of a basis of `U / rad U`, then merged greedily so that lifts in
/// different simple components share one generator whenever the sum still
/// generates both.
pub(crate) fn minimal_generators(alg: &Algebra, act: Act, candidates: &FpMatrix) -> Vec<Vec<u32>> {
    let d = candidates.rows();
    let p = alg.p();
    let mut rad_span = FpMatrix::zeros(p, d, 0);
    for r in alg.radical() {
        rad_span = rad_span.hstack(&act.apply(alg, r, candidates));
    }
    let rad_rank = rad_span.rank();
    // pivot columns of [rad U | candidates] past the first block are the lifts
    let pivots = rad_span.hstack(candidates).rref().pivots;
    let lifts: Vec<Vec<u32>> =
        pivots.iter().filter(|&&c| c >= rad_span.cols()).map(|&c| candidates.col(c - rad_span.cols())).collect();
    debug_assert!(pivots.len() - lifts.len() == rad_rank);
    if alg.radical().len() + 1 == alg.dim() || lifts.len() <= 1 {
        // local algebra: the top is a vector space over the residue field
        return lifts;
    }
    let rad_basis = rad_span.image_cols();
    let generated = |x: &[u32]| {
        let xs = FpMatrix::from_cols(p, d, &[x.to_vec()]);
        let mut e = Echelon::new(p, d);
        e.insert_cols(&rad_basis);
        for b in 0..alg.dim() {
            e.insert_cols(&act.apply(alg, &alg.basis_vec(b), &xs));
        }
        e
    };
    let mut gens = Vec::new();
    let mut remaining = lifts;
    while !remaining.is_empty() {
        let mut x = remaining.remove(0);
        let mut span = generated(&x);
        let mut left = Vec::new();
        for v in remaining {
            if span.contains(&v) {
                continue;
            }
            let y: Vec<u32> = x.iter().zip(&v).map(|(a, b)| crate::linalg::fadd(p, *a, *b)).collect();
            let sy = generated(&y);
            if sy.contains(&x) && sy.contains(&v) {
                x = y;
                span = sy;
            } else {
                left.push(v);
            }
        }
        gens.push(x);
        remaining = left;
    }
    gens
}

impl Module {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn algebra(&self) -> &Algebra {
        self.ring.acting(self.side)
    }
    pub fn p(&self) -> u32 {
        self.ring.p()
    }
    /// Dimension over F_p.
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }
    pub fn gens(&self) -> usize {
        self.gen_images.cols()
    }
    pub fn relations(&self) -> &RelMatrix {
        &self.relations
    }
    /// `dim x gens`: images of the generators in the representation.
    pub fn gen_images(&self) -> &FpMatrix {
        &self.gen_images
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, a: &[u32]) -> FpMatrix {
        element_action(self.algebra(), &self.actions, self.dim, a)
    }

    /// F_p matrix of the cover `free(gens) -> M`.
    pub fn cover(&self) -> FpMatrix {
        cover_matrix(self.algebra(), &self.actions, self.dim, &self.gen_images)
    }

    /// A linear (not R-linear) section of [`Module::cover`].
    pub fn cover_section(&self) -> &FpMatrix {
        &self.cover_section
    }

    pub fn zero(ring: &Arc<Ring>, side: Side) -> Arc<Module> {
        let alg = ring.acting(side);
        let p = alg.p();
        Arc::new(Module {
            ring: ring.clone(),
            side,
            dim: 0,
            actions: vec![FpMatrix::zeros(p, 0, 0); alg.dim()],
            relations: RelMatrix::zero(alg, 0, 0),
            gen_images: FpMatrix::zeros(p, 0, 0),
            cover_section: FpMatrix::zeros(p, 0, 0),
        })
    }

    /// The free module of rank `g` with its standard basis as generators.
    pub fn free(ring: &Arc<Ring>, side: Side, g: usize) -> Arc<Module> {
        let alg = ring.acting(side);
        let p = alg.p();
        let n = alg.dim();
        let mut gen_images = FpMatrix::zeros(p, g * n, g);
        for j in 0..g {
            for (k, &u) in alg.unit().iter().enumerate() {
                gen_images.set(j * n + k, j, u);
            }
        }
        Arc::new(Module {
            ring: ring.clone(),
            side,
            dim: g * n,
            actions: free_actions(alg, g),
            relations: RelMatrix::zero(alg, 0, g),
            gen_images,
            cover_section: FpMatrix::identity(p, g * n),
        })
    }

    /// Cokernel of `free(m) -> free(g)` given by the relation matrix.
    pub fn from_presentation(ring: &Arc<Ring>, side: Side, relations: RelMatrix) -> Result<Arc<Module>> {
        let alg = ring.acting(side);
        let n = alg.dim();
        let p = alg.p();
        let g = relations.cols;
        for e in &relations.entries {
            if e.len() != n || e.iter().any(|&x| x >= p) {
                return Err(Error::InvalidModule("relation entry is not an algebra element".into()));
            }
        }
        let reg = free_actions(alg, g);
        // the image of a module map is already a submodule
        let sub = relations.realize(alg);
        let q = QuotientSpace::new(p, g * n, &sub);
        let actions: Vec<FpMatrix> = reg.iter().map(|a| q.proj.mul(a).mul(&q.lift)).collect();
        let free_gens = Module::free(ring, side, g);
        let gen_images = q.proj.mul(free_gens.gen_images());
        Ok(Arc::new(Module {
            ring: ring.clone(),
            side,
            dim: q.dim(),
            actions,
            relations,
            gen_images,
            cover_section: q.lift,
        }))
    }

    /// Module with the given action matrices; generators lift a basis of
    /// `M / rad M` and relations minimally generate the kernel of the cover.
    pub fn from_representation(ring: &Arc<Ring>, side: Side, actions: Vec<FpMatrix>) -> Result<Arc<Module>> {
        let alg = ring.acting(side);
        let d = actions.first().map(|a| a.rows()).unwrap_or(0);
        check_module_axioms(alg, d, &actions)?;
        Ok(Arc::new(Self::from_checked_actions(ring, side, d, actions)))
    }

    pub(crate) fn from_checked_actions(ring: &Arc<Ring>, side: Side, d: usize, actions: Vec<FpMatrix>) -> Module {
        let alg = ring.acting(side);
        let p = alg.p();
        let gens = minimal_generators(alg, Act::Mats(&actions), &FpMatrix::identity(p, d));
        let gen_images = if gens.is_empty() { FpMatrix::zeros(p, d, 0) } else { FpMatrix::from_cols(p, d, &gens) };
        let g = gens.len();
        let cover = cover_matrix(alg, &actions, d, &gen_images);
        let kernel = cover.kernel_cols();
        let rels = minimal_generators(alg, Act::Free(g), &kernel);
        let relations = RelMatrix::from_free_vectors(alg, g, &rels);
        let cover_section = cover.solve_matrix(&FpMatrix::identity(p, d)).expect("generators span the module");
        Module { ring: ring.clone(), side, dim: d, actions, relations, gen_images, cover_section }
    }

    /// Same representation, with generators and relations recomputed.
    pub fn minimized(self: &Arc<Self>) -> Arc<Module> {
        Arc::new(Self::from_checked_actions(&self.ring, self.side, self.dim, self.actions.clone()))
    }

    pub fn same_category(&self, other: &Module) -> bool {
        self.side == other.side && same_ring(&self.ring, &other.ring)
    }

    /// Identical representation (same basis, same actions).
    pub fn same_rep(&self, other: &Module) -> bool {
        self.same_category(other) && self.dim == other.dim && self.actions == other.actions
    }

    fn check_category(&self, other: &Module) -> Result<()> {
        if self.same_category(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    /// Whether `f` commutes with every basis action.
    pub(crate) fn linearity_defect(src: &Module, tgt: &Module, f: &FpMatrix) -> Option<usize> {
        (0..src.actions.len()).find(|&b| f.mul(&src.actions[b]) != tgt.actions[b].mul(f))
    }

    /// Basis of `Hom(self, other)` as F_p matrices.
    pub fn hom_basis(&self, other: &Module) -> Result<Vec<FpMatrix>> {
        self.check_category(other)?;
        let alg = self.algebra();
        let p = alg.p();
        let g = self.gens();
        let dn = other.dim;
        let m = self.relations.rows;
        let mut eqs = FpMatrix::zeros(p, m * dn, g * dn);
        for r in 0..m {
            for j in 0..g {
                let a = other.action(self.relations.get(r, j));
                eqs.set_block(r * dn, j * dn, &a);
            }
        }
        let sol = eqs.kernel_cols();
        Ok((0..sol.cols())
            .map(|s| {
                let y = FpMatrix::from_fn(p, dn, g, |i, j| sol.get(j * dn + i, s));
                self.map_matrix_from_gen_images(other, &y)
            })
            .collect())
    }

    fn map_matrix_from_gen_images(&self, other: &Module, y: &FpMatrix) -> FpMatrix {
        cover_matrix(self.algebra(), &other.actions, other.dim, y).mul(&self.cover_section)
    }

    pub fn hom_dim(&self, other: &Module) -> Result<usize> {
        self.check_category(other)?;
        let p = self.p();
        let g = self.gens();
        let dn = other.dim;
        let m = self.relations.rows;
        let mut eqs = FpMatrix::zeros(p, m * dn, g * dn);
        for r in 0..m {
            for j in 0..g {
                eqs.set_block(r * dn, j * dn, &other.action(self.relations.get(r, j)));
            }
        }
        Ok(g * dn - eqs.rank())
    }

    /// Renders the module in the module-spec grammar (representation form).
    pub fn to_spec(&self, name: &str) -> String {
        let mut s = format!("module {name} over {} side={}\n", self.ring.base().name(), self.side);
        s.push_str(&format!("representation dim={}\n", self.dim));
        for (b, a) in self.actions.iter().enumerate() {
            s.push_str(&format!("action {b}\n"));
            for i in 0..a.rows() {
                s.push_str(&a.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
                s.push('\n');
            }
        }
        s
    }
}

/// An R-linear map, stored as its F_p matrix (`tgt.dim x src.dim`).
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    src: Arc<Module>,
    tgt: Arc<Module>,
    mat: FpMatrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?})", self.src, self.tgt)
    }
}

impl ModuleMap {
    pub fn new(src: &Arc<Module>, tgt: &Arc<Module>, mat: FpMatrix) -> Result<Self> {
        src.check_category(tgt)?;
        if mat.rows() != tgt.dim || mat.cols() != src.dim {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                tgt.dim,
                src.dim
            )));
        }
        if let Some(b) = Module::linearity_defect(src, tgt, &mat) {
            return Err(Error::NotLinear(format!("fails to commute with basis element {b}")));
        }
        Ok(ModuleMap { src: src.clone(), tgt: tgt.clone(), mat })
    }

    /// For matrices that are linear by construction.
    pub(crate) fn trusted(src: &Arc<Module>, tgt: &Arc<Module>, mat: FpMatrix) -> Self {
        debug_assert!(Module::linearity_defect(src, tgt, &mat).is_none(), "map is not linear");
        ModuleMap { src: src.clone(), tgt: tgt.clone(), mat }
    }

    /// The map sending generator `j` of `src` to column `j` of `images`.
    pub fn from_gen_images(src: &Arc<Module>, tgt: &Arc<Module>, images: &FpMatrix) -> Result<Self> {
        src.check_category(tgt)?;
        if images.rows() != tgt.dim || images.cols() != src.gens() {
            return Err(Error::Shape("generator image matrix has the wrong shape".into()));
        }
        for r in 0..src.relations.rows {
            let mut acc = vec![0u32; tgt.dim];
            for j in 0..src.gens() {
                let v = tgt.action(src.relations.get(r, j)).mul_vec(&images.col(j));
                acc = acc.iter().zip(&v).map(|(a, b)| crate::linalg::fadd(src.p(), *a, *b)).collect();
            }
            if acc.iter().any(|&x| x != 0) {
                return Err(Error::NotLinear(format!("relation {r} is not respected by the generator images")));
            }
        }
        let mat = src.map_matrix_from_gen_images(tgt, images);
        ModuleMap::new(src, tgt, mat)
    }

    pub fn identity(m: &Arc<Module>) -> Self {
        ModuleMap { src: m.clone(), tgt: m.clone(), mat: FpMatrix::identity(m.p(), m.dim) }
    }

    pub fn zero(src: &Arc<Module>, tgt: &Arc<Module>) -> Self {
        ModuleMap { src: src.clone(), tgt: tgt.clone(), mat: FpMatrix::zeros(src.p(), tgt.dim, src.dim) }
    }

    pub fn src(&self) -> &Arc<Module> {
        &self.src
    }
    pub fn tgt(&self) -> &Arc<Module> {
        &self.tgt
    }
    pub fn matrix(&self) -> &FpMatrix {
        &self.mat
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if !(Arc::ptr_eq(&first.tgt, &self.src) || first.tgt.same_rep(&self.src)) {
            return Err(Error::NotComposable(format!("{:?} then {:?}", first, self)));
        }
        Ok(ModuleMap { src: first.src.clone(), tgt: self.tgt.clone(), mat: self.mat.mul(&first.mat) })
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { src: self.src.clone(), tgt: self.tgt.clone(), mat: self.mat.add(&other.mat) }
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap { src: self.src.clone(), tgt: self.tgt.clone(), mat: self.mat.neg() }
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.src.dim
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.tgt.dim
    }
    pub fn is_iso(&self) -> bool {
        self.src.dim == self.tgt.dim && self.is_injective()
    }
    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Same map with the source replaced by an identical representation.
    pub fn with_src(&self, src: &Arc<Module>) -> ModuleMap {
        assert!(src.same_rep(&self.src));
        ModuleMap { src: src.clone(), tgt: self.tgt.clone(), mat: self.mat.clone() }
    }

    pub fn with_tgt(&self, tgt: &Arc<Module>) -> ModuleMap {
        assert!(tgt.same_rep(&self.tgt));
        ModuleMap { src: self.src.clone(), tgt: tgt.clone(), mat: self.mat.clone() }
    }
}

/// A map between free modules given by a relation-style matrix.
pub fn free_map(src: &Arc<Module>, tgt: &Arc<Module>, d: &RelMatrix) -> ModuleMap {
    let alg = src.algebra();
    ModuleMap::trusted(src, tgt, d.realize(alg))
}

#[cfg(test)]
mod tests;
