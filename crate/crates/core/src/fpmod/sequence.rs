//! Exactness certificates and projectivity.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

use super::{Module, ModuleMap};

/// Property recorded for an object of a [`CertifiedSequence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectTag {
    None,
    Free,
    Projective(SplitWitness),
    /// Gorenstein projective, with Ext vanishing checked up to `bound`.
    Gp { bound: usize },
}

impl ObjectTag {
    pub fn label(&self) -> String {
        match self {
            ObjectTag::None => "none".into(),
            ObjectTag::Free => "free".into(),
            ObjectTag::Projective(_) => "projective".into(),
            ObjectTag::Gp { bound } => format!("gp({bound})"),
        }
    }
}

/// Exactness data at an internal object: bases of the kernel of the outgoing
/// map and the image of the incoming one, with `im * witness = ker`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeCert {
    pub ker: FpMatrix,
    pub im: FpMatrix,
    pub witness: FpMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessFailure {
    /// Index of the object in the chain (0 = source of the first map).
    pub node: usize,
    pub ker_dim: usize,
    pub im_dim: usize,
    pub reason: String,
}

impl std::fmt::Display for ExactnessFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "node {}: dim ker = {}, dim im = {} ({})", self.node, self.ker_dim, self.im_dim, self.reason)
    }
}

/// A chain of composable maps, exact at every internal object.
#[derive(Clone, Debug)]
pub struct CertifiedSequence {
    maps: Vec<ModuleMap>,
    nodes: Vec<NodeCert>,
    tags: Vec<ObjectTag>,
}

fn check_chain(maps: &[ModuleMap]) -> Result<()> {
    if maps.is_empty() {
        return Err(Error::NotComposable("empty chain".into()));
    }
    for (i, w) in maps.windows(2).enumerate() {
        if !w[0].tgt().same_rep(w[1].src()) {
            return Err(Error::NotComposable(format!("map {i} does not end where map {} starts", i + 1)));
        }
    }
    Ok(())
}

fn node_cert(incoming: &ModuleMap, outgoing: &ModuleMap, node: usize) -> std::result::Result<NodeCert, ExactnessFailure> {
    let ker = outgoing.matrix().kernel_cols();
    let im = incoming.matrix().image_cols();
    let fail = |reason: &str| ExactnessFailure { node, ker_dim: ker.cols(), im_dim: im.cols(), reason: reason.into() };
    if !outgoing.matrix().mul(&im).is_zero() {
        return Err(fail("composite is not zero"));
    }
    if ker.cols() != im.cols() {
        return Err(fail("image is strictly smaller than kernel"));
    }
    let witness = im.solve_matrix(&ker).ok_or_else(|| fail("kernel not contained in image"))?;
    Ok(NodeCert { ker, im, witness })
}

/// Checks exactness at every internal object of the chain.
pub fn is_exact(maps: &[ModuleMap]) -> Result<std::result::Result<CertifiedSequence, ExactnessFailure>> {
    check_chain(maps)?;
    let mut nodes = Vec::new();
    for (i, w) in maps.windows(2).enumerate() {
        match node_cert(&w[0], &w[1], i + 1) {
            Ok(c) => nodes.push(c),
            Err(e) => return Ok(Err(e)),
        }
    }
    let tags = vec![ObjectTag::None; maps.len() + 1];
    Ok(Ok(CertifiedSequence { maps: maps.to_vec(), nodes, tags }))
}

impl CertifiedSequence {
    /// Certifies `0 -> X_0 -> ... -> X_k -> 0` for the given maps; the zero
    /// objects at both ends are part of the stored chain.
    pub fn bounded(maps: &[ModuleMap]) -> Result<CertifiedSequence> {
        check_chain(maps)?;
        let first = maps[0].src();
        let last = maps[maps.len() - 1].tgt();
        let z0 = Module::zero(first.ring(), first.side());
        let z1 = Module::zero(last.ring(), last.side());
        let mut all = vec![ModuleMap::zero(&z0, first)];
        all.extend(maps.iter().cloned());
        all.push(ModuleMap::zero(last, &z1));
        is_exact(&all)?.map_err(|e| Error::NotExact(e.to_string()))
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }
    pub fn nodes(&self) -> &[NodeCert] {
        &self.nodes
    }
    pub fn tags(&self) -> &[ObjectTag] {
        &self.tags
    }
    pub fn len_objects(&self) -> usize {
        self.maps.len() + 1
    }
    pub fn object(&self, i: usize) -> &Arc<Module> {
        if i < self.maps.len() {
            self.maps[i].src()
        } else {
            self.maps[i - 1].tgt()
        }
    }
    /// Objects strictly between the two ends.
    pub fn inner_objects(&self) -> Vec<Arc<Module>> {
        (1..self.maps.len()).map(|i| self.object(i).clone()).collect()
    }

    pub fn set_tag(&mut self, i: usize, tag: ObjectTag) {
        self.tags[i] = tag;
    }

    /// Tags every object whose module has no relations as free.
    pub fn tag_free_objects(&mut self) {
        for i in 0..self.len_objects() {
            let m = self.object(i);
            if m.dim() > 0 && m.relations().rows() == 0 && m.dim() == m.gens() * m.algebra().dim() {
                self.tags[i] = ObjectTag::Free;
            }
        }
    }

    /// Re-checks the stored certificate against the maps.
    pub fn revalidate(&self) -> std::result::Result<(), String> {
        check_chain(&self.maps).map_err(|e| e.to_string())?;
        if self.nodes.len() + 1 != self.maps.len() || self.tags.len() != self.maps.len() + 1 {
            return Err("certificate has the wrong number of entries".into());
        }
        for (i, f) in self.maps.iter().enumerate() {
            if let Some(b) = Module::linearity_defect(f.src(), f.tgt(), f.matrix()) {
                return Err(format!("map {i} fails to commute with basis element {b}"));
            }
        }
        for (i, c) in self.nodes.iter().enumerate() {
            let (inc, out) = (&self.maps[i], &self.maps[i + 1]);
            let d = inc.tgt().dim();
            if c.ker.rows() != d || c.im.rows() != d {
                return Err(format!("node {}: stored bases have the wrong length", i + 1));
            }
            if !out.matrix().mul(&c.ker).is_zero() {
                return Err(format!("node {}: stored kernel basis is not killed", i + 1));
            }
            if inc.matrix().solve_matrix(&c.im).is_none() {
                return Err(format!("node {}: stored image basis is not in the image", i + 1));
            }
            if c.ker.rank() != c.ker.cols() || c.im.rank() != c.im.cols() {
                return Err(format!("node {}: stored bases are dependent", i + 1));
            }
            if c.ker.cols() != d - out.rank() || c.im.cols() != inc.rank() {
                return Err(format!("node {}: stored bases have the wrong dimension", i + 1));
            }
            if c.witness.rows() != c.im.cols() || c.im.mul(&c.witness) != c.ker {
                return Err(format!("node {}: equality witness fails", i + 1));
            }
        }
        for (i, t) in self.tags.iter().enumerate() {
            if let ObjectTag::Projective(w) = t {
                check_split(self.object(i), w).map_err(|e| format!("object {i}: {e}"))?;
            }
        }
        Ok(())
    }
}

/// A section of the free cover: `cover * section = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub section: FpMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivityVerdict {
    Projective(SplitWitness),
    /// The linear system for a splitting of the cover has no solution.
    NotProjective { hom_dim: usize, rank_deficit: usize },
}

impl ProjectivityVerdict {
    pub fn is_projective(&self) -> bool {
        matches!(self, ProjectivityVerdict::Projective(_))
    }
}

pub fn free_cover(m: &Arc<Module>) -> ModuleMap {
    let free = Module::free(m.ring(), m.side(), m.gens());
    ModuleMap::trusted(&free, m, m.cover())
}

fn check_split(m: &Arc<Module>, w: &SplitWitness) -> std::result::Result<(), String> {
    let cover = m.cover();
    let free = Module::free(m.ring(), m.side(), m.gens());
    if w.section.rows() != free.dim() || w.section.cols() != m.dim() {
        return Err("splitting has the wrong shape".into());
    }
    if Module::linearity_defect(m, &free, &w.section).is_some() {
        return Err("splitting is not linear".into());
    }
    if cover.mul(&w.section) != FpMatrix::identity(m.p(), m.dim()) {
        return Err("splitting is not a section of the cover".into());
    }
    Ok(())
}

/// Decides projectivity by solving for a splitting of the free cover.
pub fn is_projective(m: &Arc<Module>) -> ProjectivityVerdict {
    let p = m.p();
    let free = Module::free(m.ring(), m.side(), m.gens());
    if m.relations().rows() == 0 {
        // the cover is an isomorphism
        let section = m.cover().inverse().expect("cover without relations is invertible");
        return ProjectivityVerdict::Projective(SplitWitness { section });
    }
    let basis = m.hom_basis(&free).expect("same category");
    let cover = m.cover();
    let d = m.dim();
    // unknown coefficients c with sum c_i (cover * h_i) = id
    let sys = FpMatrix::from_cols(
        p,
        d * d,
        &basis.iter().map(|h| cover.mul(h).data().to_vec()).collect::<Vec<_>>(),
    );
    let target = FpMatrix::identity(p, d);
    match sys.solve(target.data()) {
        Some(c) => {
            let mut section = FpMatrix::zeros(p, free.dim(), d);
            for (h, &ci) in basis.iter().zip(&c) {
                if ci != 0 {
                    section.add_scaled(ci, h);
                }
            }
            ProjectivityVerdict::Projective(SplitWitness { section })
        }
        None => {
            let aug = sys.hstack(&FpMatrix::from_cols(p, d * d, &[target.data().to_vec()]));
            ProjectivityVerdict::NotProjective { hom_dim: basis.len(), rank_deficit: aug.rank() - sys.rank() }
        }
    }
}
