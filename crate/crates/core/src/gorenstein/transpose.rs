//! Gorenstein transposes inside ordinary transposes, and the consistency
//! reports comparing their homological invariants.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fpmod::{
    cokernel, direct_sum, dual, dual_map, factor_through_epi, factor_through_mono, free_cover, free_map, image,
    iso_probe, kernel, pullback, CertifiedSequence, IsoVerdict, Module, ModuleMap, RelMatrix,
};
use crate::homology::{ext_dims, ext_from, transpose, FreeResolution};

use super::{
    construct_cor25, gorenstein_transpose, gp_embedding, gp_test, gpd_bounded, require_gp, Cor25Output,
    FreePresentation, GPresentation, GorensteinTranspose, GpCertificate, GpMode,
};

/// Relation matrix of a map between free modules.
fn relations_of(f: &ModuleMap) -> RelMatrix {
    let src = f.src();
    let images = f.matrix().mul(src.gen_images());
    let vs: Vec<Vec<u32>> = (0..images.cols()).map(|j| images.col(j)).collect();
    RelMatrix::from_free_vectors(src.algebra(), f.tgt().gens(), &vs)
}

#[derive(Clone, Debug)]
pub struct Embedding31 {
    /// `P_0 -> P'_0 -> A -> 0`, the free presentation built from `pi`.
    pub presentation: FreePresentation,
    /// The transpose of `A` for that presentation.
    pub transpose: Arc<Module>,
    pub gorenstein_transpose: GorensteinTranspose,
    /// `0 -> Tr_G A -> Tr A -> H -> 0`.
    pub sequence: CertifiedSequence,
    pub cert: GpCertificate,
}

impl Embedding31 {
    pub fn cokernel(&self) -> &Arc<Module> {
        self.sequence.object(3)
    }
}

/// Embeds the Gorenstein transpose of `pi` into a transpose of its module
/// with Gorenstein projective cokernel.
pub fn thm31_embed(pi: &GPresentation, mode: &GpMode) -> Result<Embedding31> {
    let (g, e) = (&pi.g, &pi.e);
    let cover0 = free_cover(g.tgt());
    let onto_a = e.compose(&cover0)?;
    let k1p = kernel(&onto_a);
    let (k1, alpha) = image(g);
    let to_k1 = factor_through_mono(&cover0.compose(&k1p.inclusion)?, &k1.inclusion)?;
    let gp = pullback(&alpha, &to_k1)?;
    let c = free_cover(&gp.module);
    let phi = k1p.inclusion.compose(&gp.to_c.compose(&c)?)?;
    let q1 = gp.to_b.compose(&c)?;
    let presentation = FreePresentation { relations: relations_of(&phi), cover: onto_a };
    let tra = presentation.transpose();
    let gt = gorenstein_transpose(pi)?;

    let (dx1, dp0) = (dual(g.src()), dual(c.src()));
    let q1s = dual_map(&q1, &dp0, &dx1)?;
    let proj = free_cover(&tra).with_src(&dp0.module);
    let u = factor_through_epi(&proj.compose(&q1s)?, &gt.projection.with_src(&dx1.module))?;
    let h = cokernel(&u);
    let cert = require_gp(&h.module, mode)?;
    let mut sequence = CertifiedSequence::bounded(&[u, h.projection])?;
    sequence.set_tag(3, cert.tag());
    Ok(Embedding31 { presentation, transpose: tra, gorenstein_transpose: gt, sequence, cert })
}

#[derive(Clone, Debug)]
pub struct Realized31 {
    pub presentation: GPresentation,
    pub gorenstein_transpose: GorensteinTranspose,
    /// `0 -> M -> Tr A -> H -> 0` as supplied.
    pub sequence: CertifiedSequence,
    pub cert: GpCertificate,
    /// Comparison of the Gorenstein transpose with `M`.
    pub iso: IsoVerdict,
}

/// From a free presentation of `A` and `iota: M -> Tr A` injective with
/// Gorenstein projective cokernel, a Gorenstein projective presentation of
/// `A` whose Gorenstein transpose is `M`.
pub fn thm31_realize(fp: &FreePresentation, iota: &ModuleMap, mode: &GpMode, seed: u64) -> Result<Realized31> {
    let tra = fp.transpose();
    if !iota.tgt().same_rep(&tra) {
        return Err(Error::NotComposable("map does not land in the transpose of the presentation".into()));
    }
    let h = cokernel(iota);
    let mut sequence = CertifiedSequence::bounded(&[iota.clone(), h.projection.clone()])?;
    let cert = require_gp(&h.module, mode)?;
    sequence.set_tag(3, cert.tag());

    let proj = free_cover(&tra);
    let k = pullback(&proj, iota)?;
    let p0s = Module::free(tra.ring(), tra.side(), fp.relations.cols());
    let fs = free_map(&p0s, proj.src(), &fp.relations.dual());
    let into_k = factor_through_mono(&fs, &k.to_b)?;
    let (dp0s, dk) = (dual(&p0s), dual(&k.module));
    let g = dual_map(&into_k, &dp0s, &dk)?;
    let e = fp.cover.with_src(&dp0s.module);
    let presentation = GPresentation::new(g, e, mode)?;
    let gt = gorenstein_transpose(&presentation)?;
    let iso = iso_probe(&gt.module, iota.src(), seed);
    if let IsoVerdict::NotIsomorphic(why) = &iso {
        return Err(Error::Failure(format!("realized Gorenstein transpose differs from the given module: {why}")));
    }
    Ok(Realized31 { presentation, gorenstein_transpose: gt, sequence, cert, iso })
}

#[derive(Clone, Debug)]
pub struct Cor32Output {
    /// `H + Tr A`.
    pub module: Arc<Module>,
    pub realized: Realized31,
}

/// Realizes `H + Tr A` as a Gorenstein transpose of `A`, for `H` Gorenstein
/// projective on the side of `Tr A`.
pub fn construct_cor32(h: &Arc<Module>, a: &Arc<Module>, mode: &GpMode, seed: u64) -> Result<Cor32Output> {
    if h.side() != a.side().flip() || !crate::algebra::same_ring(h.ring(), a.ring()) {
        return Err(Error::RingMismatch("H must live on the side of the transpose".into()));
    }
    require_gp(h, mode)?;
    let fp = FreePresentation::of(&a.minimized());
    let r = fp.relations.rows();
    let emb = gp_embedding(h)?;
    let s = emb.inclusion.tgt().gens();
    let padded = FreePresentation { relations: fp.relations.pad_rows(a.algebra(), s), cover: fp.cover.clone() };
    let tr = fp.transpose();
    let tr_big = padded.transpose();
    let gens = tr_big.gen_images();
    let from_tr = ModuleMap::from_gen_images(&tr, &tr_big, &gens.select_cols(&(0..r).collect::<Vec<_>>()))?;
    let p = emb.inclusion.tgt();
    let from_p = ModuleMap::from_gen_images(p, &tr_big, &gens.select_cols(&(r..r + s).collect::<Vec<_>>()))?;
    let sum = direct_sum(h.ring(), h.side(), &[h.clone(), tr.clone()])?;
    let mat = from_p.compose(&emb.inclusion)?.matrix().hstack(from_tr.matrix());
    let iota = ModuleMap::new(&sum.module, &tr_big, mat)?;
    let realized = thm31_realize(&padded, &iota, mode, seed)?;
    Ok(Cor32Output { module: sum.module, realized })
}

#[derive(Clone, Debug)]
pub struct Prop36Output {
    pub cor25: Cor25Output,
    /// The module of projective dimension `n`.
    pub b: Arc<Module>,
    /// A transpose of `b`, whose Gorenstein transpose realizes `a`.
    pub t: Arc<Module>,
    pub realized: Realized31,
}

/// Realizes `a` of Gorenstein projective dimension `n` as a Gorenstein
/// transpose of a transpose of a module of projective dimension `n`.
pub fn construct_prop36(a: &Arc<Module>, bound: usize, mode: &GpMode, seed: u64) -> Result<Prop36Output> {
    let cor25 = construct_cor25(a, bound, mode)?;
    let b = cor25.module().clone();
    let f = b.relations().clone();
    let t = Module::from_presentation(b.ring(), b.side().flip(), f.dual())?;
    let fp = FreePresentation { relations: f.dual(), cover: free_cover(&t) };
    let tt = fp.transpose();
    let iso = ModuleMap::from_gen_images(&b, &tt, tt.gen_images())?;
    if !iso.is_iso() {
        return Err(Error::Failure("module differs from the transpose of its transpose".into()));
    }
    let iota = iso.compose(&cor25.sequence.maps()[1])?;
    let realized = thm31_realize(&fp, &iota, mode, seed)?;
    Ok(Prop36Output { cor25, b, t, realized })
}

/// How strongly an isomorphism claim was verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Evidence {
    Dimension,
    Invariants,
    Isomorphism,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evidence::Dimension => "dimension",
            Evidence::Invariants => "invariants",
            Evidence::Isomorphism => "isomorphism",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Clause {
    pub label: String,
    pub passed: bool,
    pub detail: String,
    pub evidence: Option<Evidence>,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub name: String,
    pub clauses: Vec<Clause>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, label: &str, passed: bool, detail: String, evidence: Option<Evidence>) {
        self.clauses.push(Clause { label: label.into(), passed, detail, evidence });
    }
}

/// Largest Ext module compared by an explicit isomorphism search.
const ISO_PROBE_LIMIT: usize = 12;

/// Ext tables in degrees `1..=bound` and the evidence that the value
/// modules agree.
fn compare_ext(x: &Arc<Module>, y: &Arc<Module>, bound: usize, seed: u64) -> (Vec<usize>, Vec<usize>, Evidence) {
    let (rx, ry) = (FreeResolution::new(x, bound + 1, true), FreeResolution::new(y, bound + 1, true));
    let dx = crate::homology::ext_dims_from(&rx, bound)[1..].to_vec();
    let dy = crate::homology::ext_dims_from(&ry, bound)[1..].to_vec();
    let mut evidence = Evidence::Isomorphism;
    if dx != dy {
        return (dx, dy, Evidence::Dimension);
    }
    for i in 1..=bound {
        let d = dx[i - 1];
        if d == 0 {
            continue;
        }
        if d > ISO_PROBE_LIMIT {
            evidence = evidence.min(Evidence::Dimension);
            continue;
        }
        match iso_probe(&ext_from(&rx, i).value, &ext_from(&ry, i).value, seed ^ i as u64) {
            IsoVerdict::Isomorphic(_) => {}
            IsoVerdict::Inconclusive => evidence = evidence.min(Evidence::Invariants),
            IsoVerdict::NotIsomorphic(_) => return (dx, dy, Evidence::Dimension),
        }
    }
    (dx, dy, evidence)
}

fn ext_clause(report: &mut TheoremReport, label: &str, x: &Arc<Module>, y: &Arc<Module>, bound: usize, seed: u64) {
    let (dx, dy, ev) = compare_ext(x, y, bound, seed);
    let passed = dx == dy;
    report.push(label, passed, format!("{dx:?} vs {dy:?}"), Some(ev));
}

/// `holds[n-1]` = whether the module is n-torsionfree, `n = 1..=bound`.
fn torsionfree_profile(m: &Arc<Module>, bound: usize) -> Vec<bool> {
    let t = ext_dims(&transpose(m), bound.max(1));
    (1..=bound).map(|n| t[1..=n].iter().all(|&d| d == 0)).collect()
}

fn torsionfree_clause(report: &mut TheoremReport, x: &Arc<Module>, y: &Arc<Module>, bound: usize) {
    let (px, py) = (torsionfree_profile(x, bound), torsionfree_profile(y, bound));
    report.push("n-torsionfree", px == py, format!("{px:?} vs {py:?}"), None);
}

fn gpd_clause(report: &mut TheoremReport, x: &Arc<Module>, y: &Arc<Module>, bound: usize, mode: &GpMode) -> Result<()> {
    let (gx, gy) = (gpd_bounded(x, bound, mode)?, gpd_bounded(y, bound, mode)?);
    report.push("gpd", gx == gy, format!("{gx} vs {gy}"), None);
    Ok(())
}

/// Compares a Gorenstein transpose of `A` with the transpose of `A`.
pub fn prop34_report(pi: &GPresentation, bound: usize, mode: &GpMode, seed: u64) -> Result<TheoremReport> {
    let a = pi.module();
    let tg = gorenstein_transpose(pi)?.module;
    let tr = transpose(a);
    let mut report = TheoremReport { name: "gorenstein transpose vs transpose".into(), clauses: Vec::new() };
    ext_clause(&mut report, "ext", &tg, &tr, bound, seed);
    torsionfree_clause(&mut report, &tg, &tr, bound);
    let (ga, gg, gt) = (gp_test(a, mode)?.passes(), gp_test(&tg, mode)?.passes(), gp_test(&tr, mode)?.passes());
    let consistent = ga == gg && gg == gt && (!tg.is_zero() || ga);
    report.push(
        "zero transpose / gp",
        consistent,
        format!("A gp {ga}, Gorenstein transpose gp {gg} (zero {}), transpose gp {gt}", tg.is_zero()),
        None,
    );
    gpd_clause(&mut report, &tg, &tr, bound, mode)?;
    Ok(report)
}

/// Compares a double Gorenstein transpose of `A` with `A`; `pi2` presents
/// the Gorenstein transpose of `pi`.
pub fn cor35_report(pi: &GPresentation, pi2: &GPresentation, bound: usize, mode: &GpMode, seed: u64) -> Result<TheoremReport> {
    let a = pi.module();
    let tg = gorenstein_transpose(pi)?.module;
    if !pi2.module().same_rep(&tg) {
        return Err(Error::NotComposable("second presentation does not present the Gorenstein transpose".into()));
    }
    let dtg = gorenstein_transpose(pi2)?.module;
    let mut report = TheoremReport { name: "double Gorenstein transpose vs module".into(), clauses: Vec::new() };
    ext_clause(&mut report, "ext", &dtg, a, bound, seed);
    torsionfree_clause(&mut report, &dtg, a, bound);
    gpd_clause(&mut report, &dtg, a, bound, mode)?;
    Ok(report)
}

/// For `0 -> M_3 -> M_2 -> M_1 -> 0` with `M_1` Gorenstein projective and
/// `M_3` nonzero, compares the Gorenstein projective dimensions of `M_3` and `M_2`.
pub fn lemma21_check(seq: &CertifiedSequence, bound: usize, mode: &GpMode) -> Result<TheoremReport> {
    if seq.len_objects() != 5 {
        return Err(Error::Shape("expected a short exact sequence".into()));
    }
    let (m3, m2, m1) = (seq.object(1), seq.object(2), seq.object(3));
    if m3.is_zero() {
        return Err(Error::OutOfRange("the submodule must be nonzero".into()));
    }
    require_gp(m1, mode)?;
    let mut report = TheoremReport { name: "gpd along a GP quotient".into(), clauses: Vec::new() };
    gpd_clause(&mut report, m3, m2, bound, mode)?;
    Ok(report)
}
