//! Surgery on exact sequences with Gorenstein projective terms: trading
//! them for projectives by pushouts along projective embeddings or by
//! pullbacks along projective covers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fpmod::{
    cokernel, factor_through_epi, factor_through_mono, free_cover, image, is_projective, kernel, pullback, pushout,
    CertifiedSequence, Module, ModuleMap, Pushout,
};
use crate::homology::{pd_bounded, Bounded, FreeResolution};
use crate::linalg::FpMatrix;

use super::{gp_embedding, gp_test, gpd_bounded, require_gp, tag_projectives, GpCertificate, GpMode};

fn certify(maps: &[ModuleMap]) -> Result<CertifiedSequence> {
    let mut s = CertifiedSequence::bounded(maps)?;
    s.tag_free_objects();
    Ok(s)
}

/// The map out of a pushout induced by `fb` and `fc`.
fn out_of_pushout(po: &Pushout, fb: &ModuleMap, fc: &ModuleMap) -> Result<ModuleMap> {
    let mat = fb.matrix().hstack(fc.matrix()).mul(&po.section);
    let map = ModuleMap::new(&po.module, fb.tgt(), mat)?;
    if map.compose(&po.from_b)?.matrix() != fb.matrix() || map.compose(&po.from_c)?.matrix() != fc.matrix() {
        return Err(Error::NotComposable("maps do not agree on the common source of the pushout".into()));
    }
    Ok(map)
}

fn check_chain_input(maps: &[ModuleMap], min_len: usize) -> Result<CertifiedSequence> {
    if maps.len() < min_len {
        return Err(Error::Shape(format!("expected a chain of at least {min_len} maps")));
    }
    CertifiedSequence::bounded(maps)
}

/// Certificates for the middle terms of `0 -> A -> G_k -> ... -> G_0 -> M -> 0`.
fn certify_middle(maps: &[ModuleMap], mode: &GpMode) -> Result<Vec<GpCertificate>> {
    maps[1..].iter().map(|f| require_gp(f.src(), mode)).collect()
}

fn all_middle_projective(maps: &[ModuleMap]) -> bool {
    maps[1..].iter().all(|f| is_projective(f.src()).is_projective())
}

/// `0 -> A -> G_1 -> G_0 -> M -> 0` into `0 -> A -> P -> G -> M -> 0` by
/// embedding `G_1` into a projective and pushing out twice.
fn branch_pushout(alpha: &ModuleMap, f: &ModuleMap, e: &ModuleMap, mode: &GpMode) -> Result<([ModuleMap; 3], GpCertificate)> {
    let emb = gp_embedding(f.src())?;
    let (im, onto) = image(f);
    let b = pushout(&onto, &emb.inclusion)?;
    let g = pushout(&im.inclusion, &b.from_b)?;
    let to_m = out_of_pushout(&g, e, &ModuleMap::zero(&b.module, e.tgt()))?;
    let a_to_p = emb.inclusion.compose(alpha)?;
    let p_to_g = g.from_c.compose(&b.from_c)?;
    let cert = require_gp(&g.module, mode)?;
    Ok(([a_to_p, p_to_g, to_m], cert))
}

/// `0 -> A -> G_1 -> G_0 -> M -> 0` into `0 -> A -> H -> Q -> M -> 0` by
/// covering `G_0` and pulling back twice.
fn branch_pullback(alpha: &ModuleMap, f: &ModuleMap, e: &ModuleMap, mode: &GpMode) -> Result<([ModuleMap; 3], GpCertificate)> {
    let cover = free_cover(f.tgt());
    let (im, onto) = image(f);
    let c = pullback(&cover, &im.inclusion)?;
    let h = pullback(&c.to_c, &onto)?;
    let a = alpha.src();
    let p = a.p();
    let wanted = FpMatrix::zeros(p, c.module.dim(), a.dim()).vstack(alpha.matrix());
    let into_h = h
        .inclusion
        .solve_matrix(&wanted)
        .ok_or_else(|| Error::Failure("kernel of the presentation does not lift to the pullback".into()))?;
    let a_to_h = ModuleMap::new(a, &h.module, into_h)?;
    let h_to_q = c.to_b.compose(&h.to_b)?;
    let q_to_m = e.compose(&cover)?;
    let cert = require_gp(&h.module, mode)?;
    Ok(([a_to_h, h_to_q, q_to_m], cert))
}

#[derive(Clone, Debug)]
pub struct Prop22Output {
    /// `0 -> A -> P -> G -> M -> 0`.
    pub via_pushout: CertifiedSequence,
    /// `0 -> A -> H -> Q -> M -> 0`.
    pub via_pullback: CertifiedSequence,
    /// Certificates of `G` and `H`.
    pub certs: [GpCertificate; 2],
}

/// Replaces the Gorenstein projective middle of `0 -> A -> G_1 -> G_0 -> M -> 0`
/// (given as its three maps) in both possible ways.
pub fn construct_prop22(maps: &[ModuleMap], mode: &GpMode) -> Result<Prop22Output> {
    if maps.len() != 3 {
        return Err(Error::Shape("expected the maps A -> G1 -> G0 -> M".into()));
    }
    check_chain_input(maps, 3)?;
    certify_middle(maps, mode)?;
    let (p_maps, gc) = branch_pushout(&maps[0], &maps[1], &maps[2], mode)?;
    let (q_maps, hc) = branch_pullback(&maps[0], &maps[1], &maps[2], mode)?;
    let mut via_pushout = certify(&p_maps)?;
    via_pushout.set_tag(3, gc.tag());
    tag_projectives(&mut via_pushout, &[1, 3, 4]);
    let mut via_pullback = certify(&q_maps)?;
    via_pullback.set_tag(2, hc.tag());
    tag_projectives(&mut via_pullback, &[1, 2, 4]);
    Ok(Prop22Output { via_pushout, via_pullback, certs: [gc, hc] })
}

/// Result of pushing the Gorenstein projective terms to the right.
struct LeftReduced {
    /// `A -> P_{k-1} -> ... -> P_1`.
    prefix: Vec<ModuleMap>,
    /// `P_1 -> A'`, absent when nothing was reduced.
    pending: Option<ModuleMap>,
    /// `A' -> G'_0 -> M`.
    chain: [ModuleMap; 2],
    certs: Vec<GpCertificate>,
}

/// Repeatedly trades the two leftmost Gorenstein projective terms for a
/// projective and a Gorenstein projective one, until a single GP term is left.
fn reduce_left(maps: &[ModuleMap], mode: &GpMode) -> Result<LeftReduced> {
    let mut maps = maps.to_vec();
    let mut prefix = Vec::new();
    let mut pending: Option<ModuleMap> = None;
    let mut certs = Vec::new();
    while maps.len() > 2 {
        let q = cokernel(&maps[1]);
        let induced = factor_through_epi(&maps[2], &q.projection)?;
        let ([a_to_p, p_to_g, g_to_k], cert) = branch_pushout(&maps[0], &maps[1], &q.projection, mode)?;
        let (sub, onto) = image(&p_to_g);
        prefix.push(match pending.take() {
            Some(c) => a_to_p.compose(&c)?,
            None => a_to_p,
        });
        pending = Some(onto);
        let mut next = vec![sub.inclusion, induced.compose(&g_to_k)?];
        next.extend(maps[3..].iter().cloned());
        maps = next;
        certs.push(cert);
    }
    Ok(LeftReduced { prefix, pending, chain: [maps[0].clone(), maps[1].clone()], certs })
}

#[derive(Clone, Debug)]
pub struct Thm24Output {
    /// `0 -> A -> P_{n-1} -> ... -> P_0 -> N -> 0` (forward) or
    /// `0 -> B -> Q_{n-1} -> ... -> Q_0 -> M -> 0` (backward).
    pub projective: CertifiedSequence,
    /// `0 -> M -> N -> G -> 0` (forward) or `0 -> H -> B -> A -> 0` (backward).
    pub complement: CertifiedSequence,
    /// Certificates of the Gorenstein projective modules built on the way,
    /// the complement's GP term last.
    pub certs: Vec<GpCertificate>,
}

/// Both output chains as plain maps, before certification.
fn forward(maps: &[ModuleMap], mode: &GpMode) -> Result<(Vec<ModuleMap>, [ModuleMap; 2], Vec<GpCertificate>)> {
    let red = reduce_left(maps, mode)?;
    let [into_g, e] = red.chain;
    let emb = gp_embedding(e.src())?;
    let po = pushout(&e, &emb.inclusion)?;
    let a_to_p0 = emb.inclusion.compose(&into_g)?;
    let mut proj = red.prefix;
    proj.push(match red.pending {
        Some(c) => a_to_p0.compose(&c)?,
        None => a_to_p0,
    });
    proj.push(po.from_c.clone());
    let to_g = out_of_pushout(&po, &ModuleMap::zero(e.tgt(), &emb.cokernel.module), &emb.cokernel.projection)?;
    let mut certs = red.certs;
    certs.push(require_gp(&emb.cokernel.module, mode)?);
    Ok((proj, [po.from_b.clone(), to_g], certs))
}

/// From `0 -> A -> G_{n-1} -> ... -> G_0 -> M -> 0` (its `n + 1` maps) with
/// Gorenstein projective `G_i`, builds `0 -> A -> P_{n-1} -> ... -> P_0 -> N -> 0`
/// with projective `P_i` and `0 -> M -> N -> G -> 0` with `G` Gorenstein projective.
pub fn construct_thm24_fwd(maps: &[ModuleMap], mode: &GpMode) -> Result<Thm24Output> {
    check_chain_input(maps, 2)?;
    let mut certs = certify_middle(maps, mode)?;
    if all_middle_projective(maps) {
        let m = maps[maps.len() - 1].tgt();
        let zero = Module::zero(m.ring(), m.side());
        let mut projective = certify(maps)?;
        tag_projectives(&mut projective, &[1, maps.len()]);
        let complement = certify(&[ModuleMap::identity(m), ModuleMap::zero(m, &zero)])?;
        return Ok(Thm24Output { projective, complement, certs });
    }
    let (proj, comp, more) = forward(maps, mode)?;
    certs.extend(more);
    let mut projective = certify(&proj)?;
    tag_projectives(&mut projective, &[1, proj.len()]);
    let mut complement = certify(&comp)?;
    complement.set_tag(3, certs.last().expect("complement certificate").tag());
    Ok(Thm24Output { projective, complement, certs })
}

/// Backward surgery: returns `B -> Q_{n-1} -> ... -> Q_0 -> M` and `H -> B -> A`.
fn backward(maps: &[ModuleMap], mode: &GpMode, certs: &mut Vec<GpCertificate>) -> Result<(Vec<ModuleMap>, [ModuleMap; 2])> {
    let n = maps.len() - 1;
    if n == 1 {
        let (a, e) = (&maps[0], &maps[1]);
        let cover = free_cover(a.tgt());
        let pb = pullback(&cover, a)?;
        let k = kernel(&cover);
        let p = a.src().p();
        let wanted = k.inclusion.matrix().vstack(&FpMatrix::zeros(p, a.src().dim(), k.module.dim()));
        let into_b = pb
            .inclusion
            .solve_matrix(&wanted)
            .ok_or_else(|| Error::Failure("kernel of the cover does not lift to the pullback".into()))?;
        certs.push(require_gp(&k.module, mode)?);
        let h_to_b = ModuleMap::new(&k.module, &pb.module, into_b)?;
        return Ok((vec![pb.to_b.clone(), e.compose(&cover)?], [h_to_b, pb.to_c.clone()]));
    }
    let (d1, e) = (&maps[n - 1], &maps[n]);
    let k = kernel(d1);
    let ([k_to_h, h_to_q, q_to_m], cert) = branch_pullback(&k.inclusion, d1, e, mode)?;
    certs.push(cert);
    let into_k = factor_through_mono(&maps[n - 2], &k.inclusion)?;
    let (sub, onto) = image(&h_to_q);
    let mut next: Vec<ModuleMap> = maps[..n - 2].to_vec();
    next.push(k_to_h.compose(&into_k)?);
    next.push(onto);
    let (mut qs, hb) = backward(&next, mode, certs)?;
    let last = qs.pop().expect("nonempty chain");
    qs.push(sub.inclusion.compose(&last)?);
    qs.push(q_to_m);
    Ok((qs, hb))
}

/// From `0 -> A -> G_{n-1} -> ... -> G_0 -> M -> 0` builds
/// `0 -> B -> Q_{n-1} -> ... -> Q_0 -> M -> 0` with projective `Q_i` and
/// `0 -> H -> B -> A -> 0` with `H` Gorenstein projective.
pub fn construct_thm24_bwd(maps: &[ModuleMap], mode: &GpMode) -> Result<Thm24Output> {
    check_chain_input(maps, 2)?;
    let mut certs = certify_middle(maps, mode)?;
    if all_middle_projective(maps) {
        let a = maps[0].src();
        let zero = Module::zero(a.ring(), a.side());
        let mut projective = certify(maps)?;
        tag_projectives(&mut projective, &[1, maps.len()]);
        let complement = certify(&[ModuleMap::zero(&zero, a), ModuleMap::identity(a)])?;
        return Ok(Thm24Output { projective, complement, certs });
    }
    let (qs, hb) = backward(maps, mode, &mut certs)?;
    let mut projective = certify(&qs)?;
    tag_projectives(&mut projective, &[1, qs.len()]);
    let mut complement = certify(&hb)?;
    complement.set_tag(1, certs.last().expect("complement certificate").tag());
    Ok(Thm24Output { projective, complement, certs })
}

/// `0 -> Omega^n M -> F_{n-1} -> ... -> F_0 -> M -> 0` from the minimal
/// resolution, preceded by `0 -> Omega^n M`: a chain of `n + 2` maps.
fn resolution_chain(m: &Arc<Module>, n: usize) -> Result<Vec<ModuleMap>> {
    let seq = FreeResolution::new(m, n.saturating_sub(1), true).certify()?;
    let maps = seq.maps();
    if n == 0 {
        // 0 -> M -> M -> 0
        return Ok(vec![maps[0].clone(), ModuleMap::identity(m)]);
    }
    Ok(maps[..maps.len() - 1].to_vec())
}

#[derive(Clone, Debug)]
pub struct Cor25Output {
    /// `0 -> M -> N -> G -> 0`.
    pub sequence: CertifiedSequence,
    /// `0 -> P_n -> ... -> P_0 -> N -> 0`.
    pub resolution: CertifiedSequence,
    pub gpd: usize,
    pub pd: Bounded,
    pub cert: GpCertificate,
}

impl Cor25Output {
    pub fn module(&self) -> &Arc<Module> {
        self.sequence.object(2)
    }
}

/// `0 -> M -> N -> G -> 0` with `pd N = Gpd M` and `G` Gorenstein projective.
pub fn construct_cor25(m: &Arc<Module>, bound: usize, mode: &GpMode) -> Result<Cor25Output> {
    let n = gpd_bounded(m, bound, mode)?
        .exact()
        .ok_or_else(|| Error::Unbounded(format!("Gorenstein projective dimension exceeds {bound}")))?;
    let (proj, comp, cert) = if n == 0 {
        let emb = gp_embedding(m)?;
        let p = emb.inclusion.tgt().clone();
        let cert = require_gp(&emb.cokernel.module, mode)?;
        (vec![ModuleMap::identity(&p)], [emb.inclusion, emb.cokernel.projection], cert)
    } else {
        let chain = resolution_chain(m, n)?;
        let (mut proj, comp, mut certs) = forward(&chain, mode)?;
        // the chain starts at the zero module
        proj.remove(0);
        (proj, comp, certs.pop().expect("complement certificate"))
    };
    let mut sequence = certify(&comp)?;
    sequence.set_tag(3, cert.tag());
    let mut resolution = certify(&proj)?;
    tag_projectives(&mut resolution, &[proj.len()]);
    let pd = pd_bounded(sequence.object(2), n.max(1));
    if pd != Bounded::Exact(n) {
        return Err(Error::Failure(format!("constructed module has pd {pd}, expected = {n}")));
    }
    Ok(Cor25Output { sequence, resolution, gpd: n, pd, cert })
}

#[derive(Clone, Debug)]
pub struct Thm26Output {
    /// `0 -> X_n -> ... -> X_0 -> M -> 0`.
    pub sequence: CertifiedSequence,
    pub t: usize,
    pub n: usize,
    pub cert: GpCertificate,
}

impl Thm26Output {
    /// `X_i`.
    pub fn term(&self, i: usize) -> &Arc<Module> {
        self.sequence.object(self.n - i + 1)
    }
}

/// Maps `X_n -> ... -> X_0 -> M` with `X_t` Gorenstein projective and the
/// other terms projective.
fn resolution_with_slot(m: &Arc<Module>, t: usize, n: usize, mode: &GpMode) -> Result<Vec<ModuleMap>> {
    if n == 0 {
        return Ok(vec![ModuleMap::identity(m)]);
    }
    if t >= 1 {
        let cover = free_cover(m);
        let k = kernel(&cover);
        let mut maps = resolution_with_slot(&k.module, t - 1, n - 1, mode)?;
        let last = maps.pop().expect("nonempty chain");
        maps.push(k.inclusion.compose(&last)?);
        maps.push(cover);
        return Ok(maps);
    }
    let chain = resolution_chain(m, n)?;
    let red = reduce_left(&chain, mode)?;
    let [into_g, e] = red.chain;
    let mut maps: Vec<ModuleMap> = red.prefix[1..].to_vec();
    maps.push(into_g.compose(&red.pending.expect("at least one reduction"))?);
    maps.push(e);
    Ok(maps)
}

/// `0 -> X_n -> ... -> X_0 -> M -> 0` with `X_t` Gorenstein projective and
/// every other `X_i` projective, for `Gpd M <= n`.
pub fn construct_thm26(m: &Arc<Module>, t: usize, n: usize, mode: &GpMode) -> Result<Thm26Output> {
    if t > n {
        return Err(Error::OutOfRange(format!("slot {t} outside 0..={n}")));
    }
    if gpd_bounded(m, n, mode)?.exact().is_none() {
        return Err(Error::OutOfRange(format!("Gorenstein projective dimension exceeds {n}")));
    }
    let maps = resolution_with_slot(m, t, n, mode)?;
    let mut sequence = certify(&maps)?;
    let slot = n - t + 1;
    let cert = gp_test(sequence.object(slot), mode)?;
    if !cert.passes() {
        return Err(Error::Failure(format!("slot {t} is not Gorenstein projective: {}", cert.verdict)));
    }
    sequence.set_tag(slot, cert.tag());
    tag_projectives(&mut sequence, &[slot, n + 2]);
    for i in 1..=n + 1 {
        if i != slot && !matches!(sequence.tags()[i], crate::fpmod::ObjectTag::Free | crate::fpmod::ObjectTag::Projective(_)) {
            return Err(Error::Failure(format!("term at position {i} is not projective")));
        }
    }
    Ok(Thm26Output { sequence, t, n, cert })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecoverEntry {
    pub hom_dim: usize,
    pub rank: usize,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecoverReport {
    pub entries: Vec<PrecoverEntry>,
}

impl PrecoverReport {
    pub fn all_surjective(&self) -> bool {
        self.entries.iter().all(|e| e.surjective)
    }
}

/// For each test module `X`, whether every map `X -> M` lifts along `G -> M`.
pub fn precover_check(epi: &ModuleMap, tests: &[Arc<Module>]) -> Result<PrecoverReport> {
    let (g, m) = (epi.src(), epi.tgt());
    let p = m.p();
    let mut entries = Vec::new();
    for x in tests {
        let to_m = x.hom_dim(m)?;
        let composed: Vec<Vec<u32>> =
            x.hom_basis(g)?.iter().map(|h| epi.matrix().mul(h).data().to_vec()).collect();
        let rank = if composed.is_empty() { 0 } else { FpMatrix::from_cols(p, m.dim() * x.dim(), &composed).rank() };
        entries.push(PrecoverEntry { hom_dim: to_m, rank, surjective: rank == to_m });
    }
    Ok(PrecoverReport { entries })
}
