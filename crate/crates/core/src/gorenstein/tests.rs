use super::*;
use crate::algebra::{dual_numbers, path_a2, three_dim_local, triangular_over};
use crate::fpmod::{is_projective, iso_probe, ModuleMap};
use crate::homology::{pd_bounded, top_of_ring};

fn ring(alg: crate::Result<crate::algebra::Algebra>) -> Arc<Ring> {
    Ring::new(alg.unwrap())
}

fn source_simple(r: &Arc<Ring>) -> Arc<Module> {
    Module::from_presentation(r, Side::Left, RelMatrix::new(2, 1, vec![vec![1, 0, 0], vec![0, 0, 1]])).unwrap()
}

/// `0 -> k -> k -> k -> k -> 0` over the dual numbers, alternating identity and zero.
fn k_chain(d: &Arc<Ring>) -> Vec<ModuleMap> {
    let k = top_of_ring(d, Side::Left);
    vec![ModuleMap::identity(&k), ModuleMap::zero(&k, &k), ModuleMap::identity(&k)]
}

#[test]
fn gp_test_modes() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::ring(&d, 0).unwrap();
    let c = gp_test(&top_of_ring(&d, Side::Left), &mode).unwrap();
    assert_eq!(c.verdict, GpVerdict::Gp);
    assert!(c.ext_module.is_empty());

    let l = ring(three_dim_local(2));
    assert!(matches!(GpMode::ring(&l, 2), Err(Error::ModeMismatch(_))));
    let c = gp_test(&top_of_ring(&l, Side::Left), &GpMode::bounded(4)).unwrap();
    assert_eq!(c.verdict, GpVerdict::NotGp { degree: 1, transpose: false });
    let c = gp_test(&Module::free(&l, Side::Left, 2), &GpMode::bounded(4)).unwrap();
    assert_eq!(c.verdict, GpVerdict::GpUpToBound(4));

    // the two modes agree on a Gorenstein ring whenever bounded is definitive
    let t = ring(triangular_over(&dual_numbers(2, 2).unwrap()));
    let complete = GpMode::auto(&t);
    assert!(complete.is_complete());
    let m = top_of_ring(&t, Side::Left);
    let (a, b) = (gp_test(&m, &complete).unwrap(), gp_test(&m, &GpMode::bounded(4)).unwrap());
    assert_eq!(a.passes(), b.passes());
}

#[test]
fn gorenstein_projective_dimension() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    assert_eq!(gpd_bounded(&top_of_ring(&d, Side::Left), 6, &mode).unwrap(), Bounded::Exact(0));
    assert_eq!(gpd_bounded(&Module::zero(&d, Side::Left), 6, &mode).unwrap(), Bounded::Exact(0));
    let pa = ring(path_a2(2));
    let mode = GpMode::auto(&pa);
    assert_eq!(gpd_bounded(&source_simple(&pa), 6, &mode).unwrap(), Bounded::Exact(1));
}

#[test]
fn embedding_into_free() {
    let d = ring(dual_numbers(2, 2));
    let k = top_of_ring(&d, Side::Left);
    let emb = gp_embedding(&k).unwrap();
    assert_eq!(emb.inclusion.tgt().dim(), 2);
    assert!(iso_probe(&emb.cokernel.module, &k, 0).is_iso());
    let l = ring(three_dim_local(2));
    // torsionless but not reflexive still embeds
    assert!(gp_embedding(&top_of_ring(&l, Side::Left)).is_ok());
}

#[test]
fn gorenstein_transposes() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let k = top_of_ring(&d, Side::Left);
    let free = GPresentation::free(&k, &mode).unwrap();
    let t = gorenstein_transpose(&free).unwrap();
    assert!(iso_probe(&t.module, &transpose(&k), 0).is_iso());
    t.sequence.revalidate().unwrap();

    let zero = Module::zero(&d, Side::Left);
    let pi = GPresentation::new(ModuleMap::zero(&zero, &k), ModuleMap::identity(&k), &mode).unwrap();
    let t = gorenstein_transpose(&pi).unwrap();
    assert!(t.module.is_zero());
    t.sequence.revalidate().unwrap();
}

#[test]
fn two_branches() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let out = construct_prop22(&k_chain(&d), &mode).unwrap();
    let p = out.via_pushout.object(2);
    assert_eq!(p.dim(), 2);
    assert_eq!(out.via_pushout.object(3).dim(), 2);
    assert!(matches!(out.via_pushout.tags()[2], ObjectTag::Free));
    assert!(matches!(out.via_pullback.tags()[3], ObjectTag::Free));
    out.via_pushout.revalidate().unwrap();
    out.via_pullback.revalidate().unwrap();

    // trivial input: A = 0, G_1 = 0, G_0 = M free
    let r = Module::free(&d, Side::Left, 1);
    let z = Module::zero(&d, Side::Left);
    let out = construct_prop22(&[ModuleMap::zero(&z, &z), ModuleMap::zero(&z, &r), ModuleMap::identity(&r)], &mode)
        .unwrap();
    assert_eq!(out.via_pushout.object(3).dim(), 2);
    assert_eq!(out.via_pullback.object(3).dim(), 2);
}

#[test]
fn syzygy_surgery() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let fwd = construct_thm24_fwd(&k_chain(&d), &mode).unwrap();
    fwd.projective.revalidate().unwrap();
    fwd.complement.revalidate().unwrap();
    for i in 2..=3 {
        assert!(matches!(fwd.projective.tags()[i], ObjectTag::Free | ObjectTag::Projective(_)));
    }
    let bwd = construct_thm24_bwd(&k_chain(&d), &mode).unwrap();
    bwd.projective.revalidate().unwrap();
    bwd.complement.revalidate().unwrap();
    assert_eq!(bwd.projective.object(4).dim(), 1);

    // one-step input is the first branch
    let k = top_of_ring(&d, Side::Left);
    let z = Module::zero(&d, Side::Left);
    let short = [ModuleMap::zero(&z, &k), ModuleMap::identity(&k)];
    let fwd = construct_thm24_fwd(&short, &mode).unwrap();
    assert_eq!(fwd.projective.object(2).dim(), 2);

    // projective middle terms are left alone
    let res = crate::homology::free_resolution(&k, 1, true).certify().unwrap();
    let maps = &res.maps()[1..res.maps().len() - 1];
    let fwd = construct_thm24_fwd(maps, &mode).unwrap();
    assert!(fwd.complement.object(3).is_zero());
    let bwd = construct_thm24_bwd(maps, &mode).unwrap();
    assert!(bwd.complement.object(1).is_zero());
}

#[test]
fn projective_dimension_equal_to_gpd() {
    let pa = ring(path_a2(2));
    let mode = GpMode::auto(&pa);
    let out = construct_cor25(&source_simple(&pa), 6, &mode).unwrap();
    assert_eq!(out.pd, Bounded::Exact(1));
    out.sequence.revalidate().unwrap();
    out.resolution.revalidate().unwrap();

    let d = ring(dual_numbers(2, 2));
    let out = construct_cor25(&top_of_ring(&d, Side::Left), 6, &GpMode::auto(&d)).unwrap();
    assert_eq!(out.gpd, 0);
    assert_eq!(pd_bounded(out.module(), 2), Bounded::Exact(0));
}

#[test]
fn resolutions_with_one_gp_term() {
    let pa = ring(path_a2(2));
    let mode = GpMode::auto(&pa);
    let s = source_simple(&pa);
    let a = construct_thm26(&s, 0, 1, &mode).unwrap();
    let b = construct_thm26(&s, 1, 1, &mode).unwrap();
    a.sequence.revalidate().unwrap();
    b.sequence.revalidate().unwrap();
    assert!(matches!(a.sequence.tags()[2], ObjectTag::Gp { .. }));
    assert!(matches!(b.sequence.tags()[1], ObjectTag::Gp { .. }));
    assert!(construct_thm26(&s, 2, 1, &mode).is_err());

    let r = Module::free(&pa, Side::Left, 1);
    let c = construct_thm26(&r, 1, 2, &mode).unwrap();
    for i in 1..=3 {
        assert!(is_projective(c.sequence.object(i)).is_projective());
    }

    // the GP end of a t = 0 resolution is a precover for the projectives
    let epi = &a.sequence.maps()[2];
    let tests = vec![Module::free(&pa, Side::Left, 1), crate::fpmod::image(&free_identity_part(&pa)).0.module];
    assert!(precover_check(epi, &tests).unwrap().all_surjective());
}

fn free_identity_part(pa: &Arc<Ring>) -> ModuleMap {
    // right multiplication by e1 on R, whose image is the projective R e1
    let r = Module::free(pa, Side::Left, 1);
    crate::fpmod::free_map(&r, &r, &RelMatrix::new(1, 1, vec![vec![1, 0, 0]]))
}

#[test]
fn precover_failures() {
    let d = ring(dual_numbers(2, 2));
    let k = top_of_ring(&d, Side::Left);
    let id = ModuleMap::identity(&k);
    assert!(precover_check(&id, std::slice::from_ref(&k)).unwrap().all_surjective());
    let cover = crate::fpmod::free_cover(&k);
    let rep = precover_check(&cover, std::slice::from_ref(&k)).unwrap();
    assert!(!rep.all_surjective());
}

fn zero_transpose_presentation(d: &Arc<Ring>, mode: &GpMode) -> GPresentation {
    let k = top_of_ring(d, Side::Left);
    let zero = Module::zero(d, Side::Left);
    GPresentation::new(ModuleMap::zero(&zero, &k), ModuleMap::identity(&k), mode).unwrap()
}

#[test]
fn embedding_into_a_transpose() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let k = top_of_ring(&d, Side::Left);
    let emb = thm31_embed(&GPresentation::free(&k, &mode).unwrap(), &mode).unwrap();
    assert!(emb.cokernel().is_zero());
    emb.sequence.revalidate().unwrap();

    let emb = thm31_embed(&zero_transpose_presentation(&d, &mode), &mode).unwrap();
    assert!(emb.gorenstein_transpose.module.is_zero());
    assert!(iso_probe(emb.cokernel(), &transpose(&k), 0).is_iso());
}

#[test]
fn realizing_submodules_of_a_transpose() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let k = top_of_ring(&d, Side::Left);
    let fp = FreePresentation::of(&k);
    let tr = fp.transpose();
    let r = thm31_realize(&fp, &ModuleMap::identity(&tr), &mode, 1).unwrap();
    assert!(r.iso.is_iso());

    let zero = Module::zero(&d, Side::Right);
    let r = thm31_realize(&fp, &ModuleMap::zero(&zero, &tr), &mode, 1).unwrap();
    assert!(r.gorenstein_transpose.module.is_zero());
    assert_eq!(r.presentation.g.tgt().dim(), 2);

    // round trip through the embedding
    let t = ring(triangular_over(&dual_numbers(2, 2).unwrap()));
    let mode = GpMode::auto(&t);
    let s = top_of_ring(&t, Side::Left);
    let emb = thm31_embed(&GPresentation::free(&s, &mode).unwrap(), &mode).unwrap();
    let back = thm31_realize(&emb.presentation, &emb.sequence.maps()[1], &mode, 2).unwrap();
    let (x, y) = (&back.gorenstein_transpose.module, &emb.gorenstein_transpose.module);
    assert_eq!(ext_dims(x, 4), ext_dims(y, 4));
}

#[test]
fn adding_gp_summands_to_a_transpose() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let k = top_of_ring(&d, Side::Left);
    let out = construct_cor32(&Module::zero(&d, Side::Right), &k, &mode, 0).unwrap();
    assert_eq!(out.module.dim(), 1);
    let out = construct_cor32(&Module::free(&d, Side::Right, 1), &k, &mode, 0).unwrap();
    assert_eq!(out.module.dim(), 3);
    assert!(out.realized.iso.is_iso());
    let out = construct_cor32(&top_of_ring(&d, Side::Right), &k, &mode, 0).unwrap();
    assert_eq!(out.module.dim(), 2);
    assert!(!matches!(out.realized.iso, crate::fpmod::IsoVerdict::NotIsomorphic(_)));
    assert!(construct_cor32(&k, &k, &mode, 0).is_err());
}

#[test]
fn invariants_of_gorenstein_transposes() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let k = top_of_ring(&d, Side::Left);
    let free = GPresentation::free(&k, &mode).unwrap();
    assert!(prop34_report(&free, 6, &mode, 0).unwrap().passed());
    let pi = zero_transpose_presentation(&d, &mode);
    let rep = prop34_report(&pi, 6, &mode, 0).unwrap();
    assert!(rep.passed(), "{rep:?}");

    let zero = gorenstein_transpose(&pi).unwrap().module;
    let pi2 = GPresentation::free(&zero, &mode).unwrap();
    assert!(cor35_report(&pi, &pi2, 6, &mode, 0).unwrap().passed());
    let tk = gorenstein_transpose(&free).unwrap().module;
    let free2 = GPresentation::free(&tk, &mode).unwrap();
    assert!(cor35_report(&free, &free2, 6, &mode, 0).unwrap().passed());
    assert!(cor35_report(&free, &pi2, 6, &mode, 0).is_err());

    let pa = ring(path_a2(2));
    let mode = GpMode::auto(&pa);
    let s = source_simple(&pa);
    let rep = prop34_report(&GPresentation::free(&s, &mode).unwrap(), 4, &mode, 0).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn double_transposes_of_finite_projective_dimension() {
    let pa = ring(path_a2(2));
    let mode = GpMode::auto(&pa);
    let out = construct_prop36(&source_simple(&pa), 6, &mode, 0).unwrap();
    assert_eq!(pd_bounded(&out.b, 3), Bounded::Exact(1));
    assert!(!matches!(out.realized.iso, crate::fpmod::IsoVerdict::NotIsomorphic(_)));

    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let out = construct_prop36(&top_of_ring(&d, Side::Left), 6, &mode, 0).unwrap();
    assert!(is_projective(&out.b).is_projective());
}

#[test]
fn gpd_along_gp_quotients() {
    let d = ring(dual_numbers(2, 2));
    let mode = GpMode::auto(&d);
    let k = top_of_ring(&d, Side::Left);
    let cover = crate::fpmod::free_cover(&k);
    let ker = crate::fpmod::kernel(&cover);
    let seq = CertifiedSequence::bounded(&[ker.inclusion.clone(), cover.clone()]).unwrap();
    assert!(lemma21_check(&seq, 6, &mode).unwrap().passed());
    let r = Module::free(&d, Side::Left, 1);
    let z = Module::zero(&d, Side::Left);
    let seq = CertifiedSequence::bounded(&[ModuleMap::zero(&z, &r), ModuleMap::identity(&r)]).unwrap();
    assert!(lemma21_check(&seq, 6, &mode).is_err());
}

#[test]
fn seeded_sweep_over_triangular_ring() {
    use rand::SeedableRng;
    let t = ring(triangular_over(&dual_numbers(2, 2).unwrap()));
    let mode = GpMode::auto(&t);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let pool = GpPool::new(&t, Side::Left, &mode, 4, &mut rng).unwrap();
    let rpool = GpPool::new(&t, Side::Right, &mode, 3, &mut rng).unwrap();
    assert!(pool.modules.len() >= 2);
    for i in 0..6 {
        let a = random_module(&t, Side::Left, 2, &mut rng);
        let pi = random_gp_presentation(&a, &pool, &mode, &mut rng).unwrap();
        let rep = prop34_report(&pi, 4, &mode, i).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let emb = thm31_embed(&pi, &mode).unwrap();
        emb.sequence.revalidate().unwrap();
        let back = thm31_realize(&emb.presentation, &emb.sequence.maps()[1], &mode, i).unwrap();
        assert!(!matches!(back.iso, crate::fpmod::IsoVerdict::NotIsomorphic(_)));

        let tg = gorenstein_transpose(&pi).unwrap().module;
        let pi2 = random_gp_presentation(&tg, &rpool, &mode, &mut rng).unwrap();
        assert!(cor35_report(&pi, &pi2, 4, &mode, i).unwrap().passed());

        let chain = random_gp_resolution(&a, 2, &pool, &mut rng).unwrap();
        let fwd = construct_thm24_fwd(&chain, &mode).unwrap();
        fwd.projective.revalidate().unwrap();
        let bwd = construct_thm24_bwd(&chain, &mode).unwrap();
        bwd.complement.revalidate().unwrap();
        let p22 = construct_prop22(&random_gp_resolution(&a, 2, &pool, &mut rng).unwrap(), &mode).unwrap();
        p22.via_pullback.revalidate().unwrap();

        let gpd = gpd_bounded(&a, 4, &mode).unwrap();
        assert!(matches!(gpd, Bounded::Exact(0) | Bounded::Exact(1)));
        let res = construct_thm26(&a, 1, 2, &mode).unwrap();
        res.sequence.revalidate().unwrap();
        let out = construct_prop36(&a, 4, &mode, i).unwrap();
        assert_eq!(pd_bounded(&out.b, 4), gpd);
    }
}
