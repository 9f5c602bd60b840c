use super::*;
use crate::algebra::{dual_numbers, path_a2, three_dim_local, Ring, Side};

fn dual2() -> Arc<Ring> {
    Ring::new(dual_numbers(2, 2).unwrap())
}

fn el(v: &[u32]) -> Vec<u32> {
    v.to_vec()
}

/// `R / (x)` over `F_2[x]/(x^2)`.
fn simple(r: &Arc<Ring>) -> Arc<Module> {
    Module::from_presentation(r, Side::Left, RelMatrix::new(1, 1, vec![el(&[0, 1])])).unwrap()
}

fn mult_x(r: &Arc<Ring>, side: Side) -> ModuleMap {
    let f = Module::free(r, side, 1);
    free_map(&f, &f, &RelMatrix::new(1, 1, vec![el(&[0, 1])]))
}

#[test]
fn presentations_over_dual_numbers() {
    let r = dual2();
    let free = Module::from_presentation(&r, Side::Left, RelMatrix::zero(r.base(), 0, 1)).unwrap();
    assert_eq!(free.dim(), 2);
    assert_eq!(simple(&r).dim(), 1);
    let zero = Module::from_presentation(&r, Side::Left, RelMatrix::new(1, 1, vec![el(&[1, 0])])).unwrap();
    assert_eq!(zero.dim(), 0);
}

#[test]
fn representation_constructor() {
    let r = dual2();
    let one = FpMatrix::identity(2, 1);
    let k = Module::from_representation(&r, Side::Left, vec![one, FpMatrix::zeros(2, 1, 1)]).unwrap();
    assert_eq!(k.gens(), 1);
    assert_eq!(k.relations().rows(), 1);
    assert_eq!(k.relations().get(0, 0), &[0, 1]);

    for alg in [dual_numbers(2, 2).unwrap(), path_a2(2).unwrap(), three_dim_local(2).unwrap()] {
        let r = Ring::new(alg);
        let acts: Vec<FpMatrix> = (0..r.dim()).map(|b| r.base().left_basis_mat(b).clone()).collect();
        let m = Module::from_representation(&r, Side::Left, acts).unwrap();
        assert_eq!((m.gens(), m.relations().rows()), (1, 0));
    }

    let z = Module::from_representation(&r, Side::Left, vec![FpMatrix::zeros(2, 0, 0); 2]).unwrap();
    assert!(z.is_zero());

    let bad = Module::from_representation(&r, Side::Left, vec![one_by_one(1), one_by_one(1)]);
    assert!(matches!(bad, Err(Error::InvalidModule(_))));
}

fn one_by_one(v: u32) -> FpMatrix {
    FpMatrix::from_rows(2, 1, &[vec![v]])
}

#[test]
fn presentation_round_trip_preserves_representation() {
    let r = Ring::new(path_a2(2).unwrap());
    let rel = RelMatrix::new(1, 2, vec![el(&[0, 0, 1]), el(&[0, 1, 0])]);
    let m = Module::from_presentation(&r, Side::Left, rel).unwrap();
    let again = Module::from_presentation(&r, Side::Left, m.relations().clone()).unwrap();
    assert!(iso_probe(&m, &again, 1).is_iso());
    let rep = Module::from_representation(&r, Side::Left, m.actions().to_vec()).unwrap();
    let back = Module::from_presentation(&r, Side::Left, rep.relations().clone()).unwrap();
    assert!(iso_probe(&m, &back, 2).is_iso());
}

#[test]
fn hom_dimensions() {
    let r = dual2();
    let k = simple(&r);
    let free = Module::free(&r, Side::Left, 1);
    assert_eq!(k.hom_basis(&k).unwrap().len(), 1);
    assert_eq!(k.hom_dim(&free).unwrap(), 1);
    for m in [k.clone(), free.clone(), Module::free(&r, Side::Left, 3)] {
        assert_eq!(free.hom_dim(&m).unwrap(), m.dim());
        assert_eq!(Module::free(&r, Side::Left, 2).hom_dim(&m).unwrap(), 2 * m.dim());
    }
    for h in k.hom_basis(&free).unwrap() {
        ModuleMap::new(&k, &free, h).unwrap();
    }
    assert!(k.hom_dim(&Module::free(&r, Side::Right, 1)).is_err());
}

#[test]
fn duals() {
    let r = dual2();
    let f2 = Module::free(&r, Side::Left, 2);
    let d = dual(&f2);
    assert_eq!(d.module.side(), Side::Right);
    assert!(d.module.same_rep(&Module::free(&r, Side::Right, 2)));

    let dk = dual(&simple(&r));
    assert_eq!((dk.module.dim(), dk.module.side()), (1, Side::Right));
    let dz = dual(&Module::zero(&r, Side::Left));
    assert!(dz.module.is_zero());

    let x = mult_x(&r, Side::Left);
    let d1 = dual(x.src());
    let dx = dual_map(&x, &d1, &d1).unwrap();
    assert_eq!(dx.matrix(), mult_x(&r, Side::Right).matrix());
    let id = dual_map(&ModuleMap::identity(&f2), &d, &d).unwrap();
    assert_eq!(id.matrix(), &FpMatrix::identity(2, 4));
    assert!(dual_map(&ModuleMap::zero(&f2, &f2), &d, &d).unwrap().is_zero());
}

#[test]
fn duals_are_contravariant_and_double_dual_of_free_maps() {
    let r = Ring::new(path_a2(2).unwrap());
    let a = Module::free(&r, Side::Left, 1);
    let b = Module::free(&r, Side::Left, 2);
    let f = free_map(&a, &b, &RelMatrix::new(1, 2, vec![el(&[0, 0, 1]), el(&[1, 0, 0])]));
    let g = free_map(&b, &a, &RelMatrix::new(2, 1, vec![el(&[0, 1, 0]), el(&[0, 0, 1])]));
    let (da, db) = (dual(&a), dual(&b));
    let gf = g.compose(&f).unwrap();
    let lhs = dual_map(&gf, &da, &da).unwrap();
    let rhs = dual_map(&f, &da, &db).unwrap().compose(&dual_map(&g, &db, &da).unwrap()).unwrap();
    assert_eq!(lhs.matrix(), rhs.matrix());
    let fd = dual_map(&f, &da, &db).unwrap();
    let (dda, ddb) = (dual(&da.module), dual(&db.module));
    let fdd = dual_map(&fd, &ddb, &dda).unwrap();
    assert_eq!(fdd.matrix(), f.matrix());
}

#[test]
fn direct_sums() {
    let r = dual2();
    let k = simple(&r);
    let z = Module::zero(&r, Side::Left);
    let s = direct_sum(&r, Side::Left, &[k.clone(), z]).unwrap();
    assert!(s.module.same_rep(&k));
    let kk = direct_sum(&r, Side::Left, &[k.clone(), k.clone()]).unwrap();
    assert_eq!(kk.module.dim(), 2);
    assert!(kk.module.action(&[0, 1]).is_zero());
    let f1 = Module::free(&r, Side::Left, 1);
    let ff = direct_sum(&r, Side::Left, &[f1.clone(), f1]).unwrap();
    assert!(ff.module.same_rep(&Module::free(&r, Side::Left, 2)));
}

#[test]
fn kernels_images_cokernels() {
    let r = dual2();
    let f = Module::free(&r, Side::Left, 1);
    assert!(kernel(&ModuleMap::identity(&f)).module.is_zero());
    let (im, co) = image(&mult_x(&r, Side::Left));
    assert_eq!(im.module.dim(), 1);
    assert_eq!(im.inclusion.matrix().mul(co.matrix()), *mult_x(&r, Side::Left).matrix());
    let k = simple(&r);
    let c = cokernel(&ModuleMap::zero(&k, &f));
    assert!(c.module.same_rep(&f));
}

#[test]
fn pushouts_and_pullbacks() {
    let r = dual2();
    let f = Module::free(&r, Side::Left, 1);
    let id = ModuleMap::identity(&f);
    assert_eq!(pushout(&id, &id).unwrap().module.dim(), 2);
    assert_eq!(pullback(&id, &id).unwrap().module.dim(), 2);

    let x = mult_x(&r, Side::Left);
    let z = Module::zero(&r, Side::Left);
    let po = pushout(&x, &ModuleMap::zero(&f, &z)).unwrap();
    assert_eq!(po.module.dim(), 1);
    let pb = pullback(&x, &ModuleMap::zero(&z, &f)).unwrap();
    assert_eq!(pb.module.dim(), 1);

    // socle inclusion k -> R pushed out along k -> 0
    let k = simple(&r);
    let soc = ModuleMap::new(&k, &f, k.hom_basis(&f).unwrap()[0].clone()).unwrap();
    let po = pushout(&soc, &ModuleMap::zero(&k, &z)).unwrap();
    assert_eq!(po.module.dim(), 2 - 1);
    assert!(po.from_c.is_injective());
    assert_eq!(po.from_b.matrix().mul(soc.matrix()), FpMatrix::zeros(2, 1, 1));

    let s = direct_sum(&r, Side::Left, &[f.clone(), f.clone()]).unwrap();
    let pb = pullback(&s.projections[0], &s.projections[1]).unwrap();
    assert_eq!(pb.module.dim(), 6);
    assert!(pb.to_c.is_surjective());
}

#[test]
fn exactness() {
    let r = dual2();
    let f = Module::free(&r, Side::Left, 1);
    assert!(CertifiedSequence::bounded(&[ModuleMap::identity(&f)]).is_ok());
    let k = simple(&r);
    let soc = ModuleMap::new(&k, &f, k.hom_basis(&f).unwrap()[0].clone()).unwrap();
    let top = free_cover(&k);
    let top = top.with_src(&f);
    let seq = CertifiedSequence::bounded(&[soc, top]).unwrap();
    assert_eq!(seq.nodes().len(), 3);
    seq.revalidate().unwrap();
    let again = is_exact(seq.maps()).unwrap().unwrap();
    assert_eq!(again.nodes(), seq.nodes());
    assert!(matches!(CertifiedSequence::bounded(&[mult_x(&r, Side::Left)]), Err(Error::NotExact(_))));
}

#[test]
fn projectivity() {
    let r = dual2();
    assert!(is_projective(&Module::free(&r, Side::Left, 2)).is_projective());
    match is_projective(&simple(&r)) {
        ProjectivityVerdict::NotProjective { rank_deficit, .. } => assert_eq!(rank_deficit, 1),
        other => panic!("{other:?}"),
    }
    let pa = Ring::new(path_a2(2).unwrap());
    // simple at the sink: generated by e1, killed by e2 (a = e1 a)
    let s1 = Module::from_presentation(&pa, Side::Left, RelMatrix::new(2, 1, vec![el(&[0, 1, 0]), el(&[0, 0, 1])]))
        .unwrap();
    assert_eq!(s1.dim(), 1);
    let v = is_projective(&s1);
    assert!(v.is_projective());
}

#[test]
fn isomorphism_probe() {
    let r = dual2();
    let k = simple(&r);
    let f = Module::free(&r, Side::Left, 1);
    assert!(iso_probe(&k, &k, 0).is_iso());
    assert!(matches!(iso_probe(&k, &f, 0), IsoVerdict::NotIsomorphic(_)));
    let a = direct_sum(&r, Side::Left, &[k.clone(), f.clone()]).unwrap().module;
    let b = direct_sum(&r, Side::Left, &[f, k]).unwrap().module;
    match iso_probe(&a, &b, 7) {
        IsoVerdict::Isomorphic(w) => assert!(w.is_iso()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn module_text_formats() {
    let r = dual2();
    let (name, k) = parse_module("module k over dual2 side=left\npresentation gens=1\nrel 0,1\n", &r).unwrap();
    assert_eq!((name.as_str(), k.dim()), ("k", 1));
    let (_, k2) = parse_module("# simple\nmodule k over dual2 side=left\npresentation gens=1\nrel 0 1\n", &r).unwrap();
    assert!(k.same_rep(&k2));
    let (_, k3) = parse_module(&k.to_spec("k"), &r).unwrap();
    assert!(k3.same_rep(&k));
    let e = parse_module("module k over local3 side=left\npresentation gens=1\n", &r).unwrap_err();
    assert!(matches!(e, Error::Parse { line: 1, .. }));
    let e = parse_module("module k over dual2 side=left\nrepresentation dim=1\naction 0\n1\naction 1\n1\n", &r).unwrap_err();
    assert!(matches!(e, Error::Parse { line: 2, .. }));

    let text = format!(
        "{}{}map i k R\n0\n1\n",
        k.to_spec("k"),
        Module::free(&r, Side::Left, 1).to_spec("R")
    );
    let b = parse_bundle(&text, &r).unwrap();
    assert_eq!(b.maps.len(), 1);
    assert!(b.map("i").unwrap().is_injective());
    assert!(parse_bundle("map i k R\n", &r).is_err());
}
