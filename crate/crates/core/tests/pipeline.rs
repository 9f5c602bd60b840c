//! End-to-end use of the public API from spec text to checked certificates.

use gtrans_core::algebra::{parse_algebra, Ring, Side};
use gtrans_core::fpmod::{is_projective, parse_module};
use gtrans_core::gorenstein::{gorenstein_transpose, gp_test, GPresentation, GpMode, GpVerdict};
use gtrans_core::homology::{ext_dims, free_resolution, injdim_bounded, transpose, Bounded};
use gtrans_core::oracle::{ext_oracle_dims, parse_certificate, recheck, recheck_gp, write_certificate, CertFile};

const DUAL: &str = "\
# k[x]/(x^2) over F_3
ring dual3 p=3 dim=2
basis 1 x
unit 1 0
mul 0 0 = 1 0
mul 0 1 = 0 1
mul 1 0 = 0 1
injdim 0
";

const K: &str = "\
module k over dual3 side=left
representation dim=1
action 0
1
action 1
0
";

#[test]
fn from_text_to_certificates() {
    let ring = Ring::new(parse_algebra(DUAL).unwrap());
    assert_eq!(ring.p(), 3);
    assert_eq!(injdim_bounded(&ring, Side::Left, 3), Bounded::Exact(0));
    let (name, k) = parse_module(K, &ring).unwrap();
    assert_eq!(name, "k");

    // R is self-injective, so Ext vanishes and every module is GP
    assert_eq!(ext_dims(&k, 4), vec![1, 0, 0, 0, 0]);
    assert_eq!(ext_oracle_dims(&k, 4), ext_dims(&k, 4));
    let mode = GpMode::auto(&ring);
    assert!(mode.is_complete());
    let c = gp_test(&k, &mode).unwrap();
    assert_eq!(c.verdict, GpVerdict::Gp);
    recheck_gp(&c).unwrap();
    assert!(!is_projective(&k).is_projective());

    let tr = transpose(&k);
    assert_eq!((tr.side(), tr.dim()), (Side::Right, 1));

    let mut seq = free_resolution(&k, 3, true).certify().unwrap();
    seq.tag_free_objects();
    let text = write_certificate(&CertFile::from_sequence(&seq));
    recheck(&parse_certificate(&text).unwrap()).unwrap();

    // the free presentation gives Tr k back as the Gorenstein transpose
    let pi = GPresentation::free(&k, &mode).unwrap();
    let gt = gorenstein_transpose(&pi).unwrap();
    assert_eq!(gt.module.dim(), tr.dim());
    let text = write_certificate(&CertFile::from_sequence(&gt.sequence));
    recheck(&parse_certificate(&text).unwrap()).unwrap();
}
