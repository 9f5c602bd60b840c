use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Echelon, FpMatrix};

use super::{element_action, Module, ModuleMap};

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(ModuleMap),
    /// Names the invariant that differs.
    NotIsomorphic(String),
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Isomorphic(_) => "isomorphic",
            IsoVerdict::NotIsomorphic(_) => "not-isomorphic",
            IsoVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Dimensions of `rad^i M / rad^(i+1) M`.
pub fn rad_layers(m: &Module) -> Vec<usize> {
    let alg = m.algebra();
    let p = m.p();
    let rads: Vec<FpMatrix> = alg.radical().iter().map(|r| element_action(alg, m.actions(), m.dim(), r)).collect();
    let mut layers = Vec::new();
    let mut cur = FpMatrix::identity(p, m.dim());
    while cur.cols() > 0 {
        let mut ech = Echelon::new(p, m.dim());
        let mut next = Vec::new();
        for r in &rads {
            let img = r.mul(&cur);
            for j in 0..img.cols() {
                let v = img.col(j);
                if ech.insert(&v) {
                    next.push(v);
                }
            }
        }
        layers.push(cur.cols() - next.len());
        cur = FpMatrix::from_cols(p, m.dim(), &next);
    }
    layers
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
const RANDOM_TRIES: usize = 48;

/// Sound isomorphism test: a witness, a separating invariant, or nothing.
pub fn iso_probe(m: &Arc<Module>, n: &Arc<Module>, seed: u64) -> IsoVerdict {
    if !m.same_category(n) {
        return IsoVerdict::NotIsomorphic("different rings or sides".into());
    }
    if m.dim() != n.dim() {
        return IsoVerdict::NotIsomorphic(format!("dimension {} vs {}", m.dim(), n.dim()));
    }
    let (lm, ln) = (rad_layers(m), rad_layers(n));
    if lm != ln {
        return IsoVerdict::NotIsomorphic(format!("radical layers {lm:?} vs {ln:?}"));
    }
    let hom_mn = m.hom_basis(n).expect("same category");
    let end_m = m.hom_dim(m).expect("same category");
    let end_n = n.hom_dim(n).expect("same category");
    let hom_nm = n.hom_dim(m).expect("same category");
    if end_m != end_n || hom_mn.len() != end_m || hom_nm != end_m {
        return IsoVerdict::NotIsomorphic(format!(
            "hom dimensions End(M)={end_m} Hom(M,N)={} Hom(N,M)={hom_nm} End(N)={end_n}",
            hom_mn.len()
        ));
    }
    let p = m.p();
    let d = m.dim();
    if d == 0 {
        return IsoVerdict::Isomorphic(ModuleMap::trusted(m, n, FpMatrix::zeros(p, 0, 0)));
    }
    let h = hom_mn.len();
    let combine = |c: &[u32]| {
        let mut f = FpMatrix::zeros(p, d, d);
        for (b, &ci) in hom_mn.iter().zip(c) {
            if ci != 0 {
                f.add_scaled(ci, b);
            }
        }
        f
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let c: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        let f = combine(&c);
        if f.rank() == d {
            return IsoVerdict::Isomorphic(ModuleMap::trusted(m, n, f));
        }
    }
    let total = (p as u64).checked_pow(h as u32);
    if let Some(total) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT) {
        let mut c = vec![0u32; h];
        for _ in 0..total {
            let f = combine(&c);
            if f.rank() == d {
                return IsoVerdict::Isomorphic(ModuleMap::trusted(m, n, f));
            }
            for x in c.iter_mut() {
                *x += 1;
                if *x < p {
                    break;
                }
                *x = 0;
            }
        }
        return IsoVerdict::NotIsomorphic("no invertible homomorphism (exhaustive search)".into());
    }
    IsoVerdict::Inconclusive
}
