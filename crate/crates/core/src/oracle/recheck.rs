//! Re-validation of certificates from their raw matrices. Module axioms,
//! linearity, exactness, splittings and Ext tables are all recomputed here
//! with the oracle's own constructions.

use std::fmt;

use crate::algebra::Algebra;
use crate::fpmod::CertifiedSequence;
use crate::gorenstein::{GpCertificate, GpVerdict};
use crate::linalg::{Echelon, FpMatrix};

use super::certfile::{digest, CertFile, CertTag};
use super::{act, cover_of, ext_oracle_table, free_actions, reverse_generators};

/// The first check that failed, located in the certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecheckFailure {
    pub location: String,
    pub reason: String,
}

impl fmt::Display for RecheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.reason)
    }
}

type Check = std::result::Result<(), RecheckFailure>;

fn fail(location: impl Into<String>, reason: impl Into<String>) -> RecheckFailure {
    RecheckFailure { location: location.into(), reason: reason.into() }
}

fn module_axioms(alg: &Algebra, actions: &[FpMatrix], d: usize) -> std::result::Result<(), String> {
    let n = alg.dim();
    if actions.len() != n {
        return Err(format!("{} action matrices for an algebra of dimension {n}", actions.len()));
    }
    if actions.iter().any(|a| a.rows() != d || a.cols() != d) {
        return Err("action matrix of the wrong size".into());
    }
    if act(alg.p(), actions, alg.unit(), d) != FpMatrix::identity(alg.p(), d) {
        return Err("the unit does not act as the identity".into());
    }
    for s in 0..n {
        for t in 0..n {
            if actions[s].mul(&actions[t]) != act(alg.p(), actions, alg.product(s, t), d) {
                return Err(format!("basis elements {s} and {t} act incompatibly with their product"));
            }
        }
    }
    Ok(())
}

fn commutes(f: &FpMatrix, src: &[FpMatrix], tgt: &[FpMatrix]) -> Option<usize> {
    (0..src.len()).find(|&t| f.mul(&src[t]) != tgt[t].mul(f))
}

fn independent(m: &FpMatrix) -> bool {
    let mut e = Echelon::new(m.p(), m.rows());
    (0..m.cols()).all(|j| e.insert(&m.col(j)))
}

/// Actions of a transpose of the module, computed from generators chosen
/// by the oracle and the explicit dual of the relation map.
pub(crate) fn oracle_transpose(alg: &Algebra, opp: &Algebra, actions: &[FpMatrix], d: usize) -> (Vec<FpMatrix>, usize) {
    let p = alg.p();
    let n = alg.dim();
    let gens = reverse_generators(alg, actions, &FpMatrix::identity(p, d));
    let g = gens.len();
    let cover = cover_of(alg, actions, &FpMatrix::from_cols(p, d, &gens));
    let rels = reverse_generators(alg, &free_actions(alg, g), &cover.kernel_cols());
    let dual = super::coboundary(alg, g, &rels);
    // the cokernel of `dual` inside `Hom(free(r), R)`, acted on by right multiplication
    let total = rels.len() * n;
    let image = dual.image_cols();
    let mut ech = Echelon::new(p, total);
    ech.insert_cols(&image);
    let mut complement = Vec::new();
    for j in 0..total {
        let mut e = vec![0; total];
        e[j] = 1;
        if ech.insert(&e) {
            complement.push(e);
        }
    }
    let k = complement.len();
    let section = FpMatrix::from_cols(p, total, &complement);
    let basis = image.hstack(&section);
    let inv = basis.inverse().expect("image plus complement is a basis");
    let proj = inv.block(image.cols(), 0, k, total);
    let right: Vec<FpMatrix> = (0..n)
        .map(|t| {
            let mut m = FpMatrix::zeros(p, total, total);
            for blk in 0..rels.len() {
                for s in 0..n {
                    for (u, &c) in opp.product(t, s).iter().enumerate() {
                        if c != 0 {
                            m.set(blk * n + u, blk * n + s, c);
                        }
                    }
                }
            }
            proj.mul(&m).mul(&section)
        })
        .collect();
    (right, k)
}

/// Oracle Ext tables of a module and of its transpose in degrees `1..=bound`.
pub(crate) fn oracle_gp_tables(alg: &Algebra, opp: &Algebra, actions: &[FpMatrix], d: usize, bound: usize) -> (Vec<usize>, Vec<usize>) {
    let module = ext_oracle_table(alg, actions, d, bound)[1..].to_vec();
    let (tr, k) = oracle_transpose(alg, opp, actions, d);
    let transpose = ext_oracle_table(opp, &tr, k, bound)[1..].to_vec();
    (module, transpose)
}

/// Re-validates a certificate file from scratch.
pub fn recheck(cert: &CertFile) -> Check {
    let alg = cert.ring.acting(cert.side);
    let opp = cert.ring.acting(cert.side.flip());
    let p = alg.p();
    for (i, o) in cert.objects.iter().enumerate() {
        let at = format!("object {i}");
        module_axioms(alg, &o.actions, o.dim).map_err(|r| fail(&at, r))?;
        if o.gens.rows() != o.dim {
            return Err(fail(&at, "generators have the wrong length"));
        }
        let cover = cover_of(alg, &o.actions, &o.gens);
        if cover.rank() != o.dim {
            return Err(fail(&at, "generators do not generate"));
        }
    }
    if cert.objects.len() != cert.maps.len() + 1 {
        return Err(fail("sequence", "number of objects does not match number of maps"));
    }
    for (i, f) in cert.maps.iter().enumerate() {
        let (src, tgt) = (&cert.objects[i], &cert.objects[i + 1]);
        let at = format!("map {i}");
        if f.rows() != tgt.dim || f.cols() != src.dim {
            return Err(fail(&at, "matrix has the wrong shape"));
        }
        if let Some(t) = commutes(f, &src.actions, &tgt.actions) {
            return Err(fail(&at, format!("does not commute with basis element {t}")));
        }
    }
    if cert.nodes.len() + 1 != cert.maps.len() {
        return Err(fail("sequence", "number of nodes does not match number of maps"));
    }
    for (i, c) in cert.nodes.iter().enumerate() {
        let at = format!("node {}", i + 1);
        let (inc, out) = (&cert.maps[i], &cert.maps[i + 1]);
        let d = cert.objects[i + 1].dim;
        if c.ker.rows() != d || c.im.rows() != d {
            return Err(fail(&at, "stored bases have the wrong length"));
        }
        if !out.mul(inc).is_zero() {
            return Err(fail(&at, "composite is not zero"));
        }
        if !out.mul(&c.ker).is_zero() {
            return Err(fail(&at, "stored kernel vectors are not killed"));
        }
        if !independent(&c.ker) || !independent(&c.im) {
            return Err(fail(&at, "stored bases are dependent"));
        }
        if c.ker.cols() + out.rank() != d {
            return Err(fail(&at, format!("kernel basis has {} vectors, kernel has dimension {}", c.ker.cols(), d - out.rank())));
        }
        if c.im.cols() != inc.rank() || inc.hstack(&c.im).rank() != inc.rank() {
            return Err(fail(&at, "stored image basis does not span the image"));
        }
        if c.witness.rows() != c.im.cols() || c.witness.cols() != c.ker.cols() || c.im.mul(&c.witness) != c.ker {
            return Err(fail(&at, "image and kernel bases differ (witness fails)"));
        }
    }
    for (i, o) in cert.objects.iter().enumerate() {
        let at = format!("object {i}");
        let cover = cover_of(alg, &o.actions, &o.gens);
        match &o.tag {
            CertTag::None => {}
            CertTag::Free => {
                if cover.rows() != cover.cols() || cover.rank() != o.dim {
                    return Err(fail(&at, "tagged free but the generators are not a basis"));
                }
            }
            CertTag::Projective { section } => {
                let g = o.gens.cols();
                if section.rows() != g * alg.dim() || section.cols() != o.dim {
                    return Err(fail(&at, "splitting has the wrong shape"));
                }
                if commutes(section, &o.actions, &free_actions(alg, g)).is_some() {
                    return Err(fail(&at, "splitting is not linear"));
                }
                if cover.mul(section) != FpMatrix::identity(p, o.dim) {
                    return Err(fail(&at, "splitting is not a section of the cover"));
                }
            }
            CertTag::Gp { bound } => {
                let (m, t) = oracle_gp_tables(alg, opp, &o.actions, o.dim, *bound);
                if let Some(k) = m.iter().position(|&x| x != 0) {
                    return Err(fail(&at, format!("tagged GP but Ext^{}(M, R) has dimension {}", k + 1, m[k])));
                }
                if let Some(k) = t.iter().position(|&x| x != 0) {
                    return Err(fail(&at, format!("tagged GP but Ext^{}(Tr M, R) has dimension {}", k + 1, t[k])));
                }
            }
        }
    }
    for (i, o) in cert.objects.iter().enumerate() {
        if let Some(h) = &o.digest {
            if *h != digest(&o.actions) {
                return Err(fail(format!("object {i}"), "digest mismatch"));
            }
        }
    }
    for (i, f) in cert.maps.iter().enumerate() {
        if let Some(h) = &cert.map_digests[i] {
            if *h != digest(std::slice::from_ref(f)) {
                return Err(fail(format!("map {i}"), "digest mismatch"));
            }
        }
    }
    Ok(())
}

/// Re-validates a certified sequence through its certificate file.
pub fn recheck_sequence(seq: &CertifiedSequence) -> Check {
    recheck(&CertFile::from_sequence(seq))
}

/// Recomputes both Ext tables of a GP certificate with the oracle and checks
/// them and the verdict against what the certificate states.
pub fn recheck_gp(cert: &GpCertificate) -> Check {
    let m = &cert.module;
    let bound = cert.ext_module.len();
    let (em, et) = oracle_gp_tables(m.algebra(), m.ring().acting(m.side().flip()), m.actions(), m.dim(), bound);
    if em != cert.ext_module {
        return Err(fail("Ext(M, R)", format!("stored {:?}, recomputed {:?}", cert.ext_module, em)));
    }
    if et != cert.ext_transpose {
        return Err(fail("Ext(Tr M, R)", format!("stored {:?}, recomputed {:?}", cert.ext_transpose, et)));
    }
    let vanish = em.iter().chain(&et).all(|&x| x == 0);
    let consistent = match cert.verdict {
        GpVerdict::Gp | GpVerdict::GpUpToBound(_) => vanish,
        GpVerdict::NotGp { degree, transpose } => {
            let table = if transpose { &et } else { &em };
            degree >= 1 && table.get(degree - 1).is_some_and(|&x| x != 0)
        }
    };
    if !consistent {
        return Err(fail("verdict", format!("{} does not match the tables", cert.verdict)));
    }
    Ok(())
}
