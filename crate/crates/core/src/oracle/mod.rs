//! Independent verifiers: Ext through a differently built resolution and an
//! explicit cochain complex, brute-force enumeration of small modules, and
//! re-validation of certificates from their raw matrices.
//!
//! Nothing here calls into `fpmod`, `homology` or `gorenstein` beyond
//! reading the raw data of a module (action matrices and chosen generators);
//! only `linalg` and the algebra's multiplication table are shared.

mod certfile;
mod enumerate;
mod recheck;

use crate::algebra::Algebra;
use crate::fpmod::Module;
use crate::linalg::{fadd, Echelon, FpMatrix};

pub use certfile::{mutate_certificate, parse_certificate, write_certificate, CertFile, CertObject, CertTag, MutationOutcome};
pub use enumerate::{enumerate_modules, Dedup, EnumerationSpec};
pub use recheck::{recheck, recheck_gp, recheck_sequence, RecheckFailure};

/// Largest degree accepted by [`ext_oracle`].
pub const MAX_ORACLE_DEGREE: usize = 8;

/// Action matrices of `free(g)`: basis `b_k e_j` at `j * n + k`.
pub(crate) fn free_actions(alg: &Algebra, g: usize) -> Vec<FpMatrix> {
    let n = alg.dim();
    let p = alg.p();
    (0..n)
        .map(|t| {
            let mut a = FpMatrix::zeros(p, g * n, g * n);
            for k in 0..n {
                let prod = alg.product(t, k);
                for j in 0..g {
                    for (s, &c) in prod.iter().enumerate() {
                        if c != 0 {
                            a.set(j * n + s, j * n + k, c);
                        }
                    }
                }
            }
            a
        })
        .collect()
}

/// `sum_t a_t A_t`.
pub(crate) fn act(p: u32, actions: &[FpMatrix], a: &[u32], dim: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, dim, dim);
    for (t, &c) in a.iter().enumerate() {
        if c != 0 {
            m.add_scaled(c, &actions[t]);
        }
    }
    m
}

/// The map `free(g) -> M` sending `e_j` to column `j` of `gens`.
pub(crate) fn cover_of(alg: &Algebra, actions: &[FpMatrix], gens: &FpMatrix) -> FpMatrix {
    let n = alg.dim();
    let d = gens.rows();
    let mut c = FpMatrix::zeros(alg.p(), d, gens.cols() * n);
    for j in 0..gens.cols() {
        let v = gens.col(j);
        for (k, a) in actions.iter().enumerate() {
            let img = a.mul_vec(&v);
            for (r, &x) in img.iter().enumerate() {
                c.set(r, j * n + k, x);
            }
        }
    }
    c
}

/// Columns of `span` chosen from the last one backwards, each kept when it
/// is independent of the radical of the spanned submodule and of those kept
/// so far.
pub(crate) fn reverse_generators(alg: &Algebra, actions: &[FpMatrix], span: &FpMatrix) -> Vec<Vec<u32>> {
    let p = alg.p();
    let d = span.rows();
    let mut ech = Echelon::new(p, d);
    for r in alg.radical() {
        ech.insert_cols(&act(p, actions, r, d).mul(span));
    }
    let mut kept = Vec::new();
    for j in (0..span.cols()).rev() {
        let v = span.col(j);
        if ech.insert(&v) {
            kept.push(v);
        }
    }
    kept
}

/// A non-minimal free resolution in raw form: `images[i][k]` is the image of
/// generator `k` of `F_{i+1}` in `F_i` (`F_0` covers the module).
struct RawResolution {
    ranks: Vec<usize>,
    images: Vec<Vec<Vec<u32>>>,
}

fn raw_resolution(alg: &Algebra, actions: &[FpMatrix], dim: usize, length: usize) -> RawResolution {
    let p = alg.p();
    // generators of M: reverse greedy, plus a redundant zero generator
    let mut gens = reverse_generators(alg, actions, &FpMatrix::identity(p, dim));
    gens.push(vec![0; dim]);
    let g0 = FpMatrix::from_cols(p, dim, &gens);
    let mut ranks = vec![gens.len()];
    let mut kernel = cover_of(alg, actions, &g0).kernel_cols();
    let mut images = Vec::new();
    for _ in 0..length {
        let g = *ranks.last().unwrap();
        let fa = free_actions(alg, g);
        let next = reverse_generators(alg, &fa, &kernel);
        let cols = if next.is_empty() {
            FpMatrix::zeros(p, g * alg.dim(), 0)
        } else {
            FpMatrix::from_cols(p, g * alg.dim(), &next)
        };
        let d = cover_of(alg, &fa, &cols);
        kernel = d.kernel_cols();
        ranks.push(next.len());
        images.push(next);
    }
    RawResolution { ranks, images }
}

/// `Hom(F_{i}, R) -> Hom(F_{i+1}, R)`, `phi -> phi . d`, with `phi` recorded
/// by its values on generators.
fn coboundary(alg: &Algebra, g_from: usize, images: &[Vec<u32>]) -> FpMatrix {
    let n = alg.dim();
    let p = alg.p();
    let g_to = images.len();
    let mut m = FpMatrix::zeros(p, g_to * n, g_from * n);
    for j in 0..g_from {
        for t in 0..n {
            let bt = alg.basis_vec(t);
            for (k, v) in images.iter().enumerate() {
                let a = &v[j * n..(j + 1) * n];
                let prod = alg.mul_elem(a, &bt);
                for (s, &c) in prod.iter().enumerate() {
                    let cur = m.get(k * n + s, j * n + t);
                    m.set(k * n + s, j * n + t, fadd(p, cur, c));
                }
            }
        }
    }
    m
}

/// `dim Ext^i(M, R)` through a non-minimal resolution with generators
/// picked in reverse order and the explicit cochain complex `Hom(F, R)`.
pub fn ext_oracle(m: &Module, i: usize) -> usize {
    assert!(i <= MAX_ORACLE_DEGREE, "oracle degree too large");
    ext_oracle_table(m.algebra(), m.actions(), m.dim(), i)[i]
}

/// `dim Ext^i(M, R)` for `i = 0..=max` from one oracle resolution.
pub fn ext_oracle_dims(m: &Module, max: usize) -> Vec<usize> {
    assert!(max <= MAX_ORACLE_DEGREE, "oracle degree too large");
    ext_oracle_table(m.algebra(), m.actions(), m.dim(), max)
}

/// `dim Ext^i` for `i = 0..=max` from one resolution.
pub(crate) fn ext_oracle_table(alg: &Algebra, actions: &[FpMatrix], dim: usize, max: usize) -> Vec<usize> {
    let res = raw_resolution(alg, actions, dim, max + 1);
    let n = alg.dim();
    let ranks: Vec<usize> = (0..=max).map(|i| coboundary(alg, res.ranks[i], &res.images[i]).rank()).collect();
    (0..=max)
        .map(|i| res.ranks[i] * n - ranks[i] - if i == 0 { 0 } else { ranks[i - 1] })
        .collect()
}
