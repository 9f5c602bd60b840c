//! All module structures on `F_p^d` for small `d`, found by assigning action
//! matrices to algebra generators one at a time and checking the relations
//! of the subalgebra generated so far.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Ring, Side};
use crate::error::{Error, Result};
use crate::fpmod::{iso_probe, rad_layers, Module};
use crate::linalg::{Echelon, FpMatrix};

/// Largest module dimension the enumerator accepts.
pub const MAX_ENUM_DIM: usize = 5;
/// Largest number of matrices scanned per generator.
const MAX_SCAN: u64 = 1 << 25;
/// Largest general linear group used for orbit deduplication.
const MAX_ORBIT_GROUP: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dedup {
    Raw,
    Iso,
}

#[derive(Clone, Debug)]
pub struct EnumerationSpec {
    pub ring: Arc<Ring>,
    pub side: Side,
    pub max_dim: usize,
    pub seed: u64,
    pub dedup: Dedup,
}

/// Words in the generators spanning the subalgebra they generate, with its
/// multiplication table in terms of the words.
struct Level {
    words: Vec<Vec<usize>>,
    /// `table[u * len + v]` = coordinates of `word_u word_v`.
    table: Vec<Vec<u32>>,
    values: FpMatrix,
}

fn closure(alg: &Algebra, gens: &[usize]) -> Level {
    let p = alg.p();
    let n = alg.dim();
    let mut ech = Echelon::new(p, n);
    ech.insert(alg.unit());
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut values: Vec<Vec<u32>> = vec![alg.unit().to_vec()];
    let mut i = 0;
    while i < words.len() {
        for (pos, &g) in gens.iter().enumerate() {
            let v = alg.mul_elem(&values[i], &alg.basis_vec(g));
            if ech.insert(&v) {
                let mut w = words[i].clone();
                w.push(pos);
                words.push(w);
                values.push(v);
            }
        }
        i += 1;
    }
    let basis = FpMatrix::from_cols(p, n, &values);
    let mut table = Vec::with_capacity(values.len() * values.len());
    for u in &values {
        for v in &values {
            table.push(basis.solve(&alg.mul_elem(u, v)).expect("span of words is a subalgebra"));
        }
    }
    Level { words, table, values: basis }
}

/// Basis elements generating the algebra, chosen greedily in basis order.
fn algebra_generators(alg: &Algebra) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut level = closure(alg, &gens);
    for b in 0..alg.dim() {
        if level.values.cols() == alg.dim() {
            break;
        }
        if level.values.solve(&alg.basis_vec(b)).is_none() {
            gens.push(b);
            level = closure(alg, &gens);
        }
    }
    gens
}

fn matrix_from_index(p: u32, d: usize, mut idx: u64) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, d, d);
    for r in 0..d {
        for c in 0..d {
            m.set(r, c, (idx % p as u64) as u32);
            idx /= p as u64;
        }
    }
    m
}

/// All `d x d` matrices killed by the minimal polynomial of basis element `b`.
fn candidates(alg: &Algebra, b: usize, d: usize) -> Result<Vec<FpMatrix>> {
    let p = alg.p();
    let total = (p as u64).checked_pow((d * d) as u32).filter(|&t| t <= MAX_SCAN).ok_or_else(|| {
        Error::Unsupported(format!("enumeration of {d}x{d} matrices over F_{p} is too large"))
    })?;
    let c = alg.min_poly(&alg.basis_vec(b));
    let mut out = Vec::new();
    for idx in 0..total {
        let x = matrix_from_index(p, d, idx);
        let mut power = FpMatrix::identity(p, d);
        let mut rhs = FpMatrix::zeros(p, d, d);
        for &ci in &c {
            if ci != 0 {
                rhs.add_scaled(ci, &power);
            }
            power = power.mul(&x);
        }
        if power == rhs {
            out.push(x);
        }
    }
    Ok(out)
}

fn word_matrix(p: u32, d: usize, word: &[usize], assigned: &[FpMatrix]) -> FpMatrix {
    word.iter().fold(FpMatrix::identity(p, d), |acc, &g| acc.mul(&assigned[g]))
}

fn relations_hold(p: u32, d: usize, level: &Level, assigned: &[FpMatrix]) -> bool {
    let rho: Vec<FpMatrix> = level.words.iter().map(|w| word_matrix(p, d, w, assigned)).collect();
    let len = rho.len();
    for u in 0..len {
        for v in 0..len {
            let mut rhs = FpMatrix::zeros(p, d, d);
            for (w, &c) in level.table[u * len + v].iter().enumerate() {
                if c != 0 {
                    rhs.add_scaled(c, &rho[w]);
                }
            }
            if rho[u].mul(&rho[v]) != rhs {
                return false;
            }
        }
    }
    true
}

/// Action matrices of every basis element from the generator matrices.
fn all_actions(alg: &Algebra, d: usize, level: &Level, assigned: &[FpMatrix]) -> Vec<FpMatrix> {
    let p = alg.p();
    let rho: Vec<FpMatrix> = level.words.iter().map(|w| word_matrix(p, d, w, assigned)).collect();
    (0..alg.dim())
        .map(|b| {
            let c = level.values.solve(&alg.basis_vec(b)).expect("generators span the algebra");
            let mut m = FpMatrix::zeros(p, d, d);
            for (w, &x) in c.iter().enumerate() {
                if x != 0 {
                    m.add_scaled(x, &rho[w]);
                }
            }
            m
        })
        .collect()
}

/// Invertible matrices with their inverses.
fn general_linear(p: u32, d: usize) -> Vec<(FpMatrix, FpMatrix)> {
    let total = (p as u64).pow((d * d) as u32);
    (0..total)
        .filter_map(|i| {
            let m = matrix_from_index(p, d, i);
            m.inverse().map(|inv| (m, inv))
        })
        .collect()
}

fn key(p: u32, mats: &[FpMatrix]) -> u128 {
    mats.iter().flat_map(|m| m.data().iter()).fold(0u128, |k, &x| k * p as u128 + x as u128)
}

struct Search<'a> {
    alg: &'a Algebra,
    d: usize,
    levels: Vec<Level>,
    candidates: Vec<Vec<FpMatrix>>,
    found: Vec<Vec<FpMatrix>>,
}

impl Search<'_> {
    fn run(&mut self, assigned: &mut Vec<FpMatrix>) {
        let k = assigned.len();
        if k == self.candidates.len() {
            self.found.push(assigned.clone());
            return;
        }
        for i in 0..self.candidates[k].len() {
            assigned.push(self.candidates[k][i].clone());
            if relations_hold(self.alg.p(), self.d, &self.levels[k], assigned) {
                self.run(assigned);
            }
            assigned.pop();
        }
    }
}

/// Every module of dimension at most `spec.max_dim`, all structures or one
/// per isomorphism class, in an order fixed by the seed.
pub fn enumerate_modules(spec: &EnumerationSpec) -> Result<Vec<Arc<Module>>> {
    if spec.max_dim > MAX_ENUM_DIM {
        return Err(Error::OutOfRange(format!("enumeration is limited to dimension {MAX_ENUM_DIM}")));
    }
    let alg = spec.ring.acting(spec.side);
    let p = alg.p();
    let gens = algebra_generators(alg);
    let levels: Vec<Level> = (1..=gens.len()).map(|k| closure(alg, &gens[..k])).collect();
    let full = levels.last().map(|l| l.values.cols()).unwrap_or(1);
    if full != alg.dim() {
        return Err(Error::InvalidAlgebra("basis elements do not generate the algebra".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::new();
    for d in 0..=spec.max_dim {
        let mut cands = Vec::new();
        for &g in &gens {
            let mut c = candidates(alg, g, d)?;
            c.shuffle(&mut rng);
            cands.push(c);
        }
        let mut search = Search { alg, d, levels: levels.iter().map(clone_level).collect(), candidates: cands, found: Vec::new() };
        if gens.is_empty() {
            search.found.push(Vec::new());
        } else {
            search.run(&mut Vec::new());
        }
        let last = levels.last();
        let to_module = |assigned: &[FpMatrix]| -> Result<Arc<Module>> {
            let actions = match last {
                Some(l) => all_actions(alg, d, l, assigned),
                None => vec![FpMatrix::identity(p, d)],
            };
            Module::from_representation(&spec.ring, spec.side, actions)
        };
        let fits = (p as u128).checked_pow((d * d * gens.len()) as u32).is_some_and(|x| x < 1 << 127);
        let group_small = (p as u64).checked_pow((d * d) as u32).is_some_and(|x| x <= MAX_ORBIT_GROUP);
        match spec.dedup {
            Dedup::Raw => {
                for a in &search.found {
                    out.push(to_module(a)?);
                }
            }
            Dedup::Iso if fits && group_small => {
                let gl = general_linear(p, d);
                let mut seen: HashSet<u128> = HashSet::new();
                for a in &search.found {
                    if seen.contains(&key(p, a)) {
                        continue;
                    }
                    for (g, gi) in &gl {
                        let conj: Vec<FpMatrix> = a.iter().map(|x| g.mul(x).mul(gi)).collect();
                        seen.insert(key(p, &conj));
                    }
                    out.push(to_module(a)?);
                }
            }
            Dedup::Iso => {
                let mut reps: Vec<(Vec<usize>, Arc<Module>)> = Vec::new();
                for a in &search.found {
                    let m = to_module(a)?;
                    let layers = rad_layers(&m);
                    let dup = reps.iter().any(|(l, r)| *l == layers && iso_probe(r, &m, spec.seed).is_iso());
                    if !dup {
                        reps.push((layers, m.clone()));
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn clone_level(l: &Level) -> Level {
    Level { words: l.words.clone(), table: l.table.clone(), values: l.values.clone() }
}
