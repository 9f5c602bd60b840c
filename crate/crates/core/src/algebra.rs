//! Finite-dimensional unital algebras over F_p given by structure constants.
//!
//! Right modules over an algebra `R` are handled as left modules over its
//! opposite; a [`Ring`] bundles `R` with `R^op` so that duals can flip sides
//! without rebuilding anything.
//!
//! Path algebra convention: arrows compose left to right, so the arrow `a`
//! from vertex 1 to vertex 2 satisfies `e1 * a = a = a * e2`. On a left module
//! `a` therefore maps `e2 M` into `e1 M`; vertex 1 is the sink and its simple
//! module is projective.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{check_prime, fadd, fmul, fneg, FpMatrix, QuotientSpace};

/// Dimensions above this skip the maximality check on declared radicals.
pub const RADICAL_CHECK_MAX_DIM: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjDim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for InjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InjDim::Finite(d) => write!(f, "{d}"),
            InjDim::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    p: u32,
    dim: usize,
    basis_names: Vec<String>,
    /// `mul[i * dim + j]` is the product `b_i * b_j` in the basis.
    mul: Vec<Vec<u32>>,
    unit: Vec<u32>,
    radical: Vec<Vec<u32>>,
    declared_radical: bool,
    radical_maximality_checked: bool,
    declared_injdim: Option<InjDim>,
    left: Vec<FpMatrix>,
    right: Vec<FpMatrix>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, p={}, dim={})", self.name, self.p, self.dim)
    }
}

/// Unvalidated algebra data, as read from a ring-spec or produced by a builder.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub name: String,
    pub p: u64,
    pub basis_names: Vec<String>,
    pub mul: Vec<Vec<u64>>,
    pub unit: Vec<u64>,
    pub radical: Option<Vec<Vec<u64>>>,
    pub injdim: Option<InjDim>,
}

impl Algebra {
    pub fn new(data: AlgebraData) -> Result<Self> {
        let p = check_prime(data.p)?;
        let n = data.basis_names.len();
        let conv = |v: &Vec<u64>, what: &str| -> Result<Vec<u32>> {
            if v.len() != n {
                return Err(Error::InvalidAlgebra(format!(
                    "{what} has {} coefficients, expected {n}",
                    v.len()
                )));
            }
            Ok(v.iter().map(|&x| (x % p as u64) as u32).collect())
        };
        if data.mul.len() != n * n {
            return Err(Error::InvalidAlgebra(format!(
                "multiplication table has {} entries, expected {}",
                data.mul.len(),
                n * n
            )));
        }
        let mul = data
            .mul
            .iter()
            .enumerate()
            .map(|(k, v)| conv(v, &format!("product {}*{}", k / n.max(1), k % n.max(1))))
            .collect::<Result<Vec<_>>>()?;
        let unit = conv(&data.unit, "unit")?;
        let mut a = Algebra {
            name: data.name,
            p,
            dim: n,
            basis_names: data.basis_names,
            mul,
            unit,
            radical: Vec::new(),
            declared_radical: false,
            radical_maximality_checked: false,
            declared_injdim: data.injdim,
            left: Vec::new(),
            right: Vec::new(),
        };
        a.build_mult_matrices();
        a.check_axioms()?;
        match data.radical {
            Some(r) => {
                let r = r.iter().map(|v| conv(v, "radical vector")).collect::<Result<Vec<_>>>()?;
                a.radical = independent(p, n, &r);
                a.declared_radical = true;
                a.verify_declared_radical()?;
            }
            None => {
                a.radical = compute_radical(&a)?;
                a.radical_maximality_checked = true;
            }
        }
        Ok(a)
    }

    fn build_mult_matrices(&mut self) {
        let n = self.dim;
        let p = self.p;
        self.left = (0..n)
            .map(|i| FpMatrix::from_fn(p, n, n, |k, j| self.mul[i * n + j][k]))
            .collect();
        self.right = (0..n)
            .map(|i| FpMatrix::from_fn(p, n, n, |k, j| self.mul[j * n + i][k]))
            .collect();
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mul[i * n + j];
                for k in 0..n {
                    let lhs = self.mul_elem(ij, &self.basis_vec(k));
                    let rhs = self.mul_elem(&self.basis_vec(i), &self.mul[j * n + k]);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        for b in 0..n {
            let e = self.basis_vec(b);
            if self.mul_elem(&self.unit, &e) != e || self.mul_elem(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!(
                    "unit law fails on pair (unit, {b}) / ({b}, unit)"
                )));
            }
        }
        Ok(())
    }

    fn verify_declared_radical(&mut self) -> Result<()> {
        if !is_two_sided_ideal(self, &self.radical) {
            return Err(Error::InvalidAlgebra("declared radical is not a two-sided ideal".into()));
        }
        if nilpotency_index(self, &self.radical).is_none() {
            return Err(Error::InvalidAlgebra("declared radical is not nilpotent".into()));
        }
        if self.dim <= RADICAL_CHECK_MAX_DIM {
            let q = quotient_algebra(self, &self.radical)?;
            let qr = compute_radical(&q)?;
            if !qr.is_empty() {
                return Err(Error::InvalidAlgebra(
                    "declared radical is not maximal: the quotient has a nonzero nilpotent ideal".into(),
                ));
            }
            self.radical_maximality_checked = true;
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        &self.mul[i * self.dim + j]
    }
    pub fn declared_injdim(&self) -> Option<InjDim> {
        self.declared_injdim
    }
    pub fn has_declared_radical(&self) -> bool {
        self.declared_radical
    }
    /// False when a declared radical was too large for the maximality check.
    pub fn radical_maximality_checked(&self) -> bool {
        self.radical_maximality_checked
    }
    /// Basis of the Jacobson radical (declared and verified, or computed).
    pub fn radical(&self) -> &[Vec<u32>] {
        &self.radical
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1 % self.p;
        v
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn mul_elem(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.dim;
        let p = self.p;
        let mut out = vec![0u32; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let c = fmul(p, a[i], b[j]);
                for (o, s) in out.iter_mut().zip(&self.mul[i * n + j]) {
                    *o = fadd(p, *o, fmul(p, c, *s));
                }
            }
        }
        out
    }

    pub fn add_elem(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| fadd(self.p, *x, *y)).collect()
    }

    pub fn neg_elem(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|x| fneg(self.p, *x)).collect()
    }

    /// Matrix of `x -> b_i * x` on the basis.
    pub fn left_basis_mat(&self, i: usize) -> &FpMatrix {
        &self.left[i]
    }

    /// Matrix of `x -> x * b_i` on the basis.
    pub fn right_basis_mat(&self, i: usize) -> &FpMatrix {
        &self.right[i]
    }

    pub fn left_mat(&self, a: &[u32]) -> FpMatrix {
        combine(self.p, self.dim, &self.left, a)
    }

    pub fn right_mat(&self, a: &[u32]) -> FpMatrix {
        combine(self.p, self.dim, &self.right, a)
    }

    /// The opposite algebra: `b_i *op b_j = b_j * b_i`.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let mul = (0..n * n).map(|k| self.mul[(k % n) * n + k / n].clone()).collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        let mut a = Algebra {
            name,
            p: self.p,
            dim: n,
            basis_names: self.basis_names.clone(),
            mul,
            unit: self.unit.clone(),
            radical: self.radical.clone(),
            declared_radical: self.declared_radical,
            radical_maximality_checked: self.radical_maximality_checked,
            declared_injdim: self.declared_injdim,
            left: Vec::new(),
            right: Vec::new(),
        };
        a.build_mult_matrices();
        a
    }

    /// Monic relation `a^k = sum c_i a^i` of least degree, returned as `c`.
    pub fn min_poly(&self, a: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut powers = vec![self.unit.clone()];
        loop {
            let next = self.mul_elem(powers.last().unwrap(), a);
            let basis = FpMatrix::from_cols(p, self.dim, &powers);
            if let Some(c) = basis.solve(&next) {
                return c;
            }
            powers.push(next);
        }
    }

    /// Renders the algebra in the ring-spec grammar.
    pub fn to_spec(&self) -> String {
        let n = self.dim;
        let mut s = format!("ring {} p={} dim={}\n", self.name, self.p, n);
        s.push_str("basis");
        for b in &self.basis_names {
            s.push(' ');
            s.push_str(b);
        }
        s.push('\n');
        s.push_str(&format!("unit {}\n", join(&self.unit)));
        for i in 0..n {
            for j in 0..n {
                let v = &self.mul[i * n + j];
                if v.iter().any(|&x| x != 0) {
                    s.push_str(&format!("mul {i} {j} = {}\n", join(v)));
                }
            }
        }
        if self.declared_radical {
            if let Some(idx) = radical_as_indices(self) {
                s.push_str("radical");
                for i in idx {
                    s.push_str(&format!(" {i}"));
                }
                s.push('\n');
            }
        }
        if let Some(d) = self.declared_injdim {
            s.push_str(&format!("injdim {d}\n"));
        }
        s
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn radical_as_indices(a: &Algebra) -> Option<Vec<usize>> {
    let mut idx = Vec::new();
    for v in &a.radical {
        let nz: Vec<usize> = (0..a.dim).filter(|&i| v[i] != 0).collect();
        if nz.len() != 1 {
            return None;
        }
        idx.push(nz[0]);
    }
    idx.sort_unstable();
    Some(idx)
}

fn combine(p: u32, n: usize, mats: &[FpMatrix], a: &[u32]) -> FpMatrix {
    let mut out = FpMatrix::zeros(p, n, n);
    for (m, &c) in mats.iter().zip(a) {
        if c != 0 {
            out.add_scaled(c, m);
        }
    }
    out
}

/// Independent subset spanning the same space, in echelon form.
fn independent(p: u32, n: usize, vs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let r = FpMatrix::from_rows(p, n, vs).rref();
    (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect()
}

fn in_span(p: u32, n: usize, span: &[Vec<u32>], v: &[u32]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if span.is_empty() {
        return false;
    }
    FpMatrix::from_cols(p, n, span).solve(v).is_some()
}

pub(crate) fn is_two_sided_ideal(a: &Algebra, ideal: &[Vec<u32>]) -> bool {
    for v in ideal {
        for i in 0..a.dim {
            let e = a.basis_vec(i);
            if !in_span(a.p, a.dim, ideal, &a.mul_elem(&e, v))
                || !in_span(a.p, a.dim, ideal, &a.mul_elem(v, &e))
            {
                return false;
            }
        }
    }
    true
}

/// Least `k` with `I^k = 0`, if `I` is nilpotent.
pub(crate) fn nilpotency_index(a: &Algebra, ideal: &[Vec<u32>]) -> Option<usize> {
    let mut power = independent(a.p, a.dim, ideal);
    if power.is_empty() {
        return Some(0);
    }
    for k in 2..=a.dim + 2 {
        let mut next = Vec::new();
        for x in &power {
            for y in ideal {
                next.push(a.mul_elem(x, y));
            }
        }
        power = independent(a.p, a.dim, &next);
        if power.is_empty() {
            return Some(k);
        }
    }
    None
}

pub(crate) fn quotient_algebra(a: &Algebra, ideal: &[Vec<u32>]) -> Result<Algebra> {
    let p = a.p;
    let n = a.dim;
    let sub = if ideal.is_empty() {
        FpMatrix::zeros(p, n, 0)
    } else {
        FpMatrix::from_cols(p, n, ideal)
    };
    let q = QuotientSpace::new(p, n, &sub);
    let m = q.dim();
    let lifts: Vec<Vec<u32>> = (0..m).map(|i| q.lift.col(i)).collect();
    let mut mul = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let prod = a.mul_elem(&lifts[i], &lifts[j]);
            mul.push(q.proj.mul_vec(&prod).into_iter().map(u64::from).collect());
        }
    }
    let unit = q.proj.mul_vec(&a.unit).into_iter().map(u64::from).collect();
    // No declared radical here: the quotient's radical is computed.
    Algebra::new_unchecked_radical(AlgebraData {
        name: format!("{}/rad", a.name),
        p: p as u64,
        basis_names: (0..m).map(|i| format!("q{i}")).collect(),
        mul,
        unit,
        radical: None,
        injdim: None,
    })
}

impl Algebra {
    /// Validated structure without any radical data (used for quotients).
    fn new_unchecked_radical(data: AlgebraData) -> Result<Self> {
        let p = check_prime(data.p)?;
        let n = data.basis_names.len();
        let mut a = Algebra {
            name: data.name,
            p,
            dim: n,
            basis_names: data.basis_names,
            mul: data.mul.iter().map(|v| v.iter().map(|&x| x as u32).collect()).collect(),
            unit: data.unit.iter().map(|&x| x as u32).collect(),
            radical: Vec::new(),
            declared_radical: false,
            radical_maximality_checked: false,
            declared_injdim: None,
            left: Vec::new(),
            right: Vec::new(),
        };
        a.build_mult_matrices();
        a.check_axioms()?;
        Ok(a)
    }
}

fn is_nilpotent_mat(m: &FpMatrix) -> bool {
    let n = m.rows();
    let mut pw = m.clone();
    let mut k = 1;
    while k < n.max(1) {
        pw = pw.mul(&pw);
        k *= 2;
    }
    pw.is_zero()
}

/// Largest nilpotent two-sided ideal.
///
/// The trace-form radical `{x : tr(L_{xb}) = 0 for all b}` always contains the
/// Jacobson radical and is an ideal; when it is nilpotent it is the radical.
/// Otherwise (possible in characteristic p) fall back to the characterisation
/// `x in rad iff b*x is nilpotent for every b`, by enumeration.
pub(crate) fn compute_radical(a: &Algebra) -> Result<Vec<Vec<u32>>> {
    let p = a.p;
    let n = a.dim;
    if n == 0 {
        return Ok(Vec::new());
    }
    let traces: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let m = a.left_mat(a.product(i, j));
                    (0..n).fold(0u32, |acc, k| fadd(p, acc, m.get(k, k)))
                })
                .collect()
        })
        .collect();
    let gram = FpMatrix::from_rows(p, n, &traces);
    let t = gram.transpose().kernel_cols();
    let cand: Vec<Vec<u32>> = (0..t.cols()).map(|j| t.col(j)).collect();
    if nilpotency_index(a, &cand).is_some() {
        return Ok(independent(p, n, &cand));
    }
    let total = (p as u64).checked_pow(2 * n as u32);
    if total.is_none_or(|t| t > 1 << 24) {
        return Err(Error::Unsupported(format!(
            "radical computation for {} (dim {n}, p={p}) needs a declared radical",
            a.name
        )));
    }
    let elems = all_elements(p, n);
    let mut members = Vec::new();
    for x in &elems {
        if elems.iter().all(|b| is_nilpotent_mat(&a.left_mat(&a.mul_elem(b, x)))) {
            members.push(x.clone());
        }
    }
    Ok(independent(p, n, &members))
}

fn all_elements(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// An algebra together with its opposite.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    left: Algebra,
    right: Algebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

impl Ring {
    pub fn new(alg: Algebra) -> Arc<Ring> {
        let right = alg.opposite();
        Arc::new(Ring { left: alg, right })
    }

    pub fn base(&self) -> &Algebra {
        &self.left
    }

    /// The algebra acting on modules of the given side (as left modules).
    pub fn acting(&self, side: Side) -> &Algebra {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn p(&self) -> u32 {
        self.left.p
    }

    pub fn dim(&self) -> usize {
        self.left.dim
    }
}

pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

// ---------------------------------------------------------------- builders

fn data_from_table(
    name: String,
    p: u64,
    names: Vec<String>,
    unit: Vec<u64>,
    mut prod: impl FnMut(usize, usize) -> Vec<u64>,
) -> AlgebraData {
    let n = names.len();
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mul.push(prod(i, j));
        }
    }
    AlgebraData { name, p, basis_names: names, mul, unit, radical: None, injdim: None }
}

fn unit_vec(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `k[x]/(x^n)`.
pub fn dual_numbers(p: u64, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::OutOfRange("truncated polynomial ring needs n >= 1".into()));
    }
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x{i}"),
        })
        .collect();
    let mut d = data_from_table(format!("dual{n}"), p, names, unit_vec(n, 0), |i, j| {
        if i + j < n {
            unit_vec(n, i + j)
        } else {
            vec![0; n]
        }
    });
    d.radical = Some((1..n).map(|i| unit_vec(n, i)).collect());
    d.injdim = Some(InjDim::Finite(0));
    Algebra::new(d)
}

/// `k[x,y]/(x^2, xy, y^2)`.
pub fn three_dim_local(p: u64) -> Result<Algebra> {
    let names = vec!["1".into(), "x".into(), "y".into()];
    let mut d = data_from_table("local3".into(), p, names, unit_vec(3, 0), |i, j| {
        if i == 0 {
            unit_vec(3, j)
        } else if j == 0 {
            unit_vec(3, i)
        } else {
            vec![0; 3]
        }
    });
    d.radical = Some(vec![unit_vec(3, 1), unit_vec(3, 2)]);
    d.injdim = Some(InjDim::Infinite);
    Algebra::new(d)
}

/// Path algebra of `1 -> 2`, basis `e1, e2, a`.
pub fn path_a2(p: u64) -> Result<Algebra> {
    let names = vec!["e1".into(), "e2".into(), "a".into()];
    let mut d = data_from_table("pathA2".into(), p, names, vec![1, 1, 0], |i, j| match (i, j) {
        (0, 0) => unit_vec(3, 0),
        (1, 1) => unit_vec(3, 1),
        (0, 2) | (2, 1) => unit_vec(3, 2),
        _ => vec![0; 3],
    });
    d.radical = Some(vec![unit_vec(3, 2)]);
    d.injdim = Some(InjDim::Finite(1));
    Algebra::new(d)
}

/// Upper triangular 2x2 matrices with entries in `a`; basis ordered as
/// `E11 (x) b`, `E12 (x) b`, `E22 (x) b` for the basis `b` of `a`.
pub fn triangular_over(a: &Algebra) -> Result<Algebra> {
    let n = a.dim;
    let positions = [(0usize, 0usize), (0, 1), (1, 1)];
    let mut names = Vec::with_capacity(3 * n);
    for (r, c) in positions {
        for b in &a.basis_names {
            names.push(format!("e{}{}{}", r + 1, c + 1, if b == "1" { String::new() } else { format!("*{b}") }));
        }
    }
    let total = 3 * n;
    let index = |pos: usize, b: usize| pos * n + b;
    let mut unit = vec![0u64; total];
    for (k, &u) in a.unit.iter().enumerate() {
        unit[index(0, k)] = u as u64;
        unit[index(2, k)] = u as u64;
    }
    let mut d = data_from_table(format!("T2({})", a.name), a.p as u64, names, unit, |i, j| {
        let (pi, bi) = (i / n, i % n);
        let (pj, bj) = (j / n, j % n);
        let (r1, c1) = positions[pi];
        let (r2, c2) = positions[pj];
        let mut out = vec![0u64; total];
        if c1 == r2 {
            let target = positions.iter().position(|&x| x == (r1, c2)).unwrap();
            for (k, &c) in a.product(bi, bj).iter().enumerate() {
                out[index(target, k)] = c as u64;
            }
        }
        out
    });
    let mut rad = Vec::new();
    for v in &a.radical {
        for pos in [0, 2] {
            let mut w = vec![0u64; total];
            for (k, &c) in v.iter().enumerate() {
                w[index(pos, k)] = c as u64;
            }
            rad.push(w);
        }
    }
    for b in 0..n {
        rad.push(unit_vec(total, index(1, b)));
    }
    d.radical = Some(rad);
    d.injdim = match a.declared_injdim {
        Some(InjDim::Finite(k)) => Some(InjDim::Finite(k + 1)),
        other => other,
    };
    Algebra::new(d)
}

/// The field F_p as a one-dimensional algebra.
pub fn prime_field(p: u64) -> Result<Algebra> {
    let mut d = data_from_table(format!("F{p}"), p, vec!["1".into()], vec![1], |_, _| vec![1]);
    d.radical = Some(Vec::new());
    d.injdim = Some(InjDim::Finite(0));
    Algebra::new(d)
}

/// Looks up a builder by the names used on the command line.
pub fn named_algebra(name: &str) -> Result<Algebra> {
    match name {
        "F2" | "field" => prime_field(2),
        "dual2" | "dual_numbers" => dual_numbers(2, 2),
        "local3" | "three_dim_local" => three_dim_local(2),
        "pathA2" | "path_A2" => path_a2(2),
        "T2dual2" | "triangular_dual2" => triangular_over(&dual_numbers(2, 2)?),
        other => Err(Error::OutOfRange(format!("unknown algebra name `{other}`"))),
    }
}

// ---------------------------------------------------------------- parsing

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_num(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| Error::Parse { line, msg: format!("expected a number, got `{tok}`") })
}

fn parse_kv<'a>(tok: &'a str, key: &str, line: usize) -> Result<&'a str> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse { line, msg: format!("expected `{key}=...`, got `{tok}`") })
}

/// Parses a ring-spec document.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let mut header: Option<(String, u64, usize)> = None;
    let mut names: Option<Vec<String>> = None;
    let mut unit: Option<Vec<u64>> = None;
    let mut products: Vec<(usize, usize, Vec<u64>, usize)> = Vec::new();
    let mut radical: Option<Vec<usize>> = None;
    let mut injdim = None;
    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let toks: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let Some(&key) = toks.first() else { continue };
        let need_header = |h: &Option<(String, u64, usize)>| -> Result<usize> {
            h.as_ref().map(|x| x.2).ok_or(Error::Parse { line: ln, msg: "`ring` header must come first".into() })
        };
        match key {
            "ring" => {
                if toks.len() != 4 || header.is_some() {
                    return Err(Error::Parse { line: ln, msg: "expected `ring <name> p=<prime> dim=<n>`".into() });
                }
                let p = parse_num(parse_kv(toks[2], "p", ln)?, ln)?;
                let n = parse_num(parse_kv(toks[3], "dim", ln)?, ln)? as usize;
                header = Some((toks[1].to_string(), p, n));
            }
            "basis" => {
                let n = need_header(&header)?;
                if toks.len() - 1 != n {
                    return Err(Error::Parse { line: ln, msg: format!("basis has {} labels, dim is {n}", toks.len() - 1) });
                }
                names = Some(toks[1..].iter().map(|s| s.to_string()).collect());
            }
            "unit" => {
                let n = need_header(&header)?;
                let v = toks[1..].iter().map(|t| parse_num(t, ln)).collect::<Result<Vec<_>>>()?;
                if v.len() != n {
                    return Err(Error::Parse { line: ln, msg: format!("unit has {} coefficients, dim is {n}", v.len()) });
                }
                unit = Some(v);
            }
            "mul" => {
                let n = need_header(&header)?;
                if toks.len() != 4 + n || toks[3] != "=" {
                    return Err(Error::Parse { line: ln, msg: "expected `mul <i> <j> = <c_0> ... <c_{n-1}>`".into() });
                }
                let i = parse_num(toks[1], ln)? as usize;
                let j = parse_num(toks[2], ln)? as usize;
                if i >= n || j >= n {
                    return Err(Error::Parse { line: ln, msg: format!("basis index out of range in `mul {i} {j}`") });
                }
                let v = toks[4..].iter().map(|t| parse_num(t, ln)).collect::<Result<Vec<_>>>()?;
                products.push((i, j, v, ln));
            }
            "radical" => {
                let n = need_header(&header)?;
                let idx = toks[1..].iter().map(|t| parse_num(t, ln).map(|x| x as usize)).collect::<Result<Vec<_>>>()?;
                if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
                    return Err(Error::Parse { line: ln, msg: format!("radical index {bad} out of range") });
                }
                radical = Some(idx);
            }
            "injdim" => {
                if toks.len() != 2 {
                    return Err(Error::Parse { line: ln, msg: "expected `injdim <d|inf>`".into() });
                }
                injdim = Some(if toks[1] == "inf" {
                    InjDim::Infinite
                } else {
                    InjDim::Finite(parse_num(toks[1], ln)? as usize)
                });
            }
            other => return Err(Error::Parse { line: ln, msg: format!("unrecognized key `{other}`") }),
        }
    }
    let (name, p, n) = header.ok_or(Error::Parse { line: 0, msg: "missing `ring` header".into() })?;
    let names = names.ok_or(Error::Parse { line: 0, msg: "missing `basis` line".into() })?;
    let unit = unit.ok_or(Error::Parse { line: 0, msg: "missing `unit` line".into() })?;
    let mut mul = vec![vec![0u64; n]; n * n];
    for (i, j, v, ln) in products {
        if mul[i * n + j].iter().any(|&x| x != 0) {
            return Err(Error::Parse { line: ln, msg: format!("duplicate product {i}*{j}") });
        }
        mul[i * n + j] = v;
    }
    Algebra::new(AlgebraData {
        name,
        p,
        basis_names: names,
        mul,
        unit,
        radical: radical.map(|idx| idx.into_iter().map(|i| unit_vec(n, i)).collect()),
        injdim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = "# F_2[x]/(x^2)\nring dual2 p=2 dim=2\nbasis 1 x\nunit 1 0\nmul 0 0 = 1 0\nmul 0 1 = 0 1\nmul 1 0 = 0 1\n";

    fn all_builders() -> Vec<Algebra> {
        vec![
            prime_field(2).unwrap(),
            dual_numbers(2, 2).unwrap(),
            dual_numbers(3, 3).unwrap(),
            three_dim_local(2).unwrap(),
            path_a2(2).unwrap(),
            triangular_over(&dual_numbers(2, 2).unwrap()).unwrap(),
        ]
    }

    #[test]
    fn parses_dual_numbers() {
        let a = parse_algebra(DUAL).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.radical(), &[vec![0, 1]]);
        assert!(!a.has_declared_radical());
    }

    #[test]
    fn parses_field() {
        let a = parse_algebra("ring k p=2 dim=1\nbasis 1\nunit 1\nmul 0 0 = 1\n").unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.radical().is_empty());
    }

    #[test]
    fn broken_unit_is_rejected() {
        // x*x = x with unit [1,0] but 1*x = 0
        let text = "ring bad p=2 dim=2\nbasis 1 x\nunit 1 0\nmul 0 0 = 1 0\nmul 1 1 = 0 1\n";
        match parse_algebra(text) {
            Err(Error::InvalidAlgebra(msg)) => assert!(msg.contains("unit law fails on pair"), "{msg}"),
            other => panic!("expected unit failure, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_algebra("ring k p=2 dim=1\nbogus 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "unrecognized key `bogus`".into() });
        assert!(matches!(parse_algebra("ring k p=4 dim=1\nbasis 1\nunit 1\nmul 0 0 = 1\n"), Err(Error::NotPrime(4))));
    }

    #[test]
    fn spec_round_trip() {
        for a in all_builders() {
            let b = parse_algebra(&a.to_spec()).unwrap();
            assert_eq!(a, b, "{}", a.name());
        }
    }

    #[test]
    fn opposite_examples() {
        let d = dual_numbers(2, 2).unwrap();
        let dop = d.opposite();
        assert_eq!(dop.mul, d.mul);
        let pa = path_a2(2).unwrap();
        let op = pa.opposite();
        // in the opposite, a *op e1 = e1 * a = a
        assert_eq!(op.product(2, 0), &[0, 0, 1]);
        assert_eq!(op.product(0, 2), &[0, 0, 0]);
        for a in all_builders() {
            assert_eq!(a.opposite().opposite(), a);
            assert_eq!(a.opposite().radical().len(), a.radical().len());
        }
    }

    #[test]
    fn radical_examples() {
        assert_eq!(dual_numbers(2, 2).unwrap().radical(), &[vec![0, 1]]);
        assert!(prime_field(2).unwrap().radical().is_empty());
        assert_eq!(three_dim_local(2).unwrap().radical().len(), 2);
        // computed path agrees with the declared one
        for a in all_builders() {
            let computed = compute_radical(&a).unwrap();
            assert_eq!(computed.len(), a.radical().len(), "{}", a.name());
            for v in &computed {
                assert!(in_span(a.p(), a.dim(), a.radical(), v));
            }
        }
    }

    #[test]
    fn builder_invariants() {
        for a in all_builders() {
            let k = nilpotency_index(&a, a.radical()).expect("nilpotent");
            assert!(k <= a.dim() + 1);
            let q = quotient_algebra(&a, a.radical()).unwrap();
            assert!(compute_radical(&q).unwrap().is_empty(), "{}", a.name());
        }
        let t = triangular_over(&dual_numbers(2, 2).unwrap()).unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.declared_injdim(), Some(InjDim::Finite(1)));
    }

    #[test]
    fn non_maximal_declared_radical_rejected() {
        // declaring 0 as the radical of k[x]/(x^2) fails maximality
        let text = format!("{DUAL}radical\n");
        assert!(matches!(parse_algebra(&text), Err(Error::InvalidAlgebra(_))));
        // a non-nilpotent "radical"
        let text = format!("{DUAL}radical 0\n");
        assert!(matches!(parse_algebra(&text), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn char_p_fallback_for_matrix_algebra() {
        // M_2(F_2) has a degenerate trace form but zero radical
        let n = 4;
        let idx = |r: usize, c: usize| r * 2 + c;
        let d = data_from_table("M2".into(), 2, (0..4).map(|i| format!("E{i}")).collect(), vec![1, 0, 0, 1], |i, j| {
            let (r1, c1) = (i / 2, i % 2);
            let (r2, c2) = (j / 2, j % 2);
            if c1 == r2 {
                unit_vec(n, idx(r1, c2))
            } else {
                vec![0; n]
            }
        });
        let a = Algebra::new(d).unwrap();
        assert!(a.radical().is_empty());
    }

    #[test]
    fn min_poly_of_nilpotent() {
        let d = dual_numbers(2, 2).unwrap();
        assert_eq!(d.min_poly(&[0, 1]), vec![0, 0]);
        let pa = path_a2(2).unwrap();
        // e1^2 = e1
        assert_eq!(pa.min_poly(&[1, 0, 0]), vec![0, 1]);
    }
}
