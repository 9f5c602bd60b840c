//! The `gtranscert v1` text format: a certified sequence written out as raw
//! residues so it can be re-checked without the program that produced it.
//!
//! ```text
//! gtranscert v1
//! side left
//! ring-begin
//! ...ring spec...
//! ring-end
//! objects 3
//! object 0 dim 1 tag none digest <sha256>
//! action 0 1 1: 1
//! gens 1 1: 1
//! maps 2
//! map 0 2 1 digest <sha256>: 0 1
//! nodes 1
//! node 1
//! ker 2 1: 0 1
//! im 2 1: 0 1
//! witness 1 1: 1
//! end
//! ```
//!
//! Matrices are `rows cols:` followed by entries in row-major order. Digests
//! are optional (`-`); the tag is `none`, `free`, `projective` (followed by a
//! `section` line) or `gp <bound>`.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::algebra::{parse_algebra, Ring, Side};
use crate::error::{Error, Result};
use crate::fpmod::{CertifiedSequence, NodeCert, ObjectTag};
use crate::linalg::FpMatrix;

use super::recheck::{recheck, RecheckFailure};

pub const HEADER: &str = "gtranscert v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertTag {
    None,
    Free,
    Projective { section: FpMatrix },
    Gp { bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertObject {
    pub dim: usize,
    pub actions: Vec<FpMatrix>,
    /// Generators as columns.
    pub gens: FpMatrix,
    pub tag: CertTag,
    pub digest: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CertFile {
    pub ring: Arc<Ring>,
    pub side: Side,
    pub objects: Vec<CertObject>,
    pub maps: Vec<FpMatrix>,
    pub map_digests: Vec<Option<String>>,
    pub nodes: Vec<NodeCert>,
}

impl PartialEq for CertFile {
    fn eq(&self, other: &Self) -> bool {
        self.ring.base().to_spec() == other.ring.base().to_spec()
            && self.side == other.side
            && self.objects == other.objects
            && self.maps == other.maps
            && self.map_digests == other.map_digests
            && self.nodes == other.nodes
    }
}

fn residues(m: &FpMatrix) -> String {
    let mut s = format!("{} {}:", m.rows(), m.cols());
    for x in m.data() {
        let _ = write!(s, " {x}");
    }
    s
}

/// SHA-256 over the residue rendering of the given matrices.
pub(crate) fn digest(mats: &[FpMatrix]) -> String {
    let mut h = Sha256::new();
    for m in mats {
        h.update(residues(m).as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

impl CertFile {
    pub fn from_sequence(seq: &CertifiedSequence) -> CertFile {
        let first = seq.object(0);
        let objects = (0..seq.len_objects())
            .map(|i| {
                let m = seq.object(i);
                let tag = match &seq.tags()[i] {
                    ObjectTag::None => CertTag::None,
                    ObjectTag::Free => CertTag::Free,
                    ObjectTag::Projective(w) => CertTag::Projective { section: w.section.clone() },
                    ObjectTag::Gp { bound } => CertTag::Gp { bound: *bound },
                };
                CertObject {
                    dim: m.dim(),
                    actions: m.actions().to_vec(),
                    gens: m.gen_images().clone(),
                    tag,
                    digest: Some(digest(m.actions())),
                }
            })
            .collect();
        let maps: Vec<FpMatrix> = seq.maps().iter().map(|f| f.matrix().clone()).collect();
        let map_digests = maps.iter().map(|f| Some(digest(std::slice::from_ref(f)))).collect();
        CertFile {
            ring: first.ring().clone(),
            side: first.side(),
            objects,
            maps,
            map_digests,
            nodes: seq.nodes().to_vec(),
        }
    }
}

pub fn write_certificate(cert: &CertFile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(s, "side {}", cert.side);
    let _ = writeln!(s, "ring-begin");
    s.push_str(&cert.ring.base().to_spec());
    if !s.ends_with('\n') {
        s.push('\n');
    }
    let _ = writeln!(s, "ring-end");
    let _ = writeln!(s, "objects {}", cert.objects.len());
    for (i, o) in cert.objects.iter().enumerate() {
        let tag = match &o.tag {
            CertTag::None => "none".to_string(),
            CertTag::Free => "free".to_string(),
            CertTag::Projective { .. } => "projective".to_string(),
            CertTag::Gp { bound } => format!("gp {bound}"),
        };
        let _ = writeln!(s, "object {i} dim {} tag {tag} digest {}", o.dim, o.digest.as_deref().unwrap_or("-"));
        for (t, a) in o.actions.iter().enumerate() {
            let _ = writeln!(s, "action {t} {}", residues(a));
        }
        let _ = writeln!(s, "gens {}", residues(&o.gens));
        if let CertTag::Projective { section } = &o.tag {
            let _ = writeln!(s, "section {}", residues(section));
        }
    }
    let _ = writeln!(s, "maps {}", cert.maps.len());
    for (i, f) in cert.maps.iter().enumerate() {
        let d = cert.map_digests.get(i).cloned().flatten();
        let (r, c) = (f.rows(), f.cols());
        let entries = residues(f);
        let body = entries.split_once(':').map(|x| x.1).unwrap_or("");
        let _ = writeln!(s, "map {i} {r} {c} digest {}:{body}", d.as_deref().unwrap_or("-"));
    }
    let _ = writeln!(s, "nodes {}", cert.nodes.len());
    for (i, n) in cert.nodes.iter().enumerate() {
        let _ = writeln!(s, "node {}", i + 1);
        let _ = writeln!(s, "ker {}", residues(&n.ker));
        let _ = writeln!(s, "im {}", residues(&n.im));
        let _ = writeln!(s, "witness {}", residues(&n.witness));
    }
    s.push_str("end\n");
    s
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied().ok_or(Error::Parse { line: self.last(), msg: "unexpected end of certificate".into() })?;
        self.pos += 1;
        Ok(l)
    }
    fn last(&self) -> usize {
        self.lines.last().map(|l| l.0).unwrap_or(0)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, found `{tok}`")))
}

/// Parses `rows cols: entries` into a matrix over `F_p`.
fn matrix(p: u32, spec: &str, line: usize) -> Result<FpMatrix> {
    let (shape, body) = spec.split_once(':').ok_or_else(|| perr(line, "expected `rows cols: entries`"))?;
    let dims: Vec<&str> = shape.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(perr(line, "expected `rows cols: entries`"));
    }
    let (r, c) = (num(dims[0], line)?, num(dims[1], line)?);
    let entries = body.split_whitespace().map(|t| t.parse::<u64>().map_err(|_| perr(line, format!("bad residue `{t}`")))).collect::<Result<Vec<u64>>>()?;
    if entries.len() != r * c {
        return Err(perr(line, format!("expected {} entries, found {}", r * c, entries.len())));
    }
    if entries.iter().any(|&x| x >= p as u64) {
        return Err(perr(line, format!("entry is not a residue mod {p}")));
    }
    FpMatrix::new(p as u64, r, c, entries)
}

/// The remainder of a line after the expected keyword.
fn keyword<'a>(l: (usize, &'a str), key: &str) -> Result<&'a str> {
    let (ln, text) = l;
    match text.split_once(char::is_whitespace) {
        Some((k, rest)) if k == key => Ok(rest.trim()),
        None if text == key => Ok(""),
        _ => Err(perr(ln, format!("expected `{key}`"))),
    }
}

fn opt_digest(tok: &str) -> Option<String> {
    (tok != "-").then(|| tok.to_string())
}

pub fn parse_certificate(text: &str) -> Result<CertFile> {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#')).collect();
    let mut it = Lines { lines, pos: 0 };
    let (ln, h) = it.next()?;
    if h != HEADER {
        return Err(perr(ln, format!("expected header `{HEADER}`")));
    }
    let l = it.next()?;
    let side = match keyword(l, "side")? {
        "left" => Side::Left,
        "right" => Side::Right,
        _ => return Err(perr(l.0, "side must be `left` or `right`")),
    };
    keyword(it.next()?, "ring-begin")?;
    let mut spec = String::new();
    loop {
        let (_, l) = it.next()?;
        if l == "ring-end" {
            break;
        }
        spec.push_str(l);
        spec.push('\n');
    }
    let ring = Ring::new(parse_algebra(&spec)?);
    let p = ring.p();
    let n = ring.dim();
    let l = it.next()?;
    let count = num(keyword(l, "objects")?, l.0)?;
    let mut objects = Vec::with_capacity(count);
    for i in 0..count {
        let l = it.next()?;
        let toks: Vec<&str> = keyword(l, "object")?.split_whitespace().collect();
        let bad = || perr(l.0, format!("expected `object {i} dim <d> tag <tag> digest <hex>`"));
        if toks.len() < 6 || num(toks[0], l.0)? != i || toks[1] != "dim" || toks[3] != "tag" {
            return Err(bad());
        }
        let dim = num(toks[2], l.0)?;
        let (tag_toks, rest) = if toks[4] == "gp" { (&toks[4..6], &toks[6..]) } else { (&toks[4..5], &toks[5..]) };
        if rest.len() != 2 || rest[0] != "digest" {
            return Err(bad());
        }
        let mut actions = Vec::with_capacity(n);
        for t in 0..n {
            let l = it.next()?;
            let body = keyword(l, "action")?;
            let (idx, m) = body.split_once(char::is_whitespace).ok_or_else(|| perr(l.0, "expected `action <t> rows cols: ...`"))?;
            if num(idx, l.0)? != t {
                return Err(perr(l.0, format!("expected action {t}")));
            }
            actions.push(matrix(p, m, l.0)?);
        }
        let l = it.next()?;
        let gens = matrix(p, keyword(l, "gens")?, l.0)?;
        let tag = match tag_toks[0] {
            "none" => CertTag::None,
            "free" => CertTag::Free,
            "gp" => CertTag::Gp { bound: num(tag_toks[1], l.0)? },
            "projective" => {
                let l = it.next()?;
                CertTag::Projective { section: matrix(p, keyword(l, "section")?, l.0)? }
            }
            other => return Err(perr(l.0, format!("unknown tag `{other}`"))),
        };
        objects.push(CertObject { dim, actions, gens, tag, digest: opt_digest(rest[1]) });
    }
    let l = it.next()?;
    let count = num(keyword(l, "maps")?, l.0)?;
    let mut maps = Vec::with_capacity(count);
    let mut map_digests = Vec::with_capacity(count);
    for i in 0..count {
        let l = it.next()?;
        let (head, body) = keyword(l, "map")?.split_once(':').ok_or_else(|| perr(l.0, "expected `map <i> rows cols digest <hex>: ...`"))?;
        let toks: Vec<&str> = head.split_whitespace().collect();
        if toks.len() != 5 || num(toks[0], l.0)? != i || toks[3] != "digest" {
            return Err(perr(l.0, format!("expected `map {i} rows cols digest <hex>: ...`")));
        }
        maps.push(matrix(p, &format!("{} {}:{body}", toks[1], toks[2]), l.0)?);
        map_digests.push(opt_digest(toks[4]));
    }
    let l = it.next()?;
    let count = num(keyword(l, "nodes")?, l.0)?;
    let mut nodes = Vec::with_capacity(count);
    for i in 0..count {
        let l = it.next()?;
        if num(keyword(l, "node")?, l.0)? != i + 1 {
            return Err(perr(l.0, format!("expected node {}", i + 1)));
        }
        let l = it.next()?;
        let ker = matrix(p, keyword(l, "ker")?, l.0)?;
        let l = it.next()?;
        let im = matrix(p, keyword(l, "im")?, l.0)?;
        let l = it.next()?;
        let witness = matrix(p, keyword(l, "witness")?, l.0)?;
        nodes.push(NodeCert { ker, im, witness });
    }
    keyword(it.next()?, "end")?;
    if let Some((ln, _)) = it.lines.get(it.pos) {
        return Err(perr(*ln, "content after `end`"));
    }
    Ok(CertFile { ring, side, objects, maps, map_digests, nodes })
}

/// What recheck made of a single-entry mutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MutationOutcome {
    /// Recheck failed, as it should.
    Caught { site: String, failure: RecheckFailure },
    /// Recheck passed and the mutated entry was certificate data (generators,
    /// bases) whose new value is still valid; the modules and maps are unchanged.
    Benign { site: String },
    /// Recheck passed although a module or map changed.
    Missed { site: String },
}

impl MutationOutcome {
    pub fn is_missed(&self) -> bool {
        matches!(self, MutationOutcome::Missed { .. })
    }
}

/// Every mutable matrix in the certificate, with whether it carries the
/// represented sequence (actions and maps) or only certificate data.
fn sites(cert: &mut CertFile) -> Vec<(String, bool, &mut FpMatrix)> {
    let mut out: Vec<(String, bool, &mut FpMatrix)> = Vec::new();
    for (i, o) in cert.objects.iter_mut().enumerate() {
        for (t, a) in o.actions.iter_mut().enumerate() {
            out.push((format!("object {i} action {t}"), true, a));
        }
        out.push((format!("object {i} gens"), false, &mut o.gens));
        if let CertTag::Projective { section } = &mut o.tag {
            out.push((format!("object {i} section"), false, section));
        }
    }
    for (i, f) in cert.maps.iter_mut().enumerate() {
        out.push((format!("map {i}"), true, f));
    }
    for (i, n) in cert.nodes.iter_mut().enumerate() {
        out.push((format!("node {} ker", i + 1), false, &mut n.ker));
        out.push((format!("node {} im", i + 1), false, &mut n.im));
        out.push((format!("node {} witness", i + 1), false, &mut n.witness));
    }
    out
}

/// Changes one matrix entry, chosen by the seed, to a different residue and
/// rechecks the result.
pub fn mutate_certificate(cert: &CertFile, seed: u64) -> (CertFile, MutationOutcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mutated = cert.clone();
    let p = cert.ring.p();
    let (site, structural) = {
        let mut all = sites(&mut mutated);
        let total: usize = all.iter().map(|s| s.2.data().len()).sum();
        if total == 0 {
            return (mutated, MutationOutcome::Benign { site: "no entries".into() });
        }
        let mut k = rng.gen_range(0..total);
        let (name, structural, m) = all.iter_mut().find(|s| {
            let len = s.2.data().len();
            if k < len {
                true
            } else {
                k -= len;
                false
            }
        }).expect("index below total");
        let (r, c) = (k / m.cols(), k % m.cols());
        let old = m.get(r, c);
        m.set(r, c, (old + rng.gen_range(1..p)) % p);
        (format!("{name} entry ({r}, {c})"), *structural)
    };
    let outcome = match recheck(&mutated) {
        Err(failure) => MutationOutcome::Caught { site, failure },
        Ok(()) if structural => MutationOutcome::Missed { site },
        Ok(()) => MutationOutcome::Benign { site },
    };
    (mutated, outcome)
}
