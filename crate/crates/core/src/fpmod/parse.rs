//! Text formats for modules and for bundles of modules and maps.
//!
//! ```text
//! module k over dual2 side=left
//! presentation gens=1
//! rel 0,1
//! ```
//!
//! A `rel` line holds one algebra element per generator, either as
//! comma-separated coefficient vectors or as one flat list of `gens * dim`
//! coefficients. The representation form is
//!
//! ```text
//! module k over dual2 side=left
//! representation dim=1
//! action 0
//! 1
//! action 1
//! 0
//! ```
//!
//! A bundle is a sequence of modules followed by maps
//! `map <name> <src> <tgt>` with `dim tgt` rows of `dim src` entries.

use std::sync::Arc;

use crate::algebra::{Ring, Side};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

use super::{Module, ModuleMap, RelMatrix};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
            })
            .collect();
        Lines { items, pos: 0 }
    }
    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }
    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let it = self.items.get(self.pos).cloned();
        self.pos += 1;
        it
    }
    fn last_line(&self) -> usize {
        self.items.last().map(|x| x.0).unwrap_or(0)
    }
}

fn key_value<'a>(line: usize, tok: &'a str, key: &str) -> Result<&'a str> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| err(line, format!("expected {key}=...")))
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| err(line, format!("expected a non-negative integer, got {s:?}")))
}

fn residue(line: usize, s: &str, p: u32) -> Result<u32> {
    let v: i64 = s.parse().map_err(|_| err(line, format!("expected an integer, got {s:?}")))?;
    Ok(v.rem_euclid(p as i64) as u32)
}

fn row_of(line: usize, toks: &[&str], len: usize, p: u32) -> Result<Vec<u32>> {
    if toks.len() != len {
        return Err(err(line, format!("expected {len} entries, got {}", toks.len())));
    }
    toks.iter().map(|t| residue(line, t, p)).collect()
}

fn parse_one(lines: &mut Lines, ring: &Arc<Ring>) -> Result<(String, Arc<Module>)> {
    let (ln, head) = lines.next().ok_or_else(|| err(0, "expected a module header"))?;
    if head.len() != 5 || head[0] != "module" || head[2] != "over" {
        return Err(err(ln, "expected `module <name> over <ring> side=<left|right>`"));
    }
    let name = head[1].to_string();
    if head[3] != ring.base().name() {
        return Err(err(ln, format!("module is over {}, ring is {}", head[3], ring.base().name())));
    }
    let side = match key_value(ln, head[4], "side")? {
        "left" => Side::Left,
        "right" => Side::Right,
        other => return Err(err(ln, format!("unknown side {other:?}"))),
    };
    let alg = ring.acting(side);
    let (n, p) = (alg.dim(), alg.p());
    let (ln, kind) = lines.next().ok_or_else(|| err(ln, "expected presentation or representation"))?;
    let m = match kind.first().copied() {
        Some("presentation") if kind.len() == 2 => {
            let g = parse_usize(ln, key_value(ln, kind[1], "gens")?)?;
            let mut rows = Vec::new();
            while let Some((rl, toks)) = lines.peek().cloned() {
                if toks[0] != "rel" {
                    break;
                }
                lines.next();
                let body = &toks[1..];
                let entries: Vec<Vec<u32>> = if body.iter().any(|t| t.contains(',')) {
                    if body.len() != g {
                        return Err(err(rl, format!("expected {g} entries, got {}", body.len())));
                    }
                    body.iter()
                        .map(|t| row_of(rl, &t.split(',').collect::<Vec<_>>(), n, p))
                        .collect::<Result<_>>()?
                } else {
                    let flat = row_of(rl, body, g * n, p)?;
                    flat.chunks(n.max(1)).map(|c| c.to_vec()).take(g).collect()
                };
                rows.push(entries);
            }
            let m = rows.len();
            let rel = RelMatrix::new(m, g, rows.into_iter().flatten().collect());
            Module::from_presentation(ring, side, rel)?
        }
        Some("representation") if kind.len() == 2 => {
            let d = parse_usize(ln, key_value(ln, kind[1], "dim")?)?;
            let mut actions: Vec<Option<FpMatrix>> = vec![None; n];
            while let Some((al, toks)) = lines.peek().cloned() {
                if toks[0] != "action" {
                    break;
                }
                lines.next();
                if toks.len() != 2 {
                    return Err(err(al, "expected `action <basis-index>`"));
                }
                let b = parse_usize(al, toks[1])?;
                if b >= n {
                    return Err(err(al, format!("basis index {b} out of range")));
                }
                if actions[b].is_some() {
                    return Err(err(al, format!("action {b} given twice")));
                }
                let mut rows = Vec::with_capacity(d);
                for _ in 0..d {
                    let (rl, r) = lines.next().ok_or_else(|| err(al, "matrix rows missing"))?;
                    rows.push(row_of(rl, &r, d, p)?);
                }
                actions[b] = Some(FpMatrix::from_rows(p, d, &rows));
            }
            let actions: Vec<FpMatrix> = actions
                .into_iter()
                .enumerate()
                .map(|(b, a)| a.ok_or_else(|| err(ln, format!("action {b} missing"))))
                .collect::<Result<_>>()?;
            Module::from_representation(ring, side, actions).map_err(|e| err(ln, e.to_string()))?
        }
        _ => return Err(err(ln, "expected `presentation gens=<g>` or `representation dim=<d>`")),
    };
    Ok((name, m))
}

/// Parses a single module.
pub fn parse_module(text: &str, ring: &Arc<Ring>) -> Result<(String, Arc<Module>)> {
    let mut lines = Lines::new(text);
    let out = parse_one(&mut lines, ring)?;
    if let Some((ln, _)) = lines.peek() {
        return Err(err(*ln, "unexpected trailing content"));
    }
    Ok(out)
}

/// Named modules and maps read from one file.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub modules: Vec<(String, Arc<Module>)>,
    pub maps: Vec<(String, ModuleMap)>,
}

impl Bundle {
    pub fn module(&self, name: &str) -> Option<&Arc<Module>> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
    pub fn map(&self, name: &str) -> Option<&ModuleMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

pub fn parse_bundle(text: &str, ring: &Arc<Ring>) -> Result<Bundle> {
    let mut lines = Lines::new(text);
    let mut bundle = Bundle::default();
    while let Some((ln, toks)) = lines.peek().cloned() {
        match toks[0] {
            "module" => {
                let (name, m) = parse_one(&mut lines, ring)?;
                if bundle.module(&name).is_some() {
                    return Err(err(ln, format!("module {name} defined twice")));
                }
                bundle.modules.push((name, m));
            }
            "map" => {
                lines.next();
                if toks.len() != 4 {
                    return Err(err(ln, "expected `map <name> <src> <tgt>`"));
                }
                let find = |n: &str| bundle.module(n).cloned().ok_or_else(|| err(ln, format!("unknown module {n}")));
                let (src, tgt) = (find(toks[2])?, find(toks[3])?);
                let mut rows = Vec::new();
                if src.dim() > 0 {
                    for _ in 0..tgt.dim() {
                        let (rl, r) = lines.next().ok_or_else(|| err(lines.last_line(), "matrix rows missing"))?;
                        rows.push(row_of(rl, &r, src.dim(), src.p())?);
                    }
                }
                let mat = if src.dim() == 0 {
                    FpMatrix::zeros(src.p(), tgt.dim(), 0)
                } else {
                    FpMatrix::from_rows(src.p(), src.dim(), &rows)
                };
                let f = ModuleMap::new(&src, &tgt, mat).map_err(|e| err(ln, e.to_string()))?;
                bundle.maps.push((toks[1].to_string(), f));
            }
            other => return Err(err(ln, format!("unexpected {other:?}"))),
        }
    }
    Ok(bundle)
}

/// Renders a map in the bundle format.
pub fn map_to_spec(name: &str, src: &str, tgt: &str, f: &ModuleMap) -> String {
    let mut s = format!("map {name} {src} {tgt}\n");
    if f.src().dim() > 0 {
        for i in 0..f.matrix().rows() {
            s.push_str(&f.matrix().row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            s.push('\n');
        }
    }
    s
}
