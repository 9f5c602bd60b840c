//! Seeded sweeps. Every instance is drawn from one ChaCha stream seeded by
//! `--seed`, so a sweep is reproducible from its command line alone; a check
//! that fails on an instance becomes a FAILURE line naming the instance.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gtrans_core::algebra::{Ring, Side};
use gtrans_core::fpmod::{kernel, pushout, rad_layers, CertifiedSequence, IsoVerdict, Module, ModuleMap, ObjectTag};
use gtrans_core::gorenstein::{
    construct_cor25, construct_prop36, construct_thm24_bwd, construct_thm24_fwd, construct_thm26, cor35_report, gorenstein_transpose,
    gp_test, gpd_bounded, lemma21_check, precover_check, prop34_report, random_gp_presentation, random_gp_resolution, random_module,
    thm31_embed, thm31_realize, GpCertificate, GpMode, GpPool, TheoremReport,
};
use gtrans_core::homology::{ext_dims, pd_bounded, sigma, transpose};
use gtrans_core::oracle::{enumerate_modules, ext_oracle_dims, recheck_gp, recheck_sequence, Dedup, EnumerationSpec, MAX_ORACLE_DEGREE};

use crate::args::SweepKind;
use crate::commands::{Ctx, Res};
use crate::report::Table;
use crate::CliError;

const POOL_LEFT: usize = 4;
const POOL_RIGHT: usize = 3;
/// Generators of the random modules sweeps start from.
const MAX_GENS: usize = 2;
/// Random draws allowed per requested instance when filtering by an invariant.
const DRAWS_PER_INSTANCE: usize = 50;

type Checks = Vec<String>;
type Inst = gtrans_core::Result<(Vec<String>, Checks)>;

/// Per-instance bookkeeping: a row per instance and the failures.
struct Tally {
    table: Table,
    failed: usize,
    instances: usize,
}

impl Tally {
    fn new(name: &str, columns: &[&str]) -> Tally {
        let mut cols = vec!["instance"];
        cols.extend_from_slice(columns);
        cols.push("result");
        Tally { table: Table::new(name, &cols), failed: 0, instances: 0 }
    }

    fn record(&mut self, ctx: &mut Ctx, i: usize, outcome: Inst) {
        self.instances += 1;
        let width = self.table.columns.len() - 2;
        let (mut row, result) = match outcome {
            Ok((row, checks)) if checks.is_empty() => (row, "pass".to_string()),
            Ok((row, checks)) => {
                for c in &checks {
                    ctx.report.fail(format!("instance {i}: {c}"));
                }
                self.failed += 1;
                (row, "FAIL".to_string())
            }
            Err(e) => {
                ctx.report.fail(format!("instance {i}: {e}"));
                self.failed += 1;
                (Vec::new(), "FAIL".to_string())
            }
        };
        row.resize(width, String::new());
        row.insert(0, i.to_string());
        row.push(result);
        self.table.push(row);
    }

    fn finish(self, ctx: &mut Ctx, claim: &str, level: &str) -> String {
        let passed = self.instances - self.failed;
        if self.failed == 0 {
            ctx.report.evidence(format!("{claim}: {passed}/{} instances", self.instances), level);
        }
        ctx.report.table(self.table);
        format!("{passed}/{} instances passed", self.instances)
    }
}

fn check(checks: &mut Checks, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        checks.push(what());
    }
}

fn rechecked(checks: &mut Checks, name: &str, seq: &CertifiedSequence) {
    if let Err(e) = recheck_sequence(seq) {
        checks.push(format!("{name}: {e}"));
    }
}

fn rechecked_gp(checks: &mut Checks, name: &str, c: &GpCertificate) {
    if let Err(e) = recheck_gp(c) {
        checks.push(format!("{name}: {e}"));
    }
}

fn clauses(checks: &mut Checks, rep: &TheoremReport) {
    for c in rep.failures() {
        checks.push(format!("{}: {} ({})", rep.name, c.label, c.detail));
    }
}

fn enumerate(ring: &Arc<Ring>, max_dim: usize, seed: u64) -> Res<Vec<Arc<Module>>> {
    let spec = EnumerationSpec { ring: ring.clone(), side: Side::Left, max_dim, seed, dedup: Dedup::Iso };
    Ok(enumerate_modules(&spec)?)
}

pub fn sweep(ctx: &mut Ctx, algebra: &str, dim_max: usize, count: usize, kind: SweepKind) -> Res<String> {
    let ring = ctx.ring(algebra)?;
    let (seed, bound) = (ctx.cli.seed, ctx.cli.bound);
    for (k, v) in [("dim-max", dim_max.to_string()), ("count", count.to_string()), ("bound", bound.to_string())] {
        ctx.report.setting(k, v);
    }
    ctx.report.setting("theorem", format!("{kind:?}").to_lowercase());
    let mode = ctx.mode(&ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Sweep { ring, mode, seed, bound, dim_max, count };
    match kind {
        SweepKind::Modules => s.modules(ctx),
        SweepKind::Thm24 => s.thm24(ctx, &mut rng),
        SweepKind::Thm31 => s.thm31(ctx, &mut rng),
        SweepKind::Cor25 => s.cor25(ctx, &mut rng),
        SweepKind::Thm26 => s.thm26(ctx, &mut rng),
        SweepKind::Lemma21 => s.lemma21(ctx, &mut rng),
        SweepKind::Prop34 => s.prop34(ctx, &mut rng),
        SweepKind::Cor35 => s.cor35(ctx, &mut rng),
    }
}

struct Sweep {
    ring: Arc<Ring>,
    mode: GpMode,
    seed: u64,
    bound: usize,
    dim_max: usize,
    count: usize,
}

impl Sweep {
    fn pool(&self, side: Side, size: usize, rng: &mut ChaCha8Rng) -> Res<GpPool> {
        Ok(GpPool::new(&self.ring, side, &self.mode, size, rng)?)
    }

    /// Modules with `Gpd <= max_gpd`: every enumerated one on small algebras,
    /// random ones (of the largest such dimension when `exact`) otherwise.
    fn gpd_modules(&self, ctx: &mut Ctx, max_gpd: usize, exact: bool, rng: &mut ChaCha8Rng) -> Res<Vec<(Arc<Module>, usize)>> {
        let mut out = Vec::new();
        let keep = |m: &Arc<Module>| -> Res<Option<usize>> {
            Ok(gpd_bounded(m, self.bound, &self.mode)?.exact().filter(|&d| d <= max_gpd && (!exact || d == max_gpd)))
        };
        if self.ring.dim() <= 4 {
            ctx.report.setting("source", format!("enumerated, dim <= {}", self.dim_max));
            for m in enumerate(&self.ring, self.dim_max, self.seed)? {
                if out.len() == self.count {
                    break;
                }
                if let Some(d) = keep(&m)? {
                    out.push((m, d));
                }
            }
        } else {
            ctx.report.setting("source", format!("random, at most {MAX_GENS} generators"));
            for _ in 0..self.count * DRAWS_PER_INSTANCE {
                if out.len() == self.count {
                    break;
                }
                let m = random_module(&self.ring, Side::Left, MAX_GENS, rng);
                if let Some(d) = keep(&m)? {
                    out.push((m, d));
                }
            }
        }
        ctx.report.setting("instances found", out.len());
        Ok(out)
    }

    fn modules(&self, ctx: &mut Ctx) -> Res<String> {
        if self.bound > MAX_ORACLE_DEGREE {
            return Err(CliError::Input(format!("the oracle handles degrees up to {MAX_ORACLE_DEGREE}")));
        }
        let all = enumerate(&self.ring, self.dim_max, self.seed)?;
        ctx.report.setting("enumerated", all.len());
        let mut tally = Tally::new(
            "modules",
            &["dim", "radical layers", "Ext(M,R)", "ker sigma", "coker sigma", "Ext^1,2(Tr M,R)"],
        );
        for (i, m) in all.iter().take(self.count).enumerate() {
            let b = self.bound;
            let ext = ext_dims(m, b);
            let oracle = ext_oracle_dims(m, b);
            let s = sigma(m);
            let t = ext_dims(&transpose(m), 2);
            let (ker, coker) = (s.kernel_dim(), s.cokernel_dim());
            let mut checks = Vec::new();
            check(&mut checks, ext == oracle, || format!("Ext table {ext:?} but oracle {oracle:?}"));
            check(&mut checks, [ker, coker] == [t[1], t[2]], || format!("sigma ker/coker {ker}/{coker} but Ext^1,2(Tr M) {}/{}", t[1], t[2]));
            check(&mut checks, (t[1] == 0) == s.is_injective(), || "1-torsionfree disagrees with torsionless".into());
            check(&mut checks, (t[1] == 0 && t[2] == 0) == s.is_bijective(), || "2-torsionfree disagrees with reflexive".into());
            let row = vec![
                m.dim().to_string(),
                format!("{:?}", rad_layers(m)),
                format!("{ext:?}"),
                ker.to_string(),
                coker.to_string(),
                format!("{}/{}", t[1], t[2]),
            ];
            tally.record(ctx, i, Ok((row, checks)));
        }
        Ok(tally.finish(ctx, "Ext equals the oracle; sigma matches Ext of the transpose; torsionfree verdicts agree", "oracle"))
    }

    fn thm24(&self, ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Res<String> {
        let pool = self.pool(Side::Left, POOL_LEFT, rng)?;
        let mut tally = Tally::new("gorenstein syzygies", &["n", "dim M", "dim syzygy"]);
        for i in 0..self.count {
            let n = 1 + i % 3;
            let a = random_module(&self.ring, Side::Left, MAX_GENS, rng);
            let outcome = (|| -> Inst {
                let chain = random_gp_resolution(&a, n, &pool, rng)?;
                let fwd = construct_thm24_fwd(&chain, &self.mode)?;
                let bwd = construct_thm24_bwd(&chain, &self.mode)?;
                let mut checks = Vec::new();
                for (name, out) in [("forward", &fwd), ("backward", &bwd)] {
                    rechecked(&mut checks, &format!("{name} projective"), &out.projective);
                    rechecked(&mut checks, &format!("{name} complement"), &out.complement);
                    for c in &out.certs {
                        rechecked_gp(&mut checks, &format!("{name} gp"), c);
                    }
                }
                Ok((vec![n.to_string(), a.dim().to_string(), chain[0].src().dim().to_string()], checks))
            })();
            tally.record(ctx, i, outcome);
        }
        Ok(tally.finish(ctx, "both surgeries rechecked: exactness, projectivity witnesses, GP certificates", "oracle"))
    }

    fn thm31(&self, ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Res<String> {
        let pool = self.pool(Side::Left, POOL_LEFT, rng)?;
        let mut tally = Tally::new("embedding round trip", &["dim A", "dim Gorenstein transpose", "dim transpose", "realization"]);
        let mut isos = 0;
        for i in 0..self.count {
            let a = random_module(&self.ring, Side::Left, MAX_GENS, rng);
            let seed = self.seed ^ i as u64;
            let outcome = (|| -> Inst {
                let pi = random_gp_presentation(&a, &pool, &self.mode, rng)?;
                let emb = thm31_embed(&pi, &self.mode)?;
                let mut checks = Vec::new();
                rechecked(&mut checks, "embedding", &emb.sequence);
                rechecked_gp(&mut checks, "H", &emb.cert);
                let gt = &emb.gorenstein_transpose.module;
                let (dg, dt) = (ext_dims(gt, self.bound), ext_dims(&emb.transpose, self.bound));
                check(&mut checks, dg[1..] == dt[1..], || format!("Ext tables {:?} vs {:?}", &dg[1..], &dt[1..]));
                let back = thm31_realize(&emb.presentation, &emb.sequence.maps()[1], &self.mode, seed)?;
                rechecked(&mut checks, "realization", &back.sequence);
                let bm = &back.gorenstein_transpose.module;
                check(&mut checks, bm.dim() == gt.dim(), || format!("realized dim {} vs {}", bm.dim(), gt.dim()));
                let db = ext_dims(bm, self.bound);
                check(&mut checks, db[1..] == dg[1..], || format!("realized Ext {:?} vs {:?}", &db[1..], &dg[1..]));
                match &back.iso {
                    IsoVerdict::Isomorphic(_) => isos += 1,
                    IsoVerdict::NotIsomorphic(why) => checks.push(format!("realized transpose not isomorphic: {why}")),
                    IsoVerdict::Inconclusive => {}
                }
                let row = vec![a.dim().to_string(), gt.dim().to_string(), emb.transpose.dim().to_string(), back.iso.label().to_string()];
                Ok((row, checks))
            })();
            tally.record(ctx, i, outcome);
        }
        ctx.report.table(Table::kv(
            "isomorphism probe",
            vec![("explicit isomorphisms", isos.to_string()), ("instances", self.count.to_string())],
        ));
        Ok(tally.finish(ctx, "embedding certified, Ext tables equal, realization matches by dimension and invariants", "invariants"))
    }

    fn cor25(&self, ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Res<String> {
        let exact = self.ring.dim() > 4;
        let modules = self.gpd_modules(ctx, 1, exact, rng)?;
        let mut tally = Tally::new("finite projective dimension", &["dim M", "Gpd M", "pd N", "pd B"]);
        for (i, (m, d)) in modules.iter().enumerate() {
            let outcome = (|| -> Inst {
                let c = construct_cor25(m, self.bound, &self.mode)?;
                let mut checks = Vec::new();
                check(&mut checks, c.pd.exact() == Some(*d) && c.gpd == *d, || format!("pd N {} but Gpd M {d}", c.pd));
                rechecked(&mut checks, "complement", &c.sequence);
                rechecked(&mut checks, "resolution", &c.resolution);
                rechecked_gp(&mut checks, "G", &c.cert);
                let p = construct_prop36(m, self.bound, &self.mode, self.seed ^ i as u64)?;
                let pb = pd_bounded(&p.b, self.bound);
                check(&mut checks, pb.exact() == Some(*d), || format!("pd B {pb} but Gpd M {d}"));
                rechecked(&mut checks, "prop36 complement", &p.cor25.sequence);
                rechecked(&mut checks, "prop36 realization", &p.realized.sequence);
                rechecked(&mut checks, "prop36 defining sequence", &p.realized.gorenstein_transpose.sequence);
                rechecked_gp(&mut checks, "prop36 H", &p.realized.cert);
                if let IsoVerdict::NotIsomorphic(why) = &p.realized.iso {
                    checks.push(format!("A is not the realized Gorenstein transpose: {why}"));
                }
                Ok((vec![m.dim().to_string(), d.to_string(), c.pd.to_string(), pb.to_string()], checks))
            })();
            tally.record(ctx, i, outcome);
        }
        Ok(tally.finish(ctx, "pd N = Gpd M and every certificate rechecked", "oracle"))
    }

    fn thm26(&self, ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Res<String> {
        let modules = self.gpd_modules(ctx, 2, false, rng)?;
        let tests: Vec<Arc<Module>> = enumerate(&self.ring, self.dim_max, self.seed)?
            .into_iter()
            .filter(|m| !m.is_zero())
            .map(|m| Ok::<_, CliError>((gp_test(&m, &self.mode)?.passes(), m)))
            .collect::<Res<Vec<_>>>()?
            .into_iter()
            .filter_map(|(gp, m)| gp.then_some(m))
            .collect();
        ctx.report.setting("testset", format!("{} enumerated GP modules, dim <= {}", tests.len(), self.dim_max));
        let mut tally = Tally::new("one GP term", &["dim M", "Gpd M", "slots", "precover"]);
        for (i, (m, d)) in modules.iter().enumerate() {
            let outcome = (|| -> Inst {
                let mut checks = Vec::new();
                let mut precover = String::from("-");
                for t in 0..=*d {
                    let out = construct_thm26(m, t, *d, &self.mode)?;
                    let seq = &out.sequence;
                    let slot = d - t + 1;
                    for j in 1..=d + 1 {
                        let tag = &seq.tags()[j];
                        let ok = if j == slot {
                            matches!(tag, ObjectTag::Gp { .. })
                        } else {
                            matches!(tag, ObjectTag::Free | ObjectTag::Projective(_))
                        };
                        check(&mut checks, ok, || format!("t={t}: term {j} tagged {}", tag.label()));
                    }
                    rechecked(&mut checks, &format!("t={t}"), seq);
                    if t == 0 {
                        let rep = precover_check(&seq.maps()[d + 1], &tests)?;
                        let lifted = rep.entries.iter().filter(|e| e.surjective).count();
                        check(&mut checks, rep.all_surjective(), || format!("precover: {lifted}/{} test modules lift", tests.len()));
                        precover = format!("{lifted}/{}", tests.len());
                    }
                }
                Ok((vec![m.dim().to_string(), d.to_string(), format!("0..={d}"), precover], checks))
            })();
            tally.record(ctx, i, outcome);
        }
        Ok(tally.finish(ctx, "one GP term at each slot, rechecked; the t=0 cover is a GP precover on the testset", "oracle"))
    }

    fn lemma21(&self, ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Res<String> {
        let pool = self.pool(Side::Left, POOL_LEFT, rng)?;
        let mut tally = Tally::new("gpd along GP quotients", &["dim M3", "dim M2", "dim M1"]);
        for i in 0..self.count {
            let g = pool.pick(rng);
            let a = random_module(&self.ring, Side::Left, MAX_GENS, rng);
            let outcome = (|| -> Inst {
                let seq = gp_extension(&a, &g, &pool, &self.mode, rng)?;
                let mut checks = Vec::new();
                rechecked(&mut checks, "sequence", &seq);
                let rep = lemma21_check(&seq, self.bound, &self.mode)?;
                clauses(&mut checks, &rep);
                let dims = (1..=3).map(|j| seq.object(j).dim().to_string()).collect();
                Ok((dims, checks))
            })();
            tally.record(ctx, i, outcome);
        }
        Ok(tally.finish(ctx, "Gpd M3 = Gpd M2 whenever M1 is GP", "dimension"))
    }

    fn prop34(&self, ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Res<String> {
        let pool = self.pool(Side::Left, POOL_LEFT, rng)?;
        let mut tally = Tally::new("Gorenstein transpose vs transpose", &["dim A", "dim Gorenstein transpose", "dim transpose"]);
        for i in 0..self.count {
            let a = random_module(&self.ring, Side::Left, MAX_GENS, rng);
            let outcome = (|| -> Inst {
                let pi = random_gp_presentation(&a, &pool, &self.mode, rng)?;
                let rep = prop34_report(&pi, self.bound, &self.mode, self.seed ^ i as u64)?;
                let mut checks = Vec::new();
                clauses(&mut checks, &rep);
                let gt = gorenstein_transpose(&pi)?.module;
                Ok((vec![a.dim().to_string(), gt.dim().to_string(), transpose(&a).dim().to_string()], checks))
            })();
            tally.record(ctx, i, outcome);
        }
        Ok(tally.finish(ctx, "Ext, torsionfreeness, GP-ness and Gpd agree", "dimension"))
    }

    fn cor35(&self, ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Res<String> {
        let pool = self.pool(Side::Left, POOL_LEFT, rng)?;
        let rpool = self.pool(Side::Right, POOL_RIGHT, rng)?;
        let mut tally = Tally::new("double Gorenstein transpose", &["dim A", "dim Gorenstein transpose"]);
        for i in 0..self.count {
            let a = random_module(&self.ring, Side::Left, MAX_GENS, rng);
            let outcome = (|| -> Inst {
                let pi = random_gp_presentation(&a, &pool, &self.mode, rng)?;
                let gt = gorenstein_transpose(&pi)?.module;
                let pi2 = random_gp_presentation(&gt, &rpool, &self.mode, rng)?;
                let rep = cor35_report(&pi, &pi2, self.bound, &self.mode, self.seed ^ i as u64)?;
                let mut checks = Vec::new();
                clauses(&mut checks, &rep);
                Ok((vec![a.dim().to_string(), gt.dim().to_string()], checks))
            })();
            tally.record(ctx, i, outcome);
        }
        Ok(tally.finish(ctx, "Ext, torsionfreeness and Gpd of the double Gorenstein transpose agree with A", "dimension"))
    }
}

/// `0 -> A -> E -> G -> 0`, the pushout of a GP presentation of `G` along a
/// random map from its kernel into `A`.
fn gp_extension(a: &Arc<Module>, g: &Arc<Module>, pool: &GpPool, mode: &GpMode, rng: &mut ChaCha8Rng) -> gtrans_core::Result<CertifiedSequence> {
    let e = random_gp_presentation(g, pool, mode, rng)?.e;
    let k = kernel(&e);
    let (k_mod, a) = if a.is_zero() { (k.module.clone(), k.module.clone()) } else { (k.module.clone(), a.clone()) };
    let h = gtrans_core::gorenstein::random_hom(&k_mod, &a, rng)?;
    let po = pushout(&k.inclusion, &h)?;
    // E -> G induced by (e, 0) on X_0 + A
    let zero = ModuleMap::zero(&a, g);
    let onto = e.matrix().hstack(zero.matrix()).mul(&po.section);
    let onto = ModuleMap::new(&po.module, g, onto)?;
    CertifiedSequence::bounded(&[po.from_c.clone(), onto])
}
