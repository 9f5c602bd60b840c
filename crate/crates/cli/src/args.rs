use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_BOUND: usize = 6;
pub const DEFAULT_COUNT: usize = 200;

#[derive(Parser, Debug)]
#[command(name = "gtrans", version, about = "Transposes, Gorenstein transposes, syzygies and Ext over finite-dimensional algebras")]
pub struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Resolution and Ext bound.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
    /// How Gorenstein projectivity is decided.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Directory to write certificates into, one file per certificate.
    #[arg(long, global = true)]
    pub cert_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Ring mode when the declared injective dimension verifies, else bounded.
    Auto,
    /// Complete test on an Iwanaga-Gorenstein ring; an error otherwise.
    Ring,
    /// Ext vanishing up to --bound.
    Bounded,
}

#[derive(Args, Debug, Clone)]
pub struct ModInput {
    /// Ring-spec file or built-in algebra name.
    #[arg(long)]
    pub ring: String,
    /// Module-spec file.
    #[arg(long = "mod")]
    pub module: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ring validation and invariants.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Module invariants.
    Mod {
        #[command(subcommand)]
        action: ModAction,
    },
    /// Free resolution.
    Resolve {
        #[command(flatten)]
        input: ModInput,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        minimal: bool,
    },
    /// n-th syzygy.
    Syzygy {
        #[command(flatten)]
        input: ModInput,
        #[arg(short = 'n')]
        n: usize,
    },
    /// dim Ext^i(M, R).
    Ext {
        #[command(flatten)]
        input: ModInput,
        #[arg(short = 'i')]
        i: usize,
    },
    /// Auslander-Bridger transpose.
    Transpose {
        #[command(flatten)]
        input: ModInput,
    },
    /// Gorenstein transpose of a Gorenstein projective presentation.
    Gtranspose {
        #[arg(long)]
        ring: String,
        /// Bundle with maps `g: X1 -> X0` and `e: X0 -> A`.
        #[arg(long)]
        pres: PathBuf,
    },
    /// Gorenstein projectivity test.
    Gp {
        #[command(flatten)]
        input: ModInput,
    },
    /// n-torsionfreeness.
    Torsionfree {
        #[command(flatten)]
        input: ModInput,
        #[arg(short = 'n')]
        n: usize,
    },
    /// The four-term sequence around the evaluation map.
    Star {
        #[command(flatten)]
        input: ModInput,
    },
    /// Certified constructions.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Consistency checks.
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
    /// Re-check a certificate file or every certificate in a JSON report.
    Verify { file: PathBuf },
    /// Seeded sweeps over enumerated or random instances.
    Sweep {
        /// Built-in algebra name.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        dim_max: usize,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        #[arg(long, value_enum, default_value_t = SweepKind::Modules)]
        theorem: SweepKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum RingAction {
    Check { ring: String },
    Info { ring: String },
}

#[derive(Subcommand, Debug)]
pub enum ModAction {
    Info {
        #[command(flatten)]
        input: ModInput,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SeqInput {
    #[arg(long)]
    pub ring: String,
    /// Bundle whose maps, in file order, form the chain.
    #[arg(long)]
    pub seq: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct PresInput {
    #[arg(long)]
    pub ring: String,
    /// Bundle with maps `g: X1 -> X0` and `e: X0 -> A`.
    #[arg(long)]
    pub pres: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    Prop22(SeqInput),
    Thm24fwd(SeqInput),
    Thm24bwd(SeqInput),
    Cor25(ModInput),
    Thm26 {
        #[command(flatten)]
        input: ModInput,
        #[arg(long)]
        slot: usize,
        /// Resolution length; defaults to the Gorenstein projective dimension.
        #[arg(short = 'n')]
        n: Option<usize>,
    },
    Thm31embed(PresInput),
    /// Embeds, then realizes the embedding back as a presentation.
    Thm31realize(PresInput),
    Cor32 {
        #[command(flatten)]
        input: ModInput,
        /// Gorenstein projective module-spec file.
        #[arg(long)]
        gp_mod: PathBuf,
    },
    Prop36(ModInput),
}

#[derive(Subcommand, Debug)]
pub enum CheckKind {
    Lemma21(SeqInput),
    Prop34(PresInput),
    Cor35 {
        #[command(flatten)]
        input: PresInput,
        /// Presentation of the Gorenstein transpose.
        #[arg(long)]
        pres2: PathBuf,
    },
    Precover {
        #[command(flatten)]
        input: SeqInput,
        /// Directory of Gorenstein projective module-spec files.
        #[arg(long)]
        testset: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// Ext against the oracle, the (*) identity and torsionfree consistency.
    Modules,
    Thm24,
    Thm31,
    Cor25,
    Thm26,
    Lemma21,
    Prop34,
    Cor35,
}
