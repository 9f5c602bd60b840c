//! Command-line front end: every subcommand produces a [`report::Report`],
//! printed as text or JSON.
//!
//! Exit codes: 0 success, 2 usage error, 3 invalid input or unsupported
//! request, 4 a FAILURE report (a mathematical check did not hold).

pub mod args;
pub mod report;

mod commands;
mod sweeps;

use clap::Parser;

use args::{Cli, Command};
use commands::Ctx;
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    /// Bad input or an unsupported request.
    Input(String),
    /// A check that should hold did not.
    Failure(String),
}

impl From<gtrans_core::Error> for CliError {
    fn from(e: gtrans_core::Error) -> Self {
        match e {
            gtrans_core::Error::Failure(msg) => CliError::Failure(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Everything a run produced.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub report: Option<Report>,
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code, report: None }
            } else {
                Outcome { stdout: String::new(), stderr: text, code, report: None }
            };
        }
    };
    let mut ctx = Ctx { cli: &cli, report: Report::new(&argv[1.min(argv.len())..]) };
    ctx.report.setting("seed", cli.seed);
    ctx.report.setting("mode", format!("{:?}", cli.mode).to_lowercase());
    let result = dispatch(&mut ctx);
    let mut report = ctx.report;
    match result {
        Ok(verdict) => report.verdict = verdict,
        Err(CliError::Failure(msg)) => report.fail(msg),
        Err(CliError::Input(msg)) => {
            return Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_INPUT, report: None };
        }
    }
    if report.has_failures() {
        report.verdict = "FAILURE".into();
    }
    let mut stderr = String::new();
    if let Some(dir) = &cli.cert_dir {
        if let Err(e) = write_certificates(dir, &report) {
            return Outcome { stdout: String::new(), stderr: format!("error: {}: {e}\n", dir.display()), code: EXIT_INPUT, report: None };
        }
        stderr.push_str(&format!("{} certificate(s) written to {}\n", report.certificates.len(), dir.display()));
    }
    let stdout = if cli.json { report.to_json() } else { report.to_text() };
    let code = if report.has_failures() { EXIT_FAILURE } else { EXIT_OK };
    Outcome { stdout, stderr, code, report: Some(report) }
}

fn write_certificates(dir: &std::path::Path, report: &Report) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (i, c) in report.certificates.iter().enumerate() {
        let slug: String = c.name.chars().map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' }).collect();
        std::fs::write(dir.join(format!("{i:02}_{slug}.cert")), &c.text)?;
    }
    Ok(())
}

fn dispatch(ctx: &mut Ctx) -> commands::Res<String> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Ring { action } => commands::ring(ctx, action),
        Command::Mod { action } => commands::module_info(ctx, action),
        Command::Resolve { input, length, minimal } => commands::resolve(ctx, input, *length, *minimal),
        Command::Syzygy { input, n } => commands::syzygy_cmd(ctx, input, *n),
        Command::Ext { input, i } => commands::ext_cmd(ctx, input, *i),
        Command::Transpose { input } => commands::transpose_cmd(ctx, input),
        Command::Gtranspose { ring, pres } => commands::gtranspose(ctx, ring, pres),
        Command::Gp { input } => commands::gp(ctx, input),
        Command::Torsionfree { input, n } => commands::torsionfree(ctx, input, *n),
        Command::Star { input } => commands::star(ctx, input),
        Command::Construct { which } => commands::construct(ctx, which),
        Command::Check { which } => commands::check(ctx, which),
        Command::Verify { file } => commands::verify(ctx, file),
        Command::Sweep { algebra, dim_max, count, theorem } => sweeps::sweep(ctx, algebra, *dim_max, *count, *theorem),
    }
}
