//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on runtime errors.

use crate::dealer::{Dealer, SchemeKind};
use crate::error::{Error, Result};
use crate::evolving::{share_digest, ShareGroupLayout};
use crate::image::BinaryImage;
use crate::manifest::{dealer_load, dealer_save};
use crate::pbm::{load_pbm, save_pbm, PbmVariant};
use crate::recovery::{empirical_contrast, select_by_partition, stack_or, stack_xor};
use crate::theory::curve::{compare_curves, find_convergence_n, ContrastCurve};
use crate::theory::partition::Partition;
use crate::theory::tables::{render_csv, render_text, table_rows, Family, Table};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Seed used whenever `--seed` is omitted.
pub const DEFAULT_SEED: u64 = 42;

/// File name of share `t` inside an output directory.
pub fn share_file_name(t: u64) -> String {
    format!("share_{t:04}.pbm")
}

/// File name of the dealer manifest inside an output directory.
pub const STATE_FILE: &str = "dealer.json";

#[derive(Parser, Debug)]
#[command(name = "evcs", version, about = "Evolving visual secret sharing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a secret PBM into the first n shares and save the dealer state.
    Share(ShareArgs),
    /// Issue more shares from a saved dealer state.
    Extend(ExtendArgs),
    /// Stack share images with OR or XOR.
    Recover(RecoverArgs),
    /// Measure the contrast of a recovered image against the secret.
    Contrast(ContrastArgs),
    /// Print theoretical contrast tables.
    Theory(TheoryArgs),
    /// Rank two contrast curves.
    Compare(CompareArgs),
    /// Smallest n at which a contrast curve is within epsilon of its limit.
    Convergence(ConvergenceArgs),
}

#[derive(Args, Debug)]
struct ShareArgs {
    /// kgrouped, better2 or better3.
    #[arg(long)]
    scheme: SchemeKind,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Secret image (PBM).
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct ExtendArgs {
    /// Dealer manifest written by `share`.
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Or,
    Xor,
}

#[derive(Args, Debug)]
struct RecoverArgs {
    #[arg(long, value_enum, default_value_t = Mode::Or)]
    mode: Mode,
    #[arg(long)]
    out: PathBuf,
    /// Share images to combine.
    #[arg(required = true)]
    shares: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct ContrastArgs {
    /// Secret image (PBM).
    #[arg(long)]
    secret: PathBuf,
    /// Already recovered image.
    #[arg(long, conflicts_with_all = ["shares", "state"])]
    recovered: Option<PathBuf>,
    /// Share images to stack before measuring.
    #[arg(long, num_args = 1.., conflicts_with = "state")]
    shares: Vec<PathBuf>,
    /// Dealer manifest; shares are picked from its directory by `--partition`.
    #[arg(long, requires = "partition")]
    state: Option<PathBuf>,
    /// Group occupancy of the stack, e.g. `2,1,1`.
    #[arg(long, requires = "state")]
    partition: Option<Partition>,
    #[arg(long, value_enum, default_value_t = Mode::Or)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Or,
    Xor,
    Better,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Or => Family::Or,
            FamilyArg::Xor => Family::Xor,
            FamilyArg::Better => Family::Better,
        }
    }
}

#[derive(Args, Debug)]
struct TheoryArgs {
    /// I, II, III, IV or VI.
    #[arg(long)]
    table: Table,
    #[arg(long)]
    kmax: Option<usize>,
    /// Scheme family for the per-partition and convergence tables.
    #[arg(long, value_enum)]
    mode: Option<FamilyArg>,
    /// Emit CSV instead of an aligned table.
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CurveArg {
    RgvcsOr,
    RgvcsXor,
    Better,
}

impl CurveArg {
    fn build(self, k: usize) -> Result<ContrastCurve> {
        match self {
            CurveArg::RgvcsOr => ContrastCurve::rgvcs_or(k),
            CurveArg::RgvcsXor => ContrastCurve::rgvcs_xor(k),
            CurveArg::Better => ContrastCurve::better(k),
        }
    }
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, value_enum)]
    a: CurveArg,
    #[arg(long, value_enum)]
    b: CurveArg,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    t_max: usize,
}

#[derive(Args, Debug)]
struct ConvergenceArgs {
    #[arg(long, value_enum)]
    curve: CurveArg,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.005)]
    epsilon: f64,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match dispatch(cli.command, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parameter(_) | Error::InfeasiblePartition { .. } => 2,
        _ => 1,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Share(a) => share(a, out),
        Command::Extend(a) => extend(a, out),
        Command::Recover(a) => recover(a),
        Command::Contrast(a) => contrast(a, out),
        Command::Theory(a) => theory(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Convergence(a) => convergence(a, out),
    }
}

fn read_pbm(path: &Path) -> Result<BinaryImage> {
    let bytes = fs::read(path).map_err(|e| with_path(e, path))?;
    load_pbm(&bytes)
}

fn with_path(e: std::io::Error, path: &Path) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| with_path(e, path))
}

fn share(a: ShareArgs, out: &mut dyn Write) -> Result<()> {
    let secret = read_pbm(&a.input)?;
    let (dealer, shadows) = Dealer::init(a.scheme, &secret, a.k, a.n, a.seed)?;
    fs::create_dir_all(&a.out_dir).map_err(|e| with_path(e, &a.out_dir))?;
    for (i, img) in shadows.iter().enumerate() {
        write_file(&a.out_dir.join(share_file_name(i as u64 + 1)), &save_pbm(img, PbmVariant::P4))?;
    }
    write_file(&a.out_dir.join(STATE_FILE), &dealer_save(&dealer))?;
    writeln!(out, "scheme={}", dealer.kind())?;
    writeln!(out, "shares={}", shadows.len())?;
    writeln!(out, "state={}", a.out_dir.join(STATE_FILE).display())?;
    Ok(())
}

fn state_dir(state: &Path) -> PathBuf {
    state.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Refuses to continue when a share file on disk no longer matches the
/// digest recorded when it was issued. Missing files are not an error.
fn check_issued_files(dealer: &Dealer, dir: &Path) -> Result<()> {
    for (i, &digest) in dealer.issued_digests().iter().enumerate() {
        let path = dir.join(share_file_name(i as u64 + 1));
        if !path.exists() {
            continue;
        }
        let found = share_digest(&read_pbm(&path)?);
        if found != digest {
            return Err(Error::State(format!(
                "{} does not match the issued share (digest {found:08x}, recorded {digest:08x})",
                path.display()
            )));
        }
    }
    Ok(())
}

fn extend(a: ExtendArgs, out: &mut dyn Write) -> Result<()> {
    let bytes = fs::read(&a.state).map_err(|e| with_path(e, &a.state))?;
    let mut dealer = dealer_load(&bytes)?;
    let dir = state_dir(&a.state);
    check_issued_files(&dealer, &dir)?;
    let first = dealer.next_t();
    for _ in 0..a.count {
        let t = dealer.next_t();
        let img = dealer.extend()?;
        write_file(&dir.join(share_file_name(t)), &save_pbm(&img, PbmVariant::P4))?;
    }
    write_file(&a.state, &dealer_save(&dealer))?;
    writeln!(out, "issued={}..{}", first, dealer.next_t() - 1)?;
    writeln!(out, "next_t={}", dealer.next_t())?;
    Ok(())
}

fn combine(mode: Mode, images: &[BinaryImage]) -> Result<BinaryImage> {
    match mode {
        Mode::Or => stack_or(images),
        Mode::Xor => stack_xor(images),
    }
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<BinaryImage>> {
    paths.iter().map(|p| read_pbm(p)).collect()
}

fn recover(a: RecoverArgs) -> Result<()> {
    let images = load_all(&a.shares)?;
    let img = combine(a.mode, &images)?;
    write_file(&a.out, &save_pbm(&img, PbmVariant::P4))
}

fn contrast(a: ContrastArgs, out: &mut dyn Write) -> Result<()> {
    let secret = read_pbm(&a.secret)?;
    let recovered = if let Some(path) = &a.recovered {
        read_pbm(path)?
    } else if !a.shares.is_empty() {
        combine(a.mode, &load_all(&a.shares)?)?
    } else if let (Some(state), Some(mu)) = (&a.state, &a.partition) {
        let bytes = fs::read(state).map_err(|e| with_path(e, state))?;
        let dealer = dealer_load(&bytes)?;
        let issued = dealer.next_t() as usize - 1;
        let layout = ShareGroupLayout::new(dealer.group_size(), issued)?;
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let sel = select_by_partition(&layout, mu, &mut rng)?;
        let dir = state_dir(state);
        let paths: Vec<PathBuf> = sel.indices.iter().map(|&i| dir.join(share_file_name(i as u64))).collect();
        let list: Vec<String> = sel.indices.iter().map(usize::to_string).collect();
        writeln!(out, "partition={}", sel.partition)?;
        writeln!(out, "shares={}", list.join(","))?;
        combine(a.mode, &load_all(&paths)?)?
    } else {
        return Err(crate::error::param(
            "give --recovered, --shares, or --state with --partition",
        ));
    };
    let report = empirical_contrast(&recovered, &secret)?;
    write!(out, "{report}")?;
    Ok(())
}

fn theory(a: TheoryArgs, out: &mut dyn Write) -> Result<()> {
    let kmax = a.kmax.unwrap_or(a.table.default_kmax());
    let family = a.mode.map(Family::from);
    let rows = table_rows(a.table, kmax, family)?;
    if a.csv {
        out.write_all(render_csv(&rows).as_bytes())?;
    } else {
        out.write_all(render_text(a.table, family, &rows).as_bytes())?;
    }
    Ok(())
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> Result<()> {
    let ca = a.a.build(a.k)?;
    let cb = a.b.build(a.k)?;
    let cmp = compare_curves(&ca, &cb, a.t_max)?;
    writeln!(out, "a={}", ca.name())?;
    writeln!(out, "b={}", cb.name())?;
    writeln!(out, "limit_a={:.6}", ca.limit().to_f64())?;
    writeln!(out, "limit_b={:.6}", cb.limit().to_f64())?;
    writeln!(out, "checked={}..{}", cmp.checked.0, cmp.checked.1)?;
    writeln!(out, "dominates={}", cmp.dominates)?;
    writeln!(out, "witnesses={}", cmp.witnesses.len())?;
    match cmp.counterexample {
        Some(t) => writeln!(out, "counterexample={t}")?,
        None => writeln!(out, "counterexample=none")?,
    }
    writeln!(out, "classification={}", cmp.classification)?;
    Ok(())
}

fn convergence(a: ConvergenceArgs, out: &mut dyn Write) -> Result<()> {
    let curve = a.curve.build(a.k)?;
    let n = find_convergence_n(&curve, a.epsilon)?;
    writeln!(out, "curve={}", curve.name())?;
    writeln!(out, "epsilon={}", a.epsilon)?;
    writeln!(out, "n={n}")?;
    writeln!(out, "alpha_n={:.6}", curve.at(n)?.to_f64())?;
    writeln!(out, "limit={:.6}", curve.limit().to_f64())?;
    Ok(())
}
