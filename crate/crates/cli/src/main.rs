mod gen;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pda_core::compat::{
    check_condition_cstar, is_blackburn_compatible, is_family_compatible, is_generalized_family, is_left_compatible,
    is_right_compatible, CompatReport, GenFamily,
};
use pda_core::format::{parse_any, serialize_grid, to_json};
use pda_core::lifting::{
    basic_lift, lift_family, lift_family_params, lifted_params, nonuniform_lift, uniform_lift, FamilyParams,
    LedgerEntry, Orientation, ParamTuple,
};
use pda_core::sim::{run, Demands};
use pda_core::table::{fig2_csv, table1_csv};
use pda_core::{params, validate, Error, Pda, PdaParams};

#[derive(Parser)]
#[command(name = "pda", version, about = "Placement delivery arrays: generate, check, lift, simulate")]
struct Cli {
    /// Encoding for arrays written by gen and lift.
    #[arg(long, global = true, value_enum, default_value_t = Format::Grid)]
    format: Format,
    /// Write output here instead of stdout. Commands emitting several
    /// arrays use it as a file name prefix.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random demands and file contents.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Grid,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompatMode {
    Full,
    Right,
    Left,
    Family,
    Cstar,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftMode {
    Uniform,
    Basic,
    Family,
    Nonuniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Main,
    Anti,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Table1,
    Fig2,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction.
    #[command(after_help = gen_help())]
    Gen {
        name: String,
        args: Vec<String>,
        /// First label to use.
        #[arg(long, default_value_t = 0)]
        offset: u32,
    },
    /// Check the PDA conditions and print the parameters.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Check Blackburn-compatibility of arrays w.r.t. reference arrays.
    Compat {
        #[arg(long, value_enum)]
        mode: CompatMode,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Reference array; family mode takes one per ordered pair (i,j),
        /// i != j, in row-major order, or a single shared one.
        #[arg(long = "ref", required = true)]
        refs: Vec<PathBuf>,
    },
    /// Lift a base PDA and write the result plus a label ledger.
    Lift {
        #[arg(value_enum)]
        mode: LiftMode,
        /// Base array (uniform, basic).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Member arrays, in order.
        #[arg(long = "member")]
        members: Vec<PathBuf>,
        /// Reference array(s); nonuniform takes one per ordered pair.
        #[arg(long = "ref")]
        refs: Vec<PathBuf>,
        /// Members of the lifting family (family mode).
        #[arg(long = "q-member")]
        q_members: Vec<PathBuf>,
        /// Reference of the lifting family (family mode).
        #[arg(long = "q-ref")]
        q_ref: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OrientationArg::Main)]
        orientation: OrientationArg,
        /// Ledger path; defaults to `<out>.ledger.json` when --out is given.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Parameter arithmetic on tuples `K,f,Zm,Zr,gb,gL`.
    Params {
        /// Base PDA as `K,f,Z,S,g`.
        #[arg(long, conflicts_with = "chain")]
        base: Option<String>,
        /// Lifting family tuple.
        #[arg(long, requires = "base")]
        family: Option<String>,
        #[arg(long, requires = "base")]
        member_labels: Option<u64>,
        #[arg(long, requires = "base")]
        ref_labels: Option<u64>,
        /// Two families `K,f,Zm,Zr,gb,gL:g`, the first lifted by the second.
        #[arg(long, num_args = 2)]
        chain: Option<Vec<String>>,
    },
    /// Emit a comparison table as CSV.
    Table {
        #[arg(value_enum)]
        which: Table,
    },
    /// Run one placement and delivery round and print the report as JSON.
    Sim {
        #[arg(long)]
        pda: PathBuf,
        #[arg(long)]
        files: usize,
        #[arg(long)]
        size: usize,
        /// Comma-separated demanded file per user; random from --seed otherwise.
        #[arg(long, value_delimiter = ',')]
        demands: Option<Vec<usize>>,
    },
}

fn gen_help() -> String {
    let mut s = String::from("Constructions:\n");
    for (name, args) in gen::NAMES {
        s.push_str(&format!("  {name} {args}\n"));
    }
    s
}

/// A check that ran and failed (exit 1) or input that could not be used
/// (exit 2).
enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPda(_)
            | Error::StarPositionMismatch(..)
            | Error::CstarViolation(_)
            | Error::CompatibilityFailure { .. }
            | Error::ZMismatch { .. }
            | Error::LiftValidation { .. }
            | Error::TooFewMembers { .. }
            | Error::InconsistentTuple(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn read_pda(path: &Path) -> std::result::Result<Pda, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_any(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_all(paths: &[PathBuf]) -> std::result::Result<Vec<Pda>, Failure> {
    paths.iter().map(|p| read_pda(p)).collect()
}

fn write_text(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn encode(p: &Pda, format: Format) -> String {
    match format {
        Format::Grid => serialize_grid(p),
        Format::Json => to_json(p) + "\n",
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Grid => "grid",
        Format::Json => "json",
    }
}

/// Writes one array to `--out` or stdout, or several as `<out>.<tag>.<ext>`
/// (stdout: each preceded by a `<tag>:` line).
fn emit(cli: &Cli, arrays: &[(String, Pda)]) -> CmdResult {
    if let [(_, p)] = arrays {
        return write_text(cli.out.as_deref(), &encode(p, cli.format));
    }
    for (tag, p) in arrays {
        match &cli.out {
            Some(prefix) => {
                let path = PathBuf::from(format!("{}.{tag}.{}", prefix.display(), extension(cli.format)));
                write_text(Some(&path), &encode(p, cli.format))?;
            }
            None => print!("{tag}:\n{}\n", encode(p, cli.format)),
        }
    }
    Ok(())
}

fn cmd_verify(files: &[PathBuf]) -> CmdResult {
    let mut bad = 0;
    for path in files {
        let p = read_pda(path)?;
        let prefix = if files.len() > 1 { format!("{}: ", path.display()) } else { String::new() };
        let report = validate(&p);
        if report.is_valid() {
            println!("{prefix}valid {}", params(&p)?);
        } else {
            bad += 1;
            println!("{prefix}invalid");
            for v in &report.violations {
                println!("{prefix}{v}");
            }
        }
    }
    if bad > 0 {
        return Err(Failure::Check(format!("{bad} of {} arrays are not PDAs", files.len())));
    }
    Ok(())
}

fn print_report(report: &CompatReport) -> CmdResult {
    if report.ok {
        println!("compatible");
        return Ok(());
    }
    for w in &report.witnesses {
        println!("{w}");
    }
    Err(Failure::Check(format!("{} witnesses", report.witnesses.len())))
}

fn pairs(g: usize) -> Vec<(usize, usize)> {
    (0..g)
        .flat_map(|i| (0..g).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

fn pair_refs(g: usize, refs: Vec<Pda>) -> std::result::Result<BTreeMap<(usize, usize), Pda>, Failure> {
    let keys = pairs(g);
    if refs.len() != keys.len() {
        return Err(Failure::Usage(format!(
            "{g} members need {} references (one per ordered pair), got {}",
            keys.len(),
            refs.len()
        )));
    }
    Ok(keys.into_iter().zip(refs).collect())
}

fn cmd_compat(mode: CompatMode, files: &[PathBuf], refs: &[PathBuf]) -> CmdResult {
    let arrays = read_all(files)?;
    let mut refs = read_all(refs)?;
    let exactly = |what: &str, n: usize, m: usize| {
        if arrays.len() != n || refs.len() != m {
            return Err(Failure::Usage(format!("{what} takes {n} arrays and {m} reference")));
        }
        Ok(())
    };
    let report = match mode {
        CompatMode::Full | CompatMode::Right | CompatMode::Left => {
            exactly("this mode", 2, 1)?;
            let check = match mode {
                CompatMode::Full => is_blackburn_compatible,
                CompatMode::Right => is_right_compatible,
                _ => is_left_compatible,
            };
            check(&arrays[0], &arrays[1], &refs[0])?
        }
        CompatMode::Cstar => {
            if refs.len() != 1 {
                return Err(Failure::Usage("cstar takes one reference".into()));
            }
            let members: Vec<&Pda> = arrays.iter().collect();
            check_condition_cstar(&members, &refs[0])?
        }
        CompatMode::Family if refs.len() == 1 => {
            let members: Vec<&Pda> = arrays.iter().collect();
            is_family_compatible(&members, &refs[0])?
        }
        CompatMode::Family => {
            let map = pair_refs(arrays.len(), std::mem::take(&mut refs))?;
            is_generalized_family(&GenFamily::new(arrays, map)?)
        }
    };
    print_report(&report)
}

fn write_ledger(cli: &Cli, explicit: Option<&Path>, ledger: &[LedgerEntry]) -> CmdResult {
    let path = match (explicit, &cli.out) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(out)) => PathBuf::from(format!("{}.ledger.json", out.display())),
        (None, None) => return Ok(()),
    };
    let text = serde_json::to_string_pretty(ledger).expect("plain data serializes") + "\n";
    write_text(Some(&path), &text)
}

struct LiftArgs<'a> {
    mode: LiftMode,
    base: Option<&'a Path>,
    members: &'a [PathBuf],
    refs: &'a [PathBuf],
    q_members: &'a [PathBuf],
    q_ref: Option<&'a Path>,
    orientation: OrientationArg,
    ledger: Option<&'a Path>,
}

fn one_ref(refs: Vec<Pda>) -> std::result::Result<Pda, Failure> {
    let n = refs.len();
    refs.into_iter()
        .next()
        .filter(|_| n == 1)
        .ok_or_else(|| Failure::Usage(format!("expected one --ref, got {n}")))
}

fn cmd_lift(cli: &Cli, a: LiftArgs) -> CmdResult {
    let members = read_all(a.members)?;
    let refs = read_all(a.refs)?;
    let member_refs: Vec<&Pda> = members.iter().collect();
    let base = || match a.base {
        Some(p) => read_pda(p),
        None => Err(Failure::Usage("--base is required for this mode".into())),
    };
    match a.mode {
        LiftMode::Uniform | LiftMode::Basic => {
            let base = base()?;
            let out = if let LiftMode::Basic = a.mode {
                let [p] = &member_refs[..] else {
                    return Err(Failure::Usage("basic takes exactly one --member".into()));
                };
                basic_lift(&base, p)?
            } else {
                uniform_lift(&base, &member_refs, &one_ref(refs)?)?
            };
            emit(cli, &[("result".into(), out.result)])?;
            write_ledger(cli, a.ledger, &out.label_ledger)
        }
        LiftMode::Family => {
            let q_members = read_all(a.q_members)?;
            let q_refs: Vec<&Pda> = q_members.iter().collect();
            let qstar = match a.q_ref {
                Some(p) => read_pda(p)?,
                None => return Err(Failure::Usage("family takes --q-ref".into())),
            };
            let out = lift_family(&member_refs, &one_ref(refs)?, &q_refs, &qstar)?;
            let mut arrays: Vec<(String, Pda)> =
                out.members.into_iter().enumerate().map(|(i, p)| (format!("r{i}"), p)).collect();
            arrays.push(("rstar".into(), out.pstar));
            emit(cli, &arrays)?;
            write_ledger(cli, a.ledger, &out.label_ledger)
        }
        LiftMode::Nonuniform => {
            let map = pair_refs(members.len(), refs)?;
            let orientation = match a.orientation {
                OrientationArg::Main => Orientation::Main,
                OrientationArg::Anti => Orientation::Anti,
            };
            let p = nonuniform_lift(&members, &map, orientation)?;
            emit(cli, &[("result".into(), p)])
        }
    }
}

fn numbers(s: &str, n: usize, what: &str) -> std::result::Result<Vec<u64>, Failure> {
    let v: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("{what}: expected {n} comma-separated integers, got {s:?}")))?;
    if v.len() != n {
        return Err(Failure::Usage(format!("{what}: expected {n} values, got {}", v.len())));
    }
    Ok(v)
}

fn family_params(s: &str) -> std::result::Result<FamilyParams, Failure> {
    let (tuple, g) = s
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("family {s:?}: expected K,f,Zm,Zr,gb,gL:g")))?;
    let member_regularity = numbers(g, 1, "member regularity")?[0];
    Ok(FamilyParams {
        tuple: tuple.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?,
        member_regularity,
    })
}

fn cmd_params(
    base: Option<&str>,
    family: Option<&str>,
    member_labels: Option<u64>,
    ref_labels: Option<u64>,
    chain: Option<&[String]>,
) -> CmdResult {
    if let Some([p, q]) = chain {
        let step = lift_family_params(&family_params(p)?, &family_params(q)?)?;
        println!(
            "{} member_labels={} ref_labels={}",
            step.result, step.member_labels, step.ref_labels
        );
        return Ok(());
    }
    let (Some(base), Some(family), Some(ml), Some(rl)) = (base, family, member_labels, ref_labels) else {
        return Err(Failure::Usage(
            "give --base, --family, --member-labels and --ref-labels, or --chain P Q".into(),
        ));
    };
    let b = numbers(base, 5, "base")?;
    let base = PdaParams::from_counts(b[0], b[1], b[2], b[3], Some(b[4]))?;
    let fam: ParamTuple = family.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    println!("{}", lifted_params(&base, &fam, ml, rl)?);
    Ok(())
}

fn cmd_sim(cli: &Cli, pda: &Path, files: usize, size: usize, demands: Option<&[usize]>) -> CmdResult {
    let p = read_pda(pda)?;
    let demands = match demands {
        Some(d) => Demands::Given(d.to_vec()),
        None => Demands::Seeded(cli.seed),
    };
    let report = run(&p, files, size, &demands, cli.seed)?;
    let text = serde_json::to_string_pretty(&report).expect("plain data serializes") + "\n";
    write_text(cli.out.as_deref(), &text)?;
    if report.all_decoded() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} of {} users failed to decode",
            report.decode_ok.iter().filter(|ok| !**ok).count(),
            report.decode_ok.len()
        )))
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Gen { name, args, offset } => {
            let arrays = gen::generate(name, args, *offset)?;
            let tagged: Vec<(String, Pda)> = arrays.into_iter().map(|(t, p)| (t.to_string(), p)).collect();
            emit(cli, &tagged)
        }
        Command::Verify { files } => cmd_verify(files),
        Command::Compat { mode, files, refs } => cmd_compat(*mode, files, refs),
        Command::Lift {
            mode,
            base,
            members,
            refs,
            q_members,
            q_ref,
            orientation,
            ledger,
        } => cmd_lift(
            cli,
            LiftArgs {
                mode: *mode,
                base: base.as_deref(),
                members,
                refs,
                q_members,
                q_ref: q_ref.as_deref(),
                orientation: *orientation,
                ledger: ledger.as_deref(),
            },
        ),
        Command::Params {
            base,
            family,
            member_labels,
            ref_labels,
            chain,
        } => cmd_params(
            base.as_deref(),
            family.as_deref(),
            *member_labels,
            *ref_labels,
            chain.as_deref(),
        ),
        Command::Table { which } => {
            let csv = match which {
                Table::Table1 => table1_csv()?,
                Table::Fig2 => fig2_csv()?,
            };
            write_text(cli.out.as_deref(), &csv)
        }
        Command::Sim {
            pda,
            files,
            size,
            demands,
        } => cmd_sim(cli, pda, *files, *size, demands.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("pda: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("pda: {msg}");
            ExitCode::from(2)
        }
    }
}
