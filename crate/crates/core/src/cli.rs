//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 parse error, 3 rule or
//! insufficient-data error, 4 internal invariant violation, 5 missing
//! database entry.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::{count_classes, enumerate_classes, MeridianSide, Sign, SolidTorusSpec, MAX_ENUMERATED_EDGES};
use crate::error::{Error, Result};
use crate::farey::minimal_cw_path;
use crate::knot::{
    bennequin_feasible, cable_width, nonthickenable_slopes, vot_possible, width_oracle, KnotDatabase, KnotRecord,
    WidthCertificate,
};
use crate::slope::Slope;
use crate::splitting::{exceptional_slopes, large_cable_obstruction, split_ledger, MixedTorusSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RULE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;
pub const EXIT_NOT_FOUND: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::InvalidInput(_) | Error::NoRule(_) => EXIT_RULE,
        Error::Invariant(_) => EXIT_INVARIANT,
        Error::NotFound(_) => EXIT_NOT_FOUND,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "solidtori",
    version,
    about = "Farey-graph slope calculus and knot width rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal clockwise paths and their continued fraction blocks.
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Tight structures on solid tori up to isotopy.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Mixed tori and their splittings.
    #[command(subcommand)]
    Split(SplitCmd),
    /// Knot width and related rules.
    #[command(subcommand)]
    Knot(KnotCmd),
}

#[derive(Args, Debug)]
struct Output {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug)]
struct PathArgs {
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    /// Largest accepted slope height.
    #[arg(long, default_value_t = 1_000_000)]
    max_den: i64,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand, Debug)]
enum FareyCmd {
    /// Minimal clockwise path between two slopes.
    Path(PathArgs),
    /// Continued fraction blocks of the minimal path.
    Blocks(PathArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Lower,
    Upper,
}

#[derive(Args, Debug)]
struct SolidTorusArgs {
    #[arg(long, allow_hyphen_values = true)]
    meridian: String,
    /// Dividing slope on the boundary.
    #[arg(long, allow_hyphen_values = true)]
    slope: String,
    #[arg(long, value_enum, default_value_t = Side::Lower)]
    side: Side,
    /// Signed edges allowed before refusing to enumerate.
    #[arg(long, default_value_t = 16)]
    max_n: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand, Debug)]
enum ClassifyCmd {
    /// Number of tight structures with two dividing curves.
    Count(SolidTorusArgs),
    /// One representative decoration per class.
    Enum(SolidTorusArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Subcommand, Debug)]
enum SplitCmd {
    /// Exceptional slopes of a mixed torus, with the homology of each
    /// splitting of a knot complement in S³.
    Exceptional {
        #[arg(long, allow_hyphen_values = true)]
        back: String,
        #[arg(long, allow_hyphen_values = true)]
        mid: String,
        #[arg(long, allow_hyphen_values = true)]
        front: String,
        /// Sign of the back slice.
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        /// Height bound when the exceptional set is infinite.
        #[arg(long, default_value_t = 100)]
        max_den: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Large Legendrian cable obstruction for tb = pq + k.
    LargeCable {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct KnotArgs {
    /// Knot database; the bundled seed when omitted.
    #[arg(long)]
    db: Option<PathBuf>,
    #[arg(long)]
    name: String,
}

#[derive(Subcommand, Debug)]
enum KnotCmd {
    /// Width certificate.
    Width {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Width of the (p,q)-cable.
    Cable {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Can a solid torus with this dividing slope be virtually overtwisted.
    Vot {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[command(flatten)]
        out: Output,
    },
    /// Slopes of non-thickenable solid tori.
    Nonthickenable {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, default_value_t = 10)]
        max_n: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Bennequin feasibility of (tb, rot) for a given genus.
    Bennequin {
        #[arg(long, allow_hyphen_values = true)]
        tb: i64,
        #[arg(long, allow_hyphen_values = true)]
        rot: i64,
        #[arg(long)]
        genus: u32,
        #[command(flatten)]
        out: Output,
    },
}

fn slope(s: &str, max_den: i64) -> Result<Slope> {
    let s: Slope = s.parse()?;
    if s.height() > max_den {
        return Err(Error::InvalidInput(format!("{s} exceeds --max-den {max_den}")));
    }
    Ok(s)
}

fn knot(args: &KnotArgs) -> Result<KnotRecord> {
    let db = match &args.db {
        Some(p) => KnotDatabase::load(p)?,
        None => KnotDatabase::seed(),
    };
    db.get(&args.name)
}

fn emit(out: &mut dyn Write, json: bool, value: &impl Serialize, text: impl FnOnce() -> String) -> Result<()> {
    let line = if json {
        serde_json::to_string(value).map_err(|e| Error::Invariant(e.to_string()))?
    } else {
        text()
    };
    writeln!(out, "{line}").map_err(|e| Error::Invariant(e.to_string()))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn certificate_text(c: &WidthCertificate) -> String {
    let kind = serde_json::to_value(c.kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let mut s = match (c.value, c.lower, c.upper) {
        (Some(v), _, _) => format!("{kind} {v}"),
        (None, Some(l), Some(u)) => format!("{kind} [{l}, {u}]"),
        (None, Some(l), None) => format!("{kind} >= {l}"),
        _ => kind,
    };
    s.push_str(&format!(" ({})", c.rule));
    for r in c.assumptions.iter().chain(&c.reasons) {
        s.push_str(&format!("\n  {r}"));
    }
    s
}

fn solid_torus(a: &SolidTorusArgs) -> Result<SolidTorusSpec> {
    let side = match a.side {
        Side::Lower => MeridianSide::Lower,
        Side::Upper => MeridianSide::Upper,
    };
    let spec = SolidTorusSpec::new(slope(&a.meridian, i64::MAX)?, slope(&a.slope, i64::MAX)?, side, 2)?;
    let edges = spec.decorated_path()?.0.edge_count();
    if edges > a.max_n.min(MAX_ENUMERATED_EDGES) + 1 {
        return Err(Error::InvalidInput(format!(
            "path has {edges} edges, above --max-n {}",
            a.max_n
        )));
    }
    Ok(spec)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Farey(cmd) => {
            let (a, blocks_only) = match cmd {
                FareyCmd::Path(a) => (a, false),
                FareyCmd::Blocks(a) => (a, true),
            };
            let path = minimal_cw_path(slope(&a.from, a.max_den)?, slope(&a.to, a.max_den)?)?;
            if blocks_only {
                let v = path.vertices();
                let blocks: Vec<Vec<Slope>> = path.blocks().iter().map(|r| v[r.start..=r.end].to_vec()).collect();
                emit(out, a.out.json, &json!({ "blocks": blocks }), || {
                    blocks.iter().map(|b| join(b, " -> ")).collect::<Vec<_>>().join("\n")
                })
            } else {
                emit(out, a.out.json, &path, || {
                    let blocks: Vec<String> = path
                        .block_lists()
                        .iter()
                        .map(|b| format!("[{}]", join(b, ",")))
                        .collect();
                    format!("{}\nblocks {}", join(path.vertices(), " -> "), blocks.join(" "))
                })
            }
        }
        Command::Classify(ClassifyCmd::Count(a)) => {
            let spec = solid_torus(&a)?;
            let n = count_classes(&spec)?;
            emit(out, a.out.json, &json!({ "count": n }), || n.to_string())
        }
        Command::Classify(ClassifyCmd::Enum(a)) => {
            let spec = solid_torus(&a)?;
            let records: Vec<_> = enumerate_classes(&spec)?.iter().map(|c| c.to_record()).collect();
            emit(out, a.out.json, &records, || {
                records
                    .iter()
                    .map(|r| {
                        let ut = if r.universally_tight { "  universally tight" } else { "" };
                        format!("{}  [{}]{ut}", join(&r.path, " "), r.signs.join(" "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Split(SplitCmd::Exceptional {
            back,
            mid,
            front,
            sign,
            max_den,
            out: o,
        }) => {
            let t = MixedTorusSpec::new(
                slope(&back, max_den)?,
                slope(&mid, max_den)?,
                slope(&front, max_den)?,
                sign.into(),
            )?;
            let e = exceptional_slopes(&t, max_den)?;
            let splits = split_ledger(&t, max_den)?;
            let value = json!({ "exceptional": e.slopes, "truncated": e.truncated, "splits": splits });
            emit(out, o.json, &value, || {
                let mut s = format!(
                    "exceptional slopes {}{}",
                    join(&e.slopes, " "),
                    if e.truncated { " (truncated)" } else { "" }
                );
                for r in &splits {
                    let mark = if r.admissible { "  admissible" } else { "" };
                    s.push_str(&format!(
                        "\n  e = {}: lens |H1| = {}, surgery |H1| = {}{mark}",
                        r.exceptional_slope, r.lens_side_h1, r.surgery_side_h1
                    ));
                }
                s
            })
        }
        Command::Split(SplitCmd::LargeCable { p, q, k, out: o }) => {
            let v = large_cable_obstruction(p, q, k)?;
            emit(out, o.json, &v, || {
                let head = if v.consistent { "consistent" } else { "impossible" };
                let mut s = head.to_string();
                for r in &v.reasons {
                    s.push_str(&format!("\n  {r}"));
                }
                s
            })
        }
        Command::Knot(KnotCmd::Width { knot: k, out: o }) => {
            let c = width_oracle(&knot(&k)?)?;
            emit(out, o.json, &c, || certificate_text(&c))
        }
        Command::Knot(KnotCmd::Cable { knot: k, p, q, out: o }) => {
            let c = cable_width(&knot(&k)?, p, q)?;
            emit(out, o.json, &c, || certificate_text(&c))
        }
        Command::Knot(KnotCmd::Vot {
            knot: k,
            slope: s,
            out: o,
        }) => {
            let v = vot_possible(&knot(&k)?, slope(&s, i64::MAX)?)?;
            emit(out, o.json, &v, || format!("{}\n  {}", v.possible, v.reason))
        }
        Command::Knot(KnotCmd::Nonthickenable { knot: k, max_n, out: o }) => {
            if max_n > 10_000 {
                return Err(Error::InvalidInput(format!("--max-n {max_n} is above 10000")));
            }
            let list = nonthickenable_slopes(&knot(&k)?, max_n)?;
            emit(out, o.json, &list, || {
                list.iter()
                    .map(|e| format!("{} {}", e.slope, e.dividing_curves))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Knot(KnotCmd::Bennequin { tb, rot, genus, out: o }) => {
            let ok = bennequin_feasible(tb, rot, genus);
            emit(out, o.json, &json!({ "feasible": ok }), || ok.to_string())
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
