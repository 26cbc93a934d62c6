use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hydra_core::expr::{format, parse_word_bounded};
use hydra_core::extensions::{amalgam_reduce, hnn_reduce, PinchOrder, Verdict};
use hydra_core::identities::run_suite;
use hydra_core::membership::pieces;
use hydra_core::oracle::enumerate_subgroup;
use hydra_core::quotients::{scan, ScanLimits};
use hydra_core::spec_file::{parse_inline_subgroup, preset, SpecFile};
use hydra_core::words::DEFAULT_MAX_LENGTH;
use hydra_core::{Error, GroupPair, GroupSpec, MembershipResult, SubgroupSpec, Word};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_UNDECIDED: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "hydra",
    version,
    about = "Word problems, membership and separability experiments for hydra groups"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Group preset (`hydra<k>`) or key-value spec file.
    #[arg(long, global = true, default_value = "hydra2")]
    group: String,
    /// Subgroup spec file or inline `r=1,0`; defaults to `r` from the group file, else all ones.
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Search window for level >= 3 suffix steps.
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Largest permutation degree a quotient scan may use.
    #[arg(long, global = true, default_value_t = hydra_core::quotients::DEFAULT_DEGREE_CAP)]
    max_degree: usize,
    /// Word length guard.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LENGTH)]
    max_length: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Ltr,
    Rtl,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form `(r, u)` of `t^r u`.
    Normalize { word: String },
    /// Decide whether two words are equal in the group.
    Equal { lhs: String, rhs: String },
    /// Piece decomposition of the fiber part of a word.
    Pieces {
        word: String,
        /// Decomposition level; defaults to the highest letter present.
        #[arg(long)]
        level: Option<u32>,
    },
    /// Decide membership in the subgroup.
    Member { word: String },
    /// Print a certificate over h1..hk for a member element.
    Express { word: String },
    /// Britton reduction in the HNN extension with stable letter p.
    HnnDecide {
        word: String,
        #[arg(long, value_enum, default_value = "ltr")]
        order: Order,
    },
    /// Syllable reduction in the amalgamated double (mirrored letters use `~`).
    AmalgamDecide { word: String },
    /// Look for homomorphisms to S_n separating the word from the subgroup.
    ScanQuotients {
        word: String,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Every subgroup element reachable with certificates of length <= bound.
    OracleDump {
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Word length in the subgroup against normal form length, per layer.
    DistortionTable {
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Run the identity suite.
    VerifyPaper {
        /// Only run items whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Check a spec file and print its canonical form.
    SpecValidate { file: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_resource() => EXIT_RESOURCE,
        Error::Alphabet { .. } | Error::Spec(_) | Error::Syntax { .. } => EXIT_INPUT,
        Error::NotMember(_) => EXIT_NEGATIVE,
        Error::Undecided(_) | Error::Unsupported(_) => EXIT_UNDECIDED,
        _ => EXIT_INTERNAL,
    }
}

fn io_error(path: &str, e: std::io::Error) -> Error {
    Error::Spec(format!("cannot read {path}: {e}"))
}

fn load_group(common: &Common) -> Result<(GroupSpec, Option<SubgroupSpec>), Error> {
    let (group, sub) = match preset(&common.group) {
        Some(g) => (g?, None),
        None => {
            let text = fs::read_to_string(&common.group).map_err(|e| io_error(&common.group, e))?;
            let file = SpecFile::parse(&text)?;
            let g = file
                .group
                .ok_or_else(|| Error::Spec(format!("{} does not define a group", common.group)))?;
            (g, file.subgroup)
        }
    };
    Ok((group.with_max_length(common.max_length), sub))
}

fn load_pair(common: &Common) -> Result<GroupPair, Error> {
    let (group, from_file) = load_group(common)?;
    let sub = match &common.subgroup {
        Some(arg) if Path::new(arg).is_file() => {
            let text = fs::read_to_string(arg).map_err(|e| io_error(arg, e))?;
            SpecFile::parse(&text)?
                .subgroup
                .ok_or_else(|| Error::Spec(format!("{arg} does not define r")))?
        }
        Some(arg) => parse_inline_subgroup(arg)?,
        None => from_file.unwrap_or_else(|| SubgroupSpec::classic(group.rank())),
    };
    let mut pair = GroupPair::new(group, sub)?;
    if let Some(w) = common.window {
        pair = pair.with_window(w);
    }
    for w in pair.warnings() {
        eprintln!("{w}");
    }
    Ok(pair)
}

fn word(common: &Common, text: &str) -> Result<Word, Error> {
    parse_word_bounded(text, common.max_length)
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Trivial => 0,
        Verdict::NonTrivial => EXIT_NEGATIVE,
        Verdict::Undecided(_) => EXIT_UNDECIDED,
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let common = &cli.common;
    match &cli.command {
        Command::Normalize { word: text } => {
            let (g, _) = load_group(common)?;
            let w = word(common, text)?;
            g.alphabet().check(&w)?;
            println!("{}", g.normalize(&w)?);
            Ok(0)
        }
        Command::Equal { lhs, rhs } => {
            let (g, _) = load_group(common)?;
            let (x, y) = (word(common, lhs)?, word(common, rhs)?);
            let eq = g.equal(&x, &y)?;
            println!("{eq}");
            Ok(if eq { 0 } else { EXIT_NEGATIVE })
        }
        Command::Pieces { word: text, level } => {
            let (g, _) = load_group(common)?;
            let w = word(common, text)?;
            g.alphabet().check(&w)?;
            let nf = g.normalize(&w)?;
            let level = level.or(nf.u.top_level()).unwrap_or(1);
            if level == 0 || level > g.rank() {
                return Err(Error::Spec(format!("level must lie in 1..={}", g.rank())));
            }
            let mut line = String::new();
            if nf.t_exp != 0 {
                line.push_str(&format!("t^{} ", nf.t_exp));
            }
            for p in pieces(&nf.u, level) {
                line.push_str(&p.to_string());
            }
            println!("{line}");
            Ok(0)
        }
        Command::Member { word: text } => {
            let pair = load_pair(common)?;
            let result = pair.member(&word(common, text)?)?;
            println!("{result}");
            Ok(match result {
                MembershipResult::Member(_) => 0,
                MembershipResult::NonMember(_) => EXIT_NEGATIVE,
                MembershipResult::Undecided(_) => EXIT_UNDECIDED,
            })
        }
        Command::Express { word: text } => {
            let pair = load_pair(common)?;
            println!("{}", format(&pair.express(&word(common, text)?)?));
            Ok(0)
        }
        Command::HnnDecide { word: text, order } => {
            let pair = load_pair(common)?;
            let order = match order {
                Order::Ltr => PinchOrder::LeftToRight,
                Order::Rtl => PinchOrder::RightToLeft,
            };
            let red = hnn_reduce(&pair, &word(common, text)?, order)?;
            eprintln!("pinches={} reduced={}", red.pinches, format(&red.word));
            println!("{}", red.verdict);
            Ok(verdict_code(&red.verdict))
        }
        Command::AmalgamDecide { word: text } => {
            let pair = load_pair(common)?;
            let red = amalgam_reduce(&pair, &word(common, text)?)?;
            eprintln!(
                "rewrites={} reduced={}",
                red.rewrites.len(),
                format(&red.word.to_word())
            );
            println!("{}", red.verdict);
            Ok(verdict_code(&red.verdict))
        }
        Command::ScanQuotients { word: text, n_max } => {
            let pair = load_pair(common)?;
            let limits = ScanLimits {
                max_degree: common.max_degree,
                ..ScanLimits::default()
            };
            let report = scan(&pair, &word(common, text)?, *n_max, &limits)?;
            for d in &report.degrees {
                for h in &d.separating {
                    println!("separating degree={} {h}", d.degree);
                }
                eprintln!(
                    "degree {} scanned in {:.3}s",
                    d.degree,
                    d.elapsed.as_secs_f64()
                );
            }
            if let Some(v) = &report.cross_check {
                println!("membership: {v}");
            }
            print!("{}", report.summary());
            Ok(0)
        }
        Command::OracleDump { bound } => {
            let pair = load_pair(common)?;
            let table = enumerate_subgroup(&pair, *bound)?;
            for (nf, cert) in table.sorted() {
                println!("{nf}\t{}", format(cert));
            }
            eprintln!("entries={}", table.len());
            Ok(0)
        }
        Command::DistortionTable { bound } => {
            let pair = load_pair(common)?;
            let table = enumerate_subgroup(&pair, *bound)?;
            println!("length count min_ambient max_ambient compressed");
            for row in table.distortion() {
                println!(
                    "{} {} {} {} {}",
                    row.length, row.count, row.min_ambient, row.max_ambient, row.compressed
                );
            }
            Ok(0)
        }
        Command::VerifyPaper { filter } => {
            let report = run_suite(filter.as_deref());
            print!("{report}");
            Ok(if report.all_passed() {
                0
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::SpecValidate { file } => {
            let text = fs::read_to_string(file).map_err(|e| io_error(file, e))?;
            let spec = SpecFile::parse(&text)?;
            let canonical = spec.to_text();
            if canonical != text {
                eprintln!("note: {file} is valid but not in canonical form");
            }
            if let (Some(g), Some(s)) = (&spec.group, &spec.subgroup) {
                for w in GroupPair::new(g.clone(), s.clone())?.warnings() {
                    eprintln!("{w}");
                }
            }
            print!("{canonical}");
            Ok(0)
        }
    }
}
