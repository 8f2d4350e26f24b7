//! `engel`: sinks, verification checks, surveys and arithmetic from the shell.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use engel_core::catalog;
use engel_core::engel::{self, Scope, Side};
use engel_core::harness;
use engel_core::io::{load_group, SinkReport};
use engel_core::numtheory;
use engel_core::{Automorphism, Error, FiniteGroup, Group, Perm};

#[derive(Parser)]
#[command(name = "engel", version, about = "Minimal Engel sinks of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the left or right sink of an element or automorphism.
    Sink(SinkArgs),
    /// Run verification checks over a catalog tier and emit a JSON-lines report.
    Verify(VerifyArgs),
    /// Tabulate sink sizes against group orders over a catalog tier.
    Survey(SurveyArgs),
    /// Print the Zsigmondy primes for (q, e).
    Zsigmondy { q: u128, e: u32 },
    /// Catalog queries.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List every catalog group with its order, tier and structural flags.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Base,
    Extension,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct SinkArgs {
    /// `catalog:<name>` or the path of a group document.
    #[arg(long)]
    group: String,
    /// Acting element in 1-based cycle notation.
    #[arg(long, conflicts_with = "aut", required_unless_present = "aut")]
    element: Option<String>,
    /// `identity`, `invert`, `inner:<cycles>`, `power:<k>`, or `file` for the
    /// automorphism stored in the group document.
    #[arg(long)]
    aut: Option<String>,
    #[arg(long, value_enum)]
    side: SideArg,
    /// Seeds over the base group or over `G<phi>`; automorphisms default to the extension.
    #[arg(long, visible_alias = "seed-scope", value_enum)]
    scope: Option<ScopeArg>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct TierArgs {
    /// `1`, `2` or `all`.
    #[arg(long, env = "ENGEL_TIER", default_value = "1")]
    tier: String,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Comma-separated glob patterns over check ids.
    #[arg(long, default_value = "*")]
    checks: String,
    #[command(flatten)]
    tier: TierArgs,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// List the registered checks and exit.
    #[arg(long)]
    list: bool,
}

#[derive(clap::Args)]
struct SurveyArgs {
    #[command(flatten)]
    tier: TierArgs,
    /// Write every row as CSV to this path (`-` for standard output).
    #[arg(long)]
    csv: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(m) => Failure::Io(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(what: &str, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {}", what, e))
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sink(args) => cmd_sink(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Survey(args) => cmd_survey(args),
        Command::Zsigmondy { q, e } => cmd_zsigmondy(q, e),
        Command::Catalog {
            command: CatalogCommand::List { format },
        } => cmd_catalog_list(format),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("engel: {}", m);
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("engel: {}", m);
            ExitCode::from(3)
        }
    }
}

/// A group with the automorphism stored alongside it, if any.
struct Resolved {
    group: FiniteGroup,
    images: Option<Vec<Perm>>,
}

fn resolve_group(reference: &str) -> Result<Resolved, Failure> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        return Ok(Resolved {
            group: catalog::lookup(name)?,
            images: None,
        });
    }
    let text = fs::read_to_string(reference).map_err(|e| io_failure(reference, e))?;
    let loaded = load_group(&text)?;
    let images = loaded.automorphism_images().map(|i| i.to_vec());
    Ok(Resolved {
        group: loaded.group,
        images,
    })
}

fn resolve_aut<'g>(r: &'g Resolved, text: &str) -> Result<Automorphism<'g>, Failure> {
    let g = &r.group;
    let (head, arg) = text.split_once(':').unwrap_or((text, ""));
    let aut = match head {
        "identity" => Automorphism::identity(g),
        "invert" => {
            if !g.is_abelian() {
                return Err(Failure::Usage("x -> x^-1 is an automorphism only of abelian groups".to_string()));
            }
            let images: Vec<Perm> = g.generator_perms().iter().map(|p| p.inverse()).collect();
            Automorphism::from_images(g, &images)?
        }
        "inner" => Automorphism::inner(g, &Perm::parse_cycles(arg, g.degree())?)?,
        "power" => {
            let k: usize = arg
                .parse()
                .map_err(|_| Failure::Usage(format!("power needs an integer exponent, got {:?}", arg)))?;
            let images: Vec<usize> = g.generators().iter().map(|&s| g.pow(s, k)).collect();
            Automorphism::from_generator_indices(g, &images)?
        }
        "file" => {
            let images = r
                .images
                .as_ref()
                .ok_or_else(|| Failure::Usage("the group document has no automorphism".to_string()))?;
            Automorphism::from_images(g, images)?
        }
        _ => return Err(Failure::Usage(format!("unknown automorphism {:?}", text))),
    };
    Ok(aut)
}

fn cmd_sink(args: SinkArgs) -> Outcome {
    let resolved = resolve_group(&args.group)?;
    let g = &resolved.group;
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let (sink, scope) = if let Some(text) = &args.element {
        if args.scope == Some(ScopeArg::Extension) {
            return Err(Failure::Usage(
                "element sinks are seeded over the group; pass --aut inner:<cycles> for the extension scope".to_string(),
            ));
        }
        let x = g.require(&Perm::parse_cycles(text, g.degree())?)?;
        (engel::sink(g, x, &g.whole(), side)?, Scope::Base)
    } else {
        let aut = resolve_aut(&resolved, args.aut.as_deref().expect("clap requires one of element or aut"))?;
        let scope = match args.scope.unwrap_or(ScopeArg::Extension) {
            ScopeArg::Base => Scope::Base,
            ScopeArg::Extension => Scope::Extension,
        };
        (engel::aut_sink_in(&aut, scope, side)?, scope)
    };
    let report = SinkReport::new(g, &sink, scope.as_str());
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    emit_stdout(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_tier(t: &str) -> Result<Option<u8>, Failure> {
    match t {
        "all" => Ok(None),
        "1" => Ok(Some(1)),
        "2" => Ok(Some(2)),
        _ => Err(Failure::Usage(format!("tier must be 1, 2 or all, got {:?}", t))),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".to_string()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Failure::Usage(e.to_string()))
}

fn emit_stdout(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| io_failure("stdout", e))
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    if args.list {
        let mut s = String::new();
        for c in harness::registry() {
            s.push_str(&format!("{:<12} {}\n", c.id, c.summary));
        }
        emit_stdout(&s)?;
        return Ok(ExitCode::SUCCESS);
    }
    let checks = harness::select(&args.checks)?;
    let tier = parse_tier(&args.tier.tier)?;
    let records = pool(args.tier.jobs)?.install(|| harness::run(&checks, tier))?;
    let stream = harness::to_jsonl(&records);
    match &args.out {
        Some(path) => fs::write(path, stream).map_err(|e| io_failure(&path.display().to_string(), e))?,
        None => emit_stdout(&stream)?,
    }
    let t = harness::tally(&records);
    eprintln!("{} pass, {} fail, {} skipped", t.pass, t.fail, t.skipped);
    Ok(if t.fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_survey(args: SurveyArgs) -> Outcome {
    let tier = parse_tier(&args.tier.tier)?;
    let rows = pool(args.tier.jobs)?.install(|| harness::survey(tier))?;
    match args.csv.as_deref() {
        Some(p) if p.as_os_str() == "-" => {
            let mut buf = Vec::new();
            harness::write_csv(&rows, &mut buf)?;
            emit_stdout(&String::from_utf8(buf).expect("csv is utf-8"))?;
            return Ok(ExitCode::SUCCESS);
        }
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| io_failure(&p.display().to_string(), e))?;
            harness::write_csv(&rows, file)?;
        }
        None => {}
    }
    let (ext, base) = harness::extremal_table(&rows);
    let mut s = String::new();
    s.push_str(&format!("{} rows, {} with G = [G,phi]\n\n", rows.len(), rows.iter().filter(|r| r.is_onto).count()));
    s.push_str("largest |G| per m = |R_{G<phi>}(phi)|\n");
    s.push_str(&extremal_text(&ext));
    s.push_str("\nlargest |G| per m = |R_G(phi)|, nonabelian simple G\n");
    s.push_str(&extremal_text(&base));
    emit_stdout(&s)?;
    Ok(ExitCode::SUCCESS)
}

fn extremal_text(rows: &[harness::Extremal]) -> String {
    let mut s = format!("{:>6} {:>6}  {:<10} {}\n", "m", "|G|", "group", "phi");
    for r in rows {
        s.push_str(&format!("{:>6} {:>6}  {:<10} {}\n", r.m, r.order, r.group, r.phi));
    }
    s
}

fn cmd_zsigmondy(q: u128, e: u32) -> Outcome {
    let z = numtheory::zsigmondy(q, e)?;
    let line = match z.exception {
        Some(x) => format!("no Zsigmondy prime (exception: {})\n", x.describe()),
        None => {
            let ps: Vec<String> = z.primes.iter().map(|p| p.to_string()).collect();
            format!("{}\n", ps.join(" "))
        }
    };
    emit_stdout(&line)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog_list(format: Format) -> Outcome {
    let mut s = String::new();
    if format == Format::Text {
        s.push_str(&format!(
            "{:<10} {:>6} {:>4}  {}\n",
            "name", "order", "tier", "flags"
        ));
    }
    for entry in catalog::entries() {
        let rec = catalog::describe(&entry.build()?, entry.tier);
        match format {
            Format::Json => {
                s.push_str(&serde_json::to_string(&rec).expect("records serialize"));
                s.push('\n');
            }
            Format::Text => {
                let flags: Vec<&str> = [
                    (rec.abelian, "abelian"),
                    (rec.nilpotent, "nilpotent"),
                    (rec.metabelian, "metabelian"),
                    (rec.simple, "simple"),
                ]
                .iter()
                .filter(|(on, _)| *on)
                .map(|(_, f)| *f)
                .collect();
                s.push_str(&format!("{:<10} {:>6} {:>4}  {}\n", rec.name, rec.order, rec.tier, flags.join(",")));
            }
        }
    }
    emit_stdout(&s)?;
    Ok(ExitCode::SUCCESS)
}
