use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use torusq::chartab::frobenius_schur;
use torusq::cyclo::parse_cyclotomic;
use torusq::fixtures;
use torusq::group::DEFAULT_LIMIT;
use torusq::pipeline::{analyze_file, close_file, Options};
use torusq::torusq::{eigenvalue_one_all, is_primitive, AnalyticRep};
use torusq::{AnalyticChoice, CharacterTable, Error, FiniteGroup, GroupFile};

#[derive(Parser)]
#[command(name = "torusq", version, about = "Invariants of finite groups acting on complex tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the analytic representation of a group file.
    Analyze(AnalyzeArgs),
    /// Print the character table of a group file.
    Chartable(GroupArgs),
    /// Run a built-in example and compare against its expected values.
    CheckExample {
        /// s4, g216 or g1280.
        name: String,
    },
    /// Screen a directory of group files for candidate representations.
    Search {
        #[arg(long)]
        catalog: PathBuf,
        /// Skip groups with more elements.
        #[arg(long, default_value_t = 5000)]
        max_order: usize,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Group file.
    #[arg(long, required_unless_present = "example", conflicts_with = "example")]
    group: Option<PathBuf>,
    /// Built-in fixture instead of a file.
    #[arg(long)]
    example: Option<String>,
    /// Maximum number of group elements to enumerate.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Form body (`wedge:`/`row:` lines) as a file, or inline with `;` between lines.
    #[arg(long)]
    form: Option<String>,
    /// Lattice generator ω, e.g. `1`, `z` or `z^2`.
    #[arg(long)]
    lattice: Option<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// auto, natural or conjugate-sum.
    #[arg(long)]
    rep: Option<AnalyticChoice>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

enum Failure {
    Input(String),
    Mismatch,
    TooLarge(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GroupTooLarge { .. } => Failure::TooLarge(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn load(path: &Path) -> Result<GroupFile, Failure> {
    GroupFile::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}:{}", path.display(), e)))
}

fn group_file(args: &GroupArgs) -> Result<GroupFile, Failure> {
    match (&args.group, &args.example) {
        (Some(path), _) => load(path),
        (None, Some(name)) => fixtures::get(name)
            .map(|f| f.group_file())
            .ok_or_else(|| Failure::Input(format!("unknown example `{}`", name))),
        (None, None) => Err(Failure::Input("--group or --example is required".into())),
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let file = group_file(&args.group)?;
    let form = match &args.form {
        Some(f) if Path::new(f).is_file() => Some(read(Path::new(f))?),
        Some(inline) => Some(inline.replace(';', "\n")),
        None => None,
    };
    let lattice = match &args.lattice {
        Some(text) => Some(
            parse_cyclotomic(text, file.conductor)
                .map_err(|e| Failure::Input(format!("--lattice {}", e)))?,
        ),
        None => None,
    };
    let opts = Options {
        analytic: args.rep,
        form,
        lattice,
        limit: args.group.limit,
    };
    let analysis = analyze_file(&file, &opts)?;
    match args.report {
        ReportFormat::Text => print!("{}", analysis.report.to_text()),
        ReportFormat::Json => println!("{}", analysis.report.to_json_string()),
    }
    Ok(())
}

fn chartable(args: &GroupArgs) -> Result<(), Failure> {
    let file = group_file(args)?;
    let group = close_file(&file, args.limit)?;
    let table = CharacterTable::compute(&group)?;
    print!("{}", table.to_text());
    Ok(())
}

fn check_example(name: &str) -> Result<(), Failure> {
    if !fixtures::EXAMPLES.contains(&name) {
        return Err(Failure::Input(format!(
            "unknown example `{}` (expected one of {})",
            name,
            fixtures::EXAMPLES.join(", ")
        )));
    }
    let fixture = fixtures::get(name).expect("listed examples exist");
    let (_, checks) = fixtures::check(fixture)?;
    let mut failed = 0;
    for c in &checks {
        if c.passed() {
            println!("pass  {}: {}", c.name, c.actual);
        } else {
            failed += 1;
            println!("FAIL  {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
    }
    if failed > 0 {
        println!("{}: {} of {} checks failed", name, failed, checks.len());
        return Err(Failure::Mismatch);
    }
    println!("{}: all {} checks passed", name, checks.len());
    Ok(())
}

fn indicator_name(i: i8) -> &'static str {
    match i {
        1 => "real",
        -1 => "quaternionic",
        _ => "complex",
    }
}

fn screen(name: &str, group: &Arc<FiniteGroup>) -> Result<(), Error> {
    let table = CharacterTable::compute(group)?;
    let primitive = is_primitive(group);
    println!(
        "{}: order {}, {} classes, primitive {}{}",
        name,
        group.order(),
        group.num_classes(),
        primitive,
        if primitive { "" } else { " (rejected)" }
    );
    let natural = AnalyticRep::natural(group);
    let natural_row = table.index_of(natural.character());
    for (i, chi) in table.iter().enumerate() {
        let faithful = chi.is_faithful();
        let eig = if natural_row == Some(i) {
            eigenvalue_one_all(&natural).0
        } else {
            chi.eigenvalue_one_everywhere()
        };
        let candidate = primitive && faithful && eig && !chi.degree().is_one();
        println!(
            "  X.{} degree {} {} faithful {} eig {}{}{}",
            i + 1,
            chi.degree(),
            indicator_name(frobenius_schur(chi)?),
            faithful,
            if eig { "pass" } else { "fail" },
            if natural_row == Some(i) { " natural" } else { "" },
            if candidate { "  candidate" } else { "" }
        );
    }
    Ok(())
}

fn search(catalog: &Path, max_order: usize) -> Result<(), Failure> {
    let entries = fs::read_dir(catalog).map_err(|e| Failure::Input(format!("{}: {}", catalog.display(), e)))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "group"))
        .collect();
    paths.sort();
    let mut processed = 0;
    for path in &paths {
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        let group = match load(path).and_then(|f| Ok(close_file(&f, max_order)?)) {
            Ok(g) => g,
            Err(Failure::TooLarge(_)) => {
                eprintln!("warning: {}: more than {} elements, skipped", name, max_order);
                continue;
            }
            Err(Failure::Input(msg)) => {
                eprintln!("warning: {}, skipped", msg);
                continue;
            }
            Err(Failure::Mismatch) => unreachable!(),
        };
        match screen(&name, &group) {
            Ok(()) => processed += 1,
            Err(e) => eprintln!("warning: {}: {}, skipped", name, e),
        }
    }
    if processed == 0 {
        return Err(Failure::Input(format!("no group files processed in {}", catalog.display())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Chartable(args) => chartable(args),
        Command::CheckExample { name } => check_example(name),
        Command::Search { catalog, max_order } => search(catalog, *max_order),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::TooLarge(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}
