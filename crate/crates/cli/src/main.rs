//! `rauzy`: enumerate labeled Rauzy classes and check their symmetry groups.
//!
//! Exit codes: 0 success, 2 unreadable or unparseable input, 3 reducible
//! permutation, 4 enumeration guard exceeded, 5 verification failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rauzy_core::export::{export_dot, export_json};
use rauzy_core::marking::MarkingData;
use rauzy_core::symmetry::{
    automorphism_group, build_candidate_group, phi, verify_theorem_with, VerifyOptions,
};
use rauzy_core::{Error, LabeledPermutation, RauzyDiagram, DEFAULT_MAX_VERTICES};

// Write to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "rauzy", version, about = "Labeled Rauzy classes and their automorphisms")]
struct Cli {
    /// Suppress statistics on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stratum, genus, rotation map and orbits of one permutation.
    Info {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the Rauzy class and export it.
    Class {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// List the automorphism group of the diagram.
    Aut {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Check the automorphism group against the sign-kernel description.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        /// Also verify every candidate edge by edge (slow).
        #[arg(long)]
        full_check: bool,
    },
    /// Test whether a permutation lies in the class of a root permutation.
    Member {
        class_file: PathBuf,
        perm_file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    Read(PathBuf, std::io::Error),
    Core(Error),
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Read(..) | Failure::Usage(_) => 2,
            Failure::Core(Error::Parse(_)) => 2,
            Failure::Core(Error::Reducible) => 3,
            Failure::Core(Error::GuardExceeded { .. }) => 4,
            Failure::Core(_) | Failure::Verification(_) => 5,
        }
    }

    fn reason(&self) -> &'static str {
        match self {
            Failure::Read(..) => "io",
            Failure::Usage(_) => "usage",
            Failure::Core(Error::Parse(_)) => "parse",
            Failure::Core(Error::Reducible) => "reducible",
            Failure::Core(Error::GuardExceeded { .. }) => "guard",
            Failure::Core(_) | Failure::Verification(_) => "verification",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Read(path, e) => format!("cannot read {}: {e}", path.display()),
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) | Failure::Verification(m) => m.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_errors = matches!(
        &cli.command,
        Command::Verify { format: Format::Json, .. } | Command::Aut { format: Format::Json, .. }
    );
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if json_errors && !matches!(failure, Failure::Verification(_)) {
                out!(
                    "{}",
                    json!({ "error": failure.reason(), "message": failure.message() })
                );
            }
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn read_permutation(path: &Path) -> Result<LabeledPermutation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Read(path.to_owned(), e))?;
    Ok(LabeledPermutation::parse(&text, None).map_err(Error::from)?)
}

fn read_irreducible(path: &Path) -> Result<LabeledPermutation, Failure> {
    let p = read_permutation(path)?;
    if !p.is_irreducible() {
        return Err(Error::Reducible.into());
    }
    Ok(p)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Info { file, format } => info(file, *format),
        Command::Class { file, format, max_vertices } => class(file, *format, *max_vertices, cli.quiet),
        Command::Aut { file, format, max_vertices } => aut(file, *format, *max_vertices),
        Command::Verify { file, format, max_vertices, full_check } => {
            verify(file, *format, *max_vertices, *full_check)
        }
        Command::Member { class_file, perm_file, max_vertices } => {
            let root = read_irreducible(class_file)?;
            let p = read_permutation(perm_file)?;
            let diagram = RauzyDiagram::enumerate(&root, *max_vertices)?;
            out!("{}", if diagram.contains(&p) { "member" } else { "not a member" });
            Ok(())
        }
    }
}

fn info(file: &Path, format: Format) -> Result<(), Failure> {
    let p = read_irreducible(file)?;
    let m = MarkingData::new(&p)?;
    let a = p.alphabet();
    let special = m.format_orbit(&m.orbits[m.special_orbit]);
    match format {
        Format::Text => {
            out!("{}, genus {}, special orbit {}", m.stratum_signature(), m.genus, special);
            out!("special degree: {}", m.special_degree());
            out!("degrees: {:?}", m.degree_multiset());
            out!("left letters: {} (top), {} (bottom)", a.token(m.minus_inf), a.token(m.plus_inf));
            out!("T: {}", m.rotation.cycle_notation(a));
            let orbits: Vec<String> = m.orbits.iter().map(|o| m.format_orbit(o)).collect();
            out!("orbits: {}", orbits.join(" "));
        }
        Format::Json => {
            let tokens = |o: &[rauzy_core::Letter]| -> Vec<&str> { o.iter().map(|&l| a.token(l)).collect() };
            let doc = json!({
                "stratum": m.stratum_signature(),
                "special_degree": m.special_degree(),
                "degrees": m.degree_multiset(),
                "genus": m.genus,
                "minus_inf": a.token(m.minus_inf),
                "plus_inf": a.token(m.plus_inf),
                "rotation": m.rotation.cycle_notation(a),
                "orbits": m.orbits.iter().map(|o| tokens(o)).collect::<Vec<_>>(),
                "special_orbit": tokens(&m.orbits[m.special_orbit]),
            });
            out!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Dot => return Err(Failure::Usage("dot output is only available for `class`".into())),
    }
    Ok(())
}

fn class(file: &Path, format: Format, max_vertices: usize, quiet: bool) -> Result<(), Failure> {
    let p = read_irreducible(file)?;
    let diagram = RauzyDiagram::enumerate(&p, max_vertices)?;
    let stats = format!("vertices: {}\nedges: {}", diagram.len(), 2 * diagram.len());
    match format {
        Format::Text => {
            let m = MarkingData::new(&p)?;
            out!("{stats}");
            out!("stratum: {}", m.stratum_signature());
        }
        Format::Json => {
            let _ = std::io::stdout().lock().write_all(export_json(&diagram)?.as_bytes());
        },
        Format::Dot => {
            let _ = std::io::stdout().lock().write_all(export_dot(&diagram).as_bytes());
        },
    }
    if format != Format::Text && !quiet {
        eprintln!("{stats}");
    }
    Ok(())
}

fn aut(file: &Path, format: Format, max_vertices: usize) -> Result<(), Failure> {
    let p = read_irreducible(file)?;
    let diagram = RauzyDiagram::enumerate(&p, max_vertices)?;
    let marking = MarkingData::new(&p)?;
    let candidates = build_candidate_group(&marking)?;
    let group = automorphism_group(&diagram, &candidates)?;
    let a = p.alphabet();
    match format {
        Format::Text => {
            out!("|G'| = {}, |Aut(D)| = {}", candidates.order(), group.order());
            for (e, c) in group.elements().iter().zip(group.coordinates()) {
                out!("{}  {}  phi={}", e.cycle_notation(a), c, phi(c));
            }
        }
        Format::Json => {
            let elements: Vec<_> = group
                .elements()
                .iter()
                .zip(group.coordinates())
                .map(|(e, c)| json!({ "cycles": e.cycle_notation(a), "coordinates": c, "phi": phi(c).value() }))
                .collect();
            let doc = json!({
                "g_prime_order": candidates.order(),
                "aut_order": group.order(),
                "elements": elements,
            });
            out!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Dot => return Err(Failure::Usage("dot output is only available for `class`".into())),
    }
    Ok(())
}

fn verify(file: &Path, format: Format, max_vertices: usize, full_check: bool) -> Result<(), Failure> {
    let p = read_irreducible(file)?;
    let diagram = RauzyDiagram::enumerate(&p, max_vertices)?;
    let report = verify_theorem_with(&diagram, VerifyOptions { full_graph_check: full_check })?;
    match format {
        Format::Text => out!("{report}"),
        Format::Json => out!("{}", report.to_json()),
        Format::Dot => return Err(Failure::Usage("dot output is only available for `class`".into())),
    }
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(Failure::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}
