//! The `mbs` command-line interface.
//!
//! Surfaces are read in the text format of [`crate::format`] from a file
//! argument or, when it is absent or `-`, from standard input. Exit status
//! is 0 on success, 1 when a yes/no question is answered in the negative
//! (or `s3` finds an obstruction), and 2 on errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::builders;
use crate::error::{Error, Result};
use crate::export;
use crate::format;
use crate::homology::{h1, s3_obstruction, S3Verdict, SpineGraph};
use crate::minors::{
    all_minors, are_isomorphic, genus_bound_via_certificate, is_minor, neighborhood_minor_certificate_with_budget,
    obstruction_candidate_s3, standard_decomposition, Candidacy, DEFAULT_SEARCH_BUDGET,
};
use crate::neighborhood::{boundary_surface, genus_upper_bound_heegaard, genus_upper_bound_sectors, DualGraph};
use crate::surface::MultibranchedSurface;

const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "mbs", version, about = "Multibranched surface toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Input file; standard input when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Pair {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every surface in the input.
    Validate(Input),
    /// Euler characteristic, regularity, indices, degrees and H1.
    Invariants(Input),
    /// Homological obstruction to embedding in the 3-sphere.
    S3(Input),
    /// Upper bounds for the Heegaard genus.
    GenusBounds {
        #[command(flatten)]
        input: Input,
        /// Permutation systems (and flip assignments) to evaluate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Also search over side flips.
        #[arg(long)]
        flips: bool,
    },
    /// List all minors up to isomorphism.
    Minors {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max: usize,
    },
    /// Is A a minor of B?
    IsMinor {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max: usize,
    },
    /// Are A and B isomorphic?
    Iso(Pair),
    /// Search for a certificate that A is a neighborhood minor of B.
    Nminor {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
        /// Print the certificate as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Candidacy for the obstruction set of surfaces embeddable in the 3-sphere.
    OmegaCandidate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max: usize,
    },
    /// Standard decomposition into boundary disks and closed surfaces.
    Decompose(Input),
    /// Print a surface from one of the built-in families.
    Build { family: Family, params: Vec<String> },
    /// Export a surface or a derived structure.
    Export {
        #[arg(long, conflicts_with = "json", required_unless_present = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        what: ExportTarget,
        #[command(flatten)]
        input: Input,
        /// Cap for the permutation-system search that picks the exported
        /// neighborhood.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    /// `seifert 2,3,5`
    Seifert,
    /// `one-sector GENUS DEGREES [SIGNS]`, e.g. `one-sector 1 2,4 1,-1`
    OneSector,
    Pants,
    /// `rose N`
    Rose,
    /// `graph VERTICES EDGES`, e.g. `graph 3 0-1,1-2,2-0`
    Graph,
    Obstruction,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportTarget {
    DualGraph,
    Boundary,
    Spine,
    Surface,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn answer(yes: bool, stdout: String) -> Self {
        Outcome {
            code: if yes { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }
}

/// Run `mbs` with `args` (program name first), reading `stdin` only when a
/// command needs it.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_text(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidArgument(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn load(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<MultibranchedSurface> {
    format::parse_one(&read_text(path, stdin)?)?.validate(false)
}

fn label(x: &MultibranchedSurface) -> &str {
    x.name().unwrap_or("(unnamed)")
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Result<Outcome> {
    let mut out = String::new();
    macro_rules! say {
        ($($t:tt)*) => { writeln!(out, $($t)*).expect("string write") };
    }
    match cmd {
        Command::Validate(input) => {
            for x in format::parse(&read_text(input.file.as_ref(), stdin)?)? {
                let x = x.validate(false)?;
                say!(
                    "valid: {} ({} branches, {} sectors{})",
                    label(&x),
                    x.branches().len(),
                    x.sectors().len(),
                    if x.is_regular() { "" } else { ", not regular" }
                );
            }
            Ok(Outcome::ok(out))
        }
        Command::Invariants(input) => {
            let x = load(input.file.as_ref(), stdin)?;
            say!("name: {}", label(&x));
            say!("branches: {}", x.branches().len());
            say!("sectors: {}", x.sectors().len());
            say!("euler characteristic: {}", x.euler_characteristic());
            say!("regular: {}", if x.is_regular() { "yes" } else { "no" });
            say!("components: {}", x.connected_components().len());
            for l in x.branches() {
                let degree = match x.branch_degree(l) {
                    Ok(d) => d.to_string(),
                    Err(_) => "mixed".into(),
                };
                say!("branch {l}: index {}, degree {degree}", x.branch_index(l)?);
            }
            match h1(&x) {
                Ok(g) => say!("H1: {g}"),
                Err(Error::NonorientableSector(e)) => say!("H1: not computed (sector {e} is nonorientable)"),
                Err(e) => return Err(e),
            }
            Ok(Outcome::ok(out))
        }
        Command::S3(input) => {
            let x = load(input.file.as_ref(), stdin)?;
            match s3_obstruction(&x)? {
                S3Verdict::Obstructed { torsion } => {
                    say!("OBSTRUCTED: H1 torsion {torsion}");
                    Ok(Outcome::answer(false, out))
                }
                S3Verdict::Inconclusive => {
                    say!("INCONCLUSIVE: H1 = {} is torsion-free", h1(&x)?);
                    Ok(Outcome::ok(out))
                }
            }
        }
        Command::GenusBounds { input, cap, flips } => {
            let x = load(input.file.as_ref(), stdin)?;
            let sectors = genus_upper_bound_sectors(&x)?;
            let hb = genus_upper_bound_heegaard(&x, cap, flips)?;
            say!("sector bound: {sectors}");
            say!("heegaard bound: {}", hb.bound);
            say!("  boundary genus: {}", hb.boundary_genus);
            say!("  dual graph betti number: {}", hb.dual_betti);
            say!("  witness: {}", hb.witness.describe(&x));
            if let Some(f) = &hb.witness_flips {
                let bits: String = f.iter().map(|&b| if b { '1' } else { '0' }).collect();
                say!("  witness flips: {bits}");
            }
            say!("  evaluated: {}", hb.evaluated);
            say!("  exhaustive: {}", if hb.exhaustive { "yes" } else { "no" });
            say!("best bound: {}", sectors.min(hb.bound));
            Ok(Outcome::ok(out))
        }
        Command::Minors { input, max } => {
            let x = load(input.file.as_ref(), stdin)?;
            let minors = all_minors(&x, max)?;
            say!("# {} minors up to isomorphism", minors.len());
            let listed: Vec<_> = minors
                .iter()
                .enumerate()
                .map(|(k, f)| f.to_surface().with_name(format!("minor{k}")))
                .collect();
            out.push_str(&format::serialize_all(&listed));
            Ok(Outcome::ok(out))
        }
        Command::IsMinor { pair, max } => {
            let a = load(Some(&pair.a), stdin)?;
            let b = load(Some(&pair.b), stdin)?;
            let yes = is_minor(&a, &b, max)?;
            say!("{}", if yes { "MINOR" } else { "NOT A MINOR" });
            Ok(Outcome::answer(yes, out))
        }
        Command::Iso(pair) => {
            let a = load(Some(&pair.a), stdin)?;
            let b = load(Some(&pair.b), stdin)?;
            let yes = are_isomorphic(&a, &b);
            say!("{}", if yes { "ISOMORPHIC" } else { "NOT ISOMORPHIC" });
            if a.sectors().iter().chain(b.sectors()).any(|s| !s.orientable) {
                say!("note: nonorientable sectors are compared by degree only; the answer is approximate");
            }
            Ok(Outcome::answer(yes, out))
        }
        Command::Nminor {
            pair,
            depth,
            budget,
            json,
        } => {
            let a = load(Some(&pair.a), stdin)?;
            let b = load(Some(&pair.b), stdin)?;
            match neighborhood_minor_certificate_with_budget(&a, &b, depth, budget)? {
                Some(cert) => {
                    if json {
                        say!("{}", export::to_json(&cert));
                    } else {
                        say!("NEIGHBORHOOD MINOR ({} steps)", cert.steps.len());
                        for s in &cert.steps {
                            say!("  {}", s.step);
                        }
                        if a.is_connected() && b.is_connected() {
                            say!(
                                "genus bound for A: {}",
                                genus_bound_via_certificate(&a, &b, &cert, DEFAULT_CAP)?
                            );
                        }
                    }
                    Ok(Outcome::ok(out))
                }
                None => {
                    say!("NO CERTIFICATE WITHIN DEPTH {depth}");
                    Ok(Outcome::answer(false, out))
                }
            }
        }
        Command::OmegaCandidate { input, max } => {
            let x = load(input.file.as_ref(), stdin)?;
            let report = obstruction_candidate_s3(&x, max)?;
            let verdict = match report.verdict {
                Candidacy::Candidate => "CANDIDATE",
                Candidacy::NotCandidate => "NOT CANDIDATE",
                Candidacy::Unknown => "UNKNOWN",
            };
            say!("{verdict}: {}", report.note);
            if let Some(g) = &report.h1 {
                say!("H1: {g}");
            }
            say!("proper minors checked: {}", report.proper_minors);
            Ok(Outcome::answer(report.verdict != Candidacy::NotCandidate, out))
        }
        Command::Decompose(input) => {
            let x = load(input.file.as_ref(), stdin)?;
            let d = standard_decomposition(&x)?;
            let genera: Vec<String> = d.closed_genera.iter().map(u32::to_string).collect();
            say!("# closed surface genera by sector: {}", genera.join(" "));
            out.push_str(&format::serialize(&d.disks));
            Ok(Outcome::ok(out))
        }
        Command::Build { family, params } => {
            out.push_str(&format::serialize(&build(family, &params)?));
            Ok(Outcome::ok(out))
        }
        Command::Export {
            dot,
            json: _,
            what,
            input,
            cap,
        } => {
            let x = load(input.file.as_ref(), stdin)?;
            let text = match what {
                ExportTarget::Surface if dot => export::surface_dot(&x),
                ExportTarget::Surface => export::to_json(&x),
                ExportTarget::Spine => {
                    let s = SpineGraph::of(&x)?;
                    if dot {
                        export::spine_dot(&s)
                    } else {
                        export::to_json(&s)
                    }
                }
                ExportTarget::DualGraph | ExportTarget::Boundary => {
                    let witness = genus_upper_bound_heegaard(&x, cap, false)?.witness;
                    let b = boundary_surface(&x, &witness, None)?;
                    match what {
                        ExportTarget::Boundary if dot => export::boundary_dot(&b),
                        ExportTarget::Boundary => export::to_json(&b),
                        _ => {
                            let g = DualGraph::from_boundary(&x, &b);
                            if dot {
                                export::dual_graph_dot(&g)
                            } else {
                                export::to_json(&g)
                            }
                        }
                    }
                }
            };
            out.push_str(&text);
            if !out.ends_with('\n') {
                out.push('\n');
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} `{t}`")))
        })
        .collect()
}

fn param<'a>(params: &'a [String], i: usize, what: &str) -> Result<&'a str> {
    params
        .get(i)
        .map(String::as_str)
        .ok_or_else(|| Error::InvalidArgument(format!("missing {what}")))
}

fn build(family: Family, params: &[String]) -> Result<MultibranchedSurface> {
    let arity = match family {
        Family::Pants | Family::Obstruction => 0,
        Family::Seifert | Family::Rose => 1,
        Family::Graph => 2,
        Family::OneSector => 3,
    };
    if params.len() > arity {
        return Err(Error::InvalidArgument(format!(
            "unexpected parameter `{}`",
            params[arity]
        )));
    }
    match family {
        Family::Seifert => builders::seifert_example(&parse_list(param(params, 0, "degrees")?, "degree")?),
        Family::OneSector => {
            let genus = param(params, 0, "genus")?
                .parse()
                .map_err(|_| Error::InvalidArgument("bad genus".into()))?;
            let degrees: Vec<u64> = parse_list(param(params, 1, "degrees")?, "degree")?;
            let signs: Option<Vec<i8>> = params.get(2).map(|s| parse_list(s, "sign")).transpose()?;
            builders::one_sector(genus, &degrees, signs.as_deref())
        }
        Family::Pants => Ok(builders::pants_example()),
        Family::Rose => {
            let n = param(params, 0, "petal pairs")?
                .parse()
                .map_err(|_| Error::InvalidArgument("bad petal pair count".into()))?;
            builders::rose_times_circle(n)
        }
        Family::Graph => {
            let n = param(params, 0, "vertex count")?
                .parse()
                .map_err(|_| Error::InvalidArgument("bad vertex count".into()))?;
            let edges = match params.get(1).map(String::as_str) {
                None | Some("") => Vec::new(),
                Some(list) => list
                    .split(',')
                    .map(|e| {
                        let (u, v) = e
                            .split_once('-')
                            .ok_or_else(|| Error::InvalidArgument(format!("bad edge `{e}`")))?;
                        let p = |t: &str| t.parse().map_err(|_| Error::InvalidArgument(format!("bad edge `{e}`")));
                        Ok((p(u)?, p(v)?))
                    })
                    .collect::<Result<_>>()?,
            };
            builders::graph_to_mbs(n, &edges)
        }
        Family::Obstruction => Ok(builders::obstruction_example()),
    }
}
