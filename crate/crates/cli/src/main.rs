use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use minorstress::catalog;
use minorstress::certify::{certify_with_seeds, replay_certificate, Certificate, CertifyOutcome, Verify};
use minorstress::minors::{check_mader, has_minor_with_budget, is_linkless, mader_bound, petersen_family, DEFAULT_BUDGET};
use minorstress::rigidity::analyze_rigidity;
use minorstress::shifting::{algebraic_shift, ShiftKind};
use minorstress::surface::{surface_obstruction, Genus};
use minorstress::{trial_seeds, Graph, DEFAULT_SEED, DEFAULT_TRIALS};

/// Generic rigidity, algebraic shifting and clique minors of graphs.
///
/// GRAPH arguments are edge-list files (`n m` header, then `u v` per line),
/// `-` for standard input, or `catalog:NAME` for a built-in graph.
#[derive(Parser)]
#[command(name = "minorstress", version)]
struct Cli {
    /// Print a JSON run report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generic rank, stress dimension and rigidity in dimension D
    Rigidity {
        graph: String,
        #[arg(short = 'd', long = "dim")]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Exterior or symmetric algebraic shifting
    Shift {
        graph: String,
        #[arg(long, default_value = "symmetric")]
        kind: ShiftKind,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Search for a minor; PATTERN is a catalog name or an edge-list file
    Minor {
        graph: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Decide linkless embeddability via the Petersen family
    Linkless { graph: String },
    /// Certify generic (r-2)-stress freeness or find a K_r minor
    Certify {
        graph: String,
        #[arg(short = 'r')]
        r: usize,
        /// Replay the certificate with numeric leaf checks
        #[arg(long)]
        verify: bool,
        /// With --verify, also check every internal node numerically
        #[arg(long, requires = "verify")]
        deep: bool,
        /// Write the certificate text to this file
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Replay a certificate file against a graph
    Replay {
        graph: String,
        certificate: String,
        /// Skip the numeric leaf checks
        #[arg(long)]
        structural: bool,
        #[arg(long, conflicts_with = "structural")]
        deep: bool,
    },
    /// Shifting obstruction to embedding in the surface of the given genus
    Surface {
        graph: String,
        /// Genus as `2`, `1/2` or `0.5`
        #[arg(long)]
        genus: Genus,
        #[arg(long, default_value = "symmetric")]
        kind: ShiftKind,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compare the edge count with the bound for K_r-minor-free graphs
    Mader {
        graph: String,
        #[arg(short = 'r')]
        r: usize,
    },
    /// Built-in graphs
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names, sizes and tags of the listed graphs
    List,
    /// Print a graph in edge-list format
    Dump { name: String },
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    input_digest: Option<String>,
    seeds: Vec<u64>,
    results: Value,
    timing_ms: f64,
}

struct Outcome {
    digest: Option<String>,
    seeds: Vec<u64>,
    results: Value,
    text: String,
}

fn load_graph(spec: &str) -> Result<Graph> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(catalog::get(name)?);
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    };
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {spec}"))
}

fn load_pattern(spec: &str) -> Result<Graph> {
    if spec.starts_with("catalog:") || spec == "-" || Path::new(spec).exists() {
        return load_graph(spec);
    }
    catalog::get(spec).with_context(|| format!("pattern {spec:?} is neither a file nor a catalog name"))
}

fn edges_json(g: &Graph) -> Value {
    json!(g.edges().map(|e| [e.u(), e.v()]).collect::<Vec<_>>())
}

fn edges_text(g: &Graph) -> String {
    g.edges().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(command: &Command) -> Result<Outcome> {
    Ok(match command {
        Command::Rigidity { graph, d, trials, seed } => {
            let g = load_graph(graph)?;
            let rep = analyze_rigidity(&g, *d, *trials, *seed)?;
            let text = format!(
                "n {} e {} d {}\nrank {} (target {})\nstress_dim {}\nstress_free {}\nrigid {}\ntrial_ranks {:?}\n",
                rep.n, rep.e, rep.d, rep.rank, rep.target_rank, rep.stress_dim, rep.is_stress_free, rep.is_rigid, rep.trial_ranks
            );
            Outcome { digest: Some(g.digest()), seeds: rep.seeds.clone(), results: serde_json::to_value(&rep)?, text }
        }
        Command::Shift { graph, kind, trials, seed } => {
            let g = load_graph(graph)?;
            let s = algebraic_shift(&g, *kind, *trials, *seed)?;
            let chi = s.chromatic_number()?;
            let text = format!(
                "kind {}\nedges {}\nshifted {}\nchromatic_number {}\nconsensus {}\n",
                s.kind,
                s.graph.edge_count(),
                edges_text(&s.graph),
                chi,
                s.consensus
            );
            let results = json!({
                "kind": s.kind,
                "n": s.n,
                "edges": edges_json(&s.graph),
                "chromatic_number": chi,
                "trials": s.trials,
                "consensus": s.consensus,
            });
            Outcome { digest: Some(g.digest()), seeds: s.seeds, results, text }
        }
        Command::Minor { graph, pattern, budget } => {
            let g = load_graph(graph)?;
            let h = load_pattern(pattern)?;
            let w = has_minor_with_budget(&g, &h, *budget)?;
            let text = match &w {
                Some(w) => format!("minor found\nbranch_sets {}\n", w.branch_sets_text()),
                None => "none\n".to_string(),
            };
            let results = json!({
                "pattern": pattern,
                "found": w.is_some(),
                "branch_sets": w.as_ref().map(|w| w.branch_sets.clone()),
            });
            Outcome { digest: Some(g.digest()), seeds: Vec::new(), results, text }
        }
        Command::Linkless { graph } => {
            let g = load_graph(graph)?;
            let l = is_linkless(&g)?;
            let family = petersen_family()?;
            let obstruction = l.obstruction.as_ref().map(|(i, w)| {
                // name the member by isomorphism with the labelled catalog copies
                let name = catalog::petersen_family_named()
                    .into_iter()
                    .find(|(_, c)| c.is_isomorphic(&family[*i]))
                    .map_or("unnamed", |(n, _)| n);
                (name, w)
            });
            let mut text = format!("linkless {}\n", l.linkless);
            if let Some((name, w)) = &obstruction {
                let _ = writeln!(text, "obstruction {name}\nbranch_sets {}", w.branch_sets_text());
            }
            let results = json!({
                "linkless": l.linkless,
                "obstruction": obstruction.map(|(name, w)| json!({"member": name, "branch_sets": w.branch_sets})),
            });
            Outcome { digest: Some(g.digest()), seeds: Vec::new(), results, text }
        }
        Command::Certify { graph, r, verify, deep, out, trials, seed } => {
            let g = load_graph(graph)?;
            let seeds = trial_seeds(*seed, *trials);
            let outcome = certify_with_seeds(&g, *r, &seeds)?;
            let mut text = String::new();
            let results = match &outcome {
                CertifyOutcome::Certificate(c) => {
                    let cert_text = c.to_text();
                    let mode = if *deep { Verify::Deep } else { Verify::Leaves };
                    if *verify {
                        replay_certificate(&g, c, mode).context("replaying the certificate")?;
                    }
                    if let Some(path) = out {
                        fs::write(path, &cert_text).with_context(|| format!("writing {path}"))?;
                    }
                    let _ = writeln!(text, "certificate: generically {}-stress free", r.saturating_sub(2));
                    text.push_str(&cert_text);
                    if *verify {
                        let _ = writeln!(text, "replay ok");
                    }
                    json!({"outcome": "certificate", "certificate": cert_text, "verified": verify})
                }
                CertifyOutcome::Witness(w) => {
                    let _ = writeln!(text, "K{r} minor\nbranch_sets {}", w.branch_sets_text());
                    json!({"outcome": "witness", "branch_sets": w.branch_sets})
                }
            };
            Outcome { digest: Some(g.digest()), seeds, results, text }
        }
        Command::Replay { graph, certificate, structural, deep } => {
            let g = load_graph(graph)?;
            let raw = fs::read_to_string(certificate).with_context(|| format!("reading {certificate}"))?;
            let c: Certificate = raw.parse().with_context(|| format!("parsing {certificate}"))?;
            let mode = match (structural, deep) {
                (true, _) => Verify::Structural,
                (_, true) => Verify::Deep,
                _ => Verify::Leaves,
            };
            let verdict = replay_certificate(&g, &c, mode);
            let text = match &verdict {
                Ok(()) => "replay ok\n".to_string(),
                Err(f) => format!("replay failed {f}\n"),
            };
            let results = json!({
                "accepted": verdict.is_ok(),
                "failure": verdict.as_ref().err().map(|f| json!({"path": f.path, "reason": f.reason})),
            });
            Outcome { digest: Some(g.digest()), seeds: c.seeds.clone(), results, text }
        }
        Command::Surface { graph, genus, kind, trials, seed } => {
            let g = load_graph(graph)?;
            let rep = surface_obstruction(&g, *genus, *kind, *trials, *seed)?;
            let text = format!(
                "genus {}\nheawood {}\nmax_r {}\nobstructed {}\nstripped_n {}\nstripped_obstructed {}\n",
                rep.genus, rep.heawood, rep.max_r, rep.obstructed, rep.stripped_n, rep.stripped_obstructed
            );
            Outcome { digest: Some(g.digest()), seeds: rep.seeds.clone(), results: serde_json::to_value(&rep)?, text }
        }
        Command::Mader { graph, r } => {
            let g = load_graph(graph)?;
            let bound = mader_bound(*r, g.n())?;
            let pass = check_mader(&g, *r)?;
            let text = format!("n {} e {} r {}\nbound {}\npass {}\n", g.n(), g.edge_count(), r, bound, pass);
            let results = json!({"n": g.n(), "e": g.edge_count(), "r": r, "bound": bound, "pass": pass});
            Outcome { digest: Some(g.digest()), seeds: Vec::new(), results, text }
        }
        Command::Catalog { action: CatalogAction::List } => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in catalog::list() {
                let tags: Vec<String> = e.tags.iter().map(|t| t.to_string()).collect();
                let _ = writeln!(text, "{}\tn={}\te={}\t{}", e.name, e.graph.n(), e.graph.edge_count(), tags.join(","));
                rows.push(json!({"name": e.name, "n": e.graph.n(), "e": e.graph.edge_count(), "tags": tags, "provenance": e.provenance}));
            }
            Outcome { digest: None, seeds: Vec::new(), results: json!(rows), text }
        }
        Command::Catalog { action: CatalogAction::Dump { name } } => {
            let g = catalog::get(name)?;
            let text = g.to_edge_list();
            let results = json!({"name": name, "n": g.n(), "edges": edges_json(&g)});
            Outcome { digest: Some(g.digest()), seeds: Vec::new(), results, text }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let report = RunReport {
                    command: std::env::args().skip(1).collect(),
                    input_digest: out.digest,
                    seeds: out.seeds,
                    results: out.results,
                    timing_ms: start.elapsed().as_secs_f64() * 1e3,
                };
                match serde_json::to_string_pretty(&report) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::FAILURE;
                    }
                }
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn patterns_resolve_by_name() {
        assert_eq!(load_pattern("K5").unwrap(), Graph::complete(5));
        assert!(load_pattern("no-such-pattern").is_err());
    }

    #[test]
    fn unknown_catalog_graph() {
        assert!(load_graph("catalog:nothing").is_err());
    }
}
