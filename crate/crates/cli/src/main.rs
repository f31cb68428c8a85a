//! `pcham`: command-line front end.
//!
//! Exit codes: 0 success, 1 negative result, 2 budget exhausted, 3 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use pcham_core::absorbers::{count_absorbers, AbsorberTarget};
use pcham_core::connecting::{connect_ell, connect_loose, connect_tight, default_max_len};
use pcham_core::covering::greedy_path_cover;
use pcham_core::exact::{find_pc_hamilton_exact, ExactOutcome, SearchBudget};
use pcham_core::generators::{gen_complete, gen_dirac, gen_loose_host, Coloring, Removal};
use pcham_core::harness::{run_experiment, to_csv, Plan};
use pcham_core::paths::{edges_properly_colored, is_hamilton};
use pcham_core::pipeline::{find_pc_hamilton_absorbing, parse_variant, PipelineConfig};
use pcham_core::reservoir::{check_reservoir, sample_reservoir, ReservoirSpec};
use pcham_core::{Certificate, ColoredKGraph, Error};

#[derive(Parser)]
#[command(
    name = "pcham",
    version,
    about = "Properly colored Hamilton cycles in colored hypergraphs"
)]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check certificate lines against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Exhaustive search for a pc Hamilton (k,l)-cycle.
    SolveExact {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 200_000_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 120)]
        time_limit: u64,
    },
    /// Absorbing-method solver; stage report goes to stderr or `--report`.
    SolveAbsorb {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        ell: usize,
        /// `key=value` configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        paper_constants: bool,
        /// tight, ell or loose (required for k=3, l=1).
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Connect two path ends.
    Connect {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Comma-separated start end (2k-2 vertices tight, l otherwise).
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "")]
        avoid: String,
        #[arg(long)]
        cx: Option<u32>,
        #[arg(long)]
        cy: Option<u32>,
        /// Use the 7-vertex loose connector (k=3, l=1).
        #[arg(long)]
        loose: bool,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Greedy cover by disjoint pc paths.
    Cover {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 8)]
        q: usize,
        #[arg(long, default_value_t = 3)]
        min_edges: usize,
    },
    /// Count absorbers for a target.
    CountAbsorbers {
        #[arg(long)]
        instance: PathBuf,
        /// vertex, set or pair.
        #[arg(long)]
        kind: String,
        /// Comma-separated target vertices.
        #[arg(long)]
        target: String,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        pc_only: bool,
        #[arg(long)]
        stop_at: Option<usize>,
    },
    /// Sample a reservoir on `0..n`, or on the vertices of an instance.
    SampleReservoir {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 64)]
        retries: usize,
    },
    /// Generate an instance.
    Gen {
        /// complete, dirac or loose.
        #[arg(long, default_value = "complete")]
        preset: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
        /// rainbow, mono, link:V, bounded:T[:S].
        #[arg(long, default_value = "rainbow")]
        coloring: String,
        /// random or structured (dirac preset).
        #[arg(long, default_value = "random")]
        removal: String,
    },
    /// Run a sweep plan and emit CSV.
    Experiment {
        #[arg(long)]
        plan: PathBuf,
        /// Blank the wall-time column for byte-identical reruns.
        #[arg(long)]
        no_wall: bool,
    },
}

/// A failure with its exit code.
struct Fail(u8, anyhow::Error);

impl From<anyhow::Error> for Fail {
    fn from(e: anyhow::Error) -> Self {
        Fail(3, e)
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::StagedFailure { .. }
            | Error::Infeasible(_)
            | Error::SamplingFailure(_)
            | Error::ContradictionFlag(_) => 1,
            Error::Internal(_) => 2,
            _ => 3,
        };
        Fail(code, e.into())
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<ColoredKGraph, Fail> {
    Ok(ColoredKGraph::parse(&read(path)?)?)
}

fn ids(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| anyhow!("bad vertex '{s}'")))
        .collect()
}

/// Main output plus the exit code to report.
type Outcome = (String, u8);

fn run(cli: &Cli) -> Result<Outcome, Fail> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Verify { instance, cert } => {
            let h = load(instance)?;
            let certs = Certificate::parse_all(&read(cert)?)?;
            let mut out = String::new();
            let mut all = true;
            for (i, c) in certs.iter().enumerate() {
                let edges_in = c.edge_list().iter().all(|e| h.has_edge(e));
                let pc = edges_in && edges_properly_colored(&h, &c.edge_list())?;
                let ham = match c {
                    Certificate::Cycle(cy) => Some(is_hamilton(&h, cy)),
                    Certificate::Path(_) => None,
                };
                let ok = pc && ham.unwrap_or(true);
                all &= ok;
                let ham = ham.map_or("n/a".to_string(), |b| b.to_string());
                out.push_str(&format!(
                    "{i} edges_present={edges_in} properly_colored={pc} hamilton={ham} valid={ok}\n"
                ));
            }
            Ok((out, if all { 0 } else { 1 }))
        }
        Cmd::SolveExact {
            instance,
            ell,
            max_nodes,
            time_limit,
        } => {
            let h = load(instance)?;
            let budget = SearchBudget::new(*max_nodes, Duration::from_secs(*time_limit))?;
            Ok(match find_pc_hamilton_exact(&h, *ell, budget)? {
                ExactOutcome::Found(c) => (format!("{}\n", Certificate::Cycle(c)), 0),
                ExactOutcome::None => ("# none\n".into(), 1),
                ExactOutcome::BudgetExhausted => ("# budget exhausted\n".into(), 2),
            })
        }
        Cmd::SolveAbsorb {
            instance,
            ell,
            config,
            paper_constants,
            variant,
            report,
        } => {
            let h = load(instance)?;
            let mut cfg = match config {
                Some(p) => PipelineConfig::parse(&read(p)?)?,
                None => PipelineConfig::default(),
            };
            cfg.seed = seed;
            cfg.paper_constants |= *paper_constants;
            if let Some(v) = variant {
                cfg.variant = Some(parse_variant(v)?);
            }
            let run = find_pc_hamilton_absorbing(&h, *ell, &cfg)?;
            let mut csv = String::from("stage,outcome,counters,detail\n");
            for r in &run.reports {
                csv.push_str(&r.csv_row());
                csv.push('\n');
            }
            match report {
                Some(p) => fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?,
                None => eprint!("{csv}"),
            }
            Ok(match run.cycle {
                Some(c) => (format!("{}\n", Certificate::Cycle(c)), 0),
                None => {
                    let why = run.failure.map_or("unknown".to_string(), |e| e.to_string());
                    (format!("# no cycle: {why}\n"), 1)
                }
            })
        }
        Cmd::Connect {
            instance,
            ell,
            from,
            to,
            avoid,
            cx,
            cy,
            loose,
            max_len,
        } => {
            let h = load(instance)?;
            let (x, y, avoid) = (ids(from)?, ids(to)?, ids(avoid)?);
            let k = h.k();
            let path = if *ell == k - 1 {
                let len = max_len.unwrap_or_else(|| default_max_len(k, 0.1, h.order()));
                connect_tight(&h, &x, &y, &avoid, len, seed)?
            } else if *loose {
                let (&[a], &[b]) = (x.as_slice(), y.as_slice()) else {
                    return Err(Fail(3, anyhow!("loose ends are single vertices")));
                };
                connect_loose(&h, a, b, *cx, *cy, &avoid, seed)?
            } else {
                connect_ell(&h, *ell, &x, &y, *cx, *cy, &avoid, seed)?
            };
            Ok(match path {
                Some(p) => (format!("{}\n", Certificate::Path(p)), 0),
                None => ("# no connecting path\n".into(), 1),
            })
        }
        Cmd::Cover {
            instance,
            ell,
            delta,
            q,
            min_edges,
        } => {
            let h = load(instance)?;
            let c = greedy_path_cover(&h, *ell, *delta, *q, *min_edges, seed)?;
            let mut out = String::new();
            for p in &c.paths {
                out.push_str(&format!("{}\n", Certificate::Path(p.clone())));
            }
            let covered: usize = c.paths.iter().map(|p| p.len()).sum();
            out.push_str(&format!(
                "# paths={} covered={} uncovered={} shortfall={}\n",
                c.paths.len(),
                covered,
                c.uncovered.len(),
                c.shortfall
            ));
            Ok((out, if c.shortfall { 1 } else { 0 }))
        }
        Cmd::CountAbsorbers {
            instance,
            kind,
            target,
            ell,
            pc_only,
            stop_at,
        } => {
            let h = load(instance)?;
            let t = ids(target)?;
            let target = match (kind.as_str(), t.as_slice()) {
                ("vertex", &[v]) => AbsorberTarget::Vertex(v),
                ("pair", &[x, y]) => AbsorberTarget::Pair(x, y),
                ("set", _) => {
                    let l = ell.ok_or_else(|| anyhow!("set targets need --ell"))?;
                    AbsorberTarget::Set { l, set: t.clone() }
                }
                _ => return Err(Fail(3, anyhow!("target does not match kind '{kind}'"))),
            };
            let c = count_absorbers(&h, &target, *pc_only, *stop_at)?;
            Ok((format!("{c}\n"), 0))
        }
        Cmd::SampleReservoir {
            n,
            instance,
            p,
            retries,
        } => {
            let vs: Vec<usize> = match (n, instance) {
                (_, Some(f)) => load(f)?.vertices(),
                (Some(n), None) => (0..*n).collect(),
                (None, None) => return Err(Fail(3, anyhow!("give --n or --instance"))),
            };
            let mut spec = ReservoirSpec::new(*p);
            spec.retries = *retries;
            let r = sample_reservoir(&vs, &spec, seed)?;
            let check = check_reservoir(&vs, &spec, &r.r);
            let list: Vec<String> = r.r.iter().map(|v| v.to_string()).collect();
            Ok((
                format!(
                    "{}\n# size={} attempts={} passed={}\n",
                    list.join(" "),
                    r.r.len(),
                    r.attempts,
                    check.passed()
                ),
                0,
            ))
        }
        Cmd::Gen {
            preset,
            n,
            k,
            gamma,
            coloring,
            removal,
        } => {
            let c = Coloring::parse(coloring, *k)?;
            let (h, note) = match preset.as_str() {
                "complete" => (gen_complete(*n, *k, &c, seed)?, None),
                "dirac" => {
                    let removal = match removal.as_str() {
                        "random" => Removal::Random,
                        "structured" => Removal::Structured,
                        _ => return Err(Fail(3, anyhow!("unknown removal '{removal}'"))),
                    };
                    let g = gen_dirac(*n, *k, *gamma, removal, &c, seed)?;
                    (g.h, g.note)
                }
                "loose" => {
                    let g = gen_loose_host(*n, *gamma, &c, seed)?;
                    (g.h, g.note)
                }
                _ => return Err(Fail(3, anyhow!("unknown preset '{preset}'"))),
            };
            let mut out = String::new();
            if let Some(note) = note {
                out.push_str(&format!("# {note}\n"));
            }
            out.push_str(&h.to_text());
            Ok((out, 0))
        }
        Cmd::Experiment { plan, no_wall } => {
            let plan = Plan::parse(&read(plan)?)?;
            let rows = run_experiment(&plan, cli.workers)?;
            Ok((to_csv(&rows, !no_wall), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(3)
                }
            }
        }
        Err(Fail(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
