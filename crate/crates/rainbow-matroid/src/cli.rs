//! Command-line surface: `rainbow-matroid <gen|solve|cover|check|verify>`.
//!
//! Exit codes: 0 success (for `solve`: certificate found), 10 proven
//! negative, 20 resource budget exhausted, 1 failed checks from `check`
//! or `verify`, 2 usage and input errors.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{cover_k3, cover_k41, cover_three, default_block_split};
use crate::error::{Error, Result};
use crate::fileio::{
    read_certificate, read_instance, write_certificate, write_instance, write_labels,
    CertificateFile, InstanceFile,
};
use crate::graph::random_k_multiple_tree;
use crate::matroid::{ElemSet, ElementId, Matroid};
use crate::partition::{PairPartition, Partition};
use crate::rainbow::log_cover;
use crate::reductions::{
    reduce_grst2f_to_rst2f, reduce_kcol_to_rstkf, reduce_nae_to_grst2f, reduce_rstkf_to_bstkf,
    GadgetLabels, KColInstance, RstkfInstance,
};
use crate::solver::{
    solve_bstkf, solve_kcol, solve_nae3sat, solve_rstkf, SearchConfig, SolveOutcome,
};
use crate::union::k_base_factorize;
use crate::verify::{
    verify_branching_factorization, verify_coloring, verify_cover, verify_nae_assignment,
    verify_tree_factorization, Report,
};

const SEED_ENV: &str = "RAINBOW_MATROID_SEED";

#[derive(Parser)]
#[command(
    name = "rainbow-matroid",
    version,
    about = "Rainbow spanning tree factorizations: generators, exact solvers, covers, verification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instance files, including hardness reductions.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Solve an instance exactly within budgets.
    Solve(SolveArgs),
    /// Cover a matroid instance by rainbow independent sets.
    Cover(CoverArgs),
    /// Check that an instance file is well formed and meets its promises.
    Check(CheckArgs),
    /// Re-check certificates against instances with standalone validators.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Union of k random spanning trees with a random edge pairing.
    RandomKmt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Instance file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Not-all-equal 3-SAT instance to a paired double tree (k = 2).
    NaeToGrst2f {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// 2-bounded classes to a 2-uniform pairing by doubling the graph.
    Grst2fToRst2f {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Coloring instance to a rainbow k-factorization instance.
    KcolToRstkf {
        input: PathBuf,
        /// Number of colors; required for bare graph inputs.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rainbow k-factorization instance to an indegree-bounded branching
    /// instance.
    RstkfToBstkf {
        input: PathBuf,
        /// Randomize edge orientations; default keeps stored order.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    /// Certificate output path; prints to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000_000)]
    node_budget: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    time_budget: f64,
}

#[derive(Args)]
struct CoverArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    algorithm: CoverAlgorithm,
    /// Certificate output path; prints to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CoverAlgorithm {
    /// Three rainbow sets covering a double tree.
    Three,
    /// At most 5α + 4β rainbow bases for k-fold unions, k ≥ 4.
    K41,
    /// At most 13 rainbow bases for threefold unions.
    K3,
    /// Rainbow bases halving the uncovered part each round.
    Log,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Alternating instance and certificate paths.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Worker threads for verifying many pairs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Human,
    Machine,
}

/// Parses process arguments, runs the command, and returns the exit code.
pub fn run() -> i32 {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(what) => cmd_gen(what),
        Command::Solve(a) => cmd_solve(a),
        Command::Cover(a) => cmd_cover(a),
        Command::Check(a) => cmd_check(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::invalid(format!("{SEED_ENV} must be a number, got `{s}`"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::invalid(format!("{SEED_ENV}: {e}"))),
    }
}

/// Seed precedence: explicit flag, then the environment, then 0.
fn effective_seed(flag: Option<u64>) -> Result<u64> {
    Ok(flag.or(env_seed()?).unwrap_or(0))
}

fn random_pairing(m: usize, seed: u64) -> Partition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut ids: Vec<u32> = (0..m as u32).collect();
    ids.shuffle(&mut rng);
    let classes = ids
        .chunks(2)
        .map(|c| c.iter().map(|&e| ElementId(e)).collect())
        .collect();
    let ground = (0..m as u32).map(ElementId).collect();
    Partition::new(ground, classes).expect("a pairing of distinct ids is disjoint")
}

fn rstkf_file(inst: &RstkfInstance) -> InstanceFile {
    InstanceFile::Rstkf {
        graph: inst.graph().clone(),
        partition: inst.partition().clone(),
        k: inst.k(),
    }
}

fn read_rstkf(path: &Path) -> Result<RstkfInstance> {
    match read_instance(path)? {
        InstanceFile::Rstkf { graph, partition, k } => RstkfInstance::new(graph, partition, k),
        other => Err(Error::invalid(format!(
            "expected an rstkf instance, got kind `{}`",
            other.kind()
        ))),
    }
}

fn write_with_labels(out: &Path, file: &InstanceFile, labels: &GadgetLabels) -> Result<i32> {
    write_instance(out, file)?;
    println!("wrote {}", out.display());
    if !labels.is_empty() {
        let side = out.with_extension("rml");
        write_labels(&side, labels)?;
        println!("wrote {}", side.display());
    }
    Ok(0)
}

fn cmd_gen(what: GenCommand) -> Result<i32> {
    match what {
        GenCommand::RandomKmt { n, k, seed, out } => {
            let seed = effective_seed(seed)?;
            let (graph, _) = random_k_multiple_tree(n, k, seed)?;
            let partition = random_pairing(graph.edge_count(), seed);
            write_instance(&out, &InstanceFile::Rstkf { graph, partition, k })?;
            println!("wrote {}", out.display());
            Ok(0)
        }
        GenCommand::NaeToGrst2f { input, out } => {
            let InstanceFile::Nae3Sat { instance } = read_instance(&input)? else {
                return Err(Error::invalid("input must be a nae3sat instance"));
            };
            let red = reduce_nae_to_grst2f(&instance)?;
            write_with_labels(&out, &rstkf_file(&red.instance), &red.labels)
        }
        GenCommand::Grst2fToRst2f { input, out } => {
            let red = reduce_grst2f_to_rst2f(&read_rstkf(&input)?)?;
            write_with_labels(&out, &rstkf_file(&red.instance), &red.labels)
        }
        GenCommand::KcolToRstkf { input, k, out } => {
            let (graph, file_k) = match read_instance(&input)? {
                InstanceFile::KCol { graph, k } => (graph, Some(k)),
                InstanceFile::Graph { graph } => (graph, None),
                other => {
                    return Err(Error::invalid(format!(
                        "expected a kcol or graph instance, got kind `{}`",
                        other.kind()
                    )))
                }
            };
            let k = match (k, file_k) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::invalid(format!(
                        "--k {a} contradicts the instance's k = {b}"
                    )))
                }
                (Some(a), _) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    return Err(Error::invalid("--k is required for bare graph inputs"))
                }
            };
            let red = reduce_kcol_to_rstkf(&KColInstance::new(graph, k)?)?;
            write_with_labels(&out, &rstkf_file(&red.instance), &red.labels)
        }
        GenCommand::RstkfToBstkf { input, seed, out } => {
            let orientation_seed = match seed {
                Some(s) => Some(s),
                None => env_seed()?,
            };
            let red = reduce_rstkf_to_bstkf(&read_rstkf(&input)?, orientation_seed)?;
            let b = &red.instance;
            let file = InstanceFile::Bstkf {
                digraph: b.digraph().clone(),
                bounds: b.bounds().to_vec(),
                k: b.k(),
            };
            write_with_labels(&out, &file, &red.labels)
        }
    }
}

fn map_outcome<T>(
    outcome: SolveOutcome<T>,
    wrap: impl FnOnce(T) -> CertificateFile,
) -> SolveOutcome<CertificateFile> {
    match outcome {
        SolveOutcome::Found(t) => SolveOutcome::Found(wrap(t)),
        SolveOutcome::No => SolveOutcome::No,
        SolveOutcome::Exhausted => SolveOutcome::Exhausted,
    }
}

fn cmd_solve(a: SolveArgs) -> Result<i32> {
    if !a.time_budget.is_finite() || a.time_budget <= 0.0 {
        return Err(Error::invalid("--time-budget must be positive seconds"));
    }
    let cfg = SearchConfig {
        node_budget: a.node_budget,
        time_budget: Duration::from_secs_f64(a.time_budget),
        ..SearchConfig::default()
    };
    let outcome = match read_instance(&a.input)? {
        InstanceFile::Rstkf { graph, partition, k } => {
            map_outcome(solve_rstkf(&graph, &partition, k, &cfg)?, CertificateFile::Trees)
        }
        InstanceFile::Bstkf { digraph, bounds, k } => {
            map_outcome(solve_bstkf(&digraph, &bounds, k, &cfg)?, CertificateFile::Subgraphs)
        }
        InstanceFile::Nae3Sat { instance } => match solve_nae3sat(&instance)? {
            Some(phi) => SolveOutcome::Found(CertificateFile::Assignment(phi)),
            None => SolveOutcome::No,
        },
        InstanceFile::KCol { graph, k } => match solve_kcol(&KColInstance::new(graph, k)?)? {
            Some(colors) => SolveOutcome::Found(CertificateFile::Coloring(colors)),
            None => SolveOutcome::No,
        },
        other => {
            return Err(Error::invalid(format!(
                "kind `{}` poses no decision problem; wrap it as rstkf, bstkf, nae3sat, or kcol",
                other.kind()
            )))
        }
    };
    match outcome {
        SolveOutcome::Found(cert) => {
            match &a.out {
                Some(path) => {
                    write_certificate(path, &cert)?;
                    println!("solved");
                }
                None => print!("{}", cert.to_text()),
            }
            Ok(0)
        }
        SolveOutcome::No => {
            println!("no");
            Ok(10)
        }
        SolveOutcome::Exhausted => {
            println!("exhausted");
            Ok(20)
        }
    }
}

fn cmd_cover(a: CoverArgs) -> Result<i32> {
    let InstanceFile::Rstkf { graph, partition, k } = read_instance(&a.input)? else {
        return Err(Error::invalid("cover needs an rstkf instance"));
    };
    let m = Matroid::graphic(&graph);
    let p = PairPartition::new(partition)?;
    let (entries, bound): (Vec<(ElemSet, bool)>, usize) = match a.algorithm {
        CoverAlgorithm::Three => {
            let (x1, x2, x3) = cover_three(&m, &p)?;
            (vec![(x1, true), (x2, false), (x3, false)], 3)
        }
        CoverAlgorithm::K41 => {
            let (alpha, beta) = default_block_split(k);
            let cover = cover_k41(&m, k, &p, alpha, beta)?;
            let entries = cover.entries.into_iter().map(|e| (e.elements, e.is_basis)).collect();
            (entries, 5 * alpha + 4 * beta)
        }
        CoverAlgorithm::K3 => {
            let cover = cover_k3(&m, &p)?;
            let entries = cover.entries.into_iter().map(|e| (e.elements, e.is_basis)).collect();
            (entries, 13)
        }
        CoverAlgorithm::Log => {
            let z = m.ground_elems();
            let bases = log_cover(&m, &z, &p)?;
            let bound = if z.is_empty() { 0 } else { z.len().ilog2() as usize + 1 };
            (bases.into_iter().map(|b| (b, true)).collect(), bound)
        }
    };
    println!("count {}", entries.len());
    println!("bound {bound}");
    let cert = CertificateFile::Cover(entries);
    match &a.out {
        Some(path) => {
            write_certificate(path, &cert)?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", cert.to_text()),
    }
    Ok(0)
}

fn check_instance(file: &InstanceFile) -> Report {
    let mut r = Report::new();
    match file {
        InstanceFile::Graph { .. } | InstanceFile::Digraph { .. } => {
            r.check("well-formed", None);
        }
        InstanceFile::Nae3Sat { instance } => {
            r.check("well-formed", None);
            let n = instance.variable_count();
            r.check(
                "solver-limit",
                (n > 25).then(|| format!("{n} variables exceed the enumeration limit of 25")),
            );
        }
        InstanceFile::KCol { graph, k } => {
            r.check("colors-at-least-3", (*k < 3).then(|| format!("k = {k}")));
            let n = graph.vertex_count();
            r.check(
                "solver-limit",
                (n > 20).then(|| format!("{n} vertices exceed the backtracking limit of 20")),
            );
        }
        InstanceFile::Rstkf { graph, partition, k } => {
            match RstkfInstance::new(graph.clone(), partition.clone(), *k) {
                Err(e) => r.fail("well-formed", e.to_string()),
                Ok(inst) => {
                    r.check("well-formed", None);
                    let n = graph.vertex_count();
                    let m = graph.edge_count();
                    let want = k * n.saturating_sub(1);
                    r.check(
                        "edge-count",
                        (m != want).then(|| format!("{m} edges, a k-fold tree union needs {want}")),
                    );
                    let widest = partition.max_class_size();
                    r.check(
                        "partition-bounded",
                        (widest > *k).then(|| format!("a class has {widest} elements, limit {k}")),
                    );
                    let factorable = m == want
                        && k_base_factorize(&inst.matroid(), *k).is_ok();
                    r.check(
                        "k-tree-union",
                        (!factorable)
                            .then(|| format!("edge set is not a union of {k} disjoint spanning trees")),
                    );
                }
            }
        }
        InstanceFile::Bstkf { digraph, bounds, k } => {
            r.check("well-formed", None);
            let n = digraph.vertex_count();
            let m = digraph.arc_count();
            let want = k * n.saturating_sub(1);
            r.check(
                "arc-count",
                (m != want).then(|| format!("{m} arcs, {k} spanning parts need {want}")),
            );
            // Each of the k parts may absorb at most bound(v) arcs at v.
            let total: u64 = bounds.iter().map(|&b| b as u64).sum::<u64>() * *k as u64;
            r.check(
                "bounds-feasible",
                ((total as usize) < m).then(|| {
                    format!("indegree bounds absorb {total} arcs across {k} parts, below {m}")
                }),
            );
        }
    }
    r
}

fn cmd_check(a: CheckArgs) -> Result<i32> {
    let file = read_instance(&a.input)?;
    let report = check_instance(&file);
    match a.format {
        OutputFormat::Human => print!("{}", report.render_human()),
        OutputFormat::Machine => print!("{}", report.render_machine()),
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn verify_pair(instance_path: &Path, certificate_path: &Path) -> Result<Report> {
    let instance = read_instance(instance_path)?;
    let certificate = read_certificate(certificate_path)?;
    Ok(match (instance, certificate) {
        (InstanceFile::Rstkf { graph, partition, k }, CertificateFile::Trees(trees)) => {
            verify_tree_factorization(&graph, &partition, k, &trees)
        }
        (InstanceFile::Graph { graph }, CertificateFile::Trees(trees)) => {
            let p = Partition::trivial((0..graph.edge_count() as u32).map(ElementId).collect());
            verify_tree_factorization(&graph, &p, trees.len(), &trees)
        }
        (InstanceFile::Rstkf { graph, partition, .. }, CertificateFile::Cover(entries)) => {
            let m = Matroid::graphic(&graph);
            let z = m.ground_elems();
            verify_cover(&m, &partition, &z, &entries)
        }
        (InstanceFile::Bstkf { digraph, bounds, k }, CertificateFile::Subgraphs(parts)) => {
            verify_branching_factorization(&digraph, &bounds, k, &parts)
        }
        (InstanceFile::Nae3Sat { instance }, CertificateFile::Assignment(phi)) => {
            verify_nae_assignment(&instance, &phi)
        }
        (InstanceFile::KCol { graph, k }, CertificateFile::Coloring(colors)) => {
            match KColInstance::new(graph, k) {
                Ok(inst) => verify_coloring(&inst, &colors),
                Err(e) => {
                    let mut r = Report::new();
                    r.fail("instance-valid", e.to_string());
                    r
                }
            }
        }
        (instance, certificate) => {
            let mut r = Report::new();
            r.fail(
                "kind-match",
                format!(
                    "{} certificate against {} instance",
                    certificate.kind(),
                    instance.kind()
                ),
            );
            r
        }
    })
}

fn run_pairs(pairs: &[(PathBuf, PathBuf)], jobs: usize) -> Vec<Result<Report>> {
    if jobs <= 1 || pairs.len() <= 1 {
        return pairs.iter().map(|(i, c)| verify_pair(i, c)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Report>>>> =
        pairs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.min(pairs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= pairs.len() {
                    break;
                }
                let result = verify_pair(&pairs[i].0, &pairs[i].1);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every pair is processed"))
        .collect()
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    if a.files.len() % 2 != 0 {
        return Err(Error::invalid(
            "verify takes alternating instance and certificate paths",
        ));
    }
    if a.jobs == 0 {
        return Err(Error::invalid("--jobs must be positive"));
    }
    let pairs: Vec<(PathBuf, PathBuf)> =
        a.files.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    let results = run_pairs(&pairs, a.jobs);
    let mut all_pass = true;
    for ((ipath, cpath), result) in pairs.iter().zip(results) {
        let tag = format!("{}:{}", ipath.display(), cpath.display());
        match result {
            Ok(report) => {
                all_pass &= report.all_pass();
                match a.format {
                    OutputFormat::Human => {
                        println!("== {} {}", ipath.display(), cpath.display());
                        print!("{}", report.render_human());
                    }
                    OutputFormat::Machine => {
                        for c in &report.checks {
                            if c.pass {
                                println!("pass {tag} {}", c.name);
                            } else {
                                println!("fail {tag} {} {}", c.name, c.detail);
                            }
                        }
                    }
                }
            }
            Err(e) => {
                all_pass = false;
                match a.format {
                    OutputFormat::Human => {
                        println!("== {} {}", ipath.display(), cpath.display());
                        println!("  FAIL  read: {e}");
                    }
                    OutputFormat::Machine => println!("fail {tag} read {e}"),
                }
            }
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}
