//! Command-line front end for the Ryser design toolkit.
//!
//! All subcommands read and write the JSON design document defined in
//! [`format`] and default `--in`/`--out` to stdin/stdout so they compose in
//! pipes. Reports go to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success or clean verification, 1 verification failure or a
//! Type-2 candidate, 2 usage error, 3 I/O or parse error.

pub mod format;
pub mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use format::{document_from_system, parse, serialize, DesignDocument, DocumentMetadata};
use report::{
    class_str, kind_summary, ClassMemberReport, ClassReport, CoexistenceRow, EvenBlockReport,
    FoundDesignJson, HypothesisReport, LedgerFields, ProfileReport, ProfileRow, RejectedPairJson,
    ScanCellJson, ScanJson, SearchJson, SearchTripleJson, TwoSizeJson, Type1Report, VerifyReport,
    WitnessReport,
};
use ryser_core::complement::complement_at;
use ryser_core::design::classify;
use ryser_core::equivalence::{
    check_hypothesis_h, enumerate_class, is_type1, is_type1_via_class, CoexistenceReport,
    EvenBlockOutcome,
};
use ryser_core::generators::{fano, find_difference_set, paley, pg2};
use ryser_core::invariants::{block_profile, compute_ledger, two_block_size_analysis, TwoSizeAnalysis};
use ryser_core::search::{conjecture_scan, search_ryser, SearchConfig, SearchError};
use ryser_core::{DesignKind, SetSystem};
use serde::Serialize;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser)]
#[command(
    name = "ryser",
    version,
    about = "Generate, transform, verify and search Ryser designs"
)]
struct Cli {
    /// Emit machine-readable JSON reports (exact rationals as "p/q").
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a seed design document.
    Generate {
        #[command(subcommand)]
        seed: Seed,
    },
    /// Complement a design at one block and write the resulting design.
    Complement {
        /// Input document (default: stdin).
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        /// 0-based index of the block to complement at.
        #[arg(long, value_name = "I")]
        block: usize,
        /// Output file (default: stdout).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Classify a design and check every parameter and block identity.
    Verify {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Tabulate size, t, tau1, tau2 and class for every block.
    Profile {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Enumerate the complementation class of a design.
    #[command(name = "equiv-class")]
    EquivClass {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        /// Write each member as member-NN.json into this directory.
        #[arg(long, value_name = "DIR")]
        emit_members: Option<PathBuf>,
    },
    /// Decide whether the design's class contains a symmetric member.
    #[command(name = "is-type1")]
    IsType1 {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        /// Cross-check the block-vs-point-class witness test against a
        /// full class enumeration.
        #[arg(long)]
        verify_slow_path: bool,
    },
    /// Check that no class member carries a large and a small block at once.
    #[command(name = "check-h")]
    CheckH {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Complement at an equal-size block pair to force an even block size.
    #[command(name = "even-block")]
    EvenBlock {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// For designs with sizes {k, 2*lambda}: block-count quadratic and
    /// replication product identity.
    #[command(name = "analyze-two-size")]
    AnalyzeTwoSize {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Exhaustively enumerate the Ryser designs of one (v, lambda) cell.
    Search {
        /// Number of points (and blocks).
        #[arg(long, value_name = "N")]
        v: usize,
        /// Constant pairwise intersection size.
        #[arg(long, value_name = "L")]
        lambda: usize,
        /// Wall-clock budget in seconds; exceeding it yields a partial,
        /// clearly-marked report.
        #[arg(long, value_name = "SECS")]
        budget: Option<u64>,
        /// Worker threads (default: RYSER_WORKERS, then 1).
        #[arg(long, value_name = "W")]
        workers: Option<usize>,
    },
    /// Sweep every cell with 2 <= v <= v-max and 1 <= lambda <= lambda-max.
    Scan {
        /// Largest point count to sweep.
        #[arg(long, value_name = "N")]
        v_max: usize,
        /// Largest intersection size to sweep.
        #[arg(long, value_name = "L")]
        lambda_max: usize,
        /// Wall-clock budget in seconds for the whole sweep.
        #[arg(long, value_name = "SECS")]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Seed {
    /// The (7, 3, 1) plane.
    Fano {
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The projective plane of order Q, for Q in {2, 3, 4, 5, 7}.
    Pg2 {
        /// Plane order.
        q: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The Paley design on a prime Q congruent to 3 mod 4.
    Paley {
        /// The prime modulus.
        q: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Develop the lexicographically least cyclic (V, K, LAMBDA)
    /// difference set.
    Diffset {
        /// Number of points.
        v: usize,
        /// Block size.
        k: usize,
        /// Pairwise intersection size of the developed design.
        lambda: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

/// A command that got as far as running but could not finish cleanly.
enum Failure {
    /// Argument values the toolkit rejects (unsupported order, cell too
    /// large, ...).
    Usage(String),
    /// The input design fails what the command checks or requires.
    Finding(String),
    /// Reading, writing or parsing a document failed.
    Io(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Finding(_) => EXIT_FINDING,
            Failure::Io(_) | Failure::Parse(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Finding(m) | Failure::Io(m) | Failure::Parse(m) => m,
        }
    }
}

/// Runs the whole tool against injected streams and returns the exit code.
/// `workers_env` carries the value of RYSER_WORKERS, if set.
pub fn run_cli(
    args: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    workers_env: Option<&str>,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", rendered);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", rendered);
                    EXIT_USAGE
                }
            };
        }
    };

    let env_workers = match workers_env {
        None => None,
        Some(raw) => match raw.trim().parse::<usize>() {
            Ok(n) => Some(n),
            Err(_) => {
                let _ = writeln!(
                    stderr,
                    "warning: ignoring unparsable RYSER_WORKERS value {:?}",
                    raw
                );
                None
            }
        },
    };

    match dispatch(cli.command, cli.json, stdin, stdout, env_workers) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            failure.code()
        }
    }
}

fn dispatch(
    command: Cmd,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    env_workers: Option<usize>,
) -> Result<i32, Failure> {
    match command {
        Cmd::Generate { seed } => cmd_generate(seed, stdout),
        Cmd::Complement { input, block, out } => cmd_complement(&input, block, &out, stdin, stdout),
        Cmd::Verify { input } => cmd_verify(&input, json, stdin, stdout),
        Cmd::Profile { input } => cmd_profile(&input, json, stdin, stdout),
        Cmd::EquivClass {
            input,
            emit_members,
        } => cmd_equiv_class(&input, &emit_members, json, stdin, stdout),
        Cmd::IsType1 {
            input,
            verify_slow_path,
        } => cmd_is_type1(&input, verify_slow_path, json, stdin, stdout),
        Cmd::CheckH { input } => cmd_check_h(&input, json, stdin, stdout),
        Cmd::EvenBlock { input } => cmd_even_block(&input, json, stdin, stdout),
        Cmd::AnalyzeTwoSize { input } => cmd_analyze_two_size(&input, json, stdin, stdout),
        Cmd::Search {
            v,
            lambda,
            budget,
            workers,
        } => cmd_search(v, lambda, budget, workers.or(env_workers), json, stdout),
        Cmd::Scan {
            v_max,
            lambda_max,
            budget,
        } => cmd_scan(v_max, lambda_max, budget, env_workers, json, stdout),
    }
}

// --------------------------------------------------------------------------
// plumbing

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Io(format!("reading {}: {}", p.display(), e))),
        None => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(format!("reading stdin: {}", e)))?;
            Ok(text)
        }
    }
}

fn load_design(
    path: &Option<PathBuf>,
    stdin: &mut dyn Read,
) -> Result<(SetSystem, DesignDocument), Failure> {
    let text = read_input(path, stdin)?;
    parse(&text).map_err(|e| Failure::Parse(e.to_string()))
}

fn write_document(
    doc: &DesignDocument,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let text = serialize(doc);
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Io(format!("writing {}: {}", p.display(), e))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("writing stdout: {}", e))),
    }
}

fn emit_json<T: Serialize>(value: &T, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports always serialize");
    writeln!(stdout, "{}", text).map_err(|e| Failure::Io(format!("writing stdout: {}", e)))
}

fn emit_text(text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Io(format!("writing stdout: {}", e)))
}

fn sizes_ascending(system: &SetSystem) -> Vec<usize> {
    let mut sizes: Vec<usize> = system.blocks().iter().map(|b| b.len()).collect();
    sizes.sort_unstable();
    sizes
}

// --------------------------------------------------------------------------
// commands

fn cmd_generate(seed: Seed, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (system, name, provenance, out) = match seed {
        Seed::Fano { out } => (
            fano(),
            "fano".to_string(),
            "difference set {0, 1, 3} mod 7".to_string(),
            out,
        ),
        Seed::Pg2 { q, out } => (
            pg2(q).map_err(|e| Failure::Usage(e.to_string()))?,
            format!("pg2({})", q),
            format!("planar difference set mod {}", q * q + q + 1),
            out,
        ),
        Seed::Paley { q, out } => (
            paley(q).map_err(|e| Failure::Usage(e.to_string()))?,
            format!("paley({})", q),
            format!("quadratic residues mod {}", q),
            out,
        ),
        Seed::Diffset { v, k, lambda, out } => {
            let found = find_difference_set(v, k, lambda)
                .map_err(|e| Failure::Usage(e.to_string()))?
                .ok_or_else(|| {
                    Failure::Finding(format!(
                        "no cyclic ({}, {}, {}) difference set exists",
                        v, k, lambda
                    ))
                })?;
            let provenance = format!("difference set {:?} mod {}", found.residues, v);
            (
                found.develop(),
                format!("diffset({}, {}, {})", v, k, lambda),
                provenance,
                out,
            )
        }
    };
    let doc = document_from_system(
        &system,
        Some(DocumentMetadata {
            name: Some(name),
            seed: Some(provenance),
        }),
    );
    write_document(&doc, &out, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_complement(
    input: &Option<PathBuf>,
    block: usize,
    out: &Option<PathBuf>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, doc) = load_design(input, stdin)?;
    let result = complement_at(&system, block).map_err(|e| Failure::Finding(e.to_string()))?;
    let name = doc
        .metadata
        .as_ref()
        .and_then(|m| m.name.as_ref())
        .map(|n| format!("{} * block {}", n, block));
    let metadata = DocumentMetadata {
        name,
        seed: Some(format!("complemented at block {}", block)),
    };
    write_document(&document_from_system(&result, Some(metadata)), out, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    input: &Option<PathBuf>,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, _) = load_design(input, stdin)?;
    let report = VerifyReport::build(&system);
    if json {
        emit_json(&report, stdout)?;
    } else {
        emit_text(&report.render_human(), stdout)?;
    }
    Ok(if report.clean() { EXIT_OK } else { EXIT_FINDING })
}

fn cmd_profile(
    input: &Option<PathBuf>,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, _) = load_design(input, stdin)?;
    let ledger = compute_ledger(&system).map_err(|e| Failure::Finding(e.to_string()))?;
    let mut rows = Vec::with_capacity(system.v());
    for i in 0..system.v() {
        let p = block_profile(&ledger, &system, i).map_err(|e| Failure::Finding(e.to_string()))?;
        rows.push(ProfileRow {
            index: p.index,
            size: p.size,
            t: p.t,
            tau1: p.tau1,
            tau2: p.tau2,
            class: class_str(&p.class),
        });
    }
    let report = ProfileReport {
        ledger: LedgerFields::from_ledger(&ledger),
        blocks: rows,
    };
    if json {
        emit_json(&report, stdout)?;
    } else {
        emit_text(&report.render_human(), stdout)?;
    }
    Ok(EXIT_OK)
}

fn cmd_equiv_class(
    input: &Option<PathBuf>,
    emit_members: &Option<PathBuf>,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, _) = load_design(input, stdin)?;
    let class = enumerate_class(&system).map_err(|e| Failure::Finding(e.to_string()))?;
    let mut members = Vec::with_capacity(class.len());
    let mut symmetric_members = 0usize;
    for (i, member) in class.members.iter().enumerate() {
        let kind = classify(&member.system);
        if matches!(kind, DesignKind::Symmetric { .. }) {
            symmetric_members += 1;
        }
        members.push(ClassMemberReport {
            index: i,
            provenance: member.provenance.to_string(),
            kind: kind_summary(&kind),
            block_sizes: sizes_ascending(&member.system),
        });
    }
    if let Some(dir) = emit_members {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::Io(format!("creating {}: {}", dir.display(), e)))?;
        for (i, member) in class.members.iter().enumerate() {
            let metadata = DocumentMetadata {
                name: Some(format!("member-{:02}", i)),
                seed: Some(member.provenance.to_string()),
            };
            let doc = document_from_system(&member.system, Some(metadata));
            let path = dir.join(format!("member-{:02}.json", i));
            std::fs::write(&path, serialize(&doc))
                .map_err(|e| Failure::Io(format!("writing {}: {}", path.display(), e)))?;
        }
    }
    let report = ClassReport {
        v: system.v(),
        size: class.len(),
        max_size: system.v() + 1,
        symmetric_members,
        members,
    };
    if json {
        emit_json(&report, stdout)?;
    } else {
        emit_text(&report.render_human(), stdout)?;
    }
    Ok(EXIT_OK)
}

fn cmd_is_type1(
    input: &Option<PathBuf>,
    verify_slow_path: bool,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, _) = load_design(input, stdin)?;
    let decision = is_type1(&system).map_err(|e| Failure::Finding(e.to_string()))?;
    let witnesses = decision
        .witnesses
        .iter()
        .map(|w| WitnessReport {
            block_index: w.block_index,
            point_class: if w.is_first_class { 1 } else { 2 },
            v: w.v,
            k: w.k,
            lambda_prime: w.lambda_prime,
        })
        .collect();
    let (slow_path_agrees, slow_count) = if verify_slow_path {
        let slow = is_type1_via_class(&system).map_err(|e| Failure::Finding(e.to_string()))?;
        (
            Some(slow.is_type1() == decision.is_type1()),
            Some(slow.symmetric_members.len()),
        )
    } else {
        (None, None)
    };
    let report = Type1Report {
        type1: decision.is_type1(),
        witnesses,
        slow_path_agrees,
        slow_path_symmetric_members: slow_count,
    };
    if json {
        emit_json(&report, stdout)?;
    } else {
        emit_text(&report.render_human(), stdout)?;
    }
    let healthy = report.slow_path_agrees.unwrap_or(true);
    Ok(if report.type1 && healthy {
        EXIT_OK
    } else {
        EXIT_FINDING
    })
}

fn cmd_check_h(
    input: &Option<PathBuf>,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, _) = load_design(input, stdin)?;
    let outcome = check_hypothesis_h(&system, true).map_err(|e| Failure::Finding(e.to_string()))?;
    let report = match &outcome {
        CoexistenceReport::Holds => HypothesisReport {
            holds: true,
            violations: Vec::new(),
        },
        CoexistenceReport::Violated(rows) => HypothesisReport {
            holds: false,
            violations: rows
                .iter()
                .map(|r| CoexistenceRow {
                    provenance: r.provenance.to_string(),
                    large_index: r.large_index,
                    small_index: r.small_index,
                })
                .collect(),
        },
    };
    if json {
        emit_json(&report, stdout)?;
    } else {
        emit_text(&report.render_human(), stdout)?;
    }
    Ok(if report.holds { EXIT_OK } else { EXIT_FINDING })
}

fn cmd_even_block(
    input: &Option<PathBuf>,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, _) = load_design(input, stdin)?;
    let outcome =
        ryser_core::equivalence::even_block_construction(&system)
            .map_err(|e| Failure::Finding(e.to_string()))?;
    let report = match outcome {
        EvenBlockOutcome::Found {
            pair,
            system: result,
            even_block_index,
            even_block_size,
        } => EvenBlockReport::Found {
            pair,
            even_block_index,
            even_block_size,
            blocks: result.blocks().iter().map(|b| b.to_vec()).collect(),
        },
        EvenBlockOutcome::NoEqualPair => EvenBlockReport::NoEqualPair,
    };
    if json {
        emit_json(&report, stdout)?;
    } else {
        emit_text(&report.render_human(), stdout)?;
    }
    Ok(EXIT_OK)
}

fn cmd_analyze_two_size(
    input: &Option<PathBuf>,
    json: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let (system, _) = load_design(input, stdin)?;
    let analysis = two_block_size_analysis(&system).map_err(|e| Failure::Finding(e.to_string()))?;
    let report = match analysis {
        TwoSizeAnalysis::Pattern(r) => TwoSizeJson::Pattern {
            v: r.v,
            lambda: r.lambda,
            k: r.k,
            alpha: r.alpha,
            beta: r.beta,
            product_identity_holds: r.product_identity_holds,
            p_alpha: r.p_alpha.to_string(),
            p_one: r.p_one.to_string(),
            p_v: r.p_v.to_string(),
            symmetric_relation_at_v: r.symmetric_relation_at_v,
        },
        TwoSizeAnalysis::NotTwoSizePattern { sizes } => TwoSizeJson::NotTwoSize { sizes },
    };
    if json {
        emit_json(&report, stdout)?;
    } else {
        emit_text(&report.render_human(), stdout)?;
    }
    Ok(EXIT_OK)
}

fn search_config(budget: Option<u64>, workers: Option<usize>) -> SearchConfig {
    SearchConfig {
        time_budget: budget.map(Duration::from_secs),
        workers: workers.unwrap_or(1),
        ..SearchConfig::default()
    }
}

fn map_search_error(e: SearchError) -> Failure {
    match e {
        SearchError::Equivalence(inner) => Failure::Finding(inner.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

fn cmd_search(
    v: usize,
    lambda: usize,
    budget: Option<u64>,
    workers: Option<usize>,
    json: bool,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let config = search_config(budget, workers);
    let report = search_ryser(v, lambda, &config).map_err(map_search_error)?;
    let designs: Vec<FoundDesignJson> = report
        .designs
        .iter()
        .map(|d| FoundDesignJson {
            blocks: d.system.blocks().iter().map(|b| b.to_vec()).collect(),
            block_sizes: d.block_sizes.clone(),
            r1: d.r1,
            r2: d.r2,
            type1: d.type1,
        })
        .collect();
    let type2 = designs.iter().filter(|d| !d.type1).count();
    let out = SearchJson {
        v: report.v,
        lambda: report.lambda,
        admissible: report
            .admissible
            .iter()
            .map(|t| SearchTripleJson {
                r1: t.r1,
                r2: t.r2,
                e1: t.e1,
                e2: t.e2,
                allowed_sizes: t.allowed_sizes.clone(),
                nodes: t.nodes,
                designs_found: t.designs_found,
            })
            .collect(),
        rejected: report
            .rejected
            .iter()
            .map(|(r1, r2, reason)| RejectedPairJson {
                r1: *r1,
                r2: *r2,
                reason: reason.clone(),
            })
            .collect(),
        designs,
        type2_candidates: type2,
        nodes_expanded: report.nodes_expanded,
        completed: report.completed,
    };
    if json {
        emit_json(&out, stdout)?;
    } else {
        emit_text(&out.render_human(), stdout)?;
    }
    Ok(if type2 > 0 { EXIT_FINDING } else { EXIT_OK })
}

fn cmd_scan(
    v_max: usize,
    lambda_max: usize,
    budget: Option<u64>,
    workers: Option<usize>,
    json: bool,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let config = search_config(budget, workers);
    let summary = conjecture_scan(v_max, lambda_max, &config).map_err(map_search_error)?;
    let out = ScanJson {
        v_max: summary.v_max,
        lambda_max: summary.lambda_max,
        cells: summary
            .cells
            .iter()
            .map(|c| ScanCellJson {
                v: c.v,
                lambda: c.lambda,
                designs_found: c.designs_found,
                type1_count: c.type1_count,
                type2_count: c.type2_count,
                completed: c.completed,
            })
            .collect(),
        type2_total: summary.type2_total,
        nodes_expanded: summary.nodes_expanded,
        completed: summary.completed,
    };
    if json {
        emit_json(&out, stdout)?;
    } else {
        emit_text(&out.render_human(), stdout)?;
    }
    Ok(if summary.type2_total > 0 {
        EXIT_FINDING
    } else {
        EXIT_OK
    })
}
