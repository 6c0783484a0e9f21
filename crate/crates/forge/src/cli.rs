//! The `omegaforge` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use omegaforge_core::bitvm::{run, DivergenceProof, GuestId, RunOutcome};
use omegaforge_core::complexity::{
    complexity_exact, complexity_upper, converse_theory, counting_check, invariance_audit, irreducibility_probe,
    probe_is_nondecreasing, theory_audit, theory_size_bound, ComplexityBound, ExactOutcome, ExhaustiveTable,
    TheoryArtifact,
};
use omegaforge_core::explorer::ExploreBudget;
use omegaforge_core::lawful::{classify, describe_size, interpolate, LawError, Point, PointSet, Threshold};
use omegaforge_core::omega::{
    bits_value, block_frequency_report, certify_bits, is_monotone, progress_report, HaltingOracle, MassLedger,
    OmegaBits, OracleLadder, ProgressInput,
};
use omegaforge_core::{Bits, Dyadic};

use crate::checkpoint;
use crate::config::{parse_threshold, Config, Format, Overrides, CHECKPOINT_DIR_ENV};
use crate::parallel::{delta_parallel, explore_parallel};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "omegaforge", version, about = "Halting probability and program-size complexity workbench")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// `key = value` configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report format: json or csv
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Longest program explored, in bits
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Step budget per program
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    /// Directory for checkpoints (also OMEGAFORGE_CHECKPOINT_DIR)
    #[arg(long, global = true)]
    checkpoint_dir: Option<PathBuf>,
    /// Worker threads for exploration
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Lawfulness threshold as a ratio, e.g. 1/2
    #[arg(long, global = true, value_parser = parse_threshold)]
    threshold: Option<Threshold>,
    /// Bits per interpolation coefficient
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Deepest exhaustive program table allowed
    #[arg(long, global = true)]
    exact_cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run programs on the universal machine
    #[command(subcommand)]
    Vm(VmCmd),
    /// Enumerate the program tree and write a checkpoint
    Explore {
        /// Checkpoint path (default: <checkpoint-dir>/explore-L<len>-S<steps>.ckpt)
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint if it exists
        #[arg(long)]
        resume: bool,
        /// Stop after this many work units, leaving a resumable checkpoint
        #[arg(long)]
        stop_after: Option<usize>,
    },
    /// Halting probability bits, oracle and reports
    #[command(subcommand)]
    Omega(OmegaCmd),
    /// Program-size complexity
    #[command(subcommand)]
    Complexity(ComplexityCmd),
    /// Compare complexity under a guest machine with the universal machine
    Invariance {
        #[arg(long, value_parser = parse_guest)]
        guest: GuestId,
        #[arg(long)]
        bound: usize,
    },
    /// Count n-bit strings with programs of at most m bits
    Counting {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Theories asserting bits of the halting probability
    #[command(subcommand)]
    Theory(TheoryCmd),
    /// Interpolating rules versus compressing rules
    #[command(subcommand)]
    Law(LawCmd),
}

#[derive(Debug, Subcommand)]
enum VmCmd {
    /// Run one program
    Run {
        #[arg(value_parser = parse_bits)]
        program: Bits,
    },
}

#[derive(Debug, Args)]
struct OmegaSource {
    /// Use these bits as the certified prefix instead of exploring
    #[arg(long, value_parser = parse_bits)]
    omega_bits: Option<Bits>,
}

#[derive(Debug, Subcommand)]
enum OmegaCmd {
    /// Certified bits and mass bounds
    Bits {
        /// Read the ledger from a checkpoint instead of exploring
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Decide halting for a program using certified bits only
    Oracle {
        #[arg(value_parser = parse_bits)]
        program: Bits,
        #[command(flatten)]
        source: OmegaSource,
        /// Largest program length the oracle may explore to
        #[arg(long, default_value_t = 32)]
        cap_len: usize,
    },
    /// Certified bits and unknown mass for a series of checkpoints
    Progress {
        #[arg(required = true)]
        checkpoints: Vec<PathBuf>,
    },
    /// Block frequencies of the certified prefix
    Blocks {
        #[command(flatten)]
        source: OmegaSource,
        #[arg(long, default_value_t = 1)]
        block_size: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ComplexityCmd {
    /// Best verified upper bound
    Of {
        #[arg(value_parser = parse_bits)]
        bits: Bits,
        /// Also search every program up to this length
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Exact value among programs of at most `bound` bits
    Exact {
        #[arg(value_parser = parse_bits)]
        bits: Bits,
        #[arg(long)]
        bound: usize,
    },
    /// Exact complexity of every certified prefix
    Irreducibility {
        #[command(flatten)]
        source: OmegaSource,
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TheoryCmd {
    /// Audit a theory whose carrier program is stored in a file as bit text
    Audit {
        file: PathBuf,
        #[command(flatten)]
        source: OmegaSource,
    },
    /// Print the carrier of the theory asserting every certified bit
    Converse {
        #[command(flatten)]
        source: OmegaSource,
    },
}

#[derive(Debug, Subcommand)]
enum LawCmd {
    /// Fit a curve through the points of an x,y CSV file
    Interpolate {
        csv: PathBuf,
        /// Write this many curve samples as `t x y` lines
        #[arg(long)]
        samples_out: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Decide whether data has a rule much shorter than itself
    Classify {
        #[arg(value_parser = parse_bits)]
        bits: Bits,
        /// Also search every program up to this length
        #[arg(long)]
        bound: Option<usize>,
    },
}

fn parse_bits(s: &str) -> Result<Bits, String> {
    if s == "~" {
        return Ok(Bits::new());
    }
    s.parse().map_err(|_| format!("`{}` is not a bit string", s))
}

fn parse_guest(s: &str) -> Result<GuestId, String> {
    match s {
        "00" | "literal" => Ok(GuestId::Literal),
        "01" | "unary" => Ok(GuestId::Unary),
        _ => Err(format!("unknown guest `{}` (expected 00 or 01)", s)),
    }
}

/// A failure in the domain rather than in the command line.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

fn budget_json(b: ExploreBudget) -> Value {
    json!({ "max_len": b.max_len, "max_steps": b.max_steps })
}

fn guest_code(g: GuestId) -> &'static str {
    match g {
        GuestId::Literal => "00",
        GuestId::Unary => "01",
    }
}

fn bound_fields(r: Report, b: &ComplexityBound) -> Report {
    r.set("subject", b.subject.to_string())
        .set("value", b.value)
        .set("witness_bits", b.witness.to_string())
}

/// Run the command line; returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let config = match resolve_config(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {}", msg);
            return 2;
        }
    };
    match dispatch(cli.cmd, &config, err) {
        Ok(report) => {
            let _ = out.write_all(report.render(config.format).as_bytes());
            0
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            1
        }
    }
}

fn resolve_config(g: &GlobalOpts) -> Result<Config, String> {
    let file = match &g.config {
        Some(p) => Some(Overrides::from_file(p).map_err(|e| e.to_string())?),
        None => None,
    };
    let flags = Overrides {
        max_len: g.max_len,
        max_steps: g.max_steps,
        checkpoint_dir: g.checkpoint_dir.clone(),
        format: g.format,
        classify_threshold: g.threshold,
        precision_bits: g.precision,
        exact_cap: g.exact_cap,
        threads: g.threads,
    };
    Config::resolve(std::env::var(CHECKPOINT_DIR_ENV).ok(), file.as_ref(), &flags).map_err(|e| e.to_string())
}

fn dispatch(cmd: Command, cfg: &Config, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Vm(VmCmd::Run { program }) => vm_run(&program, cfg),
        Command::Explore { checkpoint, resume, stop_after } => explore_cmd(cfg, checkpoint, resume, stop_after, err),
        Command::Omega(c) => match c {
            OmegaCmd::Bits { checkpoint } => omega_bits(cfg, checkpoint),
            OmegaCmd::Oracle { program, source, cap_len } => omega_oracle(cfg, &program, source, cap_len),
            OmegaCmd::Progress { checkpoints } => omega_progress(&checkpoints),
            OmegaCmd::Blocks { source, block_size } => omega_blocks(cfg, source, block_size),
        },
        Command::Complexity(c) => match c {
            ComplexityCmd::Of { bits, bound } => complexity_of(cfg, &bits, bound),
            ComplexityCmd::Exact { bits, bound } => complexity_exact_cmd(cfg, &bits, bound),
            ComplexityCmd::Irreducibility { source, bound } => irreducibility(cfg, source, bound),
        },
        Command::Invariance { guest, bound } => invariance(cfg, guest, bound),
        Command::Counting { n, m } => counting(cfg, n, m),
        Command::Theory(c) => match c {
            TheoryCmd::Audit { file, source } => theory_audit_cmd(cfg, &file, source),
            TheoryCmd::Converse { source } => theory_converse(cfg, source),
        },
        Command::Law(c) => match c {
            LawCmd::Interpolate { csv, samples_out, samples } => law_interpolate(cfg, &csv, samples_out, samples),
            LawCmd::Classify { bits, bound } => law_classify(cfg, &bits, bound),
        },
    }
}

fn vm_run(program: &Bits, cfg: &Config) -> Outcome {
    let outcome = run(program, cfg.max_steps);
    let mut r = Report::new("vm_run")
        .set("program", program.to_string())
        .set("kind", outcome.kind_name())
        .set("steps", outcome.steps());
    match &outcome {
        RunOutcome::Halted { output, bits_consumed, .. } => {
            r = r.set("output", output.to_string()).set("bits_consumed", *bits_consumed);
        }
        RunOutcome::Invalid { fault, .. } => r = r.set("fault", fault.to_string()),
        RunOutcome::Diverges { proof, .. } => {
            let name = match proof {
                DivergenceProof::Cycle => "CYCLE",
                DivergenceProof::MonotoneCycle => "MONOTONE_CYCLE",
            };
            r = r.set("proof", name);
        }
        RunOutcome::NeedsBit { .. } | RunOutcome::Unknown { .. } => {}
    }
    Ok(r)
}

fn explore_cmd(
    cfg: &Config,
    path: Option<PathBuf>,
    resume: bool,
    stop_after: Option<usize>,
    err: &mut dyn Write,
) -> Outcome {
    let path = path.unwrap_or_else(|| cfg.checkpoint_path());
    let previous = if resume && path.exists() {
        let ck = checkpoint::read(&path)?;
        let _ = writeln!(err, "resuming {} ({} records)", path.display(), ck.store.len());
        Some(ck.store)
    } else {
        None
    };
    let e = explore_parallel(cfg.budget(), previous, cfg.threads, stop_after)?;
    let checksum = checkpoint::write(&path, &e.store)?;
    let ledger = e.store.ledger();
    Ok(Report::new("explore")
        .set("machine_version", checkpoint::machine_version())
        .set("budgets", budget_json(cfg.budget()))
        .set("checkpoint", path.display().to_string())
        .set("checksum", checksum)
        .set("records", e.store.len())
        .set("units_done", e.units_done)
        .set("units_total", e.units_total)
        .set("complete", e.is_complete())
        .set("halt_mass", ledger.halt.to_string())
        .set("refuted_mass", ledger.refuted.to_string())
        .set("unknown_mass", ledger.unknown.to_string()))
}

fn explored_ledger(cfg: &Config) -> Result<MassLedger, Failure> {
    Ok(MassLedger::from_delta(&delta_parallel(cfg.budget(), cfg.threads)?))
}

/// The certified prefix: given on the command line or explored afresh.
fn certified(cfg: &Config, source: OmegaSource) -> Result<OmegaBits, Failure> {
    match source.omega_bits {
        Some(bits) => {
            let lower = bits_value(&bits);
            let upper = lower.clone() + Dyadic::pow2_neg(bits.len() as u32);
            Ok(OmegaBits { certified: bits, lower, upper })
        }
        None => Ok(certify_bits(&explored_ledger(cfg)?)),
    }
}

fn block_json(bits: &Bits, max_block: usize) -> Value {
    let mut m = serde_json::Map::new();
    for k in 1..=max_block {
        if let Ok(f) = block_frequency_report(bits, k) {
            let counts: serde_json::Map<String, Value> =
                f.counts.iter().map(|(b, c)| (b.to_string(), json!(c))).collect();
            m.insert(k.to_string(), json!({ "windows": f.windows, "counts": counts }));
        }
    }
    Value::Object(m)
}

fn omega_bits(cfg: &Config, ckpt: Option<PathBuf>) -> Outcome {
    let (budget, ledger) = match ckpt {
        Some(p) => {
            let ck = checkpoint::read(&p)?;
            (ck.store.budget(), ck.store.ledger())
        }
        None => (cfg.budget(), explored_ledger(cfg)?),
    };
    let bits = certify_bits(&ledger);
    Ok(Report::new("omega_bits")
        .set("machine_version", checkpoint::machine_version())
        .set("budgets", budget_json(budget))
        .set("lower", ledger.lower().to_string())
        .set("upper", ledger.upper().to_string())
        .set("lower_approx", ledger.lower().to_f64())
        .set("upper_approx", ledger.upper().to_f64())
        .set("certified_bits", bits.binary_text())
        .set("certified_count", bits.len())
        .set("unknown_mass", ledger.unknown.to_string())
        .set("block_frequencies", block_json(&bits.certified, 3)))
}

fn omega_oracle(cfg: &Config, program: &Bits, source: OmegaSource, cap_len: usize) -> Outcome {
    let bits = certified(cfg, source)?;
    let cap = ExploreBudget::new(cap_len.max(cfg.max_len), cfg.max_steps)?;
    let oracle = HaltingOracle::converge(&bits, &OracleLadder::up_to(cap))?;
    let answer = oracle.query(program)?;
    Ok(Report::new("omega_oracle")
        .set("program", program.to_string())
        .set("answer", answer.as_str())
        .set("certified_bits", bits.binary_text())
        .set("converged_at", budget_json(oracle.converged_at())))
}

fn omega_progress(paths: &[PathBuf]) -> Outcome {
    let mut inputs = Vec::new();
    for p in paths {
        let ck = checkpoint::read(p)?;
        inputs.push(ProgressInput {
            machine_version: ck.machine_version,
            budget: ck.store.budget(),
            ledger: ck.store.ledger(),
        });
    }
    let rows = progress_report(&inputs)?;
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "max_len": r.budget.max_len,
                "max_steps": r.budget.max_steps,
                "certified_bits": r.certified_bits,
                "unknown_mass": r.unknown_mass.to_string(),
            })
        })
        .collect();
    Ok(Report::new("omega_progress").set("monotone", is_monotone(&rows)).set("rows", json_rows))
}

fn omega_blocks(cfg: &Config, source: OmegaSource, block_size: usize) -> Outcome {
    let bits = certified(cfg, source)?;
    let f = block_frequency_report(&bits.certified, block_size)?;
    let rows: Vec<Value> = f
        .counts
        .iter()
        .map(|(b, c)| json!({ "block": b.to_string(), "count": c, "frequency": f.frequency(b) }))
        .collect();
    Ok(Report::new("omega_blocks")
        .set("certified_bits", bits.binary_text())
        .set("block_size", block_size)
        .set("windows", f.windows)
        .set("rows", rows))
}

fn table(cfg: &Config, bound: usize) -> Result<ExhaustiveTable, Failure> {
    if bound > cfg.exact_cap {
        return Err(Failure(format!(
            "length bound {} exceeds the enumeration cap {} (raise --exact-cap)",
            bound, cfg.exact_cap
        )));
    }
    Ok(ExhaustiveTable::build(bound, cfg.max_steps))
}

fn complexity_of(cfg: &Config, bits: &Bits, bound: Option<usize>) -> Outcome {
    let t = bound.map(|b| table(cfg, b)).transpose()?;
    let b = complexity_upper(bits, t.as_ref());
    Ok(bound_fields(Report::new("complexity"), &b).set("kind", "UPPER"))
}

fn complexity_exact_cmd(cfg: &Config, bits: &Bits, bound: usize) -> Outcome {
    let t = table(cfg, bound)?;
    let r = Report::new("complexity").set("bound", bound);
    Ok(match complexity_exact(bits, bound, &t)? {
        ExactOutcome::Exact(b) => bound_fields(r, &b).set("kind", "EXACT_WITHIN"),
        ExactOutcome::AboveBound { .. } => r.set("subject", bits.to_string()).set("kind", "ABOVE_BOUND"),
    })
}

fn irreducibility(cfg: &Config, source: OmegaSource, bound: usize) -> Outcome {
    let bits = certified(cfg, source)?;
    let t = table(cfg, bound)?;
    let rows = irreducibility_probe(&bits.certified, bound, &t);
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let (kind, value) = match &r.exact {
                Ok(ExactOutcome::Exact(b)) => ("EXACT_WITHIN", json!(b.value)),
                Ok(ExactOutcome::AboveBound { .. }) => ("ABOVE_BOUND", Value::Null),
                Err(_) => ("INCONCLUSIVE", Value::Null),
            };
            json!({ "m": r.m, "prefix": r.prefix.to_string(), "kind": kind, "h": value })
        })
        .collect();
    Ok(Report::new("irreducibility")
        .set("bound", bound)
        .set("nondecreasing", probe_is_nondecreasing(&rows))
        .set("rows", json_rows))
}

fn invariance(cfg: &Config, guest: GuestId, bound: usize) -> Outcome {
    let t = table(cfg, bound + 5)?;
    let r = invariance_audit(guest, bound, &t)?;
    Ok(Report::new("invariance")
        .set("guest", guest_code(guest))
        .set("bound", bound)
        .set("prefix_len", r.prefix_len)
        .set("outputs", r.rows.len())
        .set("max_gap", r.max_gap)
        .set("holds", r.holds())
        .set("violations", r.violations.iter().map(|b| b.to_string()).collect::<Vec<_>>()))
}

fn counting(cfg: &Config, n: usize, m: usize) -> Outcome {
    let t = table(cfg, m)?;
    let r = counting_check(n, m, &t)?;
    Ok(Report::new("counting")
        .set("n", n)
        .set("m", m)
        .set("count", r.count)
        .set("bound", r.bound)
        .set("holds", r.holds()))
}

fn theory_audit_cmd(cfg: &Config, file: &PathBuf, source: OmegaSource) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| Failure(format!("{}: {}", file.display(), e)))?;
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let carrier = parse_bits(&compact).map_err(Failure)?;
    let theory = TheoryArtifact::from_carrier(carrier, cfg.max_steps)?;
    let bits = certified(cfg, source)?;
    let a = theory_audit(&theory, &bits);
    let converse = converse_theory(&bits);
    let converse_audit = theory_audit(&converse, &bits);
    Ok(Report::new("theory_audit")
        .set("theory", theory.carrier.to_string())
        .set("kind", "UPPER")
        .set("value", a.h_upper.value)
        .set("witness_bits", a.h_upper.witness.to_string())
        .set("assertions", a.assertion_count)
        .set("certified_bits", bits.binary_text())
        .set("sound", a.is_sound())
        .set("unsound", a.unsound.clone())
        .set("unverifiable", a.unverifiable.clone())
        .set("carrier_len", a.carrier_len)
        .set("c_prime_observed", a.c_prime_observed)
        .set(
            "converse",
            json!({
                "carrier_bits": converse.carrier.to_string(),
                "carrier_len": converse.carrier.len(),
                "size_bound": theory_size_bound(bits.len()),
                "sound": converse_audit.is_sound(),
            }),
        ))
}

fn theory_converse(cfg: &Config, source: OmegaSource) -> Outcome {
    let bits = certified(cfg, source)?;
    let t = converse_theory(&bits);
    Ok(Report::new("theory_converse")
        .set("certified_bits", bits.binary_text())
        .set("carrier_bits", t.carrier.to_string())
        .set("carrier_len", t.carrier.len())
        .set("size_bound", theory_size_bound(bits.len())))
}

/// `x,y` per line; `#` comments and one non-numeric header line allowed.
pub fn read_points(text: &str) -> Result<PointSet, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() != 2 {
            return Err(format!("record {}: expected two fields", i + 1));
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => points.push(Point { x, y }),
            _ if i == 0 => continue,
            _ => return Err(format!("record {}: not a number", i + 1)),
        }
    }
    PointSet::new(points).map_err(|e: LawError| e.to_string())
}

fn law_interpolate(cfg: &Config, csv_path: &PathBuf, samples_out: Option<PathBuf>, samples: usize) -> Outcome {
    let text = fs::read_to_string(csv_path).map_err(|e| Failure(format!("{}: {}", csv_path.display(), e)))?;
    let points = read_points(&text).map_err(Failure)?;
    let curve = interpolate(&points)?;
    if let Some(p) = &samples_out {
        let mut s = String::from("# t x y\n");
        for (t, q) in curve.samples(samples) {
            s.push_str(&format!("{} {} {}\n", t, q.x, q.y));
        }
        fs::write(p, s).map_err(|e| Failure(format!("{}: {}", p.display(), e)))?;
    }
    Ok(Report::new("law_interpolate")
        .set("points", points.len())
        .set("knots", curve.knots.clone())
        .set("x_coeffs", curve.x_coeffs.clone())
        .set("y_coeffs", curve.y_coeffs.clone())
        .set("precision_bits", cfg.precision_bits)
        .set("description_size", describe_size(&curve, cfg.precision_bits)?)
        .set("max_residual", curve.max_residual(&points)))
}

fn law_classify(cfg: &Config, bits: &Bits, bound: Option<usize>) -> Outcome {
    let t = bound.map(|b| table(cfg, b)).transpose()?;
    let v = classify(bits, t.as_ref(), cfg.classify_threshold)?;
    Ok(Report::new("law_classify")
        .set("raw_size", v.raw_size)
        .set("rule_size_upper", v.rule_size_upper)
        .set("ratio", v.ratio)
        .set("threshold", v.threshold.to_string())
        .set("verdict", v.verdict.as_str())
        .set("witness_bits", v.rule.to_string()))
}
