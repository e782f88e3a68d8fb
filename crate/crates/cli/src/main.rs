mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use zslab_core::charsum::{a1_envelope_check, effective_threshold_with_cap, spectrum, spectrum_identity_check, THRESHOLD_SCAN_CAP};
use zslab_core::lemmas::{
    check_k_subsums, check_line_subsums, check_short_cover, find_n_or_2n_zero_sum, find_zero_sumfree_translate,
    sumset, Certificate, KSubsumPart, LemmaReport,
};
use zslab_core::search::{max_zero_sumfree_length, random_zero_sumfree, verify_property_b, SearchConfig, SearchMode};
use zslab_core::subsum::set_memory_cap;
use zslab_core::theorem::{
    analyze_theorem_1_1_with, reduce_theorem_1_2, reduce_theorem_1_3, AnalyzeOptions, Verdict, VerdictKind,
};
use zslab_core::{
    find_zero_sum, parse_sequence, AsymptoticParams, Basis, Error as CoreError, GroupSpec, Sequence,
    ZeroSumConstraint,
};

use report::{Report, RunRecord};

#[derive(Parser)]
#[command(name = "zslab", version, about = "Zero-sum toolkit for C_p^r")]
struct Cli {
    /// Print the report as one JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized commands; always echoed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write any witness sequence to this file.
    #[arg(long, global = true)]
    witness_out: Option<PathBuf>,
    /// Write the run record here instead of stderr.
    #[arg(long, global = true)]
    record: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Statistics, zero-sumfree decision and a witness if there is one.
    Analyze { file: PathBuf },
    /// Check one of the additive lemmas on an instance.
    Lemma(LemmaArgs),
    /// Character sums, the orthogonality identity and the capped envelope.
    Charsum(CharsumArgs),
    /// Smallest prime at which the large-p inequalities hold.
    Threshold(ThresholdArgs),
    /// Run the theorem machinery or one of its reductions.
    Theorem(TheoremArgs),
    /// Maximal zero-sumfree length and extremal catalog over C_p^2.
    Search(SearchArgs),
    /// Generate random zero-sumfree sequences over C_p^2.
    Random(RandomArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaName {
    #[value(name = "3.1", alias = "short-cover")]
    ShortCover,
    #[value(name = "3.2", alias = "k-subsums")]
    KSubsums,
    #[value(name = "3.3", alias = "line-subsums")]
    LineSubsums,
    #[value(name = "3.5", alias = "n-or-2n")]
    NOr2N,
    #[value(name = "3.6", alias = "translate")]
    Translate,
    #[value(name = "cd", alias = "cauchy-davenport")]
    CauchyDavenport,
}

#[derive(Args)]
struct LemmaArgs {
    name: LemmaName,
    /// Sequence file (not used by `cd`).
    file: Option<PathBuf>,
    /// Subsum cardinality for 3.2 (default floor(|S|/2)); shift length for 3.6 (default |S| - |G|).
    #[arg(long)]
    k: Option<usize>,
    /// Which bound of 3.2: 1, 2 or 3.
    #[arg(long, default_value_t = 1)]
    part: u8,
    /// Basis for 3.3 as `e1x e1y e2x e2y`.
    #[arg(long)]
    basis: Option<String>,
    /// Prime for `cd`.
    #[arg(long)]
    p: Option<u64>,
    /// First set for `cd`, comma separated residues.
    #[arg(long = "set-a", value_delimiter = ',')]
    set_a: Vec<u32>,
    /// Second set for `cd`, comma separated residues.
    #[arg(long = "set-b", value_delimiter = ',')]
    set_b: Vec<u32>,
}

#[derive(Args)]
struct CharsumArgs {
    file: PathBuf,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Write the spectrum CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Upper end of the prime scan.
    #[arg(long, default_value_t = THRESHOLD_SCAN_CAP)]
    cap: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremName {
    #[value(name = "1.1")]
    Multiplicity,
    #[value(name = "1.2")]
    ThreeP,
    #[value(name = "1.3")]
    Translate,
}

#[derive(Args)]
struct TheoremArgs {
    name: TheoremName,
    file: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    c: f64,
    /// Run the case machinery even when the multiplicity bound already holds.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Randomized,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Samples per length in randomized mode.
    #[arg(long, default_value_t = 200)]
    samples: u64,
    #[arg(long)]
    no_symmetry: bool,
    /// Node budget for exhaustive mode.
    #[arg(long)]
    budget: Option<u64>,
    /// Permit exhaustive mode above p = 5.
    #[arg(long)]
    allow_large: bool,
    /// Also check that every extremal sequence has an element of multiplicity >= p - 2.
    #[arg(long)]
    property_b: bool,
    /// Write the catalog as sequence-file blocks.
    #[arg(long)]
    catalog_out: Option<PathBuf>,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    length: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Write the sequences here instead of into the report.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command's result: its report, exit code and one-line summary.
struct Outcome {
    report: Report,
    code: u8,
    summary: String,
}

struct Ctx {
    seed: u64,
    witness_out: Option<PathBuf>,
    artifacts: Vec<String>,
}

impl Ctx {
    fn write_artifact(&mut self, path: &Path, text: &str) -> anyhow::Result<()> {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        self.artifacts.push(path.display().to_string());
        Ok(())
    }

    fn witness(&mut self, seq: &Sequence) -> anyhow::Result<()> {
        if let Some(path) = self.witness_out.clone() {
            self.write_artifact(&path, &seq.to_string())?;
        }
        Ok(())
    }
}

fn read_sequence(path: &Path) -> anyhow::Result<Sequence> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_sequence(&text).with_context(|| format!("parsing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let command = match &cli.command {
        Command::Analyze { .. } => "analyze",
        Command::Lemma(_) => "lemma",
        Command::Charsum(_) => "charsum",
        Command::Threshold(_) => "threshold",
        Command::Theorem(_) => "theorem",
        Command::Search(_) => "search",
        Command::Random(_) => "random",
    };
    let mut ctx = Ctx { seed: cli.seed, witness_out: cli.witness_out.clone(), artifacts: Vec::new() };
    let result = setup(&cli).and_then(|()| dispatch(&cli.command, &mut ctx));
    let (code, summary) = match result {
        Ok(outcome) => {
            print!("{}", outcome.report.render(cli.json));
            (outcome.code, outcome.summary)
        }
        Err(err) => {
            let code = match err.downcast_ref::<CoreError>() {
                Some(CoreError::TheoremViolation { .. }) => 3,
                _ => 2,
            };
            eprintln!("error: {command}: {err:#}");
            (code, format!("error: {err}"))
        }
    };
    let record = RunRecord {
        command: command.to_string(),
        arguments,
        seed: cli.seed,
        version: env!("CARGO_PKG_VERSION"),
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        exit_code: code as i32,
        summary,
        artifacts: ctx.artifacts,
    };
    let line = serde_json::to_string(&record).expect("record serializes");
    match &cli.record {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{line}\n")) {
                eprintln!("error: writing run record: {e}");
            }
        }
        None => eprintln!("{line}"),
    }
    ExitCode::from(code)
}

fn setup(cli: &Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring threads")?;
    }
    if let Ok(raw) = std::env::var("ZSLAB_MEM_CAP") {
        let bytes: usize = raw.trim().parse().map_err(|_| anyhow!("ZSLAB_MEM_CAP must be a byte count, got {raw:?}"))?;
        set_memory_cap(bytes);
    }
    Ok(())
}

fn dispatch(command: &Command, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    match command {
        Command::Analyze { file } => analyze(file, ctx),
        Command::Lemma(args) => lemma(args, ctx),
        Command::Charsum(args) => charsum(args, ctx),
        Command::Threshold(args) => threshold(args),
        Command::Theorem(args) => theorem(args, ctx),
        Command::Search(args) => search(args, ctx),
        Command::Random(args) => random(args, ctx),
    }
}

fn analyze(file: &Path, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let seq = read_sequence(file)?;
    let stats = seq.stats();
    let witness = find_zero_sum(&seq, ZeroSumConstraint::Any)?;
    let mut r = Report::new();
    r.set("group", seq.spec().to_string())
        .set("length", stats.length)
        .set("h", stats.h)
        .set("support", stats.supp_size)
        .set("sigma", stats.sigma.to_string())
        .set("v0", stats.v0)
        .set("zero-sumfree", witness.is_none());
    let (code, summary) = match &witness {
        Some(w) => {
            r.set("witness_length", w.len()).block("witness", w.sequence());
            ctx.witness(w.sequence())?;
            (1, format!("zero-sum of length {}", w.len()))
        }
        None => (0, "zero-sumfree".to_string()),
    };
    Ok(Outcome { report: r, code, summary })
}

fn parse_basis(spec: &GroupSpec, text: &str) -> anyhow::Result<Basis> {
    let nums: Vec<u32> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| anyhow!("bad basis entry {s:?}")))
        .collect::<anyhow::Result<_>>()?;
    if nums.len() != 4 {
        return Err(anyhow!("--basis needs four numbers `e1x e1y e2x e2y`"));
    }
    let e1 = spec.element(&nums[0..2])?;
    let e2 = spec.element(&nums[2..4])?;
    Ok(Basis::change(spec, e1, e2)?)
}

fn certificate_block(cert: &Certificate) -> Option<String> {
    match cert {
        Certificate::None | Certificate::Sumset { .. } => None,
        Certificate::Cover { entries, .. } => Some(
            entries
                .iter()
                .map(|e| {
                    let items: Vec<String> = e.witness.items().map(|g| g.to_string()).collect();
                    format!("{} = {}\n", e.target, items.join(" + "))
                })
                .collect(),
        ),
        Certificate::ZeroSum { witness, .. } => Some(witness.to_string()),
        Certificate::Translate { shift, subsequence } => Some(format!("shift {shift}\n{subsequence}")),
    }
}

fn lemma_outcome(report: LemmaReport, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut r = Report::new();
    r.set("lemma", report.lemma.to_string())
        .set("hypothesis_ok", report.hypothesis_ok)
        .opt("claim_holds", report.claim_holds)
        .opt("lhs", report.lhs)
        .opt("rhs", report.rhs);
    if let Some(block) = certificate_block(&report.certificate) {
        r.block("certificate", block);
    }
    match &report.certificate {
        Certificate::ZeroSum { witness, .. } => ctx.witness(witness)?,
        Certificate::Translate { subsequence, .. } => ctx.witness(subsequence)?,
        _ => {}
    }
    let (code, summary) = if report.hypothesis_ok {
        (0, format!("{} holds", report.lemma))
    } else {
        (1, format!("{} hypothesis fails", report.lemma))
    };
    Ok(Outcome { report: r, code, summary })
}

fn lemma(args: &LemmaArgs, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    if let LemmaName::CauchyDavenport = args.name {
        let p = args.p.ok_or_else(|| anyhow!("cd needs --p"))?;
        let spec = GroupSpec::new(p, 1)?;
        let rep = sumset(&spec, &args.set_a, &args.set_b)?;
        let sum: Vec<String> = rep.sum.iter().map(ToString::to_string).collect();
        let mut r = Report::new();
        r.set("lemma", "cauchy-davenport")
            .set("p", p)
            .set("sumset", sum.join(","))
            .set("size", rep.sum.len())
            .set("bound", rep.bound)
            .set("holds", rep.holds);
        return Ok(Outcome { report: r, code: 0, summary: "cauchy-davenport holds".into() });
    }
    let file = args.file.as_ref().ok_or_else(|| anyhow!("this lemma needs a sequence file"))?;
    let seq = read_sequence(file)?;
    let report = match args.name {
        LemmaName::ShortCover => check_short_cover(&seq)?,
        LemmaName::KSubsums => {
            let part = KSubsumPart::from_number(args.part).ok_or_else(|| anyhow!("--part must be 1, 2 or 3"))?;
            check_k_subsums(&seq, args.k.unwrap_or(seq.len() / 2), part)?
        }
        LemmaName::LineSubsums => {
            let basis = match &args.basis {
                Some(text) => parse_basis(seq.spec(), text)?,
                None => Basis::standard(seq.spec()),
            };
            check_line_subsums(&seq, &basis)?
        }
        LemmaName::NOr2N => find_n_or_2n_zero_sum(&seq)?,
        LemmaName::Translate => {
            let k = args.k.unwrap_or_else(|| seq.len().saturating_sub(seq.spec().order()));
            find_zero_sumfree_translate(&seq, k)?
        }
        LemmaName::CauchyDavenport => unreachable!("handled above"),
    };
    lemma_outcome(report, ctx)
}

fn charsum(args: &CharsumArgs, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let seq = read_sequence(&args.file)?;
    let identity = spectrum_identity_check(&seq)?;
    let spec = *seq.spec();
    let params = match (args.eps, args.c) {
        (Some(eps), Some(c)) => Some(AsymptoticParams::new(eps, c, spec.rank())?),
        (None, None) => None,
        _ => return Err(anyhow!("--eps and --c go together")),
    };
    let spectrum = spectrum(&seq)?;
    let r_dim = spec.rank() as usize;
    let mut csv = String::new();
    let header: Vec<String> = (1..=r_dim).map(|i| format!("j{i}")).collect();
    csv.push_str(&format!("{},re_f,im_f,abs_f,envelope,holds\n", header.join(",")));
    let (mut checked, mut violations, mut capped_out) = (0usize, 0usize, 0usize);
    for (chi, value) in &spectrum.values {
        let (mut envelope, mut holds) = (String::new(), String::new());
        if let Some(params) = &params {
            if !chi.is_principal() {
                match a1_envelope_check(&seq, params, chi) {
                    Ok(rep) => {
                        envelope = rep.envelope.to_string();
                        holds = rep.holds.to_string();
                        checked += 1;
                        violations += usize::from(!rep.holds);
                    }
                    Err(CoreError::CapViolated { .. }) => capped_out += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
        let js: Vec<String> = chi.coords().iter().map(ToString::to_string).collect();
        csv.push_str(&format!("{},{},{},{},{envelope},{holds}\n", js.join(","), value.re, value.im, value.norm()));
    }
    if let Some(path) = &args.csv {
        ctx.write_artifact(path, &csv)?;
    }
    let mut r = Report::new();
    r.set("group", spec.to_string())
        .set("length", seq.len())
        .set("characters", spectrum.values.len())
        .set("sum_re", identity.sum_re)
        .set("sum_im", identity.sum_im)
        .set("zero_sum_count", identity.zero_sum_count)
        .set("expected", identity.expected)
        .set("relative_error", identity.relative_error);
    if let Some(params) = &params {
        r.set("M", params.m_for(spec.p() as u64))
            .set("envelope_checked", checked)
            .set("envelope_cap_violated", capped_out)
            .set("envelope_violations", violations);
    }
    if let Some(path) = &args.csv {
        r.set("csv", path.display().to_string());
    }
    let summary = format!("relative error {}", identity.relative_error);
    Ok(Outcome { report: r, code: 0, summary })
}

fn threshold(args: &ThresholdArgs) -> anyhow::Result<Outcome> {
    let params = AsymptoticParams::new(args.eps, args.c, args.r)?;
    let rep = effective_threshold_with_cap(&params, args.cap)?;
    let mut r = Report::new();
    r.set("epsilon", rep.epsilon)
        .set("c", rep.c)
        .set("r", rep.r)
        .set("p_threshold", rep.p_threshold)
        .set("M_at_p", rep.m_at_p)
        .set("lhs", rep.lhs)
        .set("rhs", rep.rhs);
    Ok(Outcome { report: r, code: 0, summary: format!("threshold prime {}", rep.p_threshold) })
}

fn verdict_fields(r: &mut Report, v: &Verdict, ctx: &mut Ctx) -> anyhow::Result<u8> {
    r.set("verdict", serde_json::to_value(v.kind)?)
        .set("p", v.p)
        .set("length", v.length)
        .set("required_length", v.required_length)
        .set("h", v.h)
        .set("bound", v.bound)
        .opt("case", v.case.map(|c| c.to_string()));
    if let Some(b) = &v.rebasis {
        r.set("basis", format!("{} {}", b.vectors()[0], b.vectors()[1]));
    }
    if let Some(w) = &v.witness {
        r.block("witness", w.sequence());
        ctx.witness(w.sequence())?;
    }
    if !v.attempts.is_empty() {
        let log: String = v.attempts.iter().map(|a| format!("{}: {}\n", a.step, a.outcome)).collect();
        r.block("attempts", log);
    }
    Ok(match v.kind {
        VerdictKind::ConclusionHolds | VerdictKind::ZeroSumFound => 0,
        VerdictKind::HypothesisFails => 1,
        VerdictKind::SmallPrimeCounterexample => 4,
    })
}

fn theorem(args: &TheoremArgs, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let seq = read_sequence(&args.file)?;
    let options = AnalyzeOptions { bound_override: args.force.then_some(u64::MAX) };
    let mut r = Report::new();
    let verdict = match args.name {
        TheoremName::Multiplicity => {
            r.set("theorem", "1.1");
            analyze_theorem_1_1_with(&seq, args.eps, args.c, &options)?
        }
        TheoremName::ThreeP => {
            let rep = reduce_theorem_1_2(&seq, args.eps, args.c)?;
            r.set("theorem", "1.2")
                .set("padding", rep.padding)
                .block("padded", &rep.padded)
                .block("t", &rep.t)
                .block("t1", &rep.t1)
                .set("removed", rep.removed.to_string())
                .block("reduced", &rep.reduced);
            rep.verdict
        }
        TheoremName::Translate => {
            let rep = reduce_theorem_1_3(&seq, args.eps, args.c)?;
            r.set("theorem", "1.3")
                .set("k", rep.k)
                .set("shift", rep.shift.to_string())
                .block("t", &rep.t)
                .block("translated", &rep.translated)
                .set("h_s", rep.h_s)
                .set("h_t", rep.h_t)
                .set("h_translated", rep.h_translated);
            rep.verdict
        }
    };
    let code = verdict_fields(&mut r, &verdict, ctx)?;
    let summary = format!("{}", serde_json::to_value(verdict.kind)?.as_str().unwrap_or("verdict"));
    Ok(Outcome { report: r, code, summary })
}

fn search(args: &SearchArgs, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mode = match args.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Randomized => SearchMode::Randomized { samples: args.samples, seed: ctx.seed },
    };
    let config = SearchConfig {
        p: args.p,
        mode,
        symmetry: !args.no_symmetry,
        node_budget: args.budget,
        allow_large: args.allow_large,
    };
    let catalog = max_zero_sumfree_length(&config)?;
    let mut r = Report::new();
    r.set("p", catalog.p)
        .set("mode", match args.mode {
            ModeArg::Exhaustive => "exhaustive",
            ModeArg::Randomized => "randomized",
        })
        .set("seed", ctx.seed)
        .set("symmetry", config.symmetry)
        .set("max_length", catalog.max_length)
        .set("count", catalog.sequences.len())
        .opt("min_h", catalog.min_h)
        .set("exhaustive", catalog.complete)
        .set("nodes", catalog.nodes)
        .set("pruned_checked", catalog.pruned_checked);
    let hist: Vec<String> = catalog.h_histogram.iter().map(|(h, n)| format!("{h}:{n}")).collect();
    r.set("h_histogram", hist.join(","));
    if args.property_b {
        let rep = verify_property_b(&config)?;
        r.set("property_b_bound", rep.bound).set("property_b_holds", true);
    }
    if let Some(path) = &args.catalog_out {
        let text: String = catalog.sequences.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n");
        ctx.write_artifact(path, &text)?;
        r.set("catalog", path.display().to_string());
    }
    let incomplete = matches!(args.mode, ModeArg::Exhaustive) && !catalog.complete;
    let code = if incomplete { 4 } else { 0 };
    let summary = format!("max length {} ({} canonical)", catalog.max_length, catalog.sequences.len());
    Ok(Outcome { report: r, code, summary })
}

fn random(args: &RandomArgs, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let mut blocks = Vec::new();
    let mut failures = 0u64;
    for i in 0..args.count {
        match random_zero_sumfree(args.p, args.length, ctx.seed.wrapping_add(i)) {
            Ok(s) => blocks.push(s.to_string()),
            Err(CoreError::Fail { .. }) => failures += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let text = blocks.join("\n");
    let mut r = Report::new();
    r.set("p", args.p)
        .set("length", args.length)
        .set("seed", ctx.seed)
        .set("generated", blocks.len())
        .set("failures", failures);
    match &args.out {
        Some(path) => {
            ctx.write_artifact(path, &text)?;
            r.set("out", path.display().to_string());
        }
        None if !blocks.is_empty() => {
            r.block("sequences", text);
        }
        None => {}
    }
    let code = if blocks.is_empty() { 1 } else { 0 };
    Ok(Outcome { report: r, code, summary: format!("{} generated, {failures} failed", blocks.len()) })
}
