//! `formality` — decide formality of homogeneous spaces `SU(n)/H` and
//! re-derive the desk-scale computations behind the non-formality results.
//!
//! Exit codes: `0` success, `1` error, `2` a computation was refused because
//! a degree slice exceeded the column budget.

mod cache;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use formality_core::arith::{
    is_prime_u64, parse_rational, rat_int, Rational, DEFAULT_MODULUS,
};
use formality_core::engine::verify::{
    verify_corollary_2_4, verify_example_3_1, verify_family,
};
use formality_core::engine::{
    analyze, EngineConfig, EngineError, Mode, RouteChoice, SpaceSpec, Subgroup,
};
use formality_core::lie::{
    block_embedding, block_invariant_presentation, coxeter_eigenvector, elementary_symmetric,
    eval_at_eigenvector, restrict, zero_sum_partition, BlockDecomposition, TorusEmbedding,
};
use formality_core::nakayama::{
    subalgebra_membership, Membership, NakayamaError, RankMode, RankPolicy,
};
use formality_core::poly::{monomials_of_degree, CoeffField, Polynomial, VariableSet};

#[derive(Parser)]
#[command(
    name = "formality",
    version,
    about = "Exact formality decisions for homogeneous spaces SU(n)/H",
    after_help = "Exit codes: 0 success, 1 error, 2 refused column budget."
)]
struct Cli {
    /// Worker threads (default: available parallelism, or FORMALITY_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the deficiency of SU(n)/H and print the verdict.
    Check(CheckArgs),
    /// Re-derive the full desk-scale claim catalog; one row per claim.
    VerifyPaper(VerifyPaperArgs),
    /// Evaluate a symmetric generator P_j at a Coxeter eigenvector X_k.
    Eigen(EigenArgs),
    /// Decide a subalgebra membership among restricted generators.
    Membership(MembershipArgs),
    /// Search for a zero-sum partition of eigenvector coordinates.
    Partition(PartitionArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Torus,
    Invariants,
    Both,
}

impl From<RouteArg> for RouteChoice {
    fn from(value: RouteArg) -> Self {
        match value {
            RouteArg::Torus => RouteChoice::Torus,
            RouteArg::Invariants => RouteChoice::Invariants,
            RouteArg::Both => RouteChoice::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Exact ranks on small slices, prime-field ranks on large ones.
    Auto,
    Exact,
    Modular,
}

impl From<ModeArg> for Mode {
    fn from(value: ModeArg) -> Self {
        match value {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Exact => Mode::Exact,
            ModeArg::Modular => Mode::Modular,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingArg {
    /// The polynomial ring on the subgroup's torus.
    Torus,
    /// The weighted ring of block invariants (needs --blocks).
    Invariants,
}

#[derive(Args)]
struct CheckArgs {
    /// Ambient rank parameter: the group is SU(n).
    #[arg(long)]
    n: u32,
    /// Block sizes q1,q2,... with sum n; H = SU(q1)x...xSU(qs).
    #[arg(long, value_delimiter = ',', conflicts_with = "embedding")]
    blocks: Option<Vec<u32>>,
    /// JSON file holding the n-row rational matrix of a subtorus embedding.
    /// Without --blocks and --embedding, H is the full maximal torus.
    #[arg(long)]
    embedding: Option<PathBuf>,
    /// Computation route (default: invariants for blocks, torus otherwise).
    #[arg(long, value_enum)]
    route: Option<RouteArg>,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    /// Modulus for prime-field ranks; must be prime.
    #[arg(long)]
    prime: Option<u64>,
    /// Print the structured JSON report instead of the summary.
    #[arg(long)]
    json: bool,
    /// Override the per-slice column budget for every mode.
    #[arg(long)]
    max_columns: Option<usize>,
    /// Directory for the persistent result cache.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyPaperArgs {
    /// Override the per-slice column budget; refused rows are SKIPPED.
    #[arg(long)]
    max_columns: Option<usize>,
    /// Test hook: corrupt one membership target so its row must FAIL.
    #[arg(long, hide = true)]
    corrupt_generator: bool,
}

#[derive(Args)]
struct EigenArgs {
    #[arg(long)]
    n: u32,
    /// Eigenvector index, 1 <= k <= n-1.
    #[arg(long)]
    k: u32,
    /// Generator name: P2, P3, ... (case-insensitive, the bare degree works).
    #[arg(long)]
    poly: String,
}

#[derive(Args)]
struct MembershipArgs {
    #[arg(long)]
    n: u32,
    /// Block sizes of the subgroup; omitted = full maximal torus.
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<u32>>,
    /// Degree of the target generator p_target.
    #[arg(long)]
    target: u32,
    /// Degrees of the basis generators.
    #[arg(long, value_delimiter = ',', required = true)]
    basis: Vec<u32>,
    /// Ring to decide in (default: invariants with --blocks, torus without).
    #[arg(long, value_enum)]
    ring: Option<RingArg>,
    /// Override the column budget for the target degree.
    #[arg(long)]
    max_columns: Option<usize>,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long)]
    n: u32,
    /// Eigenvector index, 1 <= k <= n-1.
    #[arg(long)]
    k: u32,
    /// Block sizes to partition the n coordinates into.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u32>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                std::process::exit(0);
            }
            eprintln!("{err}");
            std::process::exit(1);
        }
    };
    init_threads(cli.threads);
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(exit_code_for(&err));
        }
    }
}

fn run(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Check(args) => cmd_check(args),
        Command::VerifyPaper(args) => cmd_verify_paper(args),
        Command::Eigen(args) => cmd_eigen(args),
        Command::Membership(args) => cmd_membership(args),
        Command::Partition(args) => cmd_partition(args),
    }
}

fn init_threads(flag: Option<usize>) {
    let requested = flag.or_else(|| {
        std::env::var("FORMALITY_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = requested.filter(|&n| n > 0) {
        // Errors only mean the global pool already exists; keep going.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Budget refusals exit 2; everything else is an ordinary error.
fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<EngineError>() {
        Some(e) if e.is_budget_refusal() => 2,
        _ => 1,
    }
}

fn cmd_check(args: CheckArgs) -> anyhow::Result<i32> {
    if args.n < 2 {
        bail!("--n must be at least 2, got {}", args.n);
    }
    let (spec, subgroup_desc) = build_space(&args)?;
    let route: RouteChoice = args.route.map(Into::into).unwrap_or(match spec.subgroup() {
        Subgroup::Blocks(_) => RouteChoice::Invariants,
        Subgroup::Torus(_) => RouteChoice::Torus,
    });
    let modulus = match args.prime {
        Some(p) => {
            if !is_prime_u64(p) {
                bail!("--prime {p} is not prime");
            }
            p
        }
        None => DEFAULT_MODULUS,
    };
    let config = EngineConfig {
        mode: args.mode.into(),
        modulus,
        max_columns: args.max_columns,
        ..EngineConfig::default()
    };

    let problem = canonical_problem(args.n, &subgroup_desc, route, &config);
    let key = cache::digest(&problem);
    if let Some(dir) = &args.cache_dir {
        if let Some(hit) = cache::lookup(dir, &key, &problem) {
            eprintln!("cache hit {key}");
            print!("{}", if args.json { &hit.json } else { &hit.human });
            return Ok(0);
        }
    }

    let report = analyze(&spec, route, &config)?;
    let json = report.to_json();
    let human = report.render_human();
    if let Some(dir) = &args.cache_dir {
        let record = cache::CacheRecord::new(problem, json.clone(), human.clone());
        if let Err(e) = cache::store(dir, &key, &record) {
            eprintln!("warning: could not write cache record: {e}");
        }
    }
    print!("{}", if args.json { &json } else { &human });
    Ok(0)
}

fn build_space(args: &CheckArgs) -> anyhow::Result<(SpaceSpec, String)> {
    match (&args.blocks, &args.embedding) {
        (Some(blocks), None) => {
            let desc = format!(
                "blocks:{}",
                blocks
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            Ok((SpaceSpec::from_blocks(args.n, blocks.clone())?, desc))
        }
        (None, Some(path)) => {
            let embedding = load_embedding(args.n, path)?;
            let desc = format!("embedding:{}", matrix_desc(&embedding));
            Ok((SpaceSpec::from_embedding(embedding)?, desc))
        }
        (None, None) => Ok((SpaceSpec::full_torus(args.n)?, "full-torus".to_string())),
        (Some(_), Some(_)) => unreachable!("clap rejects --blocks with --embedding"),
    }
}

/// The description whose SHA-256 is the cache key.  Anything that can alter
/// the report's bytes is in here.
fn canonical_problem(n: u32, subgroup: &str, route: RouteChoice, config: &EngineConfig) -> String {
    let route = match route {
        RouteChoice::Torus => "torus",
        RouteChoice::Invariants => "invariants",
        RouteChoice::Both => "both",
    };
    let mode = match config.mode {
        Mode::Auto => "auto",
        Mode::Exact => "exact",
        Mode::Modular => "modular",
    };
    let max_columns = config
        .max_columns
        .map(|v| v.to_string())
        .unwrap_or_else(|| "default".to_string());
    format!(
        "cache-schema={}\nn={n}\nsubgroup={subgroup}\nroute={route}\nmode={mode}\n\
         modulus={}\nmax_columns={max_columns}\nengine={}\n",
        cache::CACHE_SCHEMA_VERSION,
        config.modulus,
        formality_core::ENGINE_VERSION,
    )
}

fn matrix_desc(embedding: &TorusEmbedding) -> String {
    embedding
        .matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn load_embedding(n: u32, path: &Path) -> anyhow::Result<TorusEmbedding> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rows: Vec<Vec<serde_json::Value>> = serde_json::from_str(&text)
        .context("embedding file must be a JSON array of rows, one per ambient coordinate")?;
    if rows.len() != n as usize {
        bail!("embedding has {} rows but n = {n}", rows.len());
    }
    let m = rows.first().map(Vec::len).unwrap_or(0);
    if m == 0 {
        bail!("embedding needs at least one column");
    }
    if rows.iter().any(|r| r.len() != m) {
        bail!("embedding matrix rows have inconsistent lengths");
    }
    let names: Vec<String> = (1..=m).map(|i| format!("s{i}")).collect();
    let vars = VariableSet::standard(names);
    let mut images = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut image = Polynomial::zero(&vars);
        for (j, value) in row.iter().enumerate() {
            let coeff = json_rational(value)?;
            if coeff.is_zero() {
                continue;
            }
            let term = Polynomial::variable(&vars, j)?.scale(&coeff);
            image = image.add(&term)?;
        }
        images.push(image);
    }
    TorusEmbedding::new(n, vars, images).map_err(|e| anyhow!("invalid embedding: {e}"))
}

fn json_rational(value: &serde_json::Value) -> anyhow::Result<Rational> {
    match value {
        serde_json::Value::Number(num) => num.as_i64().map(rat_int).ok_or_else(|| {
            anyhow!("matrix entry {num} is not an integer; write fractions as strings like \"1/2\"")
        }),
        serde_json::Value::String(s) => Ok(parse_rational(s)?),
        other => bail!("matrix entries must be integers or rational strings, got {other}"),
    }
}

// --- verify-paper ------------------------------------------------------

enum RowStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

struct Row {
    label: String,
    status: RowStatus,
    ms: u128,
}

fn run_row<F>(rows: &mut Vec<Row>, label: &str, body: F)
where
    F: FnOnce() -> Result<Option<String>, EngineError>,
{
    let started = Instant::now();
    let status = match body() {
        Ok(None) => RowStatus::Pass,
        Ok(Some(detail)) => RowStatus::Fail(detail),
        Err(e) if e.is_budget_refusal() => RowStatus::Skipped(e.to_string()),
        Err(e) => RowStatus::Fail(e.to_string()),
    };
    rows.push(Row {
        label: label.to_string(),
        status,
        ms: started.elapsed().as_millis(),
    });
}

fn cmd_verify_paper(args: VerifyPaperArgs) -> anyhow::Result<i32> {
    let config = EngineConfig {
        mode: Mode::Exact,
        max_columns: args.max_columns,
        ..EngineConfig::default()
    };
    let mut rows = Vec::new();

    run_row(&mut rows, "Corollary 2.4: Coxeter vanishing, SU(2)..SU(12)", || {
        corollary_divergence()
    });
    run_row(&mut rows, "Example 3.1 (q=3): SU(4) relocation + membership", || {
        if args.corrupt_generator {
            corrupted_example_divergence()
        } else {
            example_divergence(3, &config)
        }
    });
    run_row(&mut rows, "Example 3.1 (q=5): SU(6) relocation + membership", || {
        example_divergence(5, &config)
    });
    run_row(&mut rows, "Theorem 3.3 (q=3, n=2): SU(6)/SU(3)^2", || {
        family_divergence(3, 2, &config)
    });
    run_row(&mut rows, "Theorem 3.3 (q=3, n=3): SU(9)/SU(3)^3", || {
        family_divergence(3, 3, &config)
    });
    run_row(&mut rows, "Theorem 3.3 (q=5, n=2): SU(10)/SU(5)^2", || {
        family_divergence(5, 2, &config)
    });
    run_row(&mut rows, "Lemma 3.4 / Theorem 3.5 (n=2): SU(8)/SU(4)^2", || {
        family_divergence(4, 2, &config)
    });
    run_row(&mut rows, "Lemma 3.4 / Theorem 3.5 (n=3): SU(12)/SU(4)^3", || {
        family_divergence(4, 3, &config)
    });

    let mut failed = 0usize;
    let mut skipped = 0usize;
    for row in &rows {
        let (tag, note) = match &row.status {
            RowStatus::Pass => ("PASS", String::new()),
            RowStatus::Fail(detail) => {
                failed += 1;
                ("FAIL", format!("  <- {detail}"))
            }
            RowStatus::Skipped(reason) => {
                skipped += 1;
                ("SKIPPED", format!("  <- {reason}"))
            }
        };
        println!("{tag:<8} {:<52} {:>7} ms{note}", row.label, row.ms);
    }
    println!(
        "{} rows: {} passed, {} failed, {} skipped",
        rows.len(),
        rows.len() - failed - skipped,
        failed,
        skipped
    );
    Ok(if failed > 0 {
        1
    } else if skipped > 0 {
        2
    } else {
        0
    })
}

fn corollary_divergence() -> Result<Option<String>, EngineError> {
    let v = verify_corollary_2_4(12)?;
    Ok(v.rows.iter().find_map(|r| {
        if !r.lower_all_vanish {
            Some(format!(
                "a generator below the top degree fails to vanish at X1 of SU({})",
                r.n
            ))
        } else if !r.top_nonzero {
            Some(format!("P{0}(X1) = 0 unexpectedly for SU({0})", r.n))
        } else {
            None
        }
    }))
}

fn example_divergence(q: u32, config: &EngineConfig) -> Result<Option<String>, EngineError> {
    let v = verify_example_3_1(q, config)?;
    if v.partition.is_none() {
        return Ok(Some(format!(
            "no zero-sum partition of X1 into sizes [{}, 2]",
            q - 1
        )));
    }
    if !v.membership_non_member {
        return Ok(Some(format!(
            "P{} was reported a member of <<P2..P{}>>",
            q + 1,
            q
        )));
    }
    Ok(None)
}

/// The `--corrupt-generator` hook: the degree-4 target of the q=3 row is
/// replaced by P2^2, which genuinely lies in the subalgebra, so the
/// expected NON-MEMBER outcome must fail.  This proves a divergent value
/// cannot slip through as PASS.
fn corrupted_example_divergence() -> Result<Option<String>, EngineError> {
    let embedding = TorusEmbedding::full_torus(4);
    let ps = restrict(&embedding)?;
    let basis = vec![ps[0].clone(), ps[1].clone()];
    let corrupted = ps[0].mul(&ps[0])?;
    if subalgebra_membership(&basis, &corrupted)?.is_member() {
        Ok(Some(
            "membership reported MEMBER for the degree-4 target".to_string(),
        ))
    } else {
        Ok(None)
    }
}

fn family_divergence(
    q: u32,
    copies: u32,
    config: &EngineConfig,
) -> Result<Option<String>, EngineError> {
    let v = verify_family(q, copies, config)?;
    if let Some(r) = v
        .relocations
        .iter()
        .find(|r| !(r.residue_classes_sum_zero && r.partition_found))
    {
        return Ok(Some(format!("eigenvector X{} failed to relocate", r.k)));
    }
    if !v.span_ok {
        return Ok(Some(format!(
            "span dimension {} differs from rk H = {}",
            v.span_dimension, v.span_expected
        )));
    }
    if !v.membership_non_member {
        return Ok(Some(format!(
            "p{} was reported a member of the degree-{:?} subalgebra",
            v.membership_target_degree, v.membership_basis_degrees
        )));
    }
    if v.report.deficiency < 1 {
        return Ok(Some(format!(
            "deficiency {} is not positive",
            v.report.deficiency
        )));
    }
    Ok(None)
}

// --- eigen / membership / partition ------------------------------------

fn parse_generator(text: &str) -> anyhow::Result<u32> {
    let digits = text
        .strip_prefix('P')
        .or_else(|| text.strip_prefix('p'))
        .unwrap_or(text);
    digits
        .parse()
        .map_err(|_| anyhow!("cannot parse generator name `{text}`; write P2, P3, ..."))
}

fn cmd_eigen(args: EigenArgs) -> anyhow::Result<i32> {
    let j = parse_generator(&args.poly)?;
    let x = coxeter_eigenvector(args.n, args.k)?;
    let p = elementary_symmetric(args.n, j)?;
    println!("{}", eval_at_eigenvector(&p, &x)?);
    Ok(0)
}

fn cmd_membership(args: MembershipArgs) -> anyhow::Result<i32> {
    if args.n < 2 {
        bail!("--n must be at least 2, got {}", args.n);
    }
    for &d in args.basis.iter().chain([&args.target]) {
        if d < 2 || d > args.n {
            bail!("generator degree {d} out of range 2..={}", args.n);
        }
    }
    let ring = args.ring.unwrap_or(if args.blocks.is_some() {
        RingArg::Invariants
    } else {
        RingArg::Torus
    });
    let (ring_vars, generators, ring_label) = match ring {
        RingArg::Invariants => {
            let blocks = args
                .blocks
                .clone()
                .ok_or_else(|| anyhow!("--ring invariants needs --blocks"))?;
            let bd = BlockDecomposition::new(args.n, blocks)?;
            if bd.rank() == 0 {
                bail!("subgroup {} has rank 0", bd.subgroup_label());
            }
            let label = format!("block invariants of SU({})/{}", args.n, bd.subgroup_label());
            let presentation = block_invariant_presentation(&bd)?;
            let pairs: Vec<(u32, Polynomial<Rational>)> = presentation.generators().to_vec();
            (presentation.ring().clone(), pairs, label)
        }
        RingArg::Torus => {
            let embedding = match &args.blocks {
                Some(blocks) => {
                    block_embedding(&BlockDecomposition::new(args.n, blocks.clone())?)
                }
                None => TorusEmbedding::full_torus(args.n),
            };
            let label = match &args.blocks {
                Some(blocks) => format!("subtorus ring of SU({})/{blocks:?}", args.n),
                None => format!("full torus ring of SU({})", args.n),
            };
            let ps = restrict(&embedding)?;
            let pairs: Vec<(u32, Polynomial<Rational>)> = (2..).zip(ps).collect();
            (embedding.subtorus().clone(), pairs, label)
        }
    };
    let pick = |d: u32| -> Option<&Polynomial<Rational>> {
        generators
            .iter()
            .find(|(deg, p)| *deg == d && !p.is_zero())
            .map(|(_, p)| p)
    };
    let target = pick(args.target).ok_or_else(|| {
        anyhow!(
            "p{} restricts to zero in the {ring_label}; nothing to decide",
            args.target
        )
    })?;
    let basis: Vec<Polynomial<Rational>> = args
        .basis
        .iter()
        .map(|&d| {
            pick(d)
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(&ring_vars))
        })
        .collect();

    let columns = monomials_of_degree(&ring_vars, args.target).len();
    let limit = args
        .max_columns
        .unwrap_or(RankPolicy::default().exact_column_limit);
    if columns > limit {
        return Err(EngineError::Nakayama(NakayamaError::BudgetExceeded {
            degree: args.target,
            columns,
            limit,
            mode: RankMode::Exact,
        })
        .into());
    }

    match subalgebra_membership(&basis, target)? {
        Membership::Member(cert) => {
            println!("MEMBER");
            println!(
                "p{} = {} in the {ring_label}",
                args.target,
                render_combination(&cert.combination, &args.basis)
            );
        }
        Membership::NotMember => {
            println!("NON-MEMBER");
            println!(
                "p{} is not in the subalgebra generated by {} in the {ring_label}",
                args.target,
                args.basis
                    .iter()
                    .map(|d| format!("p{d}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
    }
    Ok(0)
}

fn render_combination(combination: &[(Vec<u32>, Rational)], degrees: &[u32]) -> String {
    combination
        .iter()
        .map(|(exps, coeff)| {
            let factors: Vec<String> = exps
                .iter()
                .zip(degrees)
                .filter(|(e, _)| **e > 0)
                .map(|(e, d)| {
                    if *e == 1 {
                        format!("p{d}")
                    } else {
                        format!("p{d}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                format!("({coeff})")
            } else {
                format!("({coeff})*{}", factors.join("*"))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_partition(args: PartitionArgs) -> anyhow::Result<i32> {
    let x = coxeter_eigenvector(args.n, args.k)?;
    match zero_sum_partition(&x, &args.sizes)? {
        Some(blocks) => println!("{}", serde_json::to_string(&blocks)?),
        None => println!("none exists"),
    }
    Ok(0)
}
