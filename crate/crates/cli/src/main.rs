//! Command-line front end for the skew Hurwitz polynomial engine.
//!
//! Exit codes: 0 when a verdict was computed (true or false alike), 2 when
//! an operation precondition was violated, 1 for configuration, parse, or
//! internal errors.

mod config;
mod expr;
mod render;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use config::{RawOptions, Session};
use hurwitz_core::annihilate::{
    ann_meet_image, annihilator, insulator_search, is_insulator, SearchOutcome, Side,
};
use hurwitz_core::hurwitz::{hp_mul, hp_stats};
use hurwitz_core::literal::{format_poly, parse_elem, parse_poly};
use hurwitz_core::primetest::{
    alpha_strongly_prime, example_verify, thm13_extract, thm13_lift, thm14_condition_b,
    OrbitRange, PrimeMode, PrimeQuestion, Thm14Outcome,
};
use hurwitz_core::{Error, Family, ImageQuery, Result};
use render::{
    certificate_json, lit, lits, members_text, poly_lits, primeness_json, primeness_text, Payload,
    Report,
};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Exact skew Hurwitz polynomial arithmetic and strong-primeness deciders over finite rings"
)]
struct Cli {
    /// Ring spec: zmod:N | gf:P,D | matrix:P,S | monomial:G,P
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Endomorphism: identity | frobenius | shift | table:i0,i1,...
    #[arg(long, global = true)]
    alpha: Option<String>,
    /// Element-count cap (default 2^20)
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Degree bound D for bounded polynomial annihilators
    #[arg(long, global = true)]
    degree_bound: Option<u64>,
    /// Generator-set size for ideal enumeration in modes 2 and 3
    #[arg(long, global = true)]
    gen_size: Option<usize>,
    /// Output format: text | json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Seed for sampled re-verifications
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (output bytes are identical for any value)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write the JSON report to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Key-value config file; flags override file settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Append a wall-clock line to text output (nondeterministic)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

impl SideArg {
    fn name(self) -> &'static str {
        match self {
            SideArg::Left => "left",
            SideArg::Right => "right",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Skew Hurwitz polynomial arithmetic
    Hp {
        #[command(subcommand)]
        op: HpOp,
    },
    /// One-sided annihilators
    Ann {
        #[command(subcommand)]
        op: AnnOp,
    },
    /// Insulator predicate and minimal-certificate search
    Insulator {
        #[command(subcommand)]
        op: InsulatorOp,
    },
    /// Strong primeness of the coefficient ring
    Prime {
        #[command(subcommand)]
        op: PrimeOp,
    },
    /// Alpha-strong primeness of the coefficient ring
    AlphaPrime {
        #[command(subcommand)]
        op: AlphaPrimeOp,
    },
    /// Lift/extract between ring insulators and polynomial families
    Thm13 {
        #[command(subcommand)]
        op: Thm13Op,
    },
    /// Right-side sum-chain condition
    Thm14 {
        #[command(subcommand)]
        op: Thm14Op,
    },
    /// The one-sided monomial-algebra example
    Example {
        #[command(subcommand)]
        op: ExampleOp,
    },
}

#[derive(Subcommand)]
enum HpOp {
    /// Multiply two polynomials (literals like `0:(w+1) + 2:1`)
    Mul { f: String, g: String },
    /// Support, minimal/maximal degree and leading coefficient
    Stats { f: String },
}

#[derive(Subcommand)]
enum AnnOp {
    /// Left annihilator of a set expression
    Left { set: String },
    /// Right annihilator of a set expression
    Right { set: String },
    /// Right annihilator intersected with the n-th image of alpha
    MeetImage {
        set: String,
        /// Image power, or `eventual`
        #[arg(long)]
        n: String,
    },
}

#[derive(Subcommand)]
enum InsulatorOp {
    /// Is the set an insulator on the given side?
    Check {
        set: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Minimal insulator inside an ideal, or a proof that none exists
    Search {
        set: String,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Largest certificate cardinality to search for
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum PrimeOp {
    Check {
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        /// 2 | 3 | 4 | panel
        #[arg(long, default_value = "panel")]
        mode: String,
    },
}

#[derive(Subcommand)]
enum AlphaPrimeOp {
    Check {
        /// Test only k = 0 instead of the full orbit (automorphism shortcut)
        #[arg(long)]
        k_zero_only: bool,
    },
}

#[derive(Subcommand)]
enum Thm13Op {
    /// Lift a ring insulator family to degree-u polynomials and check the
    /// bounded-degree annihilator
    Lift {
        /// Source set expression
        #[arg(long)]
        set: String,
        /// Common degree of the lifted polynomials
        #[arg(long)]
        degree: u64,
        /// Degree bound for the annihilator check (default 2*degree+2)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Extract the coefficient set of a polynomial family and test the
    /// orbit annihilator conditions
    Extract {
        /// Semicolon-separated polynomial literals
        polys: String,
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Thm14Op {
    Check {
        /// The nonzero ring element a
        #[arg(long)]
        elem: String,
        /// The starting image power m
        #[arg(long)]
        m: u64,
        /// Extra chain steps beyond detected stabilization
        #[arg(long, default_value_t = 0)]
        extra: u64,
    },
}

#[derive(Subcommand)]
enum ExampleOp {
    /// Both one-sided verdicts on the truncated monomial model
    Verify,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_precondition() { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => Some(config::read_config_file(path)?),
        None => None,
    };
    let raw = RawOptions {
        ring: cli.ring,
        alpha: cli.alpha,
        cap: cli.cap,
        degree_bound: cli.degree_bound,
        gen_size: cli.gen_size,
        format: cli.format,
        seed: cli.seed,
        threads: cli.threads,
        out: cli.out,
        timing: if cli.timing { Some(true) } else { None },
    };
    let session = config::resolve(raw, file)?;
    // the pool size must not affect output bytes; results are merged in
    // canonical element order regardless of schedule
    rayon::ThreadPoolBuilder::new()
        .num_threads(session.threads)
        .build_global()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let started = std::time::Instant::now();
    let report = dispatch(&session, &cli.command)?;
    let elapsed = if session.timing {
        Some(started.elapsed().as_millis())
    } else {
        None
    };
    let stdout_text = render::emit(&session, &report, elapsed);
    print!("{stdout_text}");
    if let Some(path) = &session.out {
        let mut s = serde_json::to_string_pretty(&render::report_json(&session, &report))
            .expect("report serializes");
        s.push('\n');
        std::fs::write(path, s)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn dispatch(session: &Session, command: &Command) -> Result<Report> {
    let ring = &session.ring;
    let alpha = &session.alpha;
    match command {
        Command::Hp { op } => match op {
            HpOp::Mul { f, g } => {
                let pf = parse_poly(ring, f)?;
                let pg = parse_poly(ring, g)?;
                let prod = hp_mul(ring, alpha, &pf, &pg)?;
                let stats = if prod.is_zero() {
                    None
                } else {
                    Some(hp_stats(ring, &prod)?)
                };
                Ok(Report {
                    command: format!("hp mul {f} {g}"),
                    payload: Payload {
                        json: json!({
                            "kind": "hp-mul",
                            "product": format_poly(ring, &prod),
                            "is_zero": prod.is_zero(),
                            "support": prod.support(),
                            "pi": stats.as_ref().map(|s| s.pi),
                            "delta": stats.as_ref().map(|s| s.delta),
                        }),
                        text: vec![
                            format!("product: {}", format_poly(ring, &prod)),
                            match &stats {
                                Some(s) => format!(
                                    "support: {:?} | pi {} | delta {} | leading {}",
                                    s.supp,
                                    s.pi,
                                    s.delta,
                                    lit(ring, s.leading)
                                ),
                                None => "support: [] (zero polynomial)".to_string(),
                            },
                        ],
                    },
                    caveats: Vec::new(),
                })
            }
            HpOp::Stats { f } => {
                let pf = parse_poly(ring, f)?;
                let s = hp_stats(ring, &pf)?;
                Ok(Report {
                    command: format!("hp stats {f}"),
                    payload: Payload {
                        json: json!({
                            "kind": "hp-stats",
                            "supp": s.supp,
                            "pi": s.pi,
                            "delta": s.delta,
                            "leading": lit(ring, s.leading),
                        }),
                        text: vec![format!(
                            "support: {:?} | pi {} | delta {} | leading {}",
                            s.supp,
                            s.pi,
                            s.delta,
                            lit(ring, s.leading)
                        )],
                    },
                    caveats: Vec::new(),
                })
            }
        },
        Command::Ann { op } => match op {
            AnnOp::Left { set } | AnnOp::Right { set } => {
                let side = match op {
                    AnnOp::Left { .. } => Side::Left,
                    _ => Side::Right,
                };
                let f = expr::parse_set_expr(ring, alpha, set)?;
                let ann = annihilator(ring, &f, side)?;
                Ok(Report {
                    command: format!("ann {} {set}", side.name()),
                    payload: Payload {
                        json: json!({
                            "kind": "annihilator",
                            "side": side.name(),
                            "input": lits(ring, f.members()),
                            "members": lits(ring, ann.members()),
                            "size": ann.len(),
                            "is_zero": ann.is_zero_only(),
                            "span_dim": ann.span_dim(),
                        }),
                        text: vec![
                            format!(
                                "input set ({} elements): {{{}}}",
                                f.len(),
                                members_text(ring, f.members())
                            ),
                            format!(
                                "{} annihilator ({} elements): {{{}}}",
                                side.name(),
                                ann.len(),
                                members_text(ring, ann.members())
                            ),
                            format!("is zero: {}", ann.is_zero_only()),
                        ],
                    },
                    caveats: Vec::new(),
                })
            }
            AnnOp::MeetImage { set, n } => {
                let f = expr::parse_set_expr(ring, alpha, set)?;
                let query = if n == "eventual" {
                    ImageQuery::Eventual
                } else {
                    ImageQuery::Power(
                        n.parse()
                            .map_err(|_| Error::Parse(format!("bad image power `{n}`")))?,
                    )
                };
                let (meet, n_used) = ann_meet_image(ring, alpha, &f, query)?;
                Ok(Report {
                    command: format!("ann meet-image {set} --n {n}"),
                    payload: Payload {
                        json: json!({
                            "kind": "ann-meet-image",
                            "n_requested": n,
                            "n_used": n_used,
                            "members": lits(ring, meet.members()),
                            "size": meet.len(),
                            "is_zero": meet.is_zero_only(),
                        }),
                        text: vec![
                            format!("n: requested {n}, used {n_used}"),
                            format!(
                                "intersection ({} elements): {{{}}}",
                                meet.len(),
                                members_text(ring, meet.members())
                            ),
                            format!("is zero: {}", meet.is_zero_only()),
                        ],
                    },
                    caveats: Vec::new(),
                })
            }
        },
        Command::Insulator { op } => match op {
            InsulatorOp::Check { set, side } => {
                let f = expr::parse_set_expr(ring, alpha, set)?;
                let (ok, cert) = is_insulator(ring, &f, (*side).into())?;
                Ok(Report {
                    command: format!("insulator check {set} --side {}", side.name()),
                    payload: Payload {
                        json: json!({
                            "kind": "insulator-check",
                            "side": side.name(),
                            "verdict": ok,
                            "certificate": cert.as_ref().map(|c| certificate_json(ring, c)),
                        }),
                        text: vec![
                            format!("verdict: {ok}"),
                            match &cert {
                                Some(c) => format!(
                                    "certificate (size {}): {{{}}}",
                                    c.cardinality,
                                    members_text(ring, &c.members)
                                ),
                                None => "certificate: none".to_string(),
                            },
                        ],
                    },
                    caveats: Vec::new(),
                })
            }
            InsulatorOp::Search {
                set,
                side,
                max_size,
            } => {
                let ideal = expr::parse_set_expr(ring, alpha, set)?;
                let outcome = insulator_search(ring, &ideal, (*side).into(), *max_size)?;
                let (json_val, text) = match &outcome {
                    SearchOutcome::Found(c) => (
                        json!({
                            "kind": "insulator-search",
                            "outcome": "found",
                            "certificate": certificate_json(ring, c),
                            "witness": Option::<String>::None,
                        }),
                        vec![
                            "outcome: found".to_string(),
                            format!(
                                "certificate (size {}{}): {{{}}}",
                                c.cardinality,
                                if c.fallback_full_set {
                                    ", full-set fallback"
                                } else {
                                    ""
                                },
                                members_text(ring, &c.members)
                            ),
                        ],
                    ),
                    SearchOutcome::ProvedAbsent { witness } => (
                        json!({
                            "kind": "insulator-search",
                            "outcome": "proved-absent",
                            "certificate": Option::<String>::None,
                            "witness": lit(ring, *witness),
                        }),
                        vec![
                            "outcome: proved-absent".to_string(),
                            format!("annihilating witness: {}", lit(ring, *witness)),
                        ],
                    ),
                };
                Ok(Report {
                    command: format!(
                        "insulator search {set} --side {} --max-size {max_size}",
                        side.name()
                    ),
                    payload: Payload {
                        json: json_val,
                        text,
                    },
                    caveats: Vec::new(),
                })
            }
        },
        Command::Prime { op } => {
            let PrimeOp::Check { side, mode } = op;
            let question = match mode.as_str() {
                "2" => PrimeQuestion::Mode(PrimeMode::TwoSided),
                "3" => PrimeQuestion::Mode(PrimeMode::OneSided),
                "4" => PrimeQuestion::Mode(PrimeMode::Principal),
                "panel" => PrimeQuestion::Panel,
                other => return Err(Error::Parse(format!("unknown mode `{other}`"))),
            };
            let rep = hurwitz_core::primetest::strongly_prime(
                ring,
                (*side).into(),
                question,
                session.gen_size,
            )?;
            Ok(Report {
                command: format!("prime check --side {} --mode {mode}", side.name()),
                payload: Payload {
                    json: primeness_json(ring, &rep),
                    text: primeness_text(ring, &rep),
                },
                caveats: rep.caveats.clone(),
            })
        }
        Command::AlphaPrime { op } => {
            let AlphaPrimeOp::Check { k_zero_only } = op;
            let range = if *k_zero_only {
                OrbitRange::ZeroOnly
            } else {
                OrbitRange::Full
            };
            let rep = alpha_strongly_prime(ring, alpha, range)?;
            Ok(Report {
                command: format!(
                    "alpha-prime check{}",
                    if *k_zero_only { " --k-zero-only" } else { "" }
                ),
                payload: Payload {
                    json: primeness_json(ring, &rep),
                    text: primeness_text(ring, &rep),
                },
                caveats: rep.caveats.clone(),
            })
        }
        Command::Thm13 { op } => match op {
            Thm13Op::Lift { set, degree, bound } => {
                let f = expr::parse_set_expr(ring, alpha, set)?;
                let d = bound.or(session.degree_bound).unwrap_or(2 * degree + 2);
                let lifted = thm13_lift(ring, alpha, &f, *degree, d)?;
                let sample: Vec<String> = poly_lits(ring, &lifted.bounded.members)
                    .into_iter()
                    .take(5)
                    .collect();
                Ok(Report {
                    command: format!("thm13 lift --set {set} --degree {degree} --bound {d}"),
                    payload: Payload {
                        json: json!({
                            "kind": "thm13-lift",
                            "source": lits(ring, &lifted.source),
                            "degree": lifted.degree,
                            "members": poly_lits(ring, &lifted.members),
                            "degree_bound": d,
                            "insulated_to_bound": lifted.insulated_to_bound,
                            "annihilator_count": lifted.bounded.nonzero_count.to_string(),
                            "annihilator_sample": sample,
                            "partial_note": "degrees above the bound are unchecked",
                        }),
                        text: vec![
                            format!("source: {{{}}}", members_text(ring, &lifted.source)),
                            format!(
                                "lifted family: {}",
                                poly_lits(ring, &lifted.members).join("; ")
                            ),
                            format!(
                                "bounded annihilator up to degree {d}: {} ({} nonzero solutions; degrees above the bound unchecked)",
                                if lifted.insulated_to_bound {
                                    "empty"
                                } else {
                                    "nonempty"
                                },
                                lifted.bounded.nonzero_count
                            ),
                        ],
                    },
                    caveats: Vec::new(),
                })
            }
            Thm13Op::Extract { polys, bound } => {
                let fam = expr::parse_poly_list(ring, polys)?;
                let ex = thm13_extract(
                    ring,
                    alpha,
                    &fam,
                    bound.or(session.degree_bound),
                    session.seed,
                )?;
                let per_k_json: Vec<_> = ex
                    .per_k
                    .iter()
                    .map(|&(k, ok)| json!({"k": k, "zero_annihilator": ok}))
                    .collect();
                let shifted_json: Vec<_> = ex
                    .shifted
                    .iter()
                    .map(|s| {
                        json!({"k": s.k, "degree_bound": s.degree_bound, "insulated": s.insulated})
                    })
                    .collect();
                let mut text = vec![
                    format!(
                        "coefficients: {{{}}}",
                        members_text(ring, &ex.coefficients)
                    ),
                    format!("verdict: {}", ex.verdict),
                ];
                for &(k, ok) in &ex.per_k {
                    text.push(format!("orbit k={k}: zero annihilator {ok}"));
                }
                for s in &ex.shifted {
                    text.push(format!(
                        "shifted family k={} (bound {}): insulated {}",
                        s.k, s.degree_bound, s.insulated
                    ));
                }
                Ok(Report {
                    command: format!("thm13 extract {polys}"),
                    payload: Payload {
                        json: json!({
                            "kind": "thm13-extract",
                            "coefficients": lits(ring, &ex.coefficients),
                            "per_k": per_k_json,
                            "verdict": ex.verdict,
                            "shifted": shifted_json,
                        }),
                        text,
                    },
                    caveats: Vec::new(),
                })
            }
        },
        Command::Thm14 { op } => {
            let Thm14Op::Check { elem, m, extra } = op;
            let a = parse_elem(ring, elem)?;
            let outcome = thm14_condition_b(ring, alpha, a, *m, *extra)?;
            let (json_val, text) = match &outcome {
                Thm14Outcome::Certificate(c) => (
                    json!({
                        "kind": "thm14-check",
                        "outcome": "certificate",
                        "certificate": {
                            "a": lit(ring, c.a),
                            "m": c.m,
                            "k": c.k,
                            "insulator": lits(ring, &c.insulator),
                            "n": c.n,
                            "u": c.u,
                            "chain_steps": c.chain_steps,
                            "verified": c.verified,
                        },
                        "fail": Option::<String>::None,
                    }),
                    vec![
                        "outcome: certificate".to_string(),
                        format!(
                            "a = {} | m = {} | k = {} | n = {} | u = {}",
                            lit(ring, c.a),
                            c.m,
                            c.k,
                            c.n,
                            c.u
                        ),
                        format!("insulator: {{{}}}", members_text(ring, &c.insulator)),
                        format!(
                            "chain steps: {} | re-verified: {}",
                            c.chain_steps, c.verified
                        ),
                    ],
                ),
                Thm14Outcome::ProvedFail {
                    sum_members,
                    obstruction,
                } => (
                    json!({
                        "kind": "thm14-check",
                        "outcome": "proved-fail",
                        "certificate": Option::<String>::None,
                        "fail": {
                            "sum_members": lits(ring, sum_members),
                            "obstruction": lit(ring, *obstruction),
                        },
                    }),
                    vec![
                        "outcome: proved-fail".to_string(),
                        format!(
                            "stabilized sum ({} elements): {{{}}}",
                            sum_members.len(),
                            members_text(ring, sum_members)
                        ),
                        format!("obstruction: {}", lit(ring, *obstruction)),
                    ],
                ),
            };
            Ok(Report {
                command: format!("thm14 check --elem {elem} --m {m} --extra {extra}"),
                payload: Payload {
                    json: json_val,
                    text,
                },
                caveats: Vec::new(),
            })
        }
        Command::Example { op } => {
            let ExampleOp::Verify = op;
            let Family::MonomialAlgebra { g, p } = *ring.family() else {
                return Err(Error::Precondition(
                    "example verify requires --ring monomial:G,P".into(),
                ));
            };
            if session.alpha_name != "shift" {
                return Err(Error::Precondition(
                    "example verify requires --alpha shift".into(),
                ));
            }
            let rep = example_verify(g, p, ring.cap())?;
            let left_json = primeness_json(ring, &rep.left);
            let mut text = vec![
                format!("generators: {g} | prime: {p}"),
                format!(
                    "left: verdict {} (expected false: {})",
                    rep.left.verdict, rep.left_expected_false
                ),
            ];
            if let Some(w) = &rep.left.witness {
                text.push(format!("left witness: {}", render::witness_text(ring, w)));
            }
            text.push(format!(
                "witness is augmentation ideal: {} | annihilator is top generator: {} | verified for all orbit k: {}",
                rep.witness_is_augmentation_ideal,
                rep.witness_annihilator_is_top_generator,
                rep.witness_all_orbit
            ));
            text.push(format!(
                "right: {}/{} nonzero elements pass r(a) meet alpha^n(R) = 0",
                rep.right_passed, rep.right_total
            ));
            if let Some((a, n)) = rep.right_first_failure {
                text.push(format!(
                    "right first failure: a = {} at n = {n}",
                    lit(ring, a)
                ));
            }
            Ok(Report {
                command: "example verify".to_string(),
                payload: Payload {
                    json: json!({
                        "kind": "example-verify",
                        "g": rep.g,
                        "p": rep.p,
                        "left": left_json,
                        "left_expected_false": rep.left_expected_false,
                        "witness_is_augmentation_ideal": rep.witness_is_augmentation_ideal,
                        "witness_annihilator_is_top_generator": rep.witness_annihilator_is_top_generator,
                        "witness_all_orbit": rep.witness_all_orbit,
                        "right_total": rep.right_total,
                        "right_passed": rep.right_passed,
                        "right_first_failure": rep.right_first_failure.map(|(a, n)| json!({"a": lit(ring, a), "n": n})),
                    }),
                    text,
                },
                caveats: rep.caveats.clone(),
            })
        }
    }
}
