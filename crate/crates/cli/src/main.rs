//! `influence` — command-line surface for the threshold diffusion model
//! with marketing and its two influence logics.
//!
//! Exit codes are a stable contract: 0 for success and true verdicts, 1
//! for false verdicts and rejected proofs, 2 for any error. Output is
//! deterministic: agent sets render sorted, numbers render as exact
//! rationals.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use influence_cli::formats::{
    spend_from_file, CanonOutput, GateNames, HypothesesFile, NetworkFile, ProofFile, SpendFile,
};
use influence_core::{
    build_preventive_canonical, build_promotional_canonical, check_derivation, derive_atomic,
    evaluate, min_blocking_budget, min_promotion_budget, parse_formula, parse_scalar,
    render_agent_set, AgentSet, BlockingResult, Formula, Hypotheses, Network, PromotionResult, Rat,
    SemanticsMode, Sentence, Spending,
};

#[derive(Parser)]
#[command(
    name = "influence",
    version,
    about = "Threshold diffusion with marketing: traces, influence verdicts, budgets, canonical networks, derivations and proof checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Existential over campaigns: some budget-bounded campaign works.
    Promo,
    /// Universal over campaigns: every budget-bounded campaign fails to block.
    Prev,
}

impl From<ModeArg> for SemanticsMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Promo => SemanticsMode::Promotional,
            ModeArg::Prev => SemanticsMode::Preventive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run diffusion from a seed set and print the fixpoint (or the whole
    /// chain with --trace).
    Diffuse {
        #[arg(long)]
        network: PathBuf,
        /// Comma-separated agent list; empty for the empty seed.
        #[arg(long, default_value = "")]
        seed: String,
        /// Campaign file; omitted means the zero campaign.
        #[arg(long)]
        spend: Option<PathBuf>,
        /// Print every diffusion round, one set per line.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a formula on a network; prints true/false.
    Eval {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        formula: String,
    },
    /// Compute the minimal promotion budget or the blocking infimum.
    Budget {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Build a canonical network from a hypothesis file.
    Canon {
        #[arg(long, value_enum)]
        system: ModeArg,
        #[arg(long)]
        hypotheses: PathBuf,
        /// Extra budget levels for the preventive construction
        /// (comma-separated); hypothesis budgets are always included.
        #[arg(long)]
        budgets: Option<String>,
    },
    /// Decide derivability of an atomic query; prints true/false.
    Derive {
        #[arg(long, value_enum)]
        system: ModeArg,
        #[arg(long)]
        hypotheses: PathBuf,
        /// An atom in the formula grammar, e.g. "{b,c} |>3 {d}".
        #[arg(long)]
        query: String,
        /// Where to write a checkable derivation when the query holds.
        #[arg(long)]
        explain: Option<PathBuf>,
    },
    /// Check a proof file against a hypothesis file; prints
    /// accepted/rejected with line diagnostics.
    Check {
        #[arg(long, value_enum)]
        system: ModeArg,
        #[arg(long)]
        hypotheses: PathBuf,
        #[arg(long)]
        proof: PathBuf,
    },
}

/// True verdicts and plain reports exit 0, false verdicts exit 1.
enum Outcome {
    Success,
    False,
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::False) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Diffuse { network, seed, spend, trace } => {
            let net = load_network(&network)?;
            let seed = parse_agent_list(&seed);
            let spending = match spend {
                Some(path) => {
                    let file: SpendFile = load_json(&path)?;
                    spend_from_file(&file).map_err(|e| e.to_string())?
                }
                None => Spending::zero(),
            };
            let result = net.diffuse_fixpoint(&seed, &spending).map_err(|e| e.to_string())?;
            if trace {
                for step in result.chain() {
                    println!("{}", render_agent_set(step));
                }
            } else {
                println!("{}", render_agent_set(result.fixpoint()));
            }
            Ok(Outcome::Success)
        }
        Command::Eval { network, mode, formula } => {
            let net = load_network(&network)?;
            let parsed: Sentence = parse_formula(&formula).map_err(|e| e.to_string())?;
            let verdict = evaluate(&net, &parsed, mode.into()).map_err(|e| e.to_string())?;
            println!("{verdict}");
            Ok(if verdict { Outcome::Success } else { Outcome::False })
        }
        Command::Budget { network, mode, from, to } => {
            let net = load_network(&network)?;
            let from = parse_agent_list(&from);
            let to = parse_agent_list(&to);
            match mode {
                ModeArg::Promo => {
                    match min_promotion_budget(&net, &from, &to).map_err(|e| e.to_string())? {
                        PromotionResult::Feasible { min_budget, witness } => {
                            println!("min_budget {min_budget}");
                            println!("spend {}", render_spend(&witness));
                        }
                        PromotionResult::Infeasible => println!("infeasible"),
                    }
                }
                ModeArg::Prev => {
                    match min_blocking_budget(&net, &from, &to).map_err(|e| e.to_string())? {
                        BlockingResult::Blockable { infimum, attained, witness_set } => {
                            println!(
                                "blocking_infimum {infimum} attained {attained} clamp {}",
                                render_agent_set(&witness_set)
                            );
                        }
                        BlockingResult::Unblockable => println!("unblockable"),
                    }
                }
            }
            Ok(Outcome::Success)
        }
        Command::Canon { system, hypotheses, budgets } => {
            let x = load_hypotheses(&hypotheses)?;
            let output = match system {
                ModeArg::Promo => {
                    let canon = build_promotional_canonical(&x);
                    CanonOutput {
                        network: NetworkFile::from_network(&canon.network),
                        names: canon
                            .alpha
                            .iter()
                            .zip(&canon.beta)
                            .enumerate()
                            .map(|(i, (alpha, beta))| {
                                (
                                    (i + 1).to_string(),
                                    GateNames { alpha: alpha.clone(), beta: beta.clone() },
                                )
                            })
                            .collect(),
                        epsilon: None,
                    }
                }
                ModeArg::Prev => {
                    let mut levels: BTreeSet<Rat> = x.budgets();
                    if let Some(raw) = budgets {
                        for piece in raw.split(',').filter(|p| !p.trim().is_empty()) {
                            levels.insert(parse_scalar(piece).map_err(|e| e.to_string())?);
                        }
                    }
                    let canon =
                        build_preventive_canonical(&x, &levels).map_err(|e| e.to_string())?;
                    CanonOutput {
                        network: NetworkFile::from_network(&canon.network),
                        names: canon
                            .labels
                            .iter()
                            .zip(canon.alpha.iter().zip(&canon.beta))
                            .map(|(label, (alpha, beta))| {
                                let key = format!(
                                    "({}, {})",
                                    render_agent_set(&label.closure),
                                    label.budget
                                );
                                (key, GateNames { alpha: alpha.clone(), beta: beta.clone() })
                            })
                            .collect(),
                        epsilon: Some(canon.epsilon.to_string()),
                    }
                }
            };
            let rendered = serde_json::to_string_pretty(&output).map_err(|e| e.to_string())?;
            println!("{rendered}");
            Ok(Outcome::Success)
        }
        Command::Derive { system, hypotheses, query, explain } => {
            let x = load_hypotheses(&hypotheses)?;
            let parsed: Sentence = parse_formula(&query).map_err(|e| e.to_string())?;
            let Formula::Atom { left, budget, right } = parsed else {
                return Err("query must be an atom of the form SET |>p SET".into());
            };
            let proof = derive_atomic(system.into(), &x, &left, &right, &budget)
                .map_err(|e| e.to_string())?;
            match proof {
                Some(derivation) => {
                    println!("true");
                    if let Some(path) = explain {
                        let file = ProofFile::from_derivation(&derivation);
                        let rendered =
                            serde_json::to_string_pretty(&file).map_err(|e| e.to_string())?;
                        fs::write(&path, rendered + "\n")
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                    }
                    Ok(Outcome::Success)
                }
                None => {
                    println!("false");
                    Ok(Outcome::False)
                }
            }
        }
        Command::Check { system, hypotheses, proof } => {
            let x = load_hypotheses(&hypotheses)?;
            let file: ProofFile = load_json(&proof)?;
            let derivation = file.to_derivation(system.into()).map_err(|e| e.to_string())?;
            match check_derivation(&derivation, &x) {
                Ok(()) => {
                    println!("accepted");
                    Ok(Outcome::Success)
                }
                Err(e) => {
                    println!("rejected: {e}");
                    Ok(Outcome::False)
                }
            }
        }
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_network(path: &Path) -> Result<Network, String> {
    let file: NetworkFile = load_json(path)?;
    file.to_network().map_err(|e| e.to_string())
}

fn load_hypotheses(path: &Path) -> Result<Hypotheses, String> {
    let file: HypothesesFile = load_json(path)?;
    file.to_hypotheses().map_err(|e| e.to_string())
}

/// `a,c` or `{a, c}` or empty; whitespace-insensitive.
fn parse_agent_list(raw: &str) -> AgentSet {
    let trimmed = raw.trim();
    let inner =
        trimmed.strip_prefix('{').and_then(|rest| rest.strip_suffix('}')).unwrap_or(trimmed);
    inner.split(',').map(str::trim).filter(|piece| !piece.is_empty()).map(String::from).collect()
}

/// `{alpha_1: 1, alpha_2: 2}`, sorted by agent.
fn render_spend(spending: &Spending) -> String {
    let mut out = String::from("{");
    for (i, (agent, amount)) in spending.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{agent}: {amount}");
    }
    out.push('}');
    out
}
