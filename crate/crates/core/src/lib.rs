//! Threshold diffusion with marketing, and the two budget-annotated
//! influence logics it supports.
//!
//! The model: a finite social network where each agent has a threshold
//! (resistance to adoption), a propensity (responsiveness to marketing,
//! possibly negative), and weighted influence over its peers. A campaign
//! assigns non-negative spend to agents; adoption spreads in rounds until
//! a fixpoint. On top of the model sit two readings of the influence atom
//! `A |>p B`:
//!
//! * promotional — some campaign of total budget at most `p` carries
//!   adoption from `A` to all of `B`;
//! * preventive — every campaign of total budget at most `p` fails to
//!   stop `A` from carrying adoption to all of `B`.
//!
//! Each reading comes with an Armstrong-style axiom system (shared
//! Reflexivity and Augmentation; additive-budget Transitivity for the
//! promotional system, equal-budget Transitivity plus downward
//! Monotonicity for the preventive one), a proof checker, decision
//! procedures for both the semantic and the syntactic side, and canonical
//! network constructions that tie the two sides together as executable
//! completeness fixtures.
//!
//! All arithmetic is exact. The core is generic over [`scalar::Scalar`];
//! the aliases below fix the default rational instantiations.
//!
//! ```
//! use influence_core::{parse_scalar, Network, Spending};
//!
//! // u responds to marketing (propensity 2) and influences v with weight 2.
//! let net = Network::new(
//!     ["u".into(), "v".into()],
//!     [(("u".into(), "v".into()), parse_scalar("2").unwrap())],
//!     [("u".into(), parse_scalar("2").unwrap()), ("v".into(), parse_scalar("0").unwrap())].into(),
//!     [("u".into(), parse_scalar("4").unwrap()), ("v".into(), parse_scalar("2").unwrap())].into(),
//! ).unwrap();
//!
//! // Spending 2 on u activates it (2 * 2 >= 4), and peer pressure then
//! // carries v (2 >= 2): the whole network adopts from an empty seed.
//! let campaign = Spending::new([("u".into(), parse_scalar("2").unwrap())]).unwrap();
//! let trace = net.diffuse_fixpoint(&Default::default(), &campaign).unwrap();
//! assert_eq!(trace.fixpoint().len(), 2);
//! ```

pub mod canonical;
pub mod formula;
pub mod logic;
pub mod network;
pub mod scalar;
pub mod solver;

pub use canonical::{
    build_preventive_canonical, build_promotional_canonical, epsilon_for_budgets, CanonicalError,
    ClosureLabel, PrevCanonical, PromoCanonical,
};
pub use formula::{evaluate, parse_formula, Formula, ParseError, SemanticsMode};
pub use logic::{
    check_derivation, decide_derivable, derive_atomic, min_derivation_budget, preventive_closure,
    AtomicStatement, Derivation, DerivationError, DerivationLine, HypothesisSet, Justification,
    LogicError,
};
pub use network::{
    render_agent_set, AgentId, AgentSet, DiffusionTrace, NetworkError, SocialNetwork,
    SpendingFunction,
};
pub use scalar::{parse_scalar, NumberError, Scalar};
pub use solver::{
    decide_preventive, decide_promotional, min_blocking_budget, min_promotion_budget,
    oracle_blocking, oracle_promotion, BlockingResult, PromotionResult, SolverError,
};

/// Default exact scalar: arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
/// Word-sized exact rational, for hot paths with small bounded values.
pub type Rat64 = num_rational::Ratio<i64>;

/// The default concrete model types.
pub type Network = SocialNetwork<Rat>;
pub type Spending = SpendingFunction<Rat>;
pub type Trace = DiffusionTrace<Rat>;
pub type Sentence = Formula<Rat>;
pub type Hypotheses = HypothesisSet<Rat>;
pub type Proof = Derivation<Rat>;
