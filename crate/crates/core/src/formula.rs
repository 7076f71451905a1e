//! The influence formula language: atoms `A |>p B`, negation, implication.
//!
//! An atom relates two agent sets through a non-negative budget and is read
//! under one of two semantics. Promotional: some campaign of total budget
//! at most `p` makes the seed `A` spread adoption to all of `B`.
//! Preventive: every campaign of total budget at most `p` fails to stop `A`
//! from spreading to `B`. Connectives are classical either way.
//!
//! Concrete grammar (whitespace-insensitive between tokens):
//!
//! ```text
//! formula  := implies ;
//! implies  := unary ( "->" implies )? ;
//! unary    := "!" unary | "(" formula ")" | atom ;
//! atom     := set "|>" number set ;
//! set      := "{" ( ident ("," ident)* )? "}" | ident ;
//! number   := DECIMAL | INT "/" INT ;
//! ident    := [A-Za-z_][A-Za-z0-9_]* ;
//! ```

use std::fmt;

use thiserror::Error;

use crate::network::{AgentSet, NetworkError, SocialNetwork};
use crate::scalar::{parse_scalar, Scalar};
use crate::solver;

/// Which reading an atom gets: existential over campaigns (promotional) or
/// universal over campaigns (preventive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsMode {
    Promotional,
    Preventive,
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemanticsMode::Promotional => write!(f, "promotional"),
            SemanticsMode::Preventive => write!(f, "preventive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula<T> {
    Atom { left: AgentSet, budget: T, right: AgentSet },
    Not(Box<Formula<T>>),
    Implies(Box<Formula<T>>, Box<Formula<T>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("negative budget in atom")]
pub struct NegativeBudget;

impl<T: Scalar> Formula<T> {
    /// Atom constructor; budgets must be non-negative.
    pub fn atom(left: AgentSet, budget: T, right: AgentSet) -> Result<Self, NegativeBudget> {
        if budget.is_negative() {
            return Err(NegativeBudget);
        }
        Ok(Formula::Atom { left, budget, right })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula<T>) -> Self {
        Formula::Not(Box::new(inner))
    }

    pub fn implies(antecedent: Formula<T>, consequent: Formula<T>) -> Self {
        Formula::Implies(Box::new(antecedent), Box::new(consequent))
    }

    /// All agent identifiers mentioned anywhere in the formula.
    pub fn agents(&self) -> AgentSet {
        let mut out = AgentSet::new();
        self.collect_agents(&mut out);
        out
    }

    fn collect_agents(&self, out: &mut AgentSet) {
        match self {
            Formula::Atom { left, right, .. } => {
                out.extend(left.iter().cloned());
                out.extend(right.iter().cloned());
            }
            Formula::Not(inner) => inner.collect_agents(out),
            Formula::Implies(a, b) => {
                a.collect_agents(out);
                b.collect_agents(out);
            }
        }
    }
}

impl<T: Scalar> fmt::Display for Formula<T> {
    /// Canonical printing: sets are braced and sorted, `!` binds tighter
    /// than `->`, `->` prints right-associatively. `parse_formula` inverts
    /// this rendering exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { left, budget, right } => {
                write_set(f, left)?;
                write!(f, " |>{budget} ")?;
                write_set(f, right)
            }
            Formula::Not(inner) => {
                if matches!(**inner, Formula::Implies(..)) {
                    write!(f, "!({inner})")
                } else {
                    write!(f, "!{inner}")
                }
            }
            Formula::Implies(a, b) => {
                if matches!(**a, Formula::Implies(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
        }
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &AgentSet) -> fmt::Result {
    write!(f, "{{")?;
    for (i, agent) in set.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{agent}")?;
    }
    write!(f, "}}")
}

/// Parse failure, with the byte position where it happened.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses a formula from the concrete grammar.
pub fn parse_formula<T: Scalar>(text: &str) -> Result<Formula<T>, ParseError> {
    let mut parser = Parser { input: text.as_bytes(), pos: 0 };
    let formula = parser.implies()?;
    parser.skip_ws();
    if parser.pos != parser.input.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(formula)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn implies<T: Scalar>(&mut self) -> Result<Formula<T>, ParseError> {
        let head = self.unary()?;
        if self.eat("->") {
            let tail = self.implies()?;
            Ok(Formula::implies(head, tail))
        } else {
            Ok(head)
        }
    }

    fn unary<T: Scalar>(&mut self) -> Result<Formula<T>, ParseError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.implies()?;
                self.expect(")")?;
                Ok(inner)
            }
            _ => self.atom(),
        }
    }

    fn atom<T: Scalar>(&mut self) -> Result<Formula<T>, ParseError> {
        let left = self.set()?;
        self.expect("|>")?;
        let budget = self.number()?;
        let right = self.set()?;
        Ok(Formula::Atom { left, budget, right })
    }

    fn set(&mut self) -> Result<AgentSet, ParseError> {
        let mut out = AgentSet::new();
        if self.eat("{") {
            if self.peek() == Some(b'}') {
                self.pos += 1;
                return Ok(out);
            }
            loop {
                out.insert(self.ident()?);
                if self.eat(",") {
                    continue;
                }
                self.expect("}")?;
                return Ok(out);
            }
        }
        out.insert(self.ident()?);
        Ok(out)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.input.get(self.pos).is_some_and(|b| b.is_ascii_alphabetic() || *b == b'_') {
            self.pos += 1;
            while self.input.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            {
                self.pos += 1;
            }
            Ok(String::from_utf8_lossy(&self.input[start..self.pos]).into_owned())
        } else {
            Err(self.error("expected identifier"))
        }
    }

    /// Budget literal: decimal or `p/q`, non-negative. A leading minus is
    /// recognised so it can be rejected as a value error rather than a
    /// confusing syntax error.
    fn number<T: Scalar>(&mut self) -> Result<T, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.input.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        let first = self.numeric_token()?;
        let raw = if self.peek() == Some(b'/') {
            self.pos += 1;
            let second = self.numeric_token()?;
            if first.contains('.') || second.contains('.') {
                return Err(ParseError {
                    position: start,
                    message: "fraction parts must be integers".into(),
                });
            }
            format!("{first}/{second}")
        } else {
            first
        };
        let value: T = parse_scalar(&raw)
            .map_err(|e| ParseError { position: start, message: e.to_string() })?;
        if negative {
            return Err(ParseError { position: start, message: "negative budget".into() });
        }
        Ok(value)
    }

    fn numeric_token(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.input.get(self.pos).is_some_and(|b| b.is_ascii_digit() || *b == b'.') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected number"));
        }
        Ok(String::from_utf8_lossy(&self.input[start..self.pos]).into_owned())
    }
}

/// Evaluates a formula on a network under the chosen semantics. Atoms are
/// decided exactly by the solver; connectives are classical.
pub fn evaluate<T: Scalar>(
    net: &SocialNetwork<T>,
    formula: &Formula<T>,
    mode: SemanticsMode,
) -> Result<bool, NetworkError> {
    for agent in formula.agents() {
        if !net.contains(&agent) {
            return Err(NetworkError::UnknownAgent(agent));
        }
    }
    evaluate_unchecked(net, formula, mode)
}

fn evaluate_unchecked<T: Scalar>(
    net: &SocialNetwork<T>,
    formula: &Formula<T>,
    mode: SemanticsMode,
) -> Result<bool, NetworkError> {
    match formula {
        Formula::Atom { left, budget, right } => match mode {
            SemanticsMode::Promotional => solver::decide_promotional(net, left, right, budget),
            SemanticsMode::Preventive => solver::decide_preventive(net, left, right, budget),
        },
        Formula::Not(inner) => Ok(!evaluate_unchecked(net, inner, mode)?),
        Formula::Implies(a, b) => {
            Ok(!evaluate_unchecked(net, a, mode)? || evaluate_unchecked(net, b, mode)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn set(ids: &[&str]) -> AgentSet {
        ids.iter().map(|s| s.to_string()).collect()
    }

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    #[test]
    fn parses_atoms() {
        let f: Formula<Q> = parse_formula("{v} |>3 {x,z}").unwrap();
        assert_eq!(
            f,
            Formula::Atom { left: set(&["v"]), budget: q(3, 1), right: set(&["x", "z"]) }
        );
    }

    #[test]
    fn parses_negation_and_bare_singletons() {
        let f: Formula<Q> = parse_formula("!({a} |>0 {b})").unwrap();
        assert_eq!(
            f,
            Formula::not(Formula::Atom { left: set(&["a"]), budget: q(0, 1), right: set(&["b"]) })
        );
        let g: Formula<Q> = parse_formula("!a|>0 b").unwrap();
        assert_eq!(
            g,
            Formula::not(Formula::Atom { left: set(&["a"]), budget: q(0, 1), right: set(&["b"]) })
        );
    }

    #[test]
    fn implication_is_right_associative() {
        let f: Formula<Q> = parse_formula("{a}|>1{b} -> {a}|>2{b} -> {c}|>0{}").unwrap();
        let a1 = Formula::Atom { left: set(&["a"]), budget: q(1, 1), right: set(&["b"]) };
        let a2 = Formula::Atom { left: set(&["a"]), budget: q(2, 1), right: set(&["b"]) };
        let a3 = Formula::Atom { left: set(&["c"]), budget: q(0, 1), right: set(&[]) };
        assert_eq!(f, Formula::implies(a1, Formula::implies(a2, a3)));
    }

    #[test]
    fn budgets_parse_as_exact_rationals() {
        let f: Formula<Q> = parse_formula("{a} |>1/2 {b}").unwrap();
        let Formula::Atom { budget, .. } = f else { panic!() };
        assert_eq!(budget, q(1, 2));
        let f: Formula<Q> = parse_formula("{a} |>2.25 {b}").unwrap();
        let Formula::Atom { budget, .. } = f else { panic!() };
        assert_eq!(budget, q(9, 4));
    }

    #[test]
    fn duplicate_agents_deduplicate() {
        let f: Formula<Q> = parse_formula("{a,a,b} |>0 {b,b}").unwrap();
        let Formula::Atom { left, right, .. } = f else { panic!() };
        assert_eq!(left, set(&["a", "b"]));
        assert_eq!(right, set(&["b"]));
    }

    #[test]
    fn rejects_negative_budget_with_value_error() {
        let err = parse_formula::<Q>("{a} |>-1 {b}").unwrap_err();
        assert!(err.message.contains("negative budget"), "{err}");
        let err = parse_formula::<Q>("{a} |>1/0 {b}").unwrap_err();
        assert!(err.message.contains("zero denominator"), "{err}");
    }

    #[test]
    fn reports_positions_on_syntax_errors() {
        let err = parse_formula::<Q>("{a} |> {b}").unwrap_err();
        assert_eq!(err.position, 7);
        let err = parse_formula::<Q>("{a} |>1 {b} extra").unwrap_err();
        assert!(err.message.contains("trailing input"));
    }

    #[test]
    fn print_parse_round_trip() {
        let cases = [
            "{a, c} |>1 {d}",
            "{} |>0 {}",
            "!{a} |>1/2 {b}",
            "!({a} |>1 {b} -> {c} |>2 {d})",
            "({a} |>1 {b} -> {c} |>0 {}) -> {a} |>3/2 {a, b}",
        ];
        for case in cases {
            let f: Formula<Q> = parse_formula(case).unwrap();
            assert_eq!(f.to_string(), case);
            let again: Formula<Q> = parse_formula(&f.to_string()).unwrap();
            assert_eq!(again, f);
        }
    }
}
