//! The numeric type shared by all model quantities.
//!
//! Weights, thresholds, propensities, spends and budgets are generic over
//! [`Scalar`]: an ordered, signed, exactly comparable number. Activation
//! uses a non-strict `>=` whose boundary cases carry meaning (an agent with
//! threshold zero adopts unprompted, a blocking budget can be an infimum
//! that is never attained), so the trait demands `Ord`/`Eq` and thereby
//! rules out floating point. The crate root exports `BigRational` and
//! `Ratio<i64>` aliases as the two exact instantiations.

use std::fmt;

use num_traits::{FromPrimitive, Num, Signed};
use thiserror::Error;

/// Ordered signed exact number. Blanket-implemented; `BigRational` and
/// `Ratio<i64>` both qualify, floats do not (no total order).
pub trait Scalar: Num + Signed + FromPrimitive + Ord + Clone + fmt::Debug + fmt::Display {}

impl<T> Scalar for T where T: Num + Signed + FromPrimitive + Ord + Clone + fmt::Debug + fmt::Display {}

/// Failure to read a numeric literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("empty number literal")]
    Empty,
    #[error("malformed number literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses an exact scalar from `42`, `-3`, `2.5`, or `p/q` form.
///
/// Decimal literals are read exactly (`2.5` is 5/2, not a float); `p/q`
/// takes integer numerator and denominator with an optional leading minus
/// on the numerator.
pub fn parse_scalar<T: Scalar>(text: &str) -> Result<T, NumberError> {
    let raw = text.trim();
    if raw.is_empty() {
        return Err(NumberError::Empty);
    }
    let bad = || NumberError::Malformed(raw.to_string());

    if let Some((num_part, den_part)) = raw.split_once('/') {
        let (neg, digits) = split_sign(num_part.trim());
        let num: T = digits_to_scalar(digits).ok_or_else(bad)?;
        let den_digits = den_part.trim();
        let den: T = digits_to_scalar(den_digits).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(NumberError::ZeroDenominator(raw.to_string()));
        }
        let value = num / den;
        return Ok(if neg { -value } else { value });
    }

    let (neg, rest) = split_sign(raw);
    let value: T = match rest.split_once('.') {
        None => digits_to_scalar(rest).ok_or_else(bad)?,
        Some((int_part, frac_part)) => {
            if frac_part.is_empty() {
                return Err(bad());
            }
            let int: T = digits_to_scalar(int_part).ok_or_else(bad)?;
            let frac: T = digits_to_scalar(frac_part).ok_or_else(bad)?;
            let ten = T::from_u8(10).expect("small constant");
            let mut scale = T::one();
            for _ in 0..frac_part.len() {
                scale = scale * ten.clone();
            }
            int + frac / scale
        }
    };
    Ok(if neg { -value } else { value })
}

fn split_sign(text: &str) -> (bool, &str) {
    match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    }
}

/// Digit-string to scalar; `None` on empty input or non-digit characters.
fn digits_to_scalar<T: Scalar>(digits: &str) -> Option<T> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let ten = T::from_u8(10)?;
    let mut acc = T::zero();
    for b in digits.bytes() {
        acc = acc * ten.clone() + T::from_u8(b - b'0')?;
    }
    Some(acc)
}
