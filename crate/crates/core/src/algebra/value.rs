use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Encoding of the reserved top element of the string order.
pub const TOP_ENCODING: &str = "<TOP>";

/// An element of an algebra's carrier.
///
/// Numbers are exact rationals; integers are rationals with denominator one.
/// Token sets are kept sorted and duplicate-free by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Number(BigRational),
    Text(String),
    Set(BTreeSet<String>),
    /// Sentinel that sorts above every [`Value::Text`].
    Top,
}

impl Value {
    pub fn int(n: i64) -> Self {
        Value::Number(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Value::Number(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub fn set<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Value::Set(tokens.into_iter().map(Into::into).collect())
    }

    pub fn empty_set() -> Self {
        Value::Set(BTreeSet::new())
    }

    pub fn as_number(&self) -> Option<&BigRational> {
        match self {
            Value::Number(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Value::Number(n) if n.is_integer() => Some(n.numer()),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&BTreeSet<String>> {
        match self {
            Value::Set(s) => Some(s),
            _ => None,
        }
    }

    /// Canonical text encoding: decimal integers, `p/q` rationals in lowest
    /// terms, `{a,b}` sets with ascending members, bare strings, `<TOP>`.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    /// Family-agnostic decoding used for finite-table element names.
    ///
    /// `<TOP>` is the sentinel, `{...}` a token set, anything that parses as
    /// an integer or `p/q` rational is a number, and everything else is text.
    pub fn parse(s: &str) -> Value {
        if s == TOP_ENCODING {
            return Value::Top;
        }
        if let Some(set) = parse_set(s) {
            return set;
        }
        if let Some(n) = parse_number(s) {
            return Value::Number(n);
        }
        Value::Text(s.to_owned())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(n) => {
                if n.denom().is_one() {
                    write!(f, "{}", n.numer())
                } else {
                    write!(f, "{}/{}", n.numer(), n.denom())
                }
            }
            Value::Text(s) => f.write_str(s),
            Value::Set(tokens) => {
                f.write_str("{")?;
                for (i, t) in tokens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(t)?;
                }
                f.write_str("}")
            }
            Value::Top => f.write_str(TOP_ENCODING),
        }
    }
}

/// True for strings usable as set members: non-empty, no whitespace, no
/// braces or commas.
pub fn is_valid_token(t: &str) -> bool {
    !t.is_empty()
        && !t
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '{' | '}' | ','))
}

/// Parses `{a,b,...}`. Members may appear in any order; duplicates collapse.
pub(crate) fn parse_set(s: &str) -> Option<Value> {
    let inner = s.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(Value::empty_set());
    }
    let mut tokens = BTreeSet::new();
    for t in inner.split(',') {
        if !is_valid_token(t) {
            return None;
        }
        tokens.insert(t.to_owned());
    }
    Some(Value::Set(tokens))
}

/// Parses a decimal integer or a `p/q` rational (q nonzero).
pub(crate) fn parse_number(s: &str) -> Option<BigRational> {
    fn int(s: &str) -> Option<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match s.split_once('/') {
        None => int(s).map(BigRational::from_integer),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(int(p)?, q))
        }
    }
}
