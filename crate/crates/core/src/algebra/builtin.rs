use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, RngCore};

use super::value::{is_valid_token, parse_number, parse_set, TOP_ENCODING};
use super::{Algebra, AlgebraError, Carrier, LawFlags, Ops, SampleFn, Value};

/// Canonical names accepted by [`make_builtin`]. Dashes may replace
/// underscores, and a few short aliases (`natural`, `boolean`, ...) are
/// accepted as well.
pub const BUILTIN_NAMES: &[&str] = &[
    "natural_arithmetic",
    "nonneg_rational_arithmetic",
    "integer_ring",
    "max_min_chain",
    "max_min_strings",
    "powerset",
    "boolean_or_and",
    "max_plus_realzero",
];

/// Largest power-set universe whose carrier is enumerated (2^12 subsets).
/// Bigger universes fall back to a sampled carrier.
pub const MAX_ENUMERATED_UNIVERSE: usize = 12;

/// Family parameters for [`make_builtin`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuiltinParams {
    /// Number of levels of `max_min_chain`.
    pub levels: Option<usize>,
    /// Universe tokens of `powerset`.
    pub universe: Option<Vec<String>>,
}

impl BuiltinParams {
    pub fn levels(n: usize) -> Self {
        BuiltinParams {
            levels: Some(n),
            ..Default::default()
        }
    }

    pub fn universe<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        BuiltinParams {
            universe: Some(tokens.into_iter().map(Into::into).collect()),
            ..Default::default()
        }
    }
}

fn canonical_name(name: &str) -> Option<&'static str> {
    let n = name.replace('-', "_");
    let canonical = match n.as_str() {
        "natural_arithmetic" | "natural" => "natural_arithmetic",
        "nonneg_rational_arithmetic" | "nonneg_rational" | "rational" => {
            "nonneg_rational_arithmetic"
        }
        "integer_ring" | "integer" => "integer_ring",
        "max_min_chain" | "chain" => "max_min_chain",
        "max_min_strings" | "strings" => "max_min_strings",
        "powerset" => "powerset",
        "boolean_or_and" | "boolean" => "boolean_or_and",
        "max_plus_realzero" | "max_plus" => "max_plus_realzero",
        _ => return None,
    };
    Some(canonical)
}

/// Whether `name` designates a builtin family.
pub fn is_builtin_name(name: &str) -> bool {
    canonical_name(name).is_some()
}

/// Constructs one of the builtin algebras.
pub fn make_builtin(name: &str, params: &BuiltinParams) -> Result<Algebra, AlgebraError> {
    let canonical =
        canonical_name(name).ok_or_else(|| AlgebraError::UnknownAlgebra(name.to_owned()))?;
    let config = |reason: &str| AlgebraError::Config {
        algebra: canonical.to_owned(),
        reason: reason.to_owned(),
    };
    if params.levels.is_some() && canonical != "max_min_chain" {
        return Err(config("`levels` only applies to max_min_chain"));
    }
    if params.universe.is_some() && canonical != "powerset" {
        return Err(config("`universe` only applies to powerset"));
    }

    let alg = match canonical {
        "natural_arithmetic" => sampled(
            canonical,
            Family::Natural,
            [0, 1, 2, 3].map(Value::int).to_vec(),
            Arc::new(|rng: &mut dyn RngCore| Value::int(rng.gen_range(0..=10))),
            true,
        ),
        "nonneg_rational_arithmetic" => sampled(
            canonical,
            Family::NonNegRational,
            vec![
                Value::int(0),
                Value::int(1),
                Value::ratio(1, 2),
                Value::int(2),
                Value::ratio(3, 2),
            ],
            Arc::new(|rng: &mut dyn RngCore| {
                Value::ratio(rng.gen_range(0..=10), rng.gen_range(1..=4))
            }),
            true,
        ),
        "integer_ring" => sampled(
            canonical,
            Family::Integer,
            [0, 1, -1, 2, -2].map(Value::int).to_vec(),
            Arc::new(|rng: &mut dyn RngCore| Value::int(rng.gen_range(-10..=10))),
            false,
        ),
        "max_plus_realzero" => sampled(
            canonical,
            Family::MaxPlusRealZero,
            [0, 1, -1, 2, -2, 5, -5].map(Value::int).to_vec(),
            Arc::new(|rng: &mut dyn RngCore| Value::int(rng.gen_range(-10..=10))),
            false,
        ),
        "max_min_strings" => sampled(
            canonical,
            Family::Strings,
            vec![
                Value::text(""),
                Value::text("a"),
                Value::text("b"),
                Value::text("ab"),
                Value::Top,
            ],
            Arc::new(sample_string),
            true,
        ),
        "max_min_chain" => {
            let levels = params.levels.ok_or_else(|| config("missing `levels`"))?;
            if levels < 2 {
                return Err(config("`levels` must be at least 2"));
            }
            let levels = u32::try_from(levels).map_err(|_| config("`levels` too large"))?;
            let elements: Vec<Value> = (0..levels).map(|l| Value::int(l.into())).collect();
            finite(
                format!("max_min_chain({levels})"),
                Family::Chain(levels),
                elements,
                Value::int(0),
                Value::int(i64::from(levels) - 1),
            )
        }
        "boolean_or_and" => finite(
            canonical.to_owned(),
            Family::Boolean,
            vec![Value::int(0), Value::int(1)],
            Value::int(0),
            Value::int(1),
        ),
        "powerset" => {
            let tokens = params
                .universe
                .as_ref()
                .ok_or_else(|| config("missing `universe`"))?;
            let universe: BTreeSet<String> = tokens.iter().cloned().collect();
            if universe.is_empty() {
                return Err(config("universe must be non-empty"));
            }
            if universe.len() != tokens.len() {
                return Err(config("universe tokens must be distinct"));
            }
            if let Some(bad) = tokens.iter().find(|t| !is_valid_token(t)) {
                return Err(config(&format!("invalid universe token {bad:?}")));
            }
            powerset(universe)
        }
        _ => unreachable!("canonical_name covers every builtin"),
    };
    Ok(alg)
}

/// The power set of `universe` with `∪` and `∩`.
pub(crate) fn powerset(universe: BTreeSet<String>) -> Algebra {
    let name = format!("powerset({})", Value::Set(universe.clone()));
    let one = Value::Set(universe.clone());
    let family = Family::Powerset(universe.clone());
    let tokens: Vec<String> = universe.into_iter().collect();
    if tokens.len() <= MAX_ENUMERATED_UNIVERSE {
        // Bitmask order: {} first, then subsets by increasing mask.
        let elements = (0u32..1 << tokens.len())
            .map(|mask| {
                Value::Set(
                    tokens
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, t)| t.clone())
                        .collect(),
                )
            })
            .collect();
        return finite(name, family, elements, Value::empty_set(), one);
    }
    let mut probes = vec![Value::empty_set(), one.clone()];
    probes.extend(tokens.iter().take(3).map(|t| Value::set([t.as_str()])));
    let sample: SampleFn = Arc::new(move |rng: &mut dyn RngCore| {
        Value::Set(
            tokens
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect(),
        )
    });
    Algebra::from_parts(
        name,
        Value::empty_set(),
        one,
        LawFlags::ALL,
        Carrier::Sampled {
            probes: probes.into(),
            sample,
        },
        false,
        Ops::Builtin(family),
    )
}

fn sample_string(rng: &mut dyn RngCore) -> Value {
    if rng.gen_ratio(1, 10) {
        return Value::Top;
    }
    let len = rng.gen_range(0..=3);
    Value::Text(
        (0..len)
            .map(|_| ['a', 'b', 'c'][rng.gen_range(0..3)])
            .collect(),
    )
}

fn sampled(
    name: &str,
    family: Family,
    probes: Vec<Value>,
    sample: SampleFn,
    known_compliant: bool,
) -> Algebra {
    let (zero, one) = match family {
        Family::Strings => (Value::text(""), Value::Top),
        // Real zero is both the sparsity element and the ⊗ identity here.
        Family::MaxPlusRealZero => (Value::int(0), Value::int(0)),
        _ => (Value::int(0), Value::int(1)),
    };
    Algebra::from_parts(
        name.to_owned(),
        zero,
        one,
        LawFlags::ALL,
        Carrier::Sampled {
            probes: probes.into(),
            sample,
        },
        known_compliant,
        Ops::Builtin(family),
    )
}

fn finite(name: String, family: Family, elements: Vec<Value>, zero: Value, one: Value) -> Algebra {
    // Power sets over two or more tokens fail the zero-product property.
    let known_compliant = matches!(family, Family::Chain(_) | Family::Boolean);
    Algebra::from_parts(
        name,
        zero,
        one,
        LawFlags::ALL,
        Carrier::Finite(elements.into()),
        known_compliant,
        Ops::Builtin(family),
    )
}

#[derive(Debug, Clone)]
pub(crate) enum Family {
    Natural,
    NonNegRational,
    Integer,
    Chain(u32),
    Boolean,
    Strings,
    Powerset(BTreeSet<String>),
    MaxPlusRealZero,
}

fn num(v: &Value) -> &BigRational {
    v.as_number().expect("numeric carrier member")
}

fn set(v: &Value) -> &BTreeSet<String> {
    v.as_set().expect("set carrier member")
}

impl Family {
    pub(crate) fn contains(&self, v: &Value) -> bool {
        match self {
            Family::Natural => v.as_integer().is_some_and(|n| !n.is_negative()),
            Family::NonNegRational => v.as_number().is_some_and(|n| !n.is_negative()),
            Family::Integer => v.as_integer().is_some(),
            Family::MaxPlusRealZero => v.as_number().is_some(),
            Family::Chain(levels) => v
                .as_integer()
                .is_some_and(|n| !n.is_negative() && *n < BigInt::from(*levels)),
            Family::Boolean => v
                .as_integer()
                .is_some_and(|n| *n == 0.into() || *n == 1.into()),
            Family::Strings => match v {
                Value::Top => true,
                Value::Text(s) => s != TOP_ENCODING && !s.contains(['\t', '\n', '\r']),
                _ => false,
            },
            Family::Powerset(universe) => v.as_set().is_some_and(|s| s.is_subset(universe)),
        }
    }

    pub(crate) fn decode(&self, text: &str) -> Option<Value> {
        match self {
            Family::Strings if text == TOP_ENCODING => Some(Value::Top),
            Family::Strings => Some(Value::text(text)),
            Family::Powerset(_) => parse_set(text),
            _ => parse_number(text).map(Value::Number),
        }
    }

    pub(crate) fn plus(&self, a: &Value, b: &Value) -> Value {
        match self {
            Family::Natural | Family::NonNegRational | Family::Integer => {
                Value::Number(num(a) + num(b))
            }
            Family::Chain(_) | Family::Boolean | Family::Strings | Family::MaxPlusRealZero => {
                a.max(b).clone()
            }
            Family::Powerset(_) => Value::Set(set(a) | set(b)),
        }
    }

    pub(crate) fn times(&self, a: &Value, b: &Value) -> Value {
        match self {
            Family::Natural | Family::NonNegRational | Family::Integer => {
                Value::Number(num(a) * num(b))
            }
            Family::MaxPlusRealZero => Value::Number(num(a) + num(b)),
            Family::Chain(_) | Family::Boolean | Family::Strings => a.min(b).clone(),
            Family::Powerset(_) => Value::Set(set(a) & set(b)),
        }
    }
}
