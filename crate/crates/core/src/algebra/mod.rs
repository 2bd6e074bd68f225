//! Pluggable value algebras `(V, ⊕, ⊗, 0, 1)`.
//!
//! An [`Algebra`] bundles a carrier, the two operations and their designated
//! identities. Builtin families cover ordinary arithmetic, max/min orders,
//! power sets and a few deliberately non-compliant structures; finite
//! algebras can also be given as explicit operation tables
//! ([`FiniteAlgebraSpec`]) or plugged in from Rust code via [`CustomOps`].
//!
//! Zero doubles as the sparsity element: arrays never store a value equal to
//! the algebra's zero.

mod builtin;
mod table;
mod value;

use std::fmt;
use std::sync::Arc;

use rand::RngCore;
use thiserror::Error;

pub use builtin::{
    is_builtin_name, make_builtin, BuiltinParams, BUILTIN_NAMES, MAX_ENUMERATED_UNIVERSE,
};
pub use table::{FiniteAlgebraSpec, TableError, TableKind};
pub use value::{is_valid_token, Value, TOP_ENCODING};

pub(crate) use builtin::{powerset, Family};
pub(crate) use value::parse_set as parse_set_value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{value} is not a member of {algebra}")]
    NotMember { algebra: String, value: Value },
    #[error("cannot decode {text:?} as a value of {algebra}")]
    Decode { algebra: String, text: String },
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("invalid parameters for {algebra}: {reason}")]
    Config { algebra: String, reason: String },
    #[error("invalid finite algebra: {0}")]
    Table(#[from] TableError),
}

/// Declared algebraic laws. These are user claims, never proofs; the array
/// layer reads them only to decide whether a product may run in parallel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LawFlags {
    pub plus_associative: bool,
    pub plus_commutative: bool,
    pub times_associative: bool,
    pub times_commutative: bool,
}

impl LawFlags {
    pub const ALL: LawFlags = LawFlags {
        plus_associative: true,
        plus_commutative: true,
        times_associative: true,
        times_commutative: true,
    };

    pub fn allows_parallel_reduction(&self) -> bool {
        self.plus_associative && self.plus_commutative
    }
}

/// Draws one value from an infinite carrier.
pub type SampleFn = Arc<dyn Fn(&mut dyn RngCore) -> Value + Send + Sync>;

/// The set an algebra's values live in.
#[derive(Clone)]
pub enum Carrier {
    /// Every member, in a fixed order. Checks over it are exhaustive.
    Finite(Arc<[Value]>),
    /// An infinite (or too large to list) family. `probes` are notable
    /// members tried before random draws.
    Sampled {
        probes: Arc<[Value]>,
        sample: SampleFn,
    },
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Finite(els) => f.debug_tuple("Finite").field(&els.len()).finish(),
            Carrier::Sampled { probes, .. } => f
                .debug_struct("Sampled")
                .field("probes", &probes.len())
                .finish_non_exhaustive(),
        }
    }
}

/// Operations of a user-defined algebra.
///
/// `plus` and `times` are only ever called on members.
pub trait CustomOps: Send + Sync {
    fn plus(&self, a: &Value, b: &Value) -> Value;
    fn times(&self, a: &Value, b: &Value) -> Value;
    fn contains(&self, v: &Value) -> bool;
    fn decode(&self, text: &str) -> Option<Value> {
        Some(Value::parse(text))
    }
}

pub(crate) enum Ops {
    Builtin(Family),
    Table(table::TableOps),
    Custom(Arc<dyn CustomOps>),
}

struct Inner {
    name: String,
    zero: Value,
    one: Value,
    laws: LawFlags,
    carrier: Carrier,
    known_compliant: bool,
    ops: Ops,
}

/// A value algebra. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.0.name)
            .field("zero", &self.0.zero)
            .field("one", &self.0.one)
            .field("carrier", &self.0.carrier)
            .finish_non_exhaustive()
    }
}

impl Algebra {
    pub(crate) fn from_parts(
        name: String,
        zero: Value,
        one: Value,
        laws: LawFlags,
        carrier: Carrier,
        known_compliant: bool,
        ops: Ops,
    ) -> Self {
        Algebra(Arc::new(Inner {
            name,
            zero,
            one,
            laws,
            carrier,
            known_compliant,
            ops,
        }))
    }

    /// Builds an algebra from user-supplied operations.
    ///
    /// Fails if `zero` or `one` is not a member. Custom algebras never carry
    /// an analytic compliance flag, so sampled verdicts stay sampled.
    pub fn custom(
        name: impl Into<String>,
        zero: Value,
        one: Value,
        laws: LawFlags,
        carrier: Carrier,
        ops: Arc<dyn CustomOps>,
    ) -> Result<Self, AlgebraError> {
        let name = name.into();
        for v in [&zero, &one] {
            if !ops.contains(v) {
                return Err(AlgebraError::NotMember {
                    algebra: name,
                    value: v.clone(),
                });
            }
        }
        Ok(Self::from_parts(
            name,
            zero,
            one,
            laws,
            carrier,
            false,
            Ops::Custom(ops),
        ))
    }

    /// Builds a table-driven algebra; see [`FiniteAlgebraSpec::validate`].
    pub fn from_finite_spec(spec: &FiniteAlgebraSpec) -> Result<Self, AlgebraError> {
        table::build(spec, None)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn zero(&self) -> &Value {
        &self.0.zero
    }

    pub fn one(&self) -> &Value {
        &self.0.one
    }

    pub fn laws(&self) -> LawFlags {
        self.0.laws
    }

    pub fn carrier(&self) -> &Carrier {
        &self.0.carrier
    }

    /// Carrier members when the carrier is finite.
    pub fn elements(&self) -> Option<&[Value]> {
        match &self.0.carrier {
            Carrier::Finite(els) => Some(els),
            Carrier::Sampled { .. } => None,
        }
    }

    /// Whether this builtin family is known (by hand analysis, not testing)
    /// to satisfy the identity laws and all three adjacency criteria.
    pub fn known_compliant(&self) -> bool {
        self.0.known_compliant
    }

    pub fn contains(&self, v: &Value) -> bool {
        match &self.0.ops {
            Ops::Builtin(f) => f.contains(v),
            Ops::Table(t) => t.index_of(v).is_some(),
            Ops::Custom(c) => c.contains(v),
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        *v == self.0.zero
    }

    /// `a ⊕ b`, rejecting non-members.
    pub fn plus(&self, a: &Value, b: &Value) -> Result<Value, AlgebraError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.add(a, b))
    }

    /// `a ⊗ b`, rejecting non-members.
    pub fn times(&self, a: &Value, b: &Value) -> Result<Value, AlgebraError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.mul(a, b))
    }

    pub fn check_member(&self, v: &Value) -> Result<(), AlgebraError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(AlgebraError::NotMember {
                algebra: self.0.name.clone(),
                value: v.clone(),
            })
        }
    }

    /// Decodes a canonical text encoding into a carrier member.
    pub fn decode(&self, text: &str) -> Result<Value, AlgebraError> {
        let decoded = match &self.0.ops {
            Ops::Builtin(f) => f.decode(text),
            Ops::Table(_) => Some(Value::parse(text)),
            Ops::Custom(c) => c.decode(text),
        };
        let v = decoded.ok_or_else(|| AlgebraError::Decode {
            algebra: self.0.name.clone(),
            text: text.to_owned(),
        })?;
        self.check_member(&v)?;
        Ok(v)
    }

    /// Unchecked `⊕` for values already known to be members.
    pub(crate) fn add(&self, a: &Value, b: &Value) -> Value {
        match &self.0.ops {
            Ops::Builtin(f) => f.plus(a, b),
            Ops::Table(t) => t.plus(a, b),
            Ops::Custom(c) => c.plus(a, b),
        }
    }

    /// Unchecked `⊗` for values already known to be members.
    pub(crate) fn mul(&self, a: &Value, b: &Value) -> Value {
        match &self.0.ops {
            Ops::Builtin(f) => f.times(a, b),
            Ops::Table(t) => t.times(a, b),
            Ops::Custom(c) => c.times(a, b),
        }
    }

    /// Draws a member: uniformly from a finite carrier, or via the family's
    /// sampler.
    pub fn sample(&self, rng: &mut dyn RngCore) -> Value {
        use rand::Rng;
        match &self.0.carrier {
            Carrier::Finite(els) => els[rng.gen_range(0..els.len())].clone(),
            Carrier::Sampled { sample, .. } => sample(rng),
        }
    }

    /// Draws a nonzero member, or `None` if the carrier is `{0}`.
    pub fn sample_nonzero(&self, rng: &mut dyn RngCore) -> Option<Value> {
        use rand::Rng;
        match &self.0.carrier {
            Carrier::Finite(els) => {
                let nonzero: Vec<&Value> = els.iter().filter(|v| !self.is_zero(v)).collect();
                if nonzero.is_empty() {
                    None
                } else {
                    Some(nonzero[rng.gen_range(0..nonzero.len())].clone())
                }
            }
            Carrier::Sampled { sample, .. } => {
                // Samplers are expected to hit nonzero members regularly.
                (0..10_000).map(|_| sample(rng)).find(|v| !self.is_zero(v))
            }
        }
    }
}
