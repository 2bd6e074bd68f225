//! Checks an algebra against the three conditions under which
//! `E_outᵀ ⊕.⊗ E_in` is always an adjacency array:
//!
//! 1. no non-trivial additive inverses: `v, w ≠ 0 ⇒ v ⊕ w ≠ 0`;
//! 2. the zero-product property: `v, w ≠ 0 ⇒ v ⊗ w ≠ 0`;
//! 3. zero annihilates: `v ⊗ 0 = 0 ⊗ v = 0`;
//!
//! plus the identity laws for `0` and `1` that the product relies on.
//!
//! Finite carriers are checked exhaustively. Infinite ones are checked on
//! the family's probe values followed by seeded random draws; such a pass is
//! reported as `sampled`, and only builtin families with a hand-verified
//! classification are upgraded to `analytic`.
//!
//! When a check fails its witness values feed the constructors below, which
//! build the minimal graphs on which the product misreports adjacency.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Carrier, Value};
use crate::array::{key, AssociativeArray, Coord, Key, MatmulOptions, ZeroSkip};
use crate::graph::{EdgeRecord, Graph, GraphError};

/// Default number of random draws for infinite carriers.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    NoAdditiveInverses,
    ZeroProduct,
    Annihilator,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [
        Criterion::NoAdditiveInverses,
        Criterion::ZeroProduct,
        Criterion::Annihilator,
    ];

    pub fn number(self) -> u8 {
        match self {
            Criterion::NoAdditiveInverses => 1,
            Criterion::ZeroProduct => 2,
            Criterion::Annihilator => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Criterion::ALL.into_iter().find(|c| c.number() == n)
    }

    pub fn description(self) -> &'static str {
        match self {
            Criterion::NoAdditiveInverses => "no non-trivial additive inverses",
            Criterion::ZeroProduct => "zero-product property",
            Criterion::Annihilator => "zero annihilates",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "criterion {}", self.number())
    }
}

/// How a passing verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// Every element or pair of a finite carrier.
    Exhaustive { cases: usize },
    /// Probe values and random draws from an infinite carrier.
    Sampled { cases: usize },
    /// Sampled, and the family is known compliant by hand analysis.
    Analytic { cases: usize },
}

impl Evidence {
    pub fn is_conclusive(self) -> bool {
        !matches!(self, Evidence::Sampled { .. })
    }

    fn label(self) -> (&'static str, usize) {
        match self {
            Evidence::Exhaustive { cases } => ("exhaustive", cases),
            Evidence::Sampled { cases } => ("sampled", cases),
            Evidence::Analytic { cases } => ("analytic", cases),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityLaw {
    /// `0 ⊕ v = v`
    PlusLeft,
    /// `v ⊕ 0 = v`
    PlusRight,
    /// `1 ⊗ v = v`
    TimesLeft,
    /// `v ⊗ 1 = v`
    TimesRight,
}

impl IdentityLaw {
    fn label(self) -> &'static str {
        match self {
            IdentityLaw::PlusLeft => "plus-left",
            IdentityLaw::PlusRight => "plus-right",
            IdentityLaw::TimesLeft => "times-left",
            IdentityLaw::TimesRight => "times-right",
        }
    }
}

/// Which side of `⊗` a non-annihilating zero sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `v ⊗ 0 ≠ 0`
    Right,
    /// `0 ⊗ v ≠ 0`
    Left,
}

/// Concrete carrier values that violate a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Identity {
        law: IdentityLaw,
        value: Value,
        result: Value,
    },
    AdditiveInverse {
        v: Value,
        w: Value,
    },
    ZeroProduct {
        v: Value,
        w: Value,
    },
    NotAnnihilating {
        value: Value,
        side: Side,
        result: Value,
    },
}

impl Failure {
    /// Re-derives the violation through `plus`/`times`.
    pub fn replay(&self, alg: &Algebra) -> bool {
        let (zero, one) = (alg.zero(), alg.one());
        match self {
            Failure::Identity { law, value, result } => {
                let got = match law {
                    IdentityLaw::PlusLeft => alg.plus(zero, value),
                    IdentityLaw::PlusRight => alg.plus(value, zero),
                    IdentityLaw::TimesLeft => alg.times(one, value),
                    IdentityLaw::TimesRight => alg.times(value, one),
                };
                got.is_ok_and(|g| g == *result && g != *value)
            }
            Failure::AdditiveInverse { v, w } => {
                !alg.is_zero(v) && !alg.is_zero(w) && alg.plus(v, w).is_ok_and(|s| alg.is_zero(&s))
            }
            Failure::ZeroProduct { v, w } => {
                !alg.is_zero(v) && !alg.is_zero(w) && alg.times(v, w).is_ok_and(|p| alg.is_zero(&p))
            }
            Failure::NotAnnihilating {
                value,
                side,
                result,
            } => {
                let got = match side {
                    Side::Right => alg.times(value, zero),
                    Side::Left => alg.times(zero, value),
                };
                !alg.is_zero(value) && got.is_ok_and(|g| g == *result && !alg.is_zero(&g))
            }
        }
    }

    fn fields(&self) -> Vec<String> {
        match self {
            Failure::Identity { law, value, result } => {
                vec![law.label().into(), value.encode(), result.encode()]
            }
            Failure::AdditiveInverse { v, w } | Failure::ZeroProduct { v, w } => {
                vec![v.encode(), w.encode()]
            }
            Failure::NotAnnihilating {
                value,
                side,
                result,
            } => vec![
                value.encode(),
                match side {
                    Side::Right => "right".into(),
                    Side::Left => "left".into(),
                },
                result.encode(),
            ],
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Identity { law, value, result } => {
                let lhs = match law {
                    IdentityLaw::PlusLeft => format!("0 ⊕ {value}"),
                    IdentityLaw::PlusRight => format!("{value} ⊕ 0"),
                    IdentityLaw::TimesLeft => format!("1 ⊗ {value}"),
                    IdentityLaw::TimesRight => format!("{value} ⊗ 1"),
                };
                write!(f, "{lhs} = {result}, expected {value}")
            }
            Failure::AdditiveInverse { v, w } => write!(f, "{v} ⊕ {w} = 0"),
            Failure::ZeroProduct { v, w } => write!(f, "{v} ⊗ {w} = 0"),
            Failure::NotAnnihilating {
                value,
                side,
                result,
            } => match side {
                Side::Right => write!(f, "{value} ⊗ 0 = {result}"),
                Side::Left => write!(f, "0 ⊗ {value} = {result}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass(Evidence),
    Fail(Failure),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass(_))
    }

    pub fn conclusive_pass(&self) -> bool {
        matches!(self, Verdict::Pass(e) if e.is_conclusive())
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            Verdict::Fail(f) => Some(f),
            Verdict::Pass(_) => None,
        }
    }

    fn machine_fields(&self) -> Vec<String> {
        match self {
            Verdict::Pass(e) => {
                let (label, cases) = e.label();
                vec!["pass".into(), label.into(), cases.to_string()]
            }
            Verdict::Fail(f) => {
                let mut fields = vec!["fail".to_owned()];
                fields.extend(f.fields());
                fields
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass(e) => {
                let (label, cases) = e.label();
                write!(f, "pass ({label}, {cases} cases)")
            }
            Verdict::Fail(failure) => write!(f, "FAIL: {failure}"),
        }
    }
}

/// Walks the carrier: all members when finite, else probes then draws.
fn scan_values(
    alg: &Algebra,
    cfg: &CheckConfig,
    mut check: impl FnMut(&Value) -> Option<Failure>,
) -> Verdict {
    match alg.carrier() {
        Carrier::Finite(els) => match els.iter().find_map(&mut check) {
            Some(f) => Verdict::Fail(f),
            None => Verdict::Pass(Evidence::Exhaustive { cases: els.len() }),
        },
        Carrier::Sampled { probes, sample } => {
            if let Some(f) = probes.iter().find_map(&mut check) {
                return Verdict::Fail(f);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.samples {
                if let Some(f) = check(&sample(&mut rng)) {
                    return Verdict::Fail(f);
                }
            }
            Verdict::Pass(sampled_evidence(alg, probes.len() + cfg.samples))
        }
    }
}

/// Like [`scan_values`] over ordered pairs.
fn scan_pairs(
    alg: &Algebra,
    cfg: &CheckConfig,
    mut check: impl FnMut(&Value, &Value) -> Option<Failure>,
) -> Verdict {
    let grid = |els: &[Value], check: &mut dyn FnMut(&Value, &Value) -> Option<Failure>| {
        els.iter()
            .find_map(|a| els.iter().find_map(|b| check(a, b)))
    };
    match alg.carrier() {
        Carrier::Finite(els) => match grid(els, &mut check) {
            Some(f) => Verdict::Fail(f),
            None => Verdict::Pass(Evidence::Exhaustive {
                cases: els.len() * els.len(),
            }),
        },
        Carrier::Sampled { probes, sample } => {
            if let Some(f) = grid(probes, &mut check) {
                return Verdict::Fail(f);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.samples {
                let a = sample(&mut rng);
                let b = sample(&mut rng);
                if let Some(f) = check(&a, &b) {
                    return Verdict::Fail(f);
                }
            }
            Verdict::Pass(sampled_evidence(
                alg,
                probes.len() * probes.len() + cfg.samples,
            ))
        }
    }
}

fn sampled_evidence(alg: &Algebra, cases: usize) -> Evidence {
    if alg.known_compliant() {
        Evidence::Analytic { cases }
    } else {
        Evidence::Sampled { cases }
    }
}

pub fn check_identity_laws(alg: &Algebra) -> Verdict {
    check_identity_laws_with(alg, &CheckConfig::default())
}

/// `0` must be a two-sided identity for `⊕` and `1` for `⊗`.
pub fn check_identity_laws_with(alg: &Algebra, cfg: &CheckConfig) -> Verdict {
    let (zero, one) = (alg.zero(), alg.one());
    scan_values(alg, cfg, |v| {
        [
            (IdentityLaw::PlusLeft, alg.add(zero, v)),
            (IdentityLaw::PlusRight, alg.add(v, zero)),
            (IdentityLaw::TimesLeft, alg.mul(one, v)),
            (IdentityLaw::TimesRight, alg.mul(v, one)),
        ]
        .into_iter()
        .find(|(_, r)| r != v)
        .map(|(law, result)| Failure::Identity {
            law,
            value: v.clone(),
            result,
        })
    })
}

pub fn check_no_additive_inverses(alg: &Algebra) -> Verdict {
    check_no_additive_inverses_with(alg, &CheckConfig::default())
}

pub fn check_no_additive_inverses_with(alg: &Algebra, cfg: &CheckConfig) -> Verdict {
    scan_pairs(alg, cfg, |v, w| {
        (!alg.is_zero(v) && !alg.is_zero(w) && alg.is_zero(&alg.add(v, w))).then(|| {
            Failure::AdditiveInverse {
                v: v.clone(),
                w: w.clone(),
            }
        })
    })
}

pub fn check_zero_product(alg: &Algebra) -> Verdict {
    check_zero_product_with(alg, &CheckConfig::default())
}

pub fn check_zero_product_with(alg: &Algebra, cfg: &CheckConfig) -> Verdict {
    scan_pairs(alg, cfg, |v, w| {
        (!alg.is_zero(v) && !alg.is_zero(w) && alg.is_zero(&alg.mul(v, w))).then(|| {
            Failure::ZeroProduct {
                v: v.clone(),
                w: w.clone(),
            }
        })
    })
}

pub fn check_annihilator(alg: &Algebra) -> Verdict {
    check_annihilator_with(alg, &CheckConfig::default())
}

pub fn check_annihilator_with(alg: &Algebra, cfg: &CheckConfig) -> Verdict {
    let zero = alg.zero();
    scan_values(alg, cfg, |v| {
        [
            (Side::Right, alg.mul(v, zero)),
            (Side::Left, alg.mul(zero, v)),
        ]
        .into_iter()
        .find(|(_, r)| !alg.is_zero(r))
        .map(|(side, result)| Failure::NotAnnihilating {
            value: v.clone(),
            side,
            result,
        })
    })
}

/// Verdicts for the identity laws and all three criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaReport {
    pub algebra: String,
    pub identity: Verdict,
    pub additive_inverses: Verdict,
    pub zero_product: Verdict,
    pub annihilator: Verdict,
    /// Every verdict passed, none of them on bare sampling.
    pub certified: bool,
}

pub fn validate(alg: &Algebra) -> CriteriaReport {
    validate_with(alg, &CheckConfig::default())
}

pub fn validate_with(alg: &Algebra, cfg: &CheckConfig) -> CriteriaReport {
    let identity = check_identity_laws_with(alg, cfg);
    let additive_inverses = check_no_additive_inverses_with(alg, cfg);
    let zero_product = check_zero_product_with(alg, cfg);
    let annihilator = check_annihilator_with(alg, cfg);
    let certified = [&identity, &additive_inverses, &zero_product, &annihilator]
        .iter()
        .all(|v| v.conclusive_pass());
    let report = CriteriaReport {
        algebra: alg.name().to_owned(),
        identity,
        additive_inverses,
        zero_product,
        annihilator,
        certified,
    };
    debug_assert!(report.failures().all(|(_, f)| f.replay(alg)));
    report
}

impl CriteriaReport {
    pub fn verdict(&self, c: Criterion) -> &Verdict {
        match c {
            Criterion::NoAdditiveInverses => &self.additive_inverses,
            Criterion::ZeroProduct => &self.zero_product,
            Criterion::Annihilator => &self.annihilator,
        }
    }

    /// Criteria (not identity laws) that failed, in order.
    pub fn failed_criteria(&self) -> Vec<Criterion> {
        Criterion::ALL
            .into_iter()
            .filter(|c| !self.verdict(*c).passed())
            .collect()
    }

    fn failures(&self) -> impl Iterator<Item = (&'static str, &Failure)> + '_ {
        self.rows()
            .into_iter()
            .filter_map(|(label, v)| v.failure().map(|f| (label, f)))
    }

    fn rows(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("identity", &self.identity),
            ("crit1", &self.additive_inverses),
            ("crit2", &self.zero_product),
            ("crit3", &self.annihilator),
        ]
    }

    /// The token enabling zero-skipping products, issued when zero is
    /// conclusively an identity for `⊕` and an annihilator for `⊗`.
    pub fn zero_skip(&self) -> Option<ZeroSkip> {
        (self.identity.conclusive_pass() && self.annihilator.conclusive_pass())
            .then(|| ZeroSkip::new(&self.algebra))
    }

    /// `label<TAB>verdict<TAB>details...` lines, one per check, then
    /// `certified<TAB>yes|no`.
    pub fn machine_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .rows()
            .iter()
            .map(|(label, v)| {
                let mut fields = vec![(*label).to_owned()];
                fields.extend(v.machine_fields());
                fields.join("\t")
            })
            .collect();
        lines.push(format!(
            "certified\t{}",
            if self.certified { "yes" } else { "no" }
        ));
        lines
    }
}

impl fmt::Display for CriteriaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra: {}", self.algebra)?;
        writeln!(f, "identity laws: {}", self.identity)?;
        for c in Criterion::ALL {
            writeln!(f, "{c} ({}): {}", c.description(), self.verdict(c))?;
        }
        write!(
            f,
            "certified: {}",
            if self.certified { "yes" } else { "no" }
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("witness precondition failed: {0}")]
    Precondition(String),
    #[error("{criterion} passes for {algebra}; no witness exists from checker output")]
    NoWitness {
        criterion: Criterion,
        algebra: String,
    },
    #[error("witness for {0} produced no mismatch")]
    NoMismatch(Criterion),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A minimal graph on which a non-compliant algebra's incidence product
/// disagrees with the true adjacency pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCase {
    pub criterion: Criterion,
    pub graph: Graph,
    /// Vertices without edges that the adjacency evaluation still covers as
    /// all-zero rows and columns.
    pub isolated: Vec<Key>,
    pub expected_oracle: BTreeSet<Coord>,
    pub description: String,
}

fn nonzero_member(alg: &Algebra, v: &Value) -> Result<(), CriteriaError> {
    alg.check_member(v)?;
    if alg.is_zero(v) {
        return Err(CriteriaError::Precondition(format!("{v} is zero")));
    }
    Ok(())
}

fn coord(a: &str, b: &str) -> Coord {
    (key(a), key(b))
}

/// Parallel edges `k1`, `k2` from `a` to `b` with out-weights `v`, `w` and
/// in-weights one. Requires `v ⊕ w = 0`.
pub fn witness_additive_inverse(
    alg: &Algebra,
    v: &Value,
    w: &Value,
) -> Result<WitnessCase, CriteriaError> {
    nonzero_member(alg, v)?;
    nonzero_member(alg, w)?;
    if !alg.is_zero(&alg.add(v, w)) {
        return Err(CriteriaError::Precondition(format!(
            "{v} ⊕ {w} is not zero"
        )));
    }
    if alg.is_zero(alg.one()) {
        return Err(CriteriaError::Precondition("one equals zero".into()));
    }
    let one = alg.one();
    let graph = Graph::new(vec![
        EdgeRecord::simple(key("k1"), key("a"), key("b"), v.clone(), one.clone()),
        EdgeRecord::simple(key("k2"), key("a"), key("b"), w.clone(), one.clone()),
    ])?;
    Ok(WitnessCase {
        criterion: Criterion::NoAdditiveInverses,
        graph,
        isolated: Vec::new(),
        expected_oracle: [coord("a", "b")].into(),
        description: format!(
            "parallel edges k1, k2 from a to b with out-weights {v}, {w} and in-weights {one}"
        ),
    })
}

/// A self-loop `k` at `a` with out-weight `v` and in-weight `w`. Requires
/// `v ⊗ w = 0`.
pub fn witness_zero_product(
    alg: &Algebra,
    v: &Value,
    w: &Value,
) -> Result<WitnessCase, CriteriaError> {
    nonzero_member(alg, v)?;
    nonzero_member(alg, w)?;
    if !alg.is_zero(&alg.mul(v, w)) {
        return Err(CriteriaError::Precondition(format!(
            "{v} ⊗ {w} is not zero"
        )));
    }
    let graph = Graph::new(vec![EdgeRecord::simple(
        key("k"),
        key("a"),
        key("a"),
        v.clone(),
        w.clone(),
    )])?;
    Ok(WitnessCase {
        criterion: Criterion::ZeroProduct,
        graph,
        isolated: Vec::new(),
        expected_oracle: [coord("a", "a")].into(),
        description: format!("self-loop k at a with out-weight {v} and in-weight {w}"),
    })
}

/// A self-loop `k` at `a` with both weights `v`, plus an isolated vertex
/// `b`. Requires `v ⊗ 0 ≠ 0` or `0 ⊗ v ≠ 0`.
pub fn witness_annihilator(alg: &Algebra, v: &Value) -> Result<WitnessCase, CriteriaError> {
    nonzero_member(alg, v)?;
    let zero = alg.zero();
    if alg.is_zero(&alg.mul(v, zero)) && alg.is_zero(&alg.mul(zero, v)) {
        return Err(CriteriaError::Precondition(format!("zero annihilates {v}")));
    }
    let graph = Graph::new(vec![EdgeRecord::simple(
        key("k"),
        key("a"),
        key("a"),
        v.clone(),
        v.clone(),
    )])?;
    Ok(WitnessCase {
        criterion: Criterion::Annihilator,
        graph,
        isolated: vec![key("b")],
        expected_oracle: [coord("a", "a")].into(),
        description: format!("self-loop k at a with weights {v}, plus isolated vertex b"),
    })
}

/// Builds the witness for `criterion` from the checker's own failure values.
pub fn witness_from_report(
    alg: &Algebra,
    report: &CriteriaReport,
    criterion: Criterion,
) -> Result<WitnessCase, CriteriaError> {
    match report.verdict(criterion).failure() {
        Some(Failure::AdditiveInverse { v, w }) => witness_additive_inverse(alg, v, w),
        Some(Failure::ZeroProduct { v, w }) => witness_zero_product(alg, v, w),
        Some(Failure::NotAnnihilating { value, .. }) => witness_annihilator(alg, value),
        _ => Err(CriteriaError::NoWitness {
            criterion,
            algebra: alg.name().to_owned(),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MismatchKind {
    /// Adjacent in the graph, zero in the product.
    Missing,
    /// Nonzero in the product, not adjacent in the graph.
    Spurious,
}

/// The product and the oracle for one witness, and where they disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub adjacency: AssociativeArray,
    pub oracle: BTreeSet<Coord>,
    /// Symmetric difference of support and oracle, with the product's value
    /// at each coordinate.
    pub entries: BTreeMap<Coord, (MismatchKind, Value)>,
}

impl Mismatch {
    pub fn missing(&self) -> BTreeSet<Coord> {
        self.of_kind(MismatchKind::Missing)
    }

    pub fn spurious(&self) -> BTreeSet<Coord> {
        self.of_kind(MismatchKind::Spurious)
    }

    fn of_kind(&self, kind: MismatchKind) -> BTreeSet<Coord> {
        self.entries
            .iter()
            .filter(|(_, (k, _))| *k == kind)
            .map(|(c, _)| c.clone())
            .collect()
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((x, y), (kind, v))| match kind {
                MismatchKind::Missing => format!("missing ({x},{y})"),
                MismatchKind::Spurious => format!("spurious ({x},{y})={v}"),
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Runs a witness: incidence arrays, full-union adjacency (covering the
/// isolated vertices), oracle, and their symmetric difference.
pub fn demonstrate(wc: &WitnessCase, alg: &Algebra) -> Result<Mismatch, CriteriaError> {
    let pair = wc.graph.incidence_arrays(alg)?;
    let opts = MatmulOptions {
        extra_row_keys: wc.isolated.clone(),
        extra_col_keys: wc.isolated.clone(),
        ..Default::default()
    };
    let adjacency = pair.adjacency_with(alg, &opts);
    let oracle = pair.oracle();
    let support = adjacency.support();
    let mut entries = BTreeMap::new();
    for c in oracle.difference(&support) {
        entries.insert(c.clone(), (MismatchKind::Missing, alg.zero().clone()));
    }
    for c in support.difference(&oracle) {
        let v = adjacency.get(&c.0, &c.1, alg).clone();
        entries.insert(c.clone(), (MismatchKind::Spurious, v));
    }
    if entries.is_empty() {
        return Err(CriteriaError::NoMismatch(wc.criterion));
    }
    Ok(Mismatch {
        adjacency,
        oracle,
        entries,
    })
}
