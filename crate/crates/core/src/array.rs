//! Sparse associative arrays over string keysets.
//!
//! An [`AssociativeArray`] maps `(row, col)` key pairs to values of an
//! algebra. Only values different from the algebra's zero are stored and the
//! keysets are exactly the rows and columns that hold at least one stored
//! value, so an array never has an empty row or column. Absent coordinates
//! read as zero.
//!
//! Products fold `⊕` sequentially in ascending inner-key order. By default
//! they materialize implicit zeros over the full inner keyset, which is the
//! only faithful evaluation for algebras where zero does not annihilate. The
//! zero-skipping kernel is reachable through a [`ZeroSkip`] token that only
//! the criteria validator hands out.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Value};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyError {
    #[error("key is empty")]
    Empty,
    #[error("key {key:?} contains a forbidden character {found:?}")]
    ForbiddenChar { key: String, found: char },
}

/// A row or column key: a non-empty string without tabs or line breaks.
/// Keys order by byte-wise lexicographic comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(String);

impl Key {
    pub fn new(s: impl Into<String>) -> Result<Self, KeyError> {
        let s = s.into();
        if s.is_empty() {
            return Err(KeyError::Empty);
        }
        if let Some(found) = s.chars().find(|c| matches!(c, '\t' | '\n' | '\r')) {
            return Err(KeyError::ForbiddenChar { key: s, found });
        }
        Ok(Key(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Key {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Key {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl FromStr for Key {
    type Err = KeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Key::new(s)
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building keys from literals in tests and examples.
///
/// # Panics
/// If `s` is not a valid key.
pub fn key(s: &str) -> Key {
    Key::new(s).expect("valid key literal")
}

/// A `(row, col, value)` record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub row: Key,
    pub col: Key,
    pub value: Value,
}

impl Triple {
    pub fn new(row: Key, col: Key, value: Value) -> Self {
        Triple { row, col, value }
    }
}

pub type Coord = (Key, Key);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrayError {
    #[error("value at ({row}, {col}): {source}")]
    Value {
        row: Key,
        col: Key,
        source: Box<AlgebraError>,
    },
    #[error("array over {found} used with algebra {expected}")]
    AlgebraMismatch { expected: String, found: String },
    #[error("stored zero at ({row}, {col})")]
    StoredZero { row: Key, col: Key },
    #[error("empty row {0}")]
    EmptyRow(Key),
    #[error("column key {0} has no stored entry")]
    EmptyColumn(Key),
    #[error("stored column {0} missing from the column keyset")]
    UnlistedColumn(Key),
}

/// Proof that the validator certified zero as a two-sided identity for `⊕`
/// and a two-sided annihilator for `⊗` in one algebra. Under those laws
/// skipping products with an implicit-zero operand is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSkip {
    algebra: String,
}

impl ZeroSkip {
    pub(crate) fn new(algebra: &str) -> Self {
        ZeroSkip {
            algebra: algebra.to_owned(),
        }
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }
}

/// Evaluation options for [`AssociativeArray::matmul_with`].
#[derive(Debug, Clone, Default)]
pub struct MatmulOptions<'a> {
    /// Use the zero-skipping kernel. Ignored by evaluations over
    /// `extra_*_keys`, which by definition have no stored entries.
    pub zero_skip: Option<&'a ZeroSkip>,
    /// Extra row keys evaluated as all-zero rows of the left operand.
    pub extra_row_keys: Vec<Key>,
    /// Extra column keys evaluated as all-zero columns of the right operand.
    pub extra_col_keys: Vec<Key>,
    /// Split output rows across threads when the algebra declares `⊕`
    /// associative and commutative. Otherwise runs sequentially.
    pub parallel: bool,
}

/// A sparse two-dimensional associative array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativeArray {
    algebra: String,
    rows: BTreeMap<Key, BTreeMap<Key, Value>>,
    cols: BTreeSet<Key>,
}

impl AssociativeArray {
    pub fn empty(alg: &Algebra) -> Self {
        AssociativeArray {
            algebra: alg.name().to_owned(),
            rows: BTreeMap::new(),
            cols: BTreeSet::new(),
        }
    }

    /// Builds an array from nonzero entries. Callers guarantee membership.
    fn from_nonzero(alg: &Algebra, rows: BTreeMap<Key, BTreeMap<Key, Value>>) -> Self {
        let rows: BTreeMap<_, _> = rows.into_iter().filter(|(_, r)| !r.is_empty()).collect();
        let cols = rows.values().flat_map(|r| r.keys().cloned()).collect();
        AssociativeArray {
            algebra: alg.name().to_owned(),
            rows,
            cols,
        }
    }

    /// Builds an array from triples. Zero-valued triples are dropped,
    /// duplicate coordinates are `⊕`-combined in input order, and a
    /// coordinate whose combination is zero is removed.
    pub fn from_triples<I>(triples: I, alg: &Algebra) -> Result<Self, ArrayError>
    where
        I: IntoIterator<Item = Triple>,
    {
        let mut rows: BTreeMap<Key, BTreeMap<Key, Value>> = BTreeMap::new();
        for Triple { row, col, value } in triples {
            if let Err(source) = alg.check_member(&value) {
                return Err(ArrayError::Value {
                    row,
                    col,
                    source: Box::new(source),
                });
            }
            if alg.is_zero(&value) {
                continue;
            }
            let slot = rows.entry(row).or_default();
            match slot.get_mut(&col) {
                Some(acc) => *acc = alg.add(acc, &value),
                None => {
                    slot.insert(col, value);
                }
            }
        }
        for r in rows.values_mut() {
            r.retain(|_, v| !alg.is_zero(v));
        }
        Ok(Self::from_nonzero(alg, rows))
    }

    pub fn algebra_name(&self) -> &str {
        &self.algebra
    }

    pub fn row_keys(&self) -> impl ExactSizeIterator<Item = &Key> + '_ {
        self.rows.keys()
    }

    pub fn col_keys(&self) -> impl ExactSizeIterator<Item = &Key> + '_ {
        self.cols.iter()
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Stored entries in `(row, col)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Key, &Value)> + '_ {
        self.rows
            .iter()
            .flat_map(|(r, cols)| cols.iter().map(move |(c, v)| (r, c, v)))
    }

    /// Stored entries of one row, in column order.
    pub fn row(&self, r: impl AsRef<str>) -> impl Iterator<Item = (&Key, &Value)> + '_ {
        self.rows
            .get(r.as_ref())
            .into_iter()
            .flat_map(|cols| cols.iter())
    }

    /// The value at `(r, c)`, or the algebra's zero when nothing is stored.
    pub fn get<'a>(
        &'a self,
        r: impl AsRef<str>,
        c: impl AsRef<str>,
        alg: &'a Algebra,
    ) -> &'a Value {
        self.stored(r, c).unwrap_or_else(|| alg.zero())
    }

    pub fn stored(&self, r: impl AsRef<str>, c: impl AsRef<str>) -> Option<&Value> {
        self.rows
            .get(r.as_ref())
            .and_then(|cols| cols.get(c.as_ref()))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: BTreeMap<Key, BTreeMap<Key, Value>> = BTreeMap::new();
        for (r, c, v) in self.iter() {
            rows.entry(c.clone())
                .or_default()
                .insert(r.clone(), v.clone());
        }
        AssociativeArray {
            algebra: self.algebra.clone(),
            cols: self.rows.keys().cloned().collect(),
            rows,
        }
    }

    /// The coordinates of stored (nonzero) entries.
    pub fn support(&self) -> BTreeSet<Coord> {
        self.iter()
            .map(|(r, c, _)| (r.clone(), c.clone()))
            .collect()
    }

    pub fn equal_support(&self, other: &Self) -> bool {
        self.nnz() == other.nnz() && self.iter().all(|(r, c, _)| other.stored(r, c).is_some())
    }

    /// All entries as triples, sorted by `(row, col)`.
    pub fn to_triples(&self) -> Vec<Triple> {
        self.iter()
            .map(|(r, c, v)| Triple::new(r.clone(), c.clone(), v.clone()))
            .collect()
    }

    fn union_coords<'a>(&'a self, other: &'a Self) -> BTreeSet<(&'a Key, &'a Key)> {
        self.iter()
            .chain(other.iter())
            .map(|(r, c, _)| (r, c))
            .collect()
    }

    fn elementwise(
        &self,
        other: &Self,
        alg: &Algebra,
        op: impl Fn(&Value, &Value) -> Value,
    ) -> Self {
        let mut rows: BTreeMap<Key, BTreeMap<Key, Value>> = BTreeMap::new();
        for (r, c) in self.union_coords(other) {
            let v = op(self.get(r, c, alg), other.get(r, c, alg));
            if !alg.is_zero(&v) {
                rows.entry(r.clone()).or_default().insert(c.clone(), v);
            }
        }
        Self::from_nonzero(alg, rows)
    }

    /// Element-wise `⊕` over the union of both supports.
    pub fn ewise_add(&self, other: &Self, alg: &Algebra) -> Self {
        self.elementwise(other, alg, |a, b| alg.add(a, b))
    }

    /// Element-wise `⊗` over the union of both supports; implicit zeros take
    /// part, since `v ⊗ 0` need not vanish.
    pub fn ewise_mult(&self, other: &Self, alg: &Algebra) -> Self {
        self.ewise_mult_with(other, alg, None)
    }

    /// [`ewise_mult`](Self::ewise_mult), restricted to the intersection of
    /// supports when zero is certified to annihilate.
    pub fn ewise_mult_with(
        &self,
        other: &Self,
        alg: &Algebra,
        zero_skip: Option<&ZeroSkip>,
    ) -> Self {
        let Some(cert) = zero_skip else {
            return self.elementwise(other, alg, |a, b| alg.mul(a, b));
        };
        check_certificate(cert, alg);
        let mut rows: BTreeMap<Key, BTreeMap<Key, Value>> = BTreeMap::new();
        for (r, c, a) in self.iter() {
            if let Some(b) = other.stored(r, c) {
                let v = alg.mul(a, b);
                if !alg.is_zero(&v) {
                    rows.entry(r.clone()).or_default().insert(c.clone(), v);
                }
            }
        }
        Self::from_nonzero(alg, rows)
    }

    /// `A ⊕.⊗ B` with implicit zeros over the full inner keyset.
    pub fn matmul(&self, other: &Self, alg: &Algebra) -> Self {
        self.matmul_with(other, alg, &MatmulOptions::default())
    }

    /// `A ⊕.⊗ B`: `C(i,j)` folds `A(i,k) ⊗ B(k,j)` with `⊕` over the inner
    /// keys `k` (the union of `A`'s columns and `B`'s rows) in ascending
    /// order. An empty fold is zero. Zero results are not stored.
    pub fn matmul_with(&self, other: &Self, alg: &Algebra, opts: &MatmulOptions<'_>) -> Self {
        let out_rows: Vec<&Key> = self
            .rows
            .keys()
            .chain(&opts.extra_row_keys)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let out_cols: Vec<&Key> = other
            .cols
            .iter()
            .chain(&opts.extra_col_keys)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let inner: Vec<&Key> = self
            .cols
            .iter()
            .chain(other.rows.keys())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let compute_row = |i: &Key| -> BTreeMap<Key, Value> {
            match opts.zero_skip {
                Some(cert) => {
                    check_certificate(cert, alg);
                    stored_only_row(self.rows.get(i), other, alg)
                }
                None => out_cols
                    .iter()
                    .filter_map(|j| {
                        let v = fold(
                            inner
                                .iter()
                                .map(|k| alg.mul(self.get(i, k, alg), other.get(k, j, alg))),
                            alg,
                        );
                        (!alg.is_zero(&v)).then(|| ((*j).clone(), v))
                    })
                    .collect(),
            }
        };

        let computed: Vec<BTreeMap<Key, Value>> =
            if opts.parallel && alg.laws().allows_parallel_reduction() {
                out_rows.par_iter().map(|i| compute_row(i)).collect()
            } else {
                out_rows.iter().map(|i| compute_row(i)).collect()
            };
        let rows = out_rows.into_iter().cloned().zip(computed).collect();
        Self::from_nonzero(alg, rows)
    }

    /// Checks the storage invariants: members only, no stored zero, no
    /// empty row, column keyset equal to the stored columns.
    pub fn validate(&self, alg: &Algebra) -> Result<(), ArrayError> {
        if self.algebra != alg.name() {
            return Err(ArrayError::AlgebraMismatch {
                expected: alg.name().to_owned(),
                found: self.algebra.clone(),
            });
        }
        let mut used = BTreeSet::new();
        for (r, cols) in &self.rows {
            if cols.is_empty() {
                return Err(ArrayError::EmptyRow(r.clone()));
            }
            for (c, v) in cols {
                if let Err(source) = alg.check_member(v) {
                    return Err(ArrayError::Value {
                        row: r.clone(),
                        col: c.clone(),
                        source: Box::new(source),
                    });
                }
                if alg.is_zero(v) {
                    return Err(ArrayError::StoredZero {
                        row: r.clone(),
                        col: c.clone(),
                    });
                }
                if !self.cols.contains(c) {
                    return Err(ArrayError::UnlistedColumn(c.clone()));
                }
                used.insert(c);
            }
        }
        if let Some(c) = self.cols.iter().find(|c| !used.contains(c)) {
            return Err(ArrayError::EmptyColumn(c.clone()));
        }
        Ok(())
    }
}

/// `A ⊕.⊗ B` over stored-operand pairs only: terms with an implicit zero on
/// either side are skipped. Equal to [`AssociativeArray::matmul`] exactly
/// when zero is a two-sided `⊕` identity and `⊗` annihilator, and observably
/// different otherwise.
pub fn matmul_stored_only(
    a: &AssociativeArray,
    b: &AssociativeArray,
    alg: &Algebra,
) -> AssociativeArray {
    let rows = a
        .rows
        .iter()
        .map(|(i, arow)| (i.clone(), stored_only_row(Some(arow), b, alg)))
        .collect();
    AssociativeArray::from_nonzero(alg, rows)
}

fn stored_only_row(
    arow: Option<&BTreeMap<Key, Value>>,
    b: &AssociativeArray,
    alg: &Algebra,
) -> BTreeMap<Key, Value> {
    let mut acc: BTreeMap<Key, Value> = BTreeMap::new();
    // Ascending k keeps each output fold in inner-key order.
    for (k, av) in arow.into_iter().flatten() {
        for (j, bv) in b.row(k) {
            let term = alg.mul(av, bv);
            match acc.get_mut(j) {
                Some(cur) => *cur = alg.add(cur, &term),
                None => {
                    acc.insert(j.clone(), term);
                }
            }
        }
    }
    acc.retain(|_, v| !alg.is_zero(v));
    acc
}

/// Left fold with `⊕` starting from the first term; empty folds are zero.
fn fold(terms: impl Iterator<Item = Value>, alg: &Algebra) -> Value {
    terms
        .reduce(|acc, t| alg.add(&acc, &t))
        .unwrap_or_else(|| alg.zero().clone())
}

fn check_certificate(cert: &ZeroSkip, alg: &Algebra) {
    assert_eq!(
        cert.algebra,
        alg.name(),
        "zero-skip certificate issued for a different algebra"
    );
}
