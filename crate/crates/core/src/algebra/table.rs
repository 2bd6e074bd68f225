use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{Algebra, AlgebraError, Carrier, LawFlags, Ops, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Plus,
    Times,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Plus => "plus",
            TableKind::Times => "times",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("element list is empty")]
    NoElements,
    #[error("element {value} is listed twice (positions {first} and {second})")]
    DuplicateElement {
        value: Value,
        first: usize,
        second: usize,
    },
    #[error("{which} index {index} is out of range")]
    IdentityOutOfRange { which: &'static str, index: usize },
    #[error("{table} table has {found} rows, expected {expected}")]
    RowCount {
        table: TableKind,
        expected: usize,
        found: usize,
    },
    #[error("{table} table row {row} has {found} cells, expected {expected}")]
    RowLength {
        table: TableKind,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{table} table cell ({row}, {col}) holds index {index}, out of range")]
    CellOutOfRange {
        table: TableKind,
        row: usize,
        col: usize,
        index: usize,
    },
}

/// A finite algebra given by explicit operation tables.
///
/// Table cells and the identity fields are indices into `elements`;
/// `plus[i][j]` is the index of `elements[i] ⊕ elements[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebraSpec {
    pub elements: Vec<Value>,
    pub zero: usize,
    pub one: usize,
    pub plus: Vec<Vec<usize>>,
    pub times: Vec<Vec<usize>>,
}

impl FiniteAlgebraSpec {
    /// Checks that elements are distinct, identities are listed and both
    /// tables are total `n × n` grids of valid indices. Reports the first
    /// offending cell.
    pub fn validate(&self) -> Result<(), TableError> {
        let n = self.elements.len();
        if n == 0 {
            return Err(TableError::NoElements);
        }
        let mut seen: HashMap<&Value, usize> = HashMap::new();
        for (i, v) in self.elements.iter().enumerate() {
            if let Some(&first) = seen.get(v) {
                return Err(TableError::DuplicateElement {
                    value: v.clone(),
                    first,
                    second: i,
                });
            }
            seen.insert(v, i);
        }
        for (which, index) in [("zero", self.zero), ("one", self.one)] {
            if index >= n {
                return Err(TableError::IdentityOutOfRange { which, index });
            }
        }
        for (table, rows) in [
            (TableKind::Plus, &self.plus),
            (TableKind::Times, &self.times),
        ] {
            if rows.len() != n {
                return Err(TableError::RowCount {
                    table,
                    expected: n,
                    found: rows.len(),
                });
            }
            for (row, cells) in rows.iter().enumerate() {
                if cells.len() != n {
                    return Err(TableError::RowLength {
                        table,
                        row,
                        expected: n,
                        found: cells.len(),
                    });
                }
                if let Some((col, &index)) = cells.iter().enumerate().find(|(_, &c)| c >= n) {
                    return Err(TableError::CellOutOfRange {
                        table,
                        row,
                        col,
                        index,
                    });
                }
            }
        }
        Ok(())
    }

    /// Tabulates any algebra with a finite carrier.
    pub fn from_algebra(alg: &Algebra) -> Option<Self> {
        let elements = alg.elements()?.to_vec();
        let index: HashMap<&Value, usize> =
            elements.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let tabulate = |op: &dyn Fn(&Value, &Value) -> Value| -> Vec<Vec<usize>> {
            elements
                .iter()
                .map(|a| elements.iter().map(|b| index[&op(a, b)]).collect())
                .collect()
        };
        let plus = tabulate(&|a, b| alg.add(a, b));
        let times = tabulate(&|a, b| alg.mul(a, b));
        Some(FiniteAlgebraSpec {
            zero: index[alg.zero()],
            one: index[alg.one()],
            plus,
            times,
            elements,
        })
    }

    /// Like [`Algebra::from_finite_spec`] but with an explicit name.
    pub fn to_algebra_named(&self, name: impl Into<String>) -> Result<Algebra, AlgebraError> {
        build(self, Some(name.into()))
    }
}

pub(crate) struct TableOps {
    elements: Arc<[Value]>,
    index: HashMap<Value, usize>,
    plus: Vec<usize>,
    times: Vec<usize>,
}

impl TableOps {
    pub(crate) fn index_of(&self, v: &Value) -> Option<usize> {
        self.index.get(v).copied()
    }

    fn lookup(&self, table: &[usize], a: &Value, b: &Value) -> Value {
        let n = self.elements.len();
        let i = self.index[a];
        let j = self.index[b];
        self.elements[table[i * n + j]].clone()
    }

    pub(crate) fn plus(&self, a: &Value, b: &Value) -> Value {
        self.lookup(&self.plus, a, b)
    }

    pub(crate) fn times(&self, a: &Value, b: &Value) -> Value {
        self.lookup(&self.times, a, b)
    }
}

fn is_associative(t: &[usize], n: usize) -> bool {
    (0..n)
        .all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]])))
}

fn is_commutative(t: &[usize], n: usize) -> bool {
    (0..n).all(|a| (0..n).all(|b| t[a * n + b] == t[b * n + a]))
}

pub(crate) fn build(
    spec: &FiniteAlgebraSpec,
    name: Option<String>,
) -> Result<Algebra, AlgebraError> {
    spec.validate()?;
    let n = spec.elements.len();
    let plus: Vec<usize> = spec.plus.iter().flatten().copied().collect();
    let times: Vec<usize> = spec.times.iter().flatten().copied().collect();
    // Law flags for tables are derived exhaustively rather than declared.
    let laws = LawFlags {
        plus_associative: is_associative(&plus, n),
        plus_commutative: is_commutative(&plus, n),
        times_associative: is_associative(&times, n),
        times_commutative: is_commutative(&times, n),
    };
    let elements: Arc<[Value]> = spec.elements.clone().into();
    let index = spec
        .elements
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let name = name.unwrap_or_else(|| {
        let names: Vec<String> = spec.elements.iter().map(Value::encode).collect();
        format!("table[{}]", names.join(","))
    });
    Ok(Algebra::from_parts(
        name,
        spec.elements[spec.zero].clone(),
        spec.elements[spec.one].clone(),
        laws,
        Carrier::Finite(elements.clone()),
        false,
        Ops::Table(TableOps {
            elements,
            index,
            plus,
            times,
        }),
    ))
}
