//! Document-by-document arrays of shared words.
//!
//! When `E(i,j)` holds the words shared by documents `i` and `j`, every word
//! in both `E(i,j)` and `E(m,n)` is also in `E(i,n)` and `E(m,j)`. Under that
//! structure `Eᵀ ∪.∩ E` never intersects two disjoint nonempty sets, so it
//! yields a correct adjacency array even though power sets lack the
//! zero-product property.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{powerset, Algebra, Value};
use crate::array::{AssociativeArray, Key};

use super::{GraphError, IncidencePair};

/// A word found in `E(i,j)` and `E(m,n)` but missing from `E(i,n)` or
/// `E(m,j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordViolation {
    pub i: Key,
    pub j: Key,
    pub m: Key,
    pub n: Key,
    pub word: String,
}

impl fmt::Display for WordViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.i, self.j, self.m, self.n, self.word
        )
    }
}

type WordEntry<'a> = (&'a Key, &'a Key, &'a BTreeSet<String>);

fn word_sets(e: &AssociativeArray) -> Result<Vec<WordEntry<'_>>, GraphError> {
    e.iter()
        .map(|(r, c, v)| match v {
            Value::Set(words) => Ok((r, c, words)),
            _ => Err(GraphError::NotSetValued {
                row: r.clone(),
                col: c.clone(),
            }),
        })
        .collect()
}

/// Returns the first violation in `((i,j), (m,n), word)` order, or `None`
/// when the array is word-consistent.
pub fn check_word_consistency(e: &AssociativeArray) -> Result<Option<WordViolation>, GraphError> {
    let entries = word_sets(e)?;
    let mut by_word: BTreeMap<&str, BTreeSet<(&Key, &Key)>> = BTreeMap::new();
    for &(r, c, words) in &entries {
        for w in words {
            by_word.entry(w).or_default().insert((r, c));
        }
    }

    let mut first: Option<WordViolation> = None;
    for (word, coords) in by_word {
        // Consistent iff the coordinates holding `word` form a full
        // rows × cols rectangle.
        let rows: BTreeSet<&Key> = coords.iter().map(|(r, _)| *r).collect();
        let cols: BTreeSet<&Key> = coords.iter().map(|(_, c)| *c).collect();
        if rows.len() * cols.len() == coords.len() {
            continue;
        }
        let found = coords.iter().find_map(|&(i, j)| {
            coords.iter().find_map(|&(m, n)| {
                (!coords.contains(&(i, n)) || !coords.contains(&(m, j))).then(|| WordViolation {
                    i: i.clone(),
                    j: j.clone(),
                    m: m.clone(),
                    n: n.clone(),
                    word: word.to_owned(),
                })
            })
        });
        if let Some(v) = found {
            let order = |v: &WordViolation| {
                (
                    v.i.clone(),
                    v.j.clone(),
                    v.m.clone(),
                    v.n.clone(),
                    v.word.clone(),
                )
            };
            if first.as_ref().is_none_or(|f| order(&v) < order(f)) {
                first = Some(v);
            }
        }
    }
    Ok(first)
}

/// The power set over every word appearing in `e`.
pub fn vocabulary_algebra(e: &AssociativeArray) -> Result<Algebra, GraphError> {
    let vocab = word_sets(e)?
        .into_iter()
        .flat_map(|(_, _, words)| words.iter().cloned())
        .collect();
    Ok(powerset(vocab))
}

/// `Eᵀ ∪.∩ E` for a square, word-consistent array: entry `(i,j)` lists the
/// words documents `i` and `j` share.
pub fn document_adjacency(e: &AssociativeArray) -> Result<AssociativeArray, GraphError> {
    let alg = vocabulary_algebra(e)?;
    if !e.row_keys().eq(e.col_keys()) {
        return Err(GraphError::NotSquare);
    }
    if let Some(v) = check_word_consistency(e)? {
        return Err(GraphError::Inconsistent(Box::new(v)));
    }
    Ok(e.transpose().matmul(e, &alg))
}

impl IncidencePair {
    /// The incidence pair `(E, E)` of an undirected incidence array.
    pub fn symmetric(e: &AssociativeArray) -> IncidencePair {
        IncidencePair {
            e_out: e.clone(),
            e_in: e.clone(),
        }
    }
}
