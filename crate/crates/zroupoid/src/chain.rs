//! Construction of the chain algebras on integer intervals `[-n, m]`.
//!
//! The carrier is the interval of integers from `-n` to `m`; the operation is
//! `x => y = max(x*, y)` when both arguments are non-negative and `min(x, y)`
//! otherwise, where `*` fixes the negatives, sends `0` to `m`, and is defined
//! on positives through the predecessor function. Element `v` is stored at
//! table index `v + n`, so the zero element sits at index `n`.

use thiserror::Error;

use crate::algebra::FiniteZroupoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("value {value} outside [{lo}, {hi}]")]
pub struct DomainError {
    pub value: i64,
    pub lo: i64,
    pub hi: i64,
}

/// The shape `(n, m)` of a chain: `n` negative elements, `m` positive ones,
/// `n + m + 1` elements in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainSpec {
    neg: usize,
    pos: usize,
}

impl ChainSpec {
    pub fn new(neg: usize, pos: usize) -> ChainSpec {
        ChainSpec { neg, pos }
    }

    pub fn neg(&self) -> usize {
        self.neg
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn size(&self) -> usize {
        self.neg + self.pos + 1
    }

    pub fn min_value(&self) -> i64 {
        -(self.neg as i64)
    }

    pub fn max_value(&self) -> i64 {
        self.pos as i64
    }

    /// Table index of the signed value `v`.
    pub fn index_of(&self, v: i64) -> Result<usize, DomainError> {
        self.check(v)?;
        Ok((v + self.neg as i64) as usize)
    }

    /// Signed value stored at index `i`.
    pub fn value_of(&self, i: usize) -> i64 {
        debug_assert!(i < self.size());
        i as i64 - self.neg as i64
    }

    fn check(&self, v: i64) -> Result<(), DomainError> {
        if v < self.min_value() || v > self.max_value() {
            Err(DomainError {
                value: v,
                lo: self.min_value(),
                hi: self.max_value(),
            })
        } else {
            Ok(())
        }
    }

    /// Predecessor: `v - 1`, clamped at the bottom element.
    pub fn pred(&self, v: i64) -> Result<i64, DomainError> {
        self.check(v)?;
        if v > self.min_value() {
            Ok(v - 1)
        } else {
            Ok(v)
        }
    }

    /// The star function: fixes negatives, `0* = m`, and
    /// `v* = pred(pred(v)*)` for positive `v`.
    ///
    /// The recursion is unwound into a loop from `0` up to `v`; on
    /// non-negatives the result agrees with the closed form `m - v`, which is
    /// asserted rather than used.
    pub fn star(&self, v: i64) -> Result<i64, DomainError> {
        self.check(v)?;
        if v < 0 {
            return Ok(v);
        }
        let mut s = self.max_value();
        for _ in 0..v {
            s = self.pred(s)?;
        }
        debug_assert_eq!(s, self.max_value() - v);
        Ok(s)
    }

    /// The chain operation: `max(x*, y)` when `x, y >= 0`, else `min(x, y)`.
    pub fn arrow(&self, x: i64, y: i64) -> Result<i64, DomainError> {
        self.check(x)?;
        self.check(y)?;
        if x >= 0 && y >= 0 {
            Ok(self.star(x)?.max(y))
        } else {
            Ok(x.min(y))
        }
    }
}

/// Materialize the chain algebra with `neg` negative and `pos` positive
/// elements as an operation table with signed labels.
pub fn build_chain(neg: usize, pos: usize) -> FiniteZroupoid {
    let spec = ChainSpec::new(neg, pos);
    let size = spec.size();
    let mut table = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let value = spec
                .arrow(spec.value_of(i), spec.value_of(j))
                .expect("values in range by construction");
            table.push(spec.index_of(value).expect("closed under arrow"));
        }
    }
    let labels = (0..size).map(|i| spec.value_of(i).to_string()).collect();
    let alg = FiniteZroupoid::from_flat_unchecked(size, neg, table)
        .with_labels(labels)
        .expect("label count matches size");
    debug_assert!(
        alg.check_statement(&crate::term::parse_statement(crate::algebra::axioms::I).unwrap())
            .holds(),
        "constructed chain must satisfy the defining identity"
    );
    alg
}
