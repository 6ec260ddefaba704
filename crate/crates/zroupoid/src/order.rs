//! The term-defined relation `x ⊑ y  iff  (x -> y')' = x`, the derived meet
//! and join, and verdicts on whether the relation is a partial or total
//! order.
//!
//! The relation is computed on arbitrary zroupoids, not only well-behaved
//! ones: exhibiting where reflexivity or transitivity breaks is part of the
//! point.

use serde::Serialize;

use crate::algebra::FiniteZroupoid;

/// `x ∧ y = (x -> y')'`.
pub fn meet(alg: &FiniteZroupoid, x: usize, y: usize) -> usize {
    alg.prime(alg.apply(x, alg.prime(y)))
}

/// `x ∨ y = (x' ∧ y')'`.
pub fn join(alg: &FiniteZroupoid, x: usize, y: usize) -> usize {
    alg.prime(meet(alg, alg.prime(x), alg.prime(y)))
}

/// `x ⊑ y  iff  x ∧ y = x`.
pub fn leq(alg: &FiniteZroupoid, x: usize, y: usize) -> bool {
    meet(alg, x, y) == x
}

/// Verdict on one order property, with the first counterexample found in
/// row-major scan order when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum PropertyVerdict<W: Serialize> {
    Holds,
    Fails { witness: W },
}

impl<W: Serialize> PropertyVerdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyVerdict::Holds)
    }
}

/// Full account of the relation on one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    /// `matrix[x][y]` iff `x ⊑ y`.
    pub matrix: Vec<Vec<bool>>,
    pub reflexive: PropertyVerdict<usize>,
    pub antisymmetric: PropertyVerdict<(usize, usize)>,
    pub transitive: PropertyVerdict<(usize, usize, usize)>,
    pub total: PropertyVerdict<(usize, usize)>,
    /// Maximum element, present only when the relation is a partial order
    /// and a maximum exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub greatest: Option<usize>,
}

impl OrderReport {
    pub fn is_partial_order(&self) -> bool {
        self.reflexive.holds() && self.antisymmetric.holds() && self.transitive.holds()
    }

    pub fn is_total_order(&self) -> bool {
        self.is_partial_order() && self.total.holds()
    }

    /// Elements sorted ascending by the relation. Only meaningful on total
    /// orders.
    pub fn sorted_elements(&self) -> Vec<usize> {
        let n = self.matrix.len();
        let mut elems: Vec<usize> = (0..n).collect();
        // In a total order, x's rank is the number of elements above it.
        elems.sort_by_key(|&x| {
            let above = (0..n).filter(|&y| self.matrix[x][y]).count();
            std::cmp::Reverse(above)
        });
        elems
    }
}

/// Scan the whole relation and decide reflexivity, antisymmetry,
/// transitivity and totality, each with a deterministic first witness.
pub fn order_report(alg: &FiniteZroupoid) -> OrderReport {
    let n = alg.size();
    let matrix: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| leq(alg, x, y)).collect())
        .collect();

    let reflexive = match (0..n).find(|&x| !matrix[x][x]) {
        None => PropertyVerdict::Holds,
        Some(x) => PropertyVerdict::Fails { witness: x },
    };

    let mut antisymmetric = PropertyVerdict::Holds;
    'anti: for x in 0..n {
        for y in 0..n {
            if x != y && matrix[x][y] && matrix[y][x] {
                antisymmetric = PropertyVerdict::Fails { witness: (x, y) };
                break 'anti;
            }
        }
    }

    let mut transitive = PropertyVerdict::Holds;
    'trans: for x in 0..n {
        for y in 0..n {
            if !matrix[x][y] {
                continue;
            }
            for z in 0..n {
                if matrix[y][z] && !matrix[x][z] {
                    transitive = PropertyVerdict::Fails { witness: (x, y, z) };
                    break 'trans;
                }
            }
        }
    }

    let mut total = PropertyVerdict::Holds;
    'total: for x in 0..n {
        for y in x + 1..n {
            if !matrix[x][y] && !matrix[y][x] {
                total = PropertyVerdict::Fails { witness: (x, y) };
                break 'total;
            }
        }
    }

    let is_poset = reflexive.holds() && antisymmetric.holds() && transitive.holds();
    let greatest = if is_poset {
        (0..n).find(|&g| (0..n).all(|x| matrix[x][g]))
    } else {
        None
    };

    OrderReport {
        matrix,
        reflexive,
        antisymmetric,
        transitive,
        total,
        greatest,
    }
}

/// A chain is an algebra satisfying the involution variety axioms on which
/// the relation is a total order.
pub fn is_chain(alg: &FiniteZroupoid) -> bool {
    alg.variety_memberships().i20 && order_report(alg).is_total_order()
}
