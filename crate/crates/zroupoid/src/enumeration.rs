//! Enumeration of small involutive algebras up to isomorphism, and
//! isomorphism testing itself.
//!
//! The search fills an operation table cell by cell and never consults the
//! interval construction in [`crate::chain`]; it is the independent route to
//! the classification of chains, so the two can be compared in tests.
//!
//! Structure forced on every candidate before any branching:
//! the zero column (the priming map) is an involution, the row of `0'` is
//! the identity row, and the cells `x' -> x = x` and `x -> x' = x'` are
//! placed. Each later placement triggers three propagations: `0 -> v` is a
//! fixpoint of the zero row, the column of `0'` mirrors the zero row, and in
//! chains-only mode incomparability of a pair forces the opposite relation.
//! Every placement is also checked against all defining-identity instances
//! whose sub-evaluations are determined.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::FiniteZroupoid;
use crate::chain::{build_chain, ChainSpec};
use crate::order::{is_chain, leq};

const UNSET: u8 = u8::MAX;

/// Hard bound on carrier size for canonical forms and chain search; the
/// factorial relabeling sweep stays trivially cheap below it.
pub const MAX_SIZE: usize = 8;

/// Supported bound for exhaustive all-algebra search (not just chains).
pub const MAX_SIZE_ALL: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("size must be at least 1")]
    EmptySize,
    #[error("size {requested} exceeds the supported bound {max}; no results computed")]
    SizeLimit { requested: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("algebra is not a chain")]
    NotAChain,
    #[error(
        "chain with {neg} elements below zero and {pos} above is not isomorphic \
         to the constructed chain of that shape; classification invariant violated"
    )]
    ClassificationFailure { neg: usize, pos: usize },
}

/// Outcome of an isomorphism test; the map, when present, fixes zero and
/// transports the table of the first algebra onto the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    ChainsOnly,
    AllI20,
}

/// Cell fill strategy. Row-major is the only strategy; the field exists so
/// search output records how it was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellOrder {
    RowMajor,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub size: usize,
    pub mode: SearchMode,
    pub worker_count: usize,
    pub cell_order: CellOrder,
}

impl SearchConfig {
    pub fn new(size: usize, mode: SearchMode) -> SearchConfig {
        SearchConfig {
            size,
            mode,
            worker_count: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            cell_order: CellOrder::RowMajor,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> SearchConfig {
        self.worker_count = workers.max(1);
        self
    }
}

/// All chains of the given size, canonicalized and sorted.
pub fn enumerate_chains(size: usize) -> Result<Vec<FiniteZroupoid>, EnumerationError> {
    enumerate(&SearchConfig::new(size, SearchMode::ChainsOnly))
}

/// All involutive algebras of the given size, canonicalized and sorted.
pub fn enumerate_i20(size: usize) -> Result<Vec<FiniteZroupoid>, EnumerationError> {
    enumerate(&SearchConfig::new(size, SearchMode::AllI20))
}

/// Run the table search described in the module docs. The result set is
/// independent of `worker_count`: work is partitioned on the choice of the
/// priming involution and merged through canonical forms.
pub fn enumerate(config: &SearchConfig) -> Result<Vec<FiniteZroupoid>, EnumerationError> {
    let size = config.size;
    if size == 0 {
        return Err(EnumerationError::EmptySize);
    }
    let max = match config.mode {
        SearchMode::ChainsOnly => MAX_SIZE,
        SearchMode::AllI20 => MAX_SIZE_ALL,
    };
    if size > max {
        return Err(EnumerationError::SizeLimit {
            requested: size,
            max,
        });
    }

    let involutions = involutions(size);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count.max(1))
        .build()
        .expect("worker pool");
    let found: Vec<Vec<FiniteZroupoid>> = pool.install(|| {
        involutions
            .par_iter()
            .map(|prime| Search::new(size, prime, config.mode).run())
            .collect()
    });

    let mut canonical = BTreeSet::new();
    for alg in found.into_iter().flatten() {
        canonical.insert(canonical_form(&alg)?);
    }
    Ok(canonical.into_iter().collect())
}

/// Lexicographically minimal table over all relabelings that send the zero
/// element to index 0. Two algebras are isomorphic exactly when their
/// canonical forms are equal.
pub fn canonical_form(alg: &FiniteZroupoid) -> Result<FiniteZroupoid, EnumerationError> {
    let n = alg.size();
    if n > MAX_SIZE {
        return Err(EnumerationError::SizeLimit {
            requested: n,
            max: MAX_SIZE,
        });
    }
    let table = alg.flat_table();
    let mut best: Option<Vec<usize>> = None;
    let mut perm = vec![0usize; n];
    perm[alg.zero()] = 0;
    let others: Vec<usize> = (0..n).filter(|&x| x != alg.zero()).collect();
    let mut images: Vec<usize> = (1..n).collect();
    permute(&mut images, 0, &mut |images| {
        for (&x, &px) in others.iter().zip(images.iter()) {
            perm[x] = px;
        }
        let mut relabeled = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                relabeled[perm[x] * n + perm[y]] = perm[table[x * n + y]];
            }
        }
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    });
    let best = best.expect("at least the identity relabeling");
    Ok(FiniteZroupoid::from_flat_unchecked(n, 0, best))
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Exact isomorphism decision by backtracking over zero-fixing bijections,
/// pruned by per-element invariants (priming behaviour, diagonal behaviour,
/// row and column multiplicity shapes).
pub fn are_isomorphic(a: &FiniteZroupoid, b: &FiniteZroupoid) -> IsoResult {
    if a.size() != b.size() {
        return IsoResult {
            isomorphic: false,
            map: None,
        };
    }
    let n = a.size();
    let sig_a: Vec<ElementSig> = (0..n).map(|x| ElementSig::of(a, x)).collect();
    let sig_b: Vec<ElementSig> = (0..n).map(|x| ElementSig::of(b, x)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return IsoResult {
                isomorphic: false,
                map: None,
            };
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_iso(a, b, &sig_a, &sig_b, &mut map, &mut used, 0) {
        IsoResult {
            isomorphic: true,
            map: Some(map),
        }
    } else {
        IsoResult {
            isomorphic: false,
            map: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ElementSig {
    is_zero: bool,
    prime_fixed: bool,
    diag_self: bool,
    row_shape: Vec<usize>,
    col_shape: Vec<usize>,
}

impl ElementSig {
    fn of(alg: &FiniteZroupoid, x: usize) -> ElementSig {
        let n = alg.size();
        let mut row_counts = vec![0usize; n];
        let mut col_counts = vec![0usize; n];
        for y in 0..n {
            row_counts[alg.apply(x, y)] += 1;
            col_counts[alg.apply(y, x)] += 1;
        }
        let mut row_shape: Vec<usize> = row_counts.into_iter().filter(|&c| c > 0).collect();
        row_shape.sort_unstable();
        let mut col_shape: Vec<usize> = col_counts.into_iter().filter(|&c| c > 0).collect();
        col_shape.sort_unstable();
        ElementSig {
            is_zero: x == alg.zero(),
            prime_fixed: alg.prime(x) == x,
            diag_self: alg.apply(x, x) == x,
            row_shape,
            col_shape,
        }
    }
}

fn extend_iso(
    a: &FiniteZroupoid,
    b: &FiniteZroupoid,
    sig_a: &[ElementSig],
    sig_b: &[ElementSig],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    x: usize,
) -> bool {
    let n = a.size();
    if x == n {
        return true;
    }
    for image in 0..n {
        if used[image] || sig_a[x] != sig_b[image] {
            continue;
        }
        if (x == a.zero()) != (image == b.zero()) {
            continue;
        }
        map[x] = image;
        used[image] = true;
        if consistent_so_far(a, b, map, x) && extend_iso(a, b, sig_a, sig_b, map, used, x + 1) {
            return true;
        }
        used[image] = false;
        map[x] = usize::MAX;
    }
    false
}

fn consistent_so_far(a: &FiniteZroupoid, b: &FiniteZroupoid, map: &[usize], upto: usize) -> bool {
    for x in 0..=upto {
        for y in 0..=upto {
            let z = a.apply(x, y);
            if z <= upto && b.apply(map[x], map[y]) != map[z] {
                return false;
            }
        }
    }
    true
}

/// Read off the shape `(n, m)` of a chain (elements strictly below and above
/// zero) and verify the algebra really is isomorphic to the constructed
/// chain of that shape.
pub fn classify_chain(alg: &FiniteZroupoid) -> Result<ChainSpec, ClassifyError> {
    if !is_chain(alg) {
        return Err(ClassifyError::NotAChain);
    }
    let zero = alg.zero();
    let neg = (0..alg.size())
        .filter(|&x| x != zero && leq(alg, x, zero))
        .count();
    let pos = (0..alg.size())
        .filter(|&x| x != zero && leq(alg, zero, x))
        .count();
    let model = build_chain(neg, pos);
    if !are_isomorphic(alg, &model).isomorphic {
        return Err(ClassifyError::ClassificationFailure { neg, pos });
    }
    Ok(ChainSpec::new(neg, pos))
}

/// All involutions of `0..k`, in a fixed order. These are the candidate
/// priming maps: the column of zero must satisfy `x'' = x`.
fn involutions(k: usize) -> Vec<Vec<u8>> {
    fn rec(c: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
        let x = match c.iter().position(|&v| v == UNSET) {
            None => {
                out.push(c.clone());
                return;
            }
            Some(x) => x,
        };
        c[x] = x as u8;
        rec(c, k, out);
        c[x] = UNSET;
        for y in x + 1..k {
            if c[y] == UNSET {
                c[x] = y as u8;
                c[y] = x as u8;
                rec(c, k, out);
                c[x] = UNSET;
                c[y] = UNSET;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![UNSET; k], k, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum InstanceStatus {
    Satisfied,
    Violated,
    Unknown,
}

/// Backtracking search for all completions of one priming involution. The
/// zero element is pinned at index 0 throughout.
struct Search<'a> {
    k: usize,
    prime: &'a [u8],
    /// Index of `0'`.
    top: usize,
    mode: SearchMode,
    table: Vec<u8>,
    free: Vec<usize>,
    /// Unconfirmed defining-identity instances, one slab per decision depth.
    levels: Vec<Vec<u16>>,
    results: Vec<FiniteZroupoid>,
}

impl<'a> Search<'a> {
    fn new(k: usize, prime: &'a [u8], mode: SearchMode) -> Search<'a> {
        Search {
            k,
            prime,
            top: prime[0] as usize,
            mode,
            table: vec![UNSET; k * k],
            free: Vec::new(),
            levels: Vec::new(),
            results: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<FiniteZroupoid> {
        let k = self.k;
        let mut trail = Vec::new();
        let seeds = self.seed_cells();
        for (cell, v) in seeds {
            if !self.assign_propagate(cell, v, &mut trail) {
                return self.results; // inconsistent involution, no models
            }
        }

        self.free = (0..k * k).filter(|&c| self.table[c] == UNSET).collect();

        // Depth-indexed slabs of unconfirmed instances; depth 0 is the root.
        let all: Vec<u16> = (0..(k * k * k) as u16).collect();
        self.levels = vec![Vec::with_capacity(all.len()); self.free.len() + 2];
        let mut root = Vec::new();
        if !self.scan_instances(&all, &mut root) {
            return self.results;
        }
        self.levels[0] = root;

        self.dfs(0, 0);
        self.results
    }

    fn seed_cells(&self) -> Vec<(usize, u8)> {
        let k = self.k;
        let mut seeds = Vec::new();
        for x in 0..k {
            // zero column: x -> 0 = x'
            seeds.push((x * k, self.prime[x]));
            // row of 0' is the identity row
            seeds.push((self.top * k + x, x as u8));
            // x' -> x = x  and  x -> x' = x'
            let px = self.prime[x] as usize;
            seeds.push((px * k + x, x as u8));
            seeds.push((x * k + px, self.prime[x]));
        }
        seeds
    }

    #[inline]
    fn assign(&mut self, cell: usize, v: u8, trail: &mut Vec<usize>) -> bool {
        let cur = self.table[cell];
        if cur == v {
            return true;
        }
        if cur != UNSET {
            return false;
        }
        self.table[cell] = v;
        trail.push(cell);
        true
    }

    /// Assign a cell and run propagation to a fixpoint. On `false` the trail
    /// still lists every cell set along the way, for undoing.
    fn assign_propagate(&mut self, cell: usize, v: u8, trail: &mut Vec<usize>) -> bool {
        let k = self.k;
        let start = trail.len();
        if !self.assign(cell, v, trail) {
            return false;
        }
        let mut i = start;
        while i < trail.len() {
            let cl = trail[i];
            i += 1;
            let (r, col) = (cl / k, cl % k);
            let v = self.table[cl] as usize;

            // 0 -> v is a fixpoint of the zero row.
            if r == 0 && !self.assign(v, v as u8, trail) {
                return false;
            }
            // Column of 0' mirrors the zero row: x -> 0' = 0 -> x'.
            if col == self.top && !self.assign(self.prime[r] as usize, v as u8, trail) {
                return false;
            }
            if r == 0 {
                let mirror = self.prime[col] as usize * k + self.top;
                if !self.assign(mirror, v as u8, trail) {
                    return false;
                }
            }

            // This cell decides whether r is below c[col] in the order.
            let x = r;
            let y = self.prime[col] as usize;
            if x != y {
                let x_below_y = v as u8 == self.prime[x];
                let mirror = y * k + self.prime[x] as usize;
                match self.table[mirror] {
                    UNSET => {
                        if !x_below_y && self.mode == SearchMode::ChainsOnly {
                            // incomparable pairs are impossible on a chain
                            if !self.assign(mirror, self.prime[y], trail) {
                                return false;
                            }
                        }
                    }
                    mv => {
                        let y_below_x = mv == self.prime[y];
                        if x_below_y && y_below_x {
                            return false; // antisymmetry
                        }
                        if !x_below_y && !y_below_x && self.mode == SearchMode::ChainsOnly {
                            return false; // totality
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &mut Vec<usize>, to: usize) {
        while trail.len() > to {
            let cell = trail.pop().expect("trail entries");
            self.table[cell] = UNSET;
        }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.table[x * self.k + y];
        if v == UNSET {
            None
        } else {
            Some(v as usize)
        }
    }

    fn instance_status(&self, id: u16) -> InstanceStatus {
        let k = self.k;
        let id = id as usize;
        let z = id % k;
        let y = (id / k) % k;
        let x = id / (k * k);
        let (lhs, rhs) = match self.eval_instance(x, y, z) {
            Some(pair) => pair,
            None => return InstanceStatus::Unknown,
        };
        if lhs == rhs {
            InstanceStatus::Satisfied
        } else {
            InstanceStatus::Violated
        }
    }

    /// Evaluate both sides of `(x -> y) -> z = ((z' -> x) -> (y -> z)')'`
    /// against the partial table; `None` when some needed cell is unset.
    fn eval_instance(&self, x: usize, y: usize, z: usize) -> Option<(usize, usize)> {
        let t1 = self.get(x, y)?;
        let lhs = self.get(t1, z)?;
        let zp = self.prime[z] as usize;
        let t2 = self.get(zp, x)?;
        let t3 = self.get(y, z)?;
        let t4 = self.get(t2, self.prime[t3] as usize)?;
        let rhs = self.prime[t4] as usize;
        Some((lhs, rhs))
    }

    fn scan_instances(&self, parent: &[u16], child: &mut Vec<u16>) -> bool {
        child.clear();
        for &id in parent {
            match self.instance_status(id) {
                InstanceStatus::Violated => return false,
                InstanceStatus::Satisfied => {}
                InstanceStatus::Unknown => child.push(id),
            }
        }
        true
    }

    fn dfs(&mut self, mut cursor: usize, depth: usize) {
        while cursor < self.free.len() && self.table[self.free[cursor]] != UNSET {
            cursor += 1;
        }
        if cursor == self.free.len() {
            self.emit();
            return;
        }
        let cell = self.free[cursor];
        let mut trail = Vec::new();
        for v in 0..self.k as u8 {
            let mark = trail.len();
            if self.assign_propagate(cell, v, &mut trail) {
                let parent = std::mem::take(&mut self.levels[depth]);
                let mut child = std::mem::take(&mut self.levels[depth + 1]);
                let ok = self.scan_instances(&parent, &mut child);
                self.levels[depth] = parent;
                self.levels[depth + 1] = child;
                if ok {
                    self.dfs(cursor + 1, depth + 1);
                }
            }
            self.undo(&mut trail, mark);
        }
    }

    /// A fully assigned table reaches here with every defining-identity
    /// instance already confirmed; re-verify honestly and keep survivors.
    fn emit(&mut self) {
        let table: Vec<usize> = self.table.iter().map(|&v| v as usize).collect();
        let alg = FiniteZroupoid::from_flat_unchecked(self.k, 0, table);
        let keep = match self.mode {
            SearchMode::ChainsOnly => is_chain(&alg),
            SearchMode::AllI20 => alg.variety_memberships().i20,
        };
        if keep {
            self.results.push(alg);
        }
    }
}
