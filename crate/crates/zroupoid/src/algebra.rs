//! Finite zroupoids as operation tables, and satisfaction of identities and
//! quasi-identities by exhaustive evaluation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Identity, Statement, Term};

/// Schema tag for algebra JSON files.
pub const ALGEBRA_SCHEMA: &str = "zroupoid-v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("size must be at least 1")]
    EmptyCarrier,
    #[error("zero element {zero} out of range for size {size}")]
    ZeroOutOfRange { zero: usize, size: usize },
    #[error("table must be {size}x{size}, row {row} has {len} entries")]
    BadRowLength { row: usize, len: usize, size: usize },
    #[error("table has {rows} rows, expected {size}")]
    BadRowCount { rows: usize, size: usize },
    #[error("table[{row}][{col}] = {value} out of range for size {size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("labels must have {size} entries, got {len}")]
    BadLabelCount { len: usize, size: usize },
    #[error("unsupported schema {found:?}, expected {ALGEBRA_SCHEMA:?}")]
    BadSchema { found: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
}

/// A finite algebra `<A; ->, 0>` given by its operation table.
///
/// Elements are the indices `0..size`; rows index the left operand. The zero
/// element is a designated index and need not be 0 (constructed chains place
/// it mid-table). Optional labels are display metadata only and take no part
/// in equality or ordering.
#[derive(Debug, Clone)]
pub struct FiniteZroupoid {
    size: usize,
    zero: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteZroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.zero == other.zero && self.table == other.table
    }
}

impl Eq for FiniteZroupoid {}

impl PartialOrd for FiniteZroupoid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteZroupoid {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size, self.zero, &self.table).cmp(&(other.size, other.zero, &other.table))
    }
}

impl FiniteZroupoid {
    /// Validate and build an algebra from a square table of element indices.
    pub fn new(
        size: usize,
        zero: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<FiniteZroupoid, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if zero >= size {
            return Err(AlgebraError::ZeroOutOfRange { zero, size });
        }
        if table.len() != size {
            return Err(AlgebraError::BadRowCount {
                rows: table.len(),
                size,
            });
        }
        let mut flat = Vec::with_capacity(size * size);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != size {
                return Err(AlgebraError::BadRowLength {
                    row,
                    len: entries.len(),
                    size,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= size {
                    return Err(AlgebraError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        size,
                    });
                }
                flat.push(value);
            }
        }
        Ok(FiniteZroupoid {
            size,
            zero,
            table: flat,
            labels: None,
        })
    }

    pub(crate) fn from_flat_unchecked(size: usize, zero: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        debug_assert!(table.iter().all(|&v| v < size));
        FiniteZroupoid {
            size,
            zero,
            table,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.size {
            return Err(AlgebraError::BadLabelCount {
                len: labels.len(),
                size: self.size,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label when present, else its index.
    pub fn label_of(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => x.to_string(),
        }
    }

    /// `x -> y`.
    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.size && y < self.size);
        self.table[x * self.size + y]
    }

    /// `x' = x -> 0`.
    #[inline]
    pub fn prime(&self, x: usize) -> usize {
        self.apply(x, self.zero)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|r| self.table[r * self.size..(r + 1) * self.size].to_vec())
            .collect()
    }

    pub(crate) fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// Evaluate a term under an assignment of its free variables.
    pub fn eval_term(
        &self,
        term: &Term,
        assignment: &BTreeMap<String, usize>,
    ) -> Result<usize, EvalError> {
        match term {
            Term::Var(v) => assignment
                .get(v)
                .copied()
                .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
            Term::Zero => Ok(self.zero),
            Term::Arrow(l, r) => {
                let l = self.eval_term(l, assignment)?;
                let r = self.eval_term(r, assignment)?;
                Ok(self.apply(l, r))
            }
        }
    }

    /// Decide an identity by checking all `size^k` assignments.
    pub fn check_identity(&self, id: &Identity) -> CheckResult {
        let vars = id.free_vars();
        let lhs = compile(&id.lhs, &vars);
        let rhs = compile(&id.rhs, &vars);
        let mut stack = Vec::new();
        let witness = Assignments::new(vars.len(), self.size)
            .for_each(|asg| lhs.eval(self, asg, &mut stack) == rhs.eval(self, asg, &mut stack));
        match witness {
            None => CheckResult::holds_without_witness(),
            Some(asg) => CheckResult::fails(&vars, &asg),
        }
    }

    /// Decide a quasi-identity: every assignment satisfying all premises must
    /// satisfy the conclusion.
    pub fn check_quasi_identity(
        &self,
        premises: &[Identity],
        conclusion: &Identity,
    ) -> CheckResult {
        let mut vars = Vec::new();
        for p in premises {
            for v in p.free_vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        for v in conclusion.free_vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let compiled_premises: Vec<(Compiled, Compiled)> = premises
            .iter()
            .map(|p| (compile(&p.lhs, &vars), compile(&p.rhs, &vars)))
            .collect();
        let lhs = compile(&conclusion.lhs, &vars);
        let rhs = compile(&conclusion.rhs, &vars);
        let mut stack = Vec::new();
        let witness = Assignments::new(vars.len(), self.size).for_each(|asg| {
            let premises_hold = compiled_premises
                .iter()
                .all(|(pl, pr)| pl.eval(self, asg, &mut stack) == pr.eval(self, asg, &mut stack));
            !premises_hold || lhs.eval(self, asg, &mut stack) == rhs.eval(self, asg, &mut stack)
        });
        match witness {
            None => CheckResult::holds_without_witness(),
            Some(asg) => CheckResult::fails(&vars, &asg),
        }
    }

    /// Decide an arbitrary statement.
    pub fn check_statement(&self, st: &Statement) -> CheckResult {
        match st {
            Statement::Identity(id) => self.check_identity(id),
            Statement::Quasi {
                premises,
                conclusion,
            } => self.check_quasi_identity(premises, conclusion),
        }
    }

    /// Decide membership in the named varieties by checking their axioms.
    pub fn variety_memberships(&self) -> VarietyMembership {
        let holds = |text: &str| {
            self.check_statement(&crate::term::parse_statement(text).expect("builtin axiom"))
                .holds()
        };
        let i = holds(axioms::I) && holds(axioms::I0);
        let i20 = i && holds(axioms::I20);
        let dm = i && holds(axioms::DM);
        let kl = dm && holds(axioms::KL1) && holds(axioms::KL2);
        let ba = dm && holds(axioms::BA);
        let sl = i && holds(axioms::SL1) && holds(axioms::SL2);
        VarietyMembership {
            i,
            i20,
            dm,
            kl,
            ba,
            sl,
        }
    }

    /// Serialize to the versioned JSON schema.
    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            schema: ALGEBRA_SCHEMA.to_string(),
            size: self.size,
            zero: self.zero,
            table: self.rows(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("algebra serializes")
    }

    pub fn from_json(json: AlgebraJson) -> Result<FiniteZroupoid, AlgebraError> {
        if json.schema != ALGEBRA_SCHEMA {
            return Err(AlgebraError::BadSchema {
                found: json.schema,
            });
        }
        let alg = FiniteZroupoid::new(json.size, json.zero, json.table)?;
        match json.labels {
            Some(labels) => alg.with_labels(labels),
            None => Ok(alg),
        }
    }
}

/// On-disk form of an algebra (`zroupoid-v1`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub schema: String,
    pub size: usize,
    pub zero: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Defining axioms of the varieties handled by [`FiniteZroupoid::variety_memberships`].
pub mod axioms {
    pub const I: &str = "(x -> y) -> z = ((z' -> x) -> (y -> z)')'";
    pub const I0: &str = "0'' = 0";
    pub const I20: &str = "x'' = x";
    pub const DM: &str = "(x -> y) -> x = x";
    pub const KL1: &str = "(x -> x)' -> (y -> y)' = x -> x";
    pub const KL2: &str = "(y -> y) -> (x -> x) = x -> x";
    pub const BA: &str = "x -> x = 0'";
    pub const SL1: &str = "x' = x";
    pub const SL2: &str = "x -> y = y -> x";
}

/// Which of the varieties an algebra belongs to.
///
/// `i` requires both defining identities; `i20`, `dm` and `sl` additionally
/// require `i`; `kl` and `ba` additionally require `dm`, matching the way the
/// varieties are defined. The inclusions DM ⊆ I20, SL ⊆ I20 and BA, KL ⊆ DM
/// are theorems, not part of the computation, and hold on every algebra the
/// test suites visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VarietyMembership {
    pub i: bool,
    pub i20: bool,
    pub dm: bool,
    pub kl: bool,
    pub ba: bool,
    pub sl: bool,
}

/// Verdict of a statement check, with the lexicographically first
/// falsifying assignment when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Binding>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub var: String,
    pub value: usize,
}

impl CheckResult {
    pub(crate) fn holds_without_witness() -> CheckResult {
        CheckResult {
            verdict: Verdict::Holds,
            witness: None,
        }
    }

    pub(crate) fn fails_without_witness() -> CheckResult {
        CheckResult {
            verdict: Verdict::Fails,
            witness: None,
        }
    }

    fn fails(vars: &[String], assignment: &[usize]) -> CheckResult {
        CheckResult {
            verdict: Verdict::Fails,
            witness: Some(
                vars.iter()
                    .zip(assignment)
                    .map(|(var, &value)| Binding {
                        var: var.clone(),
                        value,
                    })
                    .collect(),
            ),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.verdict, &self.witness) {
            (Verdict::Holds, _) => write!(f, "holds"),
            (Verdict::Fails, Some(w)) => {
                write!(f, "fails at ")?;
                if w.is_empty() {
                    write!(f, "the empty assignment")?;
                }
                for (i, b) in w.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}={}", b.var, b.value)?;
                }
                Ok(())
            }
            (Verdict::Fails, None) => write!(f, "fails"),
        }
    }
}

/// Postfix program for fast repeated evaluation of one term. Variables are
/// resolved to slots in the assignment vector at compile time.
enum Op {
    Var(usize),
    Zero,
    Arrow,
}

struct Compiled {
    ops: Vec<Op>,
}

fn compile(term: &Term, vars: &[String]) -> Compiled {
    fn walk(t: &Term, vars: &[String], ops: &mut Vec<Op>) {
        match t {
            Term::Var(v) => {
                let slot = vars
                    .iter()
                    .position(|w| w == v)
                    .expect("compile called with complete variable list");
                ops.push(Op::Var(slot));
            }
            Term::Zero => ops.push(Op::Zero),
            Term::Arrow(l, r) => {
                walk(l, vars, ops);
                walk(r, vars, ops);
                ops.push(Op::Arrow);
            }
        }
    }
    let mut ops = Vec::new();
    walk(term, vars, &mut ops);
    Compiled { ops }
}

impl Compiled {
    fn eval(&self, alg: &FiniteZroupoid, assignment: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for op in &self.ops {
            match op {
                Op::Var(slot) => stack.push(assignment[*slot]),
                Op::Zero => stack.push(alg.zero),
                Op::Arrow => {
                    let r = stack.pop().expect("rhs on stack");
                    let l = stack.pop().expect("lhs on stack");
                    stack.push(alg.apply(l, r));
                }
            }
        }
        stack.pop().expect("value on stack")
    }
}

/// Lexicographic iterator over all assignments of `count` variables into
/// `0..size`; the first variable is the most significant position.
struct Assignments {
    current: Vec<usize>,
    size: usize,
    done: bool,
}

impl Assignments {
    fn new(count: usize, size: usize) -> Assignments {
        Assignments {
            current: vec![0; count],
            size,
            done: size == 0,
        }
    }
}

impl Assignments {
    fn advance(&mut self) {
        for slot in self.current.iter_mut().rev() {
            *slot += 1;
            if *slot < self.size {
                return;
            }
            *slot = 0;
        }
        self.done = true;
    }

    /// Drive `f` over every assignment in lexicographic order (first
    /// variable most significant); stops when `f` returns `false` and
    /// reports the stopping assignment.
    fn for_each(mut self, mut f: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
        while !self.done {
            if !f(&self.current) {
                return Some(self.current.clone());
            }
            self.advance();
        }
        None
    }
}
