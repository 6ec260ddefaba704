//! Data-driven catalog of laws, executable against any set of finite models.
//!
//! The catalog lives in `fixtures/lemma_catalog.txt` as parseable text (one
//! statement per entry) so it can be reviewed line by line and so loading it
//! exercises the parser. Each entry carries a scope; a check only runs on
//! algebras in its scope class.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{CheckResult, FiniteZroupoid};
use crate::order::is_chain;
use crate::term::{parse_statement, Statement};

const CATALOG_TEXT: &str = include_str!("../fixtures/lemma_catalog.txt");

/// The four equivalent involutivity conditions; on any algebra satisfying
/// the defining identities they hold or fail together.
pub const EQUIVALENCE_CONDITIONS: [&str; 4] =
    ["0' -> x = x", "x'' = x", "(x -> x')' = x", "x' -> x = x"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    I,
    I20,
    I20Chain,
}

impl Scope {
    fn parse(s: &str) -> Option<Scope> {
        match s {
            "I" => Some(Scope::I),
            "I20" => Some(Scope::I20),
            "I20-chain" => Some(Scope::I20Chain),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckKind {
    Single(Statement),
    /// Statements asserted to hold or fail together on each algebra.
    EquivalenceGroup(Vec<Statement>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCheck {
    pub id: String,
    pub scope: Scope,
    pub kind: CheckKind,
    /// Human-readable description of the law.
    pub source: String,
}

impl NamedCheck {
    pub fn statements(&self) -> Vec<&Statement> {
        match &self.kind {
            CheckKind::Single(st) => vec![st],
            CheckKind::EquivalenceGroup(sts) => sts.iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: expected `id | scope | statement | note`")]
    BadShape { line: usize },
    #[error("line {line}: unknown scope {found:?}")]
    BadScope { line: usize, found: String },
    #[error("line {line}: {error}")]
    BadStatement {
        line: usize,
        error: crate::term::SyntaxError,
    },
    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },
}

/// Parse catalog text in the fixture format.
pub fn parse_catalog(text: &str) -> Result<Vec<NamedCheck>, CatalogError> {
    let mut checks: Vec<NamedCheck> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('|').map(str::trim).collect();
        let [id, scope, statement, note] = fields.as_slice() else {
            return Err(CatalogError::BadShape { line });
        };
        let scope = Scope::parse(scope).ok_or_else(|| CatalogError::BadScope {
            line,
            found: scope.to_string(),
        })?;
        let parse = |text: &str| {
            parse_statement(text).map_err(|error| CatalogError::BadStatement { line, error })
        };
        let kind = if statement.contains(';') {
            let group = statement
                .split(';')
                .map(|part| parse(part.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            CheckKind::EquivalenceGroup(group)
        } else {
            CheckKind::Single(parse(statement)?)
        };
        if checks.iter().any(|c| c.id == *id) {
            return Err(CatalogError::DuplicateId {
                line,
                id: id.to_string(),
            });
        }
        checks.push(NamedCheck {
            id: id.to_string(),
            scope,
            kind,
            source: note.to_string(),
        });
    }
    Ok(checks)
}

/// The built-in catalog shipped with the crate.
pub fn builtin_catalog() -> Vec<NamedCheck> {
    parse_catalog(CATALOG_TEXT).expect("bundled catalog parses")
}

/// An algebra with a display name, for report readability.
#[derive(Debug, Clone)]
pub struct UniverseAlgebra {
    pub name: String,
    pub algebra: FiniteZroupoid,
}

impl UniverseAlgebra {
    pub fn new(name: impl Into<String>, algebra: FiniteZroupoid) -> UniverseAlgebra {
        UniverseAlgebra {
            name: name.into(),
            algebra,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub algebra: String,
    pub check_id: String,
    #[serde(flatten)]
    pub result: CheckResult,
    /// Extra context, e.g. the verdict split of a disagreeing group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub algebras: usize,
    pub applied: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| !e.result.holds())
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Run every applicable check against every algebra. Entries come out in
/// (algebra, check) order regardless of how the work is scheduled.
pub fn run_catalog(algebras: &[UniverseAlgebra], checks: &[NamedCheck]) -> SuiteReport {
    let per_algebra: Vec<Vec<SuiteEntry>> = algebras
        .par_iter()
        .map(|ua| {
            let memberships = ua.algebra.variety_memberships();
            let chain = memberships.i20 && is_chain(&ua.algebra);
            let mut entries = Vec::new();
            for check in checks {
                let applicable = match check.scope {
                    Scope::I => memberships.i,
                    Scope::I20 => memberships.i20,
                    Scope::I20Chain => chain,
                };
                if !applicable {
                    continue;
                }
                entries.push(run_one(ua, check));
            }
            entries
        })
        .collect();

    let entries: Vec<SuiteEntry> = per_algebra.into_iter().flatten().collect();
    let failed = entries.iter().filter(|e| !e.result.holds()).count();
    let summary = SuiteSummary {
        algebras: algebras.len(),
        applied: entries.len(),
        passed: entries.len() - failed,
        failed,
    };
    SuiteReport { entries, summary }
}

fn run_one(ua: &UniverseAlgebra, check: &NamedCheck) -> SuiteEntry {
    match &check.kind {
        CheckKind::Single(st) => SuiteEntry {
            algebra: ua.name.clone(),
            check_id: check.id.clone(),
            result: ua.algebra.check_statement(st),
            note: None,
        },
        CheckKind::EquivalenceGroup(group) => {
            let verdicts: Vec<bool> = group
                .iter()
                .map(|st| ua.algebra.check_statement(st).holds())
                .collect();
            let agree = verdicts.iter().all(|&v| v) || verdicts.iter().all(|&v| !v);
            // Agreement is the assertion; a split is the failure.
            let result = if agree {
                CheckResult::holds_without_witness()
            } else {
                CheckResult::fails_without_witness()
            };
            SuiteEntry {
                algebra: ua.name.clone(),
                check_id: check.id.clone(),
                result,
                note: (!agree).then(|| format!("verdict split: {verdicts:?}")),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceEntry {
    pub algebra: String,
    /// Verdicts of the four conditions, in catalog order.
    pub verdicts: [bool; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("equivalence violated on {algebra}: verdicts {verdicts:?}")]
pub struct EquivalenceViolation {
    pub algebra: String,
    pub verdicts: [bool; 4],
}

/// Evaluate the four involutivity conditions on each algebra and require an
/// all-or-none verdict. Callers are expected to pass algebras satisfying the
/// defining identities.
pub fn equivalence_check(
    algebras: &[UniverseAlgebra],
) -> Result<Vec<EquivalenceEntry>, EquivalenceViolation> {
    let conditions: Vec<Statement> = EQUIVALENCE_CONDITIONS
        .iter()
        .map(|s| parse_statement(s).expect("builtin condition"))
        .collect();
    let mut entries = Vec::new();
    for ua in algebras {
        let mut verdicts = [false; 4];
        for (slot, st) in verdicts.iter_mut().zip(&conditions) {
            *slot = ua.algebra.check_statement(st).holds();
        }
        if verdicts.iter().all(|&v| v) || verdicts.iter().all(|&v| !v) {
            entries.push(EquivalenceEntry {
                algebra: ua.name.clone(),
                verdicts,
            });
        } else {
            return Err(EquivalenceViolation {
                algebra: ua.name.clone(),
                verdicts,
            });
        }
    }
    Ok(entries)
}

/// All constructed chains with at most `max_size` elements, named by shape.
pub fn chain_universe(max_size: usize) -> Vec<UniverseAlgebra> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        for neg in 0..size {
            let pos = size - 1 - neg;
            out.push(UniverseAlgebra::new(
                format!("chain({neg},{pos})"),
                crate::chain::build_chain(neg, pos),
            ));
        }
    }
    out
}

/// Every involutive algebra of size up to `max_size`, up to isomorphism,
/// from the table search.
pub fn i20_universe(max_size: usize) -> Result<Vec<UniverseAlgebra>, crate::enumeration::EnumerationError> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        for (i, alg) in crate::enumeration::enumerate_i20(size)?.into_iter().enumerate() {
            out.push(UniverseAlgebra::new(format!("i20({size})#{i}"), alg));
        }
    }
    Ok(out)
}
