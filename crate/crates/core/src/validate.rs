//! Exact checks of the three PDA conditions.
//!
//! - C1: every column holds the same number of stars.
//! - C2: every label of the declared label set occurs.
//! - C3: two cells with the same label force stars at both mirrored cells.

use std::fmt;

use serde::Serialize;

use crate::pda::{Cell, Pda};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "lowercase")]
pub enum Violation {
    /// Column `column` has `found` stars while column 0 has `expected`.
    C1 {
        column: usize,
        expected: usize,
        found: usize,
    },
    /// Label `label` of the declared set `0..m` never occurs.
    C2 { label: u32 },
    /// `first` and `second` share `label`, but `mirror` is not a star.
    C3 {
        label: u32,
        first: (usize, usize),
        second: (usize, usize),
        mirror: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::C1 {
                column,
                expected,
                found,
            } => write!(f, "C1 column {column} has {found} stars, expected {expected}"),
            Violation::C2 { label } => write!(f, "C2 label {label} does not occur"),
            Violation::C3 {
                label,
                first,
                second,
                mirror,
            } => write!(
                f,
                "C3 label {label} at ({},{}) and ({},{}) but mirror ({},{}) is not a star",
                first.0, first.1, second.0, second.1, mirror.0, mirror.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub c1_ok: bool,
    pub c2_ok: bool,
    pub c3_ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.c1_ok && self.c2_ok && self.c3_ok
    }

    pub fn c3_witness(&self) -> Option<&Violation> {
        self.violations
            .iter()
            .find(|v| matches!(v, Violation::C3 { .. }))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

pub fn validate(p: &Pda) -> ValidationReport {
    validate_with_label_count(p, None)
}

/// Validates `p`; with `Some(m)` the label set is taken to be `0..m` and
/// any absent label is a C2 violation.
pub fn validate_with_label_count(p: &Pda, declared: Option<usize>) -> ValidationReport {
    let mut violations = Vec::new();

    let expected = p.stars_in_col(0);
    let c1 = (1..p.cols())
        .map(|k| (k, p.stars_in_col(k)))
        .find(|&(_, z)| z != expected);
    if let Some((column, found)) = c1 {
        violations.push(Violation::C1 {
            column,
            expected,
            found,
        });
    }

    let mut c2_ok = true;
    if let Some(m) = declared {
        let labels = p.labels();
        if let Some(label) = (0..m as u32).find(|s| !labels.contains(s)) {
            c2_ok = false;
            violations.push(Violation::C2 { label });
        }
    }

    let c3 = first_blackburn_violation(p);
    let c3_ok = c3.is_none();
    violations.extend(c3);

    ValidationReport {
        c1_ok: c1.is_none(),
        c2_ok,
        c3_ok,
        violations,
    }
}

/// Returns the violating pair that comes first in row-major pair order.
///
/// Cells are grouped by label, so only pairs that actually share a label
/// are inspected.
pub fn first_blackburn_violation(p: &Pda) -> Option<Violation> {
    let flat = |(j, k): (usize, usize)| j * p.cols() + k;
    let mut best: Option<((usize, usize), Violation)> = None;
    for (label, cells) in p.label_positions() {
        'group: for (a, &first) in cells.iter().enumerate() {
            if let Some((key, _)) = &best {
                if flat(first) > key.0 {
                    break;
                }
            }
            for &second in &cells[a + 1..] {
                if let Some(mirror) = blackburn_mirror(p, first, second) {
                    let key = (flat(first), flat(second));
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((
                            key,
                            Violation::C3 {
                                label,
                                first,
                                second,
                                mirror,
                            },
                        ));
                    }
                    break 'group;
                }
            }
        }
    }
    best.map(|(_, v)| v)
}

/// The first mirrored cell of the pair that is not a star, if any.
pub(crate) fn blackburn_mirror(
    p: &Pda,
    (j1, k1): (usize, usize),
    (j2, k2): (usize, usize),
) -> Option<(usize, usize)> {
    [(j1, k2), (j2, k1)]
        .into_iter()
        .find(|&(j, k)| p.get(j, k) != Cell::Star)
}
