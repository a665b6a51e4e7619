//! Lifting: replacing each cell of a base PDA by a whole PDA block.
//!
//! Labels of the result are handed out by one monotone allocator. Reference
//! copies come first in row-major star order, then one shared set per base
//! label in ascending label order. The [`LedgerEntry`] list records which
//! contiguous range went where.

mod calculus;
mod nonuniform;
mod recursive;
mod uniform;

use serde::Serialize;

use crate::pda::Pda;

pub use calculus::{lift_family_params, lifted_params, ChainStep, FamilyParams, ParamTuple};
pub use nonuniform::{nonuniform_lift, Orientation};
pub use recursive::{mn_recursive, shangguan_recursive};
pub use uniform::{basic_lift, corollary_odd, lift_family, uniform_lift, FamilyLift};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LabelSource {
    /// Member copies standing in for every occurrence of a base label.
    Member { base_label: u32 },
    /// The reference copy on the `star_index`-th base star, row-major.
    Ref { star_index: usize },
    /// Copies inside the lifted reference of a family lift, one per label
    /// of the original reference.
    RefLabel { ref_label: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    #[serde(flatten)]
    pub source: LabelSource,
    pub start: u32,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftOutcome {
    pub result: Pda,
    pub label_ledger: Vec<LedgerEntry>,
}

impl LiftOutcome {
    pub fn ledger_json(&self) -> String {
        serde_json::to_string_pretty(&self.label_ledger).expect("plain data serializes")
    }
}

/// Hands out contiguous label ranges and records them.
#[derive(Debug, Default)]
pub(crate) struct Allocator {
    next: u32,
    ledger: Vec<LedgerEntry>,
}

impl Allocator {
    pub(crate) fn take(&mut self, source: LabelSource, len: usize) -> u32 {
        let start = self.next;
        if len > 0 {
            self.ledger.push(LedgerEntry { source, start, len });
            self.next += len as u32;
        }
        start
    }

    pub(crate) fn into_ledger(self) -> Vec<LedgerEntry> {
        self.ledger
    }
}
