use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::compat::GenFamily;
use crate::error::{Error, Result};
use crate::pda::Pda;
use crate::validate::{validate, Violation};

/// Which identity PDA is being lifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `I_g`: member `i` on block `(i, i)`.
    Main,
    /// `Ĩ_g`: member `i` on block `(g-1-i, i)`.
    Anti,
}

impl Orientation {
    fn member_of_row(self, g: usize, block_row: usize) -> usize {
        match self {
            Orientation::Main => block_row,
            Orientation::Anti => g - 1 - block_row,
        }
    }
}

/// Lifts `I_g` (or `Ĩ_g`): member `i` replaces the label on its block row,
/// and the reference `(i, j)` fills column block `j` of that row. The
/// assembled array is a PDA exactly when the members form a generalized
/// compatible family; a failure names the pair whose reference is at fault.
pub fn nonuniform_lift(
    members: &[Pda],
    refs: &BTreeMap<(usize, usize), Pda>,
    orientation: Orientation,
) -> Result<Pda> {
    let fam = GenFamily::new(members.to_vec(), refs.clone())?;
    let g = fam.len();
    let block = |rb: usize, cb: usize| {
        let i = orientation.member_of_row(g, rb);
        if i == cb {
            &fam.members()[i]
        } else {
            fam.reference(i, cb)
        }
    };

    let mut expected = None;
    for (cb, member) in members.iter().enumerate() {
        for c in 0..member.cols() {
            let found: usize = (0..g).map(|rb| block(rb, cb).stars_in_col(c)).sum();
            let want = *expected.get_or_insert(found);
            if found != want {
                return Err(Error::ZMismatch {
                    block: cb,
                    expected: want,
                    found,
                });
            }
        }
    }

    let grid: Vec<Vec<&Pda>> = (0..g)
        .map(|rb| (0..g).map(|cb| block(rb, cb)).collect())
        .collect();
    let lifted = Pda::assemble(&grid)?;
    let report = validate(&lifted);
    if report.is_valid() {
        return Ok(lifted);
    }
    match report.c3_witness() {
        Some(&Violation::C3 { mirror, .. }) => {
            let rb = block_index((0..g).map(|rb| grid[rb][0].rows()), mirror.0);
            let cb = block_index((0..g).map(|cb| grid[0][cb].cols()), mirror.1);
            Err(Error::LiftValidation {
                pair: (orientation.member_of_row(g, rb), cb),
                report: Box::new(report),
            })
        }
        _ => Err(Error::InvalidPda(Box::new(report))),
    }
}

fn block_index(sizes: impl Iterator<Item = usize>, pos: usize) -> usize {
    let mut end = 0;
    for (i, size) in sizes.enumerate() {
        end += size;
        if pos < end {
            return i;
        }
    }
    unreachable!("position inside the assembled array")
}
