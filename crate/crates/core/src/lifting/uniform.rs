use std::collections::{BTreeMap, BTreeSet};

use crate::compat::{check_condition_cstar, is_blackburn_compatible};
use crate::constructions::{all_star, h_array, label_range, odd_tiling};
use crate::error::{Error, Result};
use crate::pda::{Cell, Pda};

use super::{Allocator, LabelSource, LedgerEntry, LiftOutcome};

/// Where each base cell's block takes its labels from. Base label `s`
/// gets the union of the members its occurrences use.
struct Layout {
    member_sets: BTreeMap<u32, (Vec<u32>, u32)>,
    ref_start: Vec<u32>,
}

fn sorted_union<'a>(arrays: impl IntoIterator<Item = &'a Pda>) -> Vec<u32> {
    let set: BTreeSet<u32> = arrays.into_iter().flat_map(Pda::labels).collect();
    set.into_iter().collect()
}

fn allocate(base: &Pda, members: &[&Pda], ref_len: usize, alloc: &mut Allocator) -> Layout {
    let ref_start = (0..base.star_positions().len())
        .map(|r| alloc.take(LabelSource::Ref { star_index: r }, ref_len))
        .collect();
    let member_sets = base
        .label_positions()
        .into_iter()
        .map(|(s, cells)| {
            let universe = sorted_union(members[..cells.len()].iter().copied());
            let start = alloc.take(LabelSource::Member { base_label: s }, universe.len());
            (s, (universe, start))
        })
        .collect();
    Layout {
        member_sets,
        ref_start,
    }
}

fn rename(p: &Pda, universe: &[u32], start: u32) -> Pda {
    p.map_labels(|x| start + universe.binary_search(&x).expect("label in universe") as u32)
}

/// Occurrence `t` (row-major) of base label `s` becomes `members[t]` on the
/// set of `s`; star `r` becomes `pstar` on its own set.
fn substitute(base: &Pda, members: &[&Pda], pstar: &Pda, layout: &Layout) -> Result<Pda> {
    let ref_labels = sorted_union([pstar]);
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    let mut star = 0;
    let mut blocks: Vec<Vec<Pda>> = vec![Vec::with_capacity(base.cols()); base.rows()];
    for (j, _, cell) in base.iter() {
        let block = match cell {
            Cell::Star => {
                star += 1;
                rename(pstar, &ref_labels, layout.ref_start[star - 1])
            }
            Cell::Label(s) => {
                let t = seen.entry(s).or_default();
                *t += 1;
                let (universe, start) = &layout.member_sets[&s];
                rename(members[*t - 1], universe, *start)
            }
        };
        blocks[j].push(block);
    }
    let refs: Vec<Vec<&Pda>> = blocks.iter().map(|r| r.iter().collect()).collect();
    Pda::assemble(&refs)
}

fn check_shapes(members: &[&Pda], pstar: &Pda) -> Result<()> {
    let Some(first) = members.first() else {
        return Err(Error::BadParameter("no members given".into()));
    };
    let want = (first.rows(), first.cols());
    for (i, p) in members.iter().enumerate().chain([(members.len(), &pstar)]) {
        if (p.rows(), p.cols()) != want {
            let what = if i == members.len() {
                "reference".to_string()
            } else {
                format!("member {i}")
            };
            return Err(Error::SizeMismatch(format!(
                "{what} is {}x{}, expected {}x{}",
                p.rows(),
                p.cols(),
                want.0,
                want.1
            )));
        }
    }
    Ok(())
}

fn check_occurrences(base: &Pda, available: usize) -> Result<usize> {
    let mut needed = 0;
    for (label, cells) in base.label_positions() {
        if cells.len() > available {
            return Err(Error::TooFewMembers {
                label,
                needed: cells.len(),
                available,
            });
        }
        needed = needed.max(cells.len());
    }
    Ok(needed)
}

fn check_pairwise(members: &[&Pda], pstar: &Pda) -> Result<()> {
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate().skip(i + 1) {
            let report = is_blackburn_compatible(a, b, pstar)?;
            if let Some(witness) = report.witnesses.into_iter().next() {
                return Err(Error::CompatibilityFailure {
                    pair: (i, j),
                    witness,
                });
            }
        }
    }
    Ok(())
}

/// Uniform lifting of `base` by a Blackburn-compatible member family.
pub fn uniform_lift(base: &Pda, members: &[&Pda], pstar: &Pda) -> Result<LiftOutcome> {
    check_shapes(members, pstar)?;
    let used = check_occurrences(base, members.len())?;
    check_pairwise(&members[..used], pstar)?;
    lift_unchecked(base, members, pstar)
}

fn lift_unchecked(base: &Pda, members: &[&Pda], pstar: &Pda) -> Result<LiftOutcome> {
    let mut alloc = Allocator::default();
    let layout = allocate(base, members, pstar.labels().len(), &mut alloc);
    Ok(LiftOutcome {
        result: substitute(base, members, pstar, &layout)?,
        label_ledger: alloc.into_ledger(),
    })
}

/// Every occurrence of a base label becomes one shared copy of `p`, every
/// star an all-star block.
pub fn basic_lift(base: &Pda, p: &Pda) -> Result<LiftOutcome> {
    let star = all_star(p.rows(), p.cols())?;
    let copies = check_occurrences(base, usize::MAX)?.max(1);
    let members = vec![p; copies];
    lift_unchecked(base, &members, &star)
}

/// A lifted compatible family together with its lifted reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyLift {
    pub members: Vec<Pda>,
    pub pstar: Pda,
    pub label_ledger: Vec<LedgerEntry>,
}

/// Lifts every member of a compatible family `{P_i}` (sharing one star
/// pattern) by the family `{Q_i}` with one coordinated label allocation,
/// and lifts `pstar` by `q_members[0]` alone.
pub fn lift_family(
    members: &[&Pda],
    pstar: &Pda,
    q_members: &[&Pda],
    qstar: &Pda,
) -> Result<FamilyLift> {
    check_shapes(members, pstar)?;
    check_shapes(q_members, qstar)?;
    let report = check_condition_cstar(members, pstar)?;
    if let Some(w) = report.witnesses.into_iter().next() {
        return Err(Error::CstarViolation(w));
    }
    check_pairwise(members, pstar)?;
    let mut used = 0;
    for p in members {
        used = used.max(check_occurrences(p, q_members.len())?);
    }
    check_pairwise(&q_members[..used], qstar)?;

    // all members share their stars, so one layout serves every member;
    // base label `s` gets the Q labels of its busiest occurrence count
    let mut occurrences: BTreeMap<u32, usize> = BTreeMap::new();
    for p in members {
        for (s, cells) in p.label_positions() {
            let n = occurrences.entry(s).or_default();
            *n = (*n).max(cells.len());
        }
    }
    let mut alloc = Allocator::default();
    let ref_start = (0..members[0].star_positions().len())
        .map(|r| alloc.take(LabelSource::Ref { star_index: r }, qstar.labels().len()))
        .collect();
    let member_sets = occurrences
        .into_iter()
        .map(|(s, n)| {
            let universe = sorted_union(q_members[..n].iter().copied());
            let start = alloc.take(LabelSource::Member { base_label: s }, universe.len());
            (s, (universe, start))
        })
        .collect();
    let layout = Layout {
        member_sets,
        ref_start,
    };

    let lifted = members
        .iter()
        .map(|p| substitute(p, q_members, qstar, &layout))
        .collect::<Result<Vec<_>>>()?;

    let q0 = q_members[0];
    let q0_labels = sorted_union([q0]);
    let ref_layout = Layout {
        member_sets: pstar
            .labels()
            .into_iter()
            .map(|s| {
                let start = alloc.take(LabelSource::RefLabel { ref_label: s }, q0_labels.len());
                (s, (q0_labels.clone(), start))
            })
            .collect(),
        ref_start: vec![0; pstar.star_positions().len()],
    };
    let copies = check_occurrences(pstar, usize::MAX)?.max(1);
    let star = all_star(q0.rows(), q0.cols())?;
    let rstar = substitute(pstar, &vec![q0; copies], &star, &ref_layout)?;

    let refs: Vec<&Pda> = lifted.iter().collect();
    check_pairwise(&refs, &rstar)?;
    Ok(FamilyLift {
        members: lifted,
        pstar: rstar,
        label_ledger: alloc.into_ledger(),
    })
}

/// `H_n` lifted by the odd tiling pair for odd `g`: a `g`-regular
/// `(gn, gn, n(g-2)+1, n(2n-1))` PDA.
pub fn corollary_odd(g: usize, n: usize) -> Result<Pda> {
    let fam = odd_tiling(g)?;
    let base = h_array(n, &label_range(0, n * n.saturating_sub(1) / 2))?;
    Ok(uniform_lift(&base, &fam.members(), &fam.pstar)?.result)
}
