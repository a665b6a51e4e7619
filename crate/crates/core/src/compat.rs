//! Blackburn-compatibility between PDAs with respect to reference PDAs.
//!
//! Every check pairs up only cells that share a label: the label positions
//! of both arrays are indexed first, then each common label's cell pairs
//! are tested against the reference. Witnesses are ordered by label, then
//! row-major by the cell in the first array, then in the second.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pda::{Cell, Pda};

/// Equal labels in two arrays whose mirrored reference cell is not a star.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: u32,
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub mirror: (usize, usize),
    /// Member pair, set by family checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({},{}) ({},{}) mirror=({},{})",
            self.label,
            self.first.0,
            self.first.1,
            self.second.0,
            self.second.1,
            self.mirror.0,
            self.mirror.1
        )?;
        if let Some((i, j)) = self.pair {
            write!(f, " pair=({i},{j})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub ok: bool,
    pub witnesses: Vec<Witness>,
}

impl CompatReport {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        Self {
            ok: witnesses.is_empty(),
            witnesses,
        }
    }
}

fn shape(p: &Pda) -> (usize, usize) {
    (p.rows(), p.cols())
}

fn mismatch(what: &str, got: (usize, usize), want: (usize, usize)) -> Error {
    Error::SizeMismatch(format!(
        "{what} is {}x{}, expected {}x{}",
        got.0, got.1, want.0, want.1
    ))
}

/// Visits every `(label, cell in p0, cell in p1)` with equal labels.
fn for_each_match(p0: &Pda, p1: &Pda, mut visit: impl FnMut(u32, (usize, usize), (usize, usize))) {
    let right = p1.label_positions();
    for (label, cells0) in p0.label_positions() {
        let Some(cells1) = right.get(&label) else {
            continue;
        };
        for &c0 in &cells0 {
            for &c1 in cells1 {
                visit(label, c0, c1);
            }
        }
    }
}

/// `p0` (m0 x n0) and `p1` (m1 x n1) are right-compatible w.r.t. the
/// m0 x n1 array `pstar` when every shared label at `(i0,j0)`, `(i1,j1)`
/// has a star at `pstar(i0, j1)`.
pub fn is_right_compatible(p0: &Pda, p1: &Pda, pstar: &Pda) -> Result<CompatReport> {
    let want = (p0.rows(), p1.cols());
    if shape(pstar) != want {
        return Err(mismatch("right reference", shape(pstar), want));
    }
    let mut witnesses = Vec::new();
    for_each_match(p0, p1, |label, (i0, j0), (i1, j1)| {
        if !pstar.is_star(i0, j1) {
            witnesses.push(Witness {
                label,
                first: (i0, j0),
                second: (i1, j1),
                mirror: (i0, j1),
                pair: None,
            });
        }
    });
    Ok(CompatReport::from_witnesses(witnesses))
}

/// Left-compatibility w.r.t. the m1 x n0 array `phash`, which is
/// right-compatibility of `(p1, p0)`.
pub fn is_left_compatible(p0: &Pda, p1: &Pda, phash: &Pda) -> Result<CompatReport> {
    let mut report = is_right_compatible(p1, p0, phash)?;
    for w in &mut report.witnesses {
        std::mem::swap(&mut w.first, &mut w.second);
    }
    report.witnesses.sort_by_key(|w| (w.label, w.first, w.second));
    Ok(report)
}

/// Two-sided compatibility of equal-shape arrays: both mirrored cells
/// `pstar(i0, j1)` and `pstar(i1, j0)` must be stars.
pub fn is_blackburn_compatible(p0: &Pda, p1: &Pda, pstar: &Pda) -> Result<CompatReport> {
    let want = shape(p0);
    if shape(p1) != want {
        return Err(mismatch("second array", shape(p1), want));
    }
    if shape(pstar) != want {
        return Err(mismatch("reference", shape(pstar), want));
    }
    let mut witnesses = Vec::new();
    for_each_match(p0, p1, |label, (i0, j0), (i1, j1)| {
        for mirror in [(i0, j1), (i1, j0)] {
            if !pstar.is_star(mirror.0, mirror.1) {
                witnesses.push(Witness {
                    label,
                    first: (i0, j0),
                    second: (i1, j1),
                    mirror,
                    pair: None,
                });
            }
        }
    });
    Ok(CompatReport::from_witnesses(witnesses))
}

/// Pairwise two-sided compatibility of a whole family.
pub fn is_family_compatible(members: &[&Pda], pstar: &Pda) -> Result<CompatReport> {
    let mut witnesses = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate().skip(i + 1) {
            let r = is_blackburn_compatible(a, b, pstar)?;
            witnesses.extend(r.witnesses.into_iter().map(|w| Witness {
                pair: Some((i, j)),
                ..w
            }));
        }
    }
    Ok(CompatReport::from_witnesses(witnesses))
}

/// Members `P_i` with a reference `P_*^{(i,j)}` for every ordered pair
/// `i != j`, shaped `rows(P_i) x cols(P_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFamily {
    members: Vec<Pda>,
    refs: BTreeMap<(usize, usize), Pda>,
}

impl GenFamily {
    /// Checks that every reference exists, has the right shape, and uses
    /// labels disjoint from other references and from all members.
    pub fn new(members: Vec<Pda>, refs: BTreeMap<(usize, usize), Pda>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::BadParameter("family has no members".into()));
        }
        let g = members.len();
        for i in 0..g {
            for j in 0..g {
                if i == j {
                    continue;
                }
                let r = refs.get(&(i, j)).ok_or(Error::MissingRef(i, j))?;
                let want = (members[i].rows(), members[j].cols());
                if shape(r) != want {
                    return Err(mismatch(&format!("reference ({i},{j})"), shape(r), want));
                }
            }
        }
        if let Some(&(i, j)) = refs.keys().find(|&&(i, j)| i == j || i >= g || j >= g) {
            return Err(Error::BadParameter(format!("unexpected reference ({i},{j})")));
        }
        let mut used: BTreeSet<u32> = members.iter().flat_map(Pda::labels).collect();
        for r in refs.values() {
            for s in r.labels() {
                if !used.insert(s) {
                    return Err(Error::LabelOverlap(s));
                }
            }
        }
        Ok(Self { members, refs })
    }

    pub fn members(&self) -> &[Pda] {
        &self.members
    }

    pub fn reference(&self, i: usize, j: usize) -> &Pda {
        &self.refs[&(i, j)]
    }

    pub fn refs(&self) -> &BTreeMap<(usize, usize), Pda> {
        &self.refs
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Every ordered pair `(i, j)` is right-compatible w.r.t. `P_*^{(i,j)}`
/// (which also makes `(j, i)` left-compatible w.r.t. it).
pub fn is_generalized_family(fam: &GenFamily) -> CompatReport {
    let mut witnesses = Vec::new();
    for (&(i, j), r) in &fam.refs {
        let rep = is_right_compatible(&fam.members[i], &fam.members[j], r)
            .expect("shapes checked when the family was built");
        witnesses.extend(rep.witnesses.into_iter().map(|w| Witness {
            pair: Some((i, j)),
            ..w
        }));
    }
    CompatReport::from_witnesses(witnesses)
}

/// The lifting condition for members that share their star positions: the
/// reference must hold a star wherever the members do.
pub fn check_condition_cstar(members: &[&Pda], pstar: &Pda) -> Result<CompatReport> {
    let Some(first) = members.first() else {
        return Ok(CompatReport::from_witnesses(Vec::new()));
    };
    let want = shape(first);
    if shape(pstar) != want {
        return Err(mismatch("reference", shape(pstar), want));
    }
    let stars = first.star_positions();
    for (i, m) in members.iter().enumerate().skip(1) {
        if shape(m) != want {
            return Err(mismatch(&format!("member {i}"), shape(m), want));
        }
        if m.star_positions() != stars {
            return Err(Error::StarPositionMismatch(0, i));
        }
    }
    let witnesses = stars
        .into_iter()
        .filter_map(|(r, c)| match pstar.get(r, c) {
            Cell::Star => None,
            Cell::Label(label) => Some(Witness {
                label,
                first: (r, c),
                second: (r, c),
                mirror: (r, c),
                pair: None,
            }),
        })
        .collect();
    Ok(CompatReport::from_witnesses(witnesses))
}
