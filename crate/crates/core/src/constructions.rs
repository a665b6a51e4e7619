//! Deterministic generators for the basic PDA families.
//!
//! Generators that take a `labels` slice place those labels in the order
//! the family prescribes; the slice must hold exactly as many distinct
//! labels as the family uses.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pda::{Cell, Pda};
use crate::subsets::{binom, lex_subsets, SubsetLabel};

/// `start, start+1, ..` of length `len`.
pub fn label_range(start: u32, len: usize) -> Vec<u32> {
    (start..start + len as u32).collect()
}

fn check_labels(labels: &[u32], expected: usize) -> Result<()> {
    if labels.len() != expected {
        return Err(Error::LabelCount {
            expected,
            found: labels.len(),
        });
    }
    let mut seen = BTreeSet::new();
    match labels.iter().find(|s| !seen.insert(**s)) {
        Some(&s) => Err(Error::DuplicateLabel(s)),
        None => Ok(()),
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::BadParameter(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `I_n(s)`, or the anti-diagonal `Ĩ_n(s)` when `anti` is set.
pub fn identity(n: usize, s: u32, anti: bool) -> Result<Pda> {
    positive("n", n)?;
    Ok(Pda::from_fn(n, n, |j, k| {
        let on = if anti { j + k == n - 1 } else { j == k };
        if on {
            Cell::Label(s)
        } else {
            Cell::Star
        }
    }))
}

/// `G_n`: stars on the anti-diagonal, the cells above it filled row-major,
/// and each label mirrored across the anti-diagonal.
pub fn g_array(n: usize, labels: &[u32]) -> Result<Pda> {
    positive("n", n)?;
    check_labels(labels, n * (n - 1) / 2)?;
    let upper = upper_left_index(n);
    Ok(Pda::from_fn(n, n, |j, k| match (j + k).cmp(&(n - 1)) {
        std::cmp::Ordering::Equal => Cell::Star,
        std::cmp::Ordering::Less => Cell::Label(labels[upper(j, k)]),
        std::cmp::Ordering::Greater => Cell::Label(labels[upper(n - 1 - k, n - 1 - j)]),
    }))
}

// row-major index of (j, k) among cells with j + k < n - 1
fn upper_left_index(n: usize) -> impl Fn(usize, usize) -> usize {
    move |j, k| (0..j).map(|r| n - 1 - r).sum::<usize>() + k
}

/// `H_n`: stars on the main diagonal, symmetric, the cells above the
/// diagonal filled row-major.
pub fn h_array(n: usize, labels: &[u32]) -> Result<Pda> {
    positive("n", n)?;
    check_labels(labels, n * (n - 1) / 2)?;
    let upper = |j: usize, k: usize| (0..j).map(|r| n - 1 - r).sum::<usize>() + (k - j - 1);
    Ok(Pda::from_fn(n, n, |j, k| match j.cmp(&k) {
        std::cmp::Ordering::Equal => Cell::Star,
        std::cmp::Ordering::Less => Cell::Label(labels[upper(j, k)]),
        std::cmp::Ordering::Greater => Cell::Label(labels[upper(k, j)]),
    }))
}

/// `J_{m,n}`: an `m x n` array filled row-wise with distinct labels.
pub fn filled(m: usize, n: usize, labels: &[u32]) -> Result<Pda> {
    positive("m", m)?;
    positive("n", n)?;
    check_labels(labels, m * n)?;
    Ok(Pda::from_fn(m, n, |j, k| Cell::Label(labels[j * n + k])))
}

/// `*_{m,n}`.
pub fn all_star(m: usize, n: usize) -> Result<Pda> {
    positive("m", m)?;
    positive("n", n)?;
    Ok(Pda::from_fn(m, n, |_, _| Cell::Star))
}

/// The Maddah-Ali–Niesen array `M_{K,t}`: rows are the `t`-subsets `T` in
/// lexicographic order, and cell `(T, k)` is a star when `k ∈ T`, else the
/// label indexed by the rank of `T ∪ {k}`.
pub fn mn(users: usize, t: usize, labels: &[u32]) -> Result<Pda> {
    mn_ordered(users, t, labels, false)
}

/// `M̃_{K,t}`: as [`mn`] with rows and labels in reverse lexicographic order.
pub fn mn_reverse(users: usize, t: usize, labels: &[u32]) -> Result<Pda> {
    mn_ordered(users, t, labels, true)
}

fn mn_ordered(users: usize, t: usize, labels: &[u32], reverse: bool) -> Result<Pda> {
    positive("K", users)?;
    if t > users {
        return Err(Error::BadParameter(format!("t = {t} exceeds K = {users}")));
    }
    let count = binom(users, t + 1);
    check_labels(labels, count)?;
    let mut rows = lex_subsets(users, t);
    if reverse {
        rows.reverse();
    }
    let index = |u: &SubsetLabel| {
        let r = u.lex_rank(users);
        if reverse {
            count - 1 - r
        } else {
            r
        }
    };
    Ok(Pda::from_fn(rows.len(), users, |j, k| {
        let row = &rows[j];
        if row.contains(k) {
            Cell::Star
        } else {
            Cell::Label(labels[index(&row.with(k))])
        }
    }))
}

/// `U_{n,a,b}`: rows are the `a`-subsets `ρ`, columns the `b`-subsets `γ`,
/// both lexicographic; cell `(ρ, γ)` is a star when they meet, otherwise
/// the label indexed by the rank of `ρ ∪ γ` among `(a+b)`-subsets.
pub fn shangguan_direct(n: usize, a: usize, b: usize, labels: &[u32]) -> Result<Pda> {
    if a + b > n {
        return Err(Error::BadParameter(format!("a + b = {} exceeds n = {n}", a + b)));
    }
    shangguan_cells(n, a, b, labels)
}

/// Like [`shangguan_direct`] but also accepts `a + b = n + 1`, where every
/// pair of subsets meets and the array is all stars.
pub(crate) fn shangguan_cells(n: usize, a: usize, b: usize, labels: &[u32]) -> Result<Pda> {
    if a + b > n + 1 || a > n || b > n {
        return Err(Error::BadParameter(format!(
            "no U_{{{n},{a},{b}}} for these sizes"
        )));
    }
    check_labels(labels, binom(n, a + b))?;
    let rows = lex_subsets(n, a);
    let cols = lex_subsets(n, b);
    Ok(Pda::from_fn(rows.len(), cols.len(), |j, k| {
        let (rho, gamma) = (&rows[j], &cols[k]);
        if rho.is_disjoint(gamma) {
            Cell::Label(labels[rho.union(gamma).lex_rank(n)])
        } else {
            Cell::Star
        }
    }))
}

/// The pair from the odd tiling, compatible with respect to `I_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddTilingFamily {
    pub p0: Pda,
    pub p1: Pda,
    pub pstar: Pda,
}

impl OddTilingFamily {
    pub fn members(&self) -> [&Pda; 2] {
        [&self.p0, &self.p1]
    }
}

/// Builds the two `(g, g, g-2, [4])` arrays for odd `g >= 3` from identity
/// blocks of size `n = g / 2`, plus the reference `I_g(4)`.
pub fn odd_tiling(g: usize) -> Result<OddTilingFamily> {
    if g < 3 || g.is_multiple_of(2) {
        return Err(Error::BadParameter(format!("g = {g} must be odd and at least 3")));
    }
    let n = g / 2;
    let i = |s| identity(n, s, false);
    let a = |s| identity(n, s, true);
    let col = all_star(n, 1)?;
    let gap = all_star(1, g - 2)?;
    let lbl = |s| Pda::from_fn(1, 1, |_, _| Cell::Label(s));

    // the middle block row is split 1 | g-2 | 1, so rows are glued first
    let stack = |rows: [Vec<&Pda>; 3]| -> Result<Pda> {
        let glued = rows
            .into_iter()
            .map(|r| Pda::assemble(&[r]))
            .collect::<Result<Vec<_>>>()?;
        Pda::assemble(&[vec![&glued[0]], vec![&glued[1]], vec![&glued[2]]])
    };
    let p0 = stack([
        vec![&i(0)?, &i(1)?, &col],
        vec![&lbl(2), &gap, &lbl(1)],
        vec![&col, &i(2)?, &i(3)?],
    ])?;
    let p1 = stack([
        vec![&col, &a(3)?, &a(1)?],
        vec![&lbl(3), &gap, &lbl(0)],
        vec![&a(2)?, &a(0)?, &col],
    ])?;
    Ok(OddTilingFamily {
        p0,
        p1,
        pstar: identity(g, 4, false)?,
    })
}

/// Stacks `[M̃_{g,t}(S_{(t+1)/2}) | M_{g,g-t}(S_{(t-1)/2})]` for odd `t`,
/// with label blocks `S_i` of size `C(g, 2i)` allocated contiguously from 0.
/// The result is a `g`-regular `(2g, 2^(g-1), 2^(g-2), 2^(g-1))` PDA.
pub fn yan_half_memory(g: usize) -> Result<Pda> {
    if g < 2 {
        return Err(Error::BadParameter(format!(
            "g = {g}: the half-memory array needs g >= 2"
        )));
    }
    let block_count = g.div_ceil(2) + 1;
    let mut starts = Vec::with_capacity(block_count);
    let mut next = 0u32;
    for i in 0..block_count {
        starts.push(next);
        next += binom(g, 2 * i) as u32;
    }
    let set = |i: usize| label_range(starts[i], binom(g, 2 * i));

    let mut blocks = Vec::new();
    for (i, t) in (1..=g).step_by(2).enumerate() {
        let left = mn_reverse(g, t, &set(i + 1))?;
        let right = mn(g, g - t, &set(i))?;
        blocks.push([left, right]);
    }
    let refs: Vec<Vec<&Pda>> = blocks.iter().map(|[l, r]| vec![l, r]).collect();
    Pda::assemble(&refs)
}
