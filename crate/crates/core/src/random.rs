//! Seeded random PDAs and generalized families for property testing.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::pda::{Cell, Pda};

/// A valid `rows x cols` PDA with `stars` stars per column. Stars are
/// placed first; each remaining cell then reuses a random label that keeps
/// the Blackburn property, or opens a new one. Labels come out canonical.
pub fn random_pda(rows: usize, cols: usize, stars: usize, rng: &mut impl Rng) -> Pda {
    assert!(rows > 0 && cols > 0 && stars <= rows);
    let mut cells = vec![None::<u32>; rows * cols];
    let mut star = vec![false; rows * cols];
    let all_rows: Vec<usize> = (0..rows).collect();
    for k in 0..cols {
        for &j in all_rows.choose_multiple(rng, stars) {
            star[j * cols + k] = true;
        }
    }

    let mut open: Vec<usize> = (0..rows * cols).filter(|&i| !star[i]).collect();
    open.shuffle(rng);
    let mut members: Vec<Vec<(usize, usize)>> = Vec::new();
    for idx in open {
        let (j, k) = (idx / cols, idx % cols);
        let fits = |group: &Vec<(usize, usize)>| {
            group
                .iter()
                .all(|&(a, b)| a != j && b != k && star[a * cols + k] && star[j * cols + b])
        };
        let candidates: Vec<usize> = (0..members.len()).filter(|&s| fits(&members[s])).collect();
        let label = match candidates.choose(rng) {
            Some(&s) if rng.gen_bool(0.8) => s,
            _ => {
                members.push(Vec::new());
                members.len() - 1
            }
        };
        members[label].push((j, k));
        cells[idx] = Some(label as u32);
    }
    let p = Pda::from_fn(rows, cols, |j, k| cells[j * cols + k].map_or(Cell::Star, Cell::Label));
    p.canonicalize()
}

/// Members and references for a non-uniform lift whose block columns all
/// reach the same star count, so only the Blackburn property is in play.
#[derive(Debug, Clone)]
pub struct RandomFamily {
    pub members: Vec<Pda>,
    pub refs: BTreeMap<(usize, usize), Pda>,
}

/// `g` members of at most `max_side x max_side`. Members draw labels from
/// one small pool (sometimes shifted apart), references get a fresh label
/// on every non-star cell.
pub fn random_family(g: usize, max_side: usize, rng: &mut impl Rng) -> Result<RandomFamily> {
    let rows: Vec<usize> = (0..g).map(|_| rng.gen_range(1..=max_side)).collect();
    let cols: Vec<usize> = (0..g).map(|_| rng.gen_range(1..=max_side)).collect();
    let zs: Vec<usize> = rows.iter().map(|&r| rng.gen_range(0..r)).collect();
    let disjoint = rng.gen_bool(0.25);
    let mut next = 0u32;
    let members: Vec<Pda> = (0..g)
        .map(|i| {
            let p = random_pda(rows[i], cols[i], zs[i], rng);
            if disjoint {
                let shifted = p.map_labels(|s| s + next);
                next += p.labels().len() as u32;
                shifted
            } else {
                p
            }
        })
        .collect();
    let mut fresh = members
        .iter()
        .flat_map(Pda::labels)
        .max()
        .map_or(0, |m| m + 1);

    // total stars per column, reachable in every block column
    let total_rows: usize = rows.iter().sum();
    let lo = (0..g).map(|j| zs[j]).max().unwrap_or(0);
    let hi = (0..g).map(|j| zs[j] + total_rows - rows[j]).min().unwrap_or(0);
    let target = if g == 1 { lo } else { rng.gen_range(lo..=hi) };

    let mut star_sets: BTreeMap<(usize, usize), Vec<Vec<bool>>> = BTreeMap::new();
    for j in 0..g {
        let others: Vec<usize> = (0..g).filter(|&i| i != j).collect();
        for i in &others {
            star_sets.insert((*i, j), vec![vec![false; cols[j]]; rows[*i]]);
        }
        for c in 0..cols[j] {
            // spread the missing stars over the reference cells of column c
            let mut slots: Vec<(usize, usize)> = others
                .iter()
                .flat_map(|&i| (0..rows[i]).map(move |r| (i, r)))
                .collect();
            slots.shuffle(rng);
            for &(i, r) in slots.iter().take(target - zs[j]) {
                star_sets.get_mut(&(i, j)).expect("inserted above")[r][c] = true;
            }
        }
    }
    let refs = star_sets
        .into_iter()
        .map(|(key, stars)| {
            let p = Pda::from_fn(stars.len(), stars[0].len(), |r, c| {
                if stars[r][c] {
                    Cell::Star
                } else {
                    fresh += 1;
                    Cell::Label(fresh - 1)
                }
            });
            (key, p)
        })
        .collect();
    Ok(RandomFamily { members, refs })
}
