//! Brute-force reference checks, written against raw cells only so they
//! share no code with the library's indexed checks.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use pda_core::Pda;

pub type Grid = Vec<Vec<Option<u32>>>;

pub fn raw(p: &Pda) -> Grid {
    (0..p.rows())
        .map(|j| p.row(j).iter().map(|c| c.label()).collect())
        .collect()
}

pub fn fixture(name: &str) -> Pda {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", &format!("{name}.grid")]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.parse().unwrap()
}

fn cells(g: &Grid) -> Vec<(usize, usize, Option<u32>)> {
    g.iter()
        .enumerate()
        .flat_map(|(j, row)| row.iter().enumerate().map(move |(k, &c)| (j, k, c)))
        .collect()
}

/// Equal star counts per column and the Blackburn property over all pairs.
pub fn oracle_valid(g: &Grid) -> bool {
    let cols = g[0].len();
    let z = |k: usize| g.iter().filter(|r| r[k].is_none()).count();
    if (1..cols).any(|k| z(k) != z(0)) {
        return false;
    }
    oracle_blackburn(g)
}

pub fn oracle_blackburn(g: &Grid) -> bool {
    let all = cells(g);
    for (a, &(j1, k1, c1)) in all.iter().enumerate() {
        for &(j2, k2, c2) in &all[a + 1..] {
            if c1.is_some() && c1 == c2 {
                if j1 == j2 || k1 == k2 {
                    return false;
                }
                if g[j1][k2].is_some() || g[j2][k1].is_some() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn oracle_right(p0: &Grid, p1: &Grid, pstar: &Grid) -> bool {
    for &(i0, _, a) in &cells(p0) {
        for &(_, j1, b) in &cells(p1) {
            if a.is_some() && a == b && pstar[i0][j1].is_some() {
                return false;
            }
        }
    }
    true
}

pub fn oracle_two_sided(p0: &Grid, p1: &Grid, pstar: &Grid) -> bool {
    for &(i0, j0, a) in &cells(p0) {
        for &(i1, j1, b) in &cells(p1) {
            if a.is_some() && a == b && (pstar[i0][j1].is_some() || pstar[i1][j0].is_some()) {
                return false;
            }
        }
    }
    true
}

pub fn oracle_generalized(members: &[Pda], refs: &BTreeMap<(usize, usize), Pda>) -> bool {
    refs.iter()
        .all(|(&(i, j), r)| oracle_right(&raw(&members[i]), &raw(&members[j]), &raw(r)))
}
