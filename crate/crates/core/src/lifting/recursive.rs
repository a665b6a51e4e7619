use std::collections::BTreeMap;

use crate::constructions::{all_star, filled, label_range, shangguan_cells};
use crate::error::{Error, Result};
use crate::pda::Pda;
use crate::subsets::binom;

use super::nonuniform::{nonuniform_lift, Orientation};

/// Lifts `Ĩ_2` with members `{p0, p1}`, `pstar` right of `p0` and `phash`
/// left of `p1`: the block matrix `[[phash, p1], [p0, pstar]]`.
fn lift_anti_pair(p0: Pda, p1: Pda, pstar: Pda, phash: Pda) -> Result<Pda> {
    let refs = BTreeMap::from([((0, 1), pstar), ((1, 0), phash)]);
    nonuniform_lift(&[p0, p1], &refs, Orientation::Anti)
}

/// `M_{K,t}` built recursively from `M_{K-1,t-1}` and `M_{K-1,t}`.
pub fn mn_recursive(users: usize, t: usize) -> Result<Pda> {
    if users == 0 || t > users {
        return Err(Error::BadParameter(format!("no M_{{{users},{t}}}")));
    }
    if t == 0 {
        return filled(1, users, &label_range(0, users));
    }
    if t == users {
        return all_star(1, users);
    }
    let shared = binom(users - 1, t);
    let p0 = filled(shared, 1, &label_range(0, shared))?;
    let p1 = mn_recursive(users - 1, t - 1)?;
    let pstar = mn_recursive(users - 1, t)?.map_labels(|s| s + shared as u32);
    let phash = all_star(binom(users - 1, t - 1), 1)?;
    lift_anti_pair(p0, p1, pstar, phash)
}

/// `U_{n,a,b}` built recursively by lifting `Ĩ_2`.
pub fn shangguan_recursive(n: usize, a: usize, b: usize) -> Result<Pda> {
    if a + b > n {
        return Err(Error::BadParameter(format!("a + b = {} exceeds n = {n}", a + b)));
    }
    shangguan_step(n, a, b)
}

fn shangguan_step(n: usize, a: usize, b: usize) -> Result<Pda> {
    if a.min(b) == 0 || a + b == n + 1 {
        return shangguan_cells(n, a, b, &label_range(0, binom(n, a + b)));
    }
    let shared = binom(n - 1, a + b - 1);
    let p0 = shangguan_step(n - 1, a, b - 1)?;
    let p1 = shangguan_step(n - 1, a - 1, b)?;
    let pstar = shangguan_step(n - 1, a, b)?.map_labels(|s| s + shared as u32);
    let phash = all_star(binom(n - 1, a - 1), binom(n - 1, b - 1))?;
    lift_anti_pair(p0, p1, pstar, phash)
}
