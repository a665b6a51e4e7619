//! Fixed-size subsets of `[n]` in lexicographic order.

use std::fmt;

/// Strictly increasing set of elements of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetLabel(Vec<usize>);

impl SubsetLabel {
    pub fn new(mut elems: Vec<usize>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        Self(elems)
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_disjoint(&self, other: &SubsetLabel) -> bool {
        self.0.iter().all(|&x| !other.contains(x))
    }

    pub fn union(&self, other: &SubsetLabel) -> SubsetLabel {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SubsetLabel::new(v)
    }

    pub fn with(&self, x: usize) -> SubsetLabel {
        let mut v = self.0.clone();
        v.push(x);
        SubsetLabel::new(v)
    }

    /// Index of this set among all `len()`-subsets of `[n]` in
    /// lexicographic order.
    pub fn lex_rank(&self, n: usize) -> usize {
        let k = self.len();
        let mut rank = 0;
        let mut prev = 0;
        for (i, &x) in self.0.iter().enumerate() {
            for skipped in prev..x {
                rank += binom(n - skipped - 1, k - i - 1);
            }
            prev = x + 1;
        }
        rank
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn lex_subsets(n: usize, k: usize) -> Vec<SubsetLabel> {
    let mut out = Vec::with_capacity(binom(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(SubsetLabel(cur.clone()));
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
