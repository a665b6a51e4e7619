//! `pda gen`: named constructions.

use pda_core::constructions::{
    all_star, filled, g_array, h_array, identity, label_range, mn, mn_reverse, odd_tiling, shangguan_direct,
    yan_half_memory,
};
use pda_core::lifting::{corollary_odd, mn_recursive, shangguan_recursive};
use pda_core::subsets::binom;
use pda_core::{Error, Pda, Result};

pub const NAMES: &[(&str, &str)] = &[
    ("identity", "n s [anti]"),
    ("g", "n"),
    ("h", "n"),
    ("j", "m n"),
    ("star", "m n"),
    ("mn", "K t"),
    ("mnrev", "K t"),
    ("shangguan", "n a b"),
    ("odd-tiling", "g"),
    ("yan-half", "g"),
    ("mn-recursive", "K t"),
    ("shangguan-recursive", "n a b"),
    ("corollary-odd", "g n"),
];

fn usage(name: &str) -> Error {
    let args = NAMES.iter().find(|(n, _)| *n == name).map_or("", |(_, a)| a);
    Error::BadParameter(format!("usage: gen {name} {args}"))
}

fn numbers<const N: usize>(name: &str, args: &[String]) -> Result<[usize; N]> {
    if args.len() != N {
        return Err(usage(name));
    }
    let mut out = [0; N];
    for (slot, a) in out.iter_mut().zip(args) {
        *slot = a.parse().map_err(|_| usage(name))?;
    }
    Ok(out)
}

/// The named arrays, labels starting at `offset`. Only `odd-tiling`
/// yields more than one.
pub fn generate(name: &str, args: &[String], offset: u32) -> Result<Vec<(&'static str, Pda)>> {
    let labels = |n: usize| label_range(offset, n);
    let one = |p: Pda| Ok(vec![("pda", p)]);
    match name {
        "identity" => {
            let anti = args.get(2).map(String::as_str) == Some("anti");
            let [n, s] = numbers(name, &args[..args.len().min(2)])?;
            if args.len() == 3 && !anti {
                return Err(usage(name));
            }
            one(identity(n, offset + s as u32, anti)?)
        }
        "g" => {
            let [n] = numbers(name, args)?;
            one(g_array(n, &labels(n.saturating_sub(1)))?)
        }
        "h" => {
            let [n] = numbers(name, args)?;
            one(h_array(n, &labels(n * n.saturating_sub(1) / 2))?)
        }
        "j" => {
            let [m, n] = numbers(name, args)?;
            one(filled(m, n, &labels(m * n))?)
        }
        "star" => {
            let [m, n] = numbers(name, args)?;
            one(all_star(m, n)?)
        }
        "mn" | "mnrev" => {
            let [k, t] = numbers(name, args)?;
            let s = labels(binom(k, t + 1));
            one(if name == "mn" { mn(k, t, &s)? } else { mn_reverse(k, t, &s)? })
        }
        "shangguan" => {
            let [n, a, b] = numbers(name, args)?;
            one(shangguan_direct(n, a, b, &labels(binom(n, a + b)))?)
        }
        "odd-tiling" => {
            let [g] = numbers(name, args)?;
            let fam = odd_tiling(g)?;
            let shift = |p: Pda| p.map_labels(|s| s + offset);
            Ok(vec![("p0", shift(fam.p0)), ("p1", shift(fam.p1)), ("pstar", shift(fam.pstar))])
        }
        "yan-half" => {
            let [g] = numbers(name, args)?;
            one(yan_half_memory(g)?.map_labels(|s| s + offset))
        }
        "mn-recursive" => {
            let [k, t] = numbers(name, args)?;
            one(mn_recursive(k, t)?.map_labels(|s| s + offset))
        }
        "shangguan-recursive" => {
            let [n, a, b] = numbers(name, args)?;
            one(shangguan_recursive(n, a, b)?.map_labels(|s| s + offset))
        }
        "corollary-odd" => {
            let [g, n] = numbers(name, args)?;
            one(corollary_odd(g, n)?.map_labels(|s| s + offset))
        }
        _ => {
            let known: Vec<&str> = NAMES.iter().map(|(n, _)| *n).collect();
            Err(Error::BadParameter(format!(
                "unknown construction {name:?}; known: {}",
                known.join(", ")
            )))
        }
    }
}
