//! Parameter arithmetic of liftings, for families known only by their
//! parameter tuples.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::PdaParams;

/// `(K,f)_{Z_member,Z_ref}^{g_b,g_L}`: `g_b` members of size `f x K` with
/// `Z_member` stars per column, compatible w.r.t. a `g_L`-regular reference
/// with `Z_ref` stars per column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamTuple {
    pub k: u64,
    pub f: u64,
    pub z_member: u64,
    pub z_ref: u64,
    pub g_b: u64,
    pub g_l: u64,
}

impl ParamTuple {
    pub fn new(k: u64, f: u64, z_member: u64, z_ref: u64, g_b: u64, g_l: u64) -> Result<Self> {
        let t = Self {
            k,
            f,
            z_member,
            z_ref,
            g_b,
            g_l,
        };
        if k == 0 || f == 0 || g_b == 0 || g_l == 0 {
            return Err(Error::InconsistentTuple(format!("{t}: K, f, g_b, g_L must be positive")));
        }
        if z_member > f || z_ref > f {
            return Err(Error::InconsistentTuple(format!("{t}: star count exceeds f")));
        }
        Ok(t)
    }
}

impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})_{{{},{}}}^{{{},{}}}",
            self.k, self.f, self.z_member, self.z_ref, self.g_b, self.g_l
        )
    }
}

/// Parses `K,f,Zm,Zr,gb,gL`.
impl FromStr for ParamTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InconsistentTuple(format!("{s:?}: {e}")))?;
        match parts[..] {
            [k, f, zm, zr, gb, gl] => ParamTuple::new(k, f, zm, zr, gb, gl),
            _ => Err(Error::InconsistentTuple(format!(
                "{s:?}: expected six values K,f,Zm,Zr,gb,gL"
            ))),
        }
    }
}

fn exact_div(num: u64, den: u64, what: &str) -> Result<u64> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::InconsistentTuple(format!(
            "{what}: {num} is not a multiple of {den}"
        )));
    }
    Ok(num / den)
}

/// Per-label multiplicity when `cells` label cells share `labels` labels;
/// `None` when there are no label cells at all.
fn multiplicity(cells: u64, labels: u64, what: &str) -> Result<Option<u64>> {
    match (cells, labels) {
        (0, 0) => Ok(None),
        (_, 0) | (0, _) => Err(Error::InconsistentTuple(format!(
            "{what}: {cells} label cells for {labels} labels"
        ))),
        _ => exact_div(cells, labels, what).map(Some),
    }
}

/// Parameters of `base` lifted by the family `fam`, where the members share
/// `member_label_count` labels and the reference uses `ref_label_count`.
pub fn lifted_params(
    base: &PdaParams,
    fam: &ParamTuple,
    member_label_count: u64,
    ref_label_count: u64,
) -> Result<PdaParams> {
    let users = base.users * fam.k;
    let rows = base.subpacketization * fam.f;
    let stars = base.stars * fam.z_ref + (base.subpacketization - base.stars) * fam.z_member;
    let labels = base.users * base.stars * ref_label_count + base.labels * member_label_count;

    // members need not repeat each label equally, so count over the family
    let family_total = multiplicity(
        fam.g_b * fam.k * (fam.f - fam.z_member),
        member_label_count,
        "member label count",
    )?;
    let per_ref = multiplicity(fam.k * (fam.f - fam.z_ref), ref_label_count, "reference label count")?;
    if let Some(g) = per_ref {
        if g != fam.g_l {
            return Err(Error::InconsistentTuple(format!(
                "{fam}: reference labels occur {g} times, tuple says g_L = {}",
                fam.g_l
            )));
        }
    }

    let regularity = match base.regularity {
        Some(g) if g > fam.g_b => {
            return Err(Error::InconsistentTuple(format!(
                "base labels occur {g} times but the family has {} members",
                fam.g_b
            )))
        }
        Some(g) => {
            let member = match family_total {
                Some(total) => Some(exact_div(g * total, fam.g_b, "member multiplicity")?),
                None => None,
            };
            let reference = per_ref.filter(|_| base.stars > 0);
            match (member, reference) {
                (Some(a), Some(b)) if a != b => None,
                (a, b) => a.or(b),
            }
        }
        None => None,
    };
    PdaParams::from_counts(users, rows, stars, labels, regularity)
}

/// A compatible family: its tuple plus how often each member label occurs
/// within one member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub tuple: ParamTuple,
    pub member_regularity: u64,
}

impl FamilyParams {
    fn member_labels(&self) -> Result<u64> {
        let t = &self.tuple;
        exact_div(t.k * (t.f - t.z_member), self.member_regularity, "member labels")
    }

    fn ref_labels(&self) -> Result<u64> {
        let t = &self.tuple;
        exact_div(t.k * (t.f - t.z_ref), t.g_l, "reference labels")
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} g={}", self.tuple, self.member_regularity)
    }
}

/// One step of a family chain: the lifted family and its label counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub result: FamilyParams,
    pub member_labels: u64,
    pub ref_labels: u64,
}

/// Parameters of the family `{P_i}` lifted member-wise by `{Q_i}`, with
/// the reference lifted by a single `Q` member.
pub fn lift_family_params(p: &FamilyParams, q: &FamilyParams) -> Result<ChainStep> {
    let (pt, qt) = (&p.tuple, &q.tuple);
    if p.member_regularity > qt.g_b {
        return Err(Error::InconsistentTuple(format!(
            "members of {pt} repeat labels {} times but {qt} has {} members",
            p.member_regularity, qt.g_b
        )));
    }
    let member_labels = pt.k * pt.z_member * q.ref_labels()? + p.member_labels()? * q.member_labels()?;
    let ref_labels = p.ref_labels()? * q.member_labels()?;
    let k = pt.k * qt.k;
    let f = pt.f * qt.f;
    let z_member = pt.z_member * qt.z_ref + (pt.f - pt.z_member) * qt.z_member;
    let z_ref = pt.z_ref * qt.f + (pt.f - pt.z_ref) * qt.z_member;
    let tuple = ParamTuple::new(k, f, z_member, z_ref, pt.g_b, pt.g_l * q.member_regularity)?;
    let member_regularity = match member_labels {
        0 => 1,
        n => exact_div(k * (f - z_member), n, "lifted member labels")?,
    };
    Ok(ChainStep {
        result: FamilyParams {
            tuple,
            member_regularity,
        },
        member_labels,
        ref_labels,
    })
}
