use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pda::Pda;
use crate::validate::validate;

/// Exact rational used for `M/N` and `R`.
pub type Rational = Ratio<u64>;

/// `(K, f, Z, |S|)` of a PDA plus its coding gain when uniform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdaParams {
    pub users: u64,
    pub subpacketization: u64,
    pub stars: u64,
    pub labels: u64,
    /// `Some(g)` iff every label occurs exactly `g` times.
    pub regularity: Option<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub memory_ratio: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub rate: Rational,
}

impl PdaParams {
    /// Builds the tuple from its integer parts; `M/N = Z/f`, `R = |S|/f`.
    pub fn from_counts(
        users: u64,
        subpacketization: u64,
        stars: u64,
        labels: u64,
        regularity: Option<u64>,
    ) -> Result<Self> {
        if users == 0 || subpacketization == 0 {
            return Err(Error::BadParameter("K and f must be positive".into()));
        }
        if stars > subpacketization {
            return Err(Error::BadParameter(format!(
                "Z = {stars} exceeds f = {subpacketization}"
            )));
        }
        Ok(Self {
            users,
            subpacketization,
            stars,
            labels,
            regularity,
            memory_ratio: Ratio::new(stars, subpacketization),
            rate: Ratio::new(labels, subpacketization),
        })
    }
}

impl fmt::Display for PdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.users, self.subpacketization, self.stars, self.labels
        )?;
        if let Some(g) = self.regularity {
            write!(f, " g={g}")?;
        }
        write!(
            f,
            " M/N={} R={}",
            fraction(&self.memory_ratio),
            fraction(&self.rate)
        )
    }
}

/// Extracts the parameters of a valid PDA.
pub fn params(p: &Pda) -> Result<PdaParams> {
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidPda(Box::new(report)));
    }
    let positions = p.label_positions();
    let mut counts = positions.values().map(Vec::len);
    let regularity = match counts.next() {
        Some(g) if counts.all(|c| c == g) => Some(g as u64),
        _ => None,
    };
    PdaParams::from_counts(
        p.cols() as u64,
        p.rows() as u64,
        p.stars_in_col(0) as u64,
        positions.len() as u64,
        regularity,
    )
}

/// Renders `p/q`, or just `p` for integers.
pub fn fraction(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders with exactly four fractional digits, rounding half to even.
pub fn decimal4(r: &Rational) -> String {
    const SCALE: u128 = 10_000;
    let n = *r.numer() as u128 * SCALE;
    let d = *r.denom() as u128;
    let (mut q, rem) = n.div_rem(&d);
    match (2 * rem).cmp(&d) {
        std::cmp::Ordering::Greater => q += 1,
        std::cmp::Ordering::Equal if q % 2 == 1 => q += 1,
        _ => {}
    }
    format!("{}.{:04}", q / SCALE, q % SCALE)
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}
