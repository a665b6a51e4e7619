//! Memory-rate tradeoff rows and plot points for the comparison table.
//!
//! Rows for this crate's schemes are computed with the lifting parameter
//! calculus. Rows of other schemes are literal data marked as references:
//! their constructions are not implemented here.

use serde::Serialize;

use crate::constructions::{h_array, label_range};
use crate::error::Result;
use crate::lifting::{lift_family_params, lifted_params, ChainStep, FamilyParams, ParamTuple};
use crate::params::{decimal4, params, PdaParams, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TradeoffRow {
    pub scheme: String,
    /// Literal data from another scheme, not constructed here.
    pub reference: bool,
    pub g: u64,
    pub k: u64,
    pub f: u64,
    pub z: u64,
    pub s: u64,
    #[serde(serialize_with = "crate::params::ser_ratio")]
    pub memory_ratio: Rational,
    #[serde(serialize_with = "crate::params::ser_ratio")]
    pub rate: Rational,
    /// How the row was obtained.
    pub detail: String,
}

impl TradeoffRow {
    fn computed(scheme: &str, p: &PdaParams, detail: String) -> Self {
        Self {
            scheme: scheme.into(),
            reference: false,
            g: p.regularity.unwrap_or(0),
            k: p.users,
            f: p.subpacketization,
            z: p.stars,
            s: p.labels,
            memory_ratio: p.memory_ratio,
            rate: p.rate,
            detail,
        }
    }

    fn literal(scheme: &str, g: u64, k: u64, f: u64, z: u64, s: u64) -> Self {
        Self {
            scheme: format!("{scheme} (reference)"),
            reference: true,
            g,
            k,
            f,
            z,
            s,
            memory_ratio: Rational::new(z, f),
            rate: Rational::new(s, f),
            detail: "reference, not constructed".into(),
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.scheme,
            self.g,
            self.k,
            self.f,
            self.z,
            self.s,
            decimal4(&self.memory_ratio),
            decimal4(&self.rate)
        )
    }
}

fn family(k: u64, f: u64, zm: u64, zr: u64, gb: u64, gl: u64, member_regularity: u64) -> FamilyParams {
    FamilyParams {
        tuple: ParamTuple {
            k,
            f,
            z_member: zm,
            z_ref: zr,
            g_b: gb,
            g_l: gl,
        },
        member_regularity,
    }
}

/// A family chain `P` lifted by `Q`, both given by prior-work tuples.
#[derive(Debug, Clone, Copy)]
pub struct Chain {
    pub name: &'static str,
    pub p: FamilyParams,
    pub q: FamilyParams,
    /// Not listed among the published chains; reconstructed to match a
    /// published table row.
    pub inferred: bool,
}

impl Chain {
    pub fn step(&self) -> Result<ChainStep> {
        lift_family_params(&self.p, &self.q)
    }
}

pub fn chains() -> [Chain; 6] {
    let c = |name, p, q, inferred| Chain { name, p, q, inferred };
    [
        c("six-ten", family(6, 6, 1, 5, 3, 6, 2), family(10, 10, 1, 6, 2, 4, 2), false),
        c("six-eight", family(6, 6, 1, 5, 3, 6, 2), family(8, 8, 1, 5, 2, 4, 2), false),
        c("six-eight-low", family(6, 6, 1, 4, 2, 4, 2), family(8, 8, 1, 5, 2, 4, 2), false),
        c("three-sixteen", family(3, 3, 1, 3, 3, 6, 2), family(16, 16, 6, 13, 2, 8, 4), false),
        c("four-sixteen", family(4, 4, 1, 3, 2, 4, 2), family(16, 16, 6, 13, 2, 8, 4), false),
        c("eight-eight", family(8, 8, 1, 5, 2, 4, 2), family(8, 8, 1, 5, 2, 4, 2), true),
    ]
}

fn chain(name: &str) -> Chain {
    chains()
        .into_iter()
        .find(|c| c.name == name)
        .expect("known chain")
}

fn base(k: u64, f: u64, z: u64, s: u64, g: u64) -> PdaParams {
    PdaParams::from_counts(k, f, z, s, Some(g)).expect("literal base parameters")
}

/// A base PDA lifted by the result of a chain.
fn lifted_row(base: PdaParams, chain_name: &str) -> Result<TradeoffRow> {
    let c = chain(chain_name);
    let step = c.step()?;
    let out = lifted_params(&base, &step.result.tuple, step.member_labels, step.ref_labels)?;
    let detail = format!(
        "({},{})_{}^{} lifted by {}{}",
        base.users,
        base.subpacketization,
        base.stars,
        base.regularity.unwrap_or(0),
        step.result.tuple,
        if c.inferred { " (inferred chain)" } else { "" }
    );
    Ok(TradeoffRow::computed("compatible-lifting", &out, detail))
}

/// The odd-tiling corollary row: `H_n` lifted by the odd tiling pair.
fn odd_row(g: u64, n: u64) -> Result<TradeoffRow> {
    let h = h_array(n as usize, &label_range(0, (n * (n - 1) / 2) as usize))?;
    let fam = ParamTuple::new(g, g, g - 2, g - 1, 2, g)?;
    let out = lifted_params(&params(&h)?, &fam, 4, 1)?;
    Ok(TradeoffRow::computed(
        "odd-tiling",
        &out,
        format!("H_{n} lifted by {fam}"),
    ))
}

/// Every row of the comparison table, in the published order.
pub fn table1() -> Result<Vec<TradeoffRow>> {
    Ok(vec![
        odd_row(11, 2)?,
        TradeoffRow::literal("prior-lifting", 11, 22, 22, 20, 4),
        lifted_row(base(4, 6, 3, 4, 3), "six-ten")?,
        lifted_row(base(5, 10, 4, 10, 3), "six-eight")?,
        TradeoffRow::literal("prior-lifting", 12, 240, 960, 588, 7440),
        TradeoffRow::literal("cheng-2020", 12, 240, 64, 60, 80),
        TradeoffRow::literal("huang-2021", 10, 240, 64, 48, 384),
        lifted_row(base(5, 5, 1, 10, 2), "six-eight-low")?,
        TradeoffRow::literal("prior-lifting", 8, 240, 240, 78, 4860),
        lifted_row(base(4, 4, 1, 6, 2), "eight-eight")?,
        TradeoffRow::literal("prior-lifting", 8, 256, 256, 80, 5632),
        lifted_row(base(4, 4, 1, 6, 2), "four-sixteen")?,
        TradeoffRow::literal("prior-lifting", 16, 256, 256, 160, 1536),
    ])
}

pub const TABLE1_HEADER: &str = "scheme,g,K,f,Z,S,MN,R";
pub const FIG2_HEADER: &str = "series,MN,R";

pub fn table1_csv() -> Result<String> {
    let mut out = format!("{TABLE1_HEADER}\n");
    for row in table1()? {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlotPoint {
    pub series: String,
    /// Four-decimal rendering, or the literal value for reference data.
    pub mn: String,
    pub r: String,
}

fn exact(series: &str, mn: Rational, r: Rational) -> PlotPoint {
    PlotPoint {
        series: series.into(),
        mn: decimal4(&mn),
        r: decimal4(&r),
    }
}

fn literal_points(series: &str, pts: &[(&str, &str)]) -> Vec<PlotPoint> {
    pts.iter()
        .map(|&(mn, r)| PlotPoint {
            series: format!("{series} (reference)"),
            mn: mn.into(),
            r: r.into(),
        })
        .collect()
}

/// The `(M/N, R)` points for `K = 240`.
pub fn fig2() -> Result<Vec<PlotPoint>> {
    const K: u64 = 240;
    let mut pts: Vec<PlotPoint> = (0..=K)
        .map(|x| exact("mn", Rational::new(x, K), Rational::new(K - x, 1 + x)))
        .collect();
    pts.push(exact("uncoded", Rational::from_integer(0), Rational::from_integer(K)));
    pts.push(exact("uncoded", Rational::from_integer(1), Rational::from_integer(0)));
    pts.extend(literal_points("huang-2021", &[("0.75", "6"), ("0.625", "15"), ("0.75", "20")]));
    pts.extend(literal_points("cheng-2020", &[("0.9375", "1"), ("0.85", "3")]));
    pts.extend(literal_points("cheng-2021", &[("0.88333", "1"), ("0.8375", "1")]));
    pts.extend(literal_points(
        "prior-lifting",
        &[
            ("0", "240"),
            ("0.004166667", "119.5"),
            ("0.1083333", "71.33333"),
            ("0.09166667", "54.5"),
            ("0.4833333", "24.8"),
            ("0.371875", "25.125"),
            ("0.325", "20.25"),
            ("0.60625", "9.45"),
            ("0.6125", "7.75"),
            ("0.6458333", "5.3125"),
            ("0.775", "2.7"),
            ("0.8166667", "1.375"),
            ("0.9125", "0.4375"),
            ("0.9541667", "0.1375"),
            ("0.9791667", "0.04166667"),
            ("0.9916667", "0.0125"),
            ("0.9958333", "0.004166667"),
        ],
    ));
    for (b, name) in [
        (base(5, 5, 1, 10, 2), "six-eight-low"),
        (base(5, 10, 4, 10, 3), "six-eight"),
        (base(5, 10, 4, 10, 3), "three-sixteen"),
    ] {
        let row = lifted_row(b, name)?;
        pts.push(exact("compatible-lifting", row.memory_ratio, row.rate));
    }
    // the chain behind this published point is not given
    pts.extend(literal_points("compatible-lifting", &[("0.6208", "5.6875")]));
    Ok(pts)
}

pub fn fig2_csv() -> Result<String> {
    let mut out = format!("{FIG2_HEADER}\n");
    for p in fig2()? {
        out.push_str(&format!("{},{},{}\n", p.series, p.mn, p.r));
    }
    Ok(out)
}
