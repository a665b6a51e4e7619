//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;

use common::{fixture, oracle_generalized, oracle_right, oracle_two_sided, oracle_valid, raw};
use pda_core::compat::{
    is_blackburn_compatible, is_generalized_family, is_left_compatible, is_right_compatible, GenFamily,
};
use pda_core::constructions::{
    all_star, filled, h_array, identity, label_range, mn, mn_reverse, odd_tiling, shangguan_direct, yan_half_memory,
};
use pda_core::lifting::{corollary_odd, mn_recursive, nonuniform_lift, shangguan_recursive, uniform_lift, Orientation};
use pda_core::params::decimal4;
use pda_core::random::{random_family, random_pda};
use pda_core::sim::{run, Demands};
use pda_core::subsets::binom;
use pda_core::table::{chains, table1};
use pda_core::{params, validate, Error, Pda};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest side for which the quadratic oracles are replayed.
const ORACLE_SIDE: usize = 40;
const DEMAND_VECTORS: u64 = 50;
const FILE_BYTES: usize = 256;
const RANDOM_PDAS: usize = 100;
const RANDOM_FAMILIES: usize = 200;

/// A right-compatibility instance: `(p0, p1, pstar)`.
type Triple = (Pda, Pda, Pda);
/// Members, references, and whether the family is compatible.
type Family = (Vec<Pda>, BTreeMap<(usize, usize), Pda>, bool);

#[derive(Default)]
struct Suite {
    /// Arrays built in criteria 1 and 2, simulated in criterion 7.
    built: Vec<(String, Pda)>,
    /// Every array that passed through a validity check.
    validated: Vec<Pda>,
    right: Vec<Triple>,
    two_sided: Vec<Triple>,
    families: Vec<Family>,
}

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn labels(n: usize) -> Vec<u32> {
    label_range(0, n)
}

fn criterion1(suite: &mut Suite) -> Outcome {
    let mut out = Outcome::new();
    let mut cases: Vec<(&str, Pda)> = vec![
        ("identity_3_1", identity(3, 1, false).unwrap()),
        ("anti_identity_3_0", identity(3, 0, true).unwrap()),
        ("filled_2_3", filled(2, 3, &labels(6)).unwrap()),
        ("mn_4_2", mn(4, 2, &labels(4)).unwrap()),
        ("mn_reverse_4_2", mn_reverse(4, 2, &labels(4)).unwrap()),
        ("yan_half_5", yan_half_memory(5).unwrap()),
    ];

    let fam = odd_tiling(5).unwrap();
    let base = h_array(2, &labels(1)).unwrap();
    let lifted = uniform_lift(&base, &fam.members(), &fam.pstar).unwrap().result;
    cases.push(("corollary_10x10", lifted));

    let p0 = Pda::assemble(&[vec![&identity(2, 0, false).unwrap()], vec![&identity(2, 1, false).unwrap()]]).unwrap();
    let p1 = Pda::assemble(&[vec![&identity(2, 1, false).unwrap(), &identity(2, 0, false).unwrap()]]).unwrap();
    let refs = BTreeMap::from([((0, 1), identity(4, 2, false).unwrap()), ((1, 0), all_star(2, 2).unwrap())]);
    cases.push(("nonuniform_6x6", nonuniform_lift(&[p0, p1], &refs, Orientation::Main).unwrap()));

    for (k, t, name) in [(2, 1, "mn_2_1"), (3, 1, "mn_3_1"), (3, 2, "mn_3_2"), (4, 2, "mn_4_2_recursive")] {
        cases.push((name, mn_recursive(k, t).unwrap()));
    }
    for (n, a, b, name) in [
        (4, 2, 1, "shangguan_4_2_1"),
        (4, 1, 2, "shangguan_4_1_2"),
        (4, 2, 2, "shangguan_4_2_2"),
        (5, 2, 2, "shangguan_5_2_2"),
    ] {
        cases.push((name, shangguan_recursive(n, a, b).unwrap()));
    }

    for (name, p) in cases {
        let want = fixture(name);
        out.check(p.canonicalize() == want.canonicalize() && p == want, || {
            format!("{name} differs from the printed array")
        });
        suite.built.push((name.to_string(), p));
    }
    out.summary = format!("{} printed arrays reproduced exactly", suite.built.len());
    out
}

fn criterion2(suite: &mut Suite) -> Outcome {
    let mut out = Outcome::new();
    let mut count = 0;
    for g in [3usize, 5, 7, 9, 11] {
        for n in [2usize, 3, 4] {
            let p = corollary_odd(g, n).unwrap();
            let q = params(&p).unwrap();
            let (g64, n64) = (g as u64, n as u64);
            let want = (g64 * n64, g64 * n64, n64 * (g64 - 2) + 1, n64 * (2 * n64 - 1));
            out.check(
                validate(&p).is_valid()
                    && (q.users, q.subpacketization, q.stars, q.labels) == want
                    && q.regularity == Some(g64),
                || format!("corollary g={g} n={n}: got {q}"),
            );
            if (g, n) == (11, 2) {
                out.check(
                    decimal4(&q.memory_ratio) == "0.8636" && decimal4(&q.rate) == "0.2727",
                    || format!("corollary g=11 n=2 ratios: {q}"),
                );
            }
            suite.built.push((format!("corollary_odd({g},{n})"), p));
            count += 1;
        }
    }
    for g in 2usize..=8 {
        let p = yan_half_memory(g).unwrap();
        let q = params(&p).unwrap();
        let want = (2 * g as u64, 1u64 << (g - 1), 1u64 << (g - 2), 1u64 << (g - 1));
        out.check(
            validate(&p).is_valid()
                && (q.users, q.subpacketization, q.stars, q.labels) == want
                && q.regularity == Some(g as u64),
            || format!("yan_half_memory({g}): got {q}"),
        );
        suite.built.push((format!("yan_half_memory({g})"), p));
        count += 1;
    }
    out.summary = format!("{count} constructions match their parameter formulas");
    out
}

fn criterion3() -> Outcome {
    let mut out = Outcome::new();
    let intermediates = [
        ("six-ten", "(60,60)_{11,51}^{3,12}"),
        ("six-eight", "(48,48)_{10,41}^{3,12}"),
        ("six-eight-low", "(48,48)_{10,34}^{2,8}"),
        ("three-sixteen", "(48,48)_{25,48}^{3,24}"),
        ("four-sixteen", "(64,64)_{31,54}^{2,16}"),
    ];
    let all = chains();
    for (name, want) in intermediates {
        let got = all
            .iter()
            .find(|c| c.name == name)
            .and_then(|c| c.step().ok())
            .map(|s| s.result.tuple.to_string());
        out.check(got.as_deref() == Some(want), || format!("chain {name}: {got:?}, want {want}"));
    }

    let want: [(u64, u64, u64, u64); 6] = [
        (22, 22, 19, 6),
        (240, 360, 186, 3480),
        (240, 480, 224, 5120),
        (240, 240, 74, 4980),
        (256, 256, 79, 5664),
        (256, 256, 147, 1744),
    ];
    let rows = table1().unwrap();
    let computed: Vec<_> = rows.iter().filter(|r| !r.reference).collect();
    out.check(computed.len() == want.len(), || format!("{} computed rows", computed.len()));
    for (row, &(k, f, z, s)) in computed.iter().zip(&want) {
        let mn_want = format!("{:.4}", z as f64 / f as f64);
        let r_want = format!("{:.4}", s as f64 / f as f64);
        out.check(
            (row.k, row.f, row.z, row.s) == (k, f, z, s)
                && decimal4(&row.memory_ratio) == mn_want
                && decimal4(&row.rate) == r_want,
            || format!("row {}: want ({k},{f},{z},{s}) {mn_want} {r_want}", row.csv_line()),
        );
    }
    out.summary = format!("{} chain intermediates, {} table rows", intermediates.len(), want.len());
    out
}

fn criterion4(suite: &mut Suite) -> Outcome {
    let mut out = Outcome::new();
    let mut instances = 0;
    let mut expect_clean = |out: &mut Outcome, what: String, report: pda_core::Result<pda_core::compat::CompatReport>| {
        instances += 1;
        match report {
            Ok(r) if r.ok && r.witnesses.is_empty() => {}
            Ok(r) => out.failures.push(format!("{what}: {} witnesses, first {}", r.witnesses.len(), r.witnesses[0])),
            Err(e) => out.failures.push(format!("{what}: {e}")),
        }
    };

    for g in (3..=15).step_by(2) {
        let fam = odd_tiling(g).unwrap();
        expect_clean(&mut out, format!("odd tiling g={g}"), is_blackburn_compatible(&fam.p0, &fam.p1, &fam.pstar));
        suite.two_sided.push((fam.p0.clone(), fam.p1.clone(), fam.pstar.clone()));
        suite.validated.extend([fam.p0, fam.p1, fam.pstar]);
    }

    for k in 1..=8usize {
        for t in 0..k {
            let shared = binom(k, t + 1);
            let j = filled(shared, 1, &labels(shared)).unwrap();
            let m = mn(k, t, &labels(shared)).unwrap();
            let fresh = shared as u32;
            let pstar = mn(k, t + 1, &label_range(fresh, binom(k, t + 2))).unwrap();
            expect_clean(&mut out, format!("(J, M_{{{k},{t}}}) right"), is_right_compatible(&j, &m, &pstar));
            let phash = all_star(binom(k, t), 1).unwrap();
            expect_clean(&mut out, format!("(J, M_{{{k},{t}}}) left"), is_left_compatible(&j, &m, &phash));
            suite.right.push((j.clone(), m.clone(), pstar.clone()));
            suite.right.push((m.clone(), j.clone(), phash));
            suite.validated.extend([m, pstar]);
        }
    }

    for n in 1..=7usize {
        for a in 1..=n {
            for b in 1..=(n + 1 - a) {
                let shared = labels(binom(n, a + b - 1));
                let p0 = shangguan_direct(n, a, b - 1, &shared).unwrap();
                let p1 = shangguan_direct(n, a - 1, b, &shared).unwrap();
                let pstar = if a + b <= n {
                    shangguan_direct(n, a, b, &label_range(shared.len() as u32, binom(n, a + b))).unwrap()
                } else {
                    all_star(binom(n, a), binom(n, b)).unwrap()
                };
                expect_clean(&mut out, format!("U n={n} a={a} b={b}"), is_right_compatible(&p0, &p1, &pstar));
                suite.right.push((p0.clone(), p1.clone(), pstar.clone()));
                suite.validated.extend([p0, p1, pstar]);
            }
        }
    }

    for k in 2..=8usize {
        for t in 0..=k - 2 {
            let shared = labels(binom(k, t + 1));
            let fresh = |rows: usize| label_range(shared.len() as u32, binom(k, rows + 1));
            let tilde = mn_reverse(k, t, &shared).unwrap();
            let plain = mn(k, k - t - 2, &shared).unwrap();
            let pstar = mn(k, k - t, &fresh(k - t)).unwrap();
            expect_clean(
                &mut out,
                format!("(M~_{{{k},{t}}}, M_{{{k},{}}})", k - t - 2),
                is_right_compatible(&tilde, &plain, &pstar),
            );
            suite.right.push((tilde.clone(), plain.clone(), pstar.clone()));

            // swapped corollary: t replaced by K-t-2
            let u = k - t - 2;
            let shared = labels(binom(k, u + 1));
            let tilde = mn_reverse(k, u, &shared).unwrap();
            let plain = mn(k, t, &shared).unwrap();
            let pstar2 = mn(k, t + 2, &label_range(shared.len() as u32, binom(k, t + 3))).unwrap();
            expect_clean(
                &mut out,
                format!("(M~_{{{k},{u}}}, M_{{{k},{t}}}) swapped"),
                is_right_compatible(&tilde, &plain, &pstar2),
            );
            suite.right.push((tilde.clone(), plain.clone(), pstar2.clone()));
            suite.validated.extend([tilde, plain, pstar, pstar2]);
        }
    }
    out.summary = format!("{instances} compatibility instances, zero witnesses");
    out
}

fn criterion5(suite: &mut Suite) -> Outcome {
    let mut out = Outcome::new();
    let (mut yes, mut no) = (0, 0);
    for seed in 0..RANDOM_FAMILIES as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = rng.gen_range(1..=3);
        let fam = random_family(g, 5, &mut rng).unwrap();
        let gen = GenFamily::new(fam.members.clone(), fam.refs.clone()).unwrap();
        let compatible = is_generalized_family(&gen).ok;
        if compatible {
            yes += 1;
        } else {
            no += 1;
        }
        for o in [Orientation::Main, Orientation::Anti] {
            let valid = match nonuniform_lift(&fam.members, &fam.refs, o) {
                Ok(p) => {
                    suite.validated.push(p.clone());
                    validate(&p).is_valid()
                }
                Err(Error::LiftValidation { .. }) => false,
                Err(e) => {
                    out.failures.push(format!("seed {seed} {o:?}: {e}"));
                    continue;
                }
            };
            out.check(valid == compatible, || {
                format!("seed {seed} {o:?}: valid={valid} compatible={compatible}")
            });
        }
        suite.families.push((fam.members, fam.refs, compatible));
    }
    out.check(yes > 0 && no > 0, || format!("only one direction exercised ({yes} compatible, {no} not)"));
    out.summary = format!("{RANDOM_FAMILIES} families ({yes} compatible, {no} not), both orientations agree");
    out
}

fn criterion6(suite: &mut Suite) -> Outcome {
    let mut out = Outcome::new();
    let mut count = 0;
    for k in 1..=9usize {
        for t in 0..=k {
            let direct = mn(k, t, &labels(binom(k, t + 1))).unwrap();
            let rec = mn_recursive(k, t).unwrap();
            out.check(rec == direct, || format!("mn_recursive({k},{t})"));
            suite.validated.push(rec);
            count += 1;
        }
    }
    for n in 1..=7usize {
        for a in 0..=n {
            for b in 0..=n - a {
                let direct = shangguan_direct(n, a, b, &labels(binom(n, a + b))).unwrap();
                let rec = shangguan_recursive(n, a, b).unwrap();
                out.check(rec == direct, || format!("shangguan_recursive({n},{a},{b})"));
                suite.validated.push(rec);
                count += 1;
            }
        }
    }
    for n in 1..=8usize {
        for a in 0..n {
            let u = shangguan_direct(n, a, 1, &labels(binom(n, a + 1))).unwrap();
            let m = mn(n, a, &labels(binom(n, a + 1))).unwrap();
            out.check(u.canonicalize() == m.canonicalize(), || format!("U_{{{n},{a},1}} vs M_{{{n},{a}}}"));
            count += 1;
        }
    }
    out.summary = format!("{count} recursive/direct pairs identical");
    out
}

fn criterion7(suite: &mut Suite) -> Outcome {
    let mut out = Outcome::new();
    let mut pdas = suite.built.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..RANDOM_PDAS {
        let f = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=8);
        let z = rng.gen_range(0..=f);
        pdas.push((format!("random #{i}"), random_pda(f, k, z, &mut rng)));
    }
    let mut runs = 0;
    for (name, p) in &pdas {
        let s = p.labels().len();
        let bytes = s * FILE_BYTES.div_ceil(p.rows());
        for d in 0..DEMAND_VECTORS {
            let report = run(p, p.cols(), FILE_BYTES, &Demands::Seeded(d), d + 1000).unwrap();
            runs += 1;
            out.check(report.all_decoded(), || format!("{name} demand seed {d}: {:?}", report.decode_errors));
            out.check(report.transmissions == s && report.bytes_sent == bytes, || {
                format!(
                    "{name} demand seed {d}: {} transmissions, {} bytes; want {s}, {bytes}",
                    report.transmissions, report.bytes_sent
                )
            });
        }
        suite.validated.push(p.clone());
    }
    out.summary = format!("{} PDAs x {DEMAND_VECTORS} demand vectors = {runs} runs, all decoded", pdas.len());
    out
}

fn small(p: &Pda) -> bool {
    p.rows() <= ORACLE_SIDE && p.cols() <= ORACLE_SIDE
}

fn criterion8(suite: &Suite) -> Outcome {
    let mut out = Outcome::new();
    let mut checked = 0;
    let arrays = suite.built.iter().map(|(_, p)| p).chain(&suite.validated);
    for p in arrays.filter(|p| small(p)) {
        checked += 1;
        let got = validate(p).is_valid();
        out.check(got == oracle_valid(&raw(p)), || format!("validate disagrees on\n{p}"));
    }
    for (p0, p1, pstar) in suite.right.iter().filter(|(a, b, c)| small(a) && small(b) && small(c)) {
        checked += 1;
        let got = is_right_compatible(p0, p1, pstar).unwrap().ok;
        out.check(got == oracle_right(&raw(p0), &raw(p1), &raw(pstar)), || "right compatibility disagrees".into());
    }
    for (p0, p1, pstar) in suite.two_sided.iter().filter(|(a, b, c)| small(a) && small(b) && small(c)) {
        checked += 1;
        let got = is_blackburn_compatible(p0, p1, pstar).unwrap().ok;
        out.check(got == oracle_two_sided(&raw(p0), &raw(p1), &raw(pstar)), || "two-sided compatibility disagrees".into());
    }
    for (members, refs, compatible) in &suite.families {
        checked += 1;
        out.check(*compatible == oracle_generalized(members, refs), || "family compatibility disagrees".into());
    }
    out.summary = format!("{checked} checks agree with the brute-force scans (side <= {ORACLE_SIDE})");
    out
}

fn main() -> ExitCode {
    let mut suite = Suite::default();
    let names = [
        "printed-array reproduction",
        "parameter formulas",
        "table arithmetic",
        "compatibility sweeps",
        "non-uniform lifting iff",
        "recursive equals direct",
        "end-to-end caching",
        "oracle equivalence",
    ];
    let results = [
        criterion1(&mut suite),
        criterion2(&mut suite),
        criterion3(),
        criterion4(&mut suite),
        criterion5(&mut suite),
        criterion6(&mut suite),
        criterion7(&mut suite),
    ];
    let last = criterion8(&suite);
    let mut failed = 0;
    for (i, (name, r)) in names.iter().zip(results.iter().chain([&last])).enumerate() {
        if r.failures.is_empty() {
            println!("PASS criterion {}: {name}: {}", i + 1, r.summary);
        } else {
            failed += 1;
            println!("FAIL criterion {}: {name}: {} problems", i + 1, r.failures.len());
            for f in r.failures.iter().take(5) {
                println!("    {f}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
