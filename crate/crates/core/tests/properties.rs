mod common;

use common::{oracle_generalized, oracle_right, oracle_two_sided, oracle_valid, raw};
use pda_core::compat::{is_blackburn_compatible, is_generalized_family, is_right_compatible, GenFamily};
use pda_core::constructions::all_star;
use pda_core::format::{from_json, parse_grid, serialize_grid, to_json};
use pda_core::lifting::{basic_lift, lifted_params, nonuniform_lift, uniform_lift, Orientation, ParamTuple};
use pda_core::random::{random_family, random_pda};
use pda_core::sim::{deliver, run, Demands, Library};
use pda_core::{params, validate, Cell, Error, Pda};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_pda(r: &mut ChaCha8Rng, max: usize) -> Pda {
    let f = r.gen_range(1..=max);
    let k = r.gen_range(1..=max);
    let z = r.gen_range(0..=f);
    random_pda(f, k, z, r)
}

/// A random cell overwritten by a star or by a label already in use.
fn mutate(p: &Pda, r: &mut ChaCha8Rng) -> Pda {
    let j = r.gen_range(0..p.rows());
    let k = r.gen_range(0..p.cols());
    let labels: Vec<u32> = p.labels().into_iter().collect();
    let cell = if labels.is_empty() || r.gen_bool(0.3) {
        Cell::Star
    } else {
        Cell::Label(labels[r.gen_range(0..labels.len())])
    };
    p.with_cell(j, k, cell)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn validate_agrees_with_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = small_pda(&mut r, 7);
        prop_assert!(validate(&p).is_valid());
        prop_assert!(oracle_valid(&raw(&p)));
        let m = mutate(&p, &mut r);
        prop_assert_eq!(validate(&m).is_valid(), oracle_valid(&raw(&m)));
    }

    #[test]
    fn c3_witness_is_genuine(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = mutate(&small_pda(&mut r, 6), &mut r);
        if let Some(pda_core::Violation::C3 { label, first, second, mirror }) = validate(&m).c3_witness().cloned() {
            prop_assert_eq!(m.get(first.0, first.1), Cell::Label(label));
            prop_assert_eq!(m.get(second.0, second.1), Cell::Label(label));
            prop_assert!(!m.is_star(mirror.0, mirror.1));
        }
    }

    #[test]
    fn encodings_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = small_pda(&mut r, 8);
        prop_assert_eq!(parse_grid(&serialize_grid(&p)).unwrap(), p.clone());
        prop_assert_eq!(from_json(&to_json(&p)).unwrap(), p);
    }

    #[test]
    fn canonical_form_keeps_parameters(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = small_pda(&mut r, 7).map_labels(|s| 3 * s + 11);
        let c = p.canonicalize();
        prop_assert!(c.has_dense_labels());
        prop_assert_eq!(params(&p).unwrap(), params(&c).unwrap());
        prop_assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn compat_checks_agree_with_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let m = r.gen_range(1..=5);
        let p0 = random_pda(n, m, r.gen_range(0..=n), &mut r);
        let p1 = random_pda(n, m, r.gen_range(0..=n), &mut r);
        let pstar = random_pda(n, m, r.gen_range(0..=n), &mut r);
        let two = is_blackburn_compatible(&p0, &p1, &pstar).unwrap();
        prop_assert_eq!(two.ok, oracle_two_sided(&raw(&p0), &raw(&p1), &raw(&pstar)));
        let q1 = random_pda(r.gen_range(1..=5), r.gen_range(1..=5), 0, &mut r);
        let wide = random_pda(n, q1.cols(), r.gen_range(0..=n), &mut r);
        let right = is_right_compatible(&p0, &q1, &wide).unwrap();
        prop_assert_eq!(right.ok, oracle_right(&raw(&p0), &raw(&q1), &raw(&wide)));
    }

    #[test]
    fn nonuniform_lift_iff(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = r.gen_range(1..=3);
        let fam = random_family(g, 4, &mut r).unwrap();
        let gen = GenFamily::new(fam.members.clone(), fam.refs.clone()).unwrap();
        let compatible = is_generalized_family(&gen).ok;
        prop_assert_eq!(compatible, oracle_generalized(&fam.members, &fam.refs));
        for o in [Orientation::Main, Orientation::Anti] {
            match nonuniform_lift(&fam.members, &fam.refs, o) {
                Ok(p) => {
                    prop_assert!(compatible);
                    prop_assert!(oracle_valid(&raw(&p)));
                }
                Err(Error::LiftValidation { .. }) => prop_assert!(!compatible),
                Err(e) => prop_assert!(false, "unexpected {}", e),
            }
        }
    }

    #[test]
    fn basic_lift_formulas(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = small_pda(&mut r, 4);
        let p = small_pda(&mut r, 4);
        let out = basic_lift(&base, &p).unwrap();
        let (pb, pp) = (params(&base).unwrap(), params(&p).unwrap());
        let q = params(&out.result).unwrap();
        prop_assert_eq!(q.stars, pb.stars * pp.subpacketization + (pb.subpacketization - pb.stars) * pp.stars);
        prop_assert_eq!(q.labels, pb.labels * pp.labels);
        if let (Some(a), Some(b)) = (pb.regularity, pp.regularity) {
            prop_assert_eq!(q.regularity, Some(a * b));
        }
    }

    #[test]
    fn uniform_lift_z_formula(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = small_pda(&mut r, 4);
        let m = r.gen_range(1..=3);
        let n = r.gen_range(1..=3);
        // members with disjoint labels are compatible w.r.t. anything
        let copies = base.label_positions().values().map(Vec::len).max().unwrap_or(1);
        let mut next = 0;
        let zc = r.gen_range(0..=m);
        let members: Vec<Pda> = (0..copies).map(|_| {
            let p = random_pda(m, n, zc, &mut r).map_labels(|s| s + next);
            next += p.labels().len() as u32;
            p
        }).collect();
        let pstar = random_pda(m, n, r.gen_range(0..=m), &mut r);
        let refs: Vec<&Pda> = members.iter().collect();
        let out = uniform_lift(&base, &refs, &pstar).unwrap();
        prop_assert!(oracle_valid(&raw(&out.result)));
        let pb = params(&base).unwrap();
        let zs = pstar.stars_in_col(0) as u64;
        prop_assert_eq!(
            out.result.stars_in_col(0) as u64,
            pb.stars * zs + (pb.subpacketization - pb.stars) * zc as u64
        );
        let mut seen = std::collections::BTreeSet::new();
        for e in &out.label_ledger {
            for s in e.start..e.start + e.len as u32 {
                prop_assert!(seen.insert(s));
            }
        }
        prop_assert_eq!(seen, out.result.labels());
    }

    #[test]
    fn random_pdas_decode(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = small_pda(&mut r, 6);
        let report = run(&p, p.cols(), 37, &Demands::Seeded(seed), seed ^ 1).unwrap();
        prop_assert!(report.all_decoded());
        prop_assert_eq!(report.transmissions, p.labels().len());
        prop_assert_eq!(report.bytes_sent, p.labels().len() * 37usize.div_ceil(p.rows()));
    }

    #[test]
    fn delivery_is_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = small_pda(&mut r, 5);
        let files = r.gen_range(1..4);
        let a: Vec<Vec<u8>> = (0..files).map(|_| (0..16).map(|_| r.gen()).collect()).collect();
        let b: Vec<Vec<u8>> = (0..files).map(|_| (0..16).map(|_| r.gen()).collect()).collect();
        let x: Vec<Vec<u8>> = a.iter().zip(&b).map(|(u, v)| u.iter().zip(v).map(|(s, t)| s ^ t).collect()).collect();
        let demands: Vec<usize> = (0..p.cols()).map(|_| r.gen_range(0..files)).collect();
        let da = deliver(&p, &demands, &Library::new(&a, p.rows()).unwrap()).unwrap();
        let db = deliver(&p, &demands, &Library::new(&b, p.rows()).unwrap()).unwrap();
        let dx = deliver(&p, &demands, &Library::new(&x, p.rows()).unwrap()).unwrap();
        for ((ta, tb), tx) in da.iter().zip(&db).zip(&dx) {
            let xor: Vec<u8> = ta.payload.iter().zip(&tb.payload).map(|(s, t)| s ^ t).collect();
            prop_assert_eq!(&xor, &tx.payload);
        }
    }

    #[test]
    fn star_flip_is_caught(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = small_pda(&mut r, 6);
        let stars = p.star_positions();
        prop_assume!(!stars.is_empty() && !p.labels().is_empty());
        let (j, k) = stars[r.gen_range(0..stars.len())];
        let labels: Vec<u32> = p.labels().into_iter().collect();
        let m = p.with_cell(j, k, Cell::Label(labels[r.gen_range(0..labels.len())]));
        if validate(&m).is_valid() {
            return Ok(());
        }
        // an invalid array must fail to decode for some demand vector,
        // unless only C1 broke
        if validate(&m).c3_ok {
            return Ok(());
        }
        let failed = (0..50u64).any(|d| !run(&m, m.cols(), 8, &Demands::Seeded(d), d).unwrap().all_decoded());
        prop_assert!(failed);
    }
}

#[test]
fn lifted_params_matches_construction() {
    for g in [3usize, 5, 7] {
        for n in 2..=4usize {
            let p = pda_core::lifting::corollary_odd(g, n).unwrap();
            let h = pda_core::constructions::h_array(n, &pda_core::constructions::label_range(0, n * (n - 1) / 2)).unwrap();
            let (g, n64) = (g as u64, n as u64);
            let fam = ParamTuple::new(g, g, g - 2, g - 1, 2, g).unwrap();
            let predicted = lifted_params(&params(&h).unwrap(), &fam, 4, 1).unwrap();
            assert_eq!(params(&p).unwrap(), predicted, "g={g} n={n64}");
        }
    }
    let base: Pda = "* 0\n0 *".parse().unwrap();
    let p: Pda = "0 *\n* 0".parse().unwrap();
    let out = basic_lift(&base, &p).unwrap();
    let fam = ParamTuple::new(2, 2, 1, 2, 2, 1).unwrap();
    let predicted = lifted_params(&params(&base).unwrap(), &fam, 1, 0).unwrap();
    assert_eq!(params(&out.result).unwrap(), predicted);
    let _ = all_star(1, 1);
}
