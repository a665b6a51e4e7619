//! One coded-caching round driven by a PDA: placement, XOR delivery and
//! per-user decoding over byte files.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Rational;
use crate::pda::{Cell, Pda};

/// `N` files of `F` bytes, each split into `f` zero-padded subfiles of
/// `⌈F/f⌉` bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Library {
    file_size: usize,
    subfiles: Vec<Vec<Vec<u8>>>,
}

impl Library {
    pub fn new(files: &[Vec<u8>], subpacketization: usize) -> Result<Self> {
        if subpacketization == 0 {
            return Err(Error::BadParameter("f must be positive".into()));
        }
        let file_size = files.first().map_or(0, Vec::len);
        if let Some(i) = files.iter().position(|w| w.len() != file_size) {
            return Err(Error::BadParameter(format!(
                "file {i} has {} bytes, expected {file_size}",
                files[i].len()
            )));
        }
        let len = file_size.div_ceil(subpacketization);
        let subfiles = files
            .iter()
            .map(|w| {
                (0..subpacketization)
                    .map(|j| {
                        let mut part = vec![0u8; len];
                        let lo = (j * len).min(file_size);
                        let hi = ((j + 1) * len).min(file_size);
                        part[..hi - lo].copy_from_slice(&w[lo..hi]);
                        part
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            file_size,
            subfiles,
        })
    }

    /// `files` random files of `size` bytes.
    pub fn random(files: usize, size: usize, subpacketization: usize, rng: &mut impl RngCore) -> Result<Self> {
        let data: Vec<Vec<u8>> = (0..files)
            .map(|_| {
                let mut w = vec![0u8; size];
                rng.fill_bytes(&mut w);
                w
            })
            .collect();
        Self::new(&data, subpacketization)
    }

    pub fn files(&self) -> usize {
        self.subfiles.len()
    }

    pub fn file_size(&self) -> usize {
        self.file_size
    }

    pub fn subpacketization(&self) -> usize {
        self.subfiles.first().map_or(0, Vec::len)
    }

    pub fn subfile_len(&self) -> usize {
        self.file_size.div_ceil(self.subpacketization().max(1))
    }

    pub fn subfile(&self, file: usize, row: usize) -> &[u8] {
        &self.subfiles[file][row]
    }

    /// File `i` with padding removed.
    pub fn file(&self, i: usize) -> Vec<u8> {
        let mut w = self.subfiles[i].concat();
        w.truncate(self.file_size);
        w
    }
}

/// Subfiles stored by each user, keyed by `(file, row)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheContents {
    pub users: Vec<BTreeMap<(usize, usize), Vec<u8>>>,
}

impl CacheContents {
    pub fn bytes_per_user(&self) -> Vec<usize> {
        self.users
            .iter()
            .map(|c| c.values().map(Vec::len).sum())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub label: u32,
    pub payload: Vec<u8>,
}

fn check_rows(p: &Pda, lib: &Library) -> Result<()> {
    if lib.subpacketization() != p.rows() {
        return Err(Error::SubpacketizationMismatch {
            pda: p.rows(),
            library: lib.subpacketization(),
        });
    }
    Ok(())
}

fn check_demands(p: &Pda, demands: &[usize], files: usize) -> Result<()> {
    if demands.len() != p.cols() {
        return Err(Error::BadParameter(format!(
            "{} demands for {} users",
            demands.len(),
            p.cols()
        )));
    }
    match demands.iter().position(|&d| d >= files) {
        Some(user) => Err(Error::DemandOutOfRange {
            user,
            demand: demands[user],
            files,
        }),
        None => Ok(()),
    }
}

/// User `k` stores every subfile `W_{i,j}` with a star at `(j, k)`.
pub fn place(p: &Pda, lib: &Library) -> Result<CacheContents> {
    check_rows(p, lib)?;
    let users = (0..p.cols())
        .map(|k| {
            (0..p.rows())
                .filter(|&j| p.is_star(j, k))
                .flat_map(|j| (0..lib.files()).map(move |i| ((i, j), lib.subfile(i, j).to_vec())))
                .collect()
        })
        .collect();
    Ok(CacheContents { users })
}

fn xor_into(acc: &mut [u8], other: &[u8]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= b;
    }
}

/// One XOR per label, in ascending label order.
pub fn deliver(p: &Pda, demands: &[usize], lib: &Library) -> Result<Vec<Transmission>> {
    check_rows(p, lib)?;
    check_demands(p, demands, lib.files())?;
    Ok(p.label_positions()
        .into_iter()
        .map(|(label, cells)| {
            let mut payload = vec![0u8; lib.subfile_len()];
            for (j, k) in cells {
                xor_into(&mut payload, lib.subfile(demands[k], j));
            }
            Transmission { label, payload }
        })
        .collect())
}

/// Rebuilds the file demanded by `user` from its cache and the broadcast.
pub fn decode(
    p: &Pda,
    user: usize,
    demands: &[usize],
    cache: &BTreeMap<(usize, usize), Vec<u8>>,
    transmissions: &[Transmission],
    file_size: usize,
) -> Result<Vec<u8>> {
    decode_with(p, &p.label_positions(), user, demands, cache, transmissions, file_size)
}

fn decode_with(
    p: &Pda,
    positions: &BTreeMap<u32, Vec<(usize, usize)>>,
    user: usize,
    demands: &[usize],
    cache: &BTreeMap<(usize, usize), Vec<u8>>,
    transmissions: &[Transmission],
    file_size: usize,
) -> Result<Vec<u8>> {
    let want = demands[user];
    let mut out = Vec::with_capacity(file_size);
    for j in 0..p.rows() {
        match p.get(j, user) {
            Cell::Star => {
                let part = cache.get(&(want, j)).ok_or(Error::MissingPeerSubfile {
                    user,
                    label: u32::MAX,
                    file: want,
                    row: j,
                })?;
                out.extend_from_slice(part);
            }
            Cell::Label(s) => {
                let x = transmissions
                    .binary_search_by_key(&s, |t| t.label)
                    .map(|i| &transmissions[i])
                    .map_err(|_| Error::BadParameter(format!("no transmission for label {s}")))?;
                let mut part = x.payload.clone();
                for &(jj, kk) in &positions[&s] {
                    if (jj, kk) == (j, user) {
                        continue;
                    }
                    let peer = cache.get(&(demands[kk], jj)).ok_or(Error::MissingPeerSubfile {
                        user,
                        label: s,
                        file: demands[kk],
                        row: jj,
                    })?;
                    xor_into(&mut part, peer);
                }
                out.extend_from_slice(&part);
            }
        }
    }
    out.truncate(file_size);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Demands {
    Given(Vec<usize>),
    /// Uniform demands drawn from a seeded generator.
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub demands: Vec<usize>,
    pub decode_ok: Vec<bool>,
    /// Why a user failed, if it did.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub decode_errors: Vec<String>,
    pub transmissions: usize,
    #[serde(serialize_with = "crate::params::ser_ratio")]
    pub rate: Rational,
    pub subpacketization: usize,
    pub subfile_bytes: usize,
    pub bytes_sent: usize,
    pub cached_bytes_per_user: Vec<usize>,
}

impl RunReport {
    pub fn all_decoded(&self) -> bool {
        self.decode_ok.iter().all(|&ok| ok)
    }
}

pub fn random_demands(users: usize, files: usize, rng: &mut impl Rng) -> Vec<usize> {
    (0..users).map(|_| rng.gen_range(0..files)).collect()
}

/// Place, deliver and decode for every user. The library contents come
/// from `library_seed`. Users that cannot decode are reported, not raised.
pub fn run(p: &Pda, files: usize, file_size: usize, demands: &Demands, library_seed: u64) -> Result<RunReport> {
    if files == 0 {
        return Err(Error::BadParameter("need at least one file".into()));
    }
    let demands = match demands {
        Demands::Given(d) => d.clone(),
        Demands::Seeded(seed) => random_demands(p.cols(), files, &mut ChaCha8Rng::seed_from_u64(*seed)),
    };
    let lib = Library::random(files, file_size, p.rows(), &mut ChaCha8Rng::seed_from_u64(library_seed))?;
    let cache = place(p, &lib)?;
    let sent = deliver(p, &demands, &lib)?;
    let positions = p.label_positions();

    let mut decode_ok = Vec::with_capacity(p.cols());
    let mut decode_errors = Vec::new();
    for k in 0..p.cols() {
        match decode_with(p, &positions, k, &demands, &cache.users[k], &sent, file_size) {
            Ok(w) if w == lib.file(demands[k]) => decode_ok.push(true),
            Ok(_) => {
                decode_ok.push(false);
                decode_errors.push(format!("user {k} decoded the wrong bytes"));
            }
            Err(e) => {
                decode_ok.push(false);
                decode_errors.push(e.to_string());
            }
        }
    }
    Ok(RunReport {
        demands,
        decode_ok,
        decode_errors,
        transmissions: sent.len(),
        rate: Rational::new(sent.len() as u64, p.rows() as u64),
        subpacketization: p.rows(),
        subfile_bytes: lib.subfile_len(),
        bytes_sent: sent.iter().map(|t| t.payload.len()).sum(),
        cached_bytes_per_user: cache.bytes_per_user(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{all_star, filled, label_range, mn};

    fn m21() -> Pda {
        mn(2, 1, &[0]).unwrap()
    }

    #[test]
    fn mn_two_one_placement() {
        let lib = Library::new(&[vec![1, 2], vec![3, 4]], 2).unwrap();
        let cache = place(&m21(), &lib).unwrap();
        let keys: Vec<Vec<(usize, usize)>> = cache.users.iter().map(|c| c.keys().copied().collect()).collect();
        assert_eq!(keys, [vec![(0, 0), (1, 0)], vec![(0, 1), (1, 1)]]);
    }

    #[test]
    fn mn_two_one_delivery_and_decode() {
        let lib = Library::new(&[vec![1, 2], vec![3, 4]], 2).unwrap();
        let p = m21();
        let sent = deliver(&p, &[0, 1], &lib).unwrap();
        // W_{0,1} xor W_{1,0}
        assert_eq!(sent, [Transmission { label: 0, payload: vec![2 ^ 3] }]);
        let cache = place(&p, &lib).unwrap();
        for (k, want) in [(0, vec![1, 2]), (1, vec![3, 4])] {
            let w = decode(&p, k, &[0, 1], &cache.users[k], &sent, 2).unwrap();
            assert_eq!(w, want);
        }
    }

    #[test]
    fn padding_and_extremes() {
        let lib = Library::new(&[vec![9; 5]], 2).unwrap();
        assert_eq!(lib.subfile(0, 1), &[9, 9, 0]);
        assert_eq!(lib.file(0), vec![9; 5]);

        let full = run(&all_star(1, 3).unwrap(), 2, 10, &Demands::Seeded(1), 0).unwrap();
        assert!(full.all_decoded());
        assert_eq!((full.transmissions, full.bytes_sent), (0, 0));

        let empty = run(&filled(2, 3, &label_range(0, 6)).unwrap(), 3, 10, &Demands::Seeded(1), 0).unwrap();
        assert!(empty.all_decoded());
        assert_eq!(empty.cached_bytes_per_user, [0, 0, 0]);
    }

    #[test]
    fn errors() {
        let lib = Library::new(&[vec![0; 4]], 3).unwrap();
        assert!(matches!(place(&m21(), &lib), Err(Error::SubpacketizationMismatch { .. })));
        let lib = Library::new(&[vec![0; 4]], 2).unwrap();
        assert_eq!(
            deliver(&m21(), &[0, 1], &lib),
            Err(Error::DemandOutOfRange {
                user: 1,
                demand: 1,
                files: 1
            })
        );
    }

    #[test]
    fn broken_array_fails_to_decode() {
        let p: Pda = "0 0\n* *".parse().unwrap();
        let r = run(&p, 2, 8, &Demands::Given(vec![0, 1]), 3).unwrap();
        assert!(!r.all_decoded());
        assert!(r.decode_errors[0].contains("cannot decode"));
    }
}
