//! Repetitiveness measures read off the built structures, and their growth
//! over text prefixes.

use crate::cdawg::Cdawg;
use crate::error::{Error, Result};
use crate::lz77::LzFactorization;
use crate::oracles::{bwt_from_suffix_array, SuffixArrayBundle};
use crate::rlbwt::RunLengthBwt;
use crate::textio::Text;

pub use crate::oracles::MeasureReport;

/// `(|M|, e, r, z)` of one side. The CDAWG has one node per maximal repeat
/// plus the sink. For `n = 1` the source stands for the empty string, which
/// is not right-maximal there, so it is not counted.
fn one_side(t: &Text) -> (usize, usize, usize, usize) {
    let b = SuffixArrayBundle::build(t);
    let r = RunLengthBwt::from_bwt(&bwt_from_suffix_array(t, &b)).run_count();
    let z = LzFactorization::factorize_with(t, &b).z();
    if t.len() == 1 {
        return (0, 0, r, z);
    }
    let g = Cdawg::build(t);
    (g.node_count() - 1, g.arc_count(), r, z)
}

pub fn measure(t: &Text) -> MeasureReport {
    let (m, e, r, z) = one_side(t);
    let (_, e_left, r_rev, z_rev) = one_side(&t.reversed());
    MeasureReport {
        n: t.len(),
        sigma: t.sigma(),
        n_maximal_repeats: m,
        e,
        e_left,
        r,
        r_rev,
        z,
        z_rev,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureCsvRow {
    /// Payload symbols in the prefix, terminator excluded.
    pub prefix_length: usize,
    pub n_maximal_repeats: usize,
    pub e: usize,
    pub e_left: usize,
    pub r: usize,
    pub r_rev: usize,
    pub z: usize,
    pub z_rev: usize,
}

impl MeasureCsvRow {
    pub const HEADER: [&'static str; 8] = ["prefixLength", "nMaximalRepeats", "e", "eLeft", "r", "rRev", "z", "zRev"];

    pub fn from_report(prefix_length: usize, m: &MeasureReport) -> Self {
        MeasureCsvRow {
            prefix_length,
            n_maximal_repeats: m.n_maximal_repeats,
            e: m.e,
            e_left: m.e_left,
            r: m.r,
            r_rev: m.r_rev,
            z: m.z,
            z_rev: m.z_rev,
        }
    }

    pub fn values(&self) -> [usize; 8] {
        [
            self.prefix_length,
            self.n_maximal_repeats,
            self.e,
            self.e_left,
            self.r,
            self.r_rev,
            self.z,
            self.z_rev,
        ]
    }
}

/// `k` prefix lengths evenly spread over `1..=len`, ending at `len`.
pub fn even_samples(len: usize, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=k).map(|i| (i * len).div_ceil(k)).filter(|&p| p > 0).collect();
    out.dedup();
    out
}

/// One row per prefix length. Lengths must be increasing and within the
/// payload.
pub fn measure_prefixes(t: &Text, lengths: &[usize]) -> Result<Vec<MeasureCsvRow>> {
    let len = t.len() - 1;
    if lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Format("sample positions must be increasing".into()));
    }
    lengths
        .iter()
        .map(|&p| {
            if p == 0 || p > len {
                return Err(Error::Format(format!("sample position {p} outside 1..={len}")));
            }
            let prefix = if p == len { t.clone() } else { t.prefix(p)? };
            Ok(MeasureCsvRow::from_report(p, &measure(&prefix)))
        })
        .collect()
}

/// Each column divided by its value in the first row.
pub fn normalize(rows: &[MeasureCsvRow]) -> Vec<[f64; 8]> {
    let Some(first) = rows.first().map(|r| r.values()) else {
        return Vec::new();
    };
    rows.iter()
        .map(|r| {
            let v = r.values();
            std::array::from_fn(|k| if first[k] == 0 { 0.0 } else { v[k] as f64 / first[k] as f64 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::block_family;
    use crate::oracles::naive_measures;
    use crate::testutil::{random_text, rng};

    #[test]
    fn small_examples() {
        let m = measure(&Text::from_plain(b"0000").unwrap());
        assert_eq!((m.r, m.z, m.n_maximal_repeats, m.e), (2, 3, 4, 8));
        let m = measure(&Text::from_plain(&block_family(3)).unwrap());
        assert_eq!((m.z, m.n_maximal_repeats), (6, 6));
        assert_eq!(measure(&Text::terminator_only()), naive_measures(&Text::terminator_only()));
    }

    #[test]
    fn agrees_with_oracle() {
        let mut rng = rng(97);
        for case in 0..150 {
            let t = random_text(&mut rng, 120, 1 + case % 4);
            assert_eq!(measure(&t), naive_measures(&t));
        }
    }

    #[test]
    fn sampling() {
        assert_eq!(even_samples(10, 2), vec![5, 10]);
        assert_eq!(even_samples(3, 5), vec![1, 2, 3]);
        let t = Text::from_plain(b"abracadabra").unwrap();
        let rows = measure_prefixes(&t, &[4, 11]).unwrap();
        assert_eq!(rows[0].prefix_length, 4);
        assert_eq!(rows[1].z, measure(&t).z);
        assert!(measure_prefixes(&t, &[5, 5]).is_err());
        assert!(measure_prefixes(&t, &[12]).is_err());
        let norm = normalize(&rows);
        assert_eq!(norm[0], [1.0; 8]);
        assert!((norm[1][0] - 11.0 / 4.0).abs() < 1e-12);
    }
}
