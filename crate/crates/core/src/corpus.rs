//! Generators for the structured and random texts used by tests, the
//! self-test command and the measure experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::textio::Text;

/// Random payload of length `1..max_n` over the first `sigma` lowercase letters.
pub fn random_text<R: Rng>(rng: &mut R, max_n: usize, sigma: usize) -> Text {
    let len = rng.gen_range(1..max_n.max(2));
    Text::from_plain(&random_bytes(rng, len, sigma)).unwrap()
}

pub fn random_bytes<R: Rng>(rng: &mut R, len: usize, sigma: usize) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma as u8)).collect()
}

/// Half of the time a substring of `t`, otherwise random symbols from the
/// alphabet of `t`. Length in `1..=max_m`.
pub fn random_pattern<R: Rng>(rng: &mut R, t: &Text, max_m: usize) -> Vec<u8> {
    let payload = t.decode();
    let m = rng.gen_range(1..=max_m);
    if rng.gen_bool(0.5) && !payload.is_empty() {
        let m = m.min(payload.len());
        let start = rng.gen_range(0..=payload.len() - m);
        payload[start..start + m].to_vec()
    } else {
        let alphabet = t.symbol_map().bytes();
        (0..m).map(|_| *alphabet.choose(rng).unwrap()).collect()
    }
}

/// `0^1 1 0^2 1 ... 0^x 1`.
pub fn block_family(x: usize) -> Vec<u8> {
    let mut out = Vec::new();
    for i in 1..=x {
        out.extend(std::iter::repeat_n(b'0', i));
        out.push(b'1');
    }
    out
}

/// [`block_family`] followed by one more block `0^(x+1) 1`.
pub fn block_family_extended(x: usize) -> Vec<u8> {
    let mut out = block_family(x);
    out.extend(std::iter::repeat_n(b'0', x + 1));
    out.push(b'1');
    out
}

/// Linear binary de Bruijn sequence of order `k` (length `2^k + k - 1`).
pub fn de_bruijn(k: usize) -> Vec<u8> {
    fn db(t: usize, p: usize, k: usize, a: &mut Vec<u8>, seq: &mut Vec<u8>) {
        if t > k {
            if k.is_multiple_of(p) {
                seq.extend_from_slice(&a[1..=p]);
            }
        } else {
            a[t] = a[t - p];
            db(t + 1, p, k, a, seq);
            for j in a[t - p] + 1..2 {
                a[t] = j;
                db(t + 1, t, k, a, seq);
            }
        }
    }
    let mut a = vec![0u8; k + 1];
    let mut seq = Vec::new();
    db(1, 1, k, &mut a, &mut seq);
    let wrap: Vec<u8> = seq[..k - 1].to_vec();
    seq.extend(wrap);
    seq.into_iter().map(|b| b'0' + b).collect()
}

/// Fibonacci word `F_k` with `F_1 = 0`, `F_2 = 01`.
pub fn fibonacci(k: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"0".to_vec(), b"01".to_vec());
    if k == 1 {
        return a;
    }
    for _ in 2..k {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// Prefix of length `len` of the Thue-Morse sequence.
pub fn thue_morse(len: usize) -> Vec<u8> {
    (0..len).map(|i: usize| b'0' + (i.count_ones() % 2) as u8).collect()
}

/// `copies` independently mutated copies of a random DNA seed. Each position
/// of each copy is substituted with probability `rate`.
pub fn mutated_copies<R: Rng>(rng: &mut R, seed_len: usize, copies: usize, rate: f64) -> Vec<Vec<u8>> {
    const BASES: &[u8] = b"ACGT";
    let seed: Vec<u8> = (0..seed_len).map(|_| *BASES.choose(rng).unwrap()).collect();
    (0..copies)
        .map(|_| {
            seed.iter()
                .map(|&b| {
                    if rng.gen_bool(rate) {
                        **BASES.iter().filter(|&&x| x != b).collect::<Vec<_>>().choose(rng).unwrap()
                    } else {
                        b
                    }
                })
                .collect()
        })
        .collect()
}
