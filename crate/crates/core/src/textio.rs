//! Input loading and alphabet remapping.
//!
//! Every structure in the crate indexes a [`Text`]: a sequence over the
//! integer alphabet `[1..sigma]` followed by a single terminator `0`. Raw
//! bytes are remapped order-preservingly so that the smallest byte present
//! becomes symbol 1. Positions are 1-based throughout the public API.

use crate::error::{Error, Result};
use crate::serial::{Persist, Reader, Writer};

/// A remapped symbol. `0` is the terminator.
pub type Symbol = u8;

/// The terminator symbol, lexicographically smallest.
pub const TERMINATOR: Symbol = 0;

/// Byte that may not appear in raw input; it would collide with the terminator.
pub const SENTINEL_BYTE: u8 = 0;

/// Original-byte <-> remapped-symbol table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMap {
    to_symbol: [Option<Symbol>; 256],
    to_byte: Vec<u8>,
}

impl SymbolMap {
    fn from_bytes(bytes: &[u8]) -> Self {
        let mut present = [false; 256];
        for &b in bytes {
            present[b as usize] = true;
        }
        let mut to_symbol = [None; 256];
        // index 0 of to_byte stands for the terminator
        let mut to_byte = vec![SENTINEL_BYTE];
        for b in 0..256usize {
            if present[b] {
                to_symbol[b] = Some(to_byte.len() as Symbol);
                to_byte.push(b as u8);
            }
        }
        SymbolMap { to_symbol, to_byte }
    }

    /// Rebuilds a map from the ordered list of original bytes (symbol 1 first).
    pub fn from_sorted_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.windows(2).any(|w| w[0] >= w[1]) || bytes.contains(&SENTINEL_BYTE) {
            return Err(Error::Format("symbol table is not strictly increasing".into()));
        }
        Ok(Self::from_bytes(bytes))
    }

    pub fn symbol(&self, byte: u8) -> Option<Symbol> {
        self.to_symbol[byte as usize]
    }

    /// Original byte of a non-terminator symbol.
    pub fn byte(&self, symbol: Symbol) -> Option<u8> {
        if symbol == TERMINATOR {
            return None;
        }
        self.to_byte.get(symbol as usize).copied()
    }

    /// Original bytes in symbol order, terminator excluded.
    pub fn bytes(&self) -> &[u8] {
        &self.to_byte[1..]
    }

    /// Maps pattern bytes to symbols, failing on the first unmapped byte.
    pub fn encode(&self, bytes: &[u8]) -> Result<Vec<Symbol>> {
        bytes
            .iter()
            .enumerate()
            .map(|(i, &b)| self.symbol(b).ok_or(Error::UnmappedByte { byte: b, position: i + 1 }))
            .collect()
    }
}

impl Persist for SymbolMap {
    fn write(&self, w: &mut Writer) {
        w.put_bytes(self.bytes());
    }

    fn read(r: &mut Reader) -> Result<Self> {
        Self::from_sorted_bytes(&r.get_bytes()?)
    }
}

/// A terminated text over `[1..sigma]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    data: Vec<Symbol>,
    sigma: usize,
    map: SymbolMap,
}

impl Text {
    /// Remaps raw bytes and appends the terminator.
    pub fn from_plain(bytes: &[u8]) -> Result<Self> {
        if bytes.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(pos) = bytes.iter().position(|&b| b == SENTINEL_BYTE) {
            return Err(Error::ReservedByte { position: pos + 1 });
        }
        let map = SymbolMap::from_bytes(bytes);
        let mut data: Vec<Symbol> = bytes.iter().map(|&b| map.to_symbol[b as usize].unwrap()).collect();
        data.push(TERMINATOR);
        let sigma = map.to_byte.len() - 1;
        Ok(Text { data, sigma, map })
    }

    /// Concatenates all FASTA record sequences in file order.
    pub fn from_fasta(bytes: &[u8]) -> Result<Self> {
        let mut seq = Vec::with_capacity(bytes.len());
        let mut seen_header = false;
        for (lineno, line) in bytes.split(|&b| b == b'\n').enumerate() {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            if line.first() == Some(&b'>') {
                seen_header = true;
                continue;
            }
            if line.is_empty() {
                continue;
            }
            if !seen_header {
                return Err(Error::Fasta { line: lineno + 1 });
            }
            seq.extend_from_slice(line);
        }
        Self::from_plain(&seq)
    }

    /// Cumulative sequence length at the end of each FASTA record, in file
    /// order. Records with no sequence are skipped.
    pub fn fasta_record_ends(bytes: &[u8]) -> Result<Vec<usize>> {
        let mut ends = Vec::new();
        let mut total = 0;
        let mut seen_header = false;
        for (lineno, line) in bytes.split(|&b| b == b'\n').enumerate() {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            if line.first() == Some(&b'>') {
                if seen_header && ends.last() != Some(&total) && total > 0 {
                    ends.push(total);
                }
                seen_header = true;
            } else if !line.is_empty() {
                if !seen_header {
                    return Err(Error::Fasta { line: lineno + 1 });
                }
                total += line.len();
            }
        }
        if total > 0 && ends.last() != Some(&total) {
            ends.push(total);
        }
        Ok(ends)
    }

    /// Builds a text from nonzero symbols, appending the terminator. Symbols
    /// that already form a dense range `1..=k` keep their values.
    pub fn from_symbols(symbols: &[Symbol]) -> Result<Self> {
        if symbols.contains(&TERMINATOR) {
            return Err(Error::ReservedByte {
                position: symbols.iter().position(|&s| s == TERMINATOR).unwrap() + 1,
            });
        }
        if symbols.is_empty() {
            return Ok(Text::terminator_only());
        }
        Self::from_plain(symbols)
    }

    /// The text consisting of the terminator alone (`n = 1`).
    pub fn terminator_only() -> Self {
        Text {
            data: vec![TERMINATOR],
            sigma: 0,
            map: SymbolMap::from_bytes(&[]),
        }
    }

    /// Length including the terminator.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct non-terminator symbols.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Symbol at 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> Symbol {
        self.data[i - 1]
    }

    /// All symbols, terminator last (0-based slice).
    pub fn symbols(&self) -> &[Symbol] {
        &self.data
    }

    /// Symbols without the terminator.
    pub fn payload(&self) -> &[Symbol] {
        &self.data[..self.data.len() - 1]
    }

    pub fn symbol_map(&self) -> &SymbolMap {
        &self.map
    }

    /// `rev(S)·#` where `self = S·#`.
    pub fn reversed(&self) -> Text {
        let mut data: Vec<Symbol> = self.payload().iter().rev().copied().collect();
        data.push(TERMINATOR);
        Text {
            data,
            sigma: self.sigma,
            map: self.map.clone(),
        }
    }

    /// Prefix `S[1..len]·#` of the payload, re-terminated. The alphabet is
    /// remapped for the prefix.
    pub fn prefix(&self, len: usize) -> Result<Text> {
        let bytes: Vec<u8> = self.payload()[..len].iter().map(|&c| self.map.to_byte[c as usize]).collect();
        Text::from_plain(&bytes)
    }

    /// Maps pattern bytes to symbols, failing on the first byte absent from the text.
    pub fn encode_pattern(&self, bytes: &[u8]) -> Result<Vec<Symbol>> {
        self.map.encode(bytes)
    }

    /// Original bytes of the payload.
    pub fn decode(&self) -> Vec<u8> {
        self.payload().iter().map(|&c| self.map.to_byte[c as usize]).collect()
    }
}
