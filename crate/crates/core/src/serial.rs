//! Index file container.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic      5 bytes  "CRADS"
//! version    u32
//! count      u32      number of sections
//! table      count × { name_len u16, name bytes, offset u64, length u64, crc32 u32 }
//! payload    section bodies, concatenated in table order
//! ```
//!
//! Offsets are relative to the start of the payload. Section bodies are
//! written with [`Writer`], which encodes every integer as a fixed-width
//! `u64` and every sequence as its length followed by its elements.

use std::io::{Cursor, Read, Write};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 5] = b"CRADS";
pub const FORMAT_VERSION: u32 = 1;

/// Structures that can be stored as a section body.
pub trait Persist: Sized {
    fn write(&self, w: &mut Writer);
    fn read(r: &mut Reader) -> Result<Self>;

    fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::default();
        self.write(&mut w);
        w.into_inner()
    }

    fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let value = Self::read(&mut r)?;
        r.finish()?;
        Ok(value)
    }
}

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn put_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn put_usize(&mut self, v: usize) {
        self.buf.write_u64::<LittleEndian>(v as u64).unwrap();
    }

    pub fn put_usizes(&mut self, v: &[usize]) {
        self.put_usize(v.len());
        for &x in v {
            self.put_usize(x);
        }
    }

    pub fn put_bytes(&mut self, v: &[u8]) {
        self.put_usize(v.len());
        self.buf.extend_from_slice(v);
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.buf
    }
}

pub struct Reader<'a> {
    cur: Cursor<&'a [u8]>,
}

impl<'a> Reader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Reader { cur: Cursor::new(bytes) }
    }

    fn remaining(&self) -> usize {
        self.cur.get_ref().len() - self.cur.position() as usize
    }

    pub fn get_u8(&mut self) -> Result<u8> {
        self.cur.read_u8().map_err(truncated)
    }

    pub fn get_usize(&mut self) -> Result<usize> {
        let v = self.cur.read_u64::<LittleEndian>().map_err(truncated)?;
        usize::try_from(v).map_err(|_| Error::Format("integer overflows usize".into()))
    }

    fn get_len(&mut self, width: usize) -> Result<usize> {
        let len = self.get_usize()?;
        if len.saturating_mul(width) > self.remaining() {
            return Err(Error::Format("sequence length exceeds section".into()));
        }
        Ok(len)
    }

    pub fn get_usizes(&mut self) -> Result<Vec<usize>> {
        let len = self.get_len(8)?;
        (0..len).map(|_| self.get_usize()).collect()
    }

    pub fn get_bytes(&mut self) -> Result<Vec<u8>> {
        let len = self.get_len(1)?;
        let mut out = vec![0; len];
        self.cur.read_exact(&mut out).map_err(truncated)?;
        Ok(out)
    }

    pub fn finish(self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Format("trailing bytes in section".into()));
        }
        Ok(())
    }
}

fn truncated(_: std::io::Error) -> Error {
    Error::Format("section truncated".into())
}

/// Named, checksummed sections.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexFile {
    sections: Vec<(String, Vec<u8>)>,
}

impl IndexFile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, body: Vec<u8>) {
        assert!(self.get(name).is_none(), "duplicate section {name}");
        self.sections.push((name.to_string(), body));
    }

    pub fn put<T: Persist>(&mut self, name: &str, value: &T) {
        self.push(name, value.to_bytes());
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.sections.iter().find(|(n, _)| n == name).map(|(_, b)| b.as_slice())
    }

    pub fn take<T: Persist>(&self, name: &str) -> Result<T> {
        let body = self.get(name).ok_or_else(|| Error::MissingSection(name.to_string()))?;
        T::from_bytes(body)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sections.iter().map(|(n, _)| n.as_str())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.write_u32::<LittleEndian>(FORMAT_VERSION).unwrap();
        out.write_u32::<LittleEndian>(self.sections.len() as u32).unwrap();
        let mut offset = 0u64;
        for (name, body) in &self.sections {
            out.write_u16::<LittleEndian>(name.len() as u16).unwrap();
            out.extend_from_slice(name.as_bytes());
            out.write_u64::<LittleEndian>(offset).unwrap();
            out.write_u64::<LittleEndian>(body.len() as u64).unwrap();
            out.write_u32::<LittleEndian>(crc32fast::hash(body)).unwrap();
            offset += body.len() as u64;
        }
        for (_, body) in &self.sections {
            out.extend_from_slice(body);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = Cursor::new(bytes);
        let mut magic = [0u8; 5];
        cur.read_exact(&mut magic).map_err(truncated)?;
        if &magic != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = cur.read_u32::<LittleEndian>().map_err(truncated)?;
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {version}")));
        }
        let count = cur.read_u32::<LittleEndian>().map_err(truncated)?;
        let mut table = Vec::new();
        for _ in 0..count {
            let len = cur.read_u16::<LittleEndian>().map_err(truncated)? as usize;
            let mut name = vec![0u8; len];
            cur.read_exact(&mut name).map_err(truncated)?;
            let name = String::from_utf8(name).map_err(|_| Error::Format("section name is not UTF-8".into()))?;
            let offset = cur.read_u64::<LittleEndian>().map_err(truncated)? as usize;
            let length = cur.read_u64::<LittleEndian>().map_err(truncated)? as usize;
            let crc = cur.read_u32::<LittleEndian>().map_err(truncated)?;
            table.push((name, offset, length, crc));
        }
        let payload = &bytes[cur.position() as usize..];
        let mut file = IndexFile::new();
        for (name, offset, length, crc) in table {
            let body = offset
                .checked_add(length)
                .and_then(|end| payload.get(offset..end))
                .ok_or_else(|| Error::Format(format!("section {name} out of bounds")))?;
            if crc32fast::hash(body) != crc {
                return Err(Error::Checksum(name));
            }
            if file.get(&name).is_some() {
                return Err(Error::Format(format!("duplicate section {name}")));
            }
            file.sections.push((name, body.to_vec()));
        }
        Ok(file)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
