//! Engine dispatch over a loaded index file.
//!
//! Every file carries a `META` section with the engine name and the byte
//! to symbol table, followed by the engine's own sections.

use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use repetita::cdawgindex::CdawgRlbwtIndex;
use repetita::cdawgst::CdawgSuffixTree;
use repetita::lzindex::{LzRlbwtIndex, Occurrences};
use repetita::serial::{IndexFile, Reader, Writer};
use repetita::textio::SymbolMap;
use repetita::{Error, Symbol, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    #[value(name = "lz-rlbwt")]
    LzRlbwt,
    Cdawg,
    St,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::LzRlbwt => "lz-rlbwt",
            Engine::Cdawg => "cdawg",
            Engine::St => "st",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        [Engine::LzRlbwt, Engine::Cdawg, Engine::St].into_iter().find(|e| e.name() == s)
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub enum Index {
    LzRlbwt(LzRlbwtIndex),
    Cdawg(CdawgRlbwtIndex),
    St(CdawgSuffixTree),
}

pub struct Loaded {
    pub map: SymbolMap,
    pub index: Index,
}

pub fn build(t: &Text, engine: Engine) -> IndexFile {
    let mut f = IndexFile::new();
    let mut w = Writer::default();
    w.put_bytes(engine.name().as_bytes());
    f.push("META/engine", w.into_inner());
    f.put("META/symbols", t.symbol_map());
    match engine {
        Engine::LzRlbwt => LzRlbwtIndex::build(t).save(&mut f),
        Engine::Cdawg => CdawgRlbwtIndex::build(t).save(&mut f),
        Engine::St => CdawgSuffixTree::build(t).save(&mut f),
    }
    f
}

pub fn load(path: &Path) -> repetita::Result<Loaded> {
    let f = IndexFile::load(path)?;
    let body = f.get("META/engine").ok_or_else(|| Error::MissingSection("META/engine".into()))?;
    let mut r = Reader::new(body);
    let name = r.get_bytes()?;
    r.finish()?;
    let name = String::from_utf8_lossy(&name).into_owned();
    let engine = Engine::from_name(&name).ok_or_else(|| Error::Format(format!("unknown engine {name:?}")))?;
    let map: SymbolMap = f.take("META/symbols")?;
    let index = match engine {
        Engine::LzRlbwt => Index::LzRlbwt(LzRlbwtIndex::load(&f)?),
        Engine::Cdawg => Index::Cdawg(CdawgRlbwtIndex::load(&f)?),
        Engine::St => Index::St(CdawgSuffixTree::load(&f)?),
    };
    Ok(Loaded { map, index })
}

impl Index {
    pub fn engine(&self) -> Engine {
        match self {
            Index::LzRlbwt(_) => Engine::LzRlbwt,
            Index::Cdawg(_) => Engine::Cdawg,
            Index::St(_) => Engine::St,
        }
    }

    pub fn count(&self, p: &[Symbol]) -> usize {
        match self {
            Index::LzRlbwt(ix) => ix.count(p),
            Index::Cdawg(ix) => ix.count(p),
            Index::St(ix) => ix.count(p),
        }
    }

    /// Occurrences, split into primary and secondary for the LZ engine.
    /// Other engines report everything as primary.
    pub fn locate(&self, p: &[Symbol]) -> Occurrences {
        match self {
            Index::LzRlbwt(ix) => ix.locate(p),
            Index::Cdawg(ix) => Occurrences {
                primary: ix.locate(p),
                secondary: Vec::new(),
            },
            Index::St(ix) => Occurrences {
                primary: ix.locate(p),
                secondary: Vec::new(),
            },
        }
    }
}
