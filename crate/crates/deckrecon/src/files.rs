//! The on-disk text formats: one stable key/value document shape shared by
//! every input and output.
//!
//! A document is a sequence of lines, each a key followed by
//! whitespace-separated values. Blank lines and lines starting with `#` are
//! ignored on input. Every document carries `version 1` first and a `kind`
//! line identifying the payload.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::deck::{Multiset, Subset};
use crate::error::{Error, Result};

pub const DOC_VERSION: u32 = 1;

/// A multiset payload: dimension and the full count vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetFile {
    pub n: u32,
    pub counts: Vec<u64>,
}

impl MultisetFile {
    pub fn from_multiset(f: &Multiset) -> Self {
        Self {
            n: f.dim(),
            counts: f.counts().to_vec(),
        }
    }

    pub fn to_multiset(&self) -> Result<Multiset> {
        Multiset::new(self.n, self.counts.clone())
    }

    pub fn emit(&self) -> String {
        let mut doc = DocWriter::new("multiset");
        doc.push_value("n", self.n);
        doc.push_list("counts", self.counts.iter());
        doc.finish()
    }

    pub fn parse(text: &str) -> Result<Self> {
        match parse_input(text)? {
            InputFile::Multiset(m) => Ok(m),
            InputFile::Set(_) => Err(Error::InvalidArgument(
                "expected a multiset document, found kind set".into(),
            )),
        }
    }
}

/// A set payload: dimension and the distinct elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFile {
    pub n: u32,
    pub elements: Vec<u32>,
}

impl SetFile {
    pub fn from_subset(s: &Subset) -> Self {
        Self {
            n: s.dim(),
            elements: s.members().to_vec(),
        }
    }

    pub fn to_subset(&self) -> Result<Subset> {
        Subset::new(self.n, self.elements.clone())
    }

    pub fn emit(&self) -> String {
        let mut doc = DocWriter::new("set");
        doc.push_value("n", self.n);
        doc.push_list("elements", self.elements.iter());
        doc.finish()
    }

    pub fn parse(text: &str) -> Result<Self> {
        match parse_input(text)? {
            InputFile::Set(s) => Ok(s),
            InputFile::Multiset(_) => Err(Error::InvalidArgument(
                "expected a set document, found kind multiset".into(),
            )),
        }
    }
}

/// Either accepted input payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFile {
    Multiset(MultisetFile),
    Set(SetFile),
}

impl InputFile {
    /// Any input viewed as a multiset; sets become 0/1 indicators.
    pub fn to_multiset(&self) -> Result<Multiset> {
        match self {
            InputFile::Multiset(m) => m.to_multiset(),
            InputFile::Set(s) => Ok(s.to_subset()?.indicator()),
        }
    }
}

/// Parses a multiset or set document, dispatching on the `kind` line.
pub fn parse_input(text: &str) -> Result<InputFile> {
    let fields = parse_fields(text)?;
    let version: u32 = parse_scalar(&fields, "version")?;
    if version != DOC_VERSION {
        return Err(Error::InvalidArgument(format!(
            "unsupported document version {version}, expected {DOC_VERSION}"
        )));
    }
    let kind = fields
        .get("kind")
        .and_then(|vals| vals.first())
        .ok_or_else(|| Error::InvalidArgument("missing kind line".into()))?;
    let n: u32 = parse_scalar(&fields, "n")?;
    match kind.as_str() {
        "multiset" => {
            let counts = parse_list(&fields, "counts")?;
            let file = MultisetFile { n, counts };
            file.to_multiset()?; // validate eagerly
            Ok(InputFile::Multiset(file))
        }
        "set" => {
            let elements = parse_list(&fields, "elements")?;
            let file = SetFile { n, elements };
            file.to_subset()?;
            Ok(InputFile::Set(file))
        }
        other => Err(Error::InvalidArgument(format!(
            "unsupported document kind '{other}'"
        ))),
    }
}

fn parse_fields(text: &str) -> Result<BTreeMap<String, Vec<String>>> {
    let mut fields = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace().map(str::to_string);
        let key = tokens.next().expect("non-empty line has a first token");
        let values: Vec<String> = tokens.collect();
        if fields.insert(key.clone(), values).is_some() {
            return Err(Error::InvalidArgument(format!(
                "duplicate key '{key}' on line {}",
                lineno + 1
            )));
        }
    }
    Ok(fields)
}

fn parse_scalar<T: std::str::FromStr>(
    fields: &BTreeMap<String, Vec<String>>,
    key: &str,
) -> Result<T> {
    let values = fields
        .get(key)
        .ok_or_else(|| Error::InvalidArgument(format!("missing {key} line")))?;
    if values.len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "expected a single value for '{key}'"
        )));
    }
    values[0]
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("malformed value for '{key}'")))
}

fn parse_list<T: std::str::FromStr>(
    fields: &BTreeMap<String, Vec<String>>,
    key: &str,
) -> Result<Vec<T>> {
    let values = fields
        .get(key)
        .ok_or_else(|| Error::InvalidArgument(format!("missing {key} line")))?;
    values
        .iter()
        .map(|v| {
            v.parse()
                .map_err(|_| Error::InvalidArgument(format!("malformed value in '{key}'")))
        })
        .collect()
}

/// Incremental writer for output documents. Values are always written in a
/// fixed order so outputs can be compared byte for byte.
pub(crate) struct DocWriter {
    buf: String,
}

impl DocWriter {
    pub(crate) fn new(kind: &str) -> Self {
        let mut buf = String::new();
        writeln!(buf, "version {DOC_VERSION}").unwrap();
        writeln!(buf, "kind {kind}").unwrap();
        Self { buf }
    }

    pub(crate) fn push_value(&mut self, key: &str, value: impl std::fmt::Display) {
        writeln!(self.buf, "{key} {value}").unwrap();
    }

    pub(crate) fn push_list<T: std::fmt::Display>(
        &mut self,
        key: &str,
        values: impl IntoIterator<Item = T>,
    ) {
        self.buf.push_str(key);
        for v in values {
            write!(self.buf, " {v}").unwrap();
        }
        self.buf.push('\n');
    }

    pub(crate) fn finish(self) -> String {
        self.buf
    }
}
