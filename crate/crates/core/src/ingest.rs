//! Plain-text catalog of multiperfect numbers: parsing, validation, and
//! idempotent persistence.
//!
//! Each record is one line,
//!
//! ```text
//! k=3; m=2^5 * 3 * 7; src=classical
//! ```
//!
//! where `m` is a factorization with strictly increasing prime bases and the
//! optional `src` field is free text running to the end of the line. Lines
//! that are blank or start with `#` are skipped. Every record is validated
//! on load: bases must be prime and increasing, exponents positive, and the
//! factored m must actually satisfy σ(m) = k·m — a catalog line that fails
//! arithmetic is a data error, not a warning.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{factorize, Factorization};
use crate::error::{Error, Result};
use crate::search::SearchHit;

/// A validated catalog entry: σ(m) = k·m with m held in factored form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiperfectRecord {
    m: Factorization,
    k: u64,
    source: Option<String>,
}

impl MultiperfectRecord {
    /// Builds a record, checking k ≥ 2 and σ(m) = k·m.
    pub fn new(m: Factorization, k: u64, source: Option<String>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Validation {
                line: None,
                msg: format!("k must be ≥ 2, got {k}"),
            });
        }
        let sigma = m.sigma();
        let want = BigUint::from(k) * m.value();
        if sigma != want {
            return Err(Error::Validation {
                line: None,
                msg: format!(
                    "σ(m) = {sigma} but k·m = {want}; record is not {k}-perfect"
                ),
            });
        }
        Ok(MultiperfectRecord { m, k, source })
    }

    pub fn m(&self) -> &Factorization {
        &self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    /// The integer value of m.
    pub fn value(&self) -> BigUint {
        self.m.value()
    }
}

impl fmt::Display for MultiperfectRecord {
    /// Renders the record in its on-disk line format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}; m={}", self.k, self.m)?;
        if let Some(src) = &self.source {
            write!(f, "; src={src}")?;
        }
        Ok(())
    }
}

/// A parsed catalog: validated records plus non-fatal notices.
#[derive(Debug, Clone, Default)]
pub struct Database {
    pub records: Vec<MultiperfectRecord>,
    /// Human-readable notices (e.g. duplicate lines that were collapsed).
    pub warnings: Vec<String>,
}

/// Byte cursor over a single record line, tracking 1-based columns for
/// error reports.
struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: &'a str) -> Self {
        Cursor {
            bytes: line.as_bytes(),
            pos: 0,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.bytes[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(Error::Parse {
                line: None,
                col: self.col(),
                msg: format!("expected `{token}`"),
            })
        }
    }

    fn parse_uint(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                line: None,
                col: self.col(),
                msg: "expected an unsigned integer".into(),
            });
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigUint>().expect("digits parse"))
    }

    fn rest(&self) -> &'a str {
        std::str::from_utf8(&self.bytes[self.pos..]).expect("line is utf-8")
    }

    fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }
}

/// Parses one record line (comments and blank lines are the caller's job).
pub fn parse_record(line: &str) -> Result<MultiperfectRecord> {
    let mut cur = Cursor::new(line.trim_end());
    cur.expect("k=")?;
    let k_big = cur.parse_uint()?;
    let k = k_big.try_into().map_err(|_| Error::Parse {
        line: None,
        col: cur.col(),
        msg: "k does not fit in 64 bits".into(),
    })?;
    cur.expect(";")?;
    cur.skip_ws();
    cur.expect("m=")?;

    let mut entries: Vec<(BigUint, u32)> = Vec::new();
    loop {
        cur.skip_ws();
        let base_col = cur.col();
        let base = cur.parse_uint()?;
        let exp = if cur.peek() == Some(b'^') {
            cur.pos += 1;
            let exp_col = cur.col();
            let e = cur.parse_uint()?;
            u32::try_from(&e).map_err(|_| Error::Parse {
                line: None,
                col: exp_col,
                msg: "exponent does not fit in 32 bits".into(),
            })?
        } else {
            1
        };
        if let Some((prev, _)) = entries.last() {
            if *prev >= base {
                return Err(Error::Parse {
                    line: None,
                    col: base_col,
                    msg: format!(
                        "prime bases must be strictly increasing ({prev} precedes {base})"
                    ),
                });
            }
        }
        entries.push((base, exp));
        cur.skip_ws();
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
        } else {
            break;
        }
    }

    let source = if cur.peek() == Some(b';') {
        cur.pos += 1;
        cur.skip_ws();
        cur.expect("src=")?;
        let text = cur.rest().trim_end().to_string();
        cur.pos = cur.bytes.len();
        Some(text)
    } else {
        None
    };
    if !cur.at_end() {
        return Err(Error::Parse {
            line: None,
            col: cur.col(),
            msg: "trailing garbage after record".into(),
        });
    }

    let m = Factorization::from_entries(entries).map_err(|e| Error::Validation {
        line: None,
        msg: e.to_string(),
    })?;
    MultiperfectRecord::new(m, k, source)
}

fn at_line(err: Error, line_no: usize) -> Error {
    match err {
        Error::Parse { col, msg, .. } => Error::Parse {
            line: Some(line_no),
            col,
            msg,
        },
        Error::Validation { msg, .. } => Error::Validation {
            line: Some(line_no),
            msg,
        },
        other => other,
    }
}

/// Parses a whole catalog. All line errors are collected and reported
/// together; duplicate records (same m) collapse to the first occurrence
/// with a warning.
pub fn parse_database(text: &str) -> Result<Database> {
    let mut db = Database::default();
    let mut errors = Vec::new();
    let mut seen: BTreeSet<BigUint> = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_record(line) {
            Ok(rec) => {
                let value = rec.value();
                if seen.contains(&value) {
                    db.warnings.push(format!(
                        "line {line_no}: duplicate record for m={value}; keeping the first"
                    ));
                } else {
                    seen.insert(value);
                    db.records.push(rec);
                }
            }
            Err(e) => errors.push(at_line(e, line_no)),
        }
    }
    if errors.is_empty() {
        Ok(db)
    } else {
        Err(Error::Database(errors))
    }
}

/// Loads and validates a catalog file.
pub fn load_database(path: &Path) -> Result<Database> {
    let text = fs::read_to_string(path)?;
    parse_database(&text)
}

/// Outcome of [`persist_hits`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PersistReport {
    /// Values appended this call, in file order.
    pub appended: Vec<u64>,
    /// Values skipped because the catalog already contains them.
    pub skipped: Vec<u64>,
}

/// Appends search hits to a catalog file, skipping values already present.
/// The existing file is fully validated first so a corrupt catalog is never
/// appended to. Running the same persist twice is a no-op the second time.
pub fn persist_hits(hits: &[SearchHit], path: &Path) -> Result<PersistReport> {
    let existing = if path.exists() {
        fs::read_to_string(path)?
    } else {
        String::new()
    };
    let db = parse_database(&existing)?;
    let mut known: BTreeSet<BigUint> = db.records.iter().map(|r| r.value()).collect();

    let mut report = PersistReport::default();
    let mut out = String::new();
    if !existing.is_empty() && !existing.ends_with('\n') {
        out.push('\n');
    }
    for hit in hits {
        let value = BigUint::from(hit.m);
        if known.contains(&value) {
            report.skipped.push(hit.m);
            continue;
        }
        let m = factorize(hit.m).expect("hit.m ≥ 2");
        let rec = MultiperfectRecord::new(m, hit.k, Some("search".into()))?;
        out.push_str(&rec.to_string());
        out.push('\n');
        known.insert(value);
        report.appended.push(hit.m);
    }
    if !report.appended.is_empty() {
        let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
        file.write_all(out.as_bytes())?;
    }
    Ok(report)
}

/// True when the factored m uses only primes ≤ the word-size search range —
/// convenience for telling catalog entries apart from search output.
pub fn fits_in_u64(record: &MultiperfectRecord) -> bool {
    record.value() <= BigUint::from(u64::MAX)
}

/// Total abundancy mass Σ 1/m over the catalog, exact. Mostly a smoke
/// statistic for the CLI's ingest summary.
pub fn reciprocal_mass(db: &Database) -> crate::arith::ExactRatio {
    let mut acc = crate::arith::ExactRatio::new(BigUint::zero(), BigUint::one())
        .expect("zero ratio");
    for rec in &db.records {
        let term = crate::arith::ExactRatio::new(BigUint::one(), rec.value())
            .expect("m ≥ 2");
        acc = acc.add(&term);
    }
    acc
}
