//! Pretrained word vectors loaded from the plain-text format used by GloVe
//! and word2vec exports.
//!
//! One record per line: `token c1 c2 ... cd`. An optional first line of the
//! form `<count> <dim>` is recognised and skipped. Vectors are kept as `f32`
//! and widened to `f64` whenever they take part in arithmetic.
//!
//! Tokens are matched byte for byte. Case folding belongs to the tokenizer
//! in [`crate::corpus`], so one table can serve cased and uncased pipelines.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use log::warn;

use crate::linalg;
use crate::{Error, Result};

/// Immutable token to vector map.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dimension: usize,
    tokens: Vec<String>,
    index: HashMap<String, usize>,
    data: Vec<f32>,
    norms: Vec<f64>,
}

/// What happened while reading an embedding file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub header_skipped: bool,
    pub loaded: usize,
    /// Lines whose vector was all zeros.
    pub zero_vectors: usize,
    /// Lines with a component that is not a finite number.
    pub unparseable: usize,
    /// Later occurrences of an already loaded token.
    pub duplicates: usize,
    /// Well-formed lines rejected by the vocabulary filter.
    pub filtered: usize,
}

impl LoadReport {
    /// Lines dropped because their vector could not be used.
    pub fn skipped(&self) -> usize {
        self.zero_vectors + self.unparseable
    }
}

enum Push {
    Added,
    Duplicate,
    Zero,
}

impl EmbeddingTable {
    fn empty(dimension: usize) -> Self {
        EmbeddingTable {
            dimension,
            tokens: Vec::new(),
            index: HashMap::new(),
            data: Vec::new(),
            norms: Vec::new(),
        }
    }

    fn push(&mut self, token: &str, vector: &[f32]) -> Push {
        debug_assert_eq!(vector.len(), self.dimension);
        if self.index.contains_key(token) {
            return Push::Duplicate;
        }
        let norm = linalg::norm(vector);
        if norm <= 0.0 {
            return Push::Zero;
        }
        self.index.insert(token.to_string(), self.tokens.len());
        self.tokens.push(token.to_string());
        self.data.extend_from_slice(vector);
        self.norms.push(norm);
        Push::Added
    }

    /// Builds a table from in-memory entries.
    ///
    /// Unlike [`load_embeddings`], a zero vector or a length mismatch is an
    /// error here. Duplicate tokens keep their first vector.
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Vec<f32>)>,
    {
        let mut table: Option<EmbeddingTable> = None;
        for (token, vector) in entries {
            let table = table.get_or_insert_with(|| EmbeddingTable::empty(vector.len()));
            if vector.len() != table.dimension {
                return Err(Error::DimensionMismatch {
                    left: table.dimension,
                    right: vector.len(),
                });
            }
            if let Push::Zero = table.push(&token, &vector) {
                return Err(Error::ZeroNorm(Some(token)));
            }
        }
        match table {
            Some(t) if t.dimension > 0 => Ok(t),
            _ => Err(Error::InvalidArgument(
                "embedding table needs at least one non-empty vector".into(),
            )),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    /// Tokens in load order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    /// The stored vector for `token`, or `None`. There is no fallback vector.
    pub fn vector_of(&self, token: &str) -> Option<&[f32]> {
        self.row(token).map(|r| self.row_vector(r))
    }

    /// Euclidean norm of the stored vector, computed once at load.
    pub fn norm_of(&self, token: &str) -> Option<f64> {
        self.row(token).map(|r| self.norms[r])
    }

    pub(crate) fn row(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub(crate) fn row_vector(&self, row: usize) -> &[f32] {
        &self.data[row * self.dimension..(row + 1) * self.dimension]
    }

    pub(crate) fn row_norm(&self, row: usize) -> f64 {
        self.norms[row]
    }
}

fn parse_header(line: &str) -> bool {
    let fields: Vec<&str> = line.split_whitespace().collect();
    fields.len() == 2 && fields.iter().all(|f| f.parse::<u64>().is_ok())
}

/// Reads an embedding file, optionally keeping only tokens in `vocab_filter`.
///
/// Zero vectors and lines with non-numeric components are skipped with a
/// warning. A line whose component count differs from the first record is
/// fatal.
pub fn load_embeddings(
    path: impl AsRef<Path>,
    vocab_filter: Option<&HashSet<String>>,
) -> Result<(EmbeddingTable, LoadReport)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);

    let mut report = LoadReport::default();
    let mut table: Option<EmbeddingTable> = None;
    let mut buf: Vec<f32> = Vec::new();
    let mut seen_record = false;

    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if !seen_record {
            seen_record = true;
            if parse_header(&line) {
                report.header_skipped = true;
                continue;
            }
        }

        let mut fields = line.split_whitespace();
        let token = fields.next().expect("non-empty line has a first field");
        buf.clear();
        let mut found = 0usize;
        let mut bad = false;
        for field in fields {
            found += 1;
            match field.parse::<f32>() {
                Ok(x) if x.is_finite() => buf.push(x),
                _ => bad = true,
            }
        }

        let table = match &mut table {
            Some(t) => t,
            None => {
                if found == 0 {
                    return Err(Error::InconsistentDimension {
                        path: path.to_path_buf(),
                        line: lineno,
                        expected: 1,
                        found: 0,
                    });
                }
                table.insert(EmbeddingTable::empty(found))
            }
        };
        if found != table.dimension {
            return Err(Error::InconsistentDimension {
                path: path.to_path_buf(),
                line: lineno,
                expected: table.dimension,
                found,
            });
        }
        if bad {
            warn!(
                "{}:{lineno}: skipping {token:?}: unparseable component",
                path.display()
            );
            report.unparseable += 1;
            continue;
        }
        if let Some(filter) = vocab_filter {
            if !filter.contains(token) {
                report.filtered += 1;
                continue;
            }
        }
        match table.push(token, &buf) {
            Push::Added => report.loaded += 1,
            Push::Duplicate => report.duplicates += 1,
            Push::Zero => {
                warn!(
                    "{}:{lineno}: skipping {token:?}: zero vector",
                    path.display()
                );
                report.zero_vectors += 1;
            }
        }
    }

    let table = table.unwrap_or_else(|| EmbeddingTable::empty(0));
    Ok((table, report))
}
