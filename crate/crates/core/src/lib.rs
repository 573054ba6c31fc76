//! Microframe bias and intensity over word embeddings.
//!
//! A *microframe* is an antonym pair (`w-`, `w+`) read as a semantic axis
//! `v(w+) - v(w-)` in an embedding space. Every word in a corpus contributes
//! its cosine with that axis; frequency-weighted aggregates of those
//! contributions give the corpus' **bias** (which pole it leans toward) and
//! **intensity** (how strongly the axis is used at all, measured as a second
//! moment about the whole-corpus bias).
//!
//! The crate is organised bottom-up:
//!
//! * [`embedding`]: the immutable word-vector table.
//! * [`frames`]: antonym pairs turned into axes.
//! * [`corpus`]: tokenisation, topic-word masking and bag-of-words views.
//! * [`engine`]: bias, intensity, bootstrap significance, word shifts,
//!   document spectra, corpus separation and the log-odds baseline.
//! * [`relevance`]: ranking frames for a topic before looking at any data.
//!
//! ```
//! use microframe::corpus::{build_view, Document, Normalizer};
//! use microframe::embedding::EmbeddingTable;
//! use microframe::engine::corpus_bias;
//! use microframe::frames::{build_registry, PolePair};
//!
//! let table = EmbeddingTable::from_entries(vec![
//!     ("bad".to_string(), vec![-1.0, 0.2]),
//!     ("good".to_string(), vec![1.0, 0.2]),
//!     ("tasty".to_string(), vec![0.9, 0.5]),
//!     ("meal".to_string(), vec![0.1, 1.0]),
//! ])?;
//! let registry = build_registry(&[PolePair::new("bad", "good")], &table)?;
//! let docs = vec![Document::new("d1", "A tasty meal!", None, &Normalizer::default())];
//! let view = build_view(docs, &table, &Default::default())?;
//!
//! let bias = corpus_bias(&view, &registry.frames()[0], &table)?;
//! assert!(bias > 0.0);
//! # Ok::<(), microframe::Error>(())
//! ```

pub mod corpus;
pub mod embedding;
pub mod engine;
mod error;
pub mod frames;
mod linalg;
pub mod relevance;

pub use error::{Error, Result};
