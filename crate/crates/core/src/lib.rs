//! Semantic similarity over an is-a taxonomy.
//!
//! Load a hypernym DAG (WordNet 3.0 nouns or a TSV fixture), compute
//! information content under one of four models, score concept or word pairs
//! with eight measures, and benchmark the measures against human ratings.
//!
//! ```
//! use taxsim::{ingest, similarity::{self, MeasureId}};
//!
//! let tsv = "A\tR\nB\tR\nC\tA\nD\tA\nE\tC\nF\tC\nx\t#\tE\ny\t#\tF\n";
//! let (taxonomy, index) = ingest::load_tsv_taxonomy(tsv.as_bytes()).unwrap();
//! let score = similarity::word_similarity(&taxonomy, &index, MeasureId::Wup, None, "x", "y").unwrap();
//! assert_eq!(score.value, 0.75);
//! ```

pub mod error;
pub mod evaluation;
pub mod ic;
pub mod ingest;
pub mod similarity;
pub mod taxonomy;

pub use error::{Error, Result};
pub use ic::{IcModel, IcTable};
pub use ingest::{FrequencyTable, LemmaIndex};
pub use similarity::{MeasureId, Score, ScoreKind};
pub use taxonomy::{NodeId, Synset, SynsetId, Taxonomy, TaxonomyOptions};
