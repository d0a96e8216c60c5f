//! Information content models.
//!
//! All four models produce a frozen [`IcTable`] indexed by [`NodeId`]. Every
//! model puts the root at exactly 0 and never decreases from a node to any of
//! its children.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ingest::FrequencyTable;
use crate::taxonomy::{NodeId, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IcModel {
    /// Resnik: `-ln p(c)` from corpus frequencies propagated upward.
    Corpus,
    /// Seco: transitive hyponym count against taxonomy size.
    Seco,
    /// Sánchez: leaf commonness weighted by subsumer counts.
    Sanchez,
    /// `ln(subsumers(c))`.
    Hybrid,
}

impl IcModel {
    pub const ALL: [IcModel; 4] = [
        IcModel::Corpus,
        IcModel::Seco,
        IcModel::Sanchez,
        IcModel::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IcModel::Corpus => "corpus",
            IcModel::Seco => "seco",
            IcModel::Sanchez => "sanchez",
            IcModel::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for IcModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IcModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IcModel::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Input(format!("unknown IC model `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct IcTable {
    model: IcModel,
    values: Vec<f64>,
    normalized: bool,
}

impl IcTable {
    pub fn model(&self) -> IcModel {
        self.model
    }

    /// True iff every value lies in `[0, 1]` by construction.
    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn get(&self, node: NodeId) -> f64 {
        self.values[node.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_of(&self, taxonomy: &Taxonomy, id: &str) -> Result<f64> {
        Ok(self.get(taxonomy.resolve(id)?))
    }

    /// Whether this table was built for a taxonomy of `taxonomy`'s size.
    pub fn covers(&self, taxonomy: &Taxonomy) -> bool {
        self.values.len() == taxonomy.len()
    }
}

/// Builds the table for `model`. `frequencies` is required for
/// [`IcModel::Corpus`] and ignored otherwise.
pub fn compute(
    taxonomy: &Taxonomy,
    model: IcModel,
    frequencies: Option<&FrequencyTable>,
) -> Result<IcTable> {
    match model {
        IcModel::Corpus => {
            let f = frequencies.ok_or_else(|| {
                Error::InvalidCombination("the corpus IC model needs a frequency file".into())
            })?;
            ic_corpus(taxonomy, f)
        }
        IcModel::Seco => ic_seco(taxonomy),
        IcModel::Sanchez => Ok(ic_sanchez(taxonomy)),
        IcModel::Hybrid => Ok(hybrid_table(taxonomy)),
    }
}

/// Corpus IC with add-one smoothing per lemma. A lemma's count is credited in
/// full to every synset containing it, then summed over each synset's
/// hyponym closure; `p(c) = Freq(c) / Freq(root)`.
pub fn ic_corpus(taxonomy: &Taxonomy, frequencies: &FrequencyTable) -> Result<IcTable> {
    if frequencies.total() <= 0.0 {
        return Err(Error::UnusableModel("frequency table total is zero".into()));
    }
    let mut freq = vec![0.0f64; taxonomy.len()];
    for node in taxonomy.nodes() {
        let own: f64 = taxonomy
            .synset(node)
            .lemmas
            .iter()
            .map(|l| frequencies.count(l) + 1.0)
            .sum();
        for &a in taxonomy.ancestors(node) {
            freq[a.index()] += own;
        }
    }
    let total = freq[taxonomy.root().index()];
    let values = freq.iter().map(|&f| (total / f).ln()).collect();
    Ok(IcTable {
        model: IcModel::Corpus,
        values,
        normalized: false,
    })
}

/// `1 - ln(hypo(c) + 1) / ln(max_nodes)`.
pub fn ic_seco(taxonomy: &Taxonomy) -> Result<IcTable> {
    if taxonomy.len() < 2 {
        return Err(Error::UnusableModel(
            "Seco IC needs at least two synsets".into(),
        ));
    }
    let log_nodes = (taxonomy.len() as f64).ln();
    let values = taxonomy
        .nodes()
        .map(|n| 1.0 - ((taxonomy.hyponym_count(n) + 1) as f64).ln() / log_nodes)
        .collect();
    Ok(IcTable {
        model: IcModel::Seco,
        values,
        normalized: true,
    })
}

/// `ln(commonness(root) / commonness(c))`, where `commonness(c)` sums
/// `1 / subsumers(leaf)` over the leaves at or below `c`.
pub fn ic_sanchez(taxonomy: &Taxonomy) -> IcTable {
    let mut commonness = vec![0.0f64; taxonomy.len()];
    // Leaves are visited in one fixed order and each adds to all of its
    // ancestors, so a node whose leaf set contains another's never ends up
    // with a smaller float sum.
    for leaf in taxonomy.nodes().filter(|&n| taxonomy.is_leaf(n)) {
        let weight = 1.0 / taxonomy.subsumer_count(leaf) as f64;
        for &a in taxonomy.ancestors(leaf) {
            commonness[a.index()] += weight;
        }
    }
    let root = commonness[taxonomy.root().index()];
    let values = commonness.iter().map(|&c| (root / c).ln()).collect();
    IcTable {
        model: IcModel::Sanchez,
        values,
        normalized: false,
    }
}

/// `ln(subsumers(c))`.
pub fn ic_hybrid(taxonomy: &Taxonomy, node: NodeId) -> f64 {
    (taxonomy.subsumer_count(node) as f64).ln()
}

pub fn hybrid_table(taxonomy: &Taxonomy) -> IcTable {
    let values = taxonomy.nodes().map(|n| ic_hybrid(taxonomy, n)).collect();
    IcTable {
        model: IcModel::Hybrid,
        values,
        normalized: false,
    }
}
