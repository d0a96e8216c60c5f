//! Concept-pair similarity and distance measures, and the word-level rule
//! that scores two words by their best pair of senses.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ic::IcTable;
use crate::ingest::LemmaIndex;
use crate::taxonomy::{NodeId, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    Resnik,
    JcnDist,
    JcnNorm,
    Lin,
    RadaDist,
    Wup,
    Lch,
    New,
}

impl MeasureId {
    pub const ALL: [MeasureId; 8] = [
        MeasureId::Resnik,
        MeasureId::JcnDist,
        MeasureId::JcnNorm,
        MeasureId::Lin,
        MeasureId::RadaDist,
        MeasureId::Wup,
        MeasureId::Lch,
        MeasureId::New,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::Resnik => "resnik",
            MeasureId::JcnDist => "jcn_dist",
            MeasureId::JcnNorm => "jcn_norm",
            MeasureId::Lin => "lin",
            MeasureId::RadaDist => "rada_dist",
            MeasureId::Wup => "wup",
            MeasureId::Lch => "lch",
            MeasureId::New => "new",
        }
    }

    pub fn kind(self) -> ScoreKind {
        match self {
            MeasureId::JcnDist | MeasureId::RadaDist => ScoreKind::Distance,
            _ => ScoreKind::Similarity,
        }
    }

    pub fn needs_ic(self) -> bool {
        matches!(
            self,
            MeasureId::Resnik | MeasureId::JcnDist | MeasureId::JcnNorm | MeasureId::Lin
        )
    }

    /// Whether the measure only accepts IC tables whose values lie in `[0, 1]`.
    pub fn needs_normalized_ic(self) -> bool {
        self == MeasureId::JcnNorm
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureId::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Input(format!("unknown measure `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    Similarity,
    Distance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub value: f64,
    pub kind: ScoreKind,
}

impl Score {
    fn similarity(value: f64) -> Self {
        Score {
            value,
            kind: ScoreKind::Similarity,
        }
    }

    fn distance(value: f64) -> Self {
        Score {
            value,
            kind: ScoreKind::Distance,
        }
    }

    /// Whether `self` ranks ahead of `other`: larger similarity or smaller
    /// distance.
    pub fn better_than(&self, other: &Score) -> bool {
        match self.kind {
            ScoreKind::Similarity => self.value > other.value,
            ScoreKind::Distance => self.value < other.value,
        }
    }
}

fn check_ic(taxonomy: &Taxonomy, ic: &IcTable) -> Result<()> {
    if !ic.covers(taxonomy) {
        return Err(Error::InvalidCombination(format!(
            "IC table has {} entries, taxonomy has {} synsets",
            ic.len(),
            taxonomy.len()
        )));
    }
    Ok(())
}

/// Resnik: IC of the lowest common hypernym.
pub fn sim_resnik(t: &Taxonomy, ic: &IcTable, a: NodeId, b: NodeId) -> Result<Score> {
    check_ic(t, ic)?;
    Ok(Score::similarity(ic.get(t.lcs(a, b))))
}

/// Jiang–Conrath distance `IC(a) + IC(b) - 2 IC(lcs)`.
pub fn dist_jcn(t: &Taxonomy, ic: &IcTable, a: NodeId, b: NodeId) -> Result<Score> {
    check_ic(t, ic)?;
    Ok(Score::distance(jcn(t, ic, a, b)))
}

fn jcn(t: &Taxonomy, ic: &IcTable, a: NodeId, b: NodeId) -> f64 {
    ic.get(a) + ic.get(b) - 2.0 * ic.get(t.lcs(a, b))
}

/// `1 - dist_jcn / 2`; only defined for normalized IC.
pub fn sim_jcn_norm(t: &Taxonomy, ic: &IcTable, a: NodeId, b: NodeId) -> Result<Score> {
    check_ic(t, ic)?;
    if !ic.normalized() {
        return Err(Error::InvalidCombination(format!(
            "jcn_norm needs an IC model with values in [0, 1]; `{}` is not",
            ic.model()
        )));
    }
    Ok(Score::similarity(1.0 - jcn(t, ic, a, b) / 2.0))
}

/// Lin: `2 IC(lcs) / (IC(a) + IC(b))`, and 0 when both ICs are 0.
pub fn sim_lin(t: &Taxonomy, ic: &IcTable, a: NodeId, b: NodeId) -> Result<Score> {
    check_ic(t, ic)?;
    let total = ic.get(a) + ic.get(b);
    let value = if total == 0.0 {
        0.0
    } else {
        2.0 * ic.get(t.lcs(a, b)) / total
    };
    Ok(Score::similarity(value))
}

/// Rada: edge count of the shortest path.
pub fn dist_rada(t: &Taxonomy, a: NodeId, b: NodeId) -> Score {
    Score::distance(f64::from(t.shortest_path_edges(a, b)))
}

/// Wu & Palmer: `2 depth(lcs) / (len + 2 depth(lcs))`, with `len` in edges.
pub fn sim_wup(t: &Taxonomy, a: NodeId, b: NodeId) -> Score {
    wup_from_parts(t.depth(t.lcs(a, b)), t.shortest_path_edges(a, b))
}

fn wup_from_parts(lcs_depth: u32, path: u32) -> Score {
    let d = 2.0 * f64::from(lcs_depth);
    Score::similarity(d / (f64::from(path) + d))
}

/// Leacock & Chodorow: `-ln(nodes / (2 max_depth))`, where `nodes` counts
/// both endpoints of the shortest path.
pub fn sim_lch(t: &Taxonomy, a: NodeId, b: NodeId) -> Score {
    lch_from_path(t, t.shortest_path_edges(a, b))
}

fn lch_from_path(t: &Taxonomy, path: u32) -> Score {
    let nodes = f64::from(path + 1);
    Score::similarity((2.0 * f64::from(t.max_depth()) / nodes).ln())
}

/// `ln s(a) + ln s(b) - 2 ln s(lcs)` over subsumer counts, before any floor.
pub fn sim_new_denominator(t: &Taxonomy, a: NodeId, b: NodeId) -> f64 {
    new_denominator(t, a, b, 1.0)
}

// `scale` converts natural logs to another base: 1 / ln(base).
fn new_denominator(t: &Taxonomy, a: NodeId, b: NodeId, scale: f64) -> f64 {
    let log = |n: NodeId| (t.subsumer_count(n) as f64).ln() * scale;
    log(a) + log(b) - 2.0 * log(t.lcs(a, b))
}

/// The comprehensive measure over subsumer counts:
/// `ln(2 ln M / max(D, ln((M + 1) / M)))` with `M` the largest subsumer count
/// and `D` from [`sim_new_denominator`].
pub fn sim_new(t: &Taxonomy, a: NodeId, b: NodeId) -> Result<Score> {
    new_scaled(t, a, b, 1.0)
}

/// [`sim_new`] with the inner (IC) logarithms taken in `base`.
pub fn sim_new_in_base(t: &Taxonomy, a: NodeId, b: NodeId, base: f64) -> Result<Score> {
    if !(base > 0.0 && base != 1.0 && base.is_finite()) {
        return Err(Error::Input(format!("invalid logarithm base {base}")));
    }
    new_scaled(t, a, b, 1.0 / base.ln())
}

fn new_scaled(t: &Taxonomy, a: NodeId, b: NodeId, scale: f64) -> Result<Score> {
    let m = t.max_subsumer_count();
    if m < 2 {
        return Err(Error::UnusableModel(
            "the new measure needs a taxonomy with at least two levels".into(),
        ));
    }
    let m = m as f64;
    let floor = ((m + 1.0) / m).ln() * scale;
    let numerator = 2.0 * m.ln() * scale;
    let d = new_denominator(t, a, b, scale).max(floor);
    Ok(Score::similarity((numerator / d).ln()))
}

/// Largest value [`sim_new`] can take on `t`, reached by identical pairs.
pub fn sim_new_max(t: &Taxonomy) -> f64 {
    let m = t.max_subsumer_count() as f64;
    (2.0 * m.ln() / ((m + 1.0) / m).ln()).ln()
}

fn require_ic(m: MeasureId, ic: Option<&IcTable>) -> Result<&IcTable> {
    ic.ok_or_else(|| Error::InvalidCombination(format!("measure `{m}` needs an IC table")))
}

/// Checks that `ic` suits measure `m` without scoring anything.
pub fn validate_combination(t: &Taxonomy, m: MeasureId, ic: Option<&IcTable>) -> Result<()> {
    if m.needs_ic() {
        let ic = require_ic(m, ic)?;
        check_ic(t, ic)?;
        if m.needs_normalized_ic() && !ic.normalized() {
            return Err(Error::InvalidCombination(format!(
                "`{m}` needs an IC model with values in [0, 1]; `{}` is not",
                ic.model()
            )));
        }
    }
    if m == MeasureId::New && t.max_subsumer_count() < 2 {
        return Err(Error::UnusableModel(
            "the new measure needs a taxonomy with at least two levels".into(),
        ));
    }
    Ok(())
}

/// Scores one concept pair under measure `m`.
pub fn concept_score(
    t: &Taxonomy,
    m: MeasureId,
    ic: Option<&IcTable>,
    a: NodeId,
    b: NodeId,
) -> Result<Score> {
    match m {
        MeasureId::Resnik => sim_resnik(t, require_ic(m, ic)?, a, b),
        MeasureId::JcnDist => dist_jcn(t, require_ic(m, ic)?, a, b),
        MeasureId::JcnNorm => sim_jcn_norm(t, require_ic(m, ic)?, a, b),
        MeasureId::Lin => sim_lin(t, require_ic(m, ic)?, a, b),
        MeasureId::RadaDist => Ok(dist_rada(t, a, b)),
        MeasureId::Wup => Ok(sim_wup(t, a, b)),
        MeasureId::Lch => Ok(sim_lch(t, a, b)),
        MeasureId::New => sim_new(t, a, b),
    }
}

/// Word-level result with the sense pair that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordScore {
    pub score: Score,
    pub sense1: NodeId,
    pub sense2: NodeId,
}

fn senses(t: &Taxonomy, idx: &LemmaIndex, word: &str) -> Result<Vec<NodeId>> {
    let ids = idx
        .senses(word)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::OutOfVocabulary(word.to_owned()))?;
    ids.iter().map(|id| t.resolve(id.as_str())).collect()
}

/// Best score over all sense pairs of the two words: the maximum for
/// similarities, the minimum for distances. Ties keep the earliest pair in
/// sense order.
pub fn best_sense_pair(
    t: &Taxonomy,
    idx: &LemmaIndex,
    m: MeasureId,
    ic: Option<&IcTable>,
    w1: &str,
    w2: &str,
) -> Result<WordScore> {
    validate_combination(t, m, ic)?;
    let s1 = senses(t, idx, w1)?;
    let s2 = senses(t, idx, w2)?;
    let mut best: Option<WordScore> = None;
    for &a in &s1 {
        for &b in &s2 {
            let score = concept_score(t, m, ic, a, b)?;
            if best.is_none_or(|cur| score.better_than(&cur.score)) {
                best = Some(WordScore {
                    score,
                    sense1: a,
                    sense2: b,
                });
            }
        }
    }
    // both sense lists are non-empty
    best.ok_or_else(|| Error::OutOfVocabulary(w1.to_owned()))
}

pub fn word_similarity(
    t: &Taxonomy,
    idx: &LemmaIndex,
    m: MeasureId,
    ic: Option<&IcTable>,
    w1: &str,
    w2: &str,
) -> Result<Score> {
    best_sense_pair(t, idx, m, ic, w1, w2).map(|w| w.score)
}
