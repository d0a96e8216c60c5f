//! Readers for the WordNet 3.0 noun database, the TSV taxonomy fixture
//! format, and `lemma<TAB>count` frequency files.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::taxonomy::{Synset, SynsetId, Taxonomy, TaxonomyOptions};

/// Lowercase, with internal whitespace runs turned into `_`.
pub fn normalize_lemma(word: &str) -> String {
    word.split_whitespace()
        .collect::<Vec<_>>()
        .join("_")
        .to_lowercase()
}

/// Word → senses, in sense order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LemmaIndex {
    entries: HashMap<String, Vec<SynsetId>>,
}

impl LemmaIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `sense` to the lemma's sense list unless already present.
    pub fn insert(&mut self, lemma: &str, sense: SynsetId) {
        let senses = self.entries.entry(normalize_lemma(lemma)).or_default();
        if !senses.contains(&sense) {
            senses.push(sense);
        }
    }

    /// `None` when the word is absent.
    pub fn senses(&self, word: &str) -> Option<&[SynsetId]> {
        self.entries.get(&normalize_lemma(word)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[SynsetId])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Checks that every referenced synset exists in `taxonomy`.
    pub fn validate(&self, taxonomy: &Taxonomy) -> Result<()> {
        for (lemma, senses) in &self.entries {
            if let Some(missing) = senses.iter().find(|s| !taxonomy.contains(s.as_str())) {
                return Err(Error::Integrity {
                    from: lemma.clone(),
                    to: missing.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrequencyTable {
    counts: HashMap<String, f64>,
    total: f64,
}

impl FrequencyTable {
    /// Adds `count` to the lemma's running total.
    pub fn add(&mut self, lemma: &str, count: f64) -> Result<()> {
        if !count.is_finite() || count < 0.0 {
            return Err(Error::Input(format!(
                "count for `{lemma}` must be a non-negative number"
            )));
        }
        *self.counts.entry(normalize_lemma(lemma)).or_insert(0.0) += count;
        self.total += count;
        Ok(())
    }

    pub fn count(&self, lemma: &str) -> f64 {
        self.counts
            .get(&normalize_lemma(lemma))
            .copied()
            .unwrap_or(0.0)
    }

    /// `N`, the sum of all counts.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn is_header(line: &str) -> bool {
    line.starts_with("  ")
}

fn is_offset(token: &str) -> bool {
    token.len() == 8 && token.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `data.noun`. Records keep file order; only `@` and `@i` pointers
/// into the noun file become hypernyms.
pub fn parse_data_noun(reader: impl BufRead) -> Result<Vec<Synset>> {
    let mut synsets = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if is_header(&line) || line.trim().is_empty() {
            continue;
        }
        synsets.push(parse_data_record(&line, lineno)?);
    }
    Ok(synsets)
}

fn parse_data_record(line: &str, lineno: usize) -> Result<Synset> {
    let (fields, gloss) = match line.split_once('|') {
        Some((f, g)) => (f, g.trim()),
        None => (line, ""),
    };
    let mut tok = fields.split_ascii_whitespace();
    let mut next = |what: &str| {
        tok.next()
            .ok_or_else(|| parse_err(lineno, format!("missing {what}")))
    };

    let offset = next("synset_offset")?;
    if !is_offset(offset) {
        return Err(parse_err(lineno, format!("bad synset_offset `{offset}`")));
    }
    let _lex_filenum = next("lex_filenum")?;
    let ss_type = next("ss_type")?;
    if ss_type != "n" {
        return Err(parse_err(
            lineno,
            format!("ss_type `{ss_type}` is not a noun"),
        ));
    }
    let w_cnt = next("w_cnt")?;
    let w_cnt = usize::from_str_radix(w_cnt, 16)
        .map_err(|_| parse_err(lineno, format!("bad w_cnt `{w_cnt}`")))?;
    if w_cnt == 0 {
        return Err(parse_err(lineno, "w_cnt is zero"));
    }
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        lemmas.push(next("word")?.to_lowercase());
        let _lex_id = next("lex_id")?;
    }
    let p_cnt = next("p_cnt")?;
    let p_cnt: usize = p_cnt
        .parse()
        .map_err(|_| parse_err(lineno, format!("bad p_cnt `{p_cnt}`")))?;
    let mut hypernyms = Vec::new();
    for _ in 0..p_cnt {
        let symbol = next("pointer_symbol")?;
        let target = next("pointer offset")?;
        let pos = next("pointer pos")?;
        let _source_target = next("pointer source/target")?;
        if !is_offset(target) {
            return Err(parse_err(lineno, format!("bad pointer offset `{target}`")));
        }
        if matches!(symbol, "@" | "@i") && pos == "n" {
            let id = SynsetId::new(target);
            if !hypernyms.contains(&id) {
                hypernyms.push(id);
            }
        }
    }

    Ok(Synset {
        id: SynsetId::new(offset),
        lemmas,
        gloss: gloss.to_owned(),
        hypernyms,
    })
}

/// Parses `index.noun`.
pub fn parse_index_noun(reader: impl BufRead) -> Result<LemmaIndex> {
    let mut index = LemmaIndex::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if is_header(&line) || line.trim().is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_ascii_whitespace().collect();
        let field = |k: usize, what: &str| {
            tok.get(k)
                .copied()
                .ok_or_else(|| parse_err(lineno, format!("missing {what}")))
        };
        let number = |k: usize, what: &str| -> Result<usize> {
            let t = field(k, what)?;
            t.parse()
                .map_err(|_| parse_err(lineno, format!("bad {what} `{t}`")))
        };
        let lemma = field(0, "lemma")?;
        let synset_cnt = number(2, "synset_cnt")?;
        let p_cnt = number(3, "p_cnt")?;
        // p_cnt pointer symbols, then sense_cnt and tagsense_cnt
        let first_offset = 4 + p_cnt + 2;
        if tok.len() < first_offset {
            return Err(parse_err(lineno, "record truncated before synset offsets"));
        }
        let offsets = &tok[first_offset..];
        if offsets.len() != synset_cnt {
            return Err(parse_err(
                lineno,
                format!("synset_cnt {synset_cnt} but {} offsets", offsets.len()),
            ));
        }
        for off in offsets {
            if !is_offset(off) {
                return Err(parse_err(lineno, format!("bad synset offset `{off}`")));
            }
            index.insert(lemma, SynsetId::new(*off));
        }
    }
    Ok(index)
}

/// Validates parsed synsets into a [`Taxonomy`].
pub fn build_taxonomy(synsets: Vec<Synset>) -> Result<Taxonomy> {
    Taxonomy::new(synsets)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| Error::File {
            path: path.to_owned(),
            source,
        })
}

/// Loads `data.noun` and `index.noun` from a WordNet `dict` directory. Depth
/// is counted from a virtual root above `entity`.
pub fn load_wordnet(dir: &Path) -> Result<(Taxonomy, LemmaIndex)> {
    load_wordnet_with(dir, TaxonomyOptions { virtual_root: true })
}

pub fn load_wordnet_with(dir: &Path, options: TaxonomyOptions) -> Result<(Taxonomy, LemmaIndex)> {
    let synsets = parse_data_noun(open(&dir.join("data.noun"))?)?;
    let taxonomy = Taxonomy::with_options(synsets, options)?;
    let index = parse_index_noun(open(&dir.join("index.noun"))?)?;
    index.validate(&taxonomy)?;
    Ok((taxonomy, index))
}

/// Loads a TSV taxonomy: `child<TAB>parent` edge lines and
/// `lemma<TAB>#<TAB>synset` binding lines. Lines starting with `#` are
/// comments. A synset without bindings gets its identifier as sole lemma.
pub fn load_tsv_taxonomy(reader: impl BufRead) -> Result<(Taxonomy, LemmaIndex)> {
    let mut order: Vec<String> = Vec::new();
    let mut known: HashSet<String> = HashSet::new();
    let mut parents: HashMap<String, Vec<String>> = HashMap::new();
    let mut lemmas: HashMap<String, Vec<String>> = HashMap::new();
    let mut index = LemmaIndex::new();

    let mut note = |id: &str, order: &mut Vec<String>| {
        if known.insert(id.to_owned()) {
            order.push(id.to_owned());
        }
    };

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        match cols.as_slice() {
            [child, parent] if !child.is_empty() && !parent.is_empty() => {
                note(child, &mut order);
                note(parent, &mut order);
                let ps = parents.entry((*child).to_owned()).or_default();
                if ps.iter().any(|p| p == parent) {
                    log::warn!("line {lineno}: duplicate edge {child} -> {parent} ignored");
                } else {
                    ps.push((*parent).to_owned());
                }
            }
            [lemma, "#", synset] if !lemma.is_empty() && !synset.is_empty() => {
                note(synset, &mut order);
                let lemma = normalize_lemma(lemma);
                let bound = lemmas.entry((*synset).to_owned()).or_default();
                if !bound.contains(&lemma) {
                    bound.push(lemma.clone());
                }
                index.insert(&lemma, SynsetId::new(*synset));
            }
            _ => {
                return Err(parse_err(
                    lineno,
                    "expected `child<TAB>parent` or `lemma<TAB>#<TAB>synset`",
                ))
            }
        }
    }

    let synsets = order
        .into_iter()
        .map(|id| Synset {
            lemmas: lemmas.remove(&id).unwrap_or_else(|| vec![id.clone()]),
            gloss: String::new(),
            hypernyms: parents
                .remove(&id)
                .unwrap_or_default()
                .into_iter()
                .map(SynsetId::new)
                .collect(),
            id: SynsetId::new(id),
        })
        .collect();
    let taxonomy = Taxonomy::new(synsets)?;
    Ok((taxonomy, index))
}

/// Writes `taxonomy` and `index` in the TSV fixture format.
pub fn export_tsv(taxonomy: &Taxonomy, index: &LemmaIndex) -> String {
    let mut out = String::new();
    for node in taxonomy.nodes() {
        for &p in taxonomy.parents(node) {
            let _ = writeln!(out, "{}\t{}", taxonomy.id(node), taxonomy.id(p));
        }
    }
    let sorted: BTreeMap<&str, &[SynsetId]> = index.iter().collect();
    for (lemma, senses) in &sorted {
        for s in senses.iter() {
            let _ = writeln!(out, "{lemma}\t#\t{s}");
        }
    }
    if taxonomy.len() == 1 && index.is_empty() {
        let root = taxonomy.synset(taxonomy.root());
        let _ = writeln!(out, "{}\t#\t{}", root.lemmas[0], root.id);
    }
    out
}

/// Loads `lemma<TAB>count` lines; duplicate lemmas are summed.
pub fn load_frequencies(reader: impl BufRead) -> Result<FrequencyTable> {
    let mut table = FrequencyTable::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (lemma, count) = line
            .split_once('\t')
            .ok_or_else(|| parse_err(lineno, "expected `lemma<TAB>count`"))?;
        let count: f64 = count
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, format!("count `{}` is not a number", count.trim())))?;
        table
            .add(lemma.trim(), count)
            .map_err(|e| parse_err(lineno, e.to_string()))?;
    }
    Ok(table)
}

pub fn load_frequencies_file(path: &Path) -> Result<FrequencyTable> {
    load_frequencies(open(path)?)
}

pub fn load_tsv_taxonomy_file(path: &Path) -> Result<(Taxonomy, LemmaIndex)> {
    load_tsv_taxonomy(open(path)?)
}
