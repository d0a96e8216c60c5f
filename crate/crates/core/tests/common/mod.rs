//! Random taxonomies and brute-force oracles shared by the integration tests.
//! The oracles work on the raw edge lists, never on `Taxonomy` caches.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::PathBuf;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use taxsim::{LemmaIndex, Synset, SynsetId, Taxonomy};

/// Node `i > 0` draws 1..=max_parents distinct parents among `0..i`, so the
/// graph is acyclic with root `n0`. Synsets come back shuffled.
pub fn random_dag(rng: &mut impl Rng, nodes: usize, max_parents: usize) -> Vec<Synset> {
    let mut synsets: Vec<Synset> = (0..nodes)
        .map(|i| {
            let mut parents: Vec<usize> = Vec::new();
            if i > 0 {
                let k = rng.gen_range(1..=max_parents.min(i));
                while parents.len() < k {
                    let p = rng.gen_range(0..i);
                    if !parents.contains(&p) {
                        parents.push(p);
                    }
                }
            }
            Synset {
                id: SynsetId::new(format!("n{i}")),
                lemmas: vec![format!("w{i}")],
                gloss: String::new(),
                hypernyms: parents
                    .into_iter()
                    .map(|p| SynsetId::new(format!("n{p}")))
                    .collect(),
            }
        })
        .collect();
    synsets.shuffle(rng);
    synsets
}

pub fn random_tree(rng: &mut impl Rng, nodes: usize) -> Vec<Synset> {
    random_dag(rng, nodes, 1)
}

/// Edge lists of a synset list.
pub struct Oracle {
    parents: HashMap<String, Vec<String>>,
    children: HashMap<String, Vec<String>>,
    root: String,
}

impl Oracle {
    pub fn new(synsets: &[Synset]) -> Self {
        let mut parents = HashMap::new();
        let mut children: HashMap<String, Vec<String>> = HashMap::new();
        let mut root = String::new();
        for s in synsets {
            let ps: Vec<String> = s.hypernyms.iter().map(|h| h.to_string()).collect();
            if ps.is_empty() {
                root = s.id.to_string();
            }
            for p in &ps {
                children
                    .entry(p.clone())
                    .or_default()
                    .push(s.id.to_string());
            }
            parents.insert(s.id.to_string(), ps);
        }
        Oracle {
            parents,
            children,
            root,
        }
    }

    pub fn ids(&self) -> Vec<String> {
        let mut v: Vec<String> = self.parents.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    /// Fixpoint of breadth-first traversal over hypernym edges.
    pub fn ancestors(&self, c: &str) -> HashSet<String> {
        let mut seen = HashSet::from([c.to_owned()]);
        let mut queue = VecDeque::from([c.to_owned()]);
        while let Some(x) = queue.pop_front() {
            for p in &self.parents[&x] {
                if seen.insert(p.clone()) {
                    queue.push_back(p.clone());
                }
            }
        }
        seen
    }

    pub fn descendants(&self, c: &str) -> HashSet<String> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([c.to_owned()]);
        while let Some(x) = queue.pop_front() {
            for ch in self.children.get(&x).into_iter().flatten() {
                if seen.insert(ch.clone()) {
                    queue.push_back(ch.clone());
                }
            }
        }
        seen
    }

    /// Node count on a shortest downward path from the root.
    pub fn depth(&self, c: &str) -> u32 {
        let mut dist = HashMap::from([(self.root.clone(), 1u32)]);
        let mut queue = VecDeque::from([self.root.clone()]);
        while let Some(x) = queue.pop_front() {
            if x == c {
                return dist[&x];
            }
            for ch in self.children.get(&x).into_iter().flatten() {
                if !dist.contains_key(ch) {
                    dist.insert(ch.clone(), dist[&x] + 1);
                    queue.push_back(ch.clone());
                }
            }
        }
        panic!("{c} unreachable from root");
    }

    /// Undirected breadth-first distance in edges.
    pub fn distance(&self, a: &str, b: &str) -> u32 {
        let mut dist = HashMap::from([(a.to_owned(), 0u32)]);
        let mut queue = VecDeque::from([a.to_owned()]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                return dist[&x];
            }
            let nbrs = self.parents[&x]
                .iter()
                .chain(self.children.get(&x).into_iter().flatten());
            for y in nbrs {
                if !dist.contains_key(y) {
                    dist.insert(y.clone(), dist[&x] + 1);
                    queue.push_back(y.clone());
                }
            }
        }
        panic!("{b} unreachable from {a}");
    }

    /// Undirected breadth-first distances from `a` to every node.
    pub fn distances_from(&self, a: &str) -> HashMap<String, u32> {
        let mut dist = HashMap::from([(a.to_owned(), 0u32)]);
        let mut queue = VecDeque::from([a.to_owned()]);
        while let Some(x) = queue.pop_front() {
            let nbrs = self.parents[&x]
                .iter()
                .chain(self.children.get(&x).into_iter().flatten());
            for y in nbrs {
                if !dist.contains_key(y) {
                    dist.insert(y.clone(), dist[&x] + 1);
                    queue.push_back(y.clone());
                }
            }
        }
        dist
    }

    /// Largest depth among the common ancestors.
    pub fn lcs_depth(&self, a: &str, b: &str) -> u32 {
        let (x, y) = (self.ancestors(a), self.ancestors(b));
        x.intersection(&y)
            .map(|c| self.depth(c))
            .max()
            .expect("root is shared")
    }

    pub fn is_leaf(&self, c: &str) -> bool {
        self.children.get(c).is_none_or(Vec::is_empty)
    }
}

pub fn wordnet_dir() -> PathBuf {
    std::env::var_os("WORDNET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/wordnet"))
}

/// WordNet 3.0 nouns, loaded once per test binary.
pub fn wordnet() -> &'static (Taxonomy, LemmaIndex) {
    static WN: OnceLock<(Taxonomy, LemmaIndex)> = OnceLock::new();
    WN.get_or_init(|| {
        let dir = wordnet_dir();
        taxsim::ingest::load_wordnet(&dir).unwrap_or_else(|e| {
            panic!(
                "WordNet 3.0 not loadable from {} ({e}); run scripts/fetch-wordnet.sh or set WORDNET_DIR",
                dir.display()
            )
        })
    })
}
