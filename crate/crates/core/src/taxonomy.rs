//! Immutable hypernym DAG.
//!
//! A [`Taxonomy`] is validated and frozen at construction. Every per-node
//! quantity the IC models and measures need (ancestor sets, depth, transitive
//! hyponym counts) is computed once in [`Taxonomy::new`] and only read after.
//! Nodes are addressed by dense [`NodeId`] handles; [`Taxonomy::resolve`] maps
//! a [`SynsetId`] to its handle.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Opaque synset identifier. For WordNet this is the 8-digit byte offset into
/// `data.noun`; for TSV taxonomies any token.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynsetId(String);

impl SynsetId {
    pub fn new(id: impl Into<String>) -> Self {
        SynsetId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for SynsetId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for SynsetId {
    fn from(s: &str) -> Self {
        SynsetId(s.to_owned())
    }
}

/// One concept node as read from a source file.
#[derive(Debug, Clone, PartialEq)]
pub struct Synset {
    pub id: SynsetId,
    pub lemmas: Vec<String>,
    pub gloss: String,
    /// Direct parents.
    pub hypernyms: Vec<SynsetId>,
}

/// Dense handle of a node inside one [`Taxonomy`]. Handles are only meaningful
/// for the taxonomy that issued them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TaxonomyOptions {
    /// Count an implicit top node above the real root when measuring depth,
    /// so that the real root sits at depth 2. This is the convention of the
    /// WordNet::Similarity tools; it affects `depth` and `max_depth` only.
    pub virtual_root: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthInfo {
    pub depth: u32,
    pub max_depth_node: NodeId,
    pub max_depth: u32,
}

#[derive(Debug)]
pub struct Taxonomy {
    synsets: Vec<Synset>,
    index: HashMap<SynsetId, NodeId>,
    parents: Vec<Vec<NodeId>>,
    children: Vec<Vec<NodeId>>,
    root: NodeId,
    // sorted by NodeId, includes the node itself
    ancestors: Vec<Box<[NodeId]>>,
    depth: Vec<u32>,
    hyponyms: Vec<u32>,
    options: TaxonomyOptions,
    deepest: NodeId,
    max_subsumers: usize,
}

impl Taxonomy {
    pub fn new(synsets: Vec<Synset>) -> Result<Self> {
        Self::with_options(synsets, TaxonomyOptions::default())
    }

    pub fn with_options(synsets: Vec<Synset>, options: TaxonomyOptions) -> Result<Self> {
        if synsets.is_empty() {
            return Err(Error::Structure("taxonomy has no synsets".into()));
        }
        if synsets.len() > u32::MAX as usize {
            return Err(Error::Structure("too many synsets".into()));
        }

        let mut index = HashMap::with_capacity(synsets.len());
        for (i, s) in synsets.iter().enumerate() {
            if index.insert(s.id.clone(), NodeId(i as u32)).is_some() {
                return Err(Error::Structure(format!("duplicate synset `{}`", s.id)));
            }
            if s.lemmas.is_empty() {
                return Err(Error::Structure(format!("synset `{}` has no lemmas", s.id)));
            }
        }

        let n = synsets.len();
        let mut parents: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (i, s) in synsets.iter().enumerate() {
            for h in &s.hypernyms {
                if *h == s.id {
                    return Err(Error::Structure(format!(
                        "synset `{}` is its own hypernym",
                        s.id
                    )));
                }
                let p = *index.get(h).ok_or_else(|| Error::Integrity {
                    from: s.id.to_string(),
                    to: h.to_string(),
                })?;
                if !parents[i].contains(&p) {
                    parents[i].push(p);
                    children[p.index()].push(NodeId(i as u32));
                }
            }
        }

        let roots: Vec<usize> = (0..n).filter(|&i| parents[i].is_empty()).collect();
        let root = match roots.as_slice() {
            [r] => NodeId(*r as u32),
            [] => {
                return Err(Error::Structure(
                    "no root: every synset has a hypernym".into(),
                ))
            }
            many => {
                let names: Vec<&str> = many
                    .iter()
                    .take(5)
                    .map(|&i| synsets[i].id.as_str())
                    .collect();
                return Err(Error::Structure(format!(
                    "{} roots (synsets without hypernyms), e.g. {}",
                    many.len(),
                    names.join(", ")
                )));
            }
        };

        // Kahn's algorithm from the root; anything left unprocessed sits on or
        // below a cycle.
        let mut pending: Vec<usize> = parents.iter().map(Vec::len).collect();
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        while let Some(node) = queue.pop_front() {
            order.push(node);
            for &c in &children[node.index()] {
                pending[c.index()] -= 1;
                if pending[c.index()] == 0 {
                    queue.push_back(c);
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|&i| pending[i] > 0).unwrap_or(0);
            return Err(Error::Structure(format!(
                "hypernym cycle involving `{}`",
                synsets[stuck].id
            )));
        }

        let offset = u32::from(options.virtual_root);
        let mut depth = vec![0u32; n];
        let mut ancestors: Vec<Box<[NodeId]>> = vec![Box::default(); n];
        for &node in &order {
            let ps = &parents[node.index()];
            depth[node.index()] = match ps.iter().map(|p| depth[p.index()]).min() {
                Some(d) => d + 1,
                None => 1 + offset,
            };
            let mut set: Vec<NodeId> = ps
                .iter()
                .flat_map(|p| ancestors[p.index()].iter().copied())
                .collect();
            set.push(node);
            set.sort_unstable();
            set.dedup();
            ancestors[node.index()] = set.into_boxed_slice();
        }

        let mut hyponyms = vec![0u32; n];
        for (i, anc) in ancestors.iter().enumerate() {
            for a in anc.iter().filter(|a| a.index() != i) {
                hyponyms[a.index()] += 1;
            }
        }

        let deepest = (0..n)
            .max_by(|&a, &b| depth[a].cmp(&depth[b]).then_with(|| b.cmp(&a)))
            .map(|i| NodeId(i as u32))
            .unwrap_or(root);
        let max_subsumers = ancestors.iter().map(|a| a.len()).max().unwrap_or(1);

        Ok(Taxonomy {
            synsets,
            index,
            parents,
            children,
            root,
            ancestors,
            depth,
            hyponyms,
            options,
            deepest,
            max_subsumers,
        })
    }

    pub fn resolve(&self, id: &str) -> Result<NodeId> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownSynset(id.to_owned()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn synset(&self, node: NodeId) -> &Synset {
        &self.synsets[node.index()]
    }

    pub fn id(&self, node: NodeId) -> &SynsetId {
        &self.synsets[node.index()].id
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.synsets.len() as u32).map(NodeId)
    }

    pub fn synsets(&self) -> &[Synset] {
        &self.synsets
    }

    /// `max_nodes`: the number of synsets.
    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn options(&self) -> TaxonomyOptions {
        self.options
    }

    pub fn parents(&self, node: NodeId) -> &[NodeId] {
        &self.parents[node.index()]
    }

    pub fn children(&self, node: NodeId) -> &[NodeId] {
        &self.children[node.index()]
    }

    pub fn is_leaf(&self, node: NodeId) -> bool {
        self.children[node.index()].is_empty()
    }

    /// All nodes on any hypernym path from the root to `node`, including
    /// `node` itself. Sorted by handle.
    pub fn ancestors(&self, node: NodeId) -> &[NodeId] {
        &self.ancestors[node.index()]
    }

    pub fn subsumer_count(&self, node: NodeId) -> usize {
        self.ancestors[node.index()].len()
    }

    /// Largest subsumer count over the whole taxonomy.
    pub fn max_subsumer_count(&self) -> usize {
        self.max_subsumers
    }

    /// Number of distinct transitive descendants, excluding `node`.
    pub fn hyponym_count(&self, node: NodeId) -> usize {
        self.hyponyms[node.index()] as usize
    }

    /// Node count along a shortest hypernym path from the root, root = 1
    /// (root = 2 when the taxonomy counts a virtual root).
    pub fn depth(&self, node: NodeId) -> u32 {
        self.depth[node.index()]
    }

    pub fn max_depth(&self) -> u32 {
        self.depth[self.deepest.index()]
    }

    pub fn deepest(&self) -> NodeId {
        self.deepest
    }

    pub fn depth_info(&self, node: NodeId) -> DepthInfo {
        DepthInfo {
            depth: self.depth(node),
            max_depth_node: self.deepest,
            max_depth: self.max_depth(),
        }
    }

    /// Lowest common hypernym: the deepest shared ancestor. Ties go to the
    /// larger subsumer count, then the smallest [`SynsetId`].
    ///
    /// `lcs(c, c)` is always `c`. Under multiple inheritance a node can have
    /// an ancestor whose shortest root path is longer than its own, and the
    /// depth rule alone would then pick that ancestor over the node itself.
    pub fn lcs(&self, a: NodeId, b: NodeId) -> NodeId {
        if a == b {
            return a;
        }
        let mut best: Option<NodeId> = None;
        for c in SortedIntersection::new(self.ancestors(a), self.ancestors(b)) {
            best = match best {
                Some(cur) if self.lcs_order(cur, c) != Ordering::Less => Some(cur),
                _ => Some(c),
            };
        }
        // the root is always shared
        best.unwrap_or(self.root)
    }

    fn lcs_order(&self, x: NodeId, y: NodeId) -> Ordering {
        self.depth(x)
            .cmp(&self.depth(y))
            .then_with(|| self.subsumer_count(x).cmp(&self.subsumer_count(y)))
            .then_with(|| self.id(y).cmp(self.id(x)))
    }

    /// Fewest edges between `a` and `b` with hypernym links taken as
    /// undirected. Bidirectional breadth-first search.
    pub fn shortest_path_edges(&self, a: NodeId, b: NodeId) -> u32 {
        if a == b {
            return 0;
        }
        let mut seen_a: HashMap<NodeId, u32> = HashMap::from([(a, 0)]);
        let mut seen_b: HashMap<NodeId, u32> = HashMap::from([(b, 0)]);
        let mut front_a = vec![a];
        let mut front_b = vec![b];
        let mut radius_a = 0u32;
        let mut radius_b = 0u32;

        loop {
            let expand_a = front_a.len() <= front_b.len();
            let (front, seen, other, radius) = if expand_a {
                (&mut front_a, &mut seen_a, &seen_b, &mut radius_a)
            } else {
                (&mut front_b, &mut seen_b, &seen_a, &mut radius_b)
            };
            let mut next = Vec::new();
            for &u in front.iter() {
                for &v in self.parents(u).iter().chain(self.children(u)) {
                    if seen.contains_key(&v) {
                        continue;
                    }
                    if let Some(&d) = other.get(&v) {
                        // Both visited balls were disjoint before this level,
                        // so the first contact is a shortest path.
                        return *radius + 1 + d;
                    }
                    seen.insert(v, *radius + 1);
                    next.push(v);
                }
            }
            *radius += 1;
            *front = next;
            if front.is_empty() {
                unreachable!("rooted taxonomy is connected");
            }
        }
    }
}

/// Merge-intersection of two sorted slices.
struct SortedIntersection<'a> {
    a: &'a [NodeId],
    b: &'a [NodeId],
}

impl<'a> SortedIntersection<'a> {
    fn new(a: &'a [NodeId], b: &'a [NodeId]) -> Self {
        SortedIntersection { a, b }
    }
}

impl Iterator for SortedIntersection<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        while let (Some(&x), Some(&y)) = (self.a.first(), self.b.first()) {
            match x.cmp(&y) {
                Ordering::Less => self.a = &self.a[1..],
                Ordering::Greater => self.b = &self.b[1..],
                Ordering::Equal => {
                    self.a = &self.a[1..];
                    self.b = &self.b[1..];
                    return Some(x);
                }
            }
        }
        None
    }
}

/// Convenience lookups by identifier.
impl Taxonomy {
    pub fn ancestor_ids(&self, id: &str) -> Result<HashSet<&SynsetId>> {
        let node = self.resolve(id)?;
        Ok(self.ancestors(node).iter().map(|&a| self.id(a)).collect())
    }

    pub fn lcs_id(&self, a: &str, b: &str) -> Result<&SynsetId> {
        let (a, b) = (self.resolve(a)?, self.resolve(b)?);
        Ok(self.id(self.lcs(a, b)))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn synset(id: &str, parents: &[&str]) -> Synset {
        Synset {
            id: id.into(),
            lemmas: vec![id.to_lowercase()],
            gloss: String::new(),
            hypernyms: parents.iter().map(|&p| p.into()).collect(),
        }
    }

    /// R→{A,B}; A→{C,D}; C→{E,F}
    pub(crate) fn t7() -> Taxonomy {
        Taxonomy::new(vec![
            synset("R", &[]),
            synset("A", &["R"]),
            synset("B", &["R"]),
            synset("C", &["A"]),
            synset("D", &["A"]),
            synset("E", &["C"]),
            synset("F", &["C"]),
        ])
        .unwrap()
    }

    fn ids(t: &Taxonomy, nodes: &[NodeId]) -> Vec<String> {
        let mut v: Vec<String> = nodes.iter().map(|&n| t.id(n).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn ancestors_on_t7() {
        let t = t7();
        let r = t.resolve("R").unwrap();
        let e = t.resolve("E").unwrap();
        assert_eq!(ids(&t, t.ancestors(r)), ["R"]);
        assert_eq!(ids(&t, t.ancestors(e)), ["A", "C", "E", "R"]);
        assert_eq!(t.subsumer_count(r), 1);
        assert_eq!(t.subsumer_count(e), 4);
    }

    #[test]
    fn hyponym_counts_on_t7() {
        let t = t7();
        let count = |id| t.hyponym_count(t.resolve(id).unwrap());
        assert_eq!(count("E"), 0);
        assert_eq!(count("R"), 6);
        assert_eq!(count("A"), 4);
    }

    #[test]
    fn depth_on_t7() {
        let t = t7();
        assert_eq!(t.depth(t.resolve("R").unwrap()), 1);
        assert_eq!(t.depth(t.resolve("E").unwrap()), 4);
        assert_eq!(t.len(), 7);
        assert_eq!(t.max_depth(), 4);
    }

    #[test]
    fn depth_takes_shortest_parent_under_multiple_inheritance() {
        let mut s = t7().synsets().to_vec();
        s.iter_mut()
            .find(|s| s.id.as_str() == "F")
            .unwrap()
            .hypernyms
            .push("B".into());
        let t = Taxonomy::new(s).unwrap();
        let f = t.resolve("F").unwrap();
        assert_eq!(t.depth(f), 3);
        assert_eq!(ids(&t, t.ancestors(f)), ["A", "B", "C", "F", "R"]);
    }

    #[test]
    fn virtual_root_shifts_depth_only() {
        let t = Taxonomy::with_options(
            t7().synsets().to_vec(),
            TaxonomyOptions { virtual_root: true },
        )
        .unwrap();
        assert_eq!(t.depth(t.root()), 2);
        assert_eq!(t.max_depth(), 5);
        assert_eq!(t.subsumer_count(t.root()), 1);
    }

    #[test]
    fn lcs_on_t7() {
        let t = t7();
        assert_eq!(t.lcs_id("E", "F").unwrap().as_str(), "C");
        assert_eq!(t.lcs_id("D", "D").unwrap().as_str(), "D");
        assert_eq!(t.lcs_id("E", "B").unwrap().as_str(), "R");
        assert_eq!(t.lcs_id("E", "A").unwrap().as_str(), "A");
    }

    #[test]
    fn lcs_ties_prefer_subsumers_then_smallest_id() {
        // X and Y both at depth 2 and both parents of P and Q.
        let t = Taxonomy::new(vec![
            synset("R", &[]),
            synset("Y", &["R"]),
            synset("X", &["R"]),
            synset("P", &["X", "Y"]),
            synset("Q", &["Y", "X"]),
        ])
        .unwrap();
        assert_eq!(t.lcs_id("P", "Q").unwrap().as_str(), "X");

        // Z at depth 2 has more subsumers than W at depth 2.
        let t = Taxonomy::new(vec![
            synset("R", &[]),
            synset("A", &["R"]),
            synset("W", &["R"]),
            synset("Z", &["R", "A"]),
            synset("P", &["W", "Z"]),
            synset("Q", &["W", "Z"]),
        ])
        .unwrap();
        assert_eq!(t.lcs_id("P", "Q").unwrap().as_str(), "Z");
    }

    #[test]
    fn shortest_paths_on_t7() {
        let t = t7();
        let sp = |a, b| t.shortest_path_edges(t.resolve(a).unwrap(), t.resolve(b).unwrap());
        assert_eq!(sp("E", "E"), 0);
        assert_eq!(sp("E", "B"), 4);
        assert_eq!(sp("B", "E"), 4);
        assert_eq!(sp("E", "F"), 2);
        assert_eq!(sp("D", "F"), 3);
    }

    #[test]
    fn shortest_path_may_pass_through_shared_child() {
        // X and Y are only two edges apart through P, but four through R.
        let t = Taxonomy::new(vec![
            synset("R", &[]),
            synset("A", &["R"]),
            synset("B", &["R"]),
            synset("X", &["A"]),
            synset("Y", &["B"]),
            synset("P", &["X", "Y"]),
        ])
        .unwrap();
        let sp = t.shortest_path_edges(t.resolve("X").unwrap(), t.resolve("Y").unwrap());
        assert_eq!(sp, 2);
    }

    #[test]
    fn unknown_id_is_a_lookup_error() {
        let t = t7();
        assert!(matches!(t.resolve("nope"), Err(Error::UnknownSynset(s)) if s == "nope"));
        assert!(t.ancestor_ids("nope").is_err());
    }

    #[test]
    fn rejects_bad_structure() {
        let two_roots = Taxonomy::new(vec![synset("R", &[]), synset("S", &[])]);
        assert!(matches!(two_roots, Err(Error::Structure(_))));

        let cycle = Taxonomy::new(vec![
            synset("R", &[]),
            synset("A", &["R", "B"]),
            synset("B", &["A"]),
        ]);
        assert!(matches!(cycle, Err(Error::Structure(m)) if m.contains("cycle")));

        let self_loop = Taxonomy::new(vec![synset("R", &[]), synset("A", &["A"])]);
        assert!(matches!(self_loop, Err(Error::Structure(_))));

        let dangling = Taxonomy::new(vec![synset("R", &[]), synset("A", &["Q"])]);
        assert!(matches!(dangling, Err(Error::Integrity { to, .. }) if to == "Q"));

        let dup = Taxonomy::new(vec![synset("R", &[]), synset("R", &[])]);
        assert!(matches!(dup, Err(Error::Structure(_))));

        assert!(Taxonomy::new(Vec::new()).is_err());
    }
}
