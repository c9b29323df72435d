//! Quasi-tree taxonomies read off a concept lattice.
//!
//! Verbs (attributes) are internal nodes and nouns (objects) are leaves. A
//! node may have several parents. Extraction works with *anchors*: the anchor
//! of a lattice node is the attribute introduced there, or, when it introduces
//! none, the anchors of its upper covers. Each anchor of a node gets an edge to
//! every object introduced at the node and to every attribute introduced at
//! one of its lower covers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::ConceptLattice;

/// Name of the root added when the lattice top introduces no attribute, or
/// more than one.
pub const SYNTHETIC_ROOT: &str = "⊤";

/// Why an edge exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeOrigin {
    /// Object introduced at this lattice node, hung under the node's anchor.
    Introduction { concept: usize },
    /// Attribute introduced at `lower`, a lower cover of `upper`.
    Cover { upper: usize, lower: usize },
    /// Edge from the synthetic root to a top-level attribute.
    SyntheticRoot,
    /// Edge supplied by the caller (deserialized or hand-built).
    Given,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    root: String,
    verbs: BTreeSet<String>,
    nouns: BTreeSet<String>,
    edges: BTreeMap<(String, String), Vec<EdgeOrigin>>,
    children: BTreeMap<String, BTreeSet<String>>,
}

impl Taxonomy {
    /// Builds and validates a taxonomy from explicit edges.
    ///
    /// With `root == None` the root is the unique node without parents.
    pub fn from_edges<V, N, E>(root: Option<&str>, verbs: V, nouns: N, edges: E) -> Result<Taxonomy>
    where
        V: IntoIterator<Item = String>,
        N: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String)>,
    {
        let traced = edges.into_iter().map(|e| (e, alloc::vec![EdgeOrigin::Given]));
        Self::assemble(root, verbs.into_iter().collect(), nouns.into_iter().collect(), traced.collect())
    }

    fn assemble(
        root: Option<&str>,
        mut verbs: BTreeSet<String>,
        nouns: BTreeSet<String>,
        edges: BTreeMap<(String, String), Vec<EdgeOrigin>>,
    ) -> Result<Taxonomy> {
        let invalid = |msg: String| Error::InvalidTaxonomy(msg);
        let known = |n: &str| verbs.contains(n) || nouns.contains(n);
        let mut children: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut has_parent = BTreeSet::new();
        for (parent, child) in edges.keys() {
            for end in [parent, child] {
                if !known(end) {
                    return Err(invalid(format!("edge endpoint `{end}` is not a node")));
                }
            }
            if parent == child {
                return Err(invalid(format!("self-loop on `{parent}`")));
            }
            if !verbs.contains(parent) {
                return Err(invalid(format!("noun `{parent}` has a child")));
            }
            children.entry(parent.clone()).or_default().insert(child.clone());
            has_parent.insert(child.as_str());
        }

        let root = match root {
            Some(r) => r.to_string(),
            None => {
                let mut roots = verbs.iter().chain(&nouns).filter(|n| !has_parent.contains(n.as_str()));
                let first = roots.next().ok_or_else(|| invalid("no parentless node".into()))?;
                if let Some(second) = roots.find(|n| *n != first) {
                    return Err(invalid(format!("several parentless nodes: `{first}`, `{second}`")));
                }
                first.clone()
            }
        };
        if root == SYNTHETIC_ROOT {
            verbs.insert(root.clone());
        }
        if !verbs.contains(&root) && !nouns.contains(&root) {
            return Err(invalid(format!("root `{root}` is not a node")));
        }
        if has_parent.contains(root.as_str()) {
            return Err(invalid(format!("root `{root}` has a parent")));
        }

        let tax = Taxonomy { root, verbs, nouns, edges, children };
        tax.check_structure()?;
        Ok(tax)
    }

    fn check_structure(&self) -> Result<()> {
        // Iterative DFS with colors: catches cycles and records reachability.
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        let mut marks: BTreeMap<&str, Mark> = BTreeMap::new();
        let mut stack: Vec<(&str, bool)> = alloc::vec![(self.root.as_str(), false)];
        while let Some((node, leaving)) = stack.pop() {
            if leaving {
                marks.insert(node, Mark::Done);
                continue;
            }
            match marks.get(node) {
                Some(Mark::Done) => continue,
                Some(Mark::Active) => continue,
                None => {}
            }
            marks.insert(node, Mark::Active);
            stack.push((node, true));
            for child in self.children_of(node) {
                match marks.get(child.as_str()) {
                    Some(Mark::Active) => {
                        return Err(Error::InvalidTaxonomy(format!("cycle through `{child}`")));
                    }
                    Some(Mark::Done) => {}
                    None => stack.push((child.as_str(), false)),
                }
            }
        }
        if let Some(orphan) = self.nodes().find(|n| !marks.contains_key(n.as_str())) {
            return Err(Error::InvalidTaxonomy(format!("`{orphan}` is not reachable from the root")));
        }
        Ok(())
    }

    fn children_of(&self, node: &str) -> impl Iterator<Item = &String> {
        self.children.get(node).into_iter().flatten()
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn has_synthetic_root(&self) -> bool {
        self.root == SYNTHETIC_ROOT
    }

    /// Attribute terms, including the synthetic root if present.
    pub fn verbs(&self) -> &BTreeSet<String> {
        &self.verbs
    }

    pub fn nouns(&self) -> &BTreeSet<String> {
        &self.nouns
    }

    /// Every node name, sorted, each once.
    pub fn nodes(&self) -> impl Iterator<Item = &String> {
        let verbs = self.verbs.iter();
        let extra = self.nouns.iter().filter(|n| !self.verbs.contains(*n));
        let mut all: Vec<&String> = verbs.chain(extra).collect();
        all.sort();
        all.into_iter()
    }

    /// Node names excluding the synthetic root.
    pub fn concept_terms(&self) -> Vec<String> {
        self.nodes().filter(|n| *n != SYNTHETIC_ROOT || !self.has_synthetic_root()).cloned().collect()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.verbs.contains(term) || self.nouns.contains(term)
    }

    /// `(parent, child)` pairs in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.keys().map(|(p, c)| (p.as_str(), c.as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Lattice justification(s) of an edge.
    pub fn edge_origins(&self, parent: &str, child: &str) -> Option<&[EdgeOrigin]> {
        self.edges.get(&(parent.to_string(), child.to_string())).map(Vec::as_slice)
    }

    pub fn parents(&self, term: &str) -> Vec<&str> {
        self.edges().filter(|(_, c)| *c == term).map(|(p, _)| p).collect()
    }

    /// Children of `term`, sorted.
    pub fn direct_descendants(&self, term: &str) -> Result<Vec<&str>> {
        if !self.contains(term) {
            return Err(Error::UnknownTerm(term.to_string()));
        }
        Ok(self.children_of(term).map(String::as_str).collect())
    }

    /// Every simple path from the root to a node without children, in
    /// depth-first order with children visited alphabetically.
    pub fn root_to_leaf_paths(&self) -> Vec<Vec<String>> {
        let mut paths = Vec::new();
        let mut path = alloc::vec![self.root.clone()];
        self.collect_paths(&mut path, &mut paths);
        paths
    }

    fn collect_paths(&self, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        let last = path.last().expect("path never empty").clone();
        let mut any = false;
        for child in self.children_of(&last) {
            any = true;
            path.push(child.clone());
            self.collect_paths(path, out);
            path.pop();
        }
        if !any {
            out.push(path.clone());
        }
    }

    /// Applies a user-supplied relabelling (e.g. `joinable` → `join`).
    /// Names absent from the map are kept.
    pub fn renamed(&self, map: &BTreeMap<String, String>) -> Result<Taxonomy> {
        let rename = |n: &String| map.get(n).cloned().unwrap_or_else(|| n.clone());
        let verbs: BTreeSet<String> = self.verbs.iter().map(rename).collect();
        let nouns: BTreeSet<String> = self.nouns.iter().map(rename).collect();
        if verbs.len() != self.verbs.len() || nouns.len() != self.nouns.len() {
            return Err(Error::InvalidTaxonomy("rename map merges distinct nodes".into()));
        }
        let mut edges = BTreeMap::new();
        for ((p, c), origin) in &self.edges {
            edges.insert((rename(p), rename(c)), origin.clone());
        }
        Self::assemble(Some(&rename(&self.root)), verbs, nouns, edges)
    }
}

/// Derives the quasi-tree taxonomy of a concept lattice.
///
/// Several attributes introduced at one node (an unclarified context) become
/// sibling nodes that share that node's parents and children.
pub fn extract_taxonomy(lattice: &ConceptLattice) -> Taxonomy {
    let ctx = lattice.context();
    let attr_name = |m: usize| ctx.attributes()[m].clone();
    let obj_name = |g: usize| ctx.objects()[g].clone();

    let mut edges: BTreeMap<(String, String), Vec<EdgeOrigin>> = BTreeMap::new();
    let mut add = |parent: &String, child: String, origin: EdgeOrigin| {
        if *parent != child {
            edges.entry((parent.clone(), child)).or_default().push(origin);
        }
    };

    // Concepts are sorted by descending extent size, so upper covers always
    // precede their lower covers.
    let mut anchors: Vec<BTreeSet<String>> = alloc::vec![BTreeSet::new(); lattice.len()];
    let top = lattice.top();
    let top_attrs: Vec<String> = lattice.introduced_attributes(top).into_iter().map(attr_name).collect();
    let root = match top_attrs.as_slice() {
        [single] => single.clone(),
        _ => SYNTHETIC_ROOT.to_string(),
    };
    let synthetic = SYNTHETIC_ROOT.to_string();
    for a in &top_attrs {
        if top_attrs.len() > 1 {
            add(&synthetic, a.clone(), EdgeOrigin::SyntheticRoot);
        }
    }

    for node in 0..lattice.len() {
        let introduced: BTreeSet<String> = lattice.introduced_attributes(node).into_iter().map(attr_name).collect();
        anchors[node] = if node == top && introduced.is_empty() {
            BTreeSet::from([synthetic.clone()])
        } else if !introduced.is_empty() {
            introduced
        } else {
            lattice.upper_covers(node).iter().flat_map(|&p| anchors[p].iter().cloned()).collect()
        };

        for anchor in &anchors[node] {
            for g in lattice.introduced_objects(node) {
                add(anchor, obj_name(g), EdgeOrigin::Introduction { concept: node });
            }
            for &lower in lattice.lower_covers(node) {
                for m in lattice.introduced_attributes(lower) {
                    add(anchor, attr_name(m), EdgeOrigin::Cover { upper: node, lower });
                }
            }
        }
    }

    let mut verbs: BTreeSet<String> = ctx.attributes().iter().cloned().collect();
    if root == SYNTHETIC_ROOT {
        verbs.insert(synthetic);
    }
    let nouns = ctx.objects().iter().cloned().collect();
    Taxonomy::assemble(Some(&root), verbs, nouns, edges)
        .expect("lattice-derived taxonomy is a rooted acyclic quasi-tree")
}
