//! Formal contexts: the object/attribute incidence table, the two derivation
//! operators, clarification and reduction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Objects × attributes incidence table.
///
/// Rows (object intents) and columns (attribute extents) are both stored so
/// either derivation is a plain intersection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
}

impl FormalContext {
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: Vec<Vec<bool>>) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::ShapeMismatch { what: "rows", expected: objects.len(), actual: incidence.len() });
        }
        if let Some(row) = incidence.iter().find(|r| r.len() != attributes.len()) {
            return Err(Error::ShapeMismatch { what: "columns", expected: attributes.len(), actual: row.len() });
        }
        let pairs = incidence
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().enumerate().filter(|(_, &x)| x).map(move |(m, _)| (g, m)));
        Self::from_pairs(objects, attributes, pairs)
    }

    /// Builds a context from `(object index, attribute index)` incidences.
    pub fn from_pairs<I>(objects: Vec<String>, attributes: Vec<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_distinct("object", &objects)?;
        check_distinct("attribute", &attributes)?;
        let (n_obj, n_attr) = (objects.len(), attributes.len());
        let mut rows = alloc::vec![BitSet::empty(n_attr); n_obj];
        let mut cols = alloc::vec![BitSet::empty(n_obj); n_attr];
        for (g, m) in pairs {
            if g >= n_obj {
                return Err(Error::IndexOutOfRange { kind: "object", index: g, len: n_obj });
            }
            if m >= n_attr {
                return Err(Error::IndexOutOfRange { kind: "attribute", index: m, len: n_attr });
            }
            rows[g].insert(m);
            cols[m].insert(g);
        }
        Ok(FormalContext { objects, attributes, rows, cols })
    }

    fn from_rows_unchecked(objects: Vec<String>, attributes: Vec<String>, rows: Vec<BitSet>) -> Self {
        let mut cols = alloc::vec![BitSet::empty(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row {
                cols[m].insert(g);
            }
        }
        FormalContext { objects, attributes, rows, cols }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() || self.attributes.is_empty()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn has(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// Intent of a single object, `{g}'`.
    pub fn row(&self, object: usize) -> &BitSet {
        &self.rows[object]
    }

    /// Extent of a single attribute, `{m}'`.
    pub fn column(&self, attribute: usize) -> &BitSet {
        &self.cols[attribute]
    }

    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.rows.iter().map(|r| (0..self.attributes.len()).map(|m| r.contains(m)).collect()).collect()
    }

    pub fn object_set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<BitSet> {
        let len = self.objects.len();
        BitSet::try_from_indices(len, indices).map_err(|index| Error::IndexOutOfRange { kind: "object", index, len })
    }

    pub fn attribute_set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<BitSet> {
        let len = self.attributes.len();
        BitSet::try_from_indices(len, indices).map_err(|index| Error::IndexOutOfRange { kind: "attribute", index, len })
    }

    /// Attributes shared by every object in `objects` (all attributes for ∅).
    pub fn derive_attrs(&self, objects: &[usize]) -> Result<BitSet> {
        Ok(self.common_attributes(&self.object_set(objects.iter().copied())?))
    }

    /// Objects having every attribute in `attributes` (all objects for ∅).
    pub fn derive_objs(&self, attributes: &[usize]) -> Result<BitSet> {
        Ok(self.common_objects(&self.attribute_set(attributes.iter().copied())?))
    }

    /// `A'` for an object set over this context's object universe.
    pub fn common_attributes(&self, objects: &BitSet) -> BitSet {
        assert_eq!(objects.universe(), self.objects.len(), "object set from another context");
        let mut out = BitSet::full(self.attributes.len());
        for g in objects {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B'` for an attribute set over this context's attribute universe.
    pub fn common_objects(&self, attributes: &BitSet) -> BitSet {
        assert_eq!(attributes.universe(), self.attributes.len(), "attribute set from another context");
        let mut out = BitSet::full(self.objects.len());
        for m in attributes {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    /// `A''`.
    pub fn object_closure(&self, objects: &BitSet) -> BitSet {
        self.common_objects(&self.common_attributes(objects))
    }

    /// `B''`.
    pub fn attribute_closure(&self, attributes: &BitSet) -> BitSet {
        self.common_attributes(&self.common_objects(attributes))
    }

    pub fn is_concept(&self, extent: &[usize], intent: &[usize]) -> Result<bool> {
        let extent = self.object_set(extent.iter().copied())?;
        let intent = self.attribute_set(intent.iter().copied())?;
        Ok(self.common_attributes(&extent) == intent && self.common_objects(&intent) == extent)
    }

    pub fn is_clarified(&self) -> bool {
        has_no_duplicates(&self.rows) && has_no_duplicates(&self.cols)
    }

    fn require_clarified(&self) -> Result<()> {
        if let Some((a, b)) = first_duplicate(&self.rows) {
            return Err(Error::NotClarified(format!(
                "objects `{}` and `{}` have equal intents",
                self.objects[a], self.objects[b]
            )));
        }
        if let Some((a, b)) = first_duplicate(&self.cols) {
            return Err(Error::NotClarified(format!(
                "attributes `{}` and `{}` have equal extents",
                self.attributes[a], self.attributes[b]
            )));
        }
        Ok(())
    }

    /// Merges objects with equal intents, then attributes with equal extents.
    ///
    /// Each group keeps the position of its first member and is named by its
    /// members' names, sorted and joined with `+`.
    pub fn clarify(&self) -> (FormalContext, ClarifyReport) {
        let (objects, rows, object_groups) = merge_equal(&self.objects, &self.rows);
        let object_clarified = FormalContext::from_rows_unchecked(objects, self.attributes.clone(), rows);
        let (attributes, cols, attribute_groups) = merge_equal(&object_clarified.attributes, &object_clarified.cols);
        let transposed = FormalContext::from_rows_unchecked(attributes, object_clarified.objects, cols);
        let clarified = transposed.transpose();
        (clarified, ClarifyReport { object_groups, attribute_groups })
    }

    /// Swaps the roles of objects and attributes.
    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Returns an inclusion-minimal witness `S ⊆ M \ {m}` with
    /// `m' = ⋂_{s∈S} s'` if `m` is reducible, `None` otherwise.
    /// The intersection over an empty family is the full object set.
    pub fn is_reducible_attribute(&self, attribute: usize) -> Result<Option<BitSet>> {
        self.require_clarified()?;
        if attribute >= self.attributes.len() {
            return Err(Error::IndexOutOfRange { kind: "attribute", index: attribute, len: self.attributes.len() });
        }
        Ok(reduction_witness(&self.cols, attribute, self.objects.len()))
    }

    /// Dual of [`FormalContext::is_reducible_attribute`].
    pub fn is_reducible_object(&self, object: usize) -> Result<Option<BitSet>> {
        self.require_clarified()?;
        if object >= self.objects.len() {
            return Err(Error::IndexOutOfRange { kind: "object", index: object, len: self.objects.len() });
        }
        Ok(reduction_witness(&self.rows, object, self.attributes.len()))
    }

    pub fn remove_attribute(&self, attribute: usize) -> FormalContext {
        self.transpose().remove_object(attribute).transpose()
    }

    pub fn remove_object(&self, object: usize) -> FormalContext {
        let mut objects = self.objects.clone();
        objects.remove(object);
        let mut rows = self.rows.clone();
        rows.remove(object);
        let cols = self.cols.iter().map(|c| c.without_index(object)).collect();
        FormalContext { objects, attributes: self.attributes.clone(), rows, cols }
    }

    /// Deletes reducible attributes, then reducible objects, one at a time in
    /// list order, re-checking after every deletion, until none remain.
    pub fn reduce(&self) -> Result<(FormalContext, ReductionReport)> {
        self.require_clarified()?;
        let mut ctx = self.clone();
        let mut report = ReductionReport::default();
        'outer: loop {
            for m in 0..ctx.attributes.len() {
                if reduction_witness(&ctx.cols, m, ctx.objects.len()).is_some() {
                    report.removed_attributes.push(ctx.attributes[m].clone());
                    ctx = ctx.remove_attribute(m);
                    continue 'outer;
                }
            }
            for g in 0..ctx.objects.len() {
                if reduction_witness(&ctx.rows, g, ctx.attributes.len()).is_some() {
                    report.removed_objects.push(ctx.objects[g].clone());
                    ctx = ctx.remove_object(g);
                    continue 'outer;
                }
            }
            break;
        }
        Ok((ctx, report))
    }
}

/// Groups merged by [`FormalContext::clarify`]; singletons are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClarifyReport {
    pub object_groups: Vec<Vec<String>>,
    pub attribute_groups: Vec<Vec<String>>,
}

impl ClarifyReport {
    pub fn is_empty(&self) -> bool {
        self.object_groups.is_empty() && self.attribute_groups.is_empty()
    }
}

/// Names deleted by [`FormalContext::reduce`], in deletion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub removed_attributes: Vec<String>,
    pub removed_objects: Vec<String>,
}

fn check_distinct(kind: &'static str, names: &[String]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for name in names {
        if seen.insert(name.as_str(), ()).is_some() {
            return Err(Error::DuplicateName { kind, name: name.clone() });
        }
    }
    Ok(())
}

fn first_duplicate(sets: &[BitSet]) -> Option<(usize, usize)> {
    let mut seen: BTreeMap<&BitSet, usize> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        if let Some(&j) = seen.get(s) {
            return Some((j, i));
        }
        seen.insert(s, i);
    }
    None
}

fn has_no_duplicates(sets: &[BitSet]) -> bool {
    first_duplicate(sets).is_none()
}

fn merge_equal(names: &[String], sets: &[BitSet]) -> (Vec<String>, Vec<BitSet>, Vec<Vec<String>>) {
    let mut group_of: BTreeMap<&BitSet, usize> = BTreeMap::new();
    let mut groups: Vec<(Vec<String>, BitSet)> = Vec::new();
    for (name, set) in names.iter().zip(sets) {
        match group_of.get(set) {
            Some(&g) => groups[g].0.push(name.clone()),
            None => {
                group_of.insert(set, groups.len());
                groups.push((alloc::vec![name.clone()], set.clone()));
            }
        }
    }
    let mut merged_names = Vec::with_capacity(groups.len());
    let mut merged_sets = Vec::with_capacity(groups.len());
    let mut report = Vec::new();
    for (mut members, set) in groups {
        members.sort();
        merged_names.push(members.join("+"));
        merged_sets.push(set);
        if members.len() > 1 {
            report.push(members);
        }
    }
    (merged_names, merged_sets, report)
}

/// Shared by both reducibility checks: `sets[target]` against intersections
/// of the other sets. In a clarified context only strict supersets can take
/// part in such an intersection.
fn reduction_witness(sets: &[BitSet], target: usize, universe: usize) -> Option<BitSet> {
    let own = &sets[target];
    let candidates: Vec<usize> = (0..sets.len()).filter(|&s| s != target && own.is_strict_subset(&sets[s])).collect();
    let meet = |members: &mut dyn Iterator<Item = usize>| {
        let mut acc = BitSet::full(universe);
        for s in members {
            acc.intersect_with(&sets[s]);
        }
        acc
    };
    if &meet(&mut candidates.iter().copied()) != own {
        return None;
    }
    let mut witness = BitSet::from_indices(sets.len(), candidates.iter().copied());
    for &s in &candidates {
        witness.remove(s);
        if &meet(&mut witness.iter()) != own {
            witness.insert(s);
        }
    }
    Some(witness)
}
