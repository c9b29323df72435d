//! Formal concepts, their enumeration, and the concept lattice with its
//! covering relation and object/attribute introduction nodes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::bitset::BitSet;
use crate::context::FormalContext;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: BitSet,
    pub intent: BitSet,
}

impl FormalConcept {
    /// Subconcept order: extent inclusion.
    pub fn leq(&self, other: &FormalConcept) -> bool {
        self.extent.is_subset(&other.extent)
    }
}

pub fn concept_leq(a: &FormalConcept, b: &FormalConcept) -> bool {
    a.leq(b)
}

/// All formal concepts, each exactly once, ordered by descending extent size
/// with ties broken by the lexicographic order of the extent's indices.
///
/// Closed extents are generated in lectic order (NextClosure over objects)
/// and sorted afterwards.
pub fn enumerate_concepts(ctx: &FormalContext) -> Vec<FormalConcept> {
    let n = ctx.object_count();
    let mut extents = Vec::new();
    let mut current = Some(ctx.object_closure(&BitSet::empty(n)));
    while let Some(extent) = current {
        current = next_closure(ctx, &extent);
        extents.push(extent);
    }
    extents.sort_by(|a, b| (Reverse(a.count()), a).cmp(&(Reverse(b.count()), b)));
    extents
        .into_iter()
        .map(|extent| {
            let intent = ctx.common_attributes(&extent);
            FormalConcept { extent, intent }
        })
        .collect()
}

fn next_closure(ctx: &FormalContext, current: &BitSet) -> Option<BitSet> {
    let n = ctx.object_count();
    for g in (0..n).rev() {
        if current.contains(g) {
            continue;
        }
        let mut seed = BitSet::from_indices(n, current.iter().take_while(|&h| h < g));
        seed.insert(g);
        let closed = ctx.object_closure(&seed);
        // Canonicity: the closure may not add anything below g.
        if closed.iter().take_while(|&h| h < g).eq(current.iter().take_while(|&h| h < g)) {
            return Some(closed);
        }
    }
    None
}

/// Concept lattice of a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<FormalConcept>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
    object_concepts: Vec<usize>,
    attribute_concepts: Vec<usize>,
}

impl ConceptLattice {
    pub fn build(context: &FormalContext) -> ConceptLattice {
        let concepts = enumerate_concepts(context);
        let index: BTreeMap<&BitSet, usize> = concepts.iter().enumerate().map(|(i, c)| (&c.extent, i)).collect();
        let n_obj = context.object_count();

        let mut upper = alloc::vec![Vec::new(); concepts.len()];
        let mut lower = alloc::vec![Vec::new(); concepts.len()];
        let mut covers = Vec::new();
        for (child, concept) in concepts.iter().enumerate() {
            // Every upper cover is the closure of the extent plus one object;
            // the covers are the minimal such closures.
            let mut candidates: Vec<BitSet> = (0..n_obj)
                .filter(|&g| !concept.extent.contains(g))
                .map(|g| {
                    let mut seed = concept.extent.clone();
                    seed.insert(g);
                    context.object_closure(&seed)
                })
                .collect();
            candidates.sort();
            candidates.dedup();
            for cand in &candidates {
                if candidates.iter().any(|other| other.is_strict_subset(cand)) {
                    continue;
                }
                let parent = index[cand];
                upper[child].push(parent);
                lower[parent].push(child);
                covers.push((child, parent));
            }
        }
        covers.sort_unstable();
        for list in upper.iter_mut().chain(lower.iter_mut()) {
            list.sort_unstable();
        }

        let full = BitSet::full(n_obj);
        let top = index[&full];
        let bottom = index[&context.common_objects(&BitSet::full(context.attribute_count()))];
        let object_concepts =
            (0..n_obj).map(|g| index[&context.object_closure(&BitSet::from_indices(n_obj, [g]))]).collect();
        let attribute_concepts = (0..context.attribute_count()).map(|m| index[context.column(m)]).collect();

        ConceptLattice {
            context: context.clone(),
            concepts,
            covers,
            upper,
            lower,
            top,
            bottom,
            object_concepts,
            attribute_concepts,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Hasse diagram as `(child, parent)` pairs, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, concept: usize) -> &[usize] {
        &self.upper[concept]
    }

    pub fn lower_covers(&self, concept: usize) -> &[usize] {
        &self.lower[concept]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Concept at which object `g` is introduced (its object concept).
    pub fn object_concept(&self, object: usize) -> usize {
        self.object_concepts[object]
    }

    /// Concept at which attribute `m` is introduced (its attribute concept).
    pub fn attribute_concept(&self, attribute: usize) -> usize {
        self.attribute_concepts[attribute]
    }

    pub fn introduced_objects(&self, concept: usize) -> Vec<usize> {
        (0..self.object_concepts.len()).filter(|&g| self.object_concepts[g] == concept).collect()
    }

    pub fn introduced_attributes(&self, concept: usize) -> Vec<usize> {
        (0..self.attribute_concepts.len()).filter(|&m| self.attribute_concepts[m] == concept).collect()
    }

    pub fn extent_names(&self, concept: usize) -> Vec<String> {
        let objects = self.context.objects();
        self.concepts[concept].extent.iter().map(|g| objects[g].clone()).collect()
    }

    pub fn intent_names(&self, concept: usize) -> Vec<String> {
        let attributes = self.context.attributes();
        self.concepts[concept].intent.iter().map(|m| attributes[m].clone()).collect()
    }

    pub fn find_by_extent(&self, extent: &BitSet) -> Option<usize> {
        self.concepts.iter().position(|c| &c.extent == extent)
    }
}
