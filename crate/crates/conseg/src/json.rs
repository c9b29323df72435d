//! JSON documents for contexts, lattices, taxonomies and segmentation reports.

use serde::{Deserialize, Serialize};

use conseg_core::{ConceptLattice, FormalContext, SegmentationReport, Taxonomy};

use crate::error::FormatError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDoc {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub incidence: Vec<Vec<bool>>,
}

impl ContextDoc {
    pub fn from_context(ctx: &FormalContext) -> Self {
        ContextDoc {
            objects: ctx.objects().to_vec(),
            attributes: ctx.attributes().to_vec(),
            incidence: ctx.incidence(),
        }
    }

    pub fn into_context(self) -> Result<FormalContext, FormatError> {
        Ok(FormalContext::new(self.objects, self.attributes, self.incidence)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptDoc {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    /// Labels introduced at this node.
    pub introduces: Introductions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Introductions {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub incidence: Vec<Vec<bool>>,
    pub concepts: Vec<ConceptDoc>,
    /// `[child, parent]` concept indices.
    pub covers: Vec<[usize; 2]>,
    pub top: usize,
    pub bottom: usize,
}

impl LatticeDoc {
    pub fn from_lattice(lattice: &ConceptLattice) -> Self {
        let ctx = lattice.context();
        let concepts = (0..lattice.len())
            .map(|c| ConceptDoc {
                extent: lattice.extent_names(c),
                intent: lattice.intent_names(c),
                introduces: Introductions {
                    objects: lattice.introduced_objects(c).into_iter().map(|g| ctx.objects()[g].clone()).collect(),
                    attributes: lattice
                        .introduced_attributes(c)
                        .into_iter()
                        .map(|m| ctx.attributes()[m].clone())
                        .collect(),
                },
            })
            .collect();
        LatticeDoc {
            objects: ctx.objects().to_vec(),
            attributes: ctx.attributes().to_vec(),
            incidence: ctx.incidence(),
            concepts,
            covers: lattice.covers().iter().map(|&(c, p)| [c, p]).collect(),
            top: lattice.top(),
            bottom: lattice.bottom(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyNodes {
    pub verbs: Vec<String>,
    pub nouns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    pub nodes: TaxonomyNodes,
    pub edges: Vec<[String; 2]>,
}

impl TaxonomyDoc {
    pub fn from_taxonomy(t: &Taxonomy) -> Self {
        TaxonomyDoc {
            root: Some(t.root().to_string()),
            nodes: TaxonomyNodes {
                verbs: t.verbs().iter().cloned().collect(),
                nouns: t.nouns().iter().cloned().collect(),
            },
            edges: t.edges().map(|(p, c)| [p.to_string(), c.to_string()]).collect(),
        }
    }

    pub fn into_taxonomy(self) -> Result<Taxonomy, FormatError> {
        let edges = self.edges.into_iter().map(|[p, c]| (p, c));
        Ok(Taxonomy::from_edges(self.root.as_deref(), self.nodes.verbs, self.nodes.nouns, edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDoc {
    pub id: usize,
    pub members: Vec<usize>,
    pub terms: Vec<String>,
    pub segments: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentationDoc {
    pub k: usize,
    pub m: usize,
    pub selected_terms: Vec<String>,
    pub excluded: Vec<usize>,
    pub clusters: Vec<ClusterDoc>,
}

impl SegmentationDoc {
    pub fn from_report(r: &SegmentationReport) -> Self {
        SegmentationDoc {
            k: r.k,
            m: r.m,
            selected_terms: r.selected_terms.clone(),
            excluded: r.excluded.clone(),
            clusters: r
                .segmentations
                .iter()
                .map(|c| ClusterDoc {
                    id: c.id(),
                    members: c.members.clone(),
                    terms: c.terms().to_vec(),
                    segments: c.segments().iter().map(|s| [s.start, s.end]).collect(),
                })
                .collect(),
        }
    }
}

/// Pretty-printed with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_context_json(input: &str) -> Result<FormalContext, FormatError> {
    serde_json::from_str::<ContextDoc>(input)?.into_context()
}

pub fn parse_taxonomy_json(input: &str) -> Result<Taxonomy, FormatError> {
    serde_json::from_str::<TaxonomyDoc>(input)?.into_taxonomy()
}
