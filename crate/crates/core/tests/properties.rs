use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use conseg_core::{
    build_context, cluster_to_segmentation, enumerate_concepts, extract_taxonomy, filter_frequent, kmeans, BitSet,
    ConceptLattice, Error, FormalContext, SentenceVector, Taxonomy, VerbNounPair,
};

fn context_strategy(max: usize) -> impl Strategy<Value = FormalContext> {
    (0..=max, 0..=max)
        .prop_flat_map(|(g, m)| proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), g))
        .prop_map(|rows| {
            let g = rows.len();
            let m = rows.first().map_or(0, Vec::len);
            let objects = (0..g).map(|i| format!("g{i}")).collect();
            let attributes = (0..m).map(|j| format!("m{j}")).collect();
            FormalContext::new(objects, attributes, rows).unwrap()
        })
}

fn subset(len: usize, mask: u64) -> BitSet {
    BitSet::from_indices(len, (0..len).filter(|i| mask >> i & 1 == 1))
}

/// All `(A'', A')` for `A ⊆ G`, straight from the definition.
fn brute_force_concepts(ctx: &FormalContext) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let g = ctx.object_count();
    (0..1u64 << g)
        .map(|mask| {
            let a = subset(g, mask);
            let intent = ctx.common_attributes(&a);
            let extent = ctx.common_objects(&intent);
            (extent.to_vec(), intent.to_vec())
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn galois_connection(ctx in context_strategy(6), a in any::<u64>(), a2 in any::<u64>(), b in any::<u64>()) {
        let (g, m) = (ctx.object_count(), ctx.attribute_count());
        let small = subset(g, a & a2);
        let large = subset(g, a);
        let attrs = subset(m, b);

        // extensivity
        prop_assert!(large.is_subset(&ctx.object_closure(&large)));
        prop_assert!(attrs.is_subset(&ctx.attribute_closure(&attrs)));
        // idempotence of the double derivation
        let closed = ctx.object_closure(&large);
        prop_assert_eq!(ctx.object_closure(&closed), closed);
        let closed = ctx.attribute_closure(&attrs);
        prop_assert_eq!(ctx.attribute_closure(&closed), closed);
        // antitonicity
        prop_assert!(small.is_subset(&large));
        prop_assert!(ctx.common_attributes(&large).is_subset(&ctx.common_attributes(&small)));
        let fewer = subset(m, b & a2);
        prop_assert!(ctx.common_objects(&attrs).is_subset(&ctx.common_objects(&fewer)));
        // adjunction: A ⊆ B' iff B ⊆ A'
        prop_assert_eq!(
            large.is_subset(&ctx.common_objects(&attrs)),
            attrs.is_subset(&ctx.common_attributes(&large))
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn concepts_match_brute_force(ctx in context_strategy(6)) {
        let found: Vec<(Vec<usize>, Vec<usize>)> =
            enumerate_concepts(&ctx).into_iter().map(|c| (c.extent.to_vec(), c.intent.to_vec())).collect();
        let as_set: BTreeSet<_> = found.iter().cloned().collect();
        prop_assert_eq!(as_set.len(), found.len(), "duplicates");
        prop_assert_eq!(as_set, brute_force_concepts(&ctx));
        // Larger extents come first.
        prop_assert!(found.windows(2).all(|w| w[0].0.len() >= w[1].0.len()));
    }

    #[test]
    fn clarify_and_reduce_keep_the_lattice_size(ctx in context_strategy(6)) {
        let n = enumerate_concepts(&ctx).len();
        let (clarified, _) = ctx.clarify();
        prop_assert!(clarified.is_clarified());
        prop_assert_eq!(enumerate_concepts(&clarified).len(), n);
        prop_assert_eq!(clarified.clarify().0, clarified.clone());

        let (reduced, _) = clarified.reduce().unwrap();
        prop_assert_eq!(enumerate_concepts(&reduced).len(), n);
        let (again, report) = reduced.reduce().unwrap();
        prop_assert_eq!(again, reduced.clone());
        prop_assert!(report.removed_attributes.is_empty() && report.removed_objects.is_empty());
        for m in 0..reduced.attribute_count() {
            prop_assert!(reduced.is_reducible_attribute(m).unwrap().is_none());
        }
        for g in 0..reduced.object_count() {
            prop_assert!(reduced.is_reducible_object(g).unwrap().is_none());
        }
    }

    #[test]
    fn covers_are_the_transitive_reduction(ctx in context_strategy(5)) {
        let lattice = ConceptLattice::build(&ctx);
        let concepts = lattice.concepts();
        let below = |x: usize, y: usize| x != y && concepts[x].extent.is_subset(&concepts[y].extent);
        let mut expected = Vec::new();
        for x in 0..concepts.len() {
            for y in 0..concepts.len() {
                if below(x, y) && !(0..concepts.len()).any(|z| below(x, z) && below(z, y)) {
                    expected.push((x, y));
                }
            }
        }
        expected.sort_unstable();
        prop_assert_eq!(lattice.covers(), expected.as_slice());
        prop_assert!(lattice.upper_covers(lattice.top()).is_empty());
        prop_assert!(lattice.lower_covers(lattice.bottom()).is_empty());
    }

    #[test]
    fn taxonomy_invariants(ctx in context_strategy(6)) {
        let lattice = ConceptLattice::build(&ctx);
        let t = extract_taxonomy(&lattice);
        for name in ctx.objects().iter().chain(ctx.attributes()) {
            prop_assert!(t.contains(name), "{} missing", name);
        }
        for noun in ctx.objects() {
            prop_assert!(t.direct_descendants(noun).unwrap().is_empty());
            prop_assert!(!t.parents(noun).is_empty() || t.root() == noun.as_str());
        }
        for (p, c) in t.edges() {
            prop_assert!(!t.edge_origins(p, c).unwrap().is_empty());
        }
        // Rebuilding from the bare edge list re-validates acyclicity and reachability.
        let rebuilt = Taxonomy::from_edges(
            Some(t.root()),
            t.verbs().iter().cloned(),
            t.nouns().iter().cloned(),
            t.edges().map(|(p, c)| (p.to_string(), c.to_string())),
        );
        prop_assert!(rebuilt.is_ok(), "{:?}", rebuilt.err());
        let paths = t.root_to_leaf_paths();
        prop_assert!(paths.iter().all(|p| p[0] == t.root()));
    }
}

fn vectors_strategy() -> impl Strategy<Value = (Vec<SentenceVector>, usize)> {
    (1usize..=50, 1usize..=10, 1usize..=5).prop_flat_map(|(n, m, k)| {
        (proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0u8), 2 => 1u8..5], m), n), Just(k))
            .prop_map(|(rows, k)| {
                let vectors = rows
                    .into_iter()
                    .enumerate()
                    .map(|(i, r)| SentenceVector { sentence: i + 1, values: r.into_iter().map(f64::from).collect() })
                    .collect();
                (vectors, k)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kmeans_properties((vectors, k) in vectors_strategy()) {
        let nonzero: Vec<usize> = vectors.iter().filter(|v| !v.is_zero()).map(|v| v.sentence).collect();
        let result = kmeans(&vectors, k, 100);
        if nonzero.len() < k {
            prop_assert!(
                matches!(result, Err(Error::TooFewVectors { .. })),
                "expected an error for {} non-zero vectors", nonzero.len()
            );
            return Ok(());
        }
        let result = result.unwrap();
        prop_assert!(result.iterations <= 100);
        prop_assert!(!result.clusters.is_empty() && result.clusters.len() <= k);

        let mut members: Vec<usize> = result.clusters.iter().flatten().copied().collect();
        prop_assert!(result.clusters.iter().all(|c| !c.is_empty()));
        members.sort_unstable();
        prop_assert_eq!(&members, &nonzero);
        let excluded: Vec<usize> = vectors.iter().filter(|v| v.is_zero()).map(|v| v.sentence).collect();
        prop_assert_eq!(&result.excluded, &excluded);

        for step in &result.trace {
            if let Some(before) = step.before {
                prop_assert!(step.after <= before + 1e-9, "objective rose: {} -> {}", before, step.after);
            }
        }

        let again = kmeans(&vectors, k, 100).unwrap();
        prop_assert_eq!(format!("{result:?}"), format!("{again:?}"));

        for factor in [2.0, 0.25, 1024.0] {
            let scaled: Vec<SentenceVector> = vectors
                .iter()
                .map(|v| SentenceVector { sentence: v.sentence, values: v.values.iter().map(|x| x * factor).collect() })
                .collect();
            prop_assert_eq!(&kmeans(&scaled, k, 100).unwrap().clusters, &result.clusters);
        }
    }

    #[test]
    fn segmentation_covers_the_text(n in 1usize..=120, picks in proptest::collection::vec(any::<usize>(), 1..20)) {
        let members: BTreeSet<usize> = picks.iter().map(|p| p % n + 1).collect();
        let members: Vec<usize> = members.into_iter().collect();
        let segments = cluster_to_segmentation(&members, n).unwrap();
        prop_assert_eq!(segments[0].start, 1);
        prop_assert_eq!(segments.last().unwrap().end, n);
        for w in segments.windows(2) {
            prop_assert_eq!(w[0].end + 1, w[1].start);
        }
        prop_assert!(segments.iter().all(|s| s.start <= s.end));
        let starts: Vec<usize> = segments
            .iter()
            .map(|s| s.start)
            .filter(|&s| s != 1 || members.contains(&1))
            .collect();
        prop_assert_eq!(starts, members);
    }
}

fn pairs_strategy() -> impl Strategy<Value = Vec<VerbNounPair>> {
    proptest::collection::vec((0u8..5, 0u8..6, 1usize..20), 0..40).prop_map(|raw| {
        raw.into_iter()
            .map(|(v, n, s)| VerbNounPair { verb: format!("v{v}"), noun: format!("n{n}"), sentence: s })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn raising_the_threshold_only_removes_terms(pairs in pairs_strategy(), t in 1usize..6) {
        let low = filter_frequent(&pairs, t).unwrap();
        let high = filter_frequent(&pairs, t + 1).unwrap();
        prop_assert!(high.verbs.is_subset(&low.verbs));
        prop_assert!(high.nouns.is_subset(&low.nouns));
        prop_assert!(high.pairs.len() <= low.pairs.len());
    }

    #[test]
    fn pair_order_does_not_matter(pairs in pairs_strategy(), seed in any::<u64>()) {
        let mut shuffled = pairs.clone();
        // Deterministic permutation driven by the seed.
        let mut keyed: Vec<(u64, VerbNounPair)> = shuffled
            .drain(..)
            .enumerate()
            .map(|(i, p)| ((i as u64).wrapping_mul(seed | 1).rotate_left(17), p))
            .collect();
        keyed.sort_by_key(|(key, _)| *key);
        let shuffled: Vec<VerbNounPair> = keyed.into_iter().map(|(_, p)| p).collect();

        let a = filter_frequent(&pairs, 2).unwrap();
        let b = filter_frequent(&shuffled, 2).unwrap();
        prop_assert_eq!(&a.verbs, &b.verbs);
        prop_assert_eq!(&a.nouns, &b.nouns);
        let ca = build_context(&a.pairs, &a.nouns, &a.verbs).unwrap();
        let cb = build_context(&b.pairs, &b.nouns, &b.verbs).unwrap();
        prop_assert_eq!(ca, cb);

        let count = |ps: &[VerbNounPair]| {
            let mut m: BTreeMap<(String, String), usize> = BTreeMap::new();
            for p in ps {
                *m.entry((p.verb.clone(), p.noun.clone())).or_default() += 1;
            }
            m
        };
        prop_assert_eq!(count(&a.pairs), count(&b.pairs));
    }
}
