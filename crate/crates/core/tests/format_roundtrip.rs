//! Property: parsing a serialized document gives back the same document, for
//! arbitrary well-shaped documents (tables need the right cardinalities but
//! not structural validity).

use proptest::prelude::*;

use trusslab::format::{
    parse, serialize, Def, Document, HeapDef, HeapRef, MapDef, ModuleDef, TrussDef,
};

#[derive(Debug, Clone)]
enum Step {
    Heap { order: usize, seed: u64 },
    Truss { order: usize, seed: u64, inline: bool, unit: bool, zero: bool },
    Module { order: usize, seed: u64 },
    Map { seed: u64 },
}

fn table(len: usize, bound: usize, seed: u64) -> Vec<usize> {
    // cheap deterministic fill; validity is irrelevant to round-tripping
    (0..len)
        .map(|i| ((seed as usize).wrapping_mul(31).wrapping_add(i * 7)) % bound.max(1))
        .collect()
}

fn build(steps: &[Step]) -> Document {
    let mut doc = Document::default();
    let mut heaps: Vec<(String, usize)> = Vec::new();
    let mut trusses: Vec<(String, usize)> = Vec::new();
    let mut endpoints: Vec<(String, usize)> = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        match step {
            Step::Heap { order, seed } => {
                let name = format!("h{i}");
                doc.push(
                    name.clone(),
                    Def::Heap(HeapDef {
                        order: *order,
                        group: table(order * order, 10, *seed),
                    }),
                );
                heaps.push((name.clone(), *order));
                endpoints.push((name, *order));
            }
            Step::Truss {
                order,
                seed,
                inline,
                unit,
                zero,
            } => {
                let name = format!("t{i}");
                let (heap, n) = if *inline || heaps.is_empty() {
                    (
                        HeapRef::Inline(HeapDef {
                            order: *order,
                            group: table(order * order, 10, seed.wrapping_add(1)),
                        }),
                        *order,
                    )
                } else {
                    let (hname, horder) = &heaps[(*seed as usize) % heaps.len()];
                    (HeapRef::Named(hname.clone()), *horder)
                };
                doc.push(
                    name.clone(),
                    Def::Truss(TrussDef {
                        heap,
                        mul: table(n * n, 10, *seed),
                        unit: unit.then_some((*seed as usize) % n.max(1)),
                        zero: zero.then_some((*seed as usize + 1) % n.max(1)),
                    }),
                );
                trusses.push((name.clone(), n));
                endpoints.push((name, n));
            }
            Step::Module { order, seed } => {
                if trusses.is_empty() {
                    continue;
                }
                let (tname, torder) = &trusses[(*seed as usize) % trusses.len()];
                let name = format!("m{i}");
                doc.push(
                    name.clone(),
                    Def::Module(ModuleDef {
                        truss: tname.clone(),
                        order: *order,
                        group: table(order * order, 10, *seed),
                        action: table(torder * order, 10, seed.wrapping_add(2)),
                    }),
                );
                endpoints.push((name, *order));
            }
            Step::Map { seed } => {
                if endpoints.is_empty() {
                    continue;
                }
                let (src, src_order) = endpoints[(*seed as usize) % endpoints.len()].clone();
                let (dst, _) = endpoints[(*seed as usize / 7) % endpoints.len()].clone();
                doc.push(
                    format!("f{i}"),
                    Def::Map(MapDef {
                        source: src,
                        target: dst,
                        images: table(src_order, 10, *seed),
                    }),
                );
            }
        }
    }
    doc
}

fn step_strategy() -> impl Strategy<Value = Step> {
    prop_oneof![
        (1usize..5, any::<u64>()).prop_map(|(order, seed)| Step::Heap { order, seed }),
        (1usize..4, any::<u64>(), any::<bool>(), any::<bool>(), any::<bool>()).prop_map(
            |(order, seed, inline, unit, zero)| Step::Truss {
                order,
                seed,
                inline,
                unit,
                zero
            }
        ),
        (1usize..4, any::<u64>()).prop_map(|(order, seed)| Step::Module { order, seed }),
        any::<u64>().prop_map(|seed| Step::Map { seed }),
    ]
}

proptest! {
    #[test]
    fn parse_after_serialize_is_identity(steps in proptest::collection::vec(step_strategy(), 0..12)) {
        let doc = build(&steps);
        let text = serialize(&doc);
        let parsed = parse(&text).expect("serialized documents parse");
        prop_assert_eq!(&parsed, &doc);
        // and serialization is stable on the re-parse
        prop_assert_eq!(serialize(&parsed), text);
    }
}
