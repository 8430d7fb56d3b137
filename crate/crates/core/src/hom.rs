//! Morphisms between finite structures and the search machinery on them:
//! exhaustive hom-set enumeration, kernels, mono/epi tests, and isomorphism
//! search with invariant pruning.
//!
//! Every structure here is an abelian heap with possible extra operations, so
//! a morphism is an affine map of retract groups: `f(x) = g(x) + f(0)` for a
//! group homomorphism `g`. Enumeration therefore branches only on the images
//! of a generating set of the source retract plus the image of the basepoint,
//! then filters by the structure-specific preservation laws.

use std::sync::Arc;

use thiserror::Error;

use crate::heap::FiniteHeap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("image array has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("image {value} out of range for carrier 0..{order}")]
    Range { value: usize, order: usize },
    #[error("map does not preserve the bracket at {witness:?}")]
    NotBracketPreserving { witness: [usize; 3] },
    #[error("map is not multiplicative at ({a}, {b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("map is not action-linear at t={t}, m={m}")]
    NotActionLinear { t: usize, m: usize },
    #[error("source and target are modules over different trusses")]
    MixedTruss,
    #[error("element {e} is not in the image")]
    NotInImage { e: usize },
    #[error("morphisms do not compose: target of the first differs from source of the second")]
    NotComposable,
}

/// A finite algebraic structure whose carrier is an abelian heap.
pub trait Structure: Clone + PartialEq + std::fmt::Debug {
    const KIND: &'static str;

    fn order(&self) -> usize;

    /// The underlying heap on the carrier.
    fn carrier(&self) -> &FiniteHeap;

    /// Whether morphisms between the two structures make sense at all
    /// (modules must share their truss).
    fn compatible(src: &Self, dst: &Self) -> Result<(), HomError>;

    /// Preservation laws beyond the heap bracket.
    fn extra_ok(src: &Self, dst: &Self, images: &[usize]) -> Result<(), HomError>;

    /// Cheap isomorphism invariants; unequal fingerprints prune the search,
    /// they never decide it positively.
    fn fingerprint(&self) -> Vec<u64>;
}

impl Structure for FiniteHeap {
    const KIND: &'static str = "heap";

    fn order(&self) -> usize {
        self.order()
    }

    fn carrier(&self) -> &FiniteHeap {
        self
    }

    fn compatible(_: &Self, _: &Self) -> Result<(), HomError> {
        Ok(())
    }

    fn extra_ok(_: &Self, _: &Self, _: &[usize]) -> Result<(), HomError> {
        Ok(())
    }

    fn fingerprint(&self) -> Vec<u64> {
        let mut v = vec![self.order() as u64];
        v.extend(self.element_order_multiset().iter().map(|&o| o as u64));
        v
    }
}

/// A total structure-preserving map, stored by its image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism<A: Structure> {
    source: Arc<A>,
    target: Arc<A>,
    images: Vec<usize>,
}

pub type HeapMorphism = Morphism<FiniteHeap>;
pub type TrussMorphism = Morphism<crate::truss::Truss>;
pub type ModuleMorphism = Morphism<crate::module::TModule>;

/// Checks bracket preservation through the retract: `f` preserves the bracket
/// iff `f(x + y) = f(x) - f(0) + f(y)` for all x, y.
fn bracket_ok(src: &FiniteHeap, dst: &FiniteHeap, images: &[usize]) -> Result<(), HomError> {
    let f0 = images[0];
    for x in 0..src.order() {
        for y in 0..src.order() {
            let lhs = images[src.add(x, y)];
            let rhs = dst.op(images[x], f0, images[y]);
            if lhs != rhs {
                return Err(HomError::NotBracketPreserving { witness: [x, 0, y] });
            }
        }
    }
    Ok(())
}

impl<A: Structure> Morphism<A> {
    /// Validates all preservation laws for the structure kind.
    pub fn new(source: Arc<A>, target: Arc<A>, images: Vec<usize>) -> Result<Self, HomError> {
        A::compatible(&source, &target)?;
        if images.len() != source.order() {
            return Err(HomError::Shape {
                expected: source.order(),
                got: images.len(),
            });
        }
        for &v in &images {
            if v >= target.order() {
                return Err(HomError::Range {
                    value: v,
                    order: target.order(),
                });
            }
        }
        bracket_ok(source.carrier(), target.carrier(), &images)?;
        A::extra_ok(&source, &target, &images)?;
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    /// Skips validation; for maps that are morphisms by construction.
    pub(crate) fn new_unchecked(source: Arc<A>, target: Arc<A>, images: Vec<usize>) -> Self {
        debug_assert!(Morphism::new(Arc::clone(&source), Arc::clone(&target), images.clone()).is_ok());
        Morphism {
            source,
            target,
            images,
        }
    }

    pub fn identity(a: &Arc<A>) -> Self {
        Morphism {
            source: Arc::clone(a),
            target: Arc::clone(a),
            images: (0..a.order()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<A> {
        &self.source
    }

    pub fn target(&self) -> &Arc<A> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Morphism<A>) -> Result<Morphism<A>, HomError> {
        if self.target.as_ref() != next.source.as_ref() {
            return Err(HomError::NotComposable);
        }
        let images = self.images.iter().map(|&x| next.images[x]).collect();
        Ok(Morphism {
            source: Arc::clone(&self.source),
            target: Arc::clone(&next.target),
            images,
        })
    }

    /// Sorted, deduplicated image set.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.images.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_mono(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.images.iter().all(|&v| {
            if seen[v] {
                false
            } else {
                seen[v] = true;
                true
            }
        })
    }

    pub fn is_epi(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_iso(&self) -> bool {
        self.source.order() == self.target.order() && self.is_mono()
    }

    /// Inverse of a bijective morphism.
    pub fn inverse(&self) -> Option<Morphism<A>> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.target.order()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(Morphism {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            images: inv,
        })
    }

    /// Preimage of `e`, sorted; empty when `e` is not hit.
    pub fn fiber(&self, e: usize) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&x| self.images[x] == e)
            .collect()
    }

    /// Preimage of an element of the image.
    pub fn kernel_at(&self, e: usize) -> Result<Vec<usize>, HomError> {
        let fiber = self.fiber(e);
        if fiber.is_empty() {
            return Err(HomError::NotInImage { e });
        }
        Ok(fiber)
    }

    /// The kernel congruence `a ~ b iff f(a) = f(b)`, as a class map numbered
    /// by first occurrence.
    pub fn kernel_class_map(&self) -> Vec<usize> {
        let mut class_of_value = vec![usize::MAX; self.target.order()];
        let mut class_of = vec![0; self.images.len()];
        let mut next = 0;
        for (x, &v) in self.images.iter().enumerate() {
            if class_of_value[v] == usize::MAX {
                class_of_value[v] = next;
                next += 1;
            }
            class_of[x] = class_of_value[v];
        }
        class_of
    }
}

/// Generating data for a retract group: picked greedily by least element,
/// with a replay script expressing every carrier element from the generators.
struct RetractGens {
    gens: Vec<usize>,
    /// (element, previously known element, generator index): element = prev + gen
    build: Vec<(usize, usize, usize)>,
}

fn retract_generators(h: &FiniteHeap) -> RetractGens {
    let n = h.order();
    let mut known = vec![false; n];
    known[0] = true;
    let mut count = 1;
    let mut gens = Vec::new();
    let mut build = Vec::new();
    while count < n {
        let g = (0..n).find(|&x| !known[x]).expect("carrier not exhausted");
        let gi = gens.len();
        gens.push(g);
        let mut changed = true;
        while changed {
            changed = false;
            for prev in 0..n {
                if !known[prev] {
                    continue;
                }
                let x = h.add(prev, g);
                if !known[x] {
                    known[x] = true;
                    count += 1;
                    build.push((x, prev, gi));
                    changed = true;
                }
            }
        }
    }
    RetractGens { gens, build }
}

/// All group homomorphisms between the retracts at 0, as image arrays.
fn retract_group_homs(src: &FiniteHeap, dst: &FiniteHeap) -> Vec<Vec<usize>> {
    let gens = retract_generators(src);
    let r = gens.gens.len();
    let n = src.order();
    let m = dst.order();
    let mut out = Vec::new();
    let total = m.checked_pow(r as u32).expect("generator image space overflow");
    let mut choice = vec![0usize; r];
    for counter in 0..total {
        let mut c = counter;
        for slot in (0..r).rev() {
            choice[slot] = c % m;
            c /= m;
        }
        let mut images = vec![0usize; n];
        for &(x, prev, gi) in &gens.build {
            images[x] = dst.add(images[prev], choice[gi]);
        }
        let mut ok = true;
        'check: for a in 0..n {
            for b in 0..n {
                if images[src.add(a, b)] != dst.add(images[a], images[b]) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            out.push(images);
        }
    }
    out
}

/// Every morphism from `src` to `dst`, in canonical (image-array) order.
pub fn enumerate_homs<A: Structure>(
    src: &Arc<A>,
    dst: &Arc<A>,
) -> Result<Vec<Morphism<A>>, HomError> {
    A::compatible(src, dst)?;
    let sh = src.carrier();
    let dh = dst.carrier();
    let group_homs = retract_group_homs(sh, dh);
    let mut out = Vec::new();
    for g in &group_homs {
        for c in 0..dh.order() {
            let images: Vec<usize> = g.iter().map(|&v| dh.add(v, c)).collect();
            if A::extra_ok(src, dst, &images).is_ok() {
                out.push(images);
            }
        }
    }
    out.sort_unstable();
    Ok(out
        .into_iter()
        .map(|images| Morphism::new_unchecked(Arc::clone(src), Arc::clone(dst), images))
        .collect())
}

/// Least isomorphism (by image array) between the structures, if any.
pub fn find_isomorphism<A: Structure>(a: &Arc<A>, b: &Arc<A>) -> Option<Morphism<A>> {
    if A::compatible(a, b).is_err() {
        return None;
    }
    if a.order() != b.order() || a.fingerprint() != b.fingerprint() {
        return None;
    }
    let sh = a.carrier();
    let dh = b.carrier();
    let mut best: Option<Vec<usize>> = None;
    for g in retract_group_homs(sh, dh) {
        // affine maps over a bijective linear part are exactly the heap isos
        let mut seen = vec![false; dh.order()];
        if !g.iter().all(|&v| {
            if seen[v] {
                false
            } else {
                seen[v] = true;
                true
            }
        }) {
            continue;
        }
        for c in 0..dh.order() {
            let images: Vec<usize> = g.iter().map(|&v| dh.add(v, c)).collect();
            if let Some(prev) = &best {
                if *prev <= images {
                    continue;
                }
            }
            if A::extra_ok(a, b, &images).is_ok() {
                best = Some(images);
            }
        }
    }
    best.map(|images| Morphism::new_unchecked(Arc::clone(a), Arc::clone(b), images))
}
