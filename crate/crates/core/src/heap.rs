//! Finite abelian heaps.
//!
//! A heap here is a carrier `{0..n-1}` with a ternary bracket `[a,b,c]` that
//! is para-associative, satisfies the Mal'cev identities `[a,b,b] = a =
//! [b,b,a]`, and is abelian (`[a,b,c] = [c,b,a]`). Instead of the full n³
//! bracket table we store the group retract at basepoint 0: the abelian group
//! with `a + b := [a,0,b]`. The bracket is recovered as `[a,b,c] = a - b + c`.

use std::sync::Arc;

use thiserror::Error;

use crate::hom::{HeapMorphism, Morphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("table has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("entry {value} out of range for carrier 0..{order}")]
    Range { value: usize, order: usize },
    #[error("Mal'cev identity fails at a={a}, b={b}")]
    Malcev { a: usize, b: usize },
    #[error("bracket associativity fails at {witness:?}")]
    Associativity { witness: [usize; 5] },
    #[error("bracket is not abelian at {witness:?}")]
    NotCommutative { witness: [usize; 3] },
    #[error("not a group: {reason}")]
    NotAGroup { reason: &'static str },
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset not closed under the bracket at {witness:?}")]
    NotClosed { witness: [usize; 3] },
    #[error("partition is not a bracket congruence at {witness:?}")]
    NotACongruence { witness: [usize; 3] },
}

/// Table input accepted by [`FiniteHeap::validate`]: either the n×n group
/// retract at basepoint 0 or the full n×n×n bracket table.
#[derive(Debug, Clone)]
pub enum TableInput {
    Retract(Vec<usize>),
    Ternary(Vec<usize>),
}

/// Finite abelian heap on `{0..order-1}`, stored via its retract at 0.
#[derive(Debug, Clone)]
pub struct FiniteHeap {
    order: usize,
    retract: Vec<usize>,
    inv: Vec<usize>,
    label: String,
}

impl PartialEq for FiniteHeap {
    fn eq(&self, other: &Self) -> bool {
        // labels are cosmetic
        self.order == other.order && self.retract == other.retract
    }
}

impl Eq for FiniteHeap {}

/// Checks that `table` is an abelian group table on `{0..n-1}` with identity 0.
fn check_retract_table(table: &[usize], n: usize) -> Result<(), HeapError> {
    if n == 0 {
        return Err(HeapError::EmptyCarrier);
    }
    if table.len() != n * n {
        return Err(HeapError::Shape {
            expected: n * n,
            got: table.len(),
        });
    }
    for &v in table {
        if v >= n {
            return Err(HeapError::Range { value: v, order: n });
        }
    }
    for a in 0..n {
        if table[a * n] != a || table[a] != a {
            return Err(HeapError::NotAGroup {
                reason: "0 is not a two-sided identity",
            });
        }
    }
    for a in 0..n {
        for b in 0..a {
            if table[a * n + b] != table[b * n + a] {
                // a·b != b·a, i.e. [a,0,b] != [b,0,a]
                return Err(HeapError::NotCommutative { witness: [a, 0, b] });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Err(HeapError::Associativity {
                        witness: [a, 0, b, 0, c],
                    });
                }
            }
        }
    }
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..n {
            let v = table[a * n + b];
            if seen[v] {
                return Err(HeapError::NotAGroup {
                    reason: "a row is not a permutation",
                });
            }
            seen[v] = true;
        }
    }
    Ok(())
}

impl FiniteHeap {
    /// Validates either table form and returns the heap. A ternary table is
    /// checked by reconstructing it from the derived retract, which is
    /// equivalent to the direct bracket-axiom scan.
    pub fn validate(
        order: usize,
        table: TableInput,
        label: impl Into<String>,
    ) -> Result<Self, HeapError> {
        match table {
            TableInput::Retract(t) => Self::from_retract(order, t, label),
            TableInput::Ternary(t) => Self::from_ternary(order, &t, label),
        }
    }

    /// Builds a heap from an abelian group table with identity 0.
    pub fn from_retract(
        order: usize,
        retract: Vec<usize>,
        label: impl Into<String>,
    ) -> Result<Self, HeapError> {
        check_retract_table(&retract, order)?;
        let mut inv = vec![0; order];
        for a in 0..order {
            inv[a] = (0..order)
                .find(|&b| retract[a * order + b] == 0)
                .expect("row of a group table hits the identity");
        }
        Ok(FiniteHeap {
            order,
            retract,
            inv,
            label: label.into(),
        })
    }

    /// Builds the heap of an abelian group whose identity may sit anywhere
    /// on the carrier; the bracket is `a·b⁻¹·c`.
    pub fn from_group(
        order: usize,
        group: &[usize],
        label: impl Into<String>,
    ) -> Result<Self, HeapError> {
        if order == 0 {
            return Err(HeapError::EmptyCarrier);
        }
        if group.len() != order * order {
            return Err(HeapError::Shape {
                expected: order * order,
                got: group.len(),
            });
        }
        for &v in group {
            if v >= order {
                return Err(HeapError::Range {
                    value: v,
                    order,
                });
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| group[e * order + a] == a && group[a * order + e] == a))
            .ok_or(HeapError::NotAGroup {
                reason: "no identity element",
            })?;
        for a in 0..order {
            for b in 0..a {
                if group[a * order + b] != group[b * order + a] {
                    return Err(HeapError::NotCommutative {
                        witness: [a, identity, b],
                    });
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = group[a * order + b];
                for c in 0..order {
                    if group[ab * order + c] != group[a * order + group[b * order + c]] {
                        return Err(HeapError::Associativity {
                            witness: [a, identity, b, identity, c],
                        });
                    }
                }
            }
        }
        let mut ginv = vec![usize::MAX; order];
        for a in 0..order {
            ginv[a] = (0..order)
                .find(|&b| group[a * order + b] == identity)
                .ok_or(HeapError::NotAGroup {
                    reason: "an element has no inverse",
                })?;
        }
        // retract at carrier element 0: a + b = a·0⁻¹·b
        let z = ginv[0];
        let mut retract = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                retract[a * order + b] = group[group[a * order + z] * order + b];
            }
        }
        Self::from_retract(order, retract, label)
    }

    fn from_ternary(order: usize, t: &[usize], label: impl Into<String>) -> Result<Self, HeapError> {
        if order == 0 {
            return Err(HeapError::EmptyCarrier);
        }
        let n = order;
        if t.len() != n * n * n {
            return Err(HeapError::Shape {
                expected: n * n * n,
                got: t.len(),
            });
        }
        for &v in t {
            if v >= n {
                return Err(HeapError::Range { value: v, order: n });
            }
        }
        let at = |a: usize, b: usize, c: usize| t[(a * n + b) * n + c];
        for a in 0..n {
            for b in 0..n {
                if at(a, b, b) != a || at(b, b, a) != a {
                    return Err(HeapError::Malcev { a, b });
                }
            }
        }
        // derived retract at 0; any failure below maps back to a bracket axiom
        let mut retract = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                retract[a * n + b] = at(a, 0, b);
            }
        }
        let heap = match Self::from_retract(n, retract, label) {
            Ok(h) => h,
            Err(HeapError::NotCommutative { .. }) | Err(HeapError::Associativity { .. })
            | Err(HeapError::NotAGroup { .. }) => return Err(ternary_defect(t, n)),
            Err(e) => return Err(e),
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if heap.op(a, b, c) != at(a, b, c) {
                        return Err(ternary_defect(t, n));
                    }
                }
            }
        }
        Ok(heap)
    }

    /// The singleton heap.
    pub fn singleton() -> Self {
        FiniteHeap {
            order: 1,
            retract: vec![0],
            inv: vec![0],
            label: "star".into(),
        }
    }

    /// Heap of the cyclic group Z/n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut retract = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                retract[a * n + b] = (a + b) % n;
            }
        }
        FiniteHeap::from_retract(n, retract, format!("Z{n}")).expect("cyclic table is a group")
    }

    /// Heap of a direct product of cyclic groups, carrier in mixed radix
    /// (first factor is the most significant digit).
    pub fn product_of_cyclics(factors: &[usize]) -> Self {
        assert!(!factors.is_empty() && factors.iter().all(|&f| f >= 1));
        let n: usize = factors.iter().product();
        let mut retract = vec![0; n * n];
        // digit-wise addition, least significant digit = last factor
        for a in 0..n {
            for b in 0..n {
                let mut ra = a;
                let mut rb = b;
                let mut weight = 1;
                let mut out = 0;
                for &f in factors.iter().rev() {
                    let digit = (ra % f + rb % f) % f;
                    out += digit * weight;
                    weight *= f;
                    ra /= f;
                    rb /= f;
                }
                retract[a * n + b] = out;
            }
        }
        let label = factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x");
        FiniteHeap::from_retract(n, retract, label).expect("product table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    /// Retract addition `a + b = [a,0,b]`.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.retract[a * self.order + b]
    }

    /// Retract negation `-a = [0,a,0]`.
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// The bracket `[a,b,c] = a - b + c`.
    #[inline]
    pub fn op(&self, a: usize, b: usize, c: usize) -> usize {
        self.add(self.add(a, self.inv[b]), c)
    }

    pub fn retract_table(&self) -> &[usize] {
        &self.retract
    }

    /// Group table of the retract at an arbitrary basepoint `e`
    /// (`a ·_e b = [a,e,b]`, identity `e`).
    pub fn group_retract(&self, e: usize) -> Result<Vec<usize>, HeapError> {
        if e >= self.order {
            return Err(HeapError::Range {
                value: e,
                order: self.order,
            });
        }
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.op(a, e, b);
            }
        }
        Ok(table)
    }

    /// Materializes the full n³ bracket table.
    pub fn ternary_table(&self) -> Vec<usize> {
        let n = self.order;
        let mut t = vec![0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t[(a * n + b) * n + c] = self.op(a, b, c);
                }
            }
        }
        t
    }

    /// Sorted multiset of element orders in the retract group; a heap
    /// isomorphism invariant.
    pub fn element_order_multiset(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order)
            .map(|a| {
                let mut k = 1;
                let mut acc = a;
                while acc != 0 {
                    acc = self.add(acc, a);
                    k += 1;
                }
                k
            })
            .collect();
        orders.sort_unstable();
        orders
    }
}

/// Scans a rejected ternary table for a concrete violated axiom.
fn ternary_defect(t: &[usize], n: usize) -> HeapError {
    let at = |a: usize, b: usize, c: usize| t[(a * n + b) * n + c];
    for a in 0..n {
        for b in 0..n {
            if at(a, b, b) != a || at(b, b, a) != a {
                return HeapError::Malcev { a, b };
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(a, b, c) != at(c, b, a) {
                    return HeapError::NotCommutative { witness: [a, b, c] };
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        if at(at(a, b, c), d, e) != at(a, b, at(c, d, e)) {
                            return HeapError::Associativity {
                                witness: [a, b, c, d, e],
                            };
                        }
                    }
                }
            }
        }
    }
    unreachable!("ternary table rejected but no bracket axiom fails")
}

/// Nonempty subset of a heap closed under the bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubHeap {
    parent: Arc<FiniteHeap>,
    elements: Vec<usize>,
}

/// Verifies closure of `subset` under the bracket.
pub fn subheap_check(parent: &Arc<FiniteHeap>, subset: &[usize]) -> Result<SubHeap, HeapError> {
    if subset.is_empty() {
        return Err(HeapError::EmptySubset);
    }
    let mut elements: Vec<usize> = subset.to_vec();
    elements.sort_unstable();
    elements.dedup();
    for &v in &elements {
        if v >= parent.order() {
            return Err(HeapError::Range {
                value: v,
                order: parent.order(),
            });
        }
    }
    let inside = {
        let mut m = vec![false; parent.order()];
        for &v in &elements {
            m[v] = true;
        }
        m
    };
    for &a in &elements {
        for &b in &elements {
            for &c in &elements {
                if !inside[parent.op(a, b, c)] {
                    return Err(HeapError::NotClosed { witness: [a, b, c] });
                }
            }
        }
    }
    Ok(SubHeap {
        parent: Arc::clone(parent),
        elements,
    })
}

impl SubHeap {
    pub fn parent(&self) -> &Arc<FiniteHeap> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Reindexes the sub-heap onto `{0..k-1}` with the inclusion back into
    /// the parent.
    pub fn as_heap(&self) -> (Arc<FiniteHeap>, HeapMorphism) {
        let els = &self.elements;
        let k = els.len();
        let index_of = |v: usize| els.binary_search(&v).expect("element inside the subset");
        let mut retract = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                retract[i * k + j] = index_of(self.parent.op(els[i], els[0], els[j]));
            }
        }
        let heap = Arc::new(
            FiniteHeap::from_retract(k, retract, format!("{}_sub", self.parent.label()))
                .expect("closed subset carries the retract group"),
        );
        let inclusion = Morphism::new(Arc::clone(&heap), Arc::clone(&self.parent), els.clone())
            .expect("inclusion preserves the bracket");
        (heap, inclusion)
    }

    /// The congruence `a ~ b iff [a,b,s] in S`, computed with the least
    /// element of `S` as witness.
    pub fn congruence(&self) -> HeapCongruence {
        let s0 = self.elements[0];
        self.congruence_with(|h, a, b| self.contains(h.op(a, b, s0)))
    }

    /// Same congruence computed through the universal form
    /// (`[a,b,s] in S` for every `s in S`).
    pub fn congruence_universal(&self) -> HeapCongruence {
        self.congruence_with(|h, a, b| self.elements.iter().all(|&s| self.contains(h.op(a, b, s))))
    }

    fn congruence_with(
        &self,
        related: impl Fn(&FiniteHeap, usize, usize) -> bool,
    ) -> HeapCongruence {
        let h = self.parent.as_ref();
        let n = h.order();
        let mut class_of = vec![usize::MAX; n];
        let mut next = 0;
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            class_of[a] = next;
            for b in a + 1..n {
                if class_of[b] == usize::MAX && related(h, a, b) {
                    class_of[b] = next;
                }
            }
            next += 1;
        }
        HeapCongruence::from_class_map(&self.parent, class_of)
            .expect("sub-heap relation is a congruence")
    }
}

/// A partition of a heap's carrier compatible with the bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapCongruence {
    parent: Arc<FiniteHeap>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl HeapCongruence {
    /// Builds a congruence from a class map (classes numbered by first
    /// occurrence), verifying the bracket descends.
    pub fn from_class_map(
        parent: &Arc<FiniteHeap>,
        class_of: Vec<usize>,
    ) -> Result<Self, HeapError> {
        let n = parent.order();
        assert_eq!(class_of.len(), n);
        let count = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); count];
        for (x, &c) in class_of.iter().enumerate() {
            classes[c].push(x);
        }
        assert!(classes.iter().all(|c| !c.is_empty()), "class ids must be dense");
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        // bracket of class representatives must be class-independent
        for a in 0..n {
            let ra = reps[class_of[a]];
            for b in 0..n {
                let rb = reps[class_of[b]];
                for c in 0..n {
                    let rc = reps[class_of[c]];
                    if class_of[parent.op(a, b, c)] != class_of[parent.op(ra, rb, rc)] {
                        return Err(HeapError::NotACongruence { witness: [a, b, c] });
                    }
                }
            }
        }
        Ok(HeapCongruence {
            parent: Arc::clone(parent),
            class_of,
            classes,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteHeap> {
        &self.parent
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Quotient heap on the classes, with the canonical projection.
    pub fn quotient(&self) -> (Arc<FiniteHeap>, HeapMorphism) {
        let q = self.classes.len();
        let reps: Vec<usize> = self.classes.iter().map(|c| c[0]).collect();
        // retract at quotient basepoint 0, i.e. at the class with id 0
        let mut retract = vec![0; q * q];
        for x in 0..q {
            for y in 0..q {
                retract[x * q + y] = self.class_of[self.parent.op(reps[x], reps[0], reps[y])];
            }
        }
        let quotient = Arc::new(
            FiniteHeap::from_retract(q, retract, format!("{}_q", self.parent.label()))
                .expect("quotient table is a group"),
        );
        let proj = Morphism::new(
            Arc::clone(&self.parent),
            Arc::clone(&quotient),
            self.class_of.clone(),
        )
        .expect("projection preserves the bracket");
        (quotient, proj)
    }
}

/// Quotient of a heap by a sub-heap: the classes of `~_S`.
pub fn quotient_heap(
    parent: &Arc<FiniteHeap>,
    sub: &SubHeap,
) -> (Arc<FiniteHeap>, HeapMorphism) {
    assert_eq!(parent.as_ref(), sub.parent().as_ref(), "sub-heap of a different heap");
    sub.congruence().quotient()
}
