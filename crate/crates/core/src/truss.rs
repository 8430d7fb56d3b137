//! Finite trusses: an abelian heap with an associative multiplication that
//! distributes over the bracket on both sides.
//!
//! A designated `zero` is marked data: nothing about it is enforced at
//! validation time, but the census only marks elements that absorb
//! multiplication on both sides (which is what ring zeros do), and the
//! absorber-factor and cancellation machinery requires a mark.

use std::sync::Arc;

use thiserror::Error;

use crate::heap::{FiniteHeap, HeapError};
use crate::hom::{HomError, Structure};
use crate::module::TModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrussError {
    #[error("table has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("entry {value} out of range for carrier 0..{order}")]
    Range { value: usize, order: usize },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    AssocViolation { a: usize, b: usize, c: usize },
    #[error("{side} distributivity fails at w={w}, triple ({x}, {y}, {z})")]
    DistribViolation {
        side: Side,
        w: usize,
        x: usize,
        y: usize,
        z: usize,
    },
    #[error("designated unit {unit} is not a two-sided identity")]
    BadUnit { unit: usize },
    #[error("no zero element is designated")]
    NoZero,
    #[error("not a ring: {law} fails at {witness:?}")]
    NotARing { law: &'static str, witness: Vec<usize> },
    #[error(transparent)]
    Heap(#[from] HeapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Truss {
    heap: FiniteHeap,
    mul: Vec<usize>,
    unit: Option<usize>,
    zero: Option<usize>,
}

impl PartialEq for Truss {
    fn eq(&self, other: &Self) -> bool {
        self.heap == other.heap
            && self.mul == other.mul
            && self.unit == other.unit
            && self.zero == other.zero
    }
}

impl Eq for Truss {}

impl Truss {
    /// Validates associativity, both distributivity laws, and the designated
    /// unit. The zero designation is only range-checked.
    pub fn validate(
        heap: FiniteHeap,
        mul: Vec<usize>,
        unit: Option<usize>,
        zero: Option<usize>,
    ) -> Result<Self, TrussError> {
        let n = heap.order();
        if mul.len() != n * n {
            return Err(TrussError::Shape {
                expected: n * n,
                got: mul.len(),
            });
        }
        for &v in &mul {
            if v >= n {
                return Err(TrussError::Range { value: v, order: n });
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(TrussError::AssocViolation { a, b, c });
                    }
                }
            }
        }
        // distributivity, checked through the retract: w·(x+y) = wx - w0 + wy
        // is equivalent to w·[x,y,z] = [wx,wy,wz]; scan brackets directly to
        // report bracket-shaped witnesses.
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if at(w, heap.op(x, y, z)) != heap.op(at(w, x), at(w, y), at(w, z)) {
                            return Err(TrussError::DistribViolation {
                                side: Side::Left,
                                w,
                                x,
                                y,
                                z,
                            });
                        }
                        if at(heap.op(x, y, z), w) != heap.op(at(x, w), at(y, w), at(z, w)) {
                            return Err(TrussError::DistribViolation {
                                side: Side::Right,
                                w,
                                x,
                                y,
                                z,
                            });
                        }
                    }
                }
            }
        }
        if let Some(u) = unit {
            if u >= n {
                return Err(TrussError::Range { value: u, order: n });
            }
            if (0..n).any(|t| at(u, t) != t || at(t, u) != t) {
                return Err(TrussError::BadUnit { unit: u });
            }
        }
        if let Some(z) = zero {
            if z >= n {
                return Err(TrussError::Range { value: z, order: n });
            }
        }
        Ok(Truss {
            heap,
            mul,
            unit,
            zero,
        })
    }

    /// The truss T(R) of a finite ring given by its addition and
    /// multiplication tables. Ring zero becomes the designated zero; a unit
    /// is designated when the ring has one.
    pub fn from_ring(order: usize, add: &[usize], mul: &[usize]) -> Result<Self, TrussError> {
        let n = order;
        if add.len() != n * n || mul.len() != n * n {
            return Err(TrussError::Shape {
                expected: n * n,
                got: if add.len() != n * n { add.len() } else { mul.len() },
            });
        }
        for &v in mul {
            if v >= n {
                return Err(TrussError::Range { value: v, order: n });
            }
        }
        let heap = FiniteHeap::from_group(n, add, "ring").map_err(|e| match e {
            HeapError::NotAGroup { .. } | HeapError::NotCommutative { .. }
            | HeapError::Associativity { .. } => TrussError::NotARing {
                law: "addition is not an abelian group",
                witness: vec![],
            },
            other => TrussError::Heap(other),
        })?;
        let zero = (0..n)
            .find(|&e| (0..n).all(|a| add[e * n + a] == a && add[a * n + e] == a))
            .expect("group identity exists");
        let at = |a: usize, b: usize| mul[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(TrussError::NotARing {
                            law: "multiplication is not associative",
                            witness: vec![a, b, c],
                        });
                    }
                    if at(a, add[b * n + c]) != add[at(a, b) * n + at(a, c)] {
                        return Err(TrussError::NotARing {
                            law: "left distributivity",
                            witness: vec![a, b, c],
                        });
                    }
                    if at(add[a * n + b], c) != add[at(a, c) * n + at(b, c)] {
                        return Err(TrussError::NotARing {
                            law: "right distributivity",
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        let unit = (0..n).find(|&u| (0..n).all(|t| at(u, t) == t && at(t, u) == t));
        // the heap was rebased to basepoint 0 = carrier element 0; ring
        // tables use their own labels, so re-express mul on the same carrier.
        // from_group keeps the carrier fixed, so mul carries over unchanged.
        Self::validate(heap, mul.to_vec(), unit, Some(zero))
    }

    /// The truss of the ring Z/n.
    pub fn integers_mod(n: usize) -> Self {
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = (a + b) % n;
                mul[a * n + b] = (a * b) % n;
            }
        }
        Truss::from_ring(n, &add, &mul).expect("Z/n is a ring")
    }

    pub fn order(&self) -> usize {
        self.heap.order()
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.heap.order() + b]
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Detects the two-sided multiplicative identity, if present.
    pub fn detect_unit(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&u| (0..n).all(|t| self.mul(u, t) == t && self.mul(t, u) == t))
    }

    /// Detects the unique element absorbing multiplication on both sides
    /// (`t·z = z = z·t` for all t), if present.
    pub fn detect_absorbing_zero(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&z| (0..n).all(|t| self.mul(t, z) == z && self.mul(z, t) == z))
    }

    pub fn is_left_absorber_of(&self, t: usize, t2: usize) -> Result<bool, TrussError> {
        let zero = self.zero.ok_or(TrussError::NoZero)?;
        Ok(t != zero && t2 != zero && self.mul(t, t2) == zero)
    }

    pub fn is_right_absorber_of(&self, t: usize, t2: usize) -> Result<bool, TrussError> {
        let zero = self.zero.ok_or(TrussError::NoZero)?;
        Ok(t != zero && t2 != zero && self.mul(t2, t) == zero)
    }

    /// All t ≠ 0 admitting a shared witness t' ≠ 0 with t·t' = t'·t = 0.
    pub fn absorber_factors(&self) -> Result<Vec<usize>, TrussError> {
        let zero = self.zero.ok_or(TrussError::NoZero)?;
        let n = self.order();
        Ok((0..n)
            .filter(|&t| {
                t != zero
                    && (0..n).any(|t2| {
                        t2 != zero && self.mul(t, t2) == zero && self.mul(t2, t) == zero
                    })
            })
            .collect())
    }

    /// `None` when cancellation holds; otherwise the first `(t, x, y)` with
    /// `t ≠ 0`, `x ≠ y` and `tx = ty` or `xt = yt`.
    pub fn cancellation_failure(&self) -> Result<Option<(usize, usize, usize)>, TrussError> {
        let zero = self.zero.ok_or(TrussError::NoZero)?;
        let n = self.order();
        for t in 0..n {
            if t == zero {
                continue;
            }
            for x in 0..n {
                for y in x + 1..n {
                    if self.mul(t, x) == self.mul(t, y) || self.mul(x, t) == self.mul(y, t) {
                        return Ok(Some((t, x, y)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn has_cancellation(&self) -> Result<bool, TrussError> {
        Ok(self.cancellation_failure()?.is_none())
    }

    /// Abelian truss with a designated zero and no absorber factors.
    pub fn is_domain(&self) -> bool {
        self.zero.is_some()
            && self.is_commutative()
            && self.absorber_factors().map(|a| a.is_empty()).unwrap_or(false)
    }

    /// T acting on itself by multiplication.
    pub fn regular_module(self: &Arc<Self>) -> TModule {
        let action = self.mul.clone();
        TModule::validate(Arc::clone(self), self.heap.clone(), action)
            .expect("a truss is a module over itself")
    }
}

impl Structure for Truss {
    const KIND: &'static str = "truss";

    fn order(&self) -> usize {
        self.order()
    }

    fn carrier(&self) -> &FiniteHeap {
        &self.heap
    }

    fn compatible(_: &Self, _: &Self) -> Result<(), HomError> {
        Ok(())
    }

    fn extra_ok(src: &Self, dst: &Self, images: &[usize]) -> Result<(), HomError> {
        for a in 0..src.order() {
            for b in 0..src.order() {
                if images[src.mul(a, b)] != dst.mul(images[a], images[b]) {
                    return Err(HomError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(())
    }

    fn fingerprint(&self) -> Vec<u64> {
        let n = self.order();
        let mut v = vec![n as u64];
        v.extend(self.heap.element_order_multiset().iter().map(|&o| o as u64));
        v.push((0..n).filter(|&t| self.mul(t, t) == t).count() as u64);
        v.push(self.detect_unit().is_some() as u64);
        v.push(self.detect_absorbing_zero().is_some() as u64);
        v.push(self.is_commutative() as u64);
        v
    }
}
