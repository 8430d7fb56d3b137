//! Finite left modules over a truss and the constructions on them: products,
//! powers, induced actions, submodules, quotients, scalar restriction, and
//! hom-sets made into modules.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::heap::{FiniteHeap, HeapCongruence, HeapError};
use crate::hom::{enumerate_homs, HomError, ModuleMorphism, Morphism, Structure, TrussMorphism};
use crate::truss::{Truss, TrussError};

const MAX_CARRIER: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("table has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("entry {value} out of range for carrier 0..{order}")]
    Range { value: usize, order: usize },
    #[error("modules are over different trusses")]
    MixedTruss,
    #[error("action is not associative: t1={t1}, t2={t2}, m={m}")]
    ActionAssociativity { t1: usize, t2: usize, m: usize },
    #[error("action is not bracket-linear in scalars at [{t1},{t2},{t3}]·{m}")]
    ScalarBracket { t1: usize, t2: usize, t3: usize, m: usize },
    #[error("action of t={t} does not preserve the bracket at [{m1},{m2},{m3}]")]
    CarrierBracket { t: usize, m1: usize, m2: usize, m3: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset is not a sub-heap: bracket of {witness:?} escapes")]
    NotSubHeap { witness: [usize; 3] },
    #[error("subset is not action-closed: {t}·{m} escapes")]
    NotActionClosed { t: usize, m: usize },
    #[error("action does not descend to the classes: t={t} separates {m} from {rep}")]
    ActionNotDescending { t: usize, m: usize, rep: usize },
    #[error("exponent must be at least 1")]
    InvalidExponent,
    #[error("carrier of size {order} exceeds the desk-scale cap")]
    TooLarge { order: usize },
    #[error("no structure-preserving maps exist, the hom carrier would be empty")]
    EmptyHomCarrier,
    #[error("not a ring module: {law} fails at {witness:?}")]
    NotARingModule { law: &'static str, witness: Vec<usize> },
    #[error(transparent)]
    Truss(#[from] TrussError),
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// Finite left module over a truss: an abelian heap carrier of order m and a
/// |T|×m action table.
#[derive(Debug, Clone)]
pub struct TModule {
    truss: Arc<Truss>,
    heap: FiniteHeap,
    action: Vec<usize>,
}

impl PartialEq for TModule {
    fn eq(&self, other: &Self) -> bool {
        self.truss == other.truss && self.heap == other.heap && self.action == other.action
    }
}

impl Eq for TModule {}

impl TModule {
    /// Validates the three module axioms, reporting the first violated one
    /// with a witness.
    pub fn validate(
        truss: Arc<Truss>,
        heap: FiniteHeap,
        action: Vec<usize>,
    ) -> Result<Self, ModuleError> {
        let nt = truss.order();
        let m = heap.order();
        if action.len() != nt * m {
            return Err(ModuleError::Shape {
                expected: nt * m,
                got: action.len(),
            });
        }
        for &v in &action {
            if v >= m {
                return Err(ModuleError::Range { value: v, order: m });
            }
        }
        let act = |t: usize, x: usize| action[t * m + x];
        // t·[-,-,-] preserves the bracket
        for t in 0..nt {
            for m1 in 0..m {
                for m2 in 0..m {
                    let lhs = act(t, heap.add(m1, m2));
                    let rhs = heap.op(act(t, m1), act(t, 0), act(t, m2));
                    if lhs != rhs {
                        return Err(ModuleError::CarrierBracket {
                            t,
                            m1,
                            m2: 0,
                            m3: m2,
                        });
                    }
                }
            }
        }
        for t1 in 0..nt {
            for t2 in 0..nt {
                let t12 = truss.mul(t1, t2);
                for x in 0..m {
                    if act(t1, act(t2, x)) != act(t12, x) {
                        return Err(ModuleError::ActionAssociativity { t1, t2, m: x });
                    }
                }
            }
        }
        for t1 in 0..nt {
            for t2 in 0..nt {
                for t3 in 0..nt {
                    let tb = truss.heap().op(t1, t2, t3);
                    for x in 0..m {
                        if act(tb, x) != heap.op(act(t1, x), act(t2, x), act(t3, x)) {
                            return Err(ModuleError::ScalarBracket { t1, t2, t3, m: x });
                        }
                    }
                }
            }
        }
        Ok(TModule {
            truss,
            heap,
            action,
        })
    }

    /// The terminal module: a single element absorbing every scalar.
    pub fn singleton(truss: &Arc<Truss>) -> Self {
        TModule::validate(
            Arc::clone(truss),
            FiniteHeap::singleton(),
            vec![0; truss.order()],
        )
        .expect("singleton action is a module")
    }

    pub fn truss(&self) -> &Arc<Truss> {
        &self.truss
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn order(&self) -> usize {
        self.heap.order()
    }

    #[inline]
    pub fn act(&self, t: usize, x: usize) -> usize {
        self.action[t * self.heap.order() + x]
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    /// Unital truss acting with 1·m = m.
    pub fn is_normalised(&self) -> bool {
        match self.truss.unit() {
            Some(u) => (0..self.order()).all(|x| self.act(u, x) == x),
            None => false,
        }
    }

    /// Elements fixed by every scalar.
    pub fn absorbers(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| (0..self.truss.order()).all(|t| self.act(t, x) == x))
            .collect()
    }
}

impl Structure for TModule {
    const KIND: &'static str = "module";

    fn order(&self) -> usize {
        self.order()
    }

    fn carrier(&self) -> &FiniteHeap {
        &self.heap
    }

    fn compatible(src: &Self, dst: &Self) -> Result<(), HomError> {
        if src.truss.as_ref() != dst.truss.as_ref() {
            return Err(HomError::MixedTruss);
        }
        Ok(())
    }

    fn extra_ok(src: &Self, dst: &Self, images: &[usize]) -> Result<(), HomError> {
        for t in 0..src.truss.order() {
            for x in 0..src.order() {
                if images[src.act(t, x)] != dst.act(t, images[x]) {
                    return Err(HomError::NotActionLinear { t, m: x });
                }
            }
        }
        Ok(())
    }

    fn fingerprint(&self) -> Vec<u64> {
        let nt = self.truss.order();
        debug_assert!(nt <= 64);
        let mut fixmasks: Vec<u64> = (0..self.order())
            .map(|x| {
                (0..nt)
                    .filter(|&t| self.act(t, x) == x)
                    .fold(0u64, |acc, t| acc | (1 << t))
            })
            .collect();
        fixmasks.sort_unstable();
        let mut v = vec![self.order() as u64];
        v.extend(self.heap.element_order_multiset().iter().map(|&o| o as u64));
        v.push(self.absorbers().len() as u64);
        v.extend(fixmasks);
        v
    }
}

/// Builds T(M) for a module M over a finite ring R, validating the ring
/// module laws first.
pub fn module_from_ring_module(
    ring_order: usize,
    ring_add: &[usize],
    ring_mul: &[usize],
    carrier_order: usize,
    carrier_add: &[usize],
    action: &[usize],
) -> Result<TModule, ModuleError> {
    let truss = Truss::from_ring(ring_order, ring_add, ring_mul)?;
    let heap = FiniteHeap::from_group(carrier_order, carrier_add, "ring_module")?;
    let (nr, m) = (ring_order, carrier_order);
    if action.len() != nr * m {
        return Err(ModuleError::Shape {
            expected: nr * m,
            got: action.len(),
        });
    }
    for &v in action {
        if v >= m {
            return Err(ModuleError::Range { value: v, order: m });
        }
    }
    let act = |r: usize, x: usize| action[r * m + x];
    for r in 0..nr {
        for x in 0..m {
            for y in 0..m {
                if act(r, carrier_add[x * m + y]) != carrier_add[act(r, x) * m + act(r, y)] {
                    return Err(ModuleError::NotARingModule {
                        law: "r(m + m') = rm + rm'",
                        witness: vec![r, x, y],
                    });
                }
            }
        }
    }
    for r in 0..nr {
        for s in 0..nr {
            for x in 0..m {
                if act(ring_add[r * nr + s], x) != carrier_add[act(r, x) * m + act(s, x)] {
                    return Err(ModuleError::NotARingModule {
                        law: "(r + s)m = rm + sm",
                        witness: vec![r, s, x],
                    });
                }
                if act(ring_mul[r * nr + s], x) != act(r, act(s, x)) {
                    return Err(ModuleError::NotARingModule {
                        law: "(rs)m = r(sm)",
                        witness: vec![r, s, x],
                    });
                }
            }
        }
    }
    TModule::validate(Arc::new(truss), heap, action.to_vec())
}

/// Product module with its projections and, when the factors have absorbers,
/// the canonical injections.
#[derive(Debug, Clone)]
pub struct ProductParts {
    pub module: Arc<TModule>,
    pub left_order: usize,
    pub right_order: usize,
    pub proj1: ModuleMorphism,
    pub proj2: ModuleMorphism,
    pub inj1: Option<ModuleMorphism>,
    pub inj2: Option<ModuleMorphism>,
}

impl ProductParts {
    #[inline]
    pub fn encode(&self, a: usize, b: usize) -> usize {
        a * self.right_order + b
    }

    #[inline]
    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.right_order, x % self.right_order)
    }

    /// The swap isomorphism onto the product taken in the other order.
    pub fn swap_to(&self, other: &ProductParts) -> ModuleMorphism {
        assert_eq!(
            (self.left_order, self.right_order),
            (other.right_order, other.left_order),
            "swap requires the factors in the opposite order"
        );
        let images: Vec<usize> = (0..self.module.order())
            .map(|x| {
                let (a, b) = self.decode(x);
                other.encode(b, a)
            })
            .collect();
        Morphism::new(Arc::clone(&self.module), Arc::clone(&other.module), images)
            .expect("swap is an isomorphism")
    }
}

/// Componentwise product of two modules over the same truss. Pairs (a, b)
/// are encoded as `a·|B| + b`.
pub fn product_module(a: &Arc<TModule>, b: &Arc<TModule>) -> Result<ProductParts, ModuleError> {
    if a.truss().as_ref() != b.truss().as_ref() {
        return Err(ModuleError::MixedTruss);
    }
    let (na, nb) = (a.order(), b.order());
    let n = na.checked_mul(nb).filter(|&n| n <= MAX_CARRIER).ok_or(
        ModuleError::TooLarge {
            order: usize::MAX,
        },
    )?;
    let mut retract = vec![0; n * n];
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            retract[x * n + y] = a.heap().add(xa, ya) * nb + b.heap().add(xb, yb);
        }
    }
    let heap = FiniteHeap::from_retract(
        n,
        retract,
        format!("{}x{}", a.heap().label(), b.heap().label()),
    )
    .expect("product of group tables is a group");
    let nt = a.truss().order();
    let mut action = vec![0; nt * n];
    for t in 0..nt {
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            action[t * n + x] = a.act(t, xa) * nb + b.act(t, xb);
        }
    }
    let module = Arc::new(
        TModule::validate(Arc::clone(a.truss()), heap, action)
            .expect("componentwise structure is a module"),
    );
    let proj1 = Morphism::new(
        Arc::clone(&module),
        Arc::clone(a),
        (0..n).map(|x| x / nb).collect(),
    )
    .expect("projection is linear");
    let proj2 = Morphism::new(
        Arc::clone(&module),
        Arc::clone(b),
        (0..n).map(|x| x % nb).collect(),
    )
    .expect("projection is linear");
    let inj1 = b.absorbers().first().map(|&e2| {
        Morphism::new(
            Arc::clone(a),
            Arc::clone(&module),
            (0..na).map(|p| p * nb + e2).collect(),
        )
        .expect("injection at an absorber is linear")
    });
    let inj2 = a.absorbers().first().map(|&e1| {
        Morphism::new(
            Arc::clone(b),
            Arc::clone(&module),
            (0..nb).map(|p| e1 * nb + p).collect(),
        )
        .expect("injection at an absorber is linear")
    });
    Ok(ProductParts {
        module,
        left_order: na,
        right_order: nb,
        proj1,
        proj2,
        inj1,
        inj2,
    })
}

/// Pointwise power M^X for |X| = k. Functions X → M are encoded as k-digit
/// base-|M| numbers, the image of x = 0 being the most significant digit.
pub fn power_module(m: &Arc<TModule>, k: usize) -> Result<Arc<TModule>, ModuleError> {
    if k == 0 {
        return Err(ModuleError::InvalidExponent);
    }
    let base = m.order();
    let n = base
        .checked_pow(k as u32)
        .filter(|&n| n <= MAX_CARRIER)
        .ok_or(ModuleError::TooLarge { order: usize::MAX })?;
    let digits = |x: usize| {
        let mut out = vec![0; k];
        let mut c = x;
        for slot in (0..k).rev() {
            out[slot] = c % base;
            c /= base;
        }
        out
    };
    let undigits = |d: &[usize]| d.iter().fold(0, |acc, &v| acc * base + v);
    let mut retract = vec![0; n * n];
    for x in 0..n {
        let dx = digits(x);
        for y in 0..n {
            let dy = digits(y);
            let sum: Vec<usize> = dx
                .iter()
                .zip(&dy)
                .map(|(&a, &b)| m.heap().add(a, b))
                .collect();
            retract[x * n + y] = undigits(&sum);
        }
    }
    let heap = FiniteHeap::from_retract(n, retract, format!("{}^{}", m.heap().label(), k))
        .expect("pointwise power of a group table is a group");
    let nt = m.truss().order();
    let mut action = vec![0; nt * n];
    for t in 0..nt {
        for x in 0..n {
            let dx = digits(x);
            let img: Vec<usize> = dx.iter().map(|&a| m.act(t, a)).collect();
            action[t * n + x] = undigits(&img);
        }
    }
    Ok(Arc::new(
        TModule::validate(Arc::clone(m.truss()), heap, action)
            .expect("pointwise structure is a module"),
    ))
}

/// The e-induced module M^(e): same carrier, action `t ·_e m = [t·m, t·e, e]`.
pub fn induced_module(m: &Arc<TModule>, e: usize) -> Result<Arc<TModule>, ModuleError> {
    if e >= m.order() {
        return Err(ModuleError::Range {
            value: e,
            order: m.order(),
        });
    }
    let nt = m.truss().order();
    let n = m.order();
    let mut action = vec![0; nt * n];
    for t in 0..nt {
        for x in 0..n {
            action[t * n + x] = m.heap().op(m.act(t, x), m.act(t, e), e);
        }
    }
    Ok(Arc::new(
        TModule::validate(Arc::clone(m.truss()), m.heap().clone(), action)
            .expect("induced action satisfies the module axioms"),
    ))
}

/// Whether `subset` is closed under every e-induced action with e drawn from
/// the subset itself (and under the bracket).
pub fn is_induced_submodule(m: &TModule, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return false;
    }
    let inside = {
        let mut mask = vec![false; m.order()];
        for &x in subset {
            mask[x] = true;
        }
        mask
    };
    let closed_bracket = subset.iter().all(|&a| {
        subset
            .iter()
            .all(|&b| subset.iter().all(|&c| inside[m.heap().op(a, b, c)]))
    });
    closed_bracket
        && subset.iter().all(|&e| {
            subset.iter().all(|&n| {
                (0..m.truss().order())
                    .all(|t| inside[m.heap().op(m.act(t, n), m.act(t, e), e)])
            })
        })
}

/// Nonempty subset closed under the bracket and the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    parent: Arc<TModule>,
    elements: Vec<usize>,
}

pub fn submodule_check(parent: &Arc<TModule>, subset: &[usize]) -> Result<Submodule, ModuleError> {
    if subset.is_empty() {
        return Err(ModuleError::EmptySubset);
    }
    let mut elements = subset.to_vec();
    elements.sort_unstable();
    elements.dedup();
    for &v in &elements {
        if v >= parent.order() {
            return Err(ModuleError::Range {
                value: v,
                order: parent.order(),
            });
        }
    }
    let inside = {
        let mut mask = vec![false; parent.order()];
        for &x in &elements {
            mask[x] = true;
        }
        mask
    };
    for &a in &elements {
        for &b in &elements {
            for &c in &elements {
                if !inside[parent.heap().op(a, b, c)] {
                    return Err(ModuleError::NotSubHeap {
                        witness: [a, b, c],
                    });
                }
            }
        }
    }
    for t in 0..parent.truss().order() {
        for &x in &elements {
            if !inside[parent.act(t, x)] {
                return Err(ModuleError::NotActionClosed { t, m: x });
            }
        }
    }
    Ok(Submodule {
        parent: Arc::clone(parent),
        elements,
    })
}

impl Submodule {
    pub fn parent(&self) -> &Arc<TModule> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Reindexes the submodule onto `{0..k-1}` with the inclusion back
    /// into the parent.
    pub fn as_module(&self) -> (Arc<TModule>, ModuleMorphism) {
        submodule_as_module(&self.parent, &self.elements)
    }
}

/// All submodules, sorted by (size, elements).
pub fn enumerate_submodules(parent: &Arc<TModule>) -> Vec<Submodule> {
    let n = parent.order();
    assert!(n <= 20, "subset enumeration is desk-scale only");
    let mut out = Vec::new();
    for mask in 1usize..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        if let Ok(s) = submodule_check(parent, &subset) {
            out.push(s);
        }
    }
    out.sort_by(|a, b| {
        (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements))
    });
    out
}

/// Reindexes an action-and-bracket-closed subset as a module of its own.
pub fn submodule_as_module(
    parent: &Arc<TModule>,
    elements: &[usize],
) -> (Arc<TModule>, ModuleMorphism) {
    let sub = submodule_check(parent, elements).expect("subset must be a submodule");
    let els = sub.elements.clone();
    let k = els.len();
    let index_of = |v: usize| els.binary_search(&v).expect("element inside the subset");
    let mut retract = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            retract[i * k + j] = index_of(parent.heap().op(els[i], els[0], els[j]));
        }
    }
    let heap = FiniteHeap::from_retract(k, retract, format!("{}_sub", parent.heap().label()))
        .expect("closed subset carries the retract group");
    let nt = parent.truss().order();
    let mut action = vec![0; nt * k];
    for t in 0..nt {
        for i in 0..k {
            action[t * k + i] = index_of(parent.act(t, els[i]));
        }
    }
    let module = Arc::new(
        TModule::validate(Arc::clone(parent.truss()), heap, action)
            .expect("submodule satisfies the module axioms"),
    );
    let inclusion = Morphism::new(Arc::clone(&module), Arc::clone(parent), els)
        .expect("inclusion is linear");
    (module, inclusion)
}

/// Quotient by an explicit partition of the carrier, verifying that both the
/// bracket and the action descend.
pub fn quotient_by_class_map(
    parent: &Arc<TModule>,
    class_of: Vec<usize>,
) -> Result<(Arc<TModule>, ModuleMorphism), ModuleError> {
    let heap_arc = Arc::new(parent.heap().clone());
    let cong = HeapCongruence::from_class_map(&heap_arc, class_of)?;
    let reps: Vec<usize> = cong.classes().iter().map(|c| c[0]).collect();
    let class_of = cong.class_of();
    for t in 0..parent.truss().order() {
        for x in 0..parent.order() {
            let rep = reps[class_of[x]];
            if class_of[parent.act(t, x)] != class_of[parent.act(t, rep)] {
                return Err(ModuleError::ActionNotDescending { t, m: x, rep });
            }
        }
    }
    let (qheap, _) = cong.quotient();
    let q = qheap.order();
    let nt = parent.truss().order();
    let mut action = vec![0; nt * q];
    for t in 0..nt {
        for c in 0..q {
            action[t * q + c] = class_of[parent.act(t, reps[c])];
        }
    }
    let module = Arc::new(
        TModule::validate(
            Arc::clone(parent.truss()),
            qheap.as_ref().clone(),
            action,
        )
        .expect("descended action satisfies the module axioms"),
    );
    let projection = Morphism::new(
        Arc::clone(parent),
        Arc::clone(&module),
        class_of.to_vec(),
    )
    .expect("projection is linear");
    Ok((module, projection))
}

/// Quotient of a module by a bracket-closed subset via the sub-heap
/// congruence. Fails with a witness when the action does not descend, which
/// cannot happen for genuine submodules.
pub fn quotient_module(
    parent: &Arc<TModule>,
    subset: &[usize],
) -> Result<(Arc<TModule>, ModuleMorphism), ModuleError> {
    if subset.is_empty() {
        return Err(ModuleError::EmptySubset);
    }
    let heap_arc = Arc::new(parent.heap().clone());
    let sub = crate::heap::subheap_check(&heap_arc, subset).map_err(|e| match e {
        HeapError::NotClosed { witness } => ModuleError::NotSubHeap { witness },
        HeapError::EmptySubset => ModuleError::EmptySubset,
        other => ModuleError::Heap(other),
    })?;
    quotient_by_class_map(parent, sub.congruence().class_of().to_vec())
}

/// Pulls a module over T back along a truss morphism f: S → T, acting by
/// `s · m = f(s) · m`.
pub fn restrict_scalars(
    f: &TrussMorphism,
    m: &Arc<TModule>,
) -> Result<Arc<TModule>, ModuleError> {
    if f.target().as_ref() != m.truss().as_ref() {
        return Err(ModuleError::MixedTruss);
    }
    let ns = f.source().order();
    let n = m.order();
    let mut action = vec![0; ns * n];
    for s in 0..ns {
        for x in 0..n {
            action[s * n + x] = m.act(f.apply(s), x);
        }
    }
    Ok(Arc::new(
        TModule::validate(Arc::clone(f.source()), m.heap().clone(), action)
            .expect("restricted action satisfies the module axioms"),
    ))
}

/// The module of S-linear maps T → M along a truss morphism f: S → T, with
/// the action `(t·g)(t') = g(t't)`.
#[derive(Debug, Clone)]
pub struct HomInduced {
    pub module: Arc<TModule>,
    /// Image arrays of the carrier maps, in carrier order.
    pub carrier_maps: Vec<Vec<usize>>,
}

pub fn hom_induced_module(
    f: &TrussMorphism,
    m: &Arc<TModule>,
) -> Result<HomInduced, ModuleError> {
    if f.source().as_ref() != m.truss().as_ref() {
        return Err(ModuleError::MixedTruss);
    }
    let t_truss = Arc::clone(f.target());
    let regular = Arc::new(t_truss.regular_module());
    let t_as_s = restrict_scalars(f, &regular)?;
    let homs = enumerate_homs(&t_as_s, m)?;
    if homs.is_empty() {
        return Err(ModuleError::EmptyHomCarrier);
    }
    let maps: Vec<Vec<usize>> = homs.iter().map(|h| h.images().to_vec()).collect();
    let index: HashMap<&[usize], usize> = maps
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let k = maps.len();
    let nt = t_truss.order();
    let w0 = &maps[0];
    let mut retract = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            let v: Vec<usize> = (0..nt)
                .map(|x| m.heap().op(maps[i][x], w0[x], maps[j][x]))
                .collect();
            retract[i * k + j] = *index
                .get(v.as_slice())
                .expect("hom carrier is closed under the pointwise bracket");
        }
    }
    let heap = FiniteHeap::from_retract(k, retract, format!("hom_{}", m.heap().label()))
        .expect("pointwise bracket on homs is a heap");
    let mut action = vec![0; nt * k];
    for t in 0..nt {
        for i in 0..k {
            let v: Vec<usize> = (0..nt).map(|tp| maps[i][t_truss.mul(tp, t)]).collect();
            action[t * k + i] = *index
                .get(v.as_slice())
                .expect("hom carrier is closed under the scalar action");
        }
    }
    let module = Arc::new(TModule::validate(t_truss, heap, action)?);
    Ok(HomInduced {
        module,
        carrier_maps: maps,
    })
}

/// Quotient by the kernel congruence with the induced isomorphism onto the
/// image: `[x] ↦ φ(x)`.
#[derive(Debug, Clone)]
pub struct FirstIso {
    pub quotient: Arc<TModule>,
    pub image: Arc<TModule>,
    pub projection: ModuleMorphism,
    pub inclusion: ModuleMorphism,
    pub iso: ModuleMorphism,
}

pub fn first_iso_check(phi: &ModuleMorphism) -> Result<FirstIso, ModuleError> {
    let class_of = phi.kernel_class_map();
    let (quotient, projection) = quotient_by_class_map(phi.source(), class_of.clone())?;
    let image_set = phi.image();
    let (image, inclusion) = submodule_as_module(phi.target(), &image_set);
    let mut iso_images = vec![usize::MAX; quotient.order()];
    for x in 0..phi.source().order() {
        let pos = image_set
            .binary_search(&phi.apply(x))
            .expect("value lies in the image");
        iso_images[class_of[x]] = pos;
    }
    let iso = Morphism::new(Arc::clone(&quotient), Arc::clone(&image), iso_images)?;
    assert!(iso.is_iso(), "induced map on the quotient must be bijective");
    Ok(FirstIso {
        quotient,
        image,
        projection,
        inclusion,
        iso,
    })
}
