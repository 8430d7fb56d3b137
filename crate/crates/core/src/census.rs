//! Exhaustive enumeration of small heaps, trusses, and modules up to
//! isomorphism, and the universes backing the relative projectivity and
//! injectivity checks.
//!
//! Heaps of order n correspond to abelian groups of order n, so the heap
//! census comes straight from the classification. Truss and module censuses
//! backtrack over rows of the operation table: left translations are heap
//! endomorphisms, which cuts the row alphabet from m^m to the affine maps of
//! the retract. Deduplication is by canonical form: the lexicographically
//! least transported table pair over all carrier permutations.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::Universe;
use crate::heap::FiniteHeap;
use crate::hom::enumerate_homs;
use crate::module::TModule;
use crate::truss::Truss;

#[derive(Debug, Clone, Copy)]
pub struct CensusConfig {
    pub heap_bound: usize,
    pub truss_bound: usize,
    pub module_bound: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            heap_bound: 8,
            truss_bound: 4,
            module_bound: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
}

/// Partitions of `e` with parts in descending order, lexicographically
/// descending.
fn partitions(e: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(cap)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

fn prime_factors(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// One heap per abelian-group isomorphism class of order n.
pub fn enumerate_heaps(n: usize, cfg: &CensusConfig) -> Result<Vec<Arc<FiniteHeap>>, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroOrder);
    }
    if n > cfg.heap_bound {
        return Err(CensusError::BoundExceeded {
            order: n,
            bound: cfg.heap_bound,
        });
    }
    if n == 1 {
        return Ok(vec![Arc::new(FiniteHeap::singleton())]);
    }
    let factored = prime_factors(n);
    let per_prime: Vec<Vec<Vec<usize>>> = factored
        .iter()
        .map(|&(p, e)| {
            partitions(e)
                .into_iter()
                .map(|parts| parts.iter().map(|&k| p.pow(k as u32)).collect())
                .collect()
        })
        .collect();
    let mut all: Vec<Vec<usize>> = per_prime
        .iter()
        .map(|choices| choices.iter())
        .multi_cartesian_product()
        .map(|combo| {
            let mut factors: Vec<usize> = combo.into_iter().flatten().copied().collect();
            factors.sort_unstable_by(|a, b| b.cmp(a));
            factors
        })
        .collect();
    all.sort_unstable_by(|a, b| (a.len(), b).cmp(&(b.len(), a)));
    Ok(all
        .into_iter()
        .map(|factors| Arc::new(FiniteHeap::product_of_cyclics(&factors)))
        .collect())
}

fn inverse_perm(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// Retract table at basepoint 0 of the relabelled heap.
fn transport_heap_table(h: &FiniteHeap, sigma: &[usize], sigma_inv: &[usize]) -> Vec<usize> {
    let n = h.order();
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            out[x * n + y] = sigma[h.op(sigma_inv[x], sigma_inv[0], sigma_inv[y])];
        }
    }
    out
}

fn transport_binary(table: &[usize], n: usize, sigma: &[usize], sigma_inv: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            out[x * n + y] = sigma[table[sigma_inv[x] * n + sigma_inv[y]]];
        }
    }
    out
}

fn transport_action(
    action: &[usize],
    nt: usize,
    m: usize,
    sigma: &[usize],
    sigma_inv: &[usize],
) -> Vec<usize> {
    let mut out = vec![0; nt * m];
    for t in 0..nt {
        for x in 0..m {
            out[t * m + x] = sigma[action[t * m + sigma_inv[x]]];
        }
    }
    out
}

/// Least transported retract table over all carrier permutations; equal keys
/// characterize isomorphic heaps.
pub fn canonical_heap_key(h: &FiniteHeap) -> Vec<usize> {
    let n = h.order();
    (0..n)
        .permutations(n)
        .map(|sigma| {
            let inv = inverse_perm(&sigma);
            transport_heap_table(h, &sigma, &inv)
        })
        .min()
        .expect("at least the identity permutation")
}

/// Least transported (retract, multiplication) pair over all permutations.
pub fn canonical_truss_key(t: &Truss) -> (Vec<usize>, Vec<usize>) {
    let n = t.order();
    (0..n)
        .permutations(n)
        .map(|sigma| {
            let inv = inverse_perm(&sigma);
            (
                transport_heap_table(t.heap(), &sigma, &inv),
                transport_binary(t.mul_table(), n, &sigma, &inv),
            )
        })
        .min()
        .expect("at least the identity permutation")
}

/// Least transported (retract, action) pair over all carrier permutations of
/// the module; the truss stays fixed.
pub fn canonical_module_key(m: &TModule) -> (Vec<usize>, Vec<usize>) {
    let mm = m.order();
    let nt = m.truss().order();
    (0..mm)
        .permutations(mm)
        .map(|sigma| {
            let inv = inverse_perm(&sigma);
            (
                transport_heap_table(m.heap(), &sigma, &inv),
                transport_action(m.action_table(), nt, mm, &sigma, &inv),
            )
        })
        .min()
        .expect("at least the identity permutation")
}

/// Image arrays of all heap endomorphisms, in canonical order.
fn affine_endos(h: &Arc<FiniteHeap>) -> Vec<Vec<usize>> {
    enumerate_homs(h, h)
        .expect("heap endomorphism enumeration cannot fail")
        .iter()
        .map(|f| f.images().to_vec())
        .collect()
}

/// All multiplication tables making `h` a truss, unfiltered by isomorphism.
fn truss_tables_on_heap(h: &Arc<FiniteHeap>) -> Vec<Vec<usize>> {
    let n = h.order();
    let endos = affine_endos(h);
    let branches: Vec<Vec<Vec<usize>>> = (0..endos.len())
        .into_par_iter()
        .map(|first| {
            let mut rows = vec![usize::MAX; n];
            rows[0] = first;
            let mut out = Vec::new();
            if truss_rows_consistent(0, &rows, &endos) {
                extend_truss_rows(1, &mut rows, &endos, h, &mut out);
            }
            out
        })
        .collect();
    branches.into_iter().flatten().collect()
}

fn truss_rows_consistent(depth: usize, rows: &[usize], endos: &[Vec<usize>]) -> bool {
    for t1 in 0..=depth {
        for t2 in 0..=depth {
            let ab = endos[rows[t1]][t2];
            if ab <= depth && t1.max(t2).max(ab) == depth {
                let (la, lb, lab) = (&endos[rows[t1]], &endos[rows[t2]], &endos[rows[ab]]);
                if (0..lb.len()).any(|x| la[lb[x]] != lab[x]) {
                    return false;
                }
            }
        }
    }
    true
}

fn extend_truss_rows(
    depth: usize,
    rows: &mut Vec<usize>,
    endos: &[Vec<usize>],
    h: &Arc<FiniteHeap>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = h.order();
    if depth == n {
        // rows are heap endomorphisms (left distributivity); right
        // distributivity says every column is one too
        let mul: Vec<usize> = (0..n).flat_map(|a| endos[rows[a]].iter().copied()).collect();
        for b in 0..n {
            let col: Vec<usize> = (0..n).map(|a| mul[a * n + b]).collect();
            for x in 0..n {
                for y in 0..n {
                    if col[h.add(x, y)] != h.op(col[x], col[0], col[y]) {
                        return;
                    }
                }
            }
        }
        out.push(mul);
        return;
    }
    for cand in 0..endos.len() {
        rows[depth] = cand;
        if truss_rows_consistent(depth, rows, endos) {
            extend_truss_rows(depth + 1, rows, endos, h, out);
        }
    }
    rows[depth] = usize::MAX;
}

fn heap_label_for_multiset(orders: &[usize], n: usize, cfg: &CensusConfig) -> String {
    if let Ok(heaps) = enumerate_heaps(n, cfg) {
        for h in heaps {
            if h.element_order_multiset() == orders {
                return h.label().to_string();
            }
        }
    }
    format!("H{n}")
}

/// All trusses of order n up to isomorphism, with detected unit and
/// absorbing zero designated.
pub fn enumerate_trusses(n: usize, cfg: &CensusConfig) -> Result<Vec<Arc<Truss>>, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroOrder);
    }
    if n > cfg.truss_bound {
        return Err(CensusError::BoundExceeded {
            order: n,
            bound: cfg.truss_bound,
        });
    }
    let mut keys: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for heap in enumerate_heaps(n, cfg)? {
        for mul in truss_tables_on_heap(&heap) {
            let t = Truss::validate(heap.as_ref().clone(), mul, None, None)
                .expect("census candidate re-passes validation");
            keys.insert(canonical_truss_key(&t));
        }
    }
    Ok(keys
        .into_iter()
        .map(|(retract, mul)| {
            let mut heap =
                FiniteHeap::from_retract(n, retract, "").expect("canonical table is a group");
            let label = heap_label_for_multiset(&heap.element_order_multiset(), n, cfg);
            heap.set_label(label);
            let probe = Truss::validate(heap.clone(), mul.clone(), None, None)
                .expect("canonical form re-passes validation");
            let unit = probe.detect_unit();
            let zero = probe.detect_absorbing_zero();
            Arc::new(Truss::validate(heap, mul, unit, zero).expect("designations verified"))
        })
        .collect())
}

fn module_rows_consistent(
    depth: usize,
    rows: &[usize],
    endos: &[Vec<usize>],
    truss: &Truss,
    h: &FiniteHeap,
) -> bool {
    let m = h.order();
    for t1 in 0..=depth {
        for t2 in 0..=depth {
            let t12 = truss.mul(t1, t2);
            if t12 <= depth && t1.max(t2).max(t12) == depth {
                let (la, lb, lab) = (&endos[rows[t1]], &endos[rows[t2]], &endos[rows[t12]]);
                if (0..m).any(|x| la[lb[x]] != lab[x]) {
                    return false;
                }
            }
        }
    }
    for t1 in 0..=depth {
        for t2 in 0..=depth {
            for t3 in 0..=depth {
                let tb = truss.heap().op(t1, t2, t3);
                if tb <= depth && t1.max(t2).max(t3).max(tb) == depth {
                    let (r1, r2, r3, rb) = (
                        &endos[rows[t1]],
                        &endos[rows[t2]],
                        &endos[rows[t3]],
                        &endos[rows[tb]],
                    );
                    if (0..m).any(|x| rb[x] != h.op(r1[x], r2[x], r3[x])) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn extend_module_rows(
    depth: usize,
    rows: &mut Vec<usize>,
    endos: &[Vec<usize>],
    truss: &Truss,
    h: &FiniteHeap,
    out: &mut Vec<Vec<usize>>,
) {
    let nt = truss.order();
    if depth == nt {
        let action: Vec<usize> = (0..nt).flat_map(|t| endos[rows[t]].iter().copied()).collect();
        out.push(action);
        return;
    }
    for cand in 0..endos.len() {
        rows[depth] = cand;
        if module_rows_consistent(depth, rows, endos, truss, h) {
            extend_module_rows(depth + 1, rows, endos, truss, h, out);
        }
    }
    rows[depth] = usize::MAX;
}

/// All modules of order m over the truss, up to module isomorphism.
pub fn enumerate_modules(
    truss: &Arc<Truss>,
    m: usize,
    cfg: &CensusConfig,
) -> Result<Vec<Arc<TModule>>, CensusError> {
    if m == 0 {
        return Err(CensusError::ZeroOrder);
    }
    if m > cfg.module_bound {
        return Err(CensusError::BoundExceeded {
            order: m,
            bound: cfg.module_bound,
        });
    }
    let mut keys: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for heap in enumerate_heaps(m, cfg)? {
        let endos = affine_endos(&heap);
        let nt = truss.order();
        let branches: Vec<Vec<Vec<usize>>> = (0..endos.len())
            .into_par_iter()
            .map(|first| {
                let mut rows = vec![usize::MAX; nt];
                rows[0] = first;
                let mut out = Vec::new();
                if module_rows_consistent(0, &rows, &endos, truss, &heap) {
                    extend_module_rows(1, &mut rows, &endos, truss, &heap, &mut out);
                }
                out
            })
            .collect();
        for action in branches.into_iter().flatten() {
            let module = TModule::validate(Arc::clone(truss), heap.as_ref().clone(), action)
                .expect("census candidate re-passes validation");
            keys.insert(canonical_module_key(&module));
        }
    }
    Ok(keys
        .into_iter()
        .map(|(retract, action)| {
            let mut heap =
                FiniteHeap::from_retract(m, retract, "").expect("canonical table is a group");
            let label = heap_label_for_multiset(&heap.element_order_multiset(), m, cfg);
            heap.set_label(label);
            Arc::new(
                TModule::validate(Arc::clone(truss), heap, action)
                    .expect("canonical form re-passes validation"),
            )
        })
        .collect())
}

/// Union of the module censuses for every order up to `bound`.
pub fn build_universe(
    truss: &Arc<Truss>,
    bound: usize,
    cfg: &CensusConfig,
) -> Result<Universe, CensusError> {
    let mut modules = Vec::new();
    for m in 1..=bound {
        modules.extend(enumerate_modules(truss, m, cfg)?);
    }
    Ok(Universe::new(Arc::clone(truss), modules, bound))
}

fn random_perm(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    sigma
}

/// A random relabelling of the heap; isomorphic to the input by construction.
pub fn random_relabelled_heap(h: &FiniteHeap, rng: &mut impl Rng) -> FiniteHeap {
    let sigma = random_perm(h.order(), rng);
    let inv = inverse_perm(&sigma);
    FiniteHeap::from_retract(
        h.order(),
        transport_heap_table(h, &sigma, &inv),
        format!("{}_r", h.label()),
    )
    .expect("transported table is a group")
}

pub fn random_relabelled_truss(t: &Truss, rng: &mut impl Rng) -> Truss {
    let n = t.order();
    let sigma = random_perm(n, rng);
    let inv = inverse_perm(&sigma);
    let heap = FiniteHeap::from_retract(n, transport_heap_table(t.heap(), &sigma, &inv), "r")
        .expect("transported table is a group");
    let mul = transport_binary(t.mul_table(), n, &sigma, &inv);
    let unit = t.unit().map(|u| sigma[u]);
    let zero = t.zero().map(|z| sigma[z]);
    Truss::validate(heap, mul, unit, zero).expect("transported truss is a truss")
}

pub fn random_relabelled_module(m: &TModule, rng: &mut impl Rng) -> TModule {
    let mm = m.order();
    let sigma = random_perm(mm, rng);
    let inv = inverse_perm(&sigma);
    let heap = FiniteHeap::from_retract(mm, transport_heap_table(m.heap(), &sigma, &inv), "r")
        .expect("transported table is a group");
    let action = transport_action(m.action_table(), m.truss().order(), mm, &sigma, &inv);
    TModule::validate(Arc::clone(m.truss()), heap, action).expect("transported module is a module")
}
