//! One suite per acceptance criterion. Every suite returns a deterministic
//! report: the `details` string must be byte-identical across runs and
//! thread counts, so it never contains timings or addresses.
//!
//! Oracles here are deliberately independent of the library's fast paths:
//! the direct bracket-axiom scan, brute force over all functions, and raw
//! set comparisons.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trusslab::census::{
    build_universe, canonical_module_key, enumerate_heaps, enumerate_trusses,
    CensusConfig,
};
use trusslab::exact::{
    check_short_exact, find_retraction, find_section, is_divisible,
    is_injective_rel, is_projective_rel, schanuel_injective, schanuel_projective,
    split_by_retraction, split_by_section, Universe,
};
use trusslab::heap::{FiniteHeap, TableInput};
use trusslab::hom::{enumerate_homs, find_isomorphism, ModuleMorphism, Morphism};
use trusslab::module::{
    enumerate_submodules, first_iso_check, hom_induced_module, power_module, product_module,
    quotient_module, TModule,
};
use trusslab::truss::Truss;

pub struct Report {
    pub pass: bool,
    pub details: String,
}

impl Report {
    fn new() -> Self {
        Report {
            pass: true,
            details: String::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.details.push_str(s.as_ref());
        self.details.push('\n');
    }

    fn fail(&mut self, s: impl AsRef<str>) {
        self.pass = false;
        self.line(format!("FAIL: {}", s.as_ref()));
    }
}

fn cfg() -> CensusConfig {
    CensusConfig::default()
}

fn trusses_up_to(n: usize) -> Vec<Arc<Truss>> {
    let cfg = cfg();
    (1..=n)
        .flat_map(|k| enumerate_trusses(k, &cfg).expect("within bounds"))
        .collect()
}

/// Test-side oracle: the O(n^5) bracket-axiom scan on a raw ternary table.
fn direct_heap_check(t: &[usize], n: usize) -> bool {
    if t.len() != n * n * n || t.iter().any(|&v| v >= n) {
        return false;
    }
    let at = |a: usize, b: usize, c: usize| t[(a * n + b) * n + c];
    for a in 0..n {
        for b in 0..n {
            if at(a, b, b) != a || at(b, b, a) != a {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        if at(at(a, b, c), d, e) != at(a, b, at(c, d, e)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Criterion 1: the retract-based validator agrees with the direct checker
/// on all census heaps of order <= 5 and on 200 randomly corrupted tables.
pub fn c01_heap_validation_equivalence() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let mut agree = 0usize;
    let mut accepted = 0usize;
    let mut check = |table: Vec<usize>, n: usize, r: &mut Report| {
        let direct = direct_heap_check(&table, n);
        let fast = FiniteHeap::validate(n, TableInput::Ternary(table), "probe").is_ok();
        if direct != fast {
            r.fail(format!(
                "validators disagree on an order-{n} table: direct={direct}, retract-based={fast}"
            ));
        } else {
            agree += 1;
            if fast {
                accepted += 1;
            }
        }
    };
    for n in 1..=5 {
        for h in enumerate_heaps(n, &cfg).expect("within bounds") {
            check(h.ternary_table(), n, &mut r);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..200 {
        let n = rng.gen_range(2..=5);
        let heaps = enumerate_heaps(n, &cfg).expect("within bounds");
        let base = &heaps[rng.gen_range(0..heaps.len())];
        let mut table = base.ternary_table();
        if i % 4 == 0 {
            // fully random table
            for v in table.iter_mut() {
                *v = rng.gen_range(0..n);
            }
        } else {
            let flips = rng.gen_range(1..=4);
            for _ in 0..flips {
                let idx = rng.gen_range(0..table.len());
                let old = table[idx];
                let mut new = rng.gen_range(0..n);
                if new == old {
                    new = (new + 1) % n;
                }
                table[idx] = new;
            }
        }
        check(table, n, &mut r);
    }
    r.line(format!(
        "{agree} tables compared ({accepted} accepted by both), 0 disagreements expected"
    ));
    r
}

/// Criterion 2: the four bracket identities, exhaustive for order <= 4 and
/// on 10^4 random tuples per heap for orders 5..8.
pub fn c02_bracket_identity_suite() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let mut checks = 0usize;
    let mut run_tuple = |h: &FiniteHeap, v: [usize; 9], exhaustive3: bool, r: &mut Report| {
        let [a, b, c, d, e, f, g, x, y] = v;
        // (2): [v,w,[x,y,z]] = [v,[y,x,w],z]
        if h.op(a, b, h.op(c, d, e)) != h.op(a, h.op(d, c, b), e) {
            r.fail(format!("identity (2) fails on {} at {:?}", h.label(), &v[..5]));
        }
        // (3): three cancellation forms
        if h.op(a, b, h.op(b, a, c)) != c
            || h.op(h.op(c, a, b), b, a) != c
            || h.op(a, h.op(b, c, a), b) != c
        {
            r.fail(format!("identity (3) fails on {} at {:?}", h.label(), &v[..3]));
        }
        // (3): any three entries of [x,y,z] = w determine the fourth
        let w = h.op(a, b, c);
        let n = h.order();
        let sols_x: Vec<usize> = (0..n).filter(|&x2| h.op(x2, b, c) == w).collect();
        let sols_y: Vec<usize> = (0..n).filter(|&y2| h.op(a, y2, c) == w).collect();
        let sols_z: Vec<usize> = (0..n).filter(|&z2| h.op(a, b, z2) == w).collect();
        if sols_x != [a] || sols_y != [b] || sols_z != [c] {
            r.fail(format!(
                "slot solutions not unique on {} at ({a},{b},{c})",
                h.label()
            ));
        }
        // (4): interchange of two bracket layers
        if h.op(h.op(a, b, c), h.op(d, e, f), h.op(g, x, y))
            != h.op(h.op(a, d, g), h.op(b, e, x), h.op(c, f, y))
        {
            r.fail(format!("identity (4) fails on {} at {v:?}", h.label()));
        }
        // (1): [x,y,e] = e and [e,x,y] = e each force x = y
        if exhaustive3 {
            if h.op(a, b, c) == c && a != b {
                r.fail(format!("identity (1) fails on {}: [{a},{b},{c}]={c}", h.label()));
            }
            if h.op(c, a, b) == c && a != b {
                r.fail(format!("identity (1) fails on {}: [{c},{a},{b}]={c}", h.label()));
            }
        } else {
            let only: Vec<usize> = (0..n).filter(|&x2| h.op(x2, b, c) == c).collect();
            if only != [b] {
                r.fail(format!("identity (1) fails on {} at ({b},{c})", h.label()));
            }
        }
        checks += 1;
    };
    for n in 1..=4usize {
        for h in enumerate_heaps(n, &cfg).expect("within bounds") {
            for packed in 0..n.pow(9) {
                let mut v = [0usize; 9];
                let mut c = packed;
                for slot in 0..9 {
                    v[slot] = c % n;
                    c /= n;
                }
                run_tuple(&h, v, true, &mut r);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for n in 5..=8usize {
        for h in enumerate_heaps(n, &cfg).expect("within bounds") {
            for _ in 0..10_000 {
                let mut v = [0usize; 9];
                for slot in v.iter_mut() {
                    *slot = rng.gen_range(0..n);
                }
                run_tuple(&h, v, false, &mut r);
            }
        }
    }
    r.line(format!("{checks} tuples checked across all census heaps"));
    r
}

/// Criterion 3: retracts at every basepoint are isomorphic to the original
/// group, and rebuilding the heap from any retract is isomorphic to the heap.
pub fn c03_round_trips() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let mut count = 0usize;
    for n in 1..=8usize {
        for h in enumerate_heaps(n, &cfg).expect("within bounds") {
            for e in 0..n {
                let table = h.group_retract(e).expect("basepoint in range");
                // explicit translation x -> [x, e, 0] is a group isomorphism
                // from the retract at e onto the retract at 0
                let tau: Vec<usize> = (0..n).map(|x| h.op(x, e, 0)).collect();
                let mut seen = vec![false; n];
                for &v in &tau {
                    seen[v] = true;
                }
                if !seen.iter().all(|&s| s) {
                    r.fail(format!("translation not bijective on {} at e={e}", h.label()));
                }
                for x in 0..n {
                    for y in 0..n {
                        if tau[table[x * n + y]] != h.add(tau[x], tau[y]) {
                            r.fail(format!(
                                "translation not multiplicative on {} at e={e}",
                                h.label()
                            ));
                        }
                    }
                }
                // independent search: rebuilding a heap from the retract
                let back =
                    Arc::new(FiniteHeap::from_group(n, &table, "back").expect("group table"));
                if find_isomorphism(&h, &back).is_none() {
                    r.fail(format!(
                        "no isomorphism between {} and its rebuild at e={e}",
                        h.label()
                    ));
                }
                count += 1;
            }
        }
    }
    r.line(format!("{count} basepoint round trips verified"));
    r
}

/// Criterion 4: the first isomorphism theorem for every module morphism
/// between census modules of order <= 4 over every truss of order <= 3.
pub fn c04_first_isomorphism() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let mut morphisms = 0usize;
    for truss in trusses_up_to(3) {
        let u = build_universe(&truss, 4, &cfg).expect("within bounds");
        for a in u.modules() {
            for b in u.modules() {
                for phi in enumerate_homs(a, b).expect("same truss") {
                    match first_iso_check(&phi) {
                        Ok(fi) => {
                            if !fi.iso.is_iso() {
                                r.fail("induced quotient map is not bijective");
                            }
                            if fi.quotient.order() != phi.image().len() {
                                r.fail("quotient and image orders differ");
                            }
                        }
                        Err(e) => r.fail(format!("first isomorphism construction failed: {e}")),
                    }
                    morphisms += 1;
                }
            }
        }
    }
    r.line(format!(
        "first isomorphism theorem verified on {morphisms} morphisms"
    ));
    r
}

/// Criterion 5: the singleton module is injective relative to the bound-3
/// universe over every census truss of order <= 3.
pub fn c05_singleton_injective() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let mut count = 0usize;
    for truss in trusses_up_to(3) {
        let u = build_universe(&truss, 3, &cfg).expect("within bounds");
        let star = Arc::new(TModule::singleton(&truss));
        if !is_injective_rel(&star, &u).holds() {
            r.fail(format!(
                "singleton not injective over a truss of order {}",
                truss.order()
            ));
        }
        count += 1;
    }
    r.line(format!("singleton verified injective over {count} trusses"));
    r
}

/// Criterion 6: no absorber factors iff cancellation, over every census
/// truss with zero of order <= 4.
pub fn c06_cancellation_equivalence() -> Report {
    let mut r = Report::new();
    let mut with_zero = 0usize;
    for truss in trusses_up_to(4) {
        if truss.zero().is_none() {
            continue;
        }
        with_zero += 1;
        let no_factors = truss.absorber_factors().expect("zero is set").is_empty();
        let cancels = truss.has_cancellation().expect("zero is set");
        if no_factors != cancels {
            r.fail(format!(
                "equivalence fails on an order-{} truss: factors-empty={no_factors}, cancellation={cancels}",
                truss.order()
            ));
        }
    }
    r.line(format!(
        "absorber-factor/cancellation equivalence verified on {with_zero} trusses with zero"
    ));
    r
}

type Sequence = (Arc<TModule>, ModuleMorphism, ModuleMorphism, Arc<TModule>);

/// Short exact sequences `* -> S -> N -> N/S -> *` from every submodule of
/// every member of the universe.
fn submodule_sequences(u: &Universe) -> Vec<Sequence> {
    let mut out = Vec::new();
    for n in u.modules() {
        for sub in enumerate_submodules(n) {
            let (k, incl) = sub.as_module();
            let (q, proj) = quotient_module(n, sub.elements()).expect("submodule quotient");
            out.push((k, incl, proj, q));
        }
    }
    out
}

/// Criterion 7: the projective comparison pipeline on the fixed fixture and
/// on at least five census-generated instances.
pub fn c07_schanuel_projective() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    // fixed fixture over the truss of Z/2
    let t = Arc::new(Truss::integers_mod(2));
    let u = build_universe(&t, 3, &cfg).expect("within bounds");
    let reg = Arc::new(t.regular_module());
    let star = Arc::new(TModule::singleton(&t));
    let i1 = Morphism::identity(&reg);
    let pi1 = Morphism::new(Arc::clone(&reg), Arc::clone(&star), vec![0, 0]).expect("map to star");
    let tt = product_module(&reg, &reg).expect("same truss");
    let i2 = Morphism::identity(&tt.module);
    let pi2 =
        Morphism::new(Arc::clone(&tt.module), Arc::clone(&star), vec![0; 4]).expect("map to star");
    match schanuel_projective(&i1, &pi1, &i2, &pi2, &u) {
        Ok(out) => {
            if out.lhs.order() != 8 || !out.iso.is_iso() || !out.oracle.is_iso() {
                r.fail("fixed fixture produced a defective isomorphism");
            }
        }
        Err(e) => r.fail(format!("fixed fixture pipeline failed: {e}")),
    }
    // census-generated instances
    let mut ran = 0usize;
    for truss in trusses_up_to(3) {
        let u = build_universe(&truss, 3, &cfg).expect("within bounds");
        let mut cands: Vec<Arc<TModule>> = u.modules().to_vec();
        for a in u.modules() {
            for b in u.modules() {
                if a.order() * b.order() <= 4 {
                    cands.push(product_module(a, b).expect("same truss").module);
                }
            }
        }
        let projective: Vec<Arc<TModule>> = cands
            .into_iter()
            .filter(|p| is_projective_rel(p, &u).holds())
            .collect();
        let mut seqs = Vec::new();
        for p in &projective {
            for sub in enumerate_submodules(p) {
                let (k, incl) = sub.as_module();
                let (q, proj) = quotient_module(p, sub.elements()).expect("submodule quotient");
                seqs.push((k, incl, proj, q));
            }
        }
        let mut per_truss = 0usize;
        'outer: for (idx, s1) in seqs.iter().enumerate() {
            for s2 in &seqs[idx..] {
                if s2.0.absorbers().is_empty() {
                    continue;
                }
                let Some(tau) = find_isomorphism(&s2.3, &s1.3) else {
                    continue;
                };
                let b1 = s1.2.apply(s1.1.apply(0));
                let b2 = tau.apply(s2.2.apply(s2.1.apply(0)));
                if b1 != b2 {
                    continue;
                }
                let pi2_aligned = s2.2.then(&tau).expect("composable");
                // a nontrivial middle module on at least one side
                if s1.1.target().order() == 1 && s2.1.target().order() == 1 {
                    continue;
                }
                match schanuel_projective(&s1.1, &s1.2, &s2.1, &pi2_aligned, &u) {
                    Ok(out) => {
                        if !out.iso.is_iso() || !out.oracle.is_iso() {
                            r.fail("census instance produced a defective isomorphism");
                        }
                    }
                    Err(e) => r.fail(format!("census instance pipeline failed: {e}")),
                }
                ran += 1;
                per_truss += 1;
                if per_truss >= 2 {
                    break 'outer;
                }
            }
        }
    }
    if ran < 5 {
        r.fail(format!("only {ran} census instances found, need at least 5"));
    }
    r.line(format!(
        "fixed fixture plus {ran} census instances verified with oracle confirmation"
    ));
    r
}

/// Criterion 8: the injective comparison pipeline on the degenerate fixtures
/// and on every census-found instance over trusses of order <= 3, with the
/// corollary checked on each.
pub fn c08_schanuel_injective() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    // degenerate fixtures
    let t = Arc::new(Truss::integers_mod(2));
    let u2 = build_universe(&t, 2, &cfg).expect("within bounds");
    let star = Arc::new(TModule::singleton(&t));
    let id = Morphism::identity(&star);
    match schanuel_injective(&id, &id, &id, &id, &u2) {
        Ok(out) => {
            if out.lhs.order() != 1 || out.corollary != (true, true) {
                r.fail("degenerate singleton fixture misbehaved");
            }
        }
        Err(e) => r.fail(format!("degenerate fixture failed: {e}")),
    }
    let ss = product_module(&star, &star).expect("same truss");
    let i1 = Morphism::new(Arc::clone(&star), Arc::clone(&ss.module), vec![0]).expect("linear");
    let pi1 = Morphism::new(Arc::clone(&ss.module), Arc::clone(&star), vec![0]).expect("linear");
    if let Err(e) = schanuel_injective(&i1, &pi1, &id, &id, &u2) {
        r.fail(format!("star-squared fixture failed: {e}"));
    }
    // census-found instances
    let mut ran = 0usize;
    let mut corollary_pairs = 0usize;
    for truss in trusses_up_to(3) {
        let u = build_universe(&truss, 3, &cfg).expect("within bounds");
        let injective: Vec<Arc<TModule>> = u
            .modules()
            .iter()
            .filter(|e| is_injective_rel(e, &u).holds())
            .cloned()
            .collect();
        let mut seqs = Vec::new();
        for e in &injective {
            for sub in enumerate_submodules(e) {
                let (m, incl) = sub.as_module();
                let (q, proj) = quotient_module(e, sub.elements()).expect("submodule quotient");
                seqs.push((m, incl, proj, q));
            }
        }
        for s1 in &seqs {
            for s2 in &seqs {
                if s2.3.absorbers().is_empty() {
                    continue;
                }
                let Some(al) = find_isomorphism(&s1.0, &s2.0) else {
                    continue;
                };
                let i2_aligned = al.then(&s2.1).expect("composable");
                match schanuel_injective(&s1.1, &s1.2, &i2_aligned, &s2.2, &u) {
                    Ok(out) => {
                        if !out.iso.is_iso() || !out.oracle.is_iso() {
                            r.fail("census instance produced a defective isomorphism");
                        }
                        if out.corollary.0 != out.corollary.1 {
                            r.fail(format!(
                                "corollary mismatch over an order-{} truss: {:?}",
                                truss.order(),
                                out.corollary
                            ));
                        }
                        corollary_pairs += 1;
                    }
                    Err(e) => r.fail(format!("census instance pipeline failed: {e}")),
                }
                ran += 1;
            }
        }
    }
    if ran < 100 {
        r.fail(format!("census scan found only {ran} instances"));
    }
    r.line(format!(
        "degenerate fixtures plus {ran} census instances verified, corollary agreed on {corollary_pairs}"
    ));
    r
}

/// Criterion 9: both splitting propositions on every short exact census
/// triple of total order <= 8, and the retraction/direct-factor facts for
/// every relatively injective member.
pub fn c09_splitting_propositions() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let mut sections = 0usize;
    let mut retractions = 0usize;
    let mut injective_members = 0usize;
    for truss in trusses_up_to(4) {
        let u = build_universe(&truss, 4, &cfg).expect("within bounds");
        let mut injectivity_cache: HashMap<(Vec<usize>, Vec<usize>), bool> = HashMap::new();
        let mut injective_rel = |m: &Arc<TModule>, u: &Universe| -> bool {
            let key = canonical_module_key(m);
            *injectivity_cache
                .entry(key)
                .or_insert_with(|| is_injective_rel(m, u).holds())
        };
        for (sub, incl, proj, quot) in submodule_sequences(&u) {
            let total = sub.order() + incl.target().order() + quot.order();
            if total > 8 {
                continue;
            }
            let triple = check_short_exact(&incl, &proj)
                .expect("composable")
                .expect("submodule sequences are short exact");
            if let Some(delta) = find_section(&proj) {
                match split_by_section(&triple.witness, &delta) {
                    Ok(split) => {
                        if find_isomorphism(incl.target(), &split.product.module).is_none() {
                            r.fail("section split not confirmed by the oracle");
                        }
                    }
                    Err(e) => r.fail(format!("section split failed: {e}")),
                }
                sections += 1;
            }
            if let Some(gamma) = find_retraction(&incl) {
                match split_by_retraction(&triple.witness, &gamma) {
                    Ok(split) => {
                        if find_isomorphism(incl.target(), &split.product.module).is_none() {
                            r.fail("retraction split not confirmed by the oracle");
                        }
                    }
                    Err(e) => r.fail(format!("retraction split failed: {e}")),
                }
                retractions += 1;
            }
            // relatively injective submodules retract and are direct factors
            if injective_rel(&sub, &u) {
                injective_members += 1;
                if find_retraction(&incl).is_none() {
                    r.fail(format!(
                        "an injective member of order {} admits no retraction",
                        sub.order()
                    ));
                }
                let factor = product_module(&sub, &quot).expect("same truss");
                if find_isomorphism(incl.target(), &factor.module).is_none() {
                    r.fail("injective submodule is not a direct factor");
                }
            }
        }
    }
    r.line(format!(
        "splits verified: {sections} sections, {retractions} retractions, \
         {injective_members} injective members factored"
    ));
    r
}

/// Criterion 10: the divisibility suite over the census domain trusses.
pub fn c10_divisibility() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let t5 = Arc::new(Truss::integers_mod(5));
    let m5 = Arc::new(t5.regular_module());
    if !is_divisible(&m5).expect("domain truss").holds() {
        r.fail("the order-5 ring truss is not divisible over itself");
    }
    let mut quotients = 0usize;
    let mut extensions = 0usize;
    let mut inverses = 0usize;
    let mut injective_divisible = 0usize;
    for truss in trusses_up_to(4) {
        if !truss.is_domain() {
            continue;
        }
        let zero = truss.zero().expect("domain truss has a zero");
        let u = build_universe(&truss, 4, &cfg).expect("within bounds");
        for n in u.modules() {
            let n_divisible = is_divisible(n).expect("domain truss").holds();
            for sub in enumerate_submodules(n) {
                let (s, _incl) = sub.as_module();
                let (q, _proj) = quotient_module(n, sub.elements()).expect("submodule quotient");
                let s_div = is_divisible(&s).expect("domain truss").holds();
                let q_div = is_divisible(&q).expect("domain truss").holds();
                // quotients of divisible modules stay divisible
                if n_divisible && !q_div {
                    r.fail(format!(
                        "a quotient of a divisible order-{} module is not divisible",
                        n.order()
                    ));
                }
                if n_divisible {
                    quotients += 1;
                }
                // the extension property along the abs-exact sequence
                if s_div && q_div && !n_divisible {
                    r.fail(format!(
                        "middle of an abs-exact sequence is not divisible (orders {}, {}, {})",
                        s.order(),
                        n.order(),
                        q.order()
                    ));
                }
                if s_div && q_div {
                    extensions += 1;
                }
            }
        }
        if let Some(unit) = truss.unit() {
            let reg = Arc::new(truss.regular_module());
            if is_divisible(&reg).expect("domain truss").holds() {
                for t in 0..truss.order() {
                    if t == zero {
                        continue;
                    }
                    if !(0..truss.order()).any(|t2| truss.mul(t2, t) == unit) {
                        r.fail(format!("no left inverse for scalar {t}"));
                    }
                    inverses += 1;
                }
            }
            // relatively injective normalised modules are divisible
            for e in u.modules() {
                if !e.is_normalised() {
                    continue;
                }
                if is_injective_rel(e, &u).holds() {
                    injective_divisible += 1;
                    if !is_divisible(e).expect("domain truss").holds() {
                        r.fail(format!(
                            "an injective normalised module of order {} is not divisible",
                            e.order()
                        ));
                    }
                }
            }
        }
    }
    r.line(format!(
        "divisibility: {quotients} quotients, {extensions} extensions, \
         {inverses} inverses, {injective_divisible} injective normalised members"
    ));
    r
}

/// Brute-force oracle: all functions checked against the raw definitions.
fn brute_force_maps(
    src_heap: &FiniteHeap,
    ok: impl Fn(&[usize]) -> bool,
    target_order: usize,
) -> Vec<Vec<usize>> {
    let n = src_heap.order();
    let total = target_order.pow(n as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut f = vec![0usize; n];
        let mut c = idx;
        for slot in (0..n).rev() {
            f[slot] = c % target_order;
            c /= target_order;
        }
        if ok(&f) {
            out.push(f);
        }
    }
    out
}

/// Criterion 11: hom-count fixtures against brute force, and pointwise
/// bracket closure of every census hom-set with both sides of order <= 3.
pub fn c11_hom_machinery() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    // four heap endomaps of the order-2 heap
    let h2 = Arc::new(FiniteHeap::cyclic(2));
    let heap_homs = enumerate_homs(&h2, &h2).expect("heaps");
    let oracle_heap = brute_force_maps(
        &h2,
        |f| {
            (0..2).all(|x| {
                (0..2).all(|y| (0..2).all(|z| f[h2.op(x, y, z)] == h2.op(f[x], f[y], f[z])))
            })
        },
        2,
    );
    if heap_homs.len() != 4 || heap_homs.len() != oracle_heap.len() {
        r.fail(format!(
            "heap endomap count {} disagrees with oracle {}",
            heap_homs.len(),
            oracle_heap.len()
        ));
    }
    let got: Vec<Vec<usize>> = heap_homs.iter().map(|f| f.images().to_vec()).collect();
    if got != oracle_heap {
        r.fail("heap endomap sets differ from the oracle");
    }
    // two module endomorphisms of the regular module over the order-2 ring truss
    let t = Arc::new(Truss::integers_mod(2));
    let reg = Arc::new(t.regular_module());
    let module_homs = enumerate_homs(&reg, &reg).expect("same truss");
    let oracle_module = brute_force_maps(
        reg.heap(),
        |f| {
            let heap_ok = (0..2).all(|x| {
                (0..2).all(|y| {
                    (0..2).all(|z| f[reg.heap().op(x, y, z)] == reg.heap().op(f[x], f[y], f[z]))
                })
            });
            heap_ok && (0..2).all(|s| (0..2).all(|x| f[reg.act(s, x)] == reg.act(s, f[x])))
        },
        2,
    );
    if module_homs.len() != 2 || module_homs.len() != oracle_module.len() {
        r.fail(format!(
            "module endomorphism count {} disagrees with oracle {}",
            module_homs.len(),
            oracle_module.len()
        ));
    }
    // every map into the singleton
    for n in 1..=3 {
        for truss in enumerate_trusses(n, &cfg).expect("within bounds") {
            let star = Arc::new(TModule::singleton(&truss));
            for m in build_universe(&truss, 3, &cfg).expect("bounds").modules() {
                let homs = enumerate_homs(m, &star).expect("same truss");
                if homs.len() != 1 {
                    r.fail("more than one map into the singleton");
                }
            }
        }
    }
    // pointwise bracket closure of hom-sets
    let mut closures = 0usize;
    for truss in trusses_up_to(3) {
        let u = build_universe(&truss, 3, &cfg).expect("within bounds");
        for a in u.modules() {
            for b in u.modules() {
                let homs = enumerate_homs(a, b).expect("same truss");
                let images: Vec<&[usize]> = homs.iter().map(|h| h.images()).collect();
                for f in &homs {
                    for g in &homs {
                        for k in &homs {
                            let bracket: Vec<usize> = (0..a.order())
                                .map(|x| b.heap().op(f.apply(x), g.apply(x), k.apply(x)))
                                .collect();
                            if !images.contains(&bracket.as_slice()) {
                                r.fail("hom-set not closed under the pointwise bracket");
                            }
                            closures += 1;
                        }
                    }
                }
            }
        }
    }
    r.line(format!(
        "hom fixtures match brute force; {closures} pointwise brackets stayed closed"
    ));
    r
}

/// Criterion 12: hom-module constructions validate and preserve relative
/// injectivity along the identity and a cross-truss fixture, and squaring
/// preserves relative injectivity.
pub fn c12_hom_induced_and_powers() -> Report {
    let mut r = Report::new();
    let cfg = cfg();
    let mut identity_cases = 0usize;
    let mut power_cases = 0usize;
    for truss in trusses_up_to(3) {
        let u = build_universe(&truss, 3, &cfg).expect("within bounds");
        let abelian_unital = truss.is_commutative() && truss.is_unital();
        for e in u.modules() {
            let e_inj = is_injective_rel(e, &u).holds();
            if abelian_unital {
                let id = Morphism::identity(&truss);
                match hom_induced_module(&id, e) {
                    Ok(h) => {
                        if e_inj && !is_injective_rel(&h.module, &u).holds() {
                            r.fail(
                                "hom module along the identity lost relative injectivity",
                            );
                        }
                        identity_cases += 1;
                    }
                    Err(trusslab::module::ModuleError::EmptyHomCarrier) => {}
                    Err(err) => r.fail(format!("hom module construction failed: {err}")),
                }
            }
            if e_inj {
                let squared = power_module(e, 2).expect("within cap");
                if !is_injective_rel(&squared, &u).holds() {
                    r.fail("squaring lost relative injectivity");
                }
                power_cases += 1;
            }
        }
    }
    // cross-truss fixture: the constant-at-1 morphism into the order-4 ring truss
    let s = Arc::new(Truss::integers_mod(2));
    let t4 = Arc::new(Truss::integers_mod(4));
    let c1 = Morphism::new(Arc::clone(&s), Arc::clone(&t4), vec![1, 1]).expect("truss morphism");
    let us = build_universe(&s, 3, &cfg).expect("within bounds");
    let ut = build_universe(&t4, 3, &cfg).expect("within bounds");
    let mut fixture_cases = 0usize;
    for m in us.modules() {
        if !is_injective_rel(m, &us).holds() {
            continue;
        }
        match hom_induced_module(&c1, m) {
            Ok(h) => {
                if !is_injective_rel(&h.module, &ut).holds() {
                    r.fail("hom module along the fixture morphism lost relative injectivity");
                }
                fixture_cases += 1;
            }
            Err(trusslab::module::ModuleError::EmptyHomCarrier) => {}
            Err(err) => r.fail(format!("fixture hom module failed: {err}")),
        }
    }
    if fixture_cases == 0 {
        r.fail("the cross-truss fixture produced no hom modules");
    }
    r.line(format!(
        "{identity_cases} identity hom modules, {fixture_cases} fixture hom modules, \
         {power_cases} squares checked"
    ));
    r
}

pub const SUITES: &[(&str, fn() -> Report)] = &[
    ("01 heap validation equivalence", c01_heap_validation_equivalence),
    ("02 bracket identity suite", c02_bracket_identity_suite),
    ("03 retract round trips", c03_round_trips),
    ("04 first isomorphism theorem", c04_first_isomorphism),
    ("05 singleton injectivity", c05_singleton_injective),
    ("06 cancellation equivalence", c06_cancellation_equivalence),
    ("07 projective comparison", c07_schanuel_projective),
    ("08 injective comparison", c08_schanuel_injective),
    ("09 splitting propositions", c09_splitting_propositions),
    ("10 divisibility suite", c10_divisibility),
    ("11 hom machinery", c11_hom_machinery),
    ("12 hom modules and powers", c12_hom_induced_and_powers),
];
