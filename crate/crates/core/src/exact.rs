//! Exact sequences, splitting, relative projectivity and injectivity,
//! divisibility, and the two Schanuel-style pipelines.
//!
//! The categorical quantifier "for every module" is finitized to a
//! [`Universe`]: the census of all modules over the truss up to isomorphism
//! below a bound. Projectivity and injectivity verdicts are always relative
//! to the universe they were tested against.
//!
//! Both Schanuel pipelines replay their proofs step by step — lift, diagram
//! chase, the paired maps, exactness, splitting — and assert every
//! intermediate obligation. The assembled isomorphism is then cross-checked
//! by the independent backtracking search in [`crate::hom`].

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::hom::{enumerate_homs, find_isomorphism, HomError, ModuleMorphism, Morphism};
use crate::module::{
    enumerate_submodules, induced_module, product_module, quotient_module, ModuleError,
    ProductParts, TModule,
};
use crate::truss::Truss;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("morphisms do not compose")]
    NotComposable,
    #[error("the truss is not a domain truss")]
    NotDomainTruss,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("proof obligation `{step}` failed: {detail}")]
    Obligation { step: &'static str, detail: String },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// Witness that `source(f) -> N -> target(g)` is exact: the image of `f`
/// equals the fiber of `g` over `basepoint`.
#[derive(Debug, Clone)]
pub struct SequenceWitness {
    pub f: ModuleMorphism,
    pub g: ModuleMorphism,
    pub basepoint: usize,
    pub abs_exact: bool,
}

/// Searches basepoints in ascending carrier order; the first witness wins.
pub fn check_exact(
    f: &ModuleMorphism,
    g: &ModuleMorphism,
) -> Result<Option<SequenceWitness>, ExactError> {
    if f.target().as_ref() != g.source().as_ref() {
        return Err(ExactError::NotComposable);
    }
    let im_f = f.image();
    let absorbers = g.target().absorbers();
    for e in 0..g.target().order() {
        let fiber = g.fiber(e);
        if fiber.is_empty() {
            continue;
        }
        if fiber == im_f {
            return Ok(Some(SequenceWitness {
                f: f.clone(),
                g: g.clone(),
                basepoint: e,
                abs_exact: absorbers.binary_search(&e).is_ok(),
            }));
        }
    }
    Ok(None)
}

/// A short exact sequence `* -> M -> N -> P -> *`: mono, epi, exactness, and
/// the induced isomorphism of `N / Im i` onto `P`.
#[derive(Debug, Clone)]
pub struct ShortExactTriple {
    pub i: ModuleMorphism,
    pub pi: ModuleMorphism,
    pub witness: SequenceWitness,
    pub quotient: Arc<TModule>,
    pub quotient_iso: ModuleMorphism,
}

pub fn check_short_exact(
    i: &ModuleMorphism,
    pi: &ModuleMorphism,
) -> Result<Option<ShortExactTriple>, ExactError> {
    if i.target().as_ref() != pi.source().as_ref() {
        return Err(ExactError::NotComposable);
    }
    if !i.is_mono() || !pi.is_epi() {
        return Ok(None);
    }
    let witness = match check_exact(i, pi)? {
        Some(w) => w,
        None => return Ok(None),
    };
    let (quotient, projection) = quotient_module(pi.source(), &i.image())
        .expect("image of a module morphism is a submodule");
    // classes of the image congruence are exactly the fibers of pi
    let mut images = vec![usize::MAX; quotient.order()];
    for x in 0..pi.source().order() {
        images[projection.apply(x)] = pi.apply(x);
    }
    let quotient_iso = Morphism::new(Arc::clone(&quotient), Arc::clone(pi.target()), images)
        .expect("induced map on the quotient is linear");
    assert!(
        quotient_iso.is_iso(),
        "induced map of an exact mono/epi pair must be bijective"
    );
    Ok(Some(ShortExactTriple {
        i: i.clone(),
        pi: pi.clone(),
        witness,
        quotient,
        quotient_iso,
    }))
}

/// Least `l` with `l.then(along) == of`.
pub fn find_lift(of: &ModuleMorphism, along: &ModuleMorphism) -> Option<ModuleMorphism> {
    let candidates = enumerate_homs(of.source(), along.source()).ok()?;
    candidates.into_iter().find(|l| {
        l.then(along)
            .map(|c| c.images() == of.images())
            .unwrap_or(false)
    })
}

/// Least `ext` with `along.then(ext) == of`.
pub fn find_extension(of: &ModuleMorphism, along: &ModuleMorphism) -> Option<ModuleMorphism> {
    let candidates = enumerate_homs(along.target(), of.target()).ok()?;
    candidates.into_iter().find(|ext| {
        along
            .then(ext)
            .map(|c| c.images() == of.images())
            .unwrap_or(false)
    })
}

/// Least section of `psi` (`psi ∘ delta = id`).
pub fn find_section(psi: &ModuleMorphism) -> Option<ModuleMorphism> {
    find_lift(&Morphism::identity(psi.target()), psi)
}

/// Least retraction of `phi` (`gamma ∘ phi = id`).
pub fn find_retraction(phi: &ModuleMorphism) -> Option<ModuleMorphism> {
    find_extension(&Morphism::identity(phi.source()), phi)
}

/// Split of an exact sequence with mono `f` along a section of `g`:
/// the middle module is isomorphic to `M^(e') × P`.
#[derive(Debug, Clone)]
pub struct SplitBySection {
    pub induced_basepoint: usize,
    pub product: ProductParts,
    /// N → M^(e') × P
    pub iso: ModuleMorphism,
}

pub fn split_by_section(
    seq: &SequenceWitness,
    delta: &ModuleMorphism,
) -> Result<SplitBySection, PipelineError> {
    let phi = &seq.f;
    let psi = &seq.g;
    if !phi.is_mono() {
        return Err(PipelineError::Precondition(
            "the first morphism of the sequence must be mono".into(),
        ));
    }
    let composed = delta.then(psi).map_err(|_| {
        PipelineError::Precondition("section does not compose with the epimorphism".into())
    })?;
    if composed.images() != Morphism::identity(psi.target()).images() {
        return Err(PipelineError::Precondition(
            "delta is not a section of the epimorphism".into(),
        ));
    }
    let m = phi.source();
    let n = phi.target();
    let induced_basepoint = 0;
    let m_ind = induced_module(m, induced_basepoint)?;
    let product = product_module(&m_ind, psi.target())?;
    let mut phi_inverse = vec![usize::MAX; n.order()];
    for (k, &v) in phi.images().iter().enumerate() {
        phi_inverse[v] = k;
    }
    let phi_e = phi.apply(induced_basepoint);
    let mut images = Vec::with_capacity(n.order());
    for x in 0..n.order() {
        let w = n.heap().op(x, delta.apply(psi.apply(x)), phi_e);
        let k = phi_inverse[w];
        if k == usize::MAX {
            return Err(PipelineError::Obligation {
                step: "translate into the image of the mono",
                detail: format!("[{x}, δψ({x}), φ(e')] = {w} escapes the image of φ"),
            });
        }
        images.push(product.encode(k, psi.apply(x)));
    }
    let iso = Morphism::new(Arc::clone(n), Arc::clone(&product.module), images).map_err(|e| {
        PipelineError::Obligation {
            step: "split map is linear",
            detail: e.to_string(),
        }
    })?;
    if !iso.is_iso() {
        return Err(PipelineError::Obligation {
            step: "split map is bijective",
            detail: format!("images {:?}", iso.images()),
        });
    }
    Ok(SplitBySection {
        induced_basepoint,
        product,
        iso,
    })
}

/// Split of an exact sequence with epi `g` along a retraction of `f`:
/// the middle module is isomorphic to `M × P`.
#[derive(Debug, Clone)]
pub struct SplitByRetraction {
    pub product: ProductParts,
    /// N → M × P
    pub iso: ModuleMorphism,
}

pub fn split_by_retraction(
    seq: &SequenceWitness,
    gamma: &ModuleMorphism,
) -> Result<SplitByRetraction, PipelineError> {
    let phi = &seq.f;
    let psi = &seq.g;
    if !psi.is_epi() {
        return Err(PipelineError::Precondition(
            "the second morphism of the sequence must be epi".into(),
        ));
    }
    let composed = phi.then(gamma).map_err(|_| {
        PipelineError::Precondition("retraction does not compose with the monomorphism".into())
    })?;
    if composed.images() != Morphism::identity(phi.source()).images() {
        return Err(PipelineError::Precondition(
            "gamma is not a retraction of the monomorphism".into(),
        ));
    }
    let n = phi.target();
    let product = product_module(phi.source(), psi.target())?;
    let images: Vec<usize> = (0..n.order())
        .map(|x| product.encode(gamma.apply(x), psi.apply(x)))
        .collect();
    let iso = Morphism::new(Arc::clone(n), Arc::clone(&product.module), images).map_err(|e| {
        PipelineError::Obligation {
            step: "split map is linear",
            detail: e.to_string(),
        }
    })?;
    if !iso.is_iso() {
        return Err(PipelineError::Obligation {
            step: "split map is bijective",
            detail: format!("images {:?}", iso.images()),
        });
    }
    Ok(SplitByRetraction { product, iso })
}

/// All modules over one truss up to isomorphism, up to a size bound.
#[derive(Debug, Clone)]
pub struct Universe {
    truss: Arc<Truss>,
    modules: Vec<Arc<TModule>>,
    bound: usize,
}

impl Universe {
    pub fn new(truss: Arc<Truss>, modules: Vec<Arc<TModule>>, bound: usize) -> Self {
        Universe {
            truss,
            modules,
            bound,
        }
    }

    pub fn truss(&self) -> &Arc<Truss> {
        &self.truss
    }

    pub fn modules(&self) -> &[Arc<TModule>] {
        &self.modules
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

#[derive(Debug, Clone)]
pub enum ProjectiveVerdict {
    Projective,
    Blocked {
        epi: ModuleMorphism,
        map: ModuleMorphism,
    },
}

impl ProjectiveVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ProjectiveVerdict::Projective)
    }
}

/// Lifting test against every epimorphism between universe members.
pub fn is_projective_rel(p: &Arc<TModule>, u: &Universe) -> ProjectiveVerdict {
    for m in u.modules() {
        let homs_pm = enumerate_homs(p, m).expect("same truss");
        for n in u.modules() {
            let epis: Vec<ModuleMorphism> = enumerate_homs(m, n)
                .expect("same truss")
                .into_iter()
                .filter(|f| f.is_epi())
                .collect();
            if epis.is_empty() {
                continue;
            }
            let homs_pn = enumerate_homs(p, n).expect("same truss");
            for epi in &epis {
                let liftable: BTreeSet<Vec<usize>> = homs_pm
                    .iter()
                    .map(|l| l.then(epi).expect("composable").images().to_vec())
                    .collect();
                for f in &homs_pn {
                    if !liftable.contains(f.images()) {
                        return ProjectiveVerdict::Blocked {
                            epi: epi.clone(),
                            map: f.clone(),
                        };
                    }
                }
            }
        }
    }
    ProjectiveVerdict::Projective
}

#[derive(Debug, Clone)]
pub enum InjectiveVerdict {
    Injective,
    Blocked {
        host: Arc<TModule>,
        submodule: Vec<usize>,
        map: ModuleMorphism,
    },
}

impl InjectiveVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, InjectiveVerdict::Injective)
    }
}

/// Extension test against every submodule inclusion inside the universe.
pub fn is_injective_rel(e: &Arc<TModule>, u: &Universe) -> InjectiveVerdict {
    for n in u.modules() {
        let homs_ne = enumerate_homs(n, e).expect("same truss");
        for sub in enumerate_submodules(n) {
            let (sub_module, inclusion) = sub.as_module();
            let homs_sub_e = enumerate_homs(&sub_module, e).expect("same truss");
            if homs_sub_e.is_empty() {
                continue;
            }
            let restrictions: BTreeSet<Vec<usize>> = homs_ne
                .iter()
                .map(|th| inclusion.then(th).expect("composable").images().to_vec())
                .collect();
            for phi in &homs_sub_e {
                if !restrictions.contains(phi.images()) {
                    return InjectiveVerdict::Blocked {
                        host: Arc::clone(n),
                        submodule: sub.elements().to_vec(),
                        map: phi.clone(),
                    };
                }
            }
        }
    }
    InjectiveVerdict::Injective
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibleVerdict {
    Divisible,
    Blocked { scalar: usize, target: usize },
}

impl DivisibleVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DivisibleVerdict::Divisible)
    }
}

/// Over a domain truss: every nonzero scalar must act surjectively.
pub fn is_divisible(m: &Arc<TModule>) -> Result<DivisibleVerdict, ExactError> {
    let truss = m.truss();
    if !truss.is_domain() {
        return Err(ExactError::NotDomainTruss);
    }
    let zero = truss.zero().expect("domain truss has a zero");
    for t in 0..truss.order() {
        if t == zero {
            continue;
        }
        let mut hit = vec![false; m.order()];
        for x in 0..m.order() {
            hit[m.act(t, x)] = true;
        }
        if let Some(target) = hit.iter().position(|&h| !h) {
            return Ok(DivisibleVerdict::Blocked { scalar: t, target });
        }
    }
    Ok(DivisibleVerdict::Divisible)
}

/// Outcome of the projective pipeline: the assembled isomorphism
/// `K^(e) × P' → K' × P` together with every certified intermediate.
#[derive(Debug, Clone)]
pub struct SchanuelProjective {
    pub induced_basepoint: usize,
    pub lhs: Arc<TModule>,
    pub rhs: Arc<TModule>,
    pub iso: ModuleMorphism,
    pub oracle: ModuleMorphism,
    pub lift: ModuleMorphism,
    pub kernel_map: ModuleMorphism,
    pub theta: ModuleMorphism,
    pub psi: ModuleMorphism,
    pub section: ModuleMorphism,
}

/// Replays the proof of the projective comparison theorem on two short exact
/// sequences `* -> K -> P -> M -> *` and `* -> K' -> P' -> M -> *` sharing
/// the basepoint of exactness.
pub fn schanuel_projective(
    i: &ModuleMorphism,
    pi: &ModuleMorphism,
    i2: &ModuleMorphism,
    pi2: &ModuleMorphism,
    universe: &Universe,
) -> Result<SchanuelProjective, PipelineError> {
    let seq1 = check_short_exact(i, pi)
        .map_err(|e| PipelineError::Precondition(e.to_string()))?
        .ok_or_else(|| PipelineError::Precondition("first sequence is not short exact".into()))?;
    let seq2 = check_short_exact(i2, pi2)
        .map_err(|e| PipelineError::Precondition(e.to_string()))?
        .ok_or_else(|| PipelineError::Precondition("second sequence is not short exact".into()))?;
    if pi.target().as_ref() != pi2.target().as_ref() {
        return Err(PipelineError::Precondition(
            "sequences must end at the same module".into(),
        ));
    }
    if seq1.witness.basepoint != seq2.witness.basepoint {
        return Err(PipelineError::Precondition(format!(
            "exactness basepoints differ: {} vs {}",
            seq1.witness.basepoint, seq2.witness.basepoint
        )));
    }
    let k = i.source();
    let k2 = i2.source();
    let p = pi.source();
    let p2 = pi2.source();
    let abs_k2 = k2.absorbers();
    let e2 = *abs_k2.first().ok_or_else(|| {
        PipelineError::Precondition("the second kernel has no absorber".into())
    })?;
    if !is_projective_rel(p, universe).holds() {
        return Err(PipelineError::Precondition(
            "P is not projective relative to the universe".into(),
        ));
    }
    if !is_projective_rel(p2, universe).holds() {
        return Err(PipelineError::Precondition(
            "P' is not projective relative to the universe".into(),
        ));
    }
    let beta = find_lift(pi, pi2).ok_or(PipelineError::Obligation {
        step: "lift beta with pi' ∘ beta = pi",
        detail: "no lift found by exhaustive search".into(),
    })?;
    // diagram chase: beta maps the first kernel into the image of i'
    let mut i2_inverse = vec![usize::MAX; p2.order()];
    for (x, &v) in i2.images().iter().enumerate() {
        i2_inverse[v] = x;
    }
    let mut alpha_images = Vec::with_capacity(k.order());
    for x in 0..k.order() {
        let v = beta.apply(i.apply(x));
        let back = i2_inverse[v];
        if back == usize::MAX {
            return Err(PipelineError::Obligation {
                step: "beta ∘ i lands in the image of i'",
                detail: format!("beta(i({x})) = {v} is outside"),
            });
        }
        alpha_images.push(back);
    }
    let alpha = Morphism::new(Arc::clone(k), Arc::clone(k2), alpha_images).map_err(|e| {
        PipelineError::Obligation {
            step: "alpha is a module morphism",
            detail: e.to_string(),
        }
    })?;
    let prod_pk2 = product_module(p, k2)?;
    let theta_images: Vec<usize> = (0..k.order())
        .map(|x| prod_pk2.encode(i.apply(x), alpha.apply(x)))
        .collect();
    let theta = Morphism::new(Arc::clone(k), Arc::clone(&prod_pk2.module), theta_images)
        .map_err(|e| PipelineError::Obligation {
            step: "theta is a module morphism",
            detail: e.to_string(),
        })?;
    if !theta.is_mono() {
        return Err(PipelineError::Obligation {
            step: "theta is mono",
            detail: format!("images {:?}", theta.images()),
        });
    }
    let i2_e2 = i2.apply(e2);
    let psi_images: Vec<usize> = (0..prod_pk2.module.order())
        .map(|x| {
            let (pp, kk2) = prod_pk2.decode(x);
            p2.heap().op(beta.apply(pp), i2.apply(kk2), i2_e2)
        })
        .collect();
    let psi = Morphism::new(
        Arc::clone(&prod_pk2.module),
        Arc::clone(p2),
        psi_images,
    )
    .map_err(|e| PipelineError::Obligation {
        step: "psi is a module morphism",
        detail: e.to_string(),
    })?;
    if !psi.is_epi() {
        return Err(PipelineError::Obligation {
            step: "psi is epi",
            detail: format!("images {:?}", psi.images()),
        });
    }
    let mid = check_exact(&theta, &psi)
        .expect("theta and psi compose")
        .ok_or(PipelineError::Obligation {
            step: "image of theta equals the kernel of psi",
            detail: "no exactness basepoint found".into(),
        })?;
    if mid.basepoint != i2_e2 {
        return Err(PipelineError::Obligation {
            step: "exactness basepoint is i'(e')",
            detail: format!("found {} instead of {}", mid.basepoint, i2_e2),
        });
    }
    let section = find_section(&psi).ok_or(PipelineError::Obligation {
        step: "P' lifts against psi to a section",
        detail: "no section found by exhaustive search".into(),
    })?;
    let split = split_by_section(&mid, &section)?;
    // assemble K^(e) × P' → P × K' → K' × P
    let prod_k2p = product_module(k2, p)?;
    let swap = prod_pk2.swap_to(&prod_k2p);
    let back = split.iso.inverse().expect("split map is an isomorphism");
    let iso = back.then(&swap).expect("composable");
    let lhs = Arc::clone(&split.product.module);
    let rhs = Arc::clone(&prod_k2p.module);
    let oracle = find_isomorphism(&lhs, &rhs).ok_or(PipelineError::Obligation {
        step: "independent isomorphism search agrees",
        detail: "oracle found no isomorphism".into(),
    })?;
    Ok(SchanuelProjective {
        induced_basepoint: split.induced_basepoint,
        lhs,
        rhs,
        iso,
        oracle,
        lift: beta,
        kernel_map: alpha,
        theta,
        psi,
        section,
    })
}

/// Outcome of the injective pipeline: the assembled isomorphism
/// `E × Q' → E' × Q` plus the relative-injectivity corollary for Q and Q'.
#[derive(Debug, Clone)]
pub struct SchanuelInjective {
    pub lhs: Arc<TModule>,
    pub rhs: Arc<TModule>,
    pub iso: ModuleMorphism,
    pub oracle: ModuleMorphism,
    pub extension: ModuleMorphism,
    pub quotient_map: ModuleMorphism,
    pub theta: ModuleMorphism,
    pub psi: ModuleMorphism,
    pub retraction: ModuleMorphism,
    pub corollary: (bool, bool),
}

/// Replays the proof of the injective comparison theorem on two short exact
/// sequences `* -> M -> E -> Q -> *` and `* -> M -> E' -> Q' -> *`.
pub fn schanuel_injective(
    i: &ModuleMorphism,
    pi: &ModuleMorphism,
    i2: &ModuleMorphism,
    pi2: &ModuleMorphism,
    universe: &Universe,
) -> Result<SchanuelInjective, PipelineError> {
    check_short_exact(i, pi)
        .map_err(|e| PipelineError::Precondition(e.to_string()))?
        .ok_or_else(|| PipelineError::Precondition("first sequence is not short exact".into()))?;
    check_short_exact(i2, pi2)
        .map_err(|e| PipelineError::Precondition(e.to_string()))?
        .ok_or_else(|| PipelineError::Precondition("second sequence is not short exact".into()))?;
    if i.source().as_ref() != i2.source().as_ref() {
        return Err(PipelineError::Precondition(
            "sequences must start at the same module".into(),
        ));
    }
    let e_mod = pi.source();
    let e2_mod = pi2.source();
    let q = pi.target();
    let q2 = pi2.target();
    let abs_q2 = q2.absorbers();
    let eq2 = *abs_q2.first().ok_or_else(|| {
        PipelineError::Precondition("the second quotient has no absorber".into())
    })?;
    if !is_injective_rel(e_mod, universe).holds() {
        return Err(PipelineError::Precondition(
            "E is not injective relative to the universe".into(),
        ));
    }
    if !is_injective_rel(e2_mod, universe).holds() {
        return Err(PipelineError::Precondition(
            "E' is not injective relative to the universe".into(),
        ));
    }
    let alpha = find_extension(i, i2).ok_or(PipelineError::Obligation {
        step: "extension alpha with alpha ∘ i' = i",
        detail: "no extension found by exhaustive search".into(),
    })?;
    // diagram chase: beta(q') = pi(alpha(x')) for any preimage x' of q'
    let mut beta_images = vec![usize::MAX; q2.order()];
    for x2 in 0..e2_mod.order() {
        let q2v = pi2.apply(x2);
        let value = pi.apply(alpha.apply(x2));
        if beta_images[q2v] == usize::MAX {
            beta_images[q2v] = value;
        } else if beta_images[q2v] != value {
            return Err(PipelineError::Obligation {
                step: "beta is well defined on fibers of pi'",
                detail: format!("fiber over {q2v} maps to both {} and {value}", beta_images[q2v]),
            });
        }
    }
    let beta = Morphism::new(Arc::clone(q2), Arc::clone(q), beta_images).map_err(|e| {
        PipelineError::Obligation {
            step: "beta is a module morphism",
            detail: e.to_string(),
        }
    })?;
    let prod_eq2 = product_module(e_mod, q2)?;
    let theta_images: Vec<usize> = (0..e2_mod.order())
        .map(|x2| prod_eq2.encode(alpha.apply(x2), pi2.apply(x2)))
        .collect();
    let theta = Morphism::new(
        Arc::clone(e2_mod),
        Arc::clone(&prod_eq2.module),
        theta_images,
    )
    .map_err(|e| PipelineError::Obligation {
        step: "theta is a module morphism",
        detail: e.to_string(),
    })?;
    if !theta.is_mono() {
        return Err(PipelineError::Obligation {
            step: "theta is mono",
            detail: format!("images {:?}", theta.images()),
        });
    }
    let beta_e = beta.apply(eq2);
    let psi_images: Vec<usize> = (0..prod_eq2.module.order())
        .map(|x| {
            let (xe, xq2) = prod_eq2.decode(x);
            q.heap().op(pi.apply(xe), beta.apply(xq2), beta_e)
        })
        .collect();
    let psi = Morphism::new(Arc::clone(&prod_eq2.module), Arc::clone(q), psi_images).map_err(
        |e| PipelineError::Obligation {
            step: "psi is a module morphism",
            detail: e.to_string(),
        },
    )?;
    if !psi.is_epi() {
        return Err(PipelineError::Obligation {
            step: "psi is epi",
            detail: format!("images {:?}", psi.images()),
        });
    }
    let mid = check_exact(&theta, &psi)
        .expect("theta and psi compose")
        .ok_or(PipelineError::Obligation {
            step: "image of theta equals the kernel of psi",
            detail: "no exactness basepoint found".into(),
        })?;
    if mid.basepoint != beta_e {
        return Err(PipelineError::Obligation {
            step: "exactness basepoint is beta(e)",
            detail: format!("found {} instead of {}", mid.basepoint, beta_e),
        });
    }
    let retraction = find_retraction(&theta).ok_or(PipelineError::Obligation {
        step: "E' extends to a retraction of theta",
        detail: "no retraction found by exhaustive search".into(),
    })?;
    let split = split_by_retraction(&mid, &retraction)?;
    let lhs = Arc::clone(&prod_eq2.module);
    let rhs = Arc::clone(&split.product.module);
    let iso = split.iso;
    let oracle = find_isomorphism(&lhs, &rhs).ok_or(PipelineError::Obligation {
        step: "independent isomorphism search agrees",
        detail: "oracle found no isomorphism".into(),
    })?;
    let corollary = (
        is_injective_rel(q, universe).holds(),
        is_injective_rel(q2, universe).holds(),
    );
    Ok(SchanuelInjective {
        lhs,
        rhs,
        iso,
        oracle,
        extension: alpha,
        quotient_map: beta,
        theta,
        psi,
        retraction,
        corollary,
    })
}
