//! Command-line surface: validate documents, run constructions and searches,
//! decide the relative checks, and drive the comparison pipelines.
//!
//! Exit codes: 0 = verdict true / success, 1 = verdict false (certificate on
//! stdout), 2 = parse or validation error (message on stderr).

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use trusslab::census::{
    build_universe, enumerate_heaps, enumerate_modules, enumerate_trusses,
    random_relabelled_truss, CensusConfig,
};
use trusslab::exact::{
    check_exact, check_short_exact, is_divisible, is_injective_rel, is_projective_rel,
    schanuel_injective, schanuel_projective, DivisibleVerdict, InjectiveVerdict, PipelineError,
    ProjectiveVerdict,
};
use trusslab::format::{
    self, heap_def, map_def, module_def, parse, resolve, truss_def, Bundle, Def, Document, Entity,
};
use trusslab::heap::{subheap_check, FiniteHeap};
use trusslab::hom::{enumerate_homs, find_isomorphism, ModuleMorphism};
use trusslab::module::{
    induced_module, power_module, product_module, quotient_module, submodule_as_module,
    submodule_check, TModule,
};
use trusslab::truss::Truss;

#[derive(Parser)]
#[command(
    name = "trusslab",
    about = "Finite heaps, trusses, and modules over trusses: validation, search, and theorem checking"
)]
struct Cli {
    /// Document defining the named structures referenced by the command.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Heap,
    Truss,
    Module,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and structurally validate a document.
    Validate { file: PathBuf },
    /// List every morphism A -> B in canonical order.
    Hom {
        a: String,
        b: String,
        #[arg(long)]
        kind: Option<Kind>,
    },
    /// Search for an isomorphism A -> B.
    Iso {
        a: String,
        b: String,
        #[arg(long)]
        kind: Option<Kind>,
    },
    /// Preimage substructure of a map over a basepoint of its image.
    Kernel {
        map: String,
        #[arg(long)]
        at: usize,
    },
    /// Quotient of a module by a bracket-closed subset (comma-separated).
    Quotient { module: String, elements: String },
    /// Componentwise product of two modules over the same truss.
    Product { a: String, b: String },
    /// Pointwise power M^k.
    Power { module: String, k: usize },
    /// The induced module structure at a basepoint.
    Induce {
        module: String,
        #[arg(long)]
        at: usize,
    },
    /// Verdicts with certificates.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Comparison pipelines on pairs of short exact sequences.
    Schanuel {
        #[command(subcommand)]
        what: SchanuelCmd,
    },
    /// Census listings in the text format.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateCmd,
    },
    /// Census summary counts.
    Census {
        #[arg(long)]
        max_order: usize,
        /// Relabel this many random members per order and confirm they are
        /// recognized up to isomorphism.
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Is Im F = ker_e G for some e?
    Exact { f: String, g: String },
    /// Is * -> src(I) -> src(PI) -> tgt(PI) -> * short exact?
    ShortExact { i: String, pi: String },
    /// Extension property against every submodule inclusion in the universe.
    Injective {
        e: String,
        #[arg(long)]
        universe_max: usize,
    },
    /// Lifting property against every epimorphism in the universe.
    Projective {
        p: String,
        #[arg(long)]
        universe_max: usize,
    },
    /// Every nonzero scalar acts surjectively (domain trusses only).
    Divisible { m: String },
}

#[derive(Subcommand)]
enum SchanuelCmd {
    /// Projective comparison: SEQ = I,PI pairs of map names.
    Proj {
        seq1: String,
        seq2: String,
        #[arg(long)]
        universe_max: usize,
    },
    /// Injective comparison: SEQ = I,PI pairs of map names.
    Inj {
        seq1: String,
        seq2: String,
        #[arg(long)]
        universe_max: usize,
    },
}

#[derive(Subcommand)]
enum EnumerateCmd {
    Heaps {
        #[arg(long)]
        order: usize,
    },
    Trusses {
        #[arg(long)]
        order: usize,
    },
    Modules {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        truss: String,
    },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Ok(threads) = std::env::var("TRUSSLAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn bad(e: impl Display) -> String {
    e.to_string()
}

fn load(file: Option<&PathBuf>) -> Result<(Document, Bundle), String> {
    let path = file.ok_or("this command needs --file FILE with the named structures")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = parse(&text).map_err(bad)?;
    let bundle = resolve(&doc).map_err(bad)?;
    Ok((doc, bundle))
}

fn entity<'a>(bundle: &'a Bundle, name: &str) -> Result<&'a Entity, String> {
    bundle
        .get(name)
        .ok_or_else(|| format!("no definition named `{name}`"))
}

fn module_of(bundle: &Bundle, name: &str) -> Result<Arc<TModule>, String> {
    match entity(bundle, name)? {
        Entity::Module(m) => Ok(Arc::clone(m)),
        e => Err(format!("`{name}` is a {}, expected a module", e.kind())),
    }
}

fn module_map_of(bundle: &Bundle, name: &str) -> Result<ModuleMorphism, String> {
    match entity(bundle, name)? {
        Entity::ModuleMap(f) => Ok(f.clone()),
        e => Err(format!("`{name}` is a {}, expected a module map", e.kind())),
    }
}

fn carrier_of(e: &Entity) -> Result<Arc<FiniteHeap>, String> {
    Ok(match e {
        Entity::Heap(h) => Arc::clone(h),
        Entity::Truss(t) => Arc::new(t.heap().clone()),
        Entity::Module(m) => Arc::new(m.heap().clone()),
        _ => return Err("a map has no carrier heap".into()),
    })
}

fn parse_elements(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}

/// Collects output blocks, assigning one name per distinct truss.
#[derive(Default)]
struct Emitter {
    doc: Document,
    trusses: Vec<(Arc<Truss>, String)>,
    comments: Vec<String>,
}

impl Emitter {
    fn truss_name(&mut self, t: &Arc<Truss>) -> String {
        if let Some((_, n)) = self.trusses.iter().find(|(a, _)| Arc::ptr_eq(a, t)) {
            return n.clone();
        }
        let name = if self.trusses.is_empty() {
            "T".to_string()
        } else {
            format!("T{}", self.trusses.len())
        };
        self.doc.push(name.clone(), truss_def(t, None));
        self.trusses.push((Arc::clone(t), name.clone()));
        name
    }

    fn module(&mut self, name: &str, m: &Arc<TModule>) {
        let tn = self.truss_name(m.truss());
        self.doc.push(name, module_def(m, &tn));
    }

    fn heap(&mut self, name: &str, h: &FiniteHeap) {
        self.doc.push(name, heap_def(h));
    }

    fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    fn print(&self) {
        for c in &self.comments {
            println!("# {c}");
        }
        let body = format::serialize(&self.doc);
        if !body.is_empty() {
            print!("{body}");
        }
    }
}

fn universe_config(universe_max: usize) -> Result<CensusConfig, String> {
    if universe_max == 0 || universe_max > 6 {
        return Err("--universe-max must be between 1 and 6".into());
    }
    Ok(CensusConfig {
        heap_bound: 8.max(universe_max),
        truss_bound: 4,
        module_bound: universe_max,
    })
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let (doc, _) = load(Some(&file))?;
            println!("# ok: {} definitions", doc.defs.len());
            Ok(0)
        }
        Cmd::Hom { a, b, kind } => {
            let (_, bundle) = load(cli.file.as_ref())?;
            let mut em = Emitter::default();
            let count = run_hom(&bundle, &a, &b, kind, false, &mut em)?;
            em.comment(format!("{count} morphisms from {a} to {b}"));
            em.print();
            Ok(0)
        }
        Cmd::Iso { a, b, kind } => {
            let (_, bundle) = load(cli.file.as_ref())?;
            let mut em = Emitter::default();
            let found = run_hom(&bundle, &a, &b, kind, true, &mut em)?;
            if found > 0 {
                em.comment(format!("isomorphism from {a} to {b}"));
                em.print();
                Ok(0)
            } else {
                println!("# no isomorphism from {a} to {b}");
                Ok(1)
            }
        }
        Cmd::Kernel { map, at } => {
            let (doc, bundle) = load(cli.file.as_ref())?;
            let mut em = Emitter::default();
            let (source_name, _target_name) = match doc.get(&map) {
                Some(Def::Map(m)) => (m.source.clone(), m.target.clone()),
                _ => return Err(format!("no map named `{map}`")),
            };
            match entity(&bundle, &map)? {
                Entity::HeapMap(f) => {
                    let fiber = f.kernel_at(at).map_err(bad)?;
                    let sub = subheap_check(f.source(), &fiber).map_err(bad)?;
                    let (k, incl) = sub.as_heap();
                    em.heap(&source_name, f.source());
                    em.heap("kernel", &k);
                    em.doc
                        .push("kernel_incl", map_def(&incl, "kernel", &source_name));
                    em.comment(format!("kernel of {map} at {at}: elements {fiber:?}"));
                }
                Entity::ModuleMap(f) => {
                    let fiber = f.kernel_at(at).map_err(bad)?;
                    if submodule_check(f.source(), &fiber).is_ok() {
                        let (k, incl) = submodule_as_module(f.source(), &fiber);
                        em.module(&source_name, f.source());
                        em.module("kernel", &k);
                        em.doc
                            .push("kernel_incl", map_def(&incl, "kernel", &source_name));
                    } else {
                        let carrier = Arc::new(f.source().heap().clone());
                        let sub = subheap_check(&carrier, &fiber).map_err(bad)?;
                        let (k, incl) = sub.as_heap();
                        let cname = format!("{source_name}_carrier");
                        em.heap(&cname, &carrier);
                        em.heap("kernel", &k);
                        em.doc.push("kernel_incl", map_def(&incl, "kernel", &cname));
                        em.comment("kernel is a sub-heap but not action-closed");
                    }
                    em.comment(format!("kernel of {map} at {at}: elements {fiber:?}"));
                }
                Entity::TrussMap(f) => {
                    let fiber = f.kernel_at(at).map_err(bad)?;
                    let carrier = Arc::new(f.source().heap().clone());
                    let sub = subheap_check(&carrier, &fiber).map_err(bad)?;
                    let (k, incl) = sub.as_heap();
                    let cname = format!("{source_name}_carrier");
                    em.heap(&cname, &carrier);
                    em.heap("kernel", &k);
                    em.doc.push("kernel_incl", map_def(&incl, "kernel", &cname));
                    em.comment(format!("kernel of {map} at {at}: elements {fiber:?}"));
                }
                e => return Err(format!("`{map}` is a {}, expected a map", e.kind())),
            }
            em.print();
            Ok(0)
        }
        Cmd::Quotient { module, elements } => {
            let (_, bundle) = load(cli.file.as_ref())?;
            let m = module_of(&bundle, &module)?;
            let subset = parse_elements(&elements)?;
            let (q, proj) = quotient_module(&m, &subset).map_err(bad)?;
            let mut em = Emitter::default();
            em.module(&module, &m);
            let qname = format!("{module}_quot");
            em.module(&qname, &q);
            em.doc
                .push(format!("{module}_proj"), map_def(&proj, &module, &qname));
            em.comment(format!("quotient of {module} by {subset:?}: order {}", q.order()));
            em.print();
            Ok(0)
        }
        Cmd::Product { a, b } => {
            let (_, bundle) = load(cli.file.as_ref())?;
            let ma = module_of(&bundle, &a)?;
            let mb = module_of(&bundle, &b)?;
            let p = product_module(&ma, &mb).map_err(bad)?;
            let mut em = Emitter::default();
            em.module(&a, &ma);
            if a != b {
                em.module(&b, &mb);
            }
            let pname = format!("{a}_x_{b}");
            em.module(&pname, &p.module);
            em.doc.push("p1", map_def(&p.proj1, &pname, &a));
            em.doc.push("p2", map_def(&p.proj2, &pname, &b));
            if let Some(i1) = &p.inj1 {
                em.doc.push("i1", map_def(i1, &a, &pname));
            }
            if let Some(i2) = &p.inj2 {
                em.doc.push("i2", map_def(i2, &b, &pname));
            }
            em.comment(format!("product of {a} and {b}: order {}", p.module.order()));
            em.print();
            Ok(0)
        }
        Cmd::Power { module, k } => {
            let (_, bundle) = load(cli.file.as_ref())?;
            let m = module_of(&bundle, &module)?;
            let p = power_module(&m, k).map_err(bad)?;
            let mut em = Emitter::default();
            em.module(&module, &m);
            em.module(&format!("{module}_pow{k}"), &p);
            em.comment(format!("power {module}^{k}: order {}", p.order()));
            em.print();
            Ok(0)
        }
        Cmd::Induce { module, at } => {
            let (_, bundle) = load(cli.file.as_ref())?;
            let m = module_of(&bundle, &module)?;
            let ind = induced_module(&m, at).map_err(bad)?;
            let mut em = Emitter::default();
            em.module(&module, &m);
            em.module(&format!("{module}_ind{at}"), &ind);
            em.comment(format!("induced structure of {module} at {at}"));
            em.print();
            Ok(0)
        }
        Cmd::Check { what } => run_check(cli.file.as_ref(), what),
        Cmd::Schanuel { what } => run_schanuel(cli.file.as_ref(), what),
        Cmd::Enumerate { what } => run_enumerate(cli.file.as_ref(), what),
        Cmd::Census { max_order, sample } => run_census(max_order, sample, cli.seed),
    }
}

/// Shared body of `hom` and `iso`; returns the number of emitted maps.
fn run_hom(
    bundle: &Bundle,
    a: &str,
    b: &str,
    kind: Option<Kind>,
    iso_only: bool,
    em: &mut Emitter,
) -> Result<usize, String> {
    let ea = entity(bundle, a)?.clone();
    let eb = entity(bundle, b)?.clone();
    let kind = match kind {
        Some(k) => k,
        None => match (&ea, &eb) {
            (Entity::Heap(_), Entity::Heap(_)) => Kind::Heap,
            (Entity::Truss(_), Entity::Truss(_)) => Kind::Truss,
            (Entity::Module(_), Entity::Module(_)) => Kind::Module,
            _ => {
                return Err(format!(
                    "`{a}` is a {} and `{b}` is a {}; pass --kind to pick a common view",
                    ea.kind(),
                    eb.kind()
                ))
            }
        },
    };
    match kind {
        Kind::Heap => {
            let ha = carrier_of(&ea)?;
            let hb = carrier_of(&eb)?;
            em.heap(a, &ha);
            if a != b {
                em.heap(b, &hb);
            }
            if iso_only {
                match find_isomorphism(&ha, &hb) {
                    Some(f) => {
                        em.doc.push("iso", map_def(&f, a, b));
                        Ok(1)
                    }
                    None => Ok(0),
                }
            } else {
                let homs = enumerate_homs(&ha, &hb).map_err(bad)?;
                for (i, f) in homs.iter().enumerate() {
                    em.doc.push(format!("h{i}"), map_def(f, a, b));
                }
                Ok(homs.len())
            }
        }
        Kind::Truss => {
            let (ta, tb) = match (&ea, &eb) {
                (Entity::Truss(x), Entity::Truss(y)) => (Arc::clone(x), Arc::clone(y)),
                _ => return Err("--kind truss needs two trusses".into()),
            };
            em.doc.push(a, truss_def(&ta, None));
            if a != b {
                em.doc.push(b, truss_def(&tb, None));
            }
            if iso_only {
                match find_isomorphism(&ta, &tb) {
                    Some(f) => {
                        em.doc.push("iso", map_def(&f, a, b));
                        Ok(1)
                    }
                    None => Ok(0),
                }
            } else {
                let homs = enumerate_homs(&ta, &tb).map_err(bad)?;
                for (i, f) in homs.iter().enumerate() {
                    em.doc.push(format!("h{i}"), map_def(f, a, b));
                }
                Ok(homs.len())
            }
        }
        Kind::Module => {
            let (ma, mb) = match (&ea, &eb) {
                (Entity::Module(x), Entity::Module(y)) => (Arc::clone(x), Arc::clone(y)),
                _ => return Err("--kind module needs two modules".into()),
            };
            em.module(a, &ma);
            if a != b {
                em.module(b, &mb);
            }
            if iso_only {
                match find_isomorphism(&ma, &mb) {
                    Some(f) => {
                        em.doc.push("iso", map_def(&f, a, b));
                        Ok(1)
                    }
                    None => Ok(0),
                }
            } else {
                let homs = enumerate_homs(&ma, &mb).map_err(bad)?;
                for (i, f) in homs.iter().enumerate() {
                    em.doc.push(format!("h{i}"), map_def(f, a, b));
                }
                Ok(homs.len())
            }
        }
    }
}

fn run_check(file: Option<&PathBuf>, what: CheckCmd) -> Result<u8, String> {
    match what {
        CheckCmd::Exact { f, g } => {
            let (_, bundle) = load(file)?;
            let mf = module_map_of(&bundle, &f)?;
            let mg = module_map_of(&bundle, &g)?;
            match check_exact(&mf, &mg).map_err(bad)? {
                Some(w) => {
                    println!("# exact at e={} (abs-exact: {})", w.basepoint, w.abs_exact);
                    Ok(0)
                }
                None => {
                    println!("# not exact: no basepoint has its fiber equal to the image");
                    Ok(1)
                }
            }
        }
        CheckCmd::ShortExact { i, pi } => {
            let (_, bundle) = load(file)?;
            let mi = module_map_of(&bundle, &i)?;
            let mpi = module_map_of(&bundle, &pi)?;
            match check_short_exact(&mi, &mpi).map_err(bad)? {
                Some(triple) => {
                    let mut em = Emitter::default();
                    em.module("quotient", &triple.quotient);
                    em.module("target", mpi.target());
                    em.doc.push(
                        "quotient_iso",
                        map_def(&triple.quotient_iso, "quotient", "target"),
                    );
                    em.comment(format!(
                        "short exact at e={} (abs-exact: {})",
                        triple.witness.basepoint, triple.witness.abs_exact
                    ));
                    em.print();
                    Ok(0)
                }
                None => {
                    println!("# not short exact");
                    Ok(1)
                }
            }
        }
        CheckCmd::Injective { e, universe_max } => {
            let (_, bundle) = load(file)?;
            let m = module_of(&bundle, &e)?;
            let cfg = universe_config(universe_max)?;
            let u = build_universe(m.truss(), universe_max, &cfg).map_err(bad)?;
            match is_injective_rel(&m, &u) {
                InjectiveVerdict::Injective => {
                    println!(
                        "# {e} is injective relative to universe(bound {universe_max}, {} modules)",
                        u.modules().len()
                    );
                    Ok(0)
                }
                InjectiveVerdict::Blocked {
                    host,
                    submodule,
                    map,
                } => {
                    let mut em = Emitter::default();
                    em.comment(format!(
                        "{e} is NOT injective relative to universe(bound {universe_max}): \
                         no extension of the blocking map"
                    ));
                    em.comment(format!("blocking submodule elements: {submodule:?}"));
                    em.module(&e, &m);
                    em.module("host", &host);
                    let (sub, incl) = submodule_as_module(&host, &submodule);
                    em.module("blocking_submodule", &sub);
                    em.doc
                        .push("incl", map_def(&incl, "blocking_submodule", "host"));
                    em.doc
                        .push("blocking_map", map_def(&map, "blocking_submodule", &e));
                    em.print();
                    Ok(1)
                }
            }
        }
        CheckCmd::Projective { p, universe_max } => {
            let (_, bundle) = load(file)?;
            let m = module_of(&bundle, &p)?;
            let cfg = universe_config(universe_max)?;
            let u = build_universe(m.truss(), universe_max, &cfg).map_err(bad)?;
            match is_projective_rel(&m, &u) {
                ProjectiveVerdict::Projective => {
                    println!(
                        "# {p} is projective relative to universe(bound {universe_max}, {} modules)",
                        u.modules().len()
                    );
                    Ok(0)
                }
                ProjectiveVerdict::Blocked { epi, map } => {
                    let mut em = Emitter::default();
                    em.comment(format!(
                        "{p} is NOT projective relative to universe(bound {universe_max}): \
                         no lift of the blocking map through the blocking epimorphism"
                    ));
                    em.module(&p, &m);
                    em.module("epi_source", epi.source());
                    em.module("epi_target", epi.target());
                    em.doc
                        .push("blocking_epi", map_def(&epi, "epi_source", "epi_target"));
                    em.doc
                        .push("blocking_map", map_def(&map, &p, "epi_target"));
                    em.print();
                    Ok(1)
                }
            }
        }
        CheckCmd::Divisible { m } => {
            let (_, bundle) = load(file)?;
            let module = module_of(&bundle, &m)?;
            match is_divisible(&module).map_err(bad)? {
                DivisibleVerdict::Divisible => {
                    println!("# {m} is divisible");
                    Ok(0)
                }
                DivisibleVerdict::Blocked { scalar, target } => {
                    println!(
                        "# {m} is NOT divisible: element {target} is not {scalar}·m' for any m'"
                    );
                    Ok(1)
                }
            }
        }
    }
}

fn split_pair(seq: &str) -> Result<(String, String), String> {
    let mut parts = seq.split(',');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok((a.trim().to_string(), b.trim().to_string())),
        _ => Err(format!("`{seq}` should be I,PI (two map names)")),
    }
}

fn run_schanuel(file: Option<&PathBuf>, what: SchanuelCmd) -> Result<u8, String> {
    let (kind, seq1, seq2, universe_max) = match what {
        SchanuelCmd::Proj {
            seq1,
            seq2,
            universe_max,
        } => ("proj", seq1, seq2, universe_max),
        SchanuelCmd::Inj {
            seq1,
            seq2,
            universe_max,
        } => ("inj", seq1, seq2, universe_max),
    };
    let (_, bundle) = load(file)?;
    let (i1n, pi1n) = split_pair(&seq1)?;
    let (i2n, pi2n) = split_pair(&seq2)?;
    let i1 = module_map_of(&bundle, &i1n)?;
    let pi1 = module_map_of(&bundle, &pi1n)?;
    let i2 = module_map_of(&bundle, &i2n)?;
    let pi2 = module_map_of(&bundle, &pi2n)?;
    let truss = Arc::clone(i1.source().truss());
    let cfg = universe_config(universe_max)?;
    let u = build_universe(&truss, universe_max, &cfg).map_err(bad)?;
    let outcome = if kind == "proj" {
        schanuel_projective(&i1, &pi1, &i2, &pi2, &u).map(|out| {
            let mut em = Emitter::default();
            em.comment(format!(
                "comparison isomorphism found; induced basepoint e={}",
                out.induced_basepoint
            ));
            em.comment("obligations: lift, kernel map, theta mono, psi epi, exactness, section, split, oracle".to_string());
            em.module("LHS", &out.lhs);
            em.module("RHS", &out.rhs);
            em.doc.push("pipeline_iso", map_def(&out.iso, "LHS", "RHS"));
            em.doc.push("oracle_iso", map_def(&out.oracle, "LHS", "RHS"));
            em
        })
    } else {
        schanuel_injective(&i1, &pi1, &i2, &pi2, &u).map(|out| {
            let mut em = Emitter::default();
            em.comment("comparison isomorphism found".to_string());
            em.comment(format!(
                "corollary: Q injective-rel {}, Q' injective-rel {}",
                out.corollary.0, out.corollary.1
            ));
            em.comment("obligations: extension, quotient map, theta mono, psi epi, exactness, retraction, split, oracle".to_string());
            em.module("LHS", &out.lhs);
            em.module("RHS", &out.rhs);
            em.doc.push("pipeline_iso", map_def(&out.iso, "LHS", "RHS"));
            em.doc.push("oracle_iso", map_def(&out.oracle, "LHS", "RHS"));
            em
        })
    };
    match outcome {
        Ok(em) => {
            em.print();
            Ok(0)
        }
        Err(PipelineError::Precondition(msg)) => {
            println!("# precondition failed: {msg}");
            Ok(1)
        }
        Err(e) => {
            println!("# OBLIGATION FAILED (this is a bug, please report): {e}");
            Ok(1)
        }
    }
}

fn run_enumerate(file: Option<&PathBuf>, what: EnumerateCmd) -> Result<u8, String> {
    let cfg = CensusConfig::default();
    match what {
        EnumerateCmd::Heaps { order } => {
            let heaps = enumerate_heaps(order, &cfg).map_err(bad)?;
            let mut doc = Document::default();
            for h in &heaps {
                doc.push(h.label().to_string(), heap_def(h));
            }
            println!("# {} heaps of order {order}", heaps.len());
            print!("{}", format::serialize(&doc));
            Ok(0)
        }
        EnumerateCmd::Trusses { order } => {
            let trusses = enumerate_trusses(order, &cfg).map_err(bad)?;
            let mut doc = Document::default();
            for (i, t) in trusses.iter().enumerate() {
                doc.push(format!("T{order}_{i}"), truss_def(t, None));
            }
            println!("# {} trusses of order {order}", trusses.len());
            print!("{}", format::serialize(&doc));
            Ok(0)
        }
        EnumerateCmd::Modules { order, truss } => {
            let (_, bundle) = load(file)?;
            let t = match entity(&bundle, &truss)? {
                Entity::Truss(t) => Arc::clone(t),
                e => return Err(format!("`{truss}` is a {}, expected a truss", e.kind())),
            };
            let modules = enumerate_modules(&t, order, &cfg).map_err(bad)?;
            let mut doc = Document::default();
            doc.push(truss.clone(), truss_def(&t, None));
            for (i, m) in modules.iter().enumerate() {
                doc.push(format!("M{order}_{i}"), module_def(m, &truss));
            }
            println!("# {} modules of order {order} over {truss}", modules.len());
            print!("{}", format::serialize(&doc));
            Ok(0)
        }
    }
}

fn run_census(max_order: usize, sample: Option<usize>, seed: u64) -> Result<u8, String> {
    let cfg = CensusConfig::default();
    if max_order == 0 {
        return Err("--max-order must be at least 1".into());
    }
    let heap_top = max_order.min(cfg.heap_bound);
    println!("# census up to order {max_order}");
    for n in 1..=heap_top {
        let heaps = enumerate_heaps(n, &cfg).map_err(bad)?;
        println!("# heaps of order {n}: {}", heaps.len());
    }
    if max_order > cfg.heap_bound {
        println!("# heap census capped at the configured bound {}", cfg.heap_bound);
    }
    let truss_top = max_order.min(cfg.truss_bound);
    for n in 1..=truss_top {
        let trusses = enumerate_trusses(n, &cfg).map_err(bad)?;
        let with_zero = trusses.iter().filter(|t| t.zero().is_some()).count();
        let unital = trusses.iter().filter(|t| t.unit().is_some()).count();
        let domains = trusses.iter().filter(|t| t.is_domain()).count();
        println!(
            "# trusses of order {n}: {} (unital {unital}, with zero {with_zero}, domain {domains})",
            trusses.len()
        );
    }
    if max_order > cfg.truss_bound {
        println!(
            "# truss census capped at the configured bound {}",
            cfg.truss_bound
        );
    }
    if let Some(k) = sample {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for n in 1..=truss_top {
            let trusses = enumerate_trusses(n, &cfg).map_err(bad)?;
            for _ in 0..k {
                let pick = &trusses[rand::Rng::gen_range(&mut rng, 0..trusses.len())];
                let scrambled = Arc::new(random_relabelled_truss(pick, &mut rng));
                if !trusses
                    .iter()
                    .any(|t| find_isomorphism(t, &scrambled).is_some())
                {
                    println!("# sample check FAILED at order {n}");
                    return Ok(1);
                }
            }
            println!("# sample check at order {n}: {k} relabelled members recognized");
        }
    }
    Ok(0)
}
