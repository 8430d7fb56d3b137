//! Desk-scale computational algebra for heaps, trusses, and modules over
//! trusses: validated operation tables, the derived constructions (quotients,
//! products, powers, induced actions, hom modules), exhaustive morphism
//! search, and mechanical verification of the splitting and Schanuel-style
//! theorems against brute-force oracles.

pub mod census;
pub mod exact;
pub mod format;
pub mod heap;
pub mod hom;
pub mod module;
pub mod truss;

pub use heap::{quotient_heap, subheap_check, FiniteHeap, HeapCongruence, HeapError, SubHeap, TableInput};
pub use hom::{
    enumerate_homs, find_isomorphism, HeapMorphism, HomError, ModuleMorphism, Morphism, Structure,
    TrussMorphism,
};
pub use module::{
    enumerate_submodules, first_iso_check, hom_induced_module, induced_module,
    is_induced_submodule, module_from_ring_module, power_module, product_module,
    quotient_by_class_map, quotient_module, restrict_scalars, submodule_as_module,
    submodule_check, FirstIso, HomInduced, ModuleError, ProductParts, Submodule, TModule,
};
pub use truss::{Side, Truss, TrussError};
