//! Finite-dimensional modules, their homomorphisms and constructions.

mod constructions;
mod hom;
mod module;

pub use constructions::{
    direct_sum, direct_sum_hom, generated_submodule, kernel_additivity, KernelReport, module_constants, quotient_module,
    restricted_free, restricted_lift, reweight_module, DirectSum, QuotientModule, RestrictedFree,
};
pub use hom::{
    hom_from_vector, hom_module, hom_space, intertwiner_space, lift_through_epi, HomModule,
    HomModuleInput, HomModuleResult, LeftModuleHom, ModuleHom, RightModuleHom,
};
pub use module::{
    check_bimodule, check_left_module, check_right_module, same_instance, ActionViolation,
    BimoduleReport, CompatFamily, CompatViolation, FdBimodule, FdLeftModule, FdModule,
    FdRightModule, InstanceRef, LeftSide, ModuleReport, ModuleSide, ModuleViolation, RightSide,
};
