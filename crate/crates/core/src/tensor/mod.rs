//! Tensor products of modules, induced maps, the Hom-tensor adjunction and
//! flatness probes.

mod adjunction;
mod flat;
mod space;

pub use adjunction::{adjunction_check, AdjunctionReport};
pub use flat::{
    basis_submodules, catalog_injections, direct_sum_tensor_check, flatness_probe,
    flatness_probe_left, splitting_probe, DirectSumTensorReport, FlatnessReport, ProbeResult,
    SplittingProbe,
};
pub use space::{
    induced_map_left, induced_map_right, tensor_left_structure, tensor_product,
    tensor_right_structure, tensor_unit_check, BilinearityReport, TensorSpace, UnitReport,
};
