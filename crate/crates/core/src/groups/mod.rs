//! Concrete group families and symbolic group descriptors.

pub mod classify;
pub mod descriptor;
pub mod finite;
pub mod prufer;

pub use classify::{
    asdim_classify, component_census, iso_points_classify, AsdimClassification, AsdimReport,
    ComponentCensus, ComponentClass, Family, IsoPointsReport,
};
pub use descriptor::{CardinalComparison, CardinalToken, GroupDescriptor, ReducedPart};
pub use finite::{
    all_subgroups, cyclic_subgroups, fag_log_distance, is_prime, Element, FagSubgroup,
    FiniteAbelianGroup,
};
pub use prufer::{prufer_log_distance, PruferLevel, PruferSubgroup};
