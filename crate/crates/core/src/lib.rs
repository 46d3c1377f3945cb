//! A toolkit for finite metric spaces: distortion and co-distortion
//! functionals, exact Gromov–Hausdorff distances with their class-restricted
//! variants, a cover-guided bijection builder with per-pair distortion
//! certificates, and the pipeline that upgrades nearly-surjective
//! near-isometries to bijections with quantified bounds.
//!
//! All numeric code is generic over the scalar type via [`Scalar`]
//! (`f32`/`f64`); the `*64` aliases at the crate root fix `f64`, which is
//! what the CLI and the acceptance suites use.

pub mod acceptance;
mod bijection;
mod cover;
mod distortion;
mod error;
mod map;
mod scalar;
mod search;
mod space;
mod surjective;

pub use bijection::{
    build_bijection, check_pair_bounds, BijectionCertificate, BoundReport, BoundViolation,
    BuildConfig, PointClass, TraceStep,
};
pub use cover::Cover;
pub use distortion::{
    codis_maps, codis_pairs, codis_rels, dis_map, dis_pairs, dis_rel, gh_pair, one_sided_map,
    one_sided_pair, OneSided, PairScore,
};
pub use error::{Error, Result, Side};
pub use map::{Correspondence, Mapping};
pub use scalar::Scalar;
pub use search::{
    gh_class, gh_exact, gh_lower_bound, gh_pair_inf, ClassTag, GhResult, GhWitness, SearchConfig,
    SearchMethod,
};
pub use space::{MetricSpace, MetricViolation, Norm, Subset, ValidationReport};
pub use surjective::{
    extract_witness, measure_surjectivity, pipeline_to_bijection, quasi_inverse, retract_onto,
    retraction_displacement, surjectivity_from_codistortion, PipelineResult, SurjectivityReport,
};

pub type MetricSpace32 = MetricSpace<f32>;
pub type MetricSpace64 = MetricSpace<f64>;
pub type Cover64 = Cover<f64>;
pub type OneSided64 = OneSided<f64>;
pub type PairScore64 = PairScore<f64>;
pub type GhResult64 = GhResult<f64>;
pub type BijectionCertificate64 = BijectionCertificate<f64>;
pub type PipelineResult64 = PipelineResult<f64>;
pub type SurjectivityReport64 = SurjectivityReport<f64>;
