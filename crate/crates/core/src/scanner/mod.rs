//! Brute-force oracles for inflectional loci on explicit genus-0 scrolls:
//! Wronskian weights for curves, the jet determinant divisor when the jet
//! matrix is square, and seeded rank scans otherwise.

mod divisor;
mod scan;
mod validate;
mod wronskian;

pub use divisor::{
    determinant_divisor, format_fiber_form, ChartDeterminant, Divisor, DivisorClass,
    DivisorComponent, DivisorReport,
};
pub use scan::{
    rank_scan, Evaluation, SampleSource, SampleSpec, ScanReport, DEFAULT_SAMPLES, DEFAULT_SEED,
};
pub use validate::{
    cross_validate, cross_validate_curve, CrossValidation, Verdict, WeightedLocusReport,
};
pub use wronskian::{
    wronskian, wronskian_weights, FiniteInflection, InflectionWeights, RationalCurve,
    WronskianReport,
};
