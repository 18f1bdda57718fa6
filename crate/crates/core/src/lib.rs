pub mod basis;
pub mod conditioning;
pub mod error;
pub mod io;
pub mod nodes;
pub mod polynomial;
pub mod pseudozeros;
pub mod scalar;
pub mod scenarios;

pub use basis::BasisSpec;
pub use conditioning::{condition_b, ConditionCurve, PerturbationModel};
pub use error::{Error, Result};
pub use nodes::NodeSet;
pub use polynomial::Polynomial;
pub use pseudozeros::{indicator, pseudozero_field, witness_perturbation, FieldSpec, PseudozeroField, Region, WeightVector};
pub use scalar::{ComplexScalar, Float, Number, Precision, Scalar};
pub use scenarios::{ScenarioOptions, ScenarioReport, Stat};
