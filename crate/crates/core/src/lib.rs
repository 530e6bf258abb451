pub mod catalog;
pub mod cli;
pub mod error;
pub mod expr;
pub mod identities;
pub mod jet;
pub mod param;
pub mod series;
pub mod tables;

pub use error::{Error, Result};
pub use param::Parameter;
pub use series::{
    classify_convergence, coefficient, evaluate, pochhammer, pochhammer_vec, termination_order, validate_spec,
    ConvergenceClass, EvalControl, EvalResult, HypSpec,
};
