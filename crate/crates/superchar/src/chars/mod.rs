//! Supercharacter value formulas: the general pattern-group formula, the `U_n`
//! formula, and the comb and path formulas for `U_(m)`.

pub mod comb;
pub mod factor;
pub mod general;
pub mod path;
pub mod un;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poset::PatternPoset;
use crate::reps::{style_m, RepStyle};

pub use comb::{comb_char_value, comb_degree_exponent, comb_value, triangle_degree_exponent};
pub use factor::{factor_by_columns, factor_by_components, ColumnPlan, ComponentPlan};
pub use general::{
    formula_witness, general_char_value, general_value, left_orbit_exponent, FormulaWitness, OrbitSizeCache,
    OrbitSizeStrategy,
};
pub use path::{path_char_value, path_degree_exponent, path_value};
pub use un::{un_char_value, un_degree_exponent, un_value};

/// How the formula-style evaluators relate to the orbit-sum definition
/// `chi^lambda(u) = |U lambda| / |U lambda U| sum theta(-mu(u - 1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    AsStated,
    Conjugate,
}

/// Fixed by the calibration test in `general`.
pub const ORIENTATION: Orientation = Orientation::Conjugate;

pub(crate) fn orient(v: CycNumber, o: Orientation) -> CycNumber {
    match o {
        Orientation::AsStated => v,
        Orientation::Conjugate => v.conj(),
    }
}

/// Which condition forced a zero value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroReason {
    /// No `x` with `Mx = -a`.
    NoSolution,
    /// `b` is not orthogonal to `Null(M)`.
    NotOrthogonal,
    /// A nonzero `u_jk` sits below a nonzero `lambda_ik`.
    ColumnAbove,
    /// A nonzero `u_jk` has a nonzero `lambda_jl` to its East.
    RowEast,
    Cc1,
    Cc2,
    Cc3,
    Cc4,
    /// `u_1k lambda_1l + u_jk lambda_jl != 0` in a configuration that requires it to vanish.
    CombSpecial,
    Pc1,
    Pc2,
    Pc3,
    Pc4,
    /// A horizontal touch whose baggage product is not -1.
    HorizontalTouch,
}

/// A character value; zero exactly when `zero_reason` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharValue {
    pub value: CycNumber,
    pub zero_reason: Option<ZeroReason>,
}

impl CharValue {
    pub fn zero(p: u32, reason: ZeroReason) -> Self {
        CharValue { value: CycNumber::zero(p), zero_reason: Some(reason) }
    }

    pub fn nonzero(value: CycNumber) -> Self {
        debug_assert!(!value.is_zero());
        CharValue { value, zero_reason: None }
    }
}

/// `q^e` as an exact rational.
pub(crate) fn q_pow(q: u32, e: i64) -> BigRational {
    let base = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::from(1), base)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluator {
    General,
    Un,
    Comb,
    Path,
}

impl Evaluator {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Evaluator::General),
            "un" => Ok(Evaluator::Un),
            "comb" => Ok(Evaluator::Comb),
            "path" => Ok(Evaluator::Path),
            _ => Err(Error::Parse(format!("unknown evaluator {s:?}"))),
        }
    }

    /// The natural evaluator for labels of `style` on `poset`.
    pub fn auto(poset: &PatternPoset, style: RepStyle) -> Self {
        match style {
            RepStyle::UnCanonical if poset.is_chain() => Evaluator::Un,
            RepStyle::Comb if poset.interpolating_m().is_some() => Evaluator::Comb,
            RepStyle::Path if poset.interpolating_m().is_some() => Evaluator::Path,
            _ => Evaluator::General,
        }
    }

    /// The label style the evaluator expects, if any.
    pub fn style(self) -> Option<RepStyle> {
        match self {
            Evaluator::General => None,
            Evaluator::Un => Some(RepStyle::UnCanonical),
            Evaluator::Comb => Some(RepStyle::Comb),
            Evaluator::Path => Some(RepStyle::Path),
        }
    }
}

/// `chi^lambda(u)` for normal-form inputs of the evaluator's style (any inputs for `General`),
/// with `u` given through `u - 1`.
pub fn evaluate(f: &Field, ev: Evaluator, poset: &PatternPoset, lambda: &Matrix, x: &Matrix) -> Result<CharValue> {
    match ev {
        Evaluator::General => general_value(f, poset, lambda, x, &OrbitSizeStrategy::Rank),
        Evaluator::Un => {
            style_m(poset, RepStyle::UnCanonical)?;
            un_value(f, lambda, x)
        }
        Evaluator::Comb => comb_value(f, style_m(poset, RepStyle::Comb)?, poset, lambda, x),
        Evaluator::Path => path_value(f, style_m(poset, RepStyle::Path)?, poset, lambda, x),
    }
}
