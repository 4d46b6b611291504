//! Splitting a character value into component factors and column factors.

use num_rational::BigRational;
use num_traits::Zero;

use super::{CharValue, ZeroReason};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::graph::MatrixGraph;
use crate::matrix::Matrix;
use crate::reps::RepStyle;

/// The connected components of `G_matrix`, each as its own matrix, ordered by first vertex.
pub fn components(a: &Matrix) -> Vec<Matrix> {
    let g = MatrixGraph::of(a);
    (0..g.components.len()).map(|c| g.component_matrix(a.n(), c)).collect()
}

/// `chi^lambda(u) = prod_T chi^{lambda[T]}(1) prod_S chi^{lambda[T]}(u[S]) / chi^{lambda[T]}(1)`
/// over components `T` of `G_lambda` and `S` of `G_{u-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPlan {
    pub lambda_parts: Vec<Matrix>,
    /// Each `u[S] - 1`.
    pub u_parts: Vec<Matrix>,
}

pub fn factor_by_components(lambda: &Matrix, x: &Matrix) -> ComponentPlan {
    ComponentPlan { lambda_parts: components(lambda), u_parts: components(x) }
}

/// Multiplies `degree * prod value / degree` factors, stopping at the first zero.
fn multiply<I>(p: u32, degree: &BigRational, factors: I) -> Result<CharValue>
where
    I: IntoIterator<Item = Result<(CharValue, CharValue)>>,
{
    let mut acc = CycNumber::from_rational(p, degree.clone());
    for item in factors {
        let (value, one) = item?;
        if let Some(r) = value.zero_reason {
            return Ok(CharValue::zero(p, r));
        }
        let d = one
            .value
            .as_rational()
            .filter(|d| !d.is_zero())
            .ok_or_else(|| Error::CrossCheck("degree is not a nonzero rational".into()))?
            .clone();
        acc = acc.mul(&value.value).scale(&(BigRational::from_integer(1.into()) / d));
    }
    Ok(if acc.is_zero() { CharValue::zero(p, ZeroReason::NoSolution) } else { CharValue::nonzero(acc) })
}

impl ComponentPlan {
    /// Evaluates the plan with `eval(lambda, u - 1)`.
    pub fn evaluate<F>(&self, p: u32, eval: F) -> Result<CharValue>
    where
        F: Fn(&Matrix, &Matrix) -> Result<CharValue>,
    {
        let mut acc = CycNumber::one(p);
        for t in &self.lambda_parts {
            let one = eval(t, &Matrix::zeros(t.n()))?;
            let deg =
                one.value.as_rational().cloned().ok_or_else(|| Error::CrossCheck("degree is not rational".into()))?;
            let part = multiply(p, &deg, self.u_parts.iter().map(|s| Ok((eval(t, s)?, one.clone()))))?;
            if part.zero_reason.is_some() {
                return Ok(part);
            }
            acc = acc.mul(&part.value);
        }
        Ok(CharValue::nonzero(acc))
    }
}

/// `chi^lambda(u) = chi^lambda(1) prod_k chi^{lambda[u,k]}(u[k]) / chi^{lambda[u,k]}(1)`
/// for comb representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnPlan {
    pub lambda: Matrix,
    /// `(k, lambda[u,k], u[k] - 1)` for every column `k` where `u - 1` is nonzero.
    pub columns: Vec<(usize, Matrix, Matrix)>,
}

/// `lambda[u,k]`: `lambda` weakly NorthEast of the nonzero entries of column `k` of `u - 1`.
pub fn lambda_at_column(lambda: &Matrix, x: &Matrix, k: usize) -> Matrix {
    let n = lambda.n();
    let Some(&low) = x.col_support(k).iter().max() else { return Matrix::zeros(n) };
    let mut out = Matrix::zeros(n);
    for ((i, l), v) in lambda.entries() {
        if l >= k && i <= low {
            out.set(i, l, v);
        }
    }
    out
}

/// `u[k] - 1`: column `k` of `x`.
pub fn column_of(x: &Matrix, k: usize) -> Matrix {
    let mut out = Matrix::zeros(x.n());
    for i in x.col_support(k) {
        out.set(i, k, x.get(i, k));
    }
    out
}

pub fn factor_by_columns(lambda: &Matrix, x: &Matrix, style: RepStyle) -> Result<ColumnPlan> {
    if style != RepStyle::Comb {
        return Err(Error::Style {
            style: style.name().into(),
            reason: "column factoring holds only for comb representatives".into(),
        });
    }
    let columns = (2..=x.n())
        .filter(|&k| !x.col_support(k).is_empty())
        .map(|k| (k, lambda_at_column(lambda, x, k), column_of(x, k)))
        .collect();
    Ok(ColumnPlan { lambda: lambda.clone(), columns })
}

impl ColumnPlan {
    pub fn evaluate<F>(&self, p: u32, eval: F) -> Result<CharValue>
    where
        F: Fn(&Matrix, &Matrix) -> Result<CharValue>,
    {
        let n = self.lambda.n();
        let deg = eval(&self.lambda, &Matrix::zeros(n))?;
        let deg = deg.value.as_rational().cloned().ok_or_else(|| Error::CrossCheck("degree is not rational".into()))?;
        multiply(p, &deg, self.columns.iter().map(|(_, lam, col)| Ok((eval(lam, col)?, eval(lam, &Matrix::zeros(n))?))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::general::{general_value, OrbitSizeStrategy};
    use crate::field::{Field, FieldScalar as S};
    use crate::poset::PatternPoset;
    use crate::reps::{enumerate_labels, LabelKind};

    #[test]
    fn two_singleton_arcs_multiply() {
        let f = Field::new(2, 1).unwrap();
        let p = PatternPoset::chain(4);
        let lam = Matrix::from_entries(4, &[((1, 3), S(1)), ((2, 4), S(1))]);
        let plan = factor_by_components(&lam, &Matrix::zeros(4));
        assert_eq!(plan.lambda_parts.len(), 2);
        let oracle = crate::oracle::Oracle::new(&f, &p);
        for x in oracle.enumerate_space().unwrap() {
            let direct = oracle.definitional_char(&lam, &x).unwrap();
            let product = plan
                .lambda_parts
                .iter()
                .map(|t| oracle.definitional_char(t, &x).unwrap())
                .fold(crate::CycNumber::one(2), |a, b| a.mul(&b));
            assert_eq!(direct, product);
        }
    }

    #[test]
    fn single_component_plan_is_identity() {
        let lam = Matrix::from_entries(4, &[((1, 4), S(1))]);
        let x = Matrix::from_entries(4, &[((2, 3), S(1))]);
        let plan = factor_by_components(&lam, &x);
        assert_eq!(plan.lambda_parts, vec![lam]);
        assert_eq!(plan.u_parts, vec![x]);
    }

    #[test]
    fn path_style_is_rejected() {
        let z = Matrix::zeros(3);
        assert!(matches!(factor_by_columns(&z, &z, RepStyle::Path), Err(Error::Style { .. })));
    }

    #[test]
    fn plans_reproduce_general_formula() {
        for (q, n) in [(2u32, 4usize), (3, 4), (2, 5)] {
            let f = Field::new(q, 1).unwrap();
            for m in 0..=n {
                let p = PatternPoset::interpolating(n, m).unwrap();
                let general = |l: &Matrix, x: &Matrix| general_value(&f, &p, l, x, &OrbitSizeStrategy::Rank);
                for style in [RepStyle::Comb, RepStyle::Path] {
                    let chars = enumerate_labels(&f, &p, style, LabelKind::Character).unwrap();
                    let classes = enumerate_labels(&f, &p, style, LabelKind::Class).unwrap();
                    for lam in &chars {
                        for x in &classes {
                            let direct = general(lam, x).unwrap();
                            let by_comp = factor_by_components(lam, x).evaluate(f.p(), general).unwrap();
                            assert_eq!(by_comp.value, direct.value, "components m={m} {style}\n{lam}\n{x}");
                            if style == RepStyle::Comb {
                                let by_col =
                                    factor_by_columns(lam, x, style).unwrap().evaluate(f.p(), general).unwrap();
                                assert_eq!(by_col.value, direct.value, "columns m={m}\n{lam}\n{x}");
                            }
                        }
                    }
                }
            }
        }
    }
}
