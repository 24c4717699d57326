//! Rickard reflections `t_i` on the tensor model and braid checks.
//!
//! On a block of weight `lambda` with `p = <lambda, alpha_i> >= 0` the
//! reflection is `sum_s (-q)^s F^(p+s) E^(s)`; for `p < 0` it is the mirror
//! `sum_s (-q)^s E^(-p+s) F^(s)`. The inverse on a block of pairing `p'` is
//! `sum_s (-q)^-s F^(s) E^(-p'+s)` when `p' <= 0` and
//! `sum_s (-q)^-s E^(s) F^(p'+s)` otherwise.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::Check;
use crate::scalars::LaurentScalar;
use crate::tensor_model::{Kind, Operator, TensorModel, Weight};

/// `t_i` (or its inverse) as a block operator `lambda -> s_i(lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionOperator {
    node: usize,
    op: Operator,
}

impl ReflectionOperator {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }
}

/// `s_i(lambda)`.
pub fn weyl_reflect(weight: &Weight, node: usize) -> Weight {
    weight.reflect(node)
}

/// Divided powers `E_i^(r)`, `F_i^(r)` for `r = 0..=N`.
struct Powers {
    e: Vec<Operator>,
    f: Vec<Operator>,
}

impl Powers {
    fn new(model: &TensorModel, node: usize) -> Result<Self> {
        let mut e = Vec::with_capacity(model.n() + 1);
        let mut f = Vec::with_capacity(model.n() + 1);
        for r in 0..=model.n() as u32 {
            e.push(model.divided_power(node, Kind::E, r)?);
            f.push(model.divided_power(node, Kind::F, r)?);
        }
        Ok(Self { e, f })
    }

    fn get(&self, kind: Kind, r: i64) -> Option<&Operator> {
        let table = match kind {
            Kind::E => &self.e,
            Kind::F => &self.f,
        };
        usize::try_from(r).ok().and_then(|r| table.get(r))
    }
}

/// `sum_s sign^s (q^s or q^-s) X^(a+s) Y^(b+s)` restricted to `source`.
fn alternating_block(
    powers: &Powers,
    source: &Weight,
    left: Kind,
    right: Kind,
    a: i64,
    b: i64,
    q_sign: i64,
) -> Operator {
    let mut out = Operator::zero();
    let mut s = 0;
    while let (Some(x), Some(y)) = (powers.get(left, a + s), powers.get(right, b + s)) {
        let term = x.compose(&y.restrict(source));
        if !term.is_zero() {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            out = out.add(&term.scale(&LaurentScalar::monomial(sign, q_sign * s)));
        }
        s += 1;
    }
    out
}

pub fn reflection_operator(model: &TensorModel, node: usize) -> Result<ReflectionOperator> {
    model.check_node(node)?;
    let powers = Powers::new(model, node)?;
    let mut op = Operator::zero();
    for w in model.weights() {
        let p = w.pair(node);
        let block = if p >= 0 {
            alternating_block(&powers, w, Kind::F, Kind::E, p, 0, 1)
        } else {
            alternating_block(&powers, w, Kind::E, Kind::F, -p, 0, 1)
        };
        op = op.add(&block);
    }
    Ok(ReflectionOperator { node, op })
}

fn inverse_unchecked(model: &TensorModel, node: usize) -> Result<ReflectionOperator> {
    model.check_node(node)?;
    let powers = Powers::new(model, node)?;
    let mut op = Operator::zero();
    for w in model.weights() {
        let p = w.pair(node);
        let block = if p <= 0 {
            alternating_block(&powers, w, Kind::F, Kind::E, 0, -p, -1)
        } else {
            alternating_block(&powers, w, Kind::E, Kind::F, 0, p, -1)
        };
        op = op.add(&block);
    }
    Ok(ReflectionOperator { node, op })
}

/// The inverse reflection, checked against `t_i` on both sides.
pub fn inverse_reflection(model: &TensorModel, node: usize) -> Result<ReflectionOperator> {
    let inv = inverse_unchecked(model, node)?;
    let t = reflection_operator(model, node)?;
    let id = Operator::identity(model);
    if let Some(diff) = inv.op.compose(&t.op).first_difference(&id) {
        return Err(Error::Integrity(format!("inverse reflection t_{node}^-1 t_{node} != id: {diff}")));
    }
    if let Some(diff) = t.op.compose(&inv.op).first_difference(&id) {
        return Err(Error::Integrity(format!("inverse reflection t_{node} t_{node}^-1 != id: {diff}")));
    }
    Ok(inv)
}

fn braid_params(model: &TensorModel, i: usize, j: usize) -> BTreeMap<String, i64> {
    [("m", model.m() as i64), ("N", model.n() as i64), ("i", i as i64), ("j", j as i64)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

/// `t_i t_j t_i = t_j t_i t_j` for adjacent nodes, `t_i t_j = t_j t_i` otherwise.
pub fn verify_braid(model: &TensorModel, i: usize, j: usize) -> Result<Check> {
    model.check_node(i)?;
    model.check_node(j)?;
    if i == j {
        return Err(Error::InvalidArgument(format!("braid check needs distinct nodes, got {i} twice")));
    }
    let ti = reflection_operator(model, i)?.op;
    let tj = reflection_operator(model, j)?.op;
    let (name, failure) = if i.abs_diff(j) == 1 {
        let lhs = ti.compose(&tj).compose(&ti);
        let rhs = tj.compose(&ti).compose(&tj);
        ("braid titjti=tjtitj", lhs.first_difference(&rhs))
    } else {
        ("braid titj=tjti", ti.compose(&tj).first_difference(&tj.compose(&ti)))
    };
    Ok(Check::new(name, braid_params(model, i, j), failure))
}

/// Every braid relation among the nodes of the model.
pub fn braid_suite(model: &TensorModel) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for i in 1..model.m() {
        for j in i + 1..model.m() {
            out.push(verify_braid(model, i, j)?);
        }
    }
    Ok(out)
}

/// Checks that `t_i` maps each block onto `s_i(lambda)` with square,
/// invertible matrices, and that the inverse formula matches `adj / det`.
pub fn invertibility_check(model: &TensorModel, node: usize) -> Result<Check> {
    let t = reflection_operator(model, node)?;
    let inv = inverse_unchecked(model, node)?;
    let params = [("m", model.m() as i64), ("N", model.n() as i64), ("i", node as i64)];
    let mut failure = None;
    for w in model.weights() {
        let target = w.reflect(node);
        let targets = t.op.targets(w);
        if targets.iter().any(|&x| *x != target) {
            failure = Some(format!("block {w} reaches a weight other than {target}"));
            break;
        }
        let Some(block) = t.op.block(w, &target) else {
            failure = Some(format!("block {w} -> {target} is zero"));
            break;
        };
        if block.rows() != block.cols() {
            failure = Some(format!("block {w} -> {target} is not square"));
            break;
        }
        let Some((det, adj)) = block.adjugate_inverse() else {
            failure = Some(format!("block {w} -> {target} is singular"));
            break;
        };
        let formula = inv
            .op
            .block(&target, w)
            .cloned()
            .unwrap_or_else(|| crate::matrix::SparseMatrix::zeros(block.cols(), block.rows()));
        if formula.scale(&det) != adj {
            failure = Some(format!("inverse formula on {target} disagrees with elimination"));
            break;
        }
    }
    Ok(Check::new("reflection invertible", params, failure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SparseMatrix;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn lp(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    #[test]
    fn single_factor_swaps() {
        let model = TensorModel::new(2, 1).unwrap();
        let t = reflection_operator(&model, 1).unwrap();
        let one = SparseMatrix::identity(1);
        assert_eq!(t.operator().block(&w(&[1, 0]), &w(&[0, 1])), Some(&one));
        assert_eq!(t.operator().block(&w(&[0, 1]), &w(&[1, 0])), Some(&one));
        assert_eq!(t.operator().blocks().count(), 2);
    }

    #[test]
    fn two_factor_middle_block() {
        let model = TensorModel::new(2, 2).unwrap();
        let t = reflection_operator(&model, 1).unwrap();
        let mid = w(&[1, 1]);
        let e = model.chevalley(1, Kind::E).unwrap();
        let f = model.chevalley(1, Kind::F).unwrap();
        let expected = Operator::identity(&model).sub(&f.compose(&e).scale(&lp("q"))).restrict(&mid);
        assert_eq!(t.operator().restrict(&mid), expected);
        // F E on (1,1): hand values from the two factor matrices.
        let b = expected.block(&mid, &mid).unwrap();
        assert_eq!(b.to_dense(), vec![vec![lp("1 - q^2"), lp("-q")], vec![lp("-q"), lp("0")]]);
        assert!(t.operator().block(&w(&[0, 2]), &w(&[2, 0])).is_some());
        assert!(t.operator().block(&w(&[2, 0]), &w(&[0, 2])).is_some());
    }

    #[test]
    fn targets_are_reflected_weights() {
        for (m, n) in [(2, 5), (3, 3), (4, 2)] {
            let model = TensorModel::new(m, n).unwrap();
            for node in 1..m {
                let t = reflection_operator(&model, node).unwrap();
                for (s, tgt, mat) in t.operator().blocks() {
                    assert_eq!(*tgt, weyl_reflect(s, node));
                    assert_eq!(mat.rows(), mat.cols());
                }
            }
        }
    }

    #[test]
    fn sl2_reflection_is_invertible() {
        for n in 1..=8 {
            let model = TensorModel::new(2, n).unwrap();
            let c = invertibility_check(&model, 1).unwrap();
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn inverse_formula_matches_elimination_at_four() {
        let model = TensorModel::new(2, 4).unwrap();
        let t = reflection_operator(&model, 1).unwrap();
        let inv = inverse_reflection(&model, 1).unwrap();
        for (s, tgt, block) in t.operator().blocks() {
            let (det, adj) = block.adjugate_inverse().unwrap();
            let formula = inv.operator().block(tgt, s).unwrap();
            assert_eq!(formula.scale(&det), adj, "weight {s}");
            assert!(det.num_terms() == 1, "determinant of a unit block is a monomial up to sign");
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        for (m, n) in [(2, 6), (3, 4), (4, 3)] {
            let model = TensorModel::new(m, n).unwrap();
            for node in 1..m {
                inverse_reflection(&model, node).unwrap();
            }
        }
    }

    #[test]
    fn braids() {
        let model = TensorModel::new(3, 2).unwrap();
        assert_eq!(model.dim(), 9);
        let c = verify_braid(&model, 1, 2).unwrap();
        assert!(c.passed, "{c}");
        let model = TensorModel::new(4, 3).unwrap();
        let c = verify_braid(&model, 1, 3).unwrap();
        assert!(c.passed, "{c}");
        assert_eq!(c.relation, "braid titj=tjti");
        for n in 1..=4 {
            let model = TensorModel::new(3, n).unwrap();
            for c in braid_suite(&model).unwrap() {
                assert!(c.passed, "{c}");
            }
        }
        assert!(braid_suite(&TensorModel::new(2, 3).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn braid_argument_errors() {
        let model = TensorModel::new(3, 2).unwrap();
        assert!(matches!(verify_braid(&model, 1, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(verify_braid(&model, 1, 3), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn weyl_reflect_examples() {
        assert_eq!(weyl_reflect(&w(&[1, 1]), 1), w(&[1, 1]));
        assert_eq!(weyl_reflect(&w(&[3, 1]), 1), w(&[1, 3]));
        let lam = w(&[3, 1]);
        let p = lam.pair(1);
        assert_eq!(p, -2);
        assert_eq!(weyl_reflect(&lam, 1), lam.add_root(1, -p));
    }
}
