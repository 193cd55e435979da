use serde::Serialize;
use serde_json::{json, Value};

use super::algebra::{qt_diff, Hall};
use super::lattice::{Handedness, LatticeCondition, LatticePoint, TriangleSpec};
use super::matrix::OpMatrix;
use crate::coeffs::Coeff;
use crate::error::{Error, Result};
use crate::symfunc::{macdonald_basis, p_norm, partitions, spectral_eigenvalue, Orientation, SymFunc};
use crate::vertexops::{HalfPlane, Operator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check at one degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub parameters: Value,
    pub degree: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<OpMatrix>,
}

impl CheckReport {
    fn from_diff(check: &str, parameters: &Value, degree: usize, diff: OpMatrix) -> Self {
        let ok = diff.is_zero();
        CheckReport {
            check: check.into(),
            parameters: parameters.clone(),
            degree,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: (!ok).then_some(diff),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

/// Degrees `d <= dmax` on which an operator of the given shift lands in
/// `Lambda_{<= dmax}` with a nonempty source.
fn degrees(dmax: usize) -> impl Iterator<Item = usize> {
    0..=dmax
}

/// The right side of the first relation for `[u_{k(m,n)}, u_{l(m,n)}]`.
pub fn rel1_scalar(ray: LatticePoint, k: i64, l: i64) -> Coeff {
    if k + l != 0 {
        return Coeff::zero();
    }
    let km = k * ray.m();
    let num = &Coeff::from(k) * &qt_diff(km);
    num.checked_div(&(&Coeff::beta(k.abs()).expect("k != 0") * &qt_diff(k))).expect("nonzero")
}

/// `[u_{k(m,n)}, u_{l(m,n)}] = rel1_scalar * Id` on `Lambda_d`, `d <= dmax`.
pub fn check_rel1(hall: &Hall, m: i64, n: i64, k: i64, l: i64, dmax: usize) -> Result<Vec<CheckReport>> {
    let ray = LatticePoint::new(m, n)?;
    if !ray.is_primitive() || k == 0 || l == 0 {
        return Err(Error::Argument("rel1 needs coprime (m, n) and nonzero k, l".into()));
    }
    let (a, b) = (ray.times(k)?, ray.times(l)?);
    let s = rel1_scalar(ray, k, l);
    let params = json!({"m": m, "n": n, "k": k, "l": l});
    degrees(dmax)
        .map(|d| {
            let c = hall.commutator(a, b, d)?;
            let expect = if s.is_zero() { OpMatrix::zero(d, c.target) } else { OpMatrix::identity(d).scale(&s) };
            Ok(CheckReport::from_diff("rel1", &params, d, c.sub(&expect)?))
        })
        .collect()
}

/// Validation settings for triangles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TriangleRules {
    pub handedness: Handedness,
    pub condition: LatticeCondition,
}

/// `(qt)^{(m-M)/2} v_{a+b} / (beta_1 ((qt)^{1/2} - (qt)^{-1/2}))` on `Lambda_d`.
pub fn rel2_rhs(hall: &Hall, t: &TriangleSpec, d: usize) -> Result<OpMatrix> {
    let sum = t.sum()?;
    let (mid, _) = t.middle_vertex();
    let k = sum.gcd() as usize;
    let v = hall.v(sum.primitive(), k, d)?;
    let s = Coeff::sqrt_qt_pow((t.a.m() - mid) as i32)
        .checked_div(&(&Coeff::beta(1).expect("k = 1") * &qt_diff(1)))
        .expect("nonzero");
    Ok(v.scale(&s))
}

/// `[u_a, u_b]` against [`rel2_rhs`] on `Lambda_d`, `d <= dmax`.
pub fn check_rel2(hall: &Hall, t: &TriangleSpec, rules: TriangleRules, dmax: usize) -> Result<Vec<CheckReport>> {
    t.validate(rules.handedness, rules.condition)?;
    let params = json!({"a": t.a, "b": t.b});
    degrees(dmax)
        .map(|d| {
            let c = hall.commutator(t.a, t.b, d)?;
            Ok(CheckReport::from_diff("rel2", &params, d, c.sub(&rel2_rhs(hall, t, d)?)?))
        })
        .collect()
}

/// Adjoint of a graded matrix for the deformed Hall pairing.
pub fn adjoint(a: &OpMatrix) -> OpMatrix {
    if a.target < 0 {
        return OpMatrix::zero(a.source, a.target);
    }
    let src = partitions(a.source);
    let tgt = partitions(a.target as usize);
    // (A^dagger)_{mu, la} = A_{la, mu} <p_la, p_la> / <p_mu, p_mu>
    let entries = src
        .iter()
        .enumerate()
        .map(|(j, mu)| {
            let inv = p_norm(mu).inverse().expect("nonzero norm");
            tgt.iter().enumerate().map(|(i, la)| &(&a.entries[i][j] * &p_norm(la)) * &inv).collect()
        })
        .collect();
    OpMatrix { source: a.target as usize, target: a.source as i64, entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjointVerdict {
    /// Both candidates agree with the adjoint.
    Both,
    /// `u_{m,n}^dagger = u_{-m,n}`.
    NegateM,
    /// `u_{m,n}^dagger = u_{-m,-n}`.
    NegateBoth,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdjointReport {
    pub m: i64,
    pub n: i64,
    pub dmax: usize,
    pub verdict: AdjointVerdict,
    /// Degrees where `u_{-m,n}` fails.
    pub negate_m_failures: Vec<usize>,
    /// Degrees where `u_{-m,-n}` fails.
    pub negate_both_failures: Vec<usize>,
}

/// Compares `u_{m,n}^dagger` on `Lambda_{<= dmax}` with `u_{-m,n}` and `u_{-m,-n}`.
pub fn check_adjoint(hall: &Hall, m: i64, n: i64, dmax: usize) -> Result<AdjointReport> {
    let p = LatticePoint::new(m, n)?;
    let (c1, c2) = (LatticePoint::new(-m, n)?, LatticePoint::new(-m, -n)?);
    let (mut f1, mut f2) = (Vec::new(), Vec::new());
    // the adjoint of u_p on Lambda_d maps Lambda_{d+m} -> Lambda_d
    for d in degrees(dmax) {
        let target = d as i64 + m;
        if target < 0 || target as usize > dmax {
            continue;
        }
        let adj = adjoint(&hall.u(p, d)?);
        if !adj.sub(&hall.u(c1, target as usize)?)?.is_zero() {
            f1.push(target as usize);
        }
        if !adj.sub(&hall.u(c2, target as usize)?)?.is_zero() {
            f2.push(target as usize);
        }
    }
    let verdict = match (f1.is_empty(), f2.is_empty()) {
        (true, true) => AdjointVerdict::Both,
        (true, false) => AdjointVerdict::NegateM,
        (false, true) => AdjointVerdict::NegateBoth,
        (false, false) => AdjointVerdict::Neither,
    };
    Ok(AdjointReport { m, n, dmax, verdict, negate_m_failures: f1, negate_both_failures: f2 })
}

/// The orientation under which `D_1` is diagonal on the Macdonald basis with
/// the closed-form eigenvalues, for every degree up to `dmax`.
pub fn determine_orientation(hall: &Hall, dmax: usize) -> Result<Orientation> {
    if dmax < 1 {
        return Err(Error::Argument("degree 0 does not distinguish orientations; need dmax >= 1".into()));
    }
    let works = |o: Orientation| -> Result<bool> {
        for d in 1..=dmax {
            match macdonald_basis(hall.context(), d, o) {
                Ok(_) => {}
                Err(Error::Convention(_)) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    };
    match (works(Orientation::Direct)?, works(Orientation::Inverted)?) {
        (true, false) => Ok(Orientation::Direct),
        (false, true) => Ok(Orientation::Inverted),
        (a, b) => Err(Error::Convention(format!("orientation undetermined: direct {a}, inverted {b}"))),
    }
}

/// A combination `sum c_w word_w` acting through generators is zero on
/// `Lambda_{<= dmax}`.
pub fn check_well_defined(
    hall: &Hall,
    words: &[Vec<i32>],
    relation: &[Coeff],
    sign: HalfPlane,
    dmax: usize,
) -> Result<Vec<CheckReport>> {
    if words.len() != relation.len() {
        return Err(Error::Argument("relation length differs from the number of words".into()));
    }
    let params = json!({
        "words": words,
        "relation": relation.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "sign": sign,
    });
    let Some(first) = words.first() else {
        return Ok(Vec::new());
    };
    let shift = sign.sign() as i64 * first.iter().map(|&x| x as i64).sum::<i64>();
    degrees(dmax)
        .map(|d| {
            let mut acc = OpMatrix::zero(d, d as i64 + shift);
            for (w, c) in words.iter().zip(relation) {
                if c.is_zero() {
                    continue;
                }
                let m = hall.matrix_of(&Operator::Word { word: w.clone(), sign }, d)?;
                acc = acc.add(&m.scale(c))?;
            }
            Ok(CheckReport::from_diff("well_defined", &params, d, acc))
        })
        .collect()
}

/// `beta_n u_{0,n}` against the diagonal action of `spectral_eigenvalue(p_n)`
/// on the Macdonald basis, for `Lambda_d`, `d <= dmax`.
pub fn check_actions_agree(hall: &Hall, n: usize, orientation: Orientation, dmax: usize) -> Result<Vec<CheckReport>> {
    let p = LatticePoint::new(0, n as i64)?;
    let beta = Coeff::beta(n as i64)?;
    let pn = SymFunc::p(n);
    let params = json!({"n": n, "orientation": orientation});
    degrees(dmax)
        .map(|d| {
            let lhs = hall.u(p, d)?.scale(&beta);
            // compare on each eigenvector: lhs P = e P
            let basis = macdonald_basis(hall.context(), d, orientation)?;
            let cols: Vec<SymFunc> = basis
                .iter()
                .map(|(la, f)| {
                    let e = spectral_eigenvalue(&pn, la, orientation);
                    &lhs.apply(f) - &f.scale(&e)
                })
                .collect();
            let diff = OpMatrix::from_images(d, d as i64, &cols);
            Ok(CheckReport::from_diff("actions_agree", &params, d, diff))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertexops::OperatorContext;

    fn pt(m: i64, n: i64) -> LatticePoint {
        LatticePoint::new(m, n).unwrap()
    }

    #[test]
    fn heisenberg_low_degree() {
        let ctx = OperatorContext::default();
        let h = Hall::new(&ctx);
        assert!(all_pass(&check_rel1(&h, 1, 0, 1, -1, 3).unwrap()));
        assert!(all_pass(&check_rel1(&h, 1, 0, 2, -1, 3).unwrap()));
        assert_eq!(rel1_scalar(pt(1, 0), 1, -1), Coeff::beta(1).unwrap().inverse().unwrap());
        assert!(rel1_scalar(pt(0, 1), 1, -1).is_zero());
    }

    #[test]
    fn adjoint_of_multiplication() {
        let ctx = OperatorContext::default();
        let h = Hall::new(&ctx);
        let r = check_adjoint(&h, 1, 0, 3).unwrap();
        assert_eq!(r.verdict, AdjointVerdict::Both);
    }

    #[test]
    fn invalid_triangles_are_rejected() {
        let ctx = OperatorContext::default();
        let h = Hall::new(&ctx);
        let r = check_rel2(&h, &TriangleSpec::new(pt(1, 1), pt(2, 2)), TriangleRules::default(), 1);
        assert!(matches!(r, Err(Error::Argument(_))));
    }
}
