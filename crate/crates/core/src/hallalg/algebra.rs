use std::collections::HashMap;
use std::sync::Mutex;

use super::lattice::LatticePoint;
use super::matrix::OpMatrix;
use crate::coeffs::Coeff;
use crate::error::{Error, Result};
use crate::symfunc::{partitions, Partition};
use serde::Serialize;

use crate::vertexops::{negative_power_correction, HalfPlane, KernelReading, Operator, OperatorContext};

/// `(qt)^{k/2} - (qt)^{-k/2}`.
pub fn qt_diff(k: i64) -> Coeff {
    &Coeff::sqrt_qt_pow(k as i32) - &Coeff::sqrt_qt_pow(-(k as i32))
}

/// `beta_{|k|} ((qt)^{k/2} - (qt)^{-k/2})`, the weight of `u_k` in the
/// exponential generating `v`.
pub fn c_k(k: i64) -> Coeff {
    &Coeff::beta(k.abs()).expect("k != 0") * &qt_diff(k)
}

/// The operator realizing `u_{a,b}` and the scalar it is multiplied by.
pub fn u_operator(p: LatticePoint) -> (Operator, Coeff) {
    let (a, b) = (p.m(), p.n());
    match b.signum() {
        0 if a > 0 => (Operator::PMul(a as usize), Coeff::one()),
        0 => (Operator::PAdj((-a) as usize), Coeff::one()),
        1 => (Operator::Umn { m: a, n: b as usize, sign: HalfPlane::Plus }, negative_power_correction(a)),
        _ => (
            Operator::Umn { m: -a, n: (-b) as usize, sign: HalfPlane::Minus },
            negative_power_correction(-a).inverse().expect("unit"),
        ),
    }
}

/// Signs attached to the integral formulas for `u_{m,n}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSigns {
    /// The integral formulas as they stand; `beta_n u_{0,n} = D_n`.
    #[default]
    Kernel,
    /// Renormalized by [`relation_sign`] so that both commutation relations hold.
    Relations,
}

/// Sign turning the kernel operator for `u_p` into one satisfying the
/// commutation relations: `(-1)^n` on the lower half plane, times
/// `(-1)^{|n|-1}` under the mirrored reading.
pub fn relation_sign(p: LatticePoint, reading: KernelReading) -> i64 {
    let n = p.n();
    if n == 0 {
        return 1;
    }
    let odd = |k: i64| if k.rem_euclid(2) == 1 { -1 } else { 1 };
    let lower = if n < 0 { odd(n) } else { 1 };
    let mirror = match reading {
        KernelReading::Mirrored => odd(n.abs() - 1),
        KernelReading::Printed => 1,
    };
    lower * mirror
}

/// Graded matrices of the generators, computed on demand.
pub struct Hall<'a> {
    ctx: &'a OperatorContext,
    signs: GeneratorSigns,
    memo: Mutex<HashMap<(LatticePoint, usize), OpMatrix>>,
}

impl<'a> Hall<'a> {
    pub fn new(ctx: &'a OperatorContext) -> Self {
        Hall::with_signs(ctx, GeneratorSigns::Kernel)
    }

    pub fn with_signs(ctx: &'a OperatorContext, signs: GeneratorSigns) -> Self {
        Hall { ctx, signs, memo: Mutex::new(HashMap::new()) }
    }

    pub fn signs(&self) -> GeneratorSigns {
        self.signs
    }

    pub fn context(&self) -> &OperatorContext {
        self.ctx
    }

    /// Matrix of a named operator on `Lambda_d`.
    pub fn matrix_of(&self, op: &Operator, d: usize) -> Result<OpMatrix> {
        let target = d as i64 + op.degree_shift();
        if target < 0 {
            return Ok(OpMatrix::zero(d, target));
        }
        let images = partitions(d)
            .iter()
            .map(|mu| self.ctx.apply_basis(op, mu))
            .collect::<Result<Vec<_>>>()?;
        Ok(OpMatrix::from_images(d, target, &images))
    }

    /// Matrix of `u_{a,b}` on `Lambda_d`.
    pub fn u(&self, p: LatticePoint, d: usize) -> Result<OpMatrix> {
        if let Some(m) = self.memo.lock().expect("memo lock").get(&(p, d)) {
            return Ok(m.clone());
        }
        let (op, mut s) = u_operator(p);
        if self.signs == GeneratorSigns::Relations {
            s = &s * &Coeff::from(relation_sign(p, self.ctx.reading()));
        }
        let m = self.matrix_of(&op, d)?.scale(&s);
        self.memo.lock().expect("memo lock").insert((p, d), m.clone());
        Ok(m)
    }

    /// `[A, B]` on `Lambda_d` for generator points `a`, `b`.
    pub fn commutator(&self, a: LatticePoint, b: LatticePoint, d: usize) -> Result<OpMatrix> {
        let ab = self.chain(&[a, b], d)?;
        let ba = self.chain(&[b, a], d)?;
        ab.sub(&ba)
    }

    /// `u_{points[0]} ... u_{points[last]}` on `Lambda_d`, rightmost first.
    pub fn chain(&self, points: &[LatticePoint], d: usize) -> Result<OpMatrix> {
        let mut acc = OpMatrix::identity(d);
        for &p in points.iter().rev() {
            if acc.target < 0 {
                return Ok(OpMatrix::zero(d, acc.target + p.m()));
            }
            acc = self.u(p, acc.target as usize)?.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `v_{k m, k n}` on `Lambda_d` along the primitive `ray`.
    pub fn v(&self, ray: LatticePoint, k: usize, d: usize) -> Result<OpMatrix> {
        if !ray.is_primitive() {
            return Err(Error::Argument(format!("{ray} is not primitive")));
        }
        let mut out = OpMatrix::zero(d, d as i64 + k as i64 * ray.m());
        for (mu, c) in v_from_u(k).into_iter().nth(k - 1).unwrap_or_default() {
            let pts = mu.parts().iter().map(|&j| ray.times(j as i64)).collect::<Result<Vec<_>>>()?;
            out = out.add(&self.chain(&pts, d)?.scale(&c))?;
        }
        Ok(out)
    }

    /// Checks `[u_{i ray}, u_{j ray}] = 0` for `i + j <= k` on `Lambda_d`.
    pub fn ray_commutes(&self, ray: LatticePoint, k: usize, d: usize) -> Result<bool> {
        for i in 1..k {
            for j in i + 1..=k - i {
                let c = self.commutator(ray.times(i as i64)?, ray.times(j as i64)?, d)?;
                if !c.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `v_1..v_K` as polynomials in commuting `u_1, u_2, ...`: term `(mu, c)`
/// stands for `c * prod_i u_{mu_i}`, from
/// `1 + sum v_k z^k = exp(sum c_k u_k z^k / k)`.
pub fn v_from_u(max_k: usize) -> Vec<Vec<(Partition, Coeff)>> {
    let mut v: Vec<HashMap<Partition, Coeff>> = vec![HashMap::from([(Partition::empty(), Coeff::one())])];
    for big_k in 1..=max_k {
        // K v_K = sum_k c_k u_k v_{K-k}
        let mut acc: HashMap<Partition, Coeff> = HashMap::new();
        for k in 1..=big_k {
            let ck = c_k(k as i64);
            for (mu, c) in &v[big_k - k] {
                let mut parts = mu.parts().to_vec();
                parts.push(k);
                parts.sort_unstable_by(|x, y| y.cmp(x));
                let key = Partition::new(parts).expect("positive parts");
                let e = acc.entry(key).or_insert_with(Coeff::zero);
                *e = &*e + &(&ck * c);
            }
        }
        let inv = Coeff::from(big_k as i64).inverse().expect("nonzero");
        acc.retain(|_, c| !c.is_zero());
        v.push(acc.into_iter().map(|(mu, c)| (mu, &c * &inv)).collect());
    }
    v.into_iter()
        .skip(1)
        .map(|m| {
            let mut terms: Vec<(Partition, Coeff)> = m.into_iter().collect();
            terms.sort_by(|a, b| a.0.cmp(&b.0));
            terms
        })
        .collect()
}
