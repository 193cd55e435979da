//! Verification suites behind `symop verify`.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use symop::hallalg::{
    check_actions_agree, check_adjoint, check_rel1, check_rel2, check_well_defined, AdjointVerdict, CheckReport,
    GeneratorSigns, Hall, LatticePoint, OpMatrix, Status, TriangleRules, TriangleSpec,
};
use symop::shuffle::{is_in_s, p_mn, rat_eq, relations_in_window, upsilon_ribbon, word_elem, words_in_window, RibbonReading};
use symop::symfunc::{inner, partitions, ribbon_schur, spectral_eigenvalue, MacdonaldCache};
use symop::vertexops::{apply_word, HalfPlane, Operator, OperatorContext};
use symop::{Coeff, Orientation, Partition, RibbonWord, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Eigen,
    Orthogonality,
    Shuffle,
    Adjoint,
    Actions,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Relations, Eigen, Orthogonality, Shuffle, Adjoint, Actions],
            s => vec![s],
        }
    }

    pub fn needs_orientation(self) -> bool {
        matches!(self, Suite::Eigen | Suite::Orthogonality | Suite::Actions | Suite::All)
    }
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
    pub checks: Vec<CheckReport>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub dmax: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjoint_verdict: Option<AdjointVerdict>,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

type R<T> = symop::Result<T>;

fn power_basis(d: usize) -> Vec<SymFunc> {
    partitions(d).into_iter().map(SymFunc::p_lambda).collect()
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// A check on `Lambda_d` whose failures are the nonzero `diffs`, one per
/// basis vector of the source.
fn from_images(check: &str, parameters: Value, d: usize, target: i64, diffs: &[SymFunc]) -> CheckReport {
    let ok = diffs.iter().all(SymFunc::is_zero);
    CheckReport {
        check: check.into(),
        parameters,
        degree: d,
        status: status(ok),
        witness: (!ok).then(|| OpMatrix::from_images(d, target, diffs)),
    }
}

fn flag(check: &str, parameters: Value, d: usize, ok: bool) -> CheckReport {
    CheckReport { check: check.into(), parameters, degree: d, status: status(ok), witness: None }
}

pub struct Verifier<'a> {
    pub ctx: &'a OperatorContext,
    pub cache: &'a MacdonaldCache,
    /// Required by the eigen, orthogonality and actions suites.
    pub orientation: Option<Orientation>,
}

impl Verifier<'_> {
    fn orientation(&self) -> Orientation {
        self.orientation.expect("orientation resolved before running spectral suites")
    }

    pub fn run(&self, suite: Suite, dmax: usize) -> R<VerifyReport> {
        let mut suites = Vec::new();
        let mut adjoint_verdict = None;
        for s in suite.expand() {
            let mut notes = BTreeMap::new();
            let checks = match s {
                Suite::Relations => self.relations(dmax)?,
                Suite::Eigen => self.eigen(dmax, &mut notes)?,
                Suite::Orthogonality => self.orthogonality(dmax)?,
                Suite::Shuffle => self.shuffle(dmax)?,
                Suite::Adjoint => {
                    let (checks, verdict) = self.adjoint(dmax, &mut notes)?;
                    adjoint_verdict = Some(verdict);
                    checks
                }
                Suite::Actions => self.actions(dmax)?,
                Suite::All => unreachable!("expanded above"),
            };
            let failed = checks.iter().filter(|c| !c.passed()).count();
            suites.push(SuiteReport { suite: s, passed: failed == 0, total: checks.len(), failed, notes, checks });
        }
        Ok(VerifyReport {
            dmax,
            orientation: self.orientation,
            adjoint_verdict,
            passed: suites.iter().all(|s| s.passed),
            suites,
        })
    }

    /// Both commutation relations, with the generators renormalized by
    /// their relation signs. Families are limited to four contour variables
    /// and to source degrees whose images stay in `Lambda_{<= dmax}`.
    fn relations(&self, dmax: usize) -> R<Vec<CheckReport>> {
        let hall = Hall::with_signs(self.ctx, GeneratorSigns::Relations);
        let mut out = Vec::new();
        let mut rel1 = Vec::new();
        for k in 1..=3 {
            for l in (-3..=3).filter(|&l| l != 0) {
                rel1.push((1, 0, k, l));
            }
        }
        for (m, n) in [(0, 1), (1, 1), (-1, 1)] {
            for k in 1..=2 {
                for l in [-2, -1, 1, 2] {
                    rel1.push((m, n, k, l));
                }
            }
        }
        for (m, n) in [(2, 1), (1, 2), (-1, 2)] {
            rel1.push((m, n, 1, -1));
            rel1.push((m, n, 1, 1));
        }
        for (m, n, k, l) in rel1 {
            if let Some(top) = source_bound(dmax, k * m, l * m) {
                out.extend(check_rel1(&hall, m, n, k, l, top)?);
            }
        }
        let rules = TriangleRules::default();
        for t in unit_triangles(rules) {
            if let Some(top) = source_bound(dmax, t.a.m(), t.b.m()) {
                out.extend(check_rel2(&hall, &t, rules, top)?);
            }
        }
        Ok(out)
    }

    fn eigen(&self, dmax: usize, notes: &mut BTreeMap<String, Value>) -> R<Vec<CheckReport>> {
        let o = self.orientation();
        let d1p1 = self.ctx.apply_dn(1, &SymFunc::p(1))?.coeff(&Partition::row(1));
        notes.insert(
            "degree_one_witness".into(),
            json!({
                "D_1 p_1 / p_1": d1p1.to_string(),
                "direct": spectral_eigenvalue(&SymFunc::p(1), &Partition::row(1), Orientation::Direct).to_string(),
                "inverted": spectral_eigenvalue(&SymFunc::p(1), &Partition::row(1), Orientation::Inverted).to_string(),
            }),
        );
        let mut out = Vec::new();
        for d in 0..=dmax {
            let basis = self.cache.basis(self.ctx, d, o)?;
            for n in 1..=3 {
                let diffs = basis
                    .iter()
                    .map(|(la, p)| Ok(&self.ctx.apply_dn(n, p)? - &p.scale(&spectral_eigenvalue(&SymFunc::p(n), la, o))))
                    .collect::<R<Vec<_>>>()?;
                out.push(from_images("eigen_D_n", json!({"n": n}), d, d as i64, &diffs));
            }
            for len in 0..=2 {
                for eps in RibbonWord::all(len) {
                    let s = ribbon_schur(&eps);
                    let diffs = basis
                        .iter()
                        .map(|(la, p)| Ok(&self.ctx.apply_deps(&eps, p)? - &p.scale(&spectral_eigenvalue(&s, la, o))))
                        .collect::<R<Vec<_>>>()?;
                    out.push(from_images("eigen_D_eps", json!({"eps": eps.to_string()}), d, d as i64, &diffs));
                }
            }
        }
        // p_k as the alternating sum of hook ribbons
        for k in 1..=dmax.max(1) {
            let mut sum = SymFunc::zero();
            for j in 0..k {
                let mut bits = vec![0u8; k - 1 - j];
                bits.extend(std::iter::repeat_n(1, j));
                let s = ribbon_schur(&RibbonWord::new(bits)?);
                sum = if j % 2 == 0 { &sum + &s } else { &sum - &s };
            }
            out.push(from_images("hook_sum", json!({"k": k}), 0, k as i64, &[&sum - &SymFunc::p(k)]));
        }
        // D_e D_f = D_{e0f} + D_{e1f}
        for total in 0..=2usize {
            for a in 0..=total {
                for e in RibbonWord::all(a) {
                    for f in RibbonWord::all(total - a) {
                        let (e0f, e1f) = (e.join(0, &f), e.join(1, &f));
                        for d in 0..=dmax.min(3) {
                            let diffs = power_basis(d)
                                .iter()
                                .map(|x| {
                                    let lhs = self.ctx.apply_deps(&e, &self.ctx.apply_deps(&f, x)?)?;
                                    let rhs = &self.ctx.apply_deps(&e0f, x)? + &self.ctx.apply_deps(&e1f, x)?;
                                    Ok(&lhs - &rhs)
                                })
                                .collect::<R<Vec<_>>>()?;
                            let params = json!({"left": e.to_string(), "right": f.to_string()});
                            out.push(from_images("ribbon_product", params, d, d as i64, &diffs));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn orthogonality(&self, dmax: usize) -> R<Vec<CheckReport>> {
        let o = self.orientation();
        let mut out = Vec::new();
        for d in 0..=dmax {
            let basis = self.cache.basis(self.ctx, d, o)?;
            for (i, (la, f)) in basis.iter().enumerate() {
                for (mu, g) in &basis[i + 1..] {
                    let params = json!({"lambda": la, "mu": mu});
                    out.push(flag("orthogonality", params, d, inner(f, g).is_zero()));
                }
            }
        }
        Ok(out)
    }

    fn shuffle(&self, dmax: usize) -> R<Vec<CheckReport>> {
        let hall = Hall::new(self.ctx);
        let mut out = Vec::new();
        // composition of generators against the multi-variable integral
        let mut words = Vec::new();
        for len in 1..=2 {
            for total in -2 * len..=2 * len {
                words.extend(words_in_window(len as usize, -2, 2, total));
            }
        }
        for total in -3..=3 {
            words.extend(words_in_window(3, -1, 1, total));
        }
        for w in &words {
            for sign in [HalfPlane::Plus, HalfPlane::Minus] {
                let shift = sign.sign() as i64 * w.iter().map(|&m| m as i64).sum::<i64>();
                for d in 0..=dmax.min(3) {
                    let diffs = power_basis(d)
                        .iter()
                        .map(|f| Ok(&apply_word(w, sign, f)? - &self.ctx.apply_word_contour(w, sign, f)?))
                        .collect::<R<Vec<_>>>()?;
                    out.push(from_images("word_vs_contour", json!({"word": w, "sign": sign}), d, d as i64 + shift, &diffs));
                }
            }
        }
        for total in [0, 1] {
            let (ws, rels) = relations_in_window(2, -2, 2, total)?;
            for r in &rels {
                for sign in [HalfPlane::Plus, HalfPlane::Minus] {
                    out.extend(check_well_defined(&hall, &ws, r, sign, dmax)?);
                }
            }
        }
        for total in -3..=3 {
            for len in 1..=3usize {
                for w in words_in_window(len, -1, 1, total) {
                    let m = is_in_s(&word_elem(&w)?)?;
                    out.push(flag("membership", json!({"word": w, "diagnostics": m.diagnostics}), 0, m.passes()));
                }
            }
        }
        for n in 1..=3usize {
            for m in -3..=3i64 {
                let r = is_in_s(&p_mn(m, n)?)?;
                out.push(flag("membership", json!({"P": [m, n], "diagnostics": r.diagnostics}), 0, r.passes()));
            }
        }
        for (m, n, k) in [(0i64, 1usize, 2usize), (1, 1, 2), (0, 1, 3), (1, 1, 3), (1, 2, 2)] {
            let ok = hook_sum_matches(m, n, k)?;
            out.push(flag("ribbon_hook_sum", json!({"m": m, "n": n, "k": k}), 0, ok));
        }
        Ok(out)
    }

    fn adjoint(&self, dmax: usize, notes: &mut BTreeMap<String, Value>) -> R<(Vec<CheckReport>, AdjointVerdict)> {
        let hall = Hall::new(self.ctx);
        let mut out = Vec::new();
        let mut verdicts = BTreeMap::new();
        for (m, n) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            let r = check_adjoint(&hall, m, n, dmax)?;
            verdicts.insert(format!("({m},{n})"), json!(r.verdict));
            let ok = matches!(r.verdict, AdjointVerdict::NegateM | AdjointVerdict::Both);
            out.push(flag("adjoint", serde_json::to_value(&r).expect("serializable"), dmax, ok));
        }
        notes.insert("verdicts".into(), json!(verdicts));
        let all_ok = out.iter().all(CheckReport::passed);
        Ok((out, if all_ok { AdjointVerdict::NegateM } else { AdjointVerdict::Neither }))
    }

    fn actions(&self, dmax: usize) -> R<Vec<CheckReport>> {
        let o = self.orientation();
        let hall = Hall::new(self.ctx);
        let mut out = Vec::new();
        for n in 1..=2 {
            out.extend(check_actions_agree(&hall, n, o, dmax)?);
            let beta = Coeff::beta(n as i64)?;
            for d in 0..=dmax {
                let diffs = power_basis(d)
                    .iter()
                    .map(|f| Ok(&self.ctx.apply_umn(0, n, HalfPlane::Plus, f)?.scale(&beta) - &self.ctx.apply_dn(n, f)?))
                    .collect::<R<Vec<_>>>()?;
                out.push(from_images("vertical_U_vs_D", json!({"n": n}), d, d as i64, &diffs));
            }
        }
        for d in 0..=dmax {
            let d1 = hall.matrix_of(&Operator::Dn(1), d)?;
            let d2 = hall.matrix_of(&Operator::Dn(2), d)?;
            let c = d1.compose(&d2)?.sub(&d2.compose(&d1)?)?;
            out.push(CheckReport {
                check: "commuting_D1_D2".into(),
                parameters: json!({}),
                degree: d,
                status: status(c.is_zero()),
                witness: (!c.is_zero()).then_some(c),
            });
        }
        Ok(out)
    }
}

/// Largest source degree for which `[u_a, u_b]` only passes through
/// `Lambda_{<= dmax}`, given the horizontal components of `a` and `b`.
fn source_bound(dmax: usize, am: i64, bm: i64) -> Option<usize> {
    let peak = [0, am, bm, am + bm].into_iter().max().unwrap_or(0);
    usize::try_from(dmax as i64 - peak).ok()
}

/// Clockwise triangles `0, a, a+b` with `a, b` in a small box that satisfy
/// the lattice conditions and need at most two contour variables per vertex.
fn unit_triangles(rules: TriangleRules) -> Vec<TriangleSpec> {
    let mut out = Vec::new();
    let pts: Vec<LatticePoint> = (-2..=2i64)
        .flat_map(|m| (-2..=2i64).filter_map(move |n| LatticePoint::new(m, n).ok()))
        .collect();
    for &a in &pts {
        for &b in &pts {
            let t = TriangleSpec::new(a, b);
            let Ok(sum) = t.sum() else { continue };
            if sum.n().abs() > 2 || sum.m().abs() > 2 || t.validate(rules.handedness, rules.condition).is_err() {
                continue;
            }
            out.push(t);
        }
    }
    out
}

fn hook_sum_matches(m: i64, n: usize, k: usize) -> R<bool> {
    let mut acc = None;
    for j in 0..k {
        let mut bits = vec![0u8; k - 1 - j];
        bits.extend(std::iter::repeat_n(1, j));
        let term = upsilon_ribbon(m, n, &RibbonWord::new(bits)?, k, RibbonReading::ByN)?;
        let term = if j % 2 == 0 { term } else { term.scale(&-&Coeff::one()) };
        acc = Some(match acc {
            None => term,
            Some(a) => term.try_add(&a)?,
        });
    }
    let one = Coeff::one();
    let ratio = (&(&Coeff::qt_pow(2 * k as i32, 0) - &one) * &(&Coeff::qt_pow(0, 2 * k as i32) - &one))
        .checked_div(&(&(&Coeff::q() - &one) * &(&Coeff::t() - &one)).pow((k * n) as i32)?)?;
    let rhs = p_mn(k as i64 * m, k * n)?.scale(&ratio);
    Ok(rat_eq(&acc.expect("k >= 1"), &rhs))
}
