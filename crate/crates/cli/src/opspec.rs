//! Operator grammar for `symop apply`.
//!
//! `U(m,n)` | `D(n)` | `Deps(0110)` | `pmul(k)` | `padj(k)` | `word(m1,m2,...)`,
//! where `word-(...)` selects the lower half plane.

use std::fmt;
use std::str::FromStr;

use symop::hallalg::{relation_sign, u_operator, GeneratorSigns, LatticePoint};
use symop::vertexops::{HalfPlane, KernelReading, Operator, OperatorContext};
use symop::{Coeff, RibbonWord, SymFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpSpec {
    U(LatticePoint),
    D(usize),
    Deps(RibbonWord),
    PMul(usize),
    PAdj(usize),
    Word(Vec<i32>, HalfPlane),
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse operator {spec:?}: {reason}")]
pub struct OpSpecError {
    spec: String,
    reason: String,
}

fn int_list<T: FromStr>(s: &str) -> Option<Vec<T>> {
    s.split(',').map(|x| x.trim().trim_start_matches('+').parse().ok()).collect()
}

impl FromStr for OpSpec {
    type Err = OpSpecError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| OpSpecError { spec: spec.into(), reason: reason.into() };
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, args) = s
            .strip_suffix(')')
            .and_then(|x| x.split_once('('))
            .ok_or_else(|| fail("expected name(arguments)"))?;
        let positive = |v: Option<Vec<usize>>| match v.as_deref() {
            Some([k]) if *k >= 1 => Ok(*k),
            _ => Err(fail("expected one positive integer")),
        };
        match head {
            "U" => match int_list::<i64>(args).as_deref() {
                Some(&[m, n]) => LatticePoint::new(m, n).map(OpSpec::U).map_err(|e| fail(&e.to_string())),
                _ => Err(fail("expected two integers")),
            },
            "D" => positive(int_list(args)).map(OpSpec::D),
            "pmul" => positive(int_list(args)).map(OpSpec::PMul),
            "padj" => positive(int_list(args)).map(OpSpec::PAdj),
            "Deps" => {
                args.parse().map(OpSpec::Deps).map_err(|e: symop::Error| fail(&e.to_string()))
            }
            "word" | "word+" | "word-" => {
                let sign = if head == "word-" { HalfPlane::Minus } else { HalfPlane::Plus };
                match int_list::<i32>(args) {
                    Some(w) if !w.is_empty() => Ok(OpSpec::Word(w, sign)),
                    _ => Err(fail("expected a nonempty list of integers")),
                }
            }
            _ => Err(fail("unknown operator name")),
        }
    }
}

impl fmt::Display for OpSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpSpec::U(p) => write!(f, "U{p}"),
            OpSpec::D(n) => write!(f, "D({n})"),
            OpSpec::Deps(e) => write!(f, "Deps({e})"),
            OpSpec::PMul(k) => write!(f, "pmul({k})"),
            OpSpec::PAdj(k) => write!(f, "padj({k})"),
            OpSpec::Word(w, sign) => {
                let w: Vec<String> = w.iter().map(i32::to_string).collect();
                let s = if *sign == HalfPlane::Minus { "-" } else { "" };
                write!(f, "word{s}({})", w.join(","))
            }
        }
    }
}

impl OpSpec {
    /// Change in degree.
    pub fn degree_shift(&self) -> i64 {
        match self {
            OpSpec::U(p) => p.m(),
            OpSpec::D(_) | OpSpec::Deps(_) => 0,
            OpSpec::PMul(k) => *k as i64,
            OpSpec::PAdj(k) => -(*k as i64),
            OpSpec::Word(w, sign) => sign.sign() as i64 * w.iter().map(|&m| m as i64).sum::<i64>(),
        }
    }

    /// The engine operator and the scalar it is multiplied by.
    fn resolve(&self, signs: GeneratorSigns, reading: KernelReading) -> (Operator, Coeff) {
        match self {
            OpSpec::U(p) => {
                let (op, c) = u_operator(*p);
                let c = match signs {
                    GeneratorSigns::Kernel => c,
                    GeneratorSigns::Relations => &c * &Coeff::from(relation_sign(*p, reading)),
                };
                (op, c)
            }
            OpSpec::D(n) => (Operator::Dn(*n), Coeff::one()),
            OpSpec::Deps(e) => (Operator::Deps(e.clone()), Coeff::one()),
            OpSpec::PMul(k) => (Operator::PMul(*k), Coeff::one()),
            OpSpec::PAdj(k) => (Operator::PAdj(*k), Coeff::one()),
            OpSpec::Word(w, sign) => (Operator::Word { word: w.clone(), sign: *sign }, Coeff::one()),
        }
    }

    pub fn apply(&self, ctx: &OperatorContext, signs: GeneratorSigns, f: &SymFunc) -> symop::Result<SymFunc> {
        let (op, c) = self.resolve(signs, ctx.reading());
        Ok(ctx.apply(&op, f)?.scale(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!("U(1,-2)".parse::<OpSpec>().unwrap(), OpSpec::U(LatticePoint::new(1, -2).unwrap()));
        assert_eq!("D(2)".parse::<OpSpec>().unwrap(), OpSpec::D(2));
        assert_eq!("Deps(01)".parse::<OpSpec>().unwrap(), OpSpec::Deps("01".parse().unwrap()));
        assert_eq!("Deps()".parse::<OpSpec>().unwrap(), OpSpec::Deps(RibbonWord::default()));
        assert_eq!("word(+1, -2)".parse::<OpSpec>().unwrap(), OpSpec::Word(vec![1, -2], HalfPlane::Plus));
        assert_eq!("word-(0)".parse::<OpSpec>().unwrap(), OpSpec::Word(vec![0], HalfPlane::Minus));
        for bad in ["U(0,0)", "D(0)", "D(1,2)", "word()", "Deps(012)", "X(1)", "pmul", "pmul(-1)"] {
            assert!(bad.parse::<OpSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["U(2,1)", "D(3)", "Deps(10)", "pmul(2)", "padj(1)", "word(1,-1)", "word-(2)"] {
            let op: OpSpec = s.parse().unwrap();
            assert_eq!(op.to_string().parse::<OpSpec>().unwrap(), op);
        }
    }
}
