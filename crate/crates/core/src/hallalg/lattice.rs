use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonzero point `(m, n)` of the integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct LatticePoint {
    m: i64,
    n: i64,
}

impl LatticePoint {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::Argument("lattice point must be nonzero".into()));
        }
        Ok(LatticePoint { m, n })
    }

    pub fn m(self) -> i64 {
        self.m
    }

    pub fn n(self) -> i64 {
        self.n
    }

    pub fn gcd(self) -> i64 {
        self.m.gcd(&self.n)
    }

    /// `(m, n) / gcd(m, n)`.
    pub fn primitive(self) -> LatticePoint {
        let g = self.gcd();
        LatticePoint { m: self.m / g, n: self.n / g }
    }

    pub fn is_primitive(self) -> bool {
        self.gcd() == 1
    }

    /// `k (m, n)`; `k` must be nonzero.
    pub fn times(self, k: i64) -> Result<LatticePoint> {
        LatticePoint::new(k * self.m, k * self.n)
    }

}

impl std::ops::Neg for LatticePoint {
    type Output = LatticePoint;

    fn neg(self) -> LatticePoint {
        LatticePoint { m: -self.m, n: -self.n }
    }
}

impl TryFrom<(i64, i64)> for LatticePoint {
    type Error = Error;
    fn try_from((m, n): (i64, i64)) -> Result<Self> {
        LatticePoint::new(m, n)
    }
}

impl From<LatticePoint> for (i64, i64) {
    fn from(p: LatticePoint) -> Self {
        (p.m, p.n)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl FromStr for LatticePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("expected (m,n), got {s:?}")))?;
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?}")));
        LatticePoint::new(parse(a)?, parse(b)?)
    }
}

/// Which lattice-point condition a triangle must meet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeCondition {
    /// No interior points, and at least one edge without points strictly
    /// between its endpoints.
    #[default]
    InteriorAndOneEdge,
    /// No interior points and no points strictly inside any edge.
    InteriorAndAllEdges,
}

/// Sign of the signed area that counts as clockwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Handedness {
    /// Clockwise means negative signed area with the usual axes.
    #[default]
    NegativeArea,
    PositiveArea,
}

/// Triangle with vertices `0`, `a` and `a + b`, meant for `[u_a, u_b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleSpec {
    pub a: LatticePoint,
    pub b: LatticePoint,
}

/// Lattice points strictly between the endpoints of an edge with direction `(x, y)`.
fn edge_points(x: i64, y: i64) -> i64 {
    x.gcd(&y) - 1
}

impl TriangleSpec {
    pub fn new(a: LatticePoint, b: LatticePoint) -> Self {
        TriangleSpec { a, b }
    }

    pub fn sum(&self) -> Result<LatticePoint> {
        LatticePoint::new(self.a.m + self.b.m, self.a.n + self.b.n)
    }

    /// Twice the signed area of `0, a, a + b`.
    pub fn doubled_area(&self) -> i64 {
        self.a.m * self.b.n - self.a.n * self.b.m
    }

    /// Interior lattice points, by Pick's formula.
    pub fn interior_points(&self) -> i64 {
        let boundary = 3 + self.edge_interiors().iter().sum::<i64>();
        (self.doubled_area().abs() - boundary + 2) / 2
    }

    /// Points strictly inside the edges `0 -> a`, `a -> a + b`, `0 -> a + b`.
    pub fn edge_interiors(&self) -> [i64; 3] {
        [
            edge_points(self.a.m, self.a.n),
            edge_points(self.b.m, self.b.n),
            edge_points(self.a.m + self.b.m, self.a.n + self.b.n),
        ]
    }

    /// Middle vertex by horizontal coordinate; among equal horizontal
    /// coordinates the higher vertex counts as further right.
    pub fn middle_vertex(&self) -> (i64, i64) {
        let mut v = [(0, 0), (self.a.m, self.a.n), (self.a.m + self.b.m, self.a.n + self.b.n)];
        v.sort();
        v[1]
    }

    /// Checks orientation and lattice conditions, naming the first failed clause.
    pub fn validate(&self, hand: Handedness, cond: LatticeCondition) -> Result<()> {
        let area = self.doubled_area();
        if area == 0 {
            return Err(Error::Argument(format!("triangle 0, {}, {}+{} is degenerate (collinear)", self.a, self.a, self.b)));
        }
        let clockwise = match hand {
            Handedness::NegativeArea => area < 0,
            Handedness::PositiveArea => area > 0,
        };
        if !clockwise {
            return Err(Error::Argument(format!("triangle 0, {}, {}+{} is not clockwise", self.a, self.a, self.b)));
        }
        let inside = self.interior_points();
        if inside > 0 {
            return Err(Error::Argument(format!("triangle has {inside} interior lattice point(s)")));
        }
        let edges = self.edge_interiors();
        let edges_ok = match cond {
            LatticeCondition::InteriorAndOneEdge => edges.contains(&0),
            LatticeCondition::InteriorAndAllEdges => edges.iter().all(|&e| e == 0),
        };
        if !edges_ok {
            return Err(Error::Argument(format!("edge lattice condition fails: points inside edges {edges:?}")));
        }
        Ok(())
    }

    /// The mirror image in the horizontal axis.
    pub fn reflected(&self) -> TriangleSpec {
        TriangleSpec { a: LatticePoint { m: self.a.m, n: -self.a.n }, b: LatticePoint { m: self.b.m, n: -self.b.n } }
    }
}

impl fmt::Display for TriangleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(m: i64, n: i64) -> LatticePoint {
        LatticePoint::new(m, n).unwrap()
    }

    #[test]
    fn lattice_points() {
        assert!(LatticePoint::new(0, 0).is_err());
        assert_eq!(pt(4, -6).primitive(), pt(2, -3));
        assert_eq!("(1,-2)".parse::<LatticePoint>().unwrap(), pt(1, -2));
        let json = serde_json::to_string(&pt(3, 1)).unwrap();
        assert_eq!(serde_json::from_str::<LatticePoint>(&json).unwrap(), pt(3, 1));
        assert!(serde_json::from_str::<LatticePoint>("[0,0]").is_err());
    }

    #[test]
    fn middle_vertex_tie_break() {
        assert_eq!(TriangleSpec::new(pt(1, 0), pt(0, 1)).middle_vertex(), (1, 0));
        assert_eq!(TriangleSpec::new(pt(0, 1), pt(1, 0)).middle_vertex(), (0, 1));
        assert_eq!(TriangleSpec::new(pt(2, 1), pt(-1, 1)).middle_vertex(), (1, 2));
    }

    #[test]
    fn predicate() {
        let (h, c) = (Handedness::NegativeArea, LatticeCondition::default());
        let t = TriangleSpec::new(pt(0, 1), pt(1, 0));
        assert!(t.validate(h, c).is_ok());
        assert!(t.reflected().validate(h, c).is_err());
        assert!(TriangleSpec::new(pt(1, 1), pt(1, 1)).validate(h, c).is_err());
        // 0, (1,3), (3,4): area 5/2, two interior points
        let fat = TriangleSpec::new(pt(1, 3), pt(2, 1));
        assert_eq!(fat.interior_points(), 2);
        assert!(fat.validate(h, c).unwrap_err().to_string().contains("interior"));
        // 0, (0,2), (1,2): interior empty, one edge with a midpoint
        let t = TriangleSpec::new(pt(0, 2), pt(1, 0));
        assert!(t.validate(h, LatticeCondition::InteriorAndOneEdge).is_ok());
        assert!(t.validate(h, LatticeCondition::InteriorAndAllEdges).is_err());
    }
}
