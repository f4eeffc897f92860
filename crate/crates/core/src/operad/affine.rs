//! Geometric operads: operations are finite lists of affine embeddings of
//! standard shapes into a standard shape, with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::spec::MapSpec;
use crate::color::{Color, ColorWord};
use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Q::new(n, d))
}

/// `x ↦ lin·x + off`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    lin: Vec<Vec<Q>>,
    off: Vec<Q>,
}

impl AffineMap {
    pub fn new(lin: Vec<Vec<Q>>, off: Vec<Q>) -> Result<Self> {
        let d = off.len();
        if lin.len() != d || lin.iter().any(|r| r.len() != d) {
            return Err(Error::invalid("affine map must be square with matching offset"));
        }
        Ok(Self { lin, off })
    }

    pub fn identity(d: usize) -> Self {
        let lin = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        Self { lin, off: vec![Q::zero(); d] }
    }

    /// Scales axis `axis` by `1/n` and shifts it by `k/n`.
    pub fn slab(d: usize, axis: usize, k: u64, n: u64) -> Self {
        let mut m = Self::identity(d);
        m.lin[axis][axis] = q(1, n as i64);
        m.off[axis] = q(k as i64, n as i64);
        m
    }

    pub fn from_spec(s: &MapSpec) -> Result<Self> {
        let lin = s
            .linear
            .iter()
            .map(|r| r.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let off = s.offset.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
        Self::new(lin, off)
    }

    pub fn to_spec(&self) -> MapSpec {
        MapSpec {
            linear: self.lin.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            offset: self.off.iter().map(|x| x.to_string()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.off.len()
    }

    pub fn apply(&self, p: &[Q]) -> Vec<Q> {
        (0..self.dim())
            .map(|i| {
                let mut acc = self.off[i].clone();
                for (a, x) in self.lin[i].iter().zip(p) {
                    acc += a * x;
                }
                acc
            })
            .collect()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AffineMap) -> AffineMap {
        let d = self.dim();
        let lin = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut acc = Q::zero();
                        for k in 0..d {
                            acc += &self.lin[i][k] * &inner.lin[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        AffineMap { lin, off: self.apply(&inner.off) }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let d = self.dim();
        // Gauss-Jordan on [lin | I]
        let mut a: Vec<Vec<Q>> = self
            .lin
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..d).map(|j| if i == j { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::invalid("singular affine map"))?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * d {
                        let sub = &f * &a[col][c];
                        a[r][c] -= sub;
                    }
                }
            }
        }
        let lin: Vec<Vec<Q>> = a.into_iter().map(|r| r[d..].to_vec()).collect();
        let mut m = AffineMap { lin, off: vec![Q::zero(); d] };
        let shifted = m.apply(&self.off);
        m.off = shifted.into_iter().map(|x| -x).collect();
        Ok(m)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn determinant_sign(&self) -> i32 {
        let d = self.dim();
        let det = match d {
            1 => self.lin[0][0].clone(),
            2 => &self.lin[0][0] * &self.lin[1][1] - &self.lin[0][1] * &self.lin[1][0],
            _ => {
                let m = &self.lin;
                &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                    - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                    + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
            }
        };
        if det.is_positive() {
            1
        } else if det.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.lin.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        let off: Vec<String> = self.off.iter().map(|x| x.to_string()).collect();
        write!(f, " | {}]", off.join(" "))
    }
}

/// A convex standard shape: an axis-aligned unit box or a polygon.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Cube(usize),
    Polygon(Vec<Vec<Q>>),
}

impl Shape {
    pub fn vertices(&self) -> Vec<Vec<Q>> {
        match self {
            Shape::Cube(d) => (0..1u32 << d)
                .map(|mask| (0..*d).map(|i| if mask >> i & 1 == 1 { Q::one() } else { Q::zero() }).collect())
                .collect(),
            Shape::Polygon(v) => v.clone(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Shape::Cube(d) => *d,
            Shape::Polygon(_) => 2,
        }
    }
}

/// The image of a standard shape under an affine map.
#[derive(Clone, Debug)]
pub struct Region {
    vertices: Vec<Vec<Q>>,
    boxed: bool,
}

impl Region {
    pub fn new(shape: &Shape, map: &AffineMap) -> Self {
        let vertices = shape.vertices().iter().map(|v| map.apply(v)).collect();
        Region { vertices, boxed: matches!(shape, Shape::Cube(_)) }
    }

    pub fn centroid(&self) -> Vec<Q> {
        let n = Q::from_integer(BigInt::from(self.vertices.len()));
        let d = self.vertices[0].len();
        (0..d)
            .map(|i| self.vertices.iter().map(|v| v[i].clone()).fold(Q::zero(), |a, b| a + b) / &n)
            .collect()
    }

    /// Closed containment of a point; `strict` asks for the interior.
    pub fn contains(&self, p: &[Q], strict: bool) -> bool {
        if self.boxed {
            let d = p.len();
            (0..d).all(|i| {
                let lo = self.vertices.iter().map(|v| &v[i]).min().unwrap();
                let hi = self.vertices.iter().map(|v| &v[i]).max().unwrap();
                if strict {
                    lo < &p[i] && &p[i] < hi
                } else {
                    lo <= &p[i] && &p[i] <= hi
                }
            })
        } else {
            let n = self.vertices.len();
            let mut pos = false;
            let mut neg = false;
            let mut zero = false;
            for i in 0..n {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                let cross = (&b[0] - &a[0]) * (&p[1] - &a[1]) - (&b[1] - &a[1]) * (&p[0] - &a[0]);
                if cross.is_positive() {
                    pos = true;
                } else if cross.is_negative() {
                    neg = true;
                } else {
                    zero = true;
                }
            }
            !(pos && neg) && !(strict && zero)
        }
    }

    pub fn contains_region(&self, other: &Region) -> bool {
        other.vertices.iter().all(|v| self.contains(v, false))
    }
}

/// An operation of a geometric operad: an ordered list of pieces, each an
/// input color with the embedding of its shape into the output shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineOp {
    pub(crate) output: Color,
    pub(crate) pieces: Vec<(Color, AffineMap)>,
}

impl AffineOp {
    pub fn new(output: Color, pieces: Vec<(Color, AffineMap)>) -> Self {
        Self { output, pieces }
    }

    pub fn identity(c: Color, d: usize) -> Self {
        Self { output: c, pieces: vec![(c, AffineMap::identity(d))] }
    }

    pub fn output(&self) -> Color {
        self.output
    }

    pub fn pieces(&self) -> &[(Color, AffineMap)] {
        &self.pieces
    }

    pub fn degree(&self) -> usize {
        self.pieces.len()
    }

    pub fn inputs(&self) -> ColorWord {
        self.pieces.iter().map(|(c, _)| *c).collect()
    }

    /// `(φ_1, …, φ_n) * self`.
    pub fn compose(phis: &[&AffineOp], theta: &AffineOp) -> AffineOp {
        let mut pieces = Vec::new();
        for (phi, (_, m)) in phis.iter().zip(&theta.pieces) {
            for (c, inner) in &phi.pieces {
                pieces.push((*c, m.after(inner)));
            }
        }
        AffineOp { output: theta.output, pieces }
    }

    /// `x·self` for a permutation given by its targets: input `i` of the
    /// result is input `targets[i]` of `self`.
    pub fn permute(&self, targets: &[usize]) -> AffineOp {
        AffineOp {
            output: self.output,
            pieces: targets.iter().map(|&t| self.pieces[t].clone()).collect(),
        }
    }

    pub fn regions(&self, shapes: &[Shape]) -> Vec<Region> {
        self.pieces.iter().map(|(c, m)| Region::new(&shapes[c.0 as usize], m)).collect()
    }
}

impl fmt::Display for AffineOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<-{{", self.output)?;
        for (i, (c, m)) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_q("-1/2").unwrap(), q(-1, 2));
        assert_eq!(parse_q("3").unwrap(), q(3, 1));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = AffineMap::new(
            vec![vec![q(-1, 2), q(1, 2)], vec![q(-1, 2), q(-1, 2)]],
            vec![q(1, 2), q(1, 2)],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.after(&inv).is_identity());
        assert!(inv.after(&m).is_identity());
    }

    #[test]
    fn two_cuts_of_two_cut_give_quarter_grid() {
        let c = Color(0);
        let cut2 = AffineOp::new(c, (0..2).map(|k| (c, AffineMap::slab(1, 0, k, 2))).collect());
        let grid = AffineOp::compose(&[&cut2, &cut2], &cut2);
        let cut4 = AffineOp::new(c, (0..4).map(|k| (c, AffineMap::slab(1, 0, k, 4))).collect());
        assert_eq!(grid, cut4);
    }

    #[test]
    fn polygon_containment() {
        let tri = Shape::Polygon(vec![vec![q(0, 1), q(0, 1)], vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
        let r = Region::new(&tri, &AffineMap::identity(2));
        assert!(r.contains(&[q(1, 4), q(1, 4)], true));
        assert!(r.contains(&[q(1, 2), q(1, 2)], false));
        assert!(!r.contains(&[q(1, 2), q(1, 2)], true));
        assert!(!r.contains(&[q(3, 4), q(1, 2)], false));
    }
}
