//! Quivers, dimension vectors and the Euler form.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

/// The supported presets: linearly oriented A_n, arrows i -> i+1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuiverPreset {
    A1,
    A2,
    A3,
    A4,
}

impl QuiverPreset {
    pub fn rank(self) -> usize {
        match self {
            QuiverPreset::A1 => 1,
            QuiverPreset::A2 => 2,
            QuiverPreset::A3 => 3,
            QuiverPreset::A4 => 4,
        }
    }

    pub fn quiver(self) -> Quiver {
        let n = self.rank();
        Quiver::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).expect("presets are acyclic")
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(QuiverPreset::A1),
            "a2" => Ok(QuiverPreset::A2),
            "a3" => Ok(QuiverPreset::A3),
            "a4" => Ok(QuiverPreset::A4),
            other => Err(Error::UnsupportedQuiver(other.to_string())),
        }
    }

    /// Recognize a quiver as one of the presets.
    pub fn identify(q: &Quiver) -> Result<Self> {
        let preset = match q.vertex_count() {
            1 => QuiverPreset::A1,
            2 => QuiverPreset::A2,
            3 => QuiverPreset::A3,
            4 => QuiverPreset::A4,
            n => return Err(Error::UnsupportedQuiver(format!("{n} vertices"))),
        };
        if preset.quiver() == *q {
            Ok(preset)
        } else {
            Err(Error::UnsupportedQuiver(format!("{q:?} is not a linear type-A preset")))
        }
    }
}

impl fmt::Display for QuiverPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.rank())
    }
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if s >= vertices || t >= vertices {
                return Err(Error::DimensionMismatch(format!(
                    "arrow ({s},{t}) out of range for {vertices} vertices"
                )));
            }
        }
        let q = Quiver { vertices, arrows };
        if q.topological_order().is_none() {
            return Err(Error::UnsupportedQuiver("quiver has an oriented cycle".into()));
        }
        Ok(q)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Vertices ordered so every arrow points forward; `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertices];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(self.vertices);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        (order.len() == self.vertices).then_some(order)
    }

    /// The Euler form: sum_v a_v b_v - sum_arrows a_s b_t.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| a.0[s] * b.0[t]).sum();
        Ok(diag - off)
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertices {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector {d} has length {}, quiver has {} vertices",
                d.len(),
                self.vertices
            )));
        }
        Ok(())
    }
}

/// Integer vector indexed by vertices; doubles as a K_0 class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = vec![0; n];
        d[v] = 1;
        DimVector(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        DimVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All nonnegative vectors componentwise below `self` (inclusive).
    pub fn lattice_below(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &bound in &self.0 {
            let mut next = Vec::new();
            for prefix in &out {
                for x in 0..=bound.max(0) {
                    let mut v = prefix.clone();
                    v.push(x);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimVector {
    type Output = DimVector;
    fn neg(self) -> DimVector {
        DimVector(self.0.iter().map(|a| -a).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_linear() {
        let q = QuiverPreset::A3.quiver();
        assert_eq!(q.arrows(), &[(0, 1), (1, 2)]);
        assert_eq!(QuiverPreset::identify(&q).unwrap(), QuiverPreset::A3);
    }

    #[test]
    fn rejects_cycles() {
        assert!(Quiver::new(2, vec![(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn euler_form_examples() {
        let q = QuiverPreset::A2.quiver();
        let s1 = DimVector(vec![1, 0]);
        let s2 = DimVector(vec![0, 1]);
        let p1 = DimVector(vec![1, 1]);
        assert_eq!(q.euler_form(&s1, &s2).unwrap(), -1);
        assert_eq!(q.euler_form(&p1, &p1).unwrap(), 1);
        assert_eq!(q.euler_form(&p1, &DimVector::zero(2)).unwrap(), 0);
        assert!(q.euler_form(&DimVector(vec![1]), &s1).is_err());
    }

    #[test]
    fn lattice_below_counts() {
        assert_eq!(DimVector(vec![2, 1]).lattice_below().len(), 6);
    }
}
