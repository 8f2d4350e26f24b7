//! Permutations of a finite domain `{0, .., degree-1}`.
//!
//! Products use the right-action convention: `a * b` applies `a` first, then
//! `b`. Conjugation is `a^b = b⁻¹ a b` and the commutator is
//! `[a, b] = a⁻¹ b⁻¹ a b`. Cycle notation is 1-based, as in the file format.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree || seen[i] {
                return Err(Error::NotBijection { degree });
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Parses 1-based cycle notation such as `"(1 2)(3 4 5)"` on `degree` points.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!(
                    "expected '(' at {:?} in {:?}",
                    rest.chars().next().unwrap(),
                    text
                )));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in {:?}", text)));
            };
            let mut cycle = Vec::new();
            for token in body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let point: usize = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {:?} in {:?}", token, text)))?;
                if point == 0 || point > degree {
                    return Err(Error::Parse(format!(
                        "point {} out of range 1..={} in {:?}",
                        point, degree, text
                    )));
                }
                if seen[point - 1] {
                    return Err(Error::Parse(format!(
                        "point {} repeated in {:?}",
                        point, text
                    )));
                }
                seen[point - 1] = true;
                cycle.push(point - 1);
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn multiply(&self, other: &Perm) -> Result<Perm> {
        check_degree(self, other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn commutator(&self, other: &Perm) -> Result<Perm> {
        check_degree(self, other)?;
        Ok(self
            .inverse()
            .mul_unchecked(&other.inverse())
            .mul_unchecked(self)
            .mul_unchecked(other))
    }

    /// `self^other = other⁻¹ * self * other`.
    pub fn conjugate(&self, other: &Perm) -> Result<Perm> {
        check_degree(self, other)?;
        Ok(other.inverse().mul_unchecked(self).mul_unchecked(other))
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut order = 1usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// 1-based disjoint cycles, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Embeds into a larger domain, shifting points by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[i + offset] = j + offset as u32;
        }
        Perm { images }
    }
}

fn check_degree(a: &Perm, b: &Perm) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

pub fn multiply(a: &Perm, b: &Perm) -> Result<Perm> {
    a.multiply(b)
}

pub fn inverse(a: &Perm) -> Perm {
    a.inverse()
}

pub fn commutator(a: &Perm, b: &Perm) -> Result<Perm> {
    a.commutator(b)
}

pub fn conjugate(a: &Perm, b: &Perm) -> Result<Perm> {
    a.conjugate(b)
}
