//! Permutations of `{1..n}` in image-array form, with cycle-notation I/O.
//!
//! Composition is functional: `p * q` applies `q` first, then `p`.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 1..{degree}: {reason}")]
    NotAPermutation { degree: usize, reason: String },
    #[error("malformed cycle notation `{0}`")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// From a zero-based image array.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotAPermutation {
                    degree: n,
                    reason: format!("image array {:?}", images),
                });
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// From one-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(PermError::NotAPermutation {
                        degree,
                        reason: format!("point {} out of range", p),
                    });
                }
                if used[p - 1] {
                    return Err(PermError::NotAPermutation {
                        degree,
                        reason: format!("point {} repeated", p),
                    });
                }
                used[p - 1] = true;
                img[p - 1] = (cyc[(k + 1) % cyc.len()] - 1) as u32;
            }
        }
        Ok(Perm(img))
    }

    /// Parses `(1 2)(3 4)`; `()` is the identity. Points are separated by
    /// whitespace or commas.
    pub fn parse(degree: usize, text: &str) -> Result<Self, PermError> {
        let s = text.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        if rest.is_empty() {
            return Err(PermError::Syntax(text.to_string()));
        }
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let body = &open[..close];
            if body.contains('(') {
                return Err(PermError::Syntax(text.to_string()));
            }
            let pts = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PermError::Syntax(text.to_string()))?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Zero-based image of a zero-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            r[p as usize] = i as u32;
        }
        Perm(r)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Non-trivial cycles, one-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p + 1);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
