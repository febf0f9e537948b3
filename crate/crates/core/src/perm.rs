//! Permutations on `{0..degree}` acting on the right.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A bijection of `{0..degree}`; `p.0[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > u16::MAX as usize {
            return Err(Error::InvalidInput(format!("degree {degree} too large")));
        }
        let mut img: Vec<u16> = (0..degree as u16).collect();
        let mut seen = alloc::vec![false; degree];
        for cyc in cycles {
            for &pt in cyc {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidInput(format!(
                        "point {pt} outside 1..{degree}"
                    )));
                }
                if seen[pt - 1] {
                    return Err(Error::InvalidInput(format!(
                        "point {pt} repeated across cycles"
                    )));
                }
                seen[pt - 1] = true;
            }
            for (i, &pt) in cyc.iter().enumerate() {
                let next = cyc[(i + 1) % cyc.len()];
                img[pt - 1] = (next - 1) as u16;
            }
        }
        Ok(Perm(img))
    }

    /// Builds a permutation from an image list, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidInput("images do not form a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = alloc::vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u16;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Nontrivial cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.0[x] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&format!("{x}"));
            }
            s.push(')');
        }
        s
    }
}
