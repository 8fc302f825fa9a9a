//! Permutations of {0, .., n-1} stored as image arrays.
//!
//! Products follow the right-action convention: `compose(p, r)` applies `p`
//! first and then `r`.

use std::fmt;

use crate::error::{param, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= 256, "degree {n} above 256");
        Perm {
            images: (0..n).map(|a| a as u8).collect(),
        }
    }

    /// Validates that `images` is a bijection of {0, .., n-1}.
    pub fn from_images(images: Vec<u8>) -> Result<Perm> {
        let n = images.len();
        if n > 256 {
            return param(format!("degree {n} above 256"));
        }
        let mut seen = vec![false; n];
        for &a in &images {
            let a = usize::from(a);
            if a >= n || seen[a] {
                return param(format!("{images:?} is not a permutation"));
            }
            seen[a] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Perm {
        Perm { images }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Result<Perm> {
        let mut images: Vec<u8> = (0..n).map(|a| a as u8).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let a_idx = usize::from(a);
                if a_idx >= n || touched[a_idx] {
                    return param(format!("invalid cycle {cycle:?} for degree {n}"));
                }
                touched[a_idx] = true;
                images[a_idx] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn transposition(n: usize, a: u8, b: u8) -> Result<Perm> {
        if a == b {
            return param("transposition of a point with itself");
        }
        Perm::from_cycles(n, &[&[a, b]])
    }

    /// The n-cycle a -> a+1 (mod n).
    pub fn long_cycle(n: usize) -> Perm {
        Perm {
            images: (0..n).map(|a| ((a + 1) % n) as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: u8) -> u8 {
        self.images[usize::from(a)]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| a == usize::from(b))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            inv[usize::from(b)] = a as u8;
        }
        Perm { images: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                cycle.push(a as u8);
                a = usize::from(self.images[a]);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                a = usize::from(self.images[a]);
            }
        }
        if (n - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Parses `id`, cycle form `(0 2)(1 3)` or image form `[2,3,0,1]`.
    pub fn parse(text: &str, n: usize) -> Result<Perm> {
        let text = text.trim();
        let bad = |msg: String| Error::Parameter(format!("cannot parse permutation {text:?}: {msg}"));
        if text == "id" || text == "()" {
            return Ok(Perm::identity(n));
        }
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let images = inner
                .split(',')
                .map(|s| s.trim().parse::<u8>().map_err(|e| bad(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n {
                return Err(bad(format!("expected degree {n}, found {}", images.len())));
            }
            return Perm::from_images(images).map_err(|e| bad(e.to_string()));
        }
        if !text.starts_with('(') {
            return Err(bad("expected `id`, `(..)` or `[..]`".into()));
        }
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`".into()))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle".into()))?;
            let points = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u8>().map_err(|e| bad(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(points);
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[u8]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(n, &refs).map_err(|e| bad(e.to_string()))
    }
}

impl fmt::Display for Perm {
    /// Cycle form, or `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, a) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

/// The product "`p` then `r`": a maps to r(p(a)).
pub fn compose(p: &Perm, r: &Perm) -> Result<Perm> {
    if p.degree() != r.degree() {
        return param(format!("degrees {} and {} differ", p.degree(), r.degree()));
    }
    Ok(Perm {
        images: p.images.iter().map(|&a| r.apply(a)).collect(),
    })
}

pub fn inverse(p: &Perm) -> Perm {
    p.inverse()
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

fn check_group_cap(n: usize, cap: usize, halve: bool) -> Result<()> {
    let size = factorial(n).map(|f| if halve && n >= 2 { f / 2 } else { f });
    match size {
        Some(s) if s <= cap => Ok(()),
        _ => Err(Error::Resource(format!(
            "group of degree {n} exceeds element cap {cap}"
        ))),
    }
}

/// Advances `a` to the next permutation in lexicographic order.
fn next_permutation(a: &mut [u8]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).expect("pivot has a successor");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// All n! permutations, lexicographic by image array.
pub fn symmetric_group(n: usize, cap: usize) -> Result<Vec<Perm>> {
    check_group_cap(n, cap, false)?;
    let mut current: Vec<u8> = (0..n).map(|a| a as u8).collect();
    let mut out = vec![Perm {
        images: current.clone(),
    }];
    while next_permutation(&mut current) {
        out.push(Perm {
            images: current.clone(),
        });
    }
    Ok(out)
}

/// The even permutations, lexicographic by image array.
pub fn alternating_group(n: usize, cap: usize) -> Result<Vec<Perm>> {
    check_group_cap(n, cap, true)?;
    Ok(symmetric_group(n, usize::MAX)?
        .into_iter()
        .filter(Perm::is_even)
        .collect())
}
