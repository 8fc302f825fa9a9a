//! The Hamming graph H(m, q): vertices, distance, spheres and enumeration.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{param, Error, Result};

/// A vertex of H(m, q): an m-tuple over the alphabet {0, .., q-1}.
///
/// Vertices order lexicographically by their entries, so sorted collections of
/// vertices are canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    entries: Vec<u8>,
    q: u8,
}

impl Vertex {
    pub fn new(entries: Vec<u8>, q: usize) -> Result<Vertex> {
        if !(2..=256).contains(&q) {
            return param(format!("alphabet size {q} outside 2..=256"));
        }
        if entries.is_empty() {
            return param("vertex must have at least one entry");
        }
        if let Some(&bad) = entries.iter().find(|&&e| usize::from(e) >= q) {
            return param(format!("entry {bad} outside alphabet of size {q}"));
        }
        Ok(Vertex {
            entries,
            q: (q - 1) as u8,
        })
    }

    /// Builds a vertex from a digit string such as `"1100"`; only for q <= 10.
    pub fn from_digits(digits: &str, q: usize) -> Result<Vertex> {
        let entries = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parameter(format!("bad digit {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Vertex::new(entries, q)
    }

    pub(crate) fn new_unchecked(entries: Vec<u8>, q: usize) -> Vertex {
        debug_assert!(entries.iter().all(|&e| usize::from(e) < q));
        Vertex {
            entries,
            q: (q - 1) as u8,
        }
    }

    pub fn constant(symbol: u8, m: usize, q: usize) -> Result<Vertex> {
        Vertex::new(vec![symbol; m], q)
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn q(&self) -> usize {
        usize::from(self.q) + 1
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> u8 {
        self.entries[i]
    }

    /// Copy of this vertex with entry `i` replaced by `symbol`.
    pub fn with_entry(&self, i: usize, symbol: u8) -> Result<Vertex> {
        if i >= self.m() || usize::from(symbol) >= self.q() {
            return param(format!(
                "cannot set entry {i} to {symbol} in H({}, {})",
                self.m(),
                self.q()
            ));
        }
        let mut entries = self.entries.clone();
        entries[i] = symbol;
        Ok(Vertex { entries, q: self.q })
    }

    pub fn same_space(&self, other: &Vertex) -> bool {
        self.q == other.q && self.entries.len() == other.entries.len()
    }

    /// Rank of this vertex in the lexicographic enumeration of H(m, q).
    pub fn index(&self) -> usize {
        let q = self.q();
        self.entries.iter().fold(0, |acc, &e| acc * q + usize::from(e))
    }

    pub fn from_index(mut index: usize, m: usize, q: usize) -> Vertex {
        let mut entries = vec![0u8; m];
        for slot in entries.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        Vertex::new_unchecked(entries, q)
    }

    /// Iterator over the m(q-1) neighbours of this vertex.
    pub fn neighbours(&self) -> impl Iterator<Item = Vertex> + '_ {
        let q = self.q() as u8;
        (0..self.m()).flat_map(move |i| {
            (0..q).filter(move |&s| s != self.entries[i]).map(move |s| {
                let mut entries = self.entries.clone();
                entries[i] = s;
                Vertex { entries, q: self.q }
            })
        })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// Number of vertices q^m, or `None` on overflow.
pub fn vertex_count(m: usize, q: usize) -> Option<usize> {
    q.checked_pow(u32::try_from(m).ok()?)
}

pub(crate) fn check_vertex_cap(m: usize, q: usize, cap: usize) -> Result<usize> {
    match vertex_count(m, q) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::Resource(format!("H({m}, {q}) has more than {cap} vertices"))),
    }
}

/// Hamming distance: the number of entries in which `u` and `v` differ.
pub fn distance(u: &Vertex, v: &Vertex) -> Result<usize> {
    if !u.same_space(v) {
        return param(format!(
            "vertices from H({}, {}) and H({}, {})",
            u.m(),
            u.q(),
            v.m(),
            v.q()
        ));
    }
    Ok(raw_distance(&u.entries, &v.entries))
}

#[inline]
pub(crate) fn raw_distance(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Γ_r(c): the vertices at distance exactly `r` from `c`.
pub fn sphere(c: &Vertex, r: usize) -> Result<BTreeSet<Vertex>> {
    let m = c.m();
    if r > m {
        return param(format!("radius {r} exceeds length {m}"));
    }
    let q = c.q() as u8;
    let mut out = BTreeSet::new();
    let mut positions: Vec<usize> = (0..r).collect();
    loop {
        // every assignment of a different symbol to each chosen position
        let mut offsets = vec![1u8; r];
        loop {
            let mut entries = c.entries.clone();
            for (&p, &o) in positions.iter().zip(&offsets) {
                entries[p] = (entries[p] + o) % q;
            }
            out.insert(Vertex { entries, q: c.q });
            let Some(k) = offsets.iter().rposition(|&o| o + 1 < q) else {
                break;
            };
            offsets[k] += 1;
            offsets[k + 1..].iter_mut().for_each(|o| *o = 1);
        }
        let Some(k) = (0..r).rev().find(|&k| positions[k] < m - r + k) else {
            break;
        };
        positions[k] += 1;
        for t in k + 1..r {
            positions[t] = positions[t - 1] + 1;
        }
    }
    Ok(out)
}

/// All vertices of H(m, q) in lexicographic order.
pub fn all_vertices(m: usize, q: usize, cap: usize) -> Result<impl Iterator<Item = Vertex>> {
    if m == 0 || !(2..=256).contains(&q) {
        return param(format!("H({m}, {q}) is not a valid Hamming graph"));
    }
    let n = check_vertex_cap(m, q, cap)?;
    Ok((0..n).map(move |i| Vertex::from_index(i, m, q)))
}
