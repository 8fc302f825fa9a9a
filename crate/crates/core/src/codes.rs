//! Codes in H(m, q) and their metric and symmetry invariants.

use std::collections::{BTreeSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::autgroup::{self, Action, Automorphism, Group};
use crate::error::{param, Error, Result};
use crate::hamming::{check_vertex_cap, raw_distance, Vertex};

/// A non-empty set of vertices of H(m, q), kept sorted and duplicate-free.
#[derive(Clone, Debug)]
pub struct Code {
    m: usize,
    q: usize,
    words: Vec<Vertex>,
    min_distance: OnceLock<Option<usize>>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Code) -> bool {
        self.m == other.m && self.q == other.q && self.words == other.words
    }
}

impl Eq for Code {}

impl Hash for Code {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.q.hash(state);
        self.words.hash(state);
    }
}

impl Code {
    /// Builds a code from codewords; duplicates collapse.
    pub fn new(words: impl IntoIterator<Item = Vertex>) -> Result<Code> {
        let mut words: Vec<Vertex> = words.into_iter().collect();
        let Some(first) = words.first() else {
            return Err(Error::Parameter("a code needs at least one codeword".into()));
        };
        let (m, q) = (first.m(), first.q());
        if words.iter().any(|w| w.m() != m || w.q() != q) {
            return param("codewords from different Hamming graphs");
        }
        words.sort_unstable();
        words.dedup();
        Ok(Code {
            m,
            q,
            words,
            min_distance: OnceLock::new(),
        })
    }

    pub fn from_set(words: &BTreeSet<Vertex>) -> Result<Code> {
        Code::new(words.iter().cloned())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vertex] {
        &self.words
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.words.binary_search(v).is_ok()
    }

    pub fn to_set(&self) -> BTreeSet<Vertex> {
        self.words.iter().cloned().collect()
    }

    fn check_vertex(&self, v: &Vertex) -> Result<()> {
        if v.m() != self.m || v.q() != self.q {
            return param(format!("vertex outside H({}, {})", self.m, self.q));
        }
        Ok(())
    }

    /// δ: least distance between distinct codewords.
    pub fn min_distance(&self) -> Result<usize> {
        let cached = self.min_distance.get_or_init(|| {
            let mut best: Option<usize> = None;
            for (i, a) in self.words.iter().enumerate() {
                for b in &self.words[i + 1..] {
                    let d = raw_distance(a.entries(), b.entries());
                    best = Some(best.map_or(d, |x| x.min(d)));
                }
                if best == Some(1) {
                    break;
                }
            }
            best
        });
        cached.ok_or_else(|| Error::UndefinedInvariant("minimum distance of a single codeword".into()))
    }

    /// d(v, C) for every vertex, indexed by lexicographic rank (breadth-first
    /// search from the code).
    pub fn distance_layers(&self, cap: usize) -> Result<Vec<u8>> {
        let n = check_vertex_cap(self.m, self.q, cap)?;
        let mut dist = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for w in &self.words {
            dist[w.index()] = 0;
            queue.push_back(w.index());
        }
        let (m, q) = (self.m, self.q);
        let mut powers = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            powers[i] = powers[i + 1] * q;
        }
        while let Some(idx) = queue.pop_front() {
            let d = dist[idx];
            for &pw in &powers {
                let digit = (idx / pw) % q;
                let base = idx - digit * pw;
                for s in 0..q {
                    let next = base + s * pw;
                    if s != digit && dist[next] == u8::MAX {
                        dist[next] = d + 1;
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(dist)
    }

    /// ρ: the largest distance from a vertex to the code.
    pub fn covering_radius(&self, cap: usize) -> Result<usize> {
        let layers = self.distance_layers(cap)?;
        Ok(layers.into_iter().map(usize::from).max().unwrap_or(0))
    }

    /// Γ_1(C): vertices outside C adjacent to some codeword.
    pub fn neighbour_set(&self) -> BTreeSet<Vertex> {
        self.words
            .iter()
            .flat_map(|w| w.neighbours())
            .filter(|v| !self.contains(v))
            .collect()
    }

    /// Γ_r(C): vertices at distance exactly r from the code.
    pub fn gamma_r(&self, r: usize, cap: usize) -> Result<BTreeSet<Vertex>> {
        let layers = self.distance_layers(cap)?;
        Ok(layers
            .iter()
            .enumerate()
            .filter(|(_, &d)| usize::from(d) == r)
            .map(|(i, _)| Vertex::from_index(i, self.m, self.q))
            .collect())
    }

    /// d(v, C).
    pub fn distance_to(&self, v: &Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self
            .words
            .iter()
            .map(|w| raw_distance(w.entries(), v.entries()))
            .min()
            .unwrap_or(0))
    }

    /// C^x.
    pub fn image(&self, x: &Automorphism) -> Result<Code> {
        if x.m() != self.m || x.q() != self.q {
            return param(format!("automorphism outside Aut(H({}, {}))", self.m, self.q));
        }
        let words: Vec<Vertex> = self.words.iter().map(|w| x_apply(x, w)).collect();
        let code = Code::new(words)?;
        if let Some(&d) = self.min_distance.get() {
            let _ = code.min_distance.set(d);
        }
        Ok(code)
    }

    pub fn union(&self, other: &Code) -> Result<Code> {
        if self.m != other.m || self.q != other.q {
            return param(format!(
                "union of codes in H({}, {}) and H({}, {})",
                self.m, self.q, other.m, other.q
            ));
        }
        Code::new(self.words.iter().chain(&other.words).cloned())
    }

    /// Codewords common to both codes, or `None` when they are disjoint.
    pub fn intersection(&self, other: &Code) -> Option<Code> {
        let common: Vec<Vertex> = self.words.iter().filter(|w| other.contains(w)).cloned().collect();
        Code::new(common).ok()
    }
}

fn x_apply(x: &Automorphism, v: &Vertex) -> Vertex {
    autgroup::apply(x, v).expect("dimensions checked by caller")
}

impl Action for Code {
    fn act(&self, x: &Automorphism) -> Result<Code> {
        self.image(x)
    }
}

/// Whether S^x = S.
pub fn fixes_setwise(x: &Automorphism, set: &BTreeSet<Vertex>) -> Result<bool> {
    for v in set {
        if !set.contains(&autgroup::apply(x, v)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether ⟨gens⟩ is transitive on `set`; every generator must fix `set`.
pub fn is_transitive(gens: &[Automorphism], set: &BTreeSet<Vertex>) -> Result<bool> {
    for (k, g) in gens.iter().enumerate() {
        if !fixes_setwise(g, set)? {
            return Err(Error::Precondition(format!("generator {k} does not fix the set")));
        }
    }
    let Some(first) = set.first() else {
        return Ok(true);
    };
    Ok(autgroup::orbit(gens, first, set.len() + 1)?.len() == set.len())
}

/// {x in G : S^x = S}, fully enumerated.
pub fn setwise_stabiliser(group: &Group, set: &BTreeSet<Vertex>) -> Result<Group> {
    let elements = group.require_elements()?;
    let kept: Vec<Automorphism> = elements
        .par_iter()
        .filter_map(|x| match fixes_setwise(x, set) {
            Ok(true) => Some(Ok(x.clone())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    Ok(Group::from_elements(group.m(), group.q(), kept))
}

/// Some y in G with C^y = C', or `None`. The first such y in the group's
/// element order is returned.
pub fn are_equivalent(c: &Code, other: &Code, group: &Group) -> Result<Option<Automorphism>> {
    let elements = group.require_elements()?;
    if c.m != other.m || c.q != other.q || c.len() != other.len() {
        return Ok(None);
    }
    let target = other.to_set();
    let hit = elements.par_iter().find_first(|y| {
        c.words
            .iter()
            .all(|w| autgroup::apply(y, w).map(|img| target.contains(&img)).unwrap_or(false))
    });
    Ok(hit.cloned())
}

/// Whether ⟨gens⟩ fixes C and is transitive on both C and Γ_1(C).
pub fn is_neighbour_transitive(gens: &[Automorphism], c: &Code) -> Result<bool> {
    let words = c.to_set();
    for g in gens {
        if !fixes_setwise(g, &words)? {
            return Ok(false);
        }
    }
    let neighbours = c.neighbour_set();
    Ok(is_transitive(gens, &words)? && is_transitive(gens, &neighbours)?)
}
