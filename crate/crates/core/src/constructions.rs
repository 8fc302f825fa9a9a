//! Code families: permutation codes, product codes, the parity subcode
//! C(q, l), repetition codes, and the neighbour formulas ν and μ.

use crate::codes::Code;
use crate::error::{param, Error, Result};
use crate::hamming::{raw_distance, Vertex};
use crate::perms::{self, Perm};

/// Which set of permutations a permutation code is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermSource {
    Explicit(Vec<Perm>),
    Symmetric,
    Alternating,
    /// S_q \ A_q.
    OddCoset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCodeSpec {
    pub q: usize,
    pub source: PermSource,
}

impl PermCodeSpec {
    pub fn new(q: usize, source: PermSource) -> PermCodeSpec {
        PermCodeSpec { q, source }
    }

    /// The permutations T, in lexicographic order for named sources.
    pub fn permutations(&self, cap: usize) -> Result<Vec<Perm>> {
        let q = self.q;
        match &self.source {
            PermSource::Explicit(list) => {
                if list.iter().any(|g| g.degree() != q) {
                    return param(format!("explicit permutation of degree other than {q}"));
                }
                let mut sorted = list.clone();
                sorted.sort();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return param("explicit permutation list has repeats");
                }
                Ok(list.clone())
            }
            PermSource::Symmetric => perms::symmetric_group(q, cap),
            PermSource::Alternating => perms::alternating_group(q, cap),
            PermSource::OddCoset => {
                let odd: Vec<Perm> = perms::symmetric_group(q, cap.saturating_mul(2))?
                    .into_iter()
                    .filter(|g| !g.is_even())
                    .collect();
                if odd.len() > cap {
                    return Err(Error::Resource(format!("S_{q} \\ A_{q} exceeds cap {cap}")));
                }
                Ok(odd)
            }
        }
    }

    pub fn family_name(&self) -> String {
        match self.source {
            PermSource::Explicit(_) => format!("C(T) q={}", self.q),
            PermSource::Symmetric => format!("C(S_{})", self.q),
            PermSource::Alternating => format!("C(A_{})", self.q),
            PermSource::OddCoset => format!("C(S_{0} \\ A_{0})", self.q),
        }
    }
}

/// α(g) = (g(0), .., g(q-1)) in H(q, q).
pub fn perm_vertex(g: &Perm) -> Result<Vertex> {
    Vertex::new(g.images().to_vec(), g.degree())
}

/// C(T) = {α(g) : g in T}.
pub fn perm_code(spec: &PermCodeSpec, cap: usize) -> Result<Code> {
    let perms = spec.permutations(cap)?;
    let words = perms.iter().map(perm_vertex).collect::<Result<Vec<_>>>()?;
    Code::new(words)
}

/// ν(α(g), i, j): α(g) with entry i replaced by g(j).
pub fn nu(g: &Perm, i: u8, j: u8) -> Result<Vertex> {
    let q = g.degree();
    if i == j || usize::from(i) >= q || usize::from(j) >= q {
        return param(format!("ν needs distinct symbols below {q}, got {i} and {j}"));
    }
    perm_vertex(g)?.with_entry(usize::from(i), g.apply(j))
}

fn product_size(base: usize, l: usize, cap: usize) -> Result<usize> {
    match u32::try_from(l).ok().and_then(|l| base.checked_pow(l)) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::Resource(format!("{base}^{l} codewords exceed cap {cap}"))),
    }
}

/// Calls `f` on every l-tuple of indices into a list of length `base`, in
/// lexicographic order.
fn for_each_tuple(base: usize, l: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = vec![0usize; l];
    loop {
        f(&digits);
        let Some(k) = digits.iter().rposition(|&d| d + 1 < base) else {
            return;
        };
        digits[k] += 1;
        digits[k + 1..].iter_mut().for_each(|d| *d = 0);
    }
}

fn concat(parts: &[&Vertex]) -> Result<Vertex> {
    let q = parts[0].q();
    let entries: Vec<u8> = parts.iter().flat_map(|v| v.entries().iter().copied()).collect();
    if entries.len() > 256 {
        return param("product length above 256");
    }
    Vertex::new(entries, q)
}

/// Prod(C, l): all concatenations of l codewords; block k holds coordinates
/// km..km+m-1.
pub fn product_code(c: &Code, l: usize, cap: usize) -> Result<Code> {
    if l == 0 {
        return param("product power must be positive");
    }
    product_size(c.len(), l, cap)?;
    let words = c.words();
    let mut out = Vec::new();
    let mut err = None;
    for_each_tuple(words.len(), l, |digits| {
        let parts: Vec<&Vertex> = digits.iter().map(|&d| &words[d]).collect();
        match concat(&parts) {
            Ok(v) => out.push(v),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Code::new(out)
}

/// μ(α, ν, i): the concatenation of `blocks` with block `i` replaced by `nu`,
/// which must be adjacent to `blocks[i]`.
pub fn mu(blocks: &[Vertex], nu: &Vertex, i: usize) -> Result<Vertex> {
    let Some(target) = blocks.get(i) else {
        return param(format!("block index {i} out of range"));
    };
    if !target.same_space(nu) || blocks.iter().any(|b| !b.same_space(target)) {
        return param("blocks and ν must share a Hamming graph");
    }
    if raw_distance(target.entries(), nu.entries()) != 1 {
        return param("ν is not adjacent to the replaced block");
    }
    let parts: Vec<&Vertex> = blocks
        .iter()
        .enumerate()
        .map(|(k, b)| if k == i { nu } else { b })
        .collect();
    concat(&parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockParity {
    /// C(q, l): an even number of blocks come from even permutations.
    Even,
    /// C'(q, l): an odd number.
    Odd,
}

/// C(q, l) or C'(q, l) as a filter of Prod(C(S_q), l).
pub fn parity_code(q: usize, l: usize, parity: BlockParity, cap: usize) -> Result<Code> {
    if l == 0 {
        return param("product power must be positive");
    }
    let sq = perms::symmetric_group(q, cap)?;
    product_size(sq.len(), l, cap)?;
    let vertices = sq.iter().map(perm_vertex).collect::<Result<Vec<_>>>()?;
    let even: Vec<bool> = sq.iter().map(Perm::is_even).collect();
    let want = match parity {
        BlockParity::Even => 0,
        BlockParity::Odd => 1,
    };
    let mut out = Vec::new();
    let mut err = None;
    for_each_tuple(sq.len(), l, |digits| {
        let evens = digits.iter().filter(|&&d| even[d]).count();
        if evens % 2 == want {
            let parts: Vec<&Vertex> = digits.iter().map(|&d| &vertices[d]).collect();
            match concat(&parts) {
                Ok(v) => out.push(v),
                Err(e) => err = Some(e),
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Code::new(out)
}

/// Rep(m, q) = {(a, .., a) : a in Q}.
pub fn rep_code(m: usize, q: usize) -> Result<Code> {
    if q > 256 {
        return param("alphabet above 256");
    }
    let words = (0..q)
        .map(|a| Vertex::constant(a as u8, m, q))
        .collect::<Result<Vec<_>>>()?;
    Code::new(words)
}

pub fn union_code(a: &Code, b: &Code) -> Result<Code> {
    a.union(b)
}
