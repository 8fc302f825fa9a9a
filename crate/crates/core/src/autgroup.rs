//! Automorphisms of H(m, q) as elements (g_1, .., g_m; σ) of S_q^m ⋊ S_m.
//!
//! An automorphism acts on the right: entry i is first mapped by g_i, then the
//! entries are moved by σ, so the entry at position i lands at position σ(i).
//! `compose(x, y)` is "x then y".

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{param, Error, Result};
use crate::hamming::Vertex;
use crate::perms::{self, Perm};

/// An automorphism in (g; σ) normal form.
///
/// Stored flat: the m coordinate permutations (each of degree q) followed by
/// the position permutation. The flat array doubles as the canonical key, so
/// the derived order is the deterministic enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    m: usize,
    q: usize,
    data: Vec<u8>,
}

impl Automorphism {
    pub fn identity(m: usize, q: usize) -> Automorphism {
        let mut data = Vec::with_capacity(m * q + m);
        for _ in 0..m {
            data.extend((0..q).map(|a| a as u8));
        }
        data.extend((0..m).map(|i| i as u8));
        Automorphism { m, q, data }
    }

    pub fn new(coord_maps: &[Perm], position_map: &Perm) -> Result<Automorphism> {
        let m = coord_maps.len();
        if m == 0 || position_map.degree() != m {
            return param(format!(
                "{} coordinate maps but position map of degree {}",
                m,
                position_map.degree()
            ));
        }
        let q = coord_maps[0].degree();
        if q < 2 || coord_maps.iter().any(|g| g.degree() != q) {
            return param("coordinate maps must share a degree of at least 2");
        }
        let mut data = Vec::with_capacity(m * q + m);
        for g in coord_maps {
            data.extend_from_slice(g.images());
        }
        data.extend_from_slice(position_map.images());
        Ok(Automorphism { m, q, data })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Image array of the coordinate permutation g_i.
    pub fn coord_map(&self, i: usize) -> &[u8] {
        &self.data[i * self.q..(i + 1) * self.q]
    }

    pub fn coord_maps(&self) -> Vec<Perm> {
        (0..self.m)
            .map(|i| Perm::from_images_unchecked(self.coord_map(i).to_vec()))
            .collect()
    }

    /// Image array of σ.
    pub fn positions(&self) -> &[u8] {
        &self.data[self.m * self.q..]
    }

    pub fn position_map(&self) -> Perm {
        Perm::from_images_unchecked(self.positions().to_vec())
    }

    /// Canonical key: concatenated image arrays of (g_1, .., g_m, σ).
    pub fn key(&self) -> &[u8] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        *self == Automorphism::identity(self.m, self.q)
    }

    fn check_vertex(&self, v: &Vertex) -> Result<()> {
        if v.m() != self.m || v.q() != self.q {
            return param(format!(
                "automorphism of H({}, {}) applied to a vertex of H({}, {})",
                self.m,
                self.q,
                v.m(),
                v.q()
            ));
        }
        Ok(())
    }

    /// Writes the image of `src` into `dst` (both of length m).
    #[inline]
    pub fn apply_raw(&self, src: &[u8], dst: &mut [u8]) {
        let pos = self.positions();
        for (i, &a) in src.iter().enumerate() {
            dst[usize::from(pos[i])] = self.data[i * self.q + usize::from(a)];
        }
    }

    pub(crate) fn apply_unchecked(&self, v: &Vertex) -> Vertex {
        let mut out = vec![0u8; self.m];
        self.apply_raw(v.entries(), &mut out);
        Vertex::new_unchecked(out, self.q)
    }

    fn check_same(&self, other: &Automorphism) -> Result<()> {
        if self.m != other.m || self.q != other.q {
            return param(format!(
                "automorphisms of H({}, {}) and H({}, {})",
                self.m, self.q, other.m, other.q
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Automorphism {
    /// `g: <perm>,..,<perm> ; sigma: <perm>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("g: ")?;
        for (i, g) in self.coord_maps().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " ; sigma: {}", self.position_map())
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism[{self}]")
    }
}

/// Image of `v` under `x`.
pub fn apply(x: &Automorphism, v: &Vertex) -> Result<Vertex> {
    x.check_vertex(v)?;
    Ok(x.apply_unchecked(v))
}

/// The product "`x` then `y`".
pub fn compose(x: &Automorphism, y: &Automorphism) -> Result<Automorphism> {
    x.check_same(y)?;
    let (m, q) = (x.m, x.q);
    let mut data = Vec::with_capacity(m * q + m);
    let xpos = x.positions();
    for (i, &target) in xpos.iter().enumerate() {
        let target = usize::from(target);
        let h = y.coord_map(target);
        data.extend(x.coord_map(i).iter().map(|&a| h[usize::from(a)]));
    }
    let ypos = y.positions();
    data.extend(xpos.iter().map(|&p| ypos[usize::from(p)]));
    Ok(Automorphism { m, q, data })
}

pub fn inverse(x: &Automorphism) -> Automorphism {
    let (m, q) = (x.m, x.q);
    let pos = x.positions();
    let mut inv_pos = vec![0u8; m];
    for (i, &p) in pos.iter().enumerate() {
        inv_pos[usize::from(p)] = i as u8;
    }
    let mut data = Vec::with_capacity(m * q + m);
    for &src in &inv_pos {
        let g = x.coord_map(usize::from(src));
        let mut inv = vec![0u8; q];
        for (a, &b) in g.iter().enumerate() {
            inv[usize::from(b)] = a as u8;
        }
        data.extend(inv);
    }
    data.extend(inv_pos);
    Automorphism { m, q, data }
}

/// x_y = (y, .., y) with trivial position map.
pub fn diag(y: &Perm, m: usize) -> Result<Automorphism> {
    if m == 0 {
        return param("length must be positive");
    }
    Automorphism::new(&vec![y.clone(); m], &Perm::identity(m))
}

/// σ(z): the position permutation z with identity coordinate maps.
pub fn top(z: &Perm, q: usize) -> Result<Automorphism> {
    if q < 2 {
        return param("alphabet size must be at least 2");
    }
    Automorphism::new(&vec![Perm::identity(q); z.degree()], z)
}

/// Embeds `parts` (automorphisms of H(m, q)) and a block permutation of
/// degree l into Aut(H(lm, q)).
///
/// Block k occupies coordinates km..km+m-1. Part k acts inside block k, then
/// block k moves to block `block_perm(k)`.
pub fn wreath_embed(parts: &[Automorphism], block_perm: &Perm) -> Result<Automorphism> {
    let l = parts.len();
    if l == 0 || block_perm.degree() != l {
        return param(format!(
            "{l} parts but block permutation of degree {}",
            block_perm.degree()
        ));
    }
    let (m, q) = (parts[0].m, parts[0].q);
    if parts.iter().any(|x| x.m != m || x.q != q) {
        return param("wreath parts act on different Hamming graphs");
    }
    if l * m > 256 {
        return param("embedded length above 256");
    }
    let mut data = Vec::with_capacity(l * m * q + l * m);
    for x in parts {
        for i in 0..m {
            data.extend_from_slice(x.coord_map(i));
        }
    }
    for (k, x) in parts.iter().enumerate() {
        let block = usize::from(block_perm.apply(k as u8));
        data.extend(x.positions().iter().map(|&p| (block * m + usize::from(p)) as u8));
    }
    Ok(Automorphism { m: l * m, q, data })
}

/// A subgroup of Aut(H(m, q)) given by generators and, when enumerated, by
/// its full element list sorted by canonical key.
#[derive(Clone, Debug)]
pub struct Group {
    m: usize,
    q: usize,
    generators: Vec<Automorphism>,
    elements: Option<Vec<Automorphism>>,
}

impl Group {
    pub fn from_generators(m: usize, q: usize, generators: Vec<Automorphism>) -> Result<Group> {
        if generators.iter().any(|g| g.m != m || g.q != q) {
            return param(format!("generator outside Aut(H({m}, {q}))"));
        }
        Ok(Group {
            m,
            q,
            generators,
            elements: None,
        })
    }

    /// Wraps an element list already known to be a group; used for subgroups
    /// obtained by filtering an enumerated group.
    pub(crate) fn from_elements(m: usize, q: usize, mut elements: Vec<Automorphism>) -> Group {
        elements.sort();
        Group {
            m,
            q,
            generators: elements.clone(),
            elements: Some(elements),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Automorphism]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    pub(crate) fn require_elements(&self) -> Result<&[Automorphism]> {
        self.elements()
            .ok_or_else(|| Error::Resource("group is not enumerated under the configured cap".into()))
    }
}

/// Closure of `gens` by breadth-first right multiplication.
///
/// When the closure exceeds `cap` elements the returned group carries only
/// its generators.
pub fn generate_group(m: usize, q: usize, gens: &[Automorphism], cap: usize) -> Result<Group> {
    let mut group = Group::from_generators(m, q, gens.to_vec())?;
    let identity = Automorphism::identity(m, q);
    let mut seen: HashSet<Automorphism> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g)?;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Ok(group);
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<_> = seen.into_iter().collect();
    elements.sort();
    group.elements = Some(elements);
    Ok(group)
}

/// Something automorphisms act on: vertices and sets of vertices.
pub trait Action: Sized {
    fn act(&self, x: &Automorphism) -> Result<Self>;
}

impl Action for Vertex {
    fn act(&self, x: &Automorphism) -> Result<Vertex> {
        apply(x, self)
    }
}

impl Action for BTreeSet<Vertex> {
    fn act(&self, x: &Automorphism) -> Result<BTreeSet<Vertex>> {
        self.iter().map(|v| apply(x, v)).collect()
    }
}

/// Orbit of `seed` under the group generated by `gens` (automorphisms of
/// H(m, q)), in breadth-first order, each point paired with a group element
/// mapping `seed` onto it.
pub fn orbit_with_transversal<T>(
    m: usize,
    q: usize,
    gens: &[Automorphism],
    seed: &T,
    cap: usize,
) -> Result<Vec<(T, Automorphism)>>
where
    T: Action + Clone + Eq + Hash,
{
    let mut seen: HashSet<T> = HashSet::from([seed.clone()]);
    let mut out = vec![(seed.clone(), Automorphism::identity(m, q))];
    let mut head = 0;
    while head < out.len() {
        for g in gens {
            let image = out[head].0.act(g)?;
            if seen.contains(&image) {
                continue;
            }
            if out.len() >= cap {
                return Err(Error::Resource(format!("orbit exceeds cap {cap}")));
            }
            let word = compose(&out[head].1, g)?;
            seen.insert(image.clone());
            out.push((image, word));
        }
        head += 1;
    }
    Ok(out)
}

/// Orbit of `seed` under ⟨gens⟩ in breadth-first order.
pub fn orbit<T>(gens: &[Automorphism], seed: &T, cap: usize) -> Result<Vec<T>>
where
    T: Action + Clone + Eq + Hash,
{
    let mut seen: HashSet<T> = HashSet::from([seed.clone()]);
    let mut out = vec![seed.clone()];
    let mut head = 0;
    while head < out.len() {
        for g in gens {
            let image = out[head].act(g)?;
            if seen.insert(image.clone()) {
                if out.len() >= cap {
                    return Err(Error::Resource(format!("orbit exceeds cap {cap}")));
                }
                out.push(image);
            }
        }
        head += 1;
    }
    Ok(out)
}

/// Orbits of ⟨gens⟩ on the vertex set `points`, which the generators must
/// map into itself. Orbits come out in order of their least member.
pub fn vertex_orbits(gens: &[Automorphism], points: &BTreeSet<Vertex>) -> Result<Vec<BTreeSet<Vertex>>> {
    let mut remaining = points.clone();
    let mut out = Vec::new();
    while let Some(first) = remaining.pop_first() {
        let orb: BTreeSet<Vertex> = orbit(gens, &first, usize::MAX)?.into_iter().collect();
        for v in &orb {
            if v != &first && !remaining.remove(v) {
                return Err(Error::Precondition(format!(
                    "generators move {v:?} outside the point set"
                )));
            }
        }
        out.push(orb);
    }
    Ok(out)
}

fn symmetric_generators(n: usize) -> Vec<Perm> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![Perm::long_cycle(2)],
        _ => vec![
            Perm::transposition(n, 0, 1).expect("degree at least 2"),
            Perm::long_cycle(n),
        ],
    }
}

/// Generators of Diag_m(S_q) ⋊ S_m. For m = q this is the group Diag_q(S_q) ⋊ L
/// acting on permutation codes.
pub fn diag_top_generators(m: usize, q: usize) -> Result<Vec<Automorphism>> {
    let mut gens = Vec::new();
    for y in symmetric_generators(q) {
        gens.push(diag(&y, m)?);
    }
    for z in symmetric_generators(m) {
        gens.push(top(&z, q)?);
    }
    Ok(gens)
}

/// Generators of X ≀ S_l in Aut(H(lm, q)) for X = ⟨`base`⟩ ≤ Aut(H(m, q)).
pub fn wreath_generators(base: &[Automorphism], m: usize, q: usize, l: usize) -> Result<Vec<Automorphism>> {
    if l == 0 {
        return param("wreath power must be positive");
    }
    let id = Automorphism::identity(m, q);
    let mut gens = Vec::new();
    for x in base {
        let mut parts = vec![id.clone(); l];
        parts[0] = x.clone();
        gens.push(wreath_embed(&parts, &Perm::identity(l))?);
    }
    for s in symmetric_generators(l) {
        gens.push(wreath_embed(&vec![id.clone(); l], &s)?);
    }
    Ok(gens)
}

/// Generators of the full group Aut(H(m, q)).
pub fn full_generators(m: usize, q: usize) -> Result<Vec<Automorphism>> {
    let mut gens = Vec::new();
    for y in symmetric_generators(q) {
        let mut maps = vec![Perm::identity(q); m];
        maps[0] = y;
        gens.push(Automorphism::new(&maps, &Perm::identity(m))?);
    }
    for z in symmetric_generators(m) {
        gens.push(top(&z, q)?);
    }
    Ok(gens)
}

/// |Aut(H(m, q))| = (q!)^m · m!, or `None` on overflow.
pub fn full_group_order(m: usize, q: usize) -> Option<usize> {
    let fact = |n: usize| (1..=n).try_fold(1usize, |a, k| a.checked_mul(k));
    fact(q)?.checked_pow(u32::try_from(m).ok()?)?.checked_mul(fact(m)?)
}

/// Aut(H(m, q)) enumerated directly as a product of coordinate and position
/// permutations.
pub fn full_group(m: usize, q: usize, cap: usize) -> Result<Group> {
    match full_group_order(m, q) {
        Some(n) if n <= cap => {}
        _ => return Err(Error::Resource(format!("Aut(H({m}, {q})) exceeds group cap {cap}"))),
    }
    let sq = perms::symmetric_group(q, usize::MAX)?;
    let sm = perms::symmetric_group(m, usize::MAX)?;
    let mut elements = Vec::new();
    let mut digits = vec![0usize; m];
    loop {
        let maps: Vec<Perm> = digits.iter().map(|&d| sq[d].clone()).collect();
        for sigma in &sm {
            elements.push(Automorphism::new(&maps, sigma)?);
        }
        let Some(k) = digits.iter().rposition(|&d| d + 1 < sq.len()) else {
            break;
        };
        digits[k] += 1;
        digits[k + 1..].iter_mut().for_each(|d| *d = 0);
    }
    let mut group = Group::from_elements(m, q, elements);
    group.generators = full_generators(m, q)?;
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::{all_vertices, distance};

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse(text, n).unwrap()
    }

    fn v(d: &str, q: usize) -> Vertex {
        Vertex::from_digits(d, q).unwrap()
    }

    /// α(g) = (g(0), .., g(q-1)).
    fn alpha(g: &Perm) -> Vertex {
        Vertex::new(g.images().to_vec(), g.degree()).unwrap()
    }

    #[test]
    fn identity_action() {
        let id = Automorphism::identity(4, 3);
        assert_eq!(apply(&id, &v("1202", 3)).unwrap(), v("1202", 3));
        assert!(apply(&id, &v("120", 3)).is_err());
    }

    #[test]
    fn exceptional_element_q4() {
        // (1,1,h,h) with h = (13)(24) maps 1-based (1,1,3,4) to (1,1,1,2)
        let h = p("(0 2)(1 3)", 4);
        let id = Perm::identity(4);
        let x = Automorphism::new(&[id.clone(), id, h.clone(), h], &Perm::identity(4)).unwrap();
        assert_eq!(apply(&x, &v("0023", 4)).unwrap(), v("0001", 4));
    }

    #[test]
    fn diag_acts_on_the_right() {
        // α(g)^{x_y} = α(g y)
        let y = p("(0 1)", 3);
        let x = diag(&y, 3).unwrap();
        for g in perms::symmetric_group(3, 10).unwrap() {
            let gy = perms::compose(&g, &y).unwrap();
            assert_eq!(apply(&x, &alpha(&g)).unwrap(), alpha(&gy));
        }
        assert_eq!(apply(&x, &alpha(&Perm::identity(3))).unwrap(), alpha(&y));
        assert!(diag(&Perm::identity(3), 4).unwrap().is_identity());
    }

    #[test]
    fn top_moves_positions() {
        // α(g)^{σ(z)} = α(z^{-1} g)
        let z = p("(0 1)", 3);
        let x = top(&z, 3).unwrap();
        assert!(top(&Perm::identity(3), 3).unwrap().is_identity());
        for g in perms::symmetric_group(3, 10).unwrap() {
            let zg = perms::compose(&z.inverse(), &g).unwrap();
            assert_eq!(apply(&x, &alpha(&g)).unwrap(), alpha(&zg));
        }
        let w = top(&p("(0 1 2)", 3), 3).unwrap();
        assert_eq!(apply(&w, &v("012", 3)).unwrap(), v("201", 3));
    }

    #[test]
    fn compose_and_inverse() {
        let x = Automorphism::new(&[p("(0 1)", 3), p("(0 1 2)", 3), Perm::identity(3)], &p("(0 2 1)", 3)).unwrap();
        let id = Automorphism::identity(3, 3);
        assert_eq!(compose(&x, &id).unwrap(), x);
        assert!(compose(&x, &inverse(&x)).unwrap().is_identity());
        assert!(compose(&inverse(&x), &x).unwrap().is_identity());
        assert!(compose(&x, &Automorphism::identity(4, 3)).is_err());
    }

    #[test]
    fn action_axiom_exhaustive_h33() {
        let full = full_group(3, 3, 10_000).unwrap();
        let els = full.elements().unwrap();
        let verts: Vec<_> = all_vertices(3, 3, 100).unwrap().collect();
        // a fixed spread of pairs rather than all 1296^2
        for (a, x) in els.iter().enumerate().step_by(37) {
            for y in els.iter().skip(a % 11).step_by(53) {
                let xy = compose(x, y).unwrap();
                for u in &verts {
                    let lhs = apply(&xy, u).unwrap();
                    let rhs = apply(y, &apply(x, u).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn wreath_examples() {
        let id3 = Automorphism::identity(3, 3);
        let e = wreath_embed(&[id3.clone(), id3.clone()], &Perm::identity(2)).unwrap();
        assert!(e.is_identity());
        assert_eq!(e.m(), 6);

        let x = diag(&p("(0 1)", 3), 3).unwrap();
        let e = wreath_embed(&[x, id3.clone()], &Perm::identity(2)).unwrap();
        assert_eq!(apply(&e, &v("012012", 3)).unwrap(), v("102012", 3));

        let swap = wreath_embed(&[id3.clone(), id3], &p("(0 1)", 2)).unwrap();
        for u in all_vertices(6, 3, 1000).unwrap() {
            let w = apply(&swap, &u).unwrap();
            assert_eq!(&w.entries()[..3], &u.entries()[3..]);
            assert_eq!(&w.entries()[3..], &u.entries()[..3]);
        }
        assert!(wreath_embed(
            &[Automorphism::identity(3, 3), Automorphism::identity(2, 3)],
            &Perm::identity(2)
        )
        .is_err());
    }

    #[test]
    fn wreath_respects_composition() {
        let a = Automorphism::new(&[p("(0 1)", 3), Perm::identity(3)], &p("(0 1)", 2)).unwrap();
        let b = Automorphism::new(&[p("(0 1 2)", 3), p("(1 2)", 3)], &Perm::identity(2)).unwrap();
        let id = Automorphism::identity(2, 3);
        let s = p("(0 1 2)", 3);
        let x = wreath_embed(&[a.clone(), b.clone(), id.clone()], &s).unwrap();
        let y = wreath_embed(&[b.clone(), id.clone(), a.clone()], &Perm::identity(3)).unwrap();
        let xy = compose(&x, &y).unwrap();
        for u in all_vertices(6, 3, 1000).unwrap() {
            assert_eq!(apply(&xy, &u).unwrap(), apply(&y, &apply(&x, &u).unwrap()).unwrap());
        }
    }

    #[test]
    fn closure_orders() {
        let g = generate_group(3, 3, &[Automorphism::identity(3, 3)], 10).unwrap();
        assert_eq!(g.order(), Some(1));
        let g = generate_group(3, 3, &diag_top_generators(3, 3).unwrap(), 1000).unwrap();
        assert_eq!(g.order(), Some(36));
        let g = generate_group(4, 4, &diag_top_generators(4, 4).unwrap(), 1000).unwrap();
        assert_eq!(g.order(), Some(576));
        let g = generate_group(4, 3, &full_generators(4, 3).unwrap(), 100_000).unwrap();
        assert_eq!(g.order(), Some(31104));
        let direct = full_group(4, 3, 100_000).unwrap();
        assert_eq!(g.elements(), direct.elements());
        let capped = generate_group(4, 3, &full_generators(4, 3).unwrap(), 1000).unwrap();
        assert_eq!(capped.order(), None);
        assert_eq!(capped.generators().len(), 4);
    }

    #[test]
    fn orbit_examples() {
        let u = v("012", 3);
        assert_eq!(orbit::<Vertex>(&[], &u, 10).unwrap(), vec![u.clone()]);
        let gens = diag_top_generators(3, 3).unwrap();
        let orb: BTreeSet<_> = orbit(&gens, &u, 100).unwrap().into_iter().collect();
        let sym: BTreeSet<_> = perms::symmetric_group(3, 10).unwrap().iter().map(alpha).collect();
        assert_eq!(orb, sym);
        let a3: BTreeSet<Vertex> = perms::alternating_group(3, 10).unwrap().iter().map(alpha).collect();
        assert_eq!(orbit(&gens, &a3, 100).unwrap().len(), 2);
        assert!(matches!(orbit(&gens, &u, 3), Err(Error::Resource(_))));
    }

    #[test]
    fn transversal_words_map_seed() {
        let gens = diag_top_generators(4, 4).unwrap();
        let seed = v("0123", 4);
        for (point, word) in orbit_with_transversal(4, 4, &gens, &seed, 1000).unwrap() {
            assert_eq!(apply(&word, &seed).unwrap(), point);
        }
    }

    #[test]
    fn isometry_and_top_preserve_distance() {
        let full = full_group(3, 3, 10_000).unwrap();
        let verts: Vec<_> = all_vertices(3, 3, 100).unwrap().collect();
        for x in full.elements().unwrap().iter().step_by(7) {
            for a in verts.iter().step_by(2) {
                for b in verts.iter().step_by(3) {
                    let d = distance(a, b).unwrap();
                    assert_eq!(distance(&apply(x, a).unwrap(), &apply(x, b).unwrap()).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn text_form() {
        let x = Automorphism::new(&[Perm::identity(4), p("(0 2)(1 3)", 4)], &p("(0 1)", 2)).unwrap();
        assert_eq!(x.to_string(), "g: id,(0 2)(1 3) ; sigma: (0 1)");
    }
}
