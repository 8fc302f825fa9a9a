//! Deciding whether a code/group pair is elusive, and the structural data
//! around it: the images of the code, its stabiliser X_C, and neighbour
//! degree profiles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::autgroup::{self, Automorphism, Group};
use crate::codes::{self, Code};
use crate::error::{param, Result};
use crate::hamming::Vertex;
use crate::Caps;

/// Verdict on a pair (C, X) with X = ⟨generators⟩.
#[derive(Clone, Debug)]
pub struct ElusiveReport {
    pub is_elusive: bool,
    pub fixes_neighbours: bool,
    pub fixes_code: bool,
    /// r = |{C^x : x in X}|.
    pub image_count_r: usize,
    pub images_pairwise_disjoint: bool,
    /// Codewords common to every image, `None` when that set is empty.
    pub images_intersection: Option<Code>,
    pub x_transitive_on_neighbours: bool,
    /// |X_C| when its closure fits the group cap.
    pub xc_order: Option<usize>,
    pub xc_transitive_on_code: bool,
    pub xc_transitive_on_neighbours: bool,
    /// An element of X moving C; always a generator, the first one that does.
    pub witness_mover: Option<Automorphism>,
    /// The images of C, in breadth-first discovery order starting with C.
    pub images: Vec<Code>,
}

impl ElusiveReport {
    /// `key=value` lines sorted by key.
    pub fn render(&self) -> String {
        let mut fields: BTreeMap<&str, String> = BTreeMap::new();
        fields.insert("fixes_code", self.fixes_code.to_string());
        fields.insert("fixes_neighbours", self.fixes_neighbours.to_string());
        fields.insert("image_count_r", self.image_count_r.to_string());
        fields.insert(
            "images_intersection",
            match &self.images_intersection {
                None => "empty".to_string(),
                Some(c) => c.words().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";"),
            },
        );
        fields.insert("images_pairwise_disjoint", self.images_pairwise_disjoint.to_string());
        fields.insert("is_elusive", self.is_elusive.to_string());
        fields.insert(
            "witness_mover",
            match &self.witness_mover {
                None => "none".to_string(),
                Some(x) => x.to_string(),
            },
        );
        fields.insert(
            "x_transitive_on_neighbours",
            self.x_transitive_on_neighbours.to_string(),
        );
        fields.insert(
            "xc_order",
            match self.xc_order {
                None => "unknown".to_string(),
                Some(n) => n.to_string(),
            },
        );
        fields.insert("xc_transitive_on_code", self.xc_transitive_on_code.to_string());
        fields.insert(
            "xc_transitive_on_neighbours",
            self.xc_transitive_on_neighbours.to_string(),
        );
        let mut out = String::new();
        for (k, v) in fields {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

fn check_gens(c: &Code, gens: &[Automorphism]) -> Result<()> {
    if gens.iter().any(|g| g.m() != c.m() || g.q() != c.q()) {
        return param(format!("generator outside Aut(H({}, {}))", c.m(), c.q()));
    }
    Ok(())
}

/// Schreier generators of the stabiliser of C in ⟨gens⟩, from the orbit of C
/// with its transversal.
fn schreier_generators(gens: &[Automorphism], orbit: &[(Code, Automorphism)]) -> Result<Vec<Automorphism>> {
    let position: BTreeMap<&[Vertex], usize> = orbit.iter().enumerate().map(|(k, (c, _))| (c.words(), k)).collect();
    let mut out = BTreeSet::new();
    for (image, word) in orbit {
        for g in gens {
            let next = image.image(g)?;
            let k = position[next.words()];
            let s = autgroup::compose(&autgroup::compose(word, g)?, &autgroup::inverse(&orbit[k].1))?;
            if !s.is_identity() {
                out.insert(s);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn transitive_on(gens: &[Automorphism], set: &BTreeSet<Vertex>) -> Result<bool> {
    let Some(first) = set.first() else {
        return Ok(true);
    };
    let orbit = autgroup::orbit(gens, first, set.len() + 1)?;
    Ok(orbit.len() == set.len() && orbit.iter().all(|v| set.contains(v)))
}

/// Decides whether (C, ⟨gens⟩) is an elusive pair.
///
/// Fixing Γ_1(C) is checked on generators, which suffices for the group they
/// generate. Whether C is fixed comes from the orbit of C as a set.
pub fn verify_elusive(c: &Code, gens: &[Automorphism], caps: &Caps) -> Result<ElusiveReport> {
    check_gens(c, gens)?;
    let neighbours = c.neighbour_set();
    let mut fixes_neighbours = true;
    for g in gens {
        if !codes::fixes_setwise(g, &neighbours)? {
            fixes_neighbours = false;
            break;
        }
    }

    let orbit = autgroup::orbit_with_transversal(c.m(), c.q(), gens, c, caps.orbit)?;
    let image_count_r = orbit.len();
    let fixes_code = image_count_r == 1;
    let witness_mover = orbit.get(1).map(|(_, w)| w.clone());

    let images: Vec<Code> = orbit.iter().map(|(img, _)| img.clone()).collect();
    let mut disjoint = true;
    'pairs: for (a, x) in images.iter().enumerate() {
        for y in &images[a + 1..] {
            if x.intersection(y).is_some() {
                disjoint = false;
                break 'pairs;
            }
        }
    }
    let mut common = Some(c.clone());
    for img in &images[1..] {
        common = common.and_then(|acc| acc.intersection(img));
    }

    let x_transitive_on_neighbours = fixes_neighbours && transitive_on(gens, &neighbours)?;

    let xc_gens = schreier_generators(gens, &orbit)?;
    let xc_order = autgroup::generate_group(c.m(), c.q(), &xc_gens, caps.group)?.order();
    let xc_transitive_on_code = transitive_on(&xc_gens, &c.to_set())?;
    let xc_transitive_on_neighbours = transitive_on(&xc_gens, &neighbours)?;

    Ok(ElusiveReport {
        is_elusive: fixes_neighbours && !fixes_code,
        fixes_neighbours,
        fixes_code,
        image_count_r,
        images_pairwise_disjoint: disjoint,
        images_intersection: common,
        x_transitive_on_neighbours,
        xc_order,
        xc_transitive_on_code,
        xc_transitive_on_neighbours,
        witness_mover,
        images,
    })
}

/// X_C together with its transitivity flags.
#[derive(Clone, Debug)]
pub struct CodeStabiliser {
    pub group: Group,
    pub transitive_on_code: bool,
    pub transitive_on_neighbours: bool,
}

/// X_C = {x in G : C^x = C}.
///
/// An enumerated G is filtered directly; otherwise X_C is generated by
/// Schreier generators from the orbit of C and enumerated under the cap.
pub fn code_stabiliser_analysis(c: &Code, group: &Group, caps: &Caps) -> Result<CodeStabiliser> {
    check_gens(c, group.generators())?;
    let xc = match group.elements() {
        Some(_) => codes::setwise_stabiliser(group, &c.to_set())?,
        None => {
            let orbit = autgroup::orbit_with_transversal(c.m(), c.q(), group.generators(), c, caps.orbit)?;
            let gens = schreier_generators(group.generators(), &orbit)?;
            let generated = autgroup::generate_group(c.m(), c.q(), &gens, caps.group)?;
            generated.require_elements()?;
            generated
        }
    };
    let gens: &[Automorphism] = xc.elements().unwrap_or(xc.generators());
    let transitive_on_code = transitive_on(gens, &c.to_set())?;
    let transitive_on_neighbours = transitive_on(gens, &c.neighbour_set())?;
    Ok(CodeStabiliser {
        group: xc,
        transitive_on_code,
        transitive_on_neighbours,
    })
}

/// |Γ_1(μ) ∩ Γ_1(C)| for every μ in Γ_1(C).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: BTreeMap<Vertex, usize>,
}

impl DegreeProfile {
    pub fn degree(&self, mu: &Vertex) -> Option<usize> {
        self.degrees.get(mu).copied()
    }

    /// Degree value -> number of neighbours with that degree.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &d in self.degrees.values() {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.histogram().len() <= 1
    }
}

pub fn neighbour_degree_profile(c: &Code) -> DegreeProfile {
    let neighbours = c.neighbour_set();
    let degrees = neighbours
        .iter()
        .map(|mu| (mu.clone(), mu.neighbours().filter(|u| neighbours.contains(u)).count()))
        .collect();
    DegreeProfile { degrees }
}
