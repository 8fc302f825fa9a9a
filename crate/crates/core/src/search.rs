//! Exhaustive search for elusive pairs, and the pre-codeword machinery for
//! codes with minimum distance at least 3.
//!
//! A code C is tested against the full setwise stabiliser G of Γ_1(C) in
//! Aut(Γ): if G fixes C, no subgroup of Aut(Γ) makes C elusive. Elusivity is
//! invariant under equivalence (conjugate the stabiliser), so one code per
//! equivalence class suffices. Classes are enumerated by orderly generation:
//! a code, as a sorted list of vertex indices, is kept iff it is the
//! lexicographic minimum of its orbit, and children append indices above the
//! current maximum.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::autgroup::{self, Automorphism, Group};
use crate::codes::Code;
use crate::error::{param, Error, Result};
use crate::hamming::{distance, raw_distance, sphere, vertex_count, Vertex};
use crate::io::CodeFile;
use crate::Caps;

/// The two common neighbours of vertices at distance 2, in increasing order.
pub fn common_neighbours(alpha: &Vertex, beta: &Vertex) -> Result<[Vertex; 2]> {
    if distance(alpha, beta)? != 2 {
        return param("common neighbours need vertices at distance 2");
    }
    let diff: Vec<usize> = (0..alpha.m()).filter(|&k| alpha.entry(k) != beta.entry(k)).collect();
    let mu = alpha.with_entry(diff[0], beta.entry(diff[0]))?;
    let nu = alpha.with_entry(diff[1], beta.entry(diff[1]))?;
    Ok(if mu < nu { [mu, nu] } else { [nu, mu] })
}

/// Recovers the unique β with Γ_1(α) ∩ Γ_1(β) = {μ, ν}.
pub fn reconstruct_fourth(alpha: &Vertex, mu: &Vertex, nu: &Vertex) -> Result<Vertex> {
    if distance(alpha, mu)? != 1 || distance(alpha, nu)? != 1 {
        return param("μ and ν must both be adjacent to α");
    }
    let at = |v: &Vertex| {
        (0..alpha.m())
            .find(|&k| alpha.entry(k) != v.entry(k))
            .expect("adjacent")
    };
    let (i, j) = (at(mu), at(nu));
    if i == j {
        return param("μ and ν differ from α in the same entry");
    }
    alpha.with_entry(i, mu.entry(i))?.with_entry(j, nu.entry(j))
}

/// Pre(α, x): vertices π at distance 2 from α with π^x in C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreSet {
    pub base: Vertex,
    pub mover: Automorphism,
    pub members: BTreeSet<Vertex>,
}

fn check_pre_conditions(c: &Code, x: &Automorphism, alpha: &Vertex) -> Result<()> {
    if !c.contains(alpha) {
        return Err(Error::Precondition("α is not a codeword".into()));
    }
    if c.contains(&autgroup::apply(x, alpha)?) {
        return Err(Error::Precondition("α^x is a codeword".into()));
    }
    match c.min_distance() {
        Ok(d) if d >= 3 => Ok(()),
        _ => Err(Error::Precondition(
            "pre-codewords need minimum distance at least 3".into(),
        )),
    }
}

pub fn pre_codewords(c: &Code, x: &Automorphism, alpha: &Vertex) -> Result<PreSet> {
    check_pre_conditions(c, x, alpha)?;
    let mut members = BTreeSet::new();
    for pi in sphere(alpha, 2)? {
        if c.contains(&autgroup::apply(x, &pi)?) {
            members.insert(pi);
        }
    }
    Ok(PreSet {
        base: alpha.clone(),
        mover: x.clone(),
        members,
    })
}

/// Outcome of checking the partition lemma for one (C, x, α).
#[derive(Clone, Debug, Default)]
pub struct PartitionReport {
    pub pre_count: usize,
    /// m(q-1)/2, when m(q-1) is even.
    pub expected_part_count: Option<usize>,
    /// {Γ_1(α) ∩ Γ_1(π) : π in Pre(α, x)} partitions Γ_1(α).
    pub clause_i: bool,
    /// {Γ_1(π) ∩ Γ_1(β) : β in Γ_2(π) ∩ C} partitions Γ_1(π), for every π.
    pub clause_ii: bool,
    /// Parts of distinct pre-codewords reach an entry outside {i, j}.
    pub clause_iii: bool,
    pub parts_have_size_two: bool,
    pub part_counts_match: bool,
    pub failures: Vec<String>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.clause_i && self.clause_ii && self.clause_iii && self.parts_have_size_two && self.part_counts_match
    }
}

fn is_partition(whole: &BTreeSet<Vertex>, parts: &[BTreeSet<Vertex>]) -> bool {
    let mut seen = BTreeSet::new();
    for part in parts {
        for v in part {
            if !seen.insert(v.clone()) {
                return false;
            }
        }
    }
    &seen == whole
}

fn common_set(a: &Vertex, b: &Vertex) -> BTreeSet<Vertex> {
    a.neighbours()
        .filter(|u| raw_distance(u.entries(), b.entries()) == 1)
        .collect()
}

fn differing_entry(alpha: &Vertex, v: &Vertex) -> usize {
    (0..alpha.m())
        .find(|&k| alpha.entry(k) != v.entry(k))
        .unwrap_or(usize::MAX)
}

pub fn check_partition_lemma(c: &Code, x: &Automorphism, alpha: &Vertex) -> Result<PartitionReport> {
    let pre = pre_codewords(c, x, alpha)?;
    let (m, q) = (c.m(), c.q());
    let mut report = PartitionReport {
        pre_count: pre.members.len(),
        expected_part_count: (m * (q - 1) % 2 == 0).then_some(m * (q - 1) / 2),
        ..PartitionReport::default()
    };
    let pre_list: Vec<&Vertex> = pre.members.iter().collect();
    let mut sizes_ok = true;
    let mut counts_ok = report.expected_part_count == Some(pre_list.len());

    let gamma_alpha: BTreeSet<Vertex> = alpha.neighbours().collect();
    let parts_i: Vec<BTreeSet<Vertex>> = pre_list.iter().map(|pi| common_set(alpha, pi)).collect();
    sizes_ok &= parts_i.iter().all(|p| p.len() == 2);
    report.clause_i = is_partition(&gamma_alpha, &parts_i);
    if !report.clause_i {
        report.failures.push(format!("clause (i) fails at α = {alpha:?}"));
    }

    report.clause_ii = true;
    for pi in &pre_list {
        let gamma_pi: BTreeSet<Vertex> = pi.neighbours().collect();
        let parts: Vec<BTreeSet<Vertex>> = c
            .words()
            .iter()
            .filter(|beta| raw_distance(beta.entries(), pi.entries()) == 2)
            .map(|beta| common_set(pi, beta))
            .collect();
        sizes_ok &= parts.iter().all(|p| p.len() == 2);
        counts_ok &= report.expected_part_count == Some(parts.len());
        if !is_partition(&gamma_pi, &parts) {
            report.clause_ii = false;
            report.failures.push(format!("clause (ii) fails at π = {pi:?}"));
        }
    }

    report.clause_iii = true;
    for (a, part) in parts_i.iter().enumerate() {
        let used: BTreeSet<usize> = part.iter().map(|v| differing_entry(alpha, v)).collect();
        for (b, other) in parts_i.iter().enumerate() {
            if a == b {
                continue;
            }
            if !other.iter().any(|v| !used.contains(&differing_entry(alpha, v))) {
                report.clause_iii = false;
                report.failures.push(format!(
                    "clause (iii) fails for π = {:?}, π' = {:?}",
                    pre_list[a], pre_list[b]
                ));
            }
        }
    }
    report.parts_have_size_two = sizes_ok;
    report.part_counts_match = counts_ok;
    if !sizes_ok {
        report.failures.push("a part does not have size 2".into());
    }
    if !counts_ok {
        report.failures.push("partition size differs from m(q-1)/2".into());
    }
    Ok(report)
}

/// A fully enumerated subgroup of Aut(H(m, q)) stored as permutations of
/// vertex indices, with the data needed for minimal-image tests.
struct SearchSpace {
    m: usize,
    n: usize,
    /// Entries of every vertex, n rows of length m.
    entries: Vec<u8>,
    /// m(q-1) neighbour indices per vertex.
    neighbours: Vec<u32>,
    degree: usize,
    /// One row of n images per group element, in the group's element order.
    images: Vec<u32>,
    elements: Vec<Automorphism>,
    /// Least index in the orbit of each vertex.
    orbit_min: Vec<u32>,
    /// Elements mapping each vertex onto its orbit minimum.
    to_min: Vec<Vec<u32>>,
}

impl SearchSpace {
    fn new(group: &Group, vertex_cap: usize, table_cap: usize) -> Result<SearchSpace> {
        let (m, q) = (group.m(), group.q());
        let elements = group.require_elements()?.to_vec();
        let n = match vertex_count(m, q) {
            Some(n) if n <= vertex_cap && n <= u32::MAX as usize => n,
            _ => {
                return Err(Error::Resource(format!(
                    "H({m}, {q}) exceeds the vertex cap {vertex_cap}"
                )))
            }
        };
        match elements.len().checked_mul(n) {
            Some(t) if t <= table_cap => {}
            _ => {
                return Err(Error::Resource(format!(
                    "permutation table exceeds {table_cap} entries"
                )))
            }
        }
        let vertices: Vec<Vertex> = (0..n).map(|i| Vertex::from_index(i, m, q)).collect();
        let entries: Vec<u8> = vertices.iter().flat_map(|v| v.entries().iter().copied()).collect();
        let degree = m * (q - 1);
        let neighbours: Vec<u32> = vertices
            .iter()
            .flat_map(|v| v.neighbours().map(|u| u.index() as u32).collect::<Vec<_>>())
            .collect();
        let images: Vec<u32> = elements
            .par_iter()
            .flat_map_iter(|x| {
                let mut buf = vec![0u8; m];
                let mut row = Vec::with_capacity(n);
                for v in &vertices {
                    x.apply_raw(v.entries(), &mut buf);
                    row.push(buf.iter().fold(0usize, |acc, &e| acc * q + usize::from(e)) as u32);
                }
                row
            })
            .collect();
        let mut orbit_min: Vec<u32> = (0..n as u32).collect();
        for row in images.chunks(n) {
            for (v, &img) in row.iter().enumerate() {
                orbit_min[v] = orbit_min[v].min(img);
            }
        }
        let mut to_min = vec![Vec::new(); n];
        for (g, row) in images.chunks(n).enumerate() {
            for (v, &img) in row.iter().enumerate() {
                if img == orbit_min[v] {
                    to_min[v].push(g as u32);
                }
            }
        }
        Ok(SearchSpace {
            m,
            n,
            entries,
            neighbours,
            degree,
            images,
            elements,
            orbit_min,
            to_min,
        })
    }

    fn row(&self, g: usize) -> &[u32] {
        &self.images[g * self.n..(g + 1) * self.n]
    }

    fn dist(&self, a: u32, b: u32) -> usize {
        let (a, b) = (a as usize * self.m, b as usize * self.m);
        raw_distance(&self.entries[a..a + self.m], &self.entries[b..b + self.m])
    }

    fn vertex_neighbours(&self, v: u32) -> &[u32] {
        &self.neighbours[v as usize * self.degree..(v as usize + 1) * self.degree]
    }

    /// Whether the sorted index list `set` is the least image in its orbit.
    fn is_canonical(&self, set: &[u32], scratch: &mut Vec<u32>) -> bool {
        let least = set
            .iter()
            .map(|&s| self.orbit_min[s as usize])
            .min()
            .expect("non-empty");
        if set[0] != least {
            return false;
        }
        for &s in set {
            if self.orbit_min[s as usize] != least {
                continue;
            }
            for &g in &self.to_min[s as usize] {
                let row = self.row(g as usize);
                scratch.clear();
                scratch.extend(set.iter().map(|&v| row[v as usize]));
                scratch.sort_unstable();
                if scratch.as_slice() < set {
                    return false;
                }
            }
        }
        true
    }

    fn code(&self, set: &[u32], q: usize) -> Code {
        Code::new(set.iter().map(|&i| Vertex::from_index(i as usize, self.m, q))).expect("non-empty")
    }
}

/// Search verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found,
    NoneExhaustive,
    Aborted,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Found => "Found",
            Outcome::NoneExhaustive => "NoneExhaustive",
            Outcome::Aborted => "Aborted",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Reject δ = 3 with m(q-1) odd before searching.
    pub parity_filter: bool,
    /// Keep one code per equivalence class. Without it every code through
    /// vertex 0 is tested.
    pub pruning: bool,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    /// Largest code size explored.
    pub max_size: Option<usize>,
    /// Abort once this many codes have been examined.
    pub node_limit: Option<usize>,
    /// Largest permutation table (group order times vertex count).
    pub table_cap: usize,
    pub caps: Caps,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            parity_filter: true,
            pruning: true,
            threads: None,
            max_size: None,
            node_limit: None,
            table_cap: 50_000_000,
            caps: Caps::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchCertificate {
    pub m: usize,
    pub q: usize,
    pub delta: usize,
    pub outcome: Outcome,
    pub canonical_codes_examined: usize,
    /// Codes with minimum distance exactly δ whose Γ_1 stabiliser was computed.
    pub elusive_tests_run: usize,
    /// Stabiliser elements put through the sphere-image check.
    pub rigidity_checks: usize,
    pub max_code_size_seen: usize,
    /// The code and the full setwise stabiliser of its neighbour set.
    pub found_pair: Option<(Code, Group)>,
    pub filters_applied: Vec<String>,
    pub abort_reason: Option<String>,
    pub wall_time: Duration,
}

impl SearchCertificate {
    fn empty(m: usize, q: usize, delta: usize, filters: Vec<String>) -> SearchCertificate {
        SearchCertificate {
            m,
            q,
            delta,
            outcome: Outcome::NoneExhaustive,
            canonical_codes_examined: 0,
            elusive_tests_run: 0,
            rigidity_checks: 0,
            max_code_size_seen: 0,
            found_pair: None,
            filters_applied: filters,
            abort_reason: None,
            wall_time: Duration::ZERO,
        }
    }

    /// `key=value` lines sorted by key; a found code follows a separator line.
    pub fn render(&self) -> String {
        let mut out = self.render_fields(true);
        if let Some((code, group)) = &self.found_pair {
            out.push_str("--- found_code ---\n");
            let file = CodeFile::new(code.clone()).with_comment(format!(
                "stabiliser of the neighbour set has order {}",
                group.order().unwrap_or(0)
            ));
            out.push_str(&file.render());
        }
        out
    }

    /// Every field except the found code; `wall_time_ms` only when asked.
    pub fn render_fields(&self, with_time: bool) -> String {
        let mut lines = vec![
            format!("canonical_codes_examined={}", self.canonical_codes_examined),
            format!("delta={}", self.delta),
            format!("elusive_tests_run={}", self.elusive_tests_run),
            format!("filters_applied={}", self.filters_applied.join(",")),
            format!("m={}", self.m),
            format!("max_code_size_seen={}", self.max_code_size_seen),
            format!("outcome={}", self.outcome),
            format!("q={}", self.q),
            format!("rigidity_checks={}", self.rigidity_checks),
        ];
        if let Some(reason) = &self.abort_reason {
            lines.push(format!("abort_reason={reason}"));
        }
        if let Some((code, group)) = &self.found_pair {
            lines.push(format!("found_code_size={}", code.len()));
            lines.push(format!("found_group_order={}", group.order().unwrap_or(0)));
        }
        if with_time {
            lines.push(format!("wall_time_ms={}", self.wall_time.as_millis()));
        }
        lines.sort();
        let mut out = String::new();
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
        out
    }
}

/// Result of testing one code against the stabiliser of its neighbour set.
struct Hit {
    set: Vec<u32>,
    stabiliser: Vec<u32>,
}

#[derive(Default)]
struct Tally {
    examined: usize,
    tests: usize,
    rigidity: usize,
    max_size: usize,
    hit: Option<Hit>,
}

struct Engine<'a> {
    space: &'a SearchSpace,
    delta: usize,
    pruning: bool,
    max_size: usize,
}

impl Engine<'_> {
    fn compatible(&self, set: &[u32], v: u32) -> bool {
        set.iter().all(|&s| self.space.dist(s, v) >= self.delta)
    }

    fn min_distance(&self, set: &[u32]) -> usize {
        let mut best = usize::MAX;
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                best = best.min(self.space.dist(a, b));
            }
        }
        best
    }

    /// Extensions of `set` in increasing index order, with canonicity applied.
    fn children(&self, set: &[u32], scratch: &mut Vec<u32>) -> Vec<u32> {
        if set.len() >= self.max_size {
            return Vec::new();
        }
        let start = set.last().map_or(0, |&l| l + 1);
        let mut out = Vec::new();
        let mut trial = set.to_vec();
        for v in start..self.space.n as u32 {
            if set.is_empty() {
                let root_ok = if self.pruning {
                    self.space.orbit_min[v as usize] == v
                } else {
                    v == 0
                };
                if root_ok {
                    out.push(v);
                }
                continue;
            }
            if !self.compatible(set, v) {
                continue;
            }
            trial.push(v);
            if !self.pruning || self.space.is_canonical(&trial, scratch) {
                out.push(v);
            }
            trial.pop();
        }
        out
    }

    /// Counts `set` and, when its minimum distance is exactly δ, tests it.
    fn examine(&self, set: &[u32], tally: &mut Tally) -> Result<()> {
        if set.len() < 2 {
            return Ok(());
        }
        tally.examined += 1;
        tally.max_size = tally.max_size.max(set.len());
        let delta = self.min_distance(set);
        if delta != self.delta {
            return Ok(());
        }
        tally.tests += 1;
        let sp = self.space;
        let mut in_code = vec![false; sp.n];
        for &s in set {
            in_code[s as usize] = true;
        }
        let mut in_gamma = vec![false; sp.n];
        let mut gamma = Vec::new();
        for &s in set {
            for &u in sp.vertex_neighbours(s) {
                if !in_code[u as usize] && !in_gamma[u as usize] {
                    in_gamma[u as usize] = true;
                    gamma.push(u);
                }
            }
        }
        let mut stabiliser = Vec::new();
        let mut moved = false;
        let mut in_image = vec![false; sp.n];
        for g in 0..sp.elements.len() {
            let row = sp.row(g);
            if !gamma.iter().all(|&u| in_gamma[row[u as usize] as usize]) {
                continue;
            }
            stabiliser.push(g as u32);
            if set.iter().any(|&s| !in_code[row[s as usize] as usize]) {
                moved = true;
            }
            if delta >= 3 {
                // each neighbour of C is adjacent to exactly one vertex of C^g
                for &s in set {
                    in_image[row[s as usize] as usize] = true;
                }
                let ok = set.iter().all(|&s| !in_gamma[row[s as usize] as usize])
                    && gamma.iter().all(|&u| {
                        sp.vertex_neighbours(u)
                            .iter()
                            .filter(|&&w| in_image[w as usize])
                            .count()
                            == 1
                    });
                for &s in set {
                    in_image[row[s as usize] as usize] = false;
                }
                tally.rigidity += 1;
                if !ok {
                    return Err(Error::Invariant(format!(
                        "stabiliser element {g} breaks the sphere partition of Γ_1(C)"
                    )));
                }
            }
        }
        if moved {
            tally.hit = Some(Hit {
                set: set.to_vec(),
                stabiliser,
            });
        }
        Ok(())
    }

    /// Depth-first preorder over the subtree at `set`; stops at the first hit.
    fn run_subtree(
        &self,
        set: &mut Vec<u32>,
        tally: &mut Tally,
        scratch: &mut Vec<u32>,
        cancel: &dyn Fn() -> bool,
    ) -> Result<()> {
        self.examine(set, tally)?;
        if tally.hit.is_some() || cancel() {
            return Ok(());
        }
        for v in self.children(set, scratch) {
            set.push(v);
            self.run_subtree(set, tally, scratch, cancel)?;
            set.pop();
            if tally.hit.is_some() {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Preorder list of work items: nodes shallower than `depth` are examined
    /// alone, nodes at `depth` carry their whole subtree.
    fn tasks(&self, depth: usize) -> Vec<(Vec<u32>, bool)> {
        let mut out = Vec::new();
        let mut scratch = Vec::new();
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        while let Some(set) = stack.pop() {
            if set.len() == depth {
                out.push((set, true));
                continue;
            }
            let kids = self.children(&set, &mut scratch);
            if set.len() >= 2 {
                out.push((set.clone(), false));
            }
            for &v in kids.iter().rev() {
                let mut child = set.clone();
                child.push(v);
                stack.push(child);
            }
        }
        out
    }
}

/// Number of tasks merged per round; fixed so that results do not depend on
/// the worker count.
const BATCH: usize = 64;
const SPLIT_DEPTH: usize = 3;

/// One representative of every equivalence class (under `group`) of codes
/// with at least two codewords and pairwise distance at least `delta_target`,
/// in orderly-generation preorder.
pub fn enumerate_codes(
    m: usize,
    q: usize,
    delta_target: usize,
    max_size: usize,
    group: &Group,
    caps: &Caps,
) -> Result<Vec<Code>> {
    if group.m() != m || group.q() != q {
        return param("group acts on a different Hamming graph");
    }
    let space = SearchSpace::new(group, caps.vertices, usize::MAX)?;
    let engine = Engine {
        space: &space,
        delta: delta_target,
        pruning: true,
        max_size,
    };
    let mut out = Vec::new();
    let mut scratch = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(set) = stack.pop() {
        if set.len() >= 2 {
            out.push(space.code(&set, q));
        }
        for &v in engine.children(&set, &mut scratch).iter().rev() {
            let mut child = set.clone();
            child.push(v);
            stack.push(child);
        }
    }
    Ok(out)
}

/// Exhaustive search for an elusive pair with parameters (m, q, δ).
pub fn search_elusive(m: usize, q: usize, delta: usize, options: &SearchOptions) -> Result<SearchCertificate> {
    let start = Instant::now();
    if m == 0 || !(2..=256).contains(&q) || delta == 0 {
        return param(format!("invalid search parameters ({m}, {q}, {delta})"));
    }
    let mut filters = Vec::new();
    if options.pruning {
        filters.push("equivalence-pruning".to_string());
    }
    if options.parity_filter {
        if delta == 3 && (m * (q - 1)) % 2 == 1 {
            filters.push("parity-prefilter(rejected)".to_string());
            let mut cert = SearchCertificate::empty(m, q, delta, filters);
            cert.wall_time = start.elapsed();
            return Ok(cert);
        }
        filters.push("parity-prefilter".to_string());
    }
    let mut cert = SearchCertificate::empty(m, q, delta, filters);
    let aborted = |mut cert: SearchCertificate, reason: String| {
        cert.outcome = Outcome::Aborted;
        cert.abort_reason = Some(reason);
        cert.wall_time = start.elapsed();
        cert
    };

    let table = autgroup::full_group_order(m, q)
        .zip(vertex_count(m, q))
        .and_then(|(g, n)| g.checked_mul(n));
    if table.is_none_or(|t| t > options.table_cap) {
        return Ok(aborted(
            cert,
            format!("permutation table exceeds {} entries", options.table_cap),
        ));
    }
    let group = match autgroup::full_group(m, q, options.caps.group) {
        Ok(g) => g,
        Err(Error::Resource(msg)) => return Ok(aborted(cert, msg)),
        Err(e) => return Err(e),
    };
    let space = match SearchSpace::new(&group, options.caps.vertices, options.table_cap) {
        Ok(s) => s,
        Err(Error::Resource(msg)) => return Ok(aborted(cert, msg)),
        Err(e) => return Err(e),
    };
    let engine = Engine {
        space: &space,
        delta,
        pruning: options.pruning,
        max_size: options.max_size.unwrap_or(usize::MAX),
    };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = options.threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;

    let tasks = engine.tasks(SPLIT_DEPTH);
    let mut hit: Option<Hit> = None;
    pool.install(|| -> Result<()> {
        for (b, batch) in tasks.chunks(BATCH).enumerate() {
            let first_hit = AtomicUsize::new(usize::MAX);
            let results: Vec<Result<Tally>> = batch
                .par_iter()
                .enumerate()
                .map(|(k, (set, subtree))| {
                    let mut tally = Tally::default();
                    if first_hit.load(Ordering::Relaxed) < k {
                        return Ok(tally);
                    }
                    let mut set = set.clone();
                    let mut scratch = Vec::new();
                    let cancel = || first_hit.load(Ordering::Relaxed) < k;
                    if *subtree {
                        engine.run_subtree(&mut set, &mut tally, &mut scratch, &cancel)?;
                    } else {
                        engine.examine(&set, &mut tally)?;
                    }
                    if tally.hit.is_some() {
                        first_hit.fetch_min(k, Ordering::Relaxed);
                    }
                    Ok(tally)
                })
                .collect();
            for result in results {
                let tally = result?;
                cert.canonical_codes_examined += tally.examined;
                cert.elusive_tests_run += tally.tests;
                cert.rigidity_checks += tally.rigidity;
                cert.max_code_size_seen = cert.max_code_size_seen.max(tally.max_size);
                if tally.hit.is_some() {
                    hit = tally.hit;
                    return Ok(());
                }
            }
            if let Some(limit) = options.node_limit {
                if cert.canonical_codes_examined >= limit && (b + 1) * BATCH < tasks.len() {
                    cert.outcome = Outcome::Aborted;
                    cert.abort_reason = Some(format!("node limit {limit} reached"));
                    return Ok(());
                }
            }
        }
        Ok(())
    })?;

    if let Some(hit) = hit {
        let code = space.code(&hit.set, q);
        let elements = hit
            .stabiliser
            .iter()
            .map(|&g| space.elements[g as usize].clone())
            .collect();
        cert.outcome = Outcome::Found;
        cert.found_pair = Some((code, Group::from_elements(m, q, elements)));
    }
    cert.wall_time = start.elapsed();
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::{diag_top_generators, full_group};
    use crate::codes::{are_equivalent, setwise_stabiliser};
    use crate::constructions::{perm_code, PermCodeSpec, PermSource};
    use crate::elusive::verify_elusive;

    fn v(d: &str, q: usize) -> Vertex {
        Vertex::from_digits(d, q).unwrap()
    }

    #[test]
    fn common_neighbour_examples() {
        let [a, b] = common_neighbours(&v("0000", 3), &v("1100", 3)).unwrap();
        assert_eq!((a, b), (v("0100", 3), v("1000", 3)));
        let pair = common_neighbours(&v("0000", 3), &v("2020", 3)).unwrap();
        assert_eq!(
            pair.iter().cloned().collect::<BTreeSet<_>>(),
            BTreeSet::from([v("2000", 3), v("0020", 3)])
        );
        assert!(common_neighbours(&v("0000", 3), &v("1110", 3)).is_err());
        let beta = reconstruct_fourth(&v("0000", 3), &v("2000", 3), &v("0020", 3)).unwrap();
        assert_eq!(beta, v("2020", 3));
        assert!(reconstruct_fourth(&v("0000", 3), &v("1000", 3), &v("2000", 3)).is_err());
    }

    #[test]
    fn pre_codewords_for_alternating_code() {
        let a3 = perm_code(&PermCodeSpec::new(3, PermSource::Alternating), 100).unwrap();
        let x = autgroup::diag(&crate::perms::Perm::parse("(0 1)", 3).unwrap(), 3).unwrap();
        let alpha = v("012", 3);
        let pre = pre_codewords(&a3, &x, &alpha).unwrap();
        // brute force over all 27 vertices
        let brute: BTreeSet<Vertex> = crate::hamming::all_vertices(3, 3, 100)
            .unwrap()
            .filter(|pi| distance(pi, &alpha).unwrap() == 2 && a3.contains(&autgroup::apply(&x, pi).unwrap()))
            .collect();
        assert_eq!(pre.members, brute);
        assert_eq!(pre.members.len(), 3);
        let report = check_partition_lemma(&a3, &x, &alpha).unwrap();
        assert!(report.passed(), "{:?}", report.failures);

        let s3 = perm_code(&PermCodeSpec::new(3, PermSource::Symmetric), 100).unwrap();
        assert!(matches!(pre_codewords(&s3, &x, &alpha), Err(Error::Precondition(_))));
        let id = Automorphism::identity(3, 3);
        assert!(matches!(pre_codewords(&a3, &id, &alpha), Err(Error::Precondition(_))));
    }

    #[test]
    fn partition_of_first_precodeword_neighbourhood() {
        // Γ_1(1100) split by codewords at distance 2 from 1100
        let pi = v("1100", 3);
        let betas = ["0000", "1111", "1220", "2102"];
        let parts: Vec<BTreeSet<Vertex>> = betas.iter().map(|b| common_set(&pi, &v(b, 3))).collect();
        let expected = [["1000", "0100"], ["1110", "1101"], ["1200", "1120"], ["2100", "1102"]];
        for (part, want) in parts.iter().zip(expected) {
            assert_eq!(part, &want.iter().map(|w| v(w, 3)).collect());
        }
        assert!(is_partition(&pi.neighbours().collect(), &parts));
    }

    #[test]
    fn enumeration_h33() {
        let group = full_group(3, 3, 10_000).unwrap();
        let codes = enumerate_codes(3, 3, 3, usize::MAX, &group, &Caps::default()).unwrap();
        let a3 = perm_code(&PermCodeSpec::new(3, PermSource::Alternating), 100).unwrap();
        let matches = codes
            .iter()
            .filter(|c| are_equivalent(c, &a3, &group).unwrap().is_some())
            .count();
        assert_eq!(matches, 1);
        // no two emitted codes are equivalent
        for (i, a) in codes.iter().enumerate() {
            for b in &codes[i + 1..] {
                assert!(are_equivalent(a, b, &group).unwrap().is_none());
            }
        }
    }

    #[test]
    fn search_h33_finds_alternating_code_class() {
        let cert = search_elusive(3, 3, 3, &SearchOptions::default()).unwrap();
        assert_eq!(cert.outcome, Outcome::Found);
        let (code, group) = cert.found_pair.clone().unwrap();
        let full = full_group(3, 3, 10_000).unwrap();
        let a3 = perm_code(&PermCodeSpec::new(3, PermSource::Alternating), 100).unwrap();
        assert!(are_equivalent(&code, &a3, &full).unwrap().is_some());
        let report = verify_elusive(&code, group.elements().unwrap(), &Caps::default()).unwrap();
        assert!(report.is_elusive);
        assert_eq!(
            group.elements().unwrap(),
            setwise_stabiliser(&full, &code.neighbour_set())
                .unwrap()
                .elements()
                .unwrap()
        );
    }

    #[test]
    fn parity_prefilter_rejects_odd_degree() {
        let cert = search_elusive(3, 2, 3, &SearchOptions::default()).unwrap();
        assert_eq!(cert.outcome, Outcome::NoneExhaustive);
        assert_eq!(cert.canonical_codes_examined, 0);
        assert!(cert
            .filters_applied
            .iter()
            .any(|f| f.starts_with("parity-prefilter(rejected)")));
        let unfiltered = SearchOptions {
            parity_filter: false,
            ..SearchOptions::default()
        };
        let cert = search_elusive(3, 2, 3, &unfiltered).unwrap();
        assert_eq!(cert.outcome, Outcome::NoneExhaustive);
        assert!(cert.canonical_codes_examined > 0);
    }

    #[test]
    fn pruned_and_unpruned_agree_h33() {
        for delta in 2..=3 {
            let pruned = search_elusive(3, 3, delta, &SearchOptions::default()).unwrap();
            let full = search_elusive(
                3,
                3,
                delta,
                &SearchOptions {
                    pruning: false,
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            assert_eq!(pruned.outcome, full.outcome, "δ = {delta}");
        }
    }

    #[test]
    fn caps_abort() {
        let opts = SearchOptions {
            caps: Caps {
                group: 1000,
                ..Caps::default()
            },
            ..SearchOptions::default()
        };
        let cert = search_elusive(3, 3, 3, &opts).unwrap();
        assert_eq!(cert.outcome, Outcome::Aborted);
        assert!(cert.abort_reason.is_some());
    }

    #[test]
    fn enumeration_under_smaller_group() {
        // orderly generation also works for groups that are not vertex-transitive
        let g = autgroup::generate_group(3, 3, &diag_top_generators(3, 3).unwrap(), 1000).unwrap();
        let codes = enumerate_codes(3, 3, 3, usize::MAX, &g, &Caps::default()).unwrap();
        let full = full_group(3, 3, 10_000).unwrap();
        let by_full = enumerate_codes(3, 3, 3, usize::MAX, &full, &Caps::default()).unwrap();
        assert!(codes.len() >= by_full.len());
    }
}
