//! Executable lemma batteries. Each suite checks a family of identities
//! instance by instance and reports every failure it sees.

use std::collections::BTreeSet;

use crate::autgroup::{self, diag, diag_top_generators, generate_group, top, wreath_embed, Automorphism};
use crate::codes::{fixes_setwise, Code};
use crate::constructions::{nu, parity_code, perm_code, perm_vertex, rep_code, BlockParity, PermCodeSpec, PermSource};
use crate::error::{param, Result};
use crate::hamming::{all_vertices, raw_distance, sphere, Vertex};
use crate::perms::{self, Perm};
use crate::search::{check_partition_lemma, common_neighbours, reconstruct_fourth};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    fn new(name: &str) -> LemmaReport {
        LemmaReport {
            name: name.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "suite={}\nchecks={}\nfailures={}\nresult={}\n",
            self.name,
            self.checks,
            self.failures.len(),
            if self.passed() { "pass" } else { "fail" }
        );
        for f in &self.failures {
            out.push_str("failure: ");
            out.push_str(f);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Same,
    Act,
    Partition,
    Neigh,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite> {
        match name {
            "same" => Ok(Suite::Same),
            "act" => Ok(Suite::Act),
            "partition" => Ok(Suite::Partition),
            "neigh" => Ok(Suite::Neigh),
            _ => param(format!("unknown lemma suite '{name}'")),
        }
    }
}

pub fn run_suite(suite: Suite) -> Result<LemmaReport> {
    match suite {
        Suite::Same => same_neighbour_suite(&[3, 4, 5]),
        Suite::Act => action_suite(&[3, 4]),
        Suite::Partition => partition_suite(),
        Suite::Neigh => common_neighbour_suite(4, 3),
    }
}

/// ν(α(g), i, j) = ν(α((i j)g), j, i) for all g in S_q and i ≠ j.
pub fn same_neighbour_suite(qs: &[usize]) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("same");
    for &q in qs {
        for g in perms::symmetric_group(q, usize::MAX)? {
            for i in 0..q as u8 {
                for j in 0..q as u8 {
                    if i == j {
                        continue;
                    }
                    let swapped = perms::compose(&Perm::transposition(q, i, j)?, &g)?;
                    let (a, b) = (nu(&g, i, j)?, nu(&swapped, j, i)?);
                    report.check(a == b, || format!("q={q} g={g} i={i} j={j}: {a:?} vs {b:?}"));
                }
            }
        }
    }
    Ok(report)
}

/// For x = diag(y) top(z): α(g)^x = α(z⁻¹gy), ν(α(g), i, j)^x = ν(α(z⁻¹gy), z(i), z(j)),
/// and C(A_q)^x = C(z⁻¹yA_q).
pub fn action_suite(qs: &[usize]) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("act");
    for &q in qs {
        let sq = perms::symmetric_group(q, usize::MAX)?;
        let aq = perm_code(&PermCodeSpec::new(q, PermSource::Alternating), usize::MAX)?;
        let odd = perm_code(&PermCodeSpec::new(q, PermSource::OddCoset), usize::MAX)?;
        for y in &sq {
            for z in &sq {
                let x = autgroup::compose(&diag(y, q)?, &top(z, q)?)?;
                let zi = z.inverse();
                for g in &sq {
                    let h = perms::compose(&perms::compose(&zi, g)?, y)?;
                    let image = autgroup::apply(&x, &perm_vertex(g)?)?;
                    let want = perm_vertex(&h)?;
                    report.check(image == want, || format!("q={q} y={y} z={z} g={g}: α(g)^x = {image:?}"));
                    for i in 0..q as u8 {
                        for j in 0..q as u8 {
                            if i == j {
                                continue;
                            }
                            let image = autgroup::apply(&x, &nu(g, i, j)?)?;
                            let want = nu(&h, z.apply(i), z.apply(j))?;
                            report.check(image == want, || {
                                format!("q={q} y={y} z={z} g={g} i={i} j={j}: ν image {image:?}")
                            });
                        }
                    }
                }
                // z⁻¹y even ⇔ parity(z) = parity(y)
                let expected = if z.parity() == y.parity() { &aq } else { &odd };
                let image = aq.image(&x)?;
                report.check(&image == expected, || {
                    format!("q={q} y={y} z={z}: wrong image of C(A_q)")
                });
            }
        }
    }
    Ok(report)
}

/// A code with δ ≥ 3 and automorphisms fixing its neighbour set.
struct PartitionCase {
    label: String,
    code: Code,
    movers: Vec<Automorphism>,
}

fn partition_cases() -> Result<Vec<PartitionCase>> {
    let mut cases = Vec::new();
    for q in [3usize, 4] {
        let dt = generate_group(q, q, &diag_top_generators(q, q)?, usize::MAX)?;
        let elements = dt.elements().expect("enumerated").to_vec();
        let aq = perm_code(&PermCodeSpec::new(q, PermSource::Alternating), usize::MAX)?;
        cases.push(PartitionCase {
            label: format!("C(A_{q})"),
            code: aq.clone(),
            movers: elements.clone(),
        });
        if q == 4 {
            cases.push(PartitionCase {
                label: format!("C(A_{q})∪Rep({q},{q})"),
                code: aq.union(&rep_code(q, q)?)?,
                movers: elements,
            });
        }
    }
    let id = Automorphism::identity(3, 3);
    let odd_block = diag(&Perm::transposition(3, 0, 1)?, 3)?;
    let base = generate_group(3, 3, &diag_top_generators(3, 3)?, usize::MAX)?;
    for l in [2usize, 3] {
        let code = parity_code(3, l, BlockParity::Even, usize::MAX)?;
        let movers = if l == 2 {
            let gens = autgroup::wreath_generators(&diag_top_generators(3, 3)?, 3, 3, l)?;
            generate_group(3 * l, 3, &gens, usize::MAX)?
                .elements()
                .expect("enumerated")
                .to_vec()
        } else {
            // the full wreath product is too large to sweep; use one odd block
            // in each position combined with every element of the base group
            let mut movers = Vec::new();
            for k in 0..l {
                for b in base.elements().expect("enumerated") {
                    let mut parts = vec![id.clone(); l];
                    parts[k] = autgroup::compose(&odd_block, b)?;
                    movers.push(wreath_embed(&parts, &Perm::identity(l))?);
                }
            }
            movers
        };
        cases.push(PartitionCase {
            label: format!("C(3,{l})"),
            code,
            movers,
        });
    }
    Ok(cases)
}

/// The partition lemma for every mover of every case and every codeword α
/// with α^x ∉ C.
pub fn partition_suite() -> Result<LemmaReport> {
    let mut report = LemmaReport::new("partition");
    for case in partition_cases()? {
        let gamma = case.code.neighbour_set();
        let mut movers_used = 0;
        for x in &case.movers {
            if !fixes_setwise(x, &gamma)? || case.code.image(x)? == case.code {
                continue;
            }
            movers_used += 1;
            for alpha in case.code.words() {
                if case.code.contains(&autgroup::apply(x, alpha)?) {
                    continue;
                }
                let r = check_partition_lemma(&case.code, x, alpha)?;
                report.check(r.passed(), || {
                    format!("{} x=[{x}] α={alpha:?}: {}", case.label, r.failures.join("; "))
                });
            }
        }
        report.check(movers_used > 0, || {
            format!("{}: no element fixes Γ_1(C) and moves C", case.label)
        });
    }
    Ok(report)
}

/// Every pair at distance 2 in H(m, q) has exactly two common neighbours, at
/// distance 2 from each other, and the pair determines the fourth vertex.
pub fn common_neighbour_suite(m: usize, q: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("neigh");
    let vertices: Vec<Vertex> = all_vertices(m, q, usize::MAX)?.collect();
    for alpha in &vertices {
        for beta in sphere(alpha, 2)? {
            let brute: BTreeSet<Vertex> = vertices
                .iter()
                .filter(|u| {
                    raw_distance(u.entries(), alpha.entries()) == 1 && raw_distance(u.entries(), beta.entries()) == 1
                })
                .cloned()
                .collect();
            let [mu, nu] = common_neighbours(alpha, &beta)?;
            let ok = brute.len() == 2
                && brute.contains(&mu)
                && brute.contains(&nu)
                && raw_distance(mu.entries(), nu.entries()) == 2
                && reconstruct_fourth(alpha, &mu, &nu)? == beta;
            report.check(ok, || format!("α={alpha:?} β={beta:?}: common neighbours {brute:?}"));
        }
    }
    Ok(report)
}
