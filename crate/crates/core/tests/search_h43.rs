use std::collections::BTreeSet;

use elusive_core::autgroup::{self, full_group};
use elusive_core::codes::{are_equivalent, setwise_stabiliser, Code};
use elusive_core::elusive::verify_elusive;
use elusive_core::hamming::{all_vertices, distance, Vertex};
use elusive_core::search::{enumerate_codes, search_elusive, Outcome, SearchOptions};
use elusive_core::Caps;

fn distance3_graph(m: usize, q: usize) -> (Vec<Vertex>, Vec<Vec<bool>>) {
    let vs: Vec<Vertex> = all_vertices(m, q, 1000).unwrap().collect();
    let adj = vs
        .iter()
        .map(|a| vs.iter().map(|b| distance(a, b).unwrap() >= 3).collect())
        .collect();
    (vs, adj)
}

// plain Bron–Kerbosch with pivoting
fn max_clique(adj: &[Vec<bool>], r: usize, p: Vec<usize>, x: Vec<usize>, best: &mut usize) {
    if p.is_empty() && x.is_empty() {
        *best = (*best).max(r);
        return;
    }
    if r + p.len() <= *best {
        return;
    }
    let pivot = *p
        .iter()
        .chain(x.iter())
        .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
        .unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    let (mut p, mut x) = (p, x);
    for v in candidates {
        let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
        max_clique(adj, r + 1, np, nx, best);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

#[test]
fn no_elusive_pair_in_h43_distance_three() {
    let cert = search_elusive(4, 3, 3, &SearchOptions::default()).unwrap();
    assert_eq!(cert.outcome, Outcome::NoneExhaustive);
    assert!(cert.found_pair.is_none());
    assert_eq!(cert.filters_applied, ["equivalence-pruning", "parity-prefilter"]);
}

#[test]
fn unpruned_search_agrees_on_h43() {
    let opts = SearchOptions {
        pruning: false,
        ..SearchOptions::default()
    };
    let cert = search_elusive(4, 3, 3, &opts).unwrap();
    assert_eq!(cert.outcome, Outcome::NoneExhaustive);
}

#[test]
fn counts_do_not_depend_on_thread_count() {
    for parity_filter in [true, false] {
        let run = |threads| {
            let opts = SearchOptions {
                threads: Some(threads),
                parity_filter,
                ..SearchOptions::default()
            };
            search_elusive(4, 3, 3, &opts).unwrap().render_fields(false)
        };
        assert_eq!(run(1), run(4));
    }
    let run = |threads| {
        let opts = SearchOptions {
            threads: Some(threads),
            ..SearchOptions::default()
        };
        search_elusive(3, 3, 3, &opts).unwrap().render()
    };
    let strip = |s: String| {
        s.lines()
            .filter(|l| !l.starts_with("wall_time_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(run(1)), strip(run(4)));
}

#[test]
fn largest_enumerated_code_is_a_maximum_clique() {
    let (vs, adj) = distance3_graph(4, 3);
    let mut best = 0;
    max_clique(&adj, 0, (0..vs.len()).collect(), Vec::new(), &mut best);
    assert_eq!(best, 9);

    let group = full_group(4, 3, 100_000).unwrap();
    let codes = enumerate_codes(4, 3, 3, usize::MAX, &group, &Caps::default()).unwrap();
    assert_eq!(codes.iter().map(Code::len).max(), Some(best));

    // the ternary Hamming code [4,2,3]
    let hamming: Code = Code::new((0..9u8).map(|k| {
        let (a, b) = (k / 3, k % 3);
        Vertex::new(vec![a, b, (a + b) % 3, (a + 2 * b) % 3], 3).unwrap()
    }))
    .unwrap();
    assert_eq!(hamming.min_distance().unwrap(), 3);
    let hits = codes
        .iter()
        .filter(|c| c.len() == 9 && are_equivalent(c, &hamming, &group).unwrap().is_some())
        .count();
    assert_eq!(hits, 1);
}

#[test]
fn enumerated_codes_are_orbit_minima() {
    let group = full_group(4, 3, 100_000).unwrap();
    let elements = group.elements().unwrap();
    assert_eq!(elements.len(), 31104);
    let codes = enumerate_codes(4, 3, 3, usize::MAX, &group, &Caps::default()).unwrap();
    for c in &codes {
        let key: Vec<usize> = c.words().iter().map(Vertex::index).collect();
        for x in elements {
            let mut image: Vec<usize> = c.image(x).unwrap().words().iter().map(Vertex::index).collect();
            image.sort_unstable();
            assert!(image >= key, "{key:?} is not minimal");
        }
    }
    // distinct classes
    let keys: BTreeSet<Vec<usize>> = codes
        .iter()
        .map(|c| c.words().iter().map(Vertex::index).collect())
        .collect();
    assert_eq!(keys.len(), codes.len());
}

#[test]
fn elusivity_is_invariant_under_equivalence() {
    let group = full_group(3, 3, 10_000).unwrap();
    let codes = enumerate_codes(3, 3, 3, usize::MAX, &group, &Caps::default()).unwrap();
    let samples: Vec<_> = group.elements().unwrap().iter().step_by(97).cloned().collect();
    for c in &codes {
        let stab = setwise_stabiliser(&group, &c.neighbour_set()).unwrap();
        let elusive = stab.elements().unwrap().iter().any(|x| &c.image(x).unwrap() != c);
        for y in &samples {
            let cy = c.image(y).unwrap();
            let stab_y = setwise_stabiliser(&group, &cy.neighbour_set()).unwrap();
            assert_eq!(stab_y.order(), stab.order());
            // conjugate of the stabiliser is the stabiliser of the image
            for x in stab.elements().unwrap().iter().take(8) {
                let conj = autgroup::compose(&autgroup::compose(&autgroup::inverse(y), x).unwrap(), y).unwrap();
                assert!(stab_y.elements().unwrap().contains(&conj));
            }
            let elusive_y = stab_y.elements().unwrap().iter().any(|x| cy.image(x).unwrap() != cy);
            assert_eq!(elusive, elusive_y);
        }
    }
}

#[test]
fn found_pair_in_h33_verifies() {
    let cert = search_elusive(3, 3, 3, &SearchOptions::default()).unwrap();
    let (code, group) = cert.found_pair.unwrap();
    let report = verify_elusive(&code, group.elements().unwrap(), &Caps::default()).unwrap();
    assert!(report.is_elusive);
    // under the full stabiliser the three δ = 3 codes in the complement of
    // Γ_1 (both cosets and the repetition code, up to equivalence) are swapped
    assert_eq!(report.image_count_r, 3);
    assert!(report.images_pairwise_disjoint);
}
