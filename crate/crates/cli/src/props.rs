//! Seeded randomised checks of the algebraic and I/O contracts.

use std::fmt::Write as _;

use elusive_core::autgroup::{apply, compose, inverse, Automorphism};
use elusive_core::codes::Code;
use elusive_core::hamming::{distance, sphere, Vertex};
use elusive_core::io::{parse_automorphism, CodeFile};
use elusive_core::perms::{self, Perm};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failures == 0)
    }

    pub fn render(&self) -> String {
        let mut out = format!("seed={}\n", self.seed);
        for o in &self.outcomes {
            let _ = writeln!(out, "property={} cases={} failures={}", o.name, o.cases, o.failures);
        }
        let _ = writeln!(out, "result={}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut images: Vec<u8> = (0..n as u8).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("a shuffle is a permutation")
}

fn random_automorphism(rng: &mut ChaCha8Rng, m: usize, q: usize) -> Automorphism {
    let maps: Vec<Perm> = (0..m).map(|_| random_perm(rng, q)).collect();
    Automorphism::new(&maps, &random_perm(rng, m)).expect("valid parts")
}

fn random_vertex(rng: &mut ChaCha8Rng, m: usize, q: usize) -> Vertex {
    Vertex::new((0..m).map(|_| rng.gen_range(0..q as u8)).collect(), q).expect("entries below q")
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check(name: &'static str, cases: usize, mut case: impl FnMut() -> bool) -> PropertyOutcome {
    let failures = (0..cases).filter(|_| !case()).count();
    PropertyOutcome { name, cases, failures }
}

/// Runs every property `cases` times from a generator seeded with `seed`.
pub fn run_properties(seed: u64, cases: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::new();

    outcomes.push(check("action-axioms", cases, || {
        let (m, q) = (rng.gen_range(1..=5), rng.gen_range(2..=5));
        let (x, y) = (random_automorphism(&mut rng, m, q), random_automorphism(&mut rng, m, q));
        let v = random_vertex(&mut rng, m, q);
        let xy = compose(&x, &y).unwrap();
        let vx = apply(&x, &v).unwrap();
        apply(&xy, &v).unwrap() == apply(&y, &vx).unwrap()
            && apply(&Automorphism::identity(m, q), &v).unwrap() == v
            && apply(&inverse(&x), &vx).unwrap() == v
    }));

    outcomes.push(check("isometry", cases, || {
        let (m, q) = (rng.gen_range(1..=6), rng.gen_range(2..=5));
        let x = random_automorphism(&mut rng, m, q);
        let (u, v) = (random_vertex(&mut rng, m, q), random_vertex(&mut rng, m, q));
        distance(&apply(&x, &u).unwrap(), &apply(&x, &v).unwrap()).unwrap() == distance(&u, &v).unwrap()
    }));

    outcomes.push(check("sphere-size", cases, || {
        let (m, q) = (rng.gen_range(1..=5), rng.gen_range(2..=4));
        let r = rng.gen_range(0..=m);
        let c = random_vertex(&mut rng, m, q);
        sphere(&c, r).unwrap().len() == binomial(m, r) * (q - 1).pow(r as u32)
    }));

    outcomes.push(check("parity-homomorphism", cases, || {
        let n = rng.gen_range(1..=8);
        let (p, r) = (random_perm(&mut rng, n), random_perm(&mut rng, n));
        perms::compose(&p, &r).unwrap().parity() == p.parity().xor(r.parity())
    }));

    outcomes.push(check("code-file-round-trip", cases, || {
        let (m, q) = (rng.gen_range(1..=5), rng.gen_range(2..=5));
        let size = rng.gen_range(1..=12);
        let code = Code::new((0..size).map(|_| random_vertex(&mut rng, m, q))).unwrap();
        let file = CodeFile::new(code).with_comment("random");
        let text = file.render();
        match CodeFile::parse(&text) {
            Ok(back) => back == file && back.render() == text,
            Err(_) => false,
        }
    }));

    outcomes.push(check("automorphism-text-round-trip", cases, || {
        let (m, q) = (rng.gen_range(1..=5), rng.gen_range(2..=5));
        let x = random_automorphism(&mut rng, m, q);
        parse_automorphism(&x.to_string(), q).map(|y| y == x).unwrap_or(false)
    }));

    PropertyReport { seed, outcomes }
}
