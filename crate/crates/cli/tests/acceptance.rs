//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use elusive_cli::props::run_properties;
use elusive_core::autgroup::{self, diag_top_generators, vertex_orbits, wreath_generators, Automorphism};
use elusive_core::codes::{fixes_setwise, is_neighbour_transitive, Code};
use elusive_core::constructions::{
    parity_code, perm_code, product_code, rep_code, BlockParity, PermCodeSpec, PermSource,
};
use elusive_core::elusive::{neighbour_degree_profile, verify_elusive};
use elusive_core::hamming::Vertex;
use elusive_core::lemmas::{run_suite, Suite};
use elusive_core::perms::Perm;
use elusive_core::Caps;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn perm(q: usize, source: PermSource) -> Code {
    perm_code(&PermCodeSpec::new(q, source), usize::MAX).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn neighbour_sets_agree() -> Outcome {
    for q in 3..=5 {
        let (a, s) = (perm(q, PermSource::Alternating), perm(q, PermSource::Symmetric));
        ensure(a.neighbour_set() == s.neighbour_set(), format!("Γ_1 differs at q={q}"))?;
    }
    Ok("Γ_1(C(A_q)) = Γ_1(C(S_q)) for q=3,4,5".into())
}

fn minimum_distances() -> Outcome {
    let mut rows = Vec::new();
    for q in 3..=6 {
        let ds = perm(q, PermSource::Symmetric).min_distance().unwrap();
        let da = perm(q, PermSource::Alternating).min_distance().unwrap();
        ensure(ds == 2 && da == 3, format!("q={q}: δ(C(S_q))={ds}, δ(C(A_q))={da}"))?;
        rows.push(format!("q={q}:2/3"));
    }
    for (m, q) in [(3, 3), (5, 5)] {
        let d = rep_code(m, q).unwrap().min_distance().unwrap();
        ensure(d == m, format!("δ(Rep({m},{q}))={d}"))?;
    }
    for (q, l) in [(3, 2), (3, 3), (4, 2)] {
        let d = parity_code(q, l, BlockParity::Even, usize::MAX)
            .unwrap()
            .min_distance()
            .unwrap();
        ensure(d == 3, format!("δ(C({q},{l}))={d}"))?;
    }
    Ok(format!("{}; Rep δ=m; C(q,l) δ=3", rows.join(" ")))
}

fn neighbour_transitivity() -> Outcome {
    for q in [3, 4] {
        let gens = diag_top_generators(q, q).unwrap();
        let ok = is_neighbour_transitive(&gens, &perm(q, PermSource::Symmetric)).unwrap();
        ensure(ok, format!("C(S_{q}) not neighbour transitive"))?;
    }
    for l in [2, 3] {
        let sym = perm(3, PermSource::Symmetric);
        let code = product_code(&sym, l, usize::MAX).unwrap();
        let gens = wreath_generators(&diag_top_generators(3, 3).unwrap(), 3, 3, l).unwrap();
        let ok = is_neighbour_transitive(&gens, &code).unwrap();
        ensure(ok, format!("Prod(C(S_3),{l}) not neighbour transitive"))?;
    }
    Ok("single orbits on C and Γ_1(C) for q=3,4 and (3,2),(3,3)".into())
}

fn elusive_pairs() -> Outcome {
    let caps = Caps::default();
    let mut cases: Vec<(String, Code, Vec<Automorphism>, bool)> = Vec::new();
    for q in 3..=5 {
        let gens = diag_top_generators(q, q).unwrap();
        cases.push((format!("C(A_{q})"), perm(q, PermSource::Alternating), gens, false));
    }
    for l in [2, 3] {
        let gens = wreath_generators(&diag_top_generators(3, 3).unwrap(), 3, 3, l).unwrap();
        cases.push((
            format!("C(3,{l})"),
            parity_code(3, l, BlockParity::Even, usize::MAX).unwrap(),
            gens,
            false,
        ));
    }
    for q in [4, 5] {
        let code = perm(q, PermSource::Alternating)
            .union(&rep_code(q, q).unwrap())
            .unwrap();
        cases.push((format!("C(A_{q})∪Rep"), code, diag_top_generators(q, q).unwrap(), true));
    }
    for (label, code, gens, with_rep) in cases {
        let r = verify_elusive(&code, &gens, &caps).unwrap();
        ensure(
            r.is_elusive && r.image_count_r == 2,
            format!("{label}: elusive={} r={}", r.is_elusive, r.image_count_r),
        )?;
        if with_rep {
            let q = code.q();
            ensure(
                r.images_intersection == Some(rep_code(q, q).unwrap()),
                format!("{label}: intersection is not Rep"),
            )?;
        } else {
            ensure(r.images_pairwise_disjoint, format!("{label}: images overlap"))?;
        }
    }
    Ok("7 pairs elusive with r=2; disjoint images or intersection Rep(q,q)".into())
}

fn degree_profile_q5() -> Outcome {
    let a5 = perm(5, PermSource::Alternating);
    let rep = rep_code(5, 5).unwrap();
    let code = a5.union(&rep).unwrap();
    let profile = neighbour_degree_profile(&code);
    let gamma = code.neighbour_set();
    let a_side: BTreeSet<Vertex> = a5.neighbour_set().intersection(&gamma).cloned().collect();
    for mu in &gamma {
        let want = if a_side.contains(mu) { 9 } else { 3 };
        ensure(
            profile.degree(mu) == Some(want),
            format!("degree of {mu:?} is {:?}", profile.degree(mu)),
        )?;
    }
    let orbits = vertex_orbits(&diag_top_generators(5, 5).unwrap(), &gamma).unwrap();
    ensure(orbits.len() == 2, format!("{} orbits on Γ_1(C)", orbits.len()))?;
    let hist: BTreeMap<usize, usize> = profile.histogram();
    Ok(format!("degree histogram {hist:?}; 2 orbits"))
}

fn exceptional_element() -> Outcome {
    let id = Perm::identity(4);
    let h = Perm::parse("(0 2)(1 3)", 4).unwrap();
    let x = Automorphism::new(&[id.clone(), id.clone(), h.clone(), h], &Perm::identity(4)).unwrap();
    let code = perm(4, PermSource::Alternating)
        .union(&rep_code(4, 4).unwrap())
        .unwrap();
    ensure(fixes_setwise(&x, &code.neighbour_set()).unwrap(), "Γ_1(C) not fixed")?;
    let image = autgroup::apply(&x, &Vertex::from_digits("0023", 4).unwrap()).unwrap();
    ensure(
        image == Vertex::from_digits("0001", 4).unwrap(),
        format!("image {image:?}"),
    )?;
    Ok("fixes Γ_1(C(A_4)∪Rep(4,4)); (0,0,2,3) -> (0,0,0,1)".into())
}

fn cli_search(m: usize, q: usize, delta: usize, extra: &[&str]) -> Result<BTreeMap<String, String>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_elusive"))
        .args([
            "search",
            "--m",
            &m.to_string(),
            "--q",
            &q.to_string(),
            "--delta",
            &delta.to_string(),
        ])
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), format!("exit status {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let fields = text
        .lines()
        .take_while(|l| !l.starts_with("---"))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .chain([("_text".to_string(), text.clone())])
        .collect();
    Ok(fields)
}

fn non_existence() -> Outcome {
    let mut summary = Vec::new();
    for filter in [&[][..], &["--no-parity-filter"][..]] {
        let mut counts = BTreeSet::new();
        for threads in ["1", "4"] {
            let mut args = vec!["--threads", threads];
            args.extend_from_slice(filter);
            let cert = cli_search(4, 3, 3, &args)?;
            ensure(
                cert["outcome"] == "NoneExhaustive",
                format!("outcome {}", cert["outcome"]),
            )?;
            counts.insert(cert["canonical_codes_examined"].clone());
        }
        ensure(counts.len() == 1, format!("counts differ across threads: {counts:?}"))?;
        summary.push(format!(
            "{}: {} codes",
            if filter.is_empty() { "filtered" } else { "unfiltered" },
            counts.first().unwrap()
        ));
    }
    Ok(format!("NoneExhaustive ({})", summary.join(", ")))
}

fn positive_control() -> Outcome {
    let cert = cli_search(3, 3, 3, &[])?;
    ensure(cert["outcome"] == "Found", format!("outcome {}", cert["outcome"]))?;
    let text = &cert["_text"];
    let (_, code_text) = text.split_once("--- found_code ---\n").ok_or("no embedded code")?;
    let found = elusive_core::io::CodeFile::parse(code_text)
        .map_err(|e| e.to_string())?
        .code;
    let full = autgroup::full_group(3, 3, 10_000).unwrap();
    let a3 = perm(3, PermSource::Alternating);
    let eq = elusive_core::codes::are_equivalent(&found, &a3, &full).unwrap();
    ensure(eq.is_some(), "found code not equivalent to C(A_3)")?;
    Ok(format!("Found {} codewords, equivalent to C(A_3)", found.len()))
}

fn lemma_batteries() -> Outcome {
    let mut parts = Vec::new();
    for suite in [Suite::Neigh, Suite::Act, Suite::Partition, Suite::Same] {
        let r = run_suite(suite).unwrap();
        ensure(
            r.passed(),
            format!("{}: {}", r.name, r.failures.first().cloned().unwrap_or_default()),
        )?;
        parts.push(format!("{} {}", r.name, r.checks));
    }
    Ok(format!("all checks pass ({})", parts.join(", ")))
}

fn property_suite() -> Outcome {
    let r = run_properties(20260101, 500);
    ensure(r.passed(), r.render())?;
    Ok(format!("{} properties x 500 cases, seed 20260101", r.outcomes.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("neighbour-set identity", Duration::from_secs(10), neighbour_sets_agree),
        ("minimum-distance table", Duration::from_secs(30), minimum_distances),
        (
            "neighbour transitivity",
            Duration::from_secs(60),
            neighbour_transitivity,
        ),
        ("elusive-pair verification", Duration::from_secs(120), elusive_pairs),
        ("q=5 degree profile", Duration::from_secs(120), degree_profile_q5),
        ("q=4 exceptional element", Duration::from_secs(10), exceptional_element),
        ("(4,3,3) non-existence", Duration::from_secs(900), non_existence),
        ("(3,3,3) positive control", Duration::from_secs(60), positive_control),
        ("lemma batteries", Duration::from_secs(300), lemma_batteries),
        ("property suite", Duration::from_secs(300), property_suite),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {name}: {detail} [{:.2}s, limit {}s]",
            k + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
