//! Acceptance checks. Each test prints one `PASS`/`FAIL` line and then asserts it.
//! Lines go straight to stdout so they show up without `--nocapture`.

use std::io::Write;
use std::time::Instant;

use bubblestar::cayley::CayleyGraph;
use bubblestar::cli;
use bubblestar::permutation::Permutation;
use bubblestar::tpath::{
    brute_force_pi3, build_witness, pi3_formula, random_triple, structural_audit, upper_bound, verify_web,
    verify_witness, BoundMode, ClauseStatus, TPathWitness,
};
use bubblestar::webbuilder::{PairwiseWeb, TerminalTriple, WebShape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const RANDOM_TRIPLES: usize = 500;
const ORACLE_SAMPLES_N4: usize = 60;
const ORACLE_BUDGET: u64 = 200_000_000;

fn report(criterion: &str, ok: bool, detail: &str) {
    let line = format!("[acceptance] {} {}: {}\n", if ok { "PASS" } else { "FAIL" }, criterion, detail);
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn all_triples(g: &CayleyGraph) -> Vec<[Permutation; 3]> {
    let vs: Vec<_> = g.vertices().collect();
    let mut ts = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                ts.push([vs[i], vs[j], vs[k]]);
            }
        }
    }
    ts
}

fn seeded_triples(g: &CayleyGraph, seed: u64, count: usize) -> Vec<[Permutation; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_triple(g, &mut rng)).collect()
}

/// Builds and independently re-verifies a witness; `Err` names what went wrong.
fn run_pipeline(g: &CayleyGraph, t: [Permutation; 3]) -> Result<TPathWitness, String> {
    let w = build_witness(g, t).map_err(|e| format!("{:?}: {}", t, e))?;
    verify_witness(g, &w).map_err(|v| format!("{:?}: {}", t, v))?;
    Ok(w)
}

fn shape_matches(n: usize, web: &PairwiseWeb) -> bool {
    let want = WebShape::for_dim(n);
    web.shape() == want
}

struct Sweep {
    label: String,
    triples: usize,
    exact: usize,
    failures: Vec<String>,
    web_ok: usize,
    web_failures: Vec<String>,
}

fn sweep(n: usize, triples: Vec<[Permutation; 3]>, label: &str) -> Sweep {
    let g = CayleyGraph::build(n).unwrap();
    let want = pi3_formula(n);
    let results: Vec<_> = triples
        .par_iter()
        .map(|&t| {
            let w = run_pipeline(&g, t);
            let count = match &w {
                Ok(w) if w.t_paths.len() == want => Ok(()),
                Ok(w) => Err(format!("{:?}: {} paths", t, w.t_paths.len())),
                Err(e) => Err(e.clone()),
            };
            let web = match &w {
                Ok(w) => verify_web(&g, &w.triple(), &w.web)
                    .map_err(|v| format!("{:?}: {}", t, v))
                    .and_then(|_| {
                        if shape_matches(n, &w.web) {
                            Ok(())
                        } else {
                            Err(format!("{:?}: shape {:?}", t, w.web.shape()))
                        }
                    }),
                Err(e) => Err(e.clone()),
            };
            (count, web)
        })
        .collect();
    let mut s = Sweep {
        label: label.to_string(),
        triples: triples.len(),
        exact: 0,
        failures: Vec::new(),
        web_ok: 0,
        web_failures: Vec::new(),
    };
    for (count, web) in results {
        match count {
            Ok(()) => s.exact += 1,
            Err(e) => s.failures.push(e),
        }
        match web {
            Ok(()) => s.web_ok += 1,
            Err(e) => s.web_failures.push(e),
        }
    }
    s
}

fn sweeps() -> Vec<(usize, Sweep)> {
    let mut out = Vec::new();
    for (n, exhaustive) in [(3, true), (4, true), (5, false), (6, false)] {
        let g = CayleyGraph::build(n).unwrap();
        let (triples, label) = if exhaustive {
            (all_triples(&g), "all triples")
        } else {
            (seeded_triples(&g, 0x5eed + n as u64, RANDOM_TRIPLES), "seeded triples")
        };
        out.push((n, sweep(n, triples, label)));
    }
    out
}

fn first(v: &[String]) -> String {
    v.first().map(|e| format!(", first failure {}", e)).unwrap_or_default()
}

#[test]
fn formula_reproduction_and_web_shape() {
    let start = Instant::now();
    let results = sweeps();
    let elapsed = start.elapsed();

    let mut ok = true;
    for (n, s) in &results {
        let pass = s.failures.is_empty() && s.exact == s.triples;
        ok &= pass;
        report(
            &format!("formula reproduction n={}", n),
            pass,
            &format!(
                "{}/{} {} give exactly {} verified T-paths{}",
                s.exact,
                s.triples,
                s.label,
                pi3_formula(*n),
                first(&s.failures)
            ),
        );
    }
    report(
        "formula reproduction runtime",
        elapsed.as_secs_f64() < 60.0,
        &format!("{:.1}s for all sweeps (limit 60s)", elapsed.as_secs_f64()),
    );

    let mut shape_ok = true;
    for (n, s) in &results {
        let pass = s.web_failures.is_empty();
        shape_ok &= pass;
        let want = WebShape::for_dim(*n);
        report(
            &format!("web shape n={}", n),
            pass,
            &format!(
                "{}/{} webs verified with counts ({}, {}, {}) + {} spares{}",
                s.web_ok,
                s.triples,
                want.ab,
                want.bc,
                want.ac,
                want.spares,
                first(&s.web_failures)
            ),
        );
    }
    assert!(ok, "formula reproduction failed");
    assert!(shape_ok, "web shape failed");
}

#[test]
fn exactness_certificate() {
    let start = Instant::now();
    let mut ok = true;
    for n in [3usize, 4] {
        let g = CayleyGraph::build(n).unwrap();
        let triples = if n == 3 { all_triples(&g) } else { seeded_triples(&g, 0x0dd1, ORACLE_SAMPLES_N4) };
        let want = pi3_formula(n);
        let values: Vec<_> = triples
            .par_iter()
            .map(|&t| {
                let tt = TerminalTriple::new(t[0], t[1], t[2]).unwrap();
                (t, brute_force_pi3(&g, &tt, ORACLE_BUDGET).unwrap())
            })
            .collect();
        let inexact = values.iter().filter(|(_, r)| !r.exact).count();
        let equal = values.iter().filter(|(_, r)| r.exact && r.value == want).count();
        let min = values.iter().map(|(_, r)| r.value).min().unwrap();
        let above: Vec<_> = values
            .iter()
            .filter(|(_, r)| r.value > want)
            .map(|(t, r)| format!("{}/{}/{} -> {}", t[0], t[1], t[2], r.value))
            .collect();
        let pass = equal == values.len();
        ok &= pass;
        report(
            &format!("oracle equals formula per triple n={}", n),
            pass,
            &format!(
                "{}/{} triples equal {}, {} above, {} inconclusive{}",
                equal,
                values.len(),
                want,
                above.len(),
                inexact,
                if above.is_empty() { String::new() } else { format!(", e.g. {}", above[0]) }
            ),
        );
        let min_ok = inexact == 0 && min == want;
        ok &= min_ok;
        report(
            &format!("oracle minimum over triples n={}", n),
            min_ok,
            &format!("minimum {} against formula {}", min, want),
        );

        let b = upper_bound(&g, BoundMode::Exhaustive).unwrap();
        let pass = b.bound == want && b.cmax == 3;
        ok &= pass;
        report(
            &format!("exhaustive upper bound n={}", n),
            pass,
            &format!("cmax {} over {} triples, bound {} against formula {}", b.cmax, b.triples, b.bound, want),
        );
    }
    let secs = start.elapsed().as_secs_f64();
    report("exactness certificate runtime", secs < 300.0, &format!("{:.1}s (limit 300s)", secs));
    assert!(ok, "exactness certificate failed");
}

#[test]
fn copy_structure_audit() {
    let start = Instant::now();
    let mut ok = true;
    let required: &[(usize, &[&str])] = &[
        (3, &["connectivity is 2n-3"]),
        (
            4,
            &[
                "cross edges per copy pair",
                "out-neighbours of a copy are distinct",
                "two vertices share at most three neighbours",
                "three vertices share at most three neighbours",
                "connectivity is 2n-3",
                "connectivity of copy unions",
            ],
        ),
        (5, &["cross edges per copy pair", "out-neighbours of a copy are distinct"]),
    ];
    for &(n, names) in required {
        let g = CayleyGraph::build(n).unwrap();
        let audit = structural_audit(&g);
        for &name in names {
            let clause = audit.clauses.iter().find(|c| c.name == name);
            let pass = clause.is_some_and(|c| c.status == ClauseStatus::Pass);
            ok &= pass;
            report(
                &format!("audit n={} {}", n, name),
                pass,
                &clause.map(|c| c.detail.clone()).unwrap_or_else(|| "missing clause".into()),
            );
        }
        let pass = audit.passed();
        ok &= pass;
        report(&format!("audit n={} no failing clause", n), pass, &format!("{} clauses", audit.clauses.len()));
    }
    let secs = start.elapsed().as_secs_f64();
    report("audit runtime", secs < 600.0, &format!("{:.1}s (limit 600s)", secs));
    assert!(ok, "structural audit failed");
}

#[test]
fn scaling_smoke_test() {
    let mut ok = true;
    for (n, limit) in [(7usize, 10.0f64), (8, 120.0)] {
        let start = Instant::now();
        let g = CayleyGraph::build(n).unwrap();
        let t = seeded_triples(&g, 7 * n as u64, 1)[0];
        let w = run_pipeline(&g, t);
        let secs = start.elapsed().as_secs_f64();
        let (pass, detail) = match &w {
            Ok(w) => (
                w.t_paths.len() == pi3_formula(n),
                format!("{} verified T-paths (want {}) in {:.2}s, indicative limit {:.0}s", w.t_paths.len(), pi3_formula(n), secs, limit),
            ),
            Err(e) => (false, e.clone()),
        };
        ok &= pass;
        report(&format!("scaling n={} ({} vertices)", n, g.vertex_count()), pass, &detail);
    }
    assert!(ok, "scaling smoke test failed");
}

fn cli_capture(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("bubblestar").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

#[test]
fn determinism() {
    let mut ok = true;

    let mut mismatched = 0;
    let mut total = 0;
    for n in [4usize, 5, 6] {
        let g = CayleyGraph::build(n).unwrap();
        for t in seeded_triples(&g, 42, 20) {
            let a = run_pipeline(&g, t).unwrap().to_json();
            let b = run_pipeline(&g, t).unwrap().to_json();
            total += 1;
            if a != b {
                mismatched += 1;
            }
        }
    }
    let pass = mismatched == 0;
    ok &= pass;
    report("determinism of witness JSON", pass, &format!("{}/{} repeated builds byte-identical", total - mismatched, total));

    let dir = tempfile::tempdir().unwrap();
    let mut same = 0;
    let runs = [("5", "3"), ("6", "11"), ("7", "1")];
    for (n, seed) in runs {
        let files: Vec<_> = (0..2)
            .map(|i| {
                let p = dir.path().join(format!("w{}_{}_{}.json", n, seed, i));
                let (code, _) = cli_capture(&["witness", "--n", n, "--seed", seed, "--out", p.to_str().unwrap()]);
                assert_eq!(code, 0);
                std::fs::read(&p).unwrap()
            })
            .collect();
        if files[0] == files[1] {
            same += 1;
        }
    }
    let pass = same == runs.len();
    ok &= pass;
    report("determinism of witness files", pass, &format!("{}/{} seeded CLI runs wrote identical files", same, runs.len()));
    assert!(ok, "determinism failed");
}
