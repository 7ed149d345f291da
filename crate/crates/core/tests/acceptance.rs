//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Every check is exact. Optima on the oracle side come from exhaustive
//! search; nothing here is compared against a tolerance.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use sepkit::generators::{complete, complete_bipartite, connected_gnp, cube, cycle, gnp, path, prism, random_bipartite, random_cubic};
use sepkit::oracle::{
    enum_minimal_separators_bruteforce, enum_minimal_separators_delay, max_minimal_separator_bruteforce,
    min_independent_dominating_set_bruteforce,
};
use sepkit::reductions::{
    cobipartite_reduction, compose_universal, linegraph_reduction, subdivide_cubic, verify_reduction, Detail,
};
use sepkit::{solve, Graph, VertexSet};

const MAX_N: usize = 20;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn optimum(g: &Graph, weighted: bool) -> Option<u64> {
    max_minimal_separator_bruteforce(g, weighted, MAX_N).unwrap().map(|(_, v)| v)
}

fn solver_matches_oracle(corpus: &[(String, Graph)]) -> Outcome {
    let mut decisions = 0;
    for (name, g) in corpus {
        let opt = optimum(g, false);
        for k in 0..=g.n() as u64 {
            let r = solve(g, k, false).map_err(|e| format!("{name} k={k}: {e}"))?;
            let expected = opt.is_some_and(|o| o >= k);
            if r.decision != expected {
                return Err(format!("{name} k={k}: solve said {}, oracle optimum {opt:?}", r.decision));
            }
            if let Some(c) = &r.certificate {
                if !c.certify(g) || (c.size() as u64) < k {
                    return Err(format!("{name} k={k}: bad certificate {:?}", c.set()));
                }
            }
            decisions += 1;
        }
    }
    Ok(format!("{decisions} decisions over {} graphs", corpus.len()))
}

fn subdivision_biconditional() -> Outcome {
    let mut graphs = vec![
        ("K4".to_string(), complete(4)),
        ("K3,3".to_string(), complete_bipartite(3, 3)),
        ("prism".to_string(), prism()),
        ("Q3".to_string(), cube()),
    ];
    let mut r = common::rng(2);
    for i in 0..24 {
        let n = [4, 6, 8, 10][i % 4];
        graphs.push((format!("cubic{n}#{i}"), random_cubic(n, &mut r).unwrap()));
    }
    for (name, g) in &graphs {
        let cert = subdivide_cubic(g).map_err(|e| format!("{name}: {e}"))?;
        let rep = verify_reduction(&cert, MAX_N).map_err(|e| format!("{name}: {e}"))?;
        if !rep.pass || rep.source_optimum != rep.target_optimum {
            return Err(format!("{name}: {rep:?}"));
        }
    }
    let k4 = verify_reduction(&subdivide_cubic(&complete(4)).unwrap(), MAX_N).unwrap();
    if k4.source_optimum != Some(4) {
        return Err(format!("K4 connected cut {:?}, expected 4", k4.source_optimum));
    }
    Ok(format!("{} cubic graphs, K4 4 = 4", graphs.len()))
}

fn cobipartite_chain() -> Outcome {
    let mut graphs = vec![("C6".to_string(), cycle(6).unwrap()), ("C8".to_string(), cycle(8).unwrap())];
    let mut r = common::rng(3);
    let mut random = 0;
    while random < 24 {
        let a = r.gen_range(2..=6);
        let b = r.gen_range(2..=12 - a);
        let g = random_bipartite(a, b, 0.5, &mut r);
        if cobipartite_reduction(&g, None).is_ok() {
            graphs.push((format!("bip({a},{b})#{random}"), g));
            random += 1;
        }
    }
    for (name, g) in &graphs {
        let cert = cobipartite_reduction(g, None).map_err(|e| format!("{name}: {e}"))?;
        let Detail::Cobipartite { instance, .. } = &cert.detail else { unreachable!() };
        let mis = min_independent_dominating_set_bruteforce(instance, MAX_N).unwrap().len() as u64;
        let sep = optimum(&cert.target, false);
        if sep != Some(instance.n() as u64 - mis) {
            return Err(format!("{name}: |V| = {}, min maximal independent set {mis}, separator {sep:?}", instance.n()));
        }
        let rep = verify_reduction(&cert, MAX_N).map_err(|e| format!("{name}: {e}"))?;
        if !rep.pass {
            return Err(format!("{name}: {rep:?}"));
        }
    }
    let c6 = verify_reduction(&cobipartite_reduction(&cycle(6).unwrap(), None).unwrap(), MAX_N).unwrap();
    if (c6.source_optimum, c6.target_optimum) != (Some(2), Some(4)) {
        return Err(format!("C6: {c6:?}"));
    }
    Ok(format!("{} bipartite graphs, C6 6 - 2 = 4", graphs.len()))
}

fn linegraph_biconditional() -> Outcome {
    let mut graphs = vec![
        ("C4".to_string(), cycle(4).unwrap()),
        ("K4".to_string(), complete(4)),
        ("P5".to_string(), path(5)),
    ];
    let mut r = common::rng(4);
    for i in 0..24 {
        let n = 3 + i % 5;
        let p = [0.3, 0.5, 0.7][i % 3];
        graphs.push((format!("gnp({n},{p})#{i}"), connected_gnp(n, p, &mut r).unwrap()));
    }
    let mut rows = 0;
    for (name, g) in &graphs {
        let cert = linegraph_reduction(g).map_err(|e| format!("{name}: {e}"))?;
        let rep = verify_reduction(&cert, MAX_N).map_err(|e| format!("{name}: {e}"))?;
        if !rep.pass {
            return Err(format!("{name}: first violation at k = {:?}", rep.first_violation));
        }
        rows += rep.checks.iter().filter(|c| c.in_range).count();
    }
    Ok(format!("{} graphs, {rows} thresholds k >= 2", graphs.len()))
}

fn composition_biconditional() -> Outcome {
    let mut r = common::rng(5);
    let mut tuples = 0;
    for _ in 0..30 {
        let t = r.gen_range(2..=3);
        let parts: Vec<Graph> = (0..t)
            .map(|_| {
                let n = r.gen_range(1..=6);
                gnp(n, 0.5, &mut r)
            })
            .collect();
        let cert = compose_universal(&parts).map_err(|e| e.to_string())?;
        let rep = verify_reduction(&cert, MAX_N).map_err(|e| e.to_string())?;
        let best = parts.iter().filter_map(|p| optimum(p, false)).max();
        let expected = best.map(|b| b + 1).or(Some(1));
        if !rep.pass || rep.target_optimum != expected {
            return Err(format!("parts {parts:?}: {rep:?}"));
        }
        tuples += 1;
    }
    Ok(format!("{tuples} tuples of 2-3 graphs"))
}

fn decomposition_guarantees(corpus: &[(String, Graph)]) -> Outcome {
    let mut checked = 0;
    for (name, g) in corpus {
        for k in 3..=5u64 {
            let r = solve(g, k, false).map_err(|e| format!("{name} k={k}: {e}"))?;
            for td in &r.stats.decompositions {
                let bound = 2 * td.k as usize - 2;
                if !td.valid_filled || !td.valid_original || td.width > bound {
                    return Err(format!("{name} k={k}: {td:?}"));
                }
                checked += 1;
            }
        }
    }
    if checked == 0 {
        return Err("no run reached the decomposition path".into());
    }
    Ok(format!("{checked} decompositions valid with width <= 2k-2"))
}

fn enumeration(corpus: &[(String, Graph)]) -> Outcome {
    for (name, g) in corpus {
        let brute: BTreeSet<VertexSet> = enum_minimal_separators_bruteforce(g, MAX_N)
            .unwrap()
            .into_iter()
            .map(|s| s.into_set())
            .collect();
        let mut delay = BTreeSet::new();
        for s in enum_minimal_separators_delay(g) {
            if !delay.insert(s.into_set()) {
                return Err(format!("{name}: duplicate output"));
            }
        }
        if brute != delay {
            return Err(format!("{name}: {} by brute force, {} by enumeration", brute.len(), delay.len()));
        }
    }
    for n in 4..=12 {
        let count = enum_minimal_separators_delay(&cycle(n).unwrap()).count();
        if count != n * (n - 3) / 2 {
            return Err(format!("C{n}: {count} separators, expected {}", n * (n - 3) / 2));
        }
    }
    if let Some(n) = (1..=10).find(|&n| enum_minimal_separators_delay(&complete(n)).next().is_some()) {
        return Err(format!("K{n} has a minimal separator"));
    }
    Ok(format!("{} graphs as sets, C4..C12 counts, K1..K10 empty", corpus.len()))
}

fn weighted_solver() -> Outcome {
    let mut r = common::rng(6);
    let mut decisions = 0;
    for i in 0..60 {
        let n = 3 + i % 8;
        let p = [0.2, 0.4, 0.6][i % 3];
        let g = common::random_weights(&connected_gnp(n, p, &mut r).unwrap(), &mut r);
        let opt = optimum(&g, true);
        for k in 0..=g.total_weight() + 1 {
            let rep = solve(&g, k, true).map_err(|e| e.to_string())?;
            if rep.decision != opt.is_some_and(|o| o >= k) {
                return Err(format!("{g:?} k={k}: solve {} vs optimum {opt:?}", rep.decision));
            }
            if let Some(c) = &rep.certificate {
                if !c.certify(&g) || g.set_weight(c.set()) < k {
                    return Err(format!("{g:?} k={k}: bad certificate"));
                }
            }
            decisions += 1;
        }
    }
    Ok(format!("{decisions} weighted decisions over 60 graphs"))
}

fn clique_split_bound(corpus: &[(String, Graph)]) -> Outcome {
    let (mut runs, mut most) = (0, 0);
    for (name, g) in corpus {
        for k in 0..=g.n() as u64 {
            let r = solve(g, k, false).map_err(|e| e.to_string())?;
            if r.stats.clique_splits > g.n() {
                return Err(format!("{name} k={k}: {} splits on {} vertices", r.stats.clique_splits, g.n()));
            }
            most = most.max(r.stats.clique_splits);
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, at most {most} splits"))
}

fn main() -> ExitCode {
    let corpus = common::solver_corpus();
    let criteria: Vec<Criterion> = vec![
        ("C1 solver agrees with the exhaustive oracle", Box::new(|| solver_matches_oracle(&corpus))),
        ("C2 subdivision: connected cut vs separator", Box::new(subdivision_biconditional)),
        ("C3 co-bipartite: |V| - min maximal independent set", Box::new(cobipartite_chain)),
        ("C4 pendants + line graph, k >= 2", Box::new(linegraph_biconditional)),
        ("C5 universal-vertex composition", Box::new(composition_biconditional)),
        ("C6 assembled decompositions", Box::new(|| decomposition_guarantees(&corpus))),
        ("C7 enumeration", Box::new(|| enumeration(&corpus))),
        ("C8 weighted solver", Box::new(weighted_solver)),
        ("C9 clique splits per run <= n", Box::new(|| clique_split_bound(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
