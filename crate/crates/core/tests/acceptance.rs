//! Acceptance runner: one line per criterion, nonzero exit on any failure.

use parityhom::verify::{run_suite, SuiteParams, SuiteReport};
use std::time::{Duration, Instant};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: &'static str,
    params: SuiteParams,
    /// Exact instance count, when the suite is a fixed grid.
    total: Option<usize>,
    limit: Duration,
}

fn params(f: impl FnOnce(&mut SuiteParams)) -> SuiteParams {
    let mut p = SuiteParams::default();
    f(&mut p);
    p
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "cycle lifts are 2C_k and C_2k, k=3..8",
            suite: "construction",
            params: SuiteParams::default(),
            total: Some(6),
            limit: secs(1),
        },
        Criterion {
            id: 2,
            title: "lifts of K_4: rook graph and Shrikhande graph",
            suite: "rook-shrikhande",
            params: SuiteParams::default(),
            total: Some(4),
            limit: secs(10),
        },
        Criterion {
            id: 3,
            title: "counting duality, connected G <= 5 against all F <= 5",
            suite: "main-dual",
            params: params(|p| (p.gmax, p.fmax) = (5, 5)),
            // 31 connected bases times 52 sources.
            total: Some(31 * 52),
            limit: secs(600),
        },
        Criterion {
            id: 4,
            title: "hom(G, G_0) != hom(G, G_1) and parity law, connected G <= 5",
            suite: "zero-iso",
            params: params(|p| p.nmax = 5),
            total: Some(31),
            limit: secs(600),
        },
        Criterion {
            id: 5,
            title: "weak oddomorphisms between cycles of length 3..8",
            suite: "cycle-oddos",
            params: SuiteParams::default(),
            total: Some(36),
            limit: secs(60),
        },
        Criterion {
            id: 6,
            title: "star lifts against maximum degree < 3 up to 7 vertices",
            suite: "bounded-degree",
            params: params(|p| (p.degree, p.nmax) = (3, 7)),
            total: Some(5),
            limit: secs(120),
        },
        Criterion {
            id: 7,
            title: "minor transport on 100 seeded instances",
            suite: "minor-transport",
            params: params(|p| p.count = 100),
            total: Some(100),
            limit: secs(300),
        },
        Criterion {
            id: 8,
            title: "composition, antisymmetry and clique rigidity",
            suite: "composition",
            params: params(|p| (p.count, p.fmax) = (100, 5)),
            // 100 chains, 52 graphs, 5 cliques.
            total: Some(100 + 52 + 5),
            limit: secs(600),
        },
        Criterion {
            id: 9,
            title: "chordless odd-winding cycles on 50 seeded sources",
            suite: "winding",
            params: params(|p| p.count = 50),
            total: Some(50),
            limit: secs(300),
        },
        Criterion {
            id: 10,
            title: "GF(2) kernel on 1000 seeded systems",
            suite: "gf2",
            params: params(|p| p.count = 1000),
            total: Some(1000),
            limit: secs(30),
        },
        Criterion {
            id: 11,
            title: "looped lifts against weak oddisms, star characterization",
            suite: "loops",
            params: SuiteParams::default(),
            total: None,
            limit: secs(600),
        },
        Criterion {
            id: 12,
            title: "bipartite F <= 6 never certify against non-bipartite G <= 5",
            suite: "bipartite",
            params: params(|p| (p.fmax, p.gmax) = (6, 5)),
            total: None,
            limit: secs(600),
        },
    ]
}

fn judge(c: &Criterion, report: &SuiteReport, elapsed: Duration) -> Result<(), String> {
    if let Some(i) = report.first_failure() {
        return Err(format!(
            "{} failed of {}; first: {} ({})",
            report.failures, report.total, i.id, i.detail
        ));
    }
    if let Some(t) = c.total {
        if report.total != t {
            return Err(format!("expected {t} instances, ran {}", report.total));
        }
    }
    if report.total == 0 {
        return Err("no instances".into());
    }
    if elapsed > c.limit {
        return Err(format!("took {elapsed:.2?}, limit {:?}", c.limit));
    }
    Ok(())
}

fn main() {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria() {
        if !only.is_empty() && !only.contains(&c.id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run_suite(c.suite, &c.params).map_err(|e| e.to_string());
        let elapsed = start.elapsed();
        let verdict = outcome.and_then(|r| judge(&c, &r, elapsed).map(|()| r.total));
        match verdict {
            Ok(n) => println!("[PASS] {:>2} {} ({n} instances, {elapsed:.2?})", c.id, c.title),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {} ({elapsed:.2?}): {why}", c.id, c.title);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
