//! Seeded verification suites. Each suite runs a batch of instances and
//! reports every one of them; the CLI and the acceptance runner both use
//! these.

use crate::bits::BitSet;
use crate::construct::{build_g01, build_gu, build_star_simplified, build_tilde_gu, shift_isomorphism};
use crate::cycles::extract_chordless_odd_cycle;
use crate::error::{Error, Result};
use crate::families::{indistinguishable_up_to, FamilyPredicate, Verdict};
use crate::gf2::{Gf2Matrix, Gf2System};
use crate::graph::{
    complete, cycle, enumerate_graphs, enumerate_graphs_with_loops, has_minor, is_bipartite, is_connected,
    is_isomorphic, is_minor_model, path, random_connected, rook, shrikhande, star, write_graph6, Graph, VertexMap,
};
use crate::homcount::{hom_count, hom_count_fibered, hom_enumerate, hom_vector_cycles};
use crate::oddo::{
    certificate_for_map, check_oddomorphism, compose_oddo, compose_weak, find_weak_oddism, find_weak_oddo,
    is_oddomorphism, minor_oddo, odd_cover, odd_subdivision, random_voltages, CertificateKind, OddoCertificate,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0x0dd0_5eed;

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "main-dual",
    "zero-iso",
    "winding",
    "minor-transport",
    "bounded-degree",
    "construction",
    "rook-shrikhande",
    "cycle-oddos",
    "composition",
    "gf2",
    "loops",
    "bipartite",
];

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteParams {
    pub seed: u64,
    /// Largest base graph.
    pub gmax: usize,
    /// Largest source graph.
    pub fmax: usize,
    /// Enumeration bound for family checks.
    pub nmax: usize,
    /// Number of seeded instances.
    pub count: usize,
    pub degree: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: DEFAULT_SEED,
            gmax: 5,
            fmax: 5,
            nmax: 5,
            count: 100,
            degree: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub params: SuiteParams,
    pub passed: bool,
    pub total: usize,
    pub failures: usize,
    pub instances: Vec<Instance>,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&Instance> {
        self.instances.iter().find(|i| !i.passed)
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<SuiteReport> {
    let instances = match name {
        "main-dual" => main_dual(p.gmax, p.fmax)?,
        "zero-iso" => zero_iso(p.nmax)?,
        "winding" => winding(p.count, p.seed)?,
        "minor-transport" => minor_transport(p.count, p.seed)?,
        "bounded-degree" => bounded_degree(p.degree, p.nmax)?,
        "construction" => construction()?,
        "rook-shrikhande" => rook_shrikhande()?,
        "cycle-oddos" => cycle_oddos()?,
        "composition" => composition(p.count, p.seed, p.fmax)?,
        "gf2" => gf2(p.count, p.seed)?,
        "loops" => loops()?,
        "bipartite" => bipartite(p.fmax, p.gmax)?,
        _ => {
            return Err(Error::param(format!(
                "unknown suite `{name}`; expected one of {SUITES:?}"
            )))
        }
    };
    let failures = instances.iter().filter(|i| !i.passed).count();
    Ok(SuiteReport {
        schema_version: 1,
        suite: name.to_string(),
        params: *p,
        passed: failures == 0,
        total: instances.len(),
        failures,
        instances,
    })
}

enum Fail {
    Check(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type Outcome = std::result::Result<(), Fail>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(Fail::Check(msg()))
    }
}

/// Runs one instance; guard refusals abort the suite, other errors fail the
/// instance.
fn instance(id: String, body: impl FnOnce() -> Outcome) -> Result<Instance> {
    let (passed, detail) = match body() {
        Ok(()) => (true, String::new()),
        Err(Fail::Check(s)) => (false, s),
        Err(Fail::Lib(e)) if e.is_refusal() => return Err(e),
        Err(Fail::Lib(e)) => (false, format!("error: {e}")),
    };
    Ok(Instance { id, passed, detail })
}

fn g6(g: &Graph) -> String {
    write_graph6(g).unwrap_or_else(|_| format!("<n={} m={}>", g.n(), g.m()))
}

fn rng_for(seed: u64, stream: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

fn verified(c: &OddoCertificate) -> Outcome {
    c.verify()
        .map_err(|v| Fail::Check(format!("certificate rejected: {v}")))
}

/// Odd witness vertices have at least the degree of their image.
fn degree_law(c: &OddoCertificate) -> Outcome {
    let (sub, map) = c.witness_graph();
    for &a in &c.witness.odd_set {
        let local = c.witness.vertices.binary_search(&a).expect("odd set inside witness");
        let (have, need) = (sub.degree(local), c.target.degree(map[local]));
        ensure(have >= need, || format!("odd vertex {a} has degree {have} < {need}"))?;
    }
    Ok(())
}

fn collect(items: Vec<Result<Instance>>) -> Result<Vec<Instance>> {
    items.into_iter().collect()
}

/// Counting duality on the full grid: connected `G` and arbitrary `F`.
pub fn main_dual(gmax: usize, fmax: usize) -> Result<Vec<Instance>> {
    let gs: Vec<Graph> = enumerate_graphs(gmax, true)?.collect();
    let fs: Vec<Graph> = enumerate_graphs(fmax, false)?.collect();
    let lifts = gs
        .iter()
        .map(|g| build_g01(g).map(|(a, b)| (a.graph, b.graph)))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..gs.len()).flat_map(|i| (0..fs.len()).map(move |j| (i, j))).collect();
    collect(
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (g, f) = (&gs[i], &fs[j]);
                instance(format!("G={} F={}", g6(g), g6(f)), || {
                    let (g0, g1) = &lifts[i];
                    let (h0, h1) = (hom_count(f, g0)?, hom_count(f, g1)?);
                    ensure(h1 <= h0, || format!("hom(F,G_1)={h1} > hom(F,G_0)={h0}"))?;
                    let cert = find_weak_oddo(f, g)?;
                    ensure((h1 < h0) == cert.is_some(), || {
                        format!("counts {h0} vs {h1} but certificate found: {}", cert.is_some())
                    })?;
                    if let Some(c) = &cert {
                        verified(c)?;
                        degree_law(c)?;
                    }
                    let homs = hom_enumerate(f, g, 1 << 22)?;
                    for (u, want) in [(&[][..], &h0), (&[0][..], &h1)] {
                        let mut sum = num_bigint::BigUint::default();
                        for psi in &homs {
                            sum += hom_count_fibered(f, g, u, psi)?;
                        }
                        ensure(&sum == want, || format!("fibered sum {sum} != {want} for U={u:?}"))?;
                    }
                    Ok(())
                })
            })
            .collect(),
    )
}

/// Composite of shift isomorphisms from `G_U` to `G_∅` or `G_{0}`, moving
/// the farthest element of `U` one step toward vertex 0 each time.
fn normalize_u(g: &Graph, u: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![0; n];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors_iter(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut cur: Vec<usize> = u.to_vec();
    let mut map: Vec<usize> = (0..build_gu(g, u)?.graph.n()).collect();
    while !(cur.is_empty() || cur == [0]) {
        let &x = cur
            .iter()
            .filter(|&&x| x != 0)
            .max_by_key(|&&x| (dist[x], x))
            .expect("nonempty");
        let s = shift_isomorphism(g, &cur, x, parent[x])?;
        map = map.iter().map(|&a| s.map[a]).collect();
        cur = s.target_u;
    }
    Ok((cur, map))
}

/// Parity law for the lifts and `hom(G, G_0) != hom(G, G_1)`.
pub fn zero_iso(nmax: usize) -> Result<Vec<Instance>> {
    let gs: Vec<Graph> = enumerate_graphs(nmax, true)?.collect();
    collect(
        gs.par_iter()
            .map(|g| {
                instance(format!("G={}", g6(g)), || {
                    let (g0, g1) = build_g01(g)?;
                    let (a, b) = (hom_count(g, &g0.graph)?, hom_count(g, &g1.graph)?);
                    ensure(a != b, || format!("hom(G,G_0) = hom(G,G_1) = {a}"))?;
                    for mask in 0u32..1 << g.n() {
                        let u: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
                        let (end, map) = normalize_u(g, &u)?;
                        ensure(end.len() == u.len() % 2, || format!("U={u:?} reduced to {end:?}"))?;
                        let src = build_gu(g, &u)?.graph;
                        let dst = if end.is_empty() { &g0.graph } else { &g1.graph };
                        ensure(&src.permute(&map) == dst, || {
                            format!("shift map for U={u:?} is not an isomorphism")
                        })?;
                    }
                    Ok(())
                })
            })
            .collect(),
    )
}

/// Adds vertices and edges to `f` while keeping `psi` a homomorphism into
/// `target`, up to `max_n` vertices.
fn decorate(f: &Graph, psi: &VertexMap, target: &Graph, max_n: usize, rng: &mut impl Rng) -> (Graph, VertexMap) {
    let mut edges: Vec<(usize, usize)> = f.edges().to_vec();
    let mut map = psi.0.clone();
    let extra = rng.gen_range(0..=max_n.saturating_sub(f.n()).min(3));
    for _ in 0..extra {
        let x = rng.gen_range(0..target.n());
        let near: Vec<usize> = (0..map.len()).filter(|&a| target.adjacent(map[a], x)).collect();
        if near.is_empty() {
            continue;
        }
        let id = map.len();
        map.push(x);
        for _ in 0..rng.gen_range(1..=2) {
            edges.push((*near.choose(rng).expect("nonempty"), id));
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        let (a, b) = (rng.gen_range(0..map.len()), rng.gen_range(0..map.len()));
        if a != b && target.adjacent(map[a], map[b]) {
            edges.push((a, b));
        }
    }
    edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::from_edges(map.len(), edges).expect("no self loops");
    (g, VertexMap(map))
}

/// Random relabelling of a source together with its map.
fn shuffle(f: &Graph, psi: &VertexMap, rng: &mut impl Rng) -> (Graph, VertexMap) {
    let mut perm: Vec<usize> = (0..f.n()).collect();
    perm.shuffle(rng);
    let mut map = vec![0; f.n()];
    for a in 0..f.n() {
        map[perm[a]] = psi[a];
    }
    (f.permute(&perm), VertexMap(map))
}

/// Random odd subdivision or odd cover of `g` with at most `max_n` vertices,
/// falling back to the identity.
fn random_oddo_source(g: &Graph, max_n: usize, rng: &mut impl Rng) -> Result<(Graph, VertexMap)> {
    if rng.gen_bool(0.5) && 3 * g.n() <= max_n {
        let v = random_voltages(g, 3, rng);
        return odd_cover(g, 3, &v);
    }
    let mut budget = max_n.saturating_sub(g.n());
    let lengths: Vec<usize> = (0..g.m())
        .map(|_| {
            if budget >= 2 && rng.gen_bool(0.5) {
                budget -= 2;
                3
            } else {
                1
            }
        })
        .collect();
    odd_subdivision(g, &lengths)
}

/// Chordless odd-winding cycles extracted from certificates onto `C_k`.
pub fn winding(count: usize, seed: u64) -> Result<Vec<Instance>> {
    collect(
        (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(seed, i);
                let k = rng.gen_range(3..=7);
                let len = k + 2 * rng.gen_range(0..=(10 - k) / 2);
                // C_len wound once around C_k, with the surplus zigzagging
                // over the edge between k-1 and 0.
                let base = cycle(len).expect("len >= 3");
                let wrap = VertexMap(
                    (0..len)
                        .map(|a| {
                            if a < k {
                                a
                            } else if (a - k) % 2 == 0 {
                                0
                            } else {
                                k - 1
                            }
                        })
                        .collect(),
                );
                let ck = cycle(k).expect("k >= 3");
                let (f, psi) = decorate(&base, &wrap, &ck, 10, &mut rng);
                let (f, _) = shuffle(&f, &psi, &mut rng);
                instance(format!("#{i} k={k} F={}", g6(&f)), || {
                    let cert = find_weak_oddo(&f, &ck)?.ok_or_else(|| Fail::Check("no certificate onto C_k".into()))?;
                    verified(&cert)?;
                    let oc = extract_chordless_odd_cycle(&cert)?;
                    oc.check(&cert.source, &cert.psi).map_err(Fail::Check)
                })
            })
            .collect(),
    )
}

/// Contracting a target edge of a constructed oddomorphism.
pub fn minor_transport(count: usize, seed: u64) -> Result<Vec<Instance>> {
    collect(
        (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(seed, i);
                let n = rng.gen_range(3..=5);
                let g = random_connected(n, 0.5, &mut rng);
                let (f, psi) = random_oddo_source(&g, 12, &mut rng)?;
                let (f, psi) = shuffle(&f, &psi, &mut rng);
                let &(u, v) = g.edges().choose(&mut rng).expect("connected with n >= 3");
                instance(format!("#{i} G={} F={} uv={u}-{v}", g6(&g), g6(&f)), || {
                    ensure(is_oddomorphism(&f, &psi, &g), || {
                        "constructed map is not an oddomorphism".into()
                    })?;
                    let t = minor_oddo(&f, &psi, &g, u, v)?;
                    ensure(t.target == g.contract_edge(u, v)?.0, || "target is not G/uv".into())?;
                    let odd = check_oddomorphism(&t.graph, &t.psi, &t.target)
                        .map_err(|e| Fail::Check(format!("transported map: {e}")))?;
                    ensure(odd == t.odd_set, || {
                        format!("odd set {odd:?} != predicted {:?}", t.odd_set)
                    })?;
                    ensure(is_minor_model(&f, &t.graph, &t.branch_sets), || {
                        "branch sets are not a minor model".into()
                    })?;
                    ensure(has_minor(&f, &t.graph)?, || "minor search disagrees".into())
                })
            })
            .collect(),
    )
}

/// The star lifts against bounded degree, and the degree-2 pair.
pub fn bounded_degree(d: usize, nmax: usize) -> Result<Vec<Instance>> {
    if d < 2 {
        return Err(Error::param("degree must be at least 2"));
    }
    let (h, _) = build_star_simplified(d, 0)?;
    let (h2, _) = build_star_simplified(d, 1)?;
    let low = FamilyPredicate::max_degree_below(d);
    let isolated = |g: &Graph| (0..g.n()).any(|v| g.degree(v) == 0);
    let mut out = vec![
        instance(format!("d={d} family maxdeg<{d} up to {nmax}"), || {
            let r = indistinguishable_up_to(&h, &h2, &low, nmax, true)?;
            ensure(r.verdict == Verdict::IndistinguishableUpToBound, || {
                format!("distinguished by {:?}", r.counterexample)
            })
        })?,
        instance(format!("d={d} star distinguishes"), || {
            let (a, b) = (hom_count(&star(d), &h)?, hom_count(&star(d), &h2)?);
            ensure(a != b, || format!("both counts are {a}"))
        })?,
        instance(format!("d={d} connectivity"), || {
            // The class containing the full subset holds an isolated vertex.
            let (with, without) = if d % 2 == 0 { (&h, &h2) } else { (&h2, &h) };
            ensure(isolated(with), || "expected an isolated vertex".into())?;
            ensure(is_connected(without), || "expected a connected lift".into())
        })?,
        instance(format!("d={d} matches lift of the star"), || {
            for (i, s) in [(0, &h), (1, &h2)] {
                let u: Vec<usize> = if i == 1 { vec![0] } else { vec![] };
                let lifted = build_gu(&star(d), &u)?.graph;
                ensure(is_isomorphic(s, &lifted).is_some(), || format!("class {i} differs"))?;
            }
            Ok(())
        })?,
    ];
    let k3k1 = complete(3).disjoint_union(&Graph::empty(1));
    out.push(instance("d=2 P4 vs K3+K1".into(), || {
        let (a, b) = (hom_count(&star(2), &path(4))?, hom_count(&star(2), &k3k1)?);
        ensure(a == 10u32.into() && b == 12u32.into(), || {
            format!("cherry counts {a} and {b}")
        })?;
        let r = indistinguishable_up_to(&path(4), &k3k1, &FamilyPredicate::max_degree_below(2), nmax, true)?;
        ensure(r.verdict == Verdict::IndistinguishableUpToBound, || {
            format!("distinguished by {:?}", r.counterexample)
        })
    })?);
    Ok(out)
}

/// Lifts of cycles are two cycles or one long cycle.
pub fn construction() -> Result<Vec<Instance>> {
    (3..=8)
        .map(|k| {
            instance(format!("C_{k}"), || {
                let c = cycle(k)?;
                let (g0, g1) = build_g01(&c)?;
                ensure(is_isomorphic(&g0.graph, &c.disjoint_union(&c)).is_some(), || {
                    "G_0 is not 2C_k".into()
                })?;
                ensure(is_isomorphic(&g1.graph, &cycle(2 * k)?).is_some(), || {
                    "G_1 is not C_2k".into()
                })
            })
        })
        .collect()
}

/// The two lifts of `K_4`.
pub fn rook_shrikhande() -> Result<Vec<Instance>> {
    let k4 = complete(4);
    let (g0, g1) = build_g01(&k4)?;
    let (g0, g1) = (g0.graph, g1.graph);
    Ok(vec![
        instance("regularity".into(), || {
            for g in [&g0, &g1] {
                ensure(g.n() == 16 && (0..16).all(|v| g.degree(v) == 6), || {
                    "not 16-vertex 6-regular".into()
                })?;
            }
            Ok(())
        })?,
        instance("identification".into(), || {
            ensure(is_isomorphic(&g0, &rook(4)).is_some(), || {
                "G_0 is not the rook graph".into()
            })?;
            ensure(is_isomorphic(&g1, &shrikhande()).is_some(), || {
                "G_1 is not Shrikhande".into()
            })?;
            ensure(is_isomorphic(&g0, &g1).is_none(), || "lifts are isomorphic".into())
        })?,
        instance("cycle counts up to 8".into(), || {
            ensure(hom_vector_cycles(&g0, 8)? == hom_vector_cycles(&g1, 8)?, || {
                "cycle vectors differ".into()
            })
        })?,
        instance("hom(K_4, -)".into(), || {
            let (a, b) = (hom_count(&k4, &g0)?, hom_count(&k4, &g1)?);
            ensure(a != b, || format!("both counts are {a}"))
        })?,
    ])
}

/// Weak oddomorphisms between cycles.
pub fn cycle_oddos() -> Result<Vec<Instance>> {
    let pairs: Vec<(usize, usize)> = (3..=8).flat_map(|k| (3..=8).map(move |kp| (k, kp))).collect();
    collect(
        pairs
            .par_iter()
            .map(|&(k, kp)| {
                instance(format!("C_{kp} -> C_{k}"), || {
                    let found = find_weak_oddo(&cycle(kp)?, &cycle(k)?)?;
                    let expect = kp >= k && kp % 2 == k % 2;
                    ensure(found.is_some() == expect, || {
                        format!("found={} expected={expect}", found.is_some())
                    })?;
                    found.as_ref().map_or(Ok(()), verified)
                })
            })
            .collect(),
    )
}

/// Composition of seeded chains, antisymmetry and clique rigidity over all
/// graphs up to `nmax` vertices.
pub fn composition(count: usize, seed: u64, nmax: usize) -> Result<Vec<Instance>> {
    let mut out = collect(
        (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(seed, i);
                let h = random_connected(rng.gen_range(3..=4), 0.6, &mut rng);
                let (g, psi2) = random_oddo_source(&h, 8, &mut rng)?;
                let (f, psi1) = random_oddo_source(&g, 14, &mut rng)?;
                // Weak chain: decorate G, build a new source over it, decorate that.
                let (g2, psi2w) = decorate(&g, &psi2, &h, 9, &mut rng);
                let (f1, psi1o) = random_oddo_source(&g2, 14, &mut rng)?;
                let (f2, psi1w) = decorate(&f1, &psi1o, &g2, 15, &mut rng);
                instance(format!("#{i} H={} G={} F={}", g6(&h), g6(&g), g6(&f)), || {
                    let (psi, odd) = compose_oddo(&f, &psi1, &g, &psi2, &h)?;
                    let direct =
                        check_oddomorphism(&f, &psi, &h).map_err(|e| Fail::Check(format!("composite: {e}")))?;
                    ensure(direct == odd, || "composite odd set mismatch".into())?;
                    let c2 = certificate_for_map(&g2, &h, &psi2w, CertificateKind::WeakOddomorphism)?
                        .ok_or_else(|| Fail::Check("decorated G has no certificate".into()))?;
                    let c1 = certificate_for_map(&f2, &g2, &psi1w, CertificateKind::WeakOddomorphism)?
                        .ok_or_else(|| Fail::Check("decorated F has no certificate".into()))?;
                    verified(&c1)?;
                    verified(&c2)?;
                    verified(&compose_weak(&c1, &c2)?)
                })
            })
            .collect(),
    )?;
    let gs: Vec<Graph> = enumerate_graphs(nmax, false)?.collect();
    let pairs: Vec<(usize, usize)> = (0..gs.len()).flat_map(|i| (0..gs.len()).map(move |j| (i, j))).collect();
    let rel = pairs
        .par_iter()
        .map(|&(i, j)| Ok(i != j && find_weak_oddo(&gs[i], &gs[j])?.is_some()))
        .collect::<Result<Vec<bool>>>()?;
    let n = gs.len();
    for i in 0..n {
        out.push(instance(format!("antisymmetry {}", g6(&gs[i])), || {
            match (0..n).find(|&j| rel[i * n + j] && rel[j * n + i]) {
                Some(j) => Err(Fail::Check(format!("mutual with {}", g6(&gs[j])))),
                None => Ok(()),
            }
        })?);
    }
    for k in 1..=nmax {
        let kn = complete(k);
        out.push(instance(format!("clique K_{k}"), || {
            for g in &gs {
                let found = find_weak_oddo(&kn, g)?.is_some();
                let iso = is_isomorphic(&kn, g).is_some();
                ensure(found == iso, || format!("target {} found={found}", g6(g)))?;
            }
            Ok(())
        })?);
    }
    Ok(out)
}

/// Random linear systems against exhaustive enumeration.
pub fn gf2(count: usize, seed: u64) -> Result<Vec<Instance>> {
    collect(
        (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(seed, i);
                let (rows, cols) = (rng.gen_range(1..=14), rng.gen_range(1..=12));
                let p = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
                let mut m = Gf2Matrix::zeros(rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        m.set(r, c, rng.gen_bool(p));
                    }
                }
                let rhs = BitSet::from_indices(rows, (0..rows).filter(|_| rng.gen_bool(0.5)));
                instance(format!("#{i} {rows}x{cols}"), || {
                    let sys = Gf2System::new(m, rhs)?;
                    let count = (0u32..1 << cols)
                        .filter(|x| sys.is_solution(&BitSet::from_indices(cols, (0..cols).filter(|c| x >> c & 1 == 1))))
                        .count();
                    let expected = sys.solution_count_log2().map_or(0, |l| 1usize << l);
                    ensure(count == expected, || {
                        format!("{count} solutions, kernel says {expected}")
                    })?;
                    match (sys.solve(), sys.fredholm_certificate()) {
                        (Some(x), None) => ensure(sys.is_solution(&x), || "bad solution".into()),
                        (None, Some(y)) => ensure(sys.is_certificate(&y), || "bad certificate".into()),
                        _ => Err(Fail::Check("solution and certificate not exclusive".into())),
                    }
                })
            })
            .collect(),
    )
}

/// Looped lifts against weak oddisms, and the star characterization.
pub fn loops() -> Result<Vec<Instance>> {
    let fs = enumerate_graphs_with_loops(4, false)?;
    let mut out = Vec::new();
    for (name, g) in [("K_1,2", star(2)), ("K_1,3", star(3)), ("C_3", complete(3))] {
        let t0 = build_tilde_gu(&g, &[])?.graph;
        let t1 = build_tilde_gu(&g, &[0])?.graph;
        out.extend(collect(
            fs.par_iter()
                .map(|f| {
                    instance(format!("G={name} F={:?}", f.to_data()), || {
                        let (h0, h1) = (hom_count(f, &t0)?, hom_count(f, &t1)?);
                        ensure(h1 <= h0, || format!("{h1} > {h0}"))?;
                        let cert = find_weak_oddism(f, &g)?;
                        ensure((h1 < h0) == cert.is_some(), || {
                            format!("counts {h0} vs {h1} but oddism found: {}", cert.is_some())
                        })?;
                        cert.as_ref().map_or(Ok(()), verified)
                    })
                })
                .collect(),
        )?);
    }
    for d in 1..=3 {
        let g = star(d);
        let t0 = build_tilde_gu(&g, &[])?.graph;
        let t1 = build_tilde_gu(&g, &[0])?.graph;
        out.push(instance(format!("loop degree d={d}"), || {
            for f in &fs {
                let wide = (0..f.n()).any(|v| f.degree(v) >= d);
                let found = find_weak_oddism(f, &g)?.is_some();
                let differ = hom_count(f, &t0)? != hom_count(f, &t1)?;
                ensure(found == wide && differ == wide, || {
                    format!(
                        "F={:?}: degree test {wide}, oddism {found}, counts differ {differ}",
                        f.to_data()
                    )
                })?;
            }
            Ok(())
        })?);
    }
    Ok(out)
}

/// Bipartite sources never certify against non-bipartite connected targets.
pub fn bipartite(fmax: usize, gmax: usize) -> Result<Vec<Instance>> {
    let fs: Vec<Graph> = enumerate_graphs(fmax, false)?.filter(is_bipartite).collect();
    let gs: Vec<Graph> = enumerate_graphs(gmax, true)?.filter(|g| !is_bipartite(g)).collect();
    collect(
        gs.par_iter()
            .map(|g| {
                instance(format!("G={}", g6(g)), || {
                    for f in &fs {
                        ensure(find_weak_oddo(f, g)?.is_none(), || {
                            format!("certificate from {}", g6(f))
                        })?;
                    }
                    Ok(())
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteParams {
        SuiteParams {
            gmax: 3,
            fmax: 3,
            nmax: 4,
            count: 5,
            ..SuiteParams::default()
        }
    }

    #[test]
    fn every_suite_runs_small() {
        for name in SUITES {
            let r = run_suite(name, &small()).unwrap();
            assert!(r.passed, "{name}: {:?}", r.first_failure());
            assert!(r.total > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run_suite("winding", &small()).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("winding", &small()).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &small()).is_err());
    }
}
