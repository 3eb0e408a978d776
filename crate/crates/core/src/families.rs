//! Graph families and bounded homomorphism-indistinguishability checks.
//!
//! A verdict of indistinguishability is always tied to the enumeration bound
//! it was checked up to.

use crate::construct::build_g01;
use crate::error::{Error, Result};
use crate::graph::{
    chromatic_number, complete, components, find_induced_star, find_odd_hole, has_minor, is_connected, is_planar,
    longest_cycle, parse_graph6, treewidth_at_most_2, write_graph6, EnumerateOptions, Graph, GraphData, GraphStream,
};
use crate::homcount::{hom_count, hom_vector_cycles, HomCount};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Closure {
    pub union_closed: bool,
    pub component_closed: bool,
    pub minor_closed: bool,
}

const ALL: Closure = Closure {
    union_closed: true,
    component_closed: true,
    minor_closed: true,
};
const UNIONS: Closure = Closure {
    union_closed: true,
    component_closed: true,
    minor_closed: false,
};

type Membership = Arc<dyn Fn(&Graph) -> Result<bool> + Send + Sync>;

/// A named family of graphs with declared closure properties.
#[derive(Clone)]
pub struct FamilyPredicate {
    pub name: String,
    pub closure: Closure,
    /// Set when membership relies on capped searches.
    pub experimental: bool,
    test: Membership,
}

impl std::fmt::Debug for FamilyPredicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FamilyPredicate")
            .field("name", &self.name)
            .field("closure", &self.closure)
            .finish()
    }
}

impl FamilyPredicate {
    pub fn new(
        name: impl Into<String>,
        closure: Closure,
        test: impl Fn(&Graph) -> Result<bool> + Send + Sync + 'static,
    ) -> Self {
        FamilyPredicate {
            name: name.into(),
            closure,
            experimental: false,
            test: Arc::new(test),
        }
    }

    pub fn contains(&self, g: &Graph) -> Result<bool> {
        (self.test)(g)
    }

    pub fn all_graphs() -> Self {
        Self::new("all", ALL, |_| Ok(true))
    }

    /// Maximum degree strictly below `d`.
    pub fn max_degree_below(d: usize) -> Self {
        Self::new(format!("maxdeg<{d}"), UNIONS, move |g| Ok(g.max_degree() < d))
    }

    pub fn forests() -> Self {
        Self::new("forests", ALL, |g| Ok(g.m() + components(g).len() == g.n()))
    }

    pub fn treewidth_at_most_2() -> Self {
        Self::new("tw<=2", ALL, |g| Ok(treewidth_at_most_2(g)))
    }

    pub fn circumference_at_most(k: usize) -> Self {
        Self::new(format!("circumference<={k}"), ALL, move |g| {
            Ok(longest_cycle(g)?.is_none_or(|c| c.len() <= k))
        })
    }

    pub fn no_odd_holes() -> Self {
        Self::new("no-odd-holes", UNIONS, |g| Ok(find_odd_hole(g)?.is_none()))
    }

    pub fn no_induced_star(d: usize) -> Self {
        Self::new(format!("no-induced-K1,{d}"), UNIONS, move |g| {
            Ok(find_induced_star(g, d).is_none())
        })
    }

    pub fn planar() -> Self {
        let mut p = Self::new("planar", ALL, is_planar);
        p.experimental = true;
        p
    }

    /// Disjoint unions of cliques whose sizes lie in `sizes`, or are at least
    /// `from` when that is given.
    pub fn clique_unions(sizes: Vec<usize>, from: Option<usize>) -> Self {
        let mut name = format!("clique-unions{sizes:?}");
        if let Some(t) = from {
            name.push_str(&format!("+[>={t}]"));
        }
        Self::new(name, UNIONS, move |g| {
            Ok(components(g).iter().all(|c| {
                let k = c.len();
                let clique = g.induced_subgraph(c).m() == k * (k - 1) / 2;
                clique && (sizes.contains(&k) || from.is_some_and(|t| k >= t))
            }))
        })
    }

    pub fn minor_free(h: Graph) -> Self {
        let closure = Closure {
            union_closed: is_connected(&h),
            component_closed: true,
            minor_closed: true,
        };
        let name = format!("{}-minor-free", label(&h));
        Self::new(name, closure, move |g| Ok(!has_minor(g, &h)?))
    }

    pub fn minors_of(h: Graph) -> Self {
        let closure = Closure {
            union_closed: false,
            component_closed: true,
            minor_closed: true,
        };
        let name = format!("minors-of-{}", label(&h));
        Self::new(name, closure, move |g| has_minor(&h, g))
    }

    /// Parses names such as `maxdeg:3`, `forests`, `tw2`, `circ:5`,
    /// `no-odd-holes`, `no-induced-star:3`, `planar`, `cliques:2,3` or
    /// `cliques:2,3+5`, `minor-free:<graph6>`, `minors-of:<graph6>`, `all`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let num = |a: Option<&str>| -> Result<usize> {
            a.ok_or_else(|| Error::param(format!("`{head}` needs an argument")))?
                .parse()
                .map_err(|_| Error::param(format!("bad number in `{spec}`")))
        };
        let graph = |a: Option<&str>| -> Result<Graph> {
            parse_graph6(a.ok_or_else(|| Error::param(format!("`{head}` needs a graph6 argument")))?)
        };
        Ok(match head {
            "all" => Self::all_graphs(),
            "maxdeg" => Self::max_degree_below(num(arg)?),
            "forests" => Self::forests(),
            "tw2" => Self::treewidth_at_most_2(),
            "circ" => Self::circumference_at_most(num(arg)?),
            "no-odd-holes" => Self::no_odd_holes(),
            "no-induced-star" => Self::no_induced_star(num(arg)?),
            "planar" => Self::planar(),
            "cliques" => {
                let a = arg.ok_or_else(|| Error::param("`cliques` needs sizes"))?;
                let (list, from) = match a.split_once('+') {
                    Some((l, t)) => (l, Some(t.parse().map_err(|_| Error::param("bad `+` bound"))?)),
                    None => (a, None),
                };
                let sizes = list
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| Error::param(format!("bad size `{s}`"))))
                    .collect::<Result<Vec<usize>>>()?;
                Self::clique_unions(sizes, from)
            }
            "minor-free" => Self::minor_free(graph(arg)?),
            "minors-of" => Self::minors_of(graph(arg)?),
            _ => return Err(Error::param(format!("unknown family `{spec}`"))),
        })
    }
}

fn label(g: &Graph) -> String {
    write_graph6(g).unwrap_or_else(|_| format!("n{}m{}", g.n(), g.m()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IndistinguishableUpToBound,
    Distinguished,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub hom_h: String,
    pub hom_h_prime: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishReport {
    pub schema_version: u32,
    pub h: GraphData,
    pub h_prime: GraphData,
    pub predicate: String,
    pub n_max: usize,
    pub connected_only: bool,
    /// Family members whose counts were compared.
    pub checked: usize,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
}

/// Compares `hom(F, H)` and `hom(F, H')` for every family member `F` on at
/// most `n_max` vertices. With `connected_only` the family must be closed
/// under taking components; counts of disconnected graphs then follow by
/// multiplicativity. The reported counterexample is the least by
/// `(vertex count, graph6)`.
pub fn indistinguishable_up_to(
    h: &Graph,
    h_prime: &Graph,
    pred: &FamilyPredicate,
    n_max: usize,
    connected_only: bool,
) -> Result<DistinguishReport> {
    if connected_only && !pred.closure.component_closed {
        return Err(Error::param(format!(
            "family `{}` is not declared component-closed; use full enumeration",
            pred.name
        )));
    }
    let mut stream = GraphStream::new(EnumerateOptions {
        n_max,
        connected_only,
        allow_large: false,
    })?;
    let mut checked = 0;
    let mut counterexample = None;
    let mut level: Vec<Graph> = Vec::new();
    let flush = |level: &mut Vec<Graph>, checked: &mut usize| -> Result<Option<Counterexample>> {
        let results: Vec<Result<Option<Counterexample>>> = level
            .par_iter()
            .map(|f| {
                if !pred.contains(f)? {
                    return Ok(None);
                }
                let (a, b) = (hom_count(f, h)?, hom_count(f, h_prime)?);
                Ok(Some(Counterexample {
                    graph6: write_graph6(f)?,
                    hom_h: a.to_string(),
                    hom_h_prime: b.to_string(),
                }))
            })
            .collect();
        level.clear();
        let mut best: Option<Counterexample> = None;
        for r in results {
            let Some(c) = r? else { continue };
            *checked += 1;
            if c.hom_h != c.hom_h_prime && best.as_ref().is_none_or(|b| c.graph6 < b.graph6) {
                best = Some(c);
            }
        }
        Ok(best)
    };
    loop {
        let next = stream.next();
        let boundary = match (&next, level.last()) {
            (Some(g), Some(prev)) => g.n() != prev.n(),
            (None, _) => true,
            _ => false,
        };
        if boundary && !level.is_empty() {
            if let Some(c) = flush(&mut level, &mut checked)? {
                counterexample = Some(c);
                break;
            }
        }
        match next {
            Some(g) => level.push(g),
            None => break,
        }
    }
    Ok(DistinguishReport {
        schema_version: 1,
        h: h.to_data(),
        h_prime: h_prime.to_data(),
        predicate: pred.name.clone(),
        n_max,
        connected_only,
        checked,
        verdict: if counterexample.is_some() {
            Verdict::Distinguished
        } else {
            Verdict::IndistinguishableUpToBound
        },
        counterexample,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub schema_version: u32,
    pub g: GraphData,
    pub clique_size: usize,
    pub hom_g_h: String,
    pub hom_g_h_prime: String,
    /// `hom(G, H) != hom(G, H')`.
    pub targeted_differs: bool,
    pub family: DistinguishReport,
    /// Targeted check differs and the family agrees up to the bound.
    pub passed: bool,
}

/// Pads the two lifts of `G` with a clique `K_r` (`r` defaults to `χ(G)`)
/// and checks that `G` tells them apart while the family does not.
pub fn hd_closure_probe(g: &Graph, pred: &FamilyPredicate, n_max: usize, r: Option<usize>) -> Result<ProbeReport> {
    if pred.contains(g)? {
        return Err(Error::input(format!(
            "G belongs to `{}`; the probe is vacuous",
            pred.name
        )));
    }
    let (g0, g1) = build_g01(g)?;
    let r = match r {
        Some(r) => r,
        None => chromatic_number(g)?.map(|(k, _)| k).expect("loopless"),
    };
    let h = g0.graph.disjoint_union(&complete(r));
    let h_prime = g1.graph.disjoint_union(&complete(r));
    let (a, b) = (hom_count(g, &h)?, hom_count(g, &h_prime)?);
    let family = indistinguishable_up_to(&h, &h_prime, pred, n_max, pred.closure.component_closed)?;
    let differs = a != b;
    Ok(ProbeReport {
        schema_version: 1,
        g: g.to_data(),
        clique_size: r,
        hom_g_h: a.to_string(),
        hom_g_h_prime: b.to_string(),
        targeted_differs: differs,
        passed: differs && family.verdict == Verdict::IndistinguishableUpToBound,
        family,
    })
}

/// Equal closed-walk counts of lengths `3..=max_len`.
pub fn cospectral_check(h: &Graph, h_prime: &Graph, max_len: usize) -> Result<bool> {
    let a: Vec<HomCount> = hom_vector_cycles(h, max_len)?;
    Ok(a == hom_vector_cycles(h_prime, max_len)?)
}

/// Whether `H1 ∪ H2` and `H1' ∪ H2'` agree on the family up to `n_max`, after
/// confirming each input pair does.
pub fn union_lemma_check(
    pair1: (&Graph, &Graph),
    pair2: (&Graph, &Graph),
    pred: &FamilyPredicate,
    n_max: usize,
) -> Result<bool> {
    if !pred.closure.component_closed {
        return Err(Error::param(format!(
            "family `{}` is not declared component-closed",
            pred.name
        )));
    }
    for (i, (a, b)) in [pair1, pair2].into_iter().enumerate() {
        let rep = indistinguishable_up_to(a, b, pred, n_max, true)?;
        if rep.verdict == Verdict::Distinguished {
            return Err(Error::input(format!(
                "input pair {} is distinguished by {}",
                i + 1,
                rep.counterexample.map(|c| c.graph6).unwrap_or_default()
            )));
        }
    }
    let u = pair1.0.disjoint_union(pair2.0);
    let v = pair1.1.disjoint_union(pair2.1);
    Ok(indistinguishable_up_to(&u, &v, pred, n_max, true)?.verdict == Verdict::IndistinguishableUpToBound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_star_simplified;
    use crate::graph::*;

    #[test]
    fn builtin_membership() {
        let p = FamilyPredicate::max_degree_below(3);
        assert!(p.contains(&path(5)).unwrap());
        assert!(!p.contains(&star(3)).unwrap());
        let s = FamilyPredicate::clique_unions(vec![2, 3], None);
        assert!(s.contains(&complete(2).disjoint_union(&complete(3))).unwrap());
        assert!(!s.contains(&complete(4)).unwrap());
        assert!(!FamilyPredicate::treewidth_at_most_2().contains(&complete(4)).unwrap());
        assert!(FamilyPredicate::parse("cliques:1+4")
            .unwrap()
            .contains(&complete(6))
            .unwrap());
        assert!(FamilyPredicate::parse("bogus").is_err());
    }

    #[test]
    fn star_lifts_against_low_degree() {
        let (h, _) = build_star_simplified(3, 0).unwrap();
        let (h2, _) = build_star_simplified(3, 1).unwrap();
        let low = FamilyPredicate::max_degree_below(3);
        let r = indistinguishable_up_to(&h, &h2, &low, 6, true).unwrap();
        assert_eq!(r.verdict, Verdict::IndistinguishableUpToBound);
        let r = indistinguishable_up_to(&h, &h2, &FamilyPredicate::all_graphs(), 4, true).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        let c = r.counterexample.unwrap();
        assert!(is_isomorphic(&parse_graph6(&c.graph6).unwrap(), &star(3)).is_some());
    }

    #[test]
    fn path_against_triangle_plus_point() {
        let k3k1 = complete(3).disjoint_union(&Graph::empty(1));
        let r = indistinguishable_up_to(&path(4), &k3k1, &FamilyPredicate::max_degree_below(2), 5, true).unwrap();
        assert_eq!(r.verdict, Verdict::IndistinguishableUpToBound);
    }

    #[test]
    fn connected_mode_needs_component_closure() {
        let weird = FamilyPredicate::new(
            "weird",
            Closure {
                union_closed: false,
                component_closed: false,
                minor_closed: false,
            },
            |_| Ok(true),
        );
        assert!(indistinguishable_up_to(&path(2), &path(2), &weird, 3, true).is_err());
        assert!(indistinguishable_up_to(&path(2), &path(2), &weird, 3, false).is_ok());
        assert!(union_lemma_check((&path(2), &path(2)), (&path(2), &path(2)), &weird, 3).is_err());
    }

    #[test]
    fn probe_rejects_members() {
        assert!(hd_closure_probe(&path(3), &FamilyPredicate::forests(), 4, None).is_err());
    }

    #[test]
    fn cospectral_examples() {
        assert!(cospectral_check(&rook(4), &shrikhande(), 8).unwrap());
        assert!(!cospectral_check(&complete(3), &path(3), 3).unwrap());
        assert!(cospectral_check(&petersen(), &petersen(), 5).unwrap());
    }
}
