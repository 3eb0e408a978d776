//! Colour refinement, canonical labelling by individualisation-refinement with
//! automorphism pruning, isomorphism witnesses, and subgraph embeddings.

use super::Graph;
use crate::bits::BitSet;

/// Adjacency of a graph written in canonical vertex order. Equal forms mean
/// isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    fn from_labelling(g: &Graph, pos: &[usize]) -> CanonicalForm {
        let n = g.n();
        let mut inv = vec![0; n];
        for (v, &p) in pos.iter().enumerate() {
            inv[p] = v;
        }
        let total = n + n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut k = 0;
        for &v in &inv {
            if g.has_loop(v) {
                bits[k / 64] |= 1 << (k % 64);
            }
            k += 1;
        }
        for j in 1..n {
            let row = g.neighbors(inv[j]);
            for &u in &inv[..j] {
                if row.contains(u) {
                    bits[k / 64] |= 1 << (k % 64);
                }
                k += 1;
            }
        }
        CanonicalForm { n, bits }
    }

    /// The graph the form describes.
    pub fn to_graph(&self) -> Graph {
        let n = self.n;
        let bit = |k: usize| self.bits[k / 64] >> (k % 64) & 1 == 1;
        let loops: Vec<usize> = (0..n).filter(|&v| bit(v)).collect();
        let mut edges = Vec::new();
        let mut k = n;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::with_loops(n, edges, loops).expect("canonical form describes a valid graph")
    }
}

/// Canonical form plus the labelling that produced it: vertex `v` sits at
/// position `labelling[v]`.
#[derive(Clone, Debug)]
pub struct Canon {
    pub labelling: Vec<usize>,
    pub form: CanonicalForm,
}

/// Refines `colors` to the coarsest equitable partition below it. Colours are
/// renumbered densely by sorted signature, so the result is invariant under
/// relabelling the graph.
pub(crate) fn refine(g: &Graph, colors: &mut [u32]) {
    let n = g.n();
    if n == 0 {
        return;
    }
    let mut classes = distinct(colors);
    let mut sigs: Vec<(u32, Vec<u32>)> = vec![(0, Vec::new()); n];
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        for v in 0..n {
            let (c, nb) = &mut sigs[v];
            *c = colors[v];
            nb.clear();
            nb.extend(g.neighbors_iter(v).map(|u| colors[u]));
            nb.sort_unstable();
        }
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut next = 0u32;
        let mut new = vec![0u32; n];
        for i in 0..n {
            if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                next += 1;
            }
            new[order[i]] = next;
        }
        colors.copy_from_slice(&new);
        let now = next as usize + 1;
        if now == classes {
            break;
        }
        classes = now;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(CanonicalForm, Vec<usize>)>,
    best: Option<(CanonicalForm, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, pos: Vec<usize>) {
        let form = CanonicalForm::from_labelling(self.g, &pos);
        for slot in [&self.first, &self.best].into_iter().flatten() {
            if slot.0 == form {
                // pos1^{-1} o pos maps this leaf onto the stored one.
                let mut inv = vec![0; pos.len()];
                for (v, &p) in slot.1.iter().enumerate() {
                    inv[p] = v;
                }
                let auto: Vec<usize> = pos.iter().map(|&p| inv[p]).collect();
                if auto.iter().enumerate().any(|(i, &x)| i != x) {
                    self.autos.push(auto);
                }
                return;
            }
        }
        if self.first.is_none() {
            self.first = Some((form.clone(), pos.clone()));
        }
        if self.best.as_ref().is_none_or(|b| form < b.0) {
            self.best = Some((form, pos));
        }
    }

    fn same_orbit(&self, prefix: &[usize], a: usize, b: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for auto in &self.autos {
            if prefix.iter().any(|&v| auto[v] != v) {
                continue;
            }
            for (x, &y) in auto.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }

    fn run(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut colors);
        let n = self.g.n();
        // Target cell: the lowest colour shared by more than one vertex.
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(target) = counts.iter().position(|&k| k > 1) else {
            self.leaf(colors.iter().map(|&c| c as usize).collect());
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &w in &cell {
            if tried.iter().any(|&t| self.same_orbit(prefix, t, w)) {
                continue;
            }
            let child: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(x, &c)| 2 * c + u32::from(c as usize == target && x != w))
                .collect();
            prefix.push(w);
            self.run(child, prefix);
            prefix.pop();
            tried.push(w);
        }
    }
}

/// Canonical labelling of `g`.
pub fn canonical_form(g: &Graph) -> Canon {
    let colors: Vec<u32> = (0..g.n()).map(|v| u32::from(g.has_loop(v))).collect();
    let mut s = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    s.run(colors, &mut Vec::new());
    match s.best {
        Some((form, labelling)) => Canon { labelling, form },
        None => Canon {
            labelling: Vec::new(),
            form: CanonicalForm::from_labelling(g, &[]),
        },
    }
}

fn cheap_invariant(g: &Graph) -> (usize, usize, usize, Vec<usize>) {
    let mut d = g.degrees();
    d.sort_unstable();
    (g.n(), g.m(), g.loops().count(), d)
}

/// Returns an isomorphism `phi` (with `h.adjacent(phi[u], phi[v]) == g.adjacent(u, v)`)
/// or `None`.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if cheap_invariant(g) != cheap_invariant(h) {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg.form != ch.form {
        return None;
    }
    let mut inv_h = vec![0; h.n()];
    for (v, &p) in ch.labelling.iter().enumerate() {
        inv_h[p] = v;
    }
    let phi: Vec<usize> = cg.labelling.iter().map(|&p| inv_h[p]).collect();
    debug_assert_eq!(&g.permute(&phi), h);
    Some(phi)
}

/// Injective map `pattern -> host` preserving edges and loops, or preserving
/// adjacency and non-adjacency when `induced`.
pub fn find_embedding(pattern: &Graph, host: &Graph, induced: bool) -> Option<Vec<usize>> {
    let (p, h) = (pattern.n(), host.n());
    if p > h || pattern.m() > host.m() {
        return None;
    }
    // Order: repeatedly take the unplaced vertex with most placed neighbours, then highest degree.
    let mut order = Vec::with_capacity(p);
    let mut placed = vec![false; p];
    for _ in 0..p {
        let v = (0..p)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = pattern.neighbors_iter(v).filter(|&u| placed[u]).count();
                (back, pattern.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
    }
    let mut img = vec![usize::MAX; p];
    let mut used = BitSet::new(h);
    fn go(
        i: usize,
        order: &[usize],
        pattern: &Graph,
        host: &Graph,
        induced: bool,
        img: &mut Vec<usize>,
        used: &mut BitSet,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut cand = BitSet::full(host.n());
        cand.difference_with(used);
        for &u in &order[..i] {
            if pattern.adjacent(u, v) {
                cand.intersect_with(host.neighbors(img[u]));
            } else if induced {
                cand.difference_with(host.neighbors(img[u]));
            }
        }
        for x in cand.iter() {
            if host.degree(x) < pattern.degree(v) {
                continue;
            }
            let loop_ok = if induced {
                host.has_loop(x) == pattern.has_loop(v)
            } else {
                !pattern.has_loop(v) || host.has_loop(x)
            };
            if !loop_ok {
                continue;
            }
            img[v] = x;
            used.insert(x);
            if go(i + 1, order, pattern, host, induced, img, used) {
                return true;
            }
            used.remove(x);
        }
        img[v] = usize::MAX;
        false
    }
    go(0, &order, pattern, host, induced, &mut img, &mut used).then_some(img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn refinement_cannot_split_regular_graphs() {
        let g = shrikhande();
        let mut c = vec![0; 16];
        refine(&g, &mut c);
        assert!(c.iter().all(|&x| x == 0));
    }

    #[test]
    fn rook_and_shrikhande_differ() {
        assert!(is_isomorphic(&rook(4), &shrikhande()).is_none());
        assert!(is_isomorphic(&rook(4), &rook(4)).is_some());
    }

    #[test]
    fn relabelled_graphs_are_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_gnp(9, 0.4, &mut rng);
            let mut perm: Vec<usize> = (0..9).collect();
            perm.shuffle(&mut rng);
            let h = g.permute(&perm);
            let phi = is_isomorphic(&g, &h).expect("isomorphic");
            assert_eq!(g.permute(&phi), h);
            assert_eq!(canonical_form(&g).form, canonical_form(&h).form);
        }
    }

    #[test]
    fn loops_are_part_of_the_form() {
        let a = Graph::with_loops(2, [(0, 1)], [0]).unwrap();
        let b = Graph::with_loops(2, [(0, 1)], [1]).unwrap();
        let c = Graph::with_loops(2, [(0, 1)], [0, 1]).unwrap();
        assert!(is_isomorphic(&a, &b).is_some());
        assert!(is_isomorphic(&a, &c).is_none());
        assert_eq!(canonical_form(&c).form.to_graph(), c);
    }

    #[test]
    fn embeddings() {
        assert!(find_embedding(&cycle(5).unwrap(), &petersen(), true).is_some());
        assert!(find_embedding(&cycle(4).unwrap(), &petersen(), false).is_none());
        assert!(find_embedding(&star(3), &complete(4), false).is_some());
        assert!(find_embedding(&star(3), &complete(4), true).is_none());
    }
}
