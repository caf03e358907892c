//! Branch and bound for the integer programs: the largest code `p(A)` (a
//! maximum independent set of the confusability graph) and the smallest
//! output cover `κ(A)` (set cover of the inputs by output neighborhoods).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::channel::{Channel, Graph};
use crate::error::{Error, Result};

use super::bitset::Bitset;
use super::simplex::{float_simplex, PivotRule};

#[derive(Debug, Clone)]
pub struct IntConfig {
    /// Largest `|X|` for packing and `|Y|` for covering.
    pub max_size: usize,
    /// Search nodes before giving up on a proof of optimality.
    pub node_limit: u64,
    /// Local-search rounds for the initial covering incumbent.
    pub heuristic_rounds: usize,
}

impl Default for IntConfig {
    fn default() -> Self {
        IntConfig { max_size: 512, node_limit: 200_000_000, heuristic_rounds: 2000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntResult {
    pub value: usize,
    /// Sorted indices: a code for packing, an output cover for covering.
    pub witness: Vec<usize>,
    /// False when the node limit cut the search short; `value` is then only
    /// the best found.
    pub optimality_proved: bool,
    pub nodes: u64,
}

/// `p(A)`: the largest code of `A`.
pub fn integer_packing(a: &Channel, config: &IntConfig) -> Result<IntResult> {
    if a.num_inputs() > config.max_size {
        return Err(Error::CapExceeded { what: "integer packing |X|", size: a.num_inputs(), cap: config.max_size });
    }
    let res = max_independent_set(&a.confusability(), config)?;
    debug_assert!(a.is_code(&res.witness).unwrap_or(false));
    Ok(res)
}

/// `α(G)` with a witness.
pub fn max_independent_set(g: &Graph, config: &IntConfig) -> Result<IntResult> {
    let n = g.num_vertices();
    if n > config.max_size {
        return Err(Error::CapExceeded { what: "independent set |V|", size: n, cap: config.max_size });
    }
    let mut witness = Vec::new();
    let mut nodes = 0;
    let mut proved = true;
    for comp in components(g) {
        let limit = config.node_limit.saturating_sub(nodes);
        let (set, used, done) = component_mis(g, &comp, limit);
        witness.extend(set);
        nodes += used;
        proved &= done;
    }
    witness.sort_unstable();
    Ok(IntResult { value: witness.len(), witness, optimality_proved: proved, nodes })
}

/// Vertex sets of the connected components, each sorted.
fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut i = 0;
        while i < comp.len() {
            for u in g.neighbors(comp[i]) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Maximum independent set inside one component: the set, nodes used, and
/// whether the search finished.
fn component_mis(g: &Graph, verts: &[usize], limit: u64) -> (Vec<usize>, u64, bool) {
    let n = verts.len();
    // A maximum clique of the complement. Vertices are renumbered by
    // descending complement degree, ties by index.
    let mut order = verts.to_vec();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut pos = vec![usize::MAX; g.num_vertices()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let comp: Vec<Bitset> = order
        .iter()
        .map(|&v| {
            let mut b = Bitset::full(n);
            b.remove(pos[v]);
            for u in g.neighbors(v) {
                b.remove(pos[u]);
            }
            b
        })
        .collect();

    let mut search = CliqueSearch { adj: &comp, best: greedy_clique(&comp, n), nodes: 0, limit, aborted: false };
    let mut current = Vec::new();
    search.expand(&mut current, Bitset::full(n));
    (search.best.iter().map(|&i| order[i]).collect(), search.nodes, !search.aborted)
}

fn greedy_clique(adj: &[Bitset], n: usize) -> Vec<usize> {
    let mut cand = Bitset::full(n);
    let mut clique = Vec::new();
    while let Some(v) = cand.first() {
        clique.push(v);
        cand.and_assign(&adj[v]);
    }
    clique
}

struct CliqueSearch<'a> {
    adj: &'a [Bitset],
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
    aborted: bool,
}

impl CliqueSearch<'_> {
    /// Greedy sequential coloring of `p`; returns vertices in nondecreasing
    /// color order with their colors.
    fn color(&self, p: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.clone();
        let mut verts = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(verts.capacity());
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.and_not_assign(&self.adj[v]);
                verts.push(v);
                colors.push(k);
            }
        }
        (verts, colors)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut p: Bitset) {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return;
        }
        let (verts, colors) = self.color(&p);
        for i in (0..verts.len()).rev() {
            if current.len() + colors[i] <= self.best.len() || self.aborted {
                return;
            }
            let v = verts[i];
            current.push(v);
            let next = p.and(&self.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            p.remove(v);
        }
    }
}

/// `κ(A)`: the smallest set of outputs whose neighborhoods cover `X`.
pub fn integer_covering(a: &Channel, config: &IntConfig) -> Result<IntResult> {
    let (nx, ny) = (a.num_inputs(), a.num_outputs());
    if ny > config.max_size {
        return Err(Error::CapExceeded { what: "integer covering |Y|", size: ny, cap: config.max_size });
    }
    let sets: Vec<Bitset> = (0..ny)
        .map(|y| {
            let mut b = Bitset::new(nx);
            a.output_neighbors(y).for_each(|x| b.insert(x));
            b
        })
        .collect();
    let cands: Vec<Bitset> = (0..nx)
        .map(|x| {
            let mut b = Bitset::new(ny);
            a.input_neighbors(x).for_each(|y| b.insert(y));
            b
        })
        .collect();

    let best = improve_cover(&sets, nx, greedy_cover(&sets, nx), config.heuristic_rounds);
    let mut search =
        CoverSearch { sets: &sets, cands: &cands, best, nodes: 0, limit: config.node_limit, aborted: false };
    let mut chosen = Vec::new();
    search.expand(&mut chosen, Bitset::full(nx), Bitset::new(ny));

    let mut witness = search.best;
    witness.sort_unstable();
    debug_assert!(a.is_output_cover(&witness).unwrap_or(false));
    Ok(IntResult { value: witness.len(), witness, optimality_proved: !search.aborted, nodes: search.nodes })
}

/// `γ(G) = κ(B)` for the closed-neighborhood channel `B` of `G`.
pub fn min_dominating_set(g: &Graph, config: &IntConfig) -> Result<IntResult> {
    integer_covering(&g.closed_neighborhood_channel(), config)
}

fn greedy_cover(sets: &[Bitset], nx: usize) -> Vec<usize> {
    complete_cover(sets, Bitset::full(nx), Vec::new(), None)
}

/// Greedily adds the set covering the most uncovered elements; ties go to
/// the smallest index, or are broken at random when `rng` is given.
fn complete_cover(
    sets: &[Bitset],
    mut uncovered: Bitset,
    mut chosen: Vec<usize>,
    mut rng: Option<&mut StdRng>,
) -> Vec<usize> {
    while !uncovered.is_empty() {
        if let Some(rng) = rng.as_deref_mut() {
            let counts: Vec<usize> = sets.iter().map(|s| s.intersection_count(&uncovered)).collect();
            let top = *counts.iter().max().expect("channel has outputs");
            let ties: Vec<usize> = (0..sets.len()).filter(|&y| counts[y] == top).collect();
            let y = ties[rng.gen_range(0..ties.len())];
            chosen.push(y);
            uncovered.and_not_assign(&sets[y]);
            continue;
        }
        let (y, _) = sets
            .iter()
            .enumerate()
            .map(|(y, s)| (y, s.intersection_count(&uncovered)))
            .max_by_key(|&(y, c)| (c, std::cmp::Reverse(y)))
            .expect("channel has outputs");
        chosen.push(y);
        uncovered.and_not_assign(&sets[y]);
    }
    chosen
}

/// Drops sets whose elements are all covered by the others.
fn remove_redundant(sets: &[Bitset], nx: usize, chosen: &mut Vec<usize>) {
    let mut i = chosen.len();
    while i > 0 {
        i -= 1;
        let mut rest = Bitset::full(nx);
        for (j, &y) in chosen.iter().enumerate() {
            if j != i {
                rest.and_not_assign(&sets[y]);
            }
        }
        if rest.is_empty() {
            chosen.remove(i);
        }
    }
}

/// Iterated greedy: repeatedly drop a few sets of the incumbent, complete
/// greedily with random ties and prune redundancy. Deterministic seed.
fn improve_cover(sets: &[Bitset], nx: usize, start: Vec<usize>, rounds: usize) -> Vec<usize> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut best = start;
    remove_redundant(sets, nx, &mut best);
    let mut current = best.clone();
    for _ in 0..rounds {
        let mut next = current.clone();
        let drop = 1 + rng.gen_range(0..next.len().clamp(1, 4));
        for _ in 0..drop.min(next.len()) {
            let i = rng.gen_range(0..next.len());
            next.swap_remove(i);
        }
        let mut uncovered = Bitset::full(nx);
        next.iter().for_each(|&y| uncovered.and_not_assign(&sets[y]));
        let mut next = complete_cover(sets, uncovered, next, Some(&mut rng));
        remove_redundant(sets, nx, &mut next);
        if next.len() <= current.len() {
            current = next;
            if current.len() < best.len() {
                best = current.clone();
            }
        }
    }
    best
}

struct CoverSearch<'a> {
    sets: &'a [Bitset],
    cands: &'a [Bitset],
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
    aborted: bool,
}

impl CoverSearch<'_> {
    /// Lower bound on the number of further sets, or `None` if some
    /// uncovered element has no allowed set left.
    fn lower_bound(&self, uncovered: &Bitset, allowed: &Bitset) -> Option<usize> {
        let cover: Vec<usize> = self.sets.iter().map(|s| s.intersection_count(uncovered)).collect();
        let max_cover = allowed.iter().map(|y| cover[y]).max().unwrap_or(0);
        if max_cover == 0 {
            return None;
        }
        let total = uncovered.count();
        let by_size = total.div_ceil(max_cover);

        // Elements pairwise without a common allowed set need distinct sets.
        let mut used = Bitset::new(allowed.capacity());
        let mut disjoint = 0;
        // Each element spreads weight 1/(largest set through it).
        let mut spread = 0f64;
        let mut elems: Vec<(usize, Bitset)> = Vec::with_capacity(total);
        for x in uncovered.iter() {
            let c = self.cands[x].and(allowed);
            if c.is_empty() {
                return None;
            }
            if c.intersection_count(&used) == 0 {
                disjoint += 1;
                for y in c.iter() {
                    used.insert(y);
                }
            }
            let best = c.iter().map(|y| cover[y]).max().unwrap_or(1);
            spread += 1.0 / best as f64;
            elems.push((c.count(), c));
        }
        // Dual ascent on the covering LP: most constrained elements first,
        // each raised to the least slack among its sets.
        elems.sort_by_key(|(k, _)| *k);
        let mut slack = vec![1f64; self.sets.len()];
        let mut frac = 0f64;
        for (_, c) in &elems {
            let v = c.iter().map(|y| slack[y]).fold(f64::INFINITY, f64::min);
            if v > 0.0 {
                frac += v;
                c.iter().for_each(|y| slack[y] -= v);
            }
        }
        let frac_bound = (frac.max(spread) - 1e-7).ceil().max(0.0) as usize;
        Some(by_size.max(disjoint).max(frac_bound))
    }

    /// Ceiling of the covering LP on the residual instance, via its dual
    /// packing program in floating point. Only used to prune; the margin
    /// keeps rounding from cutting a branch that could still improve.
    fn lp_bound(&self, uncovered: &Bitset, allowed: &Bitset) -> usize {
        let rows: Vec<usize> = allowed.iter().filter(|&y| self.sets[y].intersection_count(uncovered) > 0).collect();
        let mut row_of = vec![usize::MAX; self.sets.len()];
        for (i, &y) in rows.iter().enumerate() {
            row_of[y] = i;
        }
        let columns: Vec<Vec<usize>> =
            uncovered.iter().map(|x| self.cands[x].and(allowed).iter().map(|y| row_of[y]).collect()).collect();
        let sol = float_simplex(rows.len(), &columns, PivotRule::default(), 20 * (rows.len() + columns.len()) + 100);
        if !sol.optimal {
            return 0;
        }
        (sol.value - 1e-6).ceil().max(0.0) as usize
    }

    fn expand(&mut self, chosen: &mut Vec<usize>, uncovered: Bitset, mut forbidden: Bitset) {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return;
        }
        if uncovered.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let mut allowed = Bitset::full(forbidden.capacity());
        allowed.and_not_assign(&forbidden);
        match self.lower_bound(&uncovered, &allowed) {
            Some(lb) if chosen.len() + lb < self.best.len() => {}
            _ => return,
        }
        if chosen.len() + self.lp_bound(&uncovered, &allowed) >= self.best.len() {
            return;
        }
        // Branch on the uncovered element with the fewest allowed sets.
        let x = uncovered.iter().min_by_key(|&x| (self.cands[x].and(&allowed).count(), x)).expect("nonempty");
        let mut options: Vec<(usize, usize)> =
            self.cands[x].and(&allowed).iter().map(|y| (y, self.sets[y].intersection_count(&uncovered))).collect();
        options.sort_by_key(|&(y, c)| (std::cmp::Reverse(c), y));
        for (y, _) in options {
            if self.aborted || chosen.len() + 1 >= self.best.len() {
                return;
            }
            chosen.push(y);
            let mut next = uncovered.clone();
            next.and_not_assign(&self.sets[y]);
            self.expand(chosen, next, forbidden.clone());
            chosen.pop();
            // Later branches need not revisit y.
            forbidden.insert(y);
        }
    }
}
