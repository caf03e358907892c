//! Channels as sparse bipartite incidence structures, confusability graphs,
//! Boolean composition, and exact feasibility checks for packings and covers.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Which index set a weight vector lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Input,
    Output,
    Vertex,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Input => "input",
            Side::Output => "output",
            Side::Vertex => "vertex",
        })
    }
}

/// Exact rational vector indexed by inputs, outputs or graph vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVec {
    pub side: Side,
    pub values: Vec<Rational>,
}

impl WeightVec {
    pub fn new(side: Side, values: Vec<Rational>) -> Self {
        WeightVec { side, values }
    }

    pub fn ones(side: Side, len: usize) -> Self {
        WeightVec { side, values: vec![Rational::one(); len] }
    }

    pub fn indicator(side: Side, len: usize, set: &[usize]) -> Self {
        let mut values = vec![Rational::zero(); len];
        for &i in set {
            values[i] = Rational::one();
        }
        WeightVec { side, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> Rational {
        crate::rational::sum(&self.values)
    }

    pub fn scaled(&self, c: &Rational) -> WeightVec {
        WeightVec { side: self.side, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &WeightVec) -> bool {
        self.values.len() == other.values.len() && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }
}

/// First constraint of a packing/cover program that a vector breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Length { expected: usize, got: usize },
    Negative { index: usize },
    Uncovered { input: usize, coverage: Rational },
    Overloaded { output: usize, load: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { expected, got } => {
                write!(f, "vector has length {got}, expected {expected}")
            }
            Violation::Negative { index } => write!(f, "entry {index} is negative"),
            Violation::Uncovered { input, coverage } => {
                write!(f, "input {input} covered with total weight {coverage} < 1")
            }
            Violation::Overloaded { output, load } => {
                write!(f, "output {output} receives total weight {load} > 1")
            }
        }
    }
}

/// How to render indices as human-readable labels.
#[derive(Debug, Clone, Default)]
pub enum Labels {
    #[default]
    Index,
    /// Index `v` is a binary word of the given length, position 0 leftmost
    /// and stored in the least significant bit.
    Binary {
        input_len: usize,
        output_len: usize,
    },
    Explicit {
        inputs: Vec<String>,
        outputs: Vec<String>,
    },
}

/// A combinatorial channel: 0/1 incidence between inputs and outputs, every
/// row and column nonempty. Stored as compressed adjacency on both sides.
#[derive(Clone)]
pub struct Channel {
    num_inputs: usize,
    num_outputs: usize,
    in_offsets: Vec<usize>,
    in_targets: Vec<u32>,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    labels: Labels,
}

impl PartialEq for Channel {
    fn eq(&self, other: &Self) -> bool {
        self.num_inputs == other.num_inputs
            && self.num_outputs == other.num_outputs
            && self.in_offsets == other.in_offsets
            && self.in_targets == other.in_targets
    }
}

impl Eq for Channel {}

impl fmt::Debug for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Channel")
            .field("num_inputs", &self.num_inputs)
            .field("num_outputs", &self.num_outputs)
            .field("num_edges", &self.num_edges())
            .finish()
    }
}

fn csr(rows: usize, pairs: &[(u32, u32)]) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = vec![0usize; rows + 1];
    for &(r, _) in pairs {
        offsets[r as usize + 1] += 1;
    }
    for i in 0..rows {
        offsets[i + 1] += offsets[i];
    }
    let targets = pairs.iter().map(|&(_, c)| c).collect();
    (offsets, targets)
}

impl Channel {
    /// Builds a channel from an edge list, rejecting out-of-range indices,
    /// duplicate edges and isolated vertices.
    pub fn new(
        num_inputs: usize,
        num_outputs: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Channel> {
        let mut pairs = Vec::new();
        for (x, y) in edges {
            if x >= num_inputs || y >= num_outputs {
                return Err(Error::EdgeOutOfRange(x, y));
            }
            pairs.push((x as u32, y as u32));
        }
        Self::from_pairs(num_inputs, num_outputs, pairs, false)
    }

    /// Like [`Channel::new`], silently merging duplicate edges.
    pub fn from_edges_dedup(
        num_inputs: usize,
        num_outputs: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Channel> {
        let mut pairs = Vec::new();
        for (x, y) in edges {
            if x >= num_inputs || y >= num_outputs {
                return Err(Error::EdgeOutOfRange(x, y));
            }
            pairs.push((x as u32, y as u32));
        }
        Self::from_pairs(num_inputs, num_outputs, pairs, true)
    }

    fn from_pairs(num_inputs: usize, num_outputs: usize, mut pairs: Vec<(u32, u32)>, dedup: bool) -> Result<Channel> {
        if num_inputs > u32::MAX as usize || num_outputs > u32::MAX as usize {
            return Err(Error::InvalidParameter("channel too large for 32-bit indices".into()));
        }
        pairs.par_sort_unstable();
        if dedup {
            pairs.dedup();
        } else if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        let (in_offsets, in_targets) = csr(num_inputs, &pairs);
        if let Some(x) = (0..num_inputs).find(|&x| in_offsets[x] == in_offsets[x + 1]) {
            return Err(Error::IsolatedInput(x));
        }
        let mut rev: Vec<(u32, u32)> = pairs.iter().map(|&(x, y)| (y, x)).collect();
        rev.par_sort_unstable();
        let (out_offsets, out_targets) = csr(num_outputs, &rev);
        if let Some(y) = (0..num_outputs).find(|&y| out_offsets[y] == out_offsets[y + 1]) {
            return Err(Error::IsolatedOutput(y));
        }
        Ok(Channel { num_inputs, num_outputs, in_offsets, in_targets, out_offsets, out_targets, labels: Labels::Index })
    }

    pub fn identity(k: usize) -> Channel {
        Channel::new(k, k, (0..k).map(|i| (i, i))).expect("identity is a valid channel")
    }

    pub fn with_labels(mut self, labels: Labels) -> Channel {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.num_outputs
    }

    pub fn num_edges(&self) -> usize {
        self.in_targets.len()
    }

    /// Outputs reachable from input `x`, ascending.
    pub fn input_neighbors(&self, x: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.in_targets[self.in_offsets[x]..self.in_offsets[x + 1]].iter().map(|&y| y as usize)
    }

    /// Inputs that can produce output `y`, ascending.
    pub fn output_neighbors(&self, y: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.out_targets[self.out_offsets[y]..self.out_offsets[y + 1]].iter().map(|&x| x as usize)
    }

    pub fn input_degree(&self, x: usize) -> usize {
        self.in_offsets[x + 1] - self.in_offsets[x]
    }

    pub fn output_degree(&self, y: usize) -> usize {
        self.out_offsets[y + 1] - self.out_offsets[y]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.in_targets[self.in_offsets[x]..self.in_offsets[x + 1]].binary_search(&(y as u32)).is_ok()
    }

    /// All edges in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_inputs).flat_map(move |x| self.input_neighbors(x).map(move |y| (x, y)))
    }

    pub fn input_degrees(&self) -> WeightVec {
        WeightVec::new(Side::Input, (0..self.num_inputs).map(|x| int(self.input_degree(x) as i64)).collect())
    }

    pub fn output_degrees(&self) -> WeightVec {
        WeightVec::new(Side::Output, (0..self.num_outputs).map(|y| int(self.output_degree(y) as i64)).collect())
    }

    pub fn is_input_regular(&self) -> bool {
        let d = self.input_degree(0);
        (0..self.num_inputs).all(|x| self.input_degree(x) == d)
    }

    pub fn is_output_regular(&self) -> bool {
        let d = self.output_degree(0);
        (0..self.num_outputs).all(|y| self.output_degree(y) == d)
    }

    pub fn transpose(&self) -> Channel {
        Channel {
            num_inputs: self.num_outputs,
            num_outputs: self.num_inputs,
            in_offsets: self.out_offsets.clone(),
            in_targets: self.out_targets.clone(),
            out_offsets: self.in_offsets.clone(),
            out_targets: self.in_targets.clone(),
            labels: match &self.labels {
                Labels::Index => Labels::Index,
                Labels::Binary { input_len, output_len } => {
                    Labels::Binary { input_len: *output_len, output_len: *input_len }
                }
                Labels::Explicit { inputs, outputs } => {
                    Labels::Explicit { inputs: outputs.clone(), outputs: inputs.clone() }
                }
            },
        }
    }

    /// `(Az)_x` for every input: total output weight reachable from `x`.
    pub fn cover_products(&self, z: &[Rational]) -> Vec<Rational> {
        assert_eq!(z.len(), self.num_outputs);
        (0..self.num_inputs)
            .into_par_iter()
            .map(|x| self.input_neighbors(x).fold(Rational::zero(), |acc, y| acc + &z[y]))
            .collect()
    }

    /// `(Aᵀw)_y` for every output: total input weight that can produce `y`.
    pub fn packing_loads(&self, w: &[Rational]) -> Vec<Rational> {
        assert_eq!(w.len(), self.num_inputs);
        (0..self.num_outputs)
            .into_par_iter()
            .map(|y| self.output_neighbors(y).fold(Rational::zero(), |acc, x| acc + &w[x]))
            .collect()
    }

    /// Exact check of `z >= 0` and `Az >= 1`; returns the cover weight.
    pub fn verify_cover(&self, z: &[Rational]) -> Result<Rational, Violation> {
        self.cover_feasible(z)?;
        Ok(crate::rational::sum(z))
    }

    /// Feasibility part of [`Channel::verify_cover`] without summing the weight.
    pub fn cover_feasible(&self, z: &[Rational]) -> Result<(), Violation> {
        if z.len() != self.num_outputs {
            return Err(Violation::Length { expected: self.num_outputs, got: z.len() });
        }
        if let Some(index) = z.iter().position(|v| v.is_negative()) {
            return Err(Violation::Negative { index });
        }
        let products = self.cover_products(z);
        let one = Rational::one();
        if let Some(input) = products.iter().position(|p| *p < one) {
            return Err(Violation::Uncovered { input, coverage: products[input].clone() });
        }
        Ok(())
    }

    /// Exact check of `w >= 0` and `Aᵀw <= 1`; returns the packing weight.
    pub fn verify_packing(&self, w: &[Rational]) -> Result<Rational, Violation> {
        self.packing_feasible(w)?;
        Ok(crate::rational::sum(w))
    }

    /// Feasibility part of [`Channel::verify_packing`].
    pub fn packing_feasible(&self, w: &[Rational]) -> Result<(), Violation> {
        if w.len() != self.num_inputs {
            return Err(Violation::Length { expected: self.num_inputs, got: w.len() });
        }
        if let Some(index) = w.iter().position(|v| v.is_negative()) {
            return Err(Violation::Negative { index });
        }
        let loads = self.packing_loads(w);
        let one = Rational::one();
        if let Some(output) = loads.iter().position(|l| *l > one) {
            return Err(Violation::Overloaded { output, load: loads[output].clone() });
        }
        Ok(())
    }

    pub fn check_cover(&self, z: &WeightVec) -> bool {
        z.side == Side::Output && self.cover_feasible(&z.values).is_ok()
    }

    pub fn check_packing(&self, w: &WeightVec) -> bool {
        w.side == Side::Input && self.packing_feasible(&w.values).is_ok()
    }

    /// True iff no output has two neighbors in `set`.
    pub fn is_code(&self, set: &[usize]) -> Result<bool> {
        let mut member = vec![false; self.num_inputs];
        for &x in set {
            if x >= self.num_inputs {
                return Err(Error::IndexOutOfRange { index: x, len: self.num_inputs });
            }
            member[x] = true;
        }
        let mut hit = vec![false; self.num_outputs];
        for x in (0..self.num_inputs).filter(|&x| member[x]) {
            for y in self.input_neighbors(x) {
                if hit[y] {
                    return Ok(false);
                }
                hit[y] = true;
            }
        }
        Ok(true)
    }

    /// True iff the outputs in `set` reach every input.
    pub fn is_output_cover(&self, set: &[usize]) -> Result<bool> {
        let mut covered = vec![false; self.num_inputs];
        for &y in set {
            if y >= self.num_outputs {
                return Err(Error::IndexOutOfRange { index: y, len: self.num_outputs });
            }
            for x in self.output_neighbors(y) {
                covered[x] = true;
            }
        }
        Ok(covered.into_iter().all(|c| c))
    }

    /// Boolean product `self ∘ other`: `x` reaches `z` iff some intermediate
    /// `y` has `x -> y` in `self` and `y -> z` in `other`.
    pub fn compose(&self, other: &Channel) -> Result<Channel> {
        if self.num_outputs != other.num_inputs {
            return Err(Error::DimensionMismatch(format!(
                "left channel has {} outputs, right channel has {} inputs",
                self.num_outputs, other.num_inputs
            )));
        }
        let rows: Vec<Vec<u32>> = (0..self.num_inputs)
            .into_par_iter()
            .map(|x| {
                let mut row: Vec<u32> =
                    self.input_neighbors(x).flat_map(|y| other.input_neighbors(y).map(|z| z as u32)).collect();
                row.sort_unstable();
                row.dedup();
                row
            })
            .collect();
        let pairs = rows.iter().enumerate().flat_map(|(x, row)| row.iter().map(move |&z| (x as u32, z))).collect();
        Channel::from_pairs(self.num_inputs, other.num_outputs, pairs, false)
    }

    /// Graph on the inputs where `u ~ v` iff their output neighborhoods meet.
    pub fn confusability(&self) -> Graph {
        let adj: Vec<Vec<u32>> = (0..self.num_inputs)
            .into_par_iter()
            .map(|x| {
                let mut row: Vec<u32> = self
                    .input_neighbors(x)
                    .flat_map(|y| self.output_neighbors(y).map(|v| v as u32))
                    .filter(|&v| v as usize != x)
                    .collect();
                row.sort_unstable();
                row.dedup();
                row
            })
            .collect();
        Graph { adj }
    }

    pub fn input_label(&self, x: usize) -> String {
        match &self.labels {
            Labels::Index => x.to_string(),
            Labels::Binary { input_len, .. } => crate::zoo::word_to_string(x as u64, *input_len),
            Labels::Explicit { inputs, .. } => inputs[x].clone(),
        }
    }

    pub fn output_label(&self, y: usize) -> String {
        match &self.labels {
            Labels::Index => y.to_string(),
            Labels::Binary { output_len, .. } => crate::zoo::word_to_string(y as u64, *output_len),
            Labels::Explicit { outputs, .. } => outputs[y].clone(),
        }
    }
}

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut adj = vec![Vec::new(); num_vertices];
        for (u, v) in edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::EdgeOutOfRange(u, v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for (u, row) in adj.iter_mut().enumerate() {
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0] as usize), u.max(w[0] as usize)));
            }
        }
        Ok(Graph { adj })
    }

    pub fn empty(m: usize) -> Graph {
        Graph { adj: vec![Vec::new(); m] }
    }

    pub fn complete(m: usize) -> Graph {
        Graph { adj: (0..m).map(|u| (0..m as u32).filter(|&v| v as usize != u).collect()).collect() }
    }

    pub fn path(m: usize) -> Graph {
        Graph::new(m, (1..m).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(m: usize) -> Result<Graph> {
        if m < 3 {
            return Err(Error::InvalidParameter("cycle needs at least 3 vertices".into()));
        }
        Graph::new(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Graph {
        Graph::new(k + 1, (1..=k).map(|i| (0, i))).expect("star is simple")
    }

    /// Complete multipartite graph; vertices numbered part by part.
    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let part_of: Vec<usize> = parts.iter().enumerate().flat_map(|(p, &s)| std::iter::repeat_n(p, s)).collect();
        let m = part_of.len();
        let mut edges = Vec::new();
        for u in 0..m {
            for v in u + 1..m {
                if part_of[u] != part_of[v] {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(m, edges).expect("multipartite graph is simple")
    }

    /// Strong product: distinct pairs adjacent iff each coordinate is equal or adjacent.
    pub fn strong_product(&self, other: &Graph) -> Graph {
        let (m1, m2) = (self.num_vertices(), other.num_vertices());
        let closed = |g: &Graph, u: usize| {
            let mut c: Vec<usize> = g.neighbors(u).collect();
            c.push(u);
            c
        };
        let mut adj = vec![Vec::new(); m1 * m2];
        for u1 in 0..m1 {
            for u2 in 0..m2 {
                let a = u1 * m2 + u2;
                for v1 in closed(self, u1) {
                    for v2 in closed(other, u2) {
                        let b = v1 * m2 + v2;
                        if a != b {
                            adj[a].push(b as u32);
                        }
                    }
                }
                adj[a].sort_unstable();
            }
        }
        Graph { adj }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn neighbors(&self, u: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adj[u].iter().map(|&v| v as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.adj.len()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    pub fn is_dominating(&self, set: &[usize]) -> bool {
        let mut hit = vec![false; self.num_vertices()];
        for &u in set {
            hit[u] = true;
            for v in self.neighbors(u) {
                hit[v] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// Channel with matrix adjacency + identity: each vertex reaches its closed
    /// neighborhood. Codes of this channel are 2-packings; output covers are
    /// dominating sets.
    pub fn closed_neighborhood_channel(&self) -> Channel {
        let edges = (0..self.num_vertices())
            .flat_map(|u| std::iter::once((u, u)).chain(self.neighbors(u).map(move |v| (u, v))));
        Channel::new(self.num_vertices(), self.num_vertices(), edges)
            .expect("closed neighborhoods form a valid channel")
    }
}
