use std::collections::{BTreeMap, VecDeque};

use super::matrix::ExchangeMatrix;
use super::seed::{mutate_seed, Seed};
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::laurent::LaurentPoly;

/// Safety bound on the number of distinct clusters visited by [`explore`].
pub const DEFAULT_CAP: usize = 10_000;

/// Order in which the exchange graph is walked. It determines the numbering
/// of non-initial cluster variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExploreOrder {
    /// Preorder depth-first walk, directions tried in ascending order. In rank
    /// two this numbers the variables consecutively around the polygon.
    #[default]
    DepthFirst,
    /// Breadth-first walk, directions tried in ascending order.
    BreadthFirst,
}

/// One cluster of the exchange graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterRecord {
    /// Variable indices, sorted.
    pub members: Vec<usize>,
    /// Principal part `B(C)`, rows and columns in the order of `members`.
    pub matrix: IntMatrix,
    /// Frozen rows, columns in the order of `members`.
    pub frozen: IntMatrix,
    /// For each member (same order): the variable obtained by mutating it and
    /// the cluster that results.
    pub exchanges: Vec<(usize, usize)>,
    /// Variable index at each seed position when the cluster was first reached.
    pub labels: Vec<usize>,
    /// Mutation directions leading from the initial seed to `labels`.
    pub word: Vec<usize>,
}

impl ClusterRecord {
    pub fn position(&self, var: usize) -> Option<usize> {
        self.members.binary_search(&var).ok()
    }

    /// `B(C)_{k,i}` with rows and columns addressed by variable index.
    pub fn b(&self, k: usize, i: usize) -> Option<&num_bigint::BigInt> {
        Some(&self.matrix[(self.position(k)?, self.position(i)?)])
    }
}

/// The complete exchange graph of a finite-type cluster algebra.
#[derive(Clone, Debug)]
pub struct Atlas {
    base: ExchangeMatrix,
    variables: Vec<LaurentPoly>,
    clusters: Vec<ClusterRecord>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl Atlas {
    pub fn base(&self) -> &ExchangeMatrix {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.n()
    }

    /// Cluster variables; the first `rank()` are the initial ones.
    pub fn variables(&self) -> &[LaurentPoly] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn clusters(&self) -> &[ClusterRecord] {
        &self.clusters
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn find_cluster(&self, members: &[usize]) -> Option<usize> {
        let mut key = members.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    /// Mutates a labelled cluster (variable index per seed position) at `position`.
    pub fn mutate_labels(&self, labels: &[usize], position: usize) -> Result<Vec<usize>> {
        let c = self
            .find_cluster(labels)
            .ok_or_else(|| Error::InvalidInput(format!("{labels:?} is not a cluster")))?;
        let rec = &self.clusters[c];
        let var = *labels
            .get(position)
            .ok_or(Error::IndexOutOfRange { index: position, n: labels.len() })?;
        let (new_var, _) = rec.exchanges[rec.position(var).expect("member")];
        let mut out = labels.to_vec();
        out[position] = new_var;
        Ok(out)
    }

    /// Labels reached from the initial seed by the mutation `word`.
    pub fn follow(&self, word: &[usize]) -> Result<Vec<usize>> {
        let mut labels: Vec<usize> = (0..self.rank()).collect();
        for &k in word {
            labels = self.mutate_labels(&labels, k)?;
        }
        Ok(labels)
    }
}

struct Builder {
    base: ExchangeMatrix,
    cap: usize,
    variables: Vec<LaurentPoly>,
    var_index: BTreeMap<LaurentPoly, usize>,
    clusters: Vec<ClusterRecord>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl Builder {
    fn variable(&mut self, p: &LaurentPoly) -> usize {
        if let Some(&i) = self.var_index.get(p) {
            return i;
        }
        let i = self.variables.len();
        self.variables.push(p.clone());
        self.var_index.insert(p.clone(), i);
        i
    }

    /// Registers the cluster of `seed`; returns its index and whether it is new.
    fn cluster(&mut self, seed: &Seed, labels: &[usize], word: Vec<usize>) -> Result<(usize, bool)> {
        let n = self.base.n();
        let m = self.base.m();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| labels[p]);
        let members: Vec<usize> = order.iter().map(|&p| labels[p]).collect();
        let mut matrix = IntMatrix::zeros(n, n);
        let mut frozen = IntMatrix::zeros(m, n);
        for (b, &pb) in order.iter().enumerate() {
            for (a, &pa) in order.iter().enumerate() {
                matrix[(a, b)] = seed.matrix.entry(pa, pb).clone();
            }
            for r in 0..m {
                frozen[(r, b)] = seed.matrix.entry(n + r, pb).clone();
            }
        }
        if let Some(&c) = self.index.get(&members) {
            let rec = &self.clusters[c];
            if rec.matrix != matrix || rec.frozen != frozen {
                return Err(Error::Invariant(format!(
                    "cluster {members:?} reached with two different exchange matrices"
                )));
            }
            return Ok((c, false));
        }
        if self.clusters.len() >= self.cap {
            return Err(Error::CapExceeded { cap: self.cap });
        }
        let c = self.clusters.len();
        self.clusters.push(ClusterRecord {
            members: members.clone(),
            matrix,
            frozen,
            exchanges: vec![(usize::MAX, usize::MAX); n],
            labels: labels.to_vec(),
            word,
        });
        self.index.insert(members, c);
        Ok((c, true))
    }

    /// Mutates `seed` (labelled by `labels`, cluster `c`) at `k`, recording the edge.
    fn step(&mut self, c: usize, seed: &Seed, labels: &[usize], k: usize) -> Result<Option<(usize, Seed, Vec<usize>)>> {
        let next = mutate_seed(seed, k)?;
        let var = self.variable(&next.variables[k]);
        let mut next_labels = labels.to_vec();
        next_labels[k] = var;
        let mut word = self.clusters[c].word.clone();
        word.push(k);
        let (nc, fresh) = self.cluster(&next, &next_labels, word)?;
        let pos = self.clusters[c].position(labels[k]).expect("member");
        self.clusters[c].exchanges[pos] = (var, nc);
        Ok(fresh.then_some((nc, next, next_labels)))
    }
}

/// Explores the exchange graph from the initial seed of `b` with the default
/// depth-first order.
pub fn explore(b: &ExchangeMatrix, cap: usize) -> Result<Atlas> {
    explore_with(b, cap, ExploreOrder::default())
}

pub fn explore_with(b: &ExchangeMatrix, cap: usize, order: ExploreOrder) -> Result<Atlas> {
    if cap == 0 {
        return Err(Error::InvalidInput("cap must be positive".into()));
    }
    let n = b.n();
    let seed = Seed::initial(b.clone());
    let mut builder = Builder {
        base: b.clone(),
        cap,
        variables: Vec::new(),
        var_index: BTreeMap::new(),
        clusters: Vec::new(),
        index: BTreeMap::new(),
    };
    let labels: Vec<usize> = seed.cluster().iter().map(|z| builder.variable(z)).collect();
    let (c0, _) = builder.cluster(&seed, &labels, Vec::new())?;

    match order {
        ExploreOrder::DepthFirst => {
            let mut stack = vec![(c0, seed, labels, 0usize)];
            while let Some(top) = stack.last_mut() {
                if top.3 == n {
                    stack.pop();
                    continue;
                }
                let k = top.3;
                top.3 += 1;
                let (c, s, l) = (top.0, top.1.clone(), top.2.clone());
                if let Some((nc, ns, nl)) = builder.step(c, &s, &l, k)? {
                    stack.push((nc, ns, nl, 0));
                }
            }
        }
        ExploreOrder::BreadthFirst => {
            let mut queue = VecDeque::from([(c0, seed, labels)]);
            while let Some((c, s, l)) = queue.pop_front() {
                for k in 0..n {
                    if let Some(next) = builder.step(c, &s, &l, k)? {
                        queue.push_back(next);
                    }
                }
            }
        }
    }

    let atlas = Atlas {
        base: builder.base,
        variables: builder.variables,
        clusters: builder.clusters,
        index: builder.index,
    };
    check_coefficient_free_distinct(&atlas)?;
    Ok(atlas)
}

/// Setting frozen variables to 1 must keep cluster variables distinct.
fn check_coefficient_free_distinct(atlas: &Atlas) -> Result<()> {
    let (n, m) = (atlas.base.n(), atlas.base.m());
    if m == 0 {
        return Ok(());
    }
    let frozen: Vec<usize> = (n..n + m).collect();
    let mut seen = BTreeMap::new();
    for (i, z) in atlas.variables.iter().enumerate() {
        if let Some(j) = seen.insert(z.specialize_to_one(&frozen), i) {
            return Err(Error::Invariant(format!(
                "variables {j} and {i} coincide once frozen variables are set to 1"
            )));
        }
    }
    Ok(())
}
