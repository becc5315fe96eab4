//! Test corpora: connected binary matroids up to isomorphism, cycle matroids
//! of 2-connected multigraphs, named specials, and seeded series extensions.

use std::collections::HashMap;

use cdmatroid::matroid::{IsoClassSet, IsoProfile};
use cdmatroid::{zoo, BinaryMatroid, Result};
use petgraph::graph::UnGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

/// Adds the profiled candidates to `seen` in order, returning the new classes.
fn dedupe_into(seen: &mut IsoClassSet, candidates: Vec<BinaryMatroid>) -> Result<Vec<BinaryMatroid>> {
    let profiled = candidates
        .into_par_iter()
        .map(|m| IsoProfile::new(&m).map(|p| (m, p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(profiled
        .into_iter()
        .filter_map(|(m, p)| seen.insert_with_profile(m.clone(), p).then_some(m))
        .collect())
}

/// Every single-element extension and coextension of `m`, parallel and
/// series additions included.
fn grow(m: &BinaryMatroid) -> Vec<BinaryMatroid> {
    let extend = |x: &BinaryMatroid| -> Vec<BinaryMatroid> {
        (1..1u64 << x.rank()).map(|v| BinaryMatroid::from_matrix(x.rep().with_column(v))).collect()
    };
    let mut out = extend(m);
    out.extend(extend(&m.dual()).into_iter().map(|x| x.dual()));
    out
}

/// All connected binary matroids on `1..=max_elements` elements, one per
/// isomorphism class, indexed by size. Every connected matroid on at least
/// two elements has an element whose deletion or contraction stays
/// connected, so growing level by level reaches all of them.
pub struct BinaryCorpus {
    levels: Vec<Vec<BinaryMatroid>>,
}

impl BinaryCorpus {
    pub fn generate(max_elements: usize) -> Result<Self> {
        let mut levels = vec![Vec::new()];
        if max_elements >= 1 {
            levels.push(vec![zoo::loop_matroid().relabel(vec!["1".into()])?, zoo::coloop().relabel(vec!["1".into()])?]);
        }
        for _ in 2..=max_elements {
            let prev = levels.last().expect("level 1 exists");
            let candidates: Vec<BinaryMatroid> = prev
                .par_iter()
                .flat_map_iter(grow)
                .filter(|m| m.is_connected())
                .collect();
            let mut seen = IsoClassSet::new();
            levels.push(dedupe_into(&mut seen, candidates)?);
        }
        Ok(BinaryCorpus { levels })
    }

    pub fn max_elements(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[BinaryMatroid] {
        self.levels.get(n).map_or(&[], |l| l.as_slice())
    }

    /// Members with at most `n` elements, smallest first.
    pub fn up_to(&self, n: usize) -> impl Iterator<Item = &BinaryMatroid> {
        self.levels.iter().take(n + 1).flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BinaryMatroid> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A loopless multigraph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    fn multiplicities(&self) -> HashMap<(usize, usize), u32> {
        let mut out = HashMap::new();
        for &(u, v) in &self.edges {
            *out.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
        out
    }

    /// Simple graph whose edge weights are the multiplicities.
    fn weighted(&self) -> UnGraph<(), u32> {
        let mut g = UnGraph::with_capacity(self.vertices, self.edges.len());
        let nodes: Vec<_> = (0..self.vertices).map(|_| g.add_node(())).collect();
        let mut mult: Vec<_> = self.multiplicities().into_iter().collect();
        mult.sort();
        for ((u, v), k) in mult {
            g.add_edge(nodes[u], nodes[v], k);
        }
        g
    }

    fn invariant(&self) -> (usize, Vec<usize>, Vec<u32>) {
        let mut degrees = vec![0; self.vertices];
        for &(u, v) in &self.edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        degrees.sort_unstable();
        let mut mult: Vec<u32> = self.multiplicities().into_values().collect();
        mult.sort_unstable();
        (self.vertices, degrees, mult)
    }

    pub fn matroid(&self) -> Result<BinaryMatroid> {
        zoo::graphic(&self.edges)
    }
}

fn is_isomorphic_graph(a: &Multigraph, b: &Multigraph) -> bool {
    petgraph::algo::is_isomorphic_matching(&a.weighted(), &b.weighted(), |_, _| true, |x, y| x == y)
}

/// Connected loopless multigraphs with `1..=max_edges` edges up to graph
/// isomorphism, indexed by edge count.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Vec<Multigraph>> {
    let mut levels = vec![Vec::new()];
    if max_edges == 0 {
        return levels;
    }
    levels.push(vec![Multigraph { vertices: 2, edges: vec![(0, 1)] }]);
    for _ in 2..=max_edges {
        let prev = levels.last().expect("level 1 exists");
        let mut buckets: HashMap<(usize, Vec<usize>, Vec<u32>), Vec<usize>> = HashMap::new();
        let mut next: Vec<Multigraph> = Vec::new();
        for g in prev {
            let mut children = Vec::new();
            for u in 0..g.vertices {
                for v in u + 1..g.vertices {
                    let mut h = g.clone();
                    h.edges.push((u, v));
                    children.push(h);
                }
                let mut h = g.clone();
                h.edges.push((u, g.vertices));
                h.vertices += 1;
                children.push(h);
            }
            for h in children {
                let bucket = buckets.entry(h.invariant()).or_default();
                if bucket.iter().all(|&i| !is_isomorphic_graph(&next[i], &h)) {
                    bucket.push(next.len());
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Cycle matroids of 2-connected loopless multigraphs with at most
/// `max_edges` edges. `graphs` counts graphs up to graph isomorphism;
/// `matroids` keeps one matroid per isomorphism class (2-isomorphic graphs
/// share one).
pub struct GraphicCorpus {
    pub graphs: usize,
    pub matroids: Vec<BinaryMatroid>,
}

pub fn two_connected_graphic(max_edges: usize) -> Result<GraphicCorpus> {
    let mut graphs = 0;
    let mut seen = IsoClassSet::new();
    let mut matroids = Vec::new();
    for level in connected_multigraphs(max_edges) {
        let candidates: Vec<BinaryMatroid> = level
            .par_iter()
            .map(Multigraph::matroid)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(BinaryMatroid::is_connected)
            .collect();
        graphs += candidates.len();
        matroids.extend(dedupe_into(&mut seen, candidates)?);
    }
    Ok(GraphicCorpus { graphs, matroids })
}

/// The regular matroids outside small graphic ones that the structure
/// theorem names explicitly.
pub fn regular_specials() -> Result<Vec<(String, BinaryMatroid)>> {
    Ok(vec![
        ("M(K33)".into(), zoo::complete_bipartite(3, 3)?),
        ("M*(K33)".into(), zoo::complete_bipartite(3, 3)?.dual()),
        ("M*(K5)".into(), zoo::complete_dual(5)?),
        ("R10".into(), zoo::r10()),
    ])
}

/// Adds `steps` elements, each in series with a uniformly chosen element
/// of the current matroid. New labels are `+1`, `+2`, ...
pub fn series_extension_steps<R: Rng>(rng: &mut R, base: &BinaryMatroid, steps: usize) -> Result<BinaryMatroid> {
    let mut m = base.clone();
    for i in 1..=steps {
        let e = rng.gen_range(0..m.len());
        m = m.series_extend(e, &[format!("+{i}")])?;
    }
    Ok(m)
}

/// A random series extension of a random member of `pool`, with between
/// one and `max_steps` new elements.
pub fn random_series_extension<R: Rng>(
    rng: &mut R,
    pool: &[BinaryMatroid],
    max_steps: usize,
) -> Result<BinaryMatroid> {
    let base = pool.choose(rng).expect("non-empty pool");
    let steps = rng.gen_range(1..=max_steps);
    series_extension_steps(rng, base, steps)
}
