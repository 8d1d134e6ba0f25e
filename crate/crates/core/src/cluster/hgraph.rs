//! Edges of the coset graph, the subgraphs spanned by `F(n)τ_X τ`, and their
//! identification with 1-skeletons of clusters.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;

use super::arrangement::{block_edges, cluster, Arrangement};
use super::special::{are_alternating, are_consecutive, is_special, Signed, SortedList, SpecialWord};
use crate::calculus::{reduce, StandardForm, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::seq::{classify_y_address, Addr, Variant};
use crate::word::GroupWord;

/// The `y` part of a form as signed letters in address order, or `None`
/// when an address repeats.
fn signed_ypart(sf: &StandardForm) -> Option<Vec<Signed>> {
    let mut v: Vec<Signed> =
        sf.ypart.iter().map(|l| Signed::new(l.address().clone(), if l.is_inverse() { -1 } else { 1 })).collect();
    v.sort();
    if v.windows(2).any(|p| p[0].addr == p[1].addr) {
        return None;
    }
    Some(v)
}

/// `F(n)a = F(n)b`: the rewriting of `ab⁻¹` leaves no `y` letters.
pub fn same_coset(a: &GroupWord, b: &GroupWord, budget: usize) -> Result<bool> {
    Ok(reduce(&a.concat(&b.inverse()), budget, true)?.ypart.is_empty())
}

/// `F(n)τ₁` and `F(n)τ₂` are joined: some rewriting of `τ₁τ₂⁻¹` has a
/// special `y` part at addresses of `Y_0(n)`.
pub fn coset_edge_test(t1: &GroupWord, t2: &GroupWord) -> Result<bool> {
    coset_edge_test_with_budget(t1, t2, DEFAULT_BUDGET)
}

pub fn coset_edge_test_with_budget(t1: &GroupWord, t2: &GroupWord, budget: usize) -> Result<bool> {
    let n = t1.n;
    let w = t1.concat(&t2.inverse());
    for contract in [true, false] {
        let sf = reduce(&w, budget, contract)?;
        if let Some(v) = signed_ypart(&sf) {
            if v.iter().all(|l| classify_y_address(&l.addr, Variant::G0, n)) && is_special(&v, n) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, Serialize)]
pub struct HSubgraph {
    pub list: SortedList,
    pub base: GroupWord,
    /// `τ_X τ` for every mask `X`.
    pub words: Vec<GroupWord>,
    /// Coset class of each mask, numbered by first occurrence.
    pub class: Vec<usize>,
    /// Joined pairs of masks, each pair sorted.
    pub edges: BTreeSet<(u32, u32)>,
}

impl HSubgraph {
    /// The `2^m` cosets are pairwise distinct.
    pub fn distinct(&self) -> bool {
        self.class.iter().enumerate().all(|(k, &c)| c == k)
    }

    pub fn vertex_count(&self) -> usize {
        self.class.iter().max().map_or(0, |c| c + 1)
    }
}

/// The induced subgraph on `F(n)τ_X τ`, `X ⊆ {1,…,m}`.
pub fn h_subgraph(list: &SortedList, base: &GroupWord, budget: usize) -> Result<HSubgraph> {
    let m = list.m();
    let words: Vec<GroupWord> = (0u32..1 << m).map(|x| list.tau(x).concat(base)).collect();
    let mut class = Vec::with_capacity(words.len());
    let mut reps: Vec<usize> = Vec::new();
    for (k, w) in words.iter().enumerate() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if same_coset(w, &words[r], budget)? {
                found = Some(c);
                break;
            }
        }
        class.push(found.unwrap_or_else(|| {
            reps.push(k);
            reps.len() - 1
        }));
    }
    let mut edges = BTreeSet::new();
    for u in 0..words.len() {
        for v in u + 1..words.len() {
            if class[u] != class[v] && coset_edge_test_with_budget(&words[u], &words[v], budget)? {
                edges.insert((u as u32, v as u32));
            }
        }
    }
    Ok(HSubgraph { list: list.clone(), base: base.clone(), words, class, edges })
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonReport {
    pub m: usize,
    pub y_set: Vec<usize>,
    /// Non-neighbouring consecutive words; each such pair adds an edge the cluster lacks.
    pub distant_consecutive: Vec<(usize, usize)>,
    pub distinct: bool,
    pub cluster_edges: BTreeSet<(u32, u32)>,
    pub block_edges: BTreeSet<(u32, u32)>,
    pub graph_edges: BTreeSet<(u32, u32)>,
}

impl SkeletonReport {
    /// `X ↦ F(n)τ_X` is a bijection carrying the cluster's 1-skeleton onto the graph.
    pub fn matched(&self) -> bool {
        self.distinct && self.cluster_edges == self.graph_edges && self.cluster_edges == self.block_edges
    }
}

pub fn skeleton_match(list: &SortedList, budget: usize) -> Result<SkeletonReport> {
    if !list.is_proper() {
        return Err(Error::PreconditionViolated("the sorted list is not proper".into()));
    }
    let m = list.m();
    let y_set = list.y_set();
    let a = Arrangement::new(m, y_set.iter().copied())?;
    let h = h_subgraph(list, &GroupWord::identity(list.n), budget)?;
    Ok(SkeletonReport {
        m,
        distinct: h.distinct(),
        cluster_edges: cluster(&a).skeleton_edges(),
        block_edges: block_edges(m, &a.type2),
        graph_edges: h.edges,
        distant_consecutive: list.distant_consecutive(),
        y_set,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    /// Pairs `(X₁, X₂)` of masks naming the same coset.
    pub shared: Vec<(u32, u32)>,
    /// A list and base spanning exactly the shared vertices, if one was found.
    pub realized_by: Option<(SortedList, GroupWord)>,
    pub candidates_tried: usize,
}

impl IntersectionReport {
    pub fn is_empty(&self) -> bool {
        self.shared.is_empty()
    }

    /// Empty intersections hold vacuously.
    pub fn realized(&self) -> bool {
        self.shared.is_empty() || self.realized_by.is_some()
    }
}

/// Intersects the vertex sets and searches the faces `{τ_{F∪Y}τ : Y ⊆ S}` of
/// either cube for one spanning exactly the intersection.
pub fn h_intersection_check(c1: &HSubgraph, c2: &HSubgraph, budget: usize) -> Result<IntersectionReport> {
    let mut shared = Vec::new();
    for (u, a) in c1.words.iter().enumerate() {
        for (v, b) in c2.words.iter().enumerate() {
            if same_coset(a, b, budget)? {
                shared.push((u as u32, v as u32));
            }
        }
    }
    let mut report = IntersectionReport { shared, realized_by: None, candidates_tried: 0 };
    if report.shared.is_empty() {
        return Ok(report);
    }
    for (side, c) in [c1, c2].into_iter().enumerate() {
        let hit: BTreeSet<u32> = report.shared.iter().map(|p| if side == 0 { p.0 } else { p.1 }).collect();
        let classes: BTreeSet<usize> = hit.iter().map(|&x| c.class[x as usize]).collect();
        let full = (1u32 << c.list.m()) - 1;
        for free in 0..=full {
            for fixed in (0..=full).filter(|f| f & free == 0) {
                report.candidates_tried += 1;
                let face: BTreeSet<usize> =
                    (0..=free).filter(|y| y & !free == 0).map(|y| c.class[(fixed | y) as usize]).collect();
                if face == classes {
                    let base = c.list.tau(fixed).concat(&c.base);
                    report.realized_by = Some((c.list.sublist(free), base));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Leaves of the full n-ary tree of the given depth, left to right.
fn full_leaves(n: u8, depth: usize) -> Vec<Addr> {
    let mut leaves = vec![Addr::empty()];
    for _ in 0..depth {
        leaves = leaves.iter().flat_map(|a| (0..n).map(move |d| a.child(d))).collect();
    }
    leaves
}

/// A random proper sorted list of `m` special words at `Y_0(n)` addresses
/// with no consecutive pair beyond neighbours: runs of leaves `n-1` apart
/// in a full tree, neighbours sometimes adjacent.
pub fn random_proper_list<R: Rng>(rng: &mut R, n: u8, m: usize) -> SortedList {
    let depth = if n == 2 { 5 } else { 3 };
    let leaves = full_leaves(n, depth);
    let step = n as usize - 1;
    'retry: loop {
        let mut words: Vec<SpecialWord> = Vec::new();
        let mut pos = rng.gen_range(1..=n as usize);
        for _ in 0..m {
            let len = rng.gen_range(1..=2);
            let first: i8 = if rng.gen() { 1 } else { -1 };
            let mut letters = Vec::new();
            for k in 0..len {
                let Some(a) = leaves.get(pos + k * step) else { continue 'retry };
                if !classify_y_address(a, Variant::G0, n) {
                    continue 'retry;
                }
                letters.push(Signed::new(a.clone(), if k % 2 == 0 { first } else { -first }));
            }
            let Ok(w) = SpecialWord::new(letters, n) else { continue 'retry };
            pos += (len - 1) * step + step + if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=n as usize) };
            // neighbours that are consecutive are made alternating
            let w = match words.last() {
                Some(prev) if are_consecutive(prev, &w, n) && !are_alternating(prev, &w, n) => {
                    SpecialWord { letters: w.letters.iter().map(|l| Signed::new(l.addr.clone(), -l.sign)).collect() }
                }
                _ => w,
            };
            words.push(w);
        }
        if let Ok(list) = SortedList::new(n, words) {
            if list.is_proper() && list.distant_consecutive().is_empty() {
                return list;
            }
        }
    }
}

/// `τ_X τ` words of a subgraph keyed by mask, for display.
pub fn vertex_table(h: &HSubgraph) -> BTreeMap<u32, String> {
    h.words.iter().enumerate().map(|(k, w)| (k as u32, w.to_string())).collect()
}

/// `y_{(n-1)0}` as a one-letter special word.
pub fn basic_edge_word(n: u8) -> SpecialWord {
    SpecialWord { letters: vec![Signed::new(Addr(vec![n - 1, 0]), 1)] }
}
