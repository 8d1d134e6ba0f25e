//! Admissible arrangements in `ℝ^m`, their flats and face complexes, and
//! clusters as the cells inside `[0,1]^m`.
//!
//! A cell is a consistent sign vector over the hyperplanes. Every hyperplane
//! is an order constraint among `0`, `1` and the coordinates, and a system of
//! such constraints is satisfiable iff no strict constraint lies on a cycle.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Hyperplane {
    /// `x_i = 0`
    Zero(usize),
    /// `x_i = 1`
    One(usize),
    /// `x_i = x_{i+1}`
    Eq(usize),
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperplane::Zero(i) => write!(f, "x{i}=0"),
            Hyperplane::One(i) => write!(f, "x{i}=1"),
            Hyperplane::Eq(i) => write!(f, "x{i}=x{}", i + 1),
        }
    }
}

/// All `2m` hyperplanes `x_i = 0`, `x_i = 1`, plus `x_i = x_{i+1}` for `i` in `type2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    pub m: usize,
    pub type2: BTreeSet<usize>,
}

impl Arrangement {
    pub fn new(m: usize, type2: impl IntoIterator<Item = usize>) -> Result<Arrangement> {
        let type2: BTreeSet<usize> = type2.into_iter().collect();
        if m == 0 || m > 12 {
            return Err(Error::PreconditionViolated(format!("dimension {m} outside 1..=12")));
        }
        if let Some(i) = type2.iter().find(|&&i| i == 0 || i >= m) {
            return Err(Error::PreconditionViolated(format!("type 2 index {i} outside 1..{m}")));
        }
        Ok(Arrangement { m, type2 })
    }

    /// Every type-2 subset for dimension `m`.
    pub fn all(m: usize) -> impl Iterator<Item = Arrangement> {
        (0u32..1 << (m - 1)).map(move |mask| Arrangement { m, type2: (1..m).filter(|i| mask >> (i - 1) & 1 == 1).collect() })
    }

    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        let mut h: Vec<Hyperplane> = (1..=self.m).flat_map(|i| [Hyperplane::Zero(i), Hyperplane::One(i)]).collect();
        h.extend(self.type2.iter().map(|&i| Hyperplane::Eq(i)));
        h
    }
}

/// Order constraints among nodes `0` (the value 0), `1` (the value 1) and
/// `i + 1` (the coordinate `x_i`): `reach[u][v]` is `None`, `Some(false)`
/// for `u ≤ v` or `Some(true)` for `u < v`.
struct Order {
    reach: Vec<Vec<Option<bool>>>,
}

impl Order {
    fn new(m: usize) -> Order {
        let mut o = Order { reach: vec![vec![None; m + 2]; m + 2] };
        o.le(0, 1, true);
        o
    }

    fn le(&mut self, u: usize, v: usize, strict: bool) {
        let r = &mut self.reach[u][v];
        *r = Some(r.unwrap_or(false) || strict);
    }

    /// Records `sign(a - b)`.
    fn sign(&mut self, a: usize, b: usize, s: i8) {
        match s {
            0 => {
                self.le(a, b, false);
                self.le(b, a, false);
            }
            1 => self.le(b, a, true),
            _ => self.le(a, b, true),
        }
    }

    /// Transitive closure; `false` when some strict constraint lies on a cycle.
    fn close(&mut self) -> bool {
        let k = self.reach.len();
        for w in 0..k {
            for u in 0..k {
                let Some(a) = self.reach[u][w] else { continue };
                for v in 0..k {
                    if let Some(b) = self.reach[w][v] {
                        let r = &mut self.reach[u][v];
                        *r = Some(r.unwrap_or(false) || a || b);
                    }
                }
            }
        }
        (0..k).all(|u| self.reach[u][u] != Some(true))
    }

    fn equal(&self, u: usize, v: usize) -> bool {
        u == v || (self.reach[u][v].is_some() && self.reach[v][u].is_some())
    }
}

fn node(h: Hyperplane) -> (usize, usize) {
    match h {
        Hyperplane::Zero(i) => (i + 1, 0),
        Hyperplane::One(i) => (i + 1, 1),
        Hyperplane::Eq(i) => (i + 1, i + 2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub dim: usize,
    /// One entry per hyperplane, in [`Arrangement::hyperplanes`] order.
    pub sign: Vec<i8>,
}

impl Cell {
    /// `Some(dim)` when the sign vector is realized by a point.
    fn realize(a: &Arrangement, hs: &[Hyperplane], sign: &[i8]) -> Option<(usize, Order)> {
        let mut o = Order::new(a.m);
        for (h, &s) in hs.iter().zip(sign) {
            let (u, v) = node(*h);
            o.sign(u, v, s);
        }
        if !o.close() {
            return None;
        }
        // free parameters: classes of coordinates not pinned to 0 or 1
        let mut reps: Vec<usize> = Vec::new();
        for x in 2..a.m + 2 {
            if !o.equal(x, 0) && !o.equal(x, 1) && !reps.iter().any(|&r| o.equal(r, x)) {
                reps.push(x);
            }
        }
        Some((reps.len(), o))
    }

    /// `self` lies in the closure of `other`.
    pub fn is_face_of(&self, other: &Cell) -> bool {
        self.sign.iter().zip(&other.sign).all(|(&a, &b)| a == b || a == 0)
    }

    /// For a vertex of a cluster, the set `{i : x_i = 1}` as a bit mask.
    pub fn vertex_mask(&self, a: &Arrangement) -> u32 {
        let hs = a.hyperplanes();
        hs.iter().zip(&self.sign).fold(0, |m, (h, &s)| match h {
            Hyperplane::One(i) if s == 0 => m | 1 << (i - 1),
            _ => m,
        })
    }
}

/// A nonempty intersection of hyperplanes: per coordinate `0`, `1`, or the
/// smallest index of its class of equal free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Flat {
    pub coords: Vec<FlatCoord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FlatCoord {
    Zero,
    One,
    Free(usize),
}

impl Flat {
    pub fn whole(m: usize) -> Flat {
        Flat { coords: (1..=m).map(FlatCoord::Free).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.iter().enumerate().filter(|(k, c)| **c == FlatCoord::Free(k + 1)).count()
    }

    /// The flat cut out by one hyperplane of the arrangement.
    pub fn of(a: &Arrangement, h: Hyperplane) -> Result<Flat> {
        if !a.hyperplanes().contains(&h) {
            return Err(Error::PreconditionViolated(format!("{h} is not in the arrangement")));
        }
        Ok(intersect(a.m, &[h]).unwrap())
    }

    fn contains(&self, o: &Order) -> bool {
        self.coords.iter().enumerate().all(|(k, c)| match c {
            FlatCoord::Zero => o.equal(k + 2, 0),
            FlatCoord::One => o.equal(k + 2, 1),
            FlatCoord::Free(r) => o.equal(k + 2, r + 1),
        })
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            match c {
                FlatCoord::Zero => parts.push(format!("x{}=0", k + 1)),
                FlatCoord::One => parts.push(format!("x{}=1", k + 1)),
                FlatCoord::Free(r) if *r != k + 1 => parts.push(format!("x{}=x{}", r, k + 1)),
                FlatCoord::Free(_) => {}
            }
        }
        if parts.is_empty() {
            write!(f, "R^{}", self.coords.len())
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

fn intersect(m: usize, hs: &[Hyperplane]) -> Option<Flat> {
    // union-find over nodes 0, 1, x_1..x_m
    let mut parent: Vec<usize> = (0..m + 2).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &h in hs {
        let (u, v) = node(h);
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru.max(rv)] = ru.min(rv);
    }
    if find(&mut parent, 1) == 0 {
        return None;
    }
    let coords = (1..=m)
        .map(|i| match find(&mut parent, i + 1) {
            0 => FlatCoord::Zero,
            1 => FlatCoord::One,
            r => FlatCoord::Free(r - 1),
        })
        .collect();
    Some(Flat { coords })
}

/// All flats, the whole space included, in sorted order.
pub fn flats(a: &Arrangement) -> Vec<Flat> {
    let hs = a.hyperplanes();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << hs.len() {
        let chosen: Vec<Hyperplane> = hs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, h)| *h).collect();
        if let Some(f) = intersect(a.m, &chosen) {
            out.insert(f);
        }
    }
    out.into_iter().collect()
}

fn sign_vectors(len: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..3u64.pow(len as u32)).map(move |mut k| {
        (0..len)
            .map(|_| {
                let s = (k % 3) as i8 - 1;
                k /= 3;
                s
            })
            .collect()
    })
}

/// Every cell of the face complex in `ℝ^m`, sorted by dimension then sign.
pub fn face_complex(a: &Arrangement) -> Vec<Cell> {
    let hs = a.hyperplanes();
    let mut cells: Vec<Cell> =
        sign_vectors(hs.len()).filter_map(|s| Cell::realize(a, &hs, &s).map(|(dim, _)| Cell { dim, sign: s })).collect();
    cells.sort();
    cells
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterComplex {
    pub arrangement: Arrangement,
    pub cells: Vec<Cell>,
}

/// The cells of the face complex inside `[0,1]^m`. Only the three in-cube
/// states per coordinate are enumerated.
pub fn cluster(a: &Arrangement) -> ClusterComplex {
    let hs = a.hyperplanes();
    let t = a.type2.len();
    let mut cells = Vec::new();
    for coords in sign_vectors(a.m) {
        for eqs in sign_vectors(t) {
            // -1: x_i = 0, 0: 0 < x_i < 1, 1: x_i = 1
            let mut sign = vec![0i8; 2 * a.m];
            for (k, c) in coords.iter().enumerate() {
                sign[2 * k] = if *c == -1 { 0 } else { 1 };
                sign[2 * k + 1] = if *c == 1 { 0 } else { -1 };
            }
            sign.extend(eqs);
            if let Some((dim, _)) = Cell::realize(a, &hs, &sign) {
                cells.push(Cell { dim, sign });
            }
        }
    }
    cells.sort();
    ClusterComplex { arrangement: a.clone(), cells }
}

impl ClusterComplex {
    /// Cell counts by dimension `0..=m`.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.arrangement.m + 1];
        for cell in &self.cells {
            c[cell.dim] += 1;
        }
        c
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.dim == 0)
    }

    /// Cells in the closure of `cell`, itself included.
    pub fn closure(&self, cell: &Cell) -> Vec<&Cell> {
        self.cells.iter().filter(|c| c.is_face_of(cell)).collect()
    }

    /// Edges of the 1-skeleton as pairs of vertex masks, each pair sorted.
    pub fn skeleton_edges(&self) -> BTreeSet<(u32, u32)> {
        let a = &self.arrangement;
        self.cells
            .iter()
            .filter(|c| c.dim == 1)
            .map(|e| {
                let ends: Vec<u32> = self.vertices().filter(|v| v.is_face_of(e)).map(|v| v.vertex_mask(a)).collect();
                assert_eq!(ends.len(), 2, "an edge has two endpoints");
                (ends[0].min(ends[1]), ends[0].max(ends[1]))
            })
            .collect()
    }

    /// The cells lying in a flat.
    pub fn subcluster(&self, flat: &Flat) -> ClusterComplex {
        let hs = self.arrangement.hyperplanes();
        let cells = self
            .cells
            .iter()
            .filter(|c| {
                let (_, o) = Cell::realize(&self.arrangement, &hs, &c.sign).unwrap();
                flat.contains(&o)
            })
            .cloned()
            .collect();
        ClusterComplex { arrangement: self.arrangement.clone(), cells }
    }

    /// The 1-skeleton in DOT, vertices labelled by their 0/1 coordinates.
    pub fn to_dot(&self) -> String {
        let m = self.arrangement.m;
        let label = |mask: u32| (0..m).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect::<String>();
        let mut out = format!("graph cluster_m{m} {{\n");
        for v in self.vertices() {
            out.push_str(&format!("  \"{}\";\n", label(v.vertex_mask(&self.arrangement))));
        }
        for (u, v) in self.skeleton_edges() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", label(u), label(v)));
        }
        out.push_str("}\n");
        out
    }
}

/// The edge set of the combinatorial cube graph: `X₃` joined to `X₂ ∪ X₃`
/// for a nonempty block `X₂ = {j,…,k}` with `j,…,k-1` in `ys`.
pub fn block_edges(m: usize, ys: &BTreeSet<usize>) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for j in 1..=m {
        for k in j..=m {
            if !(j..k).all(|i| ys.contains(&i)) {
                break;
            }
            let block: u32 = (j..=k).fold(0, |b, i| b | 1 << (i - 1));
            for x3 in 0u32..1 << m {
                if x3 & block == 0 {
                    out.insert((x3, x3 | block));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(m: usize, t: &[usize]) -> Arrangement {
        Arrangement::new(m, t.iter().copied()).unwrap()
    }

    #[test]
    fn square_with_diagonal() {
        let c = cluster(&arr(2, &[1]));
        assert_eq!(c.counts(), vec![4, 5, 2]);
        assert_eq!(c.euler_characteristic(), 1);
        let plain = cluster(&arr(2, &[]));
        assert_eq!(plain.counts(), vec![4, 4, 1]);
        assert_eq!(cluster(&arr(3, &[1, 2])).euler_characteristic(), 1);
    }

    #[test]
    fn every_cluster_is_a_contractible_cube() {
        for m in 1..=4 {
            for a in Arrangement::all(m) {
                let c = cluster(&a);
                let all = face_complex(&a);
                assert_eq!(c.counts()[0], 1 << m, "{a:?}");
                assert_eq!(c.euler_characteristic(), 1, "{a:?}");
                assert_eq!(c.skeleton_edges(), block_edges(m, &a.type2), "{a:?}");
                for cell in &c.cells {
                    let cl = c.closure(cell);
                    assert!(cl.iter().all(|f| f.dim < cell.dim || *f == cell), "{a:?} {cell:?}");
                    assert!(cl.iter().any(|f| f.dim == 0));
                    // each proper weakening that is realizable is a cell of the cluster
                    for f in all.iter().filter(|f| f.is_face_of(cell)) {
                        assert!(c.cells.contains(f));
                    }
                }
            }
        }
    }

    #[test]
    fn face_complex_contains_cluster() {
        let a = arr(2, &[1]);
        let all = face_complex(&a);
        let c = cluster(&a);
        assert!(c.cells.iter().all(|x| all.contains(x)));
        assert!(all.len() > c.cells.len());
        // x_1 = x_2 = 0 is a point, x_1 < 0 < x_2 an open region
        assert!(all.iter().any(|x| x.dim == 2 && x.sign[0] == -1));
    }

    #[test]
    fn flats_of_the_example() {
        let a = arr(2, &[1]);
        let fs = flats(&a);
        // whole plane; four lines x_i = 0,1; the diagonal; four corners
        assert_eq!(fs.len(), 1 + 4 + 1 + 4);
        assert_eq!(fs.iter().filter(|f| f.dim() == 1).count(), 5);
        assert!(fs.contains(&Flat::whole(2)));
        let corner_off_diagonal = Flat { coords: vec![FlatCoord::Zero, FlatCoord::One] };
        assert!(fs.contains(&corner_off_diagonal));
    }

    #[test]
    fn subclusters() {
        let a = arr(2, &[1]);
        let c = cluster(&a);
        let side = c.subcluster(&Flat::of(&a, Hyperplane::Zero(1)).unwrap());
        assert_eq!(side.counts(), vec![2, 1, 0]);
        let diag = c.subcluster(&Flat::of(&a, Hyperplane::Eq(1)).unwrap());
        assert_eq!(diag.counts(), vec![2, 1, 0]);
        assert_eq!(c.subcluster(&Flat::whole(2)), c);
        assert!(Flat::of(&arr(2, &[]), Hyperplane::Eq(1)).is_err());
        let corner = c.subcluster(&Flat { coords: vec![FlatCoord::One, FlatCoord::One] });
        assert_eq!(corner.counts(), vec![1, 0, 0]);
        assert_eq!(corner.euler_characteristic(), 1);
    }

    #[test]
    fn dot_output() {
        let dot = cluster(&arr(2, &[1])).to_dot();
        assert!(dot.contains("\"00\" -- \"11\""));
        assert_eq!(dot.matches("--").count(), 5);
    }

    #[test]
    fn rejects_bad_arrangements() {
        assert!(Arrangement::new(2, [2]).is_err());
        assert!(Arrangement::new(0, []).is_err());
    }
}
