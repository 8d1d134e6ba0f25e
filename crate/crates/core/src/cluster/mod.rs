//! Special words, admissible hyperplane arrangements, clusters and the
//! subgraphs of the coset graph they describe.

pub mod arrangement;
pub mod hgraph;
pub mod special;

pub use arrangement::{cluster, face_complex, flats, Arrangement, Cell, ClusterComplex, Flat, FlatCoord, Hyperplane};
pub use hgraph::{coset_edge_test, h_intersection_check, h_subgraph, skeleton_match, HSubgraph, SkeletonReport};
pub use special::{are_alternating, are_consecutive, is_special, Signed, SortedList, SpecialWord};

use crate::seq::Addr;

/// Every address of length at most `depth`, in length-lex order.
pub fn addresses_up_to(n: u8, depth: usize) -> Vec<Addr> {
    let mut out = vec![Addr::empty()];
    let mut level = vec![Addr::empty()];
    for _ in 0..depth {
        level = level.iter().flat_map(|a| (0..n).map(move |d| a.child(d))).collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Alternating sum of cell counts.
pub fn euler_characteristic(c: &ClusterComplex) -> i64 {
    c.euler_characteristic()
}
