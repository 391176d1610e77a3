//! Undirected decomposable graphs: chordality, junction trees, decompositions,
//! graph products, collapsibility, enumeration and single-edge neighbourhoods.

mod chordal;
mod decomposition;
mod enumerate;
mod ugraph;

pub use chordal::{
    is_chordal, junction_tree, junction_tree_with_priority, mcs_order, mcs_order_with_priority,
    JunctionTree,
};
pub use decomposition::{
    check_decomposition, covering_pairs, decomposition, graph_product, is_collapsible,
    is_decomposition, product_of_margins, Decomposition, DecompositionVerdict,
};
pub use enumerate::{
    decomposable_neighbors, enumerate_all_on, enumerate_decomposable, enumerate_decomposable_on,
    ENUMERATION_CAP,
};
pub use ugraph::{cmp_edge_lists, UGraph};
