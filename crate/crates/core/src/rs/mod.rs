//! The graph dictionary: star-free sets as triangle families in `G(A)` or
//! clique families in `H(A)`, and as families of induced matchings.

mod graph;
mod matching;
mod schedule;

pub use graph::{
    build_hypergraph, build_tripartite, enumerate_triangles, g_stars, h_stars, points_of,
    triangles_of, Hypergraph, Triangle, TripartiteEdges, TripartiteGraph,
};
pub use matching::{
    matchings_from_rs, matchings_to_starfree, rs_from_matchings, starfree_to_matchings, CutMatchings,
    Edge, Host, MatchingFamily,
};
pub use schedule::{channel_schedule, Delivery, Schedule};
