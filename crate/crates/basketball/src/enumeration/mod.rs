//! Exhaustive censuses, orbit counts and generating functions.

mod census;
mod qn;
mod series;

pub use census::{
    all_basketballs, all_matchings, basketball_census, degree_histogram, forest_census, forest_orbit_census,
    nonsingular_count, nonsingular_formula, nonsingular_orbits, orbit_census, valid_forests, BasketballCensus,
    CellEnumerator, ForestCensus, Orbit, OrbitCensus, OrbitGroup, BASKETBALL_CENSUS_CAP, FOREST_CENSUS_CAP,
    MATCHING_CAP,
};
pub use series::{
    gf_even_noncrossing, gf_forest, gf_forest_from, gf_tree, BivariateSeries, Monomial, PartitionWeightSeries,
    PARTITION_ORDER_CAP, TREE_ORDER_CAP,
};
pub use qn::{
    qn_diametric, qn_embedding_census, qn_enumerator, qn_enumerator_total, qn_quoted_total, QnEmbeddingCensus,
    QN_EMBEDDING_CAP,
};
