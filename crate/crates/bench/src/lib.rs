//! Inputs shared by the benchmarks.

use trigon::{
    build_pg2, enumerate_triples, search_bijection, tower_for_order, trace_bijection, Plane,
    PointLineBijection, SearchConfig, SearchOutcome, TripleSet,
};

/// PG(2, q) with a certified bijection: the trace map where it certifies,
/// otherwise the first one found by search.
pub fn certified(q: u32) -> (Plane, PointLineBijection) {
    let tower = tower_for_order(q).expect("prime power");
    let plane = build_pg2(&tower);
    if let Ok(bij) = trace_bijection(&tower, &plane) {
        if bij.is_certified() {
            return (plane, bij);
        }
    }
    match search_bijection(&plane, SearchConfig::default()) {
        Ok(SearchOutcome::Found { bijection, .. }) => (plane, bijection),
        other => panic!("no certified bijection for q={q}: {other:?}"),
    }
}

pub fn with_triples(q: u32) -> (Plane, PointLineBijection, TripleSet) {
    let (plane, bij) = certified(q);
    let triples = enumerate_triples(&plane, &bij).expect("certified input");
    (plane, bij, triples)
}
