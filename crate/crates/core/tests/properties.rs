use std::sync::Arc;

use proptest::prelude::*;
use trigon::gf::{FieldTower, TowerExt};
use trigon::plane::Pg2;
use trigon::pointline::{induced_permutation, is_equivariant};
use trigon::presentation::{LineLabel, PointLabel};
use trigon::*;

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn tower(q: u32) -> Arc<FieldTower> {
    tower_for_order(q).unwrap()
}

/// Element of `K` picked by an arbitrary index.
fn pick(t: &Arc<FieldTower>, n: u32) -> FieldElement {
    t.element_at(n % t.order())
}

/// Schoolbook product in `F_p[u] / (m)` for prime `p`, independent of the
/// tower's multiplication table.
fn prime_field_product(p: u32, m: [u32; 4], a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    let mut prod = [0u32; 5];
    for i in 0..3 {
        for j in 0..3 {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    for d in (3..5).rev() {
        let c = prod[d];
        prod[d] = 0;
        for i in 0..3 {
            prod[d - 3 + i] = (prod[d - 3 + i] + p * p - c * m[i] % p) % p;
        }
    }
    [prod[0], prod[1], prod[2]]
}

proptest! {
    #[test]
    fn field_axioms(qi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let t = tower(ORDERS[qi]);
        let (a, b, c) = (pick(&t, a), pick(&t, b), pick(&t, c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), t.zero());
        prop_assert_eq!(&a * &t.one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), t.one());
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism_of_order_three(qi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>()) {
        let t = tower(ORDERS[qi]);
        let (a, b) = (pick(&t, a), pick(&t, b));
        prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
        prop_assert_eq!((&a * &b).frobenius(), &a.frobenius() * &b.frobenius());
        prop_assert_eq!(a.frobenius().frobenius().frobenius(), a.clone());
        prop_assert_eq!(a.frobenius(), a.pow(t.q() as u64));
    }

    #[test]
    fn trace_is_linear_over_the_base_field(qi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), s in any::<u32>()) {
        let t = tower(ORDERS[qi]);
        let (a, b) = (pick(&t, a), pick(&t, b));
        let s = s % t.q();
        prop_assert!(a.trace().in_base_field());
        prop_assert_eq!((&a + &b).trace(), &a.trace() + &b.trace());
        prop_assert_eq!(a.scale(s).trace(), a.trace().scale(s));
        prop_assert_eq!(a.frobenius().trace(), a.trace());
    }

    #[test]
    fn minimal_polynomial_vanishes(qi in 0usize..ORDERS.len(), a in any::<u32>()) {
        let t = tower(ORDERS[qi]);
        let a = pick(&t, a);
        let m = a.minimal_poly().unwrap();
        prop_assert!(m.eval(&a).is_zero());
        prop_assert_eq!(m.degree(), if a.in_base_field() { 1 } else { 3 });
    }

    #[test]
    fn multiplication_matches_schoolbook_oracle(pi in 0usize..3, a in any::<u32>(), b in any::<u32>()) {
        let p = [2u32, 5, 7][pi];
        let t = tower(p);
        let (a, b) = (pick(&t, a), pick(&t, b));
        let want = prime_field_product(p, t.ext_modulus(), a.coeffs(), b.coeffs());
        prop_assert_eq!((&a * &b).coeffs(), want);
    }

    #[test]
    fn join_and_meet_are_incident(qi in 0usize..4, a in any::<usize>(), b in any::<usize>()) {
        let plane = build_pg2(&tower([2, 3, 4, 5][qi]));
        let n = plane.num_points();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let l = plane.line_through(a, b).unwrap();
        prop_assert!(plane.is_incident(a, l) && plane.is_incident(b, l));
        let z = plane.meet(a, b).unwrap();
        prop_assert!(plane.is_incident(z, a) && plane.is_incident(z, b));
    }

    #[test]
    fn trace_bijection_is_equivariant(qi in 0usize..3, m in 1u32..) {
        let t = tower([2, 4, 8][qi]);
        let pg = Pg2::new(&t);
        let plane = pg.plane();
        let bij = trace_bijection(&t, &plane).unwrap();
        let m = pick(&t, m);
        prop_assume!(!m.is_zero());
        prop_assert!(is_equivariant(&pg, &bij, &m));
    }
}

#[test]
fn dualizing_twice_restores_incidence() {
    for q in [2, 3, 4, 5] {
        let plane = build_pg2(&tower(q));
        let back = plane.dualize().dualize();
        assert_eq!(back.lines(), plane.lines());
        assert_eq!(back.name(), plane.name());
    }
}

#[test]
fn no_point_lies_on_its_own_line_and_lemma_two_holds() {
    for q in [2, 4, 8] {
        let t = tower(q);
        let plane = build_pg2(&t);
        let bij = trace_bijection(&t, &plane).unwrap();
        for x in 0..plane.num_points() {
            assert!(!plane.is_incident(x, bij.line_of(x)));
        }
        for line in 0..plane.num_lines() {
            let perm = induced_permutation(&plane, &bij, line).unwrap();
            assert!(perm.is_bijective() && perm.is_fixed_point_free());
        }
    }
}

fn searched(q: u32) -> (Plane, PointLineBijection) {
    let plane = build_pg2(&tower(q));
    let bij = match search_bijection(&plane, SearchConfig::default()).unwrap() {
        SearchOutcome::Found { bijection, .. } => bijection,
        other => panic!("{other:?}"),
    };
    (plane, bij)
}

fn inputs(q: u32) -> (Plane, PointLineBijection) {
    if q.is_multiple_of(3) {
        searched(q)
    } else {
        let t = tower(q);
        let plane = build_pg2(&t);
        let bij = trace_bijection(&t, &plane).unwrap();
        if bij.is_certified() {
            (plane, bij)
        } else {
            searched(q)
        }
    }
}

/// Incident pairs `x2 ~ λ(x1)` start exactly one tuple, others none.
#[test]
fn incident_pairs_start_exactly_one_tuple() {
    for q in [2, 3] {
        let (plane, bij) = inputs(q);
        let set = enumerate_triples(&plane, &bij).unwrap();
        for word in ["abc", "abcbcab", "abcabcbc"] {
            let w = validate_word(word).unwrap();
            let p = build_hyperbolic(&plane, &bij, &set, &w).unwrap();
            assert_eq!(p.tuples().len(), set.len() * w.len());
            let labels: Vec<PointLabel> = p.point_labels().collect();
            for &x1 in &labels {
                let y: LineLabel = p.lambda(x1);
                for &x2 in &labels {
                    let starts = p
                        .tuples()
                        .iter()
                        .filter(|t| t[0] == x1 && t[1] == x2)
                        .count();
                    assert_eq!(
                        starts,
                        usize::from(p.incident(x2, y)),
                        "q={q} w={word} {x1} {x2}"
                    );
                }
            }
        }
    }
}

#[test]
fn complex_identities_hold_on_every_build() {
    for q in [2, 3, 4] {
        let (plane, bij) = inputs(q);
        let set = enumerate_triples(&plane, &bij).unwrap();
        let mut presentations = vec![build_euclidean(&plane, &bij, &set).unwrap()];
        for word in ["abc", "abcbcab"] {
            presentations
                .push(build_hyperbolic(&plane, &bij, &set, &validate_word(word).unwrap()).unwrap());
        }
        for p in &presentations {
            let report = analyze(p, &plane, &bij).unwrap();
            assert!(report.passes(), "q={q}: {:?}", report.first_failure());
            let s = &report.stats;
            assert!(s.edge_identity && s.face_identity);
            assert_eq!(
                s.link_arcs,
                vec![s.faces; s.vertices],
                "each face meets each vertex once"
            );
            for l in &report.links {
                assert_eq!(l.m(), Some(3));
            }
        }
    }
}
