//! Property suites for the algebraic laws: randomized inputs on top of the
//! exhaustive unit tests.

use mvtop_core::corpus;
use mvtop_core::fuzzy::{powerset_iter, Carrier, FuzzySet};
use mvtop_core::space::generate_topology;
use mvtop_core::value::{Chain, MVValue};
use proptest::prelude::*;
use std::sync::Arc;

fn chain_value(q: u64) -> impl Strategy<Value = MVValue> {
    (0..=q).prop_map(move |k| Chain::new(q).unwrap().element(k as usize))
}

fn chain_and_pair() -> impl Strategy<Value = (MVValue, MVValue, MVValue)> {
    (1u64..60).prop_flat_map(|q| (chain_value(q), chain_value(q), chain_value(q)))
}

proptest! {
    #[test]
    fn value_literals_round_trip((a, _, _) in chain_and_pair()) {
        let text = a.to_string();
        let back: MVValue = text.parse().unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn mv_algebra_laws((a, b, c) in chain_and_pair()) {
        // Commutativity and associativity of both monoids.
        prop_assert_eq!(a.add(b), b.add(a));
        prop_assert_eq!(a.mul(b), b.mul(a));
        prop_assert_eq!(a.add(b).add(c), a.add(b.add(c)));
        prop_assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        // Units.
        prop_assert_eq!(a.add(MVValue::zero()), a);
        prop_assert_eq!(a.mul(MVValue::one()), a);
        // Involution and the De Morgan link.
        prop_assert_eq!(a.neg().neg(), a);
        prop_assert_eq!(a.mul(b), a.neg().add(b.neg()).neg());
        // The characteristic identity.
        prop_assert_eq!(a.neg().add(b).neg().add(b), b.neg().add(a).neg().add(a));
        // Order compatibility.
        prop_assert_eq!(a <= b, a.sub(b) == MVValue::zero());
        prop_assert_eq!(a.meet(b), a.min(b));
        prop_assert_eq!(a.join(b), a.max(b));
    }
}

fn small_fuzzy_triple() -> impl Strategy<Value = (Arc<Carrier>, FuzzySet, FuzzySet, FuzzySet)> {
    let carrier = Carrier::new(["x", "y", "z"]).unwrap();
    let q = 10u64;
    let value = (0..=q).prop_map(move |k| Chain::new(q).unwrap().element(k as usize));
    let set = proptest::collection::vec(value, 3).prop_map({
        let carrier = carrier.clone();
        move |vals| FuzzySet::from_values(&carrier, vals).unwrap()
    });
    (set.clone(), set.clone(), set).prop_map(move |(a, b, c)| (carrier.clone(), a, b, c))
}

proptest! {
    #[test]
    fn fuzzy_order_and_lattice((_, a, b, c) in small_fuzzy_triple()) {
        // Partial order.
        prop_assert!(a.leq(&a).unwrap());
        if a.leq(&b).unwrap() && b.leq(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if a.leq(&b).unwrap() && b.leq(&c).unwrap() {
            prop_assert!(a.leq(&c).unwrap());
        }
        // Meet is the glb, join the lub.
        let meet = a.meet(&b).unwrap();
        prop_assert!(meet.leq(&a).unwrap() && meet.leq(&b).unwrap());
        if c.leq(&a).unwrap() && c.leq(&b).unwrap() {
            prop_assert!(c.leq(&meet).unwrap());
        }
        let join = a.join(&b).unwrap();
        prop_assert!(a.leq(&join).unwrap() && b.leq(&join).unwrap());
        if a.leq(&c).unwrap() && b.leq(&c).unwrap() {
            prop_assert!(join.leq(&c).unwrap());
        }
        // leq agrees with meet.
        prop_assert_eq!(a.leq(&b).unwrap(), a.meet(&b).unwrap() == a);
    }

    #[test]
    fn scalar_action_is_constant_multiplication((_, a, _, _) in small_fuzzy_triple(), k in 0u64..=10) {
        let r = Chain::new(10).unwrap().element(k as usize);
        let rbar = FuzzySet::top(a.carrier()).scalar_mul(r);
        prop_assert_eq!(a.scalar_mul(r), rbar.mul(&a).unwrap());
    }

    #[test]
    fn interior_laws_on_random_inputs((_, a, b, _) in small_fuzzy_triple()) {
        let space = corpus::paper3();
        let ia = space.interior(&a).unwrap();
        let ib = space.interior(&b).unwrap();
        // Contractive, idempotent, open, monotone.
        prop_assert!(ia.leq(&a).unwrap());
        prop_assert!(space.contains_open(&ia));
        prop_assert_eq!(space.interior(&ia).unwrap(), ia.clone());
        if a.leq(&b).unwrap() {
            prop_assert!(ia.leq(&ib).unwrap());
        }
        // Meets preserved, sum and product super-preserved.
        prop_assert_eq!(
            ia.meet(&ib).unwrap(),
            space.interior(&a.meet(&b).unwrap()).unwrap()
        );
        prop_assert!(ia
            .add(&ib)
            .unwrap()
            .leq(&space.interior(&a.add(&b).unwrap()).unwrap())
            .unwrap());
        prop_assert!(ia
            .mul(&ib)
            .unwrap()
            .leq(&space.interior(&a.mul(&b).unwrap()).unwrap())
            .unwrap());
        // The two neighbourhood routes agree.
        for x in space.carrier().points() {
            prop_assert_eq!(
                space.mu(x, &a).unwrap(),
                space.mu_by_witness_search(x, &a).unwrap()
            );
        }
    }

    #[test]
    fn closure_is_minimal_within_a_closed_family(mask in 0u16..1024) {
        // Any subset of an already-closed family closes inside it.
        let space = corpus::paper3();
        let generators: Vec<FuzzySet> = space
            .opens()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, o)| o.clone())
            .collect();
        let closed = generate_topology(
            space.carrier().clone(),
            space.chain(),
            space.lamination().clone(),
            generators,
            10_000,
        )
        .unwrap();
        for open in closed.opens() {
            prop_assert!(space.contains_open(open), "{} escaped the family", open);
        }
        prop_assert!(closed.check_axioms().passed);
    }

    #[test]
    fn closure_lands_inside_the_full_powerset(mask in 0u16..512) {
        let carrier = Carrier::new(["x", "y"]).unwrap();
        let chain = Chain::new(2).unwrap();
        let all: Vec<FuzzySet> = powerset_iter(chain, &carrier, 100).unwrap().collect();
        let generators: Vec<FuzzySet> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, s)| s.clone())
            .collect();
        let closed = generate_topology(
            carrier.clone(),
            chain,
            mvtop_core::value::Subquantale::full_chain(chain),
            generators.clone(),
            100,
        )
        .unwrap();
        prop_assert!(closed.opens().len() <= all.len());
        prop_assert!(closed.check_axioms().passed);
        for g in &generators {
            prop_assert!(closed.contains_open(g));
        }
    }
}
