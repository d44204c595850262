//! Property suite for the arc-level rewrites: root identity against direct
//! builds under shuffled orders, involution of the arc swap, the size
//! guarantees, and the guard rails on invalid inputs.

mod common;

use common::{fixtures, random_order};
use matroid_dd::build::{build_dd, BuildTarget};
use matroid_dd::dd::Store;
use matroid_dd::transforms::{
    bases_to_independents, clutter_bdd_to_zdd, swap_arcs, size_relations_report, TransformError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Transform outputs are root-identical to direct builds of their targets,
/// independent of the element order the store uses.
#[test]
fn rewrites_match_direct_builds_under_shuffled_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for m in fixtures() {
        let mut store = Store::new(random_order(&mut rng, m.ground()));
        let dual = m.dual();

        let bb = build_dd(&m, &mut store, BuildTarget::bdd_bases()).unwrap();
        let zb = build_dd(&m, &mut store, BuildTarget::zdd_bases()).unwrap();
        let zi = build_dd(&m, &mut store, BuildTarget::zdd_independents()).unwrap();
        let bi = build_dd(&m, &mut store, BuildTarget::bdd_independents()).unwrap();
        let bb_dual = build_dd(&dual, &mut store, BuildTarget::bdd_bases()).unwrap();
        let bi_dual = build_dd(&dual, &mut store, BuildTarget::bdd_independents()).unwrap();

        assert_eq!(clutter_bdd_to_zdd(&mut store, &bb).unwrap().root(), zb.root());
        assert_eq!(swap_arcs(&mut store, &bb).unwrap().root(), bb_dual.root());
        assert_eq!(swap_arcs(&mut store, &zb).unwrap().root(), bi_dual.root());
        assert_eq!(bases_to_independents(&mut store, &zb).unwrap().root(), zi.root());
        assert_eq!(bases_to_independents(&mut store, &bb).unwrap().root(), bi.root());
    }
}

/// Swapping arcs twice restores any BDD: bases and independents alike.
#[test]
fn swapping_arcs_twice_is_the_identity_on_bdds() {
    for m in fixtures() {
        let mut store = common::ground_store(&m);
        for target in [BuildTarget::bdd_bases(), BuildTarget::bdd_independents()] {
            let d = build_dd(&m, &mut store, target).unwrap();
            let once = swap_arcs(&mut store, &d).unwrap();
            let twice = swap_arcs(&mut store, &once).unwrap();
            assert_eq!(twice.root(), d.root(), "{target:?} on {m:?}");
        }
    }
}

/// Retagging a clutter BDD as a ZDD can only drop nodes; the basis-ZDD
/// rewrite to independents preserves size exactly, while on basis BDDs it
/// can only shrink the diagram.
#[test]
fn rewrite_sizes_move_in_the_proven_directions() {
    for m in fixtures() {
        let mut store = common::ground_store(&m);
        let bb = build_dd(&m, &mut store, BuildTarget::bdd_bases()).unwrap();
        let zb = build_dd(&m, &mut store, BuildTarget::zdd_bases()).unwrap();

        let rezdd = clutter_bdd_to_zdd(&mut store, &bb).unwrap();
        assert!(store.size(&rezdd) <= store.size(&bb));

        let zi = bases_to_independents(&mut store, &zb).unwrap();
        assert_eq!(store.size(&zi), store.size(&zb), "basis/independence ZDD sizes on {m:?}");

        let bi = bases_to_independents(&mut store, &bb).unwrap();
        assert!(store.size(&bi) <= store.size(&bb));
    }
}

/// The full size-relations report holds under shuffled orders, not just
/// the construction order.
#[test]
fn size_relations_hold_under_shuffled_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for m in fixtures() {
        let mut store = Store::new(random_order(&mut rng, m.ground()));
        let report = size_relations_report(&m, &mut store).unwrap();
        assert!(report.all_pass(), "{m:?}: {report:?}");
    }
}

/// Guard rails: the clutter retag rejects ZDD inputs and non-clutter
/// families; the arc swap rejects ZDDs whose reinterpretation would lose
/// nodes.
#[test]
fn invalid_rewrite_inputs_are_rejected() {
    let m = matroid_dd::matroid::Matroid::uniform(2, 3).unwrap();
    let mut store = common::ground_store(&m);

    let zb = build_dd(&m, &mut store, BuildTarget::zdd_bases()).unwrap();
    assert!(matches!(
        clutter_bdd_to_zdd(&mut store, &zb),
        Err(TransformError::KindMismatch { .. })
    ));

    let bi = build_dd(&m, &mut store, BuildTarget::bdd_independents()).unwrap();
    assert!(matches!(
        clutter_bdd_to_zdd(&mut store, &bi),
        Err(TransformError::NotAClutter { .. })
    ));

    let free = matroid_dd::matroid::Matroid::free(2);
    let mut store = common::ground_store(&free);
    let zi = build_dd(&free, &mut store, BuildTarget::zdd_independents()).unwrap();
    assert!(matches!(swap_arcs(&mut store, &zi), Err(TransformError::SwapAudit { .. })));
}
