//! Acceptance suite: one test per advertised guarantee, numbered c01–c13.
//! Each test checks both the mathematical claim and a wall-clock budget, so
//! a pass line here certifies the guarantee at desk scale.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use matroid_dd::build::{build_dd, BuildTarget};
use matroid_dd::dd::{DdKind, ElementOrder, NodeId, Store};
use matroid_dd::matroid::Matroid;
use matroid_dd::analysis::{
    check_width_bounds, count_minors_on_prefix, direct_sum_minor_check, laminar_counterexample,
    pathwidth_exact, MAX_PATHWIDTH_GROUND,
};
use matroid_dd::oracle::{zdd_independence, zdd_rank};
use matroid_dd::transforms::{
    bases_to_independents, clutter_bdd_to_zdd, size_relations_report, swap_arcs,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn assert_within(start: Instant, budget: Duration, what: &str) {
    let took = start.elapsed();
    assert!(took <= budget, "{what} took {took:?}, budget {budget:?}");
}

/// Criterion 1: the worked five-element family has a four-node ZDD with
/// level widths [1,1,0,1,1] and a seven-node BDD with widths [1,2,2,1,1].
#[test]
fn c01_worked_family_has_the_expected_sizes() {
    let start = Instant::now();
    let mut store = Store::new(ElementOrder::new(strs(&["e1", "e2", "e3", "e4", "e5"])).unwrap());
    let family = worked_family();

    let zdd = store.from_family(DdKind::Zdd, &family).unwrap();
    assert_eq!(store.size(&zdd), 4);
    assert_eq!(store.level_widths(&zdd), vec![1, 1, 0, 1, 1]);

    let bdd = store.from_family(DdKind::Bdd, &family).unwrap();
    assert_eq!(store.size(&bdd), 7);
    assert_eq!(store.level_widths(&bdd), vec![1, 2, 2, 1, 1]);

    assert_within(start, Duration::from_secs(1), "worked-family sizes");
}

/// Criterion 2: across the whole fixture pool, all nine size relations hold
/// and every transform output is root-identical to the directly built
/// target diagram.
#[test]
fn c02_size_relations_and_transform_identities_hold_on_the_fixture_pool() {
    let start = Instant::now();
    let pool = fixtures();
    assert!(pool.len() >= 50);
    for m in &pool {
        let mut store = ground_store(m);
        let report = size_relations_report(m, &mut store).unwrap();
        assert_eq!(report.checks.len(), 9);
        assert!(report.all_pass(), "size relations failed for {m:?}: {report:?}");

        let dual = m.dual();
        let bb = build_dd(m, &mut store, BuildTarget::bdd_bases()).unwrap();
        let zb = build_dd(m, &mut store, BuildTarget::zdd_bases()).unwrap();
        let zi = build_dd(m, &mut store, BuildTarget::zdd_independents()).unwrap();
        let bi = build_dd(m, &mut store, BuildTarget::bdd_independents()).unwrap();
        let bb_dual = build_dd(&dual, &mut store, BuildTarget::bdd_bases()).unwrap();
        let bi_dual = build_dd(&dual, &mut store, BuildTarget::bdd_independents()).unwrap();

        assert_eq!(clutter_bdd_to_zdd(&mut store, &bb).unwrap().root(), zb.root());
        assert_eq!(swap_arcs(&mut store, &bb).unwrap().root(), bb_dual.root());
        assert_eq!(swap_arcs(&mut store, &zb).unwrap().root(), bi_dual.root());
        assert_eq!(bases_to_independents(&mut store, &zb).unwrap().root(), zi.root());
        assert_eq!(bases_to_independents(&mut store, &bb).unwrap().root(), bi.root());
    }
    assert_within(start, Duration::from_secs(60), "relations and transforms");
}

/// Every 1-path of `d` must have exactly `n` arcs: equivalently, each
/// reachable node admits only paths of length `n − label` to ⊤ and the root
/// sits at level 0.
fn assert_one_paths_span_all_levels(store: &Store, d: &matroid_dd::dd::Diagram) {
    let n = store.order().len();
    assert_ne!(d.root(), NodeId::BOT, "a matroid always has at least one basis");
    if d.root() == NodeId::TOP {
        assert_eq!(n, 0, "⊤ as root means the empty set is the only basis of an empty ground");
        return;
    }
    assert_eq!(store.label(d.root()), 0, "a shorter 1-path would start below level 0");
    let mut lengths: HashMap<NodeId, (usize, usize)> = HashMap::new();
    lengths.insert(NodeId::TOP, (0, 0));
    // children carry strictly larger labels, so descending-label order is
    // bottom-up
    let mut ids = store.reachable(d.root());
    ids.sort_by_key(|&id| std::cmp::Reverse(store.label(id)));
    for id in ids {
        if id.is_terminal() {
            continue;
        }
        let node = store.node(id).unwrap();
        let mut min_len = usize::MAX;
        let mut max_len = 0usize;
        for child in [node.lo, node.hi] {
            if child == NodeId::BOT {
                continue;
            }
            let (lo, hi) = lengths[&child];
            min_len = min_len.min(lo + 1);
            max_len = max_len.max(hi + 1);
        }
        assert!(min_len <= max_len, "every non-terminal reaches ⊤");
        assert_eq!(
            (min_len, max_len),
            (n - node.label, n - node.label),
            "1-path lengths through a level-{} node must all equal {}",
            node.label,
            n - node.label
        );
        lengths.insert(id, (min_len, max_len));
    }
}

/// Criterion 3: in the basis BDD every 1-path has length exactly n, and in
/// the basis ZDD no node has equal children.
#[test]
fn c03_basis_diagrams_have_full_length_paths_and_distinct_children() {
    let start = Instant::now();
    for m in fixtures() {
        let mut store = ground_store(&m);
        let bb = build_dd(&m, &mut store, BuildTarget::bdd_bases()).unwrap();
        assert_one_paths_span_all_levels(&store, &bb);

        let zb = build_dd(&m, &mut store, BuildTarget::zdd_bases()).unwrap();
        for id in store.reachable(zb.root()) {
            if let Some(node) = store.node(id) {
                assert_ne!(node.lo, node.hi, "basis-ZDD node with equal children at {id:?}");
            }
        }
    }
    assert_within(start, Duration::from_secs(60), "basis diagram audits");
}

/// Criterion 4: for every uniform matroid with n ≤ 9 and every sampled
/// order, the minor count at each boundary is exactly λ(prefix) + 1.
#[test]
fn c04_uniform_minor_counts_equal_connectivity_plus_one() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 1..=9usize {
        for r in 0..=n {
            let m = Matroid::uniform(r, n).unwrap();
            for _ in 0..20 {
                let order = random_order(&mut rng, m.ground());
                for level in 0..=n {
                    let lambda = m.connectivity(prefix_ground_mask(&m, &order, level));
                    assert_eq!(
                        count_minors_on_prefix(&m, &order, level).unwrap(),
                        lambda + 1,
                        "uniform({r},{n}), level {level}, order {:?}",
                        order.names()
                    );
                }
            }
        }
    }
    assert_within(start, Duration::from_secs(60), "uniform minor counts");
}

/// Criterion 5: free matroids up to n = 12 have all four diagram widths at
/// most 1 and a single minor at every boundary.
#[test]
fn c05_free_matroids_have_unit_width_and_one_minor_per_level() {
    let start = Instant::now();
    for n in 0..=12usize {
        let m = Matroid::free(n);
        let mut store = ground_store(&m);
        for target in [
            BuildTarget::zdd_independents(),
            BuildTarget::zdd_bases(),
            BuildTarget::bdd_independents(),
            BuildTarget::bdd_bases(),
        ] {
            let d = build_dd(&m, &mut store, target).unwrap();
            assert!(store.width(&d) <= 1, "free({n}) width above 1");
        }
        for level in 0..=n {
            assert_eq!(count_minors_on_prefix(&m, m.ground(), level).unwrap(), 1);
        }
    }
    assert_within(start, Duration::from_secs(1), "free matroid widths");
}

/// Criterion 6: the blockwise product law for direct sums holds at every
/// boundary for twenty randomized summand pairs under block-contiguous
/// orders.
#[test]
fn c06_direct_sums_factor_blockwise_at_every_boundary() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for round in 0..20 {
        use rand::Rng;
        let na = rng.gen_range(1..=5usize);
        let nb = rng.gen_range(1..=4usize);
        let mut blocks = Vec::new();
        let mut left = na;
        while left > 0 {
            let size = rng.gen_range(1..=left);
            blocks.push((rng.gen_range(0..=size), size));
            left -= size;
        }
        let a = Matroid::partition(&blocks).unwrap();
        let b = Matroid::uniform_with(
            rng.gen_range(0..=nb),
            ElementOrder::new((1..=nb).map(|i| format!("f{i}")).collect()).unwrap(),
        )
        .unwrap();
        let report = direct_sum_minor_check(&a, &b).unwrap();
        assert!(report.all_pass(), "round {round}: {report:?}");
        assert_eq!(report.rows.len(), na + nb + 1);
    }
    assert_within(start, Duration::from_secs(60), "direct sum product law");
}

/// Criterion 7: for fifty randomized partition and nested instances under
/// arbitrary orders, minor counts stay within 2^λ and no diagram width
/// exceeds the minor count.
#[test]
fn c07_partition_and_nested_minor_counts_stay_within_two_to_the_lambda() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut pool: Vec<Matroid> = Vec::new();
    use rand::Rng;
    for _ in 0..25 {
        let mut blocks = Vec::new();
        let mut left = rng.gen_range(2..=9usize);
        while left > 0 {
            let size = rng.gen_range(1..=left.min(4));
            blocks.push((rng.gen_range(0..=size), size));
            left -= size;
        }
        pool.push(Matroid::partition(&blocks).unwrap());
    }
    for _ in 0..25 {
        let n = rng.gen_range(2..=9usize);
        let r = rng.gen_range(1..=n);
        let mut picks: Vec<usize> = (1..=n).collect();
        use rand::seq::SliceRandom;
        picks.shuffle(&mut rng);
        picks.truncate(r);
        pool.push(Matroid::nested_from_gale(n, &picks).unwrap());
    }
    assert_eq!(pool.len(), 50);
    for m in &pool {
        for _ in 0..2 {
            let order = random_order(&mut rng, m.ground());
            let mut store = Store::new(order);
            let report = check_width_bounds(m, &mut store).unwrap();
            assert!(report.all_pass(), "{:?} under {:?}: {report:?}", m, store.order().names());
        }
    }
    assert_within(start, Duration::from_secs(120), "pigeonhole class bounds");
}

/// Criterion 8: the independence-ZDD level width equals the non-loop minor
/// count at every level of every fixture.
#[test]
fn c08_independence_zdd_width_equals_the_nonloop_minor_count() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for m in fixtures() {
        for shuffled in [false, true] {
            let order = if shuffled {
                random_order(&mut rng, m.ground())
            } else {
                m.ground().as_ref().clone()
            };
            let mut store = Store::new(order.clone());
            let zi = build_dd(&m, &mut store, BuildTarget::zdd_independents()).unwrap();
            let widths = store.level_widths(&zi);
            for (level, &width) in widths.iter().enumerate() {
                assert_eq!(
                    width,
                    matroid_dd::analysis::count_nonloop_minors(&m, &order, level).unwrap(),
                    "level {level} of {m:?}"
                );
            }
        }
    }
    assert_within(start, Duration::from_secs(60), "width equality");
}

/// Criterion 9: the laminar construction keeps boundary connectivity at 2
/// while its independence-ZDD width at the critical level grows with k.
#[test]
fn c09_laminar_construction_grows_width_at_constant_connectivity() {
    let start = Instant::now();
    let mut previous_width = 0usize;
    for k in 1..=6usize {
        let (m, order) = laminar_counterexample(k).unwrap();
        let boundary = k + 2;
        assert_eq!(m.connectivity(prefix_ground_mask(&m, &order, boundary)), 2);
        let mut store = Store::new(order);
        let zi = build_dd(&m, &mut store, BuildTarget::zdd_independents()).unwrap();
        let width = store.level_widths(&zi)[boundary];
        assert!(width > k, "k={k}: width {width} below k+1");
        assert!(width > previous_width, "width must grow with k");
        previous_width = width;
        if k >= 3 {
            // past k = 3 the width exceeds 2^λ = 4: no bound in λ alone fits
            assert!(width as u64 > 1u64 << 2);
        }
    }
    assert_within(start, Duration::from_secs(30), "laminar width growth");
}

/// Criterion 10: for uniform, partition, and nested instances the maximum
/// diagram width stays within exact pathwidth + 1 (uniform under sampled
/// orders, the others under their construction orders).
#[test]
fn c10_diagram_widths_stay_within_pathwidth_plus_one() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(45);

    let max_width = |m: &Matroid, order: ElementOrder| -> usize {
        let mut store = Store::new(order);
        [
            BuildTarget::zdd_independents(),
            BuildTarget::zdd_bases(),
            BuildTarget::bdd_independents(),
            BuildTarget::bdd_bases(),
        ]
        .into_iter()
        .map(|t| {
            let d = build_dd(m, &mut store, t).unwrap();
            store.width(&d)
        })
        .max()
        .unwrap()
    };

    for n in 1..=8usize {
        for r in 0..=n {
            let m = Matroid::uniform(r, n).unwrap();
            let pw = pathwidth_exact(&m, MAX_PATHWIDTH_GROUND).unwrap().width;
            assert!(max_width(&m, m.ground().as_ref().clone()) <= pw + 1);
            for _ in 0..3 {
                let order = random_order(&mut rng, m.ground());
                assert!(max_width(&m, order) <= pw + 1, "uniform({r},{n})");
            }
        }
    }
    for m in fixtures() {
        let relevant = matches!(
            m.class(),
            matroid_dd::matroid::ClassTag::Partition | matroid_dd::matroid::ClassTag::Nested
        );
        if !relevant {
            continue;
        }
        let pw = pathwidth_exact(&m, MAX_PATHWIDTH_GROUND).unwrap().width;
        let order = matroid_dd::analysis::good_order(&m).unwrap();
        assert!(max_width(&m, order) <= pw + 1, "{m:?}");
    }
    assert_within(start, Duration::from_secs(300), "pathwidth comparisons");
}

/// Criterion 11: the ZDD rank walk agrees with greedy rank on every subset
/// of every fixture, never visiting more than n + |X| nodes.
#[test]
fn c11_zdd_rank_walk_matches_greedy_rank_within_its_visit_budget() {
    let start = Instant::now();
    let mut pool = fixtures();
    pool.push(Matroid::uniform(5, 10).unwrap());
    for m in &pool {
        let mut store = ground_store(m);
        let zi = build_dd(m, &mut store, BuildTarget::zdd_independents()).unwrap();
        for x in 0u64..1 << m.n() {
            let rank = zdd_rank(&store, &zi, x).unwrap();
            assert_eq!(rank.value, m.rank(x), "rank of {x:#b} in {m:?}");
            assert!(rank.visits <= m.n() + x.count_ones() as usize);
            let indep = zdd_independence(&store, &zi, x).unwrap();
            assert_eq!(indep.value, m.is_independent(x));
            assert!(indep.visits <= m.n());
        }
    }
    assert_within(start, Duration::from_secs(120), "rank oracle agreement");
}

/// Criterion 12: every constructor's independent family passes the
/// independence axioms and its basis family passes the basis axioms; the
/// doubled triangle has exactly 12 bases and the worked binary matroid has
/// exactly its three bases.
#[test]
fn c12_constructor_families_pass_the_axioms_with_the_expected_counts() {
    let start = Instant::now();
    for m in fixtures_up_to(8) {
        let isets = m.independent_family();
        assert!(isets.check_independence_axioms().all_pass(), "independence axioms: {m:?}");
        let bases = m.basis_family();
        assert!(bases.check_basis_axioms().all_pass(), "basis axioms: {m:?}");
    }
    assert_eq!(doubled_triangle().basis_family().len(), 12);
    assert_eq!(matrix_example().basis_family().members(), &[0b0011, 0b1001, 0b1010]);
    assert_within(start, Duration::from_secs(60), "axiom suite");
}

/// Criterion 13: rewriting the basis ZDD of the non-matroid clutter
/// {{e1,e2},{e1,e4},{e3,e4}} yields a family that is not downward closed —
/// {e2} is missing — so the rewrite's matroid precondition is essential.
#[test]
fn c13_bases_to_independents_fails_downward_closure_off_matroids() {
    let start = Instant::now();
    let mut store = Store::new(ElementOrder::new(strs(&["e1", "e2", "e3", "e4"])).unwrap());
    let clutter = non_matroid_clutter();
    let zdd = store.from_family(DdKind::Zdd, &clutter).unwrap();
    let rewritten = bases_to_independents(&mut store, &zdd).unwrap();
    let family = store.enumerate(&rewritten);
    assert_eq!(family.members(), &[0b0000, 0b0001, 0b0011, 0b0100, 0b1000, 0b1001, 0b1100]);
    assert!(!family.contains(0b0010), "{{e2}} must be missing");
    assert!(clutter.downward_closure().contains(0b0010));
    assert_ne!(family.members(), clutter.downward_closure().members());
    assert_within(start, Duration::from_secs(1), "non-matroid rewrite");
}
