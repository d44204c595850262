//! Shared fixtures for the integration suites: a deterministic pool of
//! matroids covering every constructor class, the two worked set families
//! used by the exact-value tests, and small helpers for orders and Gale
//! comparisons.
#![allow(dead_code)]

use matroid_dd::{ElementOrder, Matroid, SetFamily, Store};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn strs(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The doubled triangle: three vertices, each pair joined by two parallel
/// edges. Its cycle matroid has rank 2 and twelve bases (all edge pairs
/// except the three parallel pairs).
pub fn doubled_triangle() -> Matroid {
    Matroid::graphic(3, &[(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]).unwrap()
}

/// The rank-2 binary matroid of the matrix with columns
/// e1=(1,0), e2=(0,1), e3=(0,0), e4=(1,1): bases {e1,e2}, {e1,e4}, {e2,e4}.
pub fn matrix_example() -> Matroid {
    Matroid::gf2(&named("e", 4), &[vec![1, 0, 0, 1], vec![0, 1, 0, 1]]).unwrap()
}

/// The worked family {{e1,e2,e5},{e4,e5},{e5}} over e1..e5: its ZDD has
/// four nodes while its BDD has seven.
pub fn worked_family() -> SetFamily {
    SetFamily::new(5, [0b10011, 0b11000, 0b10000]).unwrap()
}

/// The non-matroid clutter {{e1,e2},{e1,e4},{e3,e4}} over e1..e4. It fails
/// the exchange axiom, which is what the basis-to-independents rewrite
/// silently assumes.
pub fn non_matroid_clutter() -> SetFamily {
    SetFamily::new(4, [0b0011, 0b1001, 0b1100]).unwrap()
}

/// A store whose element order is the matroid's own ground order.
pub fn ground_store(m: &Matroid) -> Store {
    Store::with_order(m.ground().clone())
}

/// A uniformly random permutation of `base`'s names.
pub fn random_order(rng: &mut ChaCha8Rng, base: &ElementOrder) -> ElementOrder {
    let mut names = base.names().to_vec();
    names.shuffle(rng);
    ElementOrder::new(names).unwrap()
}

/// Gale comparison of two equal-size position masks: the t-th largest
/// member of `a` is at most the t-th largest member of `b`, for every t.
pub fn gale_dominated(a: u64, b: u64) -> bool {
    debug_assert_eq!(a.count_ones(), b.count_ones());
    let (mut a, mut b) = (a, b);
    while a != 0 {
        let (ta, tb) = (63 - a.leading_zeros(), 63 - b.leading_zeros());
        if ta > tb {
            return false;
        }
        a &= !(1u64 << ta);
        b &= !(1u64 << tb);
    }
    true
}

/// The ground mask of the first `len` elements of `order`, for matroid `m`.
pub fn prefix_ground_mask(m: &Matroid, order: &ElementOrder, len: usize) -> u64 {
    let mut mask = 0u64;
    for i in 0..len {
        mask |= 1u64 << m.ground().index_of(order.name(i)).expect("order name not in ground");
    }
    mask
}

fn random_partition(rng: &mut ChaCha8Rng, max_n: usize) -> Matroid {
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut left = rng.gen_range(2..=max_n);
    while left > 0 {
        let size = rng.gen_range(1..=left.min(4));
        blocks.push((rng.gen_range(0..=size), size));
        left -= size;
    }
    Matroid::partition(&blocks).unwrap()
}

fn random_nested(rng: &mut ChaCha8Rng, max_n: usize) -> Matroid {
    let n = rng.gen_range(2..=max_n);
    let r = rng.gen_range(1..=n);
    let mut picks: Vec<usize> = (1..=n).collect();
    picks.shuffle(rng);
    picks.truncate(r);
    Matroid::nested_from_gale(n, &picks).unwrap()
}

fn random_transversal(rng: &mut ChaCha8Rng, max_n: usize) -> Matroid {
    let n = rng.gen_range(2..=max_n);
    let elements = named("e", n);
    let sets: Vec<Vec<String>> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut pool = elements.clone();
            pool.shuffle(rng);
            pool.truncate(rng.gen_range(1..=n));
            pool
        })
        .collect();
    Matroid::transversal(&elements, &sets).unwrap()
}

/// A random laminar family built by recursive splitting: capacities on the
/// whole ground set, then on nested sub-intervals.
fn random_laminar(rng: &mut ChaCha8Rng, max_n: usize) -> Matroid {
    let n = rng.gen_range(4..=max_n);
    let elements = named("e", n);
    let mut constraints: Vec<(Vec<String>, usize)> = Vec::new();
    fn split(
        rng: &mut ChaCha8Rng,
        elements: &[String],
        lo: usize,
        hi: usize,
        out: &mut Vec<(Vec<String>, usize)>,
    ) {
        if hi - lo < 2 || out.len() >= 6 {
            return;
        }
        out.push((elements[lo..hi].to_vec(), rng.gen_range(1..=hi - lo)));
        let mid = rng.gen_range(lo + 1..hi);
        if rng.gen_bool(0.7) {
            split(rng, elements, lo, mid, out);
        }
        if rng.gen_bool(0.7) {
            split(rng, elements, mid, hi, out);
        }
    }
    split(rng, &elements, 0, n, &mut constraints);
    if constraints.is_empty() {
        constraints.push((elements.clone(), 1));
    }
    Matroid::laminar(&elements, &constraints).unwrap()
}

fn random_graphic(rng: &mut ChaCha8Rng, max_edges: usize) -> Matroid {
    let vertices = rng.gen_range(2..=5);
    let edges: Vec<(usize, usize)> = (0..rng.gen_range(1..=max_edges))
        .map(|_| {
            let u = rng.gen_range(0..vertices);
            let v = rng.gen_range(0..vertices);
            (u, v)
        })
        .collect();
    Matroid::graphic(vertices, &edges).unwrap()
}

fn random_gf2(rng: &mut ChaCha8Rng, max_n: usize) -> Matroid {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..=4);
    let rows: Vec<Vec<u8>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect()).collect();
    Matroid::gf2(&named("e", n), &rows).unwrap()
}

/// A deterministic pool of more than fifty matroids, n ≤ 9, covering all
/// nine constructor classes, with a randomized majority (fixed seed).
pub fn fixtures() -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pool: Vec<Matroid> = Vec::new();

    for n in [0usize, 1, 5, 9] {
        pool.push(Matroid::free(n));
    }
    for (r, n) in [(0, 4), (1, 1), (1, 6), (2, 4), (2, 5), (3, 6), (4, 9), (5, 9), (6, 7), (9, 9)] {
        pool.push(Matroid::uniform(r, n).unwrap());
    }

    pool.push(Matroid::partition(&[(1, 2), (2, 3)]).unwrap());
    pool.push(Matroid::partition(&[(2, 3), (2, 3), (1, 3)]).unwrap());
    pool.push(Matroid::partition(&[(0, 2), (2, 4)]).unwrap());
    pool.push(Matroid::partition(&[(1, 1), (1, 2), (1, 2)]).unwrap());
    for _ in 0..8 {
        pool.push(random_partition(&mut rng, 9));
    }

    pool.push(Matroid::nested_from_gale(4, &[2, 4]).unwrap());
    pool.push(Matroid::nested_from_gale(6, &[1, 4, 6]).unwrap());
    pool.push(Matroid::nested_from_gale(7, &[3, 5, 7]).unwrap());
    pool.push(Matroid::nested_from_gale(9, &[2, 3, 8, 9]).unwrap());
    for _ in 0..6 {
        pool.push(random_nested(&mut rng, 9));
    }
    pool.push(
        Matroid::nested_from_presentation(
            &strs(&["w", "x", "y", "z"]),
            &[strs(&["z"]), strs(&["z", "x", "y"])],
        )
        .unwrap(),
    );

    pool.push(
        Matroid::transversal(
            &named("e", 5),
            &[strs(&["e1", "e2", "e3"]), strs(&["e3", "e4"]), strs(&["e5"])],
        )
        .unwrap(),
    );
    pool.push(Matroid::transversal(&named("e", 4), &[strs(&["e1", "e2", "e3", "e4"])]).unwrap());
    for _ in 0..4 {
        pool.push(random_transversal(&mut rng, 9));
    }

    pool.push(
        Matroid::laminar(
            &named("e", 6),
            &[
                (strs(&["e1", "e2", "e3", "e4", "e5", "e6"]), 3),
                (strs(&["e1", "e2"]), 1),
                (strs(&["e3", "e4", "e5"]), 2),
            ],
        )
        .unwrap(),
    );
    for _ in 0..4 {
        pool.push(random_laminar(&mut rng, 9));
    }

    pool.push(doubled_triangle());
    pool.push(Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap());
    pool.push(Matroid::graphic(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap());
    for _ in 0..3 {
        pool.push(random_graphic(&mut rng, 9));
    }

    pool.push(matrix_example());
    pool.push(Matroid::gf2(&named("e", 3), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap());
    for _ in 0..4 {
        pool.push(random_gf2(&mut rng, 9));
    }

    pool.push(
        Matroid::from_independent_family(
            &named("e", 3),
            &SetFamily::new(3, [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110]).unwrap(),
        )
        .unwrap(),
    );
    pool.push(
        Matroid::from_independent_family(&named("e", 4), &matrix_example().independent_family())
            .unwrap(),
    );
    pool.push(
        Matroid::from_independent_family(
            &named("e", 2),
            &SetFamily::new(2, [0b00, 0b01]).unwrap(),
        )
        .unwrap(),
    );

    assert!(pool.len() >= 50, "fixture pool shrank below the contract");
    assert!(pool.iter().all(|m| m.n() <= 9));
    pool
}

/// The fixture pool restricted to ground sets small enough for exhaustive
/// axiom checking.
pub fn fixtures_up_to(max_n: usize) -> Vec<Matroid> {
    fixtures().into_iter().filter(|m| m.n() <= max_n).collect()
}
