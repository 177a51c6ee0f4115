mod common;

use std::collections::{BTreeSet, HashMap};

use common::{hexagon, p1, p1xp1, p2};
use immaculate_core::cohomology::is_immaculate;
use immaculate_core::exceptional::{
    find_exceptional_sequences, is_exceptional, orbit_classes, projected_cube, ExceptionalSequence,
    SequenceQuery,
};
use immaculate_core::linalg::vector::{ints, sub};
use immaculate_core::Error;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn seq(rows: &[&[i64]]) -> ExceptionalSequence {
    rows.iter().map(|r| ints(r)).collect()
}

/// One sequence per orbit, `D^1, ..., D^5` after `D^0 = 0`, listed with the
/// opposite sign: `L_i = -D^i`.
const HEXAGON_TABLE: [[[i64; 4]; 5]; 19] = [
    [
        [-2, -1, -1, -1],
        [-1, -2, -1, 0],
        [-2, -2, -1, -1],
        [-2, -2, -1, 0],
        [-1, -1, -2, -1],
    ],
    [
        [-1, -1, -1, -1],
        [-2, -2, -1, -1],
        [-1, -1, -2, -1],
        [-2, -1, -2, -2],
        [-1, -2, -2, -1],
    ],
    [
        [-1, -1, -1, -1],
        [-2, -1, -1, -1],
        [-2, -2, -1, -1],
        [-1, -1, -2, -1],
        [-2, -1, -2, -2],
    ],
    [
        [-1, -1, -1, -1],
        [-2, -1, -1, -1],
        [-1, -2, -1, 0],
        [-2, -2, -1, -1],
        [-1, -1, -2, -1],
    ],
    [
        [-1, -1, -1, -1],
        [-1, -1, -1, 0],
        [-2, -1, -1, -1],
        [-1, -2, -1, 0],
        [-1, -1, -2, -1],
    ],
    [
        [-1, -1, 0, 0],
        [-2, -1, -1, -1],
        [-1, -2, -1, 0],
        [-2, -2, -1, -1],
        [-2, -2, -1, 0],
    ],
    [
        [-1, -1, 0, 0],
        [-1, -1, -1, -1],
        [-2, -1, -1, -1],
        [-1, -2, -1, 0],
        [-2, -2, -1, -1],
    ],
    [
        [-1, -1, 0, 0],
        [-1, -1, -1, -1],
        [-1, -1, -1, 0],
        [-2, -1, -1, -1],
        [-1, -2, -1, 0],
    ],
    [
        [-1, -1, 0, 0],
        [-1, 0, -1, -1],
        [-1, -1, -1, -1],
        [-1, -1, -1, 0],
        [-2, -1, -1, -1],
    ],
    [
        [-1, -1, 0, 0],
        [-1, 0, -1, -1],
        [0, -1, -1, 0],
        [-1, -1, -1, -1],
        [-1, -1, -1, 0],
    ],
    [
        [-1, -1, 0, 0],
        [0, 0, -1, -1],
        [-1, 0, -1, -1],
        [0, -1, -1, 0],
        [-1, -1, -1, -1],
    ],
    [
        [-1, -1, 0, 0],
        [0, 0, -1, -1],
        [0, 0, -1, 0],
        [-1, 0, -1, -1],
        [0, -1, -1, 0],
    ],
    [
        [-1, 0, 0, -1],
        [-1, -1, -1, -1],
        [-2, -1, -1, -1],
        [-2, -2, -1, -1],
        [-2, -1, -2, -2],
    ],
    [
        [-1, 0, 0, -1],
        [-1, -1, 0, 0],
        [-1, -1, -1, -1],
        [-2, -1, -1, -1],
        [-2, -2, -1, -1],
    ],
    [
        [-1, 0, 0, -1],
        [-1, -1, 0, 0],
        [-1, 0, -1, -1],
        [-1, -1, -1, -1],
        [-2, -1, -1, -1],
    ],
    [
        [-1, 0, 0, -1],
        [-1, -1, 0, 0],
        [0, 0, -1, -1],
        [-1, 0, -1, -1],
        [-1, -1, -1, -1],
    ],
    [
        [-1, 0, 0, -1],
        [-1, 0, 0, 0],
        [-1, -1, 0, 0],
        [-1, 0, -1, -1],
        [-2, -1, -1, -1],
    ],
    [
        [-1, 0, 0, -1],
        [0, -1, 0, 0],
        [-1, -1, 0, 0],
        [-1, -1, -1, -1],
        [-2, -2, -1, -1],
    ],
    [
        [-1, 0, 0, -1],
        [0, -1, 0, 0],
        [-1, -1, 0, 0],
        [0, 0, -1, -1],
        [-1, -1, -1, -1],
    ],
];

fn table_row(row: &[[i64; 4]; 5], sign: i64) -> ExceptionalSequence {
    let mut s = vec![ints(&[0, 0, 0, 0])];
    s.extend(row.iter().map(|d| ints(&d.map(|x| sign * x))));
    s
}

#[test]
fn hexagon_sequences_and_orbits() {
    let x = hexagon();
    let seqs = find_exceptional_sequences(&SequenceQuery::new(&x, 6)).unwrap();
    assert_eq!(seqs.len(), 228);
    assert!(seqs.windows(2).all(|w| w[0] < w[1]));

    let actions: Vec<_> = x
        .fan_automorphisms()
        .unwrap()
        .into_iter()
        .map(|g| g.class_action)
        .collect();
    assert_eq!(actions.len(), 12);
    let orbits = orbit_classes(&seqs, &actions);
    assert_eq!(orbits.len(), 19);
    assert!(orbits.iter().all(|o| o.members.len() == 12));
    assert_eq!(
        orbits.iter().map(|o| o.members.len()).sum::<usize>(),
        seqs.len()
    );
    let all: BTreeSet<_> = seqs.iter().collect();
    for o in &orbits {
        assert!(o.members.iter().all(|m| all.contains(m)));
        assert_eq!(&o.representative, o.members.iter().min().unwrap());
    }

    let found: BTreeSet<_> = seqs.iter().cloned().collect();
    for row in &HEXAGON_TABLE {
        assert!(found.contains(&table_row(row, -1)), "{row:?}");
    }
}

#[test]
fn sequences_are_exceptional() {
    let x = hexagon();
    let seqs = find_exceptional_sequences(&SequenceQuery::new(&x, 6)).unwrap();
    for s in seqs.iter().step_by(7) {
        assert!(is_exceptional(&x, s).unwrap(), "{s:?}");
    }
    for row in &HEXAGON_TABLE {
        assert!(is_exceptional(&x, &table_row(row, -1)).unwrap());
    }
    let y = p1xp1();
    let mut bad = seq(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    bad.swap(1, 3);
    assert!(!is_exceptional(&y, &bad).unwrap());
}

#[test]
fn small_examples() {
    let x = p1();
    assert_eq!(
        find_exceptional_sequences(&SequenceQuery::new(&x, 2)).unwrap(),
        vec![seq(&[&[0], &[1]])]
    );

    let y = p1xp1();
    let seqs = find_exceptional_sequences(&SequenceQuery::new(&y, 4)).unwrap();
    assert!(seqs.contains(&seq(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])));
    assert!(seqs.iter().all(|s| is_exceptional(&y, s).unwrap()));

    let square = vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])];
    let q = SequenceQuery {
        region: Some(square),
        ..SequenceQuery::new(&y, 4)
    };
    let seqs = find_exceptional_sequences(&q).unwrap();
    assert!(seqs.contains(&seq(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])));

    let z = p2();
    let seqs = find_exceptional_sequences(&SequenceQuery::new(&z, 3)).unwrap();
    assert_eq!(seqs, vec![seq(&[&[0], &[1], &[2]])]);
    assert_eq!(
        projected_cube(&z).unwrap(),
        vec![ints(&[0]), ints(&[1]), ints(&[2]), ints(&[3])]
    );
}

#[test]
fn empty_region_is_an_error() {
    let x = p1();
    let q = SequenceQuery {
        region: Some(vec![]),
        ..SequenceQuery::new(&x, 2)
    };
    assert!(matches!(
        find_exceptional_sequences(&q),
        Err(Error::RegionEmpty)
    ));
}

/// Depth-first search over a shuffled candidate list, with immaculacy
/// looked up lazily.
fn shuffled_search(
    x: &immaculate_core::fan::Fan,
    candidates: &[Vec<BigInt>],
    length: usize,
    cache: &mut HashMap<Vec<BigInt>, bool>,
    path: &mut ExceptionalSequence,
    out: &mut BTreeSet<ExceptionalSequence>,
) {
    if path.len() == length {
        out.insert(path.clone());
        return;
    }
    for c in candidates {
        let ok = path.iter().all(|p| {
            let d = sub(p, c);
            *cache
                .entry(d.clone())
                .or_insert_with(|| is_immaculate(x, &x.free_class(&d).unwrap()).unwrap())
        });
        if ok {
            path.push(c.clone());
            shuffled_search(x, candidates, length, cache, path, out);
            path.pop();
        }
    }
}

#[test]
fn search_order_does_not_matter() {
    let x = hexagon();
    let expected = find_exceptional_sequences(&SequenceQuery::new(&x, 6)).unwrap();
    let mut candidates = projected_cube(&x).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    candidates.shuffle(&mut rng);
    let mut out = BTreeSet::new();
    let mut cache = HashMap::new();
    shuffled_search(
        &x,
        &candidates,
        6,
        &mut cache,
        &mut vec![ints(&[0, 0, 0, 0])],
        &mut out,
    );
    assert_eq!(out.into_iter().collect::<Vec<_>>(), expected);
}

#[test]
fn unnormalized_search_contains_translates() {
    let x = p1xp1();
    let region = projected_cube(&x).unwrap();
    let q = SequenceQuery {
        normalize: false,
        ..SequenceQuery::new(&x, 4)
    };
    let seqs = find_exceptional_sequences(&q).unwrap();
    let normalized = find_exceptional_sequences(&SequenceQuery::new(&x, 4)).unwrap();
    for s in &normalized {
        assert!(seqs.contains(s));
    }
    assert!(seqs.iter().all(|s| s.iter().all(|l| region.contains(l))));
}
