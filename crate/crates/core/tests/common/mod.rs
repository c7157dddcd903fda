#![allow(dead_code)]

use std::collections::BTreeSet;

use relcat_core::{BitMatrix, Carrier, IntCarrier, IntRelation, Relation};

pub const LABELS: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// A carrier of `n` labels starting at `LABELS[offset]`.
pub fn carrier(n: usize, offset: usize) -> IntCarrier {
    Carrier::new(LABELS[offset..offset + n].iter().copied(), true).unwrap()
}

/// Every relation `carrier(a, 0) -> carrier(b, 4)`.
pub fn all_relations(a: usize, b: usize) -> Vec<IntRelation> {
    let (x, y) = (carrier(a, 0), carrier(b, 4));
    BitMatrix::all(a, b)
        .map(|m| Relation::from_matrix(x.clone(), y.clone(), m).unwrap())
        .collect()
}

/// Every relation with both sides of size at most `n`.
pub fn universe(n: usize) -> impl Iterator<Item = IntRelation> {
    (0..=n).flat_map(move |a| (0..=n).flat_map(move |b| all_relations(a, b)))
}

pub type Pairs = BTreeSet<(i64, i64)>;

pub fn pairs(r: &IntRelation) -> Pairs {
    r.pairs().into_iter().collect()
}

/// `g ∘ f` on pair sets.
pub fn naive_compose(g: &Pairs, f: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(a, b) in f {
        for &(c, d) in g {
            if b == c {
                out.insert((a, d));
            }
        }
    }
    out
}

pub fn naive_inverse(r: &Pairs) -> Pairs {
    r.iter().map(|&(a, b)| (b, a)).collect()
}

pub fn diagonal(c: &IntCarrier) -> Pairs {
    c.labels().iter().map(|&l| (l, l)).collect()
}

pub fn image_of(r: &Pairs, subset: &BTreeSet<i64>) -> BTreeSet<i64> {
    r.iter()
        .filter(|(a, _)| subset.contains(a))
        .map(|&(_, b)| b)
        .collect()
}

pub fn subsets(c: &IntCarrier) -> Vec<BTreeSet<i64>> {
    let n = c.len();
    (0u32..1 << n)
        .map(|mask| {
            c.labels()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect()
        })
        .collect()
}

/// Definitional predicates, straight from the pair set.
pub struct Naive {
    pub correspondence: bool,
    pub partial_function: bool,
    pub injective: bool,
    pub surjective: bool,
}

pub fn naive(r: &IntRelation) -> Naive {
    let p = pairs(r);
    let out_deg = |a: i64| p.iter().filter(|(x, _)| *x == a).count();
    let in_deg = |b: i64| p.iter().filter(|(_, y)| *y == b).count();
    Naive {
        correspondence: r.dom().labels().iter().all(|&a| out_deg(a) >= 1),
        partial_function: r.dom().labels().iter().all(|&a| out_deg(a) <= 1),
        injective: r.cod().labels().iter().all(|&b| in_deg(b) <= 1),
        surjective: r.cod().labels().iter().all(|&b| in_deg(b) >= 1),
    }
}

/// Mono via the power-set map: distinct subsets have distinct images.
pub fn power_injective(r: &IntRelation) -> bool {
    let p = pairs(r);
    let images: Vec<_> = subsets(r.dom()).iter().map(|s| image_of(&p, s)).collect();
    let distinct: BTreeSet<_> = images.iter().collect();
    distinct.len() == images.len()
}

/// Epi via the power-set map: every subset of the codomain is an image.
pub fn power_surjective(r: &IntRelation) -> bool {
    let p = pairs(r);
    let images: BTreeSet<_> = subsets(r.dom()).iter().map(|s| image_of(&p, s)).collect();
    images.len() == 1 << r.cod().len()
}
