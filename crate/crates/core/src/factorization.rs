//! Factorizations `s = m ∘ e` of sinks, the diagonal fill-in property and
//! essential uniqueness up to isomorphism of the middle object.
//!
//! Middle objects are synthesized carriers. Search runs over matrices: for a
//! candidate `m` the greatest `e` with `m ∘ e ⊆ s` comes from relational
//! division, and every admissible `e` is a row-wise shrinking of it.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::budget::Budget;
use crate::carrier::{Carrier, Relation};
use crate::categorical::divide_left_matrix;
use crate::class::{ClassMemo, ClassSpec};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::BitMatrix;
use crate::sink::Sink;

/// A factorization of a sink through `mid`: component `i` of the factored
/// sink equals `m ∘ e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationPair<L: Label> {
    pub mid: Carrier<L>,
    pub e: Sink<L>,
    pub m: Relation<L>,
}

impl<L: Label> FactorizationPair<L> {
    /// The sink `(m ∘ e_i)_i`.
    pub fn recompose(&self) -> Result<Sink<L>> {
        self.e.then(&self.m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct RawFactorization {
    pub(crate) m: BitMatrix,
    pub(crate) e: Vec<BitMatrix>,
}

impl RawFactorization {
    /// Least representative over all relabelings of the middle object.
    fn canonical(self) -> Self {
        let k = self.m.rows();
        (0..k)
            .permutations(k)
            .map(|p| RawFactorization {
                m: self.m.select_rows(&p),
                e: self.e.iter().map(|e| e.select_cols(&p)).collect(),
            })
            .min()
            .unwrap_or(self)
    }
}

fn mask_row(mask: u64, width: usize) -> Vec<u64> {
    if width == 0 {
        Vec::new()
    } else {
        vec![mask]
    }
}

fn submasks_ascending(mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut s = mask;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
    out.reverse();
    out
}

/// For each row `x` of `target`, the sets `S` of rows of `m` (as bitmasks)
/// contained in the greatest solution whose union is exactly row `x`.
/// `None` when some row has no choice.
fn row_choices(
    m: &BitMatrix,
    target: &BitMatrix,
    budget: &Budget,
) -> Result<Option<Vec<Vec<u64>>>> {
    debug_assert!(m.rows() < 64);
    let greatest = divide_left_matrix(m, target);
    let mut all = Vec::with_capacity(target.rows());
    for x in 0..target.rows() {
        let g = greatest.row(x).first().copied().unwrap_or(0);
        let subs = submasks_ascending(g);
        budget.charge(subs.len() as u64)?;
        let ok: Vec<u64> = subs
            .into_iter()
            .filter(|&s| m.union_of_rows(&[s]) == target.row(x))
            .collect();
        if ok.is_empty() {
            return Ok(None);
        }
        all.push(ok);
    }
    Ok(Some(all))
}

/// Calls `visit` with every matrix assembled from one choice per row; stops
/// when `visit` returns `true`.
fn for_each_assembly(
    choices: &[Vec<u64>],
    cols: usize,
    budget: &Budget,
    visit: &mut impl FnMut(BitMatrix) -> Result<bool>,
) -> Result<bool> {
    let mut idx = vec![0usize; choices.len()];
    loop {
        budget.charge(1)?;
        let mut d = BitMatrix::zeros(choices.len(), cols);
        for (row, (&i, opts)) in idx.iter().zip(choices).enumerate() {
            d.set_row(row, &mask_row(opts[i], cols));
        }
        if visit(d)? {
            return Ok(true);
        }
        // odometer, last row fastest
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn all_matrices(
    rows: usize,
    cols: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = BitMatrix>> {
    let cells = rows * cols;
    if cells >= 40 {
        return Err(Error::SearchBudgetExceeded(budget.limit()));
    }
    budget.charge(1u64 << cells)?;
    Ok(BitMatrix::all(rows, cols))
}

/// Every factorization of the sink `targets` (all `n_i x cod`) through a
/// middle object of size at most `mid_max`, canonicalized and sorted.
pub(crate) fn raw_factorizations(
    targets: &[&BitMatrix],
    cod: usize,
    mid_max: usize,
    e_class: &mut ClassMemo,
    m_class: &mut ClassMemo,
    budget: &Budget,
    first_only: bool,
) -> Result<Vec<RawFactorization>> {
    let mut found = BTreeSet::new();
    for k in 0..=mid_max.min(63) {
        for m in all_matrices(k, cod, budget)? {
            if !m_class.contains(&m) {
                continue;
            }
            let mut per_component = Vec::with_capacity(targets.len());
            for t in targets {
                match row_choices(&m, t, budget)? {
                    Some(c) => per_component.push(c),
                    None => break,
                }
            }
            if per_component.len() < targets.len() {
                continue;
            }
            // flatten rows of all components into one odometer
            let flat: Vec<Vec<u64>> = per_component.iter().flatten().cloned().collect();
            let splits: Vec<usize> = targets.iter().map(|t| t.rows()).collect();
            let stop = for_each_assembly(&flat, k, budget, &mut |stacked| {
                let mut parts = Vec::with_capacity(splits.len());
                let mut start = 0;
                for &n in &splits {
                    let rows: Vec<usize> = (start..start + n).collect();
                    parts.push(stacked.select_rows(&rows));
                    start += n;
                }
                let refs: Vec<&BitMatrix> = parts.iter().collect();
                if e_class.contains_sink(&refs) {
                    found.insert(
                        RawFactorization {
                            m: m.clone(),
                            e: parts,
                        }
                        .canonical(),
                    );
                    return Ok(first_only);
                }
                Ok(false)
            })?;
            if stop {
                return Ok(found.into_iter().collect());
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn materialize<L: Label>(s: &Sink<L>, raw: RawFactorization) -> FactorizationPair<L> {
    let mut avoid: Vec<&Carrier<L>> = s.components().iter().map(|r| r.dom()).collect();
    avoid.push(s.codomain());
    let mid = Carrier::fresh(raw.m.rows(), avoid);
    let e = s
        .components()
        .iter()
        .zip(raw.e)
        .map(|(t, e)| Relation::from_matrix(t.dom().clone(), mid.clone(), e))
        .collect::<Result<Vec<_>>>()
        .and_then(Sink::new)
        .expect("factor shapes follow the sink");
    let m = Relation::from_matrix(mid.clone(), s.codomain().clone(), raw.m).expect("mid x cod");
    FactorizationPair { mid, e, m }
}

/// All factorizations `t = m ∘ e` with `e` (as a singleton sink) in
/// `e_class`, `m` in `m_class` and `|mid| <= mid_max`, one per class of
/// middle relabelings.
pub fn enumerate_factorizations<L: Label>(
    t: &Relation<L>,
    mid_max: usize,
    e_class: &ClassSpec,
    m_class: &ClassSpec,
    budget: &Budget,
) -> Result<Vec<FactorizationPair<L>>> {
    enumerate_sink_factorizations(
        &Sink::singleton(t.clone()),
        mid_max,
        e_class,
        m_class,
        budget,
    )
}

pub fn enumerate_sink_factorizations<L: Label>(
    s: &Sink<L>,
    mid_max: usize,
    e_class: &ClassSpec,
    m_class: &ClassSpec,
    budget: &Budget,
) -> Result<Vec<FactorizationPair<L>>> {
    let mut em = ClassMemo::new(e_class);
    let mut mm = ClassMemo::new(m_class);
    let raws = raw_factorizations(
        &s.matrices(),
        s.codomain().len(),
        mid_max,
        &mut em,
        &mut mm,
        budget,
        false,
    )?;
    Ok(raws.into_iter().map(|r| materialize(s, r)).collect())
}

/// Outcome of a fill-in search for a commuting square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalResult<L: Label> {
    Unique(Relation<L>),
    NoDiagonal,
    NonUnique(Relation<L>, Relation<L>),
}

/// Every `d` with `m ∘ d = s` (as matrices: `d` then `m`).
pub(crate) fn fillers_of(m: &BitMatrix, s: &BitMatrix, budget: &Budget) -> Result<Vec<BitMatrix>> {
    let mut out = Vec::new();
    if let Some(choices) = row_choices(m, s, budget)? {
        for_each_assembly(&choices, m.rows(), budget, &mut |d| {
            out.push(d);
            Ok(false)
        })?;
    }
    Ok(out)
}

/// For the square `m ∘ r_i = s ∘ e_i`, searches every diagonal `d` with
/// `d ∘ e_i = r_i` for all `i` and `m ∘ d = s`.
pub fn check_diagonalization<L: Label>(
    e: &Sink<L>,
    s: &Relation<L>,
    r: &Sink<L>,
    m: &Relation<L>,
    budget: &Budget,
) -> Result<DiagonalResult<L>> {
    let shape = |what: &str| Err(Error::ShapeMismatch(what.to_string()));
    if e.codomain() != s.dom() {
        return shape("codomain of e differs from domain of s");
    }
    if r.codomain() != m.dom() {
        return shape("codomain of r differs from domain of m");
    }
    if s.cod() != m.cod() {
        return shape("s and m have different codomains");
    }
    if e.arity() != r.arity() {
        return shape("e and r have different arities");
    }
    if m.dom().len() >= 64 {
        return shape("domain of m too large for fill-in search");
    }
    for (i, (ei, ri)) in e.components().iter().zip(r.components()).enumerate() {
        if ei.dom() != ri.dom() {
            return shape("e and r components have different domains");
        }
        if s.after(ei)? != m.after(ri)? {
            return Err(Error::CommutativityViolated(i));
        }
    }
    let mut found = Vec::new();
    for d in fillers_of(m.matrix(), s.matrix(), budget)? {
        let fits = e
            .components()
            .iter()
            .zip(r.components())
            .all(|(ei, ri)| ei.matrix().then(&d) == *ri.matrix());
        if fits {
            found.push(Relation::from_matrix(s.dom().clone(), m.dom().clone(), d)?);
            if found.len() == 2 {
                break;
            }
        }
    }
    let mut it = found.into_iter();
    Ok(match (it.next(), it.next()) {
        (None, _) => DiagonalResult::NoDiagonal,
        (Some(d), None) => DiagonalResult::Unique(d),
        (Some(a), Some(b)) => DiagonalResult::NonUnique(a, b),
    })
}

/// An isomorphism `h: f1.mid -> f2.mid` with `h ∘ e1_i = e2_i` for every `i`
/// and `m2 ∘ h = m1`, if one exists. Isomorphisms are bijective functions, so
/// the search runs over bijections in lexicographic order.
pub fn essential_uniqueness<L: Label>(
    f1: &FactorizationPair<L>,
    f2: &FactorizationPair<L>,
) -> Result<Option<Relation<L>>> {
    if f1.e.arity() != f2.e.arity() || f1.recompose()? != f2.recompose()? {
        return Err(Error::DifferentSink);
    }
    let k = f1.mid.len();
    if k != f2.mid.len() {
        return Ok(None);
    }
    Ok(matching_bijection(
        f1.m.matrix(),
        &f1.e.matrices(),
        f2.m.matrix(),
        &f2.e.matrices(),
    )
    .map(|h| Relation::from_matrix(f1.mid.clone(), f2.mid.clone(), h).expect("k x k")))
}

pub(crate) fn matching_bijection(
    m1: &BitMatrix,
    e1: &[&BitMatrix],
    m2: &BitMatrix,
    e2: &[&BitMatrix],
) -> Option<BitMatrix> {
    let k = m1.rows();
    if k != m2.rows() {
        return None;
    }
    (0..k).permutations(k).find_map(|p| {
        let h = BitMatrix::from_fn(k, k, |u, v| p[u] == v);
        let commutes = h.then(m2) == *m1 && e1.iter().zip(e2).all(|(a, b)| a.then(&h) == **b);
        commutes.then_some(h)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categorical::{is_iso, is_mono};
    use crate::class::ClassKind;

    fn c(labels: &[i64]) -> Carrier<i64> {
        Carrier::new(labels.iter().copied(), false).unwrap()
    }

    fn rel(dom: &[i64], cod: &[i64], pairs: &[(i64, i64)]) -> Relation<i64> {
        Relation::new(c(dom), c(cod), pairs.iter().copied()).unwrap()
    }

    fn tau1() -> Relation<i64> {
        rel(&[2, 3], &[2, 3, 5, 7], &[(2, 2), (2, 3), (3, 5), (3, 7)])
    }

    fn class(s: &str) -> ClassSpec {
        s.parse().unwrap()
    }

    #[test]
    fn identity_factors_through_itself() {
        let id = Relation::identity(&c(&[2]));
        let fs = enumerate_factorizations(
            &id,
            1,
            &ClassSpec::all(),
            &ClassSpec::all(),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].mid.len(), 1);
        assert!(is_iso(&fs[0].m) && is_iso(&fs[0].e.components()[0]));
    }

    #[test]
    fn singleton_rows_epi_factors_through_iso() {
        let t = rel(&[2, 3], &[4, 6], &[(2, 4), (3, 6)]);
        let fs = enumerate_factorizations(&t, 2, &class("epi"), &class("mono"), &Budget::default())
            .unwrap();
        assert!(!fs.is_empty());
        assert!(fs.iter().any(|f| is_iso(&f.m)));
    }

    #[test]
    fn tau1_through_monos() {
        let t = tau1();
        let fs =
            enumerate_factorizations(&t, 2, &ClassSpec::all(), &class("mono"), &Budget::default())
                .unwrap();
        assert!(!fs.is_empty());
        for f in &fs {
            assert!(is_mono(&f.m).fast_result);
            assert_eq!(f.recompose().unwrap(), Sink::singleton(t.clone()));
        }
    }

    #[test]
    fn results_are_distinct_up_to_relabeling() {
        let t = tau1();
        // through two elements both rows of t must be rows of m
        let two = enumerate_factorizations(
            &t,
            2,
            &ClassSpec::all(),
            &ClassSpec::all(),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(two.len(), 1);
        let fs = enumerate_factorizations(
            &t,
            3,
            &ClassSpec::all(),
            &ClassSpec::all(),
            &Budget::default(),
        )
        .unwrap();
        assert!(fs.len() > 1);
        for (i, a) in fs.iter().enumerate() {
            for b in &fs[i + 1..] {
                assert_eq!(essential_uniqueness(a, b).unwrap(), None);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let t = tau1();
        let r = enumerate_factorizations(
            &t,
            3,
            &ClassSpec::all(),
            &ClassSpec::all(),
            &Budget::new(100),
        );
        assert_eq!(r, Err(Error::SearchBudgetExceeded(100)));
    }

    #[test]
    fn diagonal_identity_square() {
        let id = Relation::identity(&c(&[2]));
        let s = Sink::singleton(id.clone());
        let d = check_diagonalization(&s, &id, &s, &id, &Budget::default()).unwrap();
        assert_eq!(d, DiagonalResult::Unique(id));
    }

    #[test]
    fn diagonal_recovers_chosen_filler() {
        // e: epi with singleton rows onto A = {4,6}; d: A -> C; m: C -> B mono
        let e = rel(&[2, 3], &[4, 6], &[(2, 4), (3, 6)]);
        let d = rel(&[4, 6], &[10, 11], &[(4, 10), (6, 10), (6, 11)]);
        let m = rel(&[10, 11], &[20, 21], &[(10, 20), (11, 21)]);
        assert!(is_mono(&m).fast_result);
        let r = d.after(&e).unwrap();
        let s = m.after(&d).unwrap();
        let out = check_diagonalization(
            &Sink::singleton(e),
            &s,
            &Sink::singleton(r),
            &m,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(out, DiagonalResult::Unique(d));
    }

    #[test]
    fn diagonal_not_unique_for_constant_m() {
        let e = rel(&[2], &[3, 5], &[(2, 3)]);
        let d = rel(&[3, 5], &[2, 3], &[(3, 2), (5, 2)]);
        let m = rel(&[2, 3], &[7], &[(2, 7), (3, 7)]);
        let r = d.after(&e).unwrap();
        let s = m.after(&d).unwrap();
        let out = check_diagonalization(
            &Sink::singleton(e.clone()),
            &s,
            &Sink::singleton(r.clone()),
            &m,
            &Budget::default(),
        )
        .unwrap();
        let DiagonalResult::NonUnique(a, b) = out else {
            panic!("expected two fillers, got {out:?}")
        };
        assert_ne!(a, b);
        for x in [a, b] {
            assert_eq!(x.after(&e).unwrap(), r);
            assert_eq!(m.after(&x).unwrap(), s);
        }
    }

    #[test]
    fn diagonal_errors() {
        let id2 = Relation::identity(&c(&[2]));
        let id3 = Relation::identity(&c(&[3]));
        let s2 = Sink::singleton(id2.clone());
        assert!(matches!(
            check_diagonalization(&s2, &id3, &s2, &id2, &Budget::default()),
            Err(Error::ShapeMismatch(_))
        ));
        let empty = Relation::empty(c(&[2]), c(&[2]));
        assert_eq!(
            check_diagonalization(&s2, &id2, &Sink::singleton(empty), &id2, &Budget::default()),
            Err(Error::CommutativityViolated(0))
        );
    }

    #[test]
    fn uniqueness_under_relabeling() {
        let t = rel(&[2, 3], &[4, 6], &[(2, 4), (3, 6), (3, 4)]);
        let fs =
            enumerate_factorizations(&t, 2, &ClassSpec::all(), &class("mono"), &Budget::default())
                .unwrap();
        let f1 = fs.iter().find(|f| f.mid.len() == 2).unwrap().clone();
        assert_eq!(
            essential_uniqueness(&f1, &f1).unwrap(),
            Some(Relation::identity(&f1.mid))
        );

        // swap the two middle elements
        let mid2 = c(&[30, 31]);
        let p = Relation::new(
            f1.mid.clone(),
            mid2.clone(),
            [(f1.mid.labels()[0], 31), (f1.mid.labels()[1], 30)],
        )
        .unwrap();
        let f2 = FactorizationPair {
            mid: mid2.clone(),
            e: f1.e.then(&p).unwrap(),
            m: f1.m.after(&p.inverse()).unwrap(),
        };
        let h = essential_uniqueness(&f1, &f2).unwrap().unwrap();
        assert_eq!(h, p);
        assert!(is_iso(&h));
        let back = essential_uniqueness(&f2, &f1).unwrap().unwrap();
        assert_eq!(back, h.inverse());
    }

    #[test]
    fn uniqueness_fails_across_sizes() {
        let t = rel(&[2], &[4], &[(2, 4)]);
        let one = FactorizationPair {
            mid: c(&[9]),
            e: Sink::singleton(rel(&[2], &[9], &[(2, 9)])),
            m: rel(&[9], &[4], &[(9, 4)]),
        };
        let two = FactorizationPair {
            mid: c(&[8, 9]),
            e: Sink::singleton(rel(&[2], &[8, 9], &[(2, 8), (2, 9)])),
            m: rel(&[8, 9], &[4], &[(8, 4), (9, 4)]),
        };
        assert_eq!(one.recompose().unwrap(), Sink::singleton(t.clone()));
        assert_eq!(two.recompose().unwrap(), Sink::singleton(t));
        assert_eq!(essential_uniqueness(&one, &two).unwrap(), None);

        let other = FactorizationPair {
            mid: c(&[9]),
            e: Sink::singleton(rel(&[2], &[9], &[])),
            m: rel(&[9], &[4], &[(9, 4)]),
        };
        assert_eq!(
            essential_uniqueness(&one, &other),
            Err(Error::DifferentSink)
        );
    }

    #[test]
    fn sink_factorization() {
        let y = c(&[4, 6]);
        let a = Relation::new(c(&[2]), y.clone(), [(2, 4)]).unwrap();
        let b = Relation::new(c(&[3]), y.clone(), [(3, 6)]).unwrap();
        let s = Sink::new(vec![a, b]).unwrap();
        let fs = enumerate_sink_factorizations(
            &s,
            2,
            &ClassSpec::of(ClassKind::Epi),
            &ClassSpec::of(ClassKind::Mono),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(fs.len(), 1);
        assert!(is_iso(&fs[0].m));
        assert_eq!(fs[0].recompose().unwrap(), s);
    }
}
