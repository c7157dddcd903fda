//! Monomorphisms, epimorphisms, isomorphisms and extremal epimorphisms.
//!
//! A relation is mono exactly when its power-set image map is injective and
//! epi exactly when that map is surjective. Deciding those by enumerating
//! `2^n` subsets is the oracle; the fast criteria below are polynomial:
//!
//! * the image map is injective iff every row has a *private* column, one no
//!   other row touches (otherwise `dom` and `dom \ {x}` collide);
//! * the image map is surjective iff every codomain element `b` is the whole
//!   row of some domain element (then every subset is a union of such rows).
//!
//! Both lemmas are checked against the oracles exhaustively in the tests.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::carrier::{Carrier, Relation};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{bits_subset, BitMatrix};
use crate::predicates::is_bijective_function_matrix;

/// Largest carrier the power-set oracles will enumerate.
pub const ORACLE_CAP: usize = 12;

/// Largest `|W| * |dom|` (or `|cod| * |W|`) hom-set the cancellation oracles
/// will enumerate.
pub const PROBE_CELL_CAP: usize = 20;

/// Largest codomain for the exhaustive extremal-epi search.
pub const EXTREMAL_COD_CAP: usize = 6;

/// Why an image map fails to be injective or surjective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness<L> {
    /// Two distinct subsets of the domain with the same image.
    Collision(BTreeSet<L>, BTreeSet<L>),
    /// A subset of the codomain that is the image of no subset of the domain.
    Unreached(BTreeSet<L>),
}

impl<L: Label> fmt::Display for Witness<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Collision(a, b) => write!(f, "{} vs {}", SetLit(a), SetLit(b)),
            Witness::Unreached(s) => write!(f, "{} unreached", SetLit(s)),
        }
    }
}

pub(crate) struct SetLit<'a, L>(pub &'a BTreeSet<L>);

impl<L: Label> fmt::Display for SetLit<'_, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// Result of a power-set oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict<L> {
    pub holds: bool,
    pub witness: Option<Witness<L>>,
}

/// A mono/epi decision. When `oracle_result` is present it equals
/// `fast_result`; `witness` is present exactly when the verdict is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoEpiVerdict<L> {
    pub fast_result: bool,
    pub oracle_result: Option<bool>,
    pub witness: Option<Witness<L>>,
}

fn subset_of<L: Label>(labels: &[L], mask: u64) -> BTreeSet<L> {
    labels
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &l)| l)
        .collect()
}

fn rows_as_sets<L: Label>(r: &Relation<L>) -> BTreeMap<L, BTreeSet<L>> {
    let mut rows: BTreeMap<L, BTreeSet<L>> = r
        .dom()
        .labels()
        .iter()
        .map(|&a| (a, BTreeSet::new()))
        .collect();
    for (a, b) in r.pairs() {
        rows.entry(a).or_default().insert(b);
    }
    rows
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::OracleTooLarge { size, cap })
    } else {
        Ok(())
    }
}

/// Enumerates every subset of the domain and its image. Subsets are visited
/// in index order (bit `i` selects the `i`-th smallest label), and the
/// witness is the first collision `(A, B)` with `B` minimal, then `A` minimal.
pub fn ftau_injective_oracle<L: Label>(r: &Relation<L>) -> Result<OracleVerdict<L>> {
    check_cap(r.dom().len(), ORACLE_CAP)?;
    let labels = r.dom().labels();
    let rows = rows_as_sets(r);
    let mut seen: BTreeMap<BTreeSet<L>, u64> = BTreeMap::new();
    for mask in 0..1u64 << labels.len() {
        let subset = subset_of(labels, mask);
        let img: BTreeSet<L> = subset
            .iter()
            .flat_map(|a| rows[a].iter().copied())
            .collect();
        if let Some(&earlier) = seen.get(&img) {
            return Ok(OracleVerdict {
                holds: false,
                witness: Some(Witness::Collision(subset_of(labels, earlier), subset)),
            });
        }
        seen.insert(img, mask);
    }
    Ok(OracleVerdict {
        holds: true,
        witness: None,
    })
}

/// Enumerates all images of domain subsets and reports the first codomain
/// subset (in index order) that is never hit.
pub fn ftau_surjective_oracle<L: Label>(r: &Relation<L>) -> Result<OracleVerdict<L>> {
    check_cap(r.dom().len(), ORACLE_CAP)?;
    check_cap(r.cod().len(), ORACLE_CAP)?;
    let dom = r.dom().labels();
    let rows = rows_as_sets(r);
    let reached: BTreeSet<BTreeSet<L>> = (0..1u64 << dom.len())
        .map(|mask| {
            subset_of(dom, mask)
                .iter()
                .flat_map(|a| rows[a].iter().copied())
                .collect()
        })
        .collect();
    let cod = r.cod().labels();
    for mask in 0..1u64 << cod.len() {
        let target = subset_of(cod, mask);
        if !reached.contains(&target) {
            return Ok(OracleVerdict {
                holds: false,
                witness: Some(Witness::Unreached(target)),
            });
        }
    }
    Ok(OracleVerdict {
        holds: true,
        witness: None,
    })
}

/// Index of the first row without a private column, if any.
pub(crate) fn first_row_without_private(m: &BitMatrix) -> Option<usize> {
    let counts: Vec<usize> = (0..m.cols()).map(|j| m.col_count(j)).collect();
    (0..m.rows()).find(|&i| !m.row_indices(i).any(|j| counts[j] == 1))
}

/// Index of the first column that is not the whole row of any domain element.
pub(crate) fn first_column_without_singleton_row(m: &BitMatrix) -> Option<usize> {
    (0..m.cols()).find(|&j| !(0..m.rows()).any(|i| m.get(i, j) && m.row_count(i) == 1))
}

pub(crate) fn is_mono_matrix(m: &BitMatrix) -> bool {
    first_row_without_private(m).is_none()
}

pub(crate) fn is_epi_matrix(m: &BitMatrix) -> bool {
    first_column_without_singleton_row(m).is_none()
}

/// Fast monomorphism test. A negative verdict carries the collision
/// `dom \ {x}` vs `dom` for the smallest `x` whose row has no private column.
pub fn is_mono<L: Label>(r: &Relation<L>) -> MonoEpiVerdict<L> {
    let witness = first_row_without_private(r.matrix()).map(|i| {
        let all = r.dom().label_set();
        let mut rest = all.clone();
        rest.remove(&r.dom().labels()[i]);
        Witness::Collision(rest, all)
    });
    MonoEpiVerdict {
        fast_result: witness.is_none(),
        oracle_result: None,
        witness,
    }
}

/// Fast epimorphism test. The witness `{b}` for the smallest uncovered `b` is
/// also the first unreached subset in index order.
pub fn is_epi<L: Label>(r: &Relation<L>) -> MonoEpiVerdict<L> {
    let witness = first_column_without_singleton_row(r.matrix())
        .map(|j| Witness::Unreached(BTreeSet::from([r.cod().labels()[j]])));
    MonoEpiVerdict {
        fast_result: witness.is_none(),
        oracle_result: None,
        witness,
    }
}

/// Fast verdict plus the power-set oracle. The witness comes from the oracle.
pub fn certify_mono<L: Label>(r: &Relation<L>) -> Result<MonoEpiVerdict<L>> {
    let oracle = ftau_injective_oracle(r)?;
    Ok(MonoEpiVerdict {
        fast_result: is_mono(r).fast_result,
        oracle_result: Some(oracle.holds),
        witness: oracle.witness,
    })
}

pub fn certify_epi<L: Label>(r: &Relation<L>) -> Result<MonoEpiVerdict<L>> {
    let oracle = ftau_surjective_oracle(r)?;
    Ok(MonoEpiVerdict {
        fast_result: is_epi(r).fast_result,
        oracle_result: Some(oracle.holds),
        witness: oracle.witness,
    })
}

/// Isomorphism: a bijective function.
pub fn is_iso<L: Label>(r: &Relation<L>) -> bool {
    is_bijective_function_matrix(r.matrix())
}

/// Outcome of a bounded cancellation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationVerdict<L: Label> {
    pub holds: bool,
    /// Two distinct probes that become equal after composing with the tested
    /// relation.
    pub witness: Option<(Relation<L>, Relation<L>)>,
}

impl<L: Label> CancellationVerdict<L> {
    fn holds() -> Self {
        CancellationVerdict {
            holds: true,
            witness: None,
        }
    }
}

/// Left cancellation against every pair of probes `W -> dom` with
/// `1 <= |W| <= probe_size_max`. Bounded, so a `true` verdict only speaks
/// for probes up to that size.
pub fn cancellation_mono_oracle<L: Label>(
    r: &Relation<L>,
    probe_size_max: usize,
) -> Result<CancellationVerdict<L>> {
    for w in 1..=probe_size_max {
        check_cap(w * r.dom().len(), PROBE_CELL_CAP)?;
        let probe = Carrier::fresh(w, [r.dom(), r.cod()]);
        let mut seen: HashMap<BitMatrix, BitMatrix> = HashMap::new();
        for a in BitMatrix::all(w, r.dom().len()) {
            let composite = a.then(r.matrix());
            if let Some(prev) = seen.get(&composite) {
                let first = Relation::from_matrix(probe.clone(), r.dom().clone(), prev.clone())?;
                let second = Relation::from_matrix(probe, r.dom().clone(), a)?;
                return Ok(CancellationVerdict {
                    holds: false,
                    witness: Some((first, second)),
                });
            }
            seen.insert(composite, a);
        }
    }
    Ok(CancellationVerdict::holds())
}

/// Right cancellation against every pair of probes `cod -> W`.
pub fn cancellation_epi_oracle<L: Label>(
    r: &Relation<L>,
    probe_size_max: usize,
) -> Result<CancellationVerdict<L>> {
    for w in 1..=probe_size_max {
        check_cap(r.cod().len() * w, PROBE_CELL_CAP)?;
        let probe = Carrier::fresh(w, [r.dom(), r.cod()]);
        let mut seen: HashMap<BitMatrix, BitMatrix> = HashMap::new();
        for g in BitMatrix::all(r.cod().len(), w) {
            let composite = r.matrix().then(&g);
            if let Some(prev) = seen.get(&composite) {
                let first = Relation::from_matrix(r.cod().clone(), probe.clone(), prev.clone())?;
                let second = Relation::from_matrix(r.cod().clone(), probe, g)?;
                return Ok(CancellationVerdict {
                    holds: false,
                    witness: Some((first, second)),
                });
            }
            seen.insert(composite, g);
        }
    }
    Ok(CancellationVerdict::holds())
}

/// Greatest `f: t.dom -> m.dom` with `m ∘ f ⊆ t`: `x f u` iff the row of
/// `u` in `m` is contained in the row of `x` in `t`. A factorization
/// `t = m ∘ f` exists iff `m ∘ divide_left(m, t) == t`.
pub fn divide_left<L: Label>(m: &Relation<L>, t: &Relation<L>) -> Result<Relation<L>> {
    if m.cod() != t.cod() {
        return Err(Error::CompositionMismatch);
    }
    let f = divide_left_matrix(m.matrix(), t.matrix());
    Relation::from_matrix(t.dom().clone(), m.dom().clone(), f)
}

pub(crate) fn divide_left_matrix(m: &BitMatrix, t: &BitMatrix) -> BitMatrix {
    BitMatrix::from_fn(t.rows(), m.rows(), |x, u| bits_subset(m.row(u), t.row(x)))
}

/// Knobs for the extremal-epi search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalSearch {
    /// Extra middle sizes beyond `|cod|` to probe (the "paranoid" mode).
    pub slack: usize,
    pub cod_cap: usize,
}

impl Default for ExtremalSearch {
    fn default() -> Self {
        ExtremalSearch {
            slack: 0,
            cod_cap: EXTREMAL_COD_CAP,
        }
    }
}

impl ExtremalSearch {
    pub fn paranoid() -> Self {
        ExtremalSearch {
            slack: 1,
            ..Self::default()
        }
    }
}

/// Extremal epimorphism: epi, and every mono `m` with `r = m ∘ f` is an iso.
pub fn is_extremal_epi<L: Label>(r: &Relation<L>) -> Result<bool> {
    is_extremal_epi_with(r, ExtremalSearch::default())
}

pub fn is_extremal_epi_with<L: Label>(r: &Relation<L>, search: ExtremalSearch) -> Result<bool> {
    if !is_epi_matrix(r.matrix()) {
        return Ok(false);
    }
    if is_iso(r) {
        return Ok(true);
    }
    Ok(non_iso_mono_factor(r, search)?.is_none())
}

/// A mono `m` that is not an iso and through which `r` factors, searched over
/// middle carriers of size up to `|cod| + slack` (up to relabeling).
pub fn non_iso_mono_factor<L: Label>(
    r: &Relation<L>,
    search: ExtremalSearch,
) -> Result<Option<Relation<L>>> {
    check_cap(r.cod().len(), search.cod_cap)?;
    let found = non_iso_mono_factor_matrix(r.matrix(), search.slack);
    found
        .map(|m| {
            let mid = Carrier::fresh(m.rows(), [r.dom(), r.cod()]);
            Relation::from_matrix(mid, r.cod().clone(), m)
        })
        .transpose()
}

pub(crate) fn check_cod_for_extremal(cod: usize) -> Result<()> {
    check_cap(cod, EXTREMAL_COD_CAP)
}

pub(crate) fn is_extremal_epi_matrix(t: &BitMatrix, slack: usize) -> bool {
    is_epi_matrix(t) && non_iso_mono_factor_matrix(t, slack).is_none()
}

fn non_iso_mono_factor_matrix(t: &BitMatrix, slack: usize) -> Option<BitMatrix> {
    let c = t.cols();
    let mut found = None;
    let mut rows = Vec::new();
    for k in 0..=c + slack {
        mono_families(c, k, 1, &mut rows, &mut |family| {
            let m = family_matrix(c, family);
            let f = divide_left_matrix(&m, t);
            if f.then(&m) == *t && !is_bijective_function_matrix(&m) {
                found = Some(m);
                true
            } else {
                false
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

fn family_matrix(cols: usize, family: &[u64]) -> BitMatrix {
    BitMatrix::from_fn(family.len(), cols, |i, j| family[i] >> j & 1 == 1)
}

/// Visits every set of `k` distinct nonempty rows over `cols` columns in
/// which each row keeps a private column, i.e. every mono with a `k`-element
/// domain up to reordering of that domain. Stops early when `visit` returns
/// `true`.
fn mono_families(
    cols: usize,
    k: usize,
    start: u64,
    chosen: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    if chosen.len() == k {
        return visit(chosen);
    }
    let full = 1u64 << cols;
    for row in start..full {
        chosen.push(row);
        if all_rows_private(chosen) && mono_families(cols, k, row + 1, chosen, visit) {
            chosen.pop();
            return true;
        }
        chosen.pop();
    }
    false
}

fn all_rows_private(rows: &[u64]) -> bool {
    rows.iter().enumerate().all(|(i, &r)| {
        let others = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0, |acc, (_, &o)| acc | o);
        r & !others != 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(labels: &[i64]) -> Carrier<i64> {
        Carrier::new(labels.iter().copied(), false).unwrap()
    }

    fn set(labels: &[i64]) -> BTreeSet<i64> {
        labels.iter().copied().collect()
    }

    fn rel(dom: &[i64], cod: &[i64], pairs: &[(i64, i64)]) -> Relation<i64> {
        Relation::new(c(dom), c(cod), pairs.iter().copied()).unwrap()
    }

    fn tau1() -> Relation<i64> {
        rel(&[2, 3], &[2, 3, 5, 7], &[(2, 2), (2, 3), (3, 5), (3, 7)])
    }

    #[test]
    fn injective_oracle_examples() {
        assert!(ftau_injective_oracle(&tau1()).unwrap().holds);
        let e = ftau_injective_oracle(&Relation::empty(c(&[2]), c(&[3]))).unwrap();
        assert_eq!(e.witness, Some(Witness::Collision(set(&[]), set(&[2]))));
        let k = ftau_injective_oracle(&Relation::constant(&c(&[2, 3]), 2).unwrap()).unwrap();
        assert_eq!(k.witness, Some(Witness::Collision(set(&[2]), set(&[3]))));
    }

    #[test]
    fn surjective_oracle_examples() {
        assert!(
            ftau_surjective_oracle(&Relation::identity(&c(&[2, 3, 5])))
                .unwrap()
                .holds
        );
        let t = ftau_surjective_oracle(&tau1()).unwrap();
        assert_eq!(t.witness, Some(Witness::Unreached(set(&[2]))));
        assert!(
            ftau_surjective_oracle(&rel(&[2, 3], &[4, 6], &[(2, 4), (3, 6)]))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn oracle_caps() {
        let big = c(&(2..15).collect::<Vec<_>>());
        assert_eq!(big.len(), 13);
        let r = Relation::identity(&big);
        assert_eq!(
            ftau_injective_oracle(&r),
            Err(Error::OracleTooLarge {
                size: 13,
                cap: ORACLE_CAP
            })
        );
        assert!(ftau_surjective_oracle(&r).is_err());
    }

    #[test]
    fn fast_mono() {
        assert!(is_mono(&tau1()).fast_result);
        let r = rel(&[2, 3, 5], &[4, 6], &[(2, 4), (3, 6), (5, 4), (5, 6)]);
        let v = is_mono(&r);
        assert!(!v.fast_result);
        assert_eq!(
            v.witness,
            Some(Witness::Collision(set(&[3, 5]), set(&[2, 3, 5])))
        );
        let cert = certify_mono(&r).unwrap();
        assert_eq!(cert.oracle_result, Some(false));
        assert_eq!(
            cert.witness,
            Some(Witness::Collision(set(&[2, 3]), set(&[5])))
        );
        for w in [v.witness.unwrap(), cert.witness.unwrap()] {
            let Witness::Collision(a, b) = w else {
                panic!()
            };
            assert_ne!(a, b);
            assert_eq!(
                crate::predicates::image_of_subset(&r, &a),
                crate::predicates::image_of_subset(&r, &b)
            );
        }
        assert!(is_mono(&Relation::identity(&c(&[2, 3]))).fast_result);
    }

    #[test]
    fn fast_epi() {
        assert!(is_epi(&Relation::identity(&c(&[2, 3]))).fast_result);
        let v = is_epi(&tau1());
        assert!(!v.fast_result);
        assert_eq!(v.witness, Some(Witness::Unreached(set(&[2]))));
        assert!(is_epi(&rel(&[2, 3, 5], &[4, 6], &[(2, 4), (3, 6), (5, 4)])).fast_result);
    }

    #[test]
    fn certified_verdicts_agree() {
        for r in [
            tau1(),
            Relation::constant(&c(&[2, 3]), 3).unwrap(),
            Relation::empty(c(&[2]), c(&[])),
        ] {
            let m = certify_mono(&r).unwrap();
            assert_eq!(Some(m.fast_result), m.oracle_result);
            assert_eq!(m.witness.is_none(), m.fast_result);
            let e = certify_epi(&r).unwrap();
            assert_eq!(Some(e.fast_result), e.oracle_result);
            assert_eq!(e.witness.is_none(), e.fast_result);
        }
    }

    #[test]
    fn isos() {
        assert!(is_iso(&Relation::identity(&c(&[2, 3]))));
        let swap = rel(&[2, 3], &[2, 3], &[(2, 3), (3, 2)]);
        assert!(is_iso(&swap));
        assert!(swap.inverse().after(&swap).unwrap() == Relation::identity(&c(&[2, 3])));
        assert!(!is_iso(&tau1()));
    }

    #[test]
    fn cancellation_examples() {
        assert!(
            cancellation_mono_oracle(&Relation::identity(&c(&[2, 3])), 2)
                .unwrap()
                .holds
        );
        let k = Relation::constant(&c(&[2, 3]), 2).unwrap();
        let v = cancellation_mono_oracle(&k, 1).unwrap();
        assert!(!v.holds);
        let (a, b) = v.witness.unwrap();
        assert_ne!(a, b);
        assert_eq!(k.after(&a).unwrap(), k.after(&b).unwrap());
        assert!(cancellation_mono_oracle(&tau1(), 2).unwrap().holds);

        assert!(
            cancellation_epi_oracle(&Relation::identity(&c(&[2, 3])), 2)
                .unwrap()
                .holds
        );
        let v = cancellation_epi_oracle(&tau1(), 2).unwrap();
        assert!(!v.holds);
        let (g, h) = v.witness.unwrap();
        assert_eq!(g.after(&tau1()).unwrap(), h.after(&tau1()).unwrap());
        assert!(
            cancellation_epi_oracle(&rel(&[2, 3], &[4, 6], &[(2, 4), (3, 6)]), 2)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn residuals() {
        let t = tau1();
        let id = Relation::identity(t.cod());
        assert_eq!(divide_left(&id, &t).unwrap(), t);

        // m rows {4},{6} over mid {a,b}; t row {4,6}
        let m = rel(&[20, 21], &[4, 6], &[(20, 4), (21, 6)]);
        let t = rel(&[2], &[4, 6], &[(2, 4), (2, 6)]);
        let f = divide_left(&m, &t).unwrap();
        assert_eq!(f.pairs(), vec![(2, 20), (2, 21)]);
        assert_eq!(m.after(&f).unwrap(), t);

        let m = rel(&[20], &[4, 6], &[(20, 4), (20, 6)]);
        let t = rel(&[2], &[4, 6], &[(2, 4)]);
        let f = divide_left(&m, &t).unwrap();
        assert!(f.pairs().is_empty());
        assert_ne!(m.after(&f).unwrap(), t);

        assert_eq!(
            divide_left(&Relation::identity(&c(&[9])), &t),
            Err(Error::CompositionMismatch)
        );
    }

    #[test]
    fn extremal_epis() {
        assert!(is_extremal_epi(&Relation::identity(&c(&[2, 3]))).unwrap());
        assert!(is_extremal_epi(&rel(&[2, 3], &[4, 6], &[(2, 4), (3, 6)])).unwrap());
        assert!(!is_extremal_epi(&tau1()).unwrap());
        assert!(
            is_extremal_epi_with(&Relation::identity(&c(&[2, 3])), ExtremalSearch::paranoid())
                .unwrap()
        );
        let wide = Relation::identity(&c(&(2..10).collect::<Vec<_>>()));
        assert!(is_extremal_epi(&wide).unwrap());
        let mut pairs: Vec<_> = (2..10).map(|a| (a, a)).collect();
        pairs.push((10, 2));
        let wide = rel(
            &(2..11).collect::<Vec<_>>(),
            &(2..10).collect::<Vec<_>>(),
            &pairs,
        );
        assert!(matches!(
            is_extremal_epi(&wide),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn non_iso_mono_factor_found_for_non_epi() {
        // t row {4,6} factors through the mono with the single row {4,6}
        let t = rel(&[2], &[4, 6], &[(2, 4), (2, 6)]);
        let m = non_iso_mono_factor(&t, ExtremalSearch::default())
            .unwrap()
            .unwrap();
        assert!(is_mono(&m).fast_result && !is_iso(&m));
        let f = divide_left(&m, &t).unwrap();
        assert_eq!(m.after(&f).unwrap(), t);
    }

    #[test]
    fn mono_family_count_matches_filter() {
        // every mono k x c matrix is one of the enumerated families, up to row order
        for cols in 0..=3usize {
            for k in 0..=cols + 1 {
                let mut families = 0usize;
                mono_families(cols, k, 1, &mut Vec::new(), &mut |_| {
                    families += 1;
                    false
                });
                let monos = BitMatrix::all(k, cols).filter(is_mono_matrix).count();
                let perms: usize = (1..=k).product();
                assert_eq!(families * perms, monos, "k={k} cols={cols}");
            }
        }
    }
}
