//! Image, coimage, the power-set image map and the structural predicates of a
//! single relation.

use std::collections::{BTreeMap, BTreeSet};

use crate::carrier::Relation;
use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{test_bit, BitMatrix};

/// Every structural verdict about one relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateReport<L> {
    pub image: BTreeSet<L>,
    pub coimage: BTreeSet<L>,
    pub is_correspondence: bool,
    pub is_partial_function: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    pub is_function: bool,
    pub is_bijective: bool,
    pub is_section: bool,
    pub is_retraction: bool,
    /// Number of codomain elements related to each domain element.
    pub row_cardinalities: BTreeMap<L, usize>,
}

pub fn image<L: Label>(r: &Relation<L>) -> BTreeSet<L> {
    let support = r.matrix().column_support();
    r.cod()
        .labels()
        .iter()
        .enumerate()
        .filter(|&(j, _)| test_bit(&support, j))
        .map(|(_, &l)| l)
        .collect()
}

pub fn coimage<L: Label>(r: &Relation<L>) -> BTreeSet<L> {
    image(&r.inverse())
}

/// `Im_r(subset)`: everything related to some element of `subset`. As a
/// function of `subset` this is the power-set map associated with `r`.
pub fn image_of_subset<L: Label>(r: &Relation<L>, subset: &BTreeSet<L>) -> Result<BTreeSet<L>> {
    let mut selector = vec![0u64; r.dom().len().div_ceil(64)];
    for &a in subset {
        let i = r
            .dom()
            .index_of(a)
            .ok_or(Error::SubsetOutOfDomain(a.widen()))?;
        crate::matrix::set_bit(&mut selector, i);
    }
    let hit = r.matrix().union_of_rows(&selector);
    Ok(r.cod()
        .labels()
        .iter()
        .enumerate()
        .filter(|&(j, _)| test_bit(&hit, j))
        .map(|(_, &l)| l)
        .collect())
}

pub fn classify<L: Label>(r: &Relation<L>) -> PredicateReport<L> {
    let m = r.matrix();
    let image = image(r);
    let coimage = coimage(r);
    let is_correspondence = is_correspondence_matrix(m);
    let is_partial_function = is_partial_function_matrix(m);
    let is_injective = is_injective_matrix(m);
    let is_surjective = is_surjective_matrix(m);
    let row_cardinalities = r
        .dom()
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, m.row_count(i)))
        .collect();
    PredicateReport {
        image,
        coimage,
        is_correspondence,
        is_partial_function,
        is_injective,
        is_surjective,
        is_function: is_partial_function && is_correspondence,
        is_bijective: is_injective && is_surjective,
        is_section: is_section_matrix(m),
        is_retraction: is_retraction_matrix(m),
        row_cardinalities,
    }
}

/// `r⁻¹ ∘ r = id_dom`.
pub fn is_section<L: Label>(r: &Relation<L>) -> bool {
    is_section_matrix(r.matrix())
}

/// `r ∘ r⁻¹ = id_cod`.
pub fn is_retraction<L: Label>(r: &Relation<L>) -> bool {
    is_retraction_matrix(r.matrix())
}

pub(crate) fn is_correspondence_matrix(m: &BitMatrix) -> bool {
    (0..m.rows()).all(|i| m.row_count(i) > 0)
}

pub(crate) fn is_partial_function_matrix(m: &BitMatrix) -> bool {
    (0..m.rows()).all(|i| m.row_count(i) <= 1)
}

// column bound holds vacuously for columns outside the image
pub(crate) fn is_injective_matrix(m: &BitMatrix) -> bool {
    (0..m.cols()).all(|j| m.col_count(j) <= 1)
}

pub(crate) fn is_surjective_matrix(m: &BitMatrix) -> bool {
    (0..m.cols()).all(|j| m.col_count(j) > 0)
}

pub(crate) fn is_bijective_function_matrix(m: &BitMatrix) -> bool {
    is_partial_function_matrix(m)
        && is_correspondence_matrix(m)
        && is_injective_matrix(m)
        && is_surjective_matrix(m)
}

pub(crate) fn is_section_matrix(m: &BitMatrix) -> bool {
    m.then(&m.transpose()).is_identity()
}

pub(crate) fn is_retraction_matrix(m: &BitMatrix) -> bool {
    m.transpose().then(m).is_identity()
}
