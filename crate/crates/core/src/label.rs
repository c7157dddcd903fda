//! Integer labels for carrier elements.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{NumCast, PrimInt, Signed};

/// Element labels: signed machine integers standing in for elements of an
/// integral domain. Every `i8..=i128` qualifies.
pub trait Label: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {
    /// `true` for `1` and `-1`, the units of the integers.
    fn is_unit(self) -> bool {
        self == Self::one() || self == -Self::one()
    }

    /// Lossless widening used in error messages.
    fn widen(self) -> i128 {
        self.to_i128().expect("primitive integers fit in i128")
    }

    /// Builds a label from an index; `None` when the label type is too narrow.
    fn from_index(n: usize) -> Option<Self> {
        <Self as NumCast>::from(n)
    }
}

impl<T> Label for T where T: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {}

/// `n` consecutive labels, all at least 2, strictly greater in absolute value
/// than every label in `avoid`.
pub(crate) fn fresh_labels<L: Label>(n: usize, avoid: impl IntoIterator<Item = L>) -> Vec<L> {
    let floor = avoid
        .into_iter()
        .map(|l| l.widen().unsigned_abs())
        .max()
        .unwrap_or(0)
        .max(1);
    (0..n)
        .map(|i| {
            let v = floor + 1 + i as u128;
            usize::try_from(v)
                .ok()
                .and_then(L::from_index)
                .expect("label type too narrow for synthesized labels")
        })
        .collect()
}
