//! Objects and morphisms: finite carriers of labels and the relations between
//! them.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::label::{fresh_labels, Label};
use crate::matrix::BitMatrix;

/// A finite set of nonzero labels, kept in ascending order.
///
/// With `strict` set, the units `1` and `-1` are rejected as well, so the
/// carrier is a subset of the nonzero non-units. Equality and hashing look
/// only at the label set.
#[derive(Clone)]
pub struct Carrier<L> {
    labels: Vec<L>,
    strict: bool,
}

impl<L: Label> Carrier<L> {
    pub fn new(labels: impl IntoIterator<Item = L>, strict: bool) -> Result<Self> {
        let mut labels: Vec<L> = labels.into_iter().collect();
        for &l in &labels {
            if l.is_zero() {
                return Err(Error::ZeroLabel);
            }
            if strict && l.is_unit() {
                return Err(Error::UnitLabel(l.widen()));
            }
        }
        labels.sort_unstable();
        labels.dedup();
        Ok(Carrier { labels, strict })
    }

    pub fn empty() -> Self {
        Carrier {
            labels: Vec::new(),
            strict: false,
        }
    }

    /// `n` synthesized labels disjoint from (and larger in absolute value
    /// than) every label of the given carriers.
    pub fn fresh<'a>(n: usize, avoid: impl IntoIterator<Item = &'a Carrier<L>>) -> Self {
        let pool = avoid.into_iter().flat_map(|c| c.labels.iter().copied());
        Carrier {
            labels: fresh_labels(n, pool),
            strict: false,
        }
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn contains(&self, label: L) -> bool {
        self.index_of(label).is_some()
    }

    pub fn index_of(&self, label: L) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn label_set(&self) -> BTreeSet<L> {
        self.labels.iter().copied().collect()
    }
}

impl<L: PartialEq> PartialEq for Carrier<L> {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl<L: Eq> Eq for Carrier<L> {}

impl<L: Hash> Hash for Carrier<L> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.labels.hash(state);
    }
}

impl<L: Ord> PartialOrd for Carrier<L> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Smaller carriers first, then lexicographic on labels.
impl<L: Ord> Ord for Carrier<L> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.labels
            .len()
            .cmp(&other.labels.len())
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl<L: fmt::Display> fmt::Display for Carrier<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl<L: fmt::Display> fmt::Debug for Carrier<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Carrier{self}")
    }
}

/// A morphism `dom -> cod`: the incidence matrix has a set cell `(i, j)`
/// exactly when `dom.labels()[i]` is related to `cod.labels()[j]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation<L> {
    dom: Carrier<L>,
    cod: Carrier<L>,
    matrix: BitMatrix,
}

impl<L: Label> Relation<L> {
    pub fn new(
        dom: Carrier<L>,
        cod: Carrier<L>,
        pairs: impl IntoIterator<Item = (L, L)>,
    ) -> Result<Self> {
        let mut matrix = BitMatrix::zeros(dom.len(), cod.len());
        for (a, b) in pairs {
            match (dom.index_of(a), cod.index_of(b)) {
                (Some(i), Some(j)) => matrix.set(i, j, true),
                _ => return Err(Error::PairOutOfCarrier(a.widen(), b.widen())),
            }
        }
        Ok(Relation { dom, cod, matrix })
    }

    pub fn from_matrix(dom: Carrier<L>, cod: Carrier<L>, matrix: BitMatrix) -> Result<Self> {
        if matrix.rows() != dom.len() || matrix.cols() != cod.len() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a {}x{} relation",
                matrix.rows(),
                matrix.cols(),
                dom.len(),
                cod.len()
            )));
        }
        Ok(Relation { dom, cod, matrix })
    }

    pub fn identity(c: &Carrier<L>) -> Self {
        Relation {
            dom: c.clone(),
            cod: c.clone(),
            matrix: BitMatrix::identity(c.len()),
        }
    }

    pub fn empty(dom: Carrier<L>, cod: Carrier<L>) -> Self {
        let matrix = BitMatrix::zeros(dom.len(), cod.len());
        Relation { dom, cod, matrix }
    }

    /// The constant endomorphism relating every element of `carrier` to `x`.
    pub fn constant(carrier: &Carrier<L>, x: L) -> Result<Self> {
        let j = carrier
            .index_of(x)
            .ok_or(Error::LabelNotInCarrier(x.widen()))?;
        let n = carrier.len();
        Ok(Relation {
            dom: carrier.clone(),
            cod: carrier.clone(),
            matrix: BitMatrix::from_fn(n, n, |_, col| col == j),
        })
    }

    pub fn dom(&self) -> &Carrier<L> {
        &self.dom
    }

    pub fn cod(&self) -> &Carrier<L> {
        &self.cod
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn relates(&self, a: L, b: L) -> bool {
        match (self.dom.index_of(a), self.cod.index_of(b)) {
            (Some(i), Some(j)) => self.matrix.get(i, j),
            _ => false,
        }
    }

    /// Related pairs in ascending (dom, cod) order.
    pub fn pairs(&self) -> Vec<(L, L)> {
        let mut out = Vec::with_capacity(self.matrix.count_ones());
        for (i, &a) in self.dom.labels().iter().enumerate() {
            for j in self.matrix.row_indices(i) {
                out.push((a, self.cod.labels()[j]));
            }
        }
        out
    }

    /// `self ∘ inner`, defined when `inner.cod() == self.dom()`.
    pub fn after(&self, inner: &Relation<L>) -> Result<Self> {
        if inner.cod != self.dom {
            return Err(Error::CompositionMismatch);
        }
        Ok(Relation {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            matrix: inner.matrix.then(&self.matrix),
        })
    }

    /// The converse relation `cod -> dom`.
    pub fn inverse(&self) -> Self {
        Relation {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            matrix: self.matrix.transpose(),
        }
    }

    /// Same matrix, carriers replaced by others of equal size.
    pub fn relabel(&self, dom: Carrier<L>, cod: Carrier<L>) -> Result<Self> {
        Self::from_matrix(dom, cod, self.matrix.clone())
    }
}

/// `g ∘ f`.
pub fn compose<L: Label>(g: &Relation<L>, f: &Relation<L>) -> Result<Relation<L>> {
    g.after(f)
}

/// Canonical literal `{dom}->{cod}:{(a,b),...}`.
impl<L: Label> fmt::Display for Relation<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{{", self.dom, self.cod)?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

impl<L: Label> fmt::Debug for Relation<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({self})")
    }
}
