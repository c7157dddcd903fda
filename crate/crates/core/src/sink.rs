use crate::carrier::{Carrier, Relation};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::BitMatrix;

/// A nonempty family of relations into one codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sink<L: Label> {
    components: Vec<Relation<L>>,
    codomain: Carrier<L>,
}

impl<L: Label> Sink<L> {
    pub fn new(components: Vec<Relation<L>>) -> Result<Self> {
        let codomain = components.first().ok_or(Error::EmptySink)?.cod().clone();
        if let Some(i) = components.iter().position(|r| *r.cod() != codomain) {
            return Err(Error::ShapeMismatch(format!(
                "sink component {i} has codomain {} instead of {codomain}",
                components[i].cod()
            )));
        }
        Ok(Sink {
            components,
            codomain,
        })
    }

    pub fn singleton(r: Relation<L>) -> Self {
        Sink {
            codomain: r.cod().clone(),
            components: vec![r],
        }
    }

    pub fn components(&self) -> &[Relation<L>] {
        &self.components
    }

    pub fn codomain(&self) -> &Carrier<L> {
        &self.codomain
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    /// `(f ∘ e_i)_i`.
    pub fn then(&self, f: &Relation<L>) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|e| f.after(e))
            .collect::<Result<Vec<_>>>()?;
        Sink::new(components)
    }

    /// The induced relation out of the disjoint union of the component
    /// domains. Its domain labels are synthesized, one per (component, element).
    pub fn copairing(&self) -> Relation<L> {
        let rows: usize = self.components.iter().map(|r| r.dom().len()).sum();
        let dom = Carrier::fresh(rows, [&self.codomain]);
        let matrix = BitMatrix::stack(
            self.codomain.len(),
            self.components.iter().map(|r| r.matrix()),
        );
        Relation::from_matrix(dom, self.codomain.clone(), matrix).expect("stacked shape matches")
    }

    pub(crate) fn matrices(&self) -> Vec<&BitMatrix> {
        self.components.iter().map(|r| r.matrix()).collect()
    }
}

impl<L: Label> std::fmt::Display for Sink<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}
