//! Predicate-defined classes of morphisms and sinks, the candidate `E` and
//! `M` of a factorization structure.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::carrier::Relation;
use crate::categorical::{
    check_cod_for_extremal, is_epi_matrix, is_extremal_epi_matrix, is_mono_matrix,
};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::BitMatrix;
use crate::predicates::{
    is_bijective_function_matrix, is_correspondence_matrix, is_partial_function_matrix,
    is_retraction_matrix, is_section_matrix,
};
use crate::sink::Sink;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    All,
    Mono,
    Epi,
    Iso,
    Section,
    Retraction,
    ExtremalEpi,
    BijectiveFunction,
    Correspondence,
    PartialFunction,
}

impl ClassKind {
    pub const KINDS: [ClassKind; 10] = [
        ClassKind::All,
        ClassKind::Mono,
        ClassKind::Epi,
        ClassKind::Iso,
        ClassKind::Section,
        ClassKind::Retraction,
        ClassKind::ExtremalEpi,
        ClassKind::BijectiveFunction,
        ClassKind::Correspondence,
        ClassKind::PartialFunction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::All => "all",
            ClassKind::Mono => "mono",
            ClassKind::Epi => "epi",
            ClassKind::Iso => "iso",
            ClassKind::Section => "section",
            ClassKind::Retraction => "retraction",
            ClassKind::ExtremalEpi => "extremal_epi",
            ClassKind::BijectiveFunction => "bijective_function",
            ClassKind::Correspondence => "correspondence",
            ClassKind::PartialFunction => "partial_function",
        }
    }

    pub(crate) fn contains_matrix(self, m: &BitMatrix) -> bool {
        match self {
            ClassKind::All => true,
            ClassKind::Mono => is_mono_matrix(m),
            ClassKind::Epi => is_epi_matrix(m),
            // two-sided inverse, which can only be the converse
            ClassKind::Iso => is_section_matrix(m) && is_retraction_matrix(m),
            ClassKind::Section => is_section_matrix(m),
            ClassKind::Retraction => is_retraction_matrix(m),
            ClassKind::ExtremalEpi => is_extremal_epi_matrix(m, 0),
            ClassKind::BijectiveFunction => is_bijective_function_matrix(m),
            ClassKind::Correspondence => is_correspondence_matrix(m),
            ClassKind::PartialFunction => is_partial_function_matrix(m),
        }
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassKind::KINDS
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Default bound on the number of components of a sink in a class.
pub const DEFAULT_ARITY_MAX: usize = 3;

/// A conjunction of class kinds. A sink belongs to the class when it has at
/// most `arity_max` components and its copairing (the relation out of the
/// disjoint union of the component domains) belongs to every kind; a
/// singleton sink is just its morphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    kinds: Vec<ClassKind>,
    pub arity_max: usize,
}

impl ClassSpec {
    pub fn new(kinds: impl IntoIterator<Item = ClassKind>) -> Self {
        let mut kinds: Vec<ClassKind> =
            kinds.into_iter().filter(|&k| k != ClassKind::All).collect();
        kinds.sort_unstable();
        kinds.dedup();
        ClassSpec {
            kinds,
            arity_max: DEFAULT_ARITY_MAX,
        }
    }

    pub fn of(kind: ClassKind) -> Self {
        Self::new([kind])
    }

    pub fn all() -> Self {
        Self::new([])
    }

    pub fn with_arity_max(mut self, arity_max: usize) -> Self {
        self.arity_max = arity_max;
        self
    }

    /// Kinds in the conjunction; empty means every morphism.
    pub fn kinds(&self) -> &[ClassKind] {
        &self.kinds
    }

    pub fn contains<L: Label>(&self, r: &Relation<L>) -> Result<bool> {
        if self.kinds.contains(&ClassKind::ExtremalEpi) {
            check_cod_for_extremal(r.cod().len())?;
        }
        Ok(self.contains_matrix(r.matrix()))
    }

    pub fn contains_sink<L: Label>(&self, s: &Sink<L>) -> Result<bool> {
        if self.kinds.contains(&ClassKind::ExtremalEpi) {
            check_cod_for_extremal(s.codomain().len())?;
        }
        let parts: Vec<&BitMatrix> = s.components().iter().map(|r| r.matrix()).collect();
        Ok(self.contains_sink_matrices(&parts))
    }

    pub(crate) fn contains_matrix(&self, m: &BitMatrix) -> bool {
        self.kinds.iter().all(|k| k.contains_matrix(m))
    }

    pub(crate) fn contains_sink_matrices(&self, parts: &[&BitMatrix]) -> bool {
        if parts.is_empty() || parts.len() > self.arity_max {
            return false;
        }
        if let [only] = parts {
            return self.contains_matrix(only);
        }
        self.contains_matrix(&BitMatrix::stack(parts[0].cols(), parts.iter().copied()))
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kinds = s
            .split('+')
            .map(|part| part.trim().parse::<ClassKind>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassSpec::new(kinds))
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kinds.is_empty() {
            return f.write_str("all");
        }
        for (i, k) in self.kinds.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            f.write_str(k.name())?;
        }
        Ok(())
    }
}

/// Membership with a cache keyed by matrix; membership never depends on
/// labels.
pub(crate) struct ClassMemo<'a> {
    spec: &'a ClassSpec,
    cache: HashMap<BitMatrix, bool>,
}

impl<'a> ClassMemo<'a> {
    pub(crate) fn new(spec: &'a ClassSpec) -> Self {
        ClassMemo {
            spec,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn spec(&self) -> &ClassSpec {
        self.spec
    }

    pub(crate) fn contains(&mut self, m: &BitMatrix) -> bool {
        if let Some(&v) = self.cache.get(m) {
            return v;
        }
        let v = self.spec.contains_matrix(m);
        self.cache.insert(m.clone(), v);
        v
    }

    pub(crate) fn contains_sink(&mut self, parts: &[&BitMatrix]) -> bool {
        if parts.is_empty() || parts.len() > self.spec.arity_max {
            return false;
        }
        if let [only] = parts {
            return self.contains(only);
        }
        let stacked = BitMatrix::stack(parts[0].cols(), parts.iter().copied());
        self.contains(&stacked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;

    fn c(labels: &[i64]) -> Carrier<i64> {
        Carrier::new(labels.iter().copied(), false).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let s: ClassSpec = "mono+epi".parse().unwrap();
        assert_eq!(s.kinds(), &[ClassKind::Mono, ClassKind::Epi]);
        assert_eq!(s.to_string(), "mono+epi");
        assert_eq!("all".parse::<ClassSpec>().unwrap(), ClassSpec::all());
        assert_eq!(ClassSpec::all().to_string(), "all");
        assert!(
            matches!("monic".parse::<ClassSpec>(), Err(Error::UnknownClass(n)) if n == "monic")
        );
        for k in ClassKind::KINDS {
            assert_eq!(k.name().parse::<ClassKind>().unwrap(), k);
        }
    }

    #[test]
    fn membership() {
        let t = Relation::new(
            c(&[2, 3]),
            c(&[2, 3, 5, 7]),
            [(2, 2), (2, 3), (3, 5), (3, 7)],
        )
        .unwrap();
        assert!(ClassSpec::of(ClassKind::Mono).contains(&t).unwrap());
        assert!(!ClassSpec::of(ClassKind::Epi).contains(&t).unwrap());
        assert!(ClassSpec::all().contains(&t).unwrap());
        assert!(
            ClassSpec::new([ClassKind::Section, ClassKind::Correspondence])
                .contains(&t)
                .unwrap()
        );
        assert!(!"mono+partial_function"
            .parse::<ClassSpec>()
            .unwrap()
            .contains(&t)
            .unwrap());
    }

    #[test]
    fn iso_and_bijective_function_agree() {
        for rows in 0..=3 {
            for cols in 0..=3 {
                for m in BitMatrix::all(rows, cols) {
                    assert_eq!(
                        ClassKind::Iso.contains_matrix(&m),
                        ClassKind::BijectiveFunction.contains_matrix(&m)
                    );
                }
            }
        }
    }

    #[test]
    fn sinks_use_copairing() {
        let y = c(&[4, 6]);
        let a = Relation::new(c(&[2]), y.clone(), [(2, 4)]).unwrap();
        let b = Relation::new(c(&[3]), y.clone(), [(3, 6)]).unwrap();
        let epi = ClassSpec::of(ClassKind::Epi);
        // neither component is epi but the pair is jointly epi
        assert!(!epi.contains(&a).unwrap() && !epi.contains(&b).unwrap());
        let s = Sink::new(vec![a.clone(), b]).unwrap();
        assert!(epi.contains_sink(&s).unwrap());
        assert!(!epi.clone().with_arity_max(1).contains_sink(&s).unwrap());
        assert!(!epi.contains_sink(&Sink::singleton(a)).unwrap());
    }
}
