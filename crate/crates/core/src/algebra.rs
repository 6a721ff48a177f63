//! A finite lattice together with optional unary operation tables and a
//! distinguished center.

use std::fmt;

use thiserror::Error;

use crate::lattice::{Elem, FinLattice};

/// The unary operation symbols an algebra may carry. `Diamond` and `Box` are
/// derived (`◊x = ∼¬x`, `□x = ¬∼x`) and never stored from input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    Knot,
    Neg,
    Star,
    Diamond,
    Box,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Knot => "~",
            UnaryOp::Neg => "!",
            UnaryOp::Star => "*",
            UnaryOp::Diamond => "<>",
            UnaryOp::Box => "[]",
        }
    }
}

impl fmt::Display for UnaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UnaryOp::Knot => "knot (∼)",
            UnaryOp::Neg => "neg (¬)",
            UnaryOp::Star => "star (*)",
            UnaryOp::Diamond => "diamond (◊)",
            UnaryOp::Box => "box (□)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra has no {0} table")]
    MissingOperation(UnaryOp),
    #[error("algebra has no center")]
    MissingCenter,
    #[error("{op} table has {len} entries for {n} elements")]
    WrongTableSize { op: UnaryOp, len: usize, n: usize },
    #[error("{op} table maps `{from}` outside the carrier")]
    OutOfRange { op: UnaryOp, from: String },
    #[error("element `{0}` has no pseudocomplement")]
    PseudocomplementMissing(String),
    #[error("center index {0} is outside the carrier")]
    BadCenter(Elem),
}

/// A bounded lattice with optional `∼`, `¬`, `*` tables and center `c`.
///
/// Equality is structural: same element names, same order, same tables. The
/// algebra's display name is not compared.
#[derive(Debug, Clone)]
pub struct Algebra {
    name: String,
    lattice: FinLattice,
    knot: Option<Vec<Elem>>,
    neg: Option<Vec<Elem>>,
    star: Option<Vec<Elem>>,
    center: Option<Elem>,
    // derived
    diamond: Option<Vec<Elem>>,
    boxed: Option<Vec<Elem>>,
    pseudo: Result<Vec<Elem>, Elem>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
            && self.knot == other.knot
            && self.neg == other.neg
            && self.star == other.star
            && self.center == other.center
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(name: impl Into<String>, lattice: FinLattice) -> Self {
        let pseudo = lattice.pseudocomplement_table();
        Algebra {
            name: name.into(),
            lattice,
            knot: None,
            neg: None,
            star: None,
            center: None,
            diamond: None,
            boxed: None,
            pseudo,
        }
    }

    fn validate(&self, op: UnaryOp, table: &[Elem]) -> Result<(), AlgebraError> {
        let n = self.lattice.len();
        if table.len() != n {
            return Err(AlgebraError::WrongTableSize { op, len: table.len(), n });
        }
        if let Some(x) = table.iter().position(|&v| v >= n) {
            return Err(AlgebraError::OutOfRange { op, from: self.lattice.name(x).to_string() });
        }
        Ok(())
    }

    pub fn with_knot(mut self, table: Vec<Elem>) -> Result<Self, AlgebraError> {
        self.validate(UnaryOp::Knot, &table)?;
        self.knot = Some(table);
        self.refresh_modal();
        Ok(self)
    }

    pub fn with_neg(mut self, table: Vec<Elem>) -> Result<Self, AlgebraError> {
        self.validate(UnaryOp::Neg, &table)?;
        self.neg = Some(table);
        self.refresh_modal();
        Ok(self)
    }

    /// Declares a `*` table. It is not trusted: variety checks compare it
    /// against the computed pseudocomplement.
    pub fn with_star(mut self, table: Vec<Elem>) -> Result<Self, AlgebraError> {
        self.validate(UnaryOp::Star, &table)?;
        self.star = Some(table);
        Ok(self)
    }

    pub fn with_center(mut self, center: Option<Elem>) -> Result<Self, AlgebraError> {
        if let Some(c) = center
            && c >= self.lattice.len() {
                return Err(AlgebraError::BadCenter(c));
            }
        self.center = center;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Drops the declared operations, keeping only the lattice.
    pub fn lattice_reduct(&self) -> Algebra {
        Algebra::new(self.name.clone(), self.lattice.clone())
    }

    fn refresh_modal(&mut self) {
        if let (Some(k), Some(n)) = (&self.knot, &self.neg) {
            self.diamond = Some(n.iter().map(|&v| k[v]).collect());
            self.boxed = Some(k.iter().map(|&v| n[v]).collect());
        } else {
            self.diamond = None;
            self.boxed = None;
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn element_name(&self, x: Elem) -> &str {
        self.lattice.name(x)
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.lattice.index_of(name)
    }

    pub fn knot_table(&self) -> Option<&[Elem]> {
        self.knot.as_deref()
    }

    pub fn neg_table(&self) -> Option<&[Elem]> {
        self.neg.as_deref()
    }

    /// The declared `*` table, as given in input.
    pub fn declared_star(&self) -> Option<&[Elem]> {
        self.star.as_deref()
    }

    /// The computed pseudocomplement table, or the first element without a
    /// pseudocomplement.
    pub fn pseudocomplement_table(&self) -> Result<&[Elem], Elem> {
        self.pseudo.as_deref().map_err(|&e| e)
    }

    /// The declared `*` table if there is one, else the computed one.
    pub fn star_table(&self) -> Result<&[Elem], AlgebraError> {
        match &self.star {
            Some(s) => Ok(s),
            None => self.table(UnaryOp::Star),
        }
    }

    pub fn diamond_table(&self) -> Option<&[Elem]> {
        self.diamond.as_deref()
    }

    pub fn box_table(&self) -> Option<&[Elem]> {
        self.boxed.as_deref()
    }

    pub fn center(&self) -> Option<Elem> {
        self.center
    }

    pub fn has(&self, op: UnaryOp) -> bool {
        self.table(op).is_ok()
    }

    /// Lookup table for a unary operation. `Star` resolves to the computed
    /// pseudocomplement.
    pub fn table(&self, op: UnaryOp) -> Result<&[Elem], AlgebraError> {
        match op {
            UnaryOp::Knot => self.knot.as_deref(),
            UnaryOp::Neg => self.neg.as_deref(),
            UnaryOp::Diamond => self.diamond.as_deref(),
            UnaryOp::Box => self.boxed.as_deref(),
            UnaryOp::Star => {
                return self
                    .pseudo
                    .as_deref()
                    .map_err(|&x| AlgebraError::PseudocomplementMissing(self.lattice.name(x).to_string()))
            }
        }
        .ok_or(AlgebraError::MissingOperation(op))
    }

    pub fn apply(&self, op: UnaryOp, x: Elem) -> Result<Elem, AlgebraError> {
        self.table(op).map(|t| t[x])
    }

    pub fn knot(&self, x: Elem) -> Elem {
        self.knot.as_ref().expect("algebra has no knot table")[x]
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.neg.as_ref().expect("algebra has no neg table")[x]
    }

    pub fn diamond(&self, x: Elem) -> Elem {
        self.diamond.as_ref().expect("algebra has no knot/neg tables")[x]
    }

    pub fn boxed(&self, x: Elem) -> Elem {
        self.boxed.as_ref().expect("algebra has no knot/neg tables")[x]
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.lattice.join(x, y)
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.lattice.meet(x, y)
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.lattice.leq(x, y)
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        self.lattice.lt(x, y)
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    /// Elements `x` with `∼x = x`.
    pub fn knot_fixed_points(&self) -> Vec<Elem> {
        match &self.knot {
            Some(k) => (0..k.len()).filter(|&x| k[x] == x).collect(),
            None => Vec::new(),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name, self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn derived_tables_follow_definitions() {
        let t = fixtures::example_3_4();
        let idx = |n: &str| t.index_of(n).unwrap();
        assert_eq!(t.diamond(idx("d")), idx("d"));
        assert_eq!(t.diamond(idx("a")), idx("0"));
        assert_eq!(t.boxed(idx("a")), idx("a"));
        for x in 0..t.len() {
            assert_eq!(t.diamond(x), t.knot(t.neg(x)));
            assert_eq!(t.boxed(x), t.neg(t.knot(x)));
        }
    }

    #[test]
    fn table_validation() {
        let lat = fixtures::example_3_4().lattice().clone();
        let a = Algebra::new("t", lat);
        assert!(matches!(a.clone().with_knot(vec![0; 3]), Err(AlgebraError::WrongTableSize { .. })));
        assert!(matches!(a.clone().with_neg(vec![9; 8]), Err(AlgebraError::OutOfRange { .. })));
        assert_eq!(a.clone().with_center(Some(8)).unwrap_err(), AlgebraError::BadCenter(8));
        assert_eq!(a.table(UnaryOp::Knot).unwrap_err(), AlgebraError::MissingOperation(UnaryOp::Knot));
        assert!(a.table(UnaryOp::Star).is_ok());
    }

    #[test]
    fn equality_ignores_display_name() {
        let t = fixtures::example_3_4();
        assert_eq!(t.clone().with_name("other"), t);
        assert_ne!(t.lattice_reduct(), t);
    }
}
