//! Finite bounded lattices given by an order relation or by operation tables.
//!
//! Elements are addressed by index `0..n`; names are carried alongside for
//! printing and parsing only. Every constructor validates eagerly, so the
//! rest of the crate may assume the tables describe a genuine lattice.

use std::collections::HashMap;

use thiserror::Error;

/// Index of an element inside a [`FinLattice`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order is not a partial order: `{0}` and `{1}` lie on a cycle")]
    NotAPartialOrder(String, String),
    #[error("no greatest element")]
    NoTop,
    #[error("no least element")]
    NoBottom,
    #[error("`{x}` and `{y}` have no unique {bound}")]
    NotALattice { x: String, y: String, bound: &'static str },
    #[error("operation tables do not describe a lattice: {0}")]
    InvalidTables(String),
}

/// Names plus `x <= y` pairs. The relation may be any subset of the order
/// (covers, the full order, or something in between); closure is taken.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosetInput {
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
}

impl PosetInput {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>) -> Self {
        PosetInput { elements: elements.into_iter().map(Into::into).collect(), relation: Vec::new() }
    }

    pub fn with(mut self, lower: &str, upper: &str) -> Self {
        self.relation.push((lower.to_string(), upper.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<Elem>>,
    meet: Vec<Vec<Elem>>,
    bottom: Elem,
    top: Elem,
}

/// Builds a lattice from a declared poset, taking the reflexive-transitive
/// closure of the relation first.
pub fn build_lattice(input: &PosetInput) -> Result<FinLattice, LatticeError> {
    let index = index_names(&input.elements)?;
    let n = input.elements.len();
    let mut leq = vec![vec![false; n]; n];
    for (lo, hi) in &input.relation {
        let a = *index.get(lo.as_str()).ok_or_else(|| LatticeError::UnknownElement(lo.clone()))?;
        let b = *index.get(hi.as_str()).ok_or_else(|| LatticeError::UnknownElement(hi.clone()))?;
        leq[a][b] = true;
    }
    FinLattice::from_order(input.elements.clone(), leq)
}

fn index_names(names: &[String]) -> Result<HashMap<&str, Elem>, LatticeError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(LatticeError::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

impl FinLattice {
    /// Builds a lattice from an arbitrary relation matrix; `leq[x][y]` means
    /// `x <= y`. The matrix is closed reflexively and transitively.
    pub fn from_order(names: Vec<String>, mut leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        index_names(&names)?;
        assert_eq!(leq.len(), n, "order matrix has wrong size");
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(LatticeError::NotAPartialOrder(names[i].clone(), names[j].clone()));
                }
            }
        }
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x][t])).ok_or(LatticeError::NoTop)?;
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x])).ok_or(LatticeError::NoBottom)?;

        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in x..n {
                let lub = least(&leq, (0..n).filter(|&z| leq[x][z] && leq[y][z]));
                let glb = greatest(&leq, (0..n).filter(|&z| leq[z][x] && leq[z][y]));
                let lub = lub.ok_or_else(|| LatticeError::NotALattice {
                    x: names[x].clone(),
                    y: names[y].clone(),
                    bound: "join",
                })?;
                let glb = glb.ok_or_else(|| LatticeError::NotALattice {
                    x: names[x].clone(),
                    y: names[y].clone(),
                    bound: "meet",
                })?;
                join[x][y] = lub;
                join[y][x] = lub;
                meet[x][y] = glb;
                meet[y][x] = glb;
            }
        }
        Ok(FinLattice { names, leq, join, meet, bottom, top })
    }

    /// Builds a lattice from join and meet tables. The tables are checked for
    /// the lattice laws and the order is recovered as `x <= y iff x ∧ y = x`.
    pub fn from_tables(names: Vec<String>, join: Vec<Vec<Elem>>, meet: Vec<Vec<Elem>>) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        index_names(&names)?;
        let bad = |msg: String| Err(LatticeError::InvalidTables(msg));
        if join.len() != n || meet.len() != n || join.iter().chain(&meet).any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("tables are not total n×n maps into the carrier".into());
        }
        for x in 0..n {
            if join[x][x] != x || meet[x][x] != x {
                return bad(format!("idempotence fails at `{}`", names[x]));
            }
            for y in 0..n {
                if join[x][y] != join[y][x] || meet[x][y] != meet[y][x] {
                    return bad(format!("commutativity fails at `{}`, `{}`", names[x], names[y]));
                }
                if meet[x][join[x][y]] != x || join[x][meet[x][y]] != x {
                    return bad(format!("absorption fails at `{}`, `{}`", names[x], names[y]));
                }
                for z in 0..n {
                    if join[join[x][y]][z] != join[x][join[y][z]] || meet[meet[x][y]][z] != meet[x][meet[y][z]] {
                        return bad(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            names[x], names[y], names[z]
                        ));
                    }
                }
            }
        }
        let leq: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| meet[x][y] == x).collect()).collect();
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x])).expect("finite lattice has a bottom");
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x][t])).expect("finite lattice has a top");
        Ok(FinLattice { names, leq, join, meet, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x][y]
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x][y]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn order_matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    /// Same lattice with the elements renamed; `names` must be distinct.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, LatticeError> {
        assert_eq!(names.len(), self.len());
        index_names(&names)?;
        Ok(FinLattice { names, ..self.clone() })
    }

    /// First triple (in index order) where `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// `max {y : x ∧ y = 0}`, if that set has a maximum.
    pub fn pseudocomplement(&self, x: Elem) -> Option<Elem> {
        greatest(&self.leq, self.elements().filter(|&y| self.meet(x, y) == self.bottom))
    }

    /// The full pseudocomplement table, or the first element lacking one.
    pub fn pseudocomplement_table(&self) -> Result<Vec<Elem>, Elem> {
        self.elements().map(|x| self.pseudocomplement(x).ok_or(x)).collect()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Length of the longest chain from the bottom to `x`.
    pub fn rank(&self, x: Elem) -> usize {
        self.ranks()[x]
    }

    /// Ranks of all elements at once.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.len();
        let mut rank = vec![0usize; n];
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&e| self.elements().filter(|&d| self.lt(d, e)).count());
        for &e in &order {
            rank[e] = self.elements().filter(|&d| self.lt(d, e)).map(|d| rank[d] + 1).max().unwrap_or(0);
        }
        rank
    }
}

fn least(leq: &[Vec<bool>], candidates: impl Iterator<Item = Elem> + Clone) -> Option<Elem> {
    candidates.clone().find(|&c| candidates.clone().all(|d| leq[c][d]))
}

fn greatest(leq: &[Vec<bool>], candidates: impl Iterator<Item = Elem> + Clone) -> Option<Elem> {
    candidates.clone().find(|&c| candidates.clone().all(|d| leq[d][c]))
}
