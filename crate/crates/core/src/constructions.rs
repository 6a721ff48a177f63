//! Algebra-to-algebra constructions: Kalman pairs `K(A)`, Monteiro pairs
//! `M(T)`, the center slice `C(T)`, the fixed-point algebras `T^◊`, `T^□`,
//! the quotient `T^θ`, and the canonical maps between them.
//!
//! Every construction returns a full [`Algebra`] with explicit tables plus a
//! provenance record linking each new element to where it came from.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, UnaryOp};
use crate::lattice::{Elem, FinLattice, LatticeError};
use crate::morphisms::{Morphism, MorphismError, Signature};
use crate::varieties::{check_variety, with_found_center, Variety};

/// Where an element of a constructed algebra comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Origin {
    Element(Elem),
    Pair(Elem, Elem),
    /// Members of an equivalence class, ascending.
    Class(Vec<Elem>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Kalman,
    Monteiro,
    CenterSlice,
    Diamond,
    Box,
    Theta,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::Kalman,
        Construction::Monteiro,
        Construction::CenterSlice,
        Construction::Diamond,
        Construction::Box,
        Construction::Theta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Kalman => "kalman",
            Construction::Monteiro => "monteiro",
            Construction::CenterSlice => "center-slice",
            Construction::Diamond => "diamond",
            Construction::Box => "box",
            Construction::Theta => "theta",
        }
    }

    pub fn apply(self, a: &Algebra) -> Result<ConstructedAlgebra, ConstructionError> {
        match self {
            Construction::Kalman => kalman(a),
            Construction::Monteiro => monteiro(a),
            Construction::CenterSlice => center_slice(a),
            Construction::Diamond => diamond_subalgebra(a),
            Construction::Box => box_subalgebra(a),
            Construction::Theta => theta_quotient(a),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown construction `{0}` (expected one of kalman, monteiro, center-slice, diamond, box, theta)")]
pub struct UnknownConstruction(pub String);

impl FromStr for Construction {
    type Err = UnknownConstruction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| UnknownConstruction(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("input is not a distributive p-algebra: {0}")]
    NotPdl(String),
    #[error("input is not a KAN-algebra: {0}")]
    NotKan(String),
    #[error("input is not a centered KAN-algebra: {0}")]
    NotCentered(String),
    #[error("input is not in variety {variety}: {reason}")]
    NotInVariety { variety: Variety, reason: String },
    #[error("{op} is not well defined on classes: `{x}` and `{y}` disagree")]
    CongruenceViolation { op: &'static str, x: String, y: String },
    #[error("{op} leaves the carrier at `{x}`, `{y}`")]
    NotClosed { op: &'static str, x: String, y: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedAlgebra {
    pub algebra: Algebra,
    pub provenance: Vec<Origin>,
    pub construction: Construction,
}

impl ConstructedAlgebra {
    /// The new element with the given origin.
    pub fn find(&self, origin: &Origin) -> Option<Elem> {
        self.provenance.iter().position(|o| o == origin)
    }

    pub fn pair(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.find(&Origin::Pair(x, y))
    }

    /// The new element a source element lands in: itself for subalgebras,
    /// its class for quotients.
    pub fn image_of(&self, x: Elem) -> Option<Elem> {
        self.provenance.iter().position(|o| match o {
            Origin::Element(e) => *e == x,
            Origin::Class(members) => members.binary_search(&x).is_ok(),
            Origin::Pair(..) => false,
        })
    }

    /// The source element behind a new element of a subalgebra.
    pub fn source_element(&self, e: Elem) -> Option<Elem> {
        match &self.provenance[e] {
            Origin::Element(x) => Some(*x),
            Origin::Class(m) => m.first().copied(),
            Origin::Pair(..) => None,
        }
    }
}

fn describe_failure(a: &Algebra, v: Variety) -> Result<Option<String>, AlgebraError> {
    let report = check_variety(a, v)?;
    Ok(report.failures().next().map(|f| match f.render_counterexample() {
        Some(cx) => format!("{} fails at {cx}", f.name),
        None => format!("{} fails", f.name),
    }))
}

fn require_pdl(a: &Algebra) -> Result<(), ConstructionError> {
    match describe_failure(a, Variety::Pdl)? {
        Some(reason) => Err(ConstructionError::NotPdl(reason)),
        None => Ok(()),
    }
}

fn require_kan(a: &Algebra) -> Result<(), ConstructionError> {
    let reason = match describe_failure(a, Variety::Kan) {
        Ok(r) => r,
        Err(e) => Some(e.to_string()),
    };
    match reason {
        Some(reason) => Err(ConstructionError::NotKan(reason)),
        None => Ok(()),
    }
}

/// Returns the input with its center declared.
fn require_kanc(a: &Algebra) -> Result<Algebra, ConstructionError> {
    require_kan(a).map_err(|e| ConstructionError::NotCentered(e.to_string()))?;
    let centered = with_found_center(a).ok_or_else(|| ConstructionError::NotCentered("∼ has no unique fixed point".into()))?;
    let c = centered.center().expect("center declared");
    if centered.knot(c) != c {
        return Err(ConstructionError::NotCentered(format!("declared center `{}` is not fixed by ∼", a.element_name(c))));
    }
    Ok(centered)
}

fn require(a: &Algebra, v: Variety) -> Result<(), ConstructionError> {
    let reason = match describe_failure(a, v) {
        Ok(r) => r,
        Err(e) => Some(e.to_string()),
    };
    match reason {
        Some(reason) => Err(ConstructionError::NotInVariety { variety: v, reason }),
        None => Ok(()),
    }
}

/// Builds a lattice on `carrier` (source indices) with the given source-level
/// join and meet, which must stay inside the carrier.
fn sublattice(
    src: &Algebra,
    names: Vec<String>,
    carrier: &[Elem],
    join: impl Fn(Elem, Elem) -> Elem,
    meet: impl Fn(Elem, Elem) -> Elem,
) -> Result<FinLattice, ConstructionError> {
    let pos: HashMap<Elem, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = carrier.len();
    let table = |op: &'static str, f: &dyn Fn(Elem, Elem) -> Elem| -> Result<Vec<Vec<Elem>>, ConstructionError> {
        let mut t = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (carrier[i], carrier[j]);
                t[i][j] = *pos.get(&f(x, y)).ok_or_else(|| ConstructionError::NotClosed {
                    op,
                    x: src.element_name(x).to_string(),
                    y: src.element_name(y).to_string(),
                })?;
            }
        }
        Ok(t)
    };
    let j = table("join", &join)?;
    let m = table("meet", &meet)?;
    Ok(FinLattice::from_tables(names, j, m)?)
}

fn pair_name(src: &Algebra, x: Elem, y: Elem) -> String {
    format!("({},{})", src.element_name(x), src.element_name(y))
}

/// Pair algebras: lattice from componentwise formulas on a list of pairs.
struct PairCarrier {
    pairs: Vec<(Elem, Elem)>,
    index: HashMap<(Elem, Elem), usize>,
}

impl PairCarrier {
    fn new(pairs: Vec<(Elem, Elem)>) -> Self {
        let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        PairCarrier { pairs, index }
    }

    fn table(
        &self,
        src: &Algebra,
        op: &'static str,
        f: impl Fn((Elem, Elem), (Elem, Elem)) -> (Elem, Elem),
    ) -> Result<Vec<Vec<Elem>>, ConstructionError> {
        let n = self.pairs.len();
        let mut t = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                t[i][j] = self.lookup(src, op, f(self.pairs[i], self.pairs[j]))?;
            }
        }
        Ok(t)
    }

    fn unary(&self, src: &Algebra, op: &'static str, f: impl Fn((Elem, Elem)) -> (Elem, Elem)) -> Result<Vec<Elem>, ConstructionError> {
        self.pairs.iter().map(|&p| self.lookup(src, op, f(p))).collect()
    }

    fn lookup(&self, src: &Algebra, op: &'static str, p: (Elem, Elem)) -> Result<Elem, ConstructionError> {
        self.index.get(&p).copied().ok_or_else(|| ConstructionError::NotClosed {
            op,
            x: src.element_name(p.0).to_string(),
            y: src.element_name(p.1).to_string(),
        })
    }

    fn names(&self, src: &Algebra) -> Vec<String> {
        self.pairs.iter().map(|&(x, y)| pair_name(src, x, y)).collect()
    }

    fn provenance(&self) -> Vec<Origin> {
        self.pairs.iter().map(|&(x, y)| Origin::Pair(x, y)).collect()
    }
}

/// `K(A)`: pairs `(x, y)` with `x ∧ y = 0`, a centered KAN-algebra.
pub fn kalman(a: &Algebra) -> Result<ConstructedAlgebra, ConstructionError> {
    require_pdl(a)?;
    let star = a.table(UnaryOp::Star)?;
    let (zero, one) = (a.bottom(), a.top());
    let n = a.len();
    let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| a.meet(x, y) == zero).collect();
    let pc = PairCarrier::new(pairs);
    let join = pc.table(a, "join", |(p, q), (r, s)| (a.join(p, r), a.meet(q, s)))?;
    let meet = pc.table(a, "meet", |(p, q), (r, s)| (a.meet(p, r), a.join(q, s)))?;
    let lattice = FinLattice::from_tables(pc.names(a), join, meet)?;
    let knot = pc.unary(a, "knot", |(x, y)| (y, x))?;
    let neg = pc.unary(a, "neg", |(x, _)| (star[x], x))?;
    let center = pc.lookup(a, "center", (zero, zero))?;
    debug_assert_eq!(lattice.bottom(), pc.index[&(zero, one)]);
    let algebra = Algebra::new(format!("kalman_{}", a.name()), lattice)
        .with_knot(knot)?
        .with_neg(neg)?
        .with_center(Some(center))?;
    Ok(ConstructedAlgebra { algebra, provenance: pc.provenance(), construction: Construction::Kalman })
}

fn fixed_points(t: &[Elem]) -> Vec<Elem> {
    (0..t.len()).filter(|&x| t[x] == x).collect()
}

/// `M(T)`: pairs `(x, y)` in `T^◊ × T^□` with `x ≤ y`, a centered KAN-algebra
/// whose operations apply `◊`/`□` to the source algebra's meets and joins.
pub fn monteiro(t: &Algebra) -> Result<ConstructedAlgebra, ConstructionError> {
    require_kan(t)?;
    let (dia, bx) = (t.table(UnaryOp::Diamond)?, t.table(UnaryOp::Box)?);
    let (knot, neg) = (t.table(UnaryOp::Knot)?, t.table(UnaryOp::Neg)?);
    let (ds, bs) = (fixed_points(dia), fixed_points(bx));
    let pairs = ds.iter().flat_map(|&x| bs.iter().map(move |&y| (x, y))).filter(|&(x, y)| t.leq(x, y)).collect();
    let pc = PairCarrier::new(pairs);
    let join = pc.table(t, "join", |(p, q), (r, s)| (t.join(p, r), bx[t.join(q, s)]))?;
    let meet = pc.table(t, "meet", |(p, q), (r, s)| (dia[t.meet(p, r)], t.meet(q, s)))?;
    let lattice = FinLattice::from_tables(pc.names(t), join, meet)?;
    let knot_m = pc.unary(t, "knot", |(x, y)| (knot[y], knot[x]))?;
    let neg_m = pc.unary(t, "neg", |(x, _)| (dia[neg[x]], knot[x]))?;
    let center = pc.lookup(t, "center", (t.bottom(), t.top()))?;
    let algebra = Algebra::new(format!("monteiro_{}", t.name()), lattice)
        .with_knot(knot_m)?
        .with_neg(neg_m)?
        .with_center(Some(center))?;
    Ok(ConstructedAlgebra { algebra, provenance: pc.provenance(), construction: Construction::Monteiro })
}

fn subalgebra_names(src: &Algebra, carrier: &[Elem]) -> Vec<String> {
    carrier.iter().map(|&x| src.element_name(x).to_string()).collect()
}

fn subalgebra_unary(carrier: &[Elem], f: impl Fn(Elem) -> Elem) -> Vec<Elem> {
    let pos: HashMap<Elem, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    carrier.iter().map(|&x| pos[&f(x)]).collect()
}

/// `C(T)`: the up-set of the center with `¬^c x = ¬x ∨ c` as `*`.
pub fn center_slice(t: &Algebra) -> Result<ConstructedAlgebra, ConstructionError> {
    let t = require_kanc(t)?;
    let c = t.center().expect("centered");
    let neg = t.table(UnaryOp::Neg)?;
    let carrier: Vec<Elem> = (0..t.len()).filter(|&x| t.leq(c, x)).collect();
    let lattice = sublattice(&t, subalgebra_names(&t, &carrier), &carrier, |x, y| t.join(x, y), |x, y| t.meet(x, y))?;
    let star = subalgebra_unary(&carrier, |x| t.join(neg[x], c));
    let algebra = Algebra::new(format!("center_slice_{}", t.name()), lattice).with_star(star)?;
    Ok(ConstructedAlgebra {
        algebra,
        provenance: carrier.into_iter().map(Origin::Element).collect(),
        construction: Construction::CenterSlice,
    })
}

/// `T^◊`: fixed points of `◊` with `◊(x ∧ y)` as meet and `◊¬x` as `*`.
pub fn diamond_subalgebra(t: &Algebra) -> Result<ConstructedAlgebra, ConstructionError> {
    require_kan(t)?;
    let (dia, neg) = (t.table(UnaryOp::Diamond)?, t.table(UnaryOp::Neg)?);
    let carrier = fixed_points(dia);
    let lattice = sublattice(t, subalgebra_names(t, &carrier), &carrier, |x, y| t.join(x, y), |x, y| dia[t.meet(x, y)])?;
    let star = subalgebra_unary(&carrier, |x| dia[neg[x]]);
    let algebra = Algebra::new(format!("diamond_{}", t.name()), lattice).with_star(star)?;
    Ok(ConstructedAlgebra {
        algebra,
        provenance: carrier.into_iter().map(Origin::Element).collect(),
        construction: Construction::Diamond,
    })
}

/// `T^□`: fixed points of `□` with `□(x ∨ y)` as join; a bare lattice.
pub fn box_subalgebra(t: &Algebra) -> Result<ConstructedAlgebra, ConstructionError> {
    require_kan(t)?;
    let bx = t.table(UnaryOp::Box)?;
    let carrier = fixed_points(bx);
    let lattice = sublattice(t, subalgebra_names(t, &carrier), &carrier, |x, y| bx[t.join(x, y)], |x, y| t.meet(x, y))?;
    let algebra = Algebra::new(format!("box_{}", t.name()), lattice);
    Ok(ConstructedAlgebra {
        algebra,
        provenance: carrier.into_iter().map(Origin::Element).collect(),
        construction: Construction::Box,
    })
}

/// Classes of `x ~ y ⟺ ¬x = ¬y`, ordered by least member; returns the class
/// index of every element alongside the member lists.
pub fn theta_classes(t: &Algebra) -> Result<(Vec<usize>, Vec<Vec<Elem>>), AlgebraError> {
    let neg = t.table(UnaryOp::Neg)?;
    let mut class_of = vec![usize::MAX; t.len()];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for x in 0..t.len() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<Elem> = (x..t.len()).filter(|&y| neg[y] == neg[x]).collect();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    Ok((class_of, classes))
}

/// `T^θ`: the quotient by `¬x = ¬y`, with `[¬x]` as `*`. Compatibility of
/// every operation is checked across all representatives first.
pub fn theta_quotient(t: &Algebra) -> Result<ConstructedAlgebra, ConstructionError> {
    require_kan(t)?;
    let neg = t.table(UnaryOp::Neg)?;
    let (class_of, classes) = theta_classes(t)?;
    let rep = |x: Elem| classes[class_of[x]][0];
    let n = t.len();
    let binary: [(&'static str, &dyn Fn(Elem, Elem) -> Elem); 2] =
        [("join", &|x, y| t.join(x, y)), ("meet", &|x, y| t.meet(x, y))];
    for (op, f) in binary {
        for x in 0..n {
            for y in 0..n {
                if class_of[f(x, y)] != class_of[f(rep(x), rep(y))] {
                    return Err(ConstructionError::CongruenceViolation {
                        op,
                        x: t.element_name(x).to_string(),
                        y: t.element_name(y).to_string(),
                    });
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| class_of[neg[x]] != class_of[neg[rep(x)]]) {
        return Err(ConstructionError::CongruenceViolation {
            op: "neg",
            x: t.element_name(x).to_string(),
            y: t.element_name(rep(x)).to_string(),
        });
    }
    let k = classes.len();
    let mut join = vec![vec![0; k]; k];
    let mut meet = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (x, y) = (classes[i][0], classes[j][0]);
            join[i][j] = class_of[t.join(x, y)];
            meet[i][j] = class_of[t.meet(x, y)];
        }
    }
    let names = classes.iter().map(|m| format!("[{}]", t.element_name(m[0]))).collect();
    let lattice = FinLattice::from_tables(names, join, meet)?;
    let star = classes.iter().map(|m| class_of[neg[m[0]]]).collect();
    let algebra = Algebra::new(format!("theta_{}", t.name()), lattice).with_star(star)?;
    Ok(ConstructedAlgebra {
        algebra,
        provenance: classes.into_iter().map(Origin::Class).collect(),
        construction: Construction::Theta,
    })
}

fn morphism(
    dom: Algebra,
    cod: Algebra,
    mapping: Vec<Elem>,
    sig: Signature,
) -> Result<Morphism, ConstructionError> {
    Ok(Morphism::new(Arc::new(dom), Arc::new(cod), mapping, sig)?)
}

fn lookup(ca: &ConstructedAlgebra, origin: Origin) -> Elem {
    ca.find(&origin).unwrap_or_else(|| panic!("{:?} missing from {}", origin, ca.construction))
}

/// `φ([x]) = ◊x`, from `T^θ` onto `T^◊`.
pub fn map_phi(t: &Algebra) -> Result<Morphism, ConstructionError> {
    require(t, Variety::Skan)?;
    let (q, d) = (theta_quotient(t)?, diamond_subalgebra(t)?);
    let dia = t.table(UnaryOp::Diamond)?;
    let mapping = (0..q.algebra.len()).map(|i| lookup(&d, Origin::Element(dia[q.source_element(i).unwrap()]))).collect();
    morphism(q.algebra, d.algebra, mapping, Signature::STONE)
}

/// `h(x) = x ∨ c`, from `T^◊` onto `C(T)`.
pub fn map_h(t: &Algebra) -> Result<Morphism, ConstructionError> {
    require(t, Variety::Skanc)?;
    let t = require_kanc(t)?;
    let c = t.center().unwrap();
    let (d, cs) = (diamond_subalgebra(&t)?, center_slice(&t)?);
    let mapping = (0..d.algebra.len()).map(|i| lookup(&cs, Origin::Element(t.join(d.source_element(i).unwrap(), c)))).collect();
    morphism(d.algebra, cs.algebra, mapping, Signature::STONE)
}

/// `α(x) = (x, 0)`, from `A` onto `C(K(A))`.
pub fn map_alpha(a: &Algebra) -> Result<Morphism, ConstructionError> {
    require(a, Variety::Stone)?;
    let k = kalman(a)?;
    let ck = center_slice(&k.algebra)?;
    let mapping = (0..a.len())
        .map(|x| lookup(&ck, Origin::Element(lookup(&k, Origin::Pair(x, a.bottom())))))
        .collect();
    morphism(a.clone(), ck.algebra, mapping, Signature::STONE)
}

/// `β(x) = (x ∨ c, ∼x ∨ c)`, from `T` onto `K(C(T))`.
pub fn map_beta(t: &Algebra) -> Result<Morphism, ConstructionError> {
    require(t, Variety::Skanc)?;
    let t = require_kanc(t)?;
    let c = t.center().unwrap();
    let cs = center_slice(&t)?;
    let kc = kalman(&cs.algebra)?;
    let mapping = (0..t.len())
        .map(|x| {
            let u = lookup(&cs, Origin::Element(t.join(x, c)));
            let v = lookup(&cs, Origin::Element(t.join(t.knot(x), c)));
            lookup(&kc, Origin::Pair(u, v))
        })
        .collect();
    morphism(t, kc.algebra, mapping, Signature::KANC)
}

/// `δ(x) = (◊x, □x)`, embedding `T` into `M(T)`.
pub fn map_delta(t: &Algebra) -> Result<Morphism, ConstructionError> {
    require(t, Variety::Skan)?;
    let m = monteiro(t)?;
    let mapping = (0..t.len()).map(|x| lookup(&m, Origin::Pair(t.diamond(x), t.boxed(x)))).collect();
    morphism(t.clone(), m.algebra, mapping, Signature::KAN)
}

/// `t(x, y) = (x, ∼y)`, from `M(T)` onto `K(T^◊)`.
pub fn map_t(t: &Algebra) -> Result<Morphism, ConstructionError> {
    require(t, Variety::Skan)?;
    let m = monteiro(t)?;
    let d = diamond_subalgebra(t)?;
    let k = kalman(&d.algebra)?;
    let mapping = m
        .provenance
        .iter()
        .map(|o| match *o {
            Origin::Pair(x, y) => {
                let u = lookup(&d, Origin::Element(x));
                let v = lookup(&d, Origin::Element(t.knot(y)));
                lookup(&k, Origin::Pair(u, v))
            }
            _ => unreachable!("monteiro elements are pairs"),
        })
        .collect();
    morphism(m.algebra, k.algebra, mapping, Signature::KANC)
}
