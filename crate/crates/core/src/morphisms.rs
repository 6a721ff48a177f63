//! Homomorphisms between finite algebras: verification, composition,
//! isomorphism search, enumeration, and the action of each construction on
//! maps.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use bitflags::bitflags;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::constructions::{Construction, ConstructionError, Origin};
use crate::lattice::Elem;
use crate::varieties::Variety;

bitflags! {
    /// The operation symbols a morphism is asked to preserve.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    pub struct Signature: u8 {
        const JOIN = 1;
        const MEET = 1 << 1;
        const KNOT = 1 << 2;
        const NEG = 1 << 3;
        const STAR = 1 << 4;
        const ZERO = 1 << 5;
        const ONE = 1 << 6;
        const CENTER = 1 << 7;
    }
}

impl Signature {
    pub const LATTICE: Signature = Signature::JOIN.union(Signature::MEET).union(Signature::ZERO).union(Signature::ONE);
    pub const STONE: Signature = Signature::LATTICE.union(Signature::STAR);
    pub const KLEENE: Signature = Signature::LATTICE.union(Signature::KNOT);
    pub const KAN: Signature = Signature::KLEENE.union(Signature::NEG);
    pub const KANC: Signature = Signature::KAN.union(Signature::CENTER);

    pub fn for_variety(v: Variety) -> Signature {
        match v {
            Variety::Pdl | Variety::Stone => Signature::STONE,
            Variety::Kleene => Signature::KLEENE,
            Variety::Kan | Variety::Skan => Signature::KAN,
            Variety::Kanc | Variety::Skanc => Signature::KANC,
        }
    }

    /// The richest signature both algebras carry.
    pub fn common(a: &Algebra, b: &Algebra) -> Signature {
        let mut s = Signature::LATTICE;
        let checks: [(Signature, fn(&Algebra) -> bool); 3] = [
            (Signature::KNOT, |x: &Algebra| x.knot_table().is_some()),
            (Signature::NEG, |x: &Algebra| x.neg_table().is_some()),
            (Signature::CENTER, |x: &Algebra| x.center().is_some()),
        ];
        for (flag, present) in checks {
            if present(a) && present(b) {
                s |= flag;
            }
        }
        if !s.contains(Signature::KNOT) && a.star_table().is_ok() && b.star_table().is_ok() {
            s |= Signature::STAR;
        }
        s
    }

    fn symbol(self) -> &'static str {
        match self {
            Signature::JOIN => "join",
            Signature::MEET => "meet",
            Signature::KNOT => "knot",
            Signature::NEG => "neg",
            Signature::STAR => "star",
            Signature::ZERO => "zero",
            Signature::ONE => "one",
            Signature::CENTER => "center",
            _ => "composite",
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.iter().map(Signature::symbol).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown signature `{0}` (expected lattice or a variety name)")]
pub struct UnknownSignature(pub String);

impl FromStr for Signature {
    type Err = UnknownSignature;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "lattice" {
            return Ok(Signature::LATTICE);
        }
        s.parse::<Variety>().map(Signature::for_variety).map_err(|_| UnknownSignature(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("algebra `{algebra}` does not carry `{symbol}`")]
    SignatureMismatch { symbol: &'static str, algebra: String },
    #[error("mapping has {len} entries for a domain of {n} elements")]
    WrongLength { len: usize, n: usize },
    #[error("mapping sends element {from} to {to}, outside the codomain")]
    OutOfRange { from: Elem, to: Elem },
    #[error("codomain of the first map is not the domain of the second")]
    NotComposable,
    #[error("map is not a homomorphism for its signature")]
    NotAHomomorphism,
    #[error("cannot lift through {functor}: {reason}")]
    WrongCategory { functor: Construction, reason: String },
    #[error("lifted map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

impl From<ConstructionError> for MorphismError {
    fn from(e: ConstructionError) -> Self {
        MorphismError::Construction(e.to_string())
    }
}

/// Per-symbol preservation verdicts plus injectivity and surjectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub preserves: Vec<(&'static str, bool)>,
    pub is_hom: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl Verification {
    pub fn is_isomorphism(&self) -> bool {
        self.is_hom && self.injective && self.surjective
    }

    pub fn is_embedding(&self) -> bool {
        self.is_hom && self.injective
    }
}

struct Ops<'a> {
    knot: Option<&'a [Elem]>,
    neg: Option<&'a [Elem]>,
    star: Option<&'a [Elem]>,
    center: Option<Elem>,
}

fn ops<'a>(a: &'a Algebra, sig: Signature) -> Result<Ops<'a>, MorphismError> {
    let missing = |symbol| MorphismError::SignatureMismatch { symbol, algebra: a.name().to_string() };
    let knot = match sig.contains(Signature::KNOT) {
        true => Some(a.knot_table().ok_or_else(|| missing("knot"))?),
        false => None,
    };
    let neg = match sig.contains(Signature::NEG) {
        true => Some(a.neg_table().ok_or_else(|| missing("neg"))?),
        false => None,
    };
    let star = match sig.contains(Signature::STAR) {
        true => Some(a.star_table().map_err(|_| missing("star"))?),
        false => None,
    };
    let center = match sig.contains(Signature::CENTER) {
        true => Some(a.center().ok_or_else(|| missing("center"))?),
        false => None,
    };
    Ok(Ops { knot, neg, star, center })
}

fn unary_pairs<'a>(d: &Ops<'a>, c: &Ops<'a>) -> Vec<(&'static str, &'a [Elem], &'a [Elem])> {
    let mut v = Vec::new();
    for (name, x, y) in [("knot", d.knot, c.knot), ("neg", d.neg, c.neg), ("star", d.star, c.star)] {
        if let (Some(x), Some(y)) = (x, y) {
            v.push((name, x, y));
        }
    }
    v
}

/// Checks every symbol of `sig` by exhaustive scan.
pub fn check_homomorphism(mapping: &[Elem], dom: &Algebra, cod: &Algebra, sig: Signature) -> Result<Verification, MorphismError> {
    let n = dom.len();
    if mapping.len() != n {
        return Err(MorphismError::WrongLength { len: mapping.len(), n });
    }
    if let Some(x) = (0..n).find(|&x| mapping[x] >= cod.len()) {
        return Err(MorphismError::OutOfRange { from: x, to: mapping[x] });
    }
    let (od, oc) = (ops(dom, sig)?, ops(cod, sig)?);
    let f = |x: Elem| mapping[x];
    let all_pairs = |op: fn(&Algebra, Elem, Elem) -> Elem| {
        (0..n).all(|x| (0..n).all(|y| f(op(dom, x, y)) == op(cod, f(x), f(y))))
    };
    let mut preserves = Vec::new();
    for flag in sig.iter() {
        let ok = match flag {
            Signature::JOIN => all_pairs(Algebra::join),
            Signature::MEET => all_pairs(Algebra::meet),
            Signature::ZERO => f(dom.bottom()) == cod.bottom(),
            Signature::ONE => f(dom.top()) == cod.top(),
            Signature::CENTER => f(od.center.unwrap()) == oc.center.unwrap(),
            _ => continue,
        };
        preserves.push((flag.symbol(), ok));
    }
    for (name, td, tc) in unary_pairs(&od, &oc) {
        preserves.push((name, (0..n).all(|x| f(td[x]) == tc[f(x)])));
    }
    let mut hit = vec![false; cod.len()];
    let mut injective = true;
    for &y in mapping {
        injective &= !std::mem::replace(&mut hit[y], true);
    }
    Ok(Verification {
        is_hom: preserves.iter().all(|p| p.1),
        preserves,
        injective,
        surjective: hit.iter().all(|&h| h),
    })
}

/// A map between algebras together with its verification record, computed
/// when the morphism is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    domain: Arc<Algebra>,
    codomain: Arc<Algebra>,
    mapping: Vec<Elem>,
    pub signature: Signature,
    pub verified: Verification,
}

impl Morphism {
    pub fn new(domain: Arc<Algebra>, codomain: Arc<Algebra>, mapping: Vec<Elem>, signature: Signature) -> Result<Self, MorphismError> {
        let verified = check_homomorphism(&mapping, &domain, &codomain, signature)?;
        Ok(Morphism { domain, codomain, mapping, signature, verified })
    }

    pub fn identity(a: Arc<Algebra>, signature: Signature) -> Result<Self, MorphismError> {
        let mapping = (0..a.len()).collect();
        Morphism::new(a.clone(), a, mapping, signature)
    }

    pub fn domain(&self) -> &Algebra {
        &self.domain
    }

    pub fn codomain(&self) -> &Algebra {
        &self.codomain
    }

    pub fn domain_arc(&self) -> &Arc<Algebra> {
        &self.domain
    }

    pub fn codomain_arc(&self) -> &Arc<Algebra> {
        &self.codomain
    }

    pub fn mapping(&self) -> &[Elem] {
        &self.mapping
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.mapping[x]
    }

    pub fn image_name(&self, x: Elem) -> &str {
        self.codomain.element_name(self.mapping[x])
    }

    /// The inverse of a bijection, verified in the same signature.
    pub fn inverse(&self) -> Option<Morphism> {
        if !(self.verified.injective && self.verified.surjective) {
            return None;
        }
        let mut inv = vec![0; self.mapping.len()];
        for (x, &y) in self.mapping.iter().enumerate() {
            inv[y] = x;
        }
        Morphism::new(self.codomain.clone(), self.domain.clone(), inv, self.signature).ok()
    }

    /// Renders `x -> f(x)` one pair per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (x, &y) in self.mapping.iter().enumerate() {
            out.push_str(&format!("{} -> {}\n", self.domain.element_name(x), self.codomain.element_name(y)));
        }
        out
    }
}

fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `g ∘ f`: first `f`, then `g`. The codomain of `f` must be the domain of
/// `g`, either the same value or structurally equal.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism, MorphismError> {
    if !same_algebra(&f.codomain, &g.domain) {
        return Err(MorphismError::NotComposable);
    }
    let mapping = f.mapping.iter().map(|&y| g.mapping[y]).collect();
    Morphism::new(f.domain.clone(), g.codomain.clone(), mapping, f.signature & g.signature)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Invariant {
    rank: usize,
    down: usize,
    up: usize,
    knot_orbit: usize,
    neg_rank: usize,
    star_rank: usize,
    is_center: bool,
}

fn invariants(a: &Algebra, o: &Ops<'_>) -> Vec<Invariant> {
    let ranks = a.lattice().ranks();
    let mut down = vec![0; a.len()];
    let mut up = vec![0; a.len()];
    for (x, y) in a.lattice().covers() {
        up[x] += 1;
        down[y] += 1;
    }
    (0..a.len())
        .map(|x| Invariant {
            rank: ranks[x],
            down: down[x],
            up: up[x],
            knot_orbit: o.knot.map_or(0, |k| if k[x] == x { 1 } else { 2 }),
            neg_rank: o.neg.map_or(0, |t| ranks[t[x]]),
            star_rank: o.star.map_or(0, |t| ranks[t[x]]),
            is_center: o.center == Some(x),
        })
        .collect()
}

struct Search<'a> {
    a: &'a Algebra,
    b: &'a Algebra,
    unary: Vec<(&'static str, &'a [Elem], &'a [Elem])>,
    candidates: Vec<Vec<Elem>>,
    map: Vec<Option<Elem>>,
    used: Vec<bool>,
    /// Isomorphism search demands order reflection and injectivity.
    bijective: bool,
}

impl Search<'_> {
    fn consistent(&self, x: Elem) -> bool {
        let fx = self.map[x].unwrap();
        for z in 0..self.a.len() {
            let Some(fz) = self.map[z] else { continue };
            if self.a.leq(z, x) && !self.b.leq(fz, fx) || self.a.leq(x, z) && !self.b.leq(fx, fz) {
                return false;
            }
            if self.bijective && (self.b.leq(fz, fx) && !self.a.leq(z, x) || self.b.leq(fx, fz) && !self.a.leq(x, z)) {
                return false;
            }
            if !self.bijective {
                for (p, q) in [(x, z), (z, x)] {
                    for op in [Algebra::join, Algebra::meet] {
                        if let Some(fr) = self.map[op(self.a, p, q)]
                            && fr != op(self.b, self.map[p].unwrap(), self.map[q].unwrap()) {
                                return false;
                            }
                    }
                }
            }
        }
        for &(_, ta, tb) in &self.unary {
            // x as argument, and x as value of an assigned argument
            if let Some(fy) = self.map[ta[x]]
                && fy != tb[fx] {
                    return false;
                }
            for z in 0..self.a.len() {
                if ta[z] == x
                    && let Some(fz) = self.map[z]
                        && tb[fz] != fx {
                            return false;
                        }
            }
        }
        true
    }

    /// Depth-first over domain elements in index order, candidates ascending,
    /// so solutions arrive in lexicographic order of the mapping vector.
    fn run(&mut self, x: Elem, out: &mut Vec<Vec<Elem>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if x == self.a.len() {
            out.push(self.map.iter().map(|m| m.unwrap()).collect());
            return;
        }
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.bijective && self.used[y] {
                continue;
            }
            self.map[x] = Some(y);
            if self.consistent(x) {
                self.used[y] = true;
                self.run(x + 1, out, limit);
                self.used[y] = false;
                if out.len() >= limit {
                    self.map[x] = None;
                    return;
                }
            }
            self.map[x] = None;
        }
    }
}

/// The lexicographically least isomorphism `a → b` preserving `sig`, if any.
pub fn find_isomorphism(a: &Algebra, b: &Algebra, sig: Signature) -> Result<Option<Morphism>, MorphismError> {
    let (oa, ob) = (ops(a, sig)?, ops(b, sig)?);
    if a.len() != b.len() {
        return Ok(None);
    }
    let (ia, ib) = (invariants(a, &oa), invariants(b, &ob));
    let mut by_inv: HashMap<Invariant, Vec<Elem>> = HashMap::new();
    for (y, inv) in ib.iter().enumerate() {
        by_inv.entry(*inv).or_default().push(y);
    }
    let candidates: Vec<Vec<Elem>> = ia.iter().map(|inv| by_inv.get(inv).cloned().unwrap_or_default()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut search = Search {
        a,
        b,
        unary: unary_pairs(&oa, &ob),
        candidates,
        map: vec![None; a.len()],
        used: vec![false; b.len()],
        bijective: true,
    };
    let mut out = Vec::new();
    search.run(0, &mut out, 1);
    match out.pop() {
        None => Ok(None),
        Some(mapping) => {
            let m = Morphism::new(Arc::new(a.clone()), Arc::new(b.clone()), mapping, sig)?;
            debug_assert!(m.verified.is_isomorphism());
            Ok(Some(m))
        }
    }
}

/// All homomorphisms `a → b` preserving `sig`, in lexicographic order of
/// the mapping, at most `limit` of them.
pub fn all_homomorphisms(a: &Arc<Algebra>, b: &Arc<Algebra>, sig: Signature, limit: usize) -> Result<Vec<Morphism>, MorphismError> {
    let (oa, ob) = (ops(a, sig)?, ops(b, sig)?);
    let mut candidates = vec![(0..b.len()).collect::<Vec<_>>(); a.len()];
    let mut pin = |x: Elem, y: Elem| {
        candidates[x].retain(|&c| c == y);
    };
    if sig.contains(Signature::ZERO) {
        pin(a.bottom(), b.bottom());
    }
    if sig.contains(Signature::ONE) {
        pin(a.top(), b.top());
    }
    if let (Some(ca), Some(cb)) = (oa.center, ob.center) {
        pin(ca, cb);
    }
    let mut search = Search {
        a,
        b,
        unary: unary_pairs(&oa, &ob),
        candidates,
        map: vec![None; a.len()],
        used: vec![false; b.len()],
        bijective: false,
    };
    let mut out = Vec::new();
    search.run(0, &mut out, limit);
    out.into_iter()
        .map(|m| Morphism::new(a.clone(), b.clone(), m, sig))
        .filter(|r| r.as_ref().map_or(true, |m| m.verified.is_hom))
        .collect()
}

fn wrong(functor: Construction, reason: impl Into<String>) -> MorphismError {
    MorphismError::WrongCategory { functor, reason: reason.into() }
}

/// The image of `f` under a construction: `K(f)`, `M(f)`, `C(f)`, `f^◊` or
/// `f^θ`, verified in the target signature.
pub fn lift_morphism(f: &Morphism, functor: Construction) -> Result<Morphism, MorphismError> {
    if !f.verified.is_hom {
        return Err(MorphismError::NotAHomomorphism);
    }
    let need = match functor {
        Construction::Kalman => Signature::STONE,
        Construction::CenterSlice => Signature::KANC,
        Construction::Monteiro | Construction::Diamond | Construction::Theta => Signature::KAN,
        Construction::Box => return Err(wrong(functor, "no action on maps is defined")),
    };
    if !f.signature.contains(need) {
        return Err(wrong(functor, format!("map preserves {} but {} is required", f.signature, need)));
    }
    let build = |a: &Algebra| functor.apply(a).map_err(|e| wrong(functor, e.to_string()));
    let (src, dst) = (build(f.domain())?, build(f.codomain())?);
    let n = src.algebra.len();
    let mut mapping = Vec::with_capacity(n);
    for e in 0..n {
        let image = match &src.provenance[e] {
            Origin::Pair(x, y) => dst.pair(f.apply(*x), f.apply(*y)),
            Origin::Element(x) => match functor {
                Construction::Diamond => dst.find(&Origin::Element(f.codomain().diamond(f.apply(*x)))),
                _ => dst.find(&Origin::Element(f.apply(*x))),
            },
            Origin::Class(members) => {
                let classes: Vec<Option<Elem>> = members.iter().map(|&m| dst.image_of(f.apply(m))).collect();
                if classes.windows(2).any(|w| w[0] != w[1]) {
                    return Err(MorphismError::NotWellDefined(format!(
                        "class {} has members landing in different classes",
                        src.algebra.element_name(e)
                    )));
                }
                classes[0]
            }
        };
        let image = image.ok_or_else(|| {
            MorphismError::NotWellDefined(format!("no image for {} in {}", src.algebra.element_name(e), dst.algebra.name()))
        })?;
        mapping.push(image);
    }
    let sig = match functor {
        Construction::Kalman | Construction::Monteiro => Signature::KANC,
        _ => Signature::STONE,
    };
    Morphism::new(Arc::new(src.algebra), Arc::new(dst.algebra), mapping, sig)
}
