//! Small-model generation: posets up to isomorphism, their down-set
//! lattices, and every `(∼, ¬)` table pair on a lattice satisfying a variety.

use std::path::Path;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::lattice::{Elem, FinLattice};
use crate::morphisms::{find_isomorphism, Signature};
use crate::suites::suite;
use crate::varieties::{check_variety, find_center, is_in, Variety};

pub const DEFAULT_MAX_POSET: usize = 5;
pub const DEFAULT_MAX_LATTICE: usize = 8;
pub const SIZE_ENV: &str = "KANFORGE_MAX_SIZE";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("size {requested} exceeds the enumeration bound {max} (raise it with {SIZE_ENV})")]
    BoundExceeded { requested: usize, max: usize },
    #[error("operator tables can only be enumerated for kleene, kan, kanc, skan, skanc (got {0})")]
    UnsupportedVariety(Variety),
    #[error("cannot write corpus: {0}")]
    Io(String),
}

fn env_bound() -> Option<usize> {
    std::env::var(SIZE_ENV).ok()?.trim().parse().ok()
}

/// Largest poset `enumerate_posets` accepts.
pub fn max_poset_size() -> usize {
    env_bound().map_or(DEFAULT_MAX_POSET, |b| b.max(DEFAULT_MAX_POSET))
}

/// Largest lattice `enumerate_operator_pairs` accepts.
pub fn max_lattice_size() -> usize {
    env_bound().map_or(DEFAULT_MAX_LATTICE, |b| b.max(DEFAULT_MAX_LATTICE))
}

/// A finite poset on `0..n` given by its reflexive order matrix. Enumerated
/// posets are naturally labelled: `i < j` in the order implies `i < j` as
/// integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds a poset from a relation, taking the reflexive transitive
    /// closure; `None` if the closure is not antisymmetric.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Option<Poset> {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
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
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        antisymmetric.then_some(Poset { leq })
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Element names `a`, `b`, ... used for down-set names.
    pub fn element_name(i: usize) -> char {
        (b'a' + i as u8) as char
    }

    /// Strict covering pairs, e.g. `a<c b<c`.
    pub fn describe(&self) -> String {
        let n = self.len();
        let mut parts = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]) {
                    parts.push(format!("{}<{}", Poset::element_name(i), Poset::element_name(j)));
                }
            }
        }
        if parts.is_empty() {
            format!("antichain of {n}")
        } else {
            parts.join(" ")
        }
    }

    /// Bit code of the strict order under a relabelling.
    fn code(&self, perm: &[usize]) -> u64 {
        let n = self.len();
        let mut code = 0u64;
        for i in 0..n {
            for j in 0..n {
                code <<= 1;
                if i != j && self.leq[perm[i]][perm[j]] {
                    code |= 1;
                }
            }
        }
        code
    }

    /// Least code over all relabellings: equal iff the posets are isomorphic.
    pub fn canonical_code(&self) -> u64 {
        let mut best = u64::MAX;
        for_each_permutation(self.len(), &mut |p| best = best.min(self.code(p)));
        best
    }
}

fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, f);
            p.swap(k, i);
        }
    }
    let mut p: Vec<usize> = (0..n).collect();
    rec(&mut p, 0, f);
}

/// All posets on `n` elements up to isomorphism, ordered by canonical code.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, CorpusError> {
    let max = max_poset_size();
    if n > max {
        return Err(CorpusError::BoundExceeded { requested: n, max });
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for bits in 0u64..(1 << slots.len()) {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for (k, &(i, j)) in slots.iter().enumerate() {
            leq[i][j] = bits >> k & 1 == 1;
        }
        let transitive =
            (0..n).all(|i| (i..n).all(|j| !leq[i][j] || (j..n).all(|k| !leq[j][k] || leq[i][k])));
        if transitive {
            let p = Poset { leq };
            seen.entry(p.canonical_code()).or_insert(p);
        }
    }
    Ok(seen.into_values().collect())
}

/// The lattice of down-closed subsets ordered by inclusion. Elements are
/// sorted by size then bitmask; the empty set is `0`, the full set `1`, and
/// any other down-set is named by its members (`ab`).
pub fn downset_lattice(p: &Poset) -> FinLattice {
    let n = p.len();
    let mut sets: Vec<u32> = (0u32..1 << n)
        .filter(|&s| (0..n).all(|j| s >> j & 1 == 0 || (0..n).all(|i| !p.leq(i, j) || s >> i & 1 == 1)))
        .collect();
    sets.sort_by_key(|&s| (s.count_ones(), s));
    let full = (1u32 << n) - 1;
    let names = sets
        .iter()
        .map(|&s| match s {
            0 => "0".to_string(),
            s if s == full => "1".to_string(),
            s => (0..n).filter(|&i| s >> i & 1 == 1).map(Poset::element_name).collect(),
        })
        .collect();
    let leq = sets.iter().map(|&a| sets.iter().map(|&b| a & !b == 0).collect()).collect();
    FinLattice::from_order(names, leq).expect("down-sets form a lattice")
}

/// All order-reversing involutions with `∼0 = 1`, lexicographically.
fn antitone_involutions(lat: &FinLattice) -> Vec<Vec<Elem>> {
    fn rec(lat: &FinLattice, t: &mut Vec<Option<Elem>>, x: Elem, out: &mut Vec<Vec<Elem>>) {
        let n = lat.len();
        if x == n {
            out.push(t.iter().map(|v| v.unwrap()).collect());
            return;
        }
        if t[x].is_some() {
            return rec(lat, t, x + 1, out);
        }
        for y in 0..n {
            if t[y].is_some() && y != x {
                continue;
            }
            t[x] = Some(y);
            t[y] = Some(x);
            let ok = (0..n).all(|z| match t[z] {
                None => true,
                Some(tz) => {
                    [x, y].iter().all(|&w| {
                        let tw = t[w].unwrap();
                        (!lat.leq(z, w) || lat.leq(tw, tz)) && (!lat.leq(w, z) || lat.leq(tz, tw))
                    })
                }
            });
            if ok {
                rec(lat, t, x + 1, out);
            }
            t[x] = None;
            t[y] = None;
        }
    }
    let mut t = vec![None; lat.len()];
    t[lat.bottom()] = Some(lat.top());
    t[lat.top()] = Some(lat.bottom());
    let mut out = Vec::new();
    rec(lat, &mut t, 0, &mut out);
    out
}

/// Candidate `¬` tables for a fixed `∼`: order-reversing, `¬0 = 1`,
/// `¬1 = 0`, `∼x ≤ ¬x`, `x ∧ ¬x = x ∧ ∼x`, and `¬(x ∨ y) = ¬x ∧ ¬y` wherever
/// already decidable. Final membership is decided by the full axiom check.
fn neg_candidates(lat: &FinLattice, knot: &[Elem]) -> Vec<Vec<Elem>> {
    fn rec(lat: &FinLattice, knot: &[Elem], t: &mut Vec<Option<Elem>>, x: Elem, out: &mut Vec<Vec<Elem>>) {
        let n = lat.len();
        if x == n {
            out.push(t.iter().map(|v| v.unwrap()).collect());
            return;
        }
        if t[x].is_some() {
            return rec(lat, knot, t, x + 1, out);
        }
        for y in 0..n {
            if !lat.leq(knot[x], y) || lat.meet(x, y) != lat.meet(x, knot[x]) {
                continue;
            }
            t[x] = Some(y);
            if consistent(lat, t, x) {
                rec(lat, knot, t, x + 1, out);
            }
            t[x] = None;
        }
    }
    fn consistent(lat: &FinLattice, t: &[Option<Elem>], x: Elem) -> bool {
        let tx = t[x].unwrap();
        for z in 0..lat.len() {
            let Some(tz) = t[z] else { continue };
            if lat.leq(z, x) && !lat.leq(tx, tz) || lat.leq(x, z) && !lat.leq(tz, tx) {
                return false;
            }
            if let Some(tj) = t[lat.join(x, z)]
                && tj != lat.meet(tx, tz) {
                    return false;
                }
            // x as the join of two assigned elements
            for w in 0..lat.len() {
                if let Some(tw) = t[w]
                    && lat.join(z, w) == x && tx != lat.meet(tz, tw) {
                        return false;
                    }
            }
        }
        true
    }
    let mut t = vec![None; lat.len()];
    t[lat.bottom()] = Some(lat.top());
    t[lat.top()] = Some(lat.bottom());
    let mut out = Vec::new();
    rec(lat, knot, &mut t, 0, &mut out);
    out
}

/// Every algebra on `lat` in `variety`, ordered lexicographically by
/// `(∼ table, ¬ table)`. Centered varieties get their center declared.
pub fn enumerate_operator_pairs(lat: &FinLattice, variety: Variety) -> Result<Vec<Algebra>, CorpusError> {
    enumerate_operator_pairs_bounded(lat, variety, max_lattice_size())
}

pub fn enumerate_operator_pairs_bounded(lat: &FinLattice, variety: Variety, max: usize) -> Result<Vec<Algebra>, CorpusError> {
    if matches!(variety, Variety::Pdl | Variety::Stone) {
        return Err(CorpusError::UnsupportedVariety(variety));
    }
    if lat.len() > max {
        return Err(CorpusError::BoundExceeded { requested: lat.len(), max });
    }
    let base = Algebra::new("enum", lat.clone());
    let mut out = Vec::new();
    for knot in antitone_involutions(lat) {
        let with_knot = base.clone().with_knot(knot.clone()).expect("total table");
        if !is_in(&with_knot, Variety::Kleene) {
            continue;
        }
        let center = find_center(&with_knot).ok().flatten();
        if variety.is_centered() && center.is_none() {
            continue;
        }
        if variety == Variety::Kleene {
            out.push(with_knot);
            continue;
        }
        for neg in neg_candidates(lat, &knot) {
            let mut a = with_knot.clone().with_neg(neg).expect("total table");
            if variety.is_centered() {
                a = a.with_center(center).expect("center in range");
            }
            if is_in(&a, variety) {
                out.push(a);
            }
        }
    }
    Ok(out.into_iter().enumerate().map(|(i, a)| a.with_name(format!("{variety}{i}"))).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub algebra: Algebra,
    /// Strongest variety the algebra was enumerated or classified into.
    pub variety: Variety,
    /// Source poset of the lattice, absent for hand-written fixtures.
    pub poset: Option<Poset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub deduplicated: bool,
}

#[derive(Debug, Clone)]
pub struct CorpusOptions {
    /// Posets of `1..=max_join_irreducibles` elements generate the lattices.
    pub max_join_irreducibles: usize,
    /// Keep one algebra per isomorphism class on each lattice.
    pub dedup: bool,
    pub include_fixtures: bool,
    /// Also add each lattice as a bare p-algebra.
    pub include_pdl: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { max_join_irreducibles: 4, dedup: true, include_fixtures: true, include_pdl: true }
    }
}

fn classify_kan(a: &Algebra) -> (Algebra, Variety) {
    let skan = is_in(a, Variety::Skan);
    match find_center(a).ok().flatten() {
        Some(c) => (a.clone().with_center(Some(c)).expect("center in range"), if skan { Variety::Skanc } else { Variety::Kanc }),
        None => (a.clone(), if skan { Variety::Skan } else { Variety::Kan }),
    }
}

/// Builds the default test corpus: every distributive lattice with at most
/// four join-irreducibles, each with every KAN structure (classified into
/// kan/kanc/skan/skanc) and optionally as a bare p-algebra, plus fixtures.
pub fn build_corpus(opts: &CorpusOptions) -> Result<Corpus, CorpusError> {
    let mut entries = Vec::new();
    let lattice_bound = (1usize << opts.max_join_irreducibles).max(max_lattice_size());
    for n in 1..=opts.max_join_irreducibles {
        for (pi, poset) in enumerate_posets(n)?.into_iter().enumerate() {
            let lat = downset_lattice(&poset);
            let stem = format!("p{n}_{pi}");
            if opts.include_pdl {
                let a = Algebra::new(format!("{stem}_pdl"), lat.clone());
                let v = if is_in(&a, Variety::Stone) { Variety::Stone } else { Variety::Pdl };
                entries.push(CorpusEntry { algebra: a, variety: v, poset: Some(poset.clone()) });
            }
            let mut kept: Vec<Algebra> = Vec::new();
            for a in enumerate_operator_pairs_bounded(&lat, Variety::Kan, lattice_bound)? {
                if opts.dedup && kept.iter().any(|k| find_isomorphism(k, &a, Signature::KAN).ok().flatten().is_some()) {
                    continue;
                }
                kept.push(a);
            }
            for (i, a) in kept.iter().enumerate() {
                let (a, v) = classify_kan(a);
                entries.push(CorpusEntry { algebra: a.with_name(format!("{stem}_kan{i}")), variety: v, poset: Some(poset.clone()) });
            }
        }
    }
    if opts.include_fixtures {
        for (stem, a) in crate::fixtures::all() {
            let (a, v) = classify_kan(&a);
            entries.push(CorpusEntry { algebra: a.with_name(stem), variety: v, poset: None });
        }
    }
    Ok(Corpus { entries, deduplicated: opts.dedup })
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Members whose declared variety implies `v`.
    pub fn members_in(&self, v: Variety) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(move |e| implies(e.variety, v))
    }

    /// Writes every member as `NAME.alg` under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), CorpusError> {
        std::fs::create_dir_all(dir).map_err(|e| CorpusError::Io(e.to_string()))?;
        for e in &self.entries {
            let path = dir.join(format!("{}.alg", e.algebra.name()));
            std::fs::write(&path, crate::io::print(&e.algebra)).map_err(|err| CorpusError::Io(format!("{}: {err}", path.display())))?;
        }
        Ok(())
    }
}

/// Whether membership in `a` implies membership in `b`.
pub fn implies(a: Variety, b: Variety) -> bool {
    use Variety::*;
    a == b
        || match a {
            Stone => b == Pdl,
            Kan => b == Kleene,
            Kanc => matches!(b, Kan | Kleene),
            Skan => matches!(b, Kan | Kleene),
            Skanc => matches!(b, Skan | Kanc | Kan | Kleene),
            Pdl | Kleene => false,
        }
}

/// Runs the derived-identity battery on `a`, returning failing law names.
pub fn theorem_battery_failures(a: &Algebra) -> Vec<String> {
    let mut names: Vec<&str> = crate::suites::KAN_THEOREM_SUITES.to_vec();
    if a.center().is_some() {
        names.push("centered");
    }
    let mut failures = Vec::new();
    for name in names {
        match suite(name).expect("built-in").run(a) {
            Ok(results) => failures.extend(results.into_iter().filter(|r| !r.holds).map(|r| {
                format!("{}: {} at {:?}", a.name(), r.name, r.counterexample.unwrap_or_default())
            })),
            Err(e) => failures.push(format!("{}: {name}: {e}", a.name())),
        }
    }
    failures
}

/// Re-checks a member against its declared variety.
pub fn recheck(e: &CorpusEntry) -> bool {
    check_variety(&e.algebra, e.variety).map(|r| r.verdict).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Independent oracle: every relation matrix on `n` points that is a
    /// partial order, deduplicated by canonical form.
    fn brute_force_poset_count(n: usize) -> usize {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let mut codes = std::collections::HashSet::new();
        for bits in 0u64..(1 << cells.len()) {
            let mut leq = vec![vec![false; n]; n];
            for i in 0..n {
                leq[i][i] = true;
            }
            for (k, &(i, j)) in cells.iter().enumerate() {
                leq[i][j] = bits >> k & 1 == 1;
            }
            let antisym = cells.iter().all(|&(i, j)| !(leq[i][j] && leq[j][i]));
            let trans = (0..n).all(|i| (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k])));
            if antisym && trans {
                codes.insert(Poset { leq }.canonical_code());
            }
        }
        codes.len()
    }

    #[test]
    fn poset_counts_match_brute_force() {
        for n in 1..=4 {
            assert_eq!(enumerate_posets(n).unwrap().len(), brute_force_poset_count(n), "n={n}");
        }
        assert_eq!(
            (1..=5).map(|n| enumerate_posets(n).unwrap().len()).collect::<Vec<_>>(),
            vec![1, 2, 5, 16, 63]
        );
    }

    #[test]
    fn poset_bound() {
        if std::env::var(SIZE_ENV).is_err() {
            assert_eq!(enumerate_posets(6).unwrap_err(), CorpusError::BoundExceeded { requested: 6, max: 5 });
        }
    }

    #[test]
    fn downset_lattices() {
        let anti = Poset::from_relation(2, &[]).unwrap();
        let sq = downset_lattice(&anti);
        assert_eq!(sq.names(), ["0", "a", "b", "1"]);
        assert!(!sq.leq(1, 2) && !sq.leq(2, 1));
        let chain = Poset::from_relation(2, &[(0, 1)]).unwrap();
        assert_eq!(downset_lattice(&chain).names(), ["0", "a", "1"]);
        for n in 1..=4 {
            for p in enumerate_posets(n).unwrap() {
                assert!(downset_lattice(&p).is_distributive());
            }
        }
    }

    #[test]
    fn downset_lattice_of_example_2_3_poset() {
        // join-irreducibles of ex2_3: a, b, c, 1 with a<b, a<c, b<1, c<1
        let p = Poset::from_relation(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let lat = downset_lattice(&p);
        let a = Algebra::new("d", lat);
        let ex = fixtures::example_2_3().lattice_reduct();
        assert!(find_isomorphism(&a, &ex, Signature::LATTICE).unwrap().is_some());
    }

    #[test]
    fn operator_pairs_on_small_lattices() {
        let chain3 = fixtures::example_3_3();
        let found = enumerate_operator_pairs(chain3.lattice(), Variety::Skanc).unwrap();
        assert_eq!(found, vec![chain3]);
        let two = fixtures::boolean2();
        assert_eq!(enumerate_operator_pairs(two.lattice(), Variety::Kleene).unwrap().len(), 1);
        assert!(enumerate_operator_pairs(two.lattice(), Variety::Kanc).unwrap().is_empty());
        assert!(matches!(enumerate_operator_pairs(two.lattice(), Variety::Stone), Err(CorpusError::UnsupportedVariety(_))));
    }

    #[test]
    fn example_3_4_tables_are_enumerated() {
        let t = fixtures::example_3_4();
        let found = enumerate_operator_pairs(t.lattice(), Variety::Skan).unwrap();
        assert!(found.contains(&t));
        for a in &found {
            assert!(is_in(a, Variety::Skan));
        }
    }

    /// Oracle: brute force over all `n^n × n^n` table pairs on a small lattice.
    #[test]
    fn enumeration_agrees_with_unpruned_search() {
        for lat in [fixtures::example_3_3().lattice().clone(), downset_lattice(&Poset::from_relation(2, &[]).unwrap())] {
            let n = lat.len();
            let base = Algebra::new("x", lat.clone());
            let tables: Vec<Vec<Elem>> = (0..n.pow(n as u32))
                .map(|mut c| {
                    let mut t = vec![0; n];
                    for i in (0..n).rev() {
                        t[i] = c % n;
                        c /= n;
                    }
                    t
                })
                .collect();
            let mut oracle = 0;
            for k in &tables {
                for g in &tables {
                    let a = base.clone().with_knot(k.clone()).unwrap().with_neg(g.clone()).unwrap();
                    if is_in(&a, Variety::Kan) {
                        oracle += 1;
                    }
                }
            }
            assert_eq!(enumerate_operator_pairs(&lat, Variety::Kan).unwrap().len(), oracle);
        }
    }

    #[test]
    fn implication_table() {
        assert!(implies(Variety::Skanc, Variety::Kan));
        assert!(implies(Variety::Stone, Variety::Pdl));
        assert!(!implies(Variety::Kan, Variety::Skan));
    }
}
