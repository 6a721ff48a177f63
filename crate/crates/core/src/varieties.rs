//! Variety membership: p-algebras, Stone, Kleene, KAN and the Stone/centered
//! refinements. Each check produces a per-axiom report with counterexamples.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, UnaryOp};
use crate::lattice::Elem;
use crate::suites::{suite, LawResult};
use crate::term::{EvalError, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variety {
    Pdl,
    Stone,
    Kleene,
    Kan,
    Kanc,
    Skan,
    Skanc,
}

impl Variety {
    pub const ALL: [Variety; 7] =
        [Variety::Pdl, Variety::Stone, Variety::Kleene, Variety::Kan, Variety::Kanc, Variety::Skan, Variety::Skanc];

    pub fn as_str(self) -> &'static str {
        match self {
            Variety::Pdl => "pdl",
            Variety::Stone => "stone",
            Variety::Kleene => "kleene",
            Variety::Kan => "kan",
            Variety::Kanc => "kanc",
            Variety::Skan => "skan",
            Variety::Skanc => "skanc",
        }
    }

    pub fn is_kan(self) -> bool {
        matches!(self, Variety::Kan | Variety::Kanc | Variety::Skan | Variety::Skanc)
    }

    pub fn is_stone_kan(self) -> bool {
        matches!(self, Variety::Skan | Variety::Skanc)
    }

    pub fn is_centered(self) -> bool {
        matches!(self, Variety::Kanc | Variety::Skanc)
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown variety `{0}` (expected one of pdl, stone, kleene, kan, kanc, skan, skanc)")]
pub struct UnknownVariety(pub String);

impl FromStr for Variety {
    type Err = UnknownVariety;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variety::ALL.into_iter().find(|v| v.as_str() == s).ok_or_else(|| UnknownVariety(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<IndexMap<String, String>>,
}

impl AxiomResult {
    fn new(name: impl Into<String>, verdict: bool, cx: Option<Vec<(String, String)>>) -> Self {
        AxiomResult { name: name.into(), verdict, counterexample: cx.map(|v| v.into_iter().collect()) }
    }

    pub fn render_counterexample(&self) -> Option<String> {
        self.counterexample
            .as_ref()
            .map(|m| m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", "))
    }
}

impl From<LawResult> for AxiomResult {
    fn from(r: LawResult) -> Self {
        AxiomResult::new(r.name, r.holds, r.counterexample)
    }
}

/// Outcome of a variety check. `verdict` is the conjunction of the axiom
/// verdicts; `derived` records facts computed on the way (center, `*` table).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyReport {
    pub variety: Variety,
    pub verdict: bool,
    pub axioms: Vec<AxiomResult>,
    #[serde(skip)]
    pub derived: Vec<(String, String)>,
}

impl VarietyReport {
    fn push(&mut self, a: AxiomResult) {
        self.verdict &= a.verdict;
        self.axioms.push(a);
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.axioms.iter().filter(|a| !a.verdict)
    }

    /// Center found or confirmed during the check, by name.
    pub fn center(&self) -> Option<&str> {
        self.derived.iter().find(|(k, _)| k == "center").map(|(_, v)| v.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VarietyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variety {}: {}", self.variety, if self.verdict { "PASS" } else { "FAIL" })?;
        for a in &self.axioms {
            write!(f, "  {:<20} {}", a.name, if a.verdict { "ok" } else { "FAILS" })?;
            if let Some(cx) = a.render_counterexample() {
                write!(f, "  counterexample: {cx}")?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.derived {
            writeln!(f, "  {k}: {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("∼ has several fixed points: {0:?}")]
    MultipleFixedPoints(Vec<Elem>),
}

fn lift_eval(e: EvalError) -> AlgebraError {
    match e {
        EvalError::Algebra(a) => a,
        EvalError::UnboundVariable(v) => unreachable!("built-in laws bind every variable (#{v})"),
    }
}

fn run_suite(report: &mut VarietyReport, alg: &Algebra, name: &str) -> Result<(), AlgebraError> {
    let s = suite(name).expect("built-in suite");
    for r in s.run(alg).map_err(lift_eval)? {
        report.push(r.into());
    }
    Ok(())
}

fn render_table(alg: &Algebra, table: &[Elem]) -> String {
    table
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{}:{}", alg.element_name(x), alg.element_name(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Checks every axiom of `variety` on `a`.
///
/// Fails only when `a` lacks an operation the variety's signature needs;
/// mathematical failures (including a missing pseudocomplement or a missing
/// center) are failing report entries.
pub fn check_variety(a: &Algebra, variety: Variety) -> Result<VarietyReport, AlgebraError> {
    if variety >= Variety::Kleene && a.knot_table().is_none() {
        return Err(AlgebraError::MissingOperation(UnaryOp::Knot));
    }
    if variety.is_kan() && a.neg_table().is_none() {
        return Err(AlgebraError::MissingOperation(UnaryOp::Neg));
    }
    let mut report = VarietyReport { variety, verdict: true, axioms: Vec::new(), derived: Vec::new() };
    let lat = a.lattice();
    let witness = lat.distributivity_witness();
    report.push(AxiomResult::new(
        "distributive",
        witness.is_none(),
        witness.map(|(x, y, z)| {
            vec![
                ("x".to_string(), lat.name(x).to_string()),
                ("y".to_string(), lat.name(y).to_string()),
                ("z".to_string(), lat.name(z).to_string()),
            ]
        }),
    ));

    match variety {
        Variety::Pdl | Variety::Stone => match a.pseudocomplement_table() {
            Err(x) => report.push(AxiomResult::new(
                "pseudocomplement",
                false,
                Some(vec![("x".to_string(), a.element_name(x).to_string())]),
            )),
            Ok(star) => {
                report.push(AxiomResult::new("pseudocomplement", true, None));
                if let Some(declared) = a.declared_star() {
                    let bad = (0..a.len()).find(|&x| declared[x] != star[x]);
                    report.push(AxiomResult::new(
                        "declared-star",
                        bad.is_none(),
                        bad.map(|x| vec![("x".to_string(), a.element_name(x).to_string())]),
                    ));
                }
                report.derived.push(("star".to_string(), render_table(a, star)));
                run_suite(&mut report, a, "pdl")?;
                if variety == Variety::Stone {
                    run_suite(&mut report, a, "stone")?;
                }
            }
        },
        _ => {
            run_suite(&mut report, a, "kleene")?;
            if variety.is_kan() {
                run_suite(&mut report, a, "kan-axioms")?;
            }
            if variety.is_stone_kan() {
                run_suite(&mut report, a, "stone-kan")?;
            }
            if variety.is_centered() {
                push_center(&mut report, a);
            }
        }
    }
    Ok(report)
}

fn push_center(report: &mut VarietyReport, a: &Algebra) {
    let entry = match a.center() {
        Some(c) => {
            let ok = a.knot(c) == c;
            if ok {
                report.derived.push(("center".into(), a.element_name(c).into()));
            }
            AxiomResult::new("center", ok, (!ok).then(|| vec![("c".into(), a.element_name(c).into())]))
        }
        None => match find_center(a) {
            Ok(Some(c)) => {
                report.derived.push(("center".into(), a.element_name(c).into()));
                AxiomResult::new("center", true, None)
            }
            Ok(None) => AxiomResult::new("center", false, None),
            Err(CenterError::MultipleFixedPoints(fps)) => AxiomResult::new(
                "center",
                false,
                Some(fps.iter().enumerate().map(|(i, &c)| (format!("c{}", i + 1), a.element_name(c).into())).collect()),
            ),
            Err(CenterError::Algebra(_)) => AxiomResult::new("center", false, None),
        },
    };
    report.push(entry);
}

pub fn is_in(a: &Algebra, variety: Variety) -> bool {
    check_variety(a, variety).map(|r| r.verdict).unwrap_or(false)
}

/// The unique fixed point of `∼`, if any.
pub fn find_center(a: &Algebra) -> Result<Option<Elem>, CenterError> {
    a.table(UnaryOp::Knot)?;
    let fps = a.knot_fixed_points();
    match fps.len() {
        0 => Ok(None),
        1 => Ok(Some(fps[0])),
        _ => Err(CenterError::MultipleFixedPoints(fps)),
    }
}

/// `a` with its center declared, when `∼` has exactly one fixed point.
pub fn with_found_center(a: &Algebra) -> Option<Algebra> {
    if a.center().is_some() {
        return Some(a.clone());
    }
    let c = find_center(a).ok().flatten()?;
    a.clone().with_center(Some(c)).ok()
}

/// Pointwise: `∼e = e` iff `◊e = 0` and `□e = 1`. Returns the first element
/// where the two sides disagree.
pub fn check_center_characterization(a: &Algebra) -> Result<Verdict, AlgebraError> {
    let (knot, dia, bx) = (a.table(UnaryOp::Knot)?, a.table(UnaryOp::Diamond)?, a.table(UnaryOp::Box)?);
    let bad = (0..a.len()).find(|&e| (knot[e] == e) != (dia[e] == a.bottom() && bx[e] == a.top()));
    Ok(Verdict { holds: bad.is_none(), counterexample: bad.map(|e| vec![e]) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QwpReport {
    pub holds: bool,
    /// First `x` where `¬x` is not `max {y : x ∧ y ≤ ∼x}`.
    pub qwp_failure: Option<Elem>,
    /// First `(x, y)` where `¬(x ∧ y) = 1` and `¬¬x ≤ ¬y` disagree.
    pub wp_failure: Option<(Elem, Elem)>,
}

/// Checks that `¬` is the quasi weak pseudocomplement of `∼` and that the
/// weak pseudocomplementation condition holds.
pub fn check_qwp(a: &Algebra) -> Result<QwpReport, AlgebraError> {
    let knot = a.table(UnaryOp::Knot)?;
    let neg = a.table(UnaryOp::Neg)?;
    let n = a.len();
    let qwp_failure = (0..n).find(|&x| {
        let set: Vec<Elem> = (0..n).filter(|&y| a.leq(a.meet(x, y), knot[x])).collect();
        let max = set.iter().copied().find(|&m| set.iter().all(|&y| a.leq(y, m)));
        max != Some(neg[x])
    });
    let mut wp_failure = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let lhs = neg[a.meet(x, y)] == a.top();
            let rhs = a.leq(neg[neg[x]], neg[y]);
            if lhs != rhs {
                wp_failure = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(QwpReport { holds: qwp_failure.is_none() && wp_failure.is_none(), qwp_failure, wp_failure })
}

pub fn diamond_of(a: &Algebra, x: Elem) -> Result<Elem, AlgebraError> {
    a.apply(UnaryOp::Diamond, x)
}

pub fn box_of(a: &Algebra, x: Elem) -> Result<Elem, AlgebraError> {
    a.apply(UnaryOp::Box, x)
}

/// The most specific variety `a` belongs to, trying the richest signature
/// the algebra carries first.
pub fn strongest_variety(a: &Algebra) -> Option<Variety> {
    let order: &[Variety] = match (a.knot_table().is_some(), a.neg_table().is_some()) {
        (true, true) => &[Variety::Skanc, Variety::Skan, Variety::Kanc, Variety::Kan, Variety::Kleene],
        (true, false) => &[Variety::Kleene],
        _ => &[Variety::Stone, Variety::Pdl],
    };
    order.iter().copied().find(|&v| is_in(a, v))
}
