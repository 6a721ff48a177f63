//! Named catalogs of laws: the defining axioms of each variety and the
//! derived properties of KAN-algebras, each kept as executable data.

use std::sync::OnceLock;

use crate::algebra::Algebra;
use crate::term::{check_quasi_identity, EvalError, Identity, Requirements};

#[derive(Debug, Clone)]
pub struct Suite {
    pub name: &'static str,
    pub citation: &'static str,
    pub laws: Vec<Identity>,
}

impl Suite {
    fn new(name: &'static str, citation: &'static str, laws: &[(&str, &str)]) -> Suite {
        let laws = laws
            .iter()
            .map(|(n, text)| Identity::parse(n, text).unwrap_or_else(|e| panic!("built-in law {n}: {e}")))
            .collect();
        Suite { name, citation, laws }
    }

    /// Symbols an algebra must carry to evaluate every law of the suite.
    pub fn requirements(&self) -> Requirements {
        self.laws.iter().fold(Requirements::default(), |r, l| r.union(l.requirements()))
    }

    pub fn applies_to(&self, alg: &Algebra) -> bool {
        let r = self.requirements();
        (!r.knot || alg.knot_table().is_some())
            && (!r.neg || alg.neg_table().is_some())
            && (!r.star || alg.pseudocomplement_table().is_ok())
            && (!r.center || alg.center().is_some())
    }

    /// Runs every law; returns `(law name, verdict, rendered counterexample)`.
    pub fn run(&self, alg: &Algebra) -> Result<Vec<LawResult>, EvalError> {
        self.laws
            .iter()
            .map(|law| {
                let v = check_quasi_identity(law, alg)?;
                Ok(LawResult {
                    name: law.name.clone(),
                    holds: v.holds,
                    counterexample: v.counterexample.map(|cx| law.bindings(alg, &cx)),
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub name: String,
    pub holds: bool,
    pub counterexample: Option<Vec<(String, String)>>,
}

pub const SUITE_NAMES: &[&str] = &[
    "kleene",
    "kan-axioms",
    "stone",
    "stone-kan",
    "pdl",
    "centered",
    "prop1",
    "prop3",
    "modal-normal",
    "moisil",
    "lemma-aux",
    "lemma-t",
    "lemma5.8",
    "auxiliar1",
    "lemma2.23",
    "center-char",
];

fn lemma_t() -> Suite {
    Suite::new("lemma-t", "KAN: diamond of x ∧ ∼x vanishes", &[("lemma-t", "<>(x & ~x) = 0")])
}

fn lemma_5_8() -> Suite {
    Suite::new(
        "lemma5.8",
        "KAN: ¬(x ∧ y) = 1 iff ¬¬x ≤ ¬y",
        &[("lemma5.8 (=>)", "!(x & y) = 1 => !!x <= !y"), ("lemma5.8 (<=)", "!!x <= !y => !(x & y) = 1")],
    )
}

fn auxiliar1() -> Suite {
    Suite::new(
        "auxiliar1",
        "KAN: ◊(x ∧ y) = 0 iff ◊x ≤ ◊¬y",
        &[("auxiliar1 (=>)", "<>(x & y) = 0 => <>x <= <>!y"), ("auxiliar1 (<=)", "<>x <= <>!y => <>(x & y) = 0")],
    )
}

fn lemma_2_23() -> Suite {
    Suite::new(
        "lemma2.23",
        "KAN: fixed points of ◊ with ◊-disjoint meet satisfy x ≤ ∼y",
        &[("lemma2.23", "<>x = x, <>y = y, <>(x & y) = 0 => x <= ~y")],
    )
}

/// Every built-in suite, in catalog order.
pub fn builtin_suites() -> &'static [Suite] {
    static SUITES: OnceLock<Vec<Suite>> = OnceLock::new();
    SUITES.get_or_init(build_suites)
}

fn build_suites() -> Vec<Suite> {
    let mut lemma_aux = Suite { name: "lemma-aux", citation: "KAN: auxiliary lemmas", laws: Vec::new() };
    for s in [lemma_t(), lemma_5_8(), auxiliar1(), lemma_2_23()] {
        lemma_aux.laws.extend(s.laws);
    }
    vec![
        Suite::new(
            "kleene",
            "Kleene algebra axioms (K1)-(K3)",
            &[("K1", "~~x = x"), ("K2", "~(x | y) = ~x & ~y"), ("K3", "x & ~x <= y | ~y")],
        ),
        Suite::new(
            "kan-axioms",
            "intuitionistic negation axioms (N1)-(N5)",
            &[
                ("N1", "!(x & !(x & y)) = !(x & !y)"),
                ("N2", "!(x | y) = !x & !y"),
                ("N3", "x & ~x = x & !x"),
                ("N4", "~x <= !x"),
                ("N5", "!(x & y) = !(~!x & y)"),
            ],
        ),
        Suite::new("stone", "Stone identity for the pseudocomplement", &[("stone", "*x | **x = 1")]),
        Suite::new("stone-kan", "Stone identity for the intuitionistic negation", &[("stone-kan", "!x | !!x = 1")]),
        Suite::new(
            "pdl",
            "pseudocomplement: x ∧ y = 0 iff x ≤ y*",
            &[("pc (=>)", "x & y = 0 => x <= *y"), ("pc (<=)", "x <= *y => x & y = 0")],
        ),
        Suite::new(
            "centered",
            "centered KAN-algebra properties",
            &[
                ("centered(1)", "!c = 1"),
                ("centered(2)", "<>c = 0, []c = 1"),
                ("centered(3)", "<>(c & []x) = 0, [](<>x | c) = 1"),
                ("centered(4)", "x = (<>x | c) & []x"),
                ("centered(5)", "x | c = <>x | c"),
            ],
        ),
        Suite::new(
            "prop1",
            "basic KAN properties",
            &[
                ("prop1(1)", "!1 = 0, !0 = 1"),
                ("prop1(2)", "x <= y => !y <= !x"),
                ("prop1(3)", "!(x & ~x) = !(x & !x) = 1"),
                ("prop1(4)", "<>0 = 0, []1 = 1"),
                ("prop1(5)", "<>1 = 1, []0 = 0"),
                ("prop1(6)", "<>x <= x <= []x"),
                ("prop1(7)", "<>x <= !!x <= []x"),
                ("prop1(8)", "!<>x = []!x = !x"),
            ],
        ),
        Suite::new(
            "prop3",
            "modal KAN properties",
            &[
                ("prop3(1)", "<><>x = <>x"),
                ("prop3(2)", "<>(x | y) = <>x | <>y"),
                ("prop3(3)", "<>(<>x & <>y) = <>(x & y)"),
                ("prop3(4)", "[][]x = []x"),
                ("prop3(5)", "[](x & y) = []x & []y"),
                ("prop3(6)", "[]([]x | []y) = [](x | y)"),
                ("prop3(7)", "x | ~x = ~x | <>x"),
                ("prop3(8)", "x & ~x = x & []~x"),
                ("prop3(9)", "x = (<>x | ~x) & []x"),
            ],
        ),
        Suite::new(
            "modal-normal",
            "◊ and □ are normal modal operators and De Morgan duals",
            &[
                ("box-normal", "[]1 = 1, [](x & y) = []x & []y"),
                ("diamond-normal", "<>0 = 0, <>(x | y) = <>x | <>y"),
                ("modal-duality", "[]x = ~<>~x, <>x = ~[]~x"),
            ],
        ),
        Suite::new(
            "moisil",
            "order determined by ◊ and □; Moisil's determination principle",
            &[
                ("prop2 (=>)", "x <= y => <>x <= <>y, []x <= []y"),
                ("prop2 (<=)", "<>x <= <>y, []x <= []y => x <= y"),
                ("moisil", "[]x = []y, <>x = <>y => x = y"),
            ],
        ),
        lemma_aux,
        lemma_t(),
        lemma_5_8(),
        auxiliar1(),
        lemma_2_23(),
        Suite::new(
            "center-char",
            "c is the center iff ◊c = 0 and □c = 1",
            &[
                ("center-char (=>)", "~x = x => <>x = 0, []x = 1"),
                ("center-char (<=)", "<>x = 0, []x = 1 => ~x = x"),
            ],
        ),
    ]
}

pub fn suite(name: &str) -> Option<&'static Suite> {
    builtin_suites().iter().find(|s| s.name == name)
}

/// The derived-identity battery every KAN-algebra must pass.
pub const KAN_THEOREM_SUITES: &[&str] =
    &["prop1", "prop3", "modal-normal", "moisil", "lemma-t", "lemma5.8", "auxiliar1", "lemma2.23", "center-char"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn catalog_is_complete_and_ordered() {
        let names: Vec<_> = builtin_suites().iter().map(|s| s.name).collect();
        assert_eq!(names, SUITE_NAMES);
    }

    #[test]
    fn suite_sizes() {
        assert_eq!(suite("prop1").unwrap().laws.len(), 8);
        assert_eq!(suite("prop3").unwrap().laws.len(), 9);
        assert_eq!(suite("kan-axioms").unwrap().laws.len(), 5);
        assert_eq!(suite("kleene").unwrap().laws.len(), 3);
        let centered = suite("centered").unwrap();
        assert_eq!(centered.laws.len(), 5);
        assert!(centered.requirements().center);
        assert_eq!(suite("lemma-aux").unwrap().laws.len(), 6);
    }

    #[test]
    fn requirements_are_derived_from_laws() {
        let r = suite("stone").unwrap().requirements();
        assert!(r.star && !r.knot && !r.neg && !r.center);
        let r = suite("prop3").unwrap().requirements();
        assert!(r.knot && r.neg && !r.star);
    }

    #[test]
    fn fixtures_pass_derived_battery() {
        for (_, alg) in fixtures::all() {
            for name in KAN_THEOREM_SUITES {
                let s = suite(name).unwrap();
                for r in s.run(&alg).unwrap() {
                    assert!(r.holds, "{} fails {} at {:?}", alg.name(), r.name, r.counterexample);
                }
            }
        }
        let c = fixtures::example_3_3();
        assert!(suite("centered").unwrap().run(&c).unwrap().iter().all(|r| r.holds));
    }

    #[test]
    fn suites_detect_missing_symbols() {
        let b = fixtures::boolean2();
        assert!(!suite("kleene").unwrap().applies_to(&b));
        assert!(suite("stone").unwrap().applies_to(&b));
        assert!(!suite("centered").unwrap().applies_to(&fixtures::example_3_4()));
    }
}
