//! The theorem battery behind `kanforge verify`: detect the strongest
//! variety an algebra belongs to, then run every derived law, construction
//! and canonical-map check that applies to it.

use std::fmt;

use crate::algebra::Algebra;
use crate::constructions::{
    box_subalgebra, center_slice, diamond_subalgebra, kalman, map_alpha, map_beta, map_delta, map_h, map_phi, map_t,
    monteiro, theta_quotient, ConstructionError,
};
use crate::morphisms::{find_isomorphism, Morphism, Signature};
use crate::suites::{suite, KAN_THEOREM_SUITES};
use crate::varieties::{
    check_center_characterization, check_qwp, check_variety, find_center, is_in, strongest_variety, with_found_center,
    Variety,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub algebra: String,
    pub variety: Option<Variety>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.variety.is_some() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variety {
            Some(v) => writeln!(f, "algebra {}: strongest variety {v}", self.algebra)?,
            None => writeln!(f, "algebra {}: in none of the supported varieties", self.algebra)?,
        }
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "{} checks, {} failed", self.checks.len(), self.failures())
    }
}

struct Battery {
    checks: Vec<Check>,
}

impl Battery {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    fn variety(&mut self, label: &str, a: &Algebra, v: Variety) {
        match check_variety(a, v) {
            Ok(r) => {
                let detail = r.failures().next().map(|f| match f.render_counterexample() {
                    Some(cx) => format!("{} fails at {cx}", f.name),
                    None => format!("{} fails", f.name),
                });
                self.push(format!("{label} is {v}"), r.verdict, detail);
            }
            Err(e) => self.push(format!("{label} is {v}"), false, Some(e.to_string())),
        }
    }

    fn suite(&mut self, a: &Algebra, name: &str) {
        let s = suite(name).expect("built-in suite");
        match s.run(a) {
            Ok(results) => {
                for r in results {
                    let detail = r.counterexample.map(|cx| {
                        cx.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
                    });
                    self.push(format!("law {}", r.name), r.holds, detail.map(|d| format!("counterexample {d}")));
                }
            }
            Err(e) => self.push(format!("suite {name}"), false, Some(e.to_string())),
        }
    }

    fn construct(&mut self, name: &str, r: Result<Algebra, ConstructionError>) -> Option<Algebra> {
        match r {
            Ok(a) => {
                self.push(format!("{name} builds ({} elements)", a.len()), true, None);
                Some(a)
            }
            Err(e) => {
                self.push(format!("{name} builds"), false, Some(e.to_string()));
                None
            }
        }
    }

    fn map(&mut self, name: &str, r: Result<Morphism, ConstructionError>, want_iso: bool) {
        let (passed, detail) = match r {
            Ok(m) if want_iso => (m.verified.is_isomorphism(), describe(&m)),
            Ok(m) => {
                let ok = m.verified.is_embedding();
                (ok, if ok { None } else { describe(&m) })
            }
            Err(e) => (false, Some(e.to_string())),
        };
        let kind = if want_iso { "isomorphism" } else { "embedding" };
        self.push(format!("{name} is an {kind}"), passed, detail);
    }

    fn iso(&mut self, name: &str, a: &Algebra, b: &Algebra, sig: Signature) {
        let (passed, detail) = match find_isomorphism(a, b, sig) {
            Ok(Some(_)) => (true, None),
            Ok(None) => (false, Some("no isomorphism".to_string())),
            Err(e) => (false, Some(e.to_string())),
        };
        self.push(name, passed, detail);
    }
}

fn describe(m: &Morphism) -> Option<String> {
    let v = &m.verified;
    let failed: Vec<&str> = v.preserves.iter().filter(|p| !p.1).map(|p| p.0).collect();
    if !failed.is_empty() {
        return Some(format!("does not preserve {}", failed.join(", ")));
    }
    match (v.injective, v.surjective) {
        (true, true) => None,
        (false, _) => Some("not injective".into()),
        (true, false) => Some("not surjective".into()),
    }
}

fn built(r: Result<crate::constructions::ConstructedAlgebra, ConstructionError>) -> Result<Algebra, ConstructionError> {
    r.map(|c| c.algebra)
}

fn stone_checks(b: &mut Battery, a: &Algebra) {
    if let Some(k) = b.construct("kalman", built(kalman(a))) {
        b.variety("kalman", &k, Variety::Skanc);
        if let Some(d) = b.construct("diamond of kalman", built(diamond_subalgebra(&k))) {
            b.iso("diamond of kalman is isomorphic to the input", &d, a, Signature::STONE);
        }
    }
    b.map("alpha into center slice of kalman", map_alpha(a), true);
}

fn kan_checks(b: &mut Battery, t: &Algebra, v: Variety) {
    for name in KAN_THEOREM_SUITES {
        b.suite(t, name);
    }
    match check_qwp(t) {
        Ok(r) => {
            let detail = match (r.qwp_failure, r.wp_failure) {
                (Some(x), _) => Some(format!("¬ is not the maximum at x={}", t.element_name(x))),
                (None, Some((x, y))) => Some(format!("wp condition fails at x={}, y={}", t.element_name(x), t.element_name(y))),
                (None, None) => None,
            };
            b.push("¬ is the quasi weak pseudocomplement of ∼", r.holds, detail);
        }
        Err(e) => b.push("¬ is the quasi weak pseudocomplement of ∼", false, Some(e.to_string())),
    }
    match (check_center_characterization(t), find_center(t)) {
        (Ok(verdict), Ok(center)) => {
            let agree = center.is_none_or(|c| t.diamond(c) == t.bottom() && t.boxed(c) == t.top());
            let detail = verdict.counterexample.map(|cx| format!("disagrees at {}", t.element_name(cx[0])));
            b.push("center iff ◊c = 0 and □c = 1", verdict.holds && agree, detail);
        }
        (Err(e), _) => b.push("center iff ◊c = 0 and □c = 1", false, Some(e.to_string())),
        (_, Err(e)) => b.push("center iff ◊c = 0 and □c = 1", false, Some(e.to_string())),
    }

    let stone_like = if v.is_stone_kan() { Variety::Stone } else { Variety::Pdl };
    if let Some(d) = b.construct("diamond", built(diamond_subalgebra(t))) {
        b.variety("diamond", &d, stone_like);
    }
    if let Some(bx) = b.construct("box", built(box_subalgebra(t))) {
        let size_ok = bx.len() == t.diamond_table().map_or(0, |d| (0..t.len()).filter(|&x| d[x] == x).count());
        b.push("box has as many elements as diamond", size_ok, None);
    }
    if let Some(q) = b.construct("theta", built(theta_quotient(t))) {
        b.variety("theta", &q, stone_like);
    }
    let monteiro_variety = if v.is_stone_kan() { Variety::Skanc } else { Variety::Kanc };
    if let Some(m) = b.construct("monteiro", built(monteiro(t))) {
        b.variety("monteiro", &m, monteiro_variety);
    }

    if v.is_stone_kan() {
        b.map("phi from theta to diamond", map_phi(t), true);
        b.map("delta into monteiro", map_delta(t), false);
        b.map("t from monteiro to kalman of diamond", map_t(t), true);
    }
    if v.is_centered() {
        b.suite(t, "centered");
        let stone_slice = if v == Variety::Skanc { Variety::Stone } else { Variety::Pdl };
        if let Some(cs) = b.construct("center slice", built(center_slice(t))) {
            b.variety("center slice", &cs, stone_slice);
        }
    }
    if v == Variety::Skanc {
        b.map("h from diamond to center slice", map_h(t), true);
        b.map("beta into kalman of center slice", map_beta(t), true);
        if let Ok(m) = monteiro(t) {
            b.iso("monteiro is isomorphic to the input", &m.algebra, t, Signature::KANC);
        }
        let ks: Vec<Option<Algebra>> = [theta_quotient(t), diamond_subalgebra(t), center_slice(t)]
            .into_iter()
            .map(|r| r.and_then(|c| kalman(&c.algebra)).ok().map(|k| k.algebra))
            .collect();
        if let [Some(kq), Some(kd), Some(kc)] = &ks[..] {
            b.iso("kalman of theta is isomorphic to kalman of diamond", kq, kd, Signature::KANC);
            b.iso("kalman of diamond is isomorphic to kalman of center slice", kd, kc, Signature::KANC);
        } else {
            b.push("kalman of theta, diamond and center slice build", false, None);
        }
    }
}

/// Runs the battery. The input's center, when `∼` has exactly one fixed
/// point, is declared before anything else runs.
pub fn verify(a: &Algebra) -> VerifyReport {
    let a = with_found_center(a).unwrap_or_else(|| a.clone());
    let variety = strongest_variety(&a);
    let mut b = Battery { checks: Vec::new() };
    if let Some(v) = variety {
        b.variety("input", &a, v);
        match v {
            Variety::Stone => stone_checks(&mut b, &a),
            Variety::Pdl => {
                if let Some(k) = b.construct("kalman", built(kalman(&a))) {
                    b.variety("kalman", &k, Variety::Kanc);
                    let skan = is_in(&k, Variety::Skan);
                    b.push("kalman is not Stone since the input is not", !skan, None);
                }
            }
            Variety::Kleene => {}
            _ => kan_checks(&mut b, &a, v),
        }
    }
    VerifyReport { algebra: a.name().to_string(), variety, checks: b.checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_pass_their_battery() {
        for (_, a) in fixtures::all() {
            let r = verify(&a);
            assert!(r.passed(), "{r}");
        }
        assert_eq!(verify(&fixtures::example_2_3()).variety, Some(Variety::Kan));
        assert_eq!(verify(&fixtures::example_3_3()).variety, Some(Variety::Skanc));
        assert_eq!(verify(&fixtures::example_3_4()).variety, Some(Variety::Skan));
    }

    #[test]
    fn p_algebras() {
        let r = verify(&fixtures::boolean2());
        assert_eq!(r.variety, Some(Variety::Stone));
        assert!(r.passed(), "{r}");
        let r = verify(&fixtures::non_stone_pdl());
        assert_eq!(r.variety, Some(Variety::Pdl));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn rendering_is_stable() {
        let a = fixtures::example_3_4();
        assert_eq!(verify(&a).to_string(), verify(&a).to_string());
        let text = verify(&a).to_string();
        assert!(text.starts_with("algebra ex3_4: strongest variety skan\nPASS input is skan\n"));
        assert!(text.ends_with(" failed\n"));
    }
}
