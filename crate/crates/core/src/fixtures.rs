//! The worked example algebras, built directly from their Hasse diagrams and
//! operation tables. The same algebras ship as `.alg` files under
//! `crates/core/fixtures/`.

use crate::algebra::Algebra;
use crate::lattice::{build_lattice, PosetInput};

fn tables(alg: &Algebra, rows: &[&str]) -> Vec<usize> {
    rows.iter().map(|n| alg.index_of(n).expect("fixture names are consistent")).collect()
}

/// Six-element KAN-algebra that is not Stone.
pub fn example_2_3() -> Algebra {
    let lat = build_lattice(
        &PosetInput::new(["0", "a", "b", "c", "d", "1"])
            .with("0", "a")
            .with("a", "b")
            .with("a", "c")
            .with("b", "d")
            .with("c", "d")
            .with("d", "1"),
    )
    .expect("valid lattice");
    let a = Algebra::new("ex2_3", lat);
    let knot = tables(&a, &["1", "d", "c", "b", "a", "0"]);
    let neg = tables(&a, &["1", "1", "c", "b", "a", "0"]);
    a.with_knot(knot).and_then(|a| a.with_neg(neg)).expect("valid tables")
}

/// Three-element chain `0 < c < 1`, centered Stone KAN-algebra.
pub fn example_3_3() -> Algebra {
    let lat = build_lattice(&PosetInput::new(["0", "c", "1"]).with("0", "c").with("c", "1")).expect("valid lattice");
    let a = Algebra::new("ex3_3", lat);
    let knot = tables(&a, &["1", "c", "0"]);
    let neg = tables(&a, &["1", "1", "0"]);
    let c = a.index_of("c");
    a.with_knot(knot).and_then(|a| a.with_neg(neg)).and_then(|a| a.with_center(c)).expect("valid tables")
}

/// Eight-element Stone KAN-algebra without a center.
pub fn example_3_4() -> Algebra {
    let lat = build_lattice(
        &PosetInput::new(["0", "a", "b", "c", "d", "e", "f", "1"])
            .with("0", "a")
            .with("0", "b")
            .with("a", "c")
            .with("b", "c")
            .with("c", "d")
            .with("d", "e")
            .with("d", "f")
            .with("e", "1")
            .with("f", "1"),
    )
    .expect("valid lattice");
    let a = Algebra::new("ex3_4", lat);
    let knot = tables(&a, &["1", "f", "e", "d", "c", "b", "a", "0"]);
    let neg = tables(&a, &["1", "1", "1", "1", "c", "b", "a", "0"]);
    a.with_knot(knot).and_then(|a| a.with_neg(neg)).expect("valid tables")
}

/// The two-element Boolean lattice as a bare p-algebra.
pub fn boolean2() -> Algebra {
    let lat = build_lattice(&PosetInput::new(["0", "1"]).with("0", "1")).expect("valid lattice");
    Algebra::new("bool2", lat)
}

/// The three-element chain as a bare p-algebra (Stone).
pub fn chain3() -> Algebra {
    let lat = build_lattice(&PosetInput::new(["0", "m", "1"]).with("0", "m").with("m", "1")).expect("valid lattice");
    Algebra::new("chain3", lat)
}

/// `0 < a, b < a∨b < 1`: a p-algebra that is not Stone.
pub fn non_stone_pdl() -> Algebra {
    let lat = build_lattice(
        &PosetInput::new(["0", "a", "b", "s", "1"])
            .with("0", "a")
            .with("0", "b")
            .with("a", "s")
            .with("b", "s")
            .with("s", "1"),
    )
    .expect("valid lattice");
    Algebra::new("nonstone5", lat)
}

/// Every fixture with its file stem.
pub fn all() -> Vec<(&'static str, Algebra)> {
    vec![("ex2_3", example_2_3()), ("ex3_3", example_3_3()), ("ex3_4", example_3_4())]
}
