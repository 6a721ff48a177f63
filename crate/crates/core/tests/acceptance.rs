//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use kanforge::constructions::{
    diamond_subalgebra, kalman, map_alpha, map_beta, map_delta, map_h, map_phi, map_t, monteiro, Construction,
};
use kanforge::corpus::{build_corpus, enumerate_operator_pairs, enumerate_posets, theorem_battery_failures, Corpus, CorpusOptions};
use kanforge::fixtures;
use kanforge::lattice::{build_lattice, PosetInput};
use kanforge::morphisms::{all_homomorphisms, compose, find_isomorphism, lift_morphism, Morphism, Signature};
use kanforge::varieties::{check_variety, is_in, Variety};
use kanforge::verify::verify;
use kanforge::Algebra;

type Outcome = Result<String, String>;

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| build_corpus(&CorpusOptions::default()).expect("default corpus builds"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn names(a: &Algebra) -> Vec<&str> {
    (0..a.len()).map(|x| a.element_name(x)).collect()
}

fn sorted(mut v: Vec<&str>) -> Vec<&str> {
    v.sort();
    v
}

fn fixture_verdicts() -> Outcome {
    let start = Instant::now();
    let verdict = |a: &Algebra, v: Variety| check_variety(a, v).map(|r| r.verdict).map_err(|e| e.to_string());
    let (e23, e33, e34) = (fixtures::example_2_3(), fixtures::example_3_3(), fixtures::example_3_4());
    ensure(verdict(&e23, Variety::Kan)?, || "ex2_3 fails kan".into())?;
    let r = check_variety(&e23, Variety::Skan).map_err(|e| e.to_string())?;
    ensure(!r.verdict, || "ex2_3 passes skan".into())?;
    let witness = r.failures().find(|a| a.name == "stone-kan").and_then(|a| a.render_counterexample());
    ensure(witness.as_deref() == Some("x=b"), || format!("ex2_3 skan witness {witness:?}"))?;
    ensure(verdict(&e33, Variety::Skanc)?, || "ex3_3 fails skanc".into())?;
    ensure(verdict(&e34, Variety::Skan)?, || "ex3_4 fails skan".into())?;
    ensure(!verdict(&e34, Variety::Skanc)?, || "ex3_4 passes skanc".into())?;
    let ms = start.elapsed().as_millis();
    ensure(ms < 1000, || format!("took {ms} ms"))?;
    Ok(format!("ex2_3 kan, not skan at x=b; ex3_3 skanc; ex3_4 skan, not skanc ({ms} ms)"))
}

fn diamond_of_example_3_4() -> Outcome {
    let d = diamond_subalgebra(&fixtures::example_3_4()).map_err(|e| e.to_string())?.algebra;
    ensure(names(&d) == ["0", "d", "e", "f", "1"], || format!("carrier {:?}", names(&d)))?;
    let star = d.declared_star().ok_or("no star table")?;
    let star: Vec<&str> = star.iter().map(|&y| d.element_name(y)).collect();
    ensure(star == ["1", "0", "0", "0", "0"], || format!("star {star:?}"))?;
    Ok("carrier {0,d,e,f,1}, star 0->1 and everything else ->0".into())
}

fn kalman_vs_monteiro() -> Outcome {
    let t = fixtures::example_3_4();
    let d = diamond_subalgebra(&t).map_err(|e| e.to_string())?.algebra;
    let k = kalman(&d).map_err(|e| e.to_string())?.algebra;
    let m = monteiro(&t).map_err(|e| e.to_string())?.algebra;
    let want_k = sorted(vec!["(0,1)", "(0,e)", "(0,f)", "(0,d)", "(0,0)", "(d,0)", "(e,0)", "(f,0)", "(1,0)"]);
    let want_m = sorted(vec!["(0,0)", "(0,a)", "(0,b)", "(0,c)", "(0,1)", "(d,1)", "(e,1)", "(f,1)", "(1,1)"]);
    ensure(sorted(names(&k)) == want_k, || format!("kalman carrier {:?}", names(&k)))?;
    ensure(sorted(names(&m)) == want_m, || format!("monteiro carrier {:?}", names(&m)))?;
    let found = find_isomorphism(&m, &k, Signature::KANC).map_err(|e| e.to_string())?;
    ensure(found.is_some(), || "no isomorphism found".into())?;
    let tm = map_t(&t).map_err(|e| e.to_string())?;
    ensure(tm.verified.is_isomorphism(), || format!("(x,y) -> (x,~y) is not an isomorphism: {:?}", tm.verified))?;
    ensure(tm.domain() == &m && tm.codomain() == &k, || "map endpoints differ from the constructions".into())?;
    Ok("9 + 9 elements, isomorphism found, (x,y) -> (x,~y) verifies".into())
}

fn kalman_of_two() -> Outcome {
    let k = kalman(&fixtures::boolean2()).map_err(|e| e.to_string())?.algebra;
    let chain = fixtures::example_3_3();
    let iso = find_isomorphism(&k, &chain, Signature::KANC).map_err(|e| e.to_string())?.ok_or("not isomorphic to ex3_3")?;
    let (zz, one_zero) = (k.index_of("(0,0)").ok_or("no (0,0)")?, k.index_of("(1,0)").ok_or("no (1,0)")?);
    ensure(k.neg(zz) == one_zero, || format!("neg (0,0) = {}", k.element_name(k.neg(zz))))?;
    let c = chain.center().ok_or("ex3_3 has no center")?;
    ensure(iso.apply(zz) == c && chain.neg(c) == chain.top(), || "(0,0) does not land on c with neg c = 1".into())?;
    Ok("K(2) is isomorphic to ex3_3, neg (0,0) = (1,0) matches neg c = 1".into())
}

fn corpus_battery() -> Outcome {
    let mut failures = Vec::new();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut checked = 0;
    for e in &corpus().entries {
        *counts.entry(e.variety.to_string()).or_default() += 1;
        if e.variety.is_kan() {
            checked += 1;
            failures.extend(theorem_battery_failures(&e.algebra));
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    for v in ["kan", "skan", "skanc"] {
        ensure(counts.contains_key(v), || format!("corpus has no {v} members"))?;
    }
    Ok(format!("{checked} KAN members, zero failures; corpus {counts:?}"))
}

fn equivalence_maps() -> Outcome {
    let mut tally = [0usize; 3];
    let check = |label: &str, a: &Algebra, m: Result<Morphism, kanforge::constructions::ConstructionError>, iso: bool| {
        let m = m.map_err(|e| format!("{label} on {}: {e}", a.name()))?;
        let ok = if iso { m.verified.is_isomorphism() } else { m.verified.is_embedding() };
        ensure(ok, || format!("{label} on {}: {:?}", a.name(), m.verified))
    };
    for e in &corpus().entries {
        let a = &e.algebra;
        if e.variety == Variety::Stone {
            check("alpha", a, map_alpha(a), true)?;
            tally[0] += 1;
        }
        if e.variety == Variety::Skanc {
            check("beta", a, map_beta(a), true)?;
            check("h", a, map_h(a), true)?;
            tally[1] += 1;
        }
        if e.variety.is_stone_kan() {
            check("phi", a, map_phi(a), true)?;
            check("delta", a, map_delta(a), false)?;
            tally[2] += 1;
        }
    }
    ensure(tally.iter().all(|&n| n > 0), || format!("some map was never exercised: {tally:?}"))?;
    Ok(format!("alpha {} stone, beta/h {} skanc, phi/delta {} skan members", tally[0], tally[1], tally[2]))
}

fn biconditionals() -> Outcome {
    let mut negatives = (0, 0);
    let mut positives = (0, 0);
    for e in &corpus().entries {
        let a = &e.algebra;
        if matches!(e.variety, Variety::Pdl | Variety::Stone) {
            let k = kalman(a).map_err(|err| format!("kalman {}: {err}", a.name()))?.algebra;
            let (lhs, rhs) = (is_in(&k, Variety::Skanc), is_in(a, Variety::Stone));
            ensure(lhs == rhs, || format!("{}: K(A) skanc {lhs}, A stone {rhs}", a.name()))?;
            if rhs {
                positives.0 += 1;
            } else if e.poset.is_some() {
                ensure(!is_in(&k, Variety::Skan), || format!("{}: K(A) still satisfies the Stone-KAN law", a.name()))?;
                negatives.0 += 1;
            }
        }
        if e.variety.is_kan() {
            let m = monteiro(a).map_err(|err| format!("monteiro {}: {err}", a.name()))?.algebra;
            let (lhs, rhs) = (is_in(&m, Variety::Skan), is_in(a, Variety::Skan));
            ensure(lhs == rhs, || format!("{}: M(T) skan {lhs}, T skan {rhs}", a.name()))?;
            if rhs { positives.1 += 1 } else { negatives.1 += 1 }
        }
    }
    if negatives.0 == 0 {
        return Err("vacuous: enumeration produced no non-Stone p-algebra".into());
    }
    ensure(negatives.1 > 0 && positives.0 > 0 && positives.1 > 0, || "a direction has no instances".into())?;
    Ok(format!(
        "kalman: {} stone, {} non-stone from enumeration; monteiro: {} skan, {} non-skan",
        positives.0, negatives.0, positives.1, negatives.1
    ))
}

const MIN_PAIRS: usize = 50;

fn functor_laws_for(tag: Construction, members: &[Arc<Algebra>], sig: Signature) -> Result<usize, String> {
    for a in members {
        let id = Morphism::identity(a.clone(), sig).map_err(|e| e.to_string())?;
        let lifted = lift_morphism(&id, tag).map_err(|e| format!("{tag} id on {}: {e}", a.name()))?;
        ensure(lifted.mapping().iter().enumerate().all(|(i, &j)| i == j), || format!("{tag}(id) on {} is not id", a.name()))?;
    }
    let mut homs: BTreeMap<(usize, usize), Vec<Morphism>> = BTreeMap::new();
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            let hs = all_homomorphisms(a, b, sig, 6).map_err(|e| e.to_string())?;
            homs.insert((i, j), hs);
        }
    }
    let mut pairs = 0;
    for ((i, j), fs) in &homs {
        for ((j2, _), gs) in homs.range((*j, 0)..(*j + 1, 0)) {
            debug_assert_eq!(j, j2);
            for f in fs {
                for g in gs {
                    let gf = compose(g, f).map_err(|e| e.to_string())?;
                    let lhs = lift_morphism(&gf, tag).map_err(|e| format!("{tag}(g.f) from {}: {e}", members[*i].name()))?;
                    let lf = lift_morphism(f, tag).map_err(|e| e.to_string())?;
                    let lg = lift_morphism(g, tag).map_err(|e| e.to_string())?;
                    let rhs = compose(&lg, &lf).map_err(|e| format!("{tag}: {e}"))?;
                    ensure(lhs.mapping() == rhs.mapping(), || {
                        format!("{tag}: lift(g.f) != lift(g).lift(f) for {:?} then {:?}", f.mapping(), g.mapping())
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    ensure(pairs >= MIN_PAIRS, || format!("{tag}: only {pairs} composable pairs"))?;
    Ok(pairs)
}

fn functor_laws() -> Outcome {
    let pick = |pred: &dyn Fn(Variety) -> bool, max_len: usize| -> Vec<Arc<Algebra>> {
        corpus()
            .entries
            .iter()
            .filter(|e| pred(e.variety) && e.algebra.len() <= max_len)
            .map(|e| Arc::new(e.algebra.clone()))
            .collect()
    };
    let p_algebras = pick(&|v| matches!(v, Variety::Pdl | Variety::Stone), 5);
    let kans = pick(&|v| v.is_kan(), 6);
    let centered = pick(&|v| v == Variety::Skanc, 16);
    let mut report = Vec::new();
    for (tag, members, sig) in [
        (Construction::Kalman, &p_algebras, Signature::STONE),
        (Construction::CenterSlice, &centered, Signature::KANC),
        (Construction::Diamond, &kans, Signature::KAN),
        (Construction::Theta, &kans, Signature::KAN),
        (Construction::Monteiro, &kans, Signature::KAN),
    ] {
        let n = functor_laws_for(tag, members, sig)?;
        report.push(format!("{tag} {n}"));
    }
    Ok(format!("composable pairs checked: {}", report.join(", ")))
}

fn enumeration_oracles() -> Outcome {
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_posets(n).map(|p| p.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(counts == [1, 2, 5, 16, 63], || format!("poset counts {counts:?}"))?;
    let chain = build_lattice(&PosetInput::new(["0", "c", "1"]).with("0", "c").with("c", "1")).map_err(|e| e.to_string())?;
    let found = enumerate_operator_pairs(&chain, Variety::Skanc).map_err(|e| e.to_string())?;
    ensure(found.len() == 1, || format!("{} skanc structures on the 3-chain", found.len()))?;
    ensure(found[0] == fixtures::example_3_3(), || "3-chain structure differs from ex3_3".into())?;
    Ok("posets 1, 2, 5, 16, 63; one skanc structure on the 3-chain, equal to ex3_3".into())
}

fn determinism() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bin = env!("CARGO_BIN_EXE_kanforge");
    let mut n = 0;
    for (stem, a) in fixtures::all() {
        ensure(verify(&a).to_string() == verify(&a).to_string(), || format!("{stem}: library output differs"))?;
        let path = dir.join(format!("{stem}.alg"));
        let run = || std::process::Command::new(bin).arg("verify").arg(&path).output().map_err(|e| e.to_string());
        let (first, second) = (run()?, run()?);
        ensure(first.status.success(), || format!("{stem}: verify exited {:?}", first.status.code()))?;
        ensure(first.stdout == second.stdout && first.stderr == second.stderr, || format!("{stem}: CLI output differs"))?;
        n += 1;
    }
    Ok(format!("verify output byte-identical across two runs for {n} fixtures"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("fixture verdicts", fixture_verdicts),
        ("diamond subalgebra of ex3_4", diamond_of_example_3_4),
        ("kalman of diamond vs monteiro", kalman_vs_monteiro),
        ("kalman of the two-element algebra", kalman_of_two),
        ("corpus theorem battery", corpus_battery),
        ("canonical maps on corpus", equivalence_maps),
        ("biconditionals on corpus", biconditionals),
        ("functor laws", functor_laws),
        ("enumeration oracles", enumeration_oracles),
        ("verify determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] AC{} {label}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{} {label}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
