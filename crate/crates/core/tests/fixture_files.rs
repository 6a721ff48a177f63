use std::path::Path;

use kanforge::corpus::{build_corpus, CorpusOptions};
use kanforge::{fixtures, io};

#[test]
fn fixture_files_match_builtin_fixtures() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (stem, a) in fixtures::all() {
        let parsed = io::read_file(&dir.join(format!("{stem}.alg"))).unwrap();
        assert_eq!(parsed, a, "{stem}");
        assert_eq!(parsed.name(), stem);
    }
}

#[test]
fn written_corpus_reads_back() {
    let corpus = build_corpus(&CorpusOptions::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    corpus.write_to(dir.path()).unwrap();
    for e in &corpus.entries {
        let back = io::read_file(&dir.path().join(format!("{}.alg", e.algebra.name()))).unwrap();
        assert_eq!(back, e.algebra);
    }
}

#[test]
fn comments_and_repeated_lines_are_accepted() {
    let text = "# a chain\nalgebra c3\nelements 0 c\nelements 1\norder 0<c # bottom\norder c<1\n\
                knot 0:1 c:c\nknot 1:0\nneg 0:1 c:1 1:0\n";
    let a = io::parse(text).unwrap();
    assert_eq!(a, fixtures::example_3_3().with_center(None).unwrap());
}
