use std::fs;
use std::path::Path;

use thfa::cli::{run, EXIT_BUDGET, EXIT_DIFFERENT, EXIT_INPUT, EXIT_OK};
use thfa::format::{parse_document, Document};
use thfa::HesitantLanguage;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn thfa(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("thfa").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_fixture_words() {
    assert_eq!(thfa(&["eval", &fixture("m1.json"), "a"]), (EXIT_OK, "{1/2, 3/5, 9/10}\n".into(), String::new()));
    assert_eq!(thfa(&["eval", &fixture("m1.json"), "--lambda"]).1, "{1/10}\n");
    assert_eq!(thfa(&["eval", &fixture("m1.json"), ""]).1, "{1/10}\n");
    assert_eq!(thfa(&["eval", &fixture("n1.json"), "a"]).1, "{2/5, 4/5}\n");
    assert_eq!(thfa(&["eval", &fixture("ends-ab.json"), "bab"]).1, "accepted\n");
    assert_eq!(thfa(&["eval", &fixture("even-a.json"), "ab"]).1, "rejected\n");
    let (code, _, err) = thfa(&["eval", &fixture("m1.json"), "ab"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("b"), "{err}");
}

#[test]
fn range_and_equiv() {
    assert_eq!(thfa(&["range", &fixture("const-half.json")]), (EXIT_OK, "{1/2}\n".into(), String::new()));
    assert_eq!(thfa(&["equiv", &fixture("m1.json"), &fixture("m1.json")]).1, "equivalent\n");
    let (code, out, _) = thfa(&["equiv", &fixture("ab.json"), &fixture("const-half.json")]);
    assert_eq!(code, EXIT_DIFFERENT);
    assert!(out.starts_with("not equivalent\ncounterexample: λ\n"), "{out}");
    let (code, _, err) = thfa(&["equiv", &fixture("m1.json"), &fixture("ab.json")]);
    assert_eq!(code, EXIT_INPUT, "{err}");
}

#[test]
fn budget_exhaustion_is_reported() {
    let (code, out, err) = thfa(&["--budget", "1", "range", &fixture("m1.json")]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(out.is_empty());
    assert_eq!(err, "budget-exceeded: limit=1\n");
}

#[test]
fn validate_reports_problems() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"kind":"cdthfa","alphabet":["a"],"states":["q0","q1"],"initial":"q0",
            "transitions":[{"from":"q0","symbol":"a","to":"q1"}],"final":{}}"#,
    )
    .unwrap();
    let (code, out, _) = thfa(&["validate", &bad.display().to_string()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("q1"), "{out}");
    assert_eq!(thfa(&["validate", &fixture("m1.json")]).1, "ok\n");
    let (code, _, err) = thfa(&["eval", &fixture("nope.json"), "a"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.starts_with("error: "));
}

#[test]
fn constructions_emit_documents() {
    let (code, out, _) = thfa(&["crispify", &fixture("zero-one.json")]);
    assert_eq!(code, EXIT_OK);
    let parsed = parse_document(&out).unwrap();
    assert!(parsed.metadata.is_none());
    let Document::Cnthfa(n) = parsed.document else { panic!("{out}") };
    assert_eq!(n.states().len(), 3);

    let (_, out, _) = thfa(&["crispify", &fixture("m1.json")]);
    assert!(out.contains("\"normalized\""));

    let (_, out, _) = thfa(&["determinize", &fixture("n1.json")]);
    let Document::Cdthfa(d) = parse_document(&out).unwrap().document else { panic!() };
    assert_eq!(d.states().names(), ["{q0}", "{q0,q1}"]);

    let (_, out, _) = thfa(&["union", &fixture("ab.json"), &fixture("const-half.json")]);
    let Document::Nthfa(u) = parse_document(&out).unwrap().document else { panic!() };
    assert_eq!(u.states().len(), 4);
    assert_eq!(u.eval_symbols(&[]).to_string(), "{1/2}");

    let (_, out, _) = thfa(&["intersect", &fixture("m1.json"), &fixture("cycle.json")]);
    let Document::Cdthfa(p) = parse_document(&out).unwrap().document else { panic!() };
    assert_eq!(p.eval_symbols(&[0]).to_string(), "{1/3, 1/2, 3/5, 9/10}");

    let (_, out, _) = thfa(&["embed", &fixture("cycle.json")]);
    assert!(matches!(parse_document(&out).unwrap().document, Document::Nthfa(_)));
}

#[test]
fn decompose_and_recompose() {
    let dir = tempfile::tempdir().unwrap();
    let (_, levels, _) = thfa(&["decompose", &fixture("m1.json")]);
    let path = dir.path().join("levels.json");
    fs::write(&path, &levels).unwrap();
    let path = path.display().to_string();
    let (_, rebuilt, _) = thfa(&["recompose", &path]);
    let rebuilt_path = dir.path().join("rebuilt.json");
    fs::write(&rebuilt_path, rebuilt).unwrap();
    let (code, out, _) = thfa(&["equiv", &fixture("m1.json"), &rebuilt_path.display().to_string()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "equivalent\n"));

    let out_dir = dir.path().join("split");
    let (code, listing, _) = thfa(&["decompose", &fixture("m1.json"), "-o", &out_dir.display().to_string()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(listing.lines().count(), fs::read_dir(&out_dir).unwrap().count());
    assert_eq!(fs::read_to_string(out_dir.join("decomposition.json")).unwrap(), levels);
    assert!(out_dir.join("level-0.json").exists());
}

#[test]
fn oracle_check() {
    let (code, out, _) = thfa(&["oracle-check", &fixture("ab.json"), "--max-len", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "reference agrees on 31 words up to length 4\n");
    let (code, out, _) = thfa(&["oracle-check", &fixture("ab.json"), &fixture("const-half.json")]);
    assert_eq!((code, out.as_str()), (EXIT_DIFFERENT, "differ at λ\n"));
}

#[test]
fn usage_errors() {
    assert_eq!(thfa(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(thfa(&["--help"]).0, EXIT_OK);
}
