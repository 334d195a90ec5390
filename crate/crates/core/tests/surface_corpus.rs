use std::path::PathBuf;

use omegatt::json::{program_from_json, program_to_json};
use omegatt::oplib::{comp_cell, eh_computad};
use omegatt::surface::load;

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples");
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .filter(|p| p.extension().is_some_and(|x| x == "ctt"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

#[test]
fn shipped_files_print_canonically() {
    let mut good = 0;
    for (name, src) in corpus() {
        let Ok(p) = load(&src) else {
            assert!(name.starts_with("bad_"), "{name} should elaborate");
            continue;
        };
        good += 1;
        let text = p.to_string();
        let q = load(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(q, p, "{name}");
        assert_eq!(q.to_string(), text, "{name}");
    }
    assert!(good >= 3);
}

#[test]
fn shipped_files_survive_json() {
    for (name, src) in corpus() {
        if let Ok(p) = load(&src) {
            let v = program_to_json(&p);
            let text = serde_json::to_string(&v).unwrap();
            let back = program_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.to_string(), p.to_string(), "{name}");
        }
    }
}

#[test]
fn seeded_bad_files_report_their_codes() {
    for (name, src) in corpus() {
        let want = match name.as_str() {
            "bad_notfull.ctt" => "NotFull",
            "bad_notparallel.ctt" => "NotParallel",
            _ => continue,
        };
        let e = load(&src).unwrap_err();
        assert_eq!(e.code(), want);
        assert_eq!(e.path.unwrap().to_string(), "sphere");
    }
}

#[test]
fn declared_eckmann_hilton_computad() {
    let p = load("computad Ceh { x : * ; a : id(x) -> id(x) ; b : id(x) -> id(x) }").unwrap();
    assert_eq!(**p.computads().next().unwrap().1, eh_computad().computad);
}

#[test]
fn bracket_template_with_identity_substitution() {
    let p = load("let c = coh [[],[]] { 0 -> 2 } [ ]").unwrap();
    assert_eq!(p.get("c").unwrap().as_cell().unwrap().1, &comp_cell(1, 0, 1).unwrap());
}

#[test]
fn annotated_homes_must_match() {
    let src = "computad C { x : * ; f : x -> x }\nlet s in susp(C) = 1.f\nlet t in C = f\n";
    assert!(load(src).is_ok());
    let e = load("computad C { x : * ; f : x -> x }\nlet s in susp(C) = f\n").unwrap_err();
    assert_eq!(e.code(), "UnknownName");
    let e = load("computad C { x : * ; f : x -> x }\nlet s in D = f\n").unwrap_err();
    assert_eq!(e.code(), "UnknownName");
}
