use std::fs;
use std::path::Path;

use art_cli::{parse_workspace, parse_workspace_with_bound, Workspace};
use art_core::{fixtures, Field};

const DUAL: &str = r#"
field = "Q"

[algebra]
vertices = ["1"]
arrows = [{ name = "a", from = "1", to = "1" }]

[[algebra.relations]]
terms = [{ coeff = "1", path = ["a", "a"] }]

[modules.S]
dims = [1]
arrows = { a = [["ACTION"]] }
"#;

const A2: &str = r#"
field = "Q"

[algebra]
vertices = ["1", "2"]
arrows = [{ name = "a", from = "1", to = "2" }]

[modules.P1]
dims = [1, 1]
arrows = { a = [["1", "0"]] }
"#;

fn workspace_file(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("workspaces").join(name);
    fs::read_to_string(path).unwrap()
}

fn messages(text: &str) -> Vec<String> {
    parse_workspace(text).unwrap_err().diagnostics.iter().map(|d| d.to_string()).collect()
}

#[test]
fn nilpotent_action_parses() {
    let ws = parse_workspace(&DUAL.replace("ACTION", "0")).unwrap();
    assert_eq!(ws.modules.len(), 1);
    assert_eq!(ws.module("S").unwrap().dims(), &[1]);
}

#[test]
fn relation_violation_names_the_relation_and_its_value() {
    let msgs = messages(&DUAL.replace("ACTION", "1"));
    assert_eq!(msgs.len(), 1, "{msgs:?}");
    assert!(msgs[0].contains("relation a·a acts as 1 ≠ 0"), "{}", msgs[0]);
    assert!(msgs[0].starts_with("line 11: modules.S"), "{}", msgs[0]);
}

#[test]
fn shape_mismatch_is_located() {
    let msgs = messages(A2);
    assert_eq!(msgs.len(), 1, "{msgs:?}");
    assert!(msgs[0].contains("modules.P1.arrows.a"), "{}", msgs[0]);
    assert!(msgs[0].contains("needs a 1×1 matrix, got 1×2"), "{}", msgs[0]);
}

#[test]
fn every_violation_is_listed() {
    let text = format!(
        "{}\n[modules.T]\ndims = [2]\narrows = {{ a = [[\"1\", \"0\"], [\"0\", \"0\"]] }}\n\n[modules.U]\ndims = [1, 1]\n",
        DUAL.replace("ACTION", "1")
    );
    let msgs = messages(&text);
    assert_eq!(msgs.len(), 3, "{msgs:?}");
    assert!(msgs.iter().any(|m| m.contains("modules.T") && m.contains("relation a·a acts as")));
    assert!(msgs.iter().any(|m| m.contains("modules.U") && m.contains("expected 1 vertex dimensions, got 2")));
}

#[test]
fn syntax_errors_carry_a_line() {
    let err = parse_workspace("field = \"Q\"\n[algebra\n").unwrap_err();
    assert_eq!(err.diagnostics[0].line, Some(2));
    let err = parse_workspace("field = \"Q\"\nalgebra = { vertices = [\"1\"] }\nbogus = 1\n").unwrap_err();
    assert!(err.to_string().contains("bogus"), "{err}");
}

#[test]
fn bad_names_get_suggestions() {
    let text = A2.replace("[[\"1\", \"0\"]]", "[[\"1\"]]") + "\n[morphisms.f]\nfrom = \"P2\"\nto = \"P1\"\n";
    let msgs = messages(&text);
    assert!(msgs[0].contains("unknown module \"P2\"; known: P1"), "{msgs:?}");
    let text = A2.replace("a = [[\"1\", \"0\"]]", "b = [[\"1\"]]");
    assert!(messages(&text)[0].contains("unknown arrow \"b\"; known: a"));
}

#[test]
fn scalars_and_fields() {
    let text = A2.replace("[[\"1\", \"0\"]]", "[[\"3/2\"]]");
    let ws = parse_workspace(&text).unwrap();
    assert_eq!(ws.field, Field::Rationals);
    let text = A2.replace("field = \"Q\"", "field = 7").replace("[[\"1\", \"0\"]]", "[[9]]");
    let ws = parse_workspace(&text).unwrap();
    assert_eq!(ws.field, Field::prime(7).unwrap());
    assert!(messages(&A2.replace("field = \"Q\"", "field = 6"))[0].starts_with("line 2: field"));
    assert!(messages(&A2.replace("[[\"1\", \"0\"]]", "[[\"0.5\"]]"))[0].contains("invalid scalar literal"));
}

#[test]
fn non_exact_sequence_is_rejected() {
    let text = workspace_file("dual_numbers.toml").replace("blocks = { \"1\" = [[\"1\", \"0\"]] }", "");
    let msgs = messages(&text);
    assert!(msgs.iter().any(|m| m.contains("sequences.ar")), "{msgs:?}");
}

#[test]
fn path_length_bound_is_honoured() {
    let cubic = workspace_file("cubic.toml");
    assert!(parse_workspace_with_bound(&cubic, 3).is_ok());
    let err = parse_workspace_with_bound(&cubic, 2).unwrap_err();
    assert!(err.diagnostics[0].path == "algebra", "{err}");
}

#[test]
fn round_trip_preserves_domain_objects() {
    for name in ["dual_numbers.toml", "a2.toml", "kronecker.toml", "cubic.toml"] {
        let ws = parse_workspace(&workspace_file(name)).unwrap();
        let text = ws.to_toml();
        let again = parse_workspace(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(ws, again, "{name}");
        assert_eq!(text, again.to_toml(), "{name}");
    }
}

#[test]
fn fixtures_round_trip_and_match_the_shipped_files() {
    for f in [Field::Rationals, Field::prime(5).unwrap()] {
        for fx in fixtures::all(f) {
            let ws = Workspace::with_modules(fx.algebra.clone(), fx.modules.clone());
            assert_eq!(parse_workspace(&ws.to_toml()).unwrap(), ws, "{}", fx.name);
        }
    }
    let shipped = [
        ("dual_numbers.toml", fixtures::dual_numbers(Field::Rationals)),
        ("a2.toml", fixtures::a2(Field::Rationals)),
        ("kronecker.toml", fixtures::kronecker(Field::prime(5).unwrap())),
        ("cubic.toml", fixtures::cubic(Field::Rationals)),
    ];
    for (file, fx) in shipped {
        let ws = parse_workspace(&workspace_file(file)).unwrap();
        assert_eq!(*ws.algebra, *fx.algebra, "{file}");
        for (name, m) in &ws.modules {
            assert_eq!(m, fx.module(name), "{file}: {name}");
        }
    }
}
