//! Black-box tests of the command line binary: exit codes, output shapes, and
//! conformance of emitted JSON to the schemas shipped under schemas/.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symdec"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn load_schema(name: &str) -> Value {
    let path = format!("{}/../../schemas/{}", env!("CARGO_MANIFEST_DIR"), name);
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file")).expect("valid json")
}

// Just enough of JSON Schema to check our own documents: type, enum,
// required, properties, items, minimum.
fn validate(schema: &Value, inst: &Value, path: &str) -> Result<(), String> {
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => inst.is_object(),
            "array" => inst.is_array(),
            "string" => inst.is_string(),
            "integer" => inst.as_i64().is_some() || inst.as_u64().is_some(),
            "number" => inst.is_number(),
            "boolean" => inst.is_boolean(),
            other => return Err(format!("{path}: unsupported schema type {other:?}")),
        };
        if !ok {
            return Err(format!("{path}: expected {ty}, got {inst}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(inst) {
            return Err(format!("{path}: {inst} not in {allowed:?}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if inst.as_i64().map_or(true, |v| v < min) {
            return Err(format!("{path}: {inst} below minimum {min}"));
        }
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        for key in req.iter().filter_map(Value::as_str) {
            if inst.get(key).is_none() {
                return Err(format!("{path}: missing required key {key:?}"));
            }
        }
    }
    if let (Some(props), Some(obj)) = (
        schema.get("properties").and_then(Value::as_object),
        inst.as_object(),
    ) {
        for (key, sub) in props {
            if let Some(v) = obj.get(key) {
                validate(sub, v, &format!("{path}.{key}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), inst.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, v, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn assert_valid(schema_name: &str, inst: &Value) {
    let schema = load_schema(schema_name);
    if let Err(e) = validate(&schema, inst, "$") {
        panic!("{schema_name} violation: {e}");
    }
}

#[test]
fn gen_output_round_trips_through_the_parser() {
    let (code, stdout, _) = run(&["gen", "eulerian", "5"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1,26,66,26,1");
    let (code, stdout, _) = run(&["gen", "derangement", "4", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "0,16,144,72,1");
    let p: symdec::Poly = stdout.trim().parse().expect("parses back");
    assert_eq!(p.to_string(), stdout.trim());
}

#[test]
fn decompose_json_matches_schema() {
    let (code, stdout, _) = run(&[
        "decompose",
        "--poly",
        "1,1018,10678,14498,2933,32",
        "--degree",
        "5",
        "--kind",
        "I",
        "--certify",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).expect("json output");
    assert_valid("decomposition.schema.json", &v);
    assert_eq!(v["a"][2], "8732");
    assert_eq!(v["b"][2], "5766");
    assert_eq!(v["kind"], "I");
    assert_eq!(v["certificates"]["a_real_rooted"], true);
    assert_eq!(v["certificates"]["b_interlaces_a"]["holds"], true);
    assert_valid(
        "interlacing-certificate.schema.json",
        &v["certificates"]["b_interlaces_a"],
    );
}

#[test]
fn decompose_r_kind_and_lowercase_alias() {
    for kind in ["R", "r"] {
        let (code, stdout, _) = run(&["decompose", "--poly", "1,2,1", "--degree", "2", "--kind", kind]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&stdout).expect("json output");
        assert_eq!(v["kind"], "R");
        assert_valid("decomposition.schema.json", &v);
    }
}

#[test]
fn zono_hstar_json_matches_schema() {
    // twice the unit square: i(t) = (2t+1)^2, h* = 1 + 6x + x^2
    let (code, stdout, _) = run(&["zono", "hstar", "--gens", "2,0;0,2", "--cs"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).expect("json output");
    assert_valid("zono-hstar.schema.json", &v);
    assert_eq!(v["ehrhart"], serde_json::json!(["1", "4", "4"]));
    assert_eq!(v["hstar"], serde_json::json!(["1", "6", "1"]));
    assert_eq!(v["interior"], "1");
    assert_eq!(v["lawrence"], serde_json::json!(["1", "2", "1"]));
    assert_eq!(v["certificates"]["cs"]["cone_coefficients"], serde_json::json!(["1", "0", "0"]));
    assert_eq!(v["certificates"]["cs"]["reciprocal_interlaces"]["holds"], true);
    assert_eq!(v["certificates"]["alternatingly_increasing"], true);
}

#[test]
fn zono_hstar_reports_failed_certificates_with_exit_one() {
    // unit square: h* = 1 + x is not alternatingly increasing in window 2,
    // and the square is not presented in centrally symmetric form
    let (code, stdout, _) = run(&["zono", "hstar", "--gens", "1,0;0,1", "--cs"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&stdout).expect("json output");
    assert_valid("zono-hstar.schema.json", &v);
    assert_eq!(v["ehrhart"], serde_json::json!(["1", "2", "1"]));
    assert_eq!(v["hstar"], serde_json::json!(["1", "1", "0"]));
    assert_eq!(v["interior"], "0");
    assert_eq!(v["certificates"]["alternatingly_increasing"], false);
    assert!(v["certificates"]["cs"].get("error").is_some());
}

#[test]
fn verify_writes_schema_conformant_reports() {
    let path = std::env::temp_dir().join(format!("symdec-report-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, stdout, _) = run(&["verify", "s2", "--json", path_str]);
    assert_eq!(code, 0);
    assert!(stdout.contains("interlacing"));
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("report file")).expect("json");
    std::fs::remove_file(&path).ok();
    assert_valid("suite-report.schema.json", &v);
    let reports = v.as_array().expect("array of reports");
    assert_eq!(reports.len(), 2);
    for r in reports {
        assert_eq!(r["failures"].as_array().map(Vec::len), Some(0));
    }
}

#[test]
fn exit_codes() {
    // malformed coefficient list
    let (code, _, stderr) = run(&["decompose", "--poly", "1,,2", "--degree", "2"]);
    assert_eq!(code, 2, "stderr: {stderr}");
    // unknown verification suite
    let (code, _, _) = run(&["verify", "bogus"]);
    assert_eq!(code, 2);
    // x^2 + 1 is not real-rooted, so the expectation fails
    let (code, _, _) = run(&[
        "decompose",
        "--poly",
        "1,0,1",
        "--degree",
        "2",
        "--certify",
        "--expect-interlacing",
    ]);
    assert_eq!(code, 1);
    // and a certified interlacing decomposition exits cleanly
    let (code, _, _) = run(&[
        "decompose",
        "--poly",
        "0,16,144,72,1",
        "--degree",
        "4",
        "--certify",
        "--expect-interlacing",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn tables_latex_mode() {
    let (code, stdout, _) = run(&["tables", "--family", "eulerian", "--n", "3", "--latex"]);
    assert_eq!(code, 0);
    assert!(stdout.contains('&') && stdout.contains("\\\\"), "got: {stdout}");
}

#[test]
fn complex_commands() {
    let (code, stdout, _) = run(&["complex", "sdh", "--h", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1,4,1");
    let (code, stdout, _) = run(&["complex", "matroid", "--bases", "1,2;1,3;2,3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).expect("json output");
    assert_eq!(v["h_vector"], serde_json::json!(["1", "1", "1"]));
    assert_eq!(v["coloop_free"], true);
    assert_eq!(v["level_2cm"], true);
}
