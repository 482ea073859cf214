//! Golden scenarios for the command-line binary.
//!
//! Each scenario runs twice, once as text and once with `--json`. The text
//! output is compared against `tests/golden/<name>.txt` and the JSON against
//! `<name>.json`. Set `BLESS=1` to rewrite the goldens from current output.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub struct Scenario {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "parse_diagnostics",
        args: &["validate", "tests/data/bad_syntax.olab"],
        exit: 2,
    },
    Scenario {
        name: "missing_file",
        args: &["validate", "tests/data/no_such_file.olab"],
        exit: 2,
    },
    Scenario {
        name: "validate_pass",
        args: &["validate", "tests/data/two_fermions.olab"],
        exit: 0,
    },
    Scenario {
        name: "validate_macro_pair",
        args: &["validate", "tests/data/macro_pair.olab"],
        exit: 1,
    },
    Scenario {
        name: "validate_unmarked",
        args: &["validate", "tests/data/unmarked.olab"],
        exit: 1,
    },
    Scenario {
        name: "validate_inferred",
        args: &["validate", "--infer-scales", "tests/data/unmarked.olab"],
        exit: 0,
    },
    Scenario {
        name: "validate_empty",
        args: &["validate", "tests/data/empty.olab"],
        exit: 0,
    },
    Scenario {
        name: "relations_three",
        args: &["relations", "tests/data/three_bodies.olab"],
        exit: 0,
    },
    Scenario {
        name: "relations_fermions",
        args: &["relations", "tests/data/two_fermions.olab"],
        exit: 0,
    },
    Scenario {
        name: "relations_invalid",
        args: &["relations", "tests/data/macro_pair.olab"],
        exit: 1,
    },
    Scenario {
        name: "theorems_unitary",
        args: &["theorems", "tests/data/unitary.olab"],
        exit: 0,
    },
    Scenario {
        name: "theorems_single",
        args: &["theorems", "tests/data/single.olab"],
        exit: 0,
    },
    Scenario {
        name: "theorems_three",
        args: &["theorems", "tests/data/three_bodies.olab"],
        exit: 0,
    },
    Scenario {
        name: "theorems_invalid",
        args: &["theorems", "tests/data/macro_pair.olab"],
        exit: 1,
    },
    Scenario {
        name: "exchange_swap",
        args: &["exchange", "--modes", "a,b,c", "--swap", "1,3"],
        exit: 0,
    },
    Scenario {
        name: "exchange_antisym",
        args: &["exchange", "--modes", "a,b", "--antisymmetrize"],
        exit: 0,
    },
    Scenario {
        name: "exchange_pauli_zero",
        args: &["exchange", "--modes", "k,k", "--antisymmetrize"],
        exit: 0,
    },
    Scenario {
        name: "exchange_sym3",
        args: &["exchange", "--modes", "a,a,b", "--symmetrize"],
        exit: 0,
    },
    Scenario {
        name: "exchange_classify",
        args: &["exchange", "--modes", "a,b", "--classify"],
        exit: 0,
    },
    Scenario {
        name: "exchange_degeneracy",
        args: &["exchange", "--modes", "u,v,v", "--degeneracy"],
        exit: 0,
    },
    Scenario {
        name: "exchange_pauli",
        args: &["exchange", "--modes", "u,v,u", "--pauli"],
        exit: 0,
    },
    Scenario {
        name: "exchange_bad_swap",
        args: &["exchange", "--modes", "a,b", "--swap", "1,3"],
        exit: 2,
    },
    Scenario {
        name: "count_all",
        args: &["count", "--particles", "2", "--modes", "3"],
        exit: 0,
    },
    Scenario {
        name: "count_list",
        args: &["count", "--particles", "2", "--modes", "2", "--list"],
        exit: 0,
    },
    Scenario {
        name: "count_zero",
        args: &["count", "--particles", "0", "--modes", "4", "--stats", "fd"],
        exit: 0,
    },
    Scenario {
        name: "count_negative",
        args: &["count", "--particles", "-1", "--modes", "2"],
        exit: 2,
    },
    Scenario {
        name: "occupancy_two_by_two",
        args: &[
            "occupancy",
            "--energies",
            "0,1",
            "--particles",
            "2",
            "--beta",
            "1",
        ],
        exit: 0,
    },
    Scenario {
        name: "occupancy_fd_overfull",
        args: &[
            "occupancy",
            "--energies",
            "0,1",
            "--particles",
            "3",
            "--beta",
            "1",
        ],
        exit: 0,
    },
    Scenario {
        name: "occupancy_fd_only_overfull",
        args: &[
            "occupancy",
            "--energies",
            "0,1",
            "--particles",
            "3",
            "--beta",
            "1",
            "--stats",
            "fd",
        ],
        exit: 2,
    },
    Scenario {
        name: "occupancy_negative_beta",
        args: &[
            "occupancy",
            "--energies",
            "0,1",
            "--particles",
            "1",
            "--beta",
            "-1",
        ],
        exit: 2,
    },
];

pub struct Run {
    pub stdout: String,
    pub exit: i32,
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ontolabel"))
        .args(args)
        .current_dir(manifest_dir())
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
        exit: out.status.code().expect("exit code"),
    }
}

fn golden(path: &Path, actual: &str) -> Result<(), String> {
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e} (run with BLESS=1 to create)", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!(
            "{} differs\n--- expected\n{expected}--- actual\n{actual}",
            path.display()
        ))
    }
}

/// Every JSON field must show up in the text rendering with the same value.
fn text_matches_json(text: &str, json: &Value) -> Result<(), String> {
    let mut lines = text.lines();
    let missing = |what: String| Err(format!("text output lacks {what}"));
    let command = json["command"].as_str().unwrap_or_default();
    if lines.next() != Some(&format!("command: {}", command.replace(" --json", ""))) {
        return missing(format!("command `{command}`"));
    }
    let status = json["status"].as_str().unwrap_or_default();
    if text.lines().last() != Some(&format!("status: {status}")) {
        return missing(format!("status `{status}`"));
    }
    let has = |needle: &str| text.lines().any(|l| l == needle);
    for w in json["warnings"].as_array().into_iter().flatten() {
        if !has(&format!("warning: {}", w.as_str().unwrap_or_default())) {
            return missing(format!("warning {w}"));
        }
    }
    for d in json["diagnostics"].as_array().into_iter().flatten() {
        let msg = d["message"].as_str().unwrap_or_default();
        let found = text.lines().any(|l| {
            l.starts_with("error: ")
                && l.contains(msg)
                && (d["line"] == 0
                    || l.contains(&format!("line {}, column {}", d["line"], d["column"])))
        });
        if !found {
            return missing(format!("diagnostic {d}"));
        }
    }
    for a in json["axioms"].as_array().into_iter().flatten() {
        let verdict = if a["holds"] == true { "pass" } else { "FAIL" };
        let line = format!(
            "axiom {} {verdict}: {}",
            a["axiom"].as_str().unwrap(),
            a["statement"].as_str().unwrap()
        );
        if !has(&line) {
            return missing(line);
        }
        for w in a["witnesses"].as_array().into_iter().flatten() {
            if !has(&format!("  witness: {}", w.as_str().unwrap())) {
                return missing(format!("witness {w}"));
            }
        }
    }
    for t in json["theorems"].as_array().into_iter().flatten() {
        let verdict = match (&t["applicable"], &t["holds"]) {
            (Value::Bool(true), Value::Bool(true)) => "holds",
            (Value::Bool(true), Value::Bool(false)) => "FAILS",
            _ => "not applicable",
        };
        let line = format!(
            "theorem {} {verdict}: {}",
            t["name"].as_str().unwrap(),
            t["statement"].as_str().unwrap()
        );
        if !has(&line) {
            return missing(line);
        }
        if let Some(note) = t["note"].as_str() {
            if !has(&format!("  note: {note}")) {
                return missing(format!("note {note}"));
            }
        }
    }
    for table in json["tables"].as_array().into_iter().flatten() {
        let name = table["name"].as_str().unwrap();
        if !has(&format!("table {name}:")) {
            return missing(format!("table {name}"));
        }
        let rows = std::iter::once(&table["columns"]).chain(table["rows"].as_array().unwrap());
        for row in rows {
            let cells: Vec<&str> = row
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect();
            let found = text.lines().any(|l| row_matches(l, &cells));
            if !found {
                return missing(format!("row {cells:?} of table {name}"));
            }
        }
    }
    Ok(())
}

fn row_matches(line: &str, cells: &[&str]) -> bool {
    let Some(mut rest) = line.strip_prefix("  ") else {
        return false;
    };
    for cell in cells {
        match rest.strip_prefix(cell) {
            Some(tail) => rest = tail.trim_start_matches(' '),
            None => return false,
        }
    }
    rest.is_empty()
}

/// Runs one scenario in both renderings; returns a failure description.
pub fn check_scenario(s: &Scenario) -> Result<(), String> {
    let dir = manifest_dir().join("tests/golden");
    let text = run(s.args);
    let mut json_args = s.args.to_vec();
    json_args.push("--json");
    let json = run(&json_args);
    if text.exit != s.exit || json.exit != s.exit {
        return Err(format!(
            "{}: exit text={} json={} expected={}",
            s.name, text.exit, json.exit, s.exit
        ));
    }
    golden(&dir.join(format!("{}.txt", s.name)), &text.stdout)?;
    golden(&dir.join(format!("{}.json", s.name)), &json.stdout)?;
    let value: Value =
        serde_json::from_str(&json.stdout).map_err(|e| format!("{}: {e}", s.name))?;
    text_matches_json(&text.stdout, &value).map_err(|e| format!("{}: {e}", s.name))
}

/// Files in `tests/data` that parse cleanly.
pub fn corpus() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(manifest_dir().join("tests/data"))
        .expect("data dir")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "olab"))
        .collect();
    files.sort();
    files
}
