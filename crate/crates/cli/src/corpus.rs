//! Plain-text regression cases.
//!
//! ```text
//! # comment
//! case quintic
//! run algebraic "y^5+y-x"
//! exit 1
//! expect /output/group/name "S5"
//! near /output/monodromy/base_point/0 3.0 1e-9
//! ```
//!
//! `run` takes the subcommand and its arguments in shell quoting; an argument `@name` is a
//! path relative to the case file. `expect` compares the JSON value at a pointer into the
//! report, `near` a number within an absolute tolerance.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{CliError, Outcome, EXIT_NOT_REPRESENTABLE, EXIT_REPRESENTABLE};

#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    Equals { pointer: String, value: Value },
    Near { pointer: String, value: f64, tol: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub name: String,
    pub file: PathBuf,
    pub args: Vec<String>,
    pub exit: Option<i32>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub name: String,
    pub file: PathBuf,
    pub exit: i32,
    pub failures: Vec<String>,
}

fn split_first(s: &str) -> (&str, &str) {
    match s.split_once(char::is_whitespace) {
        Some((a, b)) => (a, b.trim()),
        None => (s, ""),
    }
}

pub fn parse_cases(text: &str, file: &Path) -> Result<Vec<Case>, String> {
    let dir = file.parent().unwrap_or(Path::new("."));
    let mut cases: Vec<Case> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| format!("{}:{}: {msg}", file.display(), lineno + 1);
        let (key, rest) = split_first(line);
        if key == "case" {
            if rest.is_empty() {
                return Err(at("case needs a name".into()));
            }
            cases.push(Case {
                name: rest.to_string(),
                file: file.to_path_buf(),
                args: Vec::new(),
                exit: None,
                checks: Vec::new(),
            });
            continue;
        }
        let Some(case) = cases.last_mut() else {
            return Err(at(format!("'{key}' before the first case")));
        };
        match key {
            "run" => {
                let words = shlex::split(rest).ok_or_else(|| at("unbalanced quotes".into()))?;
                if words.first().map(String::as_str) == Some("corpus") {
                    return Err(at("cases cannot run the corpus".into()));
                }
                case.args = words
                    .into_iter()
                    .map(|w| match w.strip_prefix('@') {
                        Some(rel) => dir.join(rel).display().to_string(),
                        None => w,
                    })
                    .collect();
            }
            "exit" => case.exit = Some(rest.parse().map_err(|_| at(format!("bad exit code '{rest}'")))?),
            "expect" => {
                let (pointer, value) = split_first(rest);
                let value = serde_json::from_str(value).map_err(|e| at(format!("bad JSON fragment: {e}")))?;
                case.checks.push(Check::Equals { pointer: pointer.to_string(), value });
            }
            "near" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [pointer, value, tol] = parts.as_slice() else {
                    return Err(at("near takes a pointer, a value and a tolerance".into()));
                };
                let num = |s: &str| s.parse::<f64>().map_err(|_| at(format!("bad number '{s}'")));
                case.checks.push(Check::Near { pointer: pointer.to_string(), value: num(value)?, tol: num(tol)? });
            }
            _ => return Err(at(format!("unknown keyword '{key}'"))),
        }
    }
    for c in &cases {
        if c.args.is_empty() {
            return Err(format!("{}: case '{}' has no run line", file.display(), c.name));
        }
    }
    Ok(cases)
}

pub fn load(path: &Path) -> Result<Vec<Case>, String> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut f: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| format!("{}: {e}", path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "case"))
            .collect();
        f.sort();
        f
    } else {
        vec![path.to_path_buf()]
    };
    let mut cases = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(&f).map_err(|e| format!("{}: {e}", f.display()))?;
        cases.extend(parse_cases(&text, &f)?);
    }
    Ok(cases)
}

/// Argument vector for an in-process run with JSON output.
pub fn command_line(case: &Case) -> Vec<String> {
    let mut args = vec!["finitude".to_string()];
    args.extend(case.args.iter().cloned());
    args.push("--json".into());
    args
}

pub fn run_case(case: &Case) -> CaseResult {
    let run = crate::run(&command_line(case));
    let mut failures = Vec::new();
    if let Some(e) = case.exit {
        if e != run.exit {
            failures.push(format!("exit code {} (expected {e})", run.exit));
        }
    }
    let report = run.report.unwrap_or(Value::Null);
    for check in &case.checks {
        match check {
            Check::Equals { pointer, value } => match report.pointer(pointer) {
                Some(v) if v == value => {}
                Some(v) => failures.push(format!("{pointer} is {v}, expected {value}")),
                None => failures.push(format!("{pointer} missing")),
            },
            Check::Near { pointer, value, tol } => match report.pointer(pointer).and_then(Value::as_f64) {
                Some(v) if (v - value).abs() <= *tol => {}
                Some(v) => failures.push(format!("{pointer} is {v}, expected {value} within {tol}")),
                None => failures.push(format!("{pointer} missing or not a number")),
            },
        }
    }
    CaseResult { name: case.name.clone(), file: case.file.clone(), exit: run.exit, failures }
}

pub fn run_corpus(path: &Path) -> Result<Outcome, CliError> {
    let cases = load(path).map_err(CliError::Usage)?;
    let results: Vec<CaseResult> = cases.par_iter().map(run_case).collect();
    let failed = results.iter().filter(|r| !r.failures.is_empty()).count();
    let mut text = String::new();
    for r in &results {
        if r.failures.is_empty() {
            text.push_str(&format!("ok    {}\n", r.name));
        } else {
            text.push_str(&format!("FAIL  {}: {}\n", r.name, r.failures.join("; ")));
        }
    }
    text.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
    let output = json!({
        "passed": results.len() - failed,
        "failed": failed,
        "cases": results.iter().map(|r| json!({
            "name": r.name,
            "file": r.file.display().to_string(),
            "exit_code": r.exit,
            "passed": r.failures.is_empty(),
            "failures": r.failures,
        })).collect::<Vec<_>>(),
    });
    let exit = if failed == 0 { EXIT_REPRESENTABLE } else { EXIT_NOT_REPRESENTABLE };
    Ok(Outcome { status: None, output, text, exit: Some(exit) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cases() {
        let text = "# demo\ncase a\nrun integrate \"1/(x^2-1)\"\nexit 0\nexpect /status \"Representable\"\nnear /x 1.0 1e-9\n\ncase b\nrun fuchsian @sys.json\n";
        let cases = parse_cases(text, Path::new("dir/demo.case")).unwrap();
        assert_eq!(cases.len(), 2);
        assert_eq!(cases[0].args, vec!["integrate", "1/(x^2-1)"]);
        assert_eq!(cases[0].exit, Some(0));
        assert_eq!(cases[0].checks.len(), 2);
        assert_eq!(cases[1].args[1], Path::new("dir").join("sys.json").display().to_string());
    }

    #[test]
    fn rejects_malformed() {
        let f = Path::new("x.case");
        assert!(parse_cases("run integrate x", f).is_err());
        assert!(parse_cases("case a\nfrobnicate", f).is_err());
        assert!(parse_cases("case a\nrun corpus .", f).is_err());
        assert!(parse_cases("case a\nrun integrate \"x", f).is_err());
        assert!(parse_cases("case a\nexit 0", f).is_err());
    }
}
