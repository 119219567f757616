use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use finitude::algebra::{parse_bivariate, parse_polynomial, parse_rational_function, ParseError, Rational};
use finitude::differential::{
    generalized_riccati, integrate_rational, rational_witness_search_with, verify_exp_integral_witness, LinearODE,
    WitnessError, WitnessOptions,
};
use finitude::fuchsian::{
    simultaneous_triangularizable, small_norm_verdict_with, system_monodromy, FuchsianError, FuchsianSystem,
    Verdict as FuchsianVerdict,
};
use finitude::monodromy::{monodromy_group_with, MonodromyError, MonodromyOptions};
use finitude::puiseux::{puiseux_expand, ramification_multiset, PuiseuxError, PuiseuxPoint, PuiseuxSeries};
use finitude::solvability::{
    classify_primitive, invertible_by_k_radicals, invertible_by_radicals, k_verdict_for_group, radicals_verdict_for,
    ritt_decompose, SolvabilityError, Status,
};

use crate::{corpus, CliError, Command, Config, Outcome};

pub fn execute(command: &Command, config: &Config) -> Result<Outcome, CliError> {
    match command {
        Command::Algebraic { expr, k, tower } => algebraic(expr, *k, *tower, config),
        Command::Ode { order, coefficients, .. } => ode(*order, coefficients, config),
        Command::Integrate { expr } => integrate(expr),
        Command::Decompose { expr, k } => decompose(expr, *k),
        Command::Fuchsian { file } => fuchsian(file, config),
        Command::Puiseux { expr, at, .. } => puiseux(expr, at, config),
        Command::Corpus { path } => corpus::run_corpus(path),
    }
}

/// The message with a caret under the offending position.
fn syntax(text: &str, e: &ParseError) -> CliError {
    let mut msg = e.to_string();
    if let Some(p) = e.position() {
        let col = text[..p.min(text.len())].chars().count();
        let _ = write!(msg, "\n  {text}\n  {}^", " ".repeat(col));
    }
    CliError::Usage(msg)
}

fn complex_text(z: Complex64) -> String {
    let clean = |v: f64| if v.abs() < 5e-11 { 0.0 } else { v };
    let z = Complex64::new(clean(z.re), clean(z.im));
    format!("{:.10}{}{:.10}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Representable => "Representable",
        Status::NotRepresentable => "NotRepresentable",
        Status::Undecided => "Undecided",
    }
}

fn monodromy_error(e: MonodromyError) -> CliError {
    match e {
        MonodromyError::DegreeTooLow(_) | MonodromyError::SquareFreeRequired => CliError::Usage(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    }
}

fn solvability_error(e: SolvabilityError) -> CliError {
    CliError::Usage(e.to_string())
}

fn algebraic(expr: &str, k: Option<usize>, tower: bool, config: &Config) -> Result<Outcome, CliError> {
    let p = parse_bivariate(expr).map_err(|e| syntax(expr, &e))?;
    let n = p.degree_y();
    if n == 0 {
        return Err(CliError::Usage("expression does not involve y".into()));
    }
    if n > config.group_degree_cap {
        let output = json!({ "degree_y": n, "reason": format!("degree {n} exceeds group_degree_cap {}", config.group_degree_cap) });
        let text = format!("degree in y {n} exceeds the cap {}\nverdict: Undecided\n", config.group_degree_cap);
        return Ok(Outcome { status: Some(Status::Undecided), output, text, exit: None });
    }
    let opts = MonodromyOptions { tol: config.continuation_tol, base: None, margin: config.matching_margin };
    let action = monodromy_group_with(&p, opts).map_err(monodromy_error)?;
    if !action.is_transitive() {
        let sizes: Vec<usize> = action.orbits().iter().map(|o| o.len()).collect();
        return Err(solvability_error(SolvabilityError::ReducibleInput { orbit_sizes: sizes }));
    }
    let radicals = radicals_verdict_for(&p, &action);
    let k_verdict = k.map(|k| k_verdict_for_group(&action.group, k));
    let status = k_verdict.as_ref().map_or(radicals.status, |v| v.status);
    let group = radicals.group.clone().expect("radicals verdict carries the group");

    let mut text = String::new();
    let _ = writeln!(text, "curve: {p} = 0");
    let _ = writeln!(text, "singular points: {}", action.singular.len());
    for iv in &action.singular.points {
        let _ = writeln!(text, "  x = {}  (radius {:.1e})", complex_text(iv.center), iv.radius);
    }
    let _ = writeln!(text, "base point: {}", complex_text(action.base));
    let gens: Vec<String> = action.generators.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(text, "generators: {}", gens.join(", "));
    let _ = writeln!(text, "group: {} (order {})", group.name, group.order);
    let _ = writeln!(text, "radicals: {}", status_text(radicals.status));
    if let (Some(k), Some(v)) = (k, &k_verdict) {
        let _ = writeln!(text, "{k}-radicals: {}", status_text(v.status));
    }
    if tower {
        match &radicals.certificate {
            Some(c) => {
                let _ = writeln!(text, "certificate: {c}");
            }
            None => {
                let _ = writeln!(text, "certificate: none");
            }
        }
    }
    let output = json!({
        "monodromy": serde_json::to_value(action.report()).expect("report serializes"),
        "group": group,
        "radicals": radicals.to_json(),
        "k_radicals": k_verdict.as_ref().map(|v| v.to_json()),
        "certificate": radicals.certificate,
    });
    Ok(Outcome { status: Some(status), output, text, exit: None })
}

fn ode(order: usize, coefficients: &[String], config: &Config) -> Result<Outcome, CliError> {
    if coefficients.len() != order {
        return Err(CliError::Usage(format!("order {order} needs {order} coefficients, got {}", coefficients.len())));
    }
    let coeffs = coefficients
        .iter()
        .map(|c| parse_rational_function(c).map_err(|e| syntax(c, &e)))
        .collect::<Result<Vec<_>, _>>()?;
    let eq = LinearODE::new(coeffs).map_err(|e| CliError::Usage(e.to_string()))?;
    let riccati = generalized_riccati(&eq).map_err(|e| CliError::Usage(e.to_string()))?;
    let options = WitnessOptions { degree_bound: config.witness_degree_bound };
    let search = rational_witness_search_with(&eq, &options);
    let mut text = format!("equation: {eq}\nriccati: {riccati} = 0\n");
    let (status, witnesses, error) = match &search {
        Ok(ws) => {
            let list: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(text, "witnesses: {}", if list.is_empty() { "none".into() } else { list.join(", ") });
            let status = if ws.is_empty() { Status::Undecided } else { Status::Representable };
            (status, Some(ws.clone()), None)
        }
        Err(e) => {
            let _ = writeln!(text, "witnesses: none ({e})");
            (Status::Undecided, None, Some(e))
        }
    };
    let verified = witnesses.as_ref().map(|ws| ws.iter().all(|u| verify_exp_integral_witness(&eq, u)));
    let error_kind = error.map(|e| match e {
        WitnessError::OrderNotTwo(_) => "order_not_two",
        WitnessError::NoneFound { .. } => "none_found",
        WitnessError::BoundExceeded { .. } => "bound_exceeded",
        WitnessError::IrrationalPole { .. } => "irrational_pole",
    });
    let _ = writeln!(text, "verdict: {}", status_text(status));
    let output = json!({
        "equation": eq.to_string(),
        "riccati": riccati.to_string(),
        "witnesses": witnesses.as_ref().map(|ws| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
        "verified": verified,
        "search_error": error_kind.map(|k| json!({ "kind": k, "message": error.unwrap().to_string() })),
    });
    Ok(Outcome { status: Some(status), output, text, exit: None })
}

fn integrate(expr: &str) -> Result<Outcome, CliError> {
    let f = parse_rational_function(expr).map_err(|e| syntax(expr, &e))?;
    let form = integrate_rational(&f);
    let verified = form.derivative() == f;
    let text = format!("integral: {form}\nverified: {verified}\n");
    let output =
        json!({ "integrand": f.to_string(), "form": form.to_json(), "text": form.to_string(), "verified": verified });
    let status = if verified { Status::Representable } else { Status::Undecided };
    Ok(Outcome { status: Some(status), output, text, exit: None })
}

fn decompose(expr: &str, k: Option<usize>) -> Result<Outcome, CliError> {
    let f = parse_polynomial(expr).map_err(|e| syntax(expr, &e))?;
    if f.deg() == 0 {
        return Err(CliError::Usage("constant polynomial".into()));
    }
    let chain = ritt_decompose(&f);
    let verdict = match k {
        Some(k) => invertible_by_k_radicals(&f, k),
        None => invertible_by_radicals(&f),
    }
    .map_err(solvability_error)?;
    let factors: Vec<String> = chain.factors.iter().map(|g| g.to_string()).collect();
    let classes: Vec<&str> = chain.factors.iter().map(|g| classify_primitive(g).name()).collect();
    let answer = match verdict.status {
        Status::Representable => "yes",
        Status::NotRepresentable => "no",
        Status::Undecided => "undecided",
    };
    let label = k.map_or("invertible by radicals".to_string(), |k| format!("invertible by {k}-radicals"));
    let text = format!(
        "chain (innermost first): [{}]\nclasses: [{}]\ncomposition: {chain}\n{label}: {answer}\n",
        factors.join(", "),
        classes.join(", ")
    );
    let output = json!({
        "chain": factors,
        "degrees": chain.degrees(),
        "classes": classes,
        "composition": chain.to_string(),
        "invertible": answer,
        "verdict": verdict.to_json(),
    });
    Ok(Outcome { status: Some(verdict.status), output, text, exit: None })
}

fn read_input(file: &Path) -> Result<String, CliError> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))
    }
}

fn fuchsian_error(e: FuchsianError) -> CliError {
    match e {
        FuchsianError::StepSizeUnderflow { .. } => CliError::Failed(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn fuchsian(file: &Path, config: &Config) -> Result<Outcome, CliError> {
    let sys = FuchsianSystem::from_json(&read_input(file)?).map_err(fuchsian_error)?;
    let monodromy = system_monodromy(&sys, config.fuchsian_tol).map_err(fuchsian_error)?;
    let triangular = simultaneous_triangularizable(sys.residues(), config.triangular_tol).map_err(fuchsian_error)?;
    let verdict = small_norm_verdict_with(&sys, config.triangular_tol).map_err(fuchsian_error)?;
    let mut text = format!(
        "dimension {} with {} poles\nbase point: {}\n",
        sys.dimension(),
        sys.poles().len(),
        complex_text(monodromy.base)
    );
    for l in &monodromy.loops {
        let _ = writeln!(
            text,
            "loop around a_{} = {}: condition {:.3e}, {} steps",
            l.pole + 1,
            complex_text(sys.poles()[l.pole]),
            l.condition,
            l.steps
        );
        for i in 0..l.matrix.nrows() {
            let row: Vec<String> = (0..l.matrix.ncols()).map(|j| complex_text(l.matrix[(i, j)])).collect();
            let _ = writeln!(text, "  [{}]", row.join(", "));
        }
    }
    let _ = writeln!(
        text,
        "triangularizable: {}{}",
        triangular.is_yes(),
        if triangular.ambiguous { " (ambiguous)" } else { "" }
    );
    let status = match &verdict {
        FuchsianVerdict::Representable { schedule, .. } => {
            let _ = writeln!(text, "verdict: solvable by quadratures");
            for s in schedule {
                let _ = writeln!(text, "  {s}");
            }
            Status::Representable
        }
        FuchsianVerdict::NotRepresentable { max_norm, .. } => {
            let _ = writeln!(
                text,
                "verdict: strongly non-representable by generalized quadratures, conditional on the residues being \
                 small enough (max norm {max_norm:.3e}; the bound is not known explicitly)"
            );
            Status::NotRepresentable
        }
    };
    let output = json!({
        "system": sys.to_json(),
        "monodromy": monodromy.to_json(),
        "triangularization": triangular.to_json(),
        "verdict": verdict.to_json(),
    });
    Ok(Outcome { status: Some(status), output, text, exit: None })
}

fn parse_point(at: &str) -> Result<PuiseuxPoint, CliError> {
    if matches!(at.trim(), "inf" | "infinity" | "oo") {
        return Ok(PuiseuxPoint::Infinity);
    }
    let r = parse_rational_function(at).map_err(|e| syntax(at, &e))?;
    r.as_constant().map(PuiseuxPoint::Exact).ok_or_else(|| CliError::Usage(format!("point '{at}' is not a constant")))
}

fn series_text(s: &PuiseuxSeries, centre: &str) -> String {
    let var = if s.at_infinity {
        "(1/x)".to_string()
    } else if centre == "0" {
        "x".to_string()
    } else {
        format!("(x - ({centre}))")
    };
    let mut parts = Vec::new();
    for (e, c) in s.terms() {
        // at infinity the exponents are in x; print them in 1/x
        let e = if s.at_infinity { -e } else { e };
        let coeff = format!("({})", complex_text(c));
        if e == Rational::from_integer(0.into()) {
            parts.push(coeff);
        } else {
            parts.push(format!("{coeff}*{var}^({e})"));
        }
    }
    if parts.is_empty() {
        parts.push("0".into());
    }
    format!("y = {} + O({var}^({}))", parts.join(" + "), s.order)
}

fn puiseux(expr: &str, at: &str, config: &Config) -> Result<Outcome, CliError> {
    let p = parse_bivariate(expr).map_err(|e| syntax(expr, &e))?;
    let point = parse_point(at)?;
    let order: Rational = config
        .puiseux_order
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("order '{}' is not a rational number", config.puiseux_order)))?;
    let series = puiseux_expand(&p, &point, &order).map_err(|e| match e {
        PuiseuxError::NumericBreakdown { .. } => CliError::Failed(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    let centre = match &point {
        PuiseuxPoint::Exact(a) => a.to_string(),
        PuiseuxPoint::Numeric(z) => complex_text(*z),
        PuiseuxPoint::Infinity => "infinity".into(),
    };
    let multiset = ramification_multiset(&series);
    let mut text = format!("centre: {centre}\nramification: {multiset:?}\n");
    for s in &series {
        let _ = writeln!(text, "{}", series_text(s, &centre));
    }
    let output = json!({
        "centre": centre,
        "order": order.to_string(),
        "ramification": multiset,
        "series": series.iter().map(|s| {
            let mut v = serde_json::to_value(s.to_json()).expect("series serializes");
            v["text"] = Value::String(series_text(s, &centre));
            v
        }).collect::<Vec<_>>(),
    });
    Ok(Outcome { status: None, output, text, exit: None })
}
