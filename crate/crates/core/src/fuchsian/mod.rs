//! Fuchsian systems `Y' = A(x) Y` with `A(x) = sum A_i / (x - a_i)`: numerical monodromy
//! along the generator loops of the monodromy module, and the triangularization criterion.
//!
//! Monodromy matrices follow the continuation convention `Y -> Y M_gamma` for the fundamental
//! solution with `Y(base) = I`; continuing along `gamma_1` and then `gamma_2` gives
//! `M_2 M_1`. With loops in their standard order, `M_k ... M_1` is the monodromy of the
//! counterclockwise circle through the base around all poles, i.e. the inverse of the
//! monodromy at infinity.

pub mod taylor;
pub mod triangular;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::ComplexInterval;
use crate::monodromy::{auto_base, enclosing_loop, generate_loops, Loop, MonodromyError, SingularSet};

pub use triangular::{
    simultaneous_triangularizable, Obstruction, TriangularOutcome, TriangularReport, Triangularization, CLUSTER_TOL,
    MAX_DIMENSION,
};

/// Default local error tolerance of the integrator.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default tolerance of the triangularization test.
pub const DEFAULT_TRIANGULAR_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum FuchsianError {
    #[error("poles {first} and {second} coincide")]
    PolesNotDistinct { first: usize, second: usize },
    #[error("{poles} poles but {matrices} residue matrices")]
    CountMismatch { poles: usize, matrices: usize },
    #[error("matrix {index} is {rows}x{cols}, expected {expected}x{expected}")]
    DimensionMismatch { index: usize, rows: usize, cols: usize, expected: usize },
    #[error("dimension {dimension} exceeds the limit {max}")]
    TooLarge { dimension: usize, max: usize },
    #[error("no matrices given")]
    NoMatrices,
    #[error("base point too close to pole {pole}")]
    BaseTooClose { pole: usize },
    #[error("step size underflow on loop {loop_index} (pole {pole:?}) near {at}")]
    StepSizeUnderflow { loop_index: usize, pole: Option<usize>, at: Complex64 },
    #[error("invalid system description: {0}")]
    Input(String),
}

/// Poles `a_i` and residue matrices `A_i`, all `N x N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuchsianSystem {
    poles: Vec<Complex64>,
    residues: Vec<DMatrix<Complex64>>,
    dimension: usize,
}

impl FuchsianSystem {
    pub fn new(poles: Vec<Complex64>, residues: Vec<DMatrix<Complex64>>) -> Result<Self, FuchsianError> {
        if poles.len() != residues.len() {
            return Err(FuchsianError::CountMismatch { poles: poles.len(), matrices: residues.len() });
        }
        let Some(first) = residues.first() else {
            return Err(FuchsianError::NoMatrices);
        };
        let n = first.nrows();
        for (index, m) in residues.iter().enumerate() {
            if m.nrows() != n || m.ncols() != n || n == 0 {
                return Err(FuchsianError::DimensionMismatch { index, rows: m.nrows(), cols: m.ncols(), expected: n });
            }
        }
        for i in 0..poles.len() {
            for j in i + 1..poles.len() {
                if (poles[i] - poles[j]).norm() <= 1e-12 * (1.0 + poles[i].norm()) {
                    return Err(FuchsianError::PolesNotDistinct { first: i, second: j });
                }
            }
        }
        Ok(FuchsianSystem { poles, residues, dimension: n })
    }

    /// Parses `{"poles": [[re, im], ...], "matrices": [...]}`. A matrix is either a list of rows
    /// or a flat row-major list of `N^2` entries; an entry is `[re, im]` or a real number.
    pub fn from_json(text: &str) -> Result<Self, FuchsianError> {
        let v: Value = serde_json::from_str(text).map_err(|e| FuchsianError::Input(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, FuchsianError> {
        let bad = |s: &str| FuchsianError::Input(s.to_string());
        let poles = v.get("poles").and_then(Value::as_array).ok_or_else(|| bad("missing \"poles\" array"))?;
        let mats = v.get("matrices").and_then(Value::as_array).ok_or_else(|| bad("missing \"matrices\" array"))?;
        let poles = poles.iter().map(complex_value).collect::<Option<Vec<_>>>().ok_or_else(|| bad("malformed pole"))?;
        let mut residues = Vec::new();
        for (k, m) in mats.iter().enumerate() {
            residues.push(matrix_value(m).ok_or_else(|| FuchsianError::Input(format!("malformed matrix {k}")))?);
        }
        Self::new(poles, residues)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "poles": self.poles.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "matrices": self.residues.iter().map(matrix_json).collect::<Vec<_>>(),
        })
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn residues(&self) -> &[DMatrix<Complex64>] {
        &self.residues
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `A(x)`.
    pub fn coefficient(&self, x: Complex64) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dimension, self.dimension);
        for (a, m) in self.poles.iter().zip(&self.residues) {
            out += m / (x - a);
        }
        out
    }

    /// Base point chosen by the rule of the monodromy module.
    pub fn auto_base(&self) -> Complex64 {
        auto_base(&self.singular_set())
    }

    fn singular_set(&self) -> SingularSet {
        SingularSet::from_points(self.poles.iter().map(|&z| ComplexInterval::new(z, 0.0)).collect())
    }

    fn field(&self) -> taylor::Field<'_> {
        taylor::Field { poles: &self.poles, residues: &self.residues }
    }
}

fn complex_value(v: &Value) -> Option<Complex64> {
    if let Some(x) = v.as_f64() {
        return Some(Complex64::new(x, 0.0));
    }
    match v.as_array()?.as_slice() {
        [re, im] => Some(Complex64::new(re.as_f64()?, im.as_f64()?)),
        [re] => Some(Complex64::new(re.as_f64()?, 0.0)),
        _ => None,
    }
}

fn matrix_value(v: &Value) -> Option<DMatrix<Complex64>> {
    let items = v.as_array()?;
    let n = items.len();
    let as_rows = n > 0 && items.iter().all(|r| r.as_array().is_some_and(|r| r.len() == n));
    if as_rows {
        let rows: Option<Vec<Vec<Complex64>>> =
            items.iter().map(|r| r.as_array().unwrap().iter().map(complex_value).collect()).collect();
        if let Some(rows) = rows {
            return Some(DMatrix::from_fn(n, n, |i, j| rows[i][j]));
        }
    }
    let flat: Vec<Complex64> = items.iter().map(complex_value).collect::<Option<_>>()?;
    let n = (flat.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != flat.len() {
        return None;
    }
    Some(DMatrix::from_row_slice(n, n, &flat))
}

/// Rows of `[re, im]` pairs.
pub fn matrix_json(m: &DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

/// Ratio of extreme singular values.
pub fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let s = m.clone().singular_values();
    let max = s.iter().copied().fold(0.0, f64::max);
    let min = s.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

#[derive(Clone, Debug)]
pub struct LoopMonodromy {
    /// Index of the encircled pole.
    pub pole: usize,
    pub matrix: DMatrix<Complex64>,
    pub condition: f64,
    pub steps: usize,
}

#[derive(Clone, Debug)]
pub struct MonodromyMatrices {
    pub base: Complex64,
    pub dimension: usize,
    /// In loop order.
    pub loops: Vec<LoopMonodromy>,
}

impl MonodromyMatrices {
    /// `M_k ... M_1`, the monodromy of the loops traversed in order.
    pub fn ordered_product(&self) -> DMatrix<Complex64> {
        let mut p = DMatrix::identity(self.dimension, self.dimension);
        for l in &self.loops {
            p = &l.matrix * p;
        }
        p
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": [self.base.re, self.base.im],
            "normalization": "identity at base",
            "loops": self.loops.iter().map(|l| json!({
                "pole": l.pole,
                "matrix": matrix_json(&l.matrix),
                "condition": l.condition,
                "steps": l.steps,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Monodromy of the fundamental solution normalized at the base along a closed path.
pub fn path_monodromy(sys: &FuchsianSystem, path: &Loop, tol: f64) -> Result<(DMatrix<Complex64>, usize), Complex64> {
    sys.field().transport(sys.dimension, &path.waypoints, tol)
}

pub fn system_monodromy(sys: &FuchsianSystem, tol: f64) -> Result<MonodromyMatrices, FuchsianError> {
    system_monodromy_with(sys, tol, None)
}

/// One matrix per pole, in the loop order of the monodromy module.
pub fn system_monodromy_with(
    sys: &FuchsianSystem,
    tol: f64,
    base: Option<Complex64>,
) -> Result<MonodromyMatrices, FuchsianError> {
    let set = sys.singular_set();
    let base = base.unwrap_or_else(|| auto_base(&set));
    let loops = generate_loops(&set, Some(base)).map_err(|e| match e {
        MonodromyError::BasePointTooClose { point } => FuchsianError::BaseTooClose { pole: point },
        other => FuchsianError::Input(other.to_string()),
    })?;
    let results: Vec<Result<LoopMonodromy, FuchsianError>> = loops
        .par_iter()
        .enumerate()
        .map(|(loop_index, l)| {
            let pole = l.encircled.expect("generator loops encircle a pole");
            let (matrix, steps) = path_monodromy(sys, l, tol).map_err(|at| FuchsianError::StepSizeUnderflow {
                loop_index,
                pole: Some(pole),
                at,
            })?;
            Ok(LoopMonodromy { pole, condition: condition_number(&matrix), matrix, steps })
        })
        .collect();
    Ok(MonodromyMatrices { base, dimension: sys.dimension, loops: results.into_iter().collect::<Result<_, _>>()? })
}

/// Monodromy around infinity: the circle about the origin through `base`, traversed
/// clockwise. `base` must lie outside the disc containing the poles.
pub fn infinity_monodromy(
    sys: &FuchsianSystem,
    base: Complex64,
    tol: f64,
) -> Result<DMatrix<Complex64>, FuchsianError> {
    if let Some(pole) = sys.poles.iter().position(|a| a.norm() >= base.norm() * (1.0 - 1e-9)) {
        return Err(FuchsianError::BaseTooClose { pole });
    }
    let mut l = enclosing_loop(base);
    l.waypoints.reverse();
    path_monodromy(sys, &l, tol).map(|r| r.0).map_err(|at| FuchsianError::StepSizeUnderflow {
        loop_index: usize::MAX,
        pole: None,
        at,
    })
}

/// Solution step `j` of the triangular system `Z' = T(x) Z`, bottom row first:
/// `z_j = E_j (c_j + integral E_j^-1 sum_l t_jl z_l dx)` with `E_j = prod (x - a_i)^(e_ij)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleStep {
    pub row: usize,
    /// Exponent `e_ij` for each pole.
    pub exponents: Vec<Complex64>,
    /// Rows `l > j` entering the integrand.
    pub couplings: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// Simultaneously triangularizable: solvable by quadratures along the schedule.
    Representable { basis: DMatrix<Complex64>, schedule: Vec<ScheduleStep>, ambiguous: bool },
    /// No common flag. Non-representability follows only under the small-norm hypothesis,
    /// whose bound is not known explicitly.
    NotRepresentable { max_norm: f64, norms: Vec<f64>, obstruction: Obstruction, ambiguous: bool },
}

impl Verdict {
    pub fn is_representable(&self) -> bool {
        matches!(self, Verdict::Representable { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::Representable { basis, schedule, ambiguous } => json!({
                "verdict": "solvable by quadratures",
                "conditional": false,
                "ambiguous": ambiguous,
                "basis": matrix_json(basis),
                "schedule": schedule.iter().map(|s| json!({
                    "row": s.row,
                    "exponents": s.exponents.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                    "couplings": s.couplings,
                    "text": s.to_string(),
                })).collect::<Vec<_>>(),
            }),
            Verdict::NotRepresentable { max_norm, norms, obstruction, ambiguous } => json!({
                "verdict": "strongly non-representable by generalized quadratures",
                "conditional": true,
                "condition": "residue norms below the unspecified small-norm bound",
                "ambiguous": ambiguous,
                "max_norm": max_norm,
                "norms": norms,
                "witness_dimension": obstruction.subspace.ncols(),
                "witness_pair": obstruction.pair.map(|(a, b)| vec![a, b]),
            }),
        }
    }
}

fn complex_text(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else {
        format!("{re}{}{}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

impl fmt::Display for ScheduleStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = self.row + 1;
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, e)| e.norm() > 1e-12)
            .map(|(i, e)| format!("(x - a_{})^({})", i + 1, complex_text(*e)))
            .collect();
        let e = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
        if self.couplings.is_empty() {
            write!(f, "z_{j} = {e}*c_{j}")
        } else {
            let sum: Vec<String> = self.couplings.iter().map(|l| format!("t_{j},{}*z_{}", l + 1, l + 1)).collect();
            write!(f, "z_{j} = {e}*(c_{j} + integral(({e})^-1*({}) dx))", sum.join(" + "))
        }
    }
}

/// Triangularizable residues give an explicit quadrature schedule; otherwise the
/// non-representability verdict is reported as conditional together with the norms.
pub fn small_norm_verdict(sys: &FuchsianSystem) -> Result<Verdict, FuchsianError> {
    small_norm_verdict_with(sys, DEFAULT_TRIANGULAR_TOL)
}

pub fn small_norm_verdict_with(sys: &FuchsianSystem, tol: f64) -> Result<Verdict, FuchsianError> {
    let report = simultaneous_triangularizable(&sys.residues, tol)?;
    let ambiguous = report.ambiguous;
    match report.outcome {
        TriangularOutcome::Yes(t) => {
            let n = sys.dimension;
            let schedule = (0..n)
                .rev()
                .map(|j| ScheduleStep {
                    row: j,
                    exponents: t.conjugated.iter().map(|m| m[(j, j)]).collect(),
                    couplings: (j + 1..n)
                        .filter(|&l| {
                            t.conjugated.iter().zip(&sys.residues).any(|(m, a)| m[(j, l)].norm() > tol * a.norm())
                        })
                        .collect(),
                })
                .collect();
            Ok(Verdict::Representable { basis: t.basis, schedule, ambiguous })
        }
        TriangularOutcome::No(obstruction) => {
            let norms: Vec<f64> = sys.residues.iter().map(|m| m.norm()).collect();
            let max_norm = norms.iter().copied().fold(0.0, f64::max);
            Ok(Verdict::NotRepresentable { max_norm, norms, obstruction, ambiguous })
        }
    }
}
