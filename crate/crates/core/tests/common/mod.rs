#![allow(dead_code, clippy::needless_range_loop)]

use finitude::algebra::{BivariatePolynomial, GaussianRational, RationalFunction, UnivariatePolynomial};
use finitude::fuchsian::FuchsianSystem;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn nonzero(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let v = r.gen_range(lo..=hi);
        if v != 0 {
            return v;
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `y^n + b x^m + c + sum c_ij x^i y^j` over lattice points strictly below the edge
/// `i/m + j/n = 1`, with `gcd(n, m) = 1`: absolutely irreducible by the Ostrowski–Gao
/// criterion for integrally indecomposable Newton polygons.
pub fn irreducible_curve(r: &mut ChaCha8Rng, n: usize) -> BivariatePolynomial {
    let m = loop {
        let m = r.gen_range(1..=4usize);
        if gcd(n, m) == 1 {
            break m;
        }
    };
    let mut grid = vec![vec![0i64; m + 1]; n + 1];
    grid[n][0] = 1;
    grid[0][m] = nonzero(r, -3, 3);
    grid[0][0] = nonzero(r, -3, 3);
    for j in 0..n {
        for i in 0..m {
            if (i * n + j * m) < n * m && (i, j) != (0, 0) && r.gen_bool(0.6) {
                grid[j][i] = r.gen_range(-3..=3);
            }
        }
    }
    from_grid(&grid)
}

/// Eisenstein at the prime `x - c`: monic in `y`, lower coefficients divisible by `x - c`,
/// constant coefficient not divisible by `(x - c)^2`.
pub fn eisenstein_curve(r: &mut ChaCha8Rng, n: usize) -> BivariatePolynomial {
    let c = r.gen_range(-2..=2i64);
    let lin = UnivariatePolynomial::from_ints(&[-c, 1]);
    let mut cols = Vec::new();
    for j in 0..n {
        let mut g: Vec<i64> = (0..r.gen_range(1..=3)).map(|_| r.gen_range(-3..=3)).collect();
        if j == 0 {
            g[0] = nonzero(r, -3, 3);
            // keep (x - c) from dividing g
            let at_c: i64 = g.iter().enumerate().map(|(k, v)| v * c.pow(k as u32)).sum();
            if at_c == 0 {
                g[0] += 1;
            }
        }
        cols.push(&lin * &UnivariatePolynomial::from_ints(&g));
    }
    cols.push(UnivariatePolynomial::one());
    BivariatePolynomial::new(cols)
}

pub fn from_grid(grid: &[Vec<i64>]) -> BivariatePolynomial {
    BivariatePolynomial::new(grid.iter().map(|col| UnivariatePolynomial::from_ints(col)).collect())
}

pub fn random_curve(r: &mut ChaCha8Rng, max_deg: usize) -> BivariatePolynomial {
    let n = r.gen_range(2..=max_deg);
    if r.gen_bool(0.5) {
        irreducible_curve(r, n)
    } else {
        eisenstein_curve(r, n)
    }
}

pub fn gaussian(re: i64) -> GaussianRational {
    GaussianRational::from_int(re)
}

fn small_poly(r: &mut ChaCha8Rng, max_deg: usize) -> UnivariatePolynomial {
    UnivariatePolynomial::from_ints(&(0..=max_deg).map(|_| r.gen_range(-3..=3)).collect::<Vec<_>>())
}

/// Degree-`n` curve with polynomial coefficients of degree at most 2 in `x` and a leading
/// coefficient of degree at most 1, as left by clearing denominators of rational
/// coefficients.
pub fn random_dense_curve(r: &mut ChaCha8Rng, n: usize) -> BivariatePolynomial {
    let mut cols: Vec<UnivariatePolynomial> = (0..n).map(|_| small_poly(r, 2)).collect();
    let lead = loop {
        let l = small_poly(r, 1);
        if !l.is_zero() {
            break l;
        }
    };
    if cols[0].is_zero() {
        cols[0] = UnivariatePolynomial::one();
    }
    cols.push(lead);
    BivariatePolynomial::new(cols)
}

/// Labelled roots continued from the base to `x`, through an intermediate point when the
/// straight segment fails.
pub fn tracked_roots(
    p: &BivariatePolynomial,
    action: &finitude::monodromy::MonodromyAction,
    x: num_complex::Complex64,
) -> Vec<num_complex::Complex64> {
    use finitude::monodromy::{track_path, NumericCurve};
    let curve = NumericCurve::new(p);
    let d = x - action.base;
    for bend in [0.0, 0.3, -0.3, 0.6, -0.6] {
        let mid = action.base + d * num_complex::Complex64::new(0.5, bend);
        let mut ys = action.roots.clone();
        if track_path(&curve, &[action.base, mid, x], &mut ys).is_ok() {
            return ys;
        }
    }
    panic!("could not continue roots to {x}");
}

/// Random points in the disk `|x| < radius` away from the singular points.
pub fn sample_points(
    r: &mut ChaCha8Rng,
    action: &finitude::monodromy::MonodromyAction,
    radius: f64,
    count: usize,
) -> Vec<num_complex::Complex64> {
    let centers = action.singular.centers();
    let mut out = Vec::new();
    while out.len() < count {
        let x = num_complex::Complex64::new(r.gen_range(-radius..radius), r.gen_range(-radius..radius));
        if x.norm() < radius && centers.iter().all(|s| (s - x).norm() > 0.02 * (1.0 + s.norm())) {
            out.push(x);
        }
    }
    out
}

pub fn chebyshev(n: usize) -> UnivariatePolynomial {
    let two_x = UnivariatePolynomial::from_ints(&[0, 2]);
    let (mut a, mut b) = (UnivariatePolynomial::one(), UnivariatePolynomial::x());
    for _ in 1..n {
        let c = &(&two_x * &b) - &a;
        a = b;
        b = c;
    }
    b
}

pub fn random_linear(r: &mut ChaCha8Rng) -> UnivariatePolynomial {
    let a = nonzero(r, -3, 3);
    UnivariatePolynomial::linear(GaussianRational::from_int(a), GaussianRational::from_frac(r.gen_range(-4..=4), 2))
}

/// Random factor from Ritt's list, conjugated by random linear maps.
pub fn ritt_factor(r: &mut ChaCha8Rng, max_deg: usize) -> UnivariatePolynomial {
    let core = match r.gen_range(0..4) {
        0 => random_linear(r),
        1 => UnivariatePolynomial::monomial(GaussianRational::from_int(1), r.gen_range(2..=max_deg.clamp(2, 7))),
        2 => chebyshev(r.gen_range(2..=max_deg.clamp(2, 7))),
        _ => {
            let d = r.gen_range(2..=max_deg.clamp(2, 4));
            let mut c: Vec<i64> = (0..=d).map(|_| r.gen_range(-4..=4)).collect();
            c[d] = if r.gen_bool(0.5) { 1 } else { -2 };
            UnivariatePolynomial::from_ints(&c)
        }
    };
    random_linear(r).compose(&core).compose(&random_linear(r))
}

/// Composition of Ritt factors with total degree at most `max_total`.
pub fn ritt_composition(r: &mut ChaCha8Rng, max_total: usize) -> UnivariatePolynomial {
    let mut f = UnivariatePolynomial::x();
    let target = r.gen_range(4..=max_total);
    while f.deg() * 2 <= target {
        let g = ritt_factor(r, target / f.deg());
        if f.deg() * g.deg() > max_total {
            continue;
        }
        f = g.compose(&f);
    }
    f
}

/// Radical towers of `cases` random curves of degree `degree` against tracked roots at
/// 100 points each, to `1e-8` relative.
pub fn check_towers(seed: u64, degree: usize, cases: usize) -> Result<(), String> {
    use finitude::monodromy::{monodromy_group, MonodromyError};
    use finitude::solvability::radical_tower_with;
    let mut r = rng(seed);
    let mut done = 0;
    while done < cases {
        let p = random_dense_curve(&mut r, degree);
        let action = match monodromy_group(&p) {
            Ok(a) => a,
            Err(MonodromyError::SquareFreeRequired) => continue,
            Err(e) => return Err(format!("{p}: {e}")),
        };
        let tower = radical_tower_with(&p, &action).map_err(|e| format!("{p}: {e}"))?;
        let radius = 0.9 * action.base.norm();
        for x in sample_points(&mut r, &action, radius, 100) {
            let v = tower.expression.eval(x);
            let ys = tracked_roots(&p, &action, x);
            let (d, y) = ys.iter().map(|y| ((y - v).norm(), *y)).min_by(|a, b| a.0.total_cmp(&b.0)).unwrap();
            if d > 1e-8 * y.norm().max(1.0) {
                return Err(format!("{p} at {x}: {} vs {y}, {d:e}", tower.expression));
            }
        }
        done += 1;
    }
    Ok(())
}

pub fn random_poly(r: &mut ChaCha8Rng, max_deg: usize) -> UnivariatePolynomial {
    let d = r.gen_range(0..=max_deg);
    UnivariatePolynomial::from_ints(&(0..=d).map(|_| r.gen_range(-5..=5i64)).collect::<Vec<_>>())
}

pub fn random_rational(r: &mut ChaCha8Rng, num_deg: usize, den_deg: usize) -> RationalFunction {
    loop {
        let n = random_poly(r, num_deg);
        let d = random_poly(r, den_deg);
        if !n.is_zero() && !d.is_zero() {
            return RationalFunction::new(n, d);
        }
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_matrix(r: &mut ChaCha8Rng, n: usize, scale: f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |_, _| c(r.gen_range(-scale..scale), r.gen_range(-scale..scale)))
}

pub fn random_upper(r: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    let mut m = random_matrix(r, n, 1.0);
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = c(0.0, 0.0);
        }
    }
    m
}

/// Two to four well separated poles with residues of dimension at most 4.
pub fn random_system(r: &mut ChaCha8Rng) -> FuchsianSystem {
    let n = r.gen_range(1..=4);
    let k = r.gen_range(2..=4);
    loop {
        let poles: Vec<Complex64> = (0..k).map(|_| c(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))).collect();
        let spread = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| (poles[i] - poles[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if spread < 0.3 {
            continue;
        }
        let residues = (0..k).map(|_| random_matrix(r, n, 0.5)).collect();
        return FuchsianSystem::new(poles, residues).unwrap();
    }
}

pub fn rel(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
