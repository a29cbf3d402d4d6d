//! Numerical integration support: fixed-order Gauss-Legendre panel rules,
//! asymptotic tails for oscillatory `trig(w)/w^p` integrands, and a Hurwitz
//! zeta helper for lattice tail sums.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `sin(x)/x` with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum QuadError {
    #[error(
        "requested tolerance {requested:e} is unattainable; certified error bound is {certified:e}"
    )]
    ToleranceUnattainable { requested: f64, certified: f64 },

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

/// Quadrature rule selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadScheme {
    GaussLegendre { order: usize },
}

/// Scheme, panel width, absolute tolerance and optional truncation radius
/// governing every numerical integral in the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub scheme: QuadScheme,
    /// Maximum panel width in the integration variable.
    pub panel_width: f64,
    /// Absolute tolerance the result must be certified to.
    pub abs_tol: f64,
    /// Optional hard truncation radius for infinite-domain integrals;
    /// `None` selects the radius adaptively from the tail bounds.
    pub truncation_radius: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            scheme: QuadScheme::GaussLegendre { order: 16 },
            panel_width: 0.5,
            abs_tol: 1e-10,
            truncation_radius: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn order(&self) -> usize {
        match self.scheme {
            QuadScheme::GaussLegendre { order } => order,
        }
    }
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes
// ---------------------------------------------------------------------------

fn legendre_tables() -> &'static Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre polynomial and cached.
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    assert!(n >= 1);
    if let Some(hit) = legendre_tables().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x) by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let arc = Arc::new((nodes, weights));
    legendre_tables()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| arc.clone());
    arc
}

/// Integrate `f` over consecutive panels given by `edges` with the fixed
/// `order`-point Gauss-Legendre rule per panel. Summation order is fixed, so
/// the result does not depend on thread count.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, edges: &[f64], order: usize) -> f64 {
    let table = gauss_legendre(order);
    let (nodes, weights) = (&table.0, &table.1);
    let mut total = 0.0;
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, wt) in nodes.iter().zip(weights.iter()) {
            acc += wt * f(c + h * x);
        }
        total += acc * h;
    }
    total
}

/// Panel edges covering `[a, b]`: every interior point of `must_include`
/// inside `(a, b)` becomes an edge, and each gap is subdivided so no panel
/// exceeds `max_width`.
pub fn build_edges(a: f64, b: f64, max_width: f64, must_include: &[f64]) -> Vec<f64> {
    assert!(b > a && max_width > 0.0);
    let mut anchors: Vec<f64> = vec![a];
    let mut interior: Vec<f64> = must_include
        .iter()
        .copied()
        .filter(|&t| t > a && t < b)
        .collect();
    interior.sort_by(|x, y| x.partial_cmp(y).unwrap());
    interior.dedup();
    anchors.extend(interior);
    anchors.push(b);
    let mut edges = Vec::new();
    for w in anchors.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let gap = hi - lo;
        if gap <= 1e-300 {
            continue;
        }
        let parts = (gap / max_width).ceil().max(1.0) as usize;
        for i in 0..parts {
            edges.push(lo + gap * (i as f64) / (parts as f64));
        }
    }
    edges.push(b);
    edges
}

// ---------------------------------------------------------------------------
// oscillatory tails
// ---------------------------------------------------------------------------

/// One term `amp * cos(freq * w + phase)` of a trigonometric sum.
#[derive(Clone, Copy, Debug)]
pub struct CosTerm {
    pub amp: f64,
    pub freq: f64,
    pub phase: f64,
}

/// Expand `prod_j sin(s_j w) * prod_i cos(c_i w) * cos(extra_freq * w + extra_phase)`
/// into a plain sum of cosines. Exact up to floating rounding of the
/// frequency sums; term order is deterministic.
pub fn trig_product_to_cos_terms(
    sin_freqs: &[f64],
    cos_freqs: &[f64],
    extra_freq: f64,
    extra_phase: f64,
) -> Vec<CosTerm> {
    use num_complex::Complex64;
    // polynomial over frequencies: map freq -> complex amplitude of e^{i freq w}
    let mut terms: HashMap<u64, (f64, Complex64)> = HashMap::new();
    let half = Complex64::new(0.5, 0.0);
    terms.insert(
        extra_freq.to_bits(),
        (extra_freq, half * Complex64::new(0.0, extra_phase).exp()),
    );
    terms.insert(
        (-extra_freq).to_bits(),
        (-extra_freq, half * Complex64::new(0.0, -extra_phase).exp()),
    );
    if extra_freq == 0.0 {
        // both entries collapse to frequency zero
        terms.clear();
        terms.insert(0.0f64.to_bits(), (0.0, Complex64::new(extra_phase.cos(), 0.0)));
    }
    let convolve = |terms: &HashMap<u64, (f64, Complex64)>, freq: f64, plus: Complex64, minus: Complex64| {
        let mut out: HashMap<u64, (f64, Complex64)> = HashMap::with_capacity(terms.len() * 2);
        for (_, (nu, c)) in terms.iter() {
            for (df, factor) in [(freq, plus), (-freq, minus)] {
                let f = nu + df;
                let e = out.entry(f.to_bits()).or_insert((f, Complex64::new(0.0, 0.0)));
                e.1 += c * factor;
            }
        }
        out
    };
    for &c in cos_freqs {
        terms = convolve(&terms, c, Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0));
    }
    for &s in sin_freqs {
        // sin(sw) = (e^{isw} - e^{-isw}) / (2i)
        terms = convolve(
            &terms,
            s,
            Complex64::new(0.0, -0.5),
            Complex64::new(0.0, 0.5),
        );
    }
    let mut out: Vec<CosTerm> = terms
        .into_values()
        .filter(|(_, c)| c.norm() > 1e-300)
        .map(|(freq, c)| CosTerm {
            amp: c.norm(),
            freq,
            phase: c.arg(),
        })
        .collect();
    out.sort_by(|a, b| {
        a.freq
            .partial_cmp(&b.freq)
            .unwrap()
            .then(a.amp.partial_cmp(&b.amp).unwrap())
    });
    out
}

/// `∫_Ω^∞ cos(γ w + φ) / w^p dw` for one term by two integration-by-parts
/// steps; returns the value and a rigorous remainder bound. For `γ = 0` the
/// integral is exact closed form (requires `p >= 2`).
fn cos_tail_single(p: u32, omega0: f64, t: &CosTerm) -> (f64, f64) {
    let g = t.freq.abs();
    // cos(-γw + φ) = cos(γw - φ)
    let phase = if t.freq < 0.0 { -t.phase } else { t.phase };
    if g == 0.0 {
        if p < 2 {
            return (0.0, f64::INFINITY);
        }
        let v = t.amp * phase.cos() * omega0.powi(1 - p as i32) / (p as f64 - 1.0);
        return (v, 0.0);
    }
    let s = (g * omega0 + phase).sin();
    let c = (g * omega0 + phase).cos();
    let pf = p as f64;
    let v = t.amp * (-s / (g * omega0.powi(p as i32)) + pf * c / (g * g * omega0.powi(p as i32 + 1)));
    let bound = t.amp * pf / (g * g * omega0.powi(p as i32 + 1));
    (v, bound)
}

/// Tail `∫_Ω^∞ [Σ terms] / w^p dw` with a certified remainder bound.
pub fn cos_tail_sum(p: u32, omega0: f64, terms: &[CosTerm]) -> (f64, f64) {
    let mut value = 0.0;
    let mut bound = 0.0;
    for t in terms {
        let (v, b) = cos_tail_single(p, omega0, t);
        value += v;
        bound += b;
    }
    (value, bound)
}

/// Smallest `Ω >= omega_min` making the two-term tail remainder of every
/// oscillatory term at power `p` at most `budget`; `None` if some zero
/// frequency term cannot be certified (only possible for `p < 2`).
pub fn tail_cut_for_budget(
    p: u32,
    terms: &[CosTerm],
    coeff: f64,
    budget: f64,
    omega_min: f64,
    omega_max: f64,
) -> Option<f64> {
    let n = terms.iter().filter(|t| t.amp > 1e-300).count().max(1) as f64;
    let mut omega = omega_min;
    for t in terms {
        if t.amp <= 1e-300 {
            continue;
        }
        let g = t.freq.abs();
        if g == 0.0 {
            if p < 2 {
                return None;
            }
            continue; // closed form, no remainder
        }
        // amp * coeff * p / (g^2 Ω^{p+1}) <= budget / n
        let need = (t.amp * coeff * p as f64 * n / (g * g * budget)).powf(1.0 / (p as f64 + 1.0));
        omega = omega.max(need);
    }
    if omega > omega_max {
        None
    } else {
        Some(omega)
    }
}

// ---------------------------------------------------------------------------
// Hurwitz zeta for integer exponent
// ---------------------------------------------------------------------------

/// `ζ(s, a) = Σ_{j>=0} (a + j)^{-s}` for integer `s >= 2`, `a > 0`, via a few
/// explicit terms plus an Euler-Maclaurin correction.
pub fn hurwitz_zeta_int(s: u32, a: f64) -> f64 {
    assert!(s >= 2 && a > 0.0);
    let sf = s as f64;
    let explicit = 12usize;
    let mut sum = 0.0;
    for j in 0..explicit {
        sum += (a + j as f64).powi(-(s as i32));
    }
    let t = a + explicit as f64;
    sum += t.powi(1 - s as i32) / (sf - 1.0);
    sum += 0.5 * t.powi(-(s as i32));
    sum += sf / 12.0 * t.powi(-(s as i32) - 1);
    sum -= sf * (sf + 1.0) * (sf + 2.0) / 720.0 * t.powi(-(s as i32) - 3);
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        // 16-point rule is exact to degree 31
        let f = |x: f64| 5.0 * x.powi(9) - 3.0 * x.powi(4) + x - 7.0;
        let v = integrate_panels(f, &[-1.0, 1.0], 16);
        // ∫ = -6/5 - 14 = -15.2
        assert_abs_diff_eq!(v, -2.0 * 3.0 / 5.0 - 14.0, epsilon = 1e-13);
    }

    #[test]
    fn gl_various_orders() {
        for order in [4, 8, 12, 16, 24, 32] {
            let v = integrate_panels(|x| x.cos(), &build_edges(0.0, PI / 2.0, 0.3, &[]), order);
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn edges_include_interior_points() {
        let e = build_edges(0.0, 2.0, 0.6, &[0.5, 1.9, -3.0, 5.0]);
        assert!(e.contains(&0.5) && e.contains(&1.9));
        assert!(e.windows(2).all(|w| w[1] - w[0] <= 0.6 + 1e-12));
        assert_eq!(*e.first().unwrap(), 0.0);
        assert_eq!(*e.last().unwrap(), 2.0);
    }

    #[test]
    fn hurwitz_zeta_matches_direct_sum() {
        for (s, a) in [(2u32, 1.0), (3, 2.7), (5, 0.4), (8, 11.3)] {
            let direct: f64 = (0..400_000).map(|j| (a + j as f64).powi(-(s as i32))).sum();
            let tail = (a + 400_000.0).powi(1 - s as i32) / (s as f64 - 1.0);
            assert_abs_diff_eq!(hurwitz_zeta_int(s, a), direct + tail, epsilon = 1e-10);
        }
    }

    #[test]
    fn oscillatory_tail_matches_brute_force() {
        // ∫_Ω^B cos(γw + φ)/w^p dw + analytic remainder ≈ tail formula
        let term = CosTerm {
            amp: 1.3,
            freq: 0.7,
            phase: 0.4,
        };
        for p in [2u32, 3, 5] {
            let omega0 = 30.0;
            let brute = integrate_panels(
                |w| term.amp * (term.freq * w + term.phase).cos() / w.powi(p as i32),
                &build_edges(omega0, 4000.0, 0.5, &[]),
                16,
            );
            let (v, b) = cos_tail_single(p, omega0, &term);
            assert!((v - brute).abs() <= b + 1e-9, "p={p} v={v} brute={brute} bound={b}");
        }
    }

    #[test]
    fn trig_expansion_reproduces_product() {
        let sin_f = [0.25, 0.25, 0.25];
        let cos_f = [0.25];
        let (xf, xp) = (1.37, 0.3);
        let terms = trig_product_to_cos_terms(&sin_f, &cos_f, xf, xp);
        for w in [0.11, 1.9, 7.3, -2.6] {
            let direct: f64 = sin_f.iter().map(|s| (s * w).sin()).product::<f64>()
                * cos_f.iter().map(|c| (c * w).cos()).product::<f64>()
                * (xf * w + xp).cos();
            let expanded: f64 = terms.iter().map(|t| t.amp * (t.freq * w + t.phase).cos()).sum();
            assert_abs_diff_eq!(direct, expanded, epsilon = 1e-12);
        }
        // amplitude mass of the expansion is at most 1
        let amp_sum: f64 = terms.iter().map(|t| t.amp).sum();
        assert!(amp_sum <= 1.0 + 1e-12);
    }
}
