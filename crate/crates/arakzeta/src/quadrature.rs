//! Gauss-Legendre panel quadrature and deterministic summation helpers.

use num_complex::Complex64;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_n'(x) via the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
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
    (nodes, weights)
}

/// Deterministic pairwise (tree) sum. Order-insensitive to parallel setup
/// because it is sequential; used everywhere a reduction must be reproducible.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

pub fn pairwise_sum_f64(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum_f64(&values[..mid]) + pairwise_sum_f64(&values[mid..])
        }
    }
}

/// Integrate `f` over `[a, b]` with `panels` equal Gauss-Legendre panels of
/// `nodes` points each.
pub fn integrate_panels<F>(f: &F, a: f64, b: f64, panels: usize, nodes: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (xs, ws) = gauss_legendre(nodes);
    let h = (b - a) / panels as f64;
    let mut vals = Vec::with_capacity(panels * nodes);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let c = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in xs.iter().zip(ws.iter()) {
            vals.push(f(c + half * x) * (w * half));
        }
    }
    pairwise_sum(&vals)
}

/// Panel-doubling integrator: doubles the panel count until two successive
/// results differ by less than `tol` (absolute), then returns the finer value
/// together with the last difference as the quadrature error estimate.
pub fn integrate_adaptive<F>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    nodes: usize,
    initial_panels: usize,
    max_rounds: usize,
) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let mut panels = initial_panels.max(1);
    let mut prev = integrate_panels(f, a, b, panels, nodes);
    let mut diff = f64::INFINITY;
    for _ in 0..max_rounds {
        panels *= 2;
        let next = integrate_panels(f, a, b, panels, nodes);
        diff = (next - prev).norm();
        prev = next;
        if diff < tol {
            break;
        }
    }
    (prev, diff)
}
