//! Oscillatory integrals over the class space: the entire function
//! `C(s) = int nu(D) a(D)^{-s} d0D`, its Gamma-quotient asymptotics, the
//! closed-form hyperplane integrals with their quadrature oracle, and the
//! `A(s)` factor that normalizes the two-variable zeta into a ratio tending
//! to 1.

use crate::arakelov::invariants_abnu;
use crate::classspace::{integrate, ClassSpaceGrid};
use crate::error::{Error, Result};
use crate::fielddata::NumberFieldData;
use crate::gamma::ln_gamma;
use crate::quadrature::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Parameters of the hyperplane integral
/// `int_{H_N} (sum c_i exp(-nu_i x_i))^{-s} d lambda` over
/// `H_N = { sum x_i = 0 }` with the drop-one-coordinate Lebesgue measure.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneIntegralSpec {
    pub c: Vec<f64>,
    pub nu: Vec<u32>,
}

impl HyperplaneIntegralSpec {
    pub fn new(c: Vec<f64>, nu: Vec<u32>) -> Result<Self> {
        if c.len() != nu.len() || c.len() < 2 {
            return Err(Error::InvalidInput("need N >= 2 matching weights and exponents".into()));
        }
        if c.iter().any(|&x| !(x > 0.0)) || nu.iter().any(|&v| v == 0) {
            return Err(Error::InvalidInput("weights and exponents must be positive".into()));
        }
        Ok(HyperplaneIntegralSpec { c, nu })
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// q = 1 / sum(1/nu_i).
    pub fn q_exp(&self) -> f64 {
        1.0 / self.nu.iter().map(|&v| 1.0 / v as f64).sum::<f64>()
    }
}

/// Closed form
/// `q (nu_1 ... nu_N)^{-1} (prod c_i^{q/nu_i})^{-s} Gamma(s)^{-1} prod Gamma(q s / nu_i)`,
/// evaluated in log space. Requires Re s > 0.
pub fn hyperplane_integral_closed(spec: &HyperplaneIntegralSpec, s: Complex64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(Error::InvalidInput(format!("closed form needs Re s > 0, got {s}")));
    }
    let q = spec.q_exp();
    let mut log = Complex64::new(q.ln(), 0.0);
    for &v in &spec.nu {
        log -= (v as f64).ln();
    }
    let mut log_c = 0.0;
    for (ci, &v) in spec.c.iter().zip(&spec.nu) {
        log_c += q / v as f64 * ci.ln();
    }
    log -= s * log_c;
    log -= ln_gamma(s);
    for &v in &spec.nu {
        log += ln_gamma(s * (q / v as f64));
    }
    Ok(log.exp())
}

struct Kahan {
    sum: Complex64,
    carry: Complex64,
}

impl Kahan {
    fn new() -> Self {
        Kahan { sum: Complex64::new(0.0, 0.0), carry: Complex64::new(0.0, 0.0) }
    }
    fn add(&mut self, v: Complex64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Quadrature oracle for `hyperplane_integral_closed` on the chart of `H_N`
/// that drops the last coordinate. Desk-scale only: N <= 4.
pub fn hyperplane_integral_numeric(
    spec: &HyperplaneIntegralSpec,
    s: Complex64,
    tol: f64,
) -> Result<Complex64> {
    hyperplane_integral_numeric_chart(spec, s, tol, spec.n() - 1)
}

/// Same oracle with an explicit choice of dropped coordinate (charts must
/// agree: the hyperplane measure does not depend on the chart).
pub fn hyperplane_integral_numeric_chart(
    spec: &HyperplaneIntegralSpec,
    s: Complex64,
    tol: f64,
    drop: usize,
) -> Result<Complex64> {
    let n = spec.n();
    if n > 4 {
        return Err(Error::Capability("quadrature oracle is desk-scale only (N <= 4)".into()));
    }
    if s.re < 1.0 {
        return Err(Error::InvalidInput("oracle needs Re s >= 1 for safe decay".into()));
    }
    if drop >= n {
        return Err(Error::InvalidInput("dropped coordinate out of range".into()));
    }
    let dims = n - 1;
    let c_min = spec.c.iter().cloned().fold(f64::INFINITY, f64::min);
    // truncation radius by monotone search: the sum dominates
    // c exp(||x||_inf / (N-1)), so the outside-the-box mass is below
    // c^{-Re s} exp(-Re s R/(N-1)) times polynomial surface growth
    let mut radius = 4.0f64;
    let bound = |r: f64| -> f64 {
        c_min.powf(-s.re)
            * (-s.re * r / (n as f64 - 1.0)).exp()
            * (2.0 * r + 2.0).powi(n as i32 - 2)
            * 8.0
            * n as f64
    };
    while bound(radius) > tol * 1e-2 {
        radius += 1.0;
        if radius > 400.0 {
            return Err(Error::Numeric("truncation radius search did not converge".into()));
        }
    }
    let panel_width = 2.0;
    let panels = (radius / panel_width).ceil() as usize;
    let half_span = panels as f64 * panel_width;
    let nodes = if dims <= 2 { 16 } else { 12 };
    let (xs, ws) = gauss_legendre(nodes);
    // 1-D node/weight tables over [-half_span, half_span]
    let mut grid_x = Vec::with_capacity(2 * panels * nodes);
    let mut grid_w = Vec::with_capacity(2 * panels * nodes);
    for p in 0..2 * panels {
        let lo = -half_span + p as f64 * panel_width;
        let c0 = lo + 0.5 * panel_width;
        for (x, w) in xs.iter().zip(ws.iter()) {
            grid_x.push(c0 + 0.5 * panel_width * x);
            grid_w.push(0.5 * panel_width * w);
        }
    }
    let m = grid_x.len();
    // chart coordinates fill the non-dropped slots in order
    let slots: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
    let mut acc = Kahan::new();
    let mut x = vec![0.0f64; n];
    let mut idx = vec![0usize; dims];
    loop {
        let mut wt = 1.0;
        let mut usum = 0.0;
        for (d, &i) in idx.iter().enumerate() {
            let u = grid_x[i];
            x[slots[d]] = u;
            usum += u;
            wt *= grid_w[i];
        }
        x[drop] = -usum;
        let mut f = 0.0;
        for i in 0..n {
            f += spec.c[i] * (-(spec.nu[i] as f64) * x[i]).exp();
        }
        acc.add((-s * f.ln()).exp() * wt);
        // odometer
        let mut k = 0;
        loop {
            if k == dims {
                break;
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == dims {
            break;
        }
    }
    Ok(acc.sum)
}

/// The asymptotic constant `alpha_k = (pi n)^{r/2} 2^{-r1/2} sqrt(2/n)`.
pub fn alpha_k(f: &NumberFieldData) -> f64 {
    let n = f.degree_n as f64;
    ((PI * n).powi(f.unit_rank_r as i32) * 2.0 / (2f64.powi(f.r1 as i32) * n)).sqrt()
}

/// `C(s) = int nu(D) a(D)^{-s} d0D` over the grid.
pub fn c_integral(f: &NumberFieldData, grid: &ClassSpaceGrid, s: Complex64) -> Result<Complex64> {
    let mut err = None;
    let v = integrate(grid, |p| match invariants_abnu(f, &p.divisor) {
        Ok(inv) => (-s * inv.a.ln()).exp() * inv.nu as f64,
        Err(e) => {
            err = Some(e);
            Complex64::new(0.0, 0.0)
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// `R(s) = C(s) s^{r/2} n^s / (|mu| alpha_k)`, the ratio that tends to 1.
pub fn asymptotic_ratio(f: &NumberFieldData, grid: &ClassSpaceGrid, s: f64) -> Result<f64> {
    let c = c_integral(f, grid, Complex64::new(s, 0.0))?;
    let n = f.degree_n as f64;
    Ok(c.re * s.powf(f.unit_rank_r as f64 / 2.0) * n.powf(s) / (f.mu_count as f64 * alpha_k(f)))
}

pub(crate) fn corollary_433_log_parts(n: usize, r1: usize, r2: usize, s: Complex64) -> Complex64 {
    let nf = n as f64;
    let mut log = Complex64::new(-(nf.ln()) + (1.0 - r1 as f64) * 2f64.ln(), 0.0);
    log -= s * (2.0 * r2 as f64 / nf) * 2f64.ln();
    log -= ln_gamma(s);
    log += ln_gamma(s / nf) * r1 as f64;
    log += ln_gamma(s * 2.0 / nf) * r2 as f64;
    log
}

/// Log of the closed form of the signature hyperplane integral
/// `n^{-1} 2^{1-r1} 2^{-2 s r2 / n} Gamma(s)^{-1} Gamma(s/n)^{r1} Gamma(2s/n)^{r2}`.
/// Requires unit rank >= 1 and Re s > 0.
pub fn corollary_433_log(f: &NumberFieldData, s: Complex64) -> Result<Complex64> {
    if f.unit_rank_r == 0 {
        return Err(Error::InvalidInput("signature integral needs unit rank >= 1".into()));
    }
    if s.re <= 0.0 {
        return Err(Error::InvalidInput("closed form needs Re s > 0".into()));
    }
    Ok(corollary_433_log_parts(f.degree_n, f.r1, f.r2, s))
}

/// Exponentiated form of [`corollary_433_log`]; asymptotically
/// `alpha_k s^{-r/2} n^{-s}`.
pub fn corollary_433_closed(f: &NumberFieldData, s: Complex64) -> Result<Complex64> {
    Ok(corollary_433_log(f, s)?.exp())
}

/// `A(s) = (n/2) pi^{-ns/2} Gamma(ns/2) C(ns/2)`.
pub fn a_factor(f: &NumberFieldData, grid: &ClassSpaceGrid, s: Complex64) -> Result<Complex64> {
    let n = f.degree_n as f64;
    let half_ns = s * (n / 2.0);
    // Gamma pole guard at nonpositive integers
    let nearest = half_ns.re.round();
    if nearest <= 0.0 && (half_ns - nearest).norm() < 1e-8 {
        return Err(Error::Pole { at: half_ns, residue: Complex64::new(f64::NAN, 0.0) });
    }
    let c = c_integral(f, grid, half_ns)?;
    Ok((Complex64::new(n / 2.0, 0.0).ln() - half_ns * PI.ln() + ln_gamma(half_ns)).exp() * c)
}

/// `C~(s) = 2^{r1/2} sqrt(n/2) int (nu/|mu|) (a/n)^{-ns/2} d0D`; identically 1
/// for the rationals and `1 + O(q^{-s})`-style finite Dirichlet series for
/// unit rank 0.
pub fn c_tilde(f: &NumberFieldData, grid: &ClassSpaceGrid, s: Complex64) -> Result<Complex64> {
    let n = f.degree_n as f64;
    let prefactor = (2f64.powi(f.r1 as i32) * n / 2.0).sqrt();
    let mu = f.mu_count as f64;
    let half_ns = s * (n / 2.0);
    let mut err = None;
    let v = integrate(grid, |p| match invariants_abnu(f, &p.divisor) {
        Ok(inv) => (-half_ns * (inv.a / n).ln()).exp() * (inv.nu as f64 / mu),
        Err(e) => {
            err = Some(e);
            Complex64::new(0.0, 0.0)
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(v * prefactor),
    }
}

/// Relative change of `C(s)` when the integral is restricted to the
/// principal-class cells with `||x||_inf < eps` (the locality of the
/// asymptotics at the trivial class).
pub fn c_integral_locality_change(
    f: &NumberFieldData,
    grid: &ClassSpaceGrid,
    s: Complex64,
    eps: f64,
) -> Result<f64> {
    let full = c_integral(f, grid, s)?;
    let mut err = None;
    let restricted = integrate(grid, |p| {
        // wrap each torus coordinate to its nearest-integer representative
        // before measuring the sup norm of x (D = 0 sits at theta = 0 ~ 1)
        let mut x = vec![0.0; f.places()];
        for (i, t) in p.theta.iter().enumerate() {
            let tw = t - t.round();
            for (v, xv) in x.iter_mut().enumerate() {
                *xv += tw * f.unit_logs[i][v];
            }
        }
        let inside =
            p.class_index == 0 && x.iter().all(|&xv| xv.abs() < eps);
        if !inside {
            return Complex64::new(0.0, 0.0);
        }
        match invariants_abnu(f, &p.divisor) {
            Ok(inv) => (-s * inv.a.ln()).exp() * inv.nu as f64,
            Err(e) => {
                err = Some(e);
                Complex64::new(0.0, 0.0)
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok((full - restricted).norm() / full.norm())
}
