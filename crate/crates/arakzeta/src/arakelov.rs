//! Arakelov divisors as metrized ideal lattices: Gram matrices, complete
//! short-vector enumeration, the invariants `a`, `b`, `nu`, the theta series
//! `k0`/`k1` and the Riemann-Roch residual.

use crate::error::{Error, Result};
use crate::fielddata::NumberFieldData;
use std::f64::consts::PI;

/// Relative tolerance band inside which two squared lengths count as equal
/// when computing the kissing number on a non-integer Gram matrix.
pub const DEFAULT_EQUALITY_BAND: f64 = 1e-9;

const THETA_CAP_DOUBLINGS: u32 = 10;

/// An Arakelov divisor up to its finite part's ideal class: the index of the
/// stored class representative plus the infinite components `x_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArakelovDivisor {
    pub class_index: usize,
    /// Length r1 + r2.
    pub x: Vec<f64>,
}

impl ArakelovDivisor {
    pub fn new(class_index: usize, x: Vec<f64>) -> Self {
        ArakelovDivisor { class_index, x }
    }

    /// The zero divisor on the principal class.
    pub fn zero(f: &NumberFieldData) -> Self {
        ArakelovDivisor { class_index: 0, x: vec![0.0; f.places()] }
    }

    /// The divisor D_t with N(D_t) = t: x_v = (e_v / n) log t.
    pub fn d_t(f: &NumberFieldData, t: f64) -> Self {
        let lt = t.ln();
        let n = f.degree_n as f64;
        let x = (0..f.places()).map(|v| f.e_v(v) / n * lt).collect();
        ArakelovDivisor { class_index: 0, x }
    }

    /// D + D_t (same class, shifted infinite components).
    pub fn plus_dt(&self, f: &NumberFieldData, t: f64) -> Self {
        let lt = t.ln();
        let n = f.degree_n as f64;
        let x = self
            .x
            .iter()
            .enumerate()
            .map(|(v, &xv)| xv + f.e_v(v) / n * lt)
            .collect();
        ArakelovDivisor { class_index: self.class_index, x }
    }
}

/// Squared minimum, second value and kissing number of the lattice of a
/// divisor class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeInvariants {
    pub a: f64,
    pub b: f64,
    pub nu: usize,
}

/// Arakelov norm N(D) = N(I(D))^{-1} prod_v e^{x_v}.
pub fn arakelov_norm(f: &NumberFieldData, d: &ArakelovDivisor) -> f64 {
    let s: f64 = d.x.iter().sum();
    s.exp() / f.ideal_classes[d.class_index].norm
}

/// Gram matrix of the stored Z-basis of `I(D)` in the divisor norm:
/// `<b_i, b_j>_D = sum_real b_i b_j e^{-2 x_v} + 2 sum_cplx (Re Re + Im Im) e^{-x_v}`.
pub fn lattice_gram(f: &NumberFieldData, d: &ArakelovDivisor) -> Result<Vec<Vec<f64>>> {
    if d.class_index >= f.ideal_classes.len() {
        return Err(Error::InvalidInput(format!(
            "class index {} out of range (h = {})",
            d.class_index,
            f.ideal_classes.len()
        )));
    }
    if d.x.len() != f.places() {
        return Err(Error::InvalidInput(format!(
            "x has length {}, expected {}",
            d.x.len(),
            f.places()
        )));
    }
    if d.x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("x has non-finite entries".into()));
    }
    let b = &f.ideal_classes[d.class_index].embedding;
    let n = f.degree_n;
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for v in 0..f.r1 {
                acc += b[i][v] * b[j][v] * (-2.0 * d.x[v]).exp();
            }
            for v in 0..f.r2 {
                let col = f.r1 + 2 * v;
                acc += 2.0
                    * (-d.x[f.r1 + v]).exp()
                    * (b[i][col] * b[j][col] + b[i][col + 1] * b[j][col + 1]);
            }
            g[i][j] = acc;
            g[j][i] = acc;
        }
    }
    Ok(g)
}

fn cholesky(g: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = g[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return Err(Error::Numeric(
                        "matrix is not symmetric positive definite".into(),
                    ));
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Ok(l)
}

fn quad_form(g: &[Vec<f64>], c: &[i64]) -> f64 {
    let n = c.len();
    let mut acc = 0.0;
    for i in 0..n {
        if c[i] == 0 {
            continue;
        }
        for j in 0..n {
            if c[j] != 0 {
                acc += c[i] as f64 * c[j] as f64 * g[i][j];
            }
        }
    }
    acc
}

/// Complete list of nonzero integer vectors `c` with `c^T G c <= bound`,
/// Fincke-Pohst style (Cholesky branch-and-bound). Both `c` and `-c` are
/// returned; the result is sorted by (value, coordinates) and deterministic.
pub fn enumerate_vectors(g: &[Vec<f64>], bound: f64) -> Result<Vec<(Vec<i64>, f64)>> {
    if bound <= 0.0 {
        return Err(Error::InvalidInput("enumeration bound must be positive".into()));
    }
    let n = g.len();
    let l = cholesky(g)?;
    // Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 with d_i = L_ii^2,
    // mu_ij = L_ji / L_ii  (column representation of R = L^T).
    let mut diag = vec![0.0; n];
    let mut mu = vec![vec![0.0; n]; n];
    for i in 0..n {
        diag[i] = l[i][i] * l[i][i];
        for j in i + 1..n {
            mu[i][j] = l[j][i] / l[i][i];
        }
    }
    let cap = bound * (1.0 + 1e-12);
    let mut half: Vec<Vec<i64>> = Vec::new();
    let mut coords = vec![0i64; n];
    enumerate_level(
        n - 1,
        cap,
        &diag,
        &mu,
        &mut coords,
        true,
        &mut half,
    );
    let mut out: Vec<(Vec<i64>, f64)> = Vec::with_capacity(2 * half.len());
    for c in half {
        let v = quad_form(g, &c);
        if v <= cap {
            let neg: Vec<i64> = c.iter().map(|&x| -x).collect();
            out.push((c, v));
            out.push((neg, v));
        }
    }
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Depth-first search over level `i` (outermost = n-1). `canonical` is true
/// while all outer coordinates are zero; then only nonnegative values are
/// tried so that each +-pair is found once.
fn enumerate_level(
    i: usize,
    remaining: f64,
    diag: &[f64],
    mu: &[Vec<f64>],
    coords: &mut Vec<i64>,
    canonical: bool,
    out: &mut Vec<Vec<i64>>,
) {
    // center contributed by the outer (already fixed) coordinates
    let center: f64 = (i + 1..coords.len()).map(|j| mu[i][j] * coords[j] as f64).sum();
    let radius = (remaining / diag[i]).max(0.0).sqrt();
    let lo = if canonical {
        // first nonzero coordinate (from the outside in) is made positive
        (-center - radius).ceil().max(0.0) as i64
    } else {
        (-center - radius).ceil() as i64
    };
    let hi = (-center + radius).floor() as i64;
    for c in lo..=hi {
        coords[i] = c;
        let term = diag[i] * (c as f64 + center) * (c as f64 + center);
        if term > remaining * (1.0 + 1e-12) + 1e-300 {
            continue;
        }
        if i == 0 {
            if !(canonical && c == 0) {
                out.push(coords.clone());
            }
        } else {
            enumerate_level(
                i - 1,
                remaining - term,
                diag,
                mu,
                coords,
                canonical && c == 0,
                out,
            );
        }
    }
    coords[i] = 0;
}

/// True when every Gram entry is within 1e-9 of an integer; then squared
/// lengths are compared exactly in integer arithmetic.
fn integral_gram(g: &[Vec<f64>]) -> Option<Vec<Vec<i64>>> {
    let mut gi = vec![vec![0i64; g.len()]; g.len()];
    for (i, row) in g.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let r = v.round();
            if (v - r).abs() > 1e-9 * v.abs().max(1.0) || r.abs() > 9.0e15 {
                return None;
            }
            gi[i][j] = r as i64;
        }
    }
    Some(gi)
}

fn quad_form_int(g: &[Vec<i64>], c: &[i64]) -> i128 {
    let n = c.len();
    let mut acc: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            acc += c[i] as i128 * c[j] as i128 * g[i][j] as i128;
        }
    }
    acc
}

/// `a`, `b`, `nu` with the default floating-point equality band.
pub fn invariants_abnu(f: &NumberFieldData, d: &ArakelovDivisor) -> Result<LatticeInvariants> {
    invariants_abnu_with_band(f, d, DEFAULT_EQUALITY_BAND)
}

/// `a` = least squared length, `nu` = its multiplicity, `b` = least value
/// strictly above `a`. Enumeration bound `4a` suffices for `b` because
/// doubling a minimal vector realizes `4a`. Ties are resolved exactly when
/// the Gram matrix has integer entries, otherwise inside the given band.
pub fn invariants_abnu_with_band(
    f: &NumberFieldData,
    d: &ArakelovDivisor,
    band: f64,
) -> Result<LatticeInvariants> {
    let g = lattice_gram(f, d)?;
    let min_diag = g
        .iter()
        .enumerate()
        .map(|(i, row)| row[i])
        .fold(f64::INFINITY, f64::min);
    let short = enumerate_vectors(&g, min_diag)?;
    let a0 = short
        .iter()
        .map(|(_, v)| *v)
        .fold(f64::INFINITY, f64::min);
    let list = enumerate_vectors(&g, 4.0 * a0 * (1.0 + band) + 1e-12)?;
    if let Some(gi) = integral_gram(&g) {
        let mut ints: Vec<i128> = list.iter().map(|(c, _)| quad_form_int(&gi, c)).collect();
        ints.sort_unstable();
        let a_int = ints[0];
        let nu = ints.iter().take_while(|&&v| v == a_int).count();
        let b_int = *ints
            .iter()
            .find(|&&v| v > a_int)
            .expect("4a is always realized by a doubled minimal vector");
        Ok(LatticeInvariants { a: a_int as f64, b: b_int as f64, nu })
    } else {
        let mut vals: Vec<f64> = list.iter().map(|(_, v)| *v).collect();
        vals.sort_by(|x, y| x.total_cmp(y));
        let a = vals[0];
        let cut = a * (1.0 + band);
        let nu = vals.iter().take_while(|&&v| v <= cut).count();
        let b = *vals
            .iter()
            .find(|&&v| v > cut)
            .expect("4a is always realized by a doubled minimal vector");
        Ok(LatticeInvariants { a, b, nu })
    }
}

/// Sorted squared lengths of the nonzero vectors of the lattice of `d` up to
/// `bound`, reusable for many theta evaluations at different scalings:
/// `k0(D + D_t) = 1 + sum exp(-pi t^{-2/n} value)`.
#[derive(Debug, Clone)]
pub struct ThetaSeries {
    values: Vec<f64>,
    pub bound: f64,
}

impl ThetaSeries {
    pub fn build(f: &NumberFieldData, d: &ArakelovDivisor, bound: f64) -> Result<Self> {
        let g = lattice_gram(f, d)?;
        let list = enumerate_vectors(&g, bound)?;
        let mut values: Vec<f64> = list.into_iter().map(|(_, v)| v).collect();
        values.sort_by(|x, y| x.total_cmp(y));
        Ok(ThetaSeries { values, bound })
    }

    /// `1 + sum_v exp(-pi sigma v)` over the cached values.
    pub fn eval(&self, sigma: f64) -> f64 {
        1.0 + self.excess(sigma)
    }

    /// `k0 - 1 = sum_v exp(-pi sigma v)` kept as a raw sum; at strong
    /// scalings this is far below machine epsilon relative to 1 and must
    /// never round through `1 + x`. Terms are summed smallest-first (values
    /// are sorted ascending, so exponentials descend).
    pub fn excess(&self, sigma: f64) -> f64 {
        // index of the first value whose exponential underflows
        let cutoff = 745.0 / (PI * sigma);
        let cut = self.values.partition_point(|&v| v < cutoff);
        let mut acc = 0.0;
        for &v in self.values[..cut].iter().rev() {
            acc += (-PI * sigma * v).exp();
        }
        acc
    }

    /// Crude bound for the dropped tail at scaling `sigma`: geometric
    /// domination of the shells beyond `bound` once `pi sigma bound >= 2`.
    pub fn tail_bound(&self, sigma: f64) -> f64 {
        let t = PI * sigma * self.bound;
        let count = self.values.len().max(4) as f64;
        if t < 2.0 {
            f64::INFINITY
        } else {
            2.0 * count * (-t).exp()
        }
    }
}

/// Theta series k0(D) = sum_{f in I(D)} exp(-pi |f|_D^2), within `tol`
/// absolute. Shell-doubles the enumeration bound until the last shell
/// contributes less than tol/2 (capped: the cap turns non-termination into a
/// diagnosable error).
pub fn theta_k0(f: &NumberFieldData, d: &ArakelovDivisor, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidInput(format!("tol = {tol} outside (0, 1e-3]")));
    }
    let inv = invariants_abnu(f, d)?;
    let lambda = -(tol / 4.0).ln();
    let b0 = (4.0 * inv.a).max(lambda / PI);
    let mut bound = b0;
    let mut series = ThetaSeries::build(f, d, bound)?;
    for _ in 0..=THETA_CAP_DOUBLINGS {
        let next = ThetaSeries::build(f, d, bound * 2.0)?;
        let shell = next.eval(1.0) - series.eval(1.0);
        series = next;
        bound *= 2.0;
        if shell.abs() < tol / 2.0 {
            return Ok(series.eval(1.0));
        }
        if bound > b0 * (1u64 << THETA_CAP_DOUBLINGS) as f64 {
            break;
        }
    }
    Err(Error::Numeric(format!(
        "theta truncation did not stabilize below the 2^{THETA_CAP_DOUBLINGS} bound cap"
    )))
}

/// The divisor representing `[kappa] - D`, resolved through the stored kappa
/// pairing of the class of `D`.
pub fn kappa_dual(f: &NumberFieldData, d: &ArakelovDivisor) -> Result<ArakelovDivisor> {
    let pairings = f.kappa_pairings.as_ref().ok_or_else(|| {
        Error::Capability(
            "no kappa pairing data: cannot resolve the class of d^{-1} I(D)^{-1} \
             to a stored representative"
                .into(),
        )
    })?;
    let p = pairings.get(d.class_index).ok_or_else(|| {
        Error::Capability(format!(
            "no kappa pairing for class {}: missing representative",
            d.class_index
        ))
    })?;
    let x = d
        .x
        .iter()
        .zip(&p.lambda_logs)
        .map(|(&xv, &lv)| -xv - lv)
        .collect();
    Ok(ArakelovDivisor { class_index: p.to_class, x })
}

/// k1(D) = k0([kappa] - D).
pub fn theta_k1(f: &NumberFieldData, d: &ArakelovDivisor, tol: f64) -> Result<f64> {
    let dual = kappa_dual(f, d)?;
    theta_k0(f, &dual, tol)
}

/// Riemann-Roch residual `k0(D)/k1(D) - N(D) d_k^{-1/2}`; contractually
/// below 10 tol in magnitude for every valid divisor.
pub fn riemann_roch_residual(f: &NumberFieldData, d: &ArakelovDivisor, tol: f64) -> Result<f64> {
    let k0 = theta_k0(f, d, tol)?;
    let k1 = theta_k1(f, d, tol)?;
    Ok(k0 / k1 - arakelov_norm(f, d) / f.disc_abs.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fielddata::{make_quadratic, make_rationals};

    #[test]
    fn gram_of_q_is_identity() {
        let q = make_rationals();
        let g = lattice_gram(&q, &ArakelovDivisor::zero(&q)).unwrap();
        assert_eq!(g, vec![vec![1.0]]);
    }

    #[test]
    fn gram_of_gaussian_integers_is_twice_identity() {
        let f = make_quadratic(-1).unwrap();
        let g = lattice_gram(&f, &ArakelovDivisor::zero(&f)).unwrap();
        assert!((g[0][0] - 2.0).abs() < 1e-14);
        assert!((g[1][1] - 2.0).abs() < 1e-14);
        assert!(g[0][1].abs() < 1e-14);
    }

    #[test]
    fn dt_shift_scales_gram() {
        let f = make_quadratic(5).unwrap();
        let d = ArakelovDivisor::new(0, vec![0.3, -0.1]);
        let t = 3.7;
        let g0 = lattice_gram(&f, &d).unwrap();
        let g1 = lattice_gram(&f, &d.plus_dt(&f, t)).unwrap();
        let scale = t.powf(-2.0 / f.degree_n as f64);
        for i in 0..2 {
            for j in 0..2 {
                assert!((g1[i][j] - scale * g0[i][j]).abs() < 1e-12 * g0[i][j].abs().max(1.0));
            }
        }
    }

    #[test]
    fn enumerate_dim_one() {
        let g = vec![vec![1.0]];
        let list = enumerate_vectors(&g, 4.5).unwrap();
        assert_eq!(list.len(), 4);
        let values: Vec<f64> = list.iter().map(|(_, v)| *v).collect();
        assert_eq!(values, vec![1.0, 1.0, 4.0, 4.0]);
    }

    #[test]
    fn enumerate_two_i2() {
        let g = vec![vec![2.0, 0.0], vec![0.0, 2.0]];
        let list = enumerate_vectors(&g, 2.0).unwrap();
        assert_eq!(list.len(), 4);
        assert!(list.iter().all(|(_, v)| (*v - 2.0).abs() < 1e-14));
    }

    #[test]
    fn enumerate_counts_match_brute_force_disk() {
        let g = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        for radius in 1..=10 {
            let r2 = (radius * radius) as f64;
            let enumerated = enumerate_vectors(&g, r2 + 1e-9).unwrap().len();
            let mut brute = 0;
            for x in -radius..=radius {
                for y in -radius..=radius {
                    if (x, y) != (0, 0) && x * x + y * y <= radius * radius {
                        brute += 1;
                    }
                }
            }
            assert_eq!(enumerated, brute, "radius {radius}");
        }
    }

    #[test]
    fn rejects_non_spd() {
        let g = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert!(matches!(enumerate_vectors(&g, 1.0), Err(Error::Numeric(_))));
    }

    #[test]
    fn abnu_anchors() {
        let q = make_rationals();
        let inv = invariants_abnu(&q, &ArakelovDivisor::zero(&q)).unwrap();
        assert_eq!((inv.a, inv.nu, inv.b), (1.0, 2, 4.0));

        let gauss = make_quadratic(-1).unwrap();
        let inv = invariants_abnu(&gauss, &ArakelovDivisor::zero(&gauss)).unwrap();
        assert_eq!((inv.a, inv.nu, inv.b), (2.0, 4, 4.0));

        let f5 = make_quadratic(5).unwrap();
        let inv = invariants_abnu(&f5, &ArakelovDivisor::zero(&f5)).unwrap();
        assert_eq!((inv.a, inv.nu), (2.0, 2));
        // oracle: Gram [[2,1],[1,3]] has next value 3 at (0, +-1)
        assert_eq!(inv.b, 3.0);

        let e = make_quadratic(-3).unwrap();
        let inv = invariants_abnu(&e, &ArakelovDivisor::zero(&e)).unwrap();
        assert_eq!((inv.a, inv.nu), (2.0, 6));
    }

    #[test]
    fn nu_at_zero_is_roots_of_unity_count() {
        for (m, mu) in [(-1i64, 4usize), (-3, 6), (2, 2), (5, 2)] {
            let f = make_quadratic(m).unwrap();
            let inv = invariants_abnu(&f, &ArakelovDivisor::zero(&f)).unwrap();
            assert_eq!(inv.a, f.degree_n as f64, "a(0) = n for m = {m}");
            assert_eq!(inv.nu, mu, "nu(0) = |mu| for m = {m}");
        }
    }

    #[test]
    fn nonprincipal_class_minimum_bound() {
        // disc -15, class of norm 2: a = n 4^{1/n} = 4 exactly
        let f = make_quadratic(-15).unwrap();
        let x0 = 2f64.ln(); // makes N(D) = 1
        let inv = invariants_abnu(&f, &ArakelovDivisor::new(1, vec![x0])).unwrap();
        let n = f.degree_n as f64;
        assert!(inv.a >= n * 4f64.powf(1.0 / n) - 1e-9, "a = {}", inv.a);
        assert_eq!(inv.a, 4.0);
        assert!(inv.nu % 2 == 0);
    }

    #[test]
    fn theta_q_at_unit_scale() {
        let q = make_rationals();
        // oracle: direct summation of sum exp(-pi f^2)
        let mut direct = 1.0;
        for k in 1..40 {
            direct += 2.0 * (-PI * (k * k) as f64).exp();
        }
        let v = theta_k0(&q, &ArakelovDivisor::zero(&q), 1e-10).unwrap();
        assert!((v - direct).abs() < 1e-12, "{v} vs {direct}");
        assert!((v - 1.0864348).abs() < 1e-6);
    }

    #[test]
    fn theta_always_at_least_one() {
        let f = make_quadratic(2).unwrap();
        for &(x0, x1) in &[(0.0, 0.0), (1.5, -1.5), (-2.0, 2.0)] {
            let v = theta_k0(&f, &ArakelovDivisor::new(0, vec![x0, x1]), 1e-8).unwrap();
            assert!(v >= 1.0);
        }
    }

    #[test]
    fn theta_growth_at_large_t() {
        // k0(D_t) ~ t d^{-1/2} with double-exponentially small error
        let q = make_rationals();
        let t = 1e3;
        let v = theta_k0(&q, &ArakelovDivisor::d_t(&q, t), 1e-6).unwrap();
        assert!((v - t).abs() < 1e-5, "k0(D_1000) = {v}");
    }

    #[test]
    fn theta_doubling_selfconsistency() {
        let f = make_quadratic(5).unwrap();
        let d = ArakelovDivisor::new(0, vec![0.4, -0.4]);
        let tol = 1e-9;
        let v = theta_k0(&f, &d, tol).unwrap();
        // doubling the final shell bound does not move the value
        let inv = invariants_abnu(&f, &d).unwrap();
        let big = ThetaSeries::build(&f, &d, 64.0 * (4.0 * inv.a).max(-(tol / 4.0f64).ln() / PI))
            .unwrap();
        assert!((v - big.eval(1.0)).abs() < tol);
    }

    #[test]
    fn k1_of_q_is_reciprocal_scale() {
        let q = make_rationals();
        let t = 2.0;
        let k1 = theta_k1(&q, &ArakelovDivisor::d_t(&q, t), 1e-10).unwrap();
        let k0_inv = theta_k0(&q, &ArakelovDivisor::d_t(&q, 1.0 / t), 1e-10).unwrap();
        assert!((k1 - k0_inv).abs() < 1e-12);
    }

    #[test]
    fn riemann_roch_q_t2_is_classical_theta_transformation() {
        let q = make_rationals();
        let d = ArakelovDivisor::d_t(&q, 2.0);
        let num = theta_k0(&q, &ArakelovDivisor::d_t(&q, 2.0), 1e-10).unwrap();
        let den = theta_k0(&q, &ArakelovDivisor::d_t(&q, 0.5), 1e-10).unwrap();
        assert!((num / den - 2.0).abs() < 1e-10);
        let res = riemann_roch_residual(&q, &d, 1e-10).unwrap();
        assert!(res.abs() < 1e-9);
    }

    #[test]
    fn riemann_roch_gaussian_random_divisors() {
        let f = make_quadratic(-1).unwrap();
        // deterministic pseudo-random sample
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..20 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 3.0;
            let d = ArakelovDivisor::new(0, vec![x]);
            let res = riemann_roch_residual(&f, &d, 1e-10).unwrap();
            assert!(res.abs() < 1e-9, "residual {res} at x = {x}");
        }
    }

    #[test]
    fn a_invariant_under_unit_translation() {
        let f = make_quadratic(5).unwrap();
        let d = ArakelovDivisor::new(0, vec![0.17, -0.17]);
        let shifted_x: Vec<f64> =
            d.x.iter().zip(&f.unit_logs[0]).map(|(a, b)| a + b).collect();
        let d2 = ArakelovDivisor::new(0, shifted_x);
        let i1 = invariants_abnu(&f, &d).unwrap();
        let i2 = invariants_abnu(&f, &d2).unwrap();
        assert!((i1.a - i2.a).abs() < 1e-9 * i1.a);
    }

    #[test]
    fn a_lower_bound_is_degree() {
        for m in [-1i64, -3, 2, 5] {
            let f = make_quadratic(m).unwrap();
            let n = f.degree_n as f64;
            for k in 0..8 {
                let theta = k as f64 / 8.0;
                let x = if f.r2 == 1 {
                    vec![0.0]
                } else {
                    let u = &f.unit_logs[0];
                    vec![theta * u[0], theta * u[1]]
                };
                let inv = invariants_abnu(&f, &ArakelovDivisor::new(0, x)).unwrap();
                assert!(inv.a >= n - 1e-9, "a < n for m = {m}");
                assert!(inv.b <= 4.0 * inv.a + 1e-9);
                assert!(inv.nu % 2 == 0);
            }
        }
    }

    #[test]
    fn missing_kappa_pairing_is_capability_error() {
        let f = make_quadratic(-15).unwrap(); // h = 2, no pairings
        let err = theta_k1(&f, &ArakelovDivisor::zero(&f), 1e-8).unwrap_err();
        assert!(matches!(err, Error::Capability(_)), "{err}");
    }
}
