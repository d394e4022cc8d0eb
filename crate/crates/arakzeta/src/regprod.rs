//! Zeta-regularized products: branch-fixed spectral Dirichlet series, the
//! Hurwitz-zeta continuation kernel and its u-derivative, the Lerch closed
//! form, the 1/(2 pi)-regularization checks for the Gamma factors, and the
//! two-sided lattice products behind the function-field regularization check.

use crate::error::{Error, Result};
use crate::gamma::BERNOULLI;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Number of Bernoulli correction terms in the Euler-Maclaurin expansion.
const EM_TERMS: usize = 12;

/// Hurwitz zeta `zeta_H(u, z) = sum_{nu >= 0} (z + nu)^{-u}` (Re z > 0)
/// continued by Euler-Maclaurin, together with its derivative in `u`.
/// Accurate to ~1e-12 relative for moderate `|u|`.
pub fn hurwitz_zeta_and_du(u: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    if z.re <= 0.0 {
        return Err(Error::InvalidInput(format!("hurwitz zeta needs Re z > 0, got {z}")));
    }
    if (u - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole { at: u, residue: Complex64::new(1.0, 0.0) });
    }
    // shift until |z + M| is comfortably larger than |u|
    let target = 15.0_f64.max(3.0 * u.norm());
    let m = ((target - z.re).ceil().max(0.0)) as usize;
    let zm = z + m as f64;
    let log_zm = zm.ln();

    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for nu in 0..m {
        let base = z + nu as f64;
        let lb = base.ln();
        let p = (-u * lb).exp();
        value += p;
        deriv -= lb * p;
    }
    // (z+M)^{1-u} / (u-1)
    let p1 = ((Complex64::new(1.0, 0.0) - u) * log_zm).exp();
    let um1 = u - 1.0;
    value += p1 / um1;
    deriv += p1 * (-log_zm / um1 - 1.0 / (um1 * um1));
    // (z+M)^{-u} / 2
    let p0 = (-u * log_zm).exp();
    value += 0.5 * p0;
    deriv -= 0.5 * log_zm * p0;
    // Bernoulli corrections: B_{2j}/(2j)! * (u)_{2j-1} * (z+M)^{-u-2j+1}
    let mut rising = u; // (u)_1
    let mut rising_d = Complex64::new(1.0, 0.0);
    let mut fact = 2.0; // (2j)! for j = 1
    for j in 0..EM_TERMS {
        let coeff = BERNOULLI[j] / fact;
        let expo = Complex64::new(1.0 - 2.0 * (j as f64 + 1.0), 0.0) - u;
        let p = (expo * log_zm).exp();
        value += coeff * rising * p;
        deriv += coeff * (rising_d * p - rising * log_zm * p);
        // extend (u)_{2j-1} -> (u)_{2j+1} and the factorial
        let a = u + (2 * j + 1) as f64;
        let b = u + (2 * j + 2) as f64;
        rising_d = rising_d * a * b + rising * (a + b);
        rising = rising * a * b;
        fact *= (2.0 * (j as f64 + 1.0) + 1.0) * (2.0 * (j as f64 + 1.0) + 2.0);
    }
    Ok((value, deriv))
}

/// Arithmetic-progression tail `z + c nu`, `nu >= nu0`, multiplicity 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProgression {
    pub z: Complex64,
    pub c: Complex64,
    pub nu0: i64,
}

/// A multiset of nonzero complex numbers with multiplicities and optionally
/// one arithmetic-progression tail; the carrier of a spectral Dirichlet
/// series `D(u) = sum m_nu a_nu^{-u}` with arguments fixed in (-pi, pi].
#[derive(Debug, Clone, Default)]
pub struct RegularizedSequence {
    pub terms: Vec<(Complex64, i64)>,
    pub tail: Option<TailProgression>,
}

impl RegularizedSequence {
    pub fn finite(terms: Vec<(Complex64, i64)>) -> Self {
        RegularizedSequence { terms, tail: None }
    }

    pub fn with_tail(terms: Vec<(Complex64, i64)>, tail: TailProgression) -> Self {
        RegularizedSequence { terms, tail: Some(tail) }
    }
}

/// Zeta-regularized product `exp(-D'(0))` of `alpha * a_nu` over the
/// sequence. The finite part contributes its ordinary product; the tail is
/// continued through the Hurwitz zeta after peeling the finitely many terms
/// whose quotient `z/c + nu` is not yet in the right half-plane.
pub fn reg_product(seq: &RegularizedSequence, alpha: f64) -> Result<Complex64> {
    Ok(reg_product_log(seq, alpha)?.exp())
}

/// `-D'(0)` of the sequence, i.e. the logarithm of the regularized product.
/// Working in log space lets callers combine several sequences whose
/// individual products over- or underflow.
pub fn reg_product_log(seq: &RegularizedSequence, alpha: f64) -> Result<Complex64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidInput("scaling factor alpha must be positive".into()));
    }
    let mut minus_dprime = Complex64::new(0.0, 0.0);
    let mut peeled: Vec<(Complex64, i64)> = Vec::new();
    if let Some(tail) = seq.tail {
        if tail.c.norm() == 0.0 {
            return Err(Error::InvalidInput("tail step c must be nonzero".into()));
        }
        let mut nu0 = tail.nu0;
        let q = tail.z / tail.c;
        // peel until Re(z/c + nu0) >= 1/2 so the Hurwitz kernel applies
        let mut guard = 0;
        while q.re + (nu0 as f64) < 0.5 {
            peeled.push((tail.z + tail.c * nu0 as f64, 1));
            nu0 += 1;
            guard += 1;
            if guard > 1_000_000 {
                return Err(Error::Numeric(
                    "tail never reaches the right half-plane (divergent descriptor)".into(),
                ));
            }
        }
        let q0 = q + nu0 as f64;
        let (zeta0, dzeta0) = hurwitz_zeta_and_du(Complex64::new(0.0, 0.0), q0)?;
        // D_tail(u) = (alpha c)^{-u} zeta_H(u, q0):
        // -D_tail'(0) = log(alpha c) zeta_H(0,q0) - zeta_H'(0,q0)
        let log_ac = (tail.c * alpha).ln();
        minus_dprime += log_ac * zeta0 - dzeta0;
    }
    for &(a, m) in seq.terms.iter().chain(peeled.iter()) {
        if a.norm() == 0.0 {
            return Err(Error::InvalidInput("zero term in regularized sequence".into()));
        }
        // principal log fixes the argument in (-pi, pi]; alpha > 0 keeps it there
        let la = (a * alpha).ln();
        debug_assert!(la.im > -PI - 1e-12 && la.im <= PI + 1e-12);
        minus_dprime += la * m as f64;
    }
    Ok(minus_dprime)
}

/// Residual of the 1/(2 pi)-regularization of the real-place Gamma factor:
/// `regprod_{nu>=0} (s + 2 nu)/(2 pi) * Gamma_R(s) - 1`.
pub fn gamma_r_reg_check(s: Complex64) -> Result<Complex64> {
    let tail = TailProgression { z: s, c: Complex64::new(2.0, 0.0), nu0: 0 };
    let p = reg_product(&RegularizedSequence::with_tail(vec![], tail), 1.0 / (2.0 * PI))?;
    Ok(p * crate::gamma::gamma_r(s) - 1.0)
}

/// Residual of the 1/(2 pi)-regularization of the complex-place Gamma factor.
pub fn gamma_c_reg_check(s: Complex64) -> Result<Complex64> {
    let tail = TailProgression { z: s, c: Complex64::new(1.0, 0.0), nu0: 0 };
    let p = reg_product(&RegularizedSequence::with_tail(vec![], tail), 1.0 / (2.0 * PI))?;
    Ok(p * crate::gamma::gamma_c(s) - 1.0)
}

/// Regularized product over the full two-sided lattice `s0 - c nu, nu in Z`:
/// direct terms for |nu| <= k, two Hurwitz tails beyond, with `k` doubled
/// until the value stabilizes below 1e-10.
pub fn lattice_product(alpha: f64, s0: Complex64, c: Complex64, k: usize) -> Result<Complex64> {
    let eval = |k: i64| -> Result<Complex64> {
        let mut terms = Vec::with_capacity(2 * k as usize + 1);
        for nu in -k..=k {
            terms.push((s0 - c * nu as f64, 1i64));
        }
        let up = RegularizedSequence::with_tail(
            terms,
            TailProgression { z: s0, c: -c, nu0: k + 1 },
        );
        let down = RegularizedSequence::with_tail(
            vec![],
            TailProgression { z: s0, c, nu0: k + 1 },
        );
        // combine in log space: the direct product alone can overflow
        Ok((reg_product_log(&up, alpha)? + reg_product_log(&down, alpha)?).exp())
    };
    let mut k = k.max(1) as i64;
    let mut prev = eval(k)?;
    for _ in 0..6 {
        k *= 2;
        let next = eval(k)?;
        let moved = (next - prev).norm();
        prev = next;
        if moved < 1e-10 * prev.norm().max(1.0) {
            return Ok(prev);
        }
    }
    Err(Error::Numeric("two-sided lattice product did not stabilize under K doubling".into()))
}

/// Alpha-regularization residual for the zeta function of the projective
/// line over F_q: builds the candidate from the two pole lattices
/// `{2 pi i nu / log q}` and `{w + 2 pi i nu / log q}` and subtracts
/// `1/((1 - q^{-s})(1 - q^{w-s}))`.
pub fn ff_regularization_check(
    q: u64,
    w: Complex64,
    s: Complex64,
    alpha: f64,
    k: usize,
) -> Result<Complex64> {
    if q < 2 {
        return Err(Error::InvalidInput("q must be a prime power >= 2".into()));
    }
    let lq = (q as f64).ln();
    let c = Complex64::new(0.0, 2.0 * PI / lq);
    let p0 = lattice_product(alpha, s, c, k)?;
    let pw = lattice_product(alpha, s - w, c, k)?;
    let candidate = 1.0 / (p0 * pw);
    let exact = 1.0
        / ((1.0 - (-s * lq).exp()) * (1.0 - ((w - s) * lq).exp()));
    Ok(candidate - exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{gamma, gamma_c, gamma_r};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hurwitz_at_two_one_is_basel() {
        let (v, _) = hurwitz_zeta_and_du(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn hurwitz_derivative_at_zero_is_lerch_constant() {
        // d/du zeta_H(u,1)|_0 = zeta'(0) = -log sqrt(2 pi)
        let (_, d) = hurwitz_zeta_and_du(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((d.re + (2.0 * PI).sqrt().ln()).abs() < 1e-12, "{d}");
    }

    #[test]
    fn hurwitz_at_zero_is_half_minus_z() {
        for &(zr, zi) in &[(0.3, 0.0), (1.7, 0.4), (2.5, -1.2)] {
            let z = c(zr, zi);
            let (v, _) = hurwitz_zeta_and_du(c(0.0, 0.0), z).unwrap();
            let want = c(0.5, 0.0) - z;
            assert!((v - want).norm() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn hurwitz_derivative_matches_finite_differences() {
        let z = c(1.3, 0.6);
        let u = c(0.7, -0.2);
        let h = 1e-5;
        let (_, d) = hurwitz_zeta_and_du(u, z).unwrap();
        let (vp, _) = hurwitz_zeta_and_du(u + h, z).unwrap();
        let (vm, _) = hurwitz_zeta_and_du(u - h, z).unwrap();
        let fd = (vp - vm) / (2.0 * h);
        assert!((d - fd).norm() < 1e-8, "{d} vs {fd}");
    }

    #[test]
    fn hurwitz_pole_at_one() {
        assert!(matches!(
            hurwitz_zeta_and_du(c(1.0, 0.0), c(2.0, 0.0)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn finite_product_is_ordinary_product() {
        let seq = RegularizedSequence::finite(vec![(c(3.0, 0.0), 1), (c(5.0, 0.0), 2)]);
        let p = reg_product(&seq, 1.0).unwrap();
        assert!((p.re - 75.0).abs() < 1e-12 * 75.0);
        assert!(p.im.abs() < 1e-12);
    }

    #[test]
    fn product_of_positive_integers_is_sqrt_two_pi() {
        let seq = RegularizedSequence::with_tail(
            vec![],
            TailProgression { z: c(1.0, 0.0), c: c(1.0, 0.0), nu0: 0 },
        );
        let p = reg_product(&seq, 1.0).unwrap();
        assert!((p.re - (2.0 * PI).sqrt()).abs() < 1e-10, "{p}");
        assert!(p.im.abs() < 1e-12);
    }

    #[test]
    fn lerch_closed_form() {
        // regprod_{nu>=0} alpha (z + nu) = alpha^{1/2 - z} (Gamma(z)/sqrt(2pi))^{-1}
        let alpha = 1.0 / (2.0 * PI);
        let z = c(0.7, 0.3);
        let seq = RegularizedSequence::with_tail(
            vec![],
            TailProgression { z, c: c(1.0, 0.0), nu0: 0 },
        );
        let p = reg_product(&seq, alpha).unwrap();
        let closed = ((c(0.5, 0.0) - z) * alpha.ln()).exp() * (2.0 * PI).sqrt() / gamma(z);
        assert!((p - closed).norm() < 1e-9 * closed.norm(), "{p} vs {closed}");
    }

    #[test]
    fn translation_absorbs_one_factor() {
        let alpha = 0.37;
        let z = c(0.9, -0.4);
        let full = reg_product(
            &RegularizedSequence::with_tail(
                vec![],
                TailProgression { z, c: c(1.0, 0.0), nu0: 0 },
            ),
            alpha,
        )
        .unwrap();
        let shifted = reg_product(
            &RegularizedSequence::with_tail(
                vec![],
                TailProgression { z: z + 1.0, c: c(1.0, 0.0), nu0: 0 },
            ),
            alpha,
        )
        .unwrap();
        let lhs = full;
        let rhs = alpha * z * shifted;
        assert!((lhs - rhs).norm() < 1e-9 * lhs.norm(), "{lhs} vs {rhs}");
    }

    #[test]
    fn peeling_handles_left_terms() {
        // tail starting left of the half-plane: z = -2.3
        let z = c(-2.3, 0.4);
        let seq = RegularizedSequence::with_tail(
            vec![],
            TailProgression { z, c: c(1.0, 0.0), nu0: 0 },
        );
        let p = reg_product(&seq, 1.0).unwrap();
        let closed = ((c(0.5, 0.0) - z) * 0.0).exp() * (2.0 * PI).sqrt() / gamma(z);
        assert!((p - closed).norm() < 1e-9 * closed.norm(), "{p} vs {closed}");
    }

    #[test]
    fn gamma_r_is_inverse_regularized_product() {
        for &s in &[c(1.0, 0.0), c(2.0, 0.0), c(0.8, 1.3)] {
            let r = gamma_r_reg_check(s).unwrap();
            assert!(r.norm() < 1e-9, "residual {r} at s = {s}");
        }
        // spot value: at s = 1 the product itself is sqrt(2) = 1/Gamma_R(1)
        let tail = TailProgression { z: c(1.0, 0.0), c: c(2.0, 0.0), nu0: 0 };
        let p = reg_product(&RegularizedSequence::with_tail(vec![], tail), 1.0 / (2.0 * PI))
            .unwrap();
        assert!((p.re - 2f64.sqrt()).abs() < 1e-10);
        assert!((gamma_r(c(1.0, 0.0)).re - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!((gamma_r(c(2.0, 0.0)).re - 1.0 / (2f64.sqrt() * PI)).abs() < 1e-12);
    }

    #[test]
    fn gamma_c_via_two_gamma_r() {
        for &s in &[c(2.0, 0.0), c(1.1, 0.7)] {
            let r = gamma_c_reg_check(s).unwrap();
            assert!(r.norm() < 1e-9, "residual {r} at s = {s}");
            let prod = gamma_r(s) * gamma_r(s + 1.0);
            assert!((prod - gamma_c(s)).norm() < 1e-12 * gamma_c(s).norm());
        }
    }

    #[test]
    fn projective_line_regularization() {
        let s = c(2.0, 0.3);
        let w = c(1.0, 0.0);
        let r = ff_regularization_check(2, w, s, 1.0 / (2.0 * PI), 64).unwrap();
        assert!(r.norm() < 1e-6, "residual {r}");
        // alpha independence
        let r1 = ff_regularization_check(2, w, s, 1.0, 64).unwrap();
        assert!((r - r1).norm() < 1e-8, "{r} vs {r1}");
    }

    #[test]
    fn two_sided_lattice_is_one_minus_q_pow() {
        // regprod_{nu in Z} alpha(s - c nu) with c = 2 pi i / log q equals 1 - q^{-s}
        let q = 3.0_f64;
        let c_step = c(0.0, 2.0 * PI / q.ln());
        let s = c(1.4, 0.7);
        let p = lattice_product(1.0 / (2.0 * PI), s, c_step, 64).unwrap();
        let want = 1.0 - (-s * q.ln()).exp();
        assert!((p - want).norm() < 1e-9 * want.norm(), "{p} vs {want}");
    }

    #[test]
    fn elliptic_curve_regularization() {
        // E/F_2 with 5 points: P(T,u) = 1 + (4 - u) T + u T^2
        let q = 2u64;
        let lq = (q as f64).ln();
        let w = c(0.8, 0.2);
        let s = c(1.7, 0.45);
        let u = (w * lq).exp();
        let t_var = (-s * lq).exp();
        // zeros of u T^2 + (N-1-u) T + 1 in T
        let n_pts = 5.0;
        let bq = Complex64::new(n_pts - 1.0, 0.0) - u;
        let disc = (bq * bq - 4.0 * u).sqrt();
        let tau1 = (-bq + disc) / (2.0 * u);
        let tau2 = (-bq - disc) / (2.0 * u);
        let rho1 = -tau1.ln() / lq;
        let rho2 = -tau2.ln() / lq;
        let alpha = 1.0 / (2.0 * PI);
        let c_step = c(0.0, 2.0 * PI / lq);
        let candidate = lattice_product(alpha, s - rho1, c_step, 64).unwrap()
            * lattice_product(alpha, s - rho2, c_step, 64).unwrap()
            / (lattice_product(alpha, s, c_step, 64).unwrap()
                * lattice_product(alpha, s - w, c_step, 64).unwrap());
        let p_poly = 1.0 + (Complex64::new(n_pts - 1.0, 0.0) - u) * t_var + u * t_var * t_var;
        let z_exact = p_poly / ((1.0 - t_var) * (1.0 - u * t_var));
        assert!(
            (candidate - z_exact).norm() < 1e-6 * z_exact.norm(),
            "{candidate} vs {z_exact}"
        );
    }
}
