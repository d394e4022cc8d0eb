//! Built-in constructor for quadratic fields Q(sqrt(m)).
//!
//! Class number and representatives come from reduced binary quadratic forms:
//! a direct count of reduced definite forms for m < 0, and rho-cycles of
//! reduced ideals (the infrastructure walk) for m > 0. The fundamental unit
//! of a real quadratic field is the product of the complete quotients over
//! one period of the continued fraction of (P0 + sqrt(D))/2.

use super::{IdealLatticeBasis, KappaPairing, NumberFieldData};
use crate::arith::{is_squarefree, isqrt};
use crate::error::{Error, Result};
use std::collections::HashMap;

pub(super) fn make(m: i64) -> Result<NumberFieldData> {
    if m == 0 || m == 1 {
        return Err(Error::InvalidInput(format!("m = {m} does not define a quadratic field")));
    }
    if !is_squarefree(m) {
        return Err(Error::InvalidInput(format!("m = {m} is not squarefree")));
    }
    let disc: i64 = if m.rem_euclid(4) == 1 { m } else { 4 * m };
    let d_abs = disc.unsigned_abs() as f64;
    let sqrt_abs_m = (m.unsigned_abs() as f64).sqrt();

    // integral basis {1, omega}
    let omega_pair: (f64, f64) = if m.rem_euclid(4) == 1 {
        (0.5, 0.5 * sqrt_abs_m) // (rational part, sqrt coefficient part)
    } else {
        (0.0, sqrt_abs_m)
    };

    let mu_count = match m {
        -1 => 4,
        -3 => 6,
        _ => 2,
    };

    if m > 0 {
        let (log_eps, _norm_eps) = fundamental_unit(disc);
        let reps = real_class_representatives(disc);
        let h = reps.len();
        let mut ideal_classes = vec![IdealLatticeBasis {
            norm: 1.0,
            embedding: vec![
                vec![1.0, 1.0],
                vec![omega_pair.0 + omega_pair.1, omega_pair.0 - omega_pair.1],
            ],
        }];
        let sqrt_d = d_abs.sqrt();
        for &(a, b) in reps.iter().skip(1) {
            // basis {a, (b + sqrt(D))/2}
            ideal_classes.push(IdealLatticeBasis {
                norm: a as f64,
                embedding: vec![
                    vec![a as f64, a as f64],
                    vec![(b as f64 + sqrt_d) / 2.0, (b as f64 - sqrt_d) / 2.0],
                ],
            });
        }
        let kappa_pairings = if h == 1 {
            // different = (sqrt(D)) is principal and balanced: |delta|_v = sqrt(d_k)
            Some(vec![KappaPairing { to_class: 0, lambda_logs: vec![-0.5 * d_abs.ln(); 2] }])
        } else {
            None
        };
        let f = NumberFieldData {
            degree_n: 2,
            r1: 2,
            r2: 0,
            unit_rank_r: 1,
            disc_abs: d_abs,
            mu_count,
            class_number_h: h,
            regulator: log_eps,
            ideal_classes,
            unit_logs: vec![vec![log_eps, -log_eps]],
            different_norm: d_abs,
            kappa_pairings,
        };
        super::validate(&f)?;
        Ok(f)
    } else {
        let forms = reduced_definite_forms(disc);
        let h = forms.len();
        let sqrt_d = d_abs.sqrt();
        let mut ideal_classes = vec![IdealLatticeBasis {
            norm: 1.0,
            embedding: vec![vec![1.0, 0.0], vec![omega_pair.0, omega_pair.1]],
        }];
        for &(a, b, _c) in forms.iter().filter(|&&(a, _, _)| a != 1) {
            ideal_classes.push(IdealLatticeBasis {
                norm: a as f64,
                embedding: vec![
                    vec![a as f64, 0.0],
                    vec![b as f64 / 2.0, sqrt_d / 2.0],
                ],
            });
        }
        let kappa_pairings = if h == 1 {
            Some(vec![KappaPairing { to_class: 0, lambda_logs: vec![-d_abs.ln()] }])
        } else {
            None
        };
        let f = NumberFieldData {
            degree_n: 2,
            r1: 0,
            r2: 1,
            unit_rank_r: 0,
            disc_abs: d_abs,
            mu_count,
            class_number_h: h,
            regulator: 1.0,
            ideal_classes,
            unit_logs: vec![],
            different_norm: d_abs,
            kappa_pairings,
        };
        super::validate(&f)?;
        Ok(f)
    }
}

/// All reduced positive-definite forms (a, b, c) of discriminant D < 0:
/// |b| <= a <= c with b >= 0 whenever |b| = a or a = c. The principal form
/// comes first.
pub fn reduced_definite_forms(disc: i64) -> Vec<(i64, i64, i64)> {
    assert!(disc < 0);
    let mut forms = Vec::new();
    let a_max = isqrt(disc.abs() / 3);
    for a in 1..=a_max.max(1) {
        for b in (-a + 1)..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if a == c && b < 0 {
                continue;
            }
            forms.push((a, b, c));
        }
    }
    forms.sort();
    forms
}

/// Reduced ideals (a, b) of a real quadratic order of discriminant D > 0:
/// b = D mod 2, 0 < b < sqrt(D), |sqrt(D) - 2a| < b, 4a | D - b^2.
fn reduced_ideals(disc: i64) -> Vec<(i64, i64)> {
    assert!(disc > 0);
    let s = isqrt(disc);
    let mut out = Vec::new();
    let b0 = if disc % 2 == 0 { 2 } else { 1 };
    let mut b = b0;
    while b <= s {
        let rem = disc - b * b;
        debug_assert!(rem > 0);
        let mut a = 1;
        // reduced window, integer-exact: sqrt(D) - b < 2a < sqrt(D) + b
        while 2 * a <= s + b + 1 {
            if rem % (4 * a) == 0 {
                let ta = 2 * a;
                let above = (ta + b) * (ta + b) > disc;
                let below = ta <= b || (ta - b) * (ta - b) < disc;
                if above && below {
                    out.push((a, b));
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    out
}

/// One rho step on a reduced ideal.
fn rho(disc: i64, a: i64, b: i64) -> (i64, i64) {
    let s = isqrt(disc);
    let a_next = (disc - b * b) / (4 * a);
    let t = (-b).rem_euclid(2 * a_next);
    let b_next = s - (s - t).rem_euclid(2 * a_next);
    (a_next, b_next)
}

/// One reduced ideal per rho-cycle; the principal cycle (containing a = 1)
/// first.
fn real_class_representatives(disc: i64) -> Vec<(i64, i64)> {
    let ideals = reduced_ideals(disc);
    let index: HashMap<(i64, i64), usize> =
        ideals.iter().copied().enumerate().map(|(i, ab)| (ab, i)).collect();
    let mut seen = vec![false; ideals.len()];
    let mut cycles: Vec<Vec<(i64, i64)>> = Vec::new();
    for &start in &ideals {
        if seen[index[&start]] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            let i = index[&cur];
            if seen[i] {
                break;
            }
            seen[i] = true;
            cycle.push(cur);
            cur = rho(disc, cur.0, cur.1);
            debug_assert!(index.contains_key(&cur), "rho left the reduced set: {cur:?}");
        }
        cycles.push(cycle);
    }
    let mut reps: Vec<(i64, i64)> = cycles
        .iter()
        .map(|cyc| *cyc.iter().min().unwrap())
        .collect();
    reps.sort_by_key(|&(a, b)| (a != 1, a, b));
    // exactly one cycle contains an ideal with a = 1 (the principal one)
    debug_assert_eq!(reps.iter().filter(|&&(a, _)| a == 1).count(), 1);
    reps
}

/// Regulator data of the real quadratic order of discriminant D:
/// returns (log of the fundamental unit, its norm +-1).
pub fn fundamental_unit(disc: i64) -> (f64, i32) {
    assert!(disc > 0);
    let s = isqrt(disc);
    let sqrt_d = (disc as f64).sqrt();
    let mut p: i64 = if disc % 2 == 0 { 0 } else { 1 };
    let mut q: i64 = 2;
    let mut seen: HashMap<(i64, i64), usize> = HashMap::new();
    let mut states: Vec<(i64, i64)> = Vec::new();
    let cycle_start;
    loop {
        if let Some(&idx) = seen.get(&(p, q)) {
            cycle_start = idx;
            break;
        }
        seen.insert((p, q), states.len());
        states.push((p, q));
        let a = (p + s).div_euclid(q);
        let p_next = a * q - p;
        let q_next = (disc - p_next * p_next) / q;
        assert!(q_next > 0, "continued fraction left the positive domain");
        p = p_next;
        q = q_next;
    }
    let cycle = &states[cycle_start..];
    let log_eps: f64 =
        cycle.iter().map(|&(p, q)| ((p as f64 + sqrt_d) / q as f64).ln()).sum();
    let norm = if cycle.len() % 2 == 1 { -1 } else { 1 };
    (log_eps, norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::kronecker;
    use crate::fielddata::{make_quadratic, validate};
    use std::f64::consts::PI;

    /// Brute-force Pell search for the fundamental unit; independent of the
    /// continued-fraction route.
    fn pell_unit(m: i64) -> (f64, i32) {
        assert!(m > 1);
        let sq = (m as f64).sqrt();
        if m % 4 == 1 {
            // minimal (x + y sqrt m)/2 > 1 with x^2 - m y^2 = +-4, x = y mod 2
            for y in 1i64..2_000_000 {
                for sign in [-4i64, 4] {
                    let t = m * y * y + sign;
                    if t < 0 {
                        continue;
                    }
                    let x = isqrt(t);
                    if x * x == t && (x - y).rem_euclid(2) == 0 {
                        return (((x as f64 + y as f64 * sq) / 2.0).ln(), sign.signum() as i32);
                    }
                }
            }
        } else {
            for y in 1i64..2_000_000 {
                for sign in [-1i64, 1] {
                    let t = m * y * y + sign;
                    if t < 0 {
                        continue;
                    }
                    let x = isqrt(t);
                    if x * x == t {
                        return ((x as f64 + y as f64 * sq).ln(), sign.signum() as i32);
                    }
                }
            }
        }
        panic!("no Pell solution found for m = {m}");
    }

    /// Dirichlet class number formula, finite character sums; independent of
    /// the reduced-form machinery.
    fn analytic_class_number(m: i64) -> usize {
        let disc: i64 = if m.rem_euclid(4) == 1 { m } else { 4 * m };
        if disc < 0 {
            let w: i64 = match m {
                -1 => 4,
                -3 => 6,
                _ => 2,
            };
            let d = disc.abs();
            let s: i64 = (1..d).map(|a| a * kronecker(disc, a) as i64).sum();
            let h = (w * s.abs()) / (2 * d);
            assert_eq!((w * s.abs()) % (2 * d), 0, "formula must divide exactly for m={m}");
            h as usize
        } else {
            let (log_eps, _) = pell_unit(m);
            let d = disc;
            let s: f64 = (1..d)
                .map(|a| kronecker(disc, a) as f64 * (PI * a as f64 / d as f64).sin().ln())
                .sum();
            let h = -s / (2.0 * log_eps);
            let rounded = h.round();
            assert!((h - rounded).abs() < 1e-6, "analytic h = {h} not near integer for m={m}");
            rounded as usize
        }
    }

    #[test]
    fn gaussian_integers() {
        let f = make_quadratic(-1).unwrap();
        assert_eq!((f.degree_n, f.r1, f.r2), (2, 0, 1));
        assert_eq!(f.disc_abs, 4.0);
        assert_eq!(f.mu_count, 4);
        assert_eq!(f.class_number_h, 1);
        assert_eq!(f.regulator, 1.0);
    }

    #[test]
    fn golden_ratio_regulator() {
        let f = make_quadratic(5).unwrap();
        assert_eq!((f.r1, f.r2), (2, 0));
        assert_eq!(f.disc_abs, 5.0);
        assert_eq!(f.mu_count, 2);
        assert_eq!(f.class_number_h, 1);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((f.regulator - phi.ln()).abs() < 1e-12);
        assert!((f.regulator - 0.4812).abs() < 1e-4);
    }

    #[test]
    fn sqrt_two_regulator() {
        let f = make_quadratic(2).unwrap();
        assert_eq!(f.disc_abs, 8.0);
        assert!((f.regulator - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
        assert!((f.regulator - 0.8814).abs() < 1e-4);
    }

    #[test]
    fn disc_minus_15_has_two_classes() {
        let f = make_quadratic(-15).unwrap();
        assert_eq!(f.disc_abs, 15.0);
        assert_eq!(f.class_number_h, 2);
        assert_eq!(f.ideal_classes[1].norm, 2.0);
    }

    #[test]
    fn rejects_bad_m() {
        assert!(make_quadratic(0).is_err());
        assert!(make_quadratic(1).is_err());
        assert!(make_quadratic(12).is_err());
        assert!(make_quadratic(-4).is_err());
    }

    #[test]
    fn agrees_with_oracles_up_to_50() {
        for m in -50i64..=50 {
            if m == 0 || m == 1 || !is_squarefree(m) {
                continue;
            }
            let f = make_quadratic(m).unwrap();
            validate(&f).unwrap();
            let h_oracle = analytic_class_number(m);
            assert_eq!(f.class_number_h, h_oracle, "class number mismatch for m = {m}");
            if m > 1 {
                let (log_eps, norm) = pell_unit(m);
                assert!(
                    (f.regulator - log_eps).abs() < 1e-9 * log_eps.max(1.0),
                    "regulator mismatch for m = {m}: {} vs {log_eps}",
                    f.regulator
                );
                let disc = if m.rem_euclid(4) == 1 { m } else { 4 * m };
                assert_eq!(fundamental_unit(disc).1, norm, "unit norm mismatch for m = {m}");
            }
        }
    }
}
