//! The compact degree-zero Arakelov class space as (class group) x (r-torus),
//! with the Haar measure normalized so the total volume is h R_k, and
//! quadrature against it.
//!
//! The measure on the norm-one hyperplane is the push-forward of Lebesgue
//! measure under the drop-one-coordinate chart; with the standard regulator
//! convention this makes the unit cell have volume R_k, which is what the
//! closed-form hyperplane integrals downstream cross-validate.

use crate::arakelov::ArakelovDivisor;
use crate::error::{Error, Result};
use crate::fielddata::NumberFieldData;
use crate::quadrature::pairwise_sum;
use num_complex::Complex64;

/// A weighted sample point of the class space.
#[derive(Debug, Clone)]
pub struct ClassSpacePoint {
    pub class_index: usize,
    /// Torus coordinates in [0,1)^r.
    pub theta: Vec<f64>,
    /// The induced norm-one divisor.
    pub divisor: ArakelovDivisor,
}

/// Midpoint-rule grid over the class space; total weight h R_k.
#[derive(Debug, Clone)]
pub struct ClassSpaceGrid {
    pub points: Vec<(ClassSpacePoint, f64)>,
    pub total_weight: f64,
    pub points_per_dim: usize,
}

/// The divisor with N(D) = 1 at torus coordinate `theta` on class `class`:
/// `x = x0(class) + sum_i theta_i u_i` where `x0(class)_v = e_v log N(a) / n`.
pub fn class_point(f: &NumberFieldData, class_index: usize, theta: &[f64]) -> ClassSpacePoint {
    let n = f.degree_n as f64;
    let log_norm = f.ideal_classes[class_index].norm.ln();
    let mut x: Vec<f64> = (0..f.places()).map(|v| f.e_v(v) * log_norm / n).collect();
    for (i, t) in theta.iter().enumerate() {
        for (v, xv) in x.iter_mut().enumerate() {
            *xv += t * f.unit_logs[i][v];
        }
    }
    let divisor = ArakelovDivisor::new(class_index, x);
    ClassSpacePoint { class_index, theta: theta.to_vec(), divisor }
}

/// Product midpoint rule with `points_per_dim` points per torus dimension on
/// every ideal class; each weight is `R_k / points_per_dim^r`. With unit
/// rank 0 every class contributes one point of weight R_k = 1.
pub fn build_grid(f: &NumberFieldData, points_per_dim: usize) -> Result<ClassSpaceGrid> {
    if points_per_dim == 0 {
        return Err(Error::InvalidInput("points_per_dim must be at least 1".into()));
    }
    if points_per_dim > 1 << 14 {
        return Err(Error::InvalidInput("points_per_dim exceeds the 2^14 cap".into()));
    }
    let r = f.unit_rank_r;
    let cells = points_per_dim.pow(r as u32);
    let weight = f.regulator / cells as f64;
    let mut points = Vec::with_capacity(f.class_number_h * cells);
    for class_index in 0..f.class_number_h {
        let mut idx = vec![0usize; r];
        loop {
            let theta: Vec<f64> =
                idx.iter().map(|&i| (i as f64 + 0.5) / points_per_dim as f64).collect();
            points.push((class_point(f, class_index, &theta), weight));
            // odometer over the r-dimensional index
            let mut k = 0;
            loop {
                if k == r {
                    break;
                }
                idx[k] += 1;
                if idx[k] < points_per_dim {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
        }
    }
    let total_weight = weight * points.len() as f64;
    Ok(ClassSpaceGrid { points, total_weight, points_per_dim })
}

/// Quadrature of `f` against the grid measure (deterministic pairwise sum).
pub fn integrate<F>(grid: &ClassSpaceGrid, mut f: F) -> Complex64
where
    F: FnMut(&ClassSpacePoint) -> Complex64,
{
    let terms: Vec<Complex64> = grid.points.iter().map(|(p, w)| f(p) * *w).collect();
    pairwise_sum(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arakelov::{arakelov_norm, invariants_abnu, theta_k0};
    use crate::fielddata::{make_quadratic, make_rationals};

    #[test]
    fn q_grid_is_single_unit_point() {
        let q = make_rationals();
        let grid = build_grid(&q, 16).unwrap();
        assert_eq!(grid.points.len(), 1);
        assert!((grid.total_weight - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian_grid_is_single_point() {
        let f = make_quadratic(-1).unwrap();
        let grid = build_grid(&f, 64).unwrap();
        assert_eq!(grid.points.len(), 1);
        assert!((grid.total_weight - 1.0).abs() < 1e-15);
    }

    #[test]
    fn real_quadratic_total_weight_is_regulator() {
        let f = make_quadratic(5).unwrap();
        let grid = build_grid(&f, 64).unwrap();
        assert_eq!(grid.points.len(), 64);
        assert!((grid.total_weight - f.regulator).abs() < 1e-10);
        assert!((grid.total_weight - 0.4812).abs() < 1e-4);
    }

    #[test]
    fn two_class_field_total_weight() {
        let f = make_quadratic(-15).unwrap();
        let grid = build_grid(&f, 8).unwrap();
        assert_eq!(grid.points.len(), 2);
        assert!((grid.total_weight - 2.0).abs() < 1e-12);
    }

    #[test]
    fn grid_points_have_unit_norm() {
        for m in [-15i64, -1, 2, 5] {
            let f = make_quadratic(m).unwrap();
            let grid = build_grid(&f, 9).unwrap();
            for (p, _) in &grid.points {
                let norm = arakelov_norm(&f, &p.divisor);
                assert!((norm - 1.0).abs() < 1e-12, "N(D) = {norm} on m = {m}");
            }
        }
    }

    #[test]
    fn constant_integrates_to_h_r() {
        let f = make_quadratic(10).unwrap(); // h = 2, real
        let grid = build_grid(&f, 32).unwrap();
        let v = integrate(&grid, |_| Complex64::new(1.0, 0.0));
        assert!((v.re - f.class_number_h as f64 * f.regulator).abs() < 1e-10);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn unit_translation_offset_leaves_integral_unchanged() {
        let f = make_quadratic(5).unwrap();
        let grid = build_grid(&f, 48).unwrap();
        let ia = integrate(&grid, |p| {
            Complex64::new(invariants_abnu(&f, &p.divisor).unwrap().a, 0.0)
        });
        // same grid translated by the full unit-log vector: isometric lattices
        let ib = {
            let terms: Vec<Complex64> = grid
                .points
                .iter()
                .map(|(p, w)| {
                    let x: Vec<f64> = p
                        .divisor
                        .x
                        .iter()
                        .zip(&f.unit_logs[0])
                        .map(|(a, b)| a + b)
                        .collect();
                    let d = ArakelovDivisor::new(p.class_index, x);
                    Complex64::new(invariants_abnu(&f, &d).unwrap().a, 0.0) * *w
                })
                .collect();
            crate::quadrature::pairwise_sum(&terms)
        };
        assert!((ia - ib).norm() < 1e-9 * ia.norm());
    }

    #[test]
    fn midpoint_refinement_converges_for_smooth_integrand() {
        let f = make_quadratic(2).unwrap();
        let coarse = build_grid(&f, 16).unwrap();
        let fine = build_grid(&f, 32).unwrap();
        let finer = build_grid(&f, 64).unwrap();
        let theta = |g: &ClassSpaceGrid| {
            integrate(g, |p| Complex64::new(theta_k0(&f, &p.divisor, 1e-10).unwrap(), 0.0))
        };
        let (a, b, c) = (theta(&coarse), theta(&fine), theta(&finer));
        // smooth periodic integrand: midpoint rule converges fast
        assert!((b - c).norm() <= (a - c).norm() + 1e-13);
        assert!((b - c).norm() < 1e-9);
    }
}
