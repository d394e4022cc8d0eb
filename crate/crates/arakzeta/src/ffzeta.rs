//! Exact two-variable zeta functions of curves over finite fields: the
//! rational function `Z_X(T, u)`, its numerator `P_X(T, u)`, the functional
//! equation, specializations, and the `(s, t)`/`(s, w)` evaluations.
//!
//! Everything here is exact: polynomial coefficients are arbitrary-precision
//! rationals and identities are checked by coefficient comparison.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use num_complex::Complex64;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

// ---------------------------------------------------------------------------
// Exact polynomials
// ---------------------------------------------------------------------------

/// Bivariate polynomial in (T, u) with rational coefficients, sparse
/// representation keyed by (deg_T, deg_u).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: i64) -> Self {
        Poly2::monomial(0, 0, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(deg_t: u32, deg_u: u32, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((deg_t, deg_u), coeff);
        }
        Poly2 { terms }
    }

    /// T
    pub fn var_t() -> Self {
        Poly2::monomial(1, 0, BigRational::one())
    }

    /// u
    pub fn var_u() -> Self {
        Poly2::monomial(0, 1, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.terms.clone();
        for (k, v) in &rhs.terms {
            let e = out.entry(*k).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                out.remove(k);
            }
        }
        Poly2 { terms: out }
    }

    pub fn sub(&self, rhs: &Poly2) -> Poly2 {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect() }
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut out: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for ((t1, u1), c1) in &self.terms {
            for ((t2, u2), c2) in &rhs.terms {
                let key = (t1 + t2, u1 + u2);
                let e = out.entry(key).or_insert_with(BigRational::zero);
                *e += c1 * c2;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Poly2 { terms: out }
    }

    pub fn scale(&self, c: &BigRational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    fn leading(&self) -> Option<((u32, u32), &BigRational)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    /// Exact division: returns the quotient when `self = q * div`, otherwise
    /// `None`. Single-divisor multivariate long division in the (T, u)
    /// lexicographic order; the remainder vanishes exactly when the division
    /// is exact.
    pub fn exact_div(&self, div: &Poly2) -> Option<Poly2> {
        let (dk, dc) = div.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some((rk, rc)) = rem.leading() {
            if rk.0 < dk.0 || rk.1 < dk.1 {
                return None;
            }
            let mk = (rk.0 - dk.0, rk.1 - dk.1);
            let mc = rc / dc;
            let mono = Poly2::monomial(mk.0, mk.1, mc);
            rem = rem.sub(&mono.mul(div));
            quot = quot.add(&mono);
        }
        Some(quot)
    }

    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn u_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Coefficient of T^i as a polynomial in u.
    pub fn t_coefficient(&self, i: u32) -> UniPoly {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for ((t, u), c) in &self.terms {
            if *t == i {
                if coeffs.len() <= *u as usize {
                    coeffs.resize(*u as usize + 1, BigRational::zero());
                }
                coeffs[*u as usize] = c.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// Exact substitution u := value.
    pub fn substitute_u(&self, value: &BigRational) -> UniPoly {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for ((t, u), c) in &self.terms {
            let term = c * num::pow::pow(value.clone(), *u as usize);
            if coeffs.len() <= *t as usize {
                coeffs.resize(*t as usize + 1, BigRational::zero());
            }
            coeffs[*t as usize] += term;
        }
        UniPoly::new(coeffs)
    }

    pub fn eval(&self, t: Complex64, u: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((dt, du), c) in &self.terms {
            acc += c.to_f64().unwrap_or(f64::NAN) * t.powu(*dt) * u.powu(*du);
        }
        acc
    }
}

/// Univariate polynomial with rational coefficients (dense, ascending).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        UniPoly::new(vec![BigRational::from_integer(BigInt::from(c))])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// self * x^k
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::default();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly::new(coeffs)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn all_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: char) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            if i >= 1 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "{var}")?;
                if i >= 2 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var(f, 'u')
    }
}

/// Exact rational function in (T, u); equality by cross-multiplication.
#[derive(Clone, Debug)]
pub struct BivariateRational {
    pub num: Poly2,
    pub den: Poly2,
}

impl BivariateRational {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(BivariateRational { num, den })
    }

    pub fn equals(&self, rhs: &BivariateRational) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }

    /// Evaluate at complex (T, u); pole proximity is an error.
    pub fn eval(&self, t: Complex64, u: Complex64) -> Result<Complex64> {
        let den = self.den.eval(t, u);
        let num = self.num.eval(t, u);
        if den.norm() < 1e-12 * (1.0 + num.norm()) {
            return Err(Error::Pole { at: t, residue: num });
        }
        Ok(num / den)
    }
}

// ---------------------------------------------------------------------------
// Curve data
// ---------------------------------------------------------------------------

/// Divisor-class data of a curve over F_q through the only quantities the
/// two-variable zeta depends on: for each degree in [0, 2g-2] the multiset
/// of h^0 values with multiplicities (empty when g = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveData {
    pub q: u64,
    pub genus: usize,
    pub h: u64,
    /// `classes[d]` lists (h0_value, count) for degree d, `0 <= d <= 2g-2`.
    pub classes: Vec<Vec<(u32, u64)>>,
}

/// The projective line: genus 0, trivial class group.
pub fn curve_p1(q: u64) -> CurveData {
    CurveData { q, genus: 0, h: 1, classes: vec![] }
}

/// An elliptic curve over F_q with `n_points` rational points: h = N and the
/// degree-0 profile has the trivial class (h0 = 1) plus N-1 classes with
/// h0 = 0.
pub fn curve_elliptic(q: u64, n_points: u64) -> CurveData {
    let mut profile = vec![(1u32, 1u64)];
    if n_points > 1 {
        profile.push((0, n_points - 1));
    }
    CurveData { q, genus: 1, h: n_points, classes: vec![profile] }
}

pub fn validate_curve(c: &CurveData) -> Result<()> {
    if c.q < 2 {
        return Err(Error::invariant("q", c.q as f64, "q must be a prime power >= 2"));
    }
    if c.h == 0 {
        return Err(Error::invariant("h", 0.0, "class number must be positive"));
    }
    if c.genus == 0 {
        if !c.classes.is_empty() {
            return Err(Error::invariant(
                "classes",
                c.classes.len() as f64,
                "genus 0 has no special degrees",
            ));
        }
        return Ok(());
    }
    if c.classes.len() != 2 * c.genus - 1 {
        return Err(Error::invariant(
            "classes",
            c.classes.len() as f64 - (2 * c.genus - 1) as f64,
            format!("need profiles for degrees 0..={}", 2 * c.genus - 2),
        ));
    }
    for (d, profile) in c.classes.iter().enumerate() {
        let total: u64 = profile.iter().map(|&(_, n)| n).sum();
        if total != c.h {
            return Err(Error::invariant(
                "degree_count",
                total as f64 - c.h as f64,
                format!("degree {d}: counts sum to {total}, expected h = {}", c.h),
            ));
        }
        if d == 0 {
            let ones: u64 = profile.iter().filter(|&&(v, _)| v == 1).map(|&(_, n)| n).sum();
            let zeros: u64 = profile.iter().filter(|&&(v, _)| v == 0).map(|&(_, n)| n).sum();
            if ones != 1 || zeros != c.h - 1 {
                return Err(Error::invariant(
                    "trivial_class",
                    ones as f64 - 1.0,
                    "degree 0 must have exactly one class with h0 = 1 and the rest 0",
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The zeta function
// ---------------------------------------------------------------------------

/// Pellikaan's two-variable zeta function as an exact rational function:
/// `(u - 1) Z_X(T, u) = sum_classes u^{h0} T^deg +
///  h (u^{d0+1-g} T^{d0} / (1 - uT) - 1/(1 - T))`, `d0 = max(0, 2g-1)`.
/// The division by `u - 1` must be exact; failure flags inconsistent data.
pub fn zeta_two_var(c: &CurveData) -> Result<BivariateRational> {
    validate_curve(c)?;
    let g = c.genus;
    let one = Poly2::constant(1);
    let t = Poly2::var_t();
    let u = Poly2::var_u();
    let one_minus_t = one.sub(&t);
    let one_minus_ut = one.sub(&u.mul(&t));
    let mut class_sum = Poly2::zero();
    for (d, profile) in c.classes.iter().enumerate() {
        for &(h0, count) in profile {
            class_sum = class_sum.add(&Poly2::monomial(
                d as u32,
                h0,
                BigRational::from_integer(BigInt::from(count)),
            ));
        }
    }
    let d0 = if g == 0 { 0 } else { 2 * g - 1 } as u32;
    let tail_exp = (d0 as usize + 1 - g) as u32;
    let h_rat = BigRational::from_integer(BigInt::from(c.h));
    let tail = Poly2::monomial(d0, tail_exp, h_rat.clone()).mul(&one_minus_t);
    let pole_part = one_minus_ut.scale(&h_rat);
    let numerator = class_sum
        .mul(&one_minus_t)
        .mul(&one_minus_ut)
        .add(&tail)
        .sub(&pole_part);
    let u_minus_1 = u.sub(&one);
    let divided = numerator.exact_div(&u_minus_1).ok_or_else(|| {
        Error::InvalidInput(
            "class data is inconsistent: numerator not divisible by (u - 1)".into(),
        )
    })?;
    BivariateRational::new(divided, one_minus_t.mul(&one_minus_ut))
}

/// The numerator coefficients `P_i(u)` of `P_X = Z (1-T)(1-uT)`, with the
/// degree constraints `P_0 = 1`, `P_{2g} = u^g`, `deg P_i <= 1 + i/2`
/// verified.
pub fn extract_p(z: &BivariateRational, genus: usize) -> Result<Vec<UniPoly>> {
    let one = Poly2::constant(1);
    let t = Poly2::var_t();
    let u = Poly2::var_u();
    let product = z.num.mul(&one.sub(&t)).mul(&one.sub(&u.mul(&t)));
    let p = product.exact_div(&z.den).ok_or_else(|| {
        Error::InvalidInput("Z (1-T)(1-uT) is not a polynomial: bad denominator".into())
    })?;
    let top = 2 * genus as u32;
    if p.t_degree() > top {
        return Err(Error::invariant(
            "p_degree",
            p.t_degree() as f64 - top as f64,
            format!("P has T-degree {} > 2g = {top}", p.t_degree()),
        ));
    }
    let coeffs: Vec<UniPoly> = (0..=top).map(|i| p.t_coefficient(i)).collect();
    if coeffs[0] != UniPoly::constant(1) {
        return Err(Error::invariant("p_zero", 0.0, "P_0 != 1"));
    }
    let ug = UniPoly::constant(1).shift(genus);
    if coeffs[top as usize] != ug {
        return Err(Error::invariant("p_top", 0.0, "P_{2g} != u^g"));
    }
    for (i, pi) in coeffs.iter().enumerate() {
        if let Some(d) = pi.degree() {
            if 2 * d > 2 + i as u32 {
                return Err(Error::invariant(
                    "p_u_degree",
                    d as f64 - (1.0 + i as f64 / 2.0),
                    format!("deg P_{i} = {d} exceeds 1 + {i}/2"),
                ));
            }
        }
    }
    Ok(coeffs)
}

/// Exact check of `P_{2g-i}(u) = u^{g-i} P_i(u)`; `None` means it holds,
/// otherwise the first violated index is the witness.
pub fn check_functional_equation(z: &BivariateRational, genus: usize) -> Result<Option<usize>> {
    let p = extract_p(z, genus)?;
    for i in 0..=genus {
        let lhs = &p[2 * genus - i];
        let rhs = p[i].shift(genus - i);
        if *lhs != rhs {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Univariate rational function in T obtained by the exact substitution
/// `u := value`.
pub fn specialize_u(z: &BivariateRational, value: &BigRational) -> (UniPoly, UniPoly) {
    (z.num.substitute_u(value), z.den.substitute_u(value))
}

/// `zeta^{GS}_X(s, t) = (q^{s+t} - 1) q^{t(g-1)} Z_X(q^{-t}, q^{s+t})`.
pub fn zeta_gs_ff(c: &CurveData, z: &BivariateRational, s: Complex64, t: Complex64) -> Result<Complex64> {
    let lq = (c.q as f64).ln();
    let u_val = ((s + t) * lq).exp();
    let t_val = (-t * lq).exp();
    let zv = z.eval(t_val, u_val)?;
    Ok((u_val - 1.0) * (t * (c.genus as f64 - 1.0) * lq).exp() * zv)
}

/// `zeta_X(s, w) = (q^w - 1) q^{-s(1-g)} Z_X(q^{-s}, q^w)`.
pub fn zeta_sw_ff(c: &CurveData, z: &BivariateRational, s: Complex64, w: Complex64) -> Result<Complex64> {
    let lq = (c.q as f64).ln();
    let u_val = (w * lq).exp();
    let t_val = (-s * lq).exp();
    let zv = z.eval(t_val, u_val)?;
    Ok((u_val - 1.0) * (-s * (1.0 - c.genus as f64) * lq).exp() * zv)
}

/// Effective-divisor counts of P^1 over F_q through degree `d_max`, computed
/// by the closed form `(q^{d+1} - 1)/(q - 1)` and independently by counting
/// (degree at infinity, monic polynomial) pairs; a mismatch is an error.
pub fn p1_effective_divisor_oracle(q: u64, d_max: usize) -> Result<Vec<u64>> {
    if q > 16 || d_max > 12 {
        return Err(Error::InvalidInput("oracle limits: q <= 16, d_max <= 12".into()));
    }
    if q < 2 {
        return Err(Error::InvalidInput("q must be >= 2".into()));
    }
    let mut out = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let closed = (q.pow(d as u32 + 1) - 1) / (q - 1);
        let mut pairs = 0u64;
        for j in 0..=d {
            // j points at infinity, a monic polynomial of degree d - j
            pairs += q.pow((d - j) as u32);
        }
        if closed != pairs {
            return Err(Error::Numeric(format!(
                "divisor count mismatch at degree {d}: {closed} vs {pairs}"
            )));
        }
        out.push(closed);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Riemann-Roch-consistent random data
// ---------------------------------------------------------------------------

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c55);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Random curve data satisfying the Riemann-Roch pairing
/// `h0(D) - h0(K - D) = deg D + 1 - g` together with the Clifford-type cap
/// `h0 <= 1 + d/2`; every output passes `extract_p` and the functional
/// equation exactly.
pub fn random_consistent_curve(q: u64, genus: usize, h: u64, seed: u64) -> CurveData {
    assert!(h >= 1);
    if genus == 0 {
        return CurveData { q, genus: 0, h: 1, classes: vec![] };
    }
    let mut rng = SplitMix64(seed ^ 0xabcdef1234567890);
    let degrees = 2 * genus - 1;
    let mut profiles: Vec<Vec<(u32, u64)>> = vec![vec![]; degrees];
    // degree 0: trivial class plus h-1 others
    let mut lower_values: Vec<Vec<u32>> = vec![vec![]; degrees];
    lower_values[0] = std::iter::once(1)
        .chain(std::iter::repeat(0).take(h as usize - 1))
        .collect();
    let mid = genus - 1;
    for (d, vals) in lower_values.iter_mut().enumerate().take(mid + 1).skip(1) {
        let cap = 1 + (d as u32) / 2;
        *vals = (0..h).map(|_| rng.below(cap as u64 + 1) as u32).collect();
    }
    for d in 0..=mid {
        let dual = 2 * genus - 2 - d;
        let shift = (genus - 1 - d) as u32;
        let mut multiset: BTreeMap<u32, u64> = BTreeMap::new();
        for &v in &lower_values[d] {
            *multiset.entry(v).or_insert(0) += 1;
        }
        profiles[d] = multiset.iter().map(|(&v, &n)| (v, n)).collect();
        if dual != d {
            profiles[dual] = multiset.iter().map(|(&v, &n)| (v + shift, n)).collect();
        }
    }
    let c = CurveData { q, genus, h, classes: profiles };
    debug_assert!(validate_curve(&c).is_ok());
    c
}

// ---------------------------------------------------------------------------
// Curve files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CurveFileEntry {
    degree: usize,
    h0: u32,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    q: u64,
    genus: usize,
    h: u64,
    classes: Vec<CurveFileEntry>,
}

pub fn load_curve_file(path: impl AsRef<Path>) -> Result<CurveData> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.as_ref().display())))?;
    parse_curve_json(&text)
}

pub fn parse_curve_json(text: &str) -> Result<CurveData> {
    let file: CurveFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("curve file: {e}")))?;
    let degrees = if file.genus == 0 { 0 } else { 2 * file.genus - 1 };
    let mut classes = vec![Vec::new(); degrees];
    for e in &file.classes {
        if e.degree >= degrees {
            return Err(Error::Parse(format!(
                "degree {} outside [0, 2g-2] = [0, {}]",
                e.degree,
                degrees.saturating_sub(1)
            )));
        }
        classes[e.degree].push((e.h0, e.count));
    }
    let c = CurveData { q: file.q, genus: file.genus, h: file.h, classes };
    validate_curve(&c)?;
    Ok(c)
}

pub fn curve_to_json(c: &CurveData) -> Result<String> {
    let mut entries = Vec::new();
    for (degree, profile) in c.classes.iter().enumerate() {
        for &(h0, count) in profile {
            entries.push(CurveFileEntry { degree, h0, count });
        }
    }
    serde_json::to_string_pretty(&CurveFile {
        q: c.q,
        genus: c.genus,
        h: c.h,
        classes: entries,
    })
    .map_err(|e| Error::Parse(e.to_string()))
}

/// Human-readable rendering `P_0(u) + P_1(u) T + ...` used by the CLI.
pub fn render_p(p: &[UniPoly]) -> String {
    let mut parts = Vec::new();
    for (i, pi) in p.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        let coeff = format!("{pi}");
        let wrapped = if coeff.contains(' ') { format!("({coeff})") } else { coeff };
        match i {
            0 => parts.push(wrapped),
            1 => parts.push(format!("{wrapped}*T")),
            _ => parts.push(format!("{wrapped}*T^{i}")),
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn p1_zeta_is_standard() {
        let z = zeta_two_var(&curve_p1(4)).unwrap();
        // Z = 1/((1-T)(1-uT))
        let one = Poly2::constant(1);
        let want_den = one.sub(&Poly2::var_t()).mul(&one.sub(&Poly2::var_u().mul(&Poly2::var_t())));
        let want = BivariateRational::new(Poly2::constant(1), want_den).unwrap();
        assert!(z.equals(&want));
        let p = extract_p(&z, 0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0], UniPoly::constant(1));
    }

    #[test]
    fn elliptic_numerator_matches_formula() {
        // P = 1 + (N - 1 - u) T + u T^2
        for (q, n) in [(2u64, 5u64), (4, 5), (3, 7)] {
            let z = zeta_two_var(&curve_elliptic(q, n)).unwrap();
            let p = extract_p(&z, 1).unwrap();
            assert_eq!(p.len(), 3);
            assert_eq!(p[0], UniPoly::constant(1));
            assert_eq!(p[1], UniPoly::new(vec![rat(n as i64 - 1), rat(-1)]));
            assert_eq!(p[2], UniPoly::new(vec![rat(0), rat(1)]));
        }
    }

    #[test]
    fn functional_equation_elliptic_and_p1() {
        let z = zeta_two_var(&curve_elliptic(2, 5)).unwrap();
        assert_eq!(check_functional_equation(&z, 1).unwrap(), None);
        let z = zeta_two_var(&curve_p1(3)).unwrap();
        assert_eq!(check_functional_equation(&z, 0).unwrap(), None);
    }

    #[test]
    fn corrupted_data_is_rejected() {
        // counts not summing to h per degree
        let bad = CurveData {
            q: 2,
            genus: 1,
            h: 5,
            classes: vec![vec![(1, 1), (0, 3)]],
        };
        assert!(matches!(zeta_two_var(&bad), Err(Error::Invariant { .. })));
        // counts fine but two trivial classes: rejected by the degree-0 rule
        let bad = CurveData {
            q: 2,
            genus: 1,
            h: 5,
            classes: vec![vec![(1, 2), (0, 3)]],
        };
        assert!(zeta_two_var(&bad).is_err());
    }

    #[test]
    fn specialization_at_q_is_classical() {
        let n = 5u64;
        let q = 4u64;
        let z = zeta_two_var(&curve_elliptic(q, n)).unwrap();
        let (num, den) = specialize_u(&z, &rat(q as i64));
        // numerator 1 + (N-1-q) T + q T^2
        assert_eq!(num, UniPoly::new(vec![rat(1), rat(n as i64 - 1 - q as i64), rat(q as i64)]));
        assert_eq!(
            den,
            UniPoly::new(vec![rat(1), rat(-(q as i64) - 1), rat(q as i64)])
        );
        // u := 1 stays finite
        let (n1, d1) = specialize_u(&z, &rat(1));
        assert!(!n1.is_zero() && !d1.is_zero());
    }

    #[test]
    fn gs_symmetry_and_sw_functional_equation() {
        let curves = [curve_p1(3), curve_elliptic(2, 5), random_consistent_curve(3, 2, 4, 7)];
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut rand = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 3.0 - 1.5
        };
        for c in &curves {
            let z = zeta_two_var(c).unwrap();
            for _ in 0..20 {
                let s = c64(rand(), rand());
                let t = c64(rand(), rand());
                let (a, b) = match (zeta_gs_ff(c, &z, s, t), zeta_gs_ff(c, &z, t, s)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => continue, // pole proximity: resample
                };
                assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0), "GS symmetry");
                let w = s + t;
                if let (Ok(x), Ok(y)) = (zeta_sw_ff(c, &z, s, w), zeta_sw_ff(c, &z, w - s, w)) {
                    assert!((x - y).norm() <= 1e-12 * x.norm().max(1.0), "sw symmetry");
                }
            }
        }
    }

    #[test]
    fn gs_matches_both_prop_expressions() {
        // (q^{s+t}-1) q^{t(g-1)} Z(q^{-t}, q^{s+t}) =
        // (q^{s+t}-1) q^{s(g-1)} Z(q^{-s}, q^{s+t})
        let c = curve_elliptic(2, 5);
        let z = zeta_two_var(&c).unwrap();
        let lq = 2f64.ln();
        for (s, t) in [(c64(0.7, 0.2), c64(-0.4, 0.6)), (c64(1.3, -0.5), c64(0.9, 0.8))] {
            let u_val = ((s + t) * lq).exp();
            let a = (u_val - 1.0)
                * (t * (c.genus as f64 - 1.0) * lq).exp()
                * z.eval((-t * lq).exp(), u_val).unwrap();
            let b = (u_val - 1.0)
                * (s * (c.genus as f64 - 1.0) * lq).exp()
                * z.eval((-s * lq).exp(), u_val).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn gs_at_w_one_reduces_to_classical_zeta() {
        // zeta^GS(s, 1-s) = (q-1) q^{s(g-1)} zeta_X(s)
        let c = curve_elliptic(2, 5);
        let z = zeta_two_var(&c).unwrap();
        let s = c64(2.0, 0.0);
        let lhs = zeta_gs_ff(&c, &z, s, c64(1.0, 0.0) - s).unwrap();
        let lq = 2f64.ln();
        // classical zeta at u := q
        let (num, den) = specialize_u(&z, &rat(2));
        let t_val = (-s * lq).exp();
        let classical = num.eval(t_val) / den.eval(t_val);
        let rhs = (2.0 - 1.0) * (s * (c.genus as f64 - 1.0) * lq).exp() * classical;
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "{lhs} vs {rhs}");
        // and zeta_X(s, 1) = (q-1) q^{-s(1-g)} zeta_X(s)
        let lhs = zeta_sw_ff(&c, &z, s, c64(1.0, 0.0)).unwrap();
        let rhs = (2.0 - 1.0) * (-s * (1.0 - c.genus as f64) * lq).exp() * classical;
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }

    #[test]
    fn divisor_counts_of_p1() {
        let counts = p1_effective_divisor_oracle(2, 12).unwrap();
        assert_eq!(counts[0], 1);
        assert_eq!(counts[1], 3);
        assert_eq!(counts[2], 7);
        // Taylor coefficients of 1/((1-T)(1-qT)) at u := q agree
        for q in [2u64, 3, 4] {
            let counts = p1_effective_divisor_oracle(q, 12).unwrap();
            let z = zeta_two_var(&curve_p1(q)).unwrap();
            let (num, den) = specialize_u(&z, &rat(q as i64));
            // series coefficients by the recurrence den * series = num
            let mut series: Vec<BigRational> = Vec::new();
            for d in 0..=12usize {
                let mut acc = num.coeff(d);
                for k in 1..=d {
                    acc -= den.coeff(k) * series[d - k].clone();
                }
                acc /= den.coeff(0);
                series.push(acc);
            }
            for (d, &cnt) in counts.iter().enumerate() {
                assert_eq!(series[d], rat(cnt as i64), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn generator_produces_consistent_data() {
        for seed in 0..50u64 {
            let genus = 1 + (seed % 3) as usize;
            let h = 1 + seed % 6;
            let c = random_consistent_curve(2 + seed % 3, genus, h, seed);
            validate_curve(&c).unwrap();
            let z = zeta_two_var(&c).unwrap();
            let p = extract_p(&z, genus).unwrap();
            assert_eq!(check_functional_equation(&z, genus).unwrap(), None, "seed {seed}");
            // u := q specialization has integer coefficients
            let (num, _) = specialize_u(&z, &rat(c.q as i64));
            assert!(num.all_integer(), "seed {seed}");
            assert_eq!(p.len(), 2 * genus + 1);
        }
    }

    #[test]
    fn curve_file_roundtrip() {
        let c = random_consistent_curve(3, 2, 3, 42);
        let json = curve_to_json(&c).unwrap();
        let back = parse_curve_json(&json).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn render_p_is_readable() {
        let z = zeta_two_var(&curve_elliptic(2, 5)).unwrap();
        let p = extract_p(&z, 1).unwrap();
        assert_eq!(render_p(&p), "1 + (4 - u)*T + u*T^2");
    }
}
