//! Number-field invariants: the data model every number-field computation
//! reads, plus built-in constructors for the rationals and quadratic fields
//! and JSON ingestion for everything else.
//!
//! A field is described by its signature, discriminant, class number,
//! regulator, unit logs and one embedded Z-basis per ideal class. The
//! embedding of a basis element is stored as its coordinates in
//! `k (x) R = R^{r1} x C^{r2}`, written `(real places..., Re, Im pairs...)`.
//! The squared norm at a complex place is `Re^2 + Im^2`.

pub mod quadratic;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

const TOL_UNIT_SUM: f64 = 1e-12;
const TOL_REGULATOR: f64 = 1e-10;
const TOL_COVOLUME: f64 = 1e-10;

/// Embedded Z-basis of one ideal-class representative.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealLatticeBasis {
    /// Absolute norm N(a) of the representative ideal.
    pub norm: f64,
    /// n x n matrix; row i is the embedding of the i-th basis element.
    pub embedding: Vec<Vec<f64>>,
}

/// How `theta_k1` resolves the class of `d^{-1} a^{-1}` for one stored class:
/// the index of the stored representative of that class and the log vector
/// `(e_v log|lambda|_v)_v` of the element `lambda` with
/// `d^{-1} a^{-1} = lambda * (representative)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaPairing {
    pub to_class: usize,
    pub lambda_logs: Vec<f64>,
}

/// Immutable ground-truth invariants of a number field.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberFieldData {
    pub degree_n: usize,
    pub r1: usize,
    pub r2: usize,
    /// Unit rank r = r1 + r2 - 1.
    pub unit_rank_r: usize,
    /// Absolute value of the discriminant.
    pub disc_abs: f64,
    /// Number of roots of unity.
    pub mu_count: usize,
    pub class_number_h: usize,
    /// Regulator; 1.0 by convention when the unit rank is 0.
    pub regulator: f64,
    /// One entry per ideal class; entry 0 is the principal class with the
    /// ring of integers as basis.
    pub ideal_classes: Vec<IdealLatticeBasis>,
    /// r vectors of length r1+r2; entry v of vector i is e_v log|eps_i|_v.
    pub unit_logs: Vec<Vec<f64>>,
    /// Norm of the different; equals disc_abs.
    pub different_norm: f64,
    /// Optional resolution data for `theta_k1`, one entry per class.
    pub kappa_pairings: Option<Vec<KappaPairing>>,
}

impl NumberFieldData {
    /// Number of infinite places r1 + r2.
    pub fn places(&self) -> usize {
        self.r1 + self.r2
    }

    /// e_v for place index v (1 for real, 2 for complex).
    pub fn e_v(&self, v: usize) -> f64 {
        if v < self.r1 {
            1.0
        } else {
            2.0
        }
    }
}

/// The field Q: one real place, trivial class group, R = 1.
pub fn make_rationals() -> NumberFieldData {
    let f = NumberFieldData {
        degree_n: 1,
        r1: 1,
        r2: 0,
        unit_rank_r: 0,
        disc_abs: 1.0,
        mu_count: 2,
        class_number_h: 1,
        regulator: 1.0,
        ideal_classes: vec![IdealLatticeBasis { norm: 1.0, embedding: vec![vec![1.0]] }],
        unit_logs: vec![],
        different_norm: 1.0,
        kappa_pairings: Some(vec![KappaPairing { to_class: 0, lambda_logs: vec![0.0] }]),
    };
    debug_assert!(validate(&f).is_ok());
    f
}

/// The quadratic field Q(sqrt(m)) for squarefree m != 0, 1. Class number,
/// regulator, class representatives and the fundamental unit are computed
/// internally (reduced-form cycles and continued fractions).
pub fn make_quadratic(m: i64) -> Result<NumberFieldData> {
    quadratic::make(m)
}

/// Validate every declared invariant; the error names the failing check and
/// carries the residual.
pub fn validate(f: &NumberFieldData) -> Result<()> {
    if f.degree_n != f.r1 + 2 * f.r2 {
        return Err(Error::invariant(
            "signature",
            (f.degree_n as f64) - (f.r1 + 2 * f.r2) as f64,
            format!("n = {} but r1 + 2 r2 = {}", f.degree_n, f.r1 + 2 * f.r2),
        ));
    }
    if f.unit_rank_r != f.r1 + f.r2 - 1 {
        return Err(Error::invariant(
            "unit_rank",
            0.0,
            format!("r = {} but r1 + r2 - 1 = {}", f.unit_rank_r, f.r1 + f.r2 - 1),
        ));
    }
    if !(f.disc_abs > 0.0) || !(f.regulator > 0.0) || f.mu_count == 0 || f.class_number_h == 0 {
        return Err(Error::invariant("positivity", 0.0, "d_k, R_k, |mu|, h must be positive"));
    }
    if f.unit_rank_r == 0 && (f.regulator - 1.0).abs() > 1e-15 {
        return Err(Error::invariant(
            "regulator",
            f.regulator - 1.0,
            "unit rank 0 requires R = 1 (counting-measure convention)",
        ));
    }
    if (f.different_norm - f.disc_abs).abs() > 1e-6 * f.disc_abs {
        return Err(Error::invariant(
            "different_norm",
            f.different_norm - f.disc_abs,
            "N(different) must equal |disc|",
        ));
    }
    if f.unit_logs.len() != f.unit_rank_r {
        return Err(Error::invariant(
            "unit_logs_count",
            f.unit_logs.len() as f64 - f.unit_rank_r as f64,
            "one log vector per fundamental unit",
        ));
    }
    for (i, row) in f.unit_logs.iter().enumerate() {
        if row.len() != f.places() {
            return Err(Error::invariant(
                "unit_log_length",
                row.len() as f64 - f.places() as f64,
                format!("unit log {i} has wrong length"),
            ));
        }
        let s: f64 = row.iter().sum();
        if s.abs() > TOL_UNIT_SUM {
            return Err(Error::invariant(
                "unit_log_sum",
                s,
                format!("unit log {i} does not sum to 0 (product formula)"),
            ));
        }
    }
    if f.unit_rank_r > 0 {
        // |det| of the unit-log matrix with one place deleted must be R_k.
        let r = f.unit_rank_r;
        let mat: Vec<Vec<f64>> =
            f.unit_logs.iter().map(|row| row[..r].to_vec()).collect();
        let det = det_dense(&mat).abs();
        if (det - f.regulator).abs() > TOL_REGULATOR * f.regulator.max(1.0) {
            return Err(Error::invariant(
                "regulator",
                det - f.regulator,
                format!("|det| of unit-log minor is {det}, declared R = {}", f.regulator),
            ));
        }
    }
    if f.ideal_classes.len() != f.class_number_h {
        return Err(Error::invariant(
            "class_count",
            f.ideal_classes.len() as f64 - f.class_number_h as f64,
            "one representative per ideal class",
        ));
    }
    for (i, cl) in f.ideal_classes.iter().enumerate() {
        if cl.embedding.len() != f.degree_n
            || cl.embedding.iter().any(|row| row.len() != f.degree_n)
        {
            return Err(Error::invariant(
                "embedding_shape",
                0.0,
                format!("class {i} embedding is not {0} x {0}", f.degree_n),
            ));
        }
        if !(cl.norm > 0.0) {
            return Err(Error::invariant("ideal_norm", cl.norm, "ideal norm must be positive"));
        }
        // Covolume in the x = 0 metric: |det B| 2^{r2} = N(a) sqrt(d_k).
        let det = det_dense(&cl.embedding).abs() * 2f64.powi(f.r2 as i32);
        let expected = cl.norm * f.disc_abs.sqrt();
        if (det - expected).abs() > TOL_COVOLUME * expected.max(1.0) {
            return Err(Error::invariant(
                "covolume",
                det - expected,
                format!("class {i}: lattice covolume {det} != N(a) sqrt(d_k) = {expected}"),
            ));
        }
    }
    if let Some(pairings) = &f.kappa_pairings {
        if pairings.len() != f.class_number_h {
            return Err(Error::invariant(
                "kappa_pairing_count",
                pairings.len() as f64 - f.class_number_h as f64,
                "one kappa pairing per class when present",
            ));
        }
        for (i, p) in pairings.iter().enumerate() {
            if p.to_class >= f.class_number_h || p.lambda_logs.len() != f.places() {
                return Err(Error::invariant(
                    "kappa_pairing_shape",
                    0.0,
                    format!("kappa pairing {i} malformed"),
                ));
            }
            // N(d^-1 a^-1) = N(rep) |N(lambda)|
            let lhs = 1.0 / (f.different_norm * f.ideal_classes[i].norm);
            let rhs = f.ideal_classes[p.to_class].norm
                * p.lambda_logs.iter().sum::<f64>().exp();
            if (lhs - rhs).abs() > 1e-8 * lhs.max(rhs) {
                return Err(Error::invariant(
                    "kappa_pairing_norm",
                    lhs - rhs,
                    format!("kappa pairing {i} norm mismatch"),
                ));
            }
        }
    }
    Ok(())
}

fn det_dense(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let (pivot, _) = a
            .iter()
            .enumerate()
            .skip(col)
            .map(|(i, row)| (i, row[col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for i in col + 1..n {
            let t = a[i][col] / a[col][col];
            for j in col..n {
                a[i][j] -= t * a[col][j];
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

/// A real number in a field file: either a JSON double or a decimal string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum FileReal {
    Num(f64),
    Str(String),
}

impl FileReal {
    fn value(&self) -> Result<f64> {
        match self {
            FileReal::Num(x) => Ok(*x),
            FileReal::Str(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad decimal string {s:?}: {e}"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct FileIdealClass {
    norm: FileReal,
    embedding: Vec<FileReal>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FileKappaPairing {
    to_class: usize,
    lambda_logs: Vec<FileReal>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FieldFile {
    degree: usize,
    r1: usize,
    r2: usize,
    disc_abs: FileReal,
    mu_count: usize,
    class_number: usize,
    regulator: FileReal,
    unit_logs: Vec<Vec<FileReal>>,
    ideal_classes: Vec<FileIdealClass>,
    different_norm: FileReal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kappa_pairings: Option<Vec<FileKappaPairing>>,
}

/// Parse and validate a field file (schema in the crate docs).
pub fn load_field_file(path: impl AsRef<Path>) -> Result<NumberFieldData> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.as_ref().display())))?;
    parse_field_json(&text)
}

/// Parse and validate a field description from a JSON string.
pub fn parse_field_json(text: &str) -> Result<NumberFieldData> {
    let file: FieldFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("field file: {e}")))?;
    let n = file.degree;
    let mut ideal_classes = Vec::with_capacity(file.ideal_classes.len());
    for (i, cl) in file.ideal_classes.iter().enumerate() {
        if cl.embedding.len() != n * n {
            return Err(Error::Parse(format!(
                "class {i}: embedding has {} entries, expected {}",
                cl.embedding.len(),
                n * n
            )));
        }
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                row.push(cl.embedding[r * n + c].value()?);
            }
            rows.push(row);
        }
        ideal_classes.push(IdealLatticeBasis { norm: cl.norm.value()?, embedding: rows });
    }
    let unit_logs = file
        .unit_logs
        .iter()
        .map(|row| row.iter().map(|x| x.value()).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    let kappa_pairings = match file.kappa_pairings {
        None => None,
        Some(ps) => Some(
            ps.iter()
                .map(|p| {
                    Ok(KappaPairing {
                        to_class: p.to_class,
                        lambda_logs: p
                            .lambda_logs
                            .iter()
                            .map(|x| x.value())
                            .collect::<Result<Vec<f64>>>()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let data = NumberFieldData {
        degree_n: n,
        r1: file.r1,
        r2: file.r2,
        unit_rank_r: (file.r1 + file.r2).saturating_sub(1),
        disc_abs: file.disc_abs.value()?,
        mu_count: file.mu_count,
        class_number_h: file.class_number,
        regulator: file.regulator.value()?,
        ideal_classes,
        unit_logs,
        different_norm: file.different_norm.value()?,
        kappa_pairings,
    };
    validate(&data)?;
    Ok(data)
}

/// Serialize to the same JSON schema `load_field_file` reads.
pub fn save_field_file(f: &NumberFieldData, path: impl AsRef<Path>) -> Result<()> {
    let text = field_to_json(f)?;
    std::fs::write(path.as_ref(), text)
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.as_ref().display())))
}

pub fn field_to_json(f: &NumberFieldData) -> Result<String> {
    let file = FieldFile {
        degree: f.degree_n,
        r1: f.r1,
        r2: f.r2,
        disc_abs: FileReal::Num(f.disc_abs),
        mu_count: f.mu_count,
        class_number: f.class_number_h,
        regulator: FileReal::Num(f.regulator),
        unit_logs: f
            .unit_logs
            .iter()
            .map(|row| row.iter().map(|&x| FileReal::Num(x)).collect())
            .collect(),
        ideal_classes: f
            .ideal_classes
            .iter()
            .map(|cl| FileIdealClass {
                norm: FileReal::Num(cl.norm),
                embedding: cl
                    .embedding
                    .iter()
                    .flat_map(|row| row.iter().map(|&x| FileReal::Num(x)))
                    .collect(),
            })
            .collect(),
        different_norm: FileReal::Num(f.different_norm),
        kappa_pairings: f.kappa_pairings.as_ref().map(|ps| {
            ps.iter()
                .map(|p| FileKappaPairing {
                    to_class: p.to_class,
                    lambda_logs: p.lambda_logs.iter().map(|&x| FileReal::Num(x)).collect(),
                })
                .collect()
        }),
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))
}
