//! Super Borcherds-Cartan data, weights, and the Weyl group of real reflections.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexClass {
    Real,
    Imaginary,
    Isotropic,
}

impl IndexClass {
    pub fn is_imaginary(self) -> bool {
        !matches!(self, IndexClass::Real)
    }
}

impl fmt::Display for IndexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IndexClass::Real => "real",
            IndexClass::Imaginary => "imaginary",
            IndexClass::Isotropic => "isotropic",
        };
        write!(f, "{s}")
    }
}

/// Element of the root lattice, `sum_i c_i alpha_i`.
///
/// Ordered by height first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RootWeight(pub Vec<i64>);

impl RootWeight {
    pub fn zero(rank: usize) -> Self {
        RootWeight(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootWeight(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        RootWeight(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * alpha_i`.
    pub fn plus_simple(&self, i: usize, k: i64) -> Self {
        let mut v = self.0.clone();
        v[i] += k;
        RootWeight(v)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &RootWeight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl Ord for RootWeight {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for RootWeight {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &RootWeight {
    type Output = RootWeight;
    fn add(self, o: &RootWeight) -> RootWeight {
        RootWeight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootWeight {
    type Output = RootWeight;
    fn sub(self, o: &RootWeight) -> RootWeight {
        RootWeight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootWeight {
    type Output = RootWeight;
    fn neg(self) -> RootWeight {
        RootWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RootWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A weight written as `anchor - offset`, where the anchor is given by its
/// coroot values and the offset is a root-lattice element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight {
    pub anchor: Vec<i64>,
    pub offset: RootWeight,
}

impl Weight {
    /// The weight with the given coroot values and zero offset.
    pub fn from_coroots(values: Vec<i64>) -> Self {
        let n = values.len();
        Weight { anchor: values, offset: RootWeight::zero(n) }
    }

    /// `self - beta`.
    pub fn minus_root(&self, beta: &RootWeight) -> Self {
        Weight { anchor: self.anchor.clone(), offset: &self.offset + beta }
    }

    /// Sum of two weights; anchors and offsets add.
    pub fn plus(&self, other: &Weight) -> Self {
        Weight {
            anchor: self.anchor.iter().zip(&other.anchor).map(|(a, b)| a + b).collect(),
            offset: &self.offset + &other.offset,
        }
    }
}

/// Record describing one index of a datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRecord {
    pub name: String,
    pub parity: u8,
    pub d: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bozec_bound: Option<u32>,
}

/// On-disk form of a datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumFile {
    pub cartan: Vec<Vec<i64>>,
    pub indices: Vec<IndexRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor_weight: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DiagonalEntry { i: usize, value: i64 },
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    NotSymmetrized { i: usize, j: usize },
    OddEntryAtOddIndex { i: usize, j: usize, value: i64 },
    NonPositiveSymmetrizer { i: usize, value: i64 },
    BadParity { i: usize, value: u8 },
    BoundOnRealIndex { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DiagonalEntry { i, value } => {
                write!(f, "a_{i}{i} = {value} is not 2 or a non-positive even integer")
            }
            Violation::PositiveOffDiagonal { i, j, value } => {
                write!(f, "a_{i}{j} = {value} is positive off the diagonal")
            }
            Violation::NotSymmetrized { i, j } => {
                write!(f, "d_{i} a_{i}{j} != d_{j} a_{j}{i}: DA is not symmetric")
            }
            Violation::OddEntryAtOddIndex { i, j, value } => {
                write!(f, "a_{i}{j} = {value} is odd at odd index {i}")
            }
            Violation::NonPositiveSymmetrizer { i, value } => {
                write!(f, "d_{i} = {value} is not positive")
            }
            Violation::BadParity { i, value } => write!(f, "parity of index {i} is {value}"),
            Violation::BoundOnRealIndex { i } => {
                write!(f, "real index {i} carries a level bound other than 1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub classification: Vec<IndexClass>,
    pub bar_consistent: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A point of a Weyl orbit together with its sign and the length of the
/// first word reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub weight: Weight,
    pub sign: i64,
    pub length: usize,
    /// Simple reflections in the order they were applied to reach the point.
    pub word: Vec<usize>,
}

/// A super Borcherds-Cartan datum on a finite index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    names: Vec<String>,
    parity: Vec<u8>,
    d: Vec<i64>,
    a: Vec<Vec<i64>>,
    bounds: Vec<Option<u32>>,
    anchor: Option<Vec<i64>>,
}

impl CartanDatum {
    /// Builds a datum after checking only the shape. Use [`validate`] for the
    /// remaining conditions.
    ///
    /// [`validate`]: CartanDatum::validate
    pub fn from_parts(
        names: Vec<String>,
        parity: Vec<u8>,
        d: Vec<i64>,
        a: Vec<Vec<i64>>,
        bounds: Vec<Option<u32>>,
    ) -> Result<Self> {
        let n = names.len();
        if parity.len() != n || d.len() != n || bounds.len() != n {
            return Err(Error::Dimension(format!(
                "{n} names, {} parities, {} symmetrizers, {} bounds",
                parity.len(),
                d.len(),
                bounds.len()
            )));
        }
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!(
                "Cartan matrix must be {n}x{n} to match the index count"
            )));
        }
        Ok(CartanDatum { names, parity, d, a, bounds, anchor: None })
    }

    /// Builds and validates a datum with default names `1..n` and no level bounds.
    pub fn new(a: Vec<Vec<i64>>, parity: Vec<u8>, d: Vec<i64>) -> Result<Self> {
        let n = parity.len();
        let names = (1..=n).map(|k| k.to_string()).collect();
        let datum = Self::from_parts(names, parity, d, a, vec![None; n])?;
        datum.require_valid()?;
        Ok(datum)
    }

    /// Returns the datum with explicit level bounds on imaginary indices.
    pub fn with_bounds(mut self, bounds: Vec<Option<u32>>) -> Result<Self> {
        if bounds.len() != self.rank() {
            return Err(Error::Dimension("bound list length".into()));
        }
        self.bounds = bounds;
        self.require_valid()?;
        Ok(self)
    }

    pub fn with_anchor(mut self, anchor: Option<Vec<i64>>) -> Self {
        self.anchor = anchor;
        self
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidDatum(msgs.join("; ")))
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.rank();
        let mut violations = Vec::new();
        for i in 0..n {
            if self.parity[i] > 1 {
                violations.push(Violation::BadParity { i, value: self.parity[i] });
            }
            if self.d[i] <= 0 {
                violations.push(Violation::NonPositiveSymmetrizer { i, value: self.d[i] });
            }
            let aii = self.a[i][i];
            if !(aii == 2 || (aii <= 0 && aii % 2 == 0)) {
                violations.push(Violation::DiagonalEntry { i, value: aii });
            }
            if aii == 2 && self.bounds[i].is_some_and(|b| b != 1) {
                violations.push(Violation::BoundOnRealIndex { i });
            }
            for j in 0..n {
                if i != j && self.a[i][j] > 0 {
                    violations.push(Violation::PositiveOffDiagonal { i, j, value: self.a[i][j] });
                }
                if i < j && self.d[i] * self.a[i][j] != self.d[j] * self.a[j][i] {
                    violations.push(Violation::NotSymmetrized { i, j });
                }
                if self.parity[i] == 1 && self.a[i][j] % 2 != 0 {
                    violations.push(Violation::OddEntryAtOddIndex { i, j, value: self.a[i][j] });
                }
            }
        }
        ValidationReport {
            violations,
            classification: (0..n).map(|i| self.class(i)).collect(),
            bar_consistent: self.is_bar_consistent(),
        }
    }

    /// Reads a datum file; `.json` files are parsed as JSON, anything else as TOML.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::DatumFile {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let is_json = path.extension().is_some_and(|e| e == "json");
        let parsed = if is_json {
            Self::from_json_str(&text)
        } else {
            Self::from_toml_str(&text)
        };
        parsed.map_err(|e| match e {
            Error::DatumFile { message, .. } => Error::DatumFile {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: DatumFile = toml::from_str(text).map_err(|e| Error::DatumFile {
            path: "<toml>".into(),
            message: e.to_string(),
        })?;
        Self::from_datum_file(file)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: DatumFile = serde_json::from_str(text).map_err(|e| Error::DatumFile {
            path: "<json>".into(),
            message: e.to_string(),
        })?;
        Self::from_datum_file(file)
    }

    /// Converts a parsed file, checking shapes and value ranges with field paths.
    /// The mathematical conditions are left to [`validate`](CartanDatum::validate).
    pub fn from_datum_file(file: DatumFile) -> Result<Self> {
        let bad = |field: String, message: &str| Error::DatumFile {
            path: "<datum>".into(),
            message: format!("{field}: {message}"),
        };
        let n = file.indices.len();
        if n == 0 {
            return Err(bad("indices".into(), "at least one index is required"));
        }
        for (k, rec) in file.indices.iter().enumerate() {
            if rec.parity > 1 {
                return Err(bad(format!("indices[{k}].parity"), "must be 0 or 1"));
            }
            if rec.d <= 0 {
                return Err(bad(format!("indices[{k}].d"), "must be a positive integer"));
            }
            if rec.bozec_bound == Some(0) {
                return Err(bad(format!("indices[{k}].bozec_bound"), "must be at least 1"));
            }
        }
        if file.cartan.len() != n {
            return Err(bad("cartan".into(), &format!("expected {n} rows")));
        }
        for (r, row) in file.cartan.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!("cartan[{r}]"), &format!("expected {n} entries")));
            }
        }
        if let Some(anchor) = &file.anchor_weight {
            if anchor.len() != n {
                return Err(bad("anchor_weight".into(), &format!("expected {n} coroot values")));
            }
        }
        let datum = Self::from_parts(
            file.indices.iter().map(|r| r.name.clone()).collect(),
            file.indices.iter().map(|r| r.parity).collect(),
            file.indices.iter().map(|r| r.d).collect(),
            file.cartan,
            file.indices.iter().map(|r| r.bozec_bound).collect(),
        )?;
        Ok(datum.with_anchor(file.anchor_weight))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn anchor_weight(&self) -> Option<&[i64]> {
        self.anchor.as_deref()
    }

    pub fn class(&self, i: usize) -> IndexClass {
        match self.a[i][i] {
            2 => IndexClass::Real,
            0 => IndexClass::Isotropic,
            _ => IndexClass::Imaginary,
        }
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.class(i) == IndexClass::Real
    }

    pub fn is_imaginary(&self, i: usize) -> bool {
        self.class(i).is_imaginary()
    }

    /// `d_i ≡ p(i) (mod 2)` for every index.
    pub fn is_bar_consistent(&self) -> bool {
        (0..self.rank()).all(|i| (self.d[i] - self.parity[i] as i64).rem_euclid(2) == 0)
    }

    /// Explicit level bound of index `i`: 1 for real indices, the datum's bound
    /// (if any) for imaginary ones.
    pub fn level_bound(&self, i: usize) -> Option<u32> {
        if self.is_real(i) {
            Some(1)
        } else {
            self.bounds[i]
        }
    }

    /// True if `(i, l)` names a generator.
    pub fn is_letter(&self, i: usize, l: u32) -> bool {
        i < self.rank() && l >= 1 && self.level_bound(i).is_none_or(|b| l <= b)
    }

    /// `(alpha_i, alpha_j) = d_i a_ij`.
    pub fn form_roots(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    /// `(beta, gamma)` on the root lattice.
    pub fn form_root_lattice(&self, beta: &RootWeight, gamma: &RootWeight) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if beta.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += beta.0[i] * gamma.0[j] * self.form_roots(i, j);
            }
        }
        s
    }

    /// `(alpha_i, beta)` for a simple root against a lattice element.
    pub fn form_simple(&self, i: usize, beta: &RootWeight) -> i64 {
        (0..self.rank()).map(|j| beta.0[j] * self.form_roots(i, j)).sum()
    }

    /// `<h_j, lambda>` for `lambda = anchor - offset`.
    pub fn coroot(&self, lambda: &Weight, j: usize) -> i64 {
        lambda.anchor[j] - (0..self.rank()).map(|i| lambda.offset.0[i] * self.a[j][i]).sum::<i64>()
    }

    pub fn coroots(&self, lambda: &Weight) -> Vec<i64> {
        (0..self.rank()).map(|j| self.coroot(lambda, j)).collect()
    }

    /// `(lambda, beta) = sum_i beta_i d_i <h_i, lambda>`.
    pub fn form_weight_root(&self, lambda: &Weight, beta: &RootWeight) -> i64 {
        (0..self.rank())
            .map(|i| beta.0[i] * self.d[i] * self.coroot(lambda, i))
            .sum()
    }

    /// The weight with `<h_i, rho> = a_ii / 2`.
    pub fn rho(&self) -> Weight {
        Weight::from_coroots((0..self.rank()).map(|i| self.a[i][i] / 2).collect())
    }

    /// Dominance: `<h_i, lambda> >= 0` everywhere, even at odd real indices.
    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        (0..self.rank()).all(|i| {
            let c = self.coroot(lambda, i);
            c >= 0 && !(self.is_real(i) && self.parity[i] == 1 && c % 2 != 0)
        })
    }

    /// The simple reflection `r_i(lambda) = lambda - <h_i, lambda> alpha_i`.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Result<Weight> {
        if i >= self.rank() {
            return Err(Error::UnknownIndex(i));
        }
        if !self.is_real(i) {
            return Err(Error::NotReal(i));
        }
        let c = self.coroot(lambda, i);
        Ok(Weight { anchor: lambda.anchor.clone(), offset: lambda.offset.plus_simple(i, c) })
    }

    /// Reflection of a root-lattice element.
    pub fn reflect_root(&self, i: usize, beta: &RootWeight) -> RootWeight {
        let c: i64 = (0..self.rank()).map(|j| beta.0[j] * self.a[i][j]).sum();
        beta.plus_simple(i, -c)
    }

    /// Breadth-first enumeration of the orbit points `w(lambda)` with
    /// `lambda - w(lambda)` in the positive cone of height at most `depth`.
    pub fn weyl_orbit_bfs(&self, lambda: &Weight, depth: i64) -> Vec<OrbitPoint> {
        let real: Vec<usize> = (0..self.rank()).filter(|&i| self.is_real(i)).collect();
        let base = lambda.offset.clone();
        let mut seen: HashSet<RootWeight> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(base.clone());
        queue.push_back(OrbitPoint { weight: lambda.clone(), sign: 1, length: 0, word: Vec::new() });
        while let Some(pt) = queue.pop_front() {
            for &i in &real {
                let next = self.reflect(i, &pt.weight).expect("real index");
                let rel = &next.offset - &base;
                if !rel.is_nonnegative() || rel.height() > depth {
                    continue;
                }
                if seen.insert(next.offset.clone()) {
                    let mut word = pt.word.clone();
                    word.push(i);
                    queue.push_back(OrbitPoint { weight: next, sign: -pt.sign, length: pt.length + 1, word });
                }
            }
            out.push(pt);
        }
        out
    }
}
