//! Decay spaces: a finite node set with a non-negative decay matrix.
//!
//! `f[p][q]` is the multiplicative signal loss from node `p` to node `q`.
//! Two interpretations share the same representation:
//!
//! * [`SpaceMode::NodeSpace`]: nodes are radios, the diagonal is zero and
//!   distinct nodes have positive decay.
//! * [`SpaceMode::LinkGain`]: row/column `i` is link `i` used as a pseudo-node,
//!   `f[w][v]` is the decay from the sender of `w` to the receiver of `v`, and
//!   the diagonal holds the (positive) own-link decays.

use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceMode {
    #[serde(rename = "node-space")]
    NodeSpace,
    #[serde(rename = "link-gain")]
    LinkGain,
}

/// A finite decay space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceFile", into = "SpaceFile")]
pub struct DecaySpace {
    mode: SpaceMode,
    n: usize,
    labels: Option<Vec<String>>,
    f: Vec<f64>,
}

/// On-disk JSON layout.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct SpaceFile {
    mode: SpaceMode,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    f: Vec<Vec<f64>>,
}

impl TryFrom<SpaceFile> for DecaySpace {
    type Error = Error;

    fn try_from(file: SpaceFile) -> Result<Self> {
        if file.f.len() != file.n {
            return Err(Error::Parse(format!(
                "declared n = {} but matrix has {} rows",
                file.n,
                file.f.len()
            )));
        }
        let mut space = DecaySpace::from_rows(file.mode, file.f)?;
        if let Some(labels) = file.labels {
            space = space.with_labels(labels)?;
        }
        Ok(space)
    }
}

impl From<DecaySpace> for SpaceFile {
    fn from(space: DecaySpace) -> Self {
        SpaceFile {
            mode: space.mode,
            n: space.n,
            f: space.rows(),
            labels: space.labels,
        }
    }
}

impl DecaySpace {
    /// Builds a space from matrix rows. Only the shape is checked here;
    /// axioms are checked by [`DecaySpace::validate`].
    pub fn from_rows(mode: SpaceMode, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut f = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            f.extend(r);
        }
        Ok(Self {
            mode,
            n,
            labels: None,
            f,
        })
    }

    /// Builds a space of `n` nodes from a decay function.
    pub fn from_fn(mode: SpaceMode, n: usize, mut decay: impl FnMut(usize, usize) -> f64) -> Self {
        let mut f = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                f.push(decay(p, q));
            }
        }
        Self {
            mode,
            n,
            labels: None,
            f,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Parse(format!(
                "{} labels given for {} nodes",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn mode(&self) -> SpaceMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Decay from `p` to `q`.
    #[inline]
    pub fn decay(&self, p: usize, q: usize) -> f64 {
        self.f[p * self.n + q]
    }

    /// Channel gain `1 / f(p, q)`.
    #[inline]
    pub fn gain(&self, p: usize, q: usize) -> f64 {
        1.0 / self.decay(p, q)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.f.chunks(self.n.max(1)).take(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|p| (p + 1..self.n).all(|q| self.decay(p, q) == self.decay(q, p)))
    }

    /// Off-diagonal decays in row-major order.
    pub fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).flat_map(move |p| {
            (0..self.n)
                .filter(move |&q| q != p)
                .map(move |q| self.decay(p, q))
        })
    }

    /// Checks the axioms for the space's mode and lists every violation.
    pub fn validate(&self) -> ValidationResult {
        let mut violations = Vec::new();
        for p in 0..self.n {
            for q in 0..self.n {
                let v = self.decay(p, q);
                let kind = if v.is_nan() || v == f64::INFINITY {
                    Some(ViolationKind::NonFinite)
                } else if v < 0.0 {
                    Some(ViolationKind::NonNegativity)
                } else {
                    match (self.mode, p == q) {
                        (SpaceMode::NodeSpace, true) if v != 0.0 => {
                            Some(ViolationKind::NonzeroDiagonal)
                        }
                        (SpaceMode::NodeSpace, false) if v == 0.0 => {
                            Some(ViolationKind::Indiscernibles)
                        }
                        (SpaceMode::LinkGain, true) if v == 0.0 => {
                            Some(ViolationKind::NonPositiveOwnDecay)
                        }
                        _ => None,
                    }
                };
                if let Some(kind) = kind {
                    violations.push(Violation {
                        kind,
                        p,
                        q,
                        value: v,
                    });
                }
            }
        }
        ValidationResult { violations }
    }

    /// Like [`DecaySpace::validate`] but turns violations into an error.
    pub fn ensure_valid(&self) -> Result<()> {
        let result = self.validate();
        if result.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidSpace(result.violations))
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Reads `n` rows of `n` comma-separated reals. The mode is node-space.
    pub fn from_csv_reader(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .enumerate()
                .map(|(col, cell)| {
                    cell.parse::<f64>().map_err(|e| {
                        Error::Parse(format!("row {}, column {}: {e}", line + 1, col + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(SpaceMode::NodeSpace, rows)
    }

    /// Loads a space from a `.json` or `.csv` file (decided by extension,
    /// JSON otherwise).
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let is_csv = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            Self::from_csv_reader(text.as_bytes())
        } else {
            Self::from_json_str(&text)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    NonNegativity,
    Indiscernibles,
    NonzeroDiagonal,
    NonPositiveOwnDecay,
    NonFinite,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NonNegativity => "non-negativity",
            ViolationKind::Indiscernibles => "indiscernibles",
            ViolationKind::NonzeroDiagonal => "nonzero diagonal",
            ViolationKind::NonPositiveOwnDecay => "non-positive own-link decay",
            ViolationKind::NonFinite => "non-finite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub p: usize,
    pub q: usize,
    pub value: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({}, {}): {}", self.kind, self.p, self.q, self.value)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationResult {
    pub violations: Vec<Violation>,
}

impl ValidationResult {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(rows: Vec<Vec<f64>>) -> DecaySpace {
        DecaySpace::from_rows(SpaceMode::NodeSpace, rows).unwrap()
    }

    #[test]
    fn positive_zero_diagonal_is_valid() {
        let s = space(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 3.0, 0.0],
        ]);
        assert!(s.validate().is_ok());
        assert!(s.is_symmetric());
    }

    #[test]
    fn zero_off_diagonal_breaks_indiscernibles() {
        let s = space(vec![
            vec![0.0, 0.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 3.0, 0.0],
        ]);
        let v = s.validate().violations;
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Indiscernibles);
        assert_eq!((v[0].p, v[0].q), (0, 1));
        assert!(!s.is_symmetric());
    }

    #[test]
    fn negative_entry_breaks_non_negativity() {
        let s = space(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![-1.0, 3.0, 0.0],
        ]);
        let v = s.validate().violations;
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::NonNegativity);
        assert_eq!((v[0].p, v[0].q), (2, 0));
        assert_eq!(v[0].kind.to_string(), "non-negativity");
    }

    #[test]
    fn nonzero_diagonal_is_reported_in_node_space_only() {
        let rows = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        let node = space(rows.clone());
        assert_eq!(
            node.validate().violations[0].kind,
            ViolationKind::NonzeroDiagonal
        );
        let link = DecaySpace::from_rows(SpaceMode::LinkGain, rows).unwrap();
        assert!(link.validate().is_ok());
    }

    #[test]
    fn link_gain_allows_zero_off_diagonal_but_not_zero_own_decay() {
        let link =
            DecaySpace::from_rows(SpaceMode::LinkGain, vec![vec![0.0, 0.0], vec![0.0, 1.0]])
                .unwrap();
        let v = link.validate().violations;
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::NonPositiveOwnDecay);
    }

    #[test]
    fn ragged_matrix_is_structural_error() {
        let err = DecaySpace::from_rows(SpaceMode::NodeSpace, vec![vec![0.0, 1.0], vec![1.0]])
            .unwrap_err();
        assert!(matches!(err, Error::NotSquare { row: 1, len: 1, n: 2 }));
    }

    #[test]
    fn json_layout() {
        let text = r#"{"mode":"node-space","n":2,"labels":["a","b"],"f":[[0,5],[5,0]]}"#;
        let s = DecaySpace::from_json_str(text).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.decay(0, 1), 5.0);
        assert_eq!(s.labels().unwrap()[1], "b");
        let back = DecaySpace::from_json_str(&s.to_json_string().unwrap()).unwrap();
        assert_eq!(back, s);

        let bad = r#"{"mode":"node-space","n":3,"f":[[0,5],[5,0]]}"#;
        assert!(DecaySpace::from_json_str(bad).is_err());
    }

    #[test]
    fn csv_rows() {
        let s = DecaySpace::from_csv_reader("0, 1, 4\n1, 0, 1\n4, 1, 0\n".as_bytes()).unwrap();
        assert_eq!(s.mode(), SpaceMode::NodeSpace);
        assert_eq!(s.decay(0, 2), 4.0);
        assert!(DecaySpace::from_csv_reader("0,1\n1,x\n".as_bytes()).is_err());
        assert!(matches!(
            DecaySpace::from_csv_reader("0,1,2\n1,0\n".as_bytes()),
            Err(Error::NotSquare { .. })
        ));
    }
}
