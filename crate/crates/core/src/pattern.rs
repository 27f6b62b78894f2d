//! Support patterns of matrix Laurent series and their Toeplitz expansions.
//!
//! Rows and columns are kept as two separate label lists, so a row and a
//! column may share a label without ever being confused. Everything inside
//! the crate addresses them by position in the declared order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_rank::{FieldMatrix, FieldSpec};

/// Support of a single coefficient `H_i`, as `(row, col)` positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SupportMatrix {
    nonzeros: BTreeSet<(usize, usize)>,
}

impl SupportMatrix {
    pub fn nonzeros(&self) -> &BTreeSet<(usize, usize)> {
        &self.nonzeros
    }

    pub fn len(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nonzeros.is_empty()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.nonzeros.contains(&(row, col))
    }
}

/// Finite truncation of a formal Laurent series pattern `H = (H_i)`.
///
/// Coefficients are sparse in `i`: an absent index is a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPattern {
    rows: Vec<String>,
    cols: Vec<String>,
    coeffs: BTreeMap<usize, SupportMatrix>,
}

impl LaurentPattern {
    /// Builds a pattern from labelled coefficients, validating every reference.
    pub fn new<I, N>(rows: Vec<String>, cols: Vec<String>, coefficients: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, N)>,
        N: IntoIterator<Item = (String, String)>,
    {
        let row_pos = positions(&rows).map_err(Error::DuplicateRow)?;
        let col_pos = positions(&cols).map_err(Error::DuplicateCol)?;
        let mut coeffs = BTreeMap::new();
        for (index, nonzeros) in coefficients {
            let mut support = SupportMatrix::default();
            for (r, c) in nonzeros {
                let ri = *row_pos.get(r.as_str()).ok_or_else(|| Error::UnknownRow {
                    index,
                    label: r.clone(),
                })?;
                let ci = *col_pos.get(c.as_str()).ok_or_else(|| Error::UnknownCol {
                    index,
                    label: c.clone(),
                })?;
                if !support.nonzeros.insert((ri, ci)) {
                    return Err(Error::DuplicateNonzero { index, row: r, col: c });
                }
            }
            if coeffs.insert(index, support).is_some() {
                return Err(Error::DuplicateIndex(index));
            }
        }
        Ok(Self { rows, cols, coeffs })
    }

    /// Builds a pattern on positional rows/cols labelled `r1..`, `c1..`.
    ///
    /// Duplicate positions inside a coefficient are merged rather than rejected.
    pub fn from_positions<I, N>(nrows: usize, ncols: usize, coefficients: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, N)>,
        N: IntoIterator<Item = (usize, usize)>,
    {
        let rows: Vec<String> = (1..=nrows).map(|i| format!("r{i}")).collect();
        let cols: Vec<String> = (1..=ncols).map(|j| format!("c{j}")).collect();
        let mut coeffs = BTreeMap::new();
        for (index, nonzeros) in coefficients {
            let mut support = SupportMatrix::default();
            for (r, c) in nonzeros {
                if r >= nrows {
                    return Err(Error::UnknownRow { index, label: format!("#{r}") });
                }
                if c >= ncols {
                    return Err(Error::UnknownCol { index, label: format!("#{c}") });
                }
                support.nonzeros.insert((r, c));
            }
            if coeffs.insert(index, support).is_some() {
                return Err(Error::DuplicateIndex(index));
            }
        }
        Ok(Self { rows, cols, coeffs })
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Coefficients in increasing index order.
    pub fn coefficients(&self) -> impl Iterator<Item = (usize, &SupportMatrix)> {
        self.coeffs.iter().map(|(&i, s)| (i, s))
    }

    pub fn coefficient(&self, index: usize) -> Option<&SupportMatrix> {
        self.coeffs.get(&index)
    }

    /// Indices of supplied coefficients that cannot appear in `T_k(H)`.
    ///
    /// They still shape `G(H)` and its weights.
    pub fn coefficients_beyond(&self, k: usize) -> Vec<usize> {
        self.coeffs.range(k..).map(|(&i, _)| i).collect()
    }

    pub fn is_structurally_nonzero(&self, index: usize, row: usize, col: usize) -> bool {
        self.coeffs.get(&index).is_some_and(|s| s.contains(row, col))
    }
}

fn positions(labels: &[String]) -> std::result::Result<HashMap<&str, usize>, String> {
    let mut map = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.as_str(), i).is_some() {
            return Err(l.clone());
        }
    }
    Ok(map)
}

/// One free parameter: the structural nonzero `(H_index)_{row,col}`.
///
/// Ordered lexicographically by `(index, row, col)` with rows and columns
/// compared by declared position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParamTriple {
    pub index: usize,
    pub row: usize,
    pub col: usize,
}

impl ParamTriple {
    pub fn new(index: usize, row: usize, col: usize) -> Self {
        Self { index, row, col }
    }
}

impl fmt::Display for ParamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, #{}, #{})", self.index, self.row, self.col)
    }
}

/// The parameter vector `p ∈ F^q` of `(H_{k-1}, ..., H_0)`: one distinct
/// parameter per structural nonzero, none repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterIndex {
    k: usize,
    triples: Vec<ParamTriple>,
}

impl ParameterIndex {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[ParamTriple] {
        &self.triples
    }

    pub fn contains(&self, t: &ParamTriple) -> bool {
        self.triples.binary_search(t).is_ok()
    }
}

pub fn index_parameters(h: &LaurentPattern, k: usize) -> Result<ParameterIndex> {
    if k == 0 {
        return Err(Error::ZeroBlocks);
    }
    let triples = h
        .coeffs
        .range(..k)
        .flat_map(|(&i, s)| s.nonzeros.iter().map(move |&(r, c)| ParamTriple::new(i, r, c)))
        .collect();
    Ok(ParameterIndex { k, triples })
}

/// A vertex of the expanded pattern: block level in `1..=k` and a position
/// inside `R` (for rows) or `C` (for columns).
pub type BlockVertex = (usize, usize);

/// Support of `T_k(H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzPattern {
    k: usize,
    nrows: usize,
    ncols: usize,
    nonzeros: BTreeSet<(BlockVertex, BlockVertex)>,
}

impl ToeplitzPattern {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Rows of one block, i.e. `|R|`.
    pub fn block_rows(&self) -> usize {
        self.nrows
    }

    pub fn block_cols(&self) -> usize {
        self.ncols
    }

    pub fn total_rows(&self) -> usize {
        self.k * self.nrows
    }

    pub fn total_cols(&self) -> usize {
        self.k * self.ncols
    }

    pub fn nonzeros(&self) -> &BTreeSet<(BlockVertex, BlockVertex)> {
        &self.nonzeros
    }

    pub fn contains(&self, row: BlockVertex, col: BlockVertex) -> bool {
        self.nonzeros.contains(&(row, col))
    }

    /// Flat row position of `(level, r)`, levels starting at 1.
    pub fn flat_row(&self, (level, r): BlockVertex) -> usize {
        (level - 1) * self.nrows + r
    }

    pub fn flat_col(&self, (level, c): BlockVertex) -> usize {
        (level - 1) * self.ncols + c
    }
}

pub fn expand_toeplitz(h: &LaurentPattern, k: usize) -> Result<ToeplitzPattern> {
    if k == 0 {
        return Err(Error::ZeroBlocks);
    }
    let mut nonzeros = BTreeSet::new();
    for (&d, support) in h.coeffs.range(..k) {
        for j in 1..=k - d {
            let i = j + d;
            for &(r, c) in &support.nonzeros {
                nonzeros.insert(((i, r), (j, c)));
            }
        }
    }
    Ok(ToeplitzPattern {
        k,
        nrows: h.nrows(),
        ncols: h.ncols(),
        nonzeros,
    })
}

/// Materializes `T_k(H)(p)`.
///
/// Each parameter value is copied into every block `(i, j)` with
/// `i - j` equal to its coefficient index. Zero values are dropped, so the
/// result's support can be smaller than [`expand_toeplitz`].
pub fn evaluate(
    h: &LaurentPattern,
    k: usize,
    p: &BTreeMap<ParamTriple, BigRational>,
    field: FieldSpec,
) -> Result<FieldMatrix> {
    let index = index_parameters(h, k)?;
    let missing: Vec<ParamTriple> = index
        .triples
        .iter()
        .filter(|t| !p.contains_key(t))
        .copied()
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingParameters(missing));
    }
    let (n, m) = (h.nrows(), h.ncols());
    let mut out = FieldMatrix::zeros(field, k * n, k * m);
    for t in &index.triples {
        let Some(value) = field.element(&p[t])? else {
            continue;
        };
        for j in 1..=k - t.index {
            let i = j + t.index;
            out.set((i - 1) * n + t.row, (j - 1) * m + t.col, value.clone());
        }
    }
    Ok(out)
}
