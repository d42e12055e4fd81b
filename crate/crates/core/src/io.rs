//! JSON interchange for the objects the command-line tools pass around:
//! algebras as {dim, unit, structure} records, functionals as
//! {source, target, matrix}, point configurations as {space, multiplicities}
//! with label-keyed multiplicities, and block matrices as
//! {p, q, ring, blocks}. Rationals travel as "p/q" strings throughout, and
//! Grassmann entries as term lists, both via their own serializers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{CommutativeAlgebra, Configuration, FiniteSpace, LinearMap};
use crate::grassmann::Grassmann;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::superlinalg::{SuperDims, SuperMatrix};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Invalid(msg.into())
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// An algebra as a plain multiplication table: `structure[i][j]` holds the
/// coordinates of e_i·e_j. The optional point labels mark a function algebra;
/// when present, the table must actually be the delta-function table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraRecord {
    pub dim: usize,
    pub unit: Vec<Rational>,
    pub structure: Vec<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
}

impl AlgebraRecord {
    pub fn from_algebra(algebra: &CommutativeAlgebra) -> AlgebraRecord {
        let dim = algebra.dim();
        let structure = (0..dim)
            .map(|i| (0..dim).map(|j| algebra.mul_basis(i, j)).collect())
            .collect();
        AlgebraRecord {
            dim,
            unit: algebra.unit_coords().to_vec(),
            structure,
            points: algebra.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_algebra(&self) -> Result<CommutativeAlgebra, IoError> {
        if self.unit.len() != self.dim {
            return Err(invalid(format!(
                "unit has {} entries for declared dimension {}",
                self.unit.len(),
                self.dim
            )));
        }
        if let Some(points) = &self.points {
            if points.len() != self.dim {
                return Err(invalid(format!(
                    "{} point labels for declared dimension {}",
                    points.len(),
                    self.dim
                )));
            }
            let space = FiniteSpace::new(points.clone()).map_err(|e| invalid(e.to_string()))?;
            let algebra = CommutativeAlgebra::function_algebra(&space);
            // The labels promise a function algebra; the table must agree.
            let declared =
                CommutativeAlgebra::from_table(self.unit.clone(), self.structure.clone())
                    .map_err(|e| invalid(e.to_string()))?;
            if !declared.is_function_form() {
                return Err(invalid(
                    "point labels given, but the table is not the delta-function table",
                ));
            }
            return Ok(algebra);
        }
        CommutativeAlgebra::from_table(self.unit.clone(), self.structure.clone())
            .map_err(|e| invalid(e.to_string()))
    }
}

pub fn parse_algebra(text: &str) -> Result<CommutativeAlgebra, IoError> {
    let record: AlgebraRecord =
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    record.to_algebra()
}

pub fn render_algebra(algebra: &CommutativeAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraRecord::from_algebra(algebra))
        .expect("algebra records serialize")
}

// ---------------------------------------------------------------------------
// Functionals and linear maps
// ---------------------------------------------------------------------------

/// Where a map starts or ends: the distinguished scalar algebra, a name that
/// must be resolved against an algebra provided out of band, or an inline
/// algebra record.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Label(String),
    Inline(AlgebraRecord),
}

impl AlgebraRef {
    /// Resolve against an optionally provided algebra (for example one loaded
    /// from a `--algebra` file). "scalar" always means the ground field.
    pub fn resolve(
        &self,
        provided: Option<&CommutativeAlgebra>,
    ) -> Result<CommutativeAlgebra, IoError> {
        match self {
            AlgebraRef::Label(s) if s == "scalar" => Ok(CommutativeAlgebra::ground()),
            AlgebraRef::Label(s) => provided.cloned().ok_or_else(|| {
                invalid(format!("reference \"{s}\" needs an algebra provided alongside"))
            }),
            AlgebraRef::Inline(record) => record.to_algebra(),
        }
    }
}

/// A linear map between algebras, row-major: `matrix[r]` is the image row for
/// target coordinate r.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionalRecord {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub matrix: Vec<Vec<Rational>>,
}

impl FunctionalRecord {
    pub fn functional(source: &CommutativeAlgebra, values: Vec<Rational>) -> FunctionalRecord {
        FunctionalRecord {
            source: AlgebraRef::Inline(AlgebraRecord::from_algebra(source)),
            target: AlgebraRef::Label("scalar".into()),
            matrix: vec![values],
        }
    }

    pub fn to_map(&self) -> Result<LinearMap, IoError> {
        if self.matrix.is_empty() {
            return Err(invalid("a map needs at least one matrix row"));
        }
        let cols = self.matrix[0].len();
        for row in &self.matrix {
            if row.len() != cols {
                return Err(invalid("matrix rows have unequal lengths"));
            }
        }
        Ok(LinearMap::from_rows(self.matrix.clone()))
    }

    /// The source algebra, preferring one provided out of band.
    pub fn source_algebra(
        &self,
        provided: Option<&CommutativeAlgebra>,
    ) -> Result<CommutativeAlgebra, IoError> {
        let algebra = match (provided, &self.source) {
            (Some(given), AlgebraRef::Label(_)) => given.clone(),
            (Some(given), AlgebraRef::Inline(_)) => given.clone(),
            (None, reference) => reference.resolve(None)?,
        };
        if algebra.dim() != self.matrix.first().map_or(0, Vec::len) {
            return Err(invalid(format!(
                "matrix has {} columns but the source algebra has dimension {}",
                self.matrix.first().map_or(0, Vec::len),
                algebra.dim()
            )));
        }
        Ok(algebra)
    }
}

pub fn parse_functional(text: &str) -> Result<FunctionalRecord, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

pub fn render_functional(record: &FunctionalRecord) -> String {
    serde_json::to_string_pretty(record).expect("functional records serialize")
}

// ---------------------------------------------------------------------------
// Point configurations
// ---------------------------------------------------------------------------

/// A configuration keyed by point label; points absent from the map carry
/// multiplicity zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigurationRecord {
    pub space: FiniteSpace,
    pub multiplicities: BTreeMap<String, i64>,
}

impl ConfigurationRecord {
    pub fn from_configuration(config: &Configuration) -> ConfigurationRecord {
        let multiplicities = config
            .space()
            .points()
            .iter()
            .cloned()
            .zip(config.multiplicities().iter().copied())
            .collect();
        ConfigurationRecord { space: config.space().clone(), multiplicities }
    }

    pub fn to_configuration(&self) -> Result<Configuration, IoError> {
        for label in self.multiplicities.keys() {
            if self.space.index_of(label).is_none() {
                return Err(invalid(format!("multiplicity for unknown point \"{label}\"")));
            }
        }
        let multiplicities = self
            .space
            .points()
            .iter()
            .map(|label| self.multiplicities.get(label).copied().unwrap_or(0))
            .collect();
        Configuration::new(self.space.clone(), multiplicities).map_err(|e| invalid(e.to_string()))
    }
}

pub fn parse_configuration(text: &str) -> Result<Configuration, IoError> {
    let record: ConfigurationRecord =
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    record.to_configuration()
}

pub fn render_configuration(config: &Configuration) -> String {
    serde_json::to_string_pretty(&ConfigurationRecord::from_configuration(config))
        .expect("configuration records serialize")
}

// ---------------------------------------------------------------------------
// Block matrices
// ---------------------------------------------------------------------------

/// A block matrix with its coefficient ring named explicitly: "rational", or
/// "grassmann:N" for the algebra on N anticommuting generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuperMatrixRecord {
    pub p: usize,
    pub q: usize,
    pub ring: String,
    pub blocks: SuperBlocks,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuperBlocks {
    pub a00: Vec<Vec<serde_json::Value>>,
    pub a01: Vec<Vec<serde_json::Value>>,
    pub a10: Vec<Vec<serde_json::Value>>,
    pub a11: Vec<Vec<serde_json::Value>>,
}

/// A loaded block matrix, over whichever ring the record declared.
#[derive(Clone, Debug)]
pub enum SuperMatrixValue {
    Rational(SuperMatrix<Rational>),
    Grassmann(SuperMatrix<Grassmann>),
}

fn block_matrix<R, F>(
    raw: &[Vec<serde_json::Value>],
    rows: usize,
    cols: usize,
    name: &str,
    parse: &F,
) -> Result<Matrix<R>, IoError>
where
    R: crate::scalar::Scalar,
    F: Fn(&serde_json::Value) -> Result<R, IoError>,
{
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return Err(invalid(format!("block {name} must be {rows}×{cols}")));
    }
    let mut entries = Vec::with_capacity(rows);
    for row in raw {
        let mut out = Vec::with_capacity(cols);
        for value in row {
            out.push(parse(value)?);
        }
        entries.push(out);
    }
    if rows == 0 || cols == 0 {
        return Ok(Matrix::from_fn(rows, cols, |_, _| unreachable!("empty block")));
    }
    Ok(Matrix::from_rows(entries))
}

fn assemble<R: crate::scalar::Scalar>(
    record: &SuperMatrixRecord,
    parse: impl Fn(&serde_json::Value) -> Result<R, IoError>,
) -> Result<SuperMatrix<R>, IoError> {
    let dims = SuperDims::new(record.p, record.q).map_err(|e| invalid(e.to_string()))?;
    let (p, q) = (record.p, record.q);
    let a00 = block_matrix(&record.blocks.a00, p, p, "a00", &parse)?;
    let a01 = block_matrix(&record.blocks.a01, p, q, "a01", &parse)?;
    let a10 = block_matrix(&record.blocks.a10, q, p, "a10", &parse)?;
    let a11 = block_matrix(&record.blocks.a11, q, q, "a11", &parse)?;
    SuperMatrix::from_blocks(dims, a00, a01, a10, a11).map_err(|e| invalid(e.to_string()))
}

pub fn parse_supermatrix(text: &str) -> Result<SuperMatrixValue, IoError> {
    let record: SuperMatrixRecord =
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    if record.ring == "rational" {
        let matrix = assemble::<Rational>(&record, |v| {
            serde_json::from_value(v.clone()).map_err(|e| IoError::Json(e.to_string()))
        })?;
        return Ok(SuperMatrixValue::Rational(matrix));
    }
    if let Some(count) = record.ring.strip_prefix("grassmann:") {
        let count: usize = count
            .parse()
            .map_err(|_| invalid(format!("bad generator count in ring \"{}\"", record.ring)))?;
        let matrix = assemble::<Grassmann>(&record, |v| {
            let g: Grassmann =
                serde_json::from_value(v.clone()).map_err(|e| IoError::Json(e.to_string()))?;
            g.with_generator_count(count).map_err(|e| invalid(e.to_string()))
        })?;
        return Ok(SuperMatrixValue::Grassmann(matrix));
    }
    Err(invalid(format!(
        "unknown ring \"{}\" (expected \"rational\" or \"grassmann:N\")",
        record.ring
    )))
}

fn render_blocks<R: crate::scalar::Scalar + Serialize>(
    matrix: &SuperMatrix<R>,
) -> Result<SuperBlocks, IoError> {
    let to_values = |block: Matrix<R>| -> Result<Vec<Vec<serde_json::Value>>, IoError> {
        (0..block.rows())
            .map(|r| {
                block
                    .row(r)
                    .iter()
                    .map(|e| serde_json::to_value(e).map_err(|err| IoError::Json(err.to_string())))
                    .collect()
            })
            .collect()
    };
    Ok(SuperBlocks {
        a00: to_values(matrix.block(0, 0))?,
        a01: to_values(matrix.block(0, 1))?,
        a10: to_values(matrix.block(1, 0))?,
        a11: to_values(matrix.block(1, 1))?,
    })
}

pub fn render_supermatrix(value: &SuperMatrixValue) -> String {
    let record = match value {
        SuperMatrixValue::Rational(m) => SuperMatrixRecord {
            p: m.dims().p,
            q: m.dims().q,
            ring: "rational".into(),
            blocks: render_blocks(m).expect("rational entries serialize"),
        },
        SuperMatrixValue::Grassmann(m) => {
            let count = m
                .matrix()
                .row(0)
                .first()
                .and_then(Grassmann::generator_count)
                .unwrap_or(0);
            SuperMatrixRecord {
                p: m.dims().p,
                q: m.dims().q,
                ring: format!("grassmann:{count}"),
                blocks: render_blocks(m).expect("grassmann entries serialize"),
            }
        }
    };
    serde_json::to_string_pretty(&record).expect("block matrix records serialize")
}
