//! JSON file formats for algebras, modules and objects of the derived category.
//!
//! Rationals are written as `"p/q"` strings (plain integers are accepted on
//! input).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::derived::Cx;
use crate::linalg::{Rat, RatMatrix};
use crate::modules::{ModuleError, Rep, RepMap};
use crate::path_algebra::{AlgebraError, Quiver, Relation};
use crate::path_algebra::{Arrow, PathAlgebra};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Algebra {
        path: String,
        #[source]
        source: AlgebraError,
    },
    #[error("{path}: {source}")]
    Module {
        path: String,
        #[source]
        source: ModuleError,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl FormatError {
    fn json(path: &str, e: serde_json::Error) -> Self {
        FormatError::Json {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coef: Rat,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: usize,
    pub arrows: Vec<ArrowEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
}

impl AlgebraFile {
    pub fn parse(path: &str, text: &str) -> Result<AlgebraFile, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::json(path, e))
    }

    pub fn build(&self, path: &str) -> Result<PathAlgebra, FormatError> {
        let quiver = Quiver {
            vertex_count: self.vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.source,
                    target: a.target,
                })
                .collect(),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r.iter().map(|t| (t.coef.clone(), t.path.clone())).collect(),
            })
            .collect();
        PathAlgebra::build(quiver, relations).map_err(|source| FormatError::Algebra {
            path: path.to_string(),
            source,
        })
    }

    pub fn from_algebra(alg: &PathAlgebra, name: Option<String>) -> AlgebraFile {
        AlgebraFile {
            name,
            vertices: alg.vertex_count(),
            arrows: alg
                .quiver()
                .arrows
                .iter()
                .map(|a| ArrowEntry {
                    name: a.name.clone(),
                    source: a.source,
                    target: a.target,
                })
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| RelationTerm {
                            coef: c.clone(),
                            path: p.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Reads and validates an algebra description.
pub fn read_algebra(path: &str) -> Result<PathAlgebra, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_string(),
        source,
    })?;
    AlgebraFile::parse(path, &text)?.build(path)
}

fn matrix_from_rows(rows: &[Vec<Rat>], shape: (usize, usize)) -> Option<RatMatrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return None;
    }
    Some(RatMatrix::from_rows(shape.1, rows.to_vec()))
}

fn matrix_to_rows(m: &RatMatrix) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// `{"dims": [..], "arrows": {"a": [[...]]}}`; arrows missing from the map
/// act by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<Rat>>>,
}

impl ModuleFile {
    pub fn build(&self, alg: &Arc<PathAlgebra>, path: &str) -> Result<Rep, FormatError> {
        let q = alg.quiver();
        if self.dims.len() != q.vertex_count {
            return Err(FormatError::Module {
                path: path.to_string(),
                source: ModuleError::DimCount {
                    expected: q.vertex_count,
                    got: self.dims.len(),
                },
            });
        }
        for name in self.arrows.keys() {
            if q.arrow_index(name).is_none() {
                return Err(FormatError::Module {
                    path: path.to_string(),
                    source: ModuleError::UnknownArrow(name.clone()),
                });
            }
        }
        let mut maps = Vec::new();
        for a in &q.arrows {
            let shape = (self.dims[a.source - 1], self.dims[a.target - 1]);
            let m = match self.arrows.get(&a.name) {
                None => RatMatrix::zeros(shape.0, shape.1),
                Some(rows) if shape.0 == 0 && rows.is_empty() => RatMatrix::zeros(0, shape.1),
                Some(rows) => matrix_from_rows(rows, shape).ok_or_else(|| FormatError::Module {
                    path: path.to_string(),
                    source: ModuleError::ArrowShape {
                        arrow: a.name.clone(),
                        rows: shape.0,
                        cols: shape.1,
                        got_rows: rows.len(),
                        got_cols: rows.first().map_or(0, Vec::len),
                    },
                })?,
            };
            maps.push(m);
        }
        Rep::new(alg, self.dims.clone(), maps).map_err(|source| FormatError::Module {
            path: path.to_string(),
            source,
        })
    }

    pub fn from_rep(m: &Rep) -> ModuleFile {
        let q = m.algebra().quiver();
        ModuleFile {
            dims: m.dims().to_vec(),
            arrows: q
                .arrows
                .iter()
                .enumerate()
                .map(|(ai, a)| (a.name.clone(), matrix_to_rows(m.arrow_map(ai))))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub degree: i64,
    pub module: ModuleFile,
}

/// Differential out of `degree`, one row-major block per vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferentialEntry {
    pub degree: i64,
    pub blocks: Vec<Vec<Vec<Rat>>>,
}

/// One object of the bounded derived category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ObjectEntry {
    Simple {
        vertex: usize,
        #[serde(default)]
        shift: i64,
    },
    Projective {
        vertex: usize,
        #[serde(default)]
        shift: i64,
    },
    Module {
        module: ModuleFile,
        #[serde(default)]
        shift: i64,
    },
    Complex {
        terms: Vec<TermEntry>,
        #[serde(default)]
        differentials: Vec<DifferentialEntry>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectsFile {
    pub objects: Vec<ObjectEntry>,
}

impl ObjectEntry {
    pub fn build(&self, alg: &Arc<PathAlgebra>, path: &str) -> Result<Cx, FormatError> {
        let check_vertex = |v: usize| {
            alg.check_vertex(v).map_err(|source| FormatError::Algebra {
                path: path.to_string(),
                source,
            })
        };
        Ok(match self {
            ObjectEntry::Simple { vertex, shift } => {
                check_vertex(*vertex)?;
                Cx::module(Rep::simple(alg, *vertex)).shift(*shift)
            }
            ObjectEntry::Projective { vertex, shift } => {
                check_vertex(*vertex)?;
                Cx::module(Rep::projective(alg, *vertex)).shift(*shift)
            }
            ObjectEntry::Module { module, shift } => {
                Cx::module(module.build(alg, path)?).shift(*shift)
            }
            ObjectEntry::Complex {
                terms,
                differentials,
            } => {
                let mut reps = BTreeMap::new();
                for t in terms {
                    if reps.insert(t.degree, t.module.build(alg, path)?).is_some() {
                        return Err(FormatError::Invalid {
                            path: path.to_string(),
                            message: format!("degree {} listed twice", t.degree),
                        });
                    }
                }
                let zero = Rep::zero(alg);
                let mut diffs = BTreeMap::new();
                for d in differentials {
                    let src = reps.get(&d.degree).unwrap_or(&zero);
                    let tgt = reps.get(&(d.degree + 1)).unwrap_or(&zero);
                    if d.blocks.len() != alg.vertex_count() {
                        return Err(FormatError::Invalid {
                            path: path.to_string(),
                            message: format!("differential {}: need one block per vertex", d.degree),
                        });
                    }
                    let mut blocks = Vec::new();
                    for (v, rows) in d.blocks.iter().enumerate() {
                        let shape = (tgt.dims()[v], src.dims()[v]);
                        let m = if shape.0 == 0 && rows.is_empty() {
                            RatMatrix::zeros(0, shape.1)
                        } else {
                            matrix_from_rows(rows, shape).ok_or_else(|| FormatError::Invalid {
                                path: path.to_string(),
                                message: format!(
                                    "differential {} vertex {}: expected {}x{} block",
                                    d.degree,
                                    v + 1,
                                    shape.0,
                                    shape.1
                                ),
                            })?
                        };
                        blocks.push(m);
                    }
                    let f = RepMap::new(src, tgt, blocks).map_err(|source| FormatError::Module {
                        path: path.to_string(),
                        source,
                    })?;
                    diffs.insert(d.degree, f);
                }
                Cx::from_parts(alg, reps, diffs).map_err(|message| FormatError::Invalid {
                    path: path.to_string(),
                    message,
                })?
            }
        })
    }
}

pub fn read_objects(path: &str, alg: &Arc<PathAlgebra>) -> Result<Vec<Cx>, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_string(),
        source,
    })?;
    let file: ObjectsFile = serde_json::from_str(&text).map_err(|e| FormatError::json(path, e))?;
    file.objects.iter().map(|o| o.build(alg, path)).collect()
}
