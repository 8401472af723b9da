//! File formats: self-describing JSON documents with a "schema" tag.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingroup::{self, FinGroup};
use crate::gmod::GModule;
use crate::intlat::{Int, IntMatrix};
use crate::resolve::{resolution_from_terms, FreeResolution};

/// Either a built-in group or an explicit multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GroupRef {
    Builtin {
        builtin: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        params: Vec<usize>,
    },
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
        generators: BTreeMap<String, usize>,
    },
}

impl GroupRef {
    pub fn builtin(name: &str, params: &[usize]) -> Self {
        GroupRef::Builtin { builtin: name.into(), params: params.to_vec() }
    }

    pub fn resolve(&self) -> Result<Arc<FinGroup>> {
        match self {
            GroupRef::Builtin { builtin, params } => Ok(Arc::new(fingroup::builtin(builtin, params)?)),
            GroupRef::Table { order, table, generators } => {
                if table.len() != *order {
                    return Err(Error::InvalidGroup("table size does not match order".into()));
                }
                let gens = generators.iter().map(|(k, v)| (k.clone(), *v)).collect();
                Ok(Arc::new(FinGroup::from_table("custom", table.clone(), gens)?))
            }
        }
    }

    /// Parses "klein", "m16", "modular16", "cyclic:4", "builtin:m16".
    pub fn parse_short(s: &str) -> Result<Self> {
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = if rest.is_empty() {
            vec![]
        } else {
            rest.split(',')
                .map(|p| {
                    let p = p.trim();
                    let p = p.split_once('=').map(|x| x.1).unwrap_or(p);
                    p.parse::<usize>().map_err(|_| Error::Parse(format!("bad group parameter {:?}", p)))
                })
                .collect::<Result<_>>()?
        };
        Ok(GroupRef::builtin(name, &params))
    }
}

pub fn matrix_to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|c| i64::try_from(c).unwrap_or(i64::MAX)).collect())
        .collect()
}

pub(crate) fn matrix_from_i64(rows: &[Vec<i64>], cols: usize) -> Result<IntMatrix> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("matrix rows must have length {}", cols)));
    }
    IntMatrix::from_rows_with_cols(
        rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect(),
        cols,
    )
}

/// Relations are listed one per entry (each a vector of length `generators`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default)]
    pub schema: Option<String>,
    pub group: GroupRef,
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    /// Matrix of each generator of the group (columns are images of module generators).
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ModuleFile {
    pub fn build(&self) -> Result<Arc<GModule>> {
        let group = self.group.resolve()?;
        self.build_over(&group)
    }

    pub fn build_over(&self, group: &Arc<FinGroup>) -> Result<Arc<GModule>> {
        let k = self.generators;
        let rel_cols: Vec<Vec<Int>> = self
            .relations
            .iter()
            .map(|r| {
                if r.len() != k {
                    Err(Error::Dimension("relation length".into()))
                } else {
                    Ok(r.iter().map(|&x| Int::from(x)).collect())
                }
            })
            .collect::<Result<_>>()?;
        let rel = IntMatrix::from_columns(k, &rel_cols);
        let mut acts = Vec::new();
        for (name, _) in group.generators() {
            let m = self
                .action
                .get(name)
                .ok_or_else(|| Error::Parse(format!("missing action of generator {}", name)))?;
            if m.len() != k {
                return Err(Error::Dimension(format!("action of {} must be {}x{}", name, k, k)));
            }
            acts.push(matrix_from_i64(m, k)?);
        }
        if let Some(extra) = self.action.keys().find(|n| group.generator_index(n).is_none()) {
            return Err(Error::Parse(format!("unknown group generator {}", extra)));
        }
        Ok(Arc::new(GModule::new(group, k, rel, &acts)?))
    }
}

/// A single group-ring term: coefficient and element word.
pub type Term = (i64, String);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResolutionFile {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    pub group: GroupRef,
    /// "left" (default) or "right"; right-convention entries act on cochains from the right.
    #[serde(default)]
    pub convention: Option<String>,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<Vec<Term>>>>,
}

impl ResolutionFile {
    pub fn build(&self) -> Result<FreeResolution> {
        let group = self.group.resolve()?;
        let right = match self.convention.as_deref() {
            None | Some("left") => false,
            Some("right") => true,
            Some(c) => return Err(Error::Parse(format!("unknown convention {:?}", c))),
        };
        let terms: Vec<Vec<Vec<Vec<(Int, String)>>>> = self
            .differentials
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| e.iter().map(|(c, w)| (Int::from(*c), w.clone())).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let label = self.name.clone().unwrap_or_else(|| "file".into());
        resolution_from_terms(&group, &self.ranks, &terms, right, &label)
    }

    /// Serializes in the left convention.
    pub fn from_resolution(res: &FreeResolution, group: GroupRef) -> Self {
        let g = res.group();
        let differentials = (1..=res.top_degree())
            .map(|n| {
                let d = res.differential(n);
                (0..d.rows())
                    .map(|i| {
                        (0..d.cols())
                            .map(|j| {
                                d.get(i, j)
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                                    .map(|(x, c)| (i64::try_from(c).unwrap_or(i64::MAX), g.element_name(x).to_string()))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ResolutionFile {
            schema: Some("resolution".into()),
            name: Some(res.label().to_string()),
            group,
            convention: Some("left".into()),
            ranks: res.ranks().to_vec(),
            differentials,
        }
    }
}

pub const M16_RESOLUTION_JSON: &str = include_str!("../data/m16_resolution.json");

pub fn bundled_m16_file() -> Result<ResolutionFile> {
    serde_json::from_str(M16_RESOLUTION_JSON).map_err(|e| Error::Dataset(e.to_string()))
}

/// The bundled complex for the modular group of order 16, through degree 5.
pub fn bundled_m16_resolution() -> Result<FreeResolution> {
    bundled_m16_file()?.build()
}
