//! JSON instance files.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "groupoid": {
//!     "objects": ["e1", "e2"],
//!     "morphisms": [{"name": "g", "src": "e1", "tgt": "e2"}, ...],
//!     "compose": [["g", "g^-1", "id:e2"], ...],
//!     "inverse": [["g", "g^-1"], ...]
//!   },
//!   "algebra": {"diagonal": 4},
//!   "action": {
//!     "id:e1": {"dom": [1, 1, 0, 0]},
//!     "g": {"dom": [0, 0, 1, 0], "map": [[0, 0, 0, 0], ...]}
//!   }
//! }
//! ```
//!
//! Identity arrows are implicit in the groupoid section. `map[r][c]` is the
//! coefficient of `b_r` in `α(b_c)`; identities may omit `map`, which then
//! defaults to multiplication by `1_e`. Scalars are integers or strings such
//! as `"3/4"`. A general algebra is given by `basis`, `structure` (where
//! `structure[i][j]` is the coefficient vector of `b_i b_j`) and `unit`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::groupoid::{Groupoid, GroupoidError};
use crate::linalg::{Field, LinalgError, Matrix, Scalar, Vector};
use crate::paction::{ActionError, PartialAction};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("scalar must be an integer or a string, found {0}")]
    ScalarType(String),
    #[error("no action data for morphism {0}")]
    MissingMorphism(String),
    #[error("action data for unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GroupoidSection {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismEntry>,
    #[serde(default)]
    pub compose: Vec<(String, String, String)>,
    #[serde(default)]
    pub inverse: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Vec<Vec<Vec<Value>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionEntry {
    pub dom: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub field: String,
    pub groupoid: GroupoidSection,
    pub algebra: AlgebraSection,
    pub action: std::collections::BTreeMap<String, ActionEntry>,
}

fn scalar(field: Field, v: &Value) -> Result<Scalar, InstanceError> {
    match v {
        Value::String(s) => Ok(field.parse_scalar(s)?),
        Value::Number(n) => Ok(field.parse_scalar(&n.to_string())?),
        other => Err(InstanceError::ScalarType(other.to_string())),
    }
}

fn vector(field: Field, vs: &[Value]) -> Result<Vector, InstanceError> {
    vs.iter().map(|v| scalar(field, v)).collect()
}

fn scalar_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn vector_json(v: &[Scalar]) -> Vec<Value> {
    v.iter().map(scalar_json).collect()
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile, InstanceError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn field(&self) -> Result<Field, InstanceError> {
        Ok(Field::parse(&self.field)?)
    }

    /// Same instance over another field.
    pub fn with_field(&self, field: Field) -> InstanceFile {
        InstanceFile { field: field.to_string(), ..self.clone() }
    }

    pub fn build_groupoid(&self) -> Result<Groupoid, InstanceError> {
        let g = &self.groupoid;
        let morphisms: Vec<(String, String, String)> =
            g.morphisms.iter().map(|m| (m.name.clone(), m.src.clone(), m.tgt.clone())).collect();
        Ok(Groupoid::from_tables(&g.objects, &morphisms, &g.compose, &g.inverse)?)
    }

    pub fn build_algebra(&self) -> Result<Algebra, InstanceError> {
        let field = self.field()?;
        let a = &self.algebra;
        if let Some(n) = a.diagonal {
            if a.structure.is_some() {
                return Err(InstanceError::Shape("give either diagonal or structure, not both".into()));
            }
            return Ok(match &a.basis {
                Some(names) if names.len() == n => Algebra::diagonal_named(field, names.clone()),
                Some(_) => return Err(InstanceError::Shape("basis names do not match the diagonal size".into())),
                None => Algebra::diagonal(field, n),
            });
        }
        let structure = a.structure.as_ref().ok_or_else(|| InstanceError::Shape("algebra needs diagonal or structure".into()))?;
        let dim = structure.len();
        let names = a.basis.clone().unwrap_or_else(|| (1..=dim).map(|i| format!("b{i}")).collect());
        let table = structure
            .iter()
            .map(|row| row.iter().map(|v| vector(field, v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = vector(field, a.unit.as_ref().ok_or_else(|| InstanceError::Shape("algebra needs a unit".into()))?)?;
        Ok(Algebra::new(field, names, table, unit)?)
    }

    /// Builds the action; shapes are checked, the axioms are not.
    pub fn build(&self) -> Result<PartialAction, InstanceError> {
        let field = self.field()?;
        let groupoid = self.build_groupoid()?;
        let algebra = self.build_algebra()?;
        let d = algebra.dim();
        for name in self.action.keys() {
            if groupoid.find_morphism(name).is_none() {
                return Err(InstanceError::UnknownMorphism(name.clone()));
            }
        }
        let mut dom = Vec::new();
        let mut maps = Vec::new();
        for g in groupoid.morphisms() {
            let name = groupoid.morphism_name(g);
            let entry = self.action.get(name).ok_or_else(|| InstanceError::MissingMorphism(name.to_string()))?;
            let e = vector(field, &entry.dom)?;
            if e.len() != d {
                return Err(InstanceError::Shape(format!("dom of {name} has length {}, expected {d}", e.len())));
            }
            let m = match &entry.map {
                Some(rows) => {
                    let rows = rows.iter().map(|r| vector(field, r)).collect::<Result<Vec<_>, _>>()?;
                    if rows.len() != d {
                        return Err(InstanceError::Shape(format!("map of {name} needs {d} rows")));
                    }
                    Matrix::from_rows(field, d, rows)?
                }
                None if groupoid.is_identity(g) => algebra.right_mul_matrix(&e),
                None => return Err(InstanceError::Shape(format!("map missing for {name}"))),
            };
            dom.push(e);
            maps.push(m);
        }
        Ok(PartialAction::new(groupoid, algebra, dom, maps)?)
    }

    /// Serialises an action, omitting maps on identities that equal the
    /// default.
    pub fn from_action(pa: &PartialAction) -> InstanceFile {
        let grp = pa.groupoid();
        let a = pa.algebra();
        let is_diag = *a == Algebra::diagonal_named(a.field(), a.basis_names().to_vec());
        let default_names = *a.basis_names() == *Algebra::diagonal(a.field(), a.dim()).basis_names();
        let algebra = if is_diag {
            AlgebraSection {
                diagonal: Some(a.dim()),
                basis: (!default_names).then(|| a.basis_names().to_vec()),
                structure: None,
                unit: None,
            }
        } else {
            AlgebraSection {
                diagonal: None,
                basis: Some(a.basis_names().to_vec()),
                structure: Some(a.structure().iter().map(|row| row.iter().map(|v| vector_json(v)).collect()).collect()),
                unit: Some(vector_json(a.unit())),
            }
        };
        let mut compose = Vec::new();
        let mut inverse = Vec::new();
        for g in grp.morphisms() {
            for h in grp.morphisms() {
                if grp.is_identity(g) || grp.is_identity(h) {
                    continue;
                }
                if let Some(gh) = grp.compose(g, h) {
                    compose.push((grp.morphism_name(g).into(), grp.morphism_name(h).into(), grp.morphism_name(gh).into()));
                }
            }
            if !grp.is_identity(g) {
                if let Some(gi) = grp.try_inverse(g) {
                    inverse.push((grp.morphism_name(g).into(), grp.morphism_name(gi).into()));
                }
            }
        }
        let groupoid = GroupoidSection {
            objects: grp.object_names().to_vec(),
            morphisms: grp
                .morphisms()
                .filter(|&g| !grp.is_identity(g))
                .map(|g| MorphismEntry {
                    name: grp.morphism_name(g).into(),
                    src: grp.object_name(grp.src(g)).into(),
                    tgt: grp.object_name(grp.tgt(g)).into(),
                })
                .collect(),
            compose,
            inverse,
        };
        let action = grp
            .morphisms()
            .map(|g| {
                let default = grp.is_identity(g) && *pa.map(g) == a.right_mul_matrix(pa.dom(g));
                let map = (!default).then(|| pa.map(g).row_vectors().iter().map(|r| vector_json(r)).collect());
                (grp.morphism_name(g).to_string(), ActionEntry { dom: vector_json(pa.dom(g)), map })
            })
            .collect();
        InstanceFile { field: pa.field().to_string(), groupoid, algebra, action }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}
