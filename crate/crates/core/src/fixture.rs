//! JSON interchange documents: group fixtures and classification verdicts.
//!
//! Field elements are arrays of `degree` integers in `[0, ell)`, constant
//! term first; matrices are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::classify::Classification;
use crate::ffield::{field_make, Elem, FieldError, FieldSpec};
use crate::groupkit::{GroupError, MatrixGroup};
use crate::symplectic::{SqMatrix, Subspace, SymplecticError, SympSpace};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field: {0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Shape(String),
    #[error("form: {0}")]
    Symplectic(#[from] SymplecticError),
    #[error("group: {0}")]
    Group(#[from] GroupError),
}

pub type ElemDoc = Vec<u32>;
pub type MatrixDoc = Vec<Vec<ElemDoc>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub ell: u64,
    pub degree: u32,
    /// Defining polynomial, constant term first; must be the canonical one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GramDoc {
    Named(String),
    Matrix(MatrixDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFixture {
    pub field: FieldDoc,
    pub n: usize,
    pub gram: GramDoc,
    pub generators: Vec<MatrixDoc>,
    /// Free-form annotations, carried through unchanged.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

fn encode_matrix(field: &FieldSpec, n: usize, data: &[Elem]) -> MatrixDoc {
    data.chunks(n)
        .map(|row| row.iter().map(|&x| field.coeffs(x)).collect())
        .collect()
}

fn decode_matrix(field: &FieldSpec, n: usize, doc: &MatrixDoc, what: &str) -> Result<Vec<Elem>, FixtureError> {
    if doc.len() != n || doc.iter().any(|r| r.len() != n) {
        return Err(FixtureError::Shape(format!("{what} is not {n}x{n}")));
    }
    let mut out = Vec::with_capacity(n * n);
    for row in doc {
        for e in row {
            if e.len() != field.degree() as usize {
                return Err(FixtureError::Shape(format!("{what}: element {e:?} needs {} coefficients", field.degree())));
            }
            out.push(field.from_coeffs(e)?);
        }
    }
    Ok(out)
}

pub fn encode_vector(field: &FieldSpec, v: &[Elem]) -> Vec<ElemDoc> {
    v.iter().map(|&x| field.coeffs(x)).collect()
}

pub fn encode_subspace(s: &Subspace) -> Vec<Vec<ElemDoc>> {
    let field = s.space().field();
    s.basis().iter().map(|v| encode_vector(field, v)).collect()
}

impl GroupFixture {
    pub fn from_json(text: &str) -> Result<Self, FixtureError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }

    pub fn field_spec(&self) -> Result<FieldSpec, FixtureError> {
        let field = field_make(self.field.ell, self.field.degree)?;
        if let Some(m) = &self.field.modulus {
            if m.as_slice() != field.modulus() {
                return Err(FixtureError::Shape(format!(
                    "modulus {m:?} is not the canonical {:?}",
                    field.modulus()
                )));
            }
        }
        Ok(field)
    }

    pub fn space(&self) -> Result<SympSpace, FixtureError> {
        let field = self.field_spec()?;
        Ok(match &self.gram {
            GramDoc::Named(s) if s == "standard" => SympSpace::standard(&field, self.n)?,
            GramDoc::Named(s) => return Err(FixtureError::Shape(format!("unknown gram {s:?}"))),
            GramDoc::Matrix(m) => SympSpace::with_gram(&field, self.n, decode_matrix(&field, self.n, m, "gram")?)?,
        })
    }

    pub fn to_group(&self) -> Result<MatrixGroup, FixtureError> {
        let space = self.space()?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let data = decode_matrix(space.field(), self.n, m, &format!("generator {i}"))?;
                Ok(space.matrix(data)?)
            })
            .collect::<Result<Vec<SqMatrix>, FixtureError>>()?;
        Ok(MatrixGroup::new(&space, gens)?)
    }

    pub fn from_group(g: &MatrixGroup) -> Self {
        let space = g.space();
        let field = space.field();
        let n = space.dim();
        GroupFixture {
            field: FieldDoc {
                ell: field.ell() as u64,
                degree: field.degree(),
                modulus: (field.degree() > 1).then(|| field.modulus().to_vec()),
            },
            n,
            gram: if space.is_standard() {
                GramDoc::Named("standard".into())
            } else {
                GramDoc::Matrix(encode_matrix(field, n, space.gram()))
            },
            generators: g.generators().iter().map(|x| encode_matrix(field, n, x.data())).collect(),
            metadata: None,
        }
    }
}

/// Serialized form of a [`Classification`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum VerdictDoc {
    Reducible {
        witness: Vec<Vec<ElemDoc>>,
    },
    Induced {
        block_dim: usize,
        block_count: usize,
        blocks: Vec<Vec<Vec<ElemDoc>>>,
        action: Vec<Vec<usize>>,
    },
    Huge {
        subfield_degree: u32,
        transvection_subgroup_order: u64,
    },
}

impl From<&Classification> for VerdictDoc {
    fn from(c: &Classification) -> Self {
        match c {
            Classification::Reducible { witness } => VerdictDoc::Reducible {
                witness: encode_subspace(witness),
            },
            Classification::Induced {
                blocks,
                block_dim,
                block_count,
                action,
            } => VerdictDoc::Induced {
                block_dim: *block_dim,
                block_count: *block_count,
                blocks: blocks.iter().map(encode_subspace).collect(),
                action: action.clone(),
            },
            Classification::Huge {
                subfield_degree,
                transvection_subgroup_order,
            } => VerdictDoc::Huge {
                subfield_degree: *subfield_degree,
                transvection_subgroup_order: *transvection_subgroup_order,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, fixtures};
    use crate::groupkit::DEFAULT_CAP;

    #[test]
    fn round_trip_standard_and_custom_gram() {
        for g in [fixtures::sp2(5, 2), fixtures::induced_sp4(5), fixtures::reducible_sp4(7)] {
            let doc = GroupFixture::from_group(&g);
            let text = doc.to_json();
            let back = GroupFixture::from_json(&text).unwrap();
            assert_eq!(back, doc);
            let h = back.to_group().unwrap();
            assert_eq!(h.generators(), g.generators());
        }
    }

    #[test]
    fn encoding_is_constant_term_first() {
        let doc = GroupFixture::from_group(&fixtures::sp2(5, 2));
        assert_eq!(doc.field.modulus.as_deref().map(|m| m.len()), Some(3));
        // T_{e1}[1] = [[1, -1], [0, 1]]
        assert_eq!(doc.generators[0], vec![vec![vec![1, 0], vec![4, 0]], vec![vec![0, 0], vec![1, 0]]]);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(GroupFixture::from_json("{\"field\": "), Err(FixtureError::Json(_))));
        let mut doc = GroupFixture::from_group(&fixtures::sp2(5, 1));
        doc.generators[0].pop();
        assert!(matches!(doc.to_group(), Err(FixtureError::Shape(_))));
        let mut doc = GroupFixture::from_group(&fixtures::sp2(5, 1));
        doc.gram = GramDoc::Named("hermitian".into());
        assert!(doc.to_group().is_err());
        let mut doc = GroupFixture::from_group(&fixtures::sp2(5, 1));
        doc.generators[0][0][0] = vec![7];
        assert!(doc.to_group().is_err());
    }

    #[test]
    fn verdict_documents_are_tagged() {
        let v = classify(&fixtures::induced_sp4(5), DEFAULT_CAP).unwrap();
        let json = serde_json::to_value(VerdictDoc::from(&v)).unwrap();
        assert_eq!(json["case"], "induced");
        assert_eq!(json["block_count"], 2);
        let v = classify(&fixtures::sp2(5, 1), DEFAULT_CAP).unwrap();
        let json = serde_json::to_value(VerdictDoc::from(&v)).unwrap();
        assert_eq!(json["case"], "huge");
        assert_eq!(json["subfield_degree"], 1);
    }
}
