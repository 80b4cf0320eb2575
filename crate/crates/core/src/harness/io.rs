//! JSON schemas for matrices, bases, maps and super-maps.
//!
//! * matrix: `{"rows", "cols", "entries": [[re, im], ...]}`, row-major.
//! * basis: `{"dim", "label", "elements": [matrix, ...]}` in ordinal order.
//! * map: `{"in_dim", "out_dim", "natural_matrix"}`, or `{"kraus": [..]}`,
//!   or `{"images": [..]}` listing `Φ(e_ij)` in ordinal order.
//! * super-map: `{"dims": [n1, n2, n3, n4], "coeff_matrix": matrix}`.
//! * super-map basis: `{"n1", "n2", "label"?, "elements": [map, ...]}`.
//!
//! Floats are written with shortest round-trip formatting, so a
//! write/read cycle is bit-exact for finite values.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::basis::OperatorBasis;
use crate::channel::LinearMap;
use crate::error::Error;
use crate::matrix::{ComplexMatrix, C64};
use crate::supermap::{SuperMap, SuperMapBasis};

/// Failure to turn a file into a domain value.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    /// Unreadable file or malformed JSON.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed JSON describing an inconsistent object.
    #[error("invariant violation: {0}")]
    Invariant(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self, Error> {
        let data = m.entries.iter().map(|&[re, im]| C64::new(re, im)).collect();
        ComplexMatrix::new(m.rows, m.cols, data)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub dim: usize,
    #[serde(default)]
    pub label: String,
    pub elements: Vec<MatrixJson>,
}

impl From<&OperatorBasis> for BasisJson {
    fn from(b: &OperatorBasis) -> Self {
        Self {
            dim: b.dim(),
            label: b.label().to_string(),
            elements: b.elements().iter().map(MatrixJson::from).collect(),
        }
    }
}

impl TryFrom<BasisJson> for OperatorBasis {
    type Error = Error;

    fn try_from(b: BasisJson) -> Result<Self, Error> {
        let elements = b
            .elements
            .into_iter()
            .map(ComplexMatrix::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        OperatorBasis::new(b.dim, elements, b.label)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapJson {
    Natural {
        in_dim: usize,
        out_dim: usize,
        natural_matrix: MatrixJson,
    },
    Kraus {
        kraus: Vec<MatrixJson>,
    },
    Images {
        images: Vec<MatrixJson>,
    },
}

impl From<&LinearMap> for MapJson {
    fn from(m: &LinearMap) -> Self {
        MapJson::Natural {
            in_dim: m.in_dim(),
            out_dim: m.out_dim(),
            natural_matrix: m.natural().into(),
        }
    }
}

impl TryFrom<MapJson> for LinearMap {
    type Error = Error;

    fn try_from(m: MapJson) -> Result<Self, Error> {
        let matrices = |list: Vec<MatrixJson>| {
            list.into_iter()
                .map(ComplexMatrix::try_from)
                .collect::<Result<Vec<_>, _>>()
        };
        match m {
            MapJson::Natural {
                in_dim,
                out_dim,
                natural_matrix,
            } => LinearMap::from_natural(in_dim, out_dim, natural_matrix.try_into()?),
            MapJson::Kraus { kraus } => LinearMap::from_kraus(&matrices(kraus)?),
            MapJson::Images { images } => {
                let images = matrices(images)?;
                let n = (images.len() as f64).sqrt().round() as usize;
                LinearMap::from_action(n, &images)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperMapJson {
    pub dims: [usize; 4],
    pub coeff_matrix: MatrixJson,
}

impl From<&SuperMap> for SuperMapJson {
    fn from(s: &SuperMap) -> Self {
        Self {
            dims: s.dims(),
            coeff_matrix: s.coeff().into(),
        }
    }
}

impl TryFrom<SuperMapJson> for SuperMap {
    type Error = Error;

    fn try_from(s: SuperMapJson) -> Result<Self, Error> {
        SuperMap::new(s.dims, s.coeff_matrix.try_into()?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperMapBasisJson {
    pub n1: usize,
    pub n2: usize,
    #[serde(default)]
    pub label: String,
    pub elements: Vec<MapJson>,
}

impl From<&SuperMapBasis> for SuperMapBasisJson {
    fn from(b: &SuperMapBasis) -> Self {
        let (n1, n2) = b.dims();
        Self {
            n1,
            n2,
            label: b.label().to_string(),
            elements: b.elements().iter().map(MapJson::from).collect(),
        }
    }
}

impl TryFrom<SuperMapBasisJson> for SuperMapBasis {
    type Error = Error;

    fn try_from(b: SuperMapBasisJson) -> Result<Self, Error> {
        let elements = b
            .elements
            .into_iter()
            .map(LinearMap::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        SuperMapBasis::new(b.n1, b.n2, elements, b.label)
    }
}

fn read_json<J: DeserializeOwned>(path: &Path) -> Result<J, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| LoadError::Parse(format!("{}: {e}", path.display())))
}

/// Reads a JSON file of schema `J` and converts it to `T`.
pub fn load<J, T>(path: impl AsRef<Path>) -> Result<T, LoadError>
where
    J: DeserializeOwned,
    T: TryFrom<J, Error = Error>,
{
    Ok(T::try_from(read_json::<J>(path.as_ref())?)?)
}

pub fn load_basis(path: impl AsRef<Path>) -> Result<OperatorBasis, LoadError> {
    load::<BasisJson, _>(path)
}

pub fn load_map(path: impl AsRef<Path>) -> Result<LinearMap, LoadError> {
    load::<MapJson, _>(path)
}

pub fn load_supermap(path: impl AsRef<Path>) -> Result<SuperMap, LoadError> {
    load::<SuperMapJson, _>(path)
}

pub fn load_supermap_basis(path: impl AsRef<Path>) -> Result<SuperMapBasis, LoadError> {
    load::<SuperMapBasisJson, _>(path)
}

/// Pretty-printed JSON of any schema type.
pub fn to_json_string<J: Serialize>(value: &J) -> String {
    serde_json::to_string_pretty(value).expect("schema types serialize")
}

pub fn save<J: Serialize>(value: &J, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, to_json_string(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn awkward_matrix() -> ComplexMatrix {
        ComplexMatrix::from_fn(2, 3, |i, j| {
            C64::new(0.1 + 1.0 / (3.0 + i as f64), (j as f64 + 0.7).sqrt() * 1e-300)
        })
    }

    #[test]
    fn matrix_round_trip_is_bit_exact() {
        let m = awkward_matrix();
        let text = serde_json::to_string(&MatrixJson::from(&m)).unwrap();
        let back: ComplexMatrix = serde_json::from_str::<MatrixJson>(&text).unwrap().try_into().unwrap();
        for (a, b) in m.data().iter().zip(back.data()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn bad_entry_count_is_an_invariant_error() {
        let json = MatrixJson {
            rows: 2,
            cols: 2,
            entries: vec![[1.0, 0.0]; 3],
        };
        assert!(ComplexMatrix::try_from(json).is_err());
    }

    #[test]
    fn map_variants() {
        let kraus = r#"{"kraus": [{"rows": 1, "cols": 1, "entries": [[2.0, 0.0]]}]}"#;
        let m: LinearMap = serde_json::from_str::<MapJson>(kraus).unwrap().try_into().unwrap();
        assert_eq!(m.natural()[(0, 0)], C64::new(4.0, 0.0));

        let images = MapJson::Images {
            images: (0..4).map(|a| MatrixJson::from(&ComplexMatrix::unit(2, 2, a % 2, a / 2))).collect(),
        };
        let t: LinearMap = images.try_into().unwrap();
        assert_eq!(t, LinearMap::transpose_map(2));

        let natural = MapJson::from(&t);
        assert_eq!(LinearMap::try_from(natural).unwrap(), t);
    }

    #[test]
    fn basis_and_supermap_round_trip() {
        let b = OperatorBasis::pauli();
        assert_eq!(OperatorBasis::try_from(BasisJson::from(&b)).unwrap(), b);
        let s = SuperMap::identity(1, 2);
        assert_eq!(SuperMap::try_from(SuperMapJson::from(&s)).unwrap(), s);
        let sb = SuperMapBasis::canonical(1, 2);
        assert_eq!(SuperMapBasis::try_from(SuperMapBasisJson::from(&sb)).unwrap(), sb);
    }

    #[test]
    fn load_reports_parse_and_invariant_errors() {
        let dir = tempfile::tempdir().unwrap();
        let bad_json = dir.path().join("bad.json");
        std::fs::write(&bad_json, "{not json").unwrap();
        assert!(matches!(load_basis(&bad_json), Err(LoadError::Parse(_))));
        assert!(matches!(load_basis(dir.path().join("missing.json")), Err(LoadError::Parse(_))));

        let dependent = BasisJson {
            dim: 2,
            label: "dependent".into(),
            elements: vec![MatrixJson::from(&ComplexMatrix::identity(2)); 4],
        };
        let path = dir.path().join("dependent.json");
        save(&dependent, &path).unwrap();
        assert!(matches!(load_basis(&path), Err(LoadError::Invariant(_))));
    }
}
