//! JSON formats. Rationals are always strings `"p/q"` (or `"p"`).
//!
//! Polytope: `{"dim": n, "halfspaces": [{"normal": ["1","0"], "offset": "0"}, ...]}`
//! with inward normals and the `<normal, x> >= offset` convention.
//!
//! GKM class: `{"<vertex label>": {"<exponents, e.g. 2,0>": "<coeff>", ...}, ...}`
//! where vertex labels are vertex indices in decimal.
//!
//! Moment graph: `{"dim": n, "positions": [[..]], "edges": [[a, b]], "weights": [[..]]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    format_rational, parse_rational, LinearForm, Monomial, MultiPoly, RationalVec,
};
use crate::error::{Error, Result};
use crate::gkm::{GkmClass, MomentGraph};
use crate::polytope::{HalfSpace, Polytope};

pub mod rational_string {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::algebra::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}

pub mod rational_string_vec {
    use serde::{Serialize, Serializer};

    use crate::algebra::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        r.iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeJson {
            dim: p.dim(),
            halfspaces: p.halfspaces().to_vec(),
        }
    }

    pub fn build(self) -> Result<Polytope> {
        Polytope::from_halfspaces(self.dim, self.halfspaces)
    }
}

pub fn polytope_from_json(s: &str) -> Result<Polytope> {
    let raw: PolytopeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    raw.build()
}

pub fn polytope_to_json(p: &Polytope) -> String {
    serde_json::to_string_pretty(&PolytopeJson::from_polytope(p)).expect("serializable")
}

pub type ClassJson = BTreeMap<String, BTreeMap<String, String>>;

pub fn poly_to_json(p: &MultiPoly) -> BTreeMap<String, String> {
    p.terms()
        .map(|(m, c)| (m.to_exponent_string(), format_rational(c)))
        .collect()
}

pub fn poly_from_json(nvars: usize, raw: &BTreeMap<String, String>) -> Result<MultiPoly> {
    let terms = raw
        .iter()
        .map(|(m, c)| Ok((Monomial::parse_exponent_string(m)?, parse_rational(c)?)))
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(nvars, terms)
}

pub fn class_to_json(c: &GkmClass) -> ClassJson {
    c.components()
        .iter()
        .enumerate()
        .map(|(v, p)| (v.to_string(), poly_to_json(p)))
        .collect()
}

/// Reads a class for a graph with `nvertices` vertices in `nvars` variables.
/// Missing vertex labels mean a zero component.
pub fn class_from_json(nvars: usize, nvertices: usize, s: &str) -> Result<GkmClass> {
    let raw: ClassJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut comps = vec![MultiPoly::zero(nvars); nvertices];
    for (label, terms) in &raw {
        let v: usize = label
            .parse()
            .ok()
            .filter(|&v| v < nvertices)
            .ok_or_else(|| Error::Parse(format!("unknown vertex label {label:?}")))?;
        comps[v] = poly_from_json(nvars, terms)?;
    }
    Ok(GkmClass::new(comps))
}

#[derive(Deserialize)]
struct MomentGraphJson {
    dim: usize,
    positions: Vec<RationalVec>,
    edges: Vec<(usize, usize)>,
    weights: Vec<LinearForm>,
}

pub fn moment_graph_from_json(s: &str) -> Result<MomentGraph> {
    let raw: MomentGraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    MomentGraph::new(raw.dim, raw.positions, raw.edges, raw.weights)
}

pub fn moment_graph_to_json(g: &MomentGraph) -> String {
    serde_json::to_string_pretty(g).expect("serializable")
}
