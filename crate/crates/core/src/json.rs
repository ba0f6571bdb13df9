//! JSON encodings. Rationals are `{"num": "...", "den": "..."}` with decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::Error;
use crate::generators::MonotoneMatrix;
use crate::graph::{Graph, Pair, Vertex};
use crate::metrize::{Pseudometric, WeightFunction, WitnessAlpha};
use crate::path::Path;
use crate::resume::Resume;
use crate::system::PathSystem;
use crate::triple::{PointedTriple, TripleSet};
use crate::vc::{SetSystem, SimplicialComplex};
use crate::Rational;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(#[from] Error),
    #[error("bad rational {0}")]
    BadRational(String),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        JsonError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// Reading from and writing to the JSON schemas used by the command-line tool.
pub trait Json: Sized {
    fn from_json(text: &str) -> Result<Self, JsonError>;
    fn to_json(&self) -> Value;
}

#[derive(Serialize, Deserialize)]
struct RationalJson {
    num: String,
    den: String,
}

pub fn rational_to_json(q: &Rational) -> Value {
    json!({"num": q.numer().to_string(), "den": q.denom().to_string()})
}

fn parse_rational(r: &RationalJson) -> Result<Rational, JsonError> {
    let bad = || JsonError::BadRational(format!("{}/{}", r.num, r.den));
    let num: BigInt = r.num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = r.den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `num/den`, or just `num` for integers.
pub fn rational_to_tsv(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl Json for Graph {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let g: GraphJson = serde_json::from_str(text)?;
        Ok(Graph::from_edges(g.n, g.edges.iter().map(|e| (e[0], e[1])))?)
    }

    fn to_json(&self) -> Value {
        let edges: Vec<[Vertex; 2]> = self.edges().iter().map(|e| [e.lo(), e.hi()]).collect();
        json!({"n": self.n(), "edges": edges})
    }
}

#[derive(Deserialize)]
struct PathJson {
    vertices: Vec<Vertex>,
}

#[derive(Deserialize)]
struct PathSystemJson {
    n: usize,
    paths: Vec<PathJson>,
}

impl Json for PathSystem {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let s: PathSystemJson = serde_json::from_str(text)?;
        let paths = s
            .paths
            .into_iter()
            .map(|p| Path::new(p.vertices))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PathSystem::from_paths(s.n, paths)?)
    }

    fn to_json(&self) -> Value {
        let paths: Vec<Value> = self.iter().map(|(_, p)| json!({"vertices": p.vertices()})).collect();
        json!({"n": self.n(), "paths": paths})
    }
}

#[derive(Deserialize)]
struct EntryJson {
    pair: [Vertex; 2],
    via: Vertex,
}

#[derive(Deserialize)]
struct ResumeJson {
    n: usize,
    entries: Vec<EntryJson>,
}

fn pair_of(p: [Vertex; 2], n: usize) -> Result<Pair, Error> {
    for v in p {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    Pair::try_new(p[0], p[1]).ok_or(Error::SelfLoop(p[0]))
}

impl Json for Resume {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let r: ResumeJson = serde_json::from_str(text)?;
        let mut out = Resume::new(r.n);
        for e in r.entries {
            out.insert(pair_of(e.pair, r.n)?, e.via)?;
        }
        Ok(out)
    }

    fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .iter()
            .map(|(p, z)| json!({"pair": [p.lo(), p.hi()], "via": z}))
            .collect();
        json!({"n": self.n(), "entries": entries})
    }
}

#[derive(Deserialize)]
struct TripleJson {
    pair: [Vertex; 2],
    point: Vertex,
}

#[derive(Deserialize)]
struct TripleSetJson {
    n: usize,
    /// Label of the first vertex in the file; 0 or 1 (the default).
    #[serde(default)]
    base: Option<usize>,
    triples: Vec<TripleJson>,
}

fn shift(v: Vertex, base: usize) -> Vertex {
    v + 1 - base
}

fn triple_of(t: &TripleJson, base: usize) -> Result<PointedTriple, Error> {
    PointedTriple::new(shift(t.pair[0], base), shift(t.pair[1], base), shift(t.point, base))
}

fn triple_to_json(t: &PointedTriple) -> Value {
    json!({"pair": [t.pair().lo(), t.pair().hi()], "point": t.point()})
}

fn read_base(base: Option<usize>) -> Result<usize, JsonError> {
    match base.unwrap_or(1) {
        b @ (0 | 1) => Ok(b),
        b => Err(JsonError::Syntax {
            line: 0,
            column: 0,
            message: format!("base must be 0 or 1, got {b}"),
        }),
    }
}

impl Json for TripleSet {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let s: TripleSetJson = serde_json::from_str(text)?;
        let base = read_base(s.base)?;
        let triples = s
            .triples
            .iter()
            .map(|t| triple_of(t, base))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TripleSet::from_triples(s.n, triples)?)
    }

    fn to_json(&self) -> Value {
        let triples: Vec<Value> = self.iter().map(triple_to_json).collect();
        json!({"n": self.n(), "triples": triples})
    }
}

#[derive(Deserialize)]
struct AlphaJson {
    triple: TripleJson,
    num: String,
    den: String,
}

#[derive(Deserialize)]
struct WitnessJson {
    n: usize,
    #[serde(default)]
    base: Option<usize>,
    alpha: Vec<AlphaJson>,
}

impl Json for WitnessAlpha {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let w: WitnessJson = serde_json::from_str(text)?;
        let base = read_base(w.base)?;
        let mut entries = Vec::new();
        for a in &w.alpha {
            let t = triple_of(&a.triple, base)?;
            if t.max_vertex() > w.n {
                return Err(Error::VertexOutOfRange {
                    vertex: t.max_vertex(),
                    n: w.n,
                }
                .into());
            }
            let q = parse_rational(&RationalJson {
                num: a.num.clone(),
                den: a.den.clone(),
            })?;
            entries.push((t, q));
        }
        Ok(WitnessAlpha::new(w.n, entries))
    }

    fn to_json(&self) -> Value {
        let alpha: Vec<Value> = self
            .iter()
            .map(|(t, q)| json!({"triple": triple_to_json(t), "num": q.numer().to_string(), "den": q.denom().to_string()}))
            .collect();
        json!({"n": self.n(), "alpha": alpha})
    }
}

#[derive(Deserialize)]
struct PseudometricJson {
    n: usize,
    d: Vec<Vec<RationalJson>>,
}

impl Json for Pseudometric {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let m: PseudometricJson = serde_json::from_str(text)?;
        if m.d.len() != m.n {
            return Err(Error::DimensionMismatch {
                expected: m.n,
                got: m.d.len(),
            }
            .into());
        }
        let rows =
            m.d.iter()
                .map(|row| row.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
        Ok(Pseudometric::from_matrix(&rows)?)
    }

    fn to_json(&self) -> Value {
        let d: Vec<Vec<Value>> = self
            .to_matrix()
            .iter()
            .map(|row| row.iter().map(rational_to_json).collect())
            .collect();
        json!({"n": self.n(), "d": d})
    }
}

#[derive(Deserialize)]
struct WeightedEdgeJson {
    edge: [Vertex; 2],
    weight: RationalJson,
}

#[derive(Deserialize)]
struct WeightsJson {
    n: usize,
    edges: Vec<WeightedEdgeJson>,
}

impl Json for WeightFunction {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let w: WeightsJson = serde_json::from_str(text)?;
        let g = Graph::from_edges(w.n, w.edges.iter().map(|e| (e.edge[0], e.edge[1])))?;
        let mut weights = BTreeMap::new();
        for e in &w.edges {
            weights.insert(Pair::new(e.edge[0], e.edge[1]), parse_rational(&e.weight)?);
        }
        Ok(WeightFunction::new(g, weights)?)
    }

    fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .iter()
            .map(|(e, q)| json!({"edge": [e.lo(), e.hi()], "weight": rational_to_json(q)}))
            .collect();
        json!({"n": self.graph().n(), "edges": edges})
    }
}

#[derive(Deserialize)]
struct MonotoneJson {
    n: usize,
    rows: Vec<Vec<Option<usize>>>,
}

impl Json for MonotoneMatrix {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let m: MonotoneJson = serde_json::from_str(text)?;
        if m.rows.len() != m.n {
            return Err(Error::DimensionMismatch {
                expected: m.n,
                got: m.rows.len(),
            }
            .into());
        }
        Ok(MonotoneMatrix::new(m.rows)?)
    }

    fn to_json(&self) -> Value {
        json!({"n": self.n(), "rows": self.rows()})
    }
}

#[derive(Deserialize)]
struct SetSystemJson {
    n: usize,
    sets: Vec<Vec<Vertex>>,
}

impl Json for SetSystem {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let s: SetSystemJson = serde_json::from_str(text)?;
        Ok(SetSystem::from_sets(s.n, s.sets)?)
    }

    fn to_json(&self) -> Value {
        json!({"n": self.n(), "sets": self.sets()})
    }
}

#[derive(Deserialize)]
struct ComplexJson {
    n: usize,
    k: usize,
    faces: Vec<Vec<Vertex>>,
}

impl Json for SimplicialComplex {
    fn from_json(text: &str) -> Result<Self, JsonError> {
        let c: ComplexJson = serde_json::from_str(text)?;
        Ok(SimplicialComplex::new(c.n, c.k, c.faces)?)
    }

    fn to_json(&self) -> Value {
        json!({"n": self.n(), "k": self.k(), "faces": self.top_faces()})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip<T: Json + PartialEq + std::fmt::Debug>(x: &T) {
        let text = x.to_json().to_string();
        assert_eq!(&T::from_json(&text).unwrap(), x);
    }

    #[test]
    fn round_trips() {
        round_trip(&Graph::cycle(5));
        round_trip(&PathSystem::line(4));
        round_trip(&Resume::from_entries(3, [(Pair::new(1, 3), 2)]).unwrap());
        round_trip(&PathSystem::line(5).colinear_triples());
        round_trip(&Pseudometric::line(3));
        round_trip(&SetSystem::power_set(3).unwrap());
        round_trip(&SimplicialComplex::new(4, 1, [vec![1, 2], vec![3, 4]]).unwrap());
        round_trip(&MonotoneMatrix::new(vec![vec![None, Some(2)], vec![Some(2), None]]).unwrap());
        round_trip(&WeightFunction::uniform(Graph::path(3), Rational::new(3.into(), 2.into())).unwrap());
    }

    #[test]
    fn zero_based_triples() {
        let text = r#"{"n": 3, "base": 0, "triples": [{"pair": [0, 2], "point": 1}]}"#;
        let s = TripleSet::from_json(text).unwrap();
        assert!(s.contains(&PointedTriple::new(1, 3, 2).unwrap()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match Graph::from_json("{\n  \"n\": 3,\n  \"edges\": [[1, 2],]\n}") {
            Err(JsonError::Syntax { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rationals() {
        let q = Rational::new(6.into(), (-4).into());
        assert_eq!(rational_to_json(&q), json!({"num": "-3", "den": "2"}));
        assert_eq!(rational_to_tsv(&q), "-3/2");
        assert!(parse_rational(&RationalJson {
            num: "1".into(),
            den: "0".into()
        })
        .is_err());
    }
}
