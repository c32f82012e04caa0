use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::ball::horoball_at;
use super::figures::figure_points;
use super::tangency::{classify_pairs, PairSummary};
use crate::exact::Biquad;
use crate::geometry::{big_json, sphere_points, spec_ref, SpaceCase, SpherePoint};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyGraph {
    pub case: SpaceCase,
    /// Height bound of the node set; None for the figure node sets.
    pub bound: Option<u64>,
    pub nodes: Vec<SpherePoint>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
    SvgCircles,
}

impl FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            "svg-circles" | "svg" => Ok(GraphFormat::SvgCircles),
            _ => Err(Error::Parse(format!("unknown graph format '{s}'"))),
        }
    }
}

/// Explicit-center checks are limited to pairs of nodes at most this high.
pub const FULL_CHECK_HEIGHT: u64 = 6;

/// All points of height ≤ bound with their tangent pairs; every pair is
/// certified tangent or disjoint.
pub fn tangency_graph(case: SpaceCase, height_bound: u64) -> Result<TangencyGraph> {
    tangency_graph_with_summary(case, height_bound).map(|(g, _)| g)
}

pub fn tangency_graph_with_summary(case: SpaceCase, height_bound: u64) -> Result<(TangencyGraph, PairSummary)> {
    let nodes = sphere_points(case, height_bound);
    let (edges, s) = classify_pairs(case, &nodes, FULL_CHECK_HEIGHT)?;
    Ok((TangencyGraph { case, bound: Some(height_bound), nodes, edges }, s))
}

/// The graph on the points drawn in the case's figure.
pub fn figure_graph(case: SpaceCase) -> Result<TangencyGraph> {
    let mut nodes: Vec<SpherePoint> = figure_points(case)?.into_iter().map(|e| e.point).collect();
    nodes.sort_by_key(|p| p.sort_key());
    let (edges, _) = classify_pairs(case, &nodes, u64::MAX)?;
    Ok(TangencyGraph { case, bound: None, nodes, edges })
}

fn node_id(p: &SpherePoint) -> String {
    let mut s = String::from("p");
    for x in p.p() {
        write!(s, "{x}_").unwrap();
    }
    write!(s, "{}", p.q()).unwrap();
    s
}

impl TangencyGraph {
    pub fn export(&self, format: GraphFormat) -> Result<String> {
        match format {
            GraphFormat::Dot => Ok(self.to_dot()),
            GraphFormat::Json => Ok(self.to_json_string()),
            GraphFormat::SvgCircles => self.to_svg(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("graph \"{}\" {{\n", self.case.name());
        for p in &self.nodes {
            writeln!(s, "  \"{}\" [label=\"{}\"];", node_id(p), p).unwrap();
        }
        for &(i, j) in &self.edges {
            writeln!(s, "  \"{}\" -- \"{}\";", node_id(&self.nodes[i]), node_id(&self.nodes[j])).unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|p| json!({"p": p.p().iter().map(big_json).collect::<Vec<_>>(), "q": big_json(p.q()), "height": big_json(p.q())}))
            .collect();
        json!({
            "case": self.case.name(),
            "bound": self.bound,
            "nodes": nodes,
            "edges": self.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let bad = |m: &str| Error::Parse(format!("graph json: {m}"));
        let case: SpaceCase = v["case"].as_str().ok_or_else(|| bad("case"))?.parse()?;
        let bound = match &v["bound"] {
            Value::Null => None,
            b => Some(b.as_u64().ok_or_else(|| bad("bound"))?),
        };
        let int = |x: &Value| -> Result<BigInt> {
            match x {
                Value::Number(n) => n.to_string().parse().map_err(|_| bad("integer")),
                Value::String(s) => s.parse().map_err(|_| bad("integer")),
                _ => Err(bad("integer")),
            }
        };
        let nodes = v["nodes"]
            .as_array()
            .ok_or_else(|| bad("nodes"))?
            .iter()
            .map(|n| {
                let p = n["p"].as_array().ok_or_else(|| bad("p"))?.iter().map(int).collect::<Result<Vec<_>>>()?;
                SpherePoint::new(case, p, int(&n["q"])?)
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = v["edges"]
            .as_array()
            .ok_or_else(|| bad("edges"))?
            .iter()
            .map(|e| {
                let i = e[0].as_u64().ok_or_else(|| bad("edge"))? as usize;
                let j = e[1].as_u64().ok_or_else(|| bad("edge"))? as usize;
                if i >= nodes.len() || j >= nodes.len() {
                    return Err(bad("edge index out of range"));
                }
                Ok((i, j))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TangencyGraph { case, bound, nodes, edges })
    }

    /// Sphere outline and horocycles of a 1-sphere case; coordinates are
    /// floating point for drawing only.
    pub fn to_svg(&self) -> Result<String> {
        if !self.case.is_circle() {
            return Err(Error::Unsupported("rendering only defined for 1-sphere cases".into()));
        }
        let spec = spec_ref(self.case);
        let c: Vec<f64> = spec.center.iter().map(|x| Biquad::from_rational(x.clone()).to_f64()).collect();
        // S¹_III lies in the plane Σx = 1; draw it in the orthonormal frame
        // (1,−1,0)/√2, (1,1,−2)/√6 centered at c.
        let project = |x: &[f64]| -> (f64, f64) {
            let d: Vec<f64> = x.iter().zip(&c).map(|(a, b)| a - b).collect();
            if d.len() == 2 {
                (d[0], d[1])
            } else {
                ((d[0] - d[1]) / 2f64.sqrt(), (d[0] + d[1] - 2.0 * d[2]) / 6f64.sqrt())
            }
        };
        let r = spec.radius.to_f64();
        let m = 1.1 * r;
        let mut s = String::new();
        writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.12} {:.12} {:.12} {:.12}">"#,
            -m,
            -m,
            2.0 * m,
            2.0 * m
        )
        .unwrap();
        writeln!(s, r#"  <g transform="scale(1,-1)" fill="none" stroke="black">"#).unwrap();
        writeln!(s, r#"    <circle cx="0" cy="0" r="{r:.12}" stroke-width="{:.12}"/>"#, r / 200.0).unwrap();
        for p in &self.nodes {
            let b = horoball_at(p)?;
            let x: Vec<f64> = b.center.iter().map(Biquad::to_f64).collect();
            let (cx, cy) = project(&x);
            writeln!(
                s,
                r#"    <circle id="{}" cx="{cx:.12}" cy="{cy:.12}" r="{:.12}" stroke-width="{:.12}"/>"#,
                node_id(p),
                b.radius.to_f64(),
                r / 400.0
            )
            .unwrap();
        }
        s.push_str("  </g>\n</svg>\n");
        Ok(s)
    }
}
