//! Right Cayley color digraphs: an arc `(g, g·s)` colored by the index of
//! `s` in the generating sequence.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{compose_unchecked, Backend, Element, GeneratedGroup};
use crate::groupspec::{backend_from_json, backend_to_json, element_from_json, SpecError};
use crate::metrics::word_ball;

/// Graphviz colors cycled by generator index.
pub const PALETTE: [&str; 12] = [
    "red",
    "blue",
    "forestgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "cyan",
    "gold",
    "black",
    "gray",
    "navy",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub color: usize,
}

/// Restriction of a digraph to a closed word ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub center: Element,
    pub radius: u32,
}

#[derive(Debug, Clone)]
pub struct ColorDigraph {
    backend: Backend,
    generators: Vec<Element>,
    vertices: Vec<Element>,
    arcs: Vec<Arc>,
    truncation: Option<Truncation>,
    index: HashMap<Element, usize>,
    // heads[tail][color], None when the head lies outside a truncation
    heads: Vec<Vec<Option<usize>>>,
}

impl PartialEq for ColorDigraph {
    fn eq(&self, other: &Self) -> bool {
        self.backend == other.backend
            && self.generators == other.generators
            && self.vertices == other.vertices
            && self.arcs == other.arcs
            && self.truncation == other.truncation
    }
}

impl Eq for ColorDigraph {}

/// Color count between two vertices. On truncated digraphs the count only
/// bounds the true value from above, since a path may leave the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorCount {
    pub colors: u32,
    pub upper_bound_only: bool,
}

impl ColorDigraph {
    fn assemble(
        backend: Backend,
        generators: Vec<Element>,
        vertices: Vec<Element>,
        truncation: Option<Truncation>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            backend.check(v)?;
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::RepeatedVertex(v.to_string()));
            }
        }
        let mut arcs = Vec::with_capacity(vertices.len() * generators.len());
        let mut heads = Vec::with_capacity(vertices.len());
        for (tail, g) in vertices.iter().enumerate() {
            let mut row = Vec::with_capacity(generators.len());
            for (color, s) in generators.iter().enumerate() {
                let head = index.get(&compose_unchecked(g, s)).copied();
                if let Some(head) = head {
                    arcs.push(Arc { tail, head, color });
                }
                row.push(head);
            }
            heads.push(row);
        }
        Ok(ColorDigraph {
            backend,
            generators,
            vertices,
            arcs,
            truncation,
            index,
            heads,
        })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        self.truncation.as_ref()
    }

    pub fn colors(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Head of the arc leaving `tail` with `color`, if it is present.
    pub fn head(&self, tail: usize, color: usize) -> Option<usize> {
        self.heads[tail][color]
    }

    /// Checks `head = tail · S[color]` for every arc.
    pub fn verify_arcs(&self) -> bool {
        self.arcs.iter().all(|a| {
            compose_unchecked(&self.vertices[a.tail], &self.generators[a.color])
                == self.vertices[a.head]
        })
    }

    /// The color of the arc `(tail, head)`, if any.
    pub fn arc_color(&self, tail: usize, head: usize) -> Option<usize> {
        self.heads[tail].iter().position(|&h| h == Some(head))
    }

    pub fn min_color_connectivity(&self, g: &Element, h: &Element) -> Result<u32> {
        if self.truncation.is_some() {
            return Err(Error::TruncatedDigraph);
        }
        Ok(self.color_count(g, h)?.colors)
    }

    /// Like [`min_color_connectivity`](Self::min_color_connectivity), but
    /// accepts truncated digraphs and marks their answers as upper bounds.
    pub fn color_count(&self, g: &Element, h: &Element) -> Result<ColorCount> {
        let src = self
            .index_of(g)
            .ok_or_else(|| Error::VertexAbsent(g.to_string()))?;
        let dst = self
            .index_of(h)
            .ok_or_else(|| Error::VertexAbsent(h.to_string()))?;
        let upper_bound_only = self.truncation.is_some();
        if src == dst {
            return Ok(ColorCount {
                colors: 0,
                upper_bound_only,
            });
        }
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertices.len()];
        for a in &self.arcs {
            adjacency[a.tail].push((a.head, a.color));
            adjacency[a.head].push((a.tail, a.color));
        }
        let n = self.colors();
        for size in 1..=n {
            for subset in (0..n).combinations(size) {
                let mut allowed = vec![false; n];
                for &c in &subset {
                    allowed[c] = true;
                }
                if reachable(&adjacency, &allowed, src, dst) {
                    return Ok(ColorCount {
                        colors: size as u32,
                        upper_bound_only,
                    });
                }
            }
        }
        Err(Error::VertexAbsent(format!("{h} (unreachable from {g})")))
    }

    /// Undirected edges `{g, h}` as index pairs with `g < h`.
    pub fn underlying_edges(&self) -> BTreeSet<(usize, usize)> {
        self.arcs
            .iter()
            .filter(|a| a.tail != a.head)
            .map(|a| (a.tail.min(a.head), a.tail.max(a.head)))
            .collect()
    }

    /// Breadth-first distances from `src` in the underlying graph.
    pub fn undirected_distances(&self, src: usize) -> Vec<Option<u32>> {
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (a, b) in self.underlying_edges() {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut dist = vec![None; self.vertices.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have distances");
            for &w in &adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cayley {\n  node [shape=circle];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(out, "  v{i} [label=\"{v}\"];").expect("writing to a String");
        }
        for a in &self.arcs {
            writeln!(
                out,
                "  v{} -> v{} [color=\"{}\", label=\"{}\"];",
                a.tail,
                a.head,
                PALETTE[a.color % PALETTE.len()],
                self.generators[a.color]
            )
            .expect("writing to a String");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "backend": backend_to_json(self.backend),
            "generators": self.generators,
            "vertices": self.vertices,
            "arcs": self.arcs.iter().map(|a| [a.tail, a.head, a.color]).collect::<Vec<_>>(),
            "truncation": self.truncation.as_ref().map(|t| json!({
                "center": t.center,
                "radius": t.radius,
            })),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("digraph serializes")
    }

    /// Parses [`to_json`](Self::to_json) output, re-deriving the arcs and
    /// checking them against the listed ones.
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))?;
        let backend = backend_from_json(
            doc.get("backend")
                .ok_or_else(|| SpecError::Schema("missing field \"backend\"".into()))?,
        )?;
        let list = |field: &str| -> Result<&Vec<Value>, SpecError> {
            doc.get(field)
                .and_then(Value::as_array)
                .ok_or_else(|| SpecError::Schema(format!("missing array field \"{field}\"")))
        };
        let generators = list("generators")?
            .iter()
            .enumerate()
            .map(|(index, v)| {
                element_from_json(v, backend)
                    .map_err(|reason| SpecError::Generator { index, reason })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let vertices = list("vertices")?
            .iter()
            .enumerate()
            .map(|(i, v)| {
                element_from_json(v, backend)
                    .map_err(|e| SpecError::Schema(format!("vertex {i}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arcs = list("arcs")?
            .iter()
            .map(|a| {
                let triple: Option<Vec<usize>> = a
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .and_then(|t| t.iter().map(|x| x.as_u64().map(|n| n as usize)).collect());
                triple
                    .map(|t| Arc {
                        tail: t[0],
                        head: t[1],
                        color: t[2],
                    })
                    .ok_or_else(|| SpecError::Schema(format!("malformed arc {a}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let truncation = match doc.get("truncation") {
            None | Some(Value::Null) => None,
            Some(t) => Some(Truncation {
                center: element_from_json(
                    t.get("center")
                        .ok_or_else(|| SpecError::Schema("truncation without center".into()))?,
                    backend,
                )
                .map_err(SpecError::Schema)?,
                radius: t
                    .get("radius")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| SpecError::Schema("truncation without radius".into()))?
                    as u32,
            }),
        };
        let digraph = Self::assemble(backend, generators, vertices, truncation)?;
        if digraph.arcs != arcs {
            return Err(SpecError::Schema(
                "arc list disagrees with the generators and vertices".into(),
            ));
        }
        Ok(digraph)
    }
}

fn reachable(adjacency: &[Vec<(usize, usize)>], allowed: &[bool], src: usize, dst: usize) -> bool {
    let mut seen = vec![false; adjacency.len()];
    seen[src] = true;
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for &(w, c) in &adjacency[v] {
            if allowed[c] && !seen[w] {
                if w == dst {
                    return true;
                }
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Requested restriction to the word ball `B(center, radius)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationRequest {
    pub center: Element,
    pub radius: u32,
    pub radius_cap: u32,
}

/// Builds the color digraph of a finite group, or of a word ball when a
/// truncation is given. Infinite backends require a truncation.
pub fn build_color_digraph(
    group: &GeneratedGroup,
    truncation: Option<TruncationRequest>,
) -> Result<ColorDigraph> {
    match truncation {
        None => {
            if !group.is_finite() {
                return Err(Error::TruncationRequired);
            }
            ColorDigraph::assemble(
                group.backend(),
                group.generators().to_vec(),
                group.elements()?.to_vec(),
                None,
            )
        }
        Some(req) => {
            if req.radius > req.radius_cap {
                return Err(Error::RadiusCapExceeded {
                    element: format!("ball radius {}", req.radius),
                    cap: req.radius_cap,
                });
            }
            if !group.contains(&req.center) {
                return Err(Error::mismatch("the generated group", &req.center));
            }
            let vertices = word_ball(group, &req.center, req.radius)?;
            ColorDigraph::assemble(
                group.backend(),
                group.generators().to_vec(),
                vertices,
                Some(Truncation {
                    center: req.center,
                    radius: req.radius,
                }),
            )
        }
    }
}

pub fn underlying_edges(d: &ColorDigraph) -> BTreeSet<(usize, usize)> {
    d.underlying_edges()
}

pub fn min_color_connectivity(d: &ColorDigraph, g: &Element, h: &Element) -> Result<u32> {
    d.min_color_connectivity(g, h)
}

pub fn export_dot(d: &ColorDigraph) -> String {
    d.to_dot()
}

pub fn export_json(d: &ColorDigraph) -> String {
    d.to_json()
}
