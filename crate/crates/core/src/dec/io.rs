//! Plain-text mesh format.
//!
//! ```text
//! mesh2d v1
//! vertex <x> <y>
//! edge <tail> <head>
//! face <±edge> <±edge> <±edge> <±edge>
//! hole <±edge> ...
//! ```
//!
//! One record per line; blank lines and lines starting with `#` are ignored.
//! Records of each kind are numbered in order of appearance from zero. An
//! oriented edge is written with an explicit sign, `+3` or `-3`. Coordinates
//! use the shortest representation that parses back to the same `f64`.

use std::fmt::Write as _;

use super::{DecError, EdgeLoop, Mesh2D, OrientedEdge};

const HEADER: &str = "mesh2d v1";

pub fn write_mesh(mesh: &Mesh2D) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for p in mesh.vertices() {
        let _ = writeln!(out, "vertex {:?} {:?}", p[0], p[1]);
    }
    for [a, b] in mesh.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    let steps = |out: &mut String, tag: &str, steps: &[OrientedEdge]| {
        out.push_str(tag);
        for s in steps {
            let _ = write!(out, " {}{}", if s.sign > 0 { '+' } else { '-' }, s.edge);
        }
        out.push('\n');
    };
    for face in mesh.faces() {
        steps(&mut out, "face", face);
    }
    for hole in mesh.hole_loops() {
        steps(&mut out, "hole", &hole.steps);
    }
    out
}

pub fn read_mesh(text: &str) -> Result<Mesh2D, DecError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    let mut holes = Vec::new();
    let mut saw_header = false;

    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = n + 1;
        let err = |msg: &str| DecError::Parse { line: lineno, message: msg.to_string() };
        if !saw_header {
            if line != HEADER {
                return Err(err(&format!("expected header `{HEADER}`")));
            }
            saw_header = true;
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        match tag {
            "vertex" => {
                let [x, y] = rest.as_slice() else {
                    return Err(err("vertex needs two coordinates"));
                };
                let x: f64 = x.parse().map_err(|_| err("bad x coordinate"))?;
                let y: f64 = y.parse().map_err(|_| err("bad y coordinate"))?;
                vertices.push([x, y]);
            }
            "edge" => {
                let [a, b] = rest.as_slice() else {
                    return Err(err("edge needs two vertex indices"));
                };
                let a: usize = a.parse().map_err(|_| err("bad vertex index"))?;
                let b: usize = b.parse().map_err(|_| err("bad vertex index"))?;
                edges.push([a, b]);
            }
            "face" | "hole" => {
                let steps = rest
                    .iter()
                    .map(|tok| parse_step(tok).ok_or_else(|| err(&format!("bad oriented edge `{tok}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if tag == "face" {
                    faces.push(steps);
                } else {
                    holes.push(EdgeLoop::new(steps));
                }
            }
            other => return Err(err(&format!("unknown record `{other}`"))),
        }
    }
    if !saw_header {
        return Err(DecError::Parse { line: 0, message: "empty input".into() });
    }
    Mesh2D::from_parts(vertices, edges, faces, holes)
}

fn parse_step(tok: &str) -> Option<OrientedEdge> {
    let (sign, digits) = match tok.as_bytes().first()? {
        b'+' => (1, &tok[1..]),
        b'-' => (-1, &tok[1..]),
        _ => return None,
    };
    Some(OrientedEdge::new(digits.parse().ok()?, sign))
}
