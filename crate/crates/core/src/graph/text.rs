//! Plain-text graph format: `p <n> <m>`, then `e <u> <v>` lines with
//! 1-based ids; lines starting with `c` are comments.

use super::{Graph, GraphError};

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut g: Option<Graph> = None;
    let mut expected = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| GraphError::Parse { line, msg: msg.to_string() };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if g.is_some() {
                    return Err(err("repeated header"));
                }
                if toks.len() != 3 {
                    return Err(err("expected `p <n> <m>`"));
                }
                let n: usize = toks[1].parse().map_err(|_| err("bad vertex count"))?;
                expected = toks[2].parse().map_err(|_| err("bad edge count"))?;
                g = Some(Graph::new(n));
            }
            Some("e") => {
                let g = g.as_mut().ok_or_else(|| err("edge before header"))?;
                if toks.len() != 3 {
                    return Err(err("expected `e <u> <v>`"));
                }
                let mut ends = [0usize; 2];
                for (k, t) in toks[1..].iter().enumerate() {
                    let x: usize = t.parse().map_err(|_| err("bad vertex id"))?;
                    if x == 0 || x > g.n() {
                        return Err(err("vertex id out of range"));
                    }
                    ends[k] = x - 1;
                }
                g.add_edge(ends[0], ends[1])?;
            }
            Some(_) if raw.starts_with('c') => {}
            Some(t) => return Err(err(&format!("unknown record `{t}`"))),
        }
    }
    let g = g.ok_or(GraphError::Parse { line: 0, msg: "missing header".into() })?;
    if g.m() != expected {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("header announces {expected} edges, found {}", g.m()),
        });
    }
    Ok(g)
}

pub fn format_graph(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let g = Graph::grid(2, 3);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_graph("p 2 1\ne 1 3\n"), Err(GraphError::Parse { line: 2, .. })));
        assert_eq!(parse_graph("p 2 2\ne 1 2\ne 2 1\n"), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(parse_graph("c hi\np 2 1\ne 2 2\n"), Err(GraphError::SelfLoop(1)));
    }
}
