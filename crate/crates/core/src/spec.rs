//! Textual graph specifications.
//!
//! ```text
//! spec := "K(" int ("," int)* ")" | "C(" int ")" | "U(" int "," spec ")"
//!       | "LEX(" spec ",E(" int "))" | "FILE(" path ")"
//! ```
//!
//! Whitespace outside `FILE(...)` paths is ignored.

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::graph::{self, Graph, PartiteSpec};

/// Default cap on the number of vertices a spec may expand to.
pub const DEFAULT_VERTEX_LIMIT: usize = 100_000;

/// Parsed graph specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Complete(PartiteSpec),
    Cycle(usize),
    Union(usize, Box<GraphSpec>),
    Lex(Box<GraphSpec>, usize),
    File(PathBuf),
}

impl GraphSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }

    /// Vertex count without building the graph. `None` for file-backed
    /// specs, whose size is only known after reading.
    pub fn order_hint(&self) -> Option<usize> {
        match self {
            GraphSpec::Complete(s) => Some(s.order()),
            GraphSpec::Cycle(b) => Some(*b),
            GraphSpec::Union(m, g) => g.order_hint()?.checked_mul(*m),
            GraphSpec::Lex(g, a) => g.order_hint()?.checked_mul(*a),
            GraphSpec::File(_) => None,
        }
    }

    /// Builds the graph, rejecting anything larger than `limit` vertices.
    pub fn build(&self, limit: usize) -> Result<Graph> {
        let check = |n: usize| {
            if n > limit {
                Err(Error::SizeLimit {
                    requested: n,
                    limit,
                })
            } else {
                Ok(())
            }
        };
        let g = match self {
            GraphSpec::Complete(s) => {
                check(s.order())?;
                graph::build_complete_multipartite(s)
            }
            GraphSpec::Cycle(b) => {
                check(*b)?;
                graph::build_cycle(*b)?
            }
            GraphSpec::Union(m, inner) => {
                let g = inner.build(limit)?;
                check(g.order().saturating_mul(*m))?;
                graph::disjoint_union(*m, &g)?
            }
            GraphSpec::Lex(inner, a) => {
                let g = inner.build(limit)?;
                check(g.order().saturating_mul(*a))?;
                graph::lex_blowup(&g, *a)?
            }
            GraphSpec::File(path) => {
                let g = Graph::read_adjacency_file(path)?;
                check(g.order())?;
                g
            }
        };
        Ok(g)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Complete(s) => write!(f, "{s}"),
            GraphSpec::Cycle(b) => write!(f, "C({b})"),
            GraphSpec::Union(m, g) => write!(f, "U({m},{g})"),
            GraphSpec::Lex(g, a) => write!(f, "LEX({g},E({a}))"),
            GraphSpec::File(p) => write!(f, "FILE({})", p.display()),
        }
    }
}

/// Parses `text` and builds the graph with the default vertex cap.
pub fn parse_graph_spec(text: &str) -> Result<Graph> {
    GraphSpec::parse(text)?.build(DEFAULT_VERTEX_LIMIT)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let t = token.as_bytes();
        if self.src[self.pos..].starts_with(t) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    fn positive(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.int()?;
        if v == 0 {
            return Err(Error::Syntax {
                pos: start,
                msg: "expected a positive integer".into(),
            });
        }
        Ok(v)
    }

    fn spec(&mut self) -> Result<GraphSpec> {
        // Longest keywords first: "FILE(" before anything else starting with F, etc.
        if self.eat("LEX(") {
            let inner = self.spec()?;
            self.expect(",")?;
            self.expect("E(")?;
            let a = self.positive()?;
            self.expect(")")?;
            self.expect(")")?;
            Ok(GraphSpec::Lex(Box::new(inner), a))
        } else if self.eat("FILE(") {
            let start = self.pos;
            let end = self.src[start..]
                .iter()
                .position(|&c| c == b')')
                .map(|i| start + i)
                .ok_or_else(|| self.error("unterminated FILE("))?;
            let path = std::str::from_utf8(&self.src[start..end])
                .map_err(|_| self.error("path is not UTF-8"))?
                .trim();
            if path.is_empty() {
                return Err(self.error("empty path"));
            }
            self.pos = end + 1;
            Ok(GraphSpec::File(PathBuf::from(path)))
        } else if self.eat("K(") {
            let mut sizes = vec![self.positive()?];
            while self.eat(",") {
                sizes.push(self.positive()?);
            }
            self.expect(")")?;
            Ok(GraphSpec::Complete(PartiteSpec::new(sizes)?))
        } else if self.eat("C(") {
            let start = self.pos;
            let b = self.int()?;
            if b < 3 {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "cycle length must be at least 3".into(),
                });
            }
            self.expect(")")?;
            Ok(GraphSpec::Cycle(b))
        } else if self.eat("U(") {
            let m = self.positive()?;
            self.expect(",")?;
            let inner = self.spec()?;
            self.expect(")")?;
            Ok(GraphSpec::Union(m, Box::new(inner)))
        } else {
            Err(self.error("expected one of K(, C(, U(, LEX(, FILE("))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_family_forms() {
        let g = parse_graph_spec("K(5,6,7)").unwrap();
        assert_eq!(g.partite().unwrap().spec.sizes(), &[5, 6, 7]);

        let u = parse_graph_spec("U(2,K(3,3))").unwrap();
        assert_eq!((u.order(), u.edge_count()), (12, 18));

        let l = parse_graph_spec("LEX(C(10),E(3))").unwrap();
        assert_eq!((l.order(), l.regularity()), (30, Some(6)));
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            GraphSpec::parse(" LEX( C(4) , E(2) ) ").unwrap(),
            GraphSpec::parse("LEX(C(4),E(2))").unwrap()
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["K(2,3,3)", "U(3,LEX(C(5),E(3)))", "LEX(K(2,2),E(4))", "FILE(g.adj)"] {
            assert_eq!(GraphSpec::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match GraphSpec::parse("K(3,)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(GraphSpec::parse("LEX(C(4),E(0))"), Err(Error::Syntax { .. })));
        assert!(matches!(GraphSpec::parse("K(3,3) x"), Err(Error::Syntax { .. })));
        assert!(matches!(GraphSpec::parse("C(2)"), Err(Error::Syntax { .. })));
        assert!(matches!(GraphSpec::parse("Q(1)"), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn size_cap() {
        let s = GraphSpec::parse("U(1000,K(100,100))").unwrap();
        assert_eq!(s.order_hint(), Some(200_000));
        assert!(matches!(
            s.build(DEFAULT_VERTEX_LIMIT),
            Err(Error::SizeLimit { requested: 200_000, .. })
        ));
        assert!(GraphSpec::parse("K(3,3)").unwrap().build(5).is_err());
    }

    #[test]
    fn file_specs_read_adjacency() {
        let dir = std::env::temp_dir().join(format!("magiclab-spec-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("petersen.adj");
        std::fs::write(&path, crate::testutil::PETERSEN).unwrap();
        let g = parse_graph_spec(&format!("LEX(FILE({}),E(3))", path.display())).unwrap();
        assert_eq!((g.order(), g.regularity()), (30, Some(9)));
        std::fs::remove_dir_all(&dir).ok();
    }
}
