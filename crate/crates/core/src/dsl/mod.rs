//! Text syntax for diagrams.
//!
//! ```text
//! expr   := term (("∘" | ";") term)*
//! term   := factor (("⊗" | "*") factor)*
//! factor := NAME ["%0" | "%+"] | "id(" INT ")" | "(" expr ")"
//! NAME   := mul | comul | unit | counit | swap
//! ```
//!
//! `f ; g` runs `f` first (top to bottom); `g ∘ f` means the same thing.
//! The canonical printer (the `Display` impl of [`Diagram`]) emits `;` and `*`.

mod render;
mod sweedler;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Generator, Kind, Label, DEFAULT_MAX_WIRES};

pub use render::{render, Format};
pub use sweedler::sweedler;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("arity mismatch in `{subterm}`: {upper} outputs above, {lower} inputs below")]
    Arity { subterm: String, upper: usize, lower: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl DslError {
    fn syntax(pos: usize, message: impl Into<String>) -> Self {
        DslError::Syntax { pos, message: message.into() }
    }
}

/// Surface syntax tree. `span` is a byte range into the parsed text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub node: ExprNode,
    pub span: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprNode {
    Gen(Generator),
    Id(usize),
    /// First component on top.
    Seq(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Number of generator occurrences as written (identities excluded);
    /// nothing is simplified, so `swap ; swap` counts two.
    pub fn raw_slice_count(&self) -> usize {
        match &self.node {
            ExprNode::Gen(_) => 1,
            ExprNode::Id(_) => 0,
            ExprNode::Seq(a, b) | ExprNode::Tensor(a, b) => a.raw_slice_count() + b.raw_slice_count(),
        }
    }

    /// Builds the (canonical) diagram, reporting the innermost offending subterm on arity errors.
    pub fn to_diagram(&self, source: &str) -> Result<Diagram, DslError> {
        match &self.node {
            ExprNode::Gen(g) => Ok(Diagram::generator(*g)),
            ExprNode::Id(n) => Ok(Diagram::id(*n)),
            ExprNode::Tensor(a, b) => Ok(a.to_diagram(source)?.tensor(&b.to_diagram(source)?)),
            ExprNode::Seq(a, b) => {
                let top = a.to_diagram(source)?;
                let bottom = b.to_diagram(source)?;
                top.compose(&bottom).map_err(|e| match e {
                    DiagramError::ArityMismatch { upper, lower } => DslError::Arity {
                        subterm: source.get(self.span.0..self.span.1).unwrap_or("").trim().to_string(),
                        upper,
                        lower,
                    },
                    other => other.into(),
                })
            }
        }
    }
}

/// Parses and canonicalizes with the default wire limit.
pub fn parse(text: &str) -> Result<Diagram, DslError> {
    parse_with_limit(text, DEFAULT_MAX_WIRES)
}

pub fn parse_with_limit(text: &str, max_wires: usize) -> Result<Diagram, DslError> {
    let expr = parse_expr(text)?;
    let d = expr.to_diagram(text)?;
    d.check_width(max_wires)?;
    Ok(d)
}

/// Canonical text of a diagram; `parse(&print(d)) == d`.
pub fn print(d: &Diagram) -> String {
    d.to_string()
}

pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(DslError::syntax(p.pos, format!("unexpected `{}`", p.peek_char().unwrap())));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = self.term()?;
        loop {
            let forward = if self.eat(";") {
                true
            } else if self.eat("∘") {
                false
            } else {
                break;
            };
            let rhs = self.term()?;
            let span = (start, self.pos);
            acc = if forward {
                Expr { node: ExprNode::Seq(Box::new(acc), Box::new(rhs)), span }
            } else {
                Expr { node: ExprNode::Seq(Box::new(rhs), Box::new(acc)), span }
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = self.factor()?;
        while self.eat("⊗") || self.eat("*") {
            let rhs = self.factor()?;
            acc = Expr { node: ExprNode::Tensor(Box::new(acc), Box::new(rhs)), span: (start, self.pos) };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(DslError::syntax(self.pos, "expected `)`"));
            }
            return Ok(Expr { node: inner.node, span: (start, self.pos) });
        }
        let ident: String = self.src[self.pos..].chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        if ident.is_empty() {
            return Err(match self.peek_char() {
                Some(c) => DslError::syntax(self.pos, format!("unexpected `{c}`")),
                None => DslError::syntax(self.pos, "unexpected end of input"),
            });
        }
        self.pos += ident.len();
        let kind = match ident.as_str() {
            "mul" => Kind::Mul,
            "comul" => Kind::Comul,
            "unit" => Kind::Unit,
            "counit" => Kind::Counit,
            "swap" => Kind::Swap,
            "id" => {
                if !self.eat("(") {
                    return Err(DslError::syntax(self.pos, "expected `(` after id"));
                }
                self.skip_ws();
                let digits: String = self.src[self.pos..].chars().take_while(char::is_ascii_digit).collect();
                if digits.is_empty() {
                    return Err(DslError::syntax(self.pos, "expected wire count"));
                }
                self.pos += digits.len();
                let n: usize = digits.parse().map_err(|_| DslError::syntax(self.pos, "wire count too large"))?;
                if !self.eat(")") {
                    return Err(DslError::syntax(self.pos, "expected `)`"));
                }
                return Ok(Expr { node: ExprNode::Id(n), span: (start, self.pos) });
            }
            other => return Err(DslError::syntax(start, format!("unknown generator `{other}`"))),
        };
        let label = if self.src[self.pos..].starts_with("%0") {
            self.pos += 2;
            Label::Zero
        } else if self.src[self.pos..].starts_with("%+") {
            self.pos += 2;
            Label::Plus
        } else {
            Label::Plain
        };
        let gen = Generator::new(kind, label)?;
        Ok(Expr { node: ExprNode::Gen(gen), span: (start, self.pos) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_diagram() {
        let q = parse("comul ; mul").unwrap();
        assert_eq!(q, Diagram::comul().compose(&Diagram::mul()).unwrap());
        assert_eq!(parse("mul ∘ comul").unwrap(), q);
    }

    #[test]
    fn counit_composite() {
        let d = parse("comul ; (counit * id(1))").unwrap();
        assert_eq!(d.arity(), (1, 1));
        assert_eq!(parse("comul ; (counit ⊗ id(1))").unwrap(), d);
    }

    #[test]
    fn bialgebra_sides() {
        let lhs = parse("mul ; comul").unwrap();
        let rhs = parse("comul*comul ; id(1)*swap*id(1) ; mul*mul").unwrap();
        assert_eq!(lhs.arity(), (2, 2));
        assert_eq!(rhs.arity(), (2, 2));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn labels_parse() {
        let d = parse("comul%+ ; mul%0").unwrap();
        assert_eq!(d.count_label(Label::Plus), 1);
        assert_eq!(d.count_label(Label::Zero), 1);
        assert!(matches!(parse("unit%0"), Err(DslError::Diagram(DiagramError::BadLabel { .. }))));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("comul ; ; mul") {
            Err(DslError::Syntax { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("comul ; frob"), Err(DslError::Syntax { pos: 8, .. })));
        assert!(matches!(parse("(comul"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse("comul mul"), Err(DslError::Syntax { pos: 6, .. })));
    }

    #[test]
    fn arity_error_names_subterm() {
        match parse("id(1) * (comul ; comul)") {
            Err(DslError::Arity { subterm, upper, lower }) => {
                assert_eq!(subterm, "(comul ; comul)");
                assert_eq!((upper, lower), (2, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn swap_swap_simplifies_but_ast_keeps_slices() {
        let e = parse_expr("swap ; swap").unwrap();
        assert_eq!(e.raw_slice_count(), 2);
        assert_eq!(parse("swap ; swap").unwrap(), Diagram::id(2));
    }

    #[test]
    fn wire_limit_enforced() {
        let wide = ["id(1)"; 5].join(" * ");
        assert!(parse_with_limit(&wide, 4).is_err());
        assert!(parse_with_limit(&wide, 5).is_ok());
    }
}
