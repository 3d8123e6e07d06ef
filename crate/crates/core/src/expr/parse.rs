use super::{BinOp, Func, Node, NodeKind, ParseError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("malformed number \"{text}\""),
            })?;
            out.push(Token {
                tok: Tok::Num(value),
                offset: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                offset: start,
            });
            continue;
        }
        let tok = match c {
            b'+' | b'-' | b'*' | b'/' | b'^' => Tok::Op(c as char),
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push(Token { tok, offset: start });
        i += 1;
    }
    out.push(Token {
        tok: Tok::End,
        offset: src.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

pub(super) fn parse(src: &str, vars: &[&str]) -> Result<Node, ParseError> {
    if src.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        vars,
    };
    let node = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(ParseError::Syntax {
            offset: t.offset,
            message: format!("unexpected {}", describe(&t.tok)),
        });
    }
    Ok(node)
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(x) => format!("number {x}"),
        Tok::Ident(s) => format!("identifier \"{s}\""),
        Tok::Op(c) => format!("operator '{c}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.peek().tok {
            let op_tok = self.bump();
            let rhs = self.operand_after(&op_tok, Self::term)?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Node {
                kind: NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                offset: op_tok.offset,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.peek().tok {
            let op_tok = self.bump();
            let rhs = self.operand_after(&op_tok, Self::unary)?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Node {
                kind: NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                offset: op_tok.offset,
            };
        }
        Ok(lhs)
    }

    /// Parses the right operand of a binary operator; a missing operand is
    /// reported at the operator.
    fn operand_after(
        &mut self,
        op_tok: &Token,
        rule: fn(&mut Self) -> Result<Node, ParseError>,
    ) -> Result<Node, ParseError> {
        if !self.starts_operand() {
            let Tok::Op(c) = op_tok.tok else { unreachable!() };
            return Err(ParseError::Syntax {
                offset: op_tok.offset,
                message: format!(
                    "operator '{c}' is missing its right operand (found {})",
                    describe(&self.peek().tok)
                ),
            });
        }
        rule(self)
    }

    fn starts_operand(&self) -> bool {
        matches!(
            self.peek().tok,
            Tok::Num(_) | Tok::Ident(_) | Tok::LParen | Tok::Op('-')
        )
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if let Tok::Op('-') = self.peek().tok {
            let op_tok = self.bump();
            let arg = self.operand_after(&op_tok, Self::unary)?;
            return Ok(Node {
                kind: NodeKind::Neg(Box::new(arg)),
                offset: op_tok.offset,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if let Tok::Op('^') = self.peek().tok {
            let op_tok = self.bump();
            let exponent = self.operand_after(&op_tok, Self::unary)?;
            let p = fold_constant(&exponent).ok_or(ParseError::NonConstantExponent {
                offset: exponent.offset,
            })?;
            return Ok(Node {
                kind: NodeKind::Pow(Box::new(base), p),
                offset: op_tok.offset,
            });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Num(x) => Ok(Node {
                kind: NodeKind::Const(x),
                offset: t.offset,
            }),
            Tok::Ident(name) => {
                if self.peek().tok == Tok::LParen {
                    let func = Func::from_name(&name).ok_or(ParseError::UnknownFunction {
                        name: name.clone(),
                        offset: t.offset,
                    })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Node {
                        kind: NodeKind::Call(func, Box::new(arg)),
                        offset: t.offset,
                    });
                }
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    return Ok(Node {
                        kind: NodeKind::Var(i),
                        offset: t.offset,
                    });
                }
                if name == "pi" {
                    return Ok(Node {
                        kind: NodeKind::Const(std::f64::consts::PI),
                        offset: t.offset,
                    });
                }
                Err(ParseError::UnknownIdentifier {
                    name,
                    offset: t.offset,
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            other => Err(ParseError::Syntax {
                offset: t.offset,
                message: format!("expected an operand, found {}", describe(&other)),
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == Tok::RParen {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                offset: t.offset,
                message: format!("expected ')', found {}", describe(&t.tok)),
            })
        }
    }
}

/// Evaluates a variable-free subtree.
fn fold_constant(node: &Node) -> Option<f64> {
    Some(match &node.kind {
        NodeKind::Const(c) => *c,
        NodeKind::Var(_) => return None,
        NodeKind::Neg(a) => -fold_constant(a)?,
        NodeKind::Call(func, a) => {
            let x = fold_constant(a)?;
            match func {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => x.tan(),
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Exp => x.exp(),
                Func::Log => x.ln(),
                Func::Sqrt => x.sqrt(),
            }
        }
        NodeKind::Binary(op, a, b) => {
            let (x, y) = (fold_constant(a)?, fold_constant(b)?);
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x / y,
            }
        }
        NodeKind::Pow(a, p) => fold_constant(a)?.powf(*p),
    })
    .filter(|x: &f64| x.is_finite())
}
